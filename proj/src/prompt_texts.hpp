#pragma once

// Built-in template texts (defined in prompt_texts.cpp).

namespace autosg::prompt_texts {

extern const char* const kTask;
extern const char* const kMetaQuery;
extern const char* const kRewrite;
extern const char* const kRerank;
extern const char* const kGenStage1;
extern const char* const kCodeTemplate;
extern const char* const kGenStage2;
extern const char* const kReverse;
extern const char* const kRefine;
extern const char* const kJudge;

} // namespace autosg::prompt_texts
