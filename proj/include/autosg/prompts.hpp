#pragma once

#include "autosg/task.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace autosg {

/// Immutable text template with named `{{slot}}` placeholders.
struct PromptTemplate {
    std::string name;
    std::vector<std::string> slots;
    std::string text;
};

/// The built-in template set: task, meta_query, rewrite, rerank, gen_stage1,
/// code_template, gen_stage2, reverse, refine, judge.
class PromptLibrary {
public:
    static const PromptLibrary& builtin();

    const PromptTemplate& get(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    PromptLibrary() = default;
    void add(PromptTemplate tpl);
    std::map<std::string, PromptTemplate, std::less<>> templates_;
};

/// Render a template. Every declared slot must be bound with non-empty text;
/// unknown binding keys are an error. All occurrences are substituted.
std::string bind_template(const PromptTemplate& tpl,
                          const std::map<std::string, std::string>& bindings);

/// The task template rendered from the four task fields.
std::string render_task(const PromptLibrary& lib, const TaskPrompt& task);

/// Standard bindings map for the four task fields.
std::map<std::string, std::string> task_bindings(const TaskPrompt& task);

/// Split a bound prompt into (system, user) chat texts. Prompts that open
/// with a "You are ..." paragraph use it as the system text.
std::pair<std::string, std::string> split_chat_prompt(const std::string& bound);

} // namespace autosg
