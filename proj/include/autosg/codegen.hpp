#pragma once

#include "autosg/artifact.hpp"
#include "autosg/gateway.hpp"
#include "autosg/prompts.hpp"
#include "autosg/retrieval.hpp"

#include <string>
#include <vector>

namespace autosg {

/// One structural-contract violation.
struct Finding {
    std::string code;    ///< missing-init | missing-call | no-class | multiple-classes
    std::string message;
};

/// Lexical structural check: both mandated entry-point signatures present and
/// exactly one top-level class. No execution or syntax analysis.
std::vector<Finding> check_structure(const std::string& code);

/// Name of the single top-level class, or "" when absent/ambiguous.
std::string extract_class_name(const std::string& code);

/// Shrink a document to `max_chars`, cutting from the tail but keeping
/// equation/pseudo-code dense lines found in the cut region.
std::string truncate_document(const std::string& text, size_t max_chars);

/// Identity of the grounding paper as bound into the generation prompts.
struct PaperIdentity {
    std::string title = "user-supplied document";
    std::string venue = "unknown venue";
    std::string year_text = "n.d.";

    static PaperIdentity from_decision(const RerankDecision& decision);
};

/// Shared inputs for the generation operations.
struct CodegenContext {
    LlmGateway& gateway;
    const PromptLibrary& prompts;
    TaskPrompt task;
    PipelineConfig cfg;
};

/// Stage-1 faithful reproduction of the retrieved paper (S_pre).
SolverArtifact generate_preliminary(CodegenContext& ctx, const PaperIdentity& paper,
                                    const DocumentText& doc);

/// Stage-2 polish against the document (S_init); class name preserved.
SolverArtifact polish(CodegenContext& ctx, const SolverArtifact& pre,
                      const PaperIdentity& paper, const DocumentText& doc);

/// Ungrounded ablation path: task + meta query, no document.
SolverArtifact generate_ungrounded(CodegenContext& ctx);

} // namespace autosg
