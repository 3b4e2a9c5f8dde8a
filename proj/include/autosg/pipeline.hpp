#pragma once

#include "autosg/codegen.hpp"
#include "autosg/fulltext.hpp"
#include "autosg/refine.hpp"
#include "autosg/run_state.hpp"
#include "autosg/tournament.hpp"

#include <filesystem>
#include <optional>

namespace autosg {

/// How the orchestrator talks to the outside world.
struct BackendOptions {
    std::optional<std::filesystem::path> fixture_file;  ///< scripted LLM backend
    std::optional<std::filesystem::path> recorded_dir;  ///< recorded search payloads
    std::string judge_spec = "llm"; ///< "llm" | "oracle" | "oracle:flip=<p>"
};

struct PipelineOptions {
    std::filesystem::path task_file;
    std::optional<std::filesystem::path> config_file;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;               ///< overrides config rng_seed
    std::optional<std::filesystem::path> from_text;  ///< pre-extracted document bypass
    std::optional<Stage> stop_after;                 ///< clean stop at a stage boundary
    BackendOptions backend;
};

struct RunReport {
    std::filesystem::path winner_path;
    std::string winner_id;
    std::string top1_title;
    std::string top1_venue;
    int top1_year = 0;
    int paper_pool_size = 0;     ///< records shown to the reranker
    int candidate_pool_size = 0; ///< solvers in the tournament
    int match_count = 0;         ///< lines in elo/matches.log
    int llm_calls = 0;           ///< files in transcripts/
    std::vector<EloState> standings;
    bool finished = false; ///< false when stopped early via stop_after
};

/// Wraps a stage failure with the stage that caused it.
struct StageFailure : std::runtime_error {
    StageFailure(Stage s, std::string reason, int exit_code_hint);
    Stage stage;
    int exit_code;
};

/// Execute the full stage chain (or up to stop_after) in a fresh run directory.
RunReport run_pipeline(const PipelineOptions& opts);

/// Continue an interrupted run; completed stages are reused byte-identically.
RunReport resume_pipeline(const std::filesystem::path& out_dir,
                          const BackendOptions& backend);

/// Stage groups for the CLI subcommands.
RunReport run_stage_group(const std::filesystem::path& out_dir,
                          const BackendOptions& backend, Stage first, Stage last);

/// The Eq.-3 ablation path; requires only a task, no retrieval artifacts.
std::filesystem::path run_ungrounded(const PipelineOptions& opts);

/// Map an exception to the CLI exit-code contract.
int exit_code_for(const std::exception& e);

} // namespace autosg
