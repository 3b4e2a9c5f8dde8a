#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace autosg {

/// Pipeline hyperparameters plus transport/backend settings. Defaults cover
/// every field, so an empty config file is valid.
struct PipelineConfig {
    // Retrieval
    int n_queries = 8;        ///< rewritten search queries per task
    int recall_openalex = 30; ///< per-query recall cap, OpenAlex
    int recall_arxiv = 10;    ///< per-query recall cap, arXiv
    int keep_openalex = 25;   ///< post-dedup retention, OpenAlex
    int keep_arxiv = 15;      ///< post-dedup retention, arXiv
    int rerank_pool = 40;     ///< merged candidates shown to the reranker

    // Refinement
    int n_refined = 10; ///< refined candidate solvers per run

    // Elo arena
    double elo_initial_rating = 1500.0;
    double elo_initial_rd = 350.0;
    double elo_prune_gap = 400.0;
    int matches_phase1 = 3;
    int matches_total = 6;
    double phase2_lambda = 10.0;

    std::uint64_t rng_seed = 0;

    // LLM backend
    std::string llm_endpoint;                       ///< chat-completions base URL
    std::string llm_model;                          ///< model name sent on requests
    std::string credential_env = "AUTOSG_API_KEY";  ///< env var holding the API key
    double temperature = 0.2;        ///< deterministic-leaning default
    double temperature_refine = 0.8; ///< diversity-leaning, refinement stage only
    int max_output_tokens = 8192;
    int retry_attempts = 3;
    int retry_backoff_ms = 500;

    // Literature sources
    std::string openalex_base = "https://api.openalex.org";
    std::string arxiv_base = "http://export.arxiv.org";
    std::string mailto;         ///< polite-use contact for OpenAlex
    int rate_limit_ms = 200;    ///< min interval between requests per host

    // Full text
    int fulltext_min_chars = 500;   ///< extraction floor for D_pdf
    int doc_max_chars = 200000;     ///< document truncation budget per prompt
    std::string pdf_extractor_cmd;  ///< external extractor, "%in"/"%out" substituted

    void validate() const;
    std::string serialize() const;
    bool operator==(const PipelineConfig&) const = default;
};

PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config_text(std::string_view text);

} // namespace autosg
