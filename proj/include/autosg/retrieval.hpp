#pragma once

#include "autosg/config.hpp"
#include "autosg/gateway.hpp"
#include "autosg/prompts.hpp"
#include "autosg/task.hpp"
#include "autosg/transport.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace autosg {

enum class SourceKind { openalex, arxiv };
const char* source_name(SourceKind s);

/// Normalized scholarly-metadata record from either retrieval source.
struct PaperRecord {
    SourceKind source = SourceKind::openalex;
    std::string title;
    std::string abstract_text;
    std::string venue;
    int year = 0;
    long long citations = 0; ///< 0 when unknown
    std::string doi;         ///< bare DOI, no resolver prefix
    std::string arxiv_id;
    std::string fulltext_url;
    int rank = 0; ///< 1-based retrieval rank within its query

    bool valid() const;
};

/// Ordered rewritten search queries; length must equal config n_queries.
struct QuerySet {
    std::vector<std::string> queries;
    int transcript_seq = 0;

    void validate(const PipelineConfig& cfg) const;
};

/// The reranker's Top-1 verdict, resolved against the candidate pool.
struct RerankDecision {
    std::string algorithm_name;
    std::string paper_title;
    std::string venue;
    int year = 0;
    std::string reason;
    int resolved_index = -1; ///< index into the pool it resolved to
    PaperRecord record;
    int transcript_seq = 0;
};

/// Retrieved full text grounding solver generation.
struct DocumentText {
    std::string text;
    std::string locator;
    std::string method; ///< provided | plain | pdf-builtin | pdf-external
};

/// Raw payload access for (source, query) searches; live, recorded, or
/// recording implementations.
class SearchFetcher {
public:
    virtual ~SearchFetcher() = default;
    virtual std::string fetch(SourceKind source, const std::string& query, int cap) = 0;
};

/// File name used by the recorded-payload format: one file per (source, query).
std::string recorded_payload_name(SourceKind source, const std::string& query);

/// Replays payloads bit-exactly from a directory of recorded files.
class RecordedFetcher : public SearchFetcher {
public:
    explicit RecordedFetcher(std::filesystem::path dir);
    std::string fetch(SourceKind source, const std::string& query, int cap) override;

private:
    std::filesystem::path dir_;
};

/// Builds source URLs and fetches them over HTTP.
class LiveSearchFetcher : public SearchFetcher {
public:
    LiveSearchFetcher(HttpGetter& getter, PipelineConfig cfg);
    std::string fetch(SourceKind source, const std::string& query, int cap) override;

private:
    HttpGetter& getter_;
    PipelineConfig cfg_;
};

/// Decorator teeing every payload into a directory in the recorded format,
/// making any run replayable later.
class RecordingFetcher : public SearchFetcher {
public:
    RecordingFetcher(SearchFetcher& inner, std::filesystem::path dir);
    std::string fetch(SourceKind source, const std::string& query, int cap) override;

private:
    SearchFetcher& inner_;
    std::filesystem::path dir_;
    std::mutex mutex_;
};

/// Ask the gateway to rewrite the task into config.n_queries search strings.
QuerySet rewrite_queries(LlmGateway& gateway, const PromptLibrary& lib,
                         const TaskPrompt& task, const PipelineConfig& cfg);

/// Fetch and parse one (query, source) search; at most `cap` records, each
/// with source and 1-based rank set.
std::vector<PaperRecord> search_source(SearchFetcher& fetcher, const std::string& query,
                                       SourceKind source, int cap);

/// All (query, source) searches; failed queries contribute zero records.
std::vector<PaperRecord> run_searches(SearchFetcher& fetcher, const QuerySet& queries,
                                      const PipelineConfig& cfg,
                                      std::vector<std::string>* failures = nullptr);

/// Per-source dedup, recency sort, truncation, then OpenAlex block followed
/// by arXiv block. Total function; idempotent.
std::vector<PaperRecord> build_candidate_pool(const std::vector<PaperRecord>& records,
                                              const PipelineConfig& cfg);

/// Casefold and strip punctuation/whitespace for title comparison.
std::string normalize_title(std::string_view title);

/// Numbered metadata block shown to the reranker.
std::string format_candidate_metadata(const std::vector<PaperRecord>& pool);

/// LLM rerank to Top-1; the returned title must resolve to a pool record.
RerankDecision rerank_top1(LlmGateway& gateway, const PromptLibrary& lib,
                           const std::vector<PaperRecord>& pool,
                           const TaskPrompt& task, const PipelineConfig& cfg);

} // namespace autosg
