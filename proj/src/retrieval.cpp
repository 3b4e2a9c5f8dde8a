#include "autosg/retrieval.hpp"

#include "autosg/arxiv.hpp"
#include "autosg/errors.hpp"
#include "autosg/openalex.hpp"
#include "autosg/util.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <map>
#include <set>
#include <sstream>

namespace autosg {

using nlohmann::json;

const char* source_name(SourceKind s)
{
    return s == SourceKind::openalex ? "openalex" : "arxiv";
}

void QuerySet::validate(const PipelineConfig& cfg) const
{
    if (static_cast<int>(queries.size()) != cfg.n_queries)
        throw ParseError("query set: expected " + std::to_string(cfg.n_queries) +
                         " queries, got " + std::to_string(queries.size()));
    std::set<std::string> seen;
    for (const std::string& q : queries) {
        if (trim(q).empty())
            throw ParseError("query set: empty query");
        if (!seen.insert(q).second)
            throw ParseError("query set: duplicate query `" + q + "`");
    }
}

std::string recorded_payload_name(SourceKind source, const std::string& query)
{
    std::string ext = source == SourceKind::openalex ? ".json" : ".xml";
    return std::string(source_name(source)) + "__" + slugify(query) + "-" +
           fnv1a64_hex(query).substr(8) + ext;
}

RecordedFetcher::RecordedFetcher(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string RecordedFetcher::fetch(SourceKind source, const std::string& query, int cap)
{
    (void)cap; // recorded payloads already reflect the request cap
    auto path = dir_ / recorded_payload_name(source, query);
    if (!std::filesystem::exists(path))
        throw NetworkError("no recorded payload for (" +
                           std::string(source_name(source)) + ", `" + query +
                           "`): " + path.string());
    return read_file(path);
}

LiveSearchFetcher::LiveSearchFetcher(HttpGetter& getter, PipelineConfig cfg)
    : getter_(getter), cfg_(std::move(cfg))
{
}

std::string LiveSearchFetcher::fetch(SourceKind source, const std::string& query,
                                     int cap)
{
    std::string url = source == SourceKind::openalex
                          ? openalex_works_url(cfg_.openalex_base, query, cap,
                                               cfg_.mailto)
                          : arxiv_query_url(cfg_.arxiv_base, query, cap);
    return getter_.get(url);
}

RecordingFetcher::RecordingFetcher(SearchFetcher& inner, std::filesystem::path dir)
    : inner_(inner), dir_(std::move(dir))
{
}

std::string RecordingFetcher::fetch(SourceKind source, const std::string& query,
                                    int cap)
{
    std::string payload = inner_.fetch(source, query, cap);
    std::lock_guard<std::mutex> lock(mutex_);
    write_file(dir_ / recorded_payload_name(source, query), payload);
    return payload;
}

QuerySet rewrite_queries(LlmGateway& gateway, const PromptLibrary& lib,
                         const TaskPrompt& task, const PipelineConfig& cfg)
{
    std::string rendered = render_task(lib, task);
    std::string bound = bind_template(lib.get("rewrite"), {{"task_prompt", rendered}});
    auto [system, user] = split_chat_prompt(bound);

    ChatRequest req;
    req.system = system;
    req.user = user;
    req.temperature = cfg.temperature;
    req.max_tokens = cfg.max_output_tokens;
    req.stage = Stage::rewrite;
    Transcript t = gateway.chat(req);

    auto obj = find_json_with_key(t.response, "search_queries");
    if (!obj)
        throw ParseError("rewrite: response has no JSON object with `search_queries`");
    if (!(*obj)["search_queries"].is_array())
        throw ParseError("rewrite: `search_queries` is not an array");

    QuerySet qs;
    qs.transcript_seq = t.seq;
    for (const json& q : (*obj)["search_queries"]) {
        if (!q.is_string())
            throw ParseError("rewrite: non-string entry in `search_queries`");
        qs.queries.push_back(q.get<std::string>());
    }
    qs.validate(cfg);
    return qs;
}

std::vector<PaperRecord> search_source(SearchFetcher& fetcher, const std::string& query,
                                       SourceKind source, int cap)
{
    std::string payload = fetcher.fetch(source, query, cap);
    return source == SourceKind::openalex ? parse_openalex_works(payload, cap)
                                          : parse_arxiv_feed(payload, cap);
}

std::vector<PaperRecord> run_searches(SearchFetcher& fetcher, const QuerySet& queries,
                                      const PipelineConfig& cfg,
                                      std::vector<std::string>* failures)
{
    struct Slot {
        std::string query;
        SourceKind source;
        int cap;
    };
    std::vector<Slot> slots;
    for (const std::string& q : queries.queries) {
        slots.push_back({q, SourceKind::openalex, cfg.recall_openalex});
        slots.push_back({q, SourceKind::arxiv, cfg.recall_arxiv});
    }

    std::vector<std::future<std::vector<PaperRecord>>> futures;
    futures.reserve(slots.size());
    for (const Slot& slot : slots)
        futures.push_back(std::async(std::launch::async, [&fetcher, slot] {
            return search_source(fetcher, slot.query, slot.source, slot.cap);
        }));

    // Merge in slot order so results are deterministic regardless of
    // completion order; a failed query contributes zero records.
    std::vector<PaperRecord> all;
    for (size_t i = 0; i < futures.size(); ++i) {
        try {
            auto recs = futures[i].get();
            all.insert(all.end(), recs.begin(), recs.end());
        } catch (const std::exception& e) {
            if (failures)
                failures->push_back(std::string(source_name(slots[i].source)) + "/`" +
                                    slots[i].query + "`: " + e.what());
        }
    }
    return all;
}

std::string normalize_title(std::string_view title)
{
    std::string out;
    for (char ch : title) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c))
            out += static_cast<char>(std::tolower(c));
    }
    return out;
}

namespace {

std::string dedup_key(const PaperRecord& r)
{
    if (!r.doi.empty())
        return "doi:" + to_lower(r.doi);
    if (!r.arxiv_id.empty()) {
        // Version suffixes collapse (v1/v2 are the same work).
        std::string id = to_lower(r.arxiv_id);
        size_t v = id.rfind('v');
        if (v != std::string::npos && v + 1 < id.size() &&
            std::all_of(id.begin() + v + 1, id.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            id = id.substr(0, v);
        return "arxiv:" + id;
    }
    return "title:" + normalize_title(r.title);
}

std::vector<PaperRecord> pool_one_source(const std::vector<PaperRecord>& records,
                                         SourceKind source, int keep)
{
    // Dedup: the better retrieval rank survives a key collision.
    std::map<std::string, PaperRecord> by_key;
    std::vector<std::string> order;
    for (const PaperRecord& r : records) {
        if (r.source != source)
            continue;
        std::string key = dedup_key(r);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            by_key[key] = r;
            order.push_back(key);
        } else if (r.rank < it->second.rank) {
            it->second = r;
        }
    }

    std::vector<PaperRecord> unique;
    unique.reserve(order.size());
    for (const std::string& key : order)
        unique.push_back(by_key[key]);

    // Recency first; ties by citations, then retrieval rank, then title.
    std::sort(unique.begin(), unique.end(),
              [](const PaperRecord& a, const PaperRecord& b) {
                  if (a.year != b.year)
                      return a.year > b.year;
                  if (a.citations != b.citations)
                      return a.citations > b.citations;
                  if (a.rank != b.rank)
                      return a.rank < b.rank;
                  return a.title < b.title;
              });

    if (static_cast<int>(unique.size()) > keep)
        unique.resize(keep);
    return unique;
}

} // namespace

std::vector<PaperRecord> build_candidate_pool(const std::vector<PaperRecord>& records,
                                              const PipelineConfig& cfg)
{
    std::vector<PaperRecord> pool =
        pool_one_source(records, SourceKind::openalex, cfg.keep_openalex);
    std::vector<PaperRecord> ax =
        pool_one_source(records, SourceKind::arxiv, cfg.keep_arxiv);
    pool.insert(pool.end(), ax.begin(), ax.end());
    return pool;
}

std::string format_candidate_metadata(const std::vector<PaperRecord>& pool)
{
    std::ostringstream out;
    for (size_t i = 0; i < pool.size(); ++i) {
        const PaperRecord& r = pool[i];
        out << "[" << (i + 1) << "] Title: " << r.title << "\n";
        out << "    Source: " << source_name(r.source) << "\n";
        out << "    Venue: " << (r.venue.empty() ? "unknown" : r.venue) << "\n";
        out << "    Year: " << r.year << "\n";
        out << "    Citations: " << r.citations << "\n";
        if (!r.doi.empty())
            out << "    DOI: " << r.doi << "\n";
        if (!r.arxiv_id.empty())
            out << "    arXiv: " << r.arxiv_id << "\n";
        out << "    Abstract: "
            << (r.abstract_text.empty() ? "(not available)" : r.abstract_text) << "\n";
        if (i + 1 < pool.size())
            out << "\n";
    }
    return out.str();
}

RerankDecision rerank_top1(LlmGateway& gateway, const PromptLibrary& lib,
                           const std::vector<PaperRecord>& pool,
                           const TaskPrompt& task, const PipelineConfig& cfg)
{
    if (pool.empty())
        throw InputError("rerank: candidate pool is empty");

    auto bindings = task_bindings(task);
    bindings["candidate_metadata"] = format_candidate_metadata(pool);
    std::string bound = bind_template(lib.get("rerank"), bindings);
    auto [system, user] = split_chat_prompt(bound);

    ChatRequest req;
    req.system = system;
    req.user = user;
    req.temperature = cfg.temperature;
    req.max_tokens = cfg.max_output_tokens;
    req.stage = Stage::rerank;
    Transcript t = gateway.chat(req);

    auto obj = find_json_with_key(t.response, "top1");
    if (!obj)
        throw ParseError("rerank: response has no JSON object with `top1`");
    const json& top1 = (*obj)["top1"];
    if (!top1.is_array() || top1.empty() || !top1[0].is_object())
        throw ParseError("rerank: `top1` must be a non-empty array");
    const json& entry = top1[0];

    RerankDecision decision;
    decision.transcript_seq = t.seq;
    decision.algorithm_name = entry.value("algorithm_name", "");
    decision.paper_title = entry.value("paper_title", "");
    decision.venue = entry.value("venue", "");
    if (entry.contains("year") && entry["year"].is_number())
        decision.year = entry["year"].get<int>();
    decision.reason = entry.value("reason", "");
    if (decision.paper_title.empty())
        throw ParseError("rerank: `paper_title` missing in top1 entry");

    std::string wanted = normalize_title(decision.paper_title);
    for (size_t i = 0; i < pool.size(); ++i) {
        if (normalize_title(pool[i].title) == wanted) {
            decision.resolved_index = static_cast<int>(i);
            decision.record = pool[i];
            return decision;
        }
    }
    throw ParseError("rerank: recommended title matches no pool record "
                     "(possible hallucination): " +
                     decision.paper_title);
}

} // namespace autosg
