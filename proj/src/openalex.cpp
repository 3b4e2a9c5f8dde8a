#include "autosg/openalex.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <algorithm>
#include <ctime>

namespace autosg {

using nlohmann::json;

std::string openalex_works_url(const std::string& base, const std::string& query,
                               int cap, const std::string& mailto)
{
    std::string url = base + "/works?search=" + url_encode(query) +
                      "&per-page=" + std::to_string(cap) +
                      "&sort=relevance_score:desc";
    if (!mailto.empty())
        url += "&mailto=" + url_encode(mailto);
    return url;
}

std::string reconstruct_abstract(const json& inverted_index)
{
    if (!inverted_index.is_object())
        return "";
    std::vector<std::pair<int, const std::string*>> positions;
    for (const auto& [word, idx] : inverted_index.items())
        for (const auto& pos : idx)
            positions.emplace_back(pos.get<int>(), &word);
    std::sort(positions.begin(), positions.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    for (const auto& [pos, word] : positions) {
        if (!out.empty())
            out += ' ';
        out += *word;
    }
    return out;
}

namespace {

int current_year()
{
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    return tm.tm_year + 1900;
}

std::string strip_doi(std::string doi)
{
    for (const char* prefix : {"https://doi.org/", "http://doi.org/", "doi:"}) {
        if (doi.rfind(prefix, 0) == 0) {
            doi = doi.substr(std::string(prefix).size());
            break;
        }
    }
    return doi;
}

std::string json_string(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        return "";
    return it->get<std::string>();
}

} // namespace

bool PaperRecord::valid() const
{
    return !trim(title).empty() && year >= 1900 && year <= current_year() + 1;
}

std::vector<PaperRecord> parse_openalex_works(const std::string& payload, int cap)
{
    json j = json::parse(payload, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("results"))
        throw ParseError("openalex: payload is not a works-search response");

    std::vector<PaperRecord> records;
    for (const json& work : j["results"]) {
        if (static_cast<int>(records.size()) >= cap)
            break;
        PaperRecord r;
        r.source = SourceKind::openalex;
        r.title = json_string(work, "display_name");
        if (r.title.empty())
            r.title = json_string(work, "title");
        if (work.contains("publication_year") && work["publication_year"].is_number())
            r.year = work["publication_year"].get<int>();
        if (work.contains("cited_by_count") && work["cited_by_count"].is_number())
            r.citations = std::max<long long>(0, work["cited_by_count"].get<long long>());
        r.doi = strip_doi(json_string(work, "doi"));
        if (work.contains("abstract_inverted_index"))
            r.abstract_text = reconstruct_abstract(work["abstract_inverted_index"]);

        if (work.contains("primary_location") && work["primary_location"].is_object()) {
            const json& loc = work["primary_location"];
            if (loc.contains("source") && loc["source"].is_object())
                r.venue = json_string(loc["source"], "display_name");
            r.fulltext_url = json_string(loc, "pdf_url");
        }
        if (r.venue.empty() && work.contains("host_venue") &&
            work["host_venue"].is_object())
            r.venue = json_string(work["host_venue"], "display_name");
        if (work.contains("best_oa_location") && work["best_oa_location"].is_object()) {
            std::string pdf = json_string(work["best_oa_location"], "pdf_url");
            if (!pdf.empty())
                r.fulltext_url = pdf;
        }
        if (r.fulltext_url.empty() && work.contains("open_access") &&
            work["open_access"].is_object())
            r.fulltext_url = json_string(work["open_access"], "oa_url");

        // Records failing the metadata invariants are dropped, not fatal.
        if (!r.valid())
            continue;
        r.rank = static_cast<int>(records.size()) + 1;
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace autosg
