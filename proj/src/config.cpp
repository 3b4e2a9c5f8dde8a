#include "autosg/config.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace autosg {

namespace {

// Field table drives parsing and serialization from one place.
struct FieldDef {
    enum Kind { Int, Real, Uint, Text } kind;
    std::function<void(PipelineConfig&, const std::string&)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

std::string format_real(double v)
{
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

long long to_int(const std::string& key, const std::string& value)
{
    try {
        size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("config: field `" + key + "` is not an integer: " + value);
    }
}

double to_real(const std::string& key, const std::string& value)
{
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size() || !std::isfinite(v))
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("config: field `" + key + "` is not a number: " + value);
    }
}

const std::map<std::string, FieldDef>& field_table()
{
#define INT_FIELD(name)                                                        \
    {#name, {FieldDef::Int,                                                    \
             [](PipelineConfig& c, const std::string& v) {                     \
                 c.name = static_cast<int>(to_int(#name, v));                  \
             },                                                                \
             [](const PipelineConfig& c) { return std::to_string(c.name); }}}
#define REAL_FIELD(name)                                                       \
    {#name, {FieldDef::Real,                                                   \
             [](PipelineConfig& c, const std::string& v) {                     \
                 c.name = to_real(#name, v);                                   \
             },                                                                \
             [](const PipelineConfig& c) { return format_real(c.name); }}}
#define TEXT_FIELD(name)                                                       \
    {#name, {FieldDef::Text,                                                   \
             [](PipelineConfig& c, const std::string& v) { c.name = v; },      \
             [](const PipelineConfig& c) { return c.name; }}}

    static const std::map<std::string, FieldDef> table = {
        INT_FIELD(n_queries),
        INT_FIELD(recall_openalex),
        INT_FIELD(recall_arxiv),
        INT_FIELD(keep_openalex),
        INT_FIELD(keep_arxiv),
        INT_FIELD(rerank_pool),
        INT_FIELD(n_refined),
        REAL_FIELD(elo_initial_rating),
        REAL_FIELD(elo_initial_rd),
        REAL_FIELD(elo_prune_gap),
        INT_FIELD(matches_phase1),
        INT_FIELD(matches_total),
        REAL_FIELD(phase2_lambda),
        {"rng_seed",
         {FieldDef::Uint,
          [](PipelineConfig& c, const std::string& v) {
              c.rng_seed = static_cast<std::uint64_t>(to_int("rng_seed", v));
          },
          [](const PipelineConfig& c) { return std::to_string(c.rng_seed); }}},
        TEXT_FIELD(llm_endpoint),
        TEXT_FIELD(llm_model),
        TEXT_FIELD(credential_env),
        REAL_FIELD(temperature),
        REAL_FIELD(temperature_refine),
        INT_FIELD(max_output_tokens),
        INT_FIELD(retry_attempts),
        INT_FIELD(retry_backoff_ms),
        TEXT_FIELD(openalex_base),
        TEXT_FIELD(arxiv_base),
        TEXT_FIELD(mailto),
        INT_FIELD(rate_limit_ms),
        INT_FIELD(fulltext_min_chars),
        INT_FIELD(doc_max_chars),
        TEXT_FIELD(pdf_extractor_cmd),
    };
#undef INT_FIELD
#undef REAL_FIELD
#undef TEXT_FIELD
    return table;
}

void require_positive(const char* field, long long v)
{
    if (v < 1)
        throw InputError(std::string("config: ") + field + " must be >= 1, got " +
                         std::to_string(v));
}

} // namespace

void PipelineConfig::validate() const
{
    require_positive("n_queries", n_queries);
    require_positive("recall_openalex", recall_openalex);
    require_positive("recall_arxiv", recall_arxiv);
    require_positive("keep_openalex", keep_openalex);
    require_positive("keep_arxiv", keep_arxiv);
    require_positive("rerank_pool", rerank_pool);
    require_positive("n_refined", n_refined);
    require_positive("matches_phase1", matches_phase1);
    require_positive("matches_total", matches_total);
    require_positive("max_output_tokens", max_output_tokens);
    require_positive("retry_attempts", retry_attempts);
    require_positive("fulltext_min_chars", fulltext_min_chars);
    require_positive("doc_max_chars", doc_max_chars);

    if (rerank_pool != keep_openalex + keep_arxiv)
        throw InputError("config: rerank_pool must equal keep_openalex + keep_arxiv (" +
                         std::to_string(keep_openalex) + "+" + std::to_string(keep_arxiv) +
                         " != " + std::to_string(rerank_pool) + ")");
    if (matches_total < matches_phase1)
        throw InputError("config: matches_total must be >= matches_phase1 (" +
                         std::to_string(matches_total) + " < " +
                         std::to_string(matches_phase1) + ")");
    if (elo_initial_rd < 30.0)
        throw InputError("config: elo_initial_rd must be >= 30 (the decay floor), got " +
                         format_real(elo_initial_rd));
    if (elo_initial_rating <= 0.0)
        throw InputError("config: elo_initial_rating must be positive");
    if (elo_prune_gap <= 0.0)
        throw InputError("config: elo_prune_gap must be positive");
    if (temperature < 0.0 || temperature_refine < 0.0)
        throw InputError("config: temperatures must be >= 0");
    if (retry_backoff_ms < 0 || rate_limit_ms < 0)
        throw InputError("config: intervals must be >= 0");
}

std::string PipelineConfig::serialize() const
{
    std::ostringstream out;
    for (const auto& [name, def] : field_table())
        out << name << " = " << def.get(*this) << "\n";
    return out.str();
}

PipelineConfig parse_config_text(std::string_view text)
{
    PipelineConfig cfg;
    auto kv = parse_kv(text);
    const auto& table = field_table();
    for (const auto& [key, value] : kv) {
        auto it = table.find(key);
        if (it == table.end())
            throw ParseError("config: unknown key `" + key + "`");
        it->second.set(cfg, value);
    }
    cfg.validate();
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path)
{
    return parse_config_text(read_file(path));
}

} // namespace autosg
