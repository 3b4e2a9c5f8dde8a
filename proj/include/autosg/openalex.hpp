#pragma once

#include "autosg/retrieval.hpp"

#include <string>
#include <vector>

namespace autosg {

/// Works-search URL with relevance sort and polite-use contact.
std::string openalex_works_url(const std::string& base, const std::string& query,
                               int cap, const std::string& mailto);

/// Parse a works-search JSON payload into at most `cap` records.
std::vector<PaperRecord> parse_openalex_works(const std::string& payload, int cap);

/// Rebuild plain abstract text from OpenAlex's inverted index form.
std::string reconstruct_abstract(const nlohmann::json& inverted_index);

} // namespace autosg
