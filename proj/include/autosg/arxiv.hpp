#pragma once

#include "autosg/retrieval.hpp"

#include <string>
#include <vector>

namespace autosg {

std::string arxiv_query_url(const std::string& base, const std::string& query, int cap);

/// Parse an arXiv Atom feed into at most `cap` records. Handles namespaced
/// elements, multiple authors, and absent DOIs.
std::vector<PaperRecord> parse_arxiv_feed(const std::string& payload, int cap);

/// Minimal namespace-tolerant XML helpers used by the Atom parser.
namespace xmllite {

struct Element {
    std::string name;    ///< local name (namespace prefix stripped)
    std::string attrs;   ///< raw attribute text
    std::string inner;   ///< raw inner markup
};

/// All elements with the given local name, scanning `text` non-recursively.
std::vector<Element> find_elements(const std::string& text, const std::string& local_name);

/// First matching element's decoded text content, or "" when absent.
std::string text_of(const std::string& scope, const std::string& local_name);

std::string attr_value(const std::string& attrs, const std::string& name);
std::string decode_entities(const std::string& s);

} // namespace xmllite

} // namespace autosg
