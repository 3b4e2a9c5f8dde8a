#include "autosg/arxiv.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <algorithm>
#include <cctype>

namespace autosg {

namespace xmllite {

std::string decode_entities(const std::string& s)
{
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        size_t semi = s.find(';', i);
        if (semi == std::string::npos || semi - i > 10) {
            out += s[i++];
            continue;
        }
        std::string ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else if (!ent.empty() && ent[0] == '#') {
            long code = 0;
            try {
                code = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                           ? std::stol(ent.substr(2), nullptr, 16)
                           : std::stol(ent.substr(1));
            } catch (const std::exception&) {
                code = 0;
            }
            if (code > 0 && code < 128) {
                out += static_cast<char>(code);
            } else if (code >= 128) {
                // UTF-8 encode.
                if (code < 0x800) {
                    out += static_cast<char>(0xC0 | (code >> 6));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else {
                    out += static_cast<char>(0xE0 | (code >> 12));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                }
            }
        } else {
            out += s.substr(i, semi - i + 1);
        }
        i = semi + 1;
    }
    return out;
}

namespace {

std::string local_name(std::string_view tag)
{
    size_t colon = tag.rfind(':');
    return std::string(colon == std::string_view::npos ? tag : tag.substr(colon + 1));
}

struct Tag {
    std::string name;   // local name
    std::string attrs;
    size_t begin = 0;   // position of '<'
    size_t end = 0;     // position just past '>'
    bool closing = false;
    bool self_closing = false;
};

/// Next tag at or after `pos`; skips comments, CDATA, PIs, and doctypes.
bool next_tag(const std::string& text, size_t pos, Tag& out)
{
    while ((pos = text.find('<', pos)) != std::string::npos) {
        if (text.compare(pos, 4, "<!--") == 0) {
            size_t close = text.find("-->", pos);
            if (close == std::string::npos)
                return false;
            pos = close + 3;
            continue;
        }
        if (text.compare(pos, 9, "<![CDATA[") == 0) {
            size_t close = text.find("]]>", pos);
            if (close == std::string::npos)
                return false;
            pos = close + 3;
            continue;
        }
        if (pos + 1 < text.size() && (text[pos + 1] == '?' || text[pos + 1] == '!')) {
            size_t close = text.find('>', pos);
            if (close == std::string::npos)
                return false;
            pos = close + 1;
            continue;
        }
        size_t close = text.find('>', pos);
        if (close == std::string::npos)
            return false;

        std::string body = text.substr(pos + 1, close - pos - 1);
        out.begin = pos;
        out.end = close + 1;
        out.closing = !body.empty() && body[0] == '/';
        if (out.closing)
            body = body.substr(1);
        out.self_closing = !body.empty() && body.back() == '/';
        if (out.self_closing)
            body.pop_back();

        size_t space = body.find_first_of(" \t\r\n");
        std::string qname = space == std::string::npos ? body : body.substr(0, space);
        out.name = local_name(trim(qname));
        out.attrs = space == std::string::npos ? "" : trim(body.substr(space + 1));
        return true;
    }
    return false;
}

} // namespace

std::vector<Element> find_elements(const std::string& text,
                                   const std::string& target)
{
    std::vector<Element> found;
    size_t pos = 0;
    Tag tag;
    while (next_tag(text, pos, tag)) {
        pos = tag.end;
        if (tag.closing || tag.name != target)
            continue;
        if (tag.self_closing) {
            found.push_back({tag.name, tag.attrs, ""});
            continue;
        }
        // Find the matching close tag, tracking nesting of the same name.
        size_t scan = tag.end;
        int depth = 1;
        Tag inner;
        size_t content_end = std::string::npos;
        while (next_tag(text, scan, inner)) {
            scan = inner.end;
            if (inner.name != target)
                continue;
            if (inner.self_closing)
                continue;
            depth += inner.closing ? -1 : 1;
            if (depth == 0) {
                content_end = inner.begin;
                break;
            }
        }
        if (content_end == std::string::npos)
            throw ParseError("xml: unbalanced <" + target + "> element");
        found.push_back({tag.name, tag.attrs, text.substr(tag.end, content_end - tag.end)});
        pos = scan;
    }
    return found;
}

std::string text_of(const std::string& scope, const std::string& target)
{
    auto elems = find_elements(scope, target);
    if (elems.empty())
        return "";
    std::string inner = elems.front().inner;
    // Unwrap a single CDATA section when present.
    size_t cd = inner.find("<![CDATA[");
    if (cd != std::string::npos) {
        size_t end = inner.find("]]>", cd);
        if (end != std::string::npos)
            inner = inner.substr(cd + 9, end - cd - 9);
    }
    return trim(decode_entities(inner));
}

std::string attr_value(const std::string& attrs, const std::string& name)
{
    size_t pos = 0;
    while (pos < attrs.size()) {
        size_t eq = attrs.find('=', pos);
        if (eq == std::string::npos)
            return "";
        std::string key = trim(attrs.substr(pos, eq - pos));
        size_t q1 = attrs.find_first_of("\"'", eq);
        if (q1 == std::string::npos)
            return "";
        size_t q2 = attrs.find(attrs[q1], q1 + 1);
        if (q2 == std::string::npos)
            return "";
        if (local_name(key) == name)
            return decode_entities(attrs.substr(q1 + 1, q2 - q1 - 1));
        pos = q2 + 1;
    }
    return "";
}

} // namespace xmllite

std::string arxiv_query_url(const std::string& base, const std::string& query, int cap)
{
    return base + "/api/query?search_query=all:" + url_encode("\"" + query + "\"") +
           "&start=0&max_results=" + std::to_string(cap);
}

namespace {

std::string strip_arxiv_id(std::string id_url)
{
    size_t abs = id_url.find("/abs/");
    if (abs != std::string::npos)
        id_url = id_url.substr(abs + 5);
    return trim(id_url);
}

std::string collapse_whitespace(const std::string& s)
{
    std::string out;
    bool in_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !out.empty())
                out += ' ';
            in_space = false;
            out += c;
        }
    }
    return out;
}

} // namespace

std::vector<PaperRecord> parse_arxiv_feed(const std::string& payload, int cap)
{
    if (payload.find("<feed") == std::string::npos)
        throw ParseError("arxiv: payload is not an Atom feed");

    std::vector<PaperRecord> records;
    for (const xmllite::Element& entry : xmllite::find_elements(payload, "entry")) {
        if (static_cast<int>(records.size()) >= cap)
            break;
        PaperRecord r;
        r.source = SourceKind::arxiv;
        r.title = collapse_whitespace(xmllite::text_of(entry.inner, "title"));
        r.abstract_text = collapse_whitespace(xmllite::text_of(entry.inner, "summary"));
        r.arxiv_id = strip_arxiv_id(xmllite::text_of(entry.inner, "id"));
        r.doi = xmllite::text_of(entry.inner, "doi");

        std::string published = xmllite::text_of(entry.inner, "published");
        if (published.size() >= 4) {
            try {
                r.year = std::stoi(published.substr(0, 4));
            } catch (const std::exception&) {
                r.year = 0;
            }
        }

        r.venue = xmllite::text_of(entry.inner, "journal_ref");
        if (r.venue.empty())
            r.venue = "arXiv";

        for (const xmllite::Element& link : xmllite::find_elements(entry.inner, "link")) {
            if (xmllite::attr_value(link.attrs, "title") == "pdf" ||
                xmllite::attr_value(link.attrs, "type") == "application/pdf") {
                r.fulltext_url = xmllite::attr_value(link.attrs, "href");
                break;
            }
        }
        if (r.fulltext_url.empty() && !r.arxiv_id.empty())
            r.fulltext_url = "http://arxiv.org/pdf/" + r.arxiv_id;

        if (!r.valid())
            continue;
        r.rank = static_cast<int>(records.size()) + 1;
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace autosg
