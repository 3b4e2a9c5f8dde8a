#include "autosg/pdf_text.hpp"

#include "autosg/errors.hpp"

#include <zlib.h>

#include <cctype>
#include <vector>

namespace autosg {

bool looks_like_pdf(std::string_view payload)
{
    return payload.rfind("%PDF-", 0) == 0;
}

namespace {

std::string inflate_stream(const std::string& data)
{
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK)
        return "";
    std::string out;
    std::vector<unsigned char> buf(64 * 1024);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    int ret = Z_OK;
    while (ret == Z_OK) {
        zs.next_out = buf.data();
        zs.avail_out = static_cast<uInt>(buf.size());
        ret = inflate(&zs, Z_NO_FLUSH);
        if (ret != Z_OK && ret != Z_STREAM_END)
            break;
        out.append(reinterpret_cast<char*>(buf.data()), buf.size() - zs.avail_out);
        if (ret == Z_STREAM_END)
            break;
        if (zs.avail_in == 0 && zs.avail_out != 0)
            break;
    }
    inflateEnd(&zs);
    return ret == Z_STREAM_END || !out.empty() ? out : "";
}

/// Decode a PDF literal string starting at the '(' in `s[pos]`; appends the
/// decoded characters and returns the position after the closing ')'.
size_t decode_literal_string(const std::string& s, size_t pos, std::string& out)
{
    int depth = 0;
    size_t i = pos;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\\' && i + 1 < s.size()) {
            char e = s[++i];
            switch (e) {
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            case 't': out += '\t'; break;
            case 'b': case 'f': break;
            case '(': out += '('; break;
            case ')': out += ')'; break;
            case '\\': out += '\\'; break;
            case '\n': break; // line continuation
            default:
                if (e >= '0' && e <= '7') {
                    int code = e - '0';
                    for (int k = 0; k < 2 && i + 1 < s.size() && s[i + 1] >= '0' &&
                                    s[i + 1] <= '7';
                         ++k)
                        code = code * 8 + (s[++i] - '0');
                    if (code >= 32 && code < 127)
                        out += static_cast<char>(code);
                } else {
                    out += e;
                }
            }
        } else if (c == '(') {
            if (depth++ > 0)
                out += c;
        } else if (c == ')') {
            if (--depth == 0)
                return i + 1;
            out += c;
        } else {
            out += c;
        }
    }
    return i;
}

/// Pull text shown by Tj, TJ, ' and " operators out of a content stream.
std::string extract_content_text(const std::string& stream)
{
    std::string out;
    std::string pending;
    size_t i = 0;
    while (i < stream.size()) {
        char c = stream[i];
        if (c == '(') {
            pending.clear();
            i = decode_literal_string(stream, i, pending);
            // The next operator decides whether this string is shown.
            size_t j = i;
            while (j < stream.size() &&
                   std::isspace(static_cast<unsigned char>(stream[j])))
                ++j;
            // Inside TJ arrays the strings alternate with kerning numbers;
            // they are shown when the array ends with TJ.
            out += pending;
            i = j;
        } else if (c == 'T' && i + 1 < stream.size() &&
                   (stream[i + 1] == 'd' || stream[i + 1] == 'D' ||
                    stream[i + 1] == '*')) {
            if (!out.empty() && out.back() != '\n')
                out += '\n';
            i += 2;
        } else if (c == 'E' && stream.compare(i, 2, "ET") == 0) {
            if (!out.empty() && out.back() != '\n')
                out += '\n';
            i += 2;
        } else {
            ++i;
        }
    }
    return out;
}

} // namespace

std::string extract_pdf_text(const std::string& payload)
{
    if (!looks_like_pdf(payload))
        throw ParseError("not a PDF payload");

    std::string text;
    size_t pos = 0;
    while ((pos = payload.find("stream", pos)) != std::string::npos) {
        // Dictionary immediately precedes the `stream` keyword.
        size_t dict_start = payload.rfind("<<", pos);
        std::string dict = dict_start == std::string::npos
                               ? ""
                               : payload.substr(dict_start, pos - dict_start);
        size_t data_start = pos + 6;
        if (data_start < payload.size() && payload[data_start] == '\r')
            ++data_start;
        if (data_start < payload.size() && payload[data_start] == '\n')
            ++data_start;
        size_t data_end = payload.find("endstream", data_start);
        if (data_end == std::string::npos)
            break;
        std::string data = payload.substr(data_start, data_end - data_start);
        while (!data.empty() && (data.back() == '\n' || data.back() == '\r'))
            data.pop_back();

        if (dict.find("/FlateDecode") != std::string::npos)
            data = inflate_stream(data);

        if (!data.empty() && dict.find("/Image") == std::string::npos)
            text += extract_content_text(data);

        pos = data_end + 9;
    }
    return text;
}

} // namespace autosg
