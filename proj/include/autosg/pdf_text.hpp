#pragma once

#include <string>

namespace autosg {

/// True when the payload starts with a PDF magic header.
bool looks_like_pdf(std::string_view payload);

/// Best-effort text extraction from a PDF: decodes Flate streams and pulls
/// strings from Tj/TJ/'/" text operators. Suitable for digitally-born PDFs.
std::string extract_pdf_text(const std::string& payload);

} // namespace autosg
