#pragma once

#include "autosg/retrieval.hpp"
#include "autosg/transport.hpp"

#include <optional>

namespace autosg {

/// Acquire the Top-1 paper's full text. Resolution order:
///   - `override_path` set: read it directly (method "provided");
///   - locator is an http(s) URL: download via `getter`;
///   - locator is a local path: read it.
/// PDF payloads go through the external extractor command when configured,
/// else the built-in extractor; text payloads pass through. The result must
/// clear cfg.fulltext_min_chars.
DocumentText acquire_fulltext(const RerankDecision& decision, HttpGetter* getter,
                              const PipelineConfig& cfg,
                              const std::optional<std::filesystem::path>& override_path);

} // namespace autosg
