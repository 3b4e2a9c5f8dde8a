#pragma once

#include <string>
#include <vector>

namespace autosg {

/// Trailing comment that marks paper-critical code blocks.
inline constexpr const char* kImportantMarker = "# **IMPORTANT COMPONENT**";

enum class SolverStage { ungrounded, preliminary, initial, refined };

const char* solver_stage_name(SolverStage s);

/// 1-based inclusive line range.
struct LineSpan {
    int first = 0;
    int last = 0;
    bool operator==(const LineSpan&) const = default;
};

/// A solver source artifact plus its annotations and provenance.
struct SolverArtifact {
    std::string id;
    SolverStage stage = SolverStage::ungrounded;
    std::string source_text;
    std::vector<LineSpan> important_spans;
    std::string description;              ///< semantic description, empty until reverse step
    std::vector<std::string> provenance;  ///< transcript references that produced it

    void validate() const;
};

/// One span per line carrying the marker comment.
std::vector<LineSpan> extract_important_spans(const std::string& source_text);

} // namespace autosg
