#include "autosg/artifact.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

namespace autosg {

const char* solver_stage_name(SolverStage s)
{
    switch (s) {
    case SolverStage::ungrounded: return "ungrounded";
    case SolverStage::preliminary: return "preliminary";
    case SolverStage::initial: return "initial";
    case SolverStage::refined: return "refined";
    }
    return "?";
}

void SolverArtifact::validate() const
{
    if (id.empty())
        throw InputError("artifact: empty id");
    if (source_text.empty())
        throw InputError("artifact `" + id + "`: empty source_text");
    int line_count = static_cast<int>(split_lines(source_text).size());
    for (const LineSpan& span : important_spans) {
        if (span.first < 1 || span.last < span.first || span.last > line_count)
            throw InputError("artifact `" + id + "`: span [" +
                             std::to_string(span.first) + "," +
                             std::to_string(span.last) +
                             "] outside source (" + std::to_string(line_count) +
                             " lines)");
    }
}

std::vector<LineSpan> extract_important_spans(const std::string& source_text)
{
    std::vector<LineSpan> spans;
    int line_no = 0;
    for (const std::string& line : split_lines(source_text)) {
        ++line_no;
        if (line.find(kImportantMarker) != std::string::npos)
            spans.push_back({line_no, line_no});
    }
    return spans;
}

} // namespace autosg
