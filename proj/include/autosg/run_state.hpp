#pragma once

#include "autosg/config.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace autosg {

/// Pipeline stages in execution order.
enum class Stage {
    rewrite,
    search,
    pool,
    rerank,
    fulltext,
    gen1,
    gen2,
    describe,
    refine,
    tournament,
};

inline constexpr int kStageCount = 10;
const std::array<Stage, kStageCount>& all_stages();
const char* stage_name(Stage s);
std::optional<Stage> stage_from_name(std::string_view name);

enum class StageStatus { pending, complete, failed };
const char* stage_status_name(StageStatus s);

/// Persisted per-run checkpoint: one manifest plus a config snapshot in the
/// run directory. Completion respects stage order; resuming never touches
/// artifacts of completed stages.
class RunState {
public:
    /// Initialize a fresh run directory (must be empty or absent).
    static RunState create(const std::filesystem::path& dir,
                           const PipelineConfig& cfg, std::uint64_t seed);

    /// Open an existing run directory, checking manifest/snapshot integrity.
    static RunState open(const std::filesystem::path& dir);

    const std::filesystem::path& dir() const { return dir_; }
    std::uint64_t seed() const { return seed_; }
    const PipelineConfig& config() const { return config_; }

    StageStatus status(Stage s) const;
    bool is_complete(Stage s) const { return status(s) == StageStatus::complete; }

    /// Record stage completion with its artifact manifest (paths relative to
    /// the run directory) and the transcript sequence numbers it produced.
    void mark_complete(Stage s, std::vector<std::string> artifacts,
                       std::vector<int> transcripts, const std::string& note = "");
    void mark_failed(Stage s, const std::string& error);

    const std::vector<std::string>& artifacts(Stage s) const;
    const std::vector<int>& transcripts(Stage s) const;
    std::string note(Stage s) const;

    /// First stage that is not complete; nullopt when the run is finished.
    std::optional<Stage> next_pending() const;

    /// Highest transcript sequence recorded by completed stages.
    int last_transcript_seq() const;

    /// Drop all state for stages that are not complete (used on resume to
    /// clear partial output of an interrupted stage).
    void reset_incomplete();

    void save() const;

private:
    RunState() = default;

    std::filesystem::path dir_;
    PipelineConfig config_;
    std::uint64_t seed_ = 0;
    std::string config_digest_;

    struct StageEntry {
        StageStatus status = StageStatus::pending;
        std::vector<std::string> artifacts;
        std::vector<int> transcripts;
        std::string note;
        std::string error;
    };
    std::array<StageEntry, kStageCount> stages_;
};

} // namespace autosg
