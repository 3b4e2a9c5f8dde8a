#include "autosg/run_state.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <json.hpp>

#include <algorithm>

namespace autosg {

using nlohmann::json;

namespace {

constexpr const char* kManifestFile = "state.manifest";
constexpr const char* kSnapshotFile = "config.snapshot";

const std::array<const char*, kStageCount> kStageNames = {
    "rewrite", "search",   "pool",   "rerank", "fulltext",
    "gen1",    "gen2",     "describe", "refine", "tournament",
};

} // namespace

const std::array<Stage, kStageCount>& all_stages()
{
    static const std::array<Stage, kStageCount> order = {
        Stage::rewrite, Stage::search, Stage::pool,     Stage::rerank,
        Stage::fulltext, Stage::gen1,  Stage::gen2,     Stage::describe,
        Stage::refine,  Stage::tournament,
    };
    return order;
}

const char* stage_name(Stage s)
{
    return kStageNames[static_cast<int>(s)];
}

std::optional<Stage> stage_from_name(std::string_view name)
{
    for (int i = 0; i < kStageCount; ++i)
        if (name == kStageNames[i])
            return static_cast<Stage>(i);
    return std::nullopt;
}

const char* stage_status_name(StageStatus s)
{
    switch (s) {
    case StageStatus::pending: return "pending";
    case StageStatus::complete: return "complete";
    case StageStatus::failed: return "failed";
    }
    return "?";
}

RunState RunState::create(const std::filesystem::path& dir,
                          const PipelineConfig& cfg, std::uint64_t seed)
{
    namespace fs = std::filesystem;
    if (fs::exists(dir / kManifestFile))
        throw StateError("run directory already initialized: " + dir.string());
    fs::create_directories(dir);

    RunState st;
    st.dir_ = dir;
    st.config_ = cfg;
    st.seed_ = seed;

    std::string snapshot = cfg.serialize();
    write_file(dir / kSnapshotFile, snapshot);
    st.config_digest_ = fnv1a64_hex(snapshot);
    st.save();
    return st;
}

RunState RunState::open(const std::filesystem::path& dir)
{
    RunState st;
    st.dir_ = dir;

    std::string manifest_text;
    try {
        manifest_text = read_file(dir / kManifestFile);
    } catch (const InputError&) {
        throw StateError("no run state at " + dir.string());
    }

    json m;
    try {
        m = json::parse(manifest_text);
    } catch (const json::exception& e) {
        throw StateError("corrupted manifest: " + std::string(e.what()));
    }

    std::string snapshot = read_file(dir / kSnapshotFile);
    std::string digest = fnv1a64_hex(snapshot);
    st.config_digest_ = m.at("config_digest").get<std::string>();
    if (digest != st.config_digest_)
        throw StateError("config snapshot does not match manifest digest "
                         "(snapshot edited after the run started?)");
    st.config_ = parse_config_text(snapshot);
    st.seed_ = m.at("seed").get<std::uint64_t>();

    const json& stages = m.at("stages");
    for (int i = 0; i < kStageCount; ++i) {
        const json& e = stages.at(kStageNames[i]);
        StageEntry entry;
        std::string status = e.at("status").get<std::string>();
        if (status == "complete")
            entry.status = StageStatus::complete;
        else if (status == "failed")
            entry.status = StageStatus::failed;
        else if (status == "pending")
            entry.status = StageStatus::pending;
        else
            throw StateError("manifest: bad status `" + status + "`");
        entry.artifacts = e.value("artifacts", std::vector<std::string>{});
        entry.transcripts = e.value("transcripts", std::vector<int>{});
        entry.note = e.value("note", "");
        entry.error = e.value("error", "");
        st.stages_[i] = std::move(entry);
    }

    // Completion must be a prefix-closed set over the stage order.
    bool gap = false;
    for (int i = 0; i < kStageCount; ++i) {
        if (st.stages_[i].status == StageStatus::complete && gap)
            throw StateError("manifest: stage `" + std::string(kStageNames[i]) +
                             "` complete but a predecessor is not");
        if (st.stages_[i].status != StageStatus::complete)
            gap = true;
    }
    return st;
}

StageStatus RunState::status(Stage s) const
{
    return stages_[static_cast<int>(s)].status;
}

void RunState::mark_complete(Stage s, std::vector<std::string> artifacts,
                             std::vector<int> transcripts, const std::string& note)
{
    int idx = static_cast<int>(s);
    for (int i = 0; i < idx; ++i)
        if (stages_[i].status != StageStatus::complete)
            throw StateError("cannot complete `" + std::string(kStageNames[idx]) +
                             "`: predecessor `" + kStageNames[i] + "` is " +
                             stage_status_name(stages_[i].status));
    StageEntry& e = stages_[idx];
    e.status = StageStatus::complete;
    e.artifacts = std::move(artifacts);
    e.transcripts = std::move(transcripts);
    e.note = note;
    e.error.clear();
    save();
}

void RunState::mark_failed(Stage s, const std::string& error)
{
    StageEntry& e = stages_[static_cast<int>(s)];
    e.status = StageStatus::failed;
    e.error = error;
    save();
}

const std::vector<std::string>& RunState::artifacts(Stage s) const
{
    return stages_[static_cast<int>(s)].artifacts;
}

const std::vector<int>& RunState::transcripts(Stage s) const
{
    return stages_[static_cast<int>(s)].transcripts;
}

std::string RunState::note(Stage s) const
{
    return stages_[static_cast<int>(s)].note;
}

std::optional<Stage> RunState::next_pending() const
{
    for (Stage s : all_stages())
        if (status(s) != StageStatus::complete)
            return s;
    return std::nullopt;
}

int RunState::last_transcript_seq() const
{
    int last = 0;
    for (int i = 0; i < kStageCount; ++i)
        if (stages_[i].status == StageStatus::complete)
            for (int seq : stages_[i].transcripts)
                last = std::max(last, seq);
    return last;
}

void RunState::reset_incomplete()
{
    for (int i = 0; i < kStageCount; ++i) {
        if (stages_[i].status != StageStatus::complete) {
            stages_[i] = StageEntry{};
        }
    }
    save();
}

void RunState::save() const
{
    json stages = json::object();
    for (int i = 0; i < kStageCount; ++i) {
        const StageEntry& e = stages_[i];
        json je = {{"status", stage_status_name(e.status)},
                   {"artifacts", e.artifacts},
                   {"transcripts", e.transcripts}};
        if (!e.note.empty())
            je["note"] = e.note;
        if (!e.error.empty())
            je["error"] = e.error;
        stages[kStageNames[i]] = std::move(je);
    }
    json m = {{"seed", seed_},
              {"config_digest", config_digest_},
              {"stages", std::move(stages)}};
    write_file(dir_ / kManifestFile, m.dump(2) + "\n");
}

} // namespace autosg
