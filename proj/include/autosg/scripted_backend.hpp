#pragma once

#include "autosg/gateway.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace autosg {

/// Deterministic backend replaying canned responses keyed by stage tag and
/// sequence index. A stage may be marked cyclic, in which case its responses
/// repeat; otherwise running past the end is a FixtureError.
class ScriptedBackend : public ChatBackend {
public:
    struct StageScript {
        std::vector<std::string> responses;
        bool cycle = false;
    };

    ScriptedBackend(std::string name, std::map<std::string, StageScript> stages);

    /// Fixture file schema:
    /// {"name": "...", "stages": {"rewrite": {"responses": [...], "cycle": false}, ...}}
    static std::shared_ptr<ScriptedBackend> from_file(const std::filesystem::path& path);

    std::string complete(const ChatRequest& req) override;
    std::string id() const override { return "scripted:" + name_; }
    bool deterministic() const override { return true; }

private:
    std::string name_;
    std::map<std::string, StageScript> stages_;
    std::map<std::string, size_t> cursor_;
    std::mutex mutex_;
};

} // namespace autosg
