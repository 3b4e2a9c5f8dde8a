#include "autosg/scripted_backend.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

namespace autosg {

using nlohmann::json;

ScriptedBackend::ScriptedBackend(std::string name,
                                 std::map<std::string, StageScript> stages)
    : name_(std::move(name)), stages_(std::move(stages))
{
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_file(
    const std::filesystem::path& path)
{
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError("fixture file " + path.string() + ": " + e.what());
    }
    std::map<std::string, StageScript> stages;
    for (const auto& [stage, entry] : j.at("stages").items()) {
        if (!stage_from_name(stage))
            throw ParseError("fixture file: unknown stage tag `" + stage + "`");
        StageScript script;
        script.responses = entry.at("responses").get<std::vector<std::string>>();
        script.cycle = entry.value("cycle", false);
        stages[stage] = std::move(script);
    }
    return std::make_shared<ScriptedBackend>(j.value("name", path.stem().string()),
                                             std::move(stages));
}

std::string ScriptedBackend::complete(const ChatRequest& req)
{
    std::lock_guard<std::mutex> lock(mutex_);
    const std::string stage = stage_name(req.stage);
    auto it = stages_.find(stage);
    if (it == stages_.end())
        throw FixtureError("fixture has no entry for stage `" + stage + "`");
    const StageScript& script = it->second;
    size_t& cur = cursor_[stage];
    if (cur >= script.responses.size()) {
        if (!script.cycle)
            throw FixtureError("fixture exhausted for stage `" + stage + "` after " +
                               std::to_string(script.responses.size()) + " responses");
        cur = 0;
    }
    return script.responses[cur++];
}

} // namespace autosg
