#include "autosg/task.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <set>

namespace autosg {

void TaskPrompt::validate() const
{
    if (trim(desc).empty())
        throw InputError("task: desc must be non-empty");
    if (trim(search_space).empty())
        throw InputError("task: search_space must be non-empty");
    if (dim < 1)
        throw InputError("task: dim must be >= 1, got " + std::to_string(dim));
    if (budget < 1)
        throw InputError("task: budget must be >= 1, got " + std::to_string(budget));
}

namespace {

long long parse_int_field(const std::string& key, const std::string& value)
{
    try {
        size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("task: field `" + key + "` is not an integer: " + value);
    }
}

} // namespace

TaskPrompt parse_task_text(std::string_view text)
{
    auto kv = parse_kv(text);
    const std::set<std::string> known = {"desc", "dim", "budget", "search_space"};
    for (const auto& [k, _] : kv)
        if (!known.count(k))
            throw ParseError("task: unknown key `" + k + "`");
    for (const auto& k : known)
        if (!kv.count(k))
            throw ParseError("task: missing component `" + k + "`");

    TaskPrompt task;
    task.desc = kv["desc"];
    task.dim = static_cast<int>(parse_int_field("dim", kv["dim"]));
    task.budget = parse_int_field("budget", kv["budget"]);
    task.search_space = kv["search_space"];
    task.validate();
    return task;
}

TaskPrompt parse_task(const std::filesystem::path& path)
{
    return parse_task_text(read_file(path));
}

} // namespace autosg
