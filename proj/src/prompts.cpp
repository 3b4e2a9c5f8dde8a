#include "autosg/prompts.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include "prompt_texts.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace autosg {

namespace {

bool is_slot_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Scan `{{name}}` markers; returns distinct names in first-seen order.
std::vector<std::string> scan_markers(std::string_view text)
{
    std::vector<std::string> found;
    std::set<std::string> seen;
    size_t pos = 0;
    while ((pos = text.find("{{", pos)) != std::string_view::npos) {
        size_t end = text.find("}}", pos + 2);
        if (end == std::string_view::npos)
            break;
        std::string name(text.substr(pos + 2, end - pos - 2));
        if (!name.empty() &&
            std::all_of(name.begin(), name.end(), is_slot_char)) {
            if (seen.insert(name).second)
                found.push_back(name);
            pos = end + 2;
        } else {
            pos += 2;
        }
    }
    return found;
}

} // namespace

void PromptLibrary::add(PromptTemplate tpl)
{
    // Declared slots and markers present in the text must agree exactly.
    auto markers = scan_markers(tpl.text);
    std::set<std::string> declared(tpl.slots.begin(), tpl.slots.end());
    std::set<std::string> found(markers.begin(), markers.end());
    if (declared != found)
        throw InputError("template `" + tpl.name +
                         "`: declared slots do not match placeholders in text");
    templates_[tpl.name] = std::move(tpl);
}

const PromptLibrary& PromptLibrary::builtin()
{
    static const PromptLibrary lib = [] {
        PromptLibrary l;
        l.add({"task", {"desc", "dim", "budget", "search_space"}, prompt_texts::kTask});
        l.add({"meta_query", {}, prompt_texts::kMetaQuery});
        l.add({"rewrite", {"task_prompt"}, prompt_texts::kRewrite});
        l.add({"rerank",
               {"dim", "budget", "desc", "search_space", "candidate_metadata"},
               prompt_texts::kRerank});
        l.add({"gen_stage1",
               {"paper_title", "venue", "year", "dim", "budget", "desc",
                "search_space", "document_text", "code_template"},
               prompt_texts::kGenStage1});
        l.add({"code_template", {}, prompt_texts::kCodeTemplate});
        l.add({"gen_stage2",
               {"algo_name", "paper_title", "document_text", "preliminary_code"},
               prompt_texts::kGenStage2});
        l.add({"reverse", {"desc", "init_code"}, prompt_texts::kReverse});
        l.add({"refine",
               {"task_prompt", "algo_name", "description", "dim", "budget",
                "paper_title", "venue", "desc", "search_space", "init_code",
                "code_template"},
               prompt_texts::kRefine});
        l.add({"judge",
               {"desc", "search_space", "dim", "budget", "code_a", "code_b"},
               prompt_texts::kJudge});
        return l;
    }();
    return lib;
}

const PromptTemplate& PromptLibrary::get(std::string_view name) const
{
    auto it = templates_.find(name);
    if (it == templates_.end())
        throw InputError("unknown template: " + std::string(name));
    return it->second;
}

std::vector<std::string> PromptLibrary::names() const
{
    std::vector<std::string> out;
    for (const auto& [name, _] : templates_)
        out.push_back(name);
    return out;
}

std::string bind_template(const PromptTemplate& tpl,
                          const std::map<std::string, std::string>& bindings)
{
    std::set<std::string> declared(tpl.slots.begin(), tpl.slots.end());
    for (const auto& [k, v] : bindings) {
        if (!declared.count(k))
            throw InputError("template `" + tpl.name + "`: unknown slot `" + k + "`");
        if (v.empty())
            throw InputError("template `" + tpl.name + "`: empty value for slot `" +
                             k + "`");
    }
    for (const auto& s : tpl.slots)
        if (!bindings.count(s))
            throw InputError("template `" + tpl.name + "`: missing slot `" + s + "`");

    std::string out = tpl.text;
    for (const auto& [k, v] : bindings) {
        const std::string marker = "{{" + k + "}}";
        size_t pos = 0;
        while ((pos = out.find(marker, pos)) != std::string::npos) {
            out.replace(pos, marker.size(), v);
            pos += v.size();
        }
    }
    return out;
}

std::map<std::string, std::string> task_bindings(const TaskPrompt& task)
{
    return {{"desc", task.desc},
            {"dim", std::to_string(task.dim)},
            {"budget", std::to_string(task.budget)},
            {"search_space", task.search_space}};
}

std::string render_task(const PromptLibrary& lib, const TaskPrompt& task)
{
    task.validate();
    return bind_template(lib.get("task"), task_bindings(task));
}

std::pair<std::string, std::string> split_chat_prompt(const std::string& bound)
{
    if (bound.rfind("You are ", 0) == 0) {
        size_t sep = bound.find("\n\n");
        if (sep != std::string::npos)
            return {bound.substr(0, sep), bound.substr(sep + 2)};
    }
    return {"You are an expert assistant in an automated solver-generation workflow.",
            bound};
}

} // namespace autosg
