#include "autosg/codegen.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

namespace autosg {

namespace {

/// Parameter names of a `def name(...)` found at `def_pos`, annotations and
/// defaults stripped. Empty when the parameter list is unterminated.
std::vector<std::string> param_names(const std::string& code, size_t def_pos)
{
    size_t open = code.find('(', def_pos);
    if (open == std::string::npos)
        return {};
    int depth = 0;
    size_t close = std::string::npos;
    for (size_t i = open; i < code.size(); ++i) {
        if (code[i] == '(')
            ++depth;
        else if (code[i] == ')' && --depth == 0) {
            close = i;
            break;
        }
    }
    if (close == std::string::npos)
        return {};

    std::vector<std::string> names;
    std::string list = code.substr(open + 1, close - open - 1);
    size_t start = 0;
    int nest = 0;
    for (size_t i = 0; i <= list.size(); ++i) {
        bool at_end = i == list.size();
        char c = at_end ? ',' : list[i];
        if (!at_end && (c == '(' || c == '[' || c == '{'))
            ++nest;
        else if (!at_end && (c == ')' || c == ']' || c == '}'))
            --nest;
        if (c == ',' && nest == 0) {
            std::string param = trim(list.substr(start, i - start));
            start = i + 1;
            if (param.empty())
                continue;
            size_t cut = param.find_first_of(":=");
            if (cut != std::string::npos)
                param = trim(param.substr(0, cut));
            names.push_back(param);
        }
    }
    return names;
}

bool has_method_signature(const std::string& code, const std::string& method,
                          const std::vector<std::string>& leading_params)
{
    const std::string needle = "def " + method;
    size_t pos = 0;
    while ((pos = code.find(needle, pos)) != std::string::npos) {
        auto names = param_names(code, pos);
        if (names.size() >= leading_params.size() &&
            std::equal(leading_params.begin(), leading_params.end(), names.begin()))
            return true;
        pos += needle.size();
    }
    return false;
}

std::vector<std::string> top_level_classes(const std::string& code)
{
    std::vector<std::string> classes;
    for (const std::string& line : split_lines(code)) {
        if (line.rfind("class ", 0) != 0)
            continue;
        std::string rest = line.substr(6);
        size_t end = rest.find_first_of(":(");
        std::string name = trim(end == std::string::npos ? rest : rest.substr(0, end));
        if (!name.empty())
            classes.push_back(name);
    }
    return classes;
}

} // namespace

std::vector<Finding> check_structure(const std::string& code)
{
    std::vector<Finding> findings;
    if (!has_method_signature(code, "__init__", {"self", "budget", "dim"}))
        findings.push_back({"missing-init",
                            "missing `__init__(self, budget, dim)` entry point"});
    if (!has_method_signature(code, "__call__", {"self", "func"}))
        findings.push_back({"missing-call",
                            "missing `__call__(self, func)` entry point"});
    auto classes = top_level_classes(code);
    if (classes.empty())
        findings.push_back({"no-class", "no top-level class definition found"});
    else if (classes.size() > 1)
        findings.push_back({"multiple-classes",
                            "expected exactly one top-level class, found " +
                                std::to_string(classes.size())});
    return findings;
}

std::string extract_class_name(const std::string& code)
{
    auto classes = top_level_classes(code);
    return classes.size() == 1 ? classes[0] : "";
}

std::string truncate_document(const std::string& text, size_t max_chars)
{
    if (text.size() <= max_chars)
        return text;

    // Lines rich in math/pseudo-code tokens must survive the cut.
    auto density = [](const std::string& line) {
        int score = 0;
        for (char c : line)
            if (std::strchr("=+*/^_\\{}()[]<>|", c))
                ++score;
        if (line.find("Algorithm") != std::string::npos ||
            line.find("Equation") != std::string::npos ||
            line.find("equation") != std::string::npos)
            score += 5;
        return score;
    };

    std::vector<std::string> lines = split_lines(text);
    size_t head_budget = max_chars * 4 / 5;
    std::string out;
    size_t cut_index = lines.size();
    for (size_t i = 0; i < lines.size(); ++i) {
        if (out.size() + lines[i].size() + 1 > head_budget) {
            cut_index = i;
            break;
        }
        out += lines[i];
        out += '\n';
    }
    if (cut_index < lines.size()) {
        out += "[... document truncated; equation-dense lines retained below ...]\n";
        for (size_t i = cut_index; i < lines.size(); ++i) {
            if (density(lines[i]) < 4)
                continue;
            if (out.size() + lines[i].size() + 1 > max_chars)
                break;
            out += lines[i];
            out += '\n';
        }
    }
    return out;
}

PaperIdentity PaperIdentity::from_decision(const RerankDecision& decision)
{
    PaperIdentity p;
    if (!decision.paper_title.empty())
        p.title = decision.paper_title;
    if (!decision.venue.empty())
        p.venue = decision.venue;
    if (decision.year > 0)
        p.year_text = std::to_string(decision.year);
    return p;
}

namespace {

std::string format_findings(const std::vector<Finding>& findings)
{
    std::string out;
    for (const Finding& f : findings)
        out += "- " + f.message + "\n";
    return out;
}

/// Chat, extract the code block, structural-check; one corrective re-prompt
/// on failure. Returns (code, transcript seqs).
std::pair<std::string, std::vector<int>> generate_checked_code(
    CodegenContext& ctx, Stage stage, const std::string& bound_prompt,
    double temperature)
{
    auto [system, user] = split_chat_prompt(bound_prompt);
    ChatRequest req;
    req.system = system;
    req.user = user;
    req.temperature = temperature;
    req.max_tokens = ctx.cfg.max_output_tokens;
    req.stage = stage;

    std::vector<int> seqs;
    Transcript t = ctx.gateway.chat(req);
    seqs.push_back(t.seq);
    std::string code = extract_code_block(t.response);
    auto findings = check_structure(code);
    if (findings.empty())
        return {code, seqs};

    ChatRequest retry = req;
    retry.user += "\n\nThe previous implementation failed structural validation:\n" +
                  format_findings(findings) +
                  "Provide the complete corrected code following the required "
                  "template structure.";
    Transcript t2 = ctx.gateway.chat(retry);
    seqs.push_back(t2.seq);
    code = extract_code_block(t2.response);
    findings = check_structure(code);
    if (!findings.empty())
        throw StructuralError("generated code failed structural check after re-prompt: " +
                              format_findings(findings));
    return {code, seqs};
}

SolverArtifact make_artifact(std::string id, SolverStage stage, std::string code,
                             std::vector<int> seqs)
{
    SolverArtifact a;
    a.id = std::move(id);
    a.stage = stage;
    a.source_text = std::move(code);
    a.important_spans = extract_important_spans(a.source_text);
    for (int s : seqs)
        a.provenance.push_back("transcript:" + std::to_string(s));
    a.validate();
    return a;
}

} // namespace

SolverArtifact generate_preliminary(CodegenContext& ctx, const PaperIdentity& paper,
                                    const DocumentText& doc)
{
    if (doc.text.empty())
        throw InputError("generate_preliminary: empty document");

    auto bindings = task_bindings(ctx.task);
    bindings["paper_title"] = paper.title;
    bindings["venue"] = paper.venue;
    bindings["year"] = paper.year_text;
    bindings["document_text"] =
        truncate_document(doc.text, static_cast<size_t>(ctx.cfg.doc_max_chars));
    bindings["code_template"] = ctx.prompts.get("code_template").text;

    std::string bound = bind_template(ctx.prompts.get("gen_stage1"), bindings);
    auto [code, seqs] =
        generate_checked_code(ctx, Stage::gen1, bound, ctx.cfg.temperature);
    return make_artifact("preliminary", SolverStage::preliminary, std::move(code),
                         std::move(seqs));
}

SolverArtifact polish(CodegenContext& ctx, const SolverArtifact& pre,
                      const PaperIdentity& paper, const DocumentText& doc)
{
    if (pre.stage != SolverStage::preliminary)
        throw InputError("polish consumes a preliminary artifact, got stage " +
                         std::string(solver_stage_name(pre.stage)));

    std::string class_name = extract_class_name(pre.source_text);
    if (class_name.empty())
        throw StructuralError("polish: preliminary artifact has no unambiguous class");

    std::map<std::string, std::string> bindings = {
        {"algo_name", class_name},
        {"paper_title", paper.title},
        {"document_text",
         truncate_document(doc.text, static_cast<size_t>(ctx.cfg.doc_max_chars))},
        {"preliminary_code", pre.source_text},
    };
    std::string bound = bind_template(ctx.prompts.get("gen_stage2"), bindings);
    auto [code, seqs] =
        generate_checked_code(ctx, Stage::gen2, bound, ctx.cfg.temperature);

    if (extract_class_name(code) != class_name)
        throw StructuralError("polish: class renamed from `" + class_name + "` to `" +
                              extract_class_name(code) + "`");

    std::vector<int> provenance_seqs;
    for (const std::string& p : pre.provenance)
        if (p.rfind("transcript:", 0) == 0)
            provenance_seqs.push_back(std::stoi(p.substr(11)));
    provenance_seqs.insert(provenance_seqs.end(), seqs.begin(), seqs.end());
    return make_artifact("initial", SolverStage::initial, std::move(code),
                         std::move(provenance_seqs));
}

SolverArtifact generate_ungrounded(CodegenContext& ctx)
{
    // Task prompt concatenated with the meta query; no document involved.
    std::string rendered = render_task(ctx.prompts, ctx.task);
    std::string bound = rendered + "\n\n" + ctx.prompts.get("meta_query").text;
    auto [code, seqs] =
        generate_checked_code(ctx, Stage::gen1, bound, ctx.cfg.temperature);
    return make_artifact("ungrounded", SolverStage::ungrounded, std::move(code),
                         std::move(seqs));
}

} // namespace autosg
