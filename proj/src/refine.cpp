#include "autosg/refine.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <set>

namespace autosg {

void CandidatePool::validate(const PipelineConfig& cfg) const
{
    const size_t expected = static_cast<size_t>(cfg.n_refined) + 1;
    if (members.size() != expected)
        throw InputError("candidate pool: expected " + std::to_string(expected) +
                         " members (1 initial + " + std::to_string(cfg.n_refined) +
                         " refined), got " + std::to_string(members.size()));
    if (members.front().stage != SolverStage::initial)
        throw InputError("candidate pool: element 0 must be the initial artifact");
    std::set<std::string> ids;
    for (size_t i = 0; i < members.size(); ++i) {
        members[i].validate();
        if (i > 0 && members[i].stage != SolverStage::refined)
            throw InputError("candidate pool: element " + std::to_string(i) +
                             " must be a refined artifact");
        if (!ids.insert(members[i].id).second)
            throw InputError("candidate pool: duplicate id `" + members[i].id + "`");
    }
}

std::string describe_solver(CodegenContext& ctx, SolverArtifact& init,
                            int* transcript_seq)
{
    if (init.stage != SolverStage::initial)
        throw InputError("describe_solver consumes an initial artifact, got stage " +
                         std::string(solver_stage_name(init.stage)));

    std::string bound = bind_template(ctx.prompts.get("reverse"),
                                      {{"desc", ctx.task.desc},
                                       {"init_code", init.source_text}});
    auto [system, user] = split_chat_prompt(bound);
    ChatRequest req;
    req.system = system;
    req.user = user;
    req.temperature = ctx.cfg.temperature;
    req.max_tokens = ctx.cfg.max_output_tokens;
    req.stage = Stage::describe;
    Transcript t = ctx.gateway.chat(req);

    std::string description = trim(t.response);
    if (description.empty())
        throw ParseError("describe: empty description");
    if (description.find("```") != std::string::npos)
        throw ParseError("describe: response contains a code fence");
    init.description = description;
    if (transcript_seq)
        *transcript_seq = t.seq;
    return description;
}

double marker_retention(const SolverArtifact& init, const SolverArtifact& candidate)
{
    if (init.important_spans.empty())
        return 1.0;
    std::vector<std::string> init_lines = split_lines(init.source_text);
    int kept = 0;
    for (const LineSpan& span : init.important_spans) {
        const std::string& marker_line = init_lines[span.first - 1];
        if (candidate.source_text.find(trim(marker_line)) != std::string::npos)
            ++kept;
    }
    return static_cast<double>(kept) /
           static_cast<double>(init.important_spans.size());
}

std::vector<SolverArtifact> refine_candidates(CodegenContext& ctx,
                                              const SolverArtifact& init,
                                              const PaperIdentity& paper,
                                              std::vector<std::string>* diag)
{
    if (init.description.empty())
        throw InputError("refine: initial artifact has no description "
                         "(run describe first)");
    std::string class_name = extract_class_name(init.source_text);
    if (class_name.empty())
        class_name = "InitialSolver";

    auto bindings = task_bindings(ctx.task);
    bindings["task_prompt"] = render_task(ctx.prompts, ctx.task);
    bindings["algo_name"] = class_name;
    bindings["description"] = init.description;
    bindings["paper_title"] = paper.title;
    bindings["venue"] = paper.venue;
    bindings["init_code"] = init.source_text;
    bindings["code_template"] = ctx.prompts.get("code_template").text;
    std::string bound = bind_template(ctx.prompts.get("refine"), bindings);
    auto [system, user] = split_chat_prompt(bound);

    constexpr int kRetriesPerSlot = 2;
    std::vector<SolverArtifact> refined;
    for (int slot = 1; slot <= ctx.cfg.n_refined; ++slot) {
        std::string id = "refined-" + std::to_string(slot);
        SolverArtifact artifact;
        bool ok = false;
        std::string last_error;
        for (int attempt = 0; attempt <= kRetriesPerSlot && !ok; ++attempt) {
            ChatRequest req;
            req.system = system;
            req.user = user;
            req.temperature = ctx.cfg.temperature_refine;
            req.max_tokens = ctx.cfg.max_output_tokens;
            req.stage = Stage::refine;
            Transcript t = ctx.gateway.chat(req);
            try {
                std::string code = extract_code_block(t.response);
                auto findings = check_structure(code);
                if (!findings.empty()) {
                    last_error = findings.front().message;
                    continue;
                }
                artifact.id = id;
                artifact.stage = SolverStage::refined;
                artifact.source_text = std::move(code);
                artifact.important_spans = extract_important_spans(artifact.source_text);
                artifact.provenance = {"transcript:" + std::to_string(t.seq)};
                artifact.validate();
                ok = true;
            } catch (const ParseError& e) {
                last_error = e.what();
            }
        }
        if (!ok)
            throw StructuralError("refine: candidate slot " + std::to_string(slot) +
                                  " failed after " +
                                  std::to_string(kRetriesPerSlot + 1) +
                                  " attempts: " + last_error);
        if (diag) {
            double retention = marker_retention(init, artifact);
            diag->push_back(id + ": marker retention " + std::to_string(retention));
        }
        refined.push_back(std::move(artifact));
    }
    return refined;
}

CandidatePool assemble_pool(const SolverArtifact& init,
                            const std::vector<SolverArtifact>& refined,
                            const PipelineConfig& cfg)
{
    CandidatePool pool;
    pool.members.push_back(init);
    pool.members.insert(pool.members.end(), refined.begin(), refined.end());
    pool.validate(cfg);
    return pool;
}

} // namespace autosg
