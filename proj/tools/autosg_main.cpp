// autosg - turn a structured optimization task prompt into a solver artifact
// via literature retrieval, grounded generation, one-step refinement, and an
// Elo-judged tournament.

#include "autosg/errors.hpp"
#include "autosg/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace autosg;

void print_report(const RunReport& report)
{
    if (!report.finished) {
        std::cout << "run stopped before the tournament stage ("
                  << report.llm_calls << " LLM calls so far)\n";
        return;
    }
    std::cout << "winner: " << report.winner_id << "\n";
    std::cout << "winner file: " << report.winner_path.string() << "\n";
    if (!report.top1_title.empty())
        std::cout << "grounding paper: " << report.top1_title << " ("
                  << report.top1_venue << ", " << report.top1_year << ")\n";
    std::cout << "paper pool: " << report.paper_pool_size
              << " candidates; solver pool: " << report.candidate_pool_size << "\n";
    std::cout << "matches: " << report.match_count
              << "; LLM calls: " << report.llm_calls << "\n";
    std::cout << "standings (rating / rd / matches):\n";
    for (const EloState& s : report.standings) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-14s %8.2f %7.2f %3d\n", s.id.c_str(),
                      s.rating, s.rd, s.matches);
        std::cout << line;
    }
}

struct CommonArgs {
    std::string task_file;
    std::string config_file;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string from_text;
    std::string judge = "llm";
    std::string fixture;
    std::string recorded;
};

void add_backend_flags(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--judge", args.judge,
                    "judge backend: llm | oracle | oracle:flip=<p>");
    cmd->add_option("--fixture", args.fixture,
                    "scripted LLM backend fixture file (offline runs)");
    cmd->add_option("--recorded", args.recorded,
                    "directory of recorded search payloads (offline runs)");
}

BackendOptions backend_options(const CommonArgs& args)
{
    BackendOptions b;
    b.judge_spec = args.judge;
    if (!args.fixture.empty())
        b.fixture_file = args.fixture;
    if (!args.recorded.empty())
        b.recorded_dir = args.recorded;
    return b;
}

PipelineOptions pipeline_options(const CommonArgs& args)
{
    PipelineOptions opts;
    opts.task_file = args.task_file;
    if (!args.config_file.empty())
        opts.config_file = args.config_file;
    opts.out_dir = args.out_dir;
    if (args.seed_set)
        opts.seed = args.seed;
    if (!args.from_text.empty())
        opts.from_text = args.from_text;
    opts.backend = backend_options(args);
    return opts;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"automated solver generation workflow"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* run = app.add_subcommand("run", "execute the full pipeline");
    run->add_option("--task", args.task_file, "task prompt file")->required();
    run->add_option("--config", args.config_file, "config file (defaults when omitted)");
    run->add_option("--out", args.out_dir, "run directory to create")->required();
    run->add_option("--seed", args.seed, "rng seed (overrides config)")
        ->each([&args](const std::string&) { args.seed_set = true; });
    run->add_option("--from-text", args.from_text,
                    "pre-extracted document; skips the retrieval stages");
    add_backend_flags(run, args);

    auto* resume = app.add_subcommand("resume", "continue an interrupted run");
    resume->add_option("--out", args.out_dir, "existing run directory")->required();
    add_backend_flags(resume, args);

    auto* retrieve = app.add_subcommand("retrieve",
                                        "run the retrieval stages only");
    retrieve->add_option("--task", args.task_file, "task prompt file")->required();
    retrieve->add_option("--config", args.config_file, "config file");
    retrieve->add_option("--out", args.out_dir, "run directory to create")->required();
    retrieve->add_option("--seed", args.seed, "rng seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    add_backend_flags(retrieve, args);

    auto* generate = app.add_subcommand("generate",
                                        "run the two-stage generation on a run dir");
    generate->add_option("--out", args.out_dir, "run directory")->required();
    bool ungrounded = false;
    generate->add_flag("--ungrounded", ungrounded,
                       "self-recommendation path: no retrieval, single artifact");
    generate->add_option("--task", args.task_file,
                         "task file (required with --ungrounded on a fresh dir)");
    generate->add_option("--config", args.config_file, "config file");
    generate->add_option("--seed", args.seed, "rng seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    add_backend_flags(generate, args);

    auto* refine = app.add_subcommand("refine",
                                      "describe + refine stages on a run dir");
    refine->add_option("--out", args.out_dir, "run directory")->required();
    add_backend_flags(refine, args);

    auto* tournament = app.add_subcommand("tournament",
                                          "tournament stage on a complete pool");
    tournament->add_option("--out", args.out_dir, "run directory")->required();
    add_backend_flags(tournament, args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            print_report(run_pipeline(pipeline_options(args)));
        } else if (resume->parsed()) {
            print_report(resume_pipeline(args.out_dir, backend_options(args)));
        } else if (retrieve->parsed()) {
            if (args.task_file.empty())
                throw autosg::InputError("retrieve: --task is required");
            PipelineOptions opts = pipeline_options(args);
            opts.stop_after = Stage::fulltext;
            RunReport report = run_pipeline(opts);
            std::cout << "retrieval complete (" << report.llm_calls << " LLM calls)\n";
        } else if (generate->parsed()) {
            if (ungrounded) {
                if (args.task_file.empty())
                    throw autosg::InputError("generate --ungrounded: --task is required");
                auto path = run_ungrounded(pipeline_options(args));
                std::cout << "ungrounded artifact: " << path.string() << "\n";
            } else {
                run_stage_group(args.out_dir, backend_options(args), Stage::gen1,
                                Stage::gen2);
                std::cout << "generation complete\n";
            }
        } else if (refine->parsed()) {
            run_stage_group(args.out_dir, backend_options(args), Stage::describe,
                            Stage::refine);
            std::cout << "refinement complete\n";
        } else if (tournament->parsed()) {
            RunReport report = run_stage_group(args.out_dir, backend_options(args),
                                               Stage::tournament, Stage::tournament);
            print_report(report);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return autosg::exit_code_for(e);
    }
}
