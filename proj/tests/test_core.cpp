#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autosg/artifact.hpp"
#include "autosg/config.hpp"
#include "autosg/errors.hpp"
#include "autosg/prompts.hpp"
#include "autosg/run_state.hpp"
#include "autosg/task.hpp"
#include "autosg/util.hpp"

#include "support.hpp"

using namespace autosg;

TEST_CASE("empty config file yields the documented defaults")
{
    PipelineConfig cfg = parse_config_text("");
    CHECK(cfg.n_queries == 8);
    CHECK(cfg.recall_openalex == 30);
    CHECK(cfg.recall_arxiv == 10);
    CHECK(cfg.keep_openalex == 25);
    CHECK(cfg.keep_arxiv == 15);
    CHECK(cfg.rerank_pool == 40);
    CHECK(cfg.n_refined == 10);
    CHECK(cfg.elo_initial_rating == doctest::Approx(1500.0));
    CHECK(cfg.elo_initial_rd == doctest::Approx(350.0));
    CHECK(cfg.elo_prune_gap == doctest::Approx(400.0));
    CHECK(cfg.matches_phase1 == 3);
    CHECK(cfg.matches_total == 6);
    CHECK(cfg.phase2_lambda == doctest::Approx(10.0));
}

TEST_CASE("config invariant violations name the field")
{
    CHECK_THROWS_WITH_AS(
        parse_config_text("keep_openalex = 25\nkeep_arxiv = 15\nrerank_pool = 39\n"),
        doctest::Contains("rerank_pool"), InputError);
    CHECK_THROWS_WITH_AS(parse_config_text("matches_phase1 = 7\nmatches_total = 6\n"),
                         doctest::Contains("matches_total"), InputError);
    CHECK_THROWS_WITH_AS(parse_config_text("elo_initial_rd = 20\n"),
                         doctest::Contains("elo_initial_rd"), InputError);
    CHECK_THROWS_AS(parse_config_text("n_queries = 0\n"), InputError);
    CHECK_THROWS_AS(parse_config_text("no_such_key = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text("n_queries = eight\n"), ParseError);
}

TEST_CASE("config round-trips through serialize")
{
    PipelineConfig cfg = parse_config_text("n_queries = 5\nmatches_total = 9\n"
                                           "phase2_lambda = 2.5\nmailto = a@b.c\n");
    PipelineConfig again = parse_config_text(cfg.serialize());
    CHECK(again == cfg);

    PipelineConfig defaults;
    CHECK(parse_config_text(defaults.serialize()) == defaults);
}

TEST_CASE("task parsing accepts the documented rows")
{
    TaskPrompt bbob = parse_task_text(
        "desc = 20D high-dimensional expensive problems\n"
        "dim = 20\nbudget = 300\nsearch_space = [-5,5] per dim\n");
    CHECK(bbob.dim == 20);
    CHECK(bbob.budget == 300);

    TaskPrompt cec = parse_task_text(
        "desc = 1000D large-scale expensive problems\n"
        "dim = 1000\nbudget = 11000\nsearch_space = [-100,100] per dimension\n");
    CHECK(cec.budget == 11 * cec.dim);

    CHECK_THROWS_AS(parse_task_text("desc = x\ndim = 0\nbudget = 10\nsearch_space = y\n"),
                    InputError);
    CHECK_THROWS_AS(parse_task_text("desc = x\ndim = 5\nbudget = 10\n"), ParseError);
    CHECK_THROWS_AS(parse_task_text("desc = \ndim = 5\nbudget = 10\nsearch_space = y\n"),
                    InputError);
}

TEST_CASE("template binding substitutes every slot verbatim")
{
    const PromptLibrary& lib = PromptLibrary::builtin();
    TaskPrompt task;
    task.desc = "20-dimensional (20D) high-dimensional expensive problems";
    task.dim = 20;
    task.budget = 300;
    task.search_space = "between -5.0 (lower bound) and 5.0 (upper bound)";

    std::string rendered = render_task(lib, task);
    CHECK(rendered.find("20") != std::string::npos);
    CHECK(rendered.find("300") != std::string::npos);
    CHECK(rendered.find("strict budget of 300") != std::string::npos);
    CHECK(rendered.find(task.desc) != std::string::npos);
    CHECK(rendered.find(task.search_space) != std::string::npos);
    CHECK(rendered.find("{{") == std::string::npos);

    // Binding is a pure function of the map.
    CHECK(render_task(lib, task) == rendered);
}

TEST_CASE("judge template anchors the task fields")
{
    const PromptLibrary& lib = PromptLibrary::builtin();
    TaskPrompt task;
    task.desc = "low-dimensional expensive problems";
    task.dim = 8;
    task.budget = 30;
    task.search_space = "heterogeneous and problem-dependent bounds";

    auto bindings = task_bindings(task);
    bindings["code_a"] = "class A: ...";
    bindings["code_b"] = "class B: ...";
    std::string bound = bind_template(lib.get("judge"), bindings);
    CHECK(bound.find(task.search_space) != std::string::npos);
    CHECK(bound.find(task.desc) != std::string::npos);
    CHECK(bound.find("\"winner\": \"Algorithm A\" or \"Algorithm B\"") !=
          std::string::npos);
}

TEST_CASE("binding errors: missing, unknown, empty")
{
    const PromptLibrary& lib = PromptLibrary::builtin();
    const PromptTemplate& tpl = lib.get("task");
    std::map<std::string, std::string> partial = {
        {"desc", "x"}, {"dim", "2"}, {"budget", "5"}};
    CHECK_THROWS_WITH_AS(bind_template(tpl, partial),
                         doctest::Contains("search_space"), InputError);

    auto full = partial;
    full["search_space"] = "[0,1]";
    full["bogus"] = "y";
    CHECK_THROWS_WITH_AS(bind_template(tpl, full), doctest::Contains("bogus"),
                         InputError);

    auto empty_desc = task_bindings(TaskPrompt{"d", 1, 1, "s"});
    empty_desc["desc"] = "";
    CHECK_THROWS_AS(bind_template(tpl, empty_desc), InputError);
}

TEST_CASE("library carries the documented template set and phrases")
{
    const PromptLibrary& lib = PromptLibrary::builtin();
    for (const char* name :
         {"task", "meta_query", "rewrite", "rerank", "gen_stage1", "code_template",
          "gen_stage2", "reverse", "refine", "judge"})
        CHECK_NOTHROW(lib.get(name));

    CHECK(lib.get("rewrite").text.find("generate exactly 8 search query strings") !=
          std::string::npos);
    CHECK(lib.get("rewrite").text.find("Output ONLY the following JSON block") !=
          std::string::npos);
    CHECK(lib.get("gen_stage1").text.find("# **IMPORTANT COMPONENT**") !=
          std::string::npos);
    CHECK(lib.get("gen_stage2").text.find("Keep the same class name") !=
          std::string::npos);
    CHECK(lib.get("reverse").text.find("Do NOT include any code") != std::string::npos);
    CHECK(lib.get("refine").text.find("IMPORTANT COMPONENT preservation") !=
          std::string::npos);
    CHECK(lib.get("rerank").text.find("Do NOT recommend survey, review") !=
          std::string::npos);
    CHECK(lib.get("meta_query").text.rfind("Recommend the most relevant", 0) == 0);
}

TEST_CASE("chat prompt split keeps all bytes")
{
    std::string with_persona = "You are a reviewer.\n\nDo the thing.";
    auto [sys1, user1] = split_chat_prompt(with_persona);
    CHECK(sys1 == "You are a reviewer.");
    CHECK(user1 == "Do the thing.");

    std::string bare = "Analyze the following implementation.";
    auto [sys2, user2] = split_chat_prompt(bare);
    CHECK_FALSE(sys2.empty());
    CHECK(user2 == bare);
}

TEST_CASE("marker span extraction is exact")
{
    std::string code = "class X:\n"
                       "    def f(self):  # **IMPORTANT COMPONENT**\n"
                       "        pass\n"
                       "    x = 1  # **IMPORTANT COMPONENT**\n";
    auto spans = extract_important_spans(code);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0] == LineSpan{2, 2});
    CHECK(spans[1] == LineSpan{4, 4});
    CHECK(extract_important_spans("no markers\n").empty());
}

TEST_CASE("artifact validation rejects out-of-range spans")
{
    SolverArtifact a;
    a.id = "x";
    a.source_text = "line1\nline2\n";
    a.important_spans = {{1, 3}};
    CHECK_THROWS_AS(a.validate(), InputError);
    a.important_spans = {{1, 2}};
    CHECK_NOTHROW(a.validate());
    a.source_text.clear();
    CHECK_THROWS_AS(a.validate(), InputError);
}

TEST_CASE("run state: stage order, persistence, integrity")
{
    testsup::TempDir tmp("runstate");
    PipelineConfig cfg;
    RunState st = RunState::create(tmp.path(), cfg, 42);

    CHECK(st.next_pending() == Stage::rewrite);
    CHECK_THROWS_AS(st.mark_complete(Stage::search, {}, {}), StateError);

    st.mark_complete(Stage::rewrite, {"artifacts/rewrite/queries.json"}, {1});
    st.mark_complete(Stage::search, {"artifacts/search/records.json"}, {});
    CHECK(st.next_pending() == Stage::pool);

    RunState reopened = RunState::open(tmp.path());
    CHECK(reopened.seed() == 42);
    CHECK(reopened.is_complete(Stage::rewrite));
    CHECK(reopened.is_complete(Stage::search));
    CHECK(reopened.artifacts(Stage::rewrite) ==
          std::vector<std::string>{"artifacts/rewrite/queries.json"});
    CHECK(reopened.last_transcript_seq() == 1);

    reopened.mark_failed(Stage::pool, "boom");
    RunState failed = RunState::open(tmp.path());
    CHECK(failed.status(Stage::pool) == StageStatus::failed);
    failed.reset_incomplete();
    CHECK(failed.status(Stage::pool) == StageStatus::pending);
    CHECK(failed.is_complete(Stage::search));

    // Editing the snapshot after the fact must be detected.
    write_file(tmp.path() / "config.snapshot", "n_queries = 4\n");
    CHECK_THROWS_AS(RunState::open(tmp.path()), StateError);
}

TEST_CASE("stage names round-trip")
{
    for (Stage s : all_stages())
        CHECK(stage_from_name(stage_name(s)) == s);
    CHECK_FALSE(stage_from_name("nope").has_value());
}
