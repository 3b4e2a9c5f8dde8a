#include "autosg/pipeline.hpp"

#include "autosg/errors.hpp"
#include "autosg/http_backend.hpp"
#include "autosg/scripted_backend.hpp"
#include "autosg/util.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace autosg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kTaskSnapshot = "task.snapshot";

std::string serialize_task(const TaskPrompt& task)
{
    std::string out;
    out += "desc = " + task.desc + "\n";
    out += "dim = " + std::to_string(task.dim) + "\n";
    out += "budget = " + std::to_string(task.budget) + "\n";
    out += "search_space = " + task.search_space + "\n";
    return out;
}

fs::path stage_dir(const fs::path& run_dir, Stage s)
{
    return run_dir / "artifacts" / stage_name(s);
}

std::string rel(const fs::path& run_dir, const fs::path& p)
{
    return fs::relative(p, run_dir).generic_string();
}

json record_to_json(const PaperRecord& r)
{
    return {{"source", source_name(r.source)},
            {"title", r.title},
            {"abstract", r.abstract_text},
            {"venue", r.venue},
            {"year", r.year},
            {"citations", r.citations},
            {"doi", r.doi},
            {"arxiv_id", r.arxiv_id},
            {"fulltext_url", r.fulltext_url},
            {"rank", r.rank}};
}

PaperRecord record_from_json(const json& j)
{
    PaperRecord r;
    r.source = j.at("source").get<std::string>() == "arxiv" ? SourceKind::arxiv
                                                            : SourceKind::openalex;
    r.title = j.at("title").get<std::string>();
    r.abstract_text = j.value("abstract", "");
    r.venue = j.value("venue", "");
    r.year = j.at("year").get<int>();
    r.citations = j.value("citations", 0LL);
    r.doi = j.value("doi", "");
    r.arxiv_id = j.value("arxiv_id", "");
    r.fulltext_url = j.value("fulltext_url", "");
    r.rank = j.value("rank", 0);
    return r;
}

json spans_to_json(const std::vector<LineSpan>& spans)
{
    json out = json::array();
    for (const LineSpan& s : spans)
        out.push_back({s.first, s.last});
    return out;
}

void write_artifact(const fs::path& run_dir, Stage stage, const SolverArtifact& a,
                    std::vector<std::string>& manifest)
{
    fs::path dir = stage_dir(run_dir, stage);
    fs::path code = dir / (a.id + ".txt");
    write_file(code, a.source_text);
    json meta = {{"id", a.id},
                 {"stage", solver_stage_name(a.stage)},
                 {"class_name", extract_class_name(a.source_text)},
                 {"important_spans", spans_to_json(a.important_spans)},
                 {"description", a.description},
                 {"provenance", a.provenance}};
    fs::path meta_path = dir / (a.id + ".meta.json");
    write_file(meta_path, meta.dump(2) + "\n");
    manifest.push_back(rel(run_dir, code));
    manifest.push_back(rel(run_dir, meta_path));
}

/// Read a predecessor's artifact, checking it is declared in the manifest.
std::string read_stage_artifact(const RunState& state, Stage producer,
                                const fs::path& path)
{
    std::string relpath = rel(state.dir(), path);
    const auto& declared = state.artifacts(producer);
    if (std::find(declared.begin(), declared.end(), relpath) == declared.end())
        throw StateError("stage isolation: `" + relpath +
                         "` is not a declared artifact of stage `" +
                         stage_name(producer) + "`");
    return read_file(path);
}

SolverArtifact load_artifact(const RunState& state, Stage stage, const std::string& id)
{
    fs::path dir = stage_dir(state.dir(), stage);
    SolverArtifact a;
    a.source_text = read_stage_artifact(state, stage, dir / (id + ".txt"));
    json meta = json::parse(
        read_stage_artifact(state, stage, dir / (id + ".meta.json")));
    a.id = meta.at("id").get<std::string>();
    std::string stage_tag = meta.at("stage").get<std::string>();
    if (stage_tag == "preliminary") a.stage = SolverStage::preliminary;
    else if (stage_tag == "initial") a.stage = SolverStage::initial;
    else if (stage_tag == "refined") a.stage = SolverStage::refined;
    else a.stage = SolverStage::ungrounded;
    for (const json& s : meta.at("important_spans"))
        a.important_spans.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
    a.description = meta.value("description", "");
    a.provenance = meta.value("provenance", std::vector<std::string>{});
    a.validate();
    return a;
}

std::vector<int> transcripts_of(const SolverArtifact& a)
{
    std::vector<int> seqs;
    for (const std::string& p : a.provenance)
        if (p.rfind("transcript:", 0) == 0)
            seqs.push_back(std::stoi(p.substr(11)));
    return seqs;
}

std::string format_standings(const std::vector<EloState>& standings)
{
    std::string out;
    int rank = 0;
    for (const EloState& s : standings) {
        char line[160];
        std::snprintf(line, sizeof(line), "%d %s %.6f %.6f %d\n", ++rank,
                      s.id.c_str(), s.rating, s.rd, s.matches);
        out += line;
    }
    return out;
}

std::string match_record_line(const MatchRecord& r)
{
    json j = {{"seq", r.seq},
              {"phase", r.phase},
              {"presented_a", r.presented_a},
              {"presented_b", r.presented_b},
              {"winner", r.winner},
              {"loser", r.loser},
              {"pre_rating_winner", r.pre_rating_winner},
              {"pre_rating_loser", r.pre_rating_loser},
              {"pre_matches_winner", r.pre_matches_winner},
              {"pre_matches_loser", r.pre_matches_loser},
              {"expected_winner", r.expected_winner},
              {"delta_winner", r.delta_winner},
              {"delta_loser", r.delta_loser},
              {"judge", r.judge_ref}};
    return j.dump();
}

/// Everything a stage executor needs.
struct Env {
    RunState state;
    TaskPrompt task;
    PipelineConfig cfg;
    std::uint64_t seed = 0;
    const PromptLibrary& prompts = PromptLibrary::builtin();

    std::shared_ptr<ChatBackend> backend;
    std::unique_ptr<TranscriptStore> store;
    std::unique_ptr<LlmGateway> gateway;
    std::unique_ptr<LiveHttpGetter> getter;     ///< live transport; null offline
    std::unique_ptr<SearchFetcher> base_fetcher;
    std::unique_ptr<RecordingFetcher> fetcher;  ///< tees payloads into the run dir
    BackendOptions backend_opts;

    std::mt19937_64 stage_rng(Stage s) const
    {
        return std::mt19937_64(seed ^ fnv1a64(stage_name(s)));
    }

    CodegenContext codegen_ctx()
    {
        return CodegenContext{*gateway, prompts, task, cfg};
    }

    /// Sequence numbers of every transcript persisted since `first_seq`;
    /// stages register the full range so resume accounting stays exact.
    std::vector<int> seqs_since(int first_seq) const
    {
        std::vector<int> seqs;
        for (int s = first_seq; s < store->next_seq(); ++s)
            seqs.push_back(s);
        return seqs;
    }
};

Env make_env(RunState state, const BackendOptions& opts)
{
    Env env{std::move(state)};
    env.cfg = env.state.config();
    env.seed = env.state.seed();
    env.task = parse_task(env.state.dir() / kTaskSnapshot);
    env.backend_opts = opts;

    if (env.cfg.mailto.empty()) {
        if (const char* mailto = std::getenv("AUTOSG_MAILTO"))
            env.cfg.mailto = mailto;
    }

    if (opts.fixture_file)
        env.backend = ScriptedBackend::from_file(*opts.fixture_file);
    else
        env.backend = std::make_shared<HttpChatBackend>(
            env.cfg.llm_endpoint, env.cfg.llm_model, env.cfg.credential_env);

    env.store = std::make_unique<TranscriptStore>(env.state.dir(),
                                                  env.state.last_transcript_seq() + 1);
    env.gateway = std::make_unique<LlmGateway>(
        env.backend, env.store.get(),
        RetryPolicy{env.cfg.retry_attempts, env.cfg.retry_backoff_ms});

    if (opts.recorded_dir) {
        env.base_fetcher = std::make_unique<RecordedFetcher>(*opts.recorded_dir);
    } else {
        env.getter = std::make_unique<LiveHttpGetter>(
            env.cfg.retry_attempts, env.cfg.retry_backoff_ms, env.cfg.rate_limit_ms);
        env.base_fetcher =
            std::make_unique<LiveSearchFetcher>(*env.getter, env.cfg);
    }
    env.fetcher = std::make_unique<RecordingFetcher>(
        *env.base_fetcher, env.state.dir() / "artifacts" / "search" / "raw");
    return env;
}

// ---- stage executors -------------------------------------------------------

void exec_rewrite(Env& env)
{
    int first_seq = env.store->next_seq();
    QuerySet qs = rewrite_queries(*env.gateway, env.prompts, env.task, env.cfg);
    json j = {{"queries", qs.queries}, {"transcript", qs.transcript_seq}};
    fs::path path = stage_dir(env.state.dir(), Stage::rewrite) / "queries.json";
    write_file(path, j.dump(2) + "\n");
    env.state.mark_complete(Stage::rewrite, {rel(env.state.dir(), path)},
                            env.seqs_since(first_seq));
}

QuerySet load_queries(const Env& env)
{
    json j = json::parse(read_stage_artifact(
        env.state, Stage::rewrite,
        stage_dir(env.state.dir(), Stage::rewrite) / "queries.json"));
    QuerySet qs;
    qs.queries = j.at("queries").get<std::vector<std::string>>();
    qs.transcript_seq = j.value("transcript", 0);
    return qs;
}

void exec_search(Env& env)
{
    QuerySet qs = load_queries(env);
    qs.validate(env.cfg);
    std::vector<std::string> failures;
    std::vector<PaperRecord> records = run_searches(*env.fetcher, qs, env.cfg, &failures);

    json recs = json::array();
    for (const PaperRecord& r : records)
        recs.push_back(record_to_json(r));
    json j = {{"records", std::move(recs)}, {"failures", failures}};
    fs::path path = stage_dir(env.state.dir(), Stage::search) / "records.json";
    write_file(path, j.dump(2) + "\n");
    env.state.mark_complete(Stage::search, {rel(env.state.dir(), path)}, {});
}

std::vector<PaperRecord> load_records(const Env& env, Stage stage, const char* file)
{
    json j = json::parse(read_stage_artifact(
        env.state, stage, stage_dir(env.state.dir(), stage) / file));
    std::vector<PaperRecord> records;
    for (const json& r : j.at("records"))
        records.push_back(record_from_json(r));
    return records;
}

void exec_pool(Env& env)
{
    std::vector<PaperRecord> records = load_records(env, Stage::search, "records.json");
    std::vector<PaperRecord> pool = build_candidate_pool(records, env.cfg);
    if (pool.empty())
        throw NetworkError("candidate pool is empty: every search failed or "
                           "returned nothing");
    json recs = json::array();
    for (const PaperRecord& r : pool)
        recs.push_back(record_to_json(r));
    json j = {{"records", std::move(recs)}};
    fs::path path = stage_dir(env.state.dir(), Stage::pool) / "pool.json";
    write_file(path, j.dump(2) + "\n");
    env.state.mark_complete(Stage::pool, {rel(env.state.dir(), path)}, {});
}

void exec_rerank(Env& env)
{
    int first_seq = env.store->next_seq();
    std::vector<PaperRecord> pool = load_records(env, Stage::pool, "pool.json");
    RerankDecision d = rerank_top1(*env.gateway, env.prompts, pool, env.task, env.cfg);
    json j = {{"algorithm_name", d.algorithm_name},
              {"paper_title", d.paper_title},
              {"venue", d.venue},
              {"year", d.year},
              {"reason", d.reason},
              {"resolved_index", d.resolved_index},
              {"record", record_to_json(d.record)},
              {"transcript", d.transcript_seq}};
    fs::path path = stage_dir(env.state.dir(), Stage::rerank) / "decision.json";
    write_file(path, j.dump(2) + "\n");
    env.state.mark_complete(Stage::rerank, {rel(env.state.dir(), path)},
                            env.seqs_since(first_seq));
}

std::optional<RerankDecision> load_decision(const Env& env)
{
    fs::path path = stage_dir(env.state.dir(), Stage::rerank) / "decision.json";
    if (!fs::exists(path))
        return std::nullopt;
    json j = json::parse(read_stage_artifact(env.state, Stage::rerank, path));
    RerankDecision d;
    d.algorithm_name = j.value("algorithm_name", "");
    d.paper_title = j.value("paper_title", "");
    d.venue = j.value("venue", "");
    d.year = j.value("year", 0);
    d.reason = j.value("reason", "");
    d.resolved_index = j.value("resolved_index", -1);
    d.record = record_from_json(j.at("record"));
    d.transcript_seq = j.value("transcript", 0);
    return d;
}

void write_document(Env& env, const DocumentText& doc, const std::string& note)
{
    fs::path dir = stage_dir(env.state.dir(), Stage::fulltext);
    fs::path text_path = dir / "document.txt";
    fs::path meta_path = dir / "document.meta.json";
    write_file(text_path, doc.text);
    json meta = {{"locator", doc.locator},
                 {"method", doc.method},
                 {"chars", doc.text.size()}};
    write_file(meta_path, meta.dump(2) + "\n");
    env.state.mark_complete(Stage::fulltext,
                            {rel(env.state.dir(), text_path),
                             rel(env.state.dir(), meta_path)},
                            {}, note);
}

void exec_fulltext(Env& env)
{
    auto decision = load_decision(env);
    if (!decision)
        throw StateError("fulltext: no rerank decision present");
    DocumentText doc =
        acquire_fulltext(*decision, env.getter.get(), env.cfg, std::nullopt);
    write_document(env, doc, "");
}

DocumentText load_document(const Env& env)
{
    fs::path dir = stage_dir(env.state.dir(), Stage::fulltext);
    DocumentText doc;
    doc.text = read_stage_artifact(env.state, Stage::fulltext, dir / "document.txt");
    json meta = json::parse(read_stage_artifact(env.state, Stage::fulltext,
                                                dir / "document.meta.json"));
    doc.locator = meta.value("locator", "");
    doc.method = meta.value("method", "");
    return doc;
}

void exec_gen1(Env& env)
{
    int first_seq = env.store->next_seq();
    auto decision = load_decision(env);
    PaperIdentity paper = decision ? PaperIdentity::from_decision(*decision)
                                   : PaperIdentity{};
    DocumentText doc = load_document(env);
    auto ctx = env.codegen_ctx();
    SolverArtifact pre = generate_preliminary(ctx, paper, doc);
    std::vector<std::string> manifest;
    write_artifact(env.state.dir(), Stage::gen1, pre, manifest);
    env.state.mark_complete(Stage::gen1, manifest, env.seqs_since(first_seq));
}

void exec_gen2(Env& env)
{
    int first_seq = env.store->next_seq();
    auto decision = load_decision(env);
    PaperIdentity paper = decision ? PaperIdentity::from_decision(*decision)
                                   : PaperIdentity{};
    DocumentText doc = load_document(env);
    SolverArtifact pre = load_artifact(env.state, Stage::gen1, "preliminary");
    auto ctx = env.codegen_ctx();
    SolverArtifact init = polish(ctx, pre, paper, doc);
    std::vector<std::string> manifest;
    write_artifact(env.state.dir(), Stage::gen2, init, manifest);
    env.state.mark_complete(Stage::gen2, manifest, env.seqs_since(first_seq));
}

void exec_describe(Env& env)
{
    int first_seq = env.store->next_seq();
    SolverArtifact init = load_artifact(env.state, Stage::gen2, "initial");
    auto ctx = env.codegen_ctx();
    int seq = 0;
    std::string description = describe_solver(ctx, init, &seq);
    fs::path path = stage_dir(env.state.dir(), Stage::describe) / "description.txt";
    write_file(path, description + "\n");
    env.state.mark_complete(Stage::describe, {rel(env.state.dir(), path)},
                            env.seqs_since(first_seq));
}

void exec_refine(Env& env)
{
    int first_seq = env.store->next_seq();
    SolverArtifact init = load_artifact(env.state, Stage::gen2, "initial");
    init.description = trim(read_stage_artifact(
        env.state, Stage::describe,
        stage_dir(env.state.dir(), Stage::describe) / "description.txt"));
    auto decision = load_decision(env);
    PaperIdentity paper = decision ? PaperIdentity::from_decision(*decision)
                                   : PaperIdentity{};
    auto ctx = env.codegen_ctx();
    std::vector<std::string> diag;
    std::vector<SolverArtifact> refined = refine_candidates(ctx, init, paper, &diag);

    std::vector<std::string> manifest;
    for (const SolverArtifact& a : refined)
        write_artifact(env.state.dir(), Stage::refine, a, manifest);
    fs::path diag_path = stage_dir(env.state.dir(), Stage::refine) / "retention.log";
    std::string diag_text;
    for (const std::string& line : diag)
        diag_text += line + "\n";
    write_file(diag_path, diag_text);
    manifest.push_back(rel(env.state.dir(), diag_path));
    env.state.mark_complete(Stage::refine, manifest, env.seqs_since(first_seq));
}

CandidatePool load_pool(const Env& env)
{
    SolverArtifact init = load_artifact(env.state, Stage::gen2, "initial");
    init.description = trim(read_stage_artifact(
        env.state, Stage::describe,
        stage_dir(env.state.dir(), Stage::describe) / "description.txt"));
    std::vector<SolverArtifact> refined;
    for (int slot = 1; slot <= env.cfg.n_refined; ++slot)
        refined.push_back(load_artifact(env.state, Stage::refine,
                                        "refined-" + std::to_string(slot)));
    return assemble_pool(init, refined, env.cfg);
}

std::unique_ptr<Judge> make_judge(Env& env, const CandidatePool& pool)
{
    const std::string& spec = env.backend_opts.judge_spec;
    if (spec == "llm")
        return std::make_unique<LlmJudge>(*env.gateway, env.prompts, env.task, env.cfg);
    if (spec.rfind("oracle", 0) == 0) {
        double flip = 0.0;
        size_t eq = spec.find("flip=");
        if (eq != std::string::npos)
            flip = std::stod(spec.substr(eq + 5));
        if (flip < 0.0 || flip >= 1.0)
            throw InputError("judge spec: flip probability must be in [0,1): " + spec);
        // Ground truth = pool order (element 0 best); for simulation only.
        std::vector<std::string> order;
        for (const SolverArtifact& a : pool.members)
            order.push_back(a.id);
        return std::make_unique<OracleJudge>(order, flip,
                                             env.seed ^ fnv1a64("oracle-judge"));
    }
    throw InputError("unknown judge spec: " + spec);
}

void exec_tournament(Env& env)
{
    int first_seq = env.store->next_seq();
    CandidatePool pool = load_pool(env);
    std::unique_ptr<Judge> judge = make_judge(env, pool);

    fs::path elo_dir = env.state.dir() / "elo";
    fs::create_directories(elo_dir);
    std::ofstream log(elo_dir / "matches.log", std::ios::trunc);
    if (!log)
        throw StateError("cannot write " + (elo_dir / "matches.log").string());

    std::mt19937_64 rng = env.stage_rng(Stage::tournament);
    TournamentResult result =
        run_tournament(pool, *judge, env.cfg, rng, [&log](const MatchRecord& r) {
            log << match_record_line(r) << "\n";
            log.flush();
        });
    log.close();

    write_file(elo_dir / "standings", format_standings(result.standings));

    const SolverArtifact* winner = nullptr;
    for (const SolverArtifact& a : pool.members)
        if (a.id == result.winner_id)
            winner = &a;
    if (!winner)
        throw TournamentError("winner `" + result.winner_id + "` not in pool");
    fs::path winner_path = env.state.dir() / "winner.txt";
    write_file(winner_path, winner->source_text);

    env.state.mark_complete(Stage::tournament,
                            {"elo/matches.log", "elo/standings", "winner.txt"},
                            env.seqs_since(first_seq),
                            "winner=" + result.winner_id);
}

void exec_stage(Env& env, Stage s)
{
    switch (s) {
    case Stage::rewrite: exec_rewrite(env); break;
    case Stage::search: exec_search(env); break;
    case Stage::pool: exec_pool(env); break;
    case Stage::rerank: exec_rerank(env); break;
    case Stage::fulltext: exec_fulltext(env); break;
    case Stage::gen1: exec_gen1(env); break;
    case Stage::gen2: exec_gen2(env); break;
    case Stage::describe: exec_describe(env); break;
    case Stage::refine: exec_refine(env); break;
    case Stage::tournament: exec_tournament(env); break;
    }
}

int count_transcripts(const fs::path& run_dir)
{
    fs::path dir = run_dir / "transcripts";
    if (!fs::exists(dir))
        return 0;
    int n = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json")
            ++n;
    return n;
}

int count_lines(const fs::path& p)
{
    if (!fs::exists(p))
        return 0;
    std::string text = read_file(p);
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

RunReport build_report(Env& env)
{
    RunReport report;
    report.finished = env.state.is_complete(Stage::tournament);
    report.llm_calls = count_transcripts(env.state.dir());
    report.match_count = count_lines(env.state.dir() / "elo" / "matches.log");

    if (auto decision = load_decision(env)) {
        report.top1_title = decision->paper_title;
        report.top1_venue = decision->venue;
        report.top1_year = decision->year;
    }
    fs::path pool_path = stage_dir(env.state.dir(), Stage::pool) / "pool.json";
    if (fs::exists(pool_path))
        report.paper_pool_size =
            static_cast<int>(json::parse(read_file(pool_path)).at("records").size());

    if (report.finished) {
        report.candidate_pool_size = env.cfg.n_refined + 1;
        report.winner_path = env.state.dir() / "winner.txt";
        std::string note = env.state.note(Stage::tournament);
        if (note.rfind("winner=", 0) == 0)
            report.winner_id = note.substr(7);
        for (const std::string& line :
             split_lines(read_file(env.state.dir() / "elo" / "standings"))) {
            EloState s;
            char id[96];
            int rank = 0;
            if (std::sscanf(line.c_str(), "%d %95s %lf %lf %d", &rank, id, &s.rating,
                            &s.rd, &s.matches) == 5) {
                s.id = id;
                report.standings.push_back(s);
            }
        }
        json j = {{"winner", report.winner_id},
                  {"winner_path", "winner.txt"},
                  {"top1_title", report.top1_title},
                  {"top1_venue", report.top1_venue},
                  {"top1_year", report.top1_year},
                  {"paper_pool_size", report.paper_pool_size},
                  {"candidate_pool_size", report.candidate_pool_size},
                  {"match_count", report.match_count},
                  {"llm_calls", report.llm_calls}};
        write_file(env.state.dir() / "report.json", j.dump(2) + "\n");
    }
    return report;
}

RunReport run_stages(Env& env, std::optional<Stage> stop_after)
{
    while (auto next = env.state.next_pending()) {
        Stage s = *next;
        try {
            exec_stage(env, s);
        } catch (const StageFailure&) {
            throw;
        } catch (const std::exception& e) {
            env.state.mark_failed(s, e.what());
            throw StageFailure(s, e.what(), exit_code_for(e));
        }
        if (stop_after && s == *stop_after)
            break;
    }
    return build_report(env);
}

void bypass_stages(RunState& state, Stage last, const std::string& note)
{
    for (Stage s : all_stages()) {
        if (static_cast<int>(s) > static_cast<int>(last))
            break;
        if (!state.is_complete(s))
            state.mark_complete(s, {}, {}, note);
    }
}

/// Remove on-disk output of stages that are not complete, so a resumed run
/// reproduces a clean run byte-for-byte.
void clean_incomplete(RunState& state)
{
    state.reset_incomplete();
    for (Stage s : all_stages()) {
        if (state.is_complete(s))
            continue;
        std::error_code ec;
        fs::remove_all(stage_dir(state.dir(), s), ec);
        if (s == Stage::tournament) {
            fs::remove_all(state.dir() / "elo", ec);
            fs::remove(state.dir() / "winner.txt", ec);
            fs::remove(state.dir() / "report.json", ec);
        }
    }
    int last_seq = state.last_transcript_seq();
    fs::path tdir = state.dir() / "transcripts";
    if (fs::exists(tdir)) {
        for (const auto& e : fs::directory_iterator(tdir)) {
            int seq = std::atoi(e.path().stem().string().c_str());
            if (seq > last_seq) {
                std::error_code ec;
                fs::remove(e.path(), ec);
            }
        }
    }
}

Env create_env(const PipelineOptions& opts)
{
    TaskPrompt task = parse_task(opts.task_file);
    PipelineConfig cfg =
        opts.config_file ? load_config(*opts.config_file) : PipelineConfig{};
    cfg.validate();
    std::uint64_t seed = opts.seed.value_or(cfg.rng_seed);

    RunState state = RunState::create(opts.out_dir, cfg, seed);
    write_file(opts.out_dir / kTaskSnapshot, serialize_task(task));
    return make_env(std::move(state), opts.backend);
}

} // namespace

StageFailure::StageFailure(Stage s, std::string reason, int exit_code_hint)
    : std::runtime_error("stage `" + std::string(stage_name(s)) +
                         "` failed: " + reason),
      stage(s), exit_code(exit_code_hint)
{
}

int exit_code_for(const std::exception& e)
{
    if (auto* sf = dynamic_cast<const StageFailure*>(&e))
        return sf->exit_code;
    if (dynamic_cast<const TournamentError*>(&e))
        return 6;
    if (dynamic_cast<const StructuralError*>(&e))
        return 5;
    if (dynamic_cast<const ParseError*>(&e))
        return 4;
    if (dynamic_cast<const NetworkError*>(&e))
        return 3;
    if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const FixtureError*>(&e) ||
        dynamic_cast<const StateError*>(&e))
        return 2;
    return 1;
}

RunReport run_pipeline(const PipelineOptions& opts)
{
    Env env = create_env(opts);
    if (opts.from_text) {
        // Retrieval is bypassed entirely; the provided document stands in
        // for the acquired full text.
        bypass_stages(env.state, Stage::rerank, "bypassed: --from-text");
        DocumentText doc =
            acquire_fulltext(RerankDecision{}, nullptr, env.cfg, opts.from_text);
        write_document(env, doc, "bypassed: --from-text");
    }
    return run_stages(env, opts.stop_after);
}

RunReport resume_pipeline(const fs::path& out_dir, const BackendOptions& backend)
{
    RunState state = RunState::open(out_dir);
    clean_incomplete(state);
    Env env = make_env(std::move(state), backend);
    return run_stages(env, std::nullopt);
}

RunReport run_stage_group(const fs::path& out_dir, const BackendOptions& backend,
                          Stage first, Stage last)
{
    RunState state = RunState::open(out_dir);
    for (Stage s : all_stages()) {
        if (static_cast<int>(s) >= static_cast<int>(first))
            break;
        if (!state.is_complete(s))
            throw InputError("missing prerequisite: stage `" +
                             std::string(stage_name(s)) + "` is " +
                             stage_status_name(state.status(s)));
    }
    clean_incomplete(state);
    Env env = make_env(std::move(state), backend);
    while (auto next = env.state.next_pending()) {
        Stage s = *next;
        if (static_cast<int>(s) > static_cast<int>(last))
            break;
        try {
            exec_stage(env, s);
        } catch (const std::exception& e) {
            env.state.mark_failed(s, e.what());
            throw StageFailure(s, e.what(), exit_code_for(e));
        }
    }
    return build_report(env);
}

std::filesystem::path run_ungrounded(const PipelineOptions& opts)
{
    Env env = create_env(opts);
    bypass_stages(env.state, Stage::fulltext, "bypassed: ungrounded path");
    try {
        auto ctx = env.codegen_ctx();
        SolverArtifact artifact = generate_ungrounded(ctx);
        std::vector<std::string> manifest;
        write_artifact(env.state.dir(), Stage::gen1, artifact, manifest);
        env.state.mark_complete(Stage::gen1, manifest, transcripts_of(artifact),
                                "ungrounded");
    } catch (const std::exception& e) {
        env.state.mark_failed(Stage::gen1, e.what());
        throw StageFailure(Stage::gen1, e.what(), exit_code_for(e));
    }
    return stage_dir(env.state.dir(), Stage::gen1) / "ungrounded.txt";
}

} // namespace autosg
