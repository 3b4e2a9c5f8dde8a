#include "autosg/tournament.hpp"

#include "autosg/errors.hpp"

#include <algorithm>

namespace autosg {

LlmJudge::LlmJudge(LlmGateway& gateway, const PromptLibrary& prompts, TaskPrompt task,
                   const PipelineConfig& cfg, int verdict_retries)
    : gateway_(gateway), prompts_(prompts), task_(std::move(task)), cfg_(cfg),
      verdict_retries_(verdict_retries)
{
}

Judge::Verdict LlmJudge::adjudicate(const SolverArtifact& a, const SolverArtifact& b)
{
    auto bindings = task_bindings(task_);
    bindings["code_a"] = "### Algorithm A\n```python\n" + a.source_text + "\n```";
    bindings["code_b"] = "### Algorithm B\n```python\n" + b.source_text + "\n```";
    std::string bound = bind_template(prompts_.get("judge"), bindings);
    auto [system, user] = split_chat_prompt(bound);

    ChatRequest req;
    req.system = system;
    req.user = user;
    req.temperature = cfg_.temperature;
    req.max_tokens = cfg_.max_output_tokens;
    req.stage = Stage::tournament;

    std::string last_error;
    for (int attempt = 0; attempt <= verdict_retries_; ++attempt) {
        Transcript t = gateway_.chat(req);
        auto obj = find_json_with_key(t.response, "winner");
        if (!obj) {
            last_error = "no JSON object with `winner`";
            continue;
        }
        std::string winner = obj->value("winner", "");
        if (winner == "Algorithm A")
            return {true, "transcript:" + std::to_string(t.seq)};
        if (winner == "Algorithm B")
            return {false, "transcript:" + std::to_string(t.seq)};
        last_error = "out-of-vocabulary verdict `" + winner + "`";
    }
    throw ParseError("judge verdict unusable after " +
                     std::to_string(verdict_retries_ + 1) + " attempts: " + last_error);
}

OracleJudge::OracleJudge(std::vector<std::string> truth_order_best_first, double flip_p,
                         std::uint64_t seed)
    : flip_p_(flip_p), rng_(seed)
{
    for (size_t i = 0; i < truth_order_best_first.size(); ++i)
        rank_[truth_order_best_first[i]] = static_cast<int>(i);
}

Judge::Verdict OracleJudge::adjudicate(const SolverArtifact& a, const SolverArtifact& b)
{
    auto ra = rank_.find(a.id);
    auto rb = rank_.find(b.id);
    if (ra == rank_.end() || rb == rank_.end())
        throw TournamentError("oracle judge: candidate not in ground-truth order");
    bool a_better = ra->second < rb->second;
    if (flip_p_ > 0.0) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        if (u(rng_) < flip_p_)
            a_better = !a_better;
    }
    return {a_better, "oracle"};
}

std::vector<PairingProposal> propose_pairs(const std::vector<EloState>& states,
                                           const std::set<PairKey>& played, int phase,
                                           const PipelineConfig& cfg,
                                           std::mt19937_64& rng)
{
    const int n = static_cast<int>(states.size());
    const int target = phase == 1 ? cfg.matches_phase1 : cfg.matches_total;
    std::vector<PairingProposal> proposals;
    std::uniform_real_distribution<double> jitter(0.0, 0.1);

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            // Eligible only while at least one member is below the target.
            if (states[i].matches >= target && states[j].matches >= target)
                continue;
            PairingProposal p;
            p.pair = {i, j};
            p.phase = phase;
            p.repeat = played.count({i, j}) > 0;
            if (phase == 1) {
                // Fresh jitter per proposal per scheduling step.
                p.jitter = jitter(rng);
                p.priority = phase1_priority(states[i].matches, states[j].matches,
                                             p.jitter);
            } else {
                p.priority = phase2_priority(states[i].rating, states[j].rating,
                                             states[i].matches, states[j].matches, cfg);
                p.pruned = should_prune(states[i], states[j], cfg);
            }
            proposals.push_back(p);
        }
    }
    return proposals;
}

std::optional<PairKey> select_next_pair(const std::vector<EloState>& states,
                                        const std::set<PairKey>& played, int phase,
                                        const PipelineConfig& cfg, std::mt19937_64& rng)
{
    std::vector<PairingProposal> proposals =
        propose_pairs(states, played, phase, cfg, rng);
    if (proposals.empty())
        return std::nullopt;

    auto best_of = [](const std::vector<const PairingProposal*>& subset) {
        const PairingProposal* best = nullptr;
        for (const PairingProposal* p : subset)
            if (!best || p->priority > best->priority ||
                (p->priority == best->priority && p->pair < best->pair))
                best = p;
        return best;
    };

    std::vector<const PairingProposal*> pick;
    if (phase == 1) {
        // Repeats are a last resort in phase 1.
        for (const PairingProposal& p : proposals)
            if (!p.repeat)
                pick.push_back(&p);
        if (pick.empty())
            for (const PairingProposal& p : proposals)
                pick.push_back(&p);
    } else {
        for (const PairingProposal& p : proposals)
            if (!p.pruned)
                pick.push_back(&p);
        // Fallback: targets must still be reachable when everything eligible
        // got pruned, so ignore the prune flag for this step.
        if (pick.empty())
            for (const PairingProposal& p : proposals)
                pick.push_back(&p);
    }
    return best_of(pick)->pair;
}

std::optional<MatchOutcome> judge_match(const SolverArtifact& x, const SolverArtifact& y,
                                        Judge& judge, std::mt19937_64& rng)
{
    // Uniform position assignment mitigates judge position bias.
    std::uniform_int_distribution<int> coin(0, 1);
    const bool x_is_a = coin(rng) == 0;
    const SolverArtifact& as_a = x_is_a ? x : y;
    const SolverArtifact& as_b = x_is_a ? y : x;

    Judge::Verdict verdict;
    try {
        verdict = judge.adjudicate(as_a, as_b);
    } catch (const ParseError&) {
        return std::nullopt; // aborted match, no state change
    }

    MatchOutcome outcome;
    outcome.presented_a = as_a.id;
    outcome.presented_b = as_b.id;
    outcome.winner_id = verdict.a_wins ? as_a.id : as_b.id;
    outcome.loser_id = verdict.a_wins ? as_b.id : as_a.id;
    outcome.judge_ref = verdict.ref;
    return outcome;
}

TournamentResult run_tournament(const CandidatePool& pool, Judge& judge,
                                const PipelineConfig& cfg, std::mt19937_64& rng,
                                const std::function<void(const MatchRecord&)>& sink)
{
    std::vector<EloState> states;
    for (const SolverArtifact& a : pool.members)
        states.push_back({a.id, cfg.elo_initial_rating, cfg.elo_initial_rd, 0});

    TournamentResult result;
    std::set<PairKey> played;
    int seq = 0;
    constexpr int kMaxConsecutiveAborts = 5;

    for (int phase : {1, 2}) {
        int aborts = 0;
        while (true) {
            auto pair = select_next_pair(states, played, phase, cfg, rng);
            if (!pair)
                break;
            auto [i, j] = *pair;
            auto outcome = judge_match(pool.members[i], pool.members[j], judge, rng);
            if (!outcome) {
                if (++aborts >= kMaxConsecutiveAborts)
                    throw TournamentError(
                        "judge failed " + std::to_string(aborts) +
                        " consecutive matches; tournament aborted (state preserved)");
                continue;
            }
            aborts = 0;

            MatchRecord rec = apply_match(states, outcome->winner_id, outcome->loser_id);
            rec.seq = ++seq;
            rec.phase = phase;
            rec.presented_a = outcome->presented_a;
            rec.presented_b = outcome->presented_b;
            rec.judge_ref = outcome->judge_ref;
            played.insert(*pair);
            result.records.push_back(rec);
            if (sink)
                sink(rec);
        }
    }

    // Highest rating wins; exact ties broken by fewer matches, then lower id.
    result.standings = states;
    std::sort(result.standings.begin(), result.standings.end(),
              [](const EloState& a, const EloState& b) {
                  if (a.rating != b.rating)
                      return a.rating > b.rating;
                  if (a.matches != b.matches)
                      return a.matches < b.matches;
                  return a.id < b.id;
              });
    result.winner_id = result.standings.front().id;
    return result;
}

} // namespace autosg
