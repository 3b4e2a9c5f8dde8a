#pragma once

#include "autosg/elo.hpp"
#include "autosg/gateway.hpp"
#include "autosg/prompts.hpp"
#include "autosg/refine.hpp"

#include <functional>
#include <optional>
#include <random>
#include <set>

namespace autosg {

/// Pairwise judge plug-in: sees the two artifacts in their presented A/B
/// positions and returns which position won.
class Judge {
public:
    struct Verdict {
        bool a_wins = false;
        std::string ref; ///< transcript reference or oracle tag
    };
    virtual ~Judge() = default;
    virtual Verdict adjudicate(const SolverArtifact& presented_a,
                               const SolverArtifact& presented_b) = 0;
};

/// LLM-backed judge; parses the {"winner": "Algorithm A"|"Algorithm B"}
/// contract with a bounded verdict-retry budget.
class LlmJudge : public Judge {
public:
    LlmJudge(LlmGateway& gateway, const PromptLibrary& prompts, TaskPrompt task,
             const PipelineConfig& cfg, int verdict_retries = 2);
    Verdict adjudicate(const SolverArtifact& a, const SolverArtifact& b) override;

private:
    LlmGateway& gateway_;
    const PromptLibrary& prompts_;
    TaskPrompt task_;
    PipelineConfig cfg_;
    int verdict_retries_;
};

/// Simulated judge over a ground-truth order: picks the truth-better
/// candidate, flipped with probability `flip_p`. Seeded and deterministic.
class OracleJudge : public Judge {
public:
    OracleJudge(std::vector<std::string> truth_order_best_first, double flip_p,
                std::uint64_t seed);
    Verdict adjudicate(const SolverArtifact& a, const SolverArtifact& b) override;

private:
    std::map<std::string, int> rank_;
    double flip_p_;
    std::mt19937_64 rng_;
};

using PairKey = std::pair<int, int>; ///< indices into the pool, i < j

/// One scheduling proposal for a candidate pair.
struct PairingProposal {
    PairKey pair;          ///< members are distinct by construction
    double priority = 0.0;
    int phase = 0;
    double jitter = 0.0;   ///< epsilon draw, phase 1 only, in [0, 0.1)
    bool pruned = false;   ///< phase 2: near-certain matchup
    bool repeat = false;   ///< pair already played
};

/// All proposals eligible this scheduling step (at least one member below the
/// phase target), with fresh jitter per proposal in phase 1.
std::vector<PairingProposal> propose_pairs(const std::vector<EloState>& states,
                                           const std::set<PairKey>& played, int phase,
                                           const PipelineConfig& cfg,
                                           std::mt19937_64& rng);

/// Next pair per the phase's priority rule, or nullopt when no candidate is
/// below the phase target. Phase 1 prefers unplayed pairs; phase 2 applies
/// pruning with a fallback when all eligible pairs are pruned.
std::optional<PairKey> select_next_pair(const std::vector<EloState>& states,
                                        const std::set<PairKey>& played, int phase,
                                        const PipelineConfig& cfg,
                                        std::mt19937_64& rng);

/// Randomized A/B presentation + adjudication; nullopt when the judge failed
/// to produce a usable verdict (no state change).
struct MatchOutcome {
    std::string winner_id;
    std::string loser_id;
    std::string presented_a;
    std::string presented_b;
    std::string judge_ref;
};
std::optional<MatchOutcome> judge_match(const SolverArtifact& x, const SolverArtifact& y,
                                        Judge& judge, std::mt19937_64& rng);

struct TournamentResult {
    std::vector<EloState> standings; ///< sorted: best first
    std::vector<MatchRecord> records;
    std::string winner_id;
};

/// Two-phase smart-pairing tournament; runs until every candidate reaches
/// cfg.matches_total matches. Each completed match is streamed to `sink`.
TournamentResult run_tournament(const CandidatePool& pool, Judge& judge,
                                const PipelineConfig& cfg, std::mt19937_64& rng,
                                const std::function<void(const MatchRecord&)>& sink = {});

} // namespace autosg
