#pragma once

#include "autosg/config.hpp"

#include <array>
#include <string>
#include <vector>

namespace autosg {

/// Per-candidate rating state.
struct EloState {
    std::string id;
    double rating = 1500.0;
    double rd = 350.0;
    int matches = 0;
};

/// Immutable record of one adjudicated match. Rating math is reproducible
/// from the stored pre-match snapshot.
struct MatchRecord {
    int seq = 0;
    int phase = 0;
    std::string presented_a; ///< candidate shown as "Algorithm A"
    std::string presented_b;
    std::string winner;
    std::string loser;
    double pre_rating_winner = 0.0;
    double pre_rating_loser = 0.0;
    int pre_matches_winner = 0;
    int pre_matches_loser = 0;
    double expected_winner = 0.0; ///< E computed from pre-match ratings
    double delta_winner = 0.0;
    double delta_loser = 0.0;
    std::string judge_ref; ///< transcript reference or oracle tag
};

/// Win probability of `r_self` against `r_other` on the Elo logistic curve.
double expected_score(double r_self, double r_other);

/// Match-count-scaled step size: 32 * (1 + 50 / (m + 10)).
double k_multiplier(int matches);

/// Approximate 95% confidence interval [R - 1.96*rd, R + 1.96*rd].
std::array<double, 2> confidence_interval(const EloState& s);

/// Phase-1 scheduling priority: -(m_i + m_j) + eps.
double phase1_priority(int m_i, int m_j, double eps);

/// Phase-2 composite: 1000/(|dr|+1) + lambda * (T_total - (m_i+m_j)/2).
double phase2_priority(double r_i, double r_j, int m_i, int m_j,
                       const PipelineConfig& cfg);

/// Skip near-certain matchups: rating gap above the threshold and disjoint CIs.
bool should_prune(const EloState& a, const EloState& b, const PipelineConfig& cfg);

/// Apply one match outcome: deltas from pre-match ratings and counts, rd decay
/// max(30, 0.95*rd) on both sides, match counts incremented. Returns a record
/// with the rating math filled in (seq/phase/positions set by the caller).
MatchRecord apply_match(std::vector<EloState>& states, const std::string& winner_id,
                        const std::string& loser_id);

} // namespace autosg
