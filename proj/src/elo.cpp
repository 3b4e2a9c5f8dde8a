#include "autosg/elo.hpp"

#include "autosg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace autosg {

double expected_score(double r_self, double r_other)
{
    return 1.0 / (1.0 + std::pow(10.0, (r_other - r_self) / 400.0));
}

double k_multiplier(int matches)
{
    return 32.0 * (1.0 + 50.0 / (matches + 10.0));
}

std::array<double, 2> confidence_interval(const EloState& s)
{
    return {s.rating - 1.96 * s.rd, s.rating + 1.96 * s.rd};
}

double phase1_priority(int m_i, int m_j, double eps)
{
    return -static_cast<double>(m_i + m_j) + eps;
}

double phase2_priority(double r_i, double r_j, int m_i, int m_j,
                       const PipelineConfig& cfg)
{
    double proximity = 1000.0 / (std::abs(r_i - r_j) + 1.0);
    double scarcity = cfg.phase2_lambda *
                      (cfg.matches_total - static_cast<double>(m_i + m_j) / 2.0);
    return proximity + scarcity;
}

bool should_prune(const EloState& a, const EloState& b, const PipelineConfig& cfg)
{
    if (std::abs(a.rating - b.rating) <= cfg.elo_prune_gap)
        return false;
    const EloState& lower = a.rating < b.rating ? a : b;
    const EloState& higher = a.rating < b.rating ? b : a;
    return confidence_interval(lower)[1] < confidence_interval(higher)[0];
}

namespace {

EloState* find_state(std::vector<EloState>& states, const std::string& id)
{
    for (EloState& s : states)
        if (s.id == id)
            return &s;
    return nullptr;
}

double decay_rd(double rd)
{
    return std::max(30.0, 0.95 * rd);
}

} // namespace

MatchRecord apply_match(std::vector<EloState>& states, const std::string& winner_id,
                        const std::string& loser_id)
{
    if (winner_id == loser_id)
        throw TournamentError("apply_match: self-match for `" + winner_id + "`");
    EloState* w = find_state(states, winner_id);
    EloState* l = find_state(states, loser_id);
    if (!w)
        throw TournamentError("apply_match: unknown candidate `" + winner_id + "`");
    if (!l)
        throw TournamentError("apply_match: unknown candidate `" + loser_id + "`");

    MatchRecord rec;
    rec.winner = winner_id;
    rec.loser = loser_id;
    rec.pre_rating_winner = w->rating;
    rec.pre_rating_loser = l->rating;
    rec.pre_matches_winner = w->matches;
    rec.pre_matches_loser = l->matches;

    // Everything derives from the pre-match snapshot.
    double e_w = expected_score(w->rating, l->rating);
    double e_l = expected_score(l->rating, w->rating);
    double k_w = k_multiplier(w->matches);
    double k_l = k_multiplier(l->matches);
    rec.expected_winner = e_w;
    rec.delta_winner = k_w * (1.0 - e_w);
    rec.delta_loser = -k_l * e_l;

    w->rating += rec.delta_winner;
    l->rating += rec.delta_loser;
    w->rd = decay_rd(w->rd);
    l->rd = decay_rd(l->rd);
    w->matches += 1;
    l->matches += 1;
    return rec;
}

} // namespace autosg
