#pragma once

#include "sidsp/rng.hpp"

#include <vector>

namespace sidsp {

// Offspring quality relative to the current archive.
enum class ScoreOutcome { DominatesAll, DominatesOne, OnFrontier, Dominated };

struct ScoreValues {
    double dominates_all = 30;
    double dominates_one = 20;
    double on_frontier = 10;
    double dominated_prob = 0.1;  // score 1 with this probability, else 0
};

double score_event(ScoreOutcome outcome, Rng& rng, const ScoreValues& values = {});

// Weights and accumulated scores for one operator family.
struct OperatorStats {
    std::vector<double> weights;
    std::vector<double> scores;
    double lambda = 0.5;

    static OperatorStats uniform(int n, double lambda);
    void add_score(int op, double score) { scores[op] += score; }
};

// Blend weights toward the normalized scores and reset the scores; a family
// with zero total score keeps its weights.
void update_weights(OperatorStats& stats);

// Roulette-wheel selection proportional to the weights.
int select_operator(const OperatorStats& stats, Rng& rng);

}  // namespace sidsp
