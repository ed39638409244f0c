#include "sidsp/adaptive.hpp"

#include <numeric>
#include <stdexcept>

namespace sidsp {

double score_event(ScoreOutcome outcome, Rng& rng, const ScoreValues& values) {
    switch (outcome) {
        case ScoreOutcome::DominatesAll: return values.dominates_all;
        case ScoreOutcome::DominatesOne: return values.dominates_one;
        case ScoreOutcome::OnFrontier: return values.on_frontier;
        case ScoreOutcome::Dominated: return rng.bernoulli(values.dominated_prob) ? 1.0 : 0.0;
    }
    return 0.0;
}

OperatorStats OperatorStats::uniform(int n, double lambda) {
    OperatorStats s;
    s.weights.assign(n, 1.0 / n);
    s.scores.assign(n, 0.0);
    s.lambda = lambda;
    return s;
}

void update_weights(OperatorStats& stats) {
    double total = std::accumulate(stats.scores.begin(), stats.scores.end(), 0.0);
    if (total > 0) {
        for (size_t i = 0; i < stats.weights.size(); ++i)
            stats.weights[i] =
                (1.0 - stats.lambda) * stats.weights[i] + stats.lambda * stats.scores[i] / total;
    }
    std::fill(stats.scores.begin(), stats.scores.end(), 0.0);
}

int select_operator(const OperatorStats& stats, Rng& rng) {
    double total = std::accumulate(stats.weights.begin(), stats.weights.end(), 0.0);
    if (!(total > 0)) throw std::invalid_argument("operator weights sum to zero");
    double r = rng.uniform01() * total;
    double acc = 0;
    for (size_t i = 0; i < stats.weights.size(); ++i) {
        acc += stats.weights[i];
        if (r < acc) return (int)i;
    }
    return (int)stats.weights.size() - 1;
}

}  // namespace sidsp
