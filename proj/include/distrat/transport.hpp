#pragma once

#include <functional>
#include <vector>

#include "distrat/core.hpp"
#include "distrat/metrics.hpp"
#include "distrat/score.hpp"

namespace distrat {

// Minimum-cost perfect matching on a square cost matrix (exact rational
// arithmetic; Jonker-Volgenant style potentials).
struct AssignmentResult {
    Rat total;
    std::vector<int> match;  // row -> column
};
AssignmentResult hungarian_min_cost(const std::vector<std::vector<Rat>>& cost);

// Minimum over perfect matchings of the maximum matched entry.
Rat bottleneck_assignment(const std::vector<std::vector<Rat>>& cost);

// Quotient (Earth Mover) distance between voting situations under an
// anonymous votewise distance: minimum voter matching of the multiset
// expansions. Lp with integer p matches on p-th-power costs; Linf uses
// the bottleneck assignment. Infinite when candidate sets or voter
// counts differ.
Score quotient_votewise_distance(const RankingMetricSpec& metric, const NormSpec& norm,
                                 const VotingSituation& x, const VotingSituation& y,
                                 bool normalized = false,
                                 std::vector<std::pair<Ranking, Ranking>>* matching = nullptr);

// --- generic quotient machinery over explicit finite spaces ------------------

struct QuotientSpace {
    std::vector<Election> elements;
    std::vector<int> class_of;  // element index -> class id (0-based, dense)
    int num_classes = 0;
};

QuotientSpace build_quotient(const std::vector<Election>& elements,
                             const std::function<bool(const Election&, const Election&)>& equiv);

// tilde(x, y) = inf over representatives of d (Def 4.10)
Score tilde_distance(const QuotientSpace& q,
                     const std::function<Score(const Election&, const Election&)>& d, int cx,
                     int cy);

// Quotient distance via admissible chained paths (Eq 4.1): shortest path
// over classes with leg weights tilde.
Score quotient_path_distance(const QuotientSpace& q,
                             const std::function<Score(const Election&, const Election&)>& d,
                             int cx, int cy);

struct SimplicityReport {
    bool simple = true;
    int cx = -1, cy = -1;  // witness class pair when not simple
    Score tilde, path;
};
SimplicityReport is_simple(const QuotientSpace& q,
                           const std::function<Score(const Election&, const Election&)>& d);

}  // namespace distrat
