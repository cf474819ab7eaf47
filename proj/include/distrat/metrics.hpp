#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "distrat/core.hpp"
#include "distrat/rule.hpp"
#include "distrat/score.hpp"

namespace distrat {

// --- distances on rankings ---------------------------------------------------

struct RankingMetricSpec {
    enum class Kind { Discrete, Kendall, Spearman, Weighted };
    Kind kind = Kind::Kendall;
    std::vector<Rat> weights;  // Weighted only; nonincreasing, w1 > wm

    static RankingMetricSpec discrete() { return {Kind::Discrete, {}}; }
    static RankingMetricSpec kendall() { return {Kind::Kendall, {}}; }
    static RankingMetricSpec spearman() { return {Kind::Spearman, {}}; }
    static RankingMetricSpec weighted(std::vector<Rat> w);
    std::string name() const;
};

Rat ranking_distance_exact(const RankingMetricSpec& spec, const Ranking& a, const Ranking& b);
Score ranking_distance(const RankingMetricSpec& spec, const Ranking& a, const Ranking& b);

// --- seminorms ---------------------------------------------------------------

struct NormSpec {
    enum class Kind { Lp, Linf };
    Kind kind = Kind::Lp;
    Rat p = Rat(1);  // Lp only, p >= 1

    static NormSpec l1() { return {Kind::Lp, Rat(1)}; }
    static NormSpec lp(Rat p) { return {Kind::Lp, p}; }
    static NormSpec linf() { return {Kind::Linf, Rat(1)}; }
    bool integer_p() const { return kind == Kind::Lp && p.is_integer(); }
    std::string name() const;
};

// Norm of a nonnegative vector, as a comparison-exact Score: Lp with
// integer p yields the sum of p-th powers; Linf the exact max. Lp with
// non-integer rational p is evaluated in long double and quantized at
// 1e-9 (documented approximate path, only used when requested).
Score norm_value(const NormSpec& norm, const std::vector<Rat>& values);

// --- distances on elections --------------------------------------------------

struct ElectionDistanceSpec {
    enum class Kind {
        Votewise,
        Tournament,
        ReducedTournament,
        Insert,
        Delete,
        CampbellNitzan,
        Custom,
    };
    Kind kind = Kind::Votewise;
    RankingMetricSpec metric;
    NormSpec norm;
    bool normalized = false;  // d_* = d / n
    int cn_variant = 1;
    const Rule* cn_rule = nullptr;
    const std::vector<Election>* cn_space = nullptr;  // variant 3 shortest path
    std::function<Score(const Election&, const Election&)> custom;
    Rat scale_factor = Rat(1);  // lambda * d wrappers for argmin tests
    std::string label;

    static ElectionDistanceSpec votewise(RankingMetricSpec m, NormSpec n, bool normalized = false);
    static ElectionDistanceSpec tournament();
    static ElectionDistanceSpec reduced_tournament();
    static ElectionDistanceSpec insertion();
    static ElectionDistanceSpec deletion();
    static ElectionDistanceSpec campbell_nitzan(int variant, const Rule* rule,
                                                const std::vector<Election>* space = nullptr);
    static ElectionDistanceSpec custom_fn(std::string label,
                                          std::function<Score(const Election&, const Election&)> fn);
    ElectionDistanceSpec scaled(Rat lambda) const;

    Score evaluate(const Election& a, const Election& b) const;
    std::string name() const;
};

Score votewise_distance(const RankingMetricSpec& metric, const NormSpec& norm, bool normalized,
                        const Election& a, const Election& b);

// Weighted pairwise net-support matrix M(E); entries indexed by position
// in the sorted candidate set.
struct MajorityMatrix {
    CandidateSet cands;
    std::vector<long long> net_flat;  // m*m, antisymmetric

    long long net(Candidate a, Candidate b) const;
    int index_of(Candidate c) const;
};

MajorityMatrix majority_matrix(const VotingSituation& x);
MajorityMatrix majority_matrix(const Election& e);

// l1 of the margin-matrix difference (full), or the count of differing
// sign entries (reduced; each unordered pair fix counts 2). Infinite when
// candidate sets differ; finite across different voter sets.
Score tournament_distance(const Election& a, const Election& b, bool reduced);
Score tournament_distance(const VotingSituation& a, const VotingSituation& b, bool reduced);

// Identity-respecting sub/super-election counts, +infinity when E' is
// unreachable (Example-2.9 style quasimetrics).
Score deletion_distance(const Election& a, const Election& b);
Score insertion_distance(const Election& a, const Election& b);

Score campbell_nitzan_distance(int variant, const Rule& rule, const Election& a, const Election& b,
                               const std::vector<Election>* space = nullptr);

// --- hemimetric classifier ---------------------------------------------------

struct DistanceClassification {
    bool zero_on_self = true;
    bool triangle = true;
    bool symmetric = true;
    bool separates = true;  // d(x,y) = 0 => x = y
    std::string witness;    // first violated axiom instance, if any

    bool is_hemimetric() const { return zero_on_self && triangle; }
    bool is_pseudometric() const { return is_hemimetric() && symmetric; }
    bool is_quasimetric() const { return is_hemimetric() && separates; }
    bool is_metric() const { return is_pseudometric() && separates; }
    std::string classify() const;
};

DistanceClassification verify_hemimetric_axioms(
    const std::function<Score(const Election&, const Election&)>& d,
    const std::vector<Election>& space);

}  // namespace distrat
