#include "doctest.h"

#include <algorithm>
#include <random>

#include "distrat/core.hpp"
#include "distrat/metrics.hpp"
#include "distrat/transport.hpp"

using namespace distrat;

namespace {

// factorial oracle: try every row->column permutation
Rat factorial_min_sum(const std::vector<std::vector<Rat>>& cost) {
    int n = int(cost.size());
    std::vector<int> perm(size_t(n));
    for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
    Rat best(-1);
    do {
        Rat tot(0);
        for (int i = 0; i < n; ++i) tot += cost[size_t(i)][size_t(perm[size_t(i)])];
        if (best < Rat(0) || tot < best) best = tot;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Rat factorial_min_max(const std::vector<std::vector<Rat>>& cost) {
    int n = int(cost.size());
    std::vector<int> perm(size_t(n));
    for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
    Rat best(-1);
    do {
        Rat mx(0);
        for (int i = 0; i < n; ++i) {
            const Rat& v = cost[size_t(i)][size_t(perm[size_t(i)])];
            if (v > mx) mx = v;
        }
        if (best < Rat(0) || mx < best) best = mx;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

VotingSituation rand_sit(const CandidateSet& c, int n, std::mt19937_64& rng) {
    VotingSituation x;
    x.candidates = c;
    auto rs = all_rankings(c);
    for (int i = 0; i < n; ++i) x.counts[rs[rng() % rs.size()]] += 1;
    return x;
}

}  // namespace

TEST_CASE("paper example: quotient hamming and kendall distances") {
    CandidateSet c3 = range_candidates(3);
    auto x = make_situation(c3, {{{0, 1, 2}, 2}, {{1, 0, 2}, 3}});  // 2 abc, 3 bac
    auto y = make_situation(c3, {{{1, 0, 2}, 2}, {{2, 1, 0}, 3}});  // 2 bac, 3 cba
    CHECK(quotient_votewise_distance(RankingMetricSpec::discrete(), NormSpec::l1(), x, y) ==
          Score(3));
    CHECK(quotient_votewise_distance(RankingMetricSpec::kendall(), NormSpec::l1(), x, y) ==
          Score(8));
    CHECK(quotient_votewise_distance(RankingMetricSpec::kendall(), NormSpec::l1(), x, x) ==
          Score(0));
    // different totals are infinitely far (standard distance)
    auto z = make_situation(c3, {{{0, 1, 2}, 1}});
    CHECK(quotient_votewise_distance(RankingMetricSpec::kendall(), NormSpec::l1(), x, z).infinite);
}

TEST_CASE("hungarian equals the factorial oracle on random pairs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        int m = 2 + int(rng() % 3);  // 2..4
        int n = 2 + int(rng() % 5);  // 2..6
        CandidateSet c = range_candidates(m);
        auto x = rand_sit(c, n, rng);
        auto y = rand_sit(c, n, rng);
        std::vector<Ranking> rows, cols;
        for (auto& [r, cnt] : x.counts)
            for (long long i = 0; i < cnt; ++i) rows.push_back(r);
        for (auto& [r, cnt] : y.counts)
            for (long long i = 0; i < cnt; ++i) cols.push_back(r);
        std::vector<std::vector<Rat>> cost(size_t(n), std::vector<Rat>(size_t(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cost[size_t(i)][size_t(j)] = ranking_distance_exact(RankingMetricSpec::kendall(),
                                                                    rows[size_t(i)], cols[size_t(j)]);
        CHECK(hungarian_min_cost(cost).total == factorial_min_sum(cost));
        CHECK(bottleneck_assignment(cost) == factorial_min_max(cost));
    }
}

TEST_CASE("quotient distance validity: matching witness and identity bound") {
    CandidateSet c3 = range_candidates(3);
    auto x = make_situation(c3, {{{0, 1, 2}, 2}, {{1, 0, 2}, 1}});
    auto y = make_situation(c3, {{{2, 1, 0}, 1}, {{1, 0, 2}, 2}});
    std::vector<std::pair<Ranking, Ranking>> match;
    Score s = quotient_votewise_distance(RankingMetricSpec::kendall(), NormSpec::l1(), x, y, false,
                                         &match);
    REQUIRE(s.is_finite());
    Rat total(0);
    for (auto& [a, b] : match) total += ranking_distance_exact(RankingMetricSpec::kendall(), a, b);
    CHECK(total == s.value);
    // the optimum never exceeds the identity labeling of any common order
    Rat identity(0);
    {
        std::vector<Ranking> rows, cols;
        for (auto& [r, cnt] : x.counts)
            for (long long i = 0; i < cnt; ++i) rows.push_back(r);
        for (auto& [r, cnt] : y.counts)
            for (long long i = 0; i < cnt; ++i) cols.push_back(r);
        for (size_t i = 0; i < rows.size(); ++i)
            identity += ranking_distance_exact(RankingMetricSpec::kendall(), rows[i], cols[i]);
    }
    CHECK(s.value <= identity);
}

TEST_CASE("quotient votewise distance is a pseudometric on fixed (C, n)") {
    auto space = enumerate_situations(range_candidates(2), 3, 3);
    auto d = [](const VotingSituation& a, const VotingSituation& b) {
        return quotient_votewise_distance(RankingMetricSpec::kendall(), NormSpec::l1(), a, b);
    };
    for (const auto& a : space) {
        CHECK(d(a, a) == Score(0));
        for (const auto& b : space) {
            CHECK(d(a, b) == d(b, a));
            for (const auto& c : space) CHECK(!(d(a, c) > d(a, b) + d(b, c)));
        }
    }
}

TEST_CASE("equivariance collapse: quotient distance = min over voter permutations") {
    CandidateSet c3 = range_candidates(3);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + int(rng() % 3);
        auto x = rand_sit(c3, n, rng);
        auto y = rand_sit(c3, n, rng);
        Score q = quotient_votewise_distance(RankingMetricSpec::kendall(), NormSpec::l1(), x, y);
        // direct enumeration of d(E, gE')
        std::vector<Ranking> rows, cols;
        for (auto& [r, cnt] : x.counts)
            for (long long i = 0; i < cnt; ++i) rows.push_back(r);
        for (auto& [r, cnt] : y.counts)
            for (long long i = 0; i < cnt; ++i) cols.push_back(r);
        std::vector<int> perm(size_t(n));
        for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
        Rat best(-1);
        do {
            Rat tot(0);
            for (int i = 0; i < n; ++i)
                tot += ranking_distance_exact(RankingMetricSpec::kendall(), rows[size_t(i)],
                                              cols[size_t(perm[size_t(i)])]);
            if (best < Rat(0) || tot < best) best = tot;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(q == Score(best));
    }
}

TEST_CASE("anonymous votewise distances are simple for the anonymity relation") {
    // quotient-path over anonymity classes equals the one-step tilde distance
    CandidateSet c2 = range_candidates(2);
    std::vector<Election> elements;
    for (const auto& x : enumerate_situations(c2, 2, 2)) {
        // two distinct labelings per situation
        Election e = canonical_election(x);
        elements.push_back(e);
        std::map<Voter, Voter> g;
        Voter off = 7;
        for (auto& [v, r] : e.profile) g[v] = off++;
        elements.push_back(permute_voters(e, g));
    }
    auto equiv = [](const Election& a, const Election& b) { return anonymize(a) == anonymize(b); };
    QuotientSpace q = build_quotient(elements, equiv);
    auto dh = ElectionDistanceSpec::votewise(RankingMetricSpec::discrete(), NormSpec::l1());
    auto dfn = [&](const Election& a, const Election& b) { return dh.evaluate(a, b); };
    auto rep = is_simple(q, dfn);
    CHECK(rep.simple);
    // and the tilde distance agrees with the assignment formulation
    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = 0; j < elements.size(); ++j) {
            Score t = tilde_distance(q, dfn, q.class_of[i], q.class_of[j]);
            Score h = quotient_votewise_distance(RankingMetricSpec::discrete(), NormSpec::l1(),
                                                 anonymize(elements[i]), anonymize(elements[j]));
            CHECK(t == h);
        }
}

TEST_CASE("a contrived distance with a large in-class gap is not simple") {
    // three classes A = {A1}, B = {B1, B2}, C = {C1}; B is internally wide,
    // so a two-leg path through B beats the direct tilde distance
    CandidateSet c2 = range_candidates(2);
    std::vector<Election> elems;
    for (int i = 0; i < 4; ++i) {
        Election e;
        e.candidates = c2;
        e.profile[i + 1] = Ranking({0, 1});
        elems.push_back(e);  // identities distinguish the four points
    }
    auto cls = [](const Election& e) {
        Voter v = e.profile.begin()->first;
        if (v == 1) return 0;           // A1
        if (v == 2 || v == 3) return 1; // B1, B2
        return 2;                       // C1
    };
    QuotientSpace q = build_quotient(elems, [&](const Election& a, const Election& b) {
        return cls(a) == cls(b);
    });
    auto idx = [&](const Election& e) { return e.profile.begin()->first; };
    auto d = [&](const Election& a, const Election& b) -> Score {
        static const long long M[5][5] = {
            // 1    2    3    4
            {0, 0, 0, 0, 0},
            {0, 0, 1, 101, 102},   // A1->B1 = 1
            {0, 1, 0, 100, 101},
            {0, 101, 100, 0, 1},   // B2->C1 = 1
            {0, 102, 101, 1, 0},
        };
        return Score(Rat(M[idx(a)][idx(b)]));
    };
    auto rep = is_simple(q, d);
    CHECK(!rep.simple);
    Score t = tilde_distance(q, d, 0, 2);
    Score p = quotient_path_distance(q, d, 0, 2);
    CHECK(t == Score(102));
    CHECK(p == Score(2));
}
