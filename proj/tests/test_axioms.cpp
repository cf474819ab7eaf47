#include "doctest.h"

#include <array>
#include <map>
#include <set>

#include "distrat/axioms.hpp"
#include "distrat/core.hpp"
#include "distrat/engine.hpp"
#include "distrat/metrics.hpp"
#include "distrat/oracles.hpp"

using namespace distrat;

namespace {

DRRule rule_of(ConsensusSpec k, ElectionDistanceSpec d) {
    return DRRule{std::move(k), std::move(d), Strategy::Auto, SearchBounds{}, nullptr};
}

Rule borda_dr() {
    return dr_rule("borda-dr",
                   rule_of(ConsensusSpec::wunam(), ElectionDistanceSpec::votewise(
                                                       RankingMetricSpec::kendall(), NormSpec::l1())));
}

const CandidateSet C3 = range_candidates(3);

}  // namespace

TEST_CASE("anonymity: DR rules hold, a planted dictatorship fails") {
    auto space = enumerate_situations(C3, 1, 3);
    CHECK(check_anonymity(borda_dr(), space).verdict == Verdict::Holds);

    Rule dictator{"dictator", 1, [](const Election& e) {
                      return std::vector<Ranking>{Ranking({e.profile.begin()->second.at(0)})};
                  }};
    auto rep = check_anonymity(dictator, space);
    CHECK(rep.verdict == Verdict::Violated);
    CHECK(!rep.witness.empty());
}

TEST_CASE("neutrality: DR rules hold, constant and pinned-cell rules fail") {
    auto space = enumerate_situations(C3, 1, 3);
    CHECK(check_neutrality(borda_dr(), space).verdict == Verdict::Holds);

    Rule constant{"always-a", 1,
                  [](const Election&) { return std::vector<Ranking>{Ranking({0})}; }};
    CHECK(check_neutrality(constant, space).verdict == Verdict::Violated);

    // complement-set consensus: cells pin one completion per outcome, which
    // breaks candidate symmetry
    Rule pinned = dr_rule("pinned", rule_of(ConsensusSpec::pinned_unanimity(1),
                                            ElectionDistanceSpec::votewise(
                                                RankingMetricSpec::kendall(), NormSpec::l1())));
    CHECK(check_neutrality(pinned, space).verdict == Verdict::Violated);
}

TEST_CASE("reversal symmetry: kemeny and modal hold, lexicographic tiebreak fails") {
    auto space = enumerate_situations(C3, 1, 3);
    CHECK(check_reversal_symmetry(oracles::kemeny_rule(), space).verdict == Verdict::Holds);
    CHECK(check_reversal_symmetry(oracles::modal_rule(), space).verdict == Verdict::Holds);

    Rule lexi{"kemeny-lexi", 0, [](const Election& e) {
                  auto w = oracles::kemeny(e);
                  return std::vector<Ranking>{w.front()};  // planted asymmetric tiebreak
              }};
    CHECK(check_reversal_symmetry(lexi, space).verdict == Verdict::Violated);
}

TEST_CASE("homogeneity: sunam-family DR rules hold; dodgson fails on fishburn") {
    auto space = enumerate_situations(C3, 1, 3);
    for (auto p : {NormSpec::l1(), NormSpec::lp(Rat(2)), NormSpec::linf()}) {
        for (int s : {1, 3}) {
            Rule r = dr_rule("sunam-dr", rule_of(ConsensusSpec::sunam_s(s),
                                                 ElectionDistanceSpec::votewise(
                                                     RankingMetricSpec::kendall(), p)));
            CHECK(check_homogeneity(r, space, 4).verdict == Verdict::Holds);
        }
    }

    Rule dodgson = dr_rule("dodgson-dr", rule_of(ConsensusSpec::condorcet(),
                                                 ElectionDistanceSpec::votewise(
                                                     RankingMetricSpec::kendall(), NormSpec::l1())));
    std::vector<VotingSituation> fish = {anonymize(fishburn_election(1))};
    auto rep = check_homogeneity(dodgson, fish, 5);
    CHECK(rep.verdict == Verdict::Violated);
    CHECK(!rep.witness.empty());
}

TEST_CASE("fishburn election shape and dodgson winner flip") {
    Election f = fishburn_election(2);
    CHECK(f.num_voters() == 14);
    CHECK(f.num_candidates() == 8);
    for (auto& [v, r] : f.profile) CHECK(r.rank_of(fishburn_x()) == 5);

    // k = 1: all a_i beat x (6 < 7); large k: x wins
    Election f1 = fishburn_election(1);
    Rule dodgson = dr_rule("dodgson-dr", rule_of(ConsensusSpec::condorcet(),
                                                 ElectionDistanceSpec::votewise(
                                                     RankingMetricSpec::kendall(), NormSpec::l1())));
    auto w1 = dodgson(f1);
    CHECK(w1.size() == 7);
    CHECK(std::find(w1.begin(), w1.end(), Ranking({fishburn_x()})) == w1.end());
}

TEST_CASE("consistency: sunam rules and borda hold, dodgson fails somewhere") {
    auto small = enumerate_situations(C3, 1, 3);
    std::vector<std::pair<VotingSituation, VotingSituation>> pairs;
    for (const auto& x : small)
        for (const auto& y : small)
            if (x.total() + y.total() <= 5) pairs.emplace_back(x, y);

    for (int s : {1, 3}) {
        Rule r = dr_rule("sunam-dr", rule_of(ConsensusSpec::sunam_s(s),
                                             ElectionDistanceSpec::votewise(
                                                 RankingMetricSpec::kendall(), NormSpec::l1())));
        CHECK(check_consistency(r, pairs).verdict == Verdict::Holds);
    }
    CHECK(check_consistency(oracles::borda_rule(), pairs).verdict == Verdict::Holds);

    // Dodgson: fuzz wider until a violation appears
    std::vector<std::pair<VotingSituation, VotingSituation>> dpairs;
    auto sp4 = enumerate_situations(C3, 1, 4);
    for (const auto& x : sp4)
        for (const auto& y : sp4)
            if (x.total() + y.total() <= 8) dpairs.emplace_back(x, y);
    auto rep = check_consistency(oracles::dodgson_rule(), dpairs);
    CHECK(rep.verdict == Verdict::Violated);
}

TEST_CASE("continuity") {
    // plurality: E = {ab:2}, E' = {ba:1} stabilizes immediately
    CandidateSet c2 = range_candidates(2);
    auto e = make_situation(c2, {{{0, 1}, 2}});
    auto ep = make_situation(c2, {{{1, 0}, 1}});
    Rule plu = oracles::plurality_rule();
    auto rep = check_continuity(plu, e, ep, 20);
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(rep.witness == "stabilizes at k=1");

    // planted threshold jump: winner flips forever at even k
    Rule planted{"planted", 1, [](const Election& el) {
                     long long n = el.num_voters();
                     return std::vector<Ranking>{Ranking({n % 2 == 0 ? 0 : 1})};
                 }};
    auto e1 = make_situation(c2, {{{0, 1}, 1}});
    auto rep2 = check_continuity(planted, e1, e1, 20);
    CHECK(rep2.verdict == Verdict::Inconclusive);
}

TEST_CASE("cmp failure example values") {
    auto rep = cmp_failure_example();
    CHECK(rep.ok);
    CHECK(rep.d_h_E == Score(1));
    CHECK(rep.d_k_E == Score(1));
    CHECK(rep.d_h_3E == Score(2));
    CHECK(rep.d_k_3E == Score(2));
    CHECK(rep.d_E_b == Score(0));
}

TEST_CASE("uniqueness counterexample: R differs from its max-consensus rerationalization") {
    for (int n : {4, 6, 8}) {
        auto rep = uniqueness_counterexample(n);
        CHECK(rep.r_ne_rprime);
        CHECK(!rep.witness.empty());
    }
}

TEST_CASE("uniqueness projection agrees with a situation-level BFS at n = 4") {
    //直接 situation-level reconstruction of the Example-3.7 graph at n = 4
    const int n = 4;
    CandidateSet c4 = range_candidates(4);  // a=0 b=1 c=2 c'=3
    auto space = enumerate_situations(c4, n, n, true);
    auto tops = [&](const VotingSituation& x) {
        std::array<int, 4> t{0, 0, 0, 0};
        for (auto& [r, cnt] : x.counts) t[size_t(r.at(0))] += int(cnt);
        return t;
    };
    auto comp1 = [&](const VotingSituation& x) {
        auto t = tops(x);
        return (t[2] == 0 && t[3] == 0) || std::abs(t[0] - t[1]) <= 1;
    };
    std::map<VotingSituation, int> idx;
    for (auto& x : space) idx[x] = int(idx.size());
    int S = int(space.size());
    auto rankings = all_rankings(c4);
    auto neighbors = [&](int i) {
        std::vector<int> out;
        for (auto& [r, cnt] : space[size_t(i)].counts) {
            (void)cnt;
            for (const auto& r2 : rankings) {
                if (r2 == r) continue;
                VotingSituation y = space[size_t(i)];
                if (--y.counts[r] == 0) y.counts.erase(r);
                y.counts[r2] += 1;
                out.push_back(idx.at(y));
            }
        }
        return out;
    };
    const int INF = 1 << 29;
    auto bfs = [&](const std::vector<int>& src) {
        std::vector<int> dist(size_t(S), INF);
        std::vector<int> q;
        for (int s : src) {
            dist[size_t(s)] = 0;
            q.push_back(s);
        }
        for (size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (int v : neighbors(u)) {
                if (!comp1(space[size_t(v)])) continue;
                if (dist[size_t(v)] > dist[size_t(u)] + 1) {
                    dist[size_t(v)] = dist[size_t(u)] + 1;
                    q.push_back(v);
                }
            }
        }
        return dist;
    };
    std::vector<int> ka, kb, kc;
    for (int i = 0; i < S; ++i) {
        if (!comp1(space[size_t(i)])) continue;
        auto t = tops(space[size_t(i)]);
        bool all_ab = t[2] == 0 && t[3] == 0;
        if (all_ab && t[0] > t[1]) ka.push_back(i);
        if (all_ab && t[1] > t[0]) kb.push_back(i);
        if (t[0] == 0 && t[1] == 0) kc.push_back(i);
    }
    auto da = bfs(ka), db = bfs(kb), dc = bfs(kc);
    // R is constant on projection classes and matches the projected run
    std::map<std::array<int, 4>, std::set<int>> seen;
    for (int i = 0; i < S; ++i) {
        std::set<int> w;
        if (!comp1(space[size_t(i)])) {
            w = {3};
        } else {
            int best = std::min({da[size_t(i)], db[size_t(i)], dc[size_t(i)]});
            if (best >= INF)
                w = {0, 1, 2, 3};
            else {
                if (da[size_t(i)] == best) w.insert(0);
                if (db[size_t(i)] == best) w.insert(1);
                if (dc[size_t(i)] == best) w.insert(2);
            }
        }
        auto key = tops(space[size_t(i)]);
        auto it = seen.find(key);
        if (it == seen.end())
            seen[key] = w;
        else
            CHECK(it->second == w);
    }
    // the projected witness class from the axioms module behaves identically
    auto rep = uniqueness_counterexample(4);
    CHECK(rep.r_ne_rprime);
}

TEST_CASE("verify_rationalization replays the existence construction (small)") {
    std::vector<Election> space;
    for (const auto& x : enumerate_situations(C3, 1, 2)) space.push_back(canonical_election(x));
    for (const char* name : {"plurality", "borda"}) {
        Rule r = oracles::rule_by_name(name);
        auto kmax = ConsensusSpec::max_consensus(&r);
        for (int variant : {1, 2}) {
            auto d = ElectionDistanceSpec::campbell_nitzan(variant, &r);
            auto rep = verify_rationalization(r, kmax, d, space);
            CHECK(rep.ok);
        }
    }
    // a mismatched pair diverges
    Rule plu = oracles::rule_by_name("plurality");
    Rule bor = oracles::rule_by_name("borda");
    auto kmax_b = ConsensusSpec::max_consensus(&bor);
    auto d1 = ElectionDistanceSpec::campbell_nitzan(1, &bor);
    auto rep = verify_rationalization(plu, kmax_b, d1, space);
    CHECK(!rep.ok);
}

TEST_CASE("borda triple agreement") {
    Rule via_k = dr_rule("k", rule_of(ConsensusSpec::wunam(),
                                      ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(),
                                                                     NormSpec::l1())));
    Rule via_s = dr_rule("s", rule_of(ConsensusSpec::wunam(),
                                      ElectionDistanceSpec::votewise(RankingMetricSpec::spearman(),
                                                                     NormSpec::l1())));
    Rule via_t = dr_rule("t", rule_of(ConsensusSpec::wunam(), ElectionDistanceSpec::tournament()));
    for (const auto& x : enumerate_situations(C3, 1, 3)) {
        Election e = canonical_election(x);
        auto want = oracles::borda(e);
        CHECK(via_k(e) == want);
        CHECK(via_s(e) == want);
        CHECK(via_t(e) == want);
    }
}

TEST_CASE("scoring-rule representation via weighted votewise distances") {
    std::vector<std::vector<Rat>> weights = {{Rat(2), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}};
    for (const auto& w : weights) {
        auto dw = ElectionDistanceSpec::votewise(RankingMetricSpec::weighted(w), NormSpec::l1());
        auto spec = rule_of(ConsensusSpec::wunam(), dw);
        for (const auto& x : enumerate_situations(C3, 1, 3)) {
            Election e = canonical_election(x);
            CHECK(dr_winners(spec, e) == oracles::scoring_rule(w, e));
            // exact score relation: |c| = 2 (n w1 - score_w(c))
            long long n = x.total();
            for (Candidate c : C3) {
                Rat sc(0);
                for (auto& [r, cnt] : x.counts) sc += w[size_t(r.rank_of(c)) - 1] * Rat(cnt);
                Score dr = dr_score(spec, e, Ranking({c}));
                CHECK(dr.value == (Rat(n) * w[0] - sc) * Rat(2));
            }
        }
    }
}

TEST_CASE("table-1 harness smoke run (tiny bounds)") {
    TableCheckOptions opts;
    opts.exhaustive_m = 3;
    opts.exhaustive_n_max = 2;
    opts.random_count = 3;
    opts.random_m = 3;
    opts.random_n = 3;
    opts.seed = 5;
    auto results = verify_table1(opts);
    for (const auto& cell : results) {
        INFO(cell.cell, " ", cell.first_mismatch);
        if (cell.trivial_expected)
            CHECK(cell.trivial_found);
        else
            CHECK(cell.match);
    }
}
