#include "doctest.h"

#include <set>

#include "distrat/axioms.hpp"
#include "distrat/core.hpp"
#include "distrat/engine.hpp"
#include "distrat/oracles.hpp"

using namespace distrat;

namespace {

VotingSituation sit(const CandidateSet& c,
                    std::vector<std::pair<std::vector<Candidate>, long long>> e) {
    return make_situation(c, e);
}

DRRule rule_of(ConsensusSpec k, ElectionDistanceSpec d) {
    return DRRule{std::move(k), std::move(d), Strategy::Auto, SearchBounds{}, nullptr};
}

const CandidateSet C2 = range_candidates(2);
const CandidateSet C3 = range_candidates(3);

}  // namespace

TEST_CASE("dr_score closed-form examples") {
    auto e = canonical_election(sit(C3, {{{0, 1, 2}, 2}, {{1, 2, 0}, 1}}));
    auto wunam_h = rule_of(ConsensusSpec::wunam(),
                           ElectionDistanceSpec::votewise(RankingMetricSpec::discrete(), NormSpec::l1()));
    CHECK(dr_score(wunam_h, e, Ranking({0})) == Score(1));

    auto e2 = canonical_election(sit(C3, {{{0, 1, 2}, 2}, {{0, 2, 1}, 1}}));
    auto sunam_k = rule_of(ConsensusSpec::sunam(3),
                           ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::l1()));
    CHECK(dr_score(sunam_k, e2, Ranking({0, 1, 2})) == Score(1));
}

TEST_CASE("vmp minimizer examples") {
    Election e;
    e.candidates = C3;
    e.profile[1] = Ranking({1, 2, 0});  // bca
    auto mins = vmp_minimizer(ConsensusSpec::wunam(), RankingMetricSpec::kendall(), e, Ranking({0}));
    REQUIRE(mins.size() == 1);
    // nearest a-first ranking to bca: swap a to the top, cost = rank - 1 = 2
    CHECK(ranking_distance_exact(RankingMetricSpec::kendall(), e.profile[1], mins[0]) == Rat(2));
    CHECK(mins[0].at(0) == 0);

    auto mins2 = vmp_minimizer(ConsensusSpec::sunam(3), RankingMetricSpec::kendall(), e,
                               Ranking({1, 2, 0}));
    CHECK(mins2[0] == e.profile[1]);  // already in the cell, cost 0

    auto mins3 = vmp_minimizer(ConsensusSpec::wunam(), RankingMetricSpec::discrete(), e, Ranking({0}));
    CHECK(ranking_distance_exact(RankingMetricSpec::discrete(), e.profile[1], mins3[0]) == Rat(1));
}

TEST_CASE("dodgson scores: fishburn election") {
    Election f1 = fishburn_election(1);
    CHECK(dodgson_score(f1, fishburn_x()) == Score(7));
    for (Candidate a = 0; a < 7; ++a) CHECK(dodgson_score(f1, a) == Score(6));
}

TEST_CASE("dodgson score of the cyclic election") {
    auto cyc = sit(C3, {{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
    for (Candidate c : C3) CHECK(dodgson_score(cyc, c) == Score(1));
}

TEST_CASE("condorcet votewise DP agrees with brute force and the oracle, m<=3") {
    auto dk = ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::l1());
    auto dh = ElectionDistanceSpec::votewise(RankingMetricSpec::discrete(), NormSpec::l1());
    auto ds = ElectionDistanceSpec::votewise(RankingMetricSpec::spearman(), NormSpec::l1());
    for (int n = 1; n <= 4; ++n) {
        for (const auto& x : enumerate_situations(C3, n, n)) {
            Election e = canonical_election(x);
            auto od = oracles::dodgson_scores(e);
            for (Candidate c : C3) {
                Ranking r({c});
                for (const auto& d : {dk, dh, ds}) {
                    DRRule spec = rule_of(ConsensusSpec::condorcet(), d);
                    Score fast = dr_score(spec, e, r);
                    DRRule bspec = spec;
                    bspec.strategy = Strategy::BruteForce;
                    Score slow = dr_score(bspec, e, r);
                    CHECK(fast == slow);
                }
                // kendall-l1 distance to COND_c is the Dodgson score
                CHECK(dodgson_score(x, c) == Score(od[c]));
            }
        }
    }
}

TEST_CASE("condorcet votewise DP: l2 and linf variants agree with brute force") {
    auto dk2 = ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::lp(Rat(2)));
    auto dkinf = ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::linf());
    for (const auto& x : enumerate_situations(C3, 3, 3)) {
        Election e = canonical_election(x);
        for (Candidate c : C3) {
            Ranking r({c});
            for (const auto& d : {dk2, dkinf}) {
                DRRule spec = rule_of(ConsensusSpec::condorcet(), d);
                DRRule bspec = spec;
                bspec.strategy = Strategy::BruteForce;
                CHECK(dr_score(spec, e, r) == dr_score(bspec, e, r));
            }
        }
    }
}

TEST_CASE("young scores") {
    auto x = sit(C2, {{{0, 1}, 2}, {{1, 0}, 3}});
    CHECK(young_score(x, 0) == Score(2));
    CHECK(young_score(x, 1) == Score(0));
    auto single = sit(C2, {{{0, 1}, 1}});
    CHECK(young_score(single, 1).infinite);
    // witness realizes the score
    std::optional<Election> w;
    young_score(x, 0, &w);
    REQUIRE(w.has_value());
    CHECK(decide(ConsensusSpec::condorcet(), *w).member);
    CHECK(w->num_voters() == 3);
}

TEST_CASE("maximin insertion scores") {
    auto cyc = sit(C3, {{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
    for (Candidate c : C3) CHECK(maximin_score_via_insertion(cyc, c) == Score(2));
    auto tie = sit(C2, {{{0, 1}, 1}, {{1, 0}, 1}});
    CHECK(maximin_score_via_insertion(tie, 0) == Score(1));
    auto won = sit(C2, {{{0, 1}, 2}, {{1, 0}, 1}});
    CHECK(maximin_score_via_insertion(won, 0) == Score(0));
}

TEST_CASE("maximin insertion equals brute-force insertion search") {
    auto dins = ElectionDistanceSpec::insertion();
    for (const auto& x : enumerate_situations(C3, 1, 3)) {
        Election e = canonical_election(x);
        for (Candidate c : C3) {
            DRRule spec = rule_of(ConsensusSpec::condorcet(), dins);
            DRRule bspec = spec;
            bspec.strategy = Strategy::BruteForce;
            CHECK(dr_score(spec, e, Ranking({c})) == dr_score(bspec, e, Ranking({c})));
        }
    }
}

TEST_CASE("tournament cell scores: reduced examples") {
    auto cyc = sit(C3, {{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
    SearchBounds b;
    // a fails to beat exactly one rival outright: one sign flip, l1 cost 4
    CHECK(tournament_cell_score(cyc, ConsensusSpec::condorcet(), Ranking({0}), true, b) == Score(4));
    auto won = sit(C3, {{{0, 1, 2}, 2}, {{1, 2, 0}, 1}});
    CHECK(tournament_cell_score(won, ConsensusSpec::condorcet(), Ranking({0}), true, b) == Score(0));
}

TEST_CASE("tournament cell scores agree with brute force (m=3, n<=2)") {
    SearchBounds b;
    for (int n = 1; n <= 2; ++n) {
        for (const auto& x : enumerate_situations(C3, n, n)) {
            Election e = canonical_election(x);
            for (bool reduced : {false, true}) {
                auto dist = reduced ? ElectionDistanceSpec::reduced_tournament()
                                    : ElectionDistanceSpec::tournament();
                // COND cells
                for (Candidate c : C3) {
                    DRRule spec = rule_of(ConsensusSpec::condorcet(), dist);
                    DRRule bspec = spec;
                    bspec.strategy = Strategy::BruteForce;
                    CHECK(dr_score(spec, e, Ranking({c})) == dr_score(bspec, e, Ranking({c})));
                }
                // SUNAM and COND^m cells
                for (const Ranking& r : all_rankings(C3)) {
                    for (auto k : {ConsensusSpec::sunam(3), ConsensusSpec::condorcet_restricted(3)}) {
                        DRRule spec = rule_of(k, dist);
                        DRRule bspec = spec;
                        bspec.strategy = Strategy::BruteForce;
                        CHECK(dr_score(spec, e, r) == dr_score(bspec, e, r));
                    }
                }
                // WUNAM cells
                for (Candidate c : C3) {
                    DRRule spec = rule_of(ConsensusSpec::wunam(), dist);
                    DRRule bspec = spec;
                    bspec.strategy = Strategy::BruteForce;
                    CHECK(dr_score(spec, e, Ranking({c})) == dr_score(bspec, e, Ranking({c})));
                }
            }
        }
    }
}

TEST_CASE("deletion cells agree with brute force") {
    auto dd = ElectionDistanceSpec::deletion();
    for (const auto& x : enumerate_situations(C3, 1, 3)) {
        Election e = canonical_election(x);
        for (Candidate c : C3) {
            DRRule spec = rule_of(ConsensusSpec::condorcet(), dd);
            DRRule bspec = spec;
            bspec.strategy = Strategy::BruteForce;
            CHECK(dr_score(spec, e, Ranking({c})) == dr_score(bspec, e, Ranking({c})));
        }
        for (const Ranking& r : all_rankings(C3)) {
            DRRule spec = rule_of(ConsensusSpec::sunam(3), dd);
            DRRule bspec = spec;
            bspec.strategy = Strategy::BruteForce;
            CHECK(dr_score(spec, e, r) == dr_score(bspec, e, r));
        }
    }
}

TEST_CASE("winners examples") {
    auto e = canonical_election(sit(C3, {{{0, 1, 2}, 2}, {{1, 2, 0}, 1}}));
    auto borda = rule_of(ConsensusSpec::wunam(),
                         ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::l1()));
    CHECK(dr_winners(borda, e) == std::vector<Ranking>{Ranking({0}), Ranking({1})});

    auto plu = rule_of(ConsensusSpec::wunam(),
                       ElectionDistanceSpec::votewise(RankingMetricSpec::discrete(), NormSpec::l1()));
    CHECK(dr_winners(plu, e) == std::vector<Ranking>{Ranking({0})});

    auto modal = rule_of(ConsensusSpec::sunam(3),
                         ElectionDistanceSpec::votewise(RankingMetricSpec::discrete(), NormSpec::l1()));
    CHECK(dr_winners(modal, e) == std::vector<Ranking>{Ranking({0, 1, 2})});

    // ranked output with a tie in the two lowest scores
    auto ranked = ranked_output(borda, e, 2);
    CHECK(ranked == std::vector<Ranking>{Ranking({0, 1}), Ranking({1, 0})});
}

TEST_CASE("winner sets are invariant under positive distance scaling") {
    auto base = ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::l1());
    for (const auto& x : enumerate_situations(C3, 1, 3)) {
        Election e = canonical_election(x);
        auto w1 = dr_winners(rule_of(ConsensusSpec::wunam(), base), e);
        auto w2 = dr_winners(rule_of(ConsensusSpec::wunam(), base.scaled(Rat(2))), e);
        auto w3 = dr_winners(rule_of(ConsensusSpec::wunam(), base.scaled(Rat(1, 2))), e);
        CHECK(w1 == w2);
        CHECK(w1 == w3);
    }
}

TEST_CASE("witnesses lie in the cell and realize the score") {
    std::vector<DRRule> specs = {
        rule_of(ConsensusSpec::wunam(),
                ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::l1())),
        rule_of(ConsensusSpec::condorcet(),
                ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::l1())),
        rule_of(ConsensusSpec::condorcet(), ElectionDistanceSpec::deletion()),
        rule_of(ConsensusSpec::condorcet(), ElectionDistanceSpec::insertion()),
        rule_of(ConsensusSpec::condorcet(), ElectionDistanceSpec::tournament()),
        rule_of(ConsensusSpec::sunam(3), ElectionDistanceSpec::reduced_tournament()),
    };
    for (const auto& x : enumerate_situations(C3, 2, 3)) {
        Election e = canonical_election(x);
        for (const auto& spec : specs) {
            ScoreTable t = dr_score_table(spec, e);
            for (const auto& entry : t.entries) {
                if (!entry.score.is_finite() || !entry.witness) continue;
                auto d = decide(spec.consensus, *entry.witness);
                CHECK(d.member);
                CHECK(*d.choice == entry.outcome);
                CHECK(spec.distance.evaluate(e, *entry.witness) == entry.score);
            }
        }
    }
}

TEST_CASE("insertion into unanimity cells is trivial") {
    auto dins = ElectionDistanceSpec::insertion();
    auto e = canonical_election(sit(C3, {{{0, 1, 2}, 1}, {{1, 0, 2}, 1}}));
    auto spec = rule_of(ConsensusSpec::sunam(3), dins);
    CHECK_THROWS_AS(dr_winners(spec, e), TrivialityError);
    auto spec2 = rule_of(ConsensusSpec::wunam(), dins);
    CHECK_THROWS_AS(dr_winners(spec2, e), TrivialityError);
    // but a member election scores zero at its own choice
    auto member = canonical_election(sit(C3, {{{0, 1, 2}, 2}}));
    CHECK(dr_score(spec, member, Ranking({0, 1, 2})) == Score(0));
}

TEST_CASE("normalized sunam scores are constant across voter cloning") {
    for (auto p : {NormSpec::l1(), NormSpec::lp(Rat(2)), NormSpec::linf()}) {
        auto d = ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), p, true);
        auto x = sit(C3, {{{0, 1, 2}, 2}, {{1, 2, 0}, 1}});
        for (const Ranking& r : all_rankings(C3)) {
            auto spec = rule_of(ConsensusSpec::sunam(3), d);
            Score base = dr_score(spec, canonical_election(x), r);
            for (int k = 2; k <= 4; ++k)
                CHECK(dr_score(spec, canonical_election(scale(x, k)), r) == base);
        }
    }
}

TEST_CASE("spearman condorcet scores double the kendall scores") {
    for (const auto& x : enumerate_situations(C3, 1, 4)) {
        for (Candidate c : C3) {
            Score k = condorcet_votewise_score(x, c, RankingMetricSpec::kendall(), NormSpec::l1(),
                                               false, SearchBounds{});
            Score s = condorcet_votewise_score(x, c, RankingMetricSpec::spearman(), NormSpec::l1(),
                                               false, SearchBounds{});
            REQUIRE(k.is_finite());
            CHECK(s.value == k.value * Rat(2));
        }
    }
}
