#include "doctest.h"

#include <set>

#include "distrat/core.hpp"
#include "distrat/oracles.hpp"

using namespace distrat;
using namespace distrat::oracles;

namespace {
Election el3(std::vector<std::pair<std::vector<Candidate>, long long>> e) {
    return canonical_election(make_situation(range_candidates(3), e));
}
Election el2(std::vector<std::pair<std::vector<Candidate>, long long>> e) {
    return canonical_election(make_situation(range_candidates(2), e));
}
std::vector<Ranking> singles(std::vector<Candidate> cs) {
    std::vector<Ranking> out;
    for (Candidate c : cs) out.push_back(Ranking({c}));
    return out;
}
}  // namespace

TEST_CASE("scoring rules") {
    Election e = el3({{{0, 1, 2}, 2}, {{1, 2, 0}, 1}});
    CHECK(scoring_rule({Rat(2), Rat(1), Rat(0)}, e) == singles({0, 1}));  // borda 4, 4, 1
    CHECK(scoring_rule({Rat(1), Rat(0), Rat(0)}, e) == singles({0}));
    Election cyc = el3({{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
    CHECK(k_approval(2, cyc) == singles({0, 1, 2}));
    CHECK(borda(e) == singles({0, 1}));
    CHECK(plurality(e) == singles({0}));
    CHECK_THROWS(scoring_rule({Rat(0), Rat(1), Rat(2)}, e));
}

TEST_CASE("kemeny and litvak") {
    Election e = el3({{{0, 1, 2}, 1}, {{0, 2, 1}, 1}, {{1, 0, 2}, 1}});
    CHECK(kemeny(e) == std::vector<Ranking>{Ranking({0, 1, 2})});
    Election mod = el3({{{0, 1, 2}, 2}, {{1, 2, 0}, 1}});
    CHECK(modal_ranking(mod) == std::vector<Ranking>{Ranking({0, 1, 2})});
    // litvak on a unanimous election returns the common order
    Election un = el3({{{2, 1, 0}, 3}});
    CHECK(litvak(un) == std::vector<Ranking>{Ranking({2, 1, 0})});
}

TEST_CASE("copeland and maximin on the cyclic election") {
    Election cyc = el3({{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
    CHECK(copeland(cyc, Rat(0)) == singles({0, 1, 2}));
    CHECK(copeland(cyc, Rat(1, 2)) == singles({0, 1, 2}));
    CHECK(maximin(cyc) == singles({0, 1, 2}));
}

TEST_CASE("young") {
    Election e = el2({{{0, 1}, 2}, {{1, 0}, 3}});
    auto ys = young_scores(e);
    CHECK(ys[0] == 2);
    CHECK(ys[1] == 0);
    CHECK(young(e) == singles({1}));
    Election lone = el2({{{0, 1}, 1}});
    CHECK(young_scores(lone)[1] == -1);
}

TEST_CASE("dodgson oracle on small elections") {
    Election cyc = el3({{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
    auto ds = dodgson_scores(cyc);
    for (Candidate c : range_candidates(3)) CHECK(ds[c] == 1);
    CHECK(dodgson(cyc) == singles({0, 1, 2}));
}

TEST_CASE("vrr oracle") {
    // replacing one ba vote with an a-first vote makes a the Condorcet winner
    Election e = el2({{{0, 1}, 2}, {{1, 0}, 3}});
    auto vs = vrr_scores(e);
    CHECK(vs[0] == 1);
    CHECK(vs[1] == 0);
}

TEST_CASE("slater matches sign-disagreement minimization") {
    Election e = el3({{{0, 1, 2}, 2}, {{1, 2, 0}, 1}});  // transitive majority a>b>c
    CHECK(slater(e) == std::vector<Ranking>{Ranking({0, 1, 2})});
    Election cyc = el3({{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
    auto s = slater(cyc);
    CHECK(s == std::vector<Ranking>{Ranking({0, 1, 2}), Ranking({1, 2, 0}), Ranking({2, 0, 1})});
}

TEST_CASE("oracles are anonymous, neutral and (mostly) homogeneous on m=3, n<=4") {
    std::vector<Rule> rules = {plurality_rule(), borda_rule(),   kemeny_rule(),
                               litvak_rule(),    modal_rule(),   slater_rule(),
                               copeland_rule(Rat(1, 2)),         maximin_rule(),
                               young_rule()};
    std::vector<Rule> nonhomog = {dodgson_rule(), vrr_rule()};
    auto space = enumerate_situations(range_candidates(3), 1, 4);
    for (const auto& x : space) {
        Election e = canonical_election(x);
        for (const auto& R : rules) {
            auto base = R(e);
            // anonymity: shift voter ids
            std::map<Voter, Voter> g;
            Voter off = 50;
            for (auto& [v, r] : e.profile) g[v] = off++;
            CHECK(R(permute_voters(e, g)) == base);
            // homogeneity k <= 3
            for (int k = 2; k <= 3; ++k)
                CHECK(R(canonical_election(scale(x, k))) == base);
        }
        // neutrality for a sample permutation
        std::map<Candidate, Candidate> sigma{{0, 1}, {1, 2}, {2, 0}};
        for (const auto& R : rules) {
            auto lhs = R(permute_candidates(e, sigma));
            std::vector<Ranking> rhs;
            for (const auto& r : R(e)) rhs.push_back(r.permuted(sigma));
            std::sort(rhs.begin(), rhs.end());
            CHECK(lhs == rhs);
        }
        for (const auto& R : nonhomog) {
            auto lhs = R(permute_candidates(e, sigma));
            std::vector<Ranking> rhs;
            for (const auto& r : R(e)) rhs.push_back(r.permuted(sigma));
            std::sort(rhs.begin(), rhs.end());
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("rule_by_name round trips") {
    CHECK(rule_by_name("plurality").name == "plurality");
    CHECK(rule_by_name("copeland:half").name == "copeland:half");
    CHECK(rule_by_name("scoring:2,1,0").name == "scoring:2,1,0");
    Election e = el3({{{0, 1, 2}, 2}, {{1, 2, 0}, 1}});
    CHECK(rule_by_name("scoring:2,1,0")(e) == borda(e));
    CHECK_THROWS(rule_by_name("nope"));
}
