#pragma once

#include <random>
#include <string>
#include <vector>

#include "distrat/consensus.hpp"
#include "distrat/core.hpp"
#include "distrat/engine.hpp"
#include "distrat/metrics.hpp"
#include "distrat/rule.hpp"

namespace distrat {

enum class Verdict { Holds, Violated, Inconclusive };

struct AxiomReport {
    std::string axiom;
    Verdict verdict = Verdict::Holds;
    std::string witness;    // replayable description when violated
    long long checked = 0;  // instances examined
};

std::string verdict_str(Verdict v);

AxiomReport check_anonymity(const Rule& rule, const std::vector<VotingSituation>& space,
                            unsigned seed = 1, int samples_per = 3);
AxiomReport check_neutrality(const Rule& rule, const std::vector<VotingSituation>& space);
AxiomReport check_reversal_symmetry(const Rule& rule, const std::vector<VotingSituation>& space);
AxiomReport check_homogeneity(const Rule& rule, const std::vector<VotingSituation>& space,
                              int k_max);
AxiomReport check_consistency(const Rule& rule,
                              const std::vector<std::pair<VotingSituation, VotingSituation>>& pairs);
// least k <= k_max with R(jE + E') = R(E) for all j in [k, k_max]
AxiomReport check_continuity(const Rule& rule, const VotingSituation& e, const VotingSituation& ep,
                             int k_max);
AxiomReport check_continuity_space(const Rule& rule, const std::vector<VotingSituation>& space,
                                   int k_max);

// 7k voters over {a1..a7, x}: the 7 cyclic shifts of a1..a7, x inserted in
// 5th position, each repeated k times. Candidate ids: a_i -> i-1, x -> 7.
Election fishburn_election(int k);
Candidate fishburn_x();

struct CmpFailureReport {
    Score d_h_E, d_k_E;      // d(E, COND_a), E = {ab:2, ba:3}
    Score d_h_3E, d_k_3E;    // d(3E, COND_a)
    Score d_E_b;             // d(E, COND_b) = 0
    bool ok = false;
    std::string text;
};
CmpFailureReport cmp_failure_example();

struct UniquenessReport {
    int n = 0;
    bool r_ne_rprime = false;
    std::string witness;     // an election where the two rules differ
    std::string thresholds;  // exact computed boundaries along the diagonal
};
// Two-component shortest-path construction over all n-voter elections on
// {a, b, c, c'}; compares R(K, d) with R(K^max(R), d).
UniquenessReport uniqueness_counterexample(int n);

struct RationalizationReport {
    bool ok = true;
    std::string divergence;
};
// Checks R(E) = argmin_r d(E, K_r) on every E of the space.
RationalizationReport verify_rationalization(const Rule& rule, const ConsensusSpec& k,
                                             const ElectionDistanceSpec& d,
                                             const std::vector<Election>& space);

// --- Table 1 grand check ------------------------------------------------------

struct TableCellResult {
    std::string cell;
    bool trivial_expected = false;  // (SUNAM/WUNAM, d_ins)
    bool trivial_found = false;
    bool match = true;
    long long instances = 0;
    std::string first_mismatch;
};

struct TableCheckOptions {
    int exhaustive_m = 3;
    int exhaustive_n_max = 4;
    int random_m = 4;
    int random_n = 4;
    int random_count = 200;
    unsigned seed = 42;
    int threads = 1;
};

std::vector<TableCellResult> verify_table1(const TableCheckOptions& opts);

VotingSituation random_situation(const CandidateSet& cands, int n, std::mt19937_64& rng);

}  // namespace distrat
