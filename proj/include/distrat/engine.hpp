#pragma once

#include <optional>
#include <string>
#include <vector>

#include "distrat/consensus.hpp"
#include "distrat/core.hpp"
#include "distrat/metrics.hpp"
#include "distrat/rule.hpp"
#include "distrat/score.hpp"

namespace distrat {

struct SearchBounds {
    // tournament cells search voter counts n' in [1, n + extra]; extra < 0
    // means the default 2n. fixed_voter_count restricts to n' = n.
    int extra_voters = -1;
    bool fixed_voter_count = false;
    long long dfs_node_cap = 50'000'000;
    long long state_cap = 16'000'000;   // covering-DP states
    long long enum_cap = 2'000'000;     // brute-force enumeration size
    int insert_cap = -1;                // brute insertion depth; < 0 means 2n
};

enum class Strategy { Auto, VMPClosedForm, Specialized, BruteForce };

struct DRRule {
    ConsensusSpec consensus;
    ElectionDistanceSpec distance;
    Strategy strategy = Strategy::Auto;
    SearchBounds bounds;
    // finite-space rationalization (Campbell-Nitzan, MaxConsensus, custom d)
    const std::vector<Election>* space = nullptr;

    std::string name() const { return "R(" + consensus.name() + ", " + distance.name() + ")"; }
};

struct ScoreEntry {
    Ranking outcome;
    Score score;
    std::string provenance;
    std::optional<Election> witness;
};

struct ScoreTable {
    std::vector<ScoreEntry> entries;
    bool all_infinite() const;
    std::vector<Ranking> winners() const;  // argmin set, canonical order
    const ScoreEntry& entry(const Ranking& r) const;
};

struct TrivialityError : std::runtime_error {
    explicit TrivialityError(const std::string& w) : std::runtime_error(w) {}
};
struct BoundsError : std::runtime_error {
    explicit BoundsError(const std::string& w) : std::runtime_error(w) {}
};

Score dr_score(const DRRule& rule, const Election& e, const Ranking& r,
               std::optional<Election>* witness = nullptr, std::string* provenance = nullptr);
ScoreTable dr_score_table(const DRRule& rule, const Election& e);
std::vector<Ranking> dr_winners(const DRRule& rule, const Election& e);  // throws TrivialityError

// Def 2.22: size-s rule from a 1-consensus DR rule's candidate scores.
std::vector<Ranking> ranked_output(const DRRule& rule, const Election& e, int s);

// Wrap a DR spec as a Rule handle (evaluates winners).
Rule dr_rule(std::string name, DRRule spec);

// --- specialized scores (also used directly by tests) ------------------------

// Per-voter nearest allowed rankings for forbidden-set consensuses
// (Prop 6.8 form); returns the minimizer profile.
std::vector<Ranking> vmp_minimizer(const ConsensusSpec& k, const RankingMetricSpec& metric,
                                   const Election& e, const Ranking& r);

// Minimum adjacent transpositions making c a strict-majority Condorcet
// winner (Kendall l1 distance to COND_c).
Score dodgson_score(const VotingSituation& x, Candidate c);
Score dodgson_score(const Election& e, Candidate c);

// Covering DP for votewise distances to COND_c (Kendall / Spearman /
// Hamming bases, Lp or Linf norms).
Score condorcet_votewise_score(const VotingSituation& x, Candidate c,
                               const RankingMetricSpec& metric, const NormSpec& norm,
                               bool normalized, const SearchBounds& bounds,
                               std::optional<Election>* witness = nullptr);

Score young_score(const VotingSituation& x, Candidate c, std::optional<Election>* witness = nullptr);
Score young_score(const Election& e, Candidate c, std::optional<Election>* witness = nullptr);

Score maximin_score_via_insertion(const VotingSituation& x, Candidate c,
                                  std::optional<Election>* witness = nullptr);
Score maximin_score_via_insertion(const Election& e, Candidate c,
                                  std::optional<Election>* witness = nullptr);

// Minimum tournament-matrix distance from E to the given consensus cell,
// searched over actual elections (margin targets + realizability search).
Score tournament_cell_score(const VotingSituation& x, const ConsensusSpec& cell,
                            const Ranking& r, bool reduced, const SearchBounds& bounds,
                            std::optional<VotingSituation>* witness = nullptr);

// Reference oracle: exact minimum of d(E, E') over an enumerated space of
// candidate elections E' in K_r. Enumeration shape depends on the
// distance kind (profiles, voter-count range, sub/super-elections).
Score brute_force_score(const DRRule& rule, const Election& e, const Ranking& r,
                        std::optional<Election>* witness = nullptr);

// (K, d) nontriviality on a finite test space (Def 3.3).
bool nontrivial_on(const DRRule& rule, const std::vector<Election>& space);

}  // namespace distrat
