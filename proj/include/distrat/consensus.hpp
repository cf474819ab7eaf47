#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "distrat/core.hpp"
#include "distrat/rule.hpp"
#include "distrat/score.hpp"

namespace distrat {

// Consensus families as partial social functions (Def 2.4 style):
// membership test plus the unique consensus choice.
struct ConsensusSpec {
    enum class Kind {
        QualifiedMajority,   // fraction > alpha agree on top-s order
        Unanimity,           // all voters agree on top-s order (alpha -> 1)
        Condorcet,           // alpha-Condorcet winner exists (s = 1)
        CondorcetRestricted, // s-restriction of Condorcet
        SRestriction,        // generic s-restriction of a 1-consensus
        MaxConsensus,        // rule gives a unique output
        PinnedUnanimity,     // all voters cast exactly the canonical completion of r
    };
    Kind kind = Kind::Unanimity;
    Rat alpha = Rat(1, 2);
    int s = 1;
    std::shared_ptr<ConsensusSpec> base;  // SRestriction
    const Rule* rule = nullptr;           // MaxConsensus

    static ConsensusSpec sunam(int m);               // strong unanimity, s = m
    static ConsensusSpec sunam_s(int s);             // top-s unanimity
    static ConsensusSpec wunam();                    // weak unanimity, s = 1
    static ConsensusSpec maj(int s = 1);             // alpha = 1/2
    static ConsensusSpec qualified_majority(Rat alpha, int s);
    static ConsensusSpec condorcet(Rat alpha = Rat(1, 2));
    static ConsensusSpec condorcet_restricted(int s, Rat alpha = Rat(1, 2));
    static ConsensusSpec s_restriction_of(ConsensusSpec base, int s);
    static ConsensusSpec max_consensus(const Rule* rule);
    static ConsensusSpec pinned_unanimity(int s);

    // output size for an m-candidate election (s, or m for full kinds)
    int output_size(int m) const;
    std::string name() const;
};

struct ConsensusDecision {
    bool member = false;
    std::optional<Ranking> choice;
};

ConsensusDecision decide(const ConsensusSpec& k, const VotingSituation& x);
ConsensusDecision decide(const ConsensusSpec& k, const Election& e);

// Iterated winner extraction of Def 2.7 for an arbitrary 1-consensus.
ConsensusDecision s_restriction(const ConsensusSpec& one_consensus, int s, const Election& e);

// true iff every consensus member with a composite voter count kn factors
// as k * (smaller member with the same choice); returns a failing witness.
struct DivisibilityReport {
    bool divisible = true;
    std::optional<VotingSituation> witness;
    long long witness_k = 0;
};
DivisibilityReport is_divisible(const ConsensusSpec& k, const std::vector<VotingSituation>& space);

// Def 2.18: d(x,y) > 0 whenever x, y lie in cells with different choices.
bool distinguishes_choices(const ConsensusSpec& k,
                           const std::function<Score(const Election&, const Election&)>& d,
                           const std::vector<VotingSituation>& space);

}  // namespace distrat
