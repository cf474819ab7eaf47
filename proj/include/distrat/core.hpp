#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "distrat/rational.hpp"

namespace distrat {

// Candidates and voters are small nonnegative integer indices into
// unbounded universes; an election carries explicit finite subsets.
using Candidate = int;
using Voter = int;
using CandidateSet = std::vector<Candidate>;  // kept sorted ascending

// Strict linear order over a candidate set, stored as the order sequence
// (first = most preferred). An s-ranking with s < m uses the same type
// with fewer entries.
class Ranking {
public:
    Ranking() = default;
    explicit Ranking(std::vector<Candidate> order) : order_(std::move(order)) {}

    const std::vector<Candidate>& order() const { return order_; }
    int size() const { return int(order_.size()); }
    Candidate at(int pos) const { return order_.at(size_t(pos)); }  // 0-based
    bool contains(Candidate c) const;

    // 1-based rank of c; throws if c is absent.
    int rank_of(Candidate c) const;

    // true iff a appears before b (both must be present).
    bool prefers(Candidate a, Candidate b) const { return rank_of(a) < rank_of(b); }

    Ranking reversed() const;
    Ranking permuted(const std::map<Candidate, Candidate>& sigma) const;
    Ranking without(Candidate c) const;

    bool operator==(const Ranking& o) const { return order_ == o.order_; }
    bool operator!=(const Ranking& o) const { return !(*this == o); }
    bool operator<(const Ranking& o) const { return order_ < o.order_; }

    std::string str() const;

private:
    std::vector<Candidate> order_;
};

using SRanking = Ranking;

// Identified election: candidate set, voter set, total profile map.
struct Election {
    CandidateSet candidates;
    std::map<Voter, Ranking> profile;

    int num_voters() const { return int(profile.size()); }
    int num_candidates() const { return int(candidates.size()); }
    void validate() const;
};

// Anonymous profile: multiset of rankings with positive counts.
struct VotingSituation {
    CandidateSet candidates;
    std::map<Ranking, long long> counts;

    long long total() const;
    bool operator==(const VotingSituation& o) const {
        return candidates == o.candidates && counts == o.counts;
    }
    bool operator!=(const VotingSituation& o) const { return !(*this == o); }
    bool operator<(const VotingSituation& o) const {
        if (candidates != o.candidates) return candidates < o.candidates;
        return counts < o.counts;
    }
    std::string str() const;
};

// Probability distribution on L(C), exact rationals summing to 1.
struct VoteDistribution {
    CandidateSet candidates;
    std::map<Ranking, Rat> weights;

    bool operator==(const VoteDistribution& o) const {
        return candidates == o.candidates && weights == o.weights;
    }
    bool operator!=(const VoteDistribution& o) const { return !(*this == o); }
};

// --- structural operations -------------------------------------------------

int rank_of(const Ranking& r, Candidate c);

VotingSituation anonymize(const Election& e);
VoteDistribution distribution(const VotingSituation& x);

VotingSituation scale(const VotingSituation& x, long long k);
Election scale(const Election& e, long long k);

// Union profile; voters of b are renumbered to fresh ids if they collide.
Election concat(const Election& a, const Election& b);

Election permute_voters(const Election& e, const std::map<Voter, Voter>& g);
Election permute_candidates(const Election& e, const std::map<Candidate, Candidate>& sigma);
VotingSituation permute_candidates(const VotingSituation& x, const std::map<Candidate, Candidate>& sigma);

Ranking reverse(const Ranking& r);
Election reverse(const Election& e);
VotingSituation reverse(const VotingSituation& x);

Election delete_candidate(const Election& e, Candidate c);
VotingSituation delete_candidate(const VotingSituation& x, Candidate c);

// Canonical identified election for a situation: voters 1..n assigned in
// lexicographic ranking order.
Election canonical_election(const VotingSituation& x);

// All strict linear orders over the given candidates, lexicographic.
std::vector<Ranking> all_rankings(const CandidateSet& cands);
// All s-rankings (ordered s-tuples of distinct candidates).
std::vector<Ranking> all_s_rankings(const CandidateSet& cands, int s);

CandidateSet range_candidates(int m);

// Restartable enumeration of all n-voter voting situations over C, in a
// deterministic order (multisets over all_rankings(C)). Guard bounds keep
// |L(C)|^n spaces desk-sized; callers with larger verified needs may pass
// allow_large = true.
class SituationEnumerator {
public:
    SituationEnumerator(CandidateSet cands, int n, bool allow_large = false);
    bool next(VotingSituation& out);
    void reset();

private:
    CandidateSet cands_;
    std::vector<Ranking> rankings_;
    int n_;
    bool done_ = false;
    bool started_ = false;
    std::vector<int> counts_;  // counts per ranking index, sums to n_

    bool advance();
};

// Convenience: materialize every situation with voter count in [n_min, n_max].
std::vector<VotingSituation> enumerate_situations(const CandidateSet& cands, int n_min,
                                                  int n_max, bool allow_large = false);

// Helper used by tests and the CLI to build situations tersely:
// make_situation({0,1,2}, {{"abc-like ranking orders", count}, ...})
VotingSituation make_situation(const CandidateSet& cands,
                               const std::vector<std::pair<std::vector<Candidate>, long long>>& entries);

}  // namespace distrat
