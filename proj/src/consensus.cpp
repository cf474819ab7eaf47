#include "distrat/consensus.hpp"

#include <algorithm>
#include <map>

namespace distrat {

ConsensusSpec ConsensusSpec::sunam(int m) { return sunam_s(m); }
ConsensusSpec ConsensusSpec::sunam_s(int s) {
    ConsensusSpec k;
    k.kind = Kind::Unanimity;
    k.s = s;
    return k;
}
ConsensusSpec ConsensusSpec::wunam() { return sunam_s(1); }
ConsensusSpec ConsensusSpec::maj(int s) { return qualified_majority(Rat(1, 2), s); }
ConsensusSpec ConsensusSpec::qualified_majority(Rat alpha, int s) {
    if (alpha < Rat(1, 2) || alpha >= Rat(1))
        throw std::invalid_argument("alpha must lie in [1/2, 1)");
    ConsensusSpec k;
    k.kind = Kind::QualifiedMajority;
    k.alpha = alpha;
    k.s = s;
    return k;
}
ConsensusSpec ConsensusSpec::condorcet(Rat alpha) {
    if (alpha < Rat(1, 2) || alpha >= Rat(1))
        throw std::invalid_argument("alpha must lie in [1/2, 1)");
    ConsensusSpec k;
    k.kind = Kind::Condorcet;
    k.alpha = alpha;
    k.s = 1;
    return k;
}
ConsensusSpec ConsensusSpec::condorcet_restricted(int s, Rat alpha) {
    ConsensusSpec k;
    k.kind = Kind::CondorcetRestricted;
    k.alpha = alpha;
    k.s = s;
    return k;
}
ConsensusSpec ConsensusSpec::s_restriction_of(ConsensusSpec base, int s) {
    ConsensusSpec k;
    k.kind = Kind::SRestriction;
    k.s = s;
    k.base = std::make_shared<ConsensusSpec>(std::move(base));
    return k;
}
ConsensusSpec ConsensusSpec::max_consensus(const Rule* rule) {
    ConsensusSpec k;
    k.kind = Kind::MaxConsensus;
    k.rule = rule;
    k.s = rule->size_s;
    return k;
}
ConsensusSpec ConsensusSpec::pinned_unanimity(int s) {
    ConsensusSpec k;
    k.kind = Kind::PinnedUnanimity;
    k.s = s;
    return k;
}

int ConsensusSpec::output_size(int m) const {
    switch (kind) {
        case Kind::QualifiedMajority:
        case Kind::Unanimity:
        case Kind::CondorcetRestricted:
        case Kind::SRestriction:
        case Kind::PinnedUnanimity:
            return std::min(s, m);
        case Kind::Condorcet:
            return 1;
        case Kind::MaxConsensus:
            return s;
    }
    return 1;
}

std::string ConsensusSpec::name() const {
    switch (kind) {
        case Kind::QualifiedMajority:
            return (alpha == Rat(1, 2)) ? "maj^" + std::to_string(s)
                                        : "qmaj:" + alpha.str() + ":" + std::to_string(s);
        case Kind::Unanimity: return s == 1 ? "wunam" : "sunam^" + std::to_string(s);
        case Kind::Condorcet: return alpha == Rat(1, 2) ? "cond" : "cond:" + alpha.str();
        case Kind::CondorcetRestricted: return "cond-" + std::to_string(s);
        case Kind::SRestriction: return "srestrict:" + base->name() + ":" + std::to_string(s);
        case Kind::MaxConsensus: return "kmax(" + rule->name + ")";
        case Kind::PinnedUnanimity: return "pinned-unam^" + std::to_string(s);
    }
    return "?";
}

static Ranking prefix_of(const Ranking& r, int s) {
    std::vector<Candidate> o(r.order().begin(), r.order().begin() + s);
    return Ranking(o);
}

// canonical completion: the prefix, then remaining candidates ascending
static Ranking pinned_completion(const Ranking& prefix, const CandidateSet& cands) {
    std::vector<Candidate> o = prefix.order();
    for (Candidate c : cands)
        if (!prefix.contains(c)) o.push_back(c);
    return Ranking(o);
}

static ConsensusDecision decide_qualified_majority(const Rat& alpha, int s, const VotingSituation& x) {
    long long n = x.total();
    int sz = std::min(s, int(x.candidates.size()));
    std::map<Ranking, long long> prefix_counts;
    for (const auto& [r, c] : x.counts) prefix_counts[prefix_of(r, sz)] += c;
    for (const auto& [p, c] : prefix_counts)
        if (Rat(c, n) > alpha) return {true, p};  // strict fraction, exact rational compare
    return {false, std::nullopt};
}

static ConsensusDecision decide_unanimity(int s, const VotingSituation& x) {
    int sz = std::min(s, int(x.candidates.size()));
    std::optional<Ranking> common;
    for (const auto& [r, c] : x.counts) {
        (void)c;
        Ranking p = prefix_of(r, sz);
        if (!common)
            common = p;
        else if (!(p == *common))
            return {false, std::nullopt};
    }
    if (!common) return {false, std::nullopt};
    return {true, *common};
}

static ConsensusDecision decide_condorcet(const Rat& alpha, const VotingSituation& x) {
    long long n = x.total();
    for (Candidate c : x.candidates) {
        bool ok = true;
        for (Candidate r : x.candidates) {
            if (r == c) continue;
            long long above = 0;
            for (const auto& [rk, cnt] : x.counts)
                if (rk.prefers(c, r)) above += cnt;
            if (!(Rat(above, n) > alpha)) {
                ok = false;
                break;
            }
        }
        if (ok) return {true, Ranking({c})};
    }
    return {false, std::nullopt};
}

static ConsensusDecision decide_pinned(int s, const VotingSituation& x) {
    if (x.counts.size() != 1) return {false, std::nullopt};
    const Ranking& only = x.counts.begin()->first;
    int sz = std::min(s, int(x.candidates.size()));
    Ranking p = prefix_of(only, sz);
    if (pinned_completion(p, x.candidates) == only) return {true, p};
    return {false, std::nullopt};
}

static ConsensusDecision s_restriction_situation(const ConsensusSpec& one, int s,
                                                 const VotingSituation& x0) {
    VotingSituation x = x0;
    std::vector<Candidate> picked;
    for (int step = 0; step < s; ++step) {
        ConsensusDecision d = decide(one, x);
        if (!d.member) return {false, std::nullopt};
        Candidate c = d.choice->at(0);
        picked.push_back(c);
        if (step + 1 < s) {
            if (x.candidates.size() < 2) return {false, std::nullopt};
            x = delete_candidate(x, c);
        }
    }
    return {true, Ranking(picked)};
}

ConsensusDecision decide(const ConsensusSpec& k, const VotingSituation& x) {
    if (x.total() < 1) return {false, std::nullopt};
    switch (k.kind) {
        case ConsensusSpec::Kind::QualifiedMajority:
            return decide_qualified_majority(k.alpha, k.s, x);
        case ConsensusSpec::Kind::Unanimity:
            return decide_unanimity(k.s, x);
        case ConsensusSpec::Kind::Condorcet:
            return decide_condorcet(k.alpha, x);
        case ConsensusSpec::Kind::CondorcetRestricted: {
            ConsensusSpec base = ConsensusSpec::condorcet(k.alpha);
            return s_restriction_situation(base, std::min(k.s, int(x.candidates.size())), x);
        }
        case ConsensusSpec::Kind::SRestriction:
            return s_restriction_situation(*k.base, std::min(k.s, int(x.candidates.size())), x);
        case ConsensusSpec::Kind::MaxConsensus: {
            auto w = (*k.rule)(canonical_election(x));
            if (w.size() == 1) return {true, w[0]};
            return {false, std::nullopt};
        }
        case ConsensusSpec::Kind::PinnedUnanimity:
            return decide_pinned(k.s, x);
    }
    return {false, std::nullopt};
}

ConsensusDecision decide(const ConsensusSpec& k, const Election& e) {
    if (k.kind == ConsensusSpec::Kind::MaxConsensus) {
        auto w = (*k.rule)(e);
        if (w.size() == 1) return {true, w[0]};
        return {false, std::nullopt};
    }
    return decide(k, anonymize(e));
}

ConsensusDecision s_restriction(const ConsensusSpec& one_consensus, int s, const Election& e) {
    if (one_consensus.output_size(int(e.candidates.size())) != 1)
        throw std::invalid_argument("s_restriction requires a 1-consensus");
    return s_restriction_situation(one_consensus, s, anonymize(e));
}

DivisibilityReport is_divisible(const ConsensusSpec& k, const std::vector<VotingSituation>& space) {
    for (const auto& x : space) {
        ConsensusDecision dx = decide(k, x);
        if (!dx.member) continue;
        long long n = x.total();
        for (long long f = 2; f <= n; ++f) {
            if (n % f) continue;
            bool integral = true;
            VotingSituation y;
            y.candidates = x.candidates;
            for (const auto& [r, c] : x.counts) {
                if (c % f) {
                    integral = false;
                    break;
                }
                y.counts[r] = c / f;
            }
            bool ok = false;
            if (integral) {
                ConsensusDecision dy = decide(k, y);
                ok = dy.member && dy.choice == dx.choice;
            }
            if (!ok) return {false, x, f};
        }
    }
    return {true, std::nullopt, 0};
}

bool distinguishes_choices(const ConsensusSpec& k,
                           const std::function<Score(const Election&, const Election&)>& d,
                           const std::vector<VotingSituation>& space) {
    std::vector<std::pair<Election, Ranking>> members;
    for (const auto& x : space) {
        ConsensusDecision dx = decide(k, x);
        if (dx.member) members.emplace_back(canonical_election(x), *dx.choice);
    }
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = 0; j < members.size(); ++j) {
            if (members[i].second == members[j].second) continue;
            Score s = d(members[i].first, members[j].first);
            if (s == Score(0)) return false;
        }
    return true;
}

}  // namespace distrat
