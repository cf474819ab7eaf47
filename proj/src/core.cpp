#include "distrat/core.hpp"

#include <algorithm>
#include <set>

namespace distrat {

bool Ranking::contains(Candidate c) const {
    return std::find(order_.begin(), order_.end(), c) != order_.end();
}

int Ranking::rank_of(Candidate c) const {
    for (size_t i = 0; i < order_.size(); ++i)
        if (order_[i] == c) return int(i) + 1;
    throw std::invalid_argument("candidate not in ranking");
}

Ranking Ranking::reversed() const {
    std::vector<Candidate> o(order_.rbegin(), order_.rend());
    return Ranking(o);
}

Ranking Ranking::permuted(const std::map<Candidate, Candidate>& sigma) const {
    std::vector<Candidate> o;
    o.reserve(order_.size());
    for (Candidate c : order_) {
        auto it = sigma.find(c);
        o.push_back(it == sigma.end() ? c : it->second);
    }
    return Ranking(o);
}

Ranking Ranking::without(Candidate c) const {
    std::vector<Candidate> o;
    o.reserve(order_.size());
    for (Candidate x : order_)
        if (x != c) o.push_back(x);
    return Ranking(o);
}

std::string Ranking::str() const {
    std::string s;
    for (size_t i = 0; i < order_.size(); ++i) {
        if (i) s += ">";
        s += std::to_string(order_[i]);
    }
    return s;
}

void Election::validate() const {
    std::set<Candidate> cs(candidates.begin(), candidates.end());
    if (cs.size() != candidates.size())
        throw std::invalid_argument("duplicate candidate ids");
    if (!std::is_sorted(candidates.begin(), candidates.end()))
        throw std::invalid_argument("candidate set not sorted");
    for (const auto& [v, r] : profile) {
        (void)v;
        if (r.size() != int(candidates.size()))
            throw std::invalid_argument("ranking length mismatch");
        std::set<Candidate> seen;
        for (Candidate c : r.order()) {
            if (!cs.count(c)) throw std::invalid_argument("ranking uses unknown candidate");
            if (!seen.insert(c).second) throw std::invalid_argument("duplicate candidate in ranking");
        }
    }
}

long long VotingSituation::total() const {
    long long n = 0;
    for (const auto& [r, c] : counts) {
        (void)r;
        n += c;
    }
    return n;
}

std::string VotingSituation::str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [r, c] : counts) {
        if (!first) s += ", ";
        first = false;
        s += r.str() + ":" + std::to_string(c);
    }
    return s + "}";
}

int rank_of(const Ranking& r, Candidate c) { return r.rank_of(c); }

VotingSituation anonymize(const Election& e) {
    VotingSituation x;
    x.candidates = e.candidates;
    for (const auto& [v, r] : e.profile) {
        (void)v;
        x.counts[r] += 1;
    }
    return x;
}

VoteDistribution distribution(const VotingSituation& x) {
    long long n = x.total();
    if (n <= 0) throw std::invalid_argument("empty situation");
    VoteDistribution d;
    d.candidates = x.candidates;
    for (const auto& [r, c] : x.counts) d.weights[r] = Rat(c, n);
    return d;
}

VotingSituation scale(const VotingSituation& x, long long k) {
    if (k < 1) throw std::invalid_argument("scale factor must be >= 1");
    VotingSituation y;
    y.candidates = x.candidates;
    for (const auto& [r, c] : x.counts) y.counts[r] = c * k;
    return y;
}

Election scale(const Election& e, long long k) {
    if (k < 1) throw std::invalid_argument("scale factor must be >= 1");
    Election out;
    out.candidates = e.candidates;
    out.profile = e.profile;
    // fresh voter ids: lowest indices not already used
    Voter next = 0;
    for (const auto& [v, r] : e.profile) {
        (void)r;
        next = std::max(next, v + 1);
    }
    for (long long copy = 1; copy < k; ++copy)
        for (const auto& [v, r] : e.profile) {
            (void)v;
            out.profile[next++] = r;
        }
    return out;
}

Election concat(const Election& a, const Election& b) {
    if (a.candidates != b.candidates)
        throw std::invalid_argument("concat: candidate sets differ");
    Election out;
    out.candidates = a.candidates;
    out.profile = a.profile;
    Voter next = 0;
    for (const auto& [v, r] : a.profile) {
        (void)r;
        next = std::max(next, v + 1);
    }
    for (const auto& [v, r] : b.profile) {
        if (out.profile.count(v))
            out.profile[next++] = r;
        else
            out.profile[v] = r;
    }
    return out;
}

Election permute_voters(const Election& e, const std::map<Voter, Voter>& g) {
    std::set<Voter> images;
    for (const auto& [a, b] : g) {
        (void)a;
        if (!images.insert(b).second) throw std::invalid_argument("voter map not injective");
    }
    Election out;
    out.candidates = e.candidates;
    for (const auto& [v, r] : e.profile) {
        auto it = g.find(v);
        Voter w = (it == g.end()) ? v : it->second;
        if (out.profile.count(w)) throw std::invalid_argument("voter map collision");
        out.profile[w] = r;
    }
    return out;
}

Election permute_candidates(const Election& e, const std::map<Candidate, Candidate>& sigma) {
    std::set<Candidate> dom(e.candidates.begin(), e.candidates.end());
    std::set<Candidate> img;
    for (Candidate c : e.candidates) {
        auto it = sigma.find(c);
        img.insert(it == sigma.end() ? c : it->second);
    }
    if (img != dom) throw std::invalid_argument("sigma is not a bijection of C");
    Election out;
    out.candidates = e.candidates;
    for (const auto& [v, r] : e.profile) out.profile[v] = r.permuted(sigma);
    return out;
}

VotingSituation permute_candidates(const VotingSituation& x, const std::map<Candidate, Candidate>& sigma) {
    VotingSituation y;
    y.candidates = x.candidates;
    for (const auto& [r, c] : x.counts) y.counts[r.permuted(sigma)] += c;
    return y;
}

Ranking reverse(const Ranking& r) { return r.reversed(); }

Election reverse(const Election& e) {
    Election out;
    out.candidates = e.candidates;
    for (const auto& [v, r] : e.profile) out.profile[v] = r.reversed();
    return out;
}

VotingSituation reverse(const VotingSituation& x) {
    VotingSituation y;
    y.candidates = x.candidates;
    for (const auto& [r, c] : x.counts) y.counts[r.reversed()] += c;
    return y;
}

Election delete_candidate(const Election& e, Candidate c) {
    if (e.candidates.size() < 2) throw std::invalid_argument("cannot delete from singleton C");
    if (!std::binary_search(e.candidates.begin(), e.candidates.end(), c))
        throw std::invalid_argument("candidate not in C");
    Election out;
    for (Candidate x : e.candidates)
        if (x != c) out.candidates.push_back(x);
    for (const auto& [v, r] : e.profile) out.profile[v] = r.without(c);
    return out;
}

VotingSituation delete_candidate(const VotingSituation& x, Candidate c) {
    if (x.candidates.size() < 2) throw std::invalid_argument("cannot delete from singleton C");
    if (!std::binary_search(x.candidates.begin(), x.candidates.end(), c))
        throw std::invalid_argument("candidate not in C");
    VotingSituation y;
    for (Candidate q : x.candidates)
        if (q != c) y.candidates.push_back(q);
    for (const auto& [r, k] : x.counts) y.counts[r.without(c)] += k;
    return y;
}

Election canonical_election(const VotingSituation& x) {
    Election e;
    e.candidates = x.candidates;
    Voter v = 1;
    for (const auto& [r, c] : x.counts)
        for (long long i = 0; i < c; ++i) e.profile[v++] = r;
    return e;
}

std::vector<Ranking> all_rankings(const CandidateSet& cands) {
    std::vector<Candidate> perm = cands;
    std::sort(perm.begin(), perm.end());
    std::vector<Ranking> out;
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<Ranking> all_s_rankings(const CandidateSet& cands, int s) {
    std::vector<Ranking> out;
    if (s < 1 || s > int(cands.size())) return out;
    std::vector<Candidate> cur;
    std::vector<bool> used(cands.size(), false);
    std::function<void()> rec = [&]() {
        if (int(cur.size()) == s) {
            out.emplace_back(cur);
            return;
        }
        for (size_t i = 0; i < cands.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            cur.push_back(cands[i]);
            rec();
            cur.pop_back();
            used[i] = false;
        }
    };
    rec();
    return out;
}

CandidateSet range_candidates(int m) {
    CandidateSet c(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) c[size_t(i)] = i;
    return c;
}

SituationEnumerator::SituationEnumerator(CandidateSet cands, int n, bool allow_large)
    : cands_(std::move(cands)), n_(n) {
    if (!allow_large && (int(cands_.size()) > 4 || n_ > 5))
        throw std::invalid_argument("enumeration bound exceeded (|C| <= 4, n <= 5)");
    rankings_ = all_rankings(cands_);
    counts_.assign(rankings_.size(), 0);
}

void SituationEnumerator::reset() {
    counts_.assign(rankings_.size(), 0);
    done_ = false;
    started_ = false;
}

// counts_ iterates over all weak compositions of n into |L(C)| parts.
bool SituationEnumerator::advance() {
    int k = int(counts_.size());
    // find rightmost position (except last) with something to move
    int rem = counts_[size_t(k) - 1];
    for (int i = k - 2; i >= 0; --i) {
        if (counts_[size_t(i)] > 0) {
            counts_[size_t(i)] -= 1;
            counts_[size_t(i) + 1] = rem + 1;
            if (i + 1 != k - 1) counts_[size_t(k) - 1] = 0;
            return true;
        }
        rem += counts_[size_t(i)];
    }
    return false;
}

bool SituationEnumerator::next(VotingSituation& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        counts_.assign(rankings_.size(), 0);
        counts_[0] = n_;
    } else if (!advance()) {
        done_ = true;
        return false;
    }
    out.candidates = cands_;
    out.counts.clear();
    for (size_t i = 0; i < rankings_.size(); ++i)
        if (counts_[i] > 0) out.counts[rankings_[i]] = counts_[i];
    return true;
}

std::vector<VotingSituation> enumerate_situations(const CandidateSet& cands, int n_min,
                                                  int n_max, bool allow_large) {
    std::vector<VotingSituation> out;
    for (int n = n_min; n <= n_max; ++n) {
        SituationEnumerator en(cands, n, allow_large);
        VotingSituation x;
        while (en.next(x)) out.push_back(x);
    }
    return out;
}

VotingSituation make_situation(const CandidateSet& cands,
                               const std::vector<std::pair<std::vector<Candidate>, long long>>& entries) {
    VotingSituation x;
    x.candidates = cands;
    for (const auto& [order, count] : entries) x.counts[Ranking(order)] += count;
    return x;
}

}  // namespace distrat
