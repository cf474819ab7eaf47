#include "distrat/engine.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace distrat {

// ---------------------------------------------------------------------------
// score table
// ---------------------------------------------------------------------------

bool ScoreTable::all_infinite() const {
    for (const auto& e : entries)
        if (e.score.is_finite()) return false;
    return true;
}

std::vector<Ranking> ScoreTable::winners() const {
    std::vector<Ranking> out;
    Score best = Score::inf();
    for (const auto& e : entries)
        if (e.score < best) best = e.score;
    for (const auto& e : entries)
        if (e.score == best) out.push_back(e.outcome);
    return out;
}

const ScoreEntry& ScoreTable::entry(const Ranking& r) const {
    for (const auto& e : entries)
        if (e.outcome == r) return e;
    throw std::invalid_argument("outcome not in score table");
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

namespace {

Ranking prefix_of(const Ranking& r, int s) {
    std::vector<Candidate> o(r.order().begin(), r.order().begin() + s);
    return Ranking(o);
}

Ranking pinned_completion(const Ranking& prefix, const CandidateSet& cands) {
    std::vector<Candidate> o = prefix.order();
    for (Candidate c : cands)
        if (!prefix.contains(c)) o.push_back(c);
    return Ranking(o);
}

// smallest integer count with count/n > alpha
long long strict_threshold(const Rat& alpha, long long n) {
    return (alpha.num * n) / alpha.den + 1;
}

long long ipow(long long b, long long e) {
    long long r = 1;
    for (long long i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<std::pair<Ranking, long long>> expanded_counts(const VotingSituation& x) {
    return {x.counts.begin(), x.counts.end()};
}

Election retop(const VotingSituation& x, Candidate c) {
    VotingSituation y;
    y.candidates = x.candidates;
    for (const auto& [r, cnt] : x.counts) {
        std::vector<Candidate> o;
        o.push_back(c);
        for (Candidate q : r.order())
            if (q != c) o.push_back(q);
        y.counts[Ranking(o)] += cnt;
    }
    return canonical_election(y);
}

bool votewise_applicable_consensus(const ConsensusSpec& k) {
    return k.kind == ConsensusSpec::Kind::Unanimity ||
           k.kind == ConsensusSpec::Kind::PinnedUnanimity;
}

}  // namespace

// ---------------------------------------------------------------------------
// VMP closed form (forbidden-set consensuses, Prop 6.8 shape)
// ---------------------------------------------------------------------------

static std::vector<Ranking> allowed_rankings(const ConsensusSpec& k, const CandidateSet& cands,
                                             const Ranking& r) {
    std::vector<Ranking> out;
    if (k.kind == ConsensusSpec::Kind::PinnedUnanimity) {
        out.push_back(pinned_completion(r, cands));
        return out;
    }
    if (k.kind != ConsensusSpec::Kind::Unanimity)
        throw std::invalid_argument("consensus is not of forbidden-set form");
    int s = std::min(k.s, int(cands.size()));
    if (r.size() != s) throw std::invalid_argument("outcome size mismatch");
    for (const Ranking& t : all_rankings(cands))
        if (prefix_of(t, s) == r) out.push_back(t);
    return out;
}

std::vector<Ranking> vmp_minimizer(const ConsensusSpec& k, const RankingMetricSpec& metric,
                                   const Election& e, const Ranking& r) {
    auto allowed = allowed_rankings(k, e.candidates, r);
    std::vector<Ranking> out;
    out.reserve(e.profile.size());
    for (const auto& [v, pi] : e.profile) {
        (void)v;
        Rat best(-1);
        const Ranking* arg = nullptr;
        for (const Ranking& t : allowed) {
            Rat d = ranking_distance_exact(metric, pi, t);
            if (!arg || d < best) {
                best = d;
                arg = &t;
            }
        }
        out.push_back(*arg);
    }
    return out;
}

static Score vmp_score(const DRRule& rule, const Election& e, const Ranking& r,
                       std::optional<Election>* witness) {
    auto allowed = allowed_rankings(rule.consensus, e.candidates, r);
    // per-vote minimum distance keyed by ranking type
    std::map<Ranking, Rat> type_cost;
    std::map<Ranking, Ranking> type_arg;
    for (const auto& [v, pi] : e.profile) {
        (void)v;
        if (type_cost.count(pi)) continue;
        Rat best(-1);
        const Ranking* arg = nullptr;
        for (const Ranking& t : allowed) {
            Rat d = ranking_distance_exact(rule.distance.metric, pi, t);
            if (!arg || d < best) {
                best = d;
                arg = &t;
            }
        }
        type_cost.emplace(pi, best);
        type_arg.emplace(pi, *arg);
    }
    std::vector<Rat> dists;
    dists.reserve(e.profile.size());
    for (const auto& [v, pi] : e.profile) {
        (void)v;
        dists.push_back(type_cost.at(pi));
    }
    Score s = norm_value(rule.distance.norm, dists);
    if (rule.distance.normalized && s.is_finite() && !e.profile.empty()) {
        long long n = (long long)e.profile.size();
        if (rule.distance.norm.integer_p())
            s.value = s.value / Rat(ipow(n, rule.distance.norm.p.num));
        else
            s.value = s.value / Rat(n);
    }
    if (witness) {
        Election w;
        w.candidates = e.candidates;
        for (const auto& [v, pi] : e.profile) w.profile[v] = type_arg.at(pi);
        *witness = w;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Condorcet-cell votewise scores: covering DP over rival deficits
// ---------------------------------------------------------------------------

namespace {

struct CondorcetDeficits {
    std::vector<Candidate> rivals;     // deficient rivals only
    std::vector<long long> deficit;    // per rival, > 0
    long long threshold = 0;
};

CondorcetDeficits condorcet_deficits(const VotingSituation& x, Candidate c, const Rat& alpha) {
    CondorcetDeficits d;
    long long n = x.total();
    d.threshold = strict_threshold(alpha, n);
    for (Candidate r : x.candidates) {
        if (r == c) continue;
        long long above = 0;
        for (const auto& [rk, cnt] : x.counts)
            if (rk.prefers(c, r)) above += cnt;
        long long need = d.threshold - above;
        if (need > 0) {
            d.rivals.push_back(r);
            d.deficit.push_back(need);
        }
    }
    return d;
}

// per-vote options: (cost as integer in the power-sum scale, gains as
// a set of deficient-rival indices)
struct VoteOption {
    long long cost;
    std::vector<int> gains;
};

std::vector<VoteOption> vote_options(const Ranking& vote, Candidate c,
                                     const CondorcetDeficits& d, const RankingMetricSpec& metric,
                                     long long p) {
    std::map<Candidate, int> rival_idx;
    for (size_t i = 0; i < d.rivals.size(); ++i) rival_idx[d.rivals[i]] = int(i);
    std::vector<VoteOption> opts;
    int pos = vote.rank_of(c) - 1;  // 0-based position of c
    if (metric.kind == RankingMetricSpec::Kind::Discrete) {
        opts.push_back({0, {}});
        std::vector<int> all;
        for (int i = 0; i < pos; ++i) {
            auto it = rival_idx.find(vote.at(i));
            if (it != rival_idx.end()) all.push_back(it->second);
        }
        if (!all.empty()) opts.push_back({1, all});  // 1^p = 1
        return opts;
    }
    // Kendall: raising c past j nearest-above costs j; Spearman costs 2j
    long long unit = (metric.kind == RankingMetricSpec::Kind::Spearman) ? 2 : 1;
    std::vector<int> gains;
    opts.push_back({0, {}});
    for (int j = 1; j <= pos; ++j) {
        auto it = rival_idx.find(vote.at(pos - j));
        if (it != rival_idx.end()) gains.push_back(it->second);
        if (!gains.empty() || j == pos)
            opts.push_back({ipow(unit * j, p), gains});
    }
    // drop dominated options (same gains, higher cost)
    std::map<std::vector<int>, long long> best;
    for (const auto& o : opts) {
        auto it = best.find(o.gains);
        if (it == best.end() || o.cost < it->second) best[o.gains] = o.cost;
    }
    std::vector<VoteOption> out;
    for (auto& [g, cst] : best) out.push_back({cst, g});
    return out;
}

struct DeficitCode {
    std::vector<long long> stride;
    std::vector<long long> base;  // deficit + 1 per rival
    long long states = 1;

    explicit DeficitCode(const std::vector<long long>& deficits) {
        for (long long d : deficits) base.push_back(d + 1);
        stride.resize(base.size());
        for (size_t i = 0; i < base.size(); ++i) {
            stride[i] = states;
            states *= base[i];
        }
    }
    long long full() const {
        long long s = 0;
        for (size_t i = 0; i < base.size(); ++i) s += (base[i] - 1) * stride[i];
        return s;
    }
    long long reduce(long long s, const std::vector<int>& gains) const {
        for (int g : gains) {
            long long digit = (s / stride[size_t(g)]) % base[size_t(g)];
            if (digit > 0) s -= stride[size_t(g)];
        }
        return s;
    }
};

constexpr long long kInfCost = (1LL << 62);

}  // namespace

Score condorcet_votewise_score(const VotingSituation& x, Candidate c,
                               const RankingMetricSpec& metric, const NormSpec& norm,
                               bool normalized, const SearchBounds& bounds,
                               std::optional<Election>* witness) {
    Rat alpha(1, 2);
    CondorcetDeficits d = condorcet_deficits(x, c, alpha);
    long long n = x.total();
    auto finish = [&](Score s) {
        if (normalized && s.is_finite() && n > 0) {
            if (norm.integer_p())
                s.value = s.value / Rat(ipow(n, norm.p.num));
            else
                s.value = s.value / Rat(n);
        }
        return s;
    };
    if (d.rivals.empty()) {
        if (witness) *witness = canonical_election(x);
        return finish(Score(0));
    }
    auto votes = expanded_counts(x);

    if (norm.kind == NormSpec::Kind::Linf) {
        // smallest per-vote budget tau such that raising every vote as far
        // as the budget allows covers all deficits
        long long unit = (metric.kind == RankingMetricSpec::Kind::Spearman) ? 2 : 1;
        int m = int(x.candidates.size());
        std::vector<long long> taus;
        if (metric.kind == RankingMetricSpec::Kind::Discrete)
            taus = {1};
        else
            for (int j = 1; j < m; ++j) taus.push_back(unit * j);
        for (long long tau : taus) {
            std::vector<long long> cover(d.rivals.size(), 0);
            for (const auto& [rk, cnt] : votes) {
                int pos = rk.rank_of(c) - 1;
                int raise = (metric.kind == RankingMetricSpec::Kind::Discrete)
                                ? pos
                                : int(std::min<long long>(pos, tau / unit));
                for (int j = 1; j <= raise; ++j) {
                    Candidate passed = rk.at(pos - j);
                    for (size_t i = 0; i < d.rivals.size(); ++i)
                        if (d.rivals[i] == passed) cover[i] += cnt;
                }
            }
            bool ok = true;
            for (size_t i = 0; i < d.rivals.size(); ++i)
                if (cover[i] < d.deficit[i]) ok = false;
            if (ok) {
                Score s = Score(Rat(tau));
                if (normalized) s.value = s.value / Rat(n);
                return s;
            }
        }
        return Score::inf();
    }

    long long p = norm.integer_p() ? norm.p.num : 1;
    if (!norm.integer_p())
        throw BoundsError("condorcet votewise DP supports integer p and linf only");

    DeficitCode code(d.deficit);
    if (code.states > bounds.state_cap) throw BoundsError("deficit state space exceeds cap");

    // option lists per ranking type
    std::map<Ranking, std::vector<VoteOption>> type_opts;
    for (const auto& [rk, cnt] : votes) {
        (void)cnt;
        if (!type_opts.count(rk)) type_opts[rk] = vote_options(rk, c, d, metric, p);
    }

    long long nvotes = n;
    bool keep_layers = witness && code.states * (nvotes + 1) <= 4'000'000;

    std::vector<std::vector<long long>> layers;
    std::vector<long long> cur(size_t(code.states), kInfCost), nxt;
    cur[size_t(code.full())] = 0;
    std::vector<Ranking> vote_seq;
    for (const auto& [rk, cnt] : votes)
        for (long long i = 0; i < cnt; ++i) vote_seq.push_back(rk);
    if (keep_layers) layers.push_back(cur);
    for (const Ranking& rk : vote_seq) {
        nxt.assign(size_t(code.states), kInfCost);
        const auto& opts = type_opts.at(rk);
        for (long long s = 0; s < code.states; ++s) {
            long long base_cost = cur[size_t(s)];
            if (base_cost >= kInfCost) continue;
            for (const auto& o : opts) {
                long long s2 = o.gains.empty() ? s : code.reduce(s, o.gains);
                long long cst = base_cost + o.cost;
                if (cst < nxt[size_t(s2)]) nxt[size_t(s2)] = cst;
            }
        }
        cur.swap(nxt);
        if (keep_layers) layers.push_back(cur);
    }
    long long ans = cur[0];
    if (ans >= kInfCost) return Score::inf();

    if (keep_layers) {
        // walk forward choosing options consistent with the final cost
        Election w = canonical_election(x);
        std::vector<Voter> voters;
        for (const auto& [v, rk] : w.profile) {
            (void)rk;
            voters.push_back(v);
        }
        // recompute: layers[i] = dp after i votes; trace backwards
        long long state = 0;
        long long cost_left = ans;
        std::vector<Ranking> chosen(vote_seq.size(), Ranking());
        for (long long i = (long long)vote_seq.size() - 1; i >= 0; --i) {
            const Ranking& rk = vote_seq[size_t(i)];
            const auto& opts = type_opts.at(rk);
            bool found = false;
            for (long long sprev = 0; sprev < code.states && !found; ++sprev) {
                if (layers[size_t(i)][size_t(sprev)] >= kInfCost) continue;
                for (const auto& o : opts) {
                    long long s2 = o.gains.empty() ? sprev : code.reduce(sprev, o.gains);
                    if (s2 == state &&
                        layers[size_t(i)][size_t(sprev)] + o.cost == cost_left) {
                        // apply raise to the vote
                        int raise = 0;
                        if (metric.kind == RankingMetricSpec::Kind::Discrete) {
                            raise = o.cost > 0 ? rk.rank_of(c) - 1 : 0;
                        } else {
                            long long unit =
                                (metric.kind == RankingMetricSpec::Kind::Spearman) ? 2 : 1;
                            long long root = o.cost;
                            // invert cost = (unit*j)^p
                            long long j = 0;
                            while (ipow(unit * (j + 1), p) <= root) ++j;
                            raise = int(j);
                        }
                        std::vector<Candidate> o2 = rk.order();
                        int pos = rk.rank_of(c) - 1;
                        for (int t = 0; t < raise; ++t) std::swap(o2[size_t(pos - t)], o2[size_t(pos - t - 1)]);
                        chosen[size_t(i)] = Ranking(o2);
                        state = sprev;
                        cost_left -= o.cost;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                keep_layers = false;
                break;
            }
        }
        if (keep_layers) {
            Election w2;
            w2.candidates = x.candidates;
            for (size_t i = 0; i < voters.size(); ++i) w2.profile[voters[i]] = chosen[i];
            *witness = w2;
        }
    }
    return finish(Score(Rat(ans)));
}

Score dodgson_score(const VotingSituation& x, Candidate c) {
    SearchBounds b;
    return condorcet_votewise_score(x, c, RankingMetricSpec::kendall(), NormSpec::l1(), false, b);
}
Score dodgson_score(const Election& e, Candidate c) { return dodgson_score(anonymize(e), c); }

// ---------------------------------------------------------------------------
// Young / maximin
// ---------------------------------------------------------------------------

static Score young_score_alpha(const VotingSituation& x, Candidate c, const Rat& alpha,
                               std::optional<Election>* witness) {
    Election e = canonical_election(x);
    int n = int(e.profile.size());
    if (n > 20) throw BoundsError("young subset search bounded at n <= 20");
    std::vector<std::pair<Voter, Ranking>> votes(e.profile.begin(), e.profile.end());
    int best = -1;
    unsigned best_mask = 0;
    std::vector<Candidate> rivals;
    for (Candidate r : x.candidates)
        if (r != c) rivals.push_back(r);
    std::vector<std::vector<char>> above(size_t(n), std::vector<char>(rivals.size()));
    for (int v = 0; v < n; ++v)
        for (size_t j = 0; j < rivals.size(); ++j)
            above[size_t(v)][j] = votes[size_t(v)].second.prefers(c, rivals[j]) ? 1 : 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int kept = n - __builtin_popcount(mask);
        if (kept < 1) continue;
        int deleted = __builtin_popcount(mask);
        if (best >= 0 && deleted >= best) continue;
        long long thr = strict_threshold(alpha, kept);
        bool ok = true;
        for (size_t j = 0; j < rivals.size() && ok; ++j) {
            long long cnt = 0;
            for (int v = 0; v < n; ++v)
                if (!(mask >> v & 1u)) cnt += above[size_t(v)][j];
            if (cnt < thr) ok = false;
        }
        if (ok) {
            best = deleted;
            best_mask = mask;
        }
    }
    if (best < 0) return Score::inf();
    if (witness) {
        Election w;
        w.candidates = x.candidates;
        for (int v = 0; v < n; ++v)
            if (!(best_mask >> v & 1u)) w.profile[votes[size_t(v)].first] = votes[size_t(v)].second;
        *witness = w;
    }
    return Score(Rat(best));
}

Score young_score(const VotingSituation& x, Candidate c, std::optional<Election>* witness) {
    return young_score_alpha(x, c, Rat(1, 2), witness);
}
Score young_score(const Election& e, Candidate c, std::optional<Election>* witness) {
    return young_score(anonymize(e), c, witness);
}

static Score maximin_insertion_alpha(const VotingSituation& x, Candidate c, const Rat& alpha,
                                     std::optional<Election>* witness) {
    long long n = x.total();
    // insert j voters ranking c first; margins against every rival rise by j
    for (long long j = 0; j <= 4 * n + 4; ++j) {
        long long thr = strict_threshold(alpha, n + j);
        bool ok = true;
        for (Candidate r : x.candidates) {
            if (r == c) continue;
            long long above = 0;
            for (const auto& [rk, cnt] : x.counts)
                if (rk.prefers(c, r)) above += cnt;
            if (above + j < thr) {
                ok = false;
                break;
            }
        }
        if (ok) {
            if (witness) {
                VotingSituation y = x;
                if (j > 0) {
                    std::vector<Candidate> o;
                    o.push_back(c);
                    for (Candidate q : x.candidates)
                        if (q != c) o.push_back(q);
                    y.counts[Ranking(o)] += j;
                }
                *witness = canonical_election(y);
            }
            return Score(Rat(j));
        }
    }
    return Score::inf();
}

Score maximin_score_via_insertion(const VotingSituation& x, Candidate c,
                                  std::optional<Election>* witness) {
    return maximin_insertion_alpha(x, c, Rat(1, 2), witness);
}
Score maximin_score_via_insertion(const Election& e, Candidate c,
                                  std::optional<Election>* witness) {
    return maximin_score_via_insertion(anonymize(e), c, witness);
}

// ---------------------------------------------------------------------------
// tournament cell scores
// ---------------------------------------------------------------------------

namespace {

struct PairSpace {
    CandidateSet cands;
    int m = 0, P = 0;

    explicit PairSpace(const CandidateSet& c) : cands(c), m(int(c.size())), P(m * (m - 1) / 2) {}
    int pidx(int i, int j) const {  // i < j, positions in cands
        return i * (2 * m - i - 1) / 2 + (j - i - 1);
    }
    std::vector<long long> upper_margins(const VotingSituation& x) const {
        MajorityMatrix mm = majority_matrix(x);
        std::vector<long long> v(static_cast<size_t>(P));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                v[size_t(pidx(i, j))] = mm.net_flat[size_t(i) * size_t(m) + size_t(j)];
        return v;
    }
    // +1 contribution to pair (i, j) when ranking prefers cands[i]
    std::vector<int> type_signs(const Ranking& t) const {
        std::vector<int> s(static_cast<size_t>(P));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                s[size_t(pidx(i, j))] = t.prefers(cands[size_t(i)], cands[size_t(j)]) ? 1 : -1;
        return s;
    }
};

// exact-margin realizability: does some count vector over `types` with n
// voters produce margins == target? Fills counts when found.
struct ExactRealizer {
    const PairSpace& ps;
    std::vector<std::vector<int>> signs;
    std::vector<std::vector<int>> suf_min, suf_max;  // per type-index suffix, per pair
    long long nodes = 0, cap;

    ExactRealizer(const PairSpace& p, const std::vector<Ranking>& types, long long node_cap)
        : ps(p), cap(node_cap) {
        for (const auto& t : types) signs.push_back(p.type_signs(t));
        int K = int(signs.size());
        suf_min.assign(size_t(K) + 1, std::vector<int>(size_t(p.P), 1));
        suf_max.assign(size_t(K) + 1, std::vector<int>(size_t(p.P), -1));
        for (int i = K - 1; i >= 0; --i)
            for (int q = 0; q < p.P; ++q) {
                suf_min[size_t(i)][size_t(q)] = std::min(suf_min[size_t(i) + 1][size_t(q)], signs[size_t(i)][size_t(q)]);
                suf_max[size_t(i)][size_t(q)] = std::max(suf_max[size_t(i) + 1][size_t(q)], signs[size_t(i)][size_t(q)]);
            }
    }

    bool feasible(int idx, long long rem, const std::vector<long long>& cur,
                  const std::vector<long long>& target) const {
        for (int q = 0; q < ps.P; ++q) {
            long long lo = cur[size_t(q)] + rem * suf_min[size_t(idx)][size_t(q)];
            long long hi = cur[size_t(q)] + rem * suf_max[size_t(idx)][size_t(q)];
            if (target[size_t(q)] < lo || target[size_t(q)] > hi) return false;
        }
        return true;
    }

    bool dfs(int idx, long long rem, std::vector<long long>& cur,
             const std::vector<long long>& target, std::vector<long long>& counts) {
        if (++nodes > cap) throw BoundsError("tournament realizability search exceeded node cap");
        if (rem == 0) {
            for (int q = 0; q < ps.P; ++q)
                if (cur[size_t(q)] != target[size_t(q)]) return false;
            return true;
        }
        if (idx >= int(signs.size())) return false;
        if (!feasible(idx, rem, cur, target)) return false;
        for (long long take = rem; take >= 0; --take) {
            for (int q = 0; q < ps.P; ++q) cur[size_t(q)] += take * signs[size_t(idx)][size_t(q)];
            counts[size_t(idx)] = take;
            if (dfs(idx + 1, rem - take, cur, target, counts)) return true;
            for (int q = 0; q < ps.P; ++q) cur[size_t(q)] -= take * signs[size_t(idx)][size_t(q)];
            counts[size_t(idx)] = 0;
        }
        return false;
    }

    bool realize(long long n, const std::vector<long long>& target, std::vector<long long>& counts) {
        // parity: every voter shifts every pair by +-1
        for (int q = 0; q < ps.P; ++q)
            if (((target[size_t(q)] - n) & 1LL) != 0) return false;
        std::vector<long long> cur(size_t(ps.P), 0);
        counts.assign(signs.size(), 0);
        return dfs(0, n, cur, target, counts);
    }
};

enum class PairKind { Free, ForcedPos, ForcedNeg, Exact };

struct CellPairs {
    std::vector<PairKind> kind;
    std::vector<long long> exact;  // Exact only
};

// sorted candidate target values for one pair at voter count n2
std::vector<long long> pair_values(PairKind k, long long exact_v, long long x, long long n2) {
    std::vector<long long> vals;
    if (k == PairKind::Exact) return {exact_v};
    long long par = n2 & 1LL;
    long long lo = (k == PairKind::ForcedPos) ? (par ? 1 : 2) : -n2;
    long long hi = (k == PairKind::ForcedNeg) ? (par ? -1 : -2) : n2;
    for (long long v = -n2; v <= n2; ++v) {
        if (((v - n2) & 1LL) != 0) continue;
        if (v < lo || v > hi) continue;
        vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end(), [&](long long a, long long b) {
        long long da = std::llabs(a - x), db = std::llabs(b - x);
        if (da != db) return da < db;
        return a < b;
    });
    return vals;
}

}  // namespace

Score tournament_cell_score(const VotingSituation& x, const ConsensusSpec& cell,
                            const Ranking& r, bool reduced, const SearchBounds& bounds,
                            std::optional<VotingSituation>* witness) {
    PairSpace ps(x.candidates);
    std::vector<long long> xm = ps.upper_margins(x);
    long long n = x.total();
    long long extra = bounds.extra_voters < 0 ? 2 * n : bounds.extra_voters;
    long long n_lo = bounds.fixed_voter_count ? n : 1;
    long long n_hi = bounds.fixed_voter_count ? n : n + extra;

    auto sgn = [](long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };

    bool is_sunam = cell.kind == ConsensusSpec::Kind::Unanimity && cell.s >= ps.m;
    bool is_wunam = cell.kind == ConsensusSpec::Kind::Unanimity && cell.s == 1;
    bool is_cond = cell.kind == ConsensusSpec::Kind::Condorcet && cell.alpha == Rat(1, 2);
    bool is_condm = cell.kind == ConsensusSpec::Kind::CondorcetRestricted &&
                    cell.alpha == Rat(1, 2) && cell.s >= ps.m;
    if (!is_sunam && !is_wunam && !is_cond && !is_condm)
        throw BoundsError("tournament cell score: unsupported consensus kind");

    if (reduced) {
        // Sign targets are always realizable by the unanimous-r election or
        // by re-topping E itself, so the nearest pattern is a closed form.
        // l1 on sign matrices: a tie-to-win fix costs 1 per ordered entry,
        // a loss-to-win fix costs 2.
        long long diff = 0;
        if (is_sunam || is_condm) {
            std::vector<int> t(static_cast<size_t>(ps.P));
            for (int i = 0; i < ps.m; ++i)
                for (int j = i + 1; j < ps.m; ++j)
                    t[size_t(ps.pidx(i, j))] =
                        r.prefers(ps.cands[size_t(i)], ps.cands[size_t(j)]) ? 1 : -1;
            for (int q = 0; q < ps.P; ++q)
                diff += std::llabs(t[size_t(q)] - sgn(xm[size_t(q)]));
            if (witness) {
                VotingSituation w;
                w.candidates = x.candidates;
                w.counts[pinned_completion(r, x.candidates)] = 1;
                *witness = w;
            }
        } else {
            Candidate c = r.at(0);
            int ci = int(std::lower_bound(ps.cands.begin(), ps.cands.end(), c) - ps.cands.begin());
            for (int j = 0; j < ps.m; ++j) {
                if (j == ci) continue;
                long long v = (ci < j) ? xm[size_t(ps.pidx(ci, j))] : -xm[size_t(ps.pidx(j, ci))];
                diff += 1 - sgn(v);  // |1 - sgn|: win 0, tie 1, loss 2
            }
            if (witness) *witness = anonymize(retop(x, c));
        }
        return Score(Rat(2 * diff));
    }

    // full margins
    Score best = Score::inf();
    std::optional<VotingSituation> best_wit;

    if (is_sunam) {
        std::vector<int> t(static_cast<size_t>(ps.P));
        for (int i = 0; i < ps.m; ++i)
            for (int j = i + 1; j < ps.m; ++j)
                t[size_t(ps.pidx(i, j))] =
                    r.prefers(ps.cands[size_t(i)], ps.cands[size_t(j)]) ? 1 : -1;
        Ranking full = pinned_completion(r, x.candidates);
        for (long long n2 = n_lo; n2 <= n_hi; ++n2) {
            long long cost = 0;
            for (int q = 0; q < ps.P; ++q) cost += std::llabs(xm[size_t(q)] - n2 * t[size_t(q)]);
            Score s(Rat(2 * cost));
            if (s < best) {
                best = s;
                if (witness) {
                    VotingSituation w;
                    w.candidates = x.candidates;
                    w.counts[full] = n2;
                    best_wit = w;
                }
            }
        }
        if (witness) *witness = best_wit ? *best_wit : VotingSituation{};
        return best;
    }

    // WUNAM / COND / COND^m: best-first over per-pair targets, with an
    // exact-margin realizability search producing the witness election.
    CellPairs cp;
    cp.kind.assign(size_t(ps.P), PairKind::Free);
    cp.exact.assign(size_t(ps.P), 0);
    Candidate c = r.at(0);
    int ci = 0;
    if (is_wunam || is_cond)
        ci = int(std::lower_bound(ps.cands.begin(), ps.cands.end(), c) - ps.cands.begin());
    if (is_condm) {
        for (int i = 0; i < ps.m; ++i)
            for (int j = i + 1; j < ps.m; ++j)
                cp.kind[size_t(ps.pidx(i, j))] =
                    r.prefers(ps.cands[size_t(i)], ps.cands[size_t(j)]) ? PairKind::ForcedPos
                                                                        : PairKind::ForcedNeg;
    } else {
        for (int j = 0; j < ps.m; ++j) {
            if (j == ci) continue;
            int q = ci < j ? ps.pidx(ci, j) : ps.pidx(j, ci);
            cp.kind[size_t(q)] = (ci < j) ? PairKind::ForcedPos : PairKind::ForcedNeg;
        }
    }

    // WUNAM realizability runs on the rival sub-election (tails are free)
    CandidateSet rival_cands;
    PairSpace* sub = nullptr;
    PairSpace sub_store(x.candidates);
    std::vector<int> rivalpair_of;  // sub pair index -> full pair index
    if (is_wunam) {
        for (Candidate q : x.candidates)
            if (q != c) rival_cands.push_back(q);
        sub_store = PairSpace(rival_cands);
        sub = &sub_store;
        rivalpair_of.assign(size_t(sub->P), -1);
        for (int i = 0; i < sub->m; ++i)
            for (int j = i + 1; j < sub->m; ++j) {
                Candidate a = rival_cands[size_t(i)], b = rival_cands[size_t(j)];
                int ia = int(std::lower_bound(ps.cands.begin(), ps.cands.end(), a) - ps.cands.begin());
                int ib = int(std::lower_bound(ps.cands.begin(), ps.cands.end(), b) - ps.cands.begin());
                rivalpair_of[size_t(sub->pidx(i, j))] = ps.pidx(ia, ib);
            }
    }

    std::vector<Ranking> full_types = all_rankings(x.candidates);
    std::vector<Ranking> sub_types = is_wunam ? all_rankings(rival_cands) : std::vector<Ranking>{};

    for (long long n2 = n_lo; n2 <= n_hi; ++n2) {
        CellPairs cpn = cp;
        if (is_wunam) {
            for (int j = 0; j < ps.m; ++j) {
                if (j == ci) continue;
                int q = ci < j ? ps.pidx(ci, j) : ps.pidx(j, ci);
                cpn.kind[size_t(q)] = PairKind::Exact;
                cpn.exact[size_t(q)] = (ci < j) ? n2 : -n2;
            }
        }
        std::vector<std::vector<long long>> values(static_cast<size_t>(ps.P));
        bool ok = true;
        long long lb = 0;
        for (int q = 0; q < ps.P; ++q) {
            values[size_t(q)] = pair_values(cpn.kind[size_t(q)], cpn.exact[size_t(q)],
                                            xm[size_t(q)], n2);
            // exact pairs may carry any parity (they're n2-derived) but must
            // respect the voter parity too
            std::vector<long long> filt;
            for (long long v : values[size_t(q)])
                if (((v - n2) & 1LL) == 0) filt.push_back(v);
            values[size_t(q)] = filt;
            if (values[size_t(q)].empty()) {
                ok = false;
                break;
            }
            lb += std::llabs(values[size_t(q)][0] - xm[size_t(q)]);
        }
        if (!ok) continue;
        if (best.is_finite() && Rat(2 * lb) >= best.value) continue;

        // uniform-cost search over index vectors
        auto cost_of = [&](const std::vector<int>& idx) {
            long long cst = 0;
            for (int q = 0; q < ps.P; ++q)
                cst += std::llabs(values[size_t(q)][size_t(idx[size_t(q)])] - xm[size_t(q)]);
            return cst;
        };
        using Node = std::pair<long long, std::vector<int>>;
        std::priority_queue<Node, std::vector<Node>, std::greater<Node>> pq;
        std::set<std::vector<int>> seen;
        std::vector<int> start(size_t(ps.P), 0);
        pq.push({cost_of(start), start});
        seen.insert(start);
        long long pops = 0;
        while (!pq.empty()) {
            auto [cst, idx] = pq.top();
            pq.pop();
            if (++pops > 20000) throw BoundsError("tournament target search exceeded cap");
            if (best.is_finite() && Rat(2 * cst) >= best.value) break;
            std::vector<long long> target(static_cast<size_t>(ps.P));
            for (int q = 0; q < ps.P; ++q) target[size_t(q)] = values[size_t(q)][size_t(idx[size_t(q)])];
            // fast paths: E itself, or E re-topped, realizes the target
            if (n2 == n) {
                bool same = true, rivals_same = true;
                for (int q = 0; q < ps.P; ++q) {
                    if (target[size_t(q)] != xm[size_t(q)]) {
                        same = false;
                        if (cpn.kind[size_t(q)] == PairKind::Free) rivals_same = false;
                    }
                }
                if (same) {
                    if (witness) best_wit = x;
                    Score s(Rat(2 * cst));
                    if (s < best) best = s;
                    break;
                }
                if (is_wunam && rivals_same) {
                    if (witness) best_wit = anonymize(retop(x, c));
                    Score s(Rat(2 * cst));
                    if (s < best) best = s;
                    break;
                }
            }
            bool realizable = false;
            std::vector<long long> counts;
            if (is_wunam) {
                std::vector<long long> sub_target(static_cast<size_t>(sub->P));
                for (int q = 0; q < sub->P; ++q)
                    sub_target[size_t(q)] = target[size_t(rivalpair_of[size_t(q)])];
                ExactRealizer re(*sub, sub_types, bounds.dfs_node_cap);
                realizable = re.realize(n2, sub_target, counts);
                if (realizable && witness) {
                    VotingSituation w;
                    w.candidates = x.candidates;
                    for (size_t t = 0; t < sub_types.size(); ++t) {
                        if (!counts[t]) continue;
                        std::vector<Candidate> o;
                        o.push_back(c);
                        for (Candidate q : sub_types[t].order()) o.push_back(q);
                        w.counts[Ranking(o)] += counts[t];
                    }
                    best_wit = w;
                }
            } else {
                ExactRealizer re(ps, full_types, bounds.dfs_node_cap);
                realizable = re.realize(n2, target, counts);
                if (realizable && witness) {
                    VotingSituation w;
                    w.candidates = x.candidates;
                    for (size_t t = 0; t < full_types.size(); ++t)
                        if (counts[t]) w.counts[full_types[t]] += counts[t];
                    best_wit = w;
                }
            }
            if (realizable) {
                Score s(Rat(2 * cst));
                if (s < best) best = s;
                break;  // first realizable pop is optimal for this n2
            }
            for (int q = 0; q < ps.P; ++q) {
                if (idx[size_t(q)] + 1 >= int(values[size_t(q)].size())) continue;
                std::vector<int> nx = idx;
                nx[size_t(q)]++;
                if (seen.insert(nx).second) pq.push({cost_of(nx), nx});
            }
        }
    }
    if (witness && best_wit) *witness = *best_wit;
    return best;
}

// ---------------------------------------------------------------------------
// brute-force reference oracle
// ---------------------------------------------------------------------------

namespace {

bool in_cell(const ConsensusSpec& k, const Election& e, const Ranking& r) {
    ConsensusDecision d = decide(k, e);
    return d.member && *d.choice == r;
}

}  // namespace

Score brute_force_score(const DRRule& rule, const Election& e, const Ranking& r,
                        std::optional<Election>* witness) {
    Score best = Score::inf();
    std::optional<Election> bw;
    auto consider = [&](const Election& cand) {
        if (!in_cell(rule.consensus, cand, r)) return;
        Score s = rule.distance.evaluate(e, cand);
        if (s < best) {
            best = s;
            bw = cand;
        }
    };

    if (rule.space) {
        for (const Election& cand : *rule.space) consider(cand);
        if (witness) *witness = bw ? *bw : Election{};
        return best;
    }

    using Kind = ElectionDistanceSpec::Kind;
    switch (rule.distance.kind) {
        case Kind::Votewise: {
            auto types = all_rankings(e.candidates);
            long long n = e.num_voters();
            double total = 1;
            for (long long i = 0; i < n; ++i) total *= double(types.size());
            if (total > double(rule.bounds.enum_cap))
                throw BoundsError("votewise brute force space too large");
            std::vector<Voter> voters;
            for (const auto& [v, rk] : e.profile) {
                (void)rk;
                voters.push_back(v);
            }
            std::vector<size_t> pick(size_t(n), 0);
            while (true) {
                Election cand;
                cand.candidates = e.candidates;
                for (long long i = 0; i < n; ++i) cand.profile[voters[size_t(i)]] = types[pick[size_t(i)]];
                consider(cand);
                long long i = 0;
                for (; i < n; ++i) {
                    if (++pick[size_t(i)] < types.size()) break;
                    pick[size_t(i)] = 0;
                }
                if (i == n) break;
            }
            break;
        }
        case Kind::Tournament:
        case Kind::ReducedTournament: {
            long long n = e.num_voters();
            long long extra = rule.bounds.extra_voters < 0 ? 2 * n : rule.bounds.extra_voters;
            long long lo = rule.bounds.fixed_voter_count ? n : 1;
            long long hi = rule.bounds.fixed_voter_count ? n : n + extra;
            long long types = 1;
            for (long long i = 2; i <= (long long)e.candidates.size(); ++i) types *= i;
            for (long long n2 = lo; n2 <= hi; ++n2) {
                // multiset count C(types + n2 - 1, n2)
                double cnt = 1;
                for (long long i = 1; i <= n2; ++i) cnt *= double(types + n2 - i) / double(i);
                if (cnt > double(rule.bounds.enum_cap))
                    throw BoundsError("tournament brute force space too large");
                SituationEnumerator en(e.candidates, int(n2), true);
                VotingSituation xq;
                while (en.next(xq)) consider(canonical_election(xq));
            }
            break;
        }
        case Kind::Delete: {
            std::vector<std::pair<Voter, Ranking>> votes(e.profile.begin(), e.profile.end());
            int n = int(votes.size());
            if (n > 20) throw BoundsError("deletion brute force bounded at n <= 20");
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                Election cand;
                cand.candidates = e.candidates;
                for (int v = 0; v < n; ++v)
                    if (!(mask >> v & 1u)) cand.profile[votes[size_t(v)].first] = votes[size_t(v)].second;
                if (cand.profile.empty()) continue;
                consider(cand);
            }
            break;
        }
        case Kind::Insert: {
            auto types = all_rankings(e.candidates);
            long long n = e.num_voters();
            long long cap = rule.bounds.insert_cap < 0 ? 2 * n : rule.bounds.insert_cap;
            Voter fresh0 = 0;
            for (const auto& [v, rk] : e.profile) {
                (void)rk;
                fresh0 = std::max(fresh0, v + 1);
            }
            // multisets of j added votes
            std::function<void(size_t, long long, Election&)> rec = [&](size_t ti, long long left,
                                                                        Election& cand) {
                if (left == 0 || ti == types.size()) {
                    if (left == 0) consider(cand);
                    return;
                }
                for (long long take = 0; take <= left; ++take) {
                    Election next = cand;
                    Voter fv = fresh0;
                    for (const auto& [v, rk] : next.profile) {
                        (void)rk;
                        fv = std::max(fv, v + 1);
                    }
                    for (long long i = 0; i < take; ++i) next.profile[fv++] = types[ti];
                    rec(ti + 1, left - take, next);
                }
            };
            for (long long j = 0; j <= cap; ++j) {
                Election base = e;
                rec(0, j, base);
            }
            break;
        }
        case Kind::CampbellNitzan:
        case Kind::Custom:
            throw BoundsError("brute force over this distance requires an explicit space");
    }
    if (witness) *witness = bw ? *bw : Election{};
    return best;
}

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

Score dr_score(const DRRule& rule, const Election& e, const Ranking& r,
               std::optional<Election>* witness, std::string* provenance) {
    auto prov = [&](const char* p) {
        if (provenance) *provenance = p;
    };
    if (rule.strategy == Strategy::BruteForce || rule.space) {
        prov(rule.space ? "space-brute" : "brute");
        return brute_force_score(rule, e, r, witness);
    }

    using DK = ElectionDistanceSpec::Kind;
    const ConsensusSpec& K = rule.consensus;
    VotingSituation x = anonymize(e);
    long long n = x.total();

    switch (rule.distance.kind) {
        case DK::Votewise: {
            if (votewise_applicable_consensus(K)) {
                prov("vmp");
                return vmp_score(rule, e, r, witness);
            }
            if (rule.strategy == Strategy::VMPClosedForm)
                throw BoundsError("VMP closed form does not apply to this consensus");
            if (K.kind == ConsensusSpec::Kind::Condorcet && K.alpha == Rat(1, 2) &&
                rule.distance.metric.kind != RankingMetricSpec::Kind::Weighted) {
                prov("condorcet-dp");
                Score s = condorcet_votewise_score(x, r.at(0), rule.distance.metric,
                                                   rule.distance.norm, rule.distance.normalized,
                                                   rule.bounds, witness);
                if (s.is_finite() && rule.distance.scale_factor != Rat(1))
                    s.value = s.value * rule.distance.scale_factor;
                return s;
            }
            prov("brute");
            return brute_force_score(rule, e, r, witness);
        }
        case DK::Tournament:
        case DK::ReducedTournament: {
            bool reduced = rule.distance.kind == DK::ReducedTournament;
            int m = int(e.candidates.size());
            bool supported =
                (K.kind == ConsensusSpec::Kind::Unanimity && (K.s >= m || K.s == 1)) ||
                (K.kind == ConsensusSpec::Kind::Condorcet && K.alpha == Rat(1, 2)) ||
                (K.kind == ConsensusSpec::Kind::CondorcetRestricted && K.alpha == Rat(1, 2) &&
                 K.s >= m);
            if (!supported) {
                prov("brute");
                return brute_force_score(rule, e, r, witness);
            }
            std::optional<VotingSituation> wsit;
            Score s = tournament_cell_score(x, K, r, reduced, rule.bounds,
                                            witness ? &wsit : nullptr);
            prov("tournament-cell");
            if (witness && wsit) *witness = canonical_election(*wsit);
            if (s.is_finite() && rule.distance.scale_factor != Rat(1))
                s.value = s.value * rule.distance.scale_factor;
            return s;
        }
        case DK::Insert: {
            if (votewise_applicable_consensus(K)) {
                prov("insert-membership");
                Score s = in_cell(K, e, r) ? Score(0) : Score::inf();
                if (witness && s == Score(0)) *witness = e;
                return s;
            }
            if (K.kind == ConsensusSpec::Kind::Condorcet) {
                prov("maximin-insertion");
                Score s = maximin_insertion_alpha(x, r.at(0), K.alpha, witness);
                if (s.is_finite() && rule.distance.scale_factor != Rat(1))
                    s.value = s.value * rule.distance.scale_factor;
                return s;
            }
            if (K.kind == ConsensusSpec::Kind::QualifiedMajority) {
                prov("qmaj-insertion");
                int s_out = K.output_size(int(e.candidates.size()));
                long long q = 0;
                for (const auto& [rk, cnt] : x.counts)
                    if (prefix_of(rk, s_out) == r) q += cnt;
                for (long long j = 0; j <= 4 * n + 4; ++j)
                    if (Rat(q + j, n + j) > K.alpha) return Score(Rat(j));
                return Score::inf();
            }
            prov("brute");
            return brute_force_score(rule, e, r, witness);
        }
        case DK::Delete: {
            if (votewise_applicable_consensus(K)) {
                prov("delete-count");
                int s_out = K.output_size(int(e.candidates.size()));
                long long q = 0;
                Election w;
                w.candidates = e.candidates;
                for (const auto& [v, rk] : e.profile) {
                    bool keep = (K.kind == ConsensusSpec::Kind::PinnedUnanimity)
                                    ? rk == pinned_completion(r, e.candidates)
                                    : prefix_of(rk, s_out) == r;
                    if (keep) {
                        q += 1;
                        w.profile[v] = rk;
                    }
                }
                if (q < 1) return Score::inf();
                if (witness) *witness = w;
                return Score(Rat(n - q));
            }
            if (K.kind == ConsensusSpec::Kind::Condorcet) {
                prov("young-deletion");
                return young_score_alpha(x, r.at(0), K.alpha, witness);
            }
            if (K.kind == ConsensusSpec::Kind::QualifiedMajority) {
                prov("qmaj-deletion");
                int s_out = K.output_size(int(e.candidates.size()));
                long long q = 0;
                for (const auto& [rk, cnt] : x.counts)
                    if (prefix_of(rk, s_out) == r) q += cnt;
                if (q < 1) return Score::inf();
                for (long long j = 0; j <= n - q; ++j)
                    if (Rat(q, n - j) > K.alpha) return Score(Rat(j));
                return Score::inf();
            }
            prov("brute");
            return brute_force_score(rule, e, r, witness);
        }
        case DK::CampbellNitzan:
        case DK::Custom:
            throw BoundsError("this distance needs an explicit finite space (set rule.space)");
    }
    throw std::logic_error("unreachable");
}

ScoreTable dr_score_table(const DRRule& rule, const Election& e) {
    int m = int(e.candidates.size());
    int s = rule.consensus.output_size(m);
    ScoreTable t;
    for (const Ranking& r : all_s_rankings(e.candidates, s)) {
        ScoreEntry entry;
        entry.outcome = r;
        std::optional<Election> w;
        std::string prov;
        entry.score = dr_score(rule, e, r, &w, &prov);
        entry.provenance = prov;
        if (w && !w->profile.empty()) entry.witness = w;
        t.entries.push_back(std::move(entry));
    }
    return t;
}

std::vector<Ranking> dr_winners(const DRRule& rule, const Election& e) {
    ScoreTable t = dr_score_table(rule, e);
    if (t.all_infinite())
        throw TrivialityError("all outcomes at infinite distance (trivial rationalization)");
    return t.winners();
}

std::vector<Ranking> ranked_output(const DRRule& rule, const Election& e, int s) {
    int m = int(e.candidates.size());
    if (rule.consensus.output_size(m) != 1)
        throw std::invalid_argument("ranked_output requires a 1-consensus rule");
    ScoreTable t = dr_score_table(rule, e);
    std::vector<std::pair<Score, Candidate>> scored;
    for (const auto& en : t.entries) scored.emplace_back(en.score, en.outcome.at(0));
    std::vector<Ranking> out;
    std::vector<Candidate> cur;
    std::function<void()> rec = [&]() {
        if (int(cur.size()) == s) {
            out.emplace_back(cur);
            return;
        }
        Score mn = Score::inf();
        bool any = false;
        for (const auto& [sc, c] : scored) {
            if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
            if (!any || sc < mn) mn = sc;
            any = true;
        }
        for (const auto& [sc, c] : scored) {
            if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
            if (sc == mn) {
                cur.push_back(c);
                rec();
                cur.pop_back();
            }
        }
    };
    rec();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rule dr_rule(std::string name, DRRule spec) {
    Rule rl;
    rl.name = std::move(name);
    rl.size_s = spec.consensus.s;
    rl.eval = [spec](const Election& e) { return dr_winners(spec, e); };
    return rl;
}

bool nontrivial_on(const DRRule& rule, const std::vector<Election>& space) {
    for (const Election& e : space) {
        ScoreTable t = dr_score_table(rule, e);
        if (t.all_infinite()) return false;
    }
    return true;
}

}  // namespace distrat
