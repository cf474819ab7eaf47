#include "distrat/oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace distrat {
namespace oracles {

namespace {

std::vector<Ranking> as_choice_set(const std::set<Candidate>& winners) {
    std::vector<Ranking> out;
    for (Candidate c : winners) out.push_back(Ranking({c}));
    return out;
}

long long kendall(const Ranking& a, const Ranking& b) {
    long long inv = 0;
    const auto& o = a.order();
    for (size_t i = 0; i < o.size(); ++i)
        for (size_t j = i + 1; j < o.size(); ++j)
            if (b.rank_of(o[i]) > b.rank_of(o[j])) ++inv;
    return inv;
}

long long footrule(const Ranking& a, const Ranking& b) {
    long long s = 0;
    for (Candidate c : a.order()) s += std::llabs(a.rank_of(c) - b.rank_of(c));
    return s;
}

long long strict_majority_threshold(long long n) { return n / 2 + 1; }

std::map<std::pair<Candidate, Candidate>, long long> pair_counts(const VotingSituation& x) {
    std::map<std::pair<Candidate, Candidate>, long long> cnt;
    for (Candidate a : x.candidates)
        for (Candidate b : x.candidates)
            if (a != b) cnt[{a, b}] = 0;
    for (const auto& [r, c] : x.counts) {
        const auto& o = r.order();
        for (size_t i = 0; i < o.size(); ++i)
            for (size_t j = i + 1; j < o.size(); ++j) cnt[{o[i], o[j]}] += c;
    }
    return cnt;
}

// Exact minimum total cost over per-vote replacement targets so that c
// strictly beats every rival. options(vote) yields (cost, keeps) where
// keeps[i] = 1 iff the target vote ranks c above rival i.
long long min_cover_cost(
    const Election& e, Candidate c,
    const std::function<std::vector<std::pair<long long, std::vector<char>>>(const Ranking&)>&
        options) {
    VotingSituation x = anonymize(e);
    long long n = x.total();
    long long need = strict_majority_threshold(n);
    std::vector<Candidate> rivals;
    for (Candidate r : x.candidates)
        if (r != c) rivals.push_back(r);
    size_t R = rivals.size();
    // needs-vector DP, digits capped at `need`
    std::vector<long long> stride(R);
    long long states = 1;
    for (size_t i = 0; i < R; ++i) {
        stride[i] = states;
        states *= (need + 1);
    }
    const long long INF = (1LL << 62);
    std::vector<long long> dp(size_t(states), INF);
    long long full = 0;
    for (size_t i = 0; i < R; ++i) full += need * stride[i];
    dp[size_t(full)] = 0;
    std::vector<long long> nxt;
    for (const auto& [vote, cnt] : x.counts) {
        auto opts = options(vote);
        for (long long rep = 0; rep < cnt; ++rep) {
            nxt.assign(size_t(states), INF);
            for (long long s = 0; s < states; ++s) {
                if (dp[size_t(s)] >= INF) continue;
                for (const auto& [cost, keeps] : opts) {
                    long long s2 = s;
                    for (size_t i = 0; i < R; ++i) {
                        if (!keeps[i]) continue;
                        long long digit = (s2 / stride[i]) % (need + 1);
                        if (digit > 0) s2 -= stride[i];
                    }
                    if (dp[size_t(s)] + cost < nxt[size_t(s2)]) nxt[size_t(s2)] = dp[size_t(s)] + cost;
                }
            }
            dp.swap(nxt);
        }
    }
    return dp[0] >= INF ? -1 : dp[0];
}

std::vector<char> keeps_of(const Ranking& vote, Candidate c, const std::vector<Candidate>& rivals) {
    std::vector<char> k(rivals.size());
    for (size_t i = 0; i < rivals.size(); ++i) k[i] = vote.prefers(c, rivals[i]) ? 1 : 0;
    return k;
}

}  // namespace

std::vector<Ranking> scoring_rule(const std::vector<Rat>& w, const Election& e) {
    size_t m = e.candidates.size();
    if (w.size() < m) throw std::invalid_argument("weight vector too short");
    for (size_t i = 1; i < m; ++i)
        if (w[i] > w[i - 1]) throw std::invalid_argument("weights must be nonincreasing");
    if (!(w[0] > w[m - 1])) throw std::invalid_argument("w1 > wm required");
    std::map<Candidate, Rat> score;
    for (Candidate c : e.candidates) score[c] = Rat(0);
    for (const auto& [v, r] : e.profile) {
        (void)v;
        for (Candidate c : e.candidates) score[c] += w[size_t(r.rank_of(c)) - 1];
    }
    Rat best = score.begin()->second;
    for (const auto& [c, s] : score)
        if (s > best) best = s;
    std::set<Candidate> winners;
    for (const auto& [c, s] : score)
        if (s == best) winners.insert(c);
    return as_choice_set(winners);
}

std::vector<Ranking> plurality(const Election& e) {
    std::vector<Rat> w(e.candidates.size(), Rat(0));
    w[0] = Rat(1);
    return scoring_rule(w, e);
}

std::vector<Ranking> borda(const Election& e) {
    size_t m = e.candidates.size();
    std::vector<Rat> w(m);
    for (size_t i = 0; i < m; ++i) w[i] = Rat(static_cast<long long>(m - 1 - i));
    return scoring_rule(w, e);
}

std::vector<Ranking> k_approval(int k, const Election& e) {
    std::vector<Rat> w(e.candidates.size(), Rat(0));
    for (int i = 0; i < k && i < int(w.size()); ++i) w[size_t(i)] = Rat(1);
    return scoring_rule(w, e);
}

static std::vector<Ranking> argmin_over_rankings(const Election& e,
                                                 const std::function<long long(const Ranking&)>& f) {
    std::vector<Ranking> all = all_rankings(e.candidates);
    long long best = -1;
    for (const Ranking& r : all) {
        long long v = f(r);
        if (best < 0 || v < best) best = v;
    }
    std::vector<Ranking> out;
    for (const Ranking& r : all)
        if (f(r) == best) out.push_back(r);
    return out;
}

std::vector<Ranking> kemeny(const Election& e) {
    VotingSituation x = anonymize(e);
    return argmin_over_rankings(e, [&](const Ranking& r) {
        long long s = 0;
        for (const auto& [vote, cnt] : x.counts) s += cnt * kendall(vote, r);
        return s;
    });
}

std::vector<Ranking> litvak(const Election& e) {
    VotingSituation x = anonymize(e);
    return argmin_over_rankings(e, [&](const Ranking& r) {
        long long s = 0;
        for (const auto& [vote, cnt] : x.counts) s += cnt * footrule(vote, r);
        return s;
    });
}

std::vector<Ranking> modal_ranking(const Election& e) {
    VotingSituation x = anonymize(e);
    long long best = 0;
    for (const auto& [r, c] : x.counts) best = std::max(best, c);
    std::vector<Ranking> out;
    for (const auto& [r, c] : x.counts)
        if (c == best) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Ranking> slater(const Election& e) {
    VotingSituation x = anonymize(e);
    auto pc = pair_counts(x);
    return argmin_over_rankings(e, [&](const Ranking& r) {
        long long dis = 0;
        const auto& o = r.order();
        for (size_t i = 0; i < o.size(); ++i)
            for (size_t j = i + 1; j < o.size(); ++j)
                if (pc[{o[j], o[i]}] > pc[{o[i], o[j]}]) ++dis;  // majority opposes r's order
        return dis;
    });
}

std::vector<Ranking> copeland(const Election& e, const Rat& tie_value) {
    VotingSituation x = anonymize(e);
    auto pc = pair_counts(x);
    std::map<Candidate, Rat> score;
    for (Candidate a : x.candidates) {
        Rat s(0);
        for (Candidate b : x.candidates) {
            if (a == b) continue;
            if (pc[{a, b}] > pc[{b, a}])
                s += Rat(1);
            else if (pc[{a, b}] == pc[{b, a}])
                s += tie_value;
        }
        score[a] = s;
    }
    Rat best = score.begin()->second;
    for (const auto& [c, s] : score)
        if (s > best) best = s;
    std::set<Candidate> winners;
    for (const auto& [c, s] : score)
        if (s == best) winners.insert(c);
    return as_choice_set(winners);
}

std::vector<Ranking> maximin(const Election& e) {
    VotingSituation x = anonymize(e);
    auto pc = pair_counts(x);
    std::map<Candidate, long long> worst;
    for (Candidate a : x.candidates) {
        long long mn = 0;
        bool first = true;
        for (Candidate b : x.candidates) {
            if (a == b) continue;
            long long net = pc[{a, b}] - pc[{b, a}];
            if (first || net < mn) mn = net;
            first = false;
        }
        worst[a] = mn;
    }
    long long best = worst.begin()->second;
    for (const auto& [c, s] : worst)
        if (s > best) best = s;
    std::set<Candidate> winners;
    for (const auto& [c, s] : worst)
        if (s == best) winners.insert(c);
    return as_choice_set(winners);
}

std::map<Candidate, long long> dodgson_scores(const Election& e) {
    std::map<Candidate, long long> out;
    auto targets = all_rankings(e.candidates);
    for (Candidate c : e.candidates) {
        std::vector<Candidate> rivals;
        for (Candidate r : e.candidates)
            if (r != c) rivals.push_back(r);
        auto opts = [&](const Ranking& vote) {
            // every possible target vote, collapsed to minimal cost per
            // keeps-pattern
            std::map<std::vector<char>, long long> best;
            for (const Ranking& t : targets) {
                long long cost = kendall(vote, t);
                auto k = keeps_of(t, c, rivals);
                auto it = best.find(k);
                if (it == best.end() || cost < it->second) best[k] = cost;
            }
            std::vector<std::pair<long long, std::vector<char>>> o;
            for (auto& [k, cost] : best) o.push_back({cost, k});
            return o;
        };
        out[c] = min_cover_cost(e, c, opts);
    }
    return out;
}

std::map<Candidate, long long> vrr_scores(const Election& e) {
    std::map<Candidate, long long> out;
    auto targets = all_rankings(e.candidates);
    for (Candidate c : e.candidates) {
        std::vector<Candidate> rivals;
        for (Candidate r : e.candidates)
            if (r != c) rivals.push_back(r);
        auto opts = [&](const Ranking& vote) {
            std::map<std::vector<char>, long long> best;
            for (const Ranking& t : targets) {
                long long cost = (t == vote) ? 0 : 1;
                auto k = keeps_of(t, c, rivals);
                auto it = best.find(k);
                if (it == best.end() || cost < it->second) best[k] = cost;
            }
            std::vector<std::pair<long long, std::vector<char>>> o;
            for (auto& [k, cost] : best) o.push_back({cost, k});
            return o;
        };
        out[c] = min_cover_cost(e, c, opts);
    }
    return out;
}

std::map<Candidate, long long> young_scores(const Election& e) {
    std::map<Candidate, long long> out;
    std::vector<std::pair<Voter, Ranking>> votes(e.profile.begin(), e.profile.end());
    int n = int(votes.size());
    if (n > 20) throw std::invalid_argument("young oracle bounded at n <= 20");
    for (Candidate c : e.candidates) {
        long long best = -1;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            int kept = n - __builtin_popcount(mask);
            if (kept < 1) continue;
            long long thr = strict_majority_threshold(kept);
            bool ok = true;
            for (Candidate r : e.candidates) {
                if (r == c) continue;
                long long cnt = 0;
                for (int v = 0; v < n; ++v)
                    if (!(mask >> v & 1u) && votes[size_t(v)].second.prefers(c, r)) ++cnt;
                if (cnt < thr) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                long long del = __builtin_popcount(mask);
                if (best < 0 || del < best) best = del;
            }
        }
        out[c] = best;
    }
    return out;
}

static std::vector<Ranking> argmin_candidates(const std::map<Candidate, long long>& score) {
    long long best = -1;
    bool any = false;
    for (const auto& [c, s] : score) {
        (void)c;
        if (s < 0) continue;  // impossible
        if (!any || s < best) best = s;
        any = true;
    }
    std::set<Candidate> winners;
    for (const auto& [c, s] : score)
        if (any && s == best) winners.insert(c);
    return as_choice_set(winners);
}

std::vector<Ranking> dodgson(const Election& e) { return argmin_candidates(dodgson_scores(e)); }
std::vector<Ranking> young(const Election& e) { return argmin_candidates(young_scores(e)); }
std::vector<Ranking> vrr(const Election& e) { return argmin_candidates(vrr_scores(e)); }

Rule plurality_rule() { return {"plurality", 1, [](const Election& e) { return plurality(e); }}; }
Rule borda_rule() { return {"borda", 1, [](const Election& e) { return borda(e); }}; }
Rule scoring_rule_of(std::vector<Rat> w, std::string name) {
    return {std::move(name), 1, [w](const Election& e) { return scoring_rule(w, e); }};
}
Rule kemeny_rule() {
    Rule r{"kemeny", 0, [](const Election& e) { return kemeny(e); }};
    return r;
}
Rule litvak_rule() { return {"litvak", 0, [](const Election& e) { return litvak(e); }}; }
Rule modal_rule() { return {"modal", 0, [](const Election& e) { return modal_ranking(e); }}; }
Rule slater_rule() { return {"slater", 0, [](const Election& e) { return slater(e); }}; }
Rule copeland_rule(Rat tie_value) {
    std::string n = tie_value == Rat(0) ? "copeland:0" : "copeland:half";
    return {n, 1, [tie_value](const Election& e) { return copeland(e, tie_value); }};
}
Rule maximin_rule() { return {"maximin", 1, [](const Election& e) { return maximin(e); }}; }
Rule dodgson_rule() { return {"dodgson", 1, [](const Election& e) { return dodgson(e); }}; }
Rule young_rule() { return {"young", 1, [](const Election& e) { return young(e); }}; }
Rule vrr_rule() { return {"vrr", 1, [](const Election& e) { return vrr(e); }}; }

Rule rule_by_name(const std::string& name) {
    if (name == "plurality") return plurality_rule();
    if (name == "borda") return borda_rule();
    if (name == "kemeny") return kemeny_rule();
    if (name == "litvak") return litvak_rule();
    if (name == "modal") return modal_rule();
    if (name == "slater") return slater_rule();
    if (name == "maximin") return maximin_rule();
    if (name == "dodgson") return dodgson_rule();
    if (name == "young") return young_rule();
    if (name == "vrr") return vrr_rule();
    if (name == "copeland:0") return copeland_rule(Rat(0));
    if (name == "copeland:half" || name == "copeland") return copeland_rule(Rat(1, 2));
    if (name.rfind("scoring:", 0) == 0) {
        std::vector<Rat> w;
        std::stringstream ss(name.substr(8));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto slash = tok.find('/');
            if (slash == std::string::npos)
                w.push_back(Rat(std::stoll(tok)));
            else
                w.push_back(Rat(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1))));
        }
        return scoring_rule_of(std::move(w), name);
    }
    throw std::invalid_argument("unknown rule: " + name);
}

}  // namespace oracles
}  // namespace distrat
