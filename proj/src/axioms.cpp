#include "distrat/axioms.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "distrat/oracles.hpp"

namespace distrat {

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

std::vector<Ranking> sorted_out(std::vector<Ranking> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::string rankings_str(const std::vector<Ranking>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + "}";
}

VotingSituation add_situations(const VotingSituation& a, const VotingSituation& b) {
    VotingSituation out = a;
    for (const auto& [r, c] : b.counts) out.counts[r] += c;
    return out;
}

}  // namespace

AxiomReport check_anonymity(const Rule& rule, const std::vector<VotingSituation>& space,
                            unsigned seed, int samples_per) {
    AxiomReport rep{"anonymity", Verdict::Holds, "", 0};
    std::mt19937_64 rng(seed);
    for (const auto& x : space) {
        Election e = canonical_election(x);
        auto base = sorted_out(rule(e));
        std::vector<Voter> ids;
        for (const auto& [v, r] : e.profile) {
            (void)r;
            ids.push_back(v);
        }
        int n = int(ids.size());
        std::vector<std::map<Voter, Voter>> maps;
        if (n <= 4) {
            std::vector<Voter> perm = ids;
            do {
                std::map<Voter, Voter> g;
                for (size_t i = 0; i < ids.size(); ++i) g[ids[i]] = perm[i];
                maps.push_back(g);
            } while (std::next_permutation(perm.begin(), perm.end()));
        } else {
            for (int t = 0; t < samples_per; ++t) {
                std::vector<Voter> perm = ids;
                std::shuffle(perm.begin(), perm.end(), rng);
                std::map<Voter, Voter> g;
                for (size_t i = 0; i < ids.size(); ++i) g[ids[i]] = perm[i];
                maps.push_back(g);
            }
        }
        // relabel into fresh ids as well (identity matters, not just order)
        std::map<Voter, Voter> shift;
        for (Voter v : ids) shift[v] = v + 100;
        maps.push_back(shift);
        for (const auto& g : maps) {
            rep.checked++;
            auto out = sorted_out(rule(permute_voters(e, g)));
            if (out != base) {
                rep.verdict = Verdict::Violated;
                rep.witness = "E=" + x.str() + " R(E)=" + rankings_str(base) +
                              " R(gE)=" + rankings_str(out);
                return rep;
            }
        }
    }
    return rep;
}

AxiomReport check_neutrality(const Rule& rule, const std::vector<VotingSituation>& space) {
    AxiomReport rep{"neutrality", Verdict::Holds, "", 0};
    for (const auto& x : space) {
        Election e = canonical_election(x);
        auto base = rule(e);
        CandidateSet cs = x.candidates;
        std::vector<Candidate> perm = cs;
        std::sort(perm.begin(), perm.end());
        do {
            std::map<Candidate, Candidate> sigma;
            for (size_t i = 0; i < cs.size(); ++i) sigma[cs[i]] = perm[i];
            rep.checked++;
            auto lhs = sorted_out(rule(permute_candidates(e, sigma)));
            std::vector<Ranking> rhs;
            for (const Ranking& r : base) rhs.push_back(r.permuted(sigma));
            rhs = sorted_out(rhs);
            if (lhs != rhs) {
                rep.verdict = Verdict::Violated;
                rep.witness = "E=" + x.str() + " R(sE)=" + rankings_str(lhs) +
                              " s(R(E))=" + rankings_str(rhs);
                return rep;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return rep;
}

AxiomReport check_reversal_symmetry(const Rule& rule, const std::vector<VotingSituation>& space) {
    AxiomReport rep{"reversal-symmetry", Verdict::Holds, "", 0};
    for (const auto& x : space) {
        Election e = canonical_election(x);
        rep.checked++;
        auto lhs = sorted_out(rule(reverse(e)));
        std::vector<Ranking> rhs;
        for (const Ranking& r : rule(e)) rhs.push_back(r.reversed());
        rhs = sorted_out(rhs);
        if (lhs != rhs) {
            rep.verdict = Verdict::Violated;
            rep.witness = "E=" + x.str() + " R(rev E)=" + rankings_str(lhs) +
                          " rev(R(E))=" + rankings_str(rhs);
            return rep;
        }
    }
    return rep;
}

AxiomReport check_homogeneity(const Rule& rule, const std::vector<VotingSituation>& space,
                              int k_max) {
    AxiomReport rep{"homogeneity", Verdict::Holds, "", 0};
    for (const auto& x : space) {
        auto base = sorted_out(rule(canonical_election(x)));
        for (int k = 2; k <= k_max; ++k) {
            rep.checked++;
            auto out = sorted_out(rule(canonical_election(scale(x, k))));
            if (out != base) {
                rep.verdict = Verdict::Violated;
                rep.witness = "E=" + x.str() + " k=" + std::to_string(k) +
                              " R(E)=" + rankings_str(base) + " R(kE)=" + rankings_str(out);
                return rep;
            }
        }
    }
    return rep;
}

AxiomReport check_consistency(
    const Rule& rule, const std::vector<std::pair<VotingSituation, VotingSituation>>& pairs) {
    AxiomReport rep{"consistency", Verdict::Holds, "", 0};
    for (const auto& [x, y] : pairs) {
        if (x.candidates != y.candidates) continue;
        auto rx = sorted_out(rule(canonical_election(x)));
        auto ry = sorted_out(rule(canonical_election(y)));
        std::vector<Ranking> inter;
        std::set_intersection(rx.begin(), rx.end(), ry.begin(), ry.end(),
                              std::back_inserter(inter));
        if (inter.empty()) continue;
        rep.checked++;
        auto rxy = sorted_out(rule(canonical_election(add_situations(x, y))));
        if (rxy != inter) {
            rep.verdict = Verdict::Violated;
            rep.witness = "E=" + x.str() + " E'=" + y.str() + " R(E)&R(E')=" +
                          rankings_str(inter) + " R(E+E')=" + rankings_str(rxy);
            return rep;
        }
    }
    return rep;
}

AxiomReport check_continuity(const Rule& rule, const VotingSituation& e, const VotingSituation& ep,
                             int k_max) {
    AxiomReport rep{"continuity", Verdict::Holds, "", 0};
    auto base = sorted_out(rule(canonical_election(e)));
    if (base.size() != 1) throw std::invalid_argument("continuity check requires R(E) singleton");
    int last_bad = 0;
    for (int k = 1; k <= k_max; ++k) {
        rep.checked++;
        auto out = sorted_out(rule(canonical_election(add_situations(scale(e, k), ep))));
        if (out != base) last_bad = k;
    }
    if (last_bad == k_max) {
        rep.verdict = Verdict::Inconclusive;
        rep.witness = "not stabilized within k_max=" + std::to_string(k_max);
    } else {
        rep.witness = "stabilizes at k=" + std::to_string(last_bad + 1);
    }
    return rep;
}

AxiomReport check_continuity_space(const Rule& rule, const std::vector<VotingSituation>& space,
                                   int k_max) {
    AxiomReport rep{"continuity", Verdict::Holds, "", 0};
    int worst_k = 1;
    for (const auto& x : space) {
        auto base = sorted_out(rule(canonical_election(x)));
        if (base.size() != 1) continue;
        for (const auto& y : space) {
            if (y.candidates != x.candidates) continue;
            AxiomReport one = check_continuity(rule, x, y, k_max);
            rep.checked += one.checked;
            if (one.verdict == Verdict::Inconclusive) {
                rep.verdict = Verdict::Inconclusive;
                rep.witness = "E=" + x.str() + " E'=" + y.str() + " " + one.witness;
                return rep;
            }
            size_t at = one.witness.rfind('=');
            worst_k = std::max(worst_k, std::stoi(one.witness.substr(at + 1)));
        }
    }
    rep.witness = "max stabilization k=" + std::to_string(worst_k);
    return rep;
}

Candidate fishburn_x() { return 7; }

Election fishburn_election(int k) {
    if (k < 1) throw std::invalid_argument("fishburn_election: k >= 1");
    CandidateSet cands = range_candidates(8);  // a1..a7 = 0..6, x = 7
    VotingSituation x;
    x.candidates = cands;
    for (int s = 0; s < 7; ++s) {
        std::vector<Candidate> order;
        for (int pos = 0; pos < 7; ++pos) {
            if (pos == 4) order.push_back(fishburn_x());
            order.push_back((pos + s) % 7);
        }
        // pos loop emits 4 a's, x, then the remaining 3 a's
        x.counts[Ranking(order)] += k;
    }
    return canonical_election(x);
}

CmpFailureReport cmp_failure_example() {
    CmpFailureReport rep;
    CandidateSet ab = range_candidates(2);
    VotingSituation e = make_situation(ab, {{{0, 1}, 2}, {{1, 0}, 3}});
    VotingSituation e3 = scale(e, 3);
    Candidate a = 0, b = 1;
    rep.d_h_E = condorcet_votewise_score(e, a, RankingMetricSpec::discrete(), NormSpec::l1(),
                                         false, SearchBounds{});
    rep.d_k_E = condorcet_votewise_score(e, a, RankingMetricSpec::kendall(), NormSpec::l1(),
                                         false, SearchBounds{});
    rep.d_h_3E = condorcet_votewise_score(e3, a, RankingMetricSpec::discrete(), NormSpec::l1(),
                                          false, SearchBounds{});
    rep.d_k_3E = condorcet_votewise_score(e3, a, RankingMetricSpec::kendall(), NormSpec::l1(),
                                          false, SearchBounds{});
    rep.d_E_b = condorcet_votewise_score(e, b, RankingMetricSpec::kendall(), NormSpec::l1(),
                                         false, SearchBounds{});
    rep.ok = rep.d_h_E == Score(1) && rep.d_k_E == Score(1) && rep.d_h_3E == Score(2) &&
             rep.d_k_3E == Score(2) && rep.d_E_b == Score(0);
    std::ostringstream os;
    os << "E={ab:2, ba:3}: d_H(E,COND_a)=" << rep.d_h_E << " d_K(E,COND_a)=" << rep.d_k_E
       << " d_H(3E,COND_a)=" << rep.d_h_3E << " d_K(3E,COND_a)=" << rep.d_k_3E
       << " d(E,COND_b)=" << rep.d_E_b;
    rep.text = os.str();
    return rep;
}

// ---------------------------------------------------------------------------
// Example 3.7 uniqueness counterexample
// ---------------------------------------------------------------------------

namespace {

// The construction only depends on each ballot's top candidate, and every
// consensus cell and component is a union of top-count classes, so the
// shortest-path computation runs exactly on the projected states
// (x_a, x_b, x_c, x_c'). A situation-level BFS cross-checks this at n = 4
// in the test suite.
struct UniqState {
    int v[4];  // top-count of a, b, c, c'
    bool operator<(const UniqState& o) const {
        for (int i = 0; i < 4; ++i)
            if (v[i] != o.v[i]) return v[i] < o.v[i];
        return false;
    }
    bool operator==(const UniqState& o) const {
        return v[0] == o.v[0] && v[1] == o.v[1] && v[2] == o.v[2] && v[3] == o.v[3];
    }
};

bool uniq_comp1(const UniqState& s) {
    bool all_ab = (s.v[2] == 0 && s.v[3] == 0);
    // connectivity repair: the equal-first-places stratum is widened to
    // |x_a - x_b| <= 1; the literal x_a = x_b reading disconnects the
    // component for even n and collapses the example
    bool near_diag = std::abs(s.v[0] - s.v[1]) <= 1;
    return all_ab || near_diag;
}

constexpr int UNIQ_INF = 1 << 29;

}  // namespace

UniquenessReport uniqueness_counterexample(int n) {
    if (n < 4 || n > 12 || (n % 2)) throw std::invalid_argument("uniqueness: n even, 4 <= n <= 12");
    UniquenessReport rep;
    rep.n = n;

    std::vector<UniqState> states;
    std::map<UniqState, int> idx;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b)
            for (int c = 0; a + b + c <= n; ++c) {
                UniqState s{{a, b, c, n - a - b - c}};
                idx[s] = int(states.size());
                states.push_back(s);
            }
    int S = int(states.size());

    auto bfs = [&](const std::vector<int>& sources) {
        std::vector<int> dist(size_t(S), UNIQ_INF);
        std::vector<int> q;
        for (int s : sources) {
            dist[size_t(s)] = 0;
            q.push_back(s);
        }
        for (size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (int src = 0; src < 4; ++src) {
                if (states[size_t(u)].v[src] == 0) continue;
                for (int dst = 0; dst < 4; ++dst) {
                    if (dst == src) continue;
                    UniqState t = states[size_t(u)];
                    t.v[src]--;
                    t.v[dst]++;
                    if (!uniq_comp1(t)) continue;
                    int ti = idx[t];
                    if (dist[size_t(ti)] > dist[size_t(u)] + 1) {
                        dist[size_t(ti)] = dist[size_t(u)] + 1;
                        q.push_back(ti);
                    }
                }
            }
        }
        return dist;
    };

    std::vector<int> ka, kb, kc;
    for (int i = 0; i < S; ++i) {
        const UniqState& s = states[size_t(i)];
        if (!uniq_comp1(s)) continue;
        bool all_ab = (s.v[2] == 0 && s.v[3] == 0);
        if (all_ab && s.v[0] > s.v[1]) ka.push_back(i);
        if (all_ab && s.v[1] > s.v[0]) kb.push_back(i);
        if (s.v[0] == 0 && s.v[1] == 0) kc.push_back(i);
    }
    auto da = bfs(ka), db = bfs(kb), dc = bfs(kc);

    // R(E): winners among {a, b, c, c'}; c' is the entire second component
    auto winners_of = [&](int i, const std::vector<int>& xa, const std::vector<int>& xb,
                          const std::vector<int>& xc) {
        std::set<int> w;  // 0=a 1=b 2=c 3=c'
        if (!uniq_comp1(states[size_t(i)])) {
            w.insert(3);
            return w;
        }
        int best = std::min({xa[size_t(i)], xb[size_t(i)], xc[size_t(i)]});
        if (best >= UNIQ_INF) {
            w = {0, 1, 2, 3};
            return w;
        }
        if (xa[size_t(i)] == best) w.insert(0);
        if (xb[size_t(i)] == best) w.insert(1);
        if (xc[size_t(i)] == best) w.insert(2);
        return w;
    };

    std::vector<std::set<int>> R(static_cast<size_t>(S));
    for (int i = 0; i < S; ++i) R[size_t(i)] = winners_of(i, da, db, dc);

    std::vector<int> ka2, kb2, kc2;
    for (int i = 0; i < S; ++i) {
        if (!uniq_comp1(states[size_t(i)])) continue;
        if (R[size_t(i)] == std::set<int>{0}) ka2.push_back(i);
        if (R[size_t(i)] == std::set<int>{1}) kb2.push_back(i);
        if (R[size_t(i)] == std::set<int>{2}) kc2.push_back(i);
    }
    auto da2 = bfs(ka2), db2 = bfs(kb2), dc2 = bfs(kc2);
    std::vector<std::set<int>> R2(static_cast<size_t>(S));
    for (int i = 0; i < S; ++i) R2[size_t(i)] = winners_of(i, da2, db2, dc2);

    const char* names[4] = {"a", "b", "c", "c'"};
    auto set_str = [&](const std::set<int>& s) {
        std::string out = "{";
        bool first = true;
        for (int c : s) {
            if (!first) out += ",";
            first = false;
            out += names[c];
        }
        return out + "}";
    };

    int witness = -1;
    for (int i = 0; i < S; ++i) {
        if (R[size_t(i)] != R2[size_t(i)]) {
            if (witness < 0) witness = i;
            if (states[size_t(i)].v[0] == states[size_t(i)].v[1]) {
                witness = i;
                break;
            }
        }
    }
    rep.r_ne_rprime = witness >= 0;
    if (witness >= 0) {
        const UniqState& s = states[size_t(witness)];
        std::ostringstream os;
        os << "first-place counts (a,b,c,c')=(" << s.v[0] << "," << s.v[1] << "," << s.v[2] << ","
           << s.v[3] << "): R=" << set_str(R[size_t(witness)])
           << " R'=" << set_str(R2[size_t(witness)]);
        rep.witness = os.str();
    }
    {
        std::ostringstream os;
        os << "diagonal (x ab-first votes, equal split, rest c-first): ";
        for (int j = 0; 2 * j <= n; ++j) {
            UniqState s{{j, j, n - 2 * j, 0}};
            int i = idx[s];
            os << "x=" << 2 * j << ": R=" << set_str(R[size_t(i)]) << " R'=" << set_str(R2[size_t(i)])
               << "; ";
        }
        rep.thresholds = os.str();
    }
    return rep;
}

RationalizationReport verify_rationalization(const Rule& rule, const ConsensusSpec& k,
                                             const ElectionDistanceSpec& d,
                                             const std::vector<Election>& space) {
    RationalizationReport rep;
    DRRule dr{k, d, Strategy::Auto, SearchBounds{}, &space};
    for (const Election& e : space) {
        std::vector<Ranking> mine;
        try {
            mine = dr_winners(dr, e);
        } catch (const TrivialityError&) {
            rep.ok = false;
            rep.divergence = "all-infinite score table at E=" + anonymize(e).str();
            return rep;
        }
        auto want = sorted_out(rule(e));
        if (sorted_out(mine) != want) {
            rep.ok = false;
            rep.divergence = "E=" + anonymize(e).str() + " DR=" + rankings_str(sorted_out(mine)) +
                             " R=" + rankings_str(want);
            return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Table 1
// ---------------------------------------------------------------------------

VotingSituation random_situation(const CandidateSet& cands, int n, std::mt19937_64& rng) {
    VotingSituation x;
    x.candidates = cands;
    for (int i = 0; i < n; ++i) {
        std::vector<Candidate> perm = cands;
        // explicit Fisher-Yates: std::shuffle is implementation-defined,
        // which would break the byte-exact --seed contract
        for (size_t j = perm.size(); j > 1; --j)
            std::swap(perm[j - 1], perm[size_t(rng() % j)]);
        x.counts[Ranking(perm)] += 1;
    }
    return x;
}

namespace {

enum class CompareMode { Winners, Rankings, Tops };

struct CellDef {
    std::string label;
    ConsensusSpec consensus;
    ElectionDistanceSpec dist;
    Rule oracle;
    CompareMode mode = CompareMode::Winners;
    bool trivial = false;
};

std::vector<CellDef> table_cells(int m) {
    using EDS = ElectionDistanceSpec;
    auto K = [&](char k) {
        switch (k) {
            case 's': return ConsensusSpec::sunam(m);
            case 'w': return ConsensusSpec::wunam();
            case 'c': return ConsensusSpec::condorcet();
            default: return ConsensusSpec::condorcet_restricted(m);
        }
    };
    auto vw = [&](RankingMetricSpec mt) { return EDS::votewise(mt, NormSpec::l1()); };
    RankingMetricSpec H = RankingMetricSpec::discrete();
    RankingMetricSpec Kd = RankingMetricSpec::kendall();
    RankingMetricSpec Sp = RankingMetricSpec::spearman();
    namespace orc = oracles;
    std::vector<CellDef> cells;
    cells.push_back({"(sunam, d_K^1) = kemeny", K('s'), vw(Kd), orc::kemeny_rule(), CompareMode::Rankings});
    cells.push_back({"(wunam, d_K^1) = borda", K('w'), vw(Kd), orc::borda_rule(), CompareMode::Winners});
    cells.push_back({"(cond, d_K^1) = dodgson", K('c'), vw(Kd), orc::dodgson_rule(), CompareMode::Winners});
    cells.push_back({"(sunam, d_H^1) = modal", K('s'), vw(H), orc::modal_rule(), CompareMode::Rankings});
    cells.push_back({"(wunam, d_H^1) = plurality", K('w'), vw(H), orc::plurality_rule(), CompareMode::Winners});
    cells.push_back({"(cond, d_H^1) = vrr", K('c'), vw(H), orc::vrr_rule(), CompareMode::Winners});
    cells.push_back({"(sunam, d_S^1) = litvak", K('s'), vw(Sp), orc::litvak_rule(), CompareMode::Rankings});
    cells.push_back({"(wunam, d_S^1) = borda", K('w'), vw(Sp), orc::borda_rule(), CompareMode::Winners});
    cells.push_back({"(cond, d_S^1) = dodgson", K('c'), vw(Sp), orc::dodgson_rule(), CompareMode::Winners});
    cells.push_back({"(sunam, d_T) = kemeny", K('s'), EDS::tournament(), orc::kemeny_rule(), CompareMode::Rankings});
    cells.push_back({"(wunam, d_T) = borda", K('w'), EDS::tournament(), orc::borda_rule(), CompareMode::Winners});
    cells.push_back({"(cond, d_T) = maximin", K('c'), EDS::tournament(), orc::maximin_rule(), CompareMode::Winners});
    cells.push_back({"(sunam, d_RT) = copeland", K('s'), EDS::reduced_tournament(), orc::copeland_rule(Rat(1, 2)), CompareMode::Tops});
    cells.push_back({"(wunam, d_RT) = copeland", K('w'), EDS::reduced_tournament(), orc::copeland_rule(Rat(1, 2)), CompareMode::Winners});
    cells.push_back({"(cond, d_RT) = copeland", K('c'), EDS::reduced_tournament(), orc::copeland_rule(Rat(1, 2)), CompareMode::Winners});
    cells.push_back({"(cond^m, d_RT) = slater", K('m'), EDS::reduced_tournament(), orc::slater_rule(), CompareMode::Rankings});
    cells.push_back({"(cond, d_ins) = maximin", K('c'), EDS::insertion(), orc::maximin_rule(), CompareMode::Winners});
    {
        CellDef t1{"(sunam, d_ins) trivial", K('s'), EDS::insertion(), Rule{}, CompareMode::Winners, true};
        CellDef t2{"(wunam, d_ins) trivial", K('w'), EDS::insertion(), Rule{}, CompareMode::Winners, true};
        cells.push_back(t1);
        cells.push_back(t2);
    }
    cells.push_back({"(sunam, d_del) = modal", K('s'), EDS::deletion(), orc::modal_rule(), CompareMode::Rankings});
    cells.push_back({"(wunam, d_del) = plurality", K('w'), EDS::deletion(), orc::plurality_rule(), CompareMode::Winners});
    cells.push_back({"(cond, d_del) = young", K('c'), EDS::deletion(), orc::young_rule(), CompareMode::Winners});
    return cells;
}

bool compare_cell(const CellDef& def, const Election& e, std::string* detail) {
    DRRule dr{def.consensus, def.dist, Strategy::Auto, SearchBounds{}, nullptr};
    std::vector<Ranking> mine;
    try {
        mine = dr_winners(dr, e);
    } catch (const TrivialityError&) {
        if (detail) *detail = "unexpected all-infinite table";
        return false;
    }
    std::sort(mine.begin(), mine.end());
    auto want = sorted_out(def.oracle(e));
    bool ok = false;
    if (def.mode == CompareMode::Tops) {
        std::set<Candidate> tops;
        for (const Ranking& r : mine) tops.insert(r.at(0));
        std::set<Candidate> wl;
        for (const Ranking& r : want) wl.insert(r.at(0));
        ok = tops == wl;
    } else {
        ok = mine == want;
    }
    if (!ok && detail)
        *detail = "E=" + anonymize(e).str() + " DR=" + rankings_str(mine) +
                  " oracle=" + rankings_str(want);
    return ok;
}

bool check_trivial_cell(const CellDef& def, const Election& e, std::string* detail) {
    DRRule dr{def.consensus, def.dist, Strategy::Auto, SearchBounds{}, nullptr};
    ConsensusDecision d = decide(def.consensus, e);
    ScoreTable t = dr_score_table(dr, e);
    if (d.member) {
        bool ok = !t.all_infinite() && t.winners() == std::vector<Ranking>{*d.choice};
        if (!ok && detail) *detail = "member election not scored 0 at its own choice";
        return ok;
    }
    bool ok = t.all_infinite();
    if (!ok && detail) *detail = "non-member election reachable under insertion";
    return ok;
}

}  // namespace

std::vector<TableCellResult> verify_table1(const TableCheckOptions& opts) {
    std::vector<Election> elections;
    for (const auto& x :
         enumerate_situations(range_candidates(opts.exhaustive_m), 1, opts.exhaustive_n_max))
        elections.push_back(canonical_election(x));
    std::mt19937_64 rng(opts.seed);
    for (int i = 0; i < opts.random_count; ++i)
        elections.push_back(
            canonical_election(random_situation(range_candidates(opts.random_m), opts.random_n, rng)));

    // cells depend on m; build per election-size lazily
    std::vector<TableCellResult> results;
    auto cell_count = table_cells(opts.exhaustive_m).size();
    results.resize(cell_count);

    int nthreads = std::max(1, opts.threads);
    for (size_t ci = 0; ci < cell_count; ++ci) {
        TableCellResult res;
        res.cell = table_cells(opts.exhaustive_m)[ci].label;
        res.trivial_expected = table_cells(opts.exhaustive_m)[ci].trivial;
        res.trivial_found = res.trivial_expected;
        std::atomic<long long> done{0};
        std::vector<std::string> fails(elections.size());
        std::vector<char> failed(elections.size(), 0);
        auto work = [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; ++i) {
                const Election& e = elections[i];
                auto cells = table_cells(int(e.candidates.size()));
                const CellDef& def = cells[ci];
                std::string detail;
                bool ok = false;
                try {
                    ok = def.trivial ? check_trivial_cell(def, e, &detail)
                                     : compare_cell(def, e, &detail);
                } catch (const std::exception& ex) {
                    detail = std::string("exception: ") + ex.what() + " at E=" +
                             anonymize(e).str();
                }
                if (!ok) {
                    failed[i] = 1;
                    fails[i] = detail;
                }
                done++;
            }
        };
        if (nthreads == 1) {
            work(0, elections.size());
        } else {
            std::vector<std::thread> pool;
            size_t chunk = (elections.size() + size_t(nthreads) - 1) / size_t(nthreads);
            for (int t = 0; t < nthreads; ++t) {
                size_t lo = size_t(t) * chunk, hi = std::min(elections.size(), lo + chunk);
                if (lo < hi) pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        res.instances = (long long)elections.size();
        for (size_t i = 0; i < elections.size(); ++i) {
            if (failed[i]) {
                if (res.trivial_expected)
                    res.trivial_found = false;
                else
                    res.match = false;
                if (res.first_mismatch.empty()) res.first_mismatch = fails[i];
            }
        }
        results[ci] = res;
    }
    return results;
}

}  // namespace distrat
