#include "distrat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace distrat {

RankingMetricSpec RankingMetricSpec::weighted(std::vector<Rat> w) {
    if (w.empty()) throw std::invalid_argument("weighted metric: empty weight vector");
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[i - 1]) throw std::invalid_argument("weighted metric: weights must be nonincreasing");
    if (!(w.front() > w.back()))
        throw std::invalid_argument("weighted metric: w1 > wm required");
    return {Kind::Weighted, std::move(w)};
}

std::string RankingMetricSpec::name() const {
    switch (kind) {
        case Kind::Discrete: return "hamming";
        case Kind::Kendall: return "kendall";
        case Kind::Spearman: return "spearman";
        case Kind::Weighted: {
            std::string s = "weighted(";
            for (size_t i = 0; i < weights.size(); ++i) {
                if (i) s += ",";
                s += weights[i].str();
            }
            return s + ")";
        }
    }
    return "?";
}

Rat ranking_distance_exact(const RankingMetricSpec& spec, const Ranking& a, const Ranking& b) {
    if (a.size() != b.size()) throw std::invalid_argument("ranking metric: size mismatch");
    const auto& oa = a.order();
    switch (spec.kind) {
        case RankingMetricSpec::Kind::Discrete:
            return Rat(a == b ? 0 : 1);
        case RankingMetricSpec::Kind::Kendall: {
            long long inv = 0;
            for (size_t i = 0; i < oa.size(); ++i)
                for (size_t j = i + 1; j < oa.size(); ++j)
                    if (b.rank_of(oa[i]) > b.rank_of(oa[j])) ++inv;
            return Rat(inv);
        }
        case RankingMetricSpec::Kind::Spearman: {
            long long sum = 0;
            for (Candidate c : oa) sum += std::llabs(a.rank_of(c) - b.rank_of(c));
            return Rat(sum);
        }
        case RankingMetricSpec::Kind::Weighted: {
            if (int(spec.weights.size()) < a.size())
                throw std::invalid_argument("weighted metric: weight vector too short");
            Rat sum(0);
            for (Candidate c : oa) {
                Rat wa = spec.weights[size_t(a.rank_of(c)) - 1];
                Rat wb = spec.weights[size_t(b.rank_of(c)) - 1];
                Rat d = wa - wb;
                if (d < Rat(0)) d = Rat(0) - d;
                sum += d;
            }
            return sum;
        }
    }
    throw std::logic_error("unreachable");
}

Score ranking_distance(const RankingMetricSpec& spec, const Ranking& a, const Ranking& b) {
    return Score(ranking_distance_exact(spec, a, b));
}

std::string NormSpec::name() const {
    if (kind == Kind::Linf) return "linf";
    return "l" + p.str();
}

static Rat rat_pow_int(const Rat& x, long long e) {
    Rat out(1);
    for (long long i = 0; i < e; ++i) out = out * x;
    return out;
}

Score norm_value(const NormSpec& norm, const std::vector<Rat>& values) {
    if (norm.kind == NormSpec::Kind::Linf) {
        Rat mx(0);
        for (const Rat& v : values)
            if (v > mx) mx = v;
        return Score(mx);
    }
    if (norm.p < Rat(1)) throw std::invalid_argument("norm: p >= 1 required");
    if (norm.p.is_integer()) {
        Rat sum(0);
        for (const Rat& v : values) sum += rat_pow_int(v, norm.p.num);
        return Score(sum);
    }
    // non-integer rational p: approximate with documented 1e-9 grid
    long double pe = (long double)norm.p.num / (long double)norm.p.den;
    long double sum = 0;
    for (const Rat& v : values) sum += powl((long double)v.to_double(), pe);
    long long q = llroundl(sum * 1e9L);
    return Score(Rat(q, 1000000000LL));
}

ElectionDistanceSpec ElectionDistanceSpec::votewise(RankingMetricSpec m, NormSpec n, bool normalized) {
    ElectionDistanceSpec d;
    d.kind = Kind::Votewise;
    d.metric = std::move(m);
    d.norm = n;
    d.normalized = normalized;
    return d;
}
ElectionDistanceSpec ElectionDistanceSpec::tournament() {
    ElectionDistanceSpec d;
    d.kind = Kind::Tournament;
    return d;
}
ElectionDistanceSpec ElectionDistanceSpec::reduced_tournament() {
    ElectionDistanceSpec d;
    d.kind = Kind::ReducedTournament;
    return d;
}
ElectionDistanceSpec ElectionDistanceSpec::insertion() {
    ElectionDistanceSpec d;
    d.kind = Kind::Insert;
    return d;
}
ElectionDistanceSpec ElectionDistanceSpec::deletion() {
    ElectionDistanceSpec d;
    d.kind = Kind::Delete;
    return d;
}
ElectionDistanceSpec ElectionDistanceSpec::campbell_nitzan(int variant, const Rule* rule,
                                                           const std::vector<Election>* space) {
    ElectionDistanceSpec d;
    d.kind = Kind::CampbellNitzan;
    d.cn_variant = variant;
    d.cn_rule = rule;
    d.cn_space = space;
    return d;
}
ElectionDistanceSpec ElectionDistanceSpec::custom_fn(
    std::string label, std::function<Score(const Election&, const Election&)> fn) {
    ElectionDistanceSpec d;
    d.kind = Kind::Custom;
    d.custom = std::move(fn);
    d.label = std::move(label);
    return d;
}
ElectionDistanceSpec ElectionDistanceSpec::scaled(Rat lambda) const {
    ElectionDistanceSpec d = *this;
    d.scale_factor = d.scale_factor * lambda;
    return d;
}

std::string ElectionDistanceSpec::name() const {
    if (!label.empty()) return label;
    std::string base;
    switch (kind) {
        case Kind::Votewise:
            base = metric.name() + "^" + norm.name() + (normalized ? "*" : "");
            break;
        case Kind::Tournament: base = "d_T"; break;
        case Kind::ReducedTournament: base = "d_RT"; break;
        case Kind::Insert: base = "d_ins"; break;
        case Kind::Delete: base = "d_del"; break;
        case Kind::CampbellNitzan: base = "cn" + std::to_string(cn_variant); break;
        case Kind::Custom: base = "custom"; break;
    }
    if (scale_factor != Rat(1)) base = scale_factor.str() + "*" + base;
    return base;
}

Score votewise_distance(const RankingMetricSpec& metric, const NormSpec& norm, bool normalized,
                        const Election& a, const Election& b) {
    // standard distance: infinite across different voter or candidate sets
    if (a.candidates != b.candidates) return Score::inf();
    if (a.profile.size() != b.profile.size()) return Score::inf();
    std::vector<Rat> dists;
    dists.reserve(a.profile.size());
    auto ita = a.profile.begin();
    auto itb = b.profile.begin();
    for (; ita != a.profile.end(); ++ita, ++itb) {
        if (ita->first != itb->first) return Score::inf();  // voter ids must agree
        dists.push_back(ranking_distance_exact(metric, ita->second, itb->second));
    }
    Score s = norm_value(norm, dists);
    if (normalized && s.is_finite() && !a.profile.empty()) {
        long long n = (long long)a.profile.size();
        if (norm.kind == NormSpec::Kind::Lp && norm.p.is_integer())
            s.value = s.value / rat_pow_int(Rat(n), norm.p.num);  // power-sum scale: /n^p
        else
            s.value = s.value / Rat(n);
    }
    return s;
}

int MajorityMatrix::index_of(Candidate c) const {
    auto it = std::lower_bound(cands.begin(), cands.end(), c);
    if (it == cands.end() || *it != c) throw std::invalid_argument("candidate not in matrix");
    return int(it - cands.begin());
}

long long MajorityMatrix::net(Candidate a, Candidate b) const {
    int i = index_of(a), j = index_of(b);
    return net_flat[size_t(i) * cands.size() + size_t(j)];
}

MajorityMatrix majority_matrix(const VotingSituation& x) {
    MajorityMatrix m;
    m.cands = x.candidates;
    size_t k = m.cands.size();
    m.net_flat.assign(k * k, 0);
    std::map<Candidate, int> idx;
    for (size_t i = 0; i < k; ++i) idx[m.cands[i]] = int(i);
    for (const auto& [r, cnt] : x.counts) {
        const auto& o = r.order();
        for (size_t i = 0; i < o.size(); ++i)
            for (size_t j = i + 1; j < o.size(); ++j) {
                int a = idx[o[i]], b = idx[o[j]];
                m.net_flat[size_t(a) * k + size_t(b)] += cnt;
                m.net_flat[size_t(b) * k + size_t(a)] -= cnt;
            }
    }
    return m;
}

MajorityMatrix majority_matrix(const Election& e) { return majority_matrix(anonymize(e)); }

static int sgn(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Score tournament_distance(const VotingSituation& a, const VotingSituation& b, bool reduced) {
    if (a.candidates != b.candidates) return Score::inf();
    MajorityMatrix ma = majority_matrix(a), mb = majority_matrix(b);
    long long total = 0;
    for (size_t i = 0; i < ma.net_flat.size(); ++i) {
        if (reduced)
            total += std::llabs(sgn(ma.net_flat[i]) - sgn(mb.net_flat[i]));
        else
            total += std::llabs(ma.net_flat[i] - mb.net_flat[i]);
    }
    return Score(Rat(total));
}

Score tournament_distance(const Election& a, const Election& b, bool reduced) {
    return tournament_distance(anonymize(a), anonymize(b), reduced);
}

// b = a restricted to a voter subset (same rankings, same candidates)?
static std::optional<long long> restriction_deficit(const Election& a, const Election& b) {
    if (a.candidates != b.candidates) return std::nullopt;
    if (b.profile.size() > a.profile.size()) return std::nullopt;
    for (const auto& [v, r] : b.profile) {
        auto it = a.profile.find(v);
        if (it == a.profile.end() || !(it->second == r)) return std::nullopt;
    }
    return (long long)a.profile.size() - (long long)b.profile.size();
}

Score deletion_distance(const Election& a, const Election& b) {
    auto d = restriction_deficit(a, b);
    return d ? Score(Rat(*d)) : Score::inf();
}

Score insertion_distance(const Election& a, const Election& b) {
    auto d = restriction_deficit(b, a);
    return d ? Score(Rat(*d)) : Score::inf();
}

static bool same_election(const Election& a, const Election& b) {
    return a.candidates == b.candidates && a.profile == b.profile;
}

static bool proper_subset(const std::vector<Ranking>& a, const std::vector<Ranking>& b) {
    if (a.size() >= b.size()) return false;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Score campbell_nitzan_distance(int variant, const Rule& rule, const Election& a, const Election& b,
                               const std::vector<Election>* space) {
    auto ra = rule(a);
    auto rb = rule(b);
    bool one_step = (ra.size() == 1 && proper_subset(ra, rb)) ||
                    (rb.size() == 1 && proper_subset(rb, ra));
    if (variant == 1) {
        if (same_election(a, b)) return Score(0);
        if (one_step) return Score(1);
        return Score(2);
    }
    if (variant == 2) {
        if (same_election(a, b) || (ra == rb && ra.size() == 1)) return Score(0);
        if (one_step) return Score(1);
        return Score(2);
    }
    if (variant != 3) throw std::invalid_argument("campbell-nitzan variant must be 1, 2 or 3");
    if (!space) throw std::invalid_argument("campbell-nitzan variant 3 needs a finite space");
    // unweighted shortest path where edges are the one-step pairs
    int src = -1, dst = -1;
    for (size_t i = 0; i < space->size(); ++i) {
        if (same_election((*space)[i], a)) src = int(i);
        if (same_election((*space)[i], b)) dst = int(i);
    }
    if (src < 0 || dst < 0) throw std::invalid_argument("campbell-nitzan variant 3: endpoints not in space");
    if (src == dst) return Score(0);
    std::vector<std::vector<Ranking>> outs(space->size());
    for (size_t i = 0; i < space->size(); ++i) outs[i] = rule((*space)[i]);
    std::vector<int> dist(space->size(), -1);
    std::deque<int> q;
    dist[size_t(src)] = 0;
    q.push_back(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (u == dst) return Score(Rat(dist[size_t(u)]));
        for (size_t v = 0; v < space->size(); ++v) {
            if (dist[v] >= 0) continue;
            bool edge = (outs[size_t(u)].size() == 1 && proper_subset(outs[size_t(u)], outs[v])) ||
                        (outs[v].size() == 1 && proper_subset(outs[v], outs[size_t(u)]));
            if (edge) {
                dist[v] = dist[size_t(u)] + 1;
                q.push_back(int(v));
            }
        }
    }
    return Score::inf();
}

Score ElectionDistanceSpec::evaluate(const Election& a, const Election& b) const {
    Score s;
    switch (kind) {
        case Kind::Votewise: s = votewise_distance(metric, norm, normalized, a, b); break;
        case Kind::Tournament: s = tournament_distance(a, b, false); break;
        case Kind::ReducedTournament: s = tournament_distance(a, b, true); break;
        case Kind::Insert: s = insertion_distance(a, b); break;
        case Kind::Delete: s = deletion_distance(a, b); break;
        case Kind::CampbellNitzan:
            if (!cn_rule) throw std::invalid_argument("campbell-nitzan distance needs a rule");
            s = campbell_nitzan_distance(cn_variant, *cn_rule, a, b, cn_space);
            break;
        case Kind::Custom: s = custom(a, b); break;
    }
    if (s.is_finite() && scale_factor != Rat(1)) s.value = s.value * scale_factor;
    return s;
}

std::string DistanceClassification::classify() const {
    if (!is_hemimetric()) return "not-a-distance";
    if (is_metric()) return "metric";
    if (is_pseudometric()) return "pseudometric";
    if (is_quasimetric()) return "quasimetric";
    return "hemimetric";
}

DistanceClassification verify_hemimetric_axioms(
    const std::function<Score(const Election&, const Election&)>& d,
    const std::vector<Election>& space) {
    DistanceClassification out;
    size_t n = space.size();
    std::vector<Score> m(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i * n + j] = d(space[i], space[j]);
    for (size_t i = 0; i < n && out.zero_on_self; ++i)
        if (!(m[i * n + i] == Score(0))) {
            out.zero_on_self = false;
            out.witness = "d(x,x) != 0 at index " + std::to_string(i);
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (out.symmetric && !(m[i * n + j] == m[j * n + i])) {
                out.symmetric = false;
                if (out.witness.empty())
                    out.witness = "asymmetric pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
            if (out.separates && i != j && m[i * n + j] == Score(0)) {
                out.separates = false;
                if (out.witness.empty())
                    out.witness = "zero distance between distinct (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
            }
        }
    for (size_t i = 0; i < n && out.triangle; ++i)
        for (size_t j = 0; j < n && out.triangle; ++j)
            for (size_t k = 0; k < n; ++k) {
                if (m[i * n + j].infinite || m[j * n + k].infinite) continue;
                if (m[i * n + k] > m[i * n + j] + m[j * n + k]) {
                    out.triangle = false;
                    out.witness = "triangle violated at (" + std::to_string(i) + "," +
                                  std::to_string(j) + "," + std::to_string(k) + ")";
                    break;
                }
            }
    return out;
}

}  // namespace distrat
