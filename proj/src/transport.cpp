#include "distrat/transport.hpp"

#include <algorithm>
#include <set>

namespace distrat {

// JV-style shortest augmenting path assignment with exact rationals.
AssignmentResult hungarian_min_cost(const std::vector<std::vector<Rat>>& cost) {
    int n = int(cost.size());
    for (const auto& row : cost)
        if (int(row.size()) != n) throw std::invalid_argument("hungarian: matrix not square");
    if (n == 0) return {Rat(0), {}};
    Rat big(0);
    for (const auto& row : cost)
        for (const Rat& v : row) big += (v < Rat(0) ? Rat(0) - v : v);
    big += Rat(1);

    // 1-based with virtual column 0
    std::vector<Rat> u(size_t(n) + 1, Rat(0)), v(size_t(n) + 1, Rat(0));
    std::vector<int> p(size_t(n) + 1, 0), way(size_t(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<Rat> minv(size_t(n) + 1, big);
        std::vector<char> used(size_t(n) + 1, false);
        do {
            used[size_t(j0)] = true;
            int i0 = p[size_t(j0)], j1 = 0;
            Rat delta = big;
            for (int j = 1; j <= n; ++j) {
                if (used[size_t(j)]) continue;
                Rat cur = cost[size_t(i0) - 1][size_t(j) - 1] - u[size_t(i0)] - v[size_t(j)];
                if (cur < minv[size_t(j)]) {
                    minv[size_t(j)] = cur;
                    way[size_t(j)] = j0;
                }
                if (minv[size_t(j)] < delta) {
                    delta = minv[size_t(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[size_t(j)]) {
                    u[size_t(p[size_t(j)])] += delta;
                    v[size_t(j)] -= delta;
                } else {
                    minv[size_t(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[size_t(j0)] != 0);
        do {
            int j1 = way[size_t(j0)];
            p[size_t(j0)] = p[size_t(j1)];
            j0 = j1;
        } while (j0);
    }
    AssignmentResult res;
    res.match.assign(size_t(n), -1);
    res.total = Rat(0);
    for (int j = 1; j <= n; ++j) {
        if (p[size_t(j)] == 0) continue;
        res.match[size_t(p[size_t(j)]) - 1] = j - 1;
        res.total += cost[size_t(p[size_t(j)]) - 1][size_t(j) - 1];
    }
    return res;
}

namespace {

// Kuhn's matching restricted to edges with cost <= threshold.
bool perfect_matching_under(const std::vector<std::vector<Rat>>& cost, const Rat& thr) {
    int n = int(cost.size());
    std::vector<int> match_col(size_t(n), -1);
    std::vector<char> seen;
    std::function<bool(int)> try_row = [&](int r) -> bool {
        for (int c = 0; c < n; ++c) {
            if (seen[size_t(c)] || cost[size_t(r)][size_t(c)] > thr) continue;
            seen[size_t(c)] = true;
            if (match_col[size_t(c)] < 0 || try_row(match_col[size_t(c)])) {
                match_col[size_t(c)] = r;
                return true;
            }
        }
        return false;
    };
    for (int r = 0; r < n; ++r) {
        seen.assign(size_t(n), false);
        if (!try_row(r)) return false;
    }
    return true;
}

}  // namespace

Rat bottleneck_assignment(const std::vector<std::vector<Rat>>& cost) {
    std::set<Rat> values;
    for (const auto& row : cost)
        for (const Rat& v : row) values.insert(v);
    for (const Rat& thr : values)
        if (perfect_matching_under(cost, thr)) return thr;
    throw std::logic_error("bottleneck: no perfect matching at max threshold");
}

Score quotient_votewise_distance(const RankingMetricSpec& metric, const NormSpec& norm,
                                 const VotingSituation& x, const VotingSituation& y,
                                 bool normalized,
                                 std::vector<std::pair<Ranking, Ranking>>* matching) {
    if (x.candidates != y.candidates) return Score::inf();
    if (x.total() != y.total()) return Score::inf();
    std::vector<Ranking> rows, cols;
    for (const auto& [r, c] : x.counts)
        for (long long i = 0; i < c; ++i) rows.push_back(r);
    for (const auto& [r, c] : y.counts)
        for (long long i = 0; i < c; ++i) cols.push_back(r);
    int n = int(rows.size());
    if (n == 0) return Score(0);

    std::vector<std::vector<Rat>> base(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            base[size_t(i)][size_t(j)] = ranking_distance_exact(metric, rows[size_t(i)], cols[size_t(j)]);

    if (norm.kind == NormSpec::Kind::Linf) {
        Rat b = bottleneck_assignment(base);
        if (matching) matching->clear();
        Score s(b);
        if (normalized) s.value = s.value / Rat(n);
        return s;
    }
    if (!norm.integer_p())
        throw std::invalid_argument("quotient votewise distance supports integer p and linf");
    long long p = norm.p.num;
    std::vector<std::vector<Rat>> powered(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(1)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v(1);
            for (long long t = 0; t < p; ++t) v = v * base[size_t(i)][size_t(j)];
            powered[size_t(i)][size_t(j)] = v;
        }
    AssignmentResult res = hungarian_min_cost(powered);
    if (matching) {
        matching->clear();
        for (int i = 0; i < n; ++i) matching->push_back({rows[size_t(i)], cols[size_t(res.match[size_t(i)])]});
    }
    Score s(res.total);
    if (normalized) {
        Rat np(1);
        for (long long t = 0; t < p; ++t) np = np * Rat(n);
        s.value = s.value / np;
    }
    return s;
}

QuotientSpace build_quotient(const std::vector<Election>& elements,
                             const std::function<bool(const Election&, const Election&)>& equiv) {
    QuotientSpace q;
    q.elements = elements;
    q.class_of.assign(elements.size(), -1);
    for (size_t i = 0; i < elements.size(); ++i) {
        if (q.class_of[i] >= 0) continue;
        int id = q.num_classes++;
        q.class_of[i] = id;
        for (size_t j = i + 1; j < elements.size(); ++j)
            if (q.class_of[j] < 0 && equiv(elements[i], elements[j])) q.class_of[j] = id;
    }
    return q;
}

Score tilde_distance(const QuotientSpace& q,
                     const std::function<Score(const Election&, const Election&)>& d, int cx,
                     int cy) {
    Score best = Score::inf();
    for (size_t i = 0; i < q.elements.size(); ++i) {
        if (q.class_of[i] != cx) continue;
        for (size_t j = 0; j < q.elements.size(); ++j) {
            if (q.class_of[j] != cy) continue;
            Score s = d(q.elements[i], q.elements[j]);
            if (s < best) best = s;
        }
    }
    return best;
}

Score quotient_path_distance(const QuotientSpace& q,
                             const std::function<Score(const Election&, const Election&)>& d,
                             int cx, int cy) {
    int K = q.num_classes;
    std::vector<std::vector<Score>> w(size_t(K), std::vector<Score>(size_t(K), Score::inf()));
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) w[size_t(a)][size_t(b)] = tilde_distance(q, d, a, b);
    // Floyd-Warshall over the chained-leg weights
    std::vector<std::vector<Score>> dist = w;
    for (int k = 0; k < K; ++k)
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b) {
                Score via = dist[size_t(a)][size_t(k)] + dist[size_t(k)][size_t(b)];
                if (via < dist[size_t(a)][size_t(b)]) dist[size_t(a)][size_t(b)] = via;
            }
    return dist[size_t(cx)][size_t(cy)];
}

SimplicityReport is_simple(const QuotientSpace& q,
                           const std::function<Score(const Election&, const Election&)>& d) {
    SimplicityReport rep;
    for (int a = 0; a < q.num_classes; ++a)
        for (int b = 0; b < q.num_classes; ++b) {
            Score t = tilde_distance(q, d, a, b);
            Score p = quotient_path_distance(q, d, a, b);
            if (!(t == p)) {
                rep.simple = false;
                rep.cx = a;
                rep.cy = b;
                rep.tilde = t;
                rep.path = p;
                return rep;
            }
        }
    return rep;
}

}  // namespace distrat
