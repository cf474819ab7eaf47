// distrat: distance-rationalizability toolkit for voting rules.
//
// Subcommands: winners, score, check, verify-table, emd, counterexample,
// enumerate. Exit codes: 0 ok/holds, 1 violated or mismatch, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "distrat/axioms.hpp"
#include "distrat/core.hpp"
#include "distrat/engine.hpp"
#include "distrat/io.hpp"
#include "distrat/metrics.hpp"
#include "distrat/oracles.hpp"
#include "distrat/transport.hpp"

using namespace distrat;
using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

ConsensusSpec parse_consensus(const std::string& s, int m) {
    if (s == "sunam") return ConsensusSpec::sunam(m);
    if (s.rfind("sunam:", 0) == 0) return ConsensusSpec::sunam_s(std::stoi(s.substr(6)));
    if (s == "wunam") return ConsensusSpec::wunam();
    if (s == "maj") return ConsensusSpec::maj(1);
    if (s.rfind("maj:", 0) == 0) return ConsensusSpec::maj(std::stoi(s.substr(4)));
    if (s.rfind("qmaj:", 0) == 0) {
        auto rest = s.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("qmaj:<alpha>:<s>");
        return ConsensusSpec::qualified_majority(parse_rat(rest.substr(0, colon)),
                                                 std::stoi(rest.substr(colon + 1)));
    }
    if (s == "cond") return ConsensusSpec::condorcet();
    if (s.rfind("cond:", 0) == 0) return ConsensusSpec::condorcet(parse_rat(s.substr(5)));
    if (s == "cond-m") return ConsensusSpec::condorcet_restricted(m);
    if (s.rfind("srestrict:", 0) == 0) {
        auto rest = s.substr(10);
        auto colon = rest.rfind(':');
        if (colon == std::string::npos) throw std::invalid_argument("srestrict:<base>:<s>");
        ConsensusSpec base = parse_consensus(rest.substr(0, colon), m);
        return ConsensusSpec::s_restriction_of(base, std::stoi(rest.substr(colon + 1)));
    }
    if (s.rfind("pinned:", 0) == 0) return ConsensusSpec::pinned_unanimity(std::stoi(s.substr(7)));
    throw std::invalid_argument("unknown consensus: " + s);
}

ElectionDistanceSpec parse_distance(const std::string& metric, const std::string& norm,
                                    const std::string& p, bool normalized) {
    if (metric == "tournament") return ElectionDistanceSpec::tournament();
    if (metric == "rtournament") return ElectionDistanceSpec::reduced_tournament();
    if (metric == "insert") return ElectionDistanceSpec::insertion();
    if (metric == "delete") return ElectionDistanceSpec::deletion();
    RankingMetricSpec ms;
    if (metric == "hamming" || metric == "discrete")
        ms = RankingMetricSpec::discrete();
    else if (metric == "kendall" || metric == "swap")
        ms = RankingMetricSpec::kendall();
    else if (metric == "spearman" || metric == "footrule")
        ms = RankingMetricSpec::spearman();
    else if (metric.rfind("weighted:", 0) == 0) {
        std::vector<Rat> w;
        std::stringstream ss(metric.substr(9));
        std::string tok;
        while (std::getline(ss, tok, ',')) w.push_back(parse_rat(tok));
        ms = RankingMetricSpec::weighted(std::move(w));
    } else {
        throw std::invalid_argument("unknown metric: " + metric);
    }
    NormSpec ns;
    if (norm == "l1")
        ns = NormSpec::l1();
    else if (norm == "l2")
        ns = NormSpec::lp(Rat(2));
    else if (norm == "linf")
        ns = NormSpec::linf();
    else if (norm == "lp")
        ns = NormSpec::lp(parse_rat(p));
    else
        throw std::invalid_argument("unknown norm: " + norm);
    return ElectionDistanceSpec::votewise(ms, ns, normalized);
}

std::string witness_str(const std::optional<Election>& w, const NameTable& names) {
    if (!w || w->profile.empty()) return "";
    VotingSituation x = anonymize(*w);
    std::string out = "{";
    bool first = true;
    for (const auto& [r, c] : x.counts) {
        if (!first) out += ", ";
        first = false;
        out += names.ranking_str(r) + ":" + std::to_string(c);
    }
    return out + "}";
}

// approximate decimal root for human-readable lp scores
std::string approx_root(const Score& s, const NormSpec& norm) {
    if (!s.is_finite() || !norm.integer_p() || norm.p.num < 2) return "";
    double root = std::pow(s.value.to_double(), 1.0 / double(norm.p.num));
    std::ostringstream os;
    os << " (~" << root << ")";
    return os.str();
}

int cmd_winners(const std::string& input, const std::string& consensus, const std::string& metric,
                const std::string& norm, const std::string& p, bool normalized, int s_out,
                const std::string& format, bool score_only, const std::string& outcome) {
    ParsedElection pe = parse_election(read_input(input));
    int m = pe.election.num_candidates();
    DRRule rule{parse_consensus(consensus, m), parse_distance(metric, norm, p, normalized),
                Strategy::Auto, SearchBounds{}, nullptr};
    ScoreTable table = dr_score_table(rule, pe.election);

    if (score_only) {
        Ranking want;
        {
            std::vector<Candidate> o;
            std::stringstream ss(outcome);
            std::string tok;
            while (std::getline(ss, tok, '>')) o.push_back(pe.names.id_of(tok));
            want = Ranking(o);
        }
        const ScoreEntry& entry = table.entry(want);
        if (format == "json") {
            json j{{"outcome", pe.names.ranking_str(entry.outcome)},
                   {"score", entry.score.str()},
                   {"provenance", entry.provenance}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "score " << pe.names.ranking_str(entry.outcome) << " = "
                      << entry.score.str() << approx_root(entry.score, rule.distance.norm)
                      << "\n";
            std::string w = witness_str(entry.witness, pe.names);
            if (!w.empty()) std::cout << "witness: " << w << "\n";
        }
        return 0;
    }

    auto winners = table.winners();
    if (table.all_infinite()) {
        std::cout << "trivial: every outcome is at infinite distance\n";
        return 1;
    }
    if (format == "json") {
        json j;
        j["rule"] = rule.name();
        for (const auto& w : winners) j["winners"].push_back(pe.names.ranking_str(w));
        for (const auto& e : table.entries) {
            json row{{"outcome", pe.names.ranking_str(e.outcome)},
                     {"score", e.score.str()},
                     {"provenance", e.provenance}};
            std::string w = witness_str(e.witness, pe.names);
            if (!w.empty()) row["witness"] = w;
            j["table"].push_back(row);
        }
        std::cout << j.dump(2) << "\n";
    } else if (format == "tsv") {
        for (const auto& e : table.entries)
            std::cout << pe.names.ranking_str(e.outcome) << "\t" << e.score.str() << "\t"
                      << e.provenance << "\n";
    } else {
        std::cout << "rule: " << rule.name() << "\nwinners:";
        for (const auto& w : winners) std::cout << " " << pe.names.ranking_str(w);
        std::cout << "\nscores:";
        for (const auto& e : table.entries)
            std::cout << " " << pe.names.ranking_str(e.outcome) << "=" << e.score.str();
        std::cout << "\n";
        for (const auto& e : table.entries) {
            std::string w = witness_str(e.witness, pe.names);
            if (!w.empty())
                std::cout << "  minimizer for " << pe.names.ranking_str(e.outcome) << ": " << w
                          << "\n";
        }
    }
    return 0;
}

Rule parse_rule(const std::string& spec, int m) {
    if (spec.rfind("dr:", 0) == 0) {
        // dr:<consensus>:<metric>:<norm>[:normalized]
        std::vector<std::string> parts;
        std::stringstream ss(spec.substr(3));
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() < 3) throw std::invalid_argument("dr:<consensus>:<metric>:<norm>");
        bool normalized = parts.size() > 3 && parts[3] == "normalized";
        DRRule r{parse_consensus(parts[0], m), parse_distance(parts[1], parts[2], "1", normalized),
                 Strategy::Auto, SearchBounds{}, nullptr};
        return dr_rule(spec, r);
    }
    return oracles::rule_by_name(spec);
}

int cmd_check(const std::string& rule_name, const std::string& axiom, int m, int n_max, int k_max,
              unsigned seed, const std::string& format) {
    Rule rule = parse_rule(rule_name, m);
    auto space = enumerate_situations(range_candidates(m), 1, n_max);
    AxiomReport rep;
    if (axiom == "anonymity")
        rep = check_anonymity(rule, space, seed);
    else if (axiom == "neutrality")
        rep = check_neutrality(rule, space);
    else if (axiom == "reversal")
        rep = check_reversal_symmetry(rule, space);
    else if (axiom == "homogeneity")
        rep = check_homogeneity(rule, space, k_max);
    else if (axiom == "consistency") {
        std::vector<std::pair<VotingSituation, VotingSituation>> pairs;
        for (const auto& x : space)
            for (const auto& y : space)
                if (x.total() + y.total() <= n_max + 2) pairs.emplace_back(x, y);
        rep = check_consistency(rule, pairs);
    } else if (axiom == "continuity")
        rep = check_continuity_space(rule, space, k_max);
    else
        throw std::invalid_argument("unknown axiom: " + axiom);

    if (format == "json") {
        json j{{"rule", rule.name},
               {"axiom", rep.axiom},
               {"verdict", verdict_str(rep.verdict)},
               {"checked", rep.checked},
               {"witness", rep.witness}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rule.name << " / " << rep.axiom << ": " << verdict_str(rep.verdict) << " ("
                  << rep.checked << " instances)";
        if (!rep.witness.empty()) std::cout << "\n  " << rep.witness;
        std::cout << "\n";
    }
    return rep.verdict == Verdict::Holds ? 0 : 1;
}

int cmd_verify_table(const std::string& bound, int random_count, unsigned seed, int threads,
                     const std::string& format) {
    TableCheckOptions opts;
    // bound format mXnY
    auto npos = bound.find('n');
    if (bound.empty() || bound[0] != 'm' || npos == std::string::npos)
        throw std::invalid_argument("--bound looks like m3n4");
    opts.exhaustive_m = std::stoi(bound.substr(1, npos - 1));
    opts.exhaustive_n_max = std::stoi(bound.substr(npos + 1));
    opts.random_count = random_count;
    opts.seed = seed;
    opts.threads = threads;
    auto results = verify_table1(opts);
    bool all_ok = true;
    json j = json::array();
    for (const auto& cell : results) {
        bool ok = cell.trivial_expected ? cell.trivial_found : cell.match;
        all_ok &= ok;
        if (format == "json") {
            j.push_back({{"cell", cell.cell},
                         {"ok", ok},
                         {"trivial", cell.trivial_expected},
                         {"instances", cell.instances},
                         {"mismatch", cell.first_mismatch}});
        } else {
            std::cout << cell.cell << ": "
                      << (cell.trivial_expected ? (cell.trivial_found ? "trivial" : "NOT-trivial")
                                                : (cell.match ? "match" : "MISMATCH"))
                      << " [" << cell.instances << "]";
            if (!ok) std::cout << " " << cell.first_mismatch;
            std::cout << "\n";
        }
    }
    if (format == "json") std::cout << j.dump(2) << "\n";
    std::cout << (all_ok ? "all cells match" : "table check FAILED") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_emd(const std::string& input1, const std::string& input2, const std::string& metric,
            const std::string& norm, const std::string& p, const std::string& format) {
    ParsedElection a = parse_election(read_input(input1));
    ParsedElection b = parse_election(read_input(input2));
    auto d = parse_distance(metric, norm, p, false);
    std::vector<std::pair<Ranking, Ranking>> matching;
    Score s = quotient_votewise_distance(d.metric, d.norm, anonymize(a.election),
                                         anonymize(b.election), false, &matching);
    if (format == "json") {
        json j{{"distance", s.str()}};
        for (auto& [r1, r2] : matching)
            j["matching"].push_back({a.names.ranking_str(r1), a.names.ranking_str(r2)});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "quotient distance = " << s.str() << approx_root(s, d.norm) << "\n";
        for (auto& [r1, r2] : matching)
            std::cout << "  " << a.names.ranking_str(r1) << " -> " << a.names.ranking_str(r2)
                      << "\n";
    }
    return 0;
}

int cmd_counterexample(const std::string& which, int k, int n) {
    if (which == "fishburn") {
        Election f = fishburn_election(k);
        NameTable names;
        for (int i = 1; i <= 7; ++i) {
            names.names.push_back("a" + std::to_string(i));
            names.ids["a" + std::to_string(i)] = i - 1;
        }
        names.names.push_back("x");
        names.ids["x"] = 7;
        std::cout << "fishburn election, k=" << k << " (" << f.num_voters() << " voters)\n";
        std::cout << "dodgson scores:";
        for (Candidate c : f.candidates)
            std::cout << " " << names.name_of(c) << "=" << dodgson_score(f, c).str();
        std::cout << "\n";
        DRRule dodgson{ConsensusSpec::condorcet(),
                       ElectionDistanceSpec::votewise(RankingMetricSpec::kendall(), NormSpec::l1()),
                       Strategy::Auto, SearchBounds{}, nullptr};
        std::cout << "winners:";
        for (const auto& w : dr_winners(dodgson, f)) std::cout << " " << names.name_of(w.at(0));
        std::cout << "\n";
        return 0;
    }
    if (which == "vrr-limits") {
        std::cout << "voter replacement rule distances on the fishburn election\n";
        for (int kk : {1, k}) {
            Election f = fishburn_election(kk);
            Score vx = condorcet_votewise_score(anonymize(f), fishburn_x(),
                                                RankingMetricSpec::discrete(), NormSpec::l1(),
                                                false, SearchBounds{});
            Score va = condorcet_votewise_score(anonymize(f), 0, RankingMetricSpec::discrete(),
                                                NormSpec::l1(), false, SearchBounds{});
            std::cout << "k=" << kk << ": d_H(E,COND_x)=" << vx.str() << " d_H(E,COND_a1)="
                      << va.str() << " per-unit x=" << vx.value.to_double() / kk
                      << " a1=" << va.value.to_double() / kk << "\n";
        }
        return 0;
    }
    if (which == "cmp-failure") {
        auto rep = cmp_failure_example();
        std::cout << rep.text << "\n" << (rep.ok ? "values as expected" : "UNEXPECTED VALUES")
                  << "\n";
        return rep.ok ? 0 : 1;
    }
    if (which == "uniqueness") {
        auto rep = uniqueness_counterexample(n);
        std::cout << "n=" << n << ": R" << (rep.r_ne_rprime ? " != " : " == ") << "R'\n";
        if (!rep.witness.empty()) std::cout << "witness: " << rep.witness << "\n";
        std::cout << rep.thresholds << "\n";
        return rep.r_ne_rprime ? 0 : 1;
    }
    throw std::invalid_argument("unknown counterexample: " + which);
}

int cmd_enumerate(int m, int n, const std::string& format) {
    NameTable names = default_names(m);
    long long count = 0;
    SituationEnumerator en(range_candidates(m), n);
    VotingSituation x;
    while (en.next(x)) {
        ++count;
        if (format != "count") {
            bool first = true;
            for (const auto& [r, c] : x.counts) {
                if (!first) std::cout << " ";
                first = false;
                std::cout << names.ranking_str(r) << ":" << c;
            }
            std::cout << "\n";
        }
    }
    std::cout << count << " situations\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance rationalizability of voting rules"};
    app.require_subcommand(1);

    std::string input, input2, consensus = "wunam", metric = "kendall", norm = "l1", p = "1";
    std::string format = "text", outcome, rule_name = "borda", axiom = "anonymity";
    std::string bound = "m3n4", which;
    bool normalized = false;
    int s_out = 1, m = 3, n_max = 3, k_max = 20, k = 1, n = 4, threads = 1, random_count = 200;
    unsigned seed = 42;
    if (const char* t = std::getenv("DISTRAT_THREADS")) threads = std::max(1, std::atoi(t));

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "text, json or tsv");
    };

    CLI::App* winners = app.add_subcommand("winners", "DR winners and score table");
    winners->add_option("--input,-i", input, "election file (default stdin)");
    winners->add_option("--consensus", consensus, "sunam, wunam, maj, qmaj:a:s, cond, cond:a, cond-m, srestrict:b:s");
    winners->add_option("--metric", metric, "hamming, kendall, spearman, weighted:w1,w2,.., tournament, rtournament, insert, delete");
    winners->add_option("--norm", norm, "l1, l2, lp, linf");
    winners->add_option("--p", p, "exponent for --norm lp");
    winners->add_flag("--normalized", normalized, "divide by the voter count");
    winners->add_option("--s", s_out, "output size for ranked output");
    add_common(winners);

    CLI::App* score = app.add_subcommand("score", "DR score of one outcome");
    score->add_option("--input,-i", input);
    score->add_option("--consensus", consensus);
    score->add_option("--metric", metric);
    score->add_option("--norm", norm);
    score->add_option("--p", p);
    score->add_flag("--normalized", normalized);
    score->add_option("--outcome", outcome, "ranking like a>b or a")->required();
    add_common(score);

    CLI::App* check = app.add_subcommand("check", "axiom checks");
    check->add_option("--rule", rule_name, "oracle name or dr:<consensus>:<metric>:<norm>");
    check->add_option("--axiom", axiom, "anonymity, neutrality, reversal, homogeneity, consistency, continuity");
    check->add_option("--m", m);
    check->add_option("--n-max", n_max);
    check->add_option("--k-max", k_max);
    check->add_option("--seed", seed);
    add_common(check);

    CLI::App* vt = app.add_subcommand("verify-table", "replay the table-1 grand check");
    vt->add_option("--bound", bound, "exhaustive bound, e.g. m3n4");
    vt->add_option("--random", random_count, "number of random m=4 n=4 elections");
    vt->add_option("--seed", seed);
    vt->add_option("--threads", threads, "worker cap (also DISTRAT_THREADS)");
    add_common(vt);

    CLI::App* emd = app.add_subcommand("emd", "quotient (earth mover) distance");
    emd->add_option("--input,-i", input)->required();
    emd->add_option("--input2,-j", input2)->required();
    emd->add_option("--metric", metric);
    emd->add_option("--norm", norm);
    emd->add_option("--p", p);
    add_common(emd);

    CLI::App* ce = app.add_subcommand("counterexample", "replay a constructed counterexample");
    ce->add_option("which", which, "fishburn, vrr-limits, cmp-failure, uniqueness")->required();
    ce->add_option("--k", k, "scale factor");
    ce->add_option("--n", n, "voter count for uniqueness");
    add_common(ce);

    CLI::App* en = app.add_subcommand("enumerate", "enumerate voting situations");
    en->add_option("--m", m)->required();
    en->add_option("--n", n)->required();
    add_common(en);

    CLI11_PARSE(app, argc, argv);

    try {
        if (winners->parsed())
            return cmd_winners(input, consensus, metric, norm, p, normalized, s_out, format, false, "");
        if (score->parsed())
            return cmd_winners(input, consensus, metric, norm, p, normalized, s_out, format, true, outcome);
        if (check->parsed()) return cmd_check(rule_name, axiom, m, n_max, k_max, seed, format);
        if (vt->parsed()) return cmd_verify_table(bound, random_count, seed, threads, format);
        if (emd->parsed()) return cmd_emd(input, input2, metric, norm, p, format);
        if (ce->parsed()) return cmd_counterexample(which, k, n);
        if (en->parsed()) return cmd_enumerate(m, n, format);
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
