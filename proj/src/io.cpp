#include "distrat/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace distrat {

Candidate NameTable::id_of(const std::string& s) const {
    auto it = ids.find(s);
    if (it == ids.end()) throw std::invalid_argument("unknown candidate name: " + s);
    return it->second;
}

std::string NameTable::ranking_str(const Ranking& r, const std::string& sep) const {
    std::string out;
    for (int i = 0; i < r.size(); ++i) {
        if (i) out += sep;
        out += name_of(r.at(i));
    }
    return out;
}

NameTable default_names(int m) {
    NameTable t;
    for (int i = 0; i < m; ++i) {
        std::string n;
        if (i < 26)
            n = std::string(1, char('a' + i));
        else
            n = "c" + std::to_string(i);
        t.names.push_back(n);
        t.ids[n] = i;
    }
    return t;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_ranking(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == '>' || ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

ParsedElection parse_election(const std::string& text) {
    ParsedElection pe;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool have_header = false;
    Voter next_voter = 1;
    long long anon_voter = 0;
    std::map<std::string, Voter> voter_ids;
    std::vector<std::pair<Voter, Ranking>> profile;

    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
        if (trimmed.empty()) continue;
        auto colon = trimmed.find(':');
        if (colon == std::string::npos) throw ParseError(ln, "expected '<lhs>: <rhs>'");
        std::string lhs = trimmed.substr(0, colon);
        std::string rhs = trimmed.substr(colon + 1);
        lhs.erase(lhs.find_last_not_of(" \t") + 1);

        if (lhs == "candidates") {
            if (have_header) throw ParseError(ln, "duplicate candidates header");
            have_header = true;
            for (const std::string& nm : split_ws(rhs)) {
                if (pe.names.ids.count(nm)) throw ParseError(ln, "duplicate candidate: " + nm);
                Candidate id = Candidate(pe.names.names.size());
                pe.names.names.push_back(nm);
                pe.names.ids[nm] = id;
            }
            if (pe.names.names.empty()) throw ParseError(ln, "empty candidate list");
            pe.election.candidates = range_candidates(int(pe.names.names.size()));
            continue;
        }
        if (!have_header) throw ParseError(ln, "missing 'candidates:' header");

        auto toks = split_ranking(rhs);
        if (toks.size() != pe.names.names.size())
            throw ParseError(ln, toks.size() < pe.names.names.size() ? "incomplete ranking"
                                                                     : "too many candidates in ranking");
        std::vector<Candidate> order;
        std::vector<char> seen(pe.names.names.size(), 0);
        for (const std::string& nm : toks) {
            auto it = pe.names.ids.find(nm);
            if (it == pe.names.ids.end()) throw ParseError(ln, "unknown candidate: " + nm);
            if (seen[size_t(it->second)]) throw ParseError(ln, "duplicate candidate in ranking: " + nm);
            seen[size_t(it->second)] = 1;
            order.push_back(it->second);
        }
        Ranking r(order);

        if (all_digits(lhs)) {
            long long count;
            try {
                count = std::stoll(lhs);
            } catch (...) {
                throw ParseError(ln, "malformed count: " + lhs);
            }
            if (count < 1) throw ParseError(ln, "count must be positive");
            for (long long i = 0; i < count; ++i) {
                ++anon_voter;
                profile.emplace_back(Voter(-1), r);  // id assigned later
            }
        } else {
            pe.identified = true;
            if (voter_ids.count(lhs)) throw ParseError(ln, "duplicate voter id: " + lhs);
            Voter v = next_voter++;
            voter_ids[lhs] = v;
            pe.voter_names[v] = lhs;
            profile.emplace_back(v, r);
        }
    }
    if (!have_header) throw ParseError(ln == 0 ? 1 : ln, "missing 'candidates:' header");
    if (profile.empty()) throw ParseError(ln, "no ballots");
    if (pe.identified && anon_voter > 0) throw ParseError(ln, "mixed identified and anonymous ballots");

    Voter next = pe.identified ? next_voter : 1;
    for (auto& [v, r] : profile) {
        Voter id = (v < 0) ? next++ : v;
        pe.election.profile[id] = r;
    }
    pe.election.validate();
    return pe;
}

std::string serialize(const VotingSituation& x, const NameTable& names) {
    std::string out = "candidates:";
    for (Candidate c : x.candidates) out += " " + names.name_of(c);
    out += "\n";
    for (const auto& [r, c] : x.counts)
        out += std::to_string(c) + ": " + names.ranking_str(r) + "\n";
    return out;
}

std::string serialize(const ParsedElection& pe) {
    if (!pe.identified) return serialize(anonymize(pe.election), pe.names);
    std::string out = "candidates:";
    for (Candidate c : pe.election.candidates) out += " " + pe.names.name_of(c);
    out += "\n";
    for (const auto& [v, r] : pe.election.profile) {
        auto it = pe.voter_names.find(v);
        std::string vn = it == pe.voter_names.end() ? "v" + std::to_string(v) : it->second;
        out += vn + ": " + pe.names.ranking_str(r) + "\n";
    }
    return out;
}

std::string score_str(const Score& s) { return s.str(); }

Score parse_score(const std::string& s) {
    if (s == "inf") return Score::inf();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Score(Rat(std::stoll(s)));
    return Score(Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))));
}

}  // namespace distrat
