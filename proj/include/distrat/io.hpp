#pragma once

#include <map>
#include <string>
#include <vector>

#include "distrat/core.hpp"
#include "distrat/engine.hpp"
#include "distrat/score.hpp"

namespace distrat {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// Candidate names <-> small integer ids (ids in declaration order, then
// sorted for the candidate set).
struct NameTable {
    std::vector<std::string> names;  // index = candidate id
    std::map<std::string, Candidate> ids;

    Candidate id_of(const std::string& s) const;
    const std::string& name_of(Candidate c) const { return names.at(size_t(c)); }
    std::string ranking_str(const Ranking& r, const std::string& sep = ">") const;
};

struct ParsedElection {
    Election election;
    NameTable names;
    bool identified = false;                // voter-id lines present
    std::map<Voter, std::string> voter_names;
};

// Text format:
//   candidates: a b c
//   2: a>b>c          (anonymous, count-prefixed; "," also separates)
//   v1: a>b>c         (identified)
//   # comment
ParsedElection parse_election(const std::string& text);

std::string serialize(const VotingSituation& x, const NameTable& names);
std::string serialize(const ParsedElection& pe);

// "7", "3/4" or "inf"
std::string score_str(const Score& s);
Score parse_score(const std::string& s);

// default names a..z for programmatic elections
NameTable default_names(int m);

}  // namespace distrat
