#include "doctest.h"

#include "distrat/io.hpp"

using namespace distrat;

TEST_CASE("parse anonymous election files") {
    auto pe = parse_election("candidates: a b c\n2: a>b>c\n1: b>c>a\n");
    CHECK(!pe.identified);
    auto x = anonymize(pe.election);
    CHECK(x.counts[Ranking({0, 1, 2})] == 2);
    CHECK(x.counts[Ranking({1, 2, 0})] == 1);
    CHECK(x.total() == 3);
}

TEST_CASE("parse identified election files") {
    auto pe = parse_election("candidates: a b\nv1: a>b\n");
    CHECK(pe.identified);
    CHECK(pe.election.num_voters() == 1);
    CHECK(pe.voter_names.begin()->second == "v1");
}

TEST_CASE("comma-separated rankings and comments") {
    auto pe = parse_election("# preference data\ncandidates: x y z\n\n3: x,y,z # inline\n");
    CHECK(anonymize(pe.election).counts[Ranking({0, 1, 2})] == 3);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_election("candidates: a b\n2: a>a"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(parse_election("candidates: a b\n1: a"),
                         doctest::Contains("incomplete"), ParseError);
    CHECK_THROWS_WITH_AS(parse_election("candidates: a b\n1: a>q"),
                         doctest::Contains("unknown candidate"), ParseError);
    CHECK_THROWS_AS(parse_election("1: a>b"), ParseError);     // missing header
    CHECK_THROWS_AS(parse_election("candidates: a b\n"), ParseError);  // no ballots
}

TEST_CASE("serialize round trip up to voter renumbering") {
    std::string text = "candidates: a b c\n2: a>b>c\n1: c>b>a\n";
    auto pe = parse_election(text);
    std::string out = serialize(pe);
    auto pe2 = parse_election(out);
    CHECK(anonymize(pe2.election) == anonymize(pe.election));
}

TEST_CASE("score strings round trip") {
    CHECK(parse_score("7") == Score(7));
    CHECK(parse_score("3/4") == Score(Rat(3, 4)));
    CHECK(parse_score("inf").infinite);
    CHECK(score_str(Score(Rat(3, 4))) == "3/4");
    CHECK(score_str(Score::inf()) == "inf");
}
