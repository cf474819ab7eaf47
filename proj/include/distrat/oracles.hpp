#pragma once

#include <map>
#include <string>
#include <vector>

#include "distrat/core.hpp"
#include "distrat/rational.hpp"
#include "distrat/rule.hpp"

namespace distrat {
namespace oracles {

// Direct implementations of the named rules, used as ground truth against
// the DR engine. These deliberately share no code with the engine paths.

std::vector<Ranking> scoring_rule(const std::vector<Rat>& w, const Election& e);
std::vector<Ranking> plurality(const Election& e);
std::vector<Ranking> borda(const Election& e);
std::vector<Ranking> k_approval(int k, const Election& e);

std::vector<Ranking> kemeny(const Election& e);         // welfare
std::vector<Ranking> litvak(const Election& e);         // welfare, footrule
std::vector<Ranking> modal_ranking(const Election& e);  // welfare
std::vector<Ranking> slater(const Election& e);         // welfare

std::vector<Ranking> copeland(const Election& e, const Rat& tie_value);
std::vector<Ranking> maximin(const Election& e);

// Exact per-candidate scores computed by exhaustive per-vote target
// enumeration (no structural shortcuts).
std::map<Candidate, long long> dodgson_scores(const Election& e);
std::map<Candidate, long long> young_scores(const Election& e);  // -1 when impossible
std::map<Candidate, long long> vrr_scores(const Election& e);

std::vector<Ranking> dodgson(const Election& e);
std::vector<Ranking> young(const Election& e);
std::vector<Ranking> vrr(const Election& e);

// Rule handles for the engine / axioms layers.
Rule plurality_rule();
Rule borda_rule();
Rule scoring_rule_of(std::vector<Rat> w, std::string name);
Rule kemeny_rule();
Rule litvak_rule();
Rule modal_rule();
Rule slater_rule();
Rule copeland_rule(Rat tie_value);
Rule maximin_rule();
Rule dodgson_rule();
Rule young_rule();
Rule vrr_rule();

// by CLI name: plurality, borda, scoring:w1,w2,..., kemeny, dodgson, young,
// copeland:0|half, maximin, slater, modal, vrr, litvak
Rule rule_by_name(const std::string& name);

}  // namespace oracles
}  // namespace distrat
