#pragma once

#include <functional>
#include <string>
#include <vector>

#include "distrat/core.hpp"

namespace distrat {

// A social rule of size s: election -> nonempty set of s-rankings,
// returned sorted. Size 1 is a social choice rule, size m a welfare rule.
struct Rule {
    std::string name;
    int size_s = 1;
    std::function<std::vector<Ranking>(const Election&)> eval;

    std::vector<Ranking> operator()(const Election& e) const { return eval(e); }
};

}  // namespace distrat
