#pragma once

#include <ostream>

#include "distrat/rational.hpp"

namespace distrat {

// Exact extended nonnegative score value: a rational, or +infinity.
// Scores produced under an l^p norm with integer p are stored as the
// un-rooted sum of p-th powers (comparison-equivalent within one
// distance family); normalized votewise scores carry the exact 1/n^p
// factor as a rational. No floating point touches any comparison.
struct Score {
    bool infinite = false;
    Rat value;

    Score() = default;
    Score(Rat v) : infinite(false), value(v) {}
    Score(long long v) : infinite(false), value(Rat(v)) {}

    static Score inf() { Score s; s.infinite = true; return s; }
    static Score zero() { return Score(Rat(0)); }

    bool is_finite() const { return !infinite; }

    friend Score operator+(const Score& a, const Score& b) {
        if (a.infinite || b.infinite) return inf();
        return Score(a.value + b.value);
    }
    friend bool operator==(const Score& a, const Score& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
    friend bool operator!=(const Score& a, const Score& b) { return !(a == b); }
    friend bool operator<(const Score& a, const Score& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const Score& a, const Score& b) { return a < b || a == b; }
    friend bool operator>(const Score& a, const Score& b) { return b < a; }
    friend bool operator>=(const Score& a, const Score& b) { return b <= a; }

    std::string str() const { return infinite ? "inf" : value.str(); }
    friend std::ostream& operator<<(std::ostream& os, const Score& s) {
        return os << s.str();
    }
};

}  // namespace distrat
