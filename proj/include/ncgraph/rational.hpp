#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace ncgraph {

// Exact arithmetic for bounds, weights and LP pivots. Arbitrary precision so
// simplex pivoting never overflows.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Renders "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "p/q" and optional leading '-'. Returns nullopt on malformed
// input or zero denominator.
inline std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    const auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rational(BigInt(text));
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        BigInt d(den);
        if (d == 0) return std::nullopt;
        return Rational(BigInt(num), d);
    } catch (...) {
        return std::nullopt;
    }
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace ncgraph
