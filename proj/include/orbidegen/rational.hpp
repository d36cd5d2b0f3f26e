#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace orbidegen {

using Rational = boost::rational<std::int64_t>;

/// "p" for integers, "p/q" otherwise; always lowest terms with q > 0.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and "-p/q" (whitespace is not allowed).
/// Throws ValidationError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Largest integer <= q.
std::int64_t floor(const Rational& q);

/// q - floor(q), always in [0, 1).
Rational fractional_part(const Rational& q);

inline bool is_integer(const Rational& q) { return q.denominator() == 1; }

inline double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Rational sum(const std::vector<Rational>& values);

std::int64_t factorial(int n);
std::int64_t binomial(int n, int k);

}  // namespace orbidegen
