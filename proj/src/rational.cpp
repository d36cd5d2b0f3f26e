#include "orbidegen/rational.hpp"

#include <charconv>
#include <stdexcept>

#include "orbidegen/errors.hpp"

namespace orbidegen {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ValidationError("malformed rational '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::int64_t floor(const Rational& q) {
    auto n = q.numerator();
    auto d = q.denominator();
    auto quot = n / d;
    if (n % d != 0 && n < 0) --quot;
    return quot;
}

Rational fractional_part(const Rational& q) { return q - Rational(floor(q)); }

Rational sum(const std::vector<Rational>& values) {
    Rational total(0);
    for (const auto& v : values) total += v;
    return total;
}

std::int64_t factorial(int n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    if (n > 20) throw ResourceError("factorial overflows 64 bits for n > 20");
    std::int64_t out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::int64_t out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

}  // namespace orbidegen
