#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace schedcon {

/// Exact rational used for every time, work and energy quantity.
// Expression templates off: values behave like plain numbers under auto and std::min.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

class RationalParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses "p", "p/q" or "-p/q" (decimal integers, q != 0). Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// Canonical lowest-terms form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Saturating conversion of floor(value) to int64.
std::int64_t floor_to_int64(const Rational& value);

double to_double(const Rational& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(Integer(num), Integer(den));
}

}  // namespace schedcon
