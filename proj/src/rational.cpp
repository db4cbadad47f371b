#include "schedcon/rational.hpp"

#include <cctype>
#include <limits>

namespace schedcon {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && s.front() == '-') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') {
        throw RationalParseError("not a rational literal: '" + std::string(text) + "'");
    }
    const Integer q{std::string(den)};
    if (q == 0) {
        throw RationalParseError("zero denominator: '" + std::string(text) + "'");
    }
    return Rational(Integer(std::string(num)), q);
}

std::string to_string(const Rational& value) {
    const Integer num = boost::multiprecision::numerator(value);
    const Integer den = boost::multiprecision::denominator(value);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

Integer floor(const Rational& value) {
    const Integer num = boost::multiprecision::numerator(value);
    const Integer den = boost::multiprecision::denominator(value);
    Integer q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) {
        q -= 1;
    }
    return q;
}

Integer ceil(const Rational& value) {
    return -floor(-value);
}

std::int64_t floor_to_int64(const Rational& value) {
    const Integer f = floor(value);
    if (f > std::numeric_limits<std::int64_t>::max()) {
        return std::numeric_limits<std::int64_t>::max();
    }
    if (f < std::numeric_limits<std::int64_t>::min()) {
        return std::numeric_limits<std::int64_t>::min();
    }
    return f.convert_to<std::int64_t>();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace schedcon
