#include "chroma/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "chroma/error.hpp"

namespace chroma {
namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) fail(ErrorCode::kParse, "bad rational '" + std::string(whole) + "'");
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) fail(ErrorCode::kParse, "bad rational '" + std::string(whole) + "'");
    BigInt value = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            fail(ErrorCode::kParse, "bad rational '" + std::string(whole) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
    std::int64_t exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        BigInt exp = parse_integer(text.substr(e + 1), whole);
        if (exp > 400 || exp < -400) fail(ErrorCode::kParse, "exponent out of range in '" + std::string(whole) + "'");
        exponent = exp.convert_to<std::int64_t>();
        text = text.substr(0, e);
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string digits;
    std::int64_t fraction_digits = 0;
    bool seen_point = false;
    for (char c : text) {
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++fraction_digits;
        } else {
            fail(ErrorCode::kParse, "bad rational '" + std::string(whole) + "'");
        }
    }
    if (digits.empty()) fail(ErrorCode::kParse, "bad rational '" + std::string(whole) + "'");
    Rational value(parse_integer(digits, whole));
    std::int64_t shift = exponent - fraction_digits;
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    if (shift < 0) value /= Rational(scale); else value *= Rational(scale);
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) fail(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    return parse_decimal(text, text);
}

std::string to_string(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational exact_rational(double value) {
    if (!std::isfinite(value)) fail(ErrorCode::kInvalidArgument, "non-finite value has no rational form");
    int exp = 0;
    double mantissa = std::frexp(value, &exp);
    // 53 significant bits fit an int64 exactly.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exp -= 53;
    Rational result(scaled);
    BigInt pow2 = BigInt(1) << (exp < 0 ? -exp : exp);
    return exp < 0 ? Rational(result / pow2) : Rational(result * pow2);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::uint64_t ceil_times(const Rational& value, std::uint64_t n) {
    if (value < 0) fail(ErrorCode::kInvalidArgument, "ceil_times expects a non-negative value");
    Rational product = value * n;
    BigInt num = boost::multiprecision::numerator(product);
    BigInt den = boost::multiprecision::denominator(product);
    BigInt q = (num + den - 1) / den;
    return q.convert_to<std::uint64_t>();
}

}  // namespace chroma
