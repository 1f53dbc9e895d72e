#include "todatt/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace todatt {

namespace {

BigInt parse_integer(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("empty integer");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("invalid digit in '" + std::string(s) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return negative ? BigInt(-v) : v;
}

BigInt pow10(long long e) {
    BigInt r = 1;
    for (long long k = 0; k < e; ++k) r *= 10;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(text.substr(0, slash));
        const BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }

    std::string_view mantissa = text;
    long long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        const BigInt ev = parse_integer(text.substr(e + 1));
        if (abs(ev) > 4000) throw std::invalid_argument("exponent out of range");
        exponent = ev.convert_to<long long>();
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
        negative = mantissa[0] == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long long frac_digits = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
        frac_digits = static_cast<long long>(mantissa.size() - dot - 1);
    } else {
        digits = std::string(mantissa);
    }
    if (digits.empty()) throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
    BigInt num = parse_integer(digits);
    if (negative) num = -num;
    const long long shift = exponent - frac_digits;
    if (shift >= 0) return Rational(num * pow10(shift));
    return Rational(num, pow10(-shift));
}

Rational rational_from_double(double x, long long max_den, double tol) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value is not a rational");
    // Continued-fraction convergents.
    long long h_prev = 1, h = static_cast<long long>(std::floor(x));
    long long k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol) return Rational(h, k);
        if (frac < 1e-300) break;
        const double inv = 1.0 / frac;
        const long long a = static_cast<long long>(std::floor(inv));
        frac = inv - std::floor(inv);
        const long long h_next = a * h + h_prev;
        const long long k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol) return Rational(h, k);
    throw std::invalid_argument("value " + std::to_string(x) + " is not representable as a small rational");
}

std::string to_string(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace todatt
