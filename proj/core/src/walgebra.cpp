#include "todatt/walgebra.hpp"

#include <boost/integer/common_factor.hpp>

#include "todatt/frame.hpp"

namespace todatt {

namespace {

Rational sum_of_squares(const std::vector<Rational>& m) {
    Rational s = 0;
    for (const auto& v : m) s += v * v;
    return s;
}

}  // namespace

MinimalModelData minimal_model_data(const RationalAsymptoticData& data, std::optional<BigInt> q_override) {
    const int n = data.n;
    if (n < 1) throw InvalidInput("ceff: n must be >= 1");
    if (data.l != 0 && data.l != 1) throw InvalidInput("ceff: l must be 0 or 1");
    if (data.m.size() != static_cast<std::size_t>(n + 1)) throw InvalidInput("ceff: m needs n + 1 entries");
    const auto at = [&](int j) -> const Rational& { return data.m[static_cast<std::size_t>(((j % (n + 1)) + n + 1) % (n + 1))]; };
    for (int j = 0; j <= n; ++j) {
        if (at(j) + at(antisymmetric_partner(n, data.l, j)) != 0) throw InvalidInput("ceff: m_j + m_{n+l-j} != 0");
        if (at(j - 1) - at(j) + 2 <= 0) throw InvalidInput("ceff: need m_{j-1} - m_j + 2 > 0");
    }

    BigInt q = 1;
    for (const auto& v : data.m) {
        const Rational half = v / 2;
        q = boost::integer::lcm(q, BigInt(denominator(half)));
    }
    if (q < 2) q = 2;
    if (q_override) {
        if (*q_override < 2) throw InvalidInput("ceff: Q must be >= 2");
        if (*q_override % q != 0) throw InvalidInput("ceff: Q does not clear the denominators of m_j / 2");
        q = *q_override;
    }

    MinimalModelData out;
    out.n = n;
    out.m = data.m;
    out.Q = q;
    for (const auto& v : data.m) {
        const Rational p = Rational(q) * v / 2;
        out.P.push_back(numerator(p));
    }
    out.N = BigInt(n + 1) * (q - 1);
    const Rational level = Rational(out.N + n + 1) / (2 * (n + 1));
    out.b_integral = true;
    for (int j = 0; j <= n; ++j) {
        const Rational bj = level * (at(j - 1) - at(j) + 2) - 1;
        out.b_integral = out.b_integral && denominator(bj) == 1 && bj >= 0;
        out.b.push_back(bj);
        out.weight_label.push_back(at(j - 1) - at(j));
    }
    out.c_eff = Rational(n) - 3 * Rational(out.N + n + 1) / (n + 1) * sum_of_squares(data.m);
    return out;
}

bool ceff_consistency(const MinimalModelData& mmd) {
    const int n = mmd.n;
    const Rational lhs = Rational(mmd.N + n + 1) / (4 * (n + 1)) * sum_of_squares(mmd.m);
    const Rational rhs = (Rational(n) - mmd.c_eff) / 12;
    return lhs == rhs;
}

}  // namespace todatt
