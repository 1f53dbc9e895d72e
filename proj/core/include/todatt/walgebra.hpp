#pragma once

#include <optional>
#include <vector>

#include "todatt/errors.hpp"
#include "todatt/rational.hpp"

namespace todatt {

/// Asymptotic data with exact entries; same invariants as AsymptoticData.
struct RationalAsymptoticData {
    int n = 1;
    int l = 0;
    std::vector<Rational> m;
};

/// Minimal-model parameters of W_{n+1} attached to rational asymptotic data.
///   m_j = 2 P_j / Q,  N = (n+1)(Q-1),
///   b_j = (N+n+1)/(2(n+1)) (m_{j-1} - m_j + 2) - 1   (m_{-1} = m_n),
///   c_eff = n - 3(N+n+1)/(n+1) sum m_j^2.
struct MinimalModelData {
    int n = 1;
    std::vector<Rational> m;
    BigInt Q;
    std::vector<BigInt> P;
    BigInt N;
    std::vector<Rational> b;
    bool b_integral = false;  // every b_j is a nonnegative integer
    std::vector<Rational> weight_label;  // [m_n - m_0, m_0 - m_1, ..., m_{n-1} - m_n]
    Rational c_eff;
};

/// Q defaults to the smallest integer >= 2 with Q m_j / 2 integral for all j.
/// An override must itself clear those denominators.
/// Throws InvalidInput on broken anti-symmetry or m_{j-1} - m_j + 2 <= 0.
MinimalModelData minimal_model_data(const RationalAsymptoticData& data, std::optional<BigInt> q_override = std::nullopt);

/// (N+n+1)/(4(n+1)) sum m_j^2 == (n - c_eff)/12, exactly.
bool ceff_consistency(const MinimalModelData& mmd);

}  // namespace todatt
