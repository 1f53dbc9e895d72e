#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "todatt/cyclotomic.hpp"
#include "todatt/dense_matrix.hpp"
#include "todatt/errors.hpp"

namespace todatt {

/// Default tolerance for floating-point identity checks.
inline constexpr double kIdentityTol = 1e-12;
/// Default tolerance for checks that involve solver output.
inline constexpr double kSolverCheckTol = 1e-8;

/// A tt*-structure written in a fixed global frame e_0..e_n over C*:
///   eta(e_i, e_j) = eta(i, j)          symmetric bilinear
///   g(e_i, e_j)   = g(i, j)            Hermitian, conjugate-linear in the first slot
///   Phi(e_j)      = sum_i phi(i, j) e_i dt
/// so a vector a has coordinates in the frame and g(a, b) = a^H g b,
/// eta(a, b) = a^T eta b.
template <typename F>
struct BasicFrameStructure {
    int n = 0;  // bundle rank is n + 1
    DenseMatrix<F> eta;
    DenseMatrix<F> g;
    DenseMatrix<F> phi;

    std::size_t rank() const { return static_cast<std::size_t>(n) + 1; }
};

using FrameStructure = BasicFrameStructure<Complex>;
using ExactFrameStructure = BasicFrameStructure<Cyclotomic>;

/// kappa(a) = K * conj(a), characterised by g(a, b) = eta(kappa(a), b).
struct KappaMatrix {
    ComplexMatrix k;

    std::vector<Complex> apply(const std::vector<Complex>& a) const;
    /// Relative residual of K * conj(K) - Id.
    double involution_residual() const;
};

/// One named condition of a tt*-structure. For the identity checks `residual`
/// is the relative residual and the check passes when residual <= tol. For the
/// two lower-bound checks (eta nondegenerate, g positive definite) `residual`
/// carries the measured margin (relative smallest singular value / eigenvalue)
/// and the check passes when it exceeds tol.
struct ValidityCheck {
    std::string name;
    bool passed = false;
    double residual = 0.0;
};

struct ValidityReport {
    std::vector<ValidityCheck> checks;

    bool all_passed() const;
    const ValidityCheck& check(const std::string& name) const;
};

/// (l - j - 1) mod (n + 1): the index paired with j by the anti-symmetry
/// w_j + w_{l-j-1} = 0.
int antisymmetric_partner(int n, int l, int j);

/// Largest |w_j + w_{partner(j)}| over j.
double antisymmetry_defect(int n, int l, std::span<const double> w);

/// exp(i pi k / (n + 1)), i.e. omega^{k/2} with omega = exp(2 pi i / (n + 1)).
template <typename F>
F half_root_power(int n, long long k);

template <>
inline Complex half_root_power<Complex>(int n, long long k) {
    const long long period = 2LL * (n + 1);
    const long long r = ((k % period) + period) % period;
    return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / (n + 1));
}

template <>
inline Cyclotomic half_root_power<Cyclotomic>(int n, long long k) {
    return Cyclotomic::root_power(CyclotomicField::of_order(2 * (n + 1)), k);
}

/// omega^k.
template <typename F>
F omega_power(int n, long long k) {
    return half_root_power<F>(n, 2 * k);
}

/// The pairing of the Toda frame for anti-symmetry parameter l:
/// eta(e_i, e_j) = delta_{i, l-1-j} for i < l and delta_{i, n+l-j} for i >= l.
template <typename F>
DenseMatrix<F> toda_eta(int n, int l) {
    const auto dim = static_cast<std::size_t>(n + 1);
    DenseMatrix<F> eta(dim, dim);
    for (int i = 0; i <= n; ++i) {
        const int j = i <= l - 1 ? l - 1 - i : n + l - i;
        eta(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = FieldTraits<F>::from_int(1);
    }
    return eta;
}

/// Cyclic permutation with ones on the subdiagonal and in the top-right
/// corner: Phi(e_j) = e_{j+1}, Phi(e_n) = e_0.
template <typename F>
DenseMatrix<F> toda_phi(int n) {
    const auto dim = static_cast<std::size_t>(n + 1);
    DenseMatrix<F> phi(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) phi((j + 1) % dim, j) = FieldTraits<F>::from_int(1);
    return phi;
}

/// Canonical Toda frame for (n, l, w): eta = toda_eta, phi = toda_phi,
/// g = diag(e^{w_j}). Rejects l outside 0..n and w violating
/// w_j + w_{l-j-1} = 0 beyond tol.
FrameStructure build_toda_frame(int n, int l, std::span<const double> w, double tol = kIdentityTol);

/// Exact counterpart with g = diag(exp_w), exp_w_j > 0 rational and
/// exp_w_j * exp_w_{partner(j)} = 1.
ExactFrameStructure build_toda_frame_exact(int n, int l, std::span<const Rational> exp_w);

ValidityReport validate_ttstar_frame(const FrameStructure& s, double tol = kIdentityTol);

KappaMatrix compute_kappa(const FrameStructure& s);

/// g(omega^i e_i, omega^j e_j) = g(e_i, e_j) for all i, j.
template <typename F>
bool check_zn_symmetry(const BasicFrameStructure<F>& s, double tol = kIdentityTol) {
    const double scale = std::max(1.0, s.g.max_abs());
    for (int i = 0; i <= s.n; ++i)
        for (int j = 0; j <= s.n; ++j) {
            const auto& gij = s.g(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            const F twisted = FieldTraits<F>::conj(omega_power<F>(s.n, i)) * omega_power<F>(s.n, j) * gij;
            const F diff = twisted - gij;
            if constexpr (FieldTraits<F>::exact) {
                if (!diff.is_zero()) return false;
            } else {
                if (std::abs(diff) > tol * scale) return false;
            }
        }
    return true;
}

/// T maps s1 to s2 as tt*-structures: T^T eta2 T = eta1, T^H g2 T = g1 and
/// T phi1 = phi2 T. Throws InvalidInput on shape mismatch or singular T.
template <typename F>
bool verify_isomorphism(const DenseMatrix<F>& t, const BasicFrameStructure<F>& s1,
                        const BasicFrameStructure<F>& s2, double tol = kIdentityTol) {
    const std::size_t dim = s1.rank();
    if (s2.rank() != dim || t.rows() != dim || t.cols() != dim)
        throw InvalidInput("verify_isomorphism: dimension mismatch");
    try {
        (void)t.inverse(FieldTraits<F>::exact ? 0.0 : 1e-14 * std::max(1.0, t.max_abs()));
    } catch (const std::domain_error&) {
        throw InvalidInput("verify_isomorphism: T is singular");
    }
    return matrices_agree(t.transpose() * s2.eta * t, s1.eta, tol) &&
           matrices_agree(t.adjoint() * s2.g * t, s1.g, tol) &&
           matrices_agree(t * s1.phi, s2.phi * t, tol);
}

/// (E, eta, g, omega * Phi).
template <typename F>
BasicFrameStructure<F> omega_twin(const BasicFrameStructure<F>& s) {
    BasicFrameStructure<F> twin = s;
    twin.phi = s.phi * omega_power<F>(s.n, 1);
    return twin;
}

/// diag(omega^{j + (1 - l)/2}): the isomorphism from a Toda frame with
/// parameter l to its omega-twin. The half power uses the principal branch
/// omega^{1/2} = exp(i pi / (n + 1)).
template <typename F>
DenseMatrix<F> omega_automorphism(int n, int l) {
    std::vector<F> d;
    d.reserve(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j) d.push_back(half_root_power<F>(n, 2LL * j + 1 - l));
    return DenseMatrix<F>::diagonal(d);
}

/// Pullback of s along a frame change: the structure expressed in the frame
/// e' = e * m. verify_isomorphism(m, pullback(s, m), s) holds by construction.
FrameStructure pullback(const FrameStructure& s, const ComplexMatrix& m);

}  // namespace todatt
