#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "todatt/frame.hpp"

namespace todatt {

/// Cyclic frame shift T(tau_j) = tau_{j-1}, T(tau_0) = epsilon * tau_n:
/// ones on the superdiagonal and epsilon in the bottom-left corner, so that
/// T^{n+1} = epsilon * Id.
struct ShiftOperator {
    int n = 1;
    int epsilon = 1;

    template <typename F>
    DenseMatrix<F> matrix() const {
        const auto dim = static_cast<std::size_t>(n + 1);
        DenseMatrix<F> t(dim, dim);
        for (std::size_t j = 0; j + 1 < dim; ++j) t(j, j + 1) = FieldTraits<F>::from_int(1);
        t(dim - 1, 0) = FieldTraits<F>::from_int(epsilon);
        return t;
    }
};

ShiftOperator build_shift_operator(int n, int epsilon);

/// Discrete-Fourier frame change L that diagonalises the shift operator.
///   epsilon = +1: L = V / sqrt(n+1),                          V_jk = omega^{jk}
///   epsilon = -1: L = diag(1, omega^{-1/2}, ..., omega^{-n/2}) V / sqrt(n+1)
/// In exact arithmetic the 1/sqrt(n+1) factor is dropped: it is not in the
/// cyclotomic field and cancels in every conjugation L^{-1} X L.
struct DftFrameChange {
    int n = 1;
    int epsilon = 1;

    template <typename F>
    DenseMatrix<F> matrix() const {
        const auto dim = static_cast<std::size_t>(n + 1);
        DenseMatrix<F> l(dim, dim);
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) {
                const long long half_steps = 2LL * j * k - (epsilon < 0 ? j : 0);
                l(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = half_root_power<F>(n, half_steps);
            }
        if constexpr (!FieldTraits<F>::exact) l *= F(1.0 / std::sqrt(static_cast<double>(n + 1)));
        return l;
    }

    /// L^{-1} T L: diag(1, omega, ..., omega^n) for epsilon = +1 and
    /// omega^{-1/2} diag(1, omega, ..., omega^n) for epsilon = -1.
    template <typename F>
    DenseMatrix<F> conjugated_shift() const {
        std::vector<F> d;
        for (int k = 0; k <= n; ++k) d.push_back(half_root_power<F>(n, 2LL * k - (epsilon < 0 ? 1 : 0)));
        return DenseMatrix<F>::diagonal(d);
    }
};

DftFrameChange build_dft_frame_change(int n, int epsilon);

/// epsilon = T^{n+1} / Id  ->  l: -1 gives 0 (w_j + w_{n-j} = 0), +1 gives 1
/// (w_j + w_{n+1-j} = 0).
int determine_l(int epsilon);

/// Eigenvalues of Phi ordered as u0 * omega^j.
struct EigenCycle {
    Complex u0;
    std::vector<std::size_t> ordering;  // ordering[j] = index in the raw eigen-decomposition
    std::vector<Complex> eigenvalues;   // eigenvalues[j] ~ u0 * omega^j
    ComplexMatrix eigenvectors;         // column j belongs to eigenvalues[j]
};

/// Detects the single geometric omega-cycle in the spectrum of phi. u0 is the
/// eigenvalue of largest modulus with the smallest argument in [0, 2 pi).
/// Throws ClassificationError when phi vanishes or the spectrum is no cycle.
EigenCycle phi_eigenvalue_cycle(const ComplexMatrix& phi, double tol = 1e-10);

struct CanonicalForm {
    int l = 0;
    int epsilon = -1;
    Complex u0;                 // coordinate rescaling t = u0 * z
    std::vector<double> w;      // g = diag(e^{w_j}) in the canonical frame
    FrameStructure frame;       // build_toda_frame(n, l, w)
    ComplexMatrix frame_change; // columns: canonical frame in input coordinates
    ComplexMatrix twin_isomorphism;  // input -> omega twin, in input coordinates
    double eta_residual = 0.0;
    double phi_residual = 0.0;
    double g_offdiag_residual = 0.0;
};

/// Brings a Z_{n+1}-fixed tt*-structure to the Toda frame: eigenframe of Phi,
/// eta-orthonormalisation, sign normalisation of the omega-twin isomorphism,
/// then the DFT frame change. When both epsilon = -1 and +1 twin isomorphisms
/// exist, epsilon = -1 (l = 0) is chosen.
/// The returned frame_change E satisfies
///   verify_isomorphism(E, result.frame, input with phi / u0).
CanonicalForm canonicalize_to_toda_frame(const FrameStructure& s, double tol = 1e-10);

/// Smallest s in 0..n with w2_j = w1_{j+s} (indices mod n+1) to within tol.
std::optional<int> cyclic_equivalent(std::span<const double> w1, std::span<const double> w2, double tol = 0.0);

/// w rotated left by s: result_j = w_{j+s}.
std::vector<double> rotate(std::span<const double> w, int s);

/// Lexicographically smallest rotation; ties broken by the smallest shift.
struct CyclicRepresentative {
    std::vector<double> values;
    int shift = 0;  // values = rotate(input, shift)
};
CyclicRepresentative canonical_rotation(std::span<const double> w);

/// (l, values) with values_j + values_{l-j-1} = 0.
struct AsymmetryClass {
    int n = 1;
    int l = 0;
    std::vector<double> values;
};

struct NormalizationResult {
    int l_input = 0;
    int l_normalized = 0;
    int shift = 0;  // values = rotate(input values, shift), shift in 0..n
    std::vector<double> values;
};

/// Index shift moving anti-symmetry parameter l to 0 ("l or n even") or 1.
/// l is taken mod n+1.
struct NormalizationShift {
    int l_normalized = 0;
    int shift = 0;
};
NormalizationShift normalization_shift(int n, int l);

/// Applies normalization_shift to a tuple. Throws InvalidInput if values do
/// not satisfy the l anti-symmetry to within tol.
NormalizationResult normalize_l(int n, int l, std::span<const double> values, double tol = kIdentityTol);

/// m unknowns v_k = w_{index_map[k]} obeying
///   v_0'' ~ e^{a v_0} - e^{v_1 - v_0}, ..., v_{m-1}'' ~ e^{v_{m-1} - v_{m-2}} - e^{-b v_{m-1}}.
struct ReducedSystem {
    int n = 1;
    int l = 0;
    int m = 1;
    int a = 2;
    int b = 2;
    std::vector<int> index_map;
};

/// Looks up the l in {0,1} table. Throws InvalidInput for l >= 2 or n too
/// small to leave an unknown.
ReducedSystem reduce_system(int n, int l);

/// Rows of the two-unknown table: w-equation exponent a, v-equation exponent b.
struct TwoUnknownRow {
    int n;
    int l;
    int w_index;
    int v_index;
    int a;
    int b;
};
std::span<const TwoUnknownRow> two_unknown_table();

/// Columns of the l in {0,1} table, n = 2m + n_offset.
struct ReducedTableColumn {
    const char* n_form;
    int n_offset;
    int l;
    int offset_const;  // v_k = w_{k + offset_const + offset_per_m * m}
    int offset_per_m;
    int a;
    int b;
};
std::span<const ReducedTableColumn> reduced_table();

/// Image of an original unknown in the normalized class: w = sign * v_slot
/// (sign 0 means the unknown is forced to vanish).
struct SignedSlot {
    int sign = 0;
    int slot = -1;
};

struct RowCollapse {
    TwoUnknownRow row;
    int class_n = 0;
    int class_l = 0;
    int shift = 0;
    SignedSlot w_image;
    SignedSlot v_image;
    bool swapped = false;       // (w, v) -> (-v, -w)
    bool exponents_match = false;  // row (a, b) equals the class row's, swapped when `swapped`
};

struct TableCollapse {
    std::vector<RowCollapse> rows;
    std::vector<std::pair<int, int>> classes;  // distinct (n, l) in first-seen order
    bool consistent = false;
};

/// Normalizes every two-unknown row and checks that rows sharing a class have
/// the same (a, b) up to the (w, v) -> (-v, -w) swap.
TableCollapse collapse_table1();

/// canonicalize_to_toda_frame followed by normalize_l; the representative is
/// the lexicographically smallest rotation of the normalized w.
struct ClassificationReport {
    int n = 1;
    int l_input = 0;
    int l_normalized = 0;
    int shift = 0;
    std::vector<double> class_representative;
    int epsilon = -1;
};
ClassificationReport classify_frame(const FrameStructure& s, double tol = 1e-10);

}  // namespace todatt
