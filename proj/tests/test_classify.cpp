#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles/reduction.hpp"
#include "test_support.hpp"
#include "todatt/classify.hpp"

using namespace todatt;
using testing_support::random_antisymmetric;
using testing_support::random_frame_change;

namespace {

const Complex I(0.0, 1.0);

int mod(int a, int m) { return ((a % m) + m) % m; }

// Exhaustive rotation search, kept deliberately naive.
std::optional<int> brute_cyclic(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    const int len = static_cast<int>(a.size());
    for (int s = 0; s < len; ++s) {
        bool all = true;
        for (int j = 0; j < len; ++j) all = all && std::abs(b[j] - a[mod(j + s, len)]) <= tol;
        if (all) return s;
    }
    return std::nullopt;
}

bool satisfies(int n, int l, const std::vector<double>& v) {
    for (int j = 0; j <= n; ++j)
        if (v[j] + v[mod(l - j - 1, n + 1)] != 0.0) return false;
    return true;
}

// l in {0, 1} that canonicalization must report: 0 whenever some rotation of
// w already satisfies the l = 0 anti-symmetry (epsilon = -1 is preferred).
int expected_canonical_l(int n, const std::vector<double>& w, double tol) {
    for (int s = 0; s <= n; ++s) {
        const auto r = rotate(w, s);
        bool ok = true;
        for (int j = 0; j <= n; ++j) ok = ok && std::abs(r[j] + r[mod(-j - 1, n + 1)]) <= tol;
        if (ok) return 0;
    }
    return 1;
}

}  // namespace

TEST(ShiftOperator, PowersExactly) {
    const auto t = build_shift_operator(1, -1).matrix<Cyclotomic>();
    EXPECT_EQ(to_complex(t), (ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}}));
    EXPECT_EQ(t * t, CyclotomicMatrix::identity(2) * Cyclotomic(-1));
    EXPECT_EQ(build_shift_operator(2, 1).matrix<Cyclotomic>().pow(3), CyclotomicMatrix::identity(3));
    EXPECT_EQ(build_shift_operator(5, -1).matrix<Cyclotomic>().pow(6), CyclotomicMatrix::identity(6) * Cyclotomic(-1));
    EXPECT_THROW(build_shift_operator(2, 0), InvalidInput);
    EXPECT_THROW(build_shift_operator(0, 1), InvalidInput);
}

TEST(DftFrameChange, TwoByTwo) {
    const DftFrameChange dft = build_dft_frame_change(1, 1);
    const ComplexMatrix l = dft.matrix<Complex>();
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_LT(relative_residual(l, ComplexMatrix{{r, r}, {r, -r}}), 1e-15);
    const ComplexMatrix conj = l.inverse() * ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}} * l;
    EXPECT_LT(relative_residual(conj, ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}), 1e-15);
}

TEST(DftFrameChange, MatchesTwistedDftFormula) {
    // Plain DFT for epsilon = +1; diag(omega^{-j/2}) times it for epsilon = -1.
    for (int n = 1; n <= 8; ++n)
        for (int eps : {-1, 1}) {
            const ComplexMatrix l = build_dft_frame_change(n, eps).matrix<Complex>();
            const double pi = std::acos(-1.0);
            for (int j = 0; j <= n; ++j)
                for (int k = 0; k <= n; ++k) {
                    double angle = 2.0 * pi * j * k / (n + 1);
                    if (eps < 0) angle -= pi * j / (n + 1);
                    const Complex expected = std::polar(1.0 / std::sqrt(n + 1.0), angle);
                    EXPECT_LT(std::abs(l(j, k) - expected), 1e-13) << n << eps << j << k;
                }
        }
}

TEST(DftFrameChange, ConjugationIdentities) {
    for (int n = 1; n <= 8; ++n)
        for (int eps : {-1, 1}) {
            const DftFrameChange dft = build_dft_frame_change(n, eps);
            const ShiftOperator t = build_shift_operator(n, eps);
            const ComplexMatrix l = dft.matrix<Complex>();
            const ComplexMatrix d = l.inverse() * t.matrix<Complex>() * l;
            EXPECT_TRUE(d.is_diagonal(1e-12));
            EXPECT_LT(relative_residual(d, dft.conjugated_shift<Complex>()), 1e-12);
            // epsilon = -1: omega^{-1/2} diag(1, omega, ..)
            if (eps < 0)
                for (int k = 0; k <= n; ++k)
                    EXPECT_LT(std::abs(d(k, k) - half_root_power<Complex>(n, 2 * k - 1)), 1e-12);
            std::vector<Complex> omegas;
            for (int k = 0; k <= n; ++k) omegas.push_back(omega_power<Complex>(n, k));
            EXPECT_LT(relative_residual(l.inverse() * ComplexMatrix::diagonal(omegas) * l, toda_phi<Complex>(n)), 1e-12);
            if (eps > 0) EXPECT_LT(relative_residual(l.adjoint() * l, ComplexMatrix::identity(n + 1)), 1e-13);
        }
}

TEST(DetermineL, Branches) {
    EXPECT_EQ(determine_l(-1), 0);
    EXPECT_EQ(determine_l(1), 1);
    for (int eps : {-1, 1}) EXPECT_EQ(determine_l(build_shift_operator(3, eps).epsilon), eps < 0 ? 0 : 1);
    EXPECT_THROW(determine_l(2), InvalidInput);
}

TEST(EigenCycle, ShiftMatrices) {
    for (int n = 1; n <= 6; ++n) {
        const EigenCycle c = phi_eigenvalue_cycle(toda_phi<Complex>(n));
        EXPECT_LT(std::abs(c.u0 - 1.0), 1e-12);
        for (int j = 0; j <= n; ++j) EXPECT_LT(std::abs(c.eigenvalues[j] - omega_power<Complex>(n, j)), 1e-10);
        const EigenCycle c2 = phi_eigenvalue_cycle(toda_phi<Complex>(n) * Complex(2.0));
        EXPECT_LT(std::abs(c2.u0 - 2.0), 1e-12);
    }
}

TEST(EigenCycle, RejectsNonCycles) {
    EXPECT_THROW(phi_eigenvalue_cycle(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}}), ClassificationError);
    EXPECT_THROW(phi_eigenvalue_cycle(ComplexMatrix(3, 3)), ClassificationError);
    EXPECT_THROW(phi_eigenvalue_cycle(ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}}),
                 ClassificationError);
}

TEST(Canonicalize, FixedPointOfCanonicalFrames) {
    std::mt19937 rng(17);
    for (int n = 1; n <= 6; ++n)
        for (int l : {0, 1}) {
            const auto w = random_antisymmetric(n, l, rng);
            const CanonicalForm f = canonicalize_to_toda_frame(build_toda_frame(n, l, w));
            EXPECT_EQ(f.l, expected_canonical_l(n, w, 1e-10)) << n << ' ' << l;
            EXPECT_EQ(f.epsilon, f.l == 0 ? -1 : 1);
            EXPECT_LT(antisymmetry_defect(n, f.l, f.w), 1e-10);
            EXPECT_TRUE(cyclic_equivalent(w, f.w, 1e-10).has_value()) << n << ' ' << l;
            EXPECT_LT(f.eta_residual + f.phi_residual + f.g_offdiag_residual, 1e-10);
        }
}

TEST(Canonicalize, CoshSinhFrameBecomesSinhGordon) {
    const double w = 0.55;
    FrameStructure s;
    s.n = 1;
    s.eta = ComplexMatrix::identity(2);
    s.phi = ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    s.g = ComplexMatrix{{std::cosh(w), -I * std::sinh(w)}, {I * std::sinh(w), std::cosh(w)}};
    const CanonicalForm f = canonicalize_to_toda_frame(s);
    EXPECT_EQ(f.l, 0);
    EXPECT_TRUE(cyclic_equivalent(std::vector<double>{w, -w}, f.w, 1e-10).has_value());
    EXPECT_TRUE(verify_isomorphism(f.frame_change, f.frame, s, 1e-12));
}

TEST(Canonicalize, RecoversFromGeneralFrameChanges) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 6;
        const int l = std::uniform_int_distribution<int>(0, n)(rng);
        const auto w = random_antisymmetric(n, l, rng);
        const FrameStructure s = pullback(build_toda_frame(n, l, w), random_frame_change(n + 1, rng));
        const CanonicalForm f = canonicalize_to_toda_frame(s);
        ASSERT_EQ(f.l, expected_canonical_l(n, w, 1e-9)) << trial;
        EXPECT_TRUE(cyclic_equivalent(w, f.w, 1e-9).has_value()) << trial;
        EXPECT_LT(antisymmetry_defect(n, f.l, f.w), 1e-10) << trial;
        EXPECT_TRUE(verify_isomorphism(f.frame_change, f.frame, s, 1e-10)) << trial;
        EXPECT_LT(std::max({f.eta_residual, f.phi_residual, f.g_offdiag_residual}), 1e-10) << trial;
    }
}

TEST(Canonicalize, RejectsNonFixedPoints) {
    // Hermitian positive g that is not diagonalisable together with the Toda data.
    FrameStructure s = build_toda_frame(2, 0, std::vector<double>{0.0, 0.0, 0.0});
    s.g(0, 1) = 0.3;
    s.g(1, 0) = 0.3;
    EXPECT_THROW(canonicalize_to_toda_frame(s), std::exception);
}

TEST(CyclicEquivalence, Examples) {
    const std::vector<double> w{0.3, -1.2, 0.7, 0.2, 0.0};
    EXPECT_EQ(cyclic_equivalent(w, w), 0);
    EXPECT_EQ(cyclic_equivalent(w, rotate(w, 3)), 3);
    EXPECT_EQ(cyclic_equivalent(std::vector<double>{1, -1, 0}, std::vector<double>{1, 0, -1}), std::nullopt);
    EXPECT_THROW(cyclic_equivalent(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), InvalidInput);
}

TEST(CyclicEquivalence, AgreesWithBruteForce) {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> digit(-1, 1);
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 200; ++trial) {
            // Small alphabets make coincidences (and degenerate periods) common.
            std::vector<double> a(n + 1), b(n + 1);
            for (auto& v : a) v = digit(rng);
            for (auto& v : b) v = digit(rng);
            if (trial % 3 == 0) b = rotate(a, trial % (n + 1));
            EXPECT_EQ(cyclic_equivalent(a, b), brute_cyclic(a, b, 0.0));
        }
}

TEST(CyclicEquivalence, CanonicalRotation) {
    const std::vector<double> w{2, 0, 1, 0, 1};
    const CyclicRepresentative r = canonical_rotation(w);
    EXPECT_EQ(r.values, (std::vector<double>{0, 1, 0, 1, 2}));
    EXPECT_EQ(r.shift, 1);
    EXPECT_EQ(rotate(w, r.shift), r.values);
    const std::vector<double> periodic{1, 0, 1, 0};
    EXPECT_EQ(canonical_rotation(periodic).shift, 1);
}

TEST(Normalize, Examples) {
    // n = 3, l = 2: w_j + w_{1-j} = 0.
    const std::vector<double> a{0.5, -0.5, 0.25, -0.25};
    const NormalizationResult r = normalize_l(3, 2, a);
    EXPECT_EQ(r.l_normalized, 0);
    EXPECT_EQ(r.shift, 1);
    EXPECT_TRUE(satisfies(3, 0, r.values));

    // n = 4, l = 3: one step backwards.
    const std::vector<double> b{0.4, 0.0, -0.4, 0.7, -0.7};
    const NormalizationResult s = normalize_l(4, 3, b);
    EXPECT_EQ(s.l_normalized, 0);
    EXPECT_EQ(s.shift, 4);
    EXPECT_TRUE(satisfies(4, 0, s.values));
    int hits = 0;  // exactly one rotation lands on l = 0
    for (int t = 0; t <= 4; ++t) hits += satisfies(4, 0, rotate(b, t)) ? 1 : 0;
    EXPECT_EQ(hits, 1);

    const std::vector<double> c{0.2, 0.0, -0.2};
    const NormalizationResult u = normalize_l(2, 0, c);
    EXPECT_EQ(u.shift, 0);
    EXPECT_EQ(u.values, c);

    EXPECT_THROW(normalize_l(2, 0, std::vector<double>{0.2, 0.1, -0.2}), InvalidInput);
}

TEST(Normalize, ParityRuleAndProperties) {
    std::mt19937 rng(123);
    for (int n = 1; n <= 8; ++n)
        for (int l = 0; l <= n; ++l) {
            const int target = (l % 2 == 0 || n % 2 == 0) ? 0 : 1;
            for (int trial = 0; trial < 50; ++trial) {
                const auto w = random_antisymmetric(n, l, rng, 3.0);
                const NormalizationResult r = normalize_l(n, l, w);
                ASSERT_EQ(r.l_normalized, target) << n << ' ' << l;
                EXPECT_TRUE(satisfies(n, r.l_normalized, r.values));
                EXPECT_EQ(cyclic_equivalent(w, r.values), std::optional<int>(r.shift));
                EXPECT_GE(r.shift, 0);
                EXPECT_LE(r.shift, n);
                const NormalizationResult again = normalize_l(n, r.l_normalized, r.values);
                EXPECT_EQ(again.shift, 0);
                EXPECT_EQ(again.l_normalized, r.l_normalized);
                EXPECT_EQ(again.values, r.values);
            }
        }
}

TEST(Reduce, TableLookups) {
    const ReducedSystem a = reduce_system(3, 0);
    EXPECT_EQ(a.m, 2);
    EXPECT_EQ(std::make_pair(a.a, a.b), std::make_pair(2, 2));
    EXPECT_EQ(a.index_map, (std::vector<int>{0, 1}));
    const ReducedSystem b = reduce_system(4, 1);
    EXPECT_EQ(b.m, 2);
    EXPECT_EQ(std::make_pair(b.a, b.b), std::make_pair(2, 1));
    const ReducedSystem c = reduce_system(5, 1);
    EXPECT_EQ(c.m, 2);
    EXPECT_EQ(std::make_pair(c.a, c.b), std::make_pair(1, 1));
    EXPECT_EQ(c.index_map, (std::vector<int>{1, 2}));
    const ReducedSystem d = reduce_system(4, 0);
    EXPECT_EQ(std::make_pair(d.a, d.b), std::make_pair(2, 1));
    EXPECT_THROW(reduce_system(4, 2), InvalidInput);
    EXPECT_THROW(reduce_system(1, 1), InvalidInput);
}

TEST(Reduce, SymbolicOracleAgrees) {
    for (int m = 1; m <= 5; ++m)
        for (const auto& col : reduced_table()) {
            const int n = 2 * m + col.n_offset;
            const ReducedSystem r = reduce_system(n, col.l);
            ASSERT_EQ(r.m, m) << n << ' ' << col.l;
            const oracle::ReductionCheck check = oracle::symbolic_reduction(n, col.l, r.index_map);
            EXPECT_TRUE(check.well_formed) << n << ' ' << col.l;
            EXPECT_EQ(check.a, r.a) << n << ' ' << col.l;
            EXPECT_EQ(check.b, r.b) << n << ' ' << col.l;
            EXPECT_EQ(r.a, col.a);
            EXPECT_EQ(r.b, col.b);
        }
}

TEST(TableCollapse, ThreeClasses) {
    const TableCollapse t = collapse_table1();
    EXPECT_TRUE(t.consistent);
    EXPECT_EQ(t.rows.size(), 10u);
    EXPECT_EQ(t.classes, (std::vector<std::pair<int, int>>{{3, 0}, {4, 0}, {5, 1}}));
    for (const auto& r : t.rows) {
        EXPECT_TRUE(r.exponents_match) << r.row.n << ' ' << r.row.l;
        if (r.row.n == 3 && r.row.l == 2) EXPECT_EQ(std::make_pair(r.class_n, r.class_l), std::make_pair(3, 0));
        if (r.row.n == 4 && r.row.l == 4) {
            EXPECT_EQ(std::make_pair(r.class_n, r.class_l), std::make_pair(4, 0));
            EXPECT_TRUE(r.swapped);
        }
        if (r.row.n == 5 && r.row.l == 5) EXPECT_EQ(std::make_pair(r.class_n, r.class_l), std::make_pair(5, 1));
    }
}

TEST(ClassifyFrame, Report) {
    const std::vector<double> w{0.6, -0.6};
    const ClassificationReport r = classify_frame(build_toda_frame(1, 0, w));
    EXPECT_EQ(r.n, 1);
    EXPECT_EQ(r.l_input, 0);
    EXPECT_EQ(r.l_normalized, 0);
    EXPECT_EQ(r.epsilon, -1);
    ASSERT_EQ(r.class_representative.size(), 2u);
    EXPECT_NEAR(r.class_representative[0], -0.6, 1e-10);
}
