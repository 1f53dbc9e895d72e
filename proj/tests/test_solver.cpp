#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/reduced_pair.hpp"
#include "oracles/sinh_gordon.hpp"
#include "todatt/classify.hpp"
#include "todatt/frame.hpp"
#include "todatt/solver.hpp"

using namespace todatt;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k] - b[k]));
    return s;
}

// Random m with the l-anti-symmetry and m_{j-1} - m_j + 2 >= margin.
std::vector<double> random_m(int n, int l, std::mt19937& rng, double margin = 0.5) {
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (;;) {
        std::vector<double> m(n + 1, 0.0);
        for (int j = 0; j <= n; ++j) {
            const int p = antisymmetric_partner(n, l, j);
            if (p > j) {
                m[j] = u(rng);
                m[p] = -m[j];
            }
        }
        bool ok = true;
        for (int j = 0; j <= n; ++j) ok = ok && m[(j + n) % (n + 1)] - m[j] + 2.0 >= margin;
        if (ok) return m;
    }
}

Profiles random_state(int comps, int points, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Profiles w(comps, std::vector<double>(points));
    for (auto& row : w)
        for (auto& v : row) v = u(rng);
    return w;
}

std::vector<double> uniform_grid(double a, double b, int points) {
    std::vector<double> x(points);
    for (int k = 0; k < points; ++k) x[k] = a + k * (b - a) / (points - 1);
    return x;
}

}  // namespace

TEST(AsymptoticData, Validation) {
    EXPECT_TRUE(check_asymptotic_data({1, 0, {-0.5, 0.5}}).empty());
    EXPECT_THROW(check_asymptotic_data({1, 0, {-0.5, 0.4}}), InvalidInput);
    EXPECT_THROW(check_asymptotic_data({1, 2, {0.0, 0.0}}), InvalidInput);
    EXPECT_THROW(check_asymptotic_data({2, 0, {0.0, 0.0}}), InvalidInput);
    EXPECT_THROW(check_asymptotic_data({1, 0, {-1.5, 1.5}}), InvalidInput);  // m_1 - m_0 + 2 < 0 at j = 0
    const auto warnings = check_asymptotic_data({1, 0, {1.0, -1.0}});  // gap exactly 0 at j = 1
    EXPECT_EQ(warnings.size(), 1u);
}

TEST(Solver, ZeroDataIsExact) {
    for (int n = 1; n <= 5; ++n)
        for (int l : {0, 1}) {
            const RadialSolution s = solve_radial_toda({n, l, std::vector<double>(n + 1, 0.0)}, {-6.0, 2.5, 200});
            EXPECT_EQ(s.newton_iterations, 1);
            EXPECT_EQ(s.residual_sup, 0.0);
            for (const auto& row : s.w)
                for (double v : row) EXPECT_EQ(v, 0.0);
        }
}

TEST(Solver, BoundaryValuesImposed) {
    const AsymptoticData d{3, 0, {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0}};
    const Grid g{-5.0, 2.0, 400};
    const RadialSolution s = solve_radial_toda(d, g);
    for (int j = 0; j <= 3; ++j) {
        EXPECT_DOUBLE_EQ(s.w[j].front(), -d.m[j] * g.x_min);
        EXPECT_EQ(s.w[j].back(), 0.0);
    }
    EXPECT_DOUBLE_EQ(s.x.front(), -5.0);
    EXPECT_DOUBLE_EQ(s.x.back(), 2.0);
    EXPECT_LT(s.residual_sup, 1e-10);
}

TEST(Solver, SinhGordonMatchesScalarOracle) {
    const Grid g;
    const RadialSolution s = solve_radial_toda({1, 0, {-0.5, 0.5}}, g);
    const oracle::ScalarSolve o = oracle::sinh_gordon(-0.5, g.x_min, g.x_max, g.points);
    EXPECT_LT(s.residual_sup, 1e-10);
    EXPECT_LT(sup_diff(s.w[0], o.u), 1e-6);
    EXPECT_LT(anti_symmetry_sup(s, 0), 1e-8);
    EXPECT_TRUE(check_anti_symmetry(s, 0, 1e-8));
}

TEST(Solver, ReducedPairOracleN3N4) {
    const Grid g{-6.0, 2.5, 1000};
    {
        const AsymptoticData d{3, 0, {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0}};
        const ReducedSystem r = reduce_system(3, 0);
        const RadialSolution s = solve_radial_toda(d, g);
        const oracle::PairSolve o = oracle::reduced_pair(r.a, r.b, d.m[0], d.m[1], g.x_min, g.x_max, g.points);
        EXPECT_LT(sup_diff(s.w[0], o.v0), 1e-8);
        EXPECT_LT(sup_diff(s.w[1], o.v1), 1e-8);
        EXPECT_LT(anti_symmetry_sup(s, 0), 1e-8);
    }
    {
        const AsymptoticData d{4, 0, {-0.4, 0.3, 0.0, -0.3, 0.4}};
        const ReducedSystem r = reduce_system(4, 0);
        const RadialSolution s = solve_radial_toda(d, g);
        const oracle::PairSolve o = oracle::reduced_pair(r.a, r.b, d.m[0], d.m[1], g.x_min, g.x_max, g.points);
        EXPECT_LT(sup_diff(s.w[0], o.v0), 1e-8);
        EXPECT_LT(sup_diff(s.w[1], o.v1), 1e-8);
        EXPECT_LT(*std::max_element(s.w[2].begin(), s.w[2].end(), [](double a, double b) { return std::abs(a) < std::abs(b); }),
                  1e-8);
    }
}

TEST(Solver, SymmetryAndSumZero) {
    std::mt19937 rng(31);
    for (int n = 1; n <= 6; ++n)
        for (int l : {0, 1}) {
            const AsymptoticData d{n, l, random_m(n, l, rng)};
            const RadialSolution s = solve_radial_toda(d, {-6.0, 2.5, 600});
            EXPECT_LT(s.residual_sup, 1e-10);
            EXPECT_LT(anti_symmetry_sup(s, l), 1e-8) << n << ' ' << l;
            EXPECT_LT(sum_sup(s), 1e-8) << n << ' ' << l;
        }
}

TEST(Solver, AntiSymmetryCheckDetectsWrongPairing) {
    const RadialSolution s = solve_radial_toda({3, 0, {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0}}, {-6.0, 2.5, 300});
    EXPECT_TRUE(check_anti_symmetry(s, 0, 1e-8));
    EXPECT_FALSE(check_anti_symmetry(s, 1, 1e-8));
    RadialSolution shifted = s;
    std::rotate(shifted.w.begin(), shifted.w.begin() + 1, shifted.w.end());
    EXPECT_FALSE(check_anti_symmetry(shifted, 0, 1e-8));
}

TEST(Solver, NonConvergenceReported) {
    SolverOptions o;
    o.max_iter = 1;
    try {
        solve_radial_toda({1, 0, {-0.5, 0.5}}, {}, o);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.iterations(), 1);
        EXPECT_GT(e.last_residual(), 1e-10);
    }
}

TEST(Solver, RejectsBadGridAndOptions) {
    const AsymptoticData d{1, 0, {-0.5, 0.5}};
    EXPECT_THROW(solve_radial_toda(d, {1.0, 2.5, 100}), InvalidInput);
    EXPECT_THROW(solve_radial_toda(d, {-6.0, 2.5, 10}), InvalidInput);
    SolverOptions o;
    o.damping = 0.0;
    EXPECT_THROW(solve_radial_toda(d, {}, o), InvalidInput);
    EXPECT_THROW(solve_radial_toda({1, 0, {-0.5, 0.1}}), InvalidInput);
}

TEST(Solver, DampingStillConverges) {
    SolverOptions o;
    o.damping = 0.5;
    o.max_iter = 200;
    const RadialSolution s = solve_radial_toda({2, 1, {0.0, 0.3, -0.3}}, {-6.0, 2.5, 400}, o);
    EXPECT_LT(s.residual_sup, 1e-10);
}

TEST(Jacobian, MatchesFiniteDifferences) {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const int comps = 2 + trial % 4;  // n = 1..4
        const auto x = uniform_grid(-3.0, 1.0, 50);
        const Profiles w = random_state(comps, 50, rng);
        const BlockTridiagonalJacobian jac = radial_jacobian(x, w);
        double worst = 0.0, scale = 0.0;
        for (std::size_t k = 1; k + 1 < 50; ++k)
            for (int i = 0; i < comps; ++i) {
                const double eps = 1e-6;
                Profiles plus = w, minus = w;
                plus[i][k] += eps;
                minus[i][k] -= eps;
                const Profiles fp = radial_residual(x, plus), fm = radial_residual(x, minus);
                for (std::size_t r = k - 1; r <= k + 1; ++r) {
                    if (r == 0 || r + 1 == 50) continue;
                    for (int j = 0; j < comps; ++j) {
                        const double fd = (fp[j][r] - fm[j][r]) / (2 * eps);
                        double exact = 0.0;
                        if (r == k) exact = jac.diagonal[k - 1][j * comps + i];
                        else if (i == j) exact = jac.coupling;
                        worst = std::max(worst, std::abs(fd - exact));
                        scale = std::max(scale, std::abs(exact));
                    }
                }
            }
        EXPECT_LT(worst / scale, 1e-6) << trial;
    }
}

TEST(Residual, TelescopesToLaplacianOfSum) {
    std::mt19937 rng(12);
    for (int comps = 2; comps <= 6; ++comps) {
        const auto x = uniform_grid(-2.0, 1.5, 60);
        const Profiles w = random_state(comps, 60, rng);
        const Profiles f = radial_residual(x, w);
        const double h = x[1] - x[0];
        for (std::size_t k = 1; k + 1 < 60; ++k) {
            double total = 0.0, lap = 0.0;
            for (int j = 0; j < comps; ++j) {
                total += f[j][k];
                lap += (w[j][k + 1] - 2 * w[j][k] + w[j][k - 1]) / (4 * h * h);
            }
            EXPECT_NEAR(total, lap, 1e-9 * std::max(1.0, std::abs(lap)));
        }
    }
}

TEST(Residual, PointPerturbationScalesLikeInverseSquareSpacing) {
    for (int points : {100, 200, 400}) {
        const auto x = uniform_grid(-6.0, 2.5, points);
        const double h = x[1] - x[0];
        const double delta = 1e-7;
        Profiles w(2, std::vector<double>(points, 0.0));
        w[0][5] = delta;  // near x_min where e^{2x} is negligible
        RadialSolution s;
        s.x = x;
        s.w = w;
        const double r = toda_residual(s)[0];
        EXPECT_NEAR(r * h * h / delta, 0.5, 1e-3) << points;
    }
    RadialSolution zero;
    zero.x = uniform_grid(-1.0, 1.0, 10);
    zero.w.assign(3, std::vector<double>(10, 0.0));
    for (double r : toda_residual(zero)) EXPECT_EQ(r, 0.0);
}

TEST(Refinement, InterpolatedResidualDropsFourfold) {
    for (const AsymptoticData& d : {AsymptoticData{1, 0, {-0.5, 0.5}}, AsymptoticData{3, 0, {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0}}}) {
        const RadialSolution coarse = solve_radial_toda(d, {-6.0, 2.5, 500});
        const RadialSolution fine = interpolate_to_refined_grid(coarse);
        const RadialSolution finer = interpolate_to_refined_grid(solve_radial_toda(d, {-6.0, 2.5, 999}));
        const double ratio = fine.residual_sup / finer.residual_sup;
        EXPECT_GE(ratio, 2.5) << d.n;
        EXPECT_LE(ratio, 6.0) << d.n;
        EXPECT_EQ(fine.grid_size(), 999u);
    }
}

TEST(Asymptotics, LinearAndZeroProfiles) {
    RadialSolution s;
    s.x = uniform_grid(-6.0, 0.0, 40);
    const std::vector<double> m{0.75, -0.25, -0.5};
    s.w.assign(3, std::vector<double>(40));
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 40; ++k) s.w[j][k] = -m[j] * s.x[k];
    const auto est = extract_asymptotics(s, 10);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(est[j], m[j], 1e-13);

    for (auto& row : s.w) std::fill(row.begin(), row.end(), 0.0);
    for (double v : extract_asymptotics(s)) EXPECT_EQ(v, 0.0);

    EXPECT_THROW(extract_asymptotics(s, 41), InvalidInput);
    EXPECT_THROW(extract_asymptotics(s, 1), InvalidInput);
}

TEST(Asymptotics, SlopeBoundaryRecoversPrescribedData) {
    // Pinning only w' at x_min leaves the log-offset free, so the slope near
    // x_min reproduces m closely.
    SolverOptions o;
    o.left = LeftBoundary::slope;
    std::mt19937 rng(4);
    for (int n : {1, 3, 4}) {
        const AsymptoticData d{n, 0, random_m(n, 0, rng)};
        const RadialSolution s = solve_radial_toda(d, {}, o);
        EXPECT_LT(s.residual_sup, 1e-10);
        EXPECT_LT(anti_symmetry_sup(s, 0), 1e-8);
        const auto est = extract_asymptotics(s);
        for (int j = 0; j <= n; ++j) EXPECT_NEAR(est[j], d.m[j], std::max(0.02 * std::abs(d.m[j]), 1e-3)) << n << ' ' << j;
    }
}
