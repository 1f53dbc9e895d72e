#pragma once

#include <string>
#include <vector>

#include "todatt/errors.hpp"

namespace todatt {

/// l-asymptotic data: w_j ~ -m_j log|t| as t -> 0, with
///   m_j + m_{(n+l-j) mod (n+1)} = 0   and   m_{j-1} - m_j + 2 >= 0.
struct AsymptoticData {
    int n = 1;
    int l = 0;
    std::vector<double> m;
};

/// Checks the invariants. Throws InvalidInput on violation; returns warnings
/// for boundary cases (m_{j-1} - m_j + 2 == 0) that the solver may not handle.
std::vector<std::string> check_asymptotic_data(const AsymptoticData& data, double tol = 1e-12);

/// Uniform grid in x = log r.
struct Grid {
    double x_min = -6.0;
    double x_max = 2.5;
    int points = 2000;

    double spacing() const { return (x_max - x_min) / (points - 1); }
    double at(int k) const { return x_min + k * spacing(); }
};

/// Condition imposed at x_min. `dirichlet` pins w_j(x_min) = -m_j x_min;
/// `slope` pins only the derivative, w_j'(x_min) = -m_j, leaving the constant
/// in w_j ~ -m_j log r + c_j free.
enum class LeftBoundary { dirichlet, slope };

struct SolverOptions {
    double tol = 1e-10;  // sup-norm of the discrete residual
    int max_iter = 50;
    double damping = 1.0;  // initial Newton step length
    int max_halvings = 30;
    LeftBoundary left = LeftBoundary::dirichlet;
};

/// w[j][k] is w_j at x[k].
using Profiles = std::vector<std::vector<double>>;

struct RadialSolution {
    int n = 1;
    int l = 0;
    std::vector<double> x;
    Profiles w;
    double residual_sup = 0.0;
    int newton_iterations = 0;
    std::vector<std::string> warnings;

    std::size_t grid_size() const { return x.size(); }
};

/// Discrete radial tt*-Toda operator at interior nodes k = 1..N-2:
///   F_jk = (w_j,k+1 - 2 w_jk + w_j,k-1) / (4 h^2) - e^{2 x_k} (e^{w_j - w_{j-1}} - e^{w_{j+1} - w_j})
/// i.e. (1/4) w'' = e^{2x} (...) in x = log r. Entries at k = 0 and N-1 are 0.
/// x must be uniform.
Profiles radial_residual(const std::vector<double>& x, const Profiles& w);

/// Jacobian of radial_residual with respect to the interior unknowns. The
/// neighbouring-node blocks are coupling * Id; diagonal[k] is the dense
/// (n+1) x (n+1) block at interior node k + 1 (row-major).
struct BlockTridiagonalJacobian {
    std::size_t block = 0;
    double coupling = 0.0;
    std::vector<std::vector<double>> diagonal;
};
BlockTridiagonalJacobian radial_jacobian(const std::vector<double>& x, const Profiles& w);

/// Damped Newton on the discrete system with Dirichlet data
/// w_j(x_min) = -m_j x_min and w_j(x_max) = 0, starting from the linear
/// interpolant of the boundary values. With LeftBoundary::slope the left value
/// is instead w_j(x_min) = w_j(x_min + h) + m_j h, refreshed every step. Line search halves the step until the
/// residual 2-norm decreases. Throws ConvergenceError past max_iter.
RadialSolution solve_radial_toda(const AsymptoticData& data, const Grid& grid = {}, const SolverOptions& opts = {});

/// Negated least-squares slope of each w_j against x over the first `window`
/// grid points.
std::vector<double> extract_asymptotics(const RadialSolution& sol, int window = 10);

/// Per-equation sup over interior nodes of |radial_residual|.
std::vector<double> toda_residual(const RadialSolution& sol);

/// sup over the grid of |w_j + w_{(l-j-1) mod (n+1)}|, maximised over j.
double anti_symmetry_sup(const RadialSolution& sol, int l);
bool check_anti_symmetry(const RadialSolution& sol, int l, double tol);

/// sup over the grid of |sum_j w_j|.
double sum_sup(const RadialSolution& sol);

/// Four-point cubic interpolation onto the grid with half the spacing
/// (2N - 1 points); fourth-order accurate, so the refined residual keeps the
/// second-order truncation error of the coarse solution.
RadialSolution interpolate_to_refined_grid(const RadialSolution& sol);

}  // namespace todatt
