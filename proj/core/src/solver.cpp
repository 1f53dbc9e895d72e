#include "todatt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "todatt/frame.hpp"

namespace todatt {

namespace {

double sup_norm(const Profiles& f) {
    double s = 0.0;
    for (const auto& row : f)
        for (double v : row) s = std::max(s, std::abs(v));
    return s;
}

double two_norm(const Profiles& f) {
    double s = 0.0;
    for (const auto& row : f)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

void check_profiles(const std::vector<double>& x, const Profiles& w) {
    if (x.size() < 3) throw InvalidInput("radial profiles need at least 3 grid points");
    if (w.size() < 2) throw InvalidInput("radial profiles need at least 2 components");
    for (const auto& row : w)
        if (row.size() != x.size()) throw InvalidInput("profile length differs from grid length");
}

}  // namespace

std::vector<std::string> check_asymptotic_data(const AsymptoticData& data, double tol) {
    const int n = data.n;
    if (n < 1) throw InvalidInput("asymptotic data: n must be >= 1");
    if (data.l != 0 && data.l != 1) throw InvalidInput("asymptotic data: l must be 0 or 1");
    if (data.m.size() != static_cast<std::size_t>(n + 1)) throw InvalidInput("asymptotic data: m needs n + 1 entries");
    for (double v : data.m)
        if (!std::isfinite(v)) throw InvalidInput("asymptotic data: m must be finite");
    if (antisymmetry_defect(n, data.l, data.m) > tol)
        throw InvalidInput("asymptotic data: m_j + m_{n+l-j} != 0");
    std::vector<std::string> warnings;
    for (int j = 0; j <= n; ++j) {
        const double gap = data.m[static_cast<std::size_t>((j + n) % (n + 1))] - data.m[static_cast<std::size_t>(j)] + 2.0;
        if (gap < -tol) {
            std::ostringstream os;
            os << "asymptotic data: m_{j-1} - m_j + 2 < 0 at j = " << j;
            throw InvalidInput(os.str());
        }
        if (gap <= tol) {
            std::ostringstream os;
            os << "m_{j-1} - m_j + 2 = 0 at j = " << j << "; the solver may not converge on the boundary of the moduli";
            warnings.push_back(os.str());
        }
    }
    return warnings;
}

Profiles radial_residual(const std::vector<double>& x, const Profiles& w) {
    check_profiles(x, w);
    const std::size_t comps = w.size();
    const std::size_t size = x.size();
    const double h = x[1] - x[0];
    const double c = 1.0 / (4.0 * h * h);
    Profiles f(comps, std::vector<double>(size, 0.0));
    for (std::size_t k = 1; k + 1 < size; ++k) {
        const double weight = std::exp(2.0 * x[k]);
        for (std::size_t j = 0; j < comps; ++j) {
            const std::size_t prev = (j + comps - 1) % comps;
            const std::size_t next = (j + 1) % comps;
            const double rhs = std::exp(w[j][k] - w[prev][k]) - std::exp(w[next][k] - w[j][k]);
            f[j][k] = c * (w[j][k + 1] - 2.0 * w[j][k] + w[j][k - 1]) - weight * rhs;
        }
    }
    return f;
}

BlockTridiagonalJacobian radial_jacobian(const std::vector<double>& x, const Profiles& w) {
    check_profiles(x, w);
    const std::size_t comps = w.size();
    const std::size_t size = x.size();
    const double h = x[1] - x[0];
    BlockTridiagonalJacobian jac;
    jac.block = comps;
    jac.coupling = 1.0 / (4.0 * h * h);
    jac.diagonal.assign(size - 2, std::vector<double>(comps * comps, 0.0));
    for (std::size_t k = 1; k + 1 < size; ++k) {
        auto& d = jac.diagonal[k - 1];
        const double weight = std::exp(2.0 * x[k]);
        for (std::size_t j = 0; j < comps; ++j) {
            const std::size_t prev = (j + comps - 1) % comps;
            const std::size_t next = (j + 1) % comps;
            const double down = weight * std::exp(w[j][k] - w[prev][k]);
            const double up = weight * std::exp(w[next][k] - w[j][k]);
            d[j * comps + j] += -2.0 * jac.coupling - down - up;
            d[j * comps + prev] += down;
            d[j * comps + next] += up;
        }
    }
    return jac;
}

namespace {

// Solves J delta = rhs (rhs indexed [k][j] over interior nodes) by block
// forward elimination and back substitution.
std::vector<Eigen::VectorXd> block_thomas(const BlockTridiagonalJacobian& jac, std::vector<Eigen::VectorXd> rhs) {
    const std::size_t nodes = jac.diagonal.size();
    const auto b = static_cast<Eigen::Index>(jac.block);
    const double c = jac.coupling;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> factors;
    factors.reserve(nodes);
    Eigen::MatrixXd prev_inv;
    for (std::size_t k = 0; k < nodes; ++k) {
        Eigen::MatrixXd d = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            jac.diagonal[k].data(), b, b);
        if (k > 0) {
            d -= c * c * prev_inv;
            rhs[k] -= c * factors.back().solve(rhs[k - 1]);
        }
        factors.emplace_back(d);
        prev_inv = factors.back().inverse();
    }
    std::vector<Eigen::VectorXd> delta(nodes);
    for (std::size_t k = nodes; k-- > 0;) {
        Eigen::VectorXd r = rhs[k];
        if (k + 1 < nodes) r -= c * delta[k + 1];
        delta[k] = factors[k].solve(r);
    }
    return delta;
}

}  // namespace

RadialSolution solve_radial_toda(const AsymptoticData& data, const Grid& grid, const SolverOptions& opts) {
    RadialSolution sol;
    sol.warnings = check_asymptotic_data(data);
    if (!(grid.x_min < 0.0 && 0.0 < grid.x_max)) throw InvalidInput("grid: need x_min < 0 < x_max");
    if (grid.points < 50) throw InvalidInput("grid: need at least 50 points");
    if (!(opts.tol > 0.0) || opts.max_iter < 1 || !(opts.damping > 0.0 && opts.damping <= 1.0))
        throw InvalidInput("solver options: need tol > 0, max_iter >= 1, damping in (0, 1]");

    const int n = data.n;
    const auto comps = static_cast<std::size_t>(n + 1);
    const auto size = static_cast<std::size_t>(grid.points);
    sol.n = n;
    sol.l = data.l;
    sol.x.resize(size);
    for (std::size_t k = 0; k < size; ++k) sol.x[k] = grid.at(static_cast<int>(k));
    sol.x.back() = grid.x_max;

    sol.w.assign(comps, std::vector<double>(size, 0.0));
    for (std::size_t j = 0; j < comps; ++j) {
        const double left = -data.m[j] * grid.x_min;
        for (std::size_t k = 0; k < size; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(size - 1);
            sol.w[j][k] = left * (1.0 - t);
        }
        sol.w[j].front() = left;
        sol.w[j].back() = 0.0;
    }

    const double h = grid.spacing();
    const bool slope = opts.left == LeftBoundary::slope;
    const auto pin_left = [&](Profiles& w) {
        if (!slope) return;
        for (std::size_t j = 0; j < comps; ++j) w[j][0] = w[j][1] + data.m[j] * h;
    };
    pin_left(sol.w);

    Profiles f = radial_residual(sol.x, sol.w);
    double merit = two_norm(f);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        sol.residual_sup = sup_norm(f);
        sol.newton_iterations = iter;
        if (sol.residual_sup <= opts.tol) return sol;

        BlockTridiagonalJacobian jac = radial_jacobian(sol.x, sol.w);
        // The left value follows w_1, so d F_1 / d w_1 gains one coupling term.
        if (slope)
            for (std::size_t j = 0; j < comps; ++j) jac.diagonal.front()[j * comps + j] += jac.coupling;
        std::vector<Eigen::VectorXd> rhs(size - 2, Eigen::VectorXd(static_cast<Eigen::Index>(comps)));
        for (std::size_t k = 1; k + 1 < size; ++k)
            for (std::size_t j = 0; j < comps; ++j) rhs[k - 1](static_cast<Eigen::Index>(j)) = -f[j][k];
        const std::vector<Eigen::VectorXd> delta = block_thomas(jac, std::move(rhs));

        double step = opts.damping;
        bool accepted = false;
        for (int halving = 0; halving <= opts.max_halvings; ++halving, step *= 0.5) {
            Profiles trial = sol.w;
            for (std::size_t k = 1; k + 1 < size; ++k)
                for (std::size_t j = 0; j < comps; ++j) trial[j][k] += step * delta[k - 1](static_cast<Eigen::Index>(j));
            pin_left(trial);
            Profiles trial_f = radial_residual(sol.x, trial);
            const double trial_merit = two_norm(trial_f);
            if (std::isfinite(trial_merit) && trial_merit < merit) {
                sol.w = std::move(trial);
                f = std::move(trial_f);
                merit = trial_merit;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            sol.residual_sup = sup_norm(f);
            throw ConvergenceError("line search failed to reduce the residual", sol.residual_sup, iter);
        }
    }
    sol.residual_sup = sup_norm(f);
    if (sol.residual_sup <= opts.tol) return sol;
    throw ConvergenceError("Newton iteration did not converge within max_iter", sol.residual_sup, opts.max_iter);
}

std::vector<double> extract_asymptotics(const RadialSolution& sol, int window) {
    if (window < 2 || static_cast<std::size_t>(window) > sol.grid_size())
        throw InvalidInput("extract_asymptotics: window must lie in 2..grid size");
    const auto count = static_cast<std::size_t>(window);
    double x_mean = 0.0;
    for (std::size_t k = 0; k < count; ++k) x_mean += sol.x[k];
    x_mean /= static_cast<double>(count);
    double sxx = 0.0;
    for (std::size_t k = 0; k < count; ++k) sxx += (sol.x[k] - x_mean) * (sol.x[k] - x_mean);

    std::vector<double> m_hat;
    m_hat.reserve(sol.w.size());
    for (const auto& wj : sol.w) {
        double w_mean = 0.0;
        for (std::size_t k = 0; k < count; ++k) w_mean += wj[k];
        w_mean /= static_cast<double>(count);
        double sxy = 0.0;
        for (std::size_t k = 0; k < count; ++k) sxy += (sol.x[k] - x_mean) * (wj[k] - w_mean);
        m_hat.push_back(-sxy / sxx);
    }
    return m_hat;
}

std::vector<double> toda_residual(const RadialSolution& sol) {
    const Profiles f = radial_residual(sol.x, sol.w);
    std::vector<double> out;
    out.reserve(f.size());
    for (const auto& row : f) {
        double s = 0.0;
        for (double v : row) s = std::max(s, std::abs(v));
        out.push_back(s);
    }
    return out;
}

double anti_symmetry_sup(const RadialSolution& sol, int l) {
    const int n = static_cast<int>(sol.w.size()) - 1;
    double worst = 0.0;
    for (int j = 0; j <= n; ++j) {
        const auto& a = sol.w[static_cast<std::size_t>(j)];
        const auto& b = sol.w[static_cast<std::size_t>(antisymmetric_partner(n, l, j))];
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] + b[k]));
    }
    return worst;
}

bool check_anti_symmetry(const RadialSolution& sol, int l, double tol) { return anti_symmetry_sup(sol, l) < tol; }

double sum_sup(const RadialSolution& sol) {
    double worst = 0.0;
    for (std::size_t k = 0; k < sol.grid_size(); ++k) {
        double s = 0.0;
        for (const auto& wj : sol.w) s += wj[k];
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

RadialSolution interpolate_to_refined_grid(const RadialSolution& sol) {
    const std::size_t size = sol.grid_size();
    if (size < 4) throw InvalidInput("interpolate_to_refined_grid: need at least 4 points");
    RadialSolution fine;
    fine.n = sol.n;
    fine.l = sol.l;
    const std::size_t fine_size = 2 * size - 1;
    fine.x.resize(fine_size);
    const double h = (sol.x.back() - sol.x.front()) / static_cast<double>(fine_size - 1);
    for (std::size_t k = 0; k < fine_size; ++k) fine.x[k] = sol.x.front() + static_cast<double>(k) * h;
    fine.x.back() = sol.x.back();

    fine.w.assign(sol.w.size(), std::vector<double>(fine_size, 0.0));
    for (std::size_t j = 0; j < sol.w.size(); ++j) {
        const auto& c = sol.w[j];
        auto& f = fine.w[j];
        for (std::size_t k = 0; k < size; ++k) f[2 * k] = c[k];
        for (std::size_t k = 0; k + 1 < size; ++k) {
            double mid;
            if (k == 0) mid = (5.0 * c[0] + 15.0 * c[1] - 5.0 * c[2] + c[3]) / 16.0;
            else if (k + 2 == size) mid = (5.0 * c[k + 1] + 15.0 * c[k] - 5.0 * c[k - 1] + c[k - 2]) / 16.0;
            else mid = (-c[k - 1] + 9.0 * c[k] + 9.0 * c[k + 1] - c[k + 2]) / 16.0;
            f[2 * k + 1] = mid;
        }
    }
    const std::vector<double> res = toda_residual(fine);
    fine.residual_sup = *std::max_element(res.begin(), res.end());
    return fine;
}

}  // namespace todatt
