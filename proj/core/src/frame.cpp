#include "todatt/frame.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace todatt {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd r(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return r;
}

void check_square(const ComplexMatrix& m, std::size_t dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim)
        throw InvalidInput(std::string("frame structure: ") + what + " has wrong dimensions");
}

void check_shapes(const FrameStructure& s) {
    if (s.n < 1) throw InvalidInput("frame structure: n must be >= 1");
    check_square(s.eta, s.rank(), "eta");
    check_square(s.g, s.rank(), "g");
    check_square(s.phi, s.rank(), "phi");
}

}  // namespace

std::vector<Complex> KappaMatrix::apply(const std::vector<Complex>& a) const {
    std::vector<Complex> conj_a(a.size());
    std::transform(a.begin(), a.end(), conj_a.begin(), [](const Complex& z) { return std::conj(z); });
    return k * conj_a;
}

double KappaMatrix::involution_residual() const {
    return relative_residual(k * k.conjugate(), ComplexMatrix::identity(k.rows()));
}

bool ValidityReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidityCheck& c) { return c.passed; });
}

const ValidityCheck& ValidityReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("no validity check named " + name);
}

int antisymmetric_partner(int n, int l, int j) {
    const int period = n + 1;
    return (((l - j - 1) % period) + period) % period;
}

double antisymmetry_defect(int n, int l, std::span<const double> w) {
    double worst = 0.0;
    for (int j = 0; j <= n; ++j)
        worst = std::max(worst, std::abs(w[static_cast<std::size_t>(j)] +
                                         w[static_cast<std::size_t>(antisymmetric_partner(n, l, j))]));
    return worst;
}

FrameStructure build_toda_frame(int n, int l, std::span<const double> w, double tol) {
    if (n < 1) throw InvalidInput("build_toda_frame: n must be >= 1");
    if (l < 0 || l > n) throw InvalidInput("build_toda_frame: l must lie in 0..n");
    if (w.size() != static_cast<std::size_t>(n + 1))
        throw InvalidInput("build_toda_frame: w must have n + 1 entries");
    if (const double defect = antisymmetry_defect(n, l, w); !(defect <= tol))
        throw InvalidInput("build_toda_frame: w violates w_j + w_{l-j-1} = 0 (defect " +
                           std::to_string(defect) + ")");
    FrameStructure s;
    s.n = n;
    s.eta = toda_eta<Complex>(n, l);
    s.phi = toda_phi<Complex>(n);
    std::vector<Complex> d;
    d.reserve(w.size());
    for (double wj : w) d.emplace_back(std::exp(wj), 0.0);
    s.g = ComplexMatrix::diagonal(d);
    return s;
}

ExactFrameStructure build_toda_frame_exact(int n, int l, std::span<const Rational> exp_w) {
    if (n < 1) throw InvalidInput("build_toda_frame_exact: n must be >= 1");
    if (l < 0 || l > n) throw InvalidInput("build_toda_frame_exact: l must lie in 0..n");
    if (exp_w.size() != static_cast<std::size_t>(n + 1))
        throw InvalidInput("build_toda_frame_exact: exp_w must have n + 1 entries");
    for (int j = 0; j <= n; ++j) {
        const Rational& a = exp_w[static_cast<std::size_t>(j)];
        if (a <= 0) throw InvalidInput("build_toda_frame_exact: metric entries must be positive");
        if (a * exp_w[static_cast<std::size_t>(antisymmetric_partner(n, l, j))] != 1)
            throw InvalidInput("build_toda_frame_exact: metric violates the anti-symmetry");
    }
    ExactFrameStructure s;
    s.n = n;
    s.eta = toda_eta<Cyclotomic>(n, l);
    s.phi = toda_phi<Cyclotomic>(n);
    std::vector<Cyclotomic> d(exp_w.begin(), exp_w.end());
    s.g = CyclotomicMatrix::diagonal(d);
    return s;
}

KappaMatrix compute_kappa(const FrameStructure& s) {
    check_shapes(s);
    // a^H g b = (K conj(a))^T eta b  for all a, b  <=>  K^T eta = g  <=>  K = eta^{-T} g^T.
    ComplexMatrix eta_inv;
    try {
        eta_inv = s.eta.inverse(1e-14 * std::max(1.0, s.eta.max_abs()));
    } catch (const std::domain_error&) {
        throw InvalidInput("compute_kappa: eta is singular");
    }
    return KappaMatrix{eta_inv.transpose() * s.g.transpose()};
}

ValidityReport validate_ttstar_frame(const FrameStructure& s, double tol) {
    check_shapes(s);
    ValidityReport report;
    auto add_identity = [&](const char* name, double residual) {
        report.checks.push_back({name, residual <= tol, residual});
    };
    auto add_margin = [&](const char* name, double margin) {
        report.checks.push_back({name, margin > tol, margin});
    };

    add_identity("eta_symmetric", relative_residual(s.eta, s.eta.transpose()));

    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(s.eta));
    const auto& sv = svd.singularValues();
    add_margin("eta_nondegenerate", sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0);

    add_identity("g_hermitian", relative_residual(s.g, s.g.adjoint()));

    const ComplexMatrix g_herm = (s.g + s.g.adjoint()) * Complex(0.5, 0.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_eigen(g_herm), Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    const double top = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    add_margin("g_positive_definite", top > 0.0 ? ev(0) / top : 0.0);

    add_identity("phi_eta_self_adjoint", relative_residual(s.phi.transpose() * s.eta, s.eta * s.phi));

    double kappa_residual = INFINITY;
    if (report.check("eta_nondegenerate").passed) kappa_residual = compute_kappa(s).involution_residual();
    add_identity("kappa_involution", kappa_residual);
    return report;
}

FrameStructure pullback(const FrameStructure& s, const ComplexMatrix& m) {
    check_shapes(s);
    FrameStructure r;
    r.n = s.n;
    r.eta = m.transpose() * s.eta * m;
    r.g = m.adjoint() * s.g * m;
    r.phi = m.inverse() * s.phi * m;
    return r;
}

}  // namespace todatt
