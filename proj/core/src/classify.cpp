#include "todatt/classify.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace todatt {

namespace {

int mod(int a, int p) { return ((a % p) + p) % p; }

// Union-find tracking the parity (product of signs) between a node and its root.
class SignGraph {
public:
    explicit SignGraph(std::size_t size) : parent_(size), parity_(size, 0), size_(size, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::pair<std::size_t, int> find(std::size_t x) {
        int p = 0;
        std::size_t r = x;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // Path compression with parity.
        std::size_t y = x;
        int py = p;
        while (parent_[y] != y) {
            const std::size_t next = parent_[y];
            const int step = parity_[y];
            parent_[y] = r;
            parity_[y] = py;
            py ^= step;
            y = next;
        }
        return {r, p};
    }

    /// Requires sign(x) * sign(y) == (odd ? -1 : +1). Returns false on conflict.
    bool relate(std::size_t x, std::size_t y, int odd) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) return (px ^ py) == odd;
        if (size_[rx] < size_[ry]) {
            std::swap(rx, ry);
            std::swap(px, py);
        }
        parent_[ry] = rx;
        parity_[ry] = px ^ py ^ odd;
        size_[rx] += size_[ry];
        return true;
    }

    std::size_t component_size(std::size_t x) { return size_[find(x).first]; }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
    std::vector<std::size_t> size_;
};

double wrapped_argument(const Complex& z) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::arg(z);
    if (a < 0.0) a += two_pi;
    if (a > two_pi - 1e-9) a = 0.0;
    return a;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return r;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd r(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return r;
}

void check_epsilon(int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw InvalidInput("epsilon must be +1 or -1");
}

}  // namespace

ShiftOperator build_shift_operator(int n, int epsilon) {
    if (n < 1) throw InvalidInput("build_shift_operator: n must be >= 1");
    check_epsilon(epsilon);
    return ShiftOperator{n, epsilon};
}

DftFrameChange build_dft_frame_change(int n, int epsilon) {
    if (n < 1) throw InvalidInput("build_dft_frame_change: n must be >= 1");
    check_epsilon(epsilon);
    return DftFrameChange{n, epsilon};
}

int determine_l(int epsilon) {
    check_epsilon(epsilon);
    return epsilon < 0 ? 0 : 1;
}

EigenCycle phi_eigenvalue_cycle(const ComplexMatrix& phi, double tol) {
    if (!phi.square() || phi.rows() < 2) throw InvalidInput("phi_eigenvalue_cycle: phi must be square of size >= 2");
    if (phi.max_abs() == 0.0) throw ClassificationError("Phi vanishes identically");
    const int n = static_cast<int>(phi.rows()) - 1;

    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(phi));
    if (solver.info() != Eigen::Success) throw ClassificationError("eigen-decomposition of Phi failed");
    const auto& values = solver.eigenvalues();
    const auto dim = static_cast<std::size_t>(values.size());

    double top = 0.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) top = std::max(top, std::abs(values(k)));
    std::size_t pick = dim;
    for (std::size_t k = 0; k < dim; ++k) {
        const Complex v = values(static_cast<Eigen::Index>(k));
        if (std::abs(v) < top * (1.0 - 1e-8)) continue;
        if (pick == dim || wrapped_argument(v) < wrapped_argument(values(static_cast<Eigen::Index>(pick)))) pick = k;
    }
    EigenCycle cycle;
    cycle.u0 = values(static_cast<Eigen::Index>(pick));

    std::vector<bool> used(dim, false);
    const double match_tol = std::max(tol, 1e-12) * std::abs(cycle.u0);
    for (int j = 0; j <= n; ++j) {
        const Complex target = cycle.u0 * omega_power<Complex>(n, j);
        std::size_t best = dim;
        double best_dist = match_tol;
        for (std::size_t k = 0; k < dim; ++k) {
            if (used[k]) continue;
            const double d = std::abs(values(static_cast<Eigen::Index>(k)) - target);
            if (d <= best_dist) {
                best_dist = d;
                best = k;
            }
        }
        if (best == dim) throw ClassificationError("spectrum of Phi is not a single omega-cycle");
        used[best] = true;
        cycle.ordering.push_back(best);
        cycle.eigenvalues.push_back(values(static_cast<Eigen::Index>(best)));
    }

    const ComplexMatrix vectors = from_eigen(solver.eigenvectors());
    cycle.eigenvectors = ComplexMatrix(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) cycle.eigenvectors(i, j) = vectors(i, cycle.ordering[j]);
    return cycle;
}

CanonicalForm canonicalize_to_toda_frame(const FrameStructure& s, double tol) {
    const ValidityReport validity = validate_ttstar_frame(s, tol);
    if (!validity.all_passed()) {
        for (const auto& c : validity.checks)
            if (!c.passed) throw ClassificationError("input is not a tt*-structure: " + c.name + " fails");
    }
    const int n = s.n;
    const std::size_t dim = s.rank();
    const EigenCycle cycle = phi_eigenvalue_cycle(s.phi, tol);

    // eta-orthonormal eigenframe: eta(tau_i, tau_j) = delta_ij.
    ComplexMatrix frame = cycle.eigenvectors;
    const double eta_scale = std::max(1.0, s.eta.max_abs());
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Complex> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = frame(i, j);
        double vnorm = 0.0;
        for (const auto& x : v) vnorm = std::max(vnorm, std::abs(x));
        const std::vector<Complex> ev = s.eta * v;
        Complex pairing(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i) pairing += v[i] * ev[i];
        if (std::abs(pairing) < 1e-10 * eta_scale * vnorm * vnorm)
            throw ClassificationError("eta degenerates on an eigenline of Phi");
        const Complex scale = 1.0 / std::sqrt(pairing);
        for (std::size_t i = 0; i < dim; ++i) frame(i, j) *= scale;
    }

    // Metric in the eigenframe; find signs eps_j with T(tau_j) = eps_j tau_{j-1}
    // preserving it: G_ij = eps_i eps_j G_{i-1, j-1}.
    const ComplexMatrix gram = frame.adjoint() * s.g * frame;
    const double g_scale = gram.max_abs();
    SignGraph signs(dim);
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) pairs.emplace_back(std::abs(gram(i, j)), i, j);
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    for (const auto& [mag, i, j] : pairs) {
        const Complex prev = gram((i + dim - 1) % dim, (j + dim - 1) % dim);
        if (mag < 1e-8 * g_scale || std::abs(prev) < 1e-8 * g_scale) continue;
        const Complex ratio = gram(i, j) / prev;
        const int odd = ratio.real() < 0.0 ? 1 : 0;
        if (std::abs(std::abs(ratio.real()) - 1.0) > 1e-6 || std::abs(ratio.imag()) > 1e-6 ||
            !signs.relate(i, j, odd))
            throw ClassificationError("no isomorphism to the omega-twin (metric is not shift invariant)");
    }
    std::vector<int> eps(dim);
    for (std::size_t j = 0; j < dim; ++j) eps[j] = signs.find(j).second ? -1 : 1;
    int epsilon = std::accumulate(eps.begin(), eps.end(), 1, std::multiplies<>());
    if (epsilon > 0) {
        for (std::size_t j = 0; j < dim; ++j) {
            const auto root = signs.find(j).first;
            if (root == j && signs.component_size(j) % 2 == 1) {
                for (std::size_t k = 0; k < dim; ++k)
                    if (signs.find(k).first == root) eps[k] = -eps[k];
                epsilon = -1;
                break;
            }
        }
    }

    ComplexMatrix shift(dim, dim);
    for (std::size_t j = 1; j < dim; ++j) shift(j - 1, j) = static_cast<double>(eps[j]);
    shift(dim - 1, 0) = static_cast<double>(eps[0]);
    if (relative_residual(shift.adjoint() * gram * shift, gram) > tol)
        throw ClassificationError("no isomorphism to the omega-twin (sign normalisation failed)");

    // tau_j -> eps_0 ... eps_j tau_j turns the twin isomorphism into build_shift_operator(n, epsilon).
    std::vector<Complex> cumulative(dim);
    int running = 1;
    for (std::size_t j = 0; j < dim; ++j) {
        running *= eps[j];
        cumulative[j] = static_cast<double>(running);
    }
    frame = frame * ComplexMatrix::diagonal(cumulative);

    CanonicalForm out;
    out.epsilon = epsilon;
    out.l = determine_l(epsilon);
    out.u0 = cycle.u0;
    out.twin_isomorphism = frame * build_shift_operator(n, epsilon).matrix<Complex>() * frame.inverse();

    ComplexMatrix change = frame * build_dft_frame_change(n, epsilon).matrix<Complex>();
    if (epsilon < 0) change = change * toda_phi<Complex>(n);
    out.frame_change = change;

    const ComplexMatrix eta_c = change.transpose() * s.eta * change;
    const ComplexMatrix g_c = change.adjoint() * s.g * change;
    const ComplexMatrix phi_c = change.inverse() * (s.phi * (1.0 / cycle.u0)) * change;
    out.eta_residual = relative_residual(eta_c, toda_eta<Complex>(n, out.l));
    out.phi_residual = relative_residual(phi_c, toda_phi<Complex>(n));

    ComplexMatrix g_diag(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) g_diag(j, j) = g_c(j, j);
    out.g_offdiag_residual = relative_residual(g_c, g_diag);
    if (out.eta_residual > tol || out.phi_residual > tol)
        throw ClassificationError("DFT frame change did not reach the Toda pairing");
    if (out.g_offdiag_residual > tol) throw ClassificationError("metric is not diagonal in the Toda frame");

    const double diag_scale = g_c.max_abs();
    out.w.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const Complex gj = g_c(j, j);
        if (gj.real() <= 0.0 || std::abs(gj.imag()) > tol * diag_scale)
            throw ClassificationError("metric diagonal is not real positive");
        out.w[j] = std::log(gj.real());
    }
    // The pairing partners are exact negatives up to rounding; symmetrize.
    std::vector<double> sym(dim);
    for (int j = 0; j <= n; ++j) {
        const auto p = static_cast<std::size_t>(antisymmetric_partner(n, out.l, j));
        const auto jj = static_cast<std::size_t>(j);
        if (std::abs(out.w[jj] + out.w[p]) > std::sqrt(tol))
            throw ClassificationError("extracted w violates the anti-symmetry");
        sym[jj] = 0.5 * (out.w[jj] - out.w[p]);
    }
    out.w = sym;
    out.frame = build_toda_frame(n, out.l, out.w);
    return out;
}

std::vector<double> rotate(std::span<const double> w, int s) {
    const int size = static_cast<int>(w.size());
    std::vector<double> r(w.size());
    for (int j = 0; j < size; ++j) r[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(mod(j + s, size))];
    return r;
}

std::optional<int> cyclic_equivalent(std::span<const double> w1, std::span<const double> w2, double tol) {
    if (w1.size() != w2.size()) throw InvalidInput("cyclic_equivalent: tuples differ in length");
    const int size = static_cast<int>(w1.size());
    for (int s = 0; s < size; ++s) {
        bool ok = true;
        for (int j = 0; j < size && ok; ++j)
            ok = std::abs(w2[static_cast<std::size_t>(j)] - w1[static_cast<std::size_t>(mod(j + s, size))]) <= tol;
        if (ok) return s;
    }
    return std::nullopt;
}

CyclicRepresentative canonical_rotation(std::span<const double> w) {
    CyclicRepresentative best{std::vector<double>(w.begin(), w.end()), 0};
    for (int s = 1; s < static_cast<int>(w.size()); ++s) {
        auto candidate = rotate(w, s);
        if (std::lexicographical_compare(candidate.begin(), candidate.end(), best.values.begin(), best.values.end()))
            best = {std::move(candidate), s};
    }
    return best;
}

NormalizationShift normalization_shift(int n, int l) {
    if (n < 1) throw InvalidInput("normalization_shift: n must be >= 1");
    const int period = n + 1;
    const int lr = mod(l, period);
    if (lr % 2 == 0) return {0, mod(lr / 2, period)};
    if (n % 2 == 1) return {1, mod((lr - 1) / 2, period)};
    return {0, mod(-(n - lr + 1) / 2, period)};
}

NormalizationResult normalize_l(int n, int l, std::span<const double> values, double tol) {
    if (values.size() != static_cast<std::size_t>(n + 1)) throw InvalidInput("normalize_l: need n + 1 values");
    const int lr = mod(l, n + 1);
    if (const double defect = antisymmetry_defect(n, lr, values); !(defect <= tol))
        throw InvalidInput("normalize_l: values violate the anti-symmetry for l = " + std::to_string(l));
    const NormalizationShift shift = normalization_shift(n, lr);
    return {l, shift.l_normalized, shift.shift, rotate(values, shift.shift)};
}

namespace {

constexpr std::array<TwoUnknownRow, 10> kTwoUnknownTable{{
    {3, 0, 0, 1, 2, 2},
    {4, 0, 0, 1, 1, 2},
    {4, 1, 1, 2, 2, 1},
    {5, 1, 1, 2, 1, 1},
    {3, 2, 3, 0, 2, 2},
    {4, 2, 4, 0, 2, 1},
    {4, 3, 4, 0, 1, 2},
    {5, 3, 5, 0, 1, 1},
    {4, 4, 0, 1, 2, 1},
    {5, 5, 0, 1, 1, 1},
}};

// n = 2m + n_offset. The (2m, 1) column lists v_k = w_k, but w_0 = 0 when
// l = 1; the unknowns that produce (a, b) = (2, 1) are w_{m+1}, ..., w_{2m}.
constexpr std::array<ReducedTableColumn, 4> kReducedTable{{
    {"2m-1", -1, 0, 0, 0, 2, 2},
    {"2m", 0, 0, 0, 0, 2, 1},
    {"2m", 0, 1, 1, 1, 2, 1},
    {"2m+1", 1, 1, 1, 0, 1, 1},
}};

}  // namespace

std::span<const TwoUnknownRow> two_unknown_table() { return kTwoUnknownTable; }
std::span<const ReducedTableColumn> reduced_table() { return kReducedTable; }

ReducedSystem reduce_system(int n, int l) {
    if (n < 1) throw InvalidInput("reduce_system: n must be >= 1");
    if (l != 0 && l != 1) throw InvalidInput("reduce_system: l must be 0 or 1 (normalize first)");
    for (const auto& col : kReducedTable) {
        if (col.l != l || mod(n - col.n_offset, 2) != 0) continue;
        const int m = (n - col.n_offset) / 2;
        if (m < 1) throw InvalidInput("reduce_system: (n, l) leaves no unknown function");
        ReducedSystem r{n, l, m, col.a, col.b, {}};
        for (int k = 0; k < m; ++k) r.index_map.push_back(k + col.offset_const + col.offset_per_m * m);
        return r;
    }
    throw InvalidInput("reduce_system: (n, l) outside the table");
}

TableCollapse collapse_table1() {
    TableCollapse out;
    auto find_row = [](int n, int l) -> const TwoUnknownRow* {
        for (const auto& r : kTwoUnknownTable)
            if (r.n == n && r.l == l) return &r;
        return nullptr;
    };
    bool ok = true;
    for (const auto& row : kTwoUnknownTable) {
        RowCollapse rc;
        rc.row = row;
        const NormalizationShift ns = normalization_shift(row.n, row.l);
        rc.class_n = row.n;
        rc.class_l = ns.l_normalized;
        rc.shift = ns.shift;

        const ReducedSystem cls = reduce_system(rc.class_n, rc.class_l);
        // Original w_p equals normalized w~_{p - shift}.
        auto image = [&](int p) {
            const int q = mod(p - ns.shift, row.n + 1);
            const int partner = antisymmetric_partner(row.n, rc.class_l, q);
            for (int k = 0; k < cls.m; ++k) {
                if (cls.index_map[static_cast<std::size_t>(k)] == q) return SignedSlot{1, k};
                if (cls.index_map[static_cast<std::size_t>(k)] == partner && partner != q) return SignedSlot{-1, k};
            }
            return SignedSlot{};
        };
        rc.w_image = image(row.w_index);
        rc.v_image = image(row.v_index);
        const bool direct = rc.w_image.sign == 1 && rc.w_image.slot == 0 && rc.v_image.sign == 1 && rc.v_image.slot == 1;
        rc.swapped = rc.w_image.sign == -1 && rc.w_image.slot == 1 && rc.v_image.sign == -1 && rc.v_image.slot == 0;

        const TwoUnknownRow* class_row = find_row(rc.class_n, rc.class_l);
        if (class_row != nullptr && (direct || rc.swapped) && cls.m == 2 &&
            class_row->w_index == cls.index_map[0] && class_row->v_index == cls.index_map[1]) {
            rc.exponents_match = rc.swapped ? (row.a == class_row->b && row.b == class_row->a)
                                            : (row.a == class_row->a && row.b == class_row->b);
        }
        ok = ok && rc.exponents_match;
        const std::pair<int, int> key{rc.class_n, rc.class_l};
        if (std::find(out.classes.begin(), out.classes.end(), key) == out.classes.end()) out.classes.push_back(key);
        out.rows.push_back(rc);
    }
    out.consistent = ok && out.classes.size() == 3;
    return out;
}

ClassificationReport classify_frame(const FrameStructure& s, double tol) {
    const CanonicalForm form = canonicalize_to_toda_frame(s, tol);
    const NormalizationResult norm = normalize_l(s.n, form.l, form.w, tol);
    ClassificationReport report;
    report.n = s.n;
    report.l_input = form.l;
    report.l_normalized = norm.l_normalized;
    report.shift = norm.shift;
    report.class_representative = canonical_rotation(norm.values).values;
    report.epsilon = form.epsilon;
    return report;
}

}  // namespace todatt
