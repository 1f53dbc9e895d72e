#include "todatt/identities.hpp"

#include "todatt/classify.hpp"

namespace todatt {

namespace {

// A positive metric diagonal with a_j * a_{partner(j)} = 1, built from small
// distinct integers so the check is not trivially g = Id.
template <typename F>
DenseMatrix<F> sample_metric(int n, int l) {
    std::vector<F> d(static_cast<std::size_t>(n + 1), FieldTraits<F>::from_int(1));
    for (int j = 0; j <= n; ++j) {
        const int p = antisymmetric_partner(n, l, j);
        if (p <= j) continue;
        const long long num = j + 2;
        const long long den = p + 3;
        if constexpr (FieldTraits<F>::exact) {
            d[static_cast<std::size_t>(j)] = F(Rational(num, den));
            d[static_cast<std::size_t>(p)] = F(Rational(den, num));
        } else {
            d[static_cast<std::size_t>(j)] = F(static_cast<double>(num) / static_cast<double>(den));
            d[static_cast<std::size_t>(p)] = F(static_cast<double>(den) / static_cast<double>(num));
        }
    }
    return DenseMatrix<F>::diagonal(d);
}

template <typename F>
void run_for(int n, double tol, std::vector<IdentityResult>& out) {
    const auto dim = static_cast<std::size_t>(n + 1);
    std::vector<F> omegas;
    for (int k = 0; k <= n; ++k) omegas.push_back(omega_power<F>(n, k));
    const DenseMatrix<F> omega_diag = DenseMatrix<F>::diagonal(omegas);

    for (int epsilon : {-1, 1}) {
        const DenseMatrix<F> t = build_shift_operator(n, epsilon).matrix<F>();
        out.push_back({"shift_power", n, epsilon,
                       matrices_agree(t.pow(static_cast<unsigned>(n + 1)),
                                      DenseMatrix<F>::identity(dim) * FieldTraits<F>::from_int(epsilon), tol)});

        const DftFrameChange dft = build_dft_frame_change(n, epsilon);
        const DenseMatrix<F> l = dft.matrix<F>();
        const DenseMatrix<F> l_inv = l.inverse();
        out.push_back({"shift_diagonalised", n, epsilon, matrices_agree(l_inv * t * l, dft.conjugated_shift<F>(), tol)});
        out.push_back({"cyclic_phi", n, epsilon, matrices_agree(l_inv * omega_diag * l, toda_phi<F>(n), tol)});

        DenseMatrix<F> change = l;
        if (epsilon < 0) change = change * toda_phi<F>(n);
        DenseMatrix<F> expected = toda_eta<F>(n, determine_l(epsilon));
        // The exact L omits 1/sqrt(n+1), so the pairing picks up a factor n+1.
        if constexpr (FieldTraits<F>::exact) expected *= FieldTraits<F>::from_int(n + 1);
        out.push_back({"toda_pairing", n, epsilon, matrices_agree(change.transpose() * change, expected, tol)});
    }

    for (int l = 0; l <= n; ++l) {
        BasicFrameStructure<F> s{n, toda_eta<F>(n, l), sample_metric<F>(n, l), toda_phi<F>(n)};
        const DenseMatrix<F> t = omega_automorphism<F>(n, l);
        out.push_back({"omega_automorphism", n, l, verify_isomorphism(t, s, omega_twin(s), tol)});
    }
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(int n_min, int n_max, Arithmetic mode, double tol) {
    if (n_min < 1 || n_max < n_min) throw InvalidInput("run_identity_suite: need 1 <= n_min <= n_max");
    std::vector<IdentityResult> out;
    for (int n = n_min; n <= n_max; ++n) {
        if (mode == Arithmetic::exact) run_for<Cyclotomic>(n, tol, out);
        else run_for<Complex>(n, tol, out);
    }
    return out;
}

}  // namespace todatt
