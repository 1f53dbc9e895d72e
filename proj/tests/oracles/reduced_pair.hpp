#pragma once

// Two-unknown reduced radial system
//   (1/4) v0'' = e^{2x} (e^{a v0} - e^{v1 - v0})
//   (1/4) v1'' = e^{2x} (e^{v1 - v0} - e^{-b v1})
// solved with explicit 2x2 block elimination. Independent of the library's
// rank-(n+1) assembly, so agreement checks the anti-symmetric reduction.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct PairSolve {
    std::vector<double> v0;
    std::vector<double> v1;
};

inline PairSolve reduced_pair(int a, int b, double m0, double m1, double x_min, double x_max, int points,
                              double tol = 1e-11) {
    using Mat = std::array<double, 4>;  // row-major 2x2
    using Vec = std::array<double, 2>;
    const auto inv = [](const Mat& m) {
        const double det = m[0] * m[3] - m[1] * m[2];
        return Mat{m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
    };
    const auto mul = [](const Mat& m, const Vec& v) { return Vec{m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]}; };

    const int last = points - 1;
    const double h = (x_max - x_min) / last;
    const double c = 1.0 / (4.0 * h * h);
    std::vector<double> x(points);
    PairSolve s{std::vector<double>(points), std::vector<double>(points)};
    for (int k = 0; k < points; ++k) {
        x[k] = x_min + k * h;
        const double t = 1.0 - static_cast<double>(k) / last;
        s.v0[k] = -m0 * x_min * t;
        s.v1[k] = -m1 * x_min * t;
    }

    for (int iter = 0; iter < 100; ++iter) {
        std::vector<Vec> f(points);
        std::vector<Mat> d(points);
        double sup = 0.0;
        for (int k = 1; k < last; ++k) {
            const double e = std::exp(2.0 * x[k]);
            const double ea = std::exp(a * s.v0[k]);
            const double e10 = std::exp(s.v1[k] - s.v0[k]);
            const double eb = std::exp(-b * s.v1[k]);
            f[k][0] = c * (s.v0[k + 1] - 2 * s.v0[k] + s.v0[k - 1]) - e * (ea - e10);
            f[k][1] = c * (s.v1[k + 1] - 2 * s.v1[k] + s.v1[k - 1]) - e * (e10 - eb);
            d[k] = Mat{-2 * c - e * (a * ea + e10), e * e10, e * e10, -2 * c - e * (e10 + b * eb)};
            sup = std::max({sup, std::abs(f[k][0]), std::abs(f[k][1])});
        }
        if (sup < tol) return s;
        // Forward elimination with scalar off-diagonal blocks c * Id.
        std::vector<Mat> dinv(points);
        std::vector<Vec> r(points);
        for (int k = 1; k < last; ++k) {
            Mat dk = d[k];
            Vec rk{-f[k][0], -f[k][1]};
            if (k > 1) {
                for (int q = 0; q < 4; ++q) dk[q] -= c * c * dinv[k - 1][q];
                const Vec carry = mul(dinv[k - 1], r[k - 1]);
                rk[0] -= c * carry[0];
                rk[1] -= c * carry[1];
            }
            dinv[k] = inv(dk);
            r[k] = rk;
        }
        Vec next{0.0, 0.0};
        for (int k = last - 1; k >= 1; --k) {
            const Vec rhs{r[k][0] - c * next[0], r[k][1] - c * next[1]};
            next = mul(dinv[k], rhs);
            s.v0[k] += next[0];
            s.v1[k] += next[1];
        }
    }
    throw std::runtime_error("oracle: reduced pair Newton did not converge");
}

}  // namespace oracle
