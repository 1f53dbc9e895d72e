#pragma once

// Symbolic reduction of the anti-symmetric Toda system. Every w_j becomes an
// integer linear form in the chosen unknowns v_k = w_{index_map[k]}; the
// exponents a and b are then read off the first and last reduced equations.

#include <optional>
#include <vector>

namespace oracle {

using Form = std::vector<int>;  // coefficients over v_0..v_{m-1}

struct ReductionCheck {
    bool well_formed = false;  // middle equations and the dependent ones match
    int a = 0;
    int b = 0;
};

inline ReductionCheck symbolic_reduction(int n, int l, const std::vector<int>& index_map) {
    const int dim = n + 1;
    const int m = static_cast<int>(index_map.size());
    const auto mod = [dim](int j) { return ((j % dim) + dim) % dim; };
    std::vector<std::optional<Form>> w(dim);
    for (int k = 0; k < m; ++k) {
        Form f(m, 0);
        f[k] = 1;
        w[mod(index_map[k])] = f;
    }
    for (int j = 0; j < dim; ++j) {
        const int p = mod(l - j - 1);
        if (w[j] && !w[p]) {
            Form f = *w[j];
            for (int& c : f) c = -c;
            w[p] = f;
        }
    }
    for (int j = 0; j < dim; ++j) {
        if (!w[j]) {
            if (mod(l - j - 1) != j) return {};
            w[j] = Form(m, 0);  // self-partner: w_j = 0
        }
    }
    const auto diff = [&](int i, int j) {
        Form f(m);
        for (int k = 0; k < m; ++k) f[k] = (*w[mod(i)])[k] - (*w[mod(j)])[k];
        return f;
    };
    const auto unit = [m](int k, int scale) {
        Form f(m, 0);
        f[k] = scale;
        return f;
    };

    ReductionCheck out;
    // Equation of v_0: first exponent a v_0; equation of v_{m-1}: last exponent -b v_{m-1}.
    const Form first = diff(index_map.front(), index_map.front() - 1);
    const Form last = diff(index_map.back() + 1, index_map.back());
    out.a = first[0];
    out.b = -last[m - 1];
    if (first != unit(0, out.a) || last != unit(m - 1, -out.b)) return out;
    for (int k = 0; k + 1 < m; ++k) {
        // Consecutive chosen indices must be neighbours so the coupling is e^{v_{k+1} - v_k}.
        if (mod(index_map[k] + 1) != mod(index_map[k + 1])) return out;
    }
    // Every other equation must be a negated copy or vanish identically.
    for (int j = 0; j < dim; ++j) {
        const Form lhs = *w[j];
        const Form t1 = diff(j, j - 1);
        const Form t2 = diff(j + 1, j);
        bool zero = true;
        for (int c : lhs) zero = zero && c == 0;
        if (zero && t1 != t2) return out;
    }
    out.well_formed = true;
    return out;
}

}  // namespace oracle
