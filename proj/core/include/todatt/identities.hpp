#pragma once

#include <string>
#include <vector>

namespace todatt {

enum class Arithmetic { floating, exact };

struct IdentityResult {
    std::string name;
    int n = 0;
    int parameter = 0;  // epsilon for the frame-change identities, l for the automorphism
    bool passed = false;
};

/// Runs, for every n in [n_min, n_max]:
///   shift_power            T^{n+1} = epsilon Id                      (both epsilon)
///   shift_diagonalised     L^{-1} T L = expected diagonal            (both epsilon)
///   cyclic_phi             L^{-1} diag(1, omega, ..) L = Toda Phi   (both epsilon)
///   toda_pairing           frame change of the eta-orthonormal frame lands on the
///                          l = 0 (epsilon = -1) / l = 1 (epsilon = +1) Toda pairing
///   omega_automorphism     diag(omega^{j+(1-l)/2}) is an isomorphism to the
///                          omega-twin of the Toda frame                  (every l)
/// Exact mode compares in Q(exp(i pi / (n+1))); floating mode at `tol`.
std::vector<IdentityResult> run_identity_suite(int n_min, int n_max, Arithmetic mode, double tol = 1e-12);

}  // namespace todatt
