#ifndef SUSYQM_VERIFY_HPP
#define SUSYQM_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/matrix.hpp"
#include "susyqm/superpotential.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool overall() const;
};

struct WittenIndex {
    int delta = 0;
    bool unbroken = false;
};

// Cross-checks the spectra of A_dagger A against the assembled H_minus (and
// A A_dagger against H_plus): lowest levels matched to the nearest factorized
// eigenvalue, with an h-halving run confirming second-order shrinkage.
CheckResult check_factorization(const Deformation& d, const Grid& grid);

// Lowest level of the assembled partner s, zero-mode presence against the
// |c| <> 1 census, and (when present) annihilation residual, quadrature norm
// and boundary decay of the extracted ground state.
CheckResult check_zero_mode(const Deformation& d, int s, const Grid& grid);

// A psi_-,n = sgn(1-c) sqrt(E_-,n) psi_+,n' with n' = n-1 (n even, or n odd
// with |c|<1) or n' = n+1 (n odd, |c|>1), plus the mirrored A_dagger map.
CheckResult check_ladder(const Deformation& d, const Grid& grid, int n_max);

// Zero-mode census of both partners; delta = #(H_minus) - #(H_plus).
WittenIndex witten_index(const Deformation& d, const Grid& grid);

// Detects numerically degenerate opposite-parity pairs among the lowest k
// levels of H_minus and compares against the closed-form prediction.
CheckResult check_degeneracy(const Deformation& d, const Grid& grid, int k);

// Rank-r separable kernel built from the lowest local eigenstates shifts
// E_n to E_n + eps_n and leaves the remaining levels untouched.
CheckResult check_separable_shift(const BaseSuperpotential& base,
                                  const std::vector<double>& strengths, const Grid& grid);

// Positive spectra of the two partners agree apart from zero modes.
CheckResult check_isospectrality(const Deformation& d, const Grid& grid, int k);

// Max-norm residual of the zero-mode integro-differential equation
//   mu psi0' + W psi0 + integral w(x,y) psi0(y) dy = 0
// for an explicit kernel (e.g. one reconstructed from the ground state).
double zero_mode_equation_residual(const Wavefunction& psi0,
                                   const std::optional<ScalarFunction>& W, const Matrix& kernel,
                                   const Grid& grid, const UnitSystem& units);

struct SuiteConfig {
    std::vector<double> c_values = {0.0, -0.5, 1.0 / 3.0, 0.5, -2.0, 2.0};
    double omega = 2.0;
    UnitSystem units{};
    double grid_l = 12.0;
    // N=2001 keeps the worst-case O(h^2) residuals (ladder and
    // isospectrality at c=-2) a factor >= 2 inside their tolerances.
    int grid_n = 2001;
    int ladder_n_max = 3;
    int degeneracy_k = 8;
};

// Runs every check over the configured c-list (plus one separable-kernel
// check); per-check errors are recorded, not propagated. Report ordering is
// deterministic: by check name, then c.
VerificationReport run_suite(const SuiteConfig& cfg);

std::string report_to_json(const VerificationReport& report);

} // namespace susyqm

#endif
