#ifndef SUSYQM_ANALYTIC_HPP
#define SUSYQM_ANALYTIC_HPP

#include "susyqm/grid.hpp"
#include "susyqm/superpotential.hpp"

namespace susyqm {

// Which local Hamiltonian a deformed parity sector reduces to.
struct DispatchEntry {
    int s = -1;               // which deformed partner
    int parity_sector = 1;    // P
    int target_partner = -1;  // which local H^(0)
    bool hbar_substituted = false;
    double prefactor = 1.0;   // (1-c)^2
};

enum class LevelBranch { Undeformed, HbarRescaled, PartnerSwapped };

struct AnalyticLevel {
    int n = 0;  // node-count label
    int s = -1;
    double energy = 0.0;
    int parity = 1;  // (-1)^n
    LevelBranch branch = LevelBranch::Undeformed;
};

// hbar |(1+c)/(1-c)|, the rescaled constant of the P = +s sectors.
double hbar_of_c(double c, double hbar);

// sgn[(1+c)/(1-c)]: +1 for |c| < 1, -1 for |c| > 1.
int alpha_of_c(double c);

DispatchEntry dispatch(double c, int s, int parity_sector);

// Bound-state energy of the local partner Hamiltonian at constant hbar_eff.
//   Harmonic:  E-_n = n hbar_eff omega,   E+_n = (n+1) hbar_eff omega
//   TanhScarf: E-_n = a^2 - (a - n hbar_eff kappa/sqrt(2m))^2, E+_n = E-_{n+1}
double base_energy(const BaseSuperpotential& base, int partner, int n, double hbar_eff);

AnalyticLevel deformed_energy(const Deformation& d, int s, int n);

// Closed-form eigenfunction sampled on the grid (harmonic base only),
// quadrature-normalized, with the sign convention of the numerical solver.
Wavefunction deformed_eigenfunction(const Deformation& d, int s, int n, const Grid& grid);

// Hermite-Gaussian psi_n for the harmonic base at constant hbar_eff.
Wavefunction harmonic_eigenfunction(const BaseSuperpotential& base, int n, double hbar_eff,
                                    const Grid& grid);

} // namespace susyqm

#endif
