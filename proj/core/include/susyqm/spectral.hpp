#ifndef SUSYQM_SPECTRAL_HPP
#define SUSYQM_SPECTRAL_HPP

#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/operators.hpp"

namespace susyqm {

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
};

// k smallest eigenpairs of a symmetric matrix. Householder tridiagonalization
// followed by implicit-shift QL; cyclic Jacobi for N <= 64. Deterministic.
std::vector<EigenPair> eigensolve_symmetric(const OperatorMatrix& m, int k);

// Eigenvalues only (no accumulation); cheaper for convergence studies.
std::vector<double> eigenvalues_symmetric(const OperatorMatrix& m, int k);

// M restricted to the even ((N+1)/2) or odd ((N-1)/2) parity subspace in the
// orthonormal symmetric/antisymmetric combination basis. Requires M to
// commute with parity to 1e-10 relative.
OperatorMatrix sector_project(const OperatorMatrix& m, int parity, const Grid& grid);

// Maps sector-basis coefficients back to grid samples.
std::vector<double> sector_embed(const Grid& grid, int parity, const std::vector<double>& coeffs);

struct SpectrumLevel {
    double energy = 0.0;
    int parity = 1;
    int nodes = 0;
    Wavefunction eigenfunction;
};

// Levels sorted by energy ascending; within 1e-9 even parity first.
struct Spectrum {
    std::vector<SpectrumLevel> levels;

    // First level whose node count equals n, or nullptr.
    const SpectrumLevel* by_nodes(int n) const;
};

// Solves both parity sectors (k levels each), merges, quadrature-normalizes,
// applies the sign convention, and labels levels by node count.
Spectrum solve_labeled(const OperatorMatrix& m, const Grid& grid, int k);

double parity_commutator_residual(const OperatorMatrix& m, const Grid& grid);

} // namespace susyqm

#endif
