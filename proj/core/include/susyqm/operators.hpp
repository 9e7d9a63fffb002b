#ifndef SUSYQM_OPERATORS_HPP
#define SUSYQM_OPERATORS_HPP

#include "susyqm/grid.hpp"
#include "susyqm/matrix.hpp"
#include "susyqm/superpotential.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

// Dense matrix representation of an operator acting on grid samples.
struct OperatorMatrix {
    Grid grid;
    Matrix entries;
    bool symmetric = false;

    OperatorMatrix() = default;
    OperatorMatrix(const Grid& g, Matrix m, bool sym);

    std::vector<double> apply(std::span<const double> v) const { return entries.apply(v); }
    Wavefunction apply(const Wavefunction& psi) const;
};

// A and its quadrature-weighted adjoint, plus the symmetrized products
// A_dagger A and A A_dagger (similarity-transformed with w^{1/2} so the
// matrices handed to the eigensolver are bit-exactly symmetric).
struct FactorizationPair {
    OperatorMatrix A;
    OperatorMatrix A_dagger;
    OperatorMatrix H_minus;
    OperatorMatrix H_plus;
};

// Second-order central difference of -hbar^2/(2m) d^2/dx^2 with Dirichlet
// truncation.
OperatorMatrix kinetic_matrix(const Grid& grid, const UnitSystem& units);

OperatorMatrix parity_matrix(const Grid& grid);

OperatorMatrix diagonal_matrix(const std::vector<double>& values, const Grid& grid);

// Nonlocal potential in action form: entries k(x_i, x_j) * w_j, so that
// matrix * psi approximates the integral of v(x,y) psi(y). The raw matrix is
// not symmetric; see symmetrize_weighted.
OperatorMatrix kernel_matrix(const Matrix& kernel, const Grid& grid);

// w^{1/2} M w^{-1/2}; for a kernel-action matrix this gives the symmetric
// form k(x_i,x_j) sqrt(w_i w_j) with identical spectrum.
OperatorMatrix symmetrize_weighted(const OperatorMatrix& m);

// Centered first-derivative matrix (one-sided second-order at endpoints).
OperatorMatrix derivative_matrix(const Grid& grid);

// A = (hbar/sqrt(2m)) D + (1-c) W0(x) + c (hbar/sqrt(2m)) P D, where P D
// samples psi'(-x); the delta'(x+y) kernel is applied in this exact operator
// form rather than discretized as a distribution.
FactorizationPair A_matrices(const Deformation& d, const Grid& grid);

// H_s = (1 + s c P)^2 T + (1-c)^2 W0^2 + s (1-c) (hbar/sqrt(2m)) W0' (1 + s c P).
OperatorMatrix deformed_hamiltonian(const Deformation& d, int s, const Grid& grid);

} // namespace susyqm

#endif
