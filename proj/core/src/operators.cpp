#include "susyqm/operators.hpp"

#include <cmath>

namespace susyqm {

OperatorMatrix::OperatorMatrix(const Grid& g, Matrix m, bool sym)
    : grid(g), entries(std::move(m)), symmetric(sym) {
    if (entries.rows() != entries.cols())
        throw LengthMismatchError("operator matrix must be square");
    // Sector-projected operators carry the parent grid but act on a smaller
    // combination basis, so the row count may be below grid.n_points().
    if (entries.rows() > grid.n_points())
        throw LengthMismatchError("operator matrix larger than grid");
    if (symmetric && !entries.is_symmetric(1e-12))
        throw NotSymmetricError("operator flagged symmetric is not");
}

Wavefunction OperatorMatrix::apply(const Wavefunction& psi) const {
    if (!(psi.grid == grid))
        throw GridMismatchError("operator applied to wavefunction on a different grid");
    return Wavefunction(grid, entries.apply(psi.values));
}

OperatorMatrix kinetic_matrix(const Grid& grid, const UnitSystem& units) {
    units.validate();
    const int n = grid.n_points();
    const double k = units.kinetic_scale() / (grid.spacing() * grid.spacing());
    Matrix t(n, n);
    for (int i = 0; i < n; ++i) {
        t(i, i) = 2.0 * k;
        if (i > 0) t(i, i - 1) = -k;
        if (i + 1 < n) t(i, i + 1) = -k;
    }
    return OperatorMatrix(grid, std::move(t), true);
}

OperatorMatrix parity_matrix(const Grid& grid) {
    const int n = grid.n_points();
    Matrix p(n, n);
    for (int i = 0; i < n; ++i) p(i, n - 1 - i) = 1.0;
    return OperatorMatrix(grid, std::move(p), true);
}

OperatorMatrix diagonal_matrix(const std::vector<double>& values, const Grid& grid) {
    const int n = grid.n_points();
    if (static_cast<int>(values.size()) != n)
        throw LengthMismatchError("diagonal_matrix: values length does not match grid");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = values[i];
    return OperatorMatrix(grid, std::move(m), true);
}

OperatorMatrix kernel_matrix(const Matrix& kernel, const Grid& grid) {
    const int n = grid.n_points();
    if (kernel.rows() != n || kernel.cols() != n)
        throw LengthMismatchError("kernel_matrix: kernel must be N x N");
    if (!kernel.is_symmetric(1e-10))
        throw AsymmetricKernelError("kernel_matrix: kernel is not symmetric in x and y");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = kernel(i, j) * grid.weight(j);
    return OperatorMatrix(grid, std::move(m), false);
}

OperatorMatrix symmetrize_weighted(const OperatorMatrix& op) {
    const int n = op.grid.n_points();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const double si = std::sqrt(op.grid.weight(i));
        for (int j = 0; j < n; ++j)
            m(i, j) = si * op.entries(i, j) / std::sqrt(op.grid.weight(j));
    }
    const bool sym = m.is_symmetric(1e-12);
    return OperatorMatrix(op.grid, std::move(m), sym);
}

OperatorMatrix derivative_matrix(const Grid& grid) {
    const int n = grid.n_points();
    const double h = grid.spacing();
    Matrix d(n, n);
    d(0, 0) = -1.5 / h;
    d(0, 1) = 2.0 / h;
    d(0, 2) = -0.5 / h;
    for (int i = 1; i + 1 < n; ++i) {
        d(i, i - 1) = -0.5 / h;
        d(i, i + 1) = 0.5 / h;
    }
    d(n - 1, n - 1) = 1.5 / h;
    d(n - 1, n - 2) = -2.0 / h;
    d(n - 1, n - 3) = 0.5 / h;
    return OperatorMatrix(grid, std::move(d), false);
}

FactorizationPair A_matrices(const Deformation& d, const Grid& grid) {
    const int n = grid.n_points();
    const double mu = d.base.units().momentum_scale();
    const double c = d.c;
    const Matrix deriv = derivative_matrix(grid).entries;

    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
        const int ir = n - 1 - i;
        for (int j = 0; j < n; ++j)
            a(i, j) = mu * deriv(i, j) + c * mu * deriv(ir, j);
        a(i, i) += (1.0 - c) * d.base.value(grid.point(i));
    }

    // Quadrature-weighted adjoint: A†_ij = (w_j / w_i) A_ji.
    Matrix adj(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            adj(i, j) = grid.weight(j) / grid.weight(i) * a(j, i);

    // w^{1/2}-scaled copy; gram() of it gives the symmetric products.
    Matrix scaled(n, n);
    for (int i = 0; i < n; ++i) {
        const double si = std::sqrt(grid.weight(i));
        for (int j = 0; j < n; ++j) {
            const double v = a(i, j);
            if (v != 0.0) scaled(i, j) = si * v / std::sqrt(grid.weight(j));
        }
    }

    FactorizationPair pair;
    pair.H_minus = OperatorMatrix(grid, gram(scaled), true);
    pair.H_plus = OperatorMatrix(grid, gram(scaled.transpose()), true);
    pair.A = OperatorMatrix(grid, std::move(a), false);
    pair.A_dagger = OperatorMatrix(grid, std::move(adj), false);
    return pair;
}

OperatorMatrix deformed_hamiltonian(const Deformation& d, int s, const Grid& grid) {
    d.reject_singular();
    if (s != 1 && s != -1) throw NonPositiveError("deformed_hamiltonian: s must be +-1");
    const int n = grid.n_points();
    const double c = d.c;
    const double mu = d.base.units().momentum_scale();
    const double k = d.base.units().kinetic_scale() / (grid.spacing() * grid.spacing());

    // (1 + s c P)^2 T = (1 + c^2) T + 2 s c P T, with P T row i = T row N-1-i.
    Matrix m(n, n);
    const double diag = 2.0 * k;
    const double off = -k;
    for (int i = 0; i < n; ++i) {
        const int ir = n - 1 - i;
        m(i, i) += (1.0 + c * c) * diag;
        if (i > 0) m(i, i - 1) += (1.0 + c * c) * off;
        if (i + 1 < n) m(i, i + 1) += (1.0 + c * c) * off;
        m(i, ir) += 2.0 * s * c * diag;
        if (ir > 0) m(i, ir - 1) += 2.0 * s * c * off;
        if (ir + 1 < n) m(i, ir + 1) += 2.0 * s * c * off;
    }
    const double f = 1.0 - c;
    for (int i = 0; i < n; ++i) {
        const double x = grid.point(i);
        const double w0 = d.base.value(x);
        const double w0p = d.base.derivative(x);
        m(i, i) += f * f * w0 * w0 + s * f * mu * w0p;
        m(i, n - 1 - i) += c * f * mu * w0p;  // s^2 = 1
    }
    return OperatorMatrix(grid, std::move(m), true);
}

} // namespace susyqm
