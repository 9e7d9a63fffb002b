#include "susyqm/superpotential.hpp"

#include <algorithm>
#include <cmath>

namespace susyqm {

BaseSuperpotential BaseSuperpotential::harmonic(double omega, UnitSystem units) {
    units.validate();
    if (!(omega > 0.0)) throw NonPositiveError("harmonic base requires omega > 0");
    BaseSuperpotential b;
    b.family_ = Family::Harmonic;
    b.omega_ = omega;
    b.units_ = units;
    return b;
}

BaseSuperpotential BaseSuperpotential::tanh_scarf(double a, double kappa, UnitSystem units) {
    units.validate();
    if (!(a > 0.0) || !(kappa > 0.0))
        throw NonPositiveError("tanh base requires a > 0 and kappa > 0");
    BaseSuperpotential b;
    b.family_ = Family::TanhScarf;
    b.a_ = a;
    b.kappa_ = kappa;
    b.units_ = units;
    return b;
}

double BaseSuperpotential::value(double x) const {
    switch (family_) {
        case Family::Harmonic: return std::sqrt(units_.mass / 2.0) * omega_ * x;
        case Family::TanhScarf: return a_ * std::tanh(kappa_ * x);
    }
    return 0.0;
}

double BaseSuperpotential::derivative(double x) const {
    switch (family_) {
        case Family::Harmonic: return std::sqrt(units_.mass / 2.0) * omega_;
        case Family::TanhScarf: {
            const double sech = 1.0 / std::cosh(kappa_ * x);
            return a_ * kappa_ * sech * sech;
        }
    }
    return 0.0;
}

bool Deformation::is_singular() const {
    return std::abs(c - 1.0) < 1e-12 || std::abs(c + 1.0) < 1e-12;
}

void Deformation::reject_singular() const {
    if (is_singular())
        throw SingularCError("nonlocality parameter c = " + std::to_string(c) +
                             " is singular (c = +-1 has no spectral problem)");
}

SeparableKernel::SeparableKernel(std::vector<Wavefunction> states, std::vector<double> strengths)
    : states_(std::move(states)), strengths_(std::move(strengths)) {
    if (states_.size() != strengths_.size())
        throw LengthMismatchError("separable kernel: one strength per state required");
    for (double e : strengths_)
        if (!std::isfinite(e)) throw NonPositiveError("separable kernel: strengths must be finite");
    for (size_t i = 0; i < states_.size(); ++i) {
        for (size_t j = 0; j <= i; ++j) {
            const double g = inner_product(states_[i], states_[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > 1e-8)
                throw ConstraintViolatedError("separable kernel: states are not orthonormal");
        }
    }
}

LocalPotentialPair partner_potentials_local(const ScalarFunction& W,
                                            const ScalarFunction& W_prime,
                                            const Grid& grid,
                                            const UnitSystem& units) {
    units.validate();
    // Consistency probe: centered difference of W vs the supplied derivative.
    const double L = grid.half_width();
    const double dx = 1e-5 * std::max(1.0, L);
    double scale = 1.0;
    for (int k = 0; k < 5; ++k) {
        const double x = -0.8 * L + 0.4 * L * k;
        scale = std::max({scale, std::abs(W(x)), std::abs(W_prime(x))});
    }
    for (int k = 0; k < 5; ++k) {
        const double x = -0.8 * L + 0.4 * L * k;
        const double fd = (W(x + dx) - W(x - dx)) / (2.0 * dx);
        if (std::abs(fd - W_prime(x)) > 1e-4 * scale)
            throw InconsistentDerivativeError("W_prime disagrees with finite difference of W");
    }
    const int n = grid.n_points();
    const double mu = units.momentum_scale();
    LocalPotentialPair p;
    p.v_minus.resize(n);
    p.v_plus.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.point(i);
        const double w = W(x);
        const double wp = W_prime(x);
        p.v_minus[i] = w * w - mu * wp;
        p.v_plus[i] = w * w + mu * wp;
    }
    return p;
}

LocalPotentialPair deformed_local_potentials(const Deformation& d, const Grid& grid) {
    const int n = grid.n_points();
    const double mu = d.base.units().momentum_scale();
    const double f = 1.0 - d.c;
    LocalPotentialPair p;
    p.v_minus.resize(n);
    p.v_plus.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.point(i);
        const double w0 = d.base.value(x);
        const double w0p = d.base.derivative(x);
        p.v_minus[i] = f * f * w0 * w0 - f * mu * w0p;
        p.v_plus[i] = f * f * w0 * w0 + f * mu * w0p;
    }
    return p;
}

Wavefunction separable_apply(const SeparableKernel& k, const Wavefunction& psi) {
    std::vector<double> out(psi.values.size(), 0.0);
    for (size_t n = 0; n < k.states().size(); ++n) {
        const Wavefunction& state = k.states()[n];
        if (!(state.grid == psi.grid))
            throw GridMismatchError("separable_apply: state grid differs from psi grid");
        const double coeff = k.strengths()[n] * inner_product(state, psi);
        for (size_t i = 0; i < out.size(); ++i) out[i] += coeff * state.values[i];
    }
    return Wavefunction(psi.grid, std::move(out));
}

std::vector<double> sampled_derivative(const std::vector<double>& values, const Grid& grid) {
    const int n = grid.n_points();
    if (static_cast<int>(values.size()) != n)
        throw LengthMismatchError("sampled_derivative: length does not match grid");
    const double h = grid.spacing();
    std::vector<double> d(n);
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
    for (int i = 1; i + 1 < n; ++i) d[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
    return d;
}

Matrix inverse_kernel_from_groundstate(const Wavefunction& psi0,
                                       const std::optional<ScalarFunction>& W,
                                       const std::optional<Matrix>& C,
                                       const Grid& grid,
                                       const UnitSystem& units) {
    units.validate();
    if (!(psi0.grid == grid))
        throw GridMismatchError("inverse_kernel_from_groundstate: psi0 not on the given grid");
    const int n = grid.n_points();
    double peak2 = 0.0;
    for (double v : psi0.values) peak2 = std::max(peak2, v * v);
    const double tol = 1e-8 * std::max(1.0, peak2);

    if (std::abs(quadrature_norm(psi0) - 1.0) > 1e-8)
        throw ConstraintViolatedError("inverse construction requires a normalized psi0");

    std::vector<double> w_values(n, 0.0);
    if (W) {
        double integral = 0.0;
        for (int i = 0; i < n; ++i) {
            w_values[i] = (*W)(grid.point(i));
            integral += grid.weight(i) * w_values[i] * psi0.values[i] * psi0.values[i];
        }
        if (std::abs(integral) > tol)
            throw ConstraintViolatedError(
                "inverse construction: quadrature of W(x) psi0(x)^2 does not vanish");
    }
    if (C) {
        if (C->rows() != n || C->cols() != n)
            throw LengthMismatchError("inverse construction: C must be N x N");
        if (!C->is_symmetric(1e-10))
            throw ConstraintViolatedError("inverse construction: C must be symmetric");
        for (int i = 0; i < n; ++i) {
            double row_integral = 0.0;
            for (int j = 0; j < n; ++j)
                row_integral += grid.weight(j) * (*C)(i, j) * psi0.values[j];
            if (std::abs(row_integral) > tol)
                throw ConstraintViolatedError(
                    "inverse construction: quadrature of C(x,.) psi0 does not vanish");
        }
    }

    const std::vector<double> dpsi = sampled_derivative(psi0.values, grid);
    const double mu = units.momentum_scale();
    Matrix kernel(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = -mu * (dpsi[i] * psi0.values[j] + psi0.values[i] * dpsi[j]);
            v -= psi0.values[i] * (w_values[i] + w_values[j]) * psi0.values[j];
            if (C) v += (*C)(i, j);
            kernel(i, j) = v;
        }
    }
    return kernel;
}

} // namespace susyqm
