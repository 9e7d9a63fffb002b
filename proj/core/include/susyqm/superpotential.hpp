#ifndef SUSYQM_SUPERPOTENTIAL_HPP
#define SUSYQM_SUPERPOTENTIAL_HPP

#include <functional>
#include <optional>
#include <vector>

#include "susyqm/grid.hpp"
#include "susyqm/matrix.hpp"
#include "susyqm/units.hpp"

namespace susyqm {

enum class Family { Harmonic, TanhScarf };

// Odd base superpotential W0 with sgn W0(+-inf) = +-1 scaling:
//   Harmonic:  W0(x) = sqrt(m/2) * omega * x
//   TanhScarf: W0(x) = a * tanh(kappa * x)
class BaseSuperpotential {
public:
    static BaseSuperpotential harmonic(double omega, UnitSystem units = {});
    static BaseSuperpotential tanh_scarf(double a, double kappa, UnitSystem units = {});

    Family family() const { return family_; }
    double omega() const { return omega_; }
    double a() const { return a_; }
    double kappa() const { return kappa_; }
    const UnitSystem& units() const { return units_; }

    double value(double x) const;       // W0(x)
    double derivative(double x) const;  // W0'(x), analytic

private:
    BaseSuperpotential() = default;
    Family family_ = Family::Harmonic;
    double omega_ = 0.0;
    double a_ = 0.0;
    double kappa_ = 0.0;
    UnitSystem units_;
};

// Nonlocal deformation W = (1-c) W0, w(x,y) = -c (hbar/sqrt(2m)) delta'(x+y).
struct Deformation {
    double c = 0.0;
    BaseSuperpotential base;

    Deformation(double c_, BaseSuperpotential base_) : c(c_), base(std::move(base_)) {}

    bool is_singular() const;
    void reject_singular() const;  // throws SingularCError at c = +-1
};

// Separable nonlocal potential sum_n eps_n |psi_n><psi_n|.
class SeparableKernel {
public:
    SeparableKernel(std::vector<Wavefunction> states, std::vector<double> strengths);

    const std::vector<Wavefunction>& states() const { return states_; }
    const std::vector<double>& strengths() const { return strengths_; }

private:
    std::vector<Wavefunction> states_;
    std::vector<double> strengths_;
};

struct LocalPotentialPair {
    std::vector<double> v_minus;
    std::vector<double> v_plus;
};

using ScalarFunction = std::function<double(double)>;

// V+-(x) = W(x)^2 +- (hbar/sqrt(2m)) W'(x). W and W_prime are checked for
// consistency against a centered finite difference at a few sample points.
LocalPotentialPair partner_potentials_local(const ScalarFunction& W,
                                            const ScalarFunction& W_prime,
                                            const Grid& grid,
                                            const UnitSystem& units);

// V+-(x) = (1-c)^2 W0(x)^2 +- (1-c) (hbar/sqrt(2m)) W0'(x).
LocalPotentialPair deformed_local_potentials(const Deformation& d, const Grid& grid);

Wavefunction separable_apply(const SeparableKernel& k, const Wavefunction& psi);

// Kernel w(x,y) reconstructed from a prescribed normalized ground state:
//   w = -(hbar/sqrt(2m)) [psi0'(x) psi0(y) + psi0(x) psi0'(y)]
//       - psi0(x) {W(x)+W(y)} psi0(y) + C(x,y)
// W (if present) must have vanishing quadrature against psi0^2; every row of
// C (if present) must have vanishing quadrature against psi0.
Matrix inverse_kernel_from_groundstate(const Wavefunction& psi0,
                                       const std::optional<ScalarFunction>& W,
                                       const std::optional<Matrix>& C,
                                       const Grid& grid,
                                       const UnitSystem& units);

// Centered second-order first derivative of sampled values (one-sided
// second-order stencils at the endpoints).
std::vector<double> sampled_derivative(const std::vector<double>& values, const Grid& grid);

} // namespace susyqm

#endif
