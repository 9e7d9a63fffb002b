#ifndef SUSYQM_UNITS_HPP
#define SUSYQM_UNITS_HPP

#include <cmath>

#include "susyqm/errors.hpp"

namespace susyqm {

// Physical constants of the model. The defaults (hbar = 1, m = 1/2) make
// both hbar/sqrt(2m) and hbar^2/(2m) equal to one.
struct UnitSystem {
    double hbar = 1.0;
    double mass = 0.5;

    // hbar / sqrt(2m): the prefactor of d/dx in the first-order operators.
    double momentum_scale() const { return hbar / std::sqrt(2.0 * mass); }

    // hbar^2 / (2m): the kinetic prefactor.
    double kinetic_scale() const { return hbar * hbar / (2.0 * mass); }

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw NonPositiveError("UnitSystem requires hbar > 0 and mass > 0");
    }
};

} // namespace susyqm

#endif
