#include "susyqm/analytic.hpp"

#include <cmath>

namespace susyqm {

double hbar_of_c(double c, double hbar) {
    if (std::abs(c - 1.0) < 1e-12)
        throw SingularCError("hbar(c) is singular at c = 1");
    return hbar * std::abs((1.0 + c) / (1.0 - c));
}

int alpha_of_c(double c) {
    if (std::abs(c - 1.0) < 1e-12 || std::abs(c + 1.0) < 1e-12)
        throw SingularCError("alpha(c) is undefined at c = +-1");
    return std::abs(c) < 1.0 ? 1 : -1;
}

DispatchEntry dispatch(double c, int s, int parity_sector) {
    if (s != 1 && s != -1) throw NonPositiveError("dispatch: s must be +-1");
    if (parity_sector != 1 && parity_sector != -1)
        throw NonPositiveError("dispatch: parity sector must be +-1");
    const int alpha = alpha_of_c(c);  // rejects c = +-1
    DispatchEntry e;
    e.s = s;
    e.parity_sector = parity_sector;
    e.prefactor = (1.0 - c) * (1.0 - c);
    if (parity_sector == -s) {
        e.target_partner = s;
        e.hbar_substituted = false;
    } else {
        e.target_partner = alpha * s;
        e.hbar_substituted = true;
    }
    return e;
}

double base_energy(const BaseSuperpotential& base, int partner, int n, double hbar_eff) {
    if (partner != 1 && partner != -1) throw NonPositiveError("base_energy: partner must be +-1");
    if (n < 0) throw NonPositiveError("base_energy: level index must be nonnegative");
    if (!(hbar_eff > 0.0)) throw NonPositiveError("base_energy: hbar_eff must be positive");
    const int n_minus = (partner == -1) ? n : n + 1;  // E+_n = E-_{n+1}
    switch (base.family()) {
        case Family::Harmonic:
            return static_cast<double>(n_minus) * hbar_eff * base.omega();
        case Family::TanhScarf: {
            const double a = base.a();
            const double step = hbar_eff * base.kappa() / std::sqrt(2.0 * base.units().mass);
            const double arg = a - n_minus * step;
            if (!(arg > 0.0))
                throw NotBoundError("tanh base: level n = " + std::to_string(n) +
                                    " lies at or above the continuum threshold a^2");
            return a * a - arg * arg;
        }
    }
    return 0.0;
}

namespace {

// Branch selection shared by energies and eigenfunctions. A level of H_s
// labeled n has parity (-1)^n, so the P = -s sectors are the undeformed ones.
struct Branch {
    int target_partner;
    double hbar_eff;
    LevelBranch kind;
};

Branch level_branch(const Deformation& d, int s, int n) {
    d.reject_singular();
    const int parity = (n % 2 == 0) ? 1 : -1;
    const DispatchEntry e = dispatch(d.c, s, parity);
    Branch b;
    b.target_partner = e.target_partner;
    if (!e.hbar_substituted) {
        b.hbar_eff = d.base.units().hbar;
        b.kind = LevelBranch::Undeformed;
    } else {
        b.hbar_eff = hbar_of_c(d.c, d.base.units().hbar);
        b.kind = (e.target_partner == s) ? LevelBranch::HbarRescaled : LevelBranch::PartnerSwapped;
    }
    return b;
}

} // namespace

AnalyticLevel deformed_energy(const Deformation& d, int s, int n) {
    if (n < 0) throw NonPositiveError("deformed_energy: level index must be nonnegative");
    const Branch b = level_branch(d, s, n);
    AnalyticLevel level;
    level.n = n;
    level.s = s;
    level.parity = (n % 2 == 0) ? 1 : -1;
    level.branch = b.kind;
    const double pre = (1.0 - d.c) * (1.0 - d.c);
    level.energy = pre * base_energy(d.base, b.target_partner, n, b.hbar_eff);
    return level;
}

Wavefunction harmonic_eigenfunction(const BaseSuperpotential& base, int n, double hbar_eff,
                                    const Grid& grid) {
    if (base.family() != Family::Harmonic)
        throw UnsupportedFamilyError("closed-form eigenfunctions implemented for the harmonic base only");
    if (n < 0) throw NonPositiveError("harmonic_eigenfunction: level index must be nonnegative");
    const double xi_scale = std::sqrt(base.units().mass * base.omega() / hbar_eff);
    std::vector<double> v(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        const double xi = xi_scale * grid.point(i);
        // Hermite polynomial by three-term recurrence.
        double hk = 1.0, hk1 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double next = 2.0 * xi * hk - 2.0 * k * hk1;
            hk1 = hk;
            hk = next;
        }
        v[i] = hk * std::exp(-0.5 * xi * xi);
    }
    Wavefunction psi(grid, std::move(v));
    normalize(psi);
    // Sign convention: first significant entry from x = -L positive.
    double peak = 0.0;
    for (double val : psi.values) peak = std::max(peak, std::abs(val));
    for (double val : psi.values) {
        if (std::abs(val) > 1e-6 * peak) {
            if (val < 0.0)
                for (double& x : psi.values) x = -x;
            break;
        }
    }
    return psi;
}

Wavefunction deformed_eigenfunction(const Deformation& d, int s, int n, const Grid& grid) {
    if (d.base.family() != Family::Harmonic)
        throw UnsupportedFamilyError("deformed_eigenfunction: harmonic base only");
    if (n < 0) throw NonPositiveError("deformed_eigenfunction: level index must be nonnegative");
    const Branch b = level_branch(d, s, n);
    // For the harmonic base psi^(0)_{+,n} = psi^(0)_{-,n}: the partners differ
    // by a constant shift, so only hbar_eff matters here.
    return harmonic_eigenfunction(d.base, n, b.hbar_eff, grid);
}

} // namespace susyqm
