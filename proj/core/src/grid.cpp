#include "susyqm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace susyqm {

std::vector<double> Grid::points() const {
    std::vector<double> x(n_points_);
    for (int i = 0; i < n_points_; ++i) x[i] = point(i);
    return x;
}

Grid make_grid(double L, int N) {
    if (N % 2 == 0) throw EvenNError("grid size N must be odd, got " + std::to_string(N));
    if (!(L > 0.0)) throw NonPositiveError("grid half-width L must be positive");
    if (N < 3) throw NonPositiveError("grid size N must be at least 3");
    Grid g;
    g.half_width_ = L;
    g.n_points_ = N;
    g.spacing_ = 2.0 * L / (N - 1);
    g.mid_ = (N - 1) / 2;
    return g;
}

Wavefunction::Wavefunction(const Grid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n_points())
        throw LengthMismatchError("wavefunction length does not match grid size");
}

Wavefunction reflect(const Wavefunction& psi) {
    std::vector<double> v(psi.values.rbegin(), psi.values.rend());
    return Wavefunction(psi.grid, std::move(v));
}

double inner_product(const Wavefunction& a, const Wavefunction& b) {
    if (!(a.grid == b.grid))
        throw GridMismatchError("inner_product requires wavefunctions on the same grid");
    double sum = 0.0;
    const int n = a.grid.n_points();
    for (int i = 0; i < n; ++i) sum += a.grid.weight(i) * a.values[i] * b.values[i];
    return sum;
}

double quadrature_norm(const Wavefunction& psi) {
    return std::sqrt(inner_product(psi, psi));
}

double normalize(Wavefunction& psi) {
    const double norm = quadrature_norm(psi);
    if (norm > 0.0)
        for (double& v : psi.values) v /= norm;
    return norm;
}

int count_nodes(const Wavefunction& psi, double threshold_fraction) {
    double peak = 0.0;
    for (double v : psi.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0;
    const double cut = threshold_fraction * peak;
    int nodes = 0;
    int last_sign = 0;
    for (double v : psi.values) {
        if (std::abs(v) <= cut) continue;
        const int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    return nodes;
}

} // namespace susyqm
