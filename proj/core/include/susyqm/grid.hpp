#ifndef SUSYQM_GRID_HPP
#define SUSYQM_GRID_HPP

#include <vector>

#include "susyqm/errors.hpp"

namespace susyqm {

// Uniform symmetric mesh on [-L, L] with an odd number of points, so that
// x = 0 is a grid point and i -> N-1-i reflects grid points exactly.
class Grid {
public:
    Grid() = default;

    double half_width() const { return half_width_; }
    int n_points() const { return n_points_; }
    double spacing() const { return spacing_; }

    // x_i = (i - (N-1)/2) * h; guarantees x_{N-1-i} == -x_i bit-exactly.
    double point(int i) const { return (i - mid_) * spacing_; }

    int midpoint_index() const { return mid_; }
    int reflect_index(int i) const { return n_points_ - 1 - i; }

    // Trapezoidal quadrature weight.
    double weight(int i) const {
        return (i == 0 || i == n_points_ - 1) ? 0.5 * spacing_ : spacing_;
    }

    std::vector<double> points() const;

    bool operator==(const Grid& other) const {
        return half_width_ == other.half_width_ && n_points_ == other.n_points_;
    }

    friend Grid make_grid(double L, int N);

private:
    double half_width_ = 0.0;
    int n_points_ = 0;
    double spacing_ = 0.0;
    int mid_ = 0;
};

Grid make_grid(double L, int N);

// Real wavefunction sampled on a grid.
struct Wavefunction {
    Grid grid;
    std::vector<double> values;

    Wavefunction() = default;
    Wavefunction(const Grid& g, std::vector<double> v);
};

Wavefunction reflect(const Wavefunction& psi);

double inner_product(const Wavefunction& a, const Wavefunction& b);

double quadrature_norm(const Wavefunction& psi);

// Normalizes in place; returns the original norm.
double normalize(Wavefunction& psi);

// Sign changes between consecutive samples whose magnitude exceeds
// threshold_fraction * max|psi|.
int count_nodes(const Wavefunction& psi, double threshold_fraction = 1e-6);

} // namespace susyqm

#endif
