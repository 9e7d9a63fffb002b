#include "susyqm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace susyqm {

namespace {

constexpr int kMaxQLIterations = 50;
constexpr int kMaxJacobiSweeps = 50;
constexpr int kJacobiThreshold = 64;

// Householder reduction to symmetric tridiagonal form. On exit d holds the
// diagonal and e the subdiagonal (e[0] = 0). If accumulate is set, v is
// overwritten with the orthogonal transform (eigenvector columns after QL).
// This is the classic tred2 of EISPACK heritage.
void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e, bool accumulate) {
    const int n = v.rows();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0.0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) e[j] = 0.0;

            for (int j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    if (accumulate) {
        for (int i = 0; i < n - 1; ++i) {
            v(n - 1, i) = v(i, i);
            v(i, i) = 1.0;
            const double h = d[i + 1];
            if (h != 0.0) {
                for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
                for (int j = 0; j <= i; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                    for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
                }
            }
            for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
        }
        for (int j = 0; j < n; ++j) {
            d[j] = v(n - 1, j);
            v(n - 1, j) = 0.0;
        }
        v(n - 1, n - 1) = 1.0;
    } else {
        // Without accumulation the tridiagonal diagonal sits on v(j, j).
        for (int j = 0; j < n; ++j) d[j] = v(j, j);
    }
    e[0] = 0.0;
}

// Implicit-shift QL on a symmetric tridiagonal matrix; rotations are applied
// to the columns of v when it is non-null.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, Matrix* v) {
    const int n = static_cast<int>(d.size());
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        int m = l;
        while (m < n && std::abs(e[m]) > eps * tst1) ++m;
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > kMaxQLIterations)
                    throw NoConvergenceError("QL iteration cap exceeded at row " + std::to_string(l));
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0.0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if (v) {
                        for (int k = 0; k < v->rows(); ++k) {
                            h = (*v)(k, i + 1);
                            (*v)(k, i + 1) = s * (*v)(k, i) + c * h;
                            (*v)(k, i) = c * (*v)(k, i) - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

std::vector<EigenPair> jacobi_solve(const Matrix& m) {
    const int n = m.rows();
    Matrix a = m;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= 1e-30 * std::max(1.0, a.max_abs() * a.max_abs())) break;
        if (sweep == kMaxJacobiSweeps - 1)
            throw NoConvergenceError("Jacobi sweep cap exceeded");
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<EigenPair> pairs(n);
    for (int i = 0; i < n; ++i) {
        pairs[i].value = a(i, i);
        pairs[i].vector.resize(n);
        for (int k = 0; k < n; ++k) pairs[i].vector[k] = v(k, i);
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
    return pairs;
}

void require_symmetric(const OperatorMatrix& m) {
    if (m.entries.rows() != m.entries.cols() || !m.entries.is_symmetric(1e-12))
        throw NotSymmetricError("eigensolve requires a symmetric matrix");
}

} // namespace

std::vector<EigenPair> eigensolve_symmetric(const OperatorMatrix& m, int k) {
    require_symmetric(m);
    const int n = m.entries.rows();
    if (k < 1) throw NonPositiveError("eigensolve: k must be positive");
    k = std::min(k, n);

    if (n <= kJacobiThreshold) {
        std::vector<EigenPair> all = jacobi_solve(m.entries);
        all.resize(k);
        return all;
    }

    Matrix v = m.entries;
    std::vector<double> d, e;
    tridiagonalize(v, d, e, true);
    ql_implicit_shift(d, e, &v);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&d](int a, int b) { return d[a] < d[b]; });

    std::vector<EigenPair> pairs(k);
    for (int i = 0; i < k; ++i) {
        const int col = order[i];
        pairs[i].value = d[col];
        pairs[i].vector.resize(n);
        for (int r = 0; r < n; ++r) pairs[i].vector[r] = v(r, col);
    }
    return pairs;
}

std::vector<double> eigenvalues_symmetric(const OperatorMatrix& m, int k) {
    require_symmetric(m);
    const int n = m.entries.rows();
    if (k < 1) throw NonPositiveError("eigensolve: k must be positive");
    k = std::min(k, n);

    if (n <= kJacobiThreshold) {
        std::vector<EigenPair> all = jacobi_solve(m.entries);
        std::vector<double> values(k);
        for (int i = 0; i < k; ++i) values[i] = all[i].value;
        return values;
    }

    Matrix v = m.entries;
    std::vector<double> d, e;
    tridiagonalize(v, d, e, false);
    ql_implicit_shift(d, e, nullptr);
    std::sort(d.begin(), d.end());
    d.resize(k);
    return d;
}

double parity_commutator_residual(const OperatorMatrix& m, const Grid& grid) {
    const int n = grid.n_points();
    if (m.entries.rows() != n)
        throw LengthMismatchError("parity commutator: matrix size does not match grid");
    double num = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            num = std::max(num, std::abs(m.entries(i, n - 1 - j) - m.entries(n - 1 - i, j)));
    const double scale = m.entries.max_abs();
    return scale > 0.0 ? num / scale : 0.0;
}

OperatorMatrix sector_project(const OperatorMatrix& m, int parity, const Grid& grid) {
    if (parity != 1 && parity != -1)
        throw NonPositiveError("sector_project: parity must be +-1");
    if (parity_commutator_residual(m, grid) > 1e-10)
        throw NotParityInvariantError("sector_project: matrix does not commute with parity");
    const int n = grid.n_points();
    const int mid = grid.midpoint_index();
    const Matrix& a = m.entries;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    if (parity == 1) {
        const int dim = mid + 1;
        Matrix s(dim, dim);
        for (int p = 0; p < dim; ++p) {
            for (int q = p; q < dim; ++q) {
                double val;
                if (p < mid && q < mid) {
                    val = 0.5 * (a(p, q) + a(p, n - 1 - q) + a(n - 1 - p, q) +
                                 a(n - 1 - p, n - 1 - q));
                } else if (p < mid && q == mid) {
                    val = inv_sqrt2 * (a(p, mid) + a(n - 1 - p, mid));
                } else {
                    val = a(mid, mid);
                }
                s(p, q) = val;
                s(q, p) = val;
            }
        }
        return OperatorMatrix(grid, std::move(s), true);
    }
    const int dim = mid;
    Matrix s(dim, dim);
    for (int p = 0; p < dim; ++p) {
        for (int q = p; q < dim; ++q) {
            const double val = 0.5 * (a(p, q) - a(p, n - 1 - q) - a(n - 1 - p, q) +
                                      a(n - 1 - p, n - 1 - q));
            s(p, q) = val;
            s(q, p) = val;
        }
    }
    return OperatorMatrix(grid, std::move(s), true);
}

std::vector<double> sector_embed(const Grid& grid, int parity, const std::vector<double>& coeffs) {
    const int n = grid.n_points();
    const int mid = grid.midpoint_index();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const int expected = (parity == 1) ? mid + 1 : mid;
    if (static_cast<int>(coeffs.size()) != expected)
        throw LengthMismatchError("sector_embed: coefficient length does not match sector");
    std::vector<double> full(n, 0.0);
    for (int p = 0; p < mid; ++p) {
        full[p] = inv_sqrt2 * coeffs[p];
        full[n - 1 - p] = parity * inv_sqrt2 * coeffs[p];
    }
    if (parity == 1) full[mid] = coeffs[mid];
    return full;
}

const SpectrumLevel* Spectrum::by_nodes(int n) const {
    for (const SpectrumLevel& level : levels)
        if (level.nodes == n) return &level;
    return nullptr;
}

Spectrum solve_labeled(const OperatorMatrix& m, const Grid& grid, int k) {
    Spectrum spectrum;
    for (int parity : {1, -1}) {
        const OperatorMatrix sector = sector_project(m, parity, grid);
        const std::vector<EigenPair> pairs = eigensolve_symmetric(sector, k);
        for (const EigenPair& pair : pairs) {
            Wavefunction psi(grid, sector_embed(grid, parity, pair.vector));
            normalize(psi);
            double peak = 0.0;
            for (double v : psi.values) peak = std::max(peak, std::abs(v));
            for (double v : psi.values) {
                if (std::abs(v) > 1e-6 * peak) {
                    if (v < 0.0)
                        for (double& x : psi.values) x = -x;
                    break;
                }
            }
            SpectrumLevel level;
            level.energy = pair.value;
            level.parity = parity;
            level.nodes = count_nodes(psi);
            level.eigenfunction = std::move(psi);
            spectrum.levels.push_back(std::move(level));
        }
    }
    std::stable_sort(spectrum.levels.begin(), spectrum.levels.end(),
                     [](const SpectrumLevel& a, const SpectrumLevel& b) {
                         if (std::abs(a.energy - b.energy) <= 1e-9) return a.parity > b.parity;
                         return a.energy < b.energy;
                     });
    if (static_cast<int>(spectrum.levels.size()) > k) spectrum.levels.resize(k);
    return spectrum;
}

} // namespace susyqm
