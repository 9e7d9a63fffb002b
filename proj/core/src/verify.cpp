#include "susyqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "susyqm/analytic.hpp"
#include "susyqm/operators.hpp"
#include "susyqm/spectral.hpp"

namespace susyqm {

namespace {

std::string format_c(double c) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", c);
    return buf;
}

// Merged, sorted eigenvalues of both parity sectors.
std::vector<double> sector_values(const OperatorMatrix& m, const Grid& grid, int k) {
    std::vector<double> vals;
    for (int parity : {1, -1}) {
        const OperatorMatrix sector = sector_project(m, parity, grid);
        const std::vector<double> v = eigenvalues_symmetric(sector, std::min(k, sector.entries.rows()));
        vals.insert(vals.end(), v.begin(), v.end());
    }
    std::sort(vals.begin(), vals.end());
    if (static_cast<int>(vals.size()) > k) vals.resize(k);
    return vals;
}

double energy_scale(const std::vector<double>& vals) {
    if (vals.empty()) return 1.0;
    const size_t i = std::min<size_t>(4, vals.size() - 1);
    return std::max(1.0, std::abs(vals[i]));
}

double eps_zero(const Grid& grid, double scale) {
    const double h = grid.spacing();
    return std::max(1e-6, h * h * scale);
}

struct ZeroModeState {
    bool present = false;
    double lowest = 0.0;
    double epsilon = 0.0;
    Wavefunction psi;       // quadrature-normalized samples (when present)
    double rayleigh = 0.0;  // assembled-H Rayleigh quotient of psi
    bool from_factorized = false;
};

// Extracts the zero mode of partner s: presence is decided by the assembled
// Hamiltonian; the state itself is the assembled-H Rayleigh minimizer inside
// the near-null span of the factorized A_dagger A (or A A_dagger), whose
// eigenvectors annihilate much more accurately than assembled eigenvectors.
ZeroModeState extract_zero_mode(const Deformation& d, int s, const Grid& grid) {
    d.reject_singular();
    const OperatorMatrix h = deformed_hamiltonian(d, s, grid);
    const std::vector<double> vals = sector_values(h, grid, 5);
    ZeroModeState state;
    state.lowest = vals.front();
    state.epsilon = eps_zero(grid, energy_scale(vals));
    state.present = state.lowest <= state.epsilon;
    if (!state.present) return state;

    const FactorizationPair fact = A_matrices(d, grid);
    const OperatorMatrix& hf = (s == -1) ? fact.H_minus : fact.H_plus;

    std::vector<std::vector<double>> span;
    for (int parity : {1, -1}) {
        const OperatorMatrix sector = sector_project(hf, parity, grid);
        for (const EigenPair& pair : eigensolve_symmetric(sector, 3))
            if (pair.value < state.epsilon)
                span.push_back(sector_embed(grid, parity, pair.vector));
    }

    std::vector<double> phi;
    if (span.empty()) {
        // Discretization pushed the factorized spectrum above the cut; fall
        // back to the assembled ground state.
        double best = 0.0;
        for (int parity : {1, -1}) {
            const OperatorMatrix sector = sector_project(h, parity, grid);
            const EigenPair pair = eigensolve_symmetric(sector, 1).front();
            if (phi.empty() || pair.value < best) {
                best = pair.value;
                phi = sector_embed(grid, parity, pair.vector);
            }
        }
    } else {
        // Span vectors are orthonormal; minimize phi^T H phi over the span
        // via the projected small eigenproblem.
        const int m = static_cast<int>(span.size());
        Matrix g(m, m);
        std::vector<std::vector<double>> h_span;
        h_span.reserve(m);
        for (const auto& v : span) h_span.push_back(h.entries.apply(v));
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                double dot = 0.0;
                for (size_t r = 0; r < span[i].size(); ++r) dot += span[i][r] * h_span[j][r];
                g(i, j) = dot;
                g(j, i) = dot;
            }
        }
        const EigenPair best = eigensolve_symmetric(OperatorMatrix(grid, std::move(g), true), 1).front();
        phi.assign(span.front().size(), 0.0);
        for (int i = 0; i < m; ++i)
            for (size_t r = 0; r < phi.size(); ++r) phi[r] += best.vector[i] * span[i][r];
        state.from_factorized = true;
    }

    // Matrices act in the w^{1/2}-conjugated basis; convert back to samples.
    const std::vector<double> h_phi = h.entries.apply(phi);
    double num = 0.0, den = 0.0;
    for (size_t r = 0; r < phi.size(); ++r) {
        num += phi[r] * h_phi[r];
        den += phi[r] * phi[r];
    }
    state.rayleigh = num / den;

    std::vector<double> samples(phi.size());
    for (int i = 0; i < grid.n_points(); ++i) samples[i] = phi[i] / std::sqrt(grid.weight(i));
    state.psi = Wavefunction(grid, std::move(samples));
    normalize(state.psi);
    return state;
}

Wavefunction scaled_difference(const Wavefunction& a, double coeff, const Wavefunction& b) {
    std::vector<double> values(a.values.size());
    for (size_t i = 0; i < values.size(); ++i) values[i] = a.values[i] - coeff * b.values[i];
    return Wavefunction(a.grid, std::move(values));
}

} // namespace

bool VerificationReport::overall() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return true;
}

CheckResult check_factorization(const Deformation& d, const Grid& grid) {
    d.reject_singular();
    CheckResult result;
    result.name = "factorization";

    const Grid refined = make_grid(grid.half_width(), 2 * (grid.n_points() - 1) + 1);
    double disc[2] = {0.0, 0.0};
    double scale = 1.0;
    int which = 0;
    for (const Grid& g : {grid, refined}) {
        const FactorizationPair fact = A_matrices(d, g);
        for (int s : {-1, 1}) {
            const OperatorMatrix h = deformed_hamiltonian(d, s, g);
            const std::vector<double> assembled = sector_values(h, g, 6);
            if (which == 0) scale = std::max(scale, energy_scale(assembled));
            const OperatorMatrix& hf = (s == -1) ? fact.H_minus : fact.H_plus;
            const std::vector<double> factored = sector_values(hf, g, 12);
            for (double e : assembled) {
                double best = std::abs(e - factored.front());
                for (double f : factored) best = std::min(best, std::abs(e - f));
                disc[which] = std::max(disc[which], best / std::max(1.0, std::abs(e)));
            }
        }
        ++which;
    }

    const double h = grid.spacing();
    result.tolerance = 5.0 * h * h * scale;
    result.residual = disc[0];
    const double ratio = disc[1] > 1e-14 ? disc[0] / disc[1] : 4.0;
    result.passed = disc[0] <= result.tolerance && ratio >= 3.5;
    std::ostringstream os;
    os << "c=" << format_c(d.c) << "; max relative spectral gap between A_dagger A / A A_dagger "
       << "and the assembled partners: " << disc[0] << " (refined " << disc[1]
       << ", shrink ratio " << ratio << ", required >= 3.5)";
    result.detail = os.str();
    return result;
}

CheckResult check_zero_mode(const Deformation& d, int s, const Grid& grid) {
    d.reject_singular();
    if (s != 1 && s != -1) throw NonPositiveError("check_zero_mode: s must be +-1");
    CheckResult result;
    result.name = (s == -1) ? "zero_mode_minus" : "zero_mode_plus";
    const bool expected = (s == -1) || std::abs(d.c) > 1.0;
    const ZeroModeState state = extract_zero_mode(d, s, grid);

    std::ostringstream os;
    os << "c=" << format_c(d.c) << "; lowest level " << state.lowest << ", eps_zero "
       << state.epsilon;
    if (!state.present) {
        result.passed = !expected;
        result.residual = state.lowest;
        result.tolerance = state.epsilon;
        os << "; no zero mode (" << (expected ? "one was expected" : "as expected") << ")";
        result.detail = os.str();
        return result;
    }

    const FactorizationPair fact = A_matrices(d, grid);
    const OperatorMatrix& annihilator = (s == -1) ? fact.A : fact.A_dagger;
    const double residual = quadrature_norm(annihilator.apply(state.psi));
    const double boundary = std::max(std::abs(state.psi.values.front()),
                                     std::abs(state.psi.values.back()));
    result.residual = residual;
    result.tolerance = 1e-5;
    result.passed = expected && residual <= result.tolerance && boundary < 1e-8;
    os << "; zero mode present (Rayleigh " << state.rayleigh << ", annihilation residual "
       << residual << ", boundary amplitude " << boundary
       << (state.from_factorized ? ", extracted from factorized near-null span" : "") << ")";
    if (!expected) os << "; unexpected zero mode";
    result.detail = os.str();
    return result;
}

CheckResult check_ladder(const Deformation& d, const Grid& grid, int n_max) {
    d.reject_singular();
    if (n_max < 1) throw NonPositiveError("check_ladder: n_max must be positive");
    CheckResult result;
    result.name = "ladder";
    result.tolerance = 1e-3;

    const OperatorMatrix hm = deformed_hamiltonian(d, -1, grid);
    const OperatorMatrix hp = deformed_hamiltonian(d, 1, grid);
    // For |c| > 1 the odd-branch levels are rescaled upward, pushing low
    // node counts deep into the sorted spectrum, so solve generously.
    const Spectrum sm = solve_labeled(hm, grid, 4 * n_max + 6);
    const Spectrum sp = solve_labeled(hp, grid, 4 * n_max + 7);
    const FactorizationPair fact = A_matrices(d, grid);
    const bool outer = std::abs(d.c) > 1.0;

    double worst = 0.0;
    std::ostringstream os;
    os << "c=" << format_c(d.c) << ";";
    for (int n = 0; n <= n_max; ++n) {
        const SpectrumLevel* minus = sm.by_nodes(n);
        if (!minus) {
            result.residual = worst;
            result.detail = os.str() + " missing H_minus level with " + std::to_string(n) + " nodes";
            return result;
        }
        if (n == 0) {
            const SpectrumLevel* first = sm.by_nodes(1);
            const double scale = std::sqrt(first ? first->energy : 1.0);
            const double r = quadrature_norm(fact.A.apply(minus->eigenfunction)) / scale;
            worst = std::max(worst, r);
            os << " n=0 annihilated (rel " << r << ");";
            continue;
        }
        const int target = (n % 2 == 0) ? n - 1 : (outer ? n + 1 : n - 1);
        const SpectrumLevel* plus = sp.by_nodes(target);
        if (!plus) {
            result.residual = worst;
            result.detail = os.str() + " missing H_plus level with " + std::to_string(target) + " nodes";
            return result;
        }
        // The eigenvector sign convention is not physical, so the candidate
        // is aligned by a +-1 phase before comparison; the same phase must
        // work for the lowering and the raising direction, and the target
        // selection still verifies the node creation branch for |c| > 1.
        const double magnitude = std::sqrt(minus->energy);
        Wavefunction lowered = fact.A.apply(minus->eigenfunction);
        const double coeff =
            (inner_product(lowered, plus->eigenfunction) < 0.0 ? -1.0 : 1.0) * magnitude;
        const double r_down =
            quadrature_norm(scaled_difference(lowered, coeff, plus->eigenfunction)) / magnitude;

        Wavefunction raised = fact.A_dagger.apply(plus->eigenfunction);
        const double r_up =
            quadrature_norm(scaled_difference(raised, coeff, minus->eigenfunction)) / magnitude;

        worst = std::max(worst, std::max(r_down, r_up));
        os << " n=" << n << "->" << target << " (" << (target < n ? "destroys" : "creates")
           << " a node, rel " << std::max(r_down, r_up) << ");";
    }
    result.residual = worst;
    result.passed = worst <= result.tolerance;
    result.detail = os.str();
    return result;
}

WittenIndex witten_index(const Deformation& d, const Grid& grid) {
    d.reject_singular();
    int count[2] = {0, 0};
    int which = 0;
    for (int s : {-1, 1}) {
        const OperatorMatrix h = deformed_hamiltonian(d, s, grid);
        const std::vector<double> vals = sector_values(h, grid, 5);
        const double eps = eps_zero(grid, energy_scale(vals));
        for (double v : vals)
            if (v <= eps) ++count[which];
        ++which;
    }
    WittenIndex index;
    index.delta = count[0] - count[1];
    index.unbroken = count[0] + count[1] > 0;
    return index;
}

CheckResult check_degeneracy(const Deformation& d, const Grid& grid, int k) {
    d.reject_singular();
    if (k < 2) throw NonPositiveError("check_degeneracy: k must be at least 2");
    CheckResult result;
    result.name = "degeneracy";

    const OperatorMatrix hm = deformed_hamiltonian(d, -1, grid);
    const Spectrum spectrum = solve_labeled(hm, grid, k);
    const int count = static_cast<int>(spectrum.levels.size());
    std::vector<double> numeric(count);
    for (int i = 0; i < count; ++i) numeric[i] = spectrum.levels[i].energy;

    const double scale = std::max(1.0, std::abs(numeric[std::min(4, count - 1)]));
    const double h = grid.spacing();
    // 1e-6*scale sits below the O(h^2) eigenvalue error at practical N, so
    // the gap threshold is floored at 5 h^2 (validated by h-refinement; it
    // still resolves the analytic near-miss at c = 0.31).
    const double threshold = std::max(1e-6, 5.0 * h * h) * scale;

    std::vector<int> numeric_pairs;
    bool parities_ok = true;
    double min_gap = 1e300;
    for (int i = 0; i + 1 < count; ++i) {
        const double gap = numeric[i + 1] - numeric[i];
        min_gap = std::min(min_gap, gap);
        if (gap < threshold) {
            numeric_pairs.push_back(i);
            if (spectrum.levels[i].parity == spectrum.levels[i + 1].parity) parities_ok = false;
        }
    }

    std::vector<int> predicted_pairs;
    bool have_prediction = d.base.family() == Family::Harmonic;
    if (have_prediction) {
        std::vector<double> analytic;
        for (int n = 0; n < count; ++n) analytic.push_back(deformed_energy(d, -1, n).energy);
        std::sort(analytic.begin(), analytic.end());
        for (int i = 0; i + 1 < count; ++i)
            if (analytic[i + 1] - analytic[i] < threshold) predicted_pairs.push_back(i);
    }

    result.residual = min_gap;
    result.tolerance = threshold;
    result.passed = parities_ok && (!have_prediction || numeric_pairs == predicted_pairs);
    std::ostringstream os;
    os << "c=" << format_c(d.c) << "; " << numeric_pairs.size() << " degenerate pair(s)";
    for (int i : numeric_pairs)
        os << " [levels " << i << "," << i + 1 << " at E=" << numeric[i] << ", parities "
           << (spectrum.levels[i].parity > 0 ? "+" : "-")
           << (spectrum.levels[i + 1].parity > 0 ? "+" : "-") << "]";
    if (have_prediction) os << "; closed form predicts " << predicted_pairs.size();
    os << "; smallest gap " << min_gap;
    result.detail = os.str();
    return result;
}

CheckResult check_separable_shift(const BaseSuperpotential& base,
                                  const std::vector<double>& strengths, const Grid& grid) {
    CheckResult result;
    result.name = "separable_shift";
    result.tolerance = 1e-4;
    for (double eps : strengths)
        if (!std::isfinite(eps)) throw LengthMismatchError("separable strengths must be finite");

    const Deformation local(0.0, base);
    const LocalPotentialPair pair = deformed_local_potentials(local, grid);
    Matrix h0 = kinetic_matrix(grid, base.units()).entries;
    for (int i = 0; i < grid.n_points(); ++i) h0(i, i) += pair.v_minus[i];
    const OperatorMatrix base_op(grid, std::move(h0), true);

    const int r = static_cast<int>(strengths.size());
    const int k = r + 4;
    const Spectrum unperturbed = solve_labeled(base_op, grid, k);
    if (static_cast<int>(unperturbed.levels.size()) < k)
        throw NotBoundError("separable shift: not enough local levels");

    const int n = grid.n_points();
    Matrix kernel(n, n);
    for (int t = 0; t < r; ++t) {
        const std::vector<double>& psi = unperturbed.levels[t].eigenfunction.values;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) kernel(i, j) += strengths[t] * psi[i] * psi[j];
    }
    const OperatorMatrix nonlocal = symmetrize_weighted(kernel_matrix(kernel, grid));
    const OperatorMatrix shifted_op(grid, base_op.entries + nonlocal.entries, true);
    const Spectrum shifted = solve_labeled(shifted_op, grid, k);

    // Match perturbed levels by overlap with the unperturbed states: the
    // sorted order may change when a shift pushes a level past its neighbors.
    double worst = 0.0;
    bool reordered = false;
    for (int t = 0; t < k - 2; ++t) {
        const double predicted =
            unperturbed.levels[t].energy + (t < r ? strengths[t] : 0.0);
        int best_index = 0;
        double best_overlap = -1.0;
        for (int u = 0; u < static_cast<int>(shifted.levels.size()); ++u) {
            const double overlap = std::abs(inner_product(
                unperturbed.levels[t].eigenfunction, shifted.levels[u].eigenfunction));
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best_index = u;
            }
        }
        if (best_index != t) reordered = true;
        worst = std::max(worst, std::abs(shifted.levels[best_index].energy - predicted));
    }
    result.residual = worst;
    result.passed = worst <= result.tolerance;
    std::ostringstream os;
    os << "rank " << r << " kernel; max |E - (E0 + eps)| = " << worst
       << (reordered ? "; sorted spectrum reordered" : "; sorted order preserved");
    result.detail = os.str();
    return result;
}

CheckResult check_isospectrality(const Deformation& d, const Grid& grid, int k) {
    d.reject_singular();
    CheckResult result;
    result.name = "isospectrality";
    result.tolerance = 1e-4;

    std::vector<std::vector<double>> positive(2);
    int which = 0;
    for (int s : {-1, 1}) {
        const OperatorMatrix h = deformed_hamiltonian(d, s, grid);
        std::vector<double> vals = sector_values(h, grid, k + 2);
        const double eps = eps_zero(grid, energy_scale(vals));
        for (double v : vals)
            if (v > eps) positive[which].push_back(v);
        ++which;
    }
    double worst = 0.0;
    const int count = std::min({k, static_cast<int>(positive[0].size()),
                                static_cast<int>(positive[1].size())});
    for (int i = 0; i < count; ++i)
        worst = std::max(worst, std::abs(positive[0][i] - positive[1][i]) /
                                    std::max(1.0, std::abs(positive[0][i])));
    result.residual = worst;
    result.passed = worst <= result.tolerance;
    std::ostringstream os;
    os << "c=" << format_c(d.c) << "; lowest " << count
       << " positive levels of the partners differ by at most " << worst << " (relative)";
    result.detail = os.str();
    return result;
}

double zero_mode_equation_residual(const Wavefunction& psi0,
                                   const std::optional<ScalarFunction>& W, const Matrix& kernel,
                                   const Grid& grid, const UnitSystem& units) {
    if (!(psi0.grid == grid)) throw GridMismatchError("zero-mode residual: grid mismatch");
    const int n = grid.n_points();
    if (kernel.rows() != n || kernel.cols() != n)
        throw LengthMismatchError("zero-mode residual: kernel size mismatch");
    const double mu = units.momentum_scale();
    const std::vector<double> deriv = sampled_derivative(psi0.values, grid);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double value = mu * deriv[i];
        if (W) value += (*W)(grid.point(i)) * psi0.values[i];
        for (int j = 0; j < n; ++j) value += kernel(i, j) * grid.weight(j) * psi0.values[j];
        worst = std::max(worst, std::abs(value));
    }
    return worst;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
    VerificationReport report;
    std::vector<double> cs = cfg.c_values;
    std::sort(cs.begin(), cs.end());
    if (cs.empty()) return report;
    const Grid grid = make_grid(cfg.grid_l, cfg.grid_n);

    auto guarded = [&report](const std::string& name, double c, auto&& body) {
        CheckResult result;
        try {
            result = body();
        } catch (const SingularCError& e) {
            result.name = name;
            result.passed = false;
            result.detail = "c=" + format_c(c) + "; SingularC: " + e.what();
        } catch (const std::exception& e) {
            result.name = name;
            result.passed = false;
            result.detail = "c=" + format_c(c) + "; error: " + e.what();
        }
        report.checks.push_back(std::move(result));
    };

    // Alphabetical by check name, then by c, for a deterministic report.
    for (double c : cs)
        guarded("degeneracy", c, [&] {
            return check_degeneracy(Deformation(c, BaseSuperpotential::harmonic(cfg.omega, cfg.units)),
                                    grid, cfg.degeneracy_k);
        });
    for (double c : cs)
        guarded("factorization", c, [&] {
            return check_factorization(
                Deformation(c, BaseSuperpotential::harmonic(cfg.omega, cfg.units)), grid);
        });
    for (double c : cs)
        guarded("isospectrality", c, [&] {
            return check_isospectrality(
                Deformation(c, BaseSuperpotential::harmonic(cfg.omega, cfg.units)), grid, 6);
        });
    for (double c : cs)
        guarded("ladder", c, [&] {
            return check_ladder(Deformation(c, BaseSuperpotential::harmonic(cfg.omega, cfg.units)),
                                grid, cfg.ladder_n_max);
        });
    guarded("separable_shift", 0.0, [&] {
        return check_separable_shift(BaseSuperpotential::harmonic(cfg.omega, cfg.units), {0.7},
                                     grid);
    });
    for (double c : cs)
        guarded("witten_index", c, [&] {
            const Deformation d(c, BaseSuperpotential::harmonic(cfg.omega, cfg.units));
            const WittenIndex index = witten_index(d, grid);
            const int expected = std::abs(c) < 1.0 ? 1 : 0;
            CheckResult result;
            result.name = "witten_index";
            result.residual = std::abs(index.delta - expected);
            result.tolerance = 0.0;
            result.passed = index.delta == expected && index.unbroken;
            std::ostringstream os;
            os << "c=" << format_c(c) << "; delta=" << index.delta << " (expected " << expected
               << "), SUSY " << (index.unbroken ? "unbroken" : "broken");
            result.detail = os.str();
            return result;
        });
    for (double c : cs)
        guarded("zero_mode_minus", c, [&] {
            return check_zero_mode(
                Deformation(c, BaseSuperpotential::harmonic(cfg.omega, cfg.units)), -1, grid);
        });
    for (double c : cs)
        guarded("zero_mode_plus", c, [&] {
            return check_zero_mode(
                Deformation(c, BaseSuperpotential::harmonic(cfg.omega, cfg.units)), 1, grid);
        });
    return report;
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : report.checks) {
        nlohmann::ordered_json entry;
        entry["name"] = c.name;
        entry["passed"] = c.passed;
        entry["residual"] = c.residual;
        entry["tolerance"] = c.tolerance;
        entry["detail"] = c.detail;
        j["checks"].push_back(std::move(entry));
    }
    j["overall"] = report.overall();
    return j.dump(2) + "\n";
}

} // namespace susyqm
