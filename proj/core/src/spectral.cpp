#include "fracineq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracineq/error.hpp"

namespace fracineq::spectral {

std::string_view to_string(BasisFamily family) {
    switch (family) {
        case BasisFamily::DirichletSine: return "dirichlet-sine";
        case BasisFamily::Fourier: return "fourier";
        case BasisFamily::Hermite: return "hermite";
    }
    return "unknown";
}

SpectralBasis::SpectralBasis(BasisFamily family, GridPtr grid, std::vector<double> nodes,
                             std::vector<double> weights, std::vector<double> eigenvalues,
                             std::vector<std::vector<double>> modes)
    : family_(family),
      grid_(std::move(grid)),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      eigenvalues_(std::move(eigenvalues)),
      modes_(std::move(modes)) {
    detail::require(!eigenvalues_.empty(), "a spectral basis needs at least one mode");
    detail::require(modes_.size() == eigenvalues_.size(), "mode and eigenvalue counts differ");
    detail::require(weights_.size() == nodes_.size(), "node and weight counts differ");
    for (double w : weights_) detail::require(w > 0.0, "inner-product weights must be positive");
    for (std::size_t j = 0; j < modes_.size(); ++j) {
        detail::require(modes_[j].size() == nodes_.size(), "mode length differs from node count");
        detail::require(eigenvalues_[j] >= 0.0, "eigenvalues must be nonnegative");
        if (j > 0) detail::require(eigenvalues_[j] >= eigenvalues_[j - 1], "eigenvalues must be nondecreasing");
    }
}

double SpectralBasis::min_positive_eigenvalue() const {
    for (double l : eigenvalues_)
        if (l > 0.0) return l;
    return 0.0;
}

BasisPtr dirichlet_basis(GridPtr grid, std::size_t J) {
    detail::require(grid != nullptr && grid->kind() == GridKind::DirichletInterval,
                    "the sine basis needs a Dirichlet interval grid");
    detail::require(J >= 1 && J <= grid->per_axis(),
                    "sine basis size must be in [1, N] to avoid aliasing, got " + std::to_string(J));
    const double len = grid->extent().length();
    const double norm = std::sqrt(2.0 / len);
    const auto axis = grid->axis();
    const std::size_t n = axis.size();
    std::vector<double> lambdas(J);
    std::vector<std::vector<double>> modes(J, std::vector<double>(n));
    for (std::size_t j = 1; j <= J; ++j) {
        const double omega = static_cast<double>(j) * std::numbers::pi / len;
        lambdas[j - 1] = omega * omega;
        for (std::size_t i = 0; i < n; ++i) {
            // Exact node phase i+1 over N+1 keeps the discrete sines orthogonal to rounding.
            const double phase = static_cast<double>(j * (i + 1) % (2 * (n + 1))) * std::numbers::pi /
                                 static_cast<double>(n + 1);
            modes[j - 1][i] = norm * std::sin(phase);
        }
    }
    std::vector<double> nodes(axis.begin(), axis.end());
    std::vector<double> weights(n, grid->spacing());
    return std::make_shared<const SpectralBasis>(BasisFamily::DirichletSine, grid, std::move(nodes),
                                                 std::move(weights), std::move(lambdas), std::move(modes));
}

BasisPtr fourier_basis(GridPtr grid, std::size_t J) {
    detail::require(grid != nullptr && grid->periodic(), "the Fourier basis needs a periodic grid");
    const std::size_t n = grid->per_axis();
    detail::require(2 * J <= n, "Fourier bandwidth must satisfy J <= N/2, got " + std::to_string(J));
    const double len = grid->extent().length();
    std::vector<double> lambdas;
    std::vector<std::vector<double>> modes;
    lambdas.push_back(0.0);
    modes.emplace_back(n, 1.0 / std::sqrt(len));
    for (std::size_t k = 1; k <= J; ++k) {
        const double omega = 2.0 * std::numbers::pi * static_cast<double>(k) / len;
        const bool nyquist = 2 * k == n;
        const double norm = nyquist ? 1.0 / std::sqrt(len) : std::sqrt(2.0 / len);
        std::vector<double> c(n), s(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((k * i) % n) / static_cast<double>(n);
            c[i] = norm * std::cos(phase);
            s[i] = norm * std::sin(phase);
        }
        lambdas.push_back(omega * omega);
        modes.push_back(std::move(c));
        if (!nyquist) {
            lambdas.push_back(omega * omega);
            modes.push_back(std::move(s));
        }
    }
    const auto axis = grid->axis();
    std::vector<double> nodes(axis.begin(), axis.end());
    std::vector<double> weights(n, grid->spacing());
    return std::make_shared<const SpectralBasis>(BasisFamily::Fourier, grid, std::move(nodes), std::move(weights),
                                                 std::move(lambdas), std::move(modes));
}

BasisPtr hermite_basis(std::size_t J, std::size_t nodes) {
    detail::require(J <= 32, "Hermite basis degree must be at most 32, got " + std::to_string(J));
    if (nodes == 0) nodes = J + 1;
    detail::require(nodes >= J + 1, "the Gauss-Hermite rule needs at least J + 1 nodes");
    const QuadratureRule rule = gauss_hermite_rule(nodes);
    std::vector<double> lambdas(J + 1);
    std::vector<std::vector<double>> modes(J + 1, std::vector<double>(nodes));
    for (std::size_t i = 0; i < nodes; ++i) {
        const auto p = hermite_orthonormal_values(J, rule.nodes[i]);
        for (std::size_t j = 0; j <= J; ++j) modes[j][i] = p[j];
    }
    for (std::size_t j = 0; j <= J; ++j) lambdas[j] = static_cast<double>(j);
    return std::make_shared<const SpectralBasis>(BasisFamily::Hermite, nullptr, rule.nodes, rule.weights,
                                                 std::move(lambdas), std::move(modes));
}

SpectralCoefficients analyze(std::span<const double> values, const BasisPtr& basis) {
    detail::require(basis != nullptr, "missing basis");
    detail::require(values.size() == basis->node_count(), "input length does not match the basis nodes");
    const auto w = basis->weights();
    SpectralCoefficients out{basis, std::vector<double>(basis->size(), 0.0)};
    for (std::size_t j = 0; j < basis->size(); ++j) {
        const auto phi = basis->mode(j);
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) acc += w[i] * values[i] * phi[i];
        out.coeffs[j] = acc;
    }
    return out;
}

SpectralCoefficients analyze(const GridFunction& g, const BasisPtr& basis) {
    detail::require(basis != nullptr, "missing basis");
    detail::require(basis->grid() != nullptr && basis->grid().get() == &g.grid(),
                    "grid function and basis live on different grids");
    return analyze(g.values(), basis);
}

std::vector<double> synthesize_values(const SpectralCoefficients& c) {
    detail::require(c.basis != nullptr, "coefficients carry no basis");
    detail::require(c.coeffs.size() == c.basis->size(), "coefficient count does not match the basis");
    std::vector<double> out(c.basis->node_count(), 0.0);
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
        const auto phi = c.basis->mode(j);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c.coeffs[j] * phi[i];
    }
    return out;
}

GridFunction synthesize(const SpectralCoefficients& c) {
    detail::require(c.basis != nullptr && c.basis->grid() != nullptr, "synthesis onto a grid needs a grid basis");
    return GridFunction(c.basis->grid(), synthesize_values(c));
}

SpectralCoefficients apply_multiplier(const SpectralCoefficients& c, const std::function<double(double)>& f) {
    SpectralCoefficients out = c;
    for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] *= f(c.basis->eigenvalue(j));
    return out;
}

namespace {

double power_multiplier(double lambda, double s) { return lambda == 0.0 ? 0.0 : std::pow(lambda, s); }

void require_order(double s) {
    detail::require(std::isfinite(s) && s >= 0.0, "fractional order must be nonnegative");
}

}  // namespace

std::vector<double> apply_spectral_frac(std::span<const double> values, double s, const BasisPtr& basis) {
    require_order(s);
    return synthesize_values(apply_multiplier(analyze(values, basis), [s](double l) { return power_multiplier(l, s); }));
}

GridFunction apply_spectral_frac(const GridFunction& g, double s, const BasisPtr& basis) {
    require_order(s);
    return synthesize(apply_multiplier(analyze(g, basis), [s](double l) { return power_multiplier(l, s); }));
}

std::vector<double> heat_semigroup(std::span<const double> values, double t, const BasisPtr& basis) {
    detail::require(std::isfinite(t) && t >= 0.0, "heat semigroup time must be >= 0");
    return synthesize_values(apply_multiplier(analyze(values, basis), [t](double l) { return std::exp(-l * t); }));
}

GridFunction heat_semigroup(const GridFunction& g, double t, const BasisPtr& basis) {
    detail::require(std::isfinite(t) && t >= 0.0, "heat semigroup time must be >= 0");
    return synthesize(apply_multiplier(analyze(g, basis), [t](double l) { return std::exp(-l * t); }));
}

double semigroup_multiplier(double lambda, double s, const QuadratureRule& rule) {
    detail::require(s > 0.0 && s < 1.0, "semigroup formula needs 0 < s < 1");
    detail::require(lambda >= 0.0, "eigenvalue must be nonnegative");
    detail::require(rule.kind == QuadratureKind::LogSpaced && rule.size() >= 3, "semigroup formula needs a log-spaced rule");
    if (lambda == 0.0) return 0.0;
    const double t_min = rule.nodes.front(), t_max = rule.nodes.back();
    if (lambda * t_min > 0.01 || lambda * t_max < 100.0)
        throw NumericalError("log-spaced rule [" + std::to_string(t_min) + ", " + std::to_string(t_max) +
                             "] is inadequate for eigenvalue " + std::to_string(lambda));
    const double dtau = log_step(rule);

    double trap = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double t = rule.nodes[i];
        trap += rule.weights[i] * std::expm1(-lambda * t) * std::pow(t, -1.0 - s);
    }

    // Near t_min: h(tau) = sum_m (-lambda t)^m / m! t^{-s}, so every tau-derivative is a series.
    double d1_left = 0.0, d3_left = 0.0, tail_left = 0.0;
    {
        const double x = -lambda * t_min;
        double term = 1.0;  // x^m / m!
        for (int m = 1; m <= 60; ++m) {
            term *= x / m;
            const double e = m - s;
            d1_left += e * term;
            d3_left += e * e * e * term;
            const double add = term / e;
            tail_left += add;
            if (std::abs(term) < 1e-20) break;
        }
        const double ts = std::pow(t_min, -s);
        d1_left *= ts;
        d3_left *= ts;
        tail_left *= ts;
    }
    // Near t_max the exponential is below e^{-100}: h(tau) = -e^{-s tau}.
    const double tsr = std::pow(t_max, -s);
    const double d1_right = s * tsr;
    const double d3_right = s * s * s * tsr;
    const double tail_right = -tsr / s;

    const double dt2 = dtau * dtau;
    const double integral = trap - dt2 / 12.0 * (d1_right - d1_left) + dt2 * dt2 / 720.0 * (d3_right - d3_left) +
                            tail_left + tail_right;
    return integral / std::tgamma(-s);
}

SpectralCoefficients semigroup_frac_coefficients(const SpectralCoefficients& c, double s, const QuadratureRule& rule) {
    detail::require(c.basis != nullptr, "coefficients carry no basis");
    SpectralCoefficients out = c;
    for (std::size_t j = 0; j < out.coeffs.size(); ++j)
        out.coeffs[j] *= semigroup_multiplier(c.basis->eigenvalue(j), s, rule);
    return out;
}

std::vector<double> apply_semigroup_frac(std::span<const double> values, double s, const BasisPtr& basis,
                                         const QuadratureRule& rule) {
    return synthesize_values(semigroup_frac_coefficients(analyze(values, basis), s, rule));
}

GridFunction apply_semigroup_frac(const GridFunction& g, double s, const BasisPtr& basis, const QuadratureRule& rule) {
    return synthesize(semigroup_frac_coefficients(analyze(g, basis), s, rule));
}

QuadratureRule default_semigroup_rule(const SpectralBasis& basis, std::size_t count) {
    const double lmin = basis.min_positive_eigenvalue();
    const double lmax = basis.max_eigenvalue();
    if (lmax <= 0.0) return log_spaced_rule(1e-3, 1e3, count);
    return log_spaced_rule(1.0 / (200.0 * lmax), 200.0 / lmin, count);
}

std::vector<double> apply_ou_frac(std::span<const double> hermite_coeffs, double s) {
    require_order(s);
    std::vector<double> out(hermite_coeffs.begin(), hermite_coeffs.end());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= power_multiplier(static_cast<double>(j), s);
    return out;
}

}  // namespace fracineq::spectral
