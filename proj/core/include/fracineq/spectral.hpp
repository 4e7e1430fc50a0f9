#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "fracineq/grid.hpp"
#include "fracineq/quadrature.hpp"

namespace fracineq::spectral {

enum class BasisFamily { DirichletSine, Fourier, Hermite };

std::string_view to_string(BasisFamily family);

/**
 * Ordered eigenpairs (lambda_j, phi_j) sampled on a node set together with
 * the discrete inner-product weights under which the phi_j are orthonormal.
 * Sine and Fourier bases live on a Grid (weights = spacing); the Hermite
 * basis lives on Gauss-Hermite nodes (weights = Gaussian quadrature weights)
 * and has no Grid.
 */
class SpectralBasis {
public:
    SpectralBasis(BasisFamily family, GridPtr grid, std::vector<double> nodes, std::vector<double> weights,
                  std::vector<double> eigenvalues, std::vector<std::vector<double>> modes);

    BasisFamily family() const { return family_; }
    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return eigenvalues_.size(); }
    std::size_t node_count() const { return nodes_.size(); }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> eigenvalues() const { return eigenvalues_; }
    double eigenvalue(std::size_t j) const { return eigenvalues_[j]; }
    std::span<const double> mode(std::size_t j) const { return modes_[j]; }

    // Smallest positive and largest eigenvalue.
    double min_positive_eigenvalue() const;
    double max_eigenvalue() const { return eigenvalues_.back(); }

private:
    BasisFamily family_;
    GridPtr grid_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> eigenvalues_;
    std::vector<std::vector<double>> modes_;
};

using BasisPtr = std::shared_ptr<const SpectralBasis>;

struct SpectralCoefficients {
    BasisPtr basis;
    std::vector<double> coeffs;
};

/**
 * Dirichlet sine modes on an interval (lo, hi) of length L:
 * phi_j = sqrt(2/L) sin(j pi (x - lo) / L), lambda_j = (j pi / L)^2, j = 1..J.
 * On (0, pi) this is sqrt(2/pi) sin(jx) with lambda_j = j^2. Requires J <= N.
 */
BasisPtr dirichlet_basis(GridPtr grid, std::size_t J);

/**
 * Real Fourier modes on a periodic grid of length L with wavenumbers
 * k = 0..J (omega = 2 pi k / L): the constant, then cos and sin pairs with
 * lambda = omega^2. At the Nyquist wavenumber only the cosine is kept.
 * Requires J <= N/2.
 */
BasisPtr fourier_basis(GridPtr grid, std::size_t J);

/**
 * Orthonormal probabilists' Hermite polynomials He_j / sqrt(j!), j = 0..J,
 * eigenfunctions of -Delta_gamma = -(d^2/dx^2 - x d/dx) with lambda_j = j.
 * Sampled on a Gauss-Hermite rule with `nodes` points (default J + 1, the
 * smallest rule under which the basis is discretely orthonormal).
 * Requires J <= 32.
 */
BasisPtr hermite_basis(std::size_t J, std::size_t nodes = 0);

SpectralCoefficients analyze(std::span<const double> values, const BasisPtr& basis);
SpectralCoefficients analyze(const GridFunction& g, const BasisPtr& basis);
std::vector<double> synthesize_values(const SpectralCoefficients& c);
// Requires a grid-backed basis.
GridFunction synthesize(const SpectralCoefficients& c);

// Coefficient j multiplied by f(lambda_j).
SpectralCoefficients apply_multiplier(const SpectralCoefficients& c, const std::function<double(double)>& f);

// sum_j lambda_j^s g_j phi_j; s >= 0 (s = 1 gives -Laplacian on band-limited input).
GridFunction apply_spectral_frac(const GridFunction& g, double s, const BasisPtr& basis);
std::vector<double> apply_spectral_frac(std::span<const double> values, double s, const BasisPtr& basis);

// e^{-t L} g. Rejects t < 0.
GridFunction heat_semigroup(const GridFunction& g, double t, const BasisPtr& basis);
std::vector<double> heat_semigroup(std::span<const double> values, double t, const BasisPtr& basis);

/**
 * L^s by the semigroup formula (1/Gamma(-s)) int_0^inf (e^{-tL} g - g) t^{-1-s} dt,
 * one mode at a time. The integral is the trapezoid sum of the log-spaced
 * rule in tau = log t with Euler-Maclaurin endpoint corrections through the
 * third derivative, plus analytic tails on (0, t_min) and (t_max, inf).
 * The rule must satisfy t_min <= 1/(100 lambda_max) and
 * t_max >= 100/lambda_min (positive eigenvalues only).
 */
SpectralCoefficients semigroup_frac_coefficients(const SpectralCoefficients& c, double s,
                                                 const QuadratureRule& rule);
GridFunction apply_semigroup_frac(const GridFunction& g, double s, const BasisPtr& basis,
                                  const QuadratureRule& rule);
std::vector<double> apply_semigroup_frac(std::span<const double> values, double s, const BasisPtr& basis,
                                         const QuadratureRule& rule);

// Scalar semigroup-formula multiplier for one eigenvalue (equals lambda^s).
double semigroup_multiplier(double lambda, double s, const QuadratureRule& rule);

// A log-spaced rule that satisfies the semigroup adequacy bounds for `basis`.
QuadratureRule default_semigroup_rule(const SpectralBasis& basis, std::size_t count = 240);

// (-Delta_gamma)^s on orthonormal Hermite coefficients: c_j -> j^s c_j.
std::vector<double> apply_ou_frac(std::span<const double> hermite_coeffs, double s);

}  // namespace fracineq::spectral
