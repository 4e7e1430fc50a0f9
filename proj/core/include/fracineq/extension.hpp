#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracineq/grid.hpp"
#include "fracineq/params.hpp"
#include "fracineq/quadrature.hpp"
#include "fracineq/spectral.hpp"

namespace fracineq::extension {

/**
 * Graded y-mesh with Ny cells on [0, y_max]: y_0 = 0, first cell
 * y_max / (20 Ny), and a constant geometric ratio chosen so that the last
 * node lands exactly on y_max.
 */
std::vector<double> graded_y_mesh(double y_max, std::size_t ny);

/**
 * Solution of div(y^a grad u) = 0 over a 1D base grid times the graded
 * y-mesh. Row k holds the level y = y_nodes[k]; row 0 is the trace.
 * A periodic base grid gives the strip, a Dirichlet interval the cylinder
 * with zero lateral data.
 */
class ExtensionField {
public:
    ExtensionField(GridPtr base, std::vector<double> y_nodes, std::vector<double> values, double a);

    const Grid& base_grid() const { return *base_; }
    const GridPtr& base_ptr() const { return base_; }
    std::span<const double> y_nodes() const { return y_; }
    std::size_t levels() const { return y_.size(); }
    double a() const { return a_; }

    double operator()(std::size_t node, std::size_t level) const { return values_[level * base_->size() + node]; }
    std::span<const double> row(std::size_t level) const {
        return std::span<const double>(values_).subspan(level * base_->size(), base_->size());
    }
    std::span<const double> values() const { return values_; }

    // Largest relative residual of the conservation scheme (set by the solver).
    double residual = 0.0;
    // Predicted relative size of the slowest decaying mode at y_max.
    double decay_ratio = 0.0;
    // decay_ratio exceeds 1e-6.
    bool decay_warning = false;

private:
    GridPtr base_;
    std::vector<double> y_;
    std::vector<double> values_;
    double a_;
};

/**
 * Finite-volume solve of the extension problem with trace v.
 *
 * Face conductances are the exact harmonic means of y^a over each y-cell,
 * G_k = (1 - a) / (y_{k+1}^{1-a} - y_k^{1-a}), and the x-coupling uses the
 * exact y^a mass of the dual cell. The x-direction is diagonalized exactly
 * (discrete Fourier or sine modes) and each mode is a tridiagonal solve in y.
 * The top row carries the far-field value: the mean of v on the strip,
 * zero on the cylinder.
 *
 * Throws InvalidArgument for Ny < 16 or a non-1D base grid, and
 * NumericalError when the scheme residual exceeds 1e-10 or the decay check
 * predicts more than 1e-2 of the datum survives at y_max.
 */
ExtensionField solve_cs_extension(const GridFunction& v, const FracParams& params, double y_max = 10.0,
                                  std::size_t ny = 64);

// Discrete weighted Dirichlet energy sum h G_k (du_y)^2 + sum (M_k / h) (du_x)^2.
double extension_energy(const ExtensionField& field, std::span<const double> values);
double extension_energy(const ExtensionField& field);

// Conservation residual at every interior (x, y) node (trace and top rows are zero).
std::vector<double> extension_residual(const ExtensionField& field, std::span<const double> values);

struct DtnTrace {
    GridPtr base;
    std::vector<double> values;    // -lim y^a u_y per base node
    int extrapolation_order = 0;   // number of correction terms eliminated
    bool non_monotone = false;     // some node had a growing extrapolation sequence
};

/**
 * -lim_{y -> 0} y^a u_y from the fluxes through the first three y-faces.
 * Near y = 0 the weighted flux behaves like c_0 + c_1 y^{2-2s} + c_2 y^2, and
 * each discrete face flux is the exact y^{-a}-weighted average of that
 * profile over its face, so the correction terms are eliminated with the
 * exact face averages of y^{2-2s} and y^2. When the two exponents are within
 * 1/4 only the first is used.
 */
DtnTrace dtn_trace(const ExtensionField& field, const FracParams& params);

// Same extrapolation applied to sampled y-profiles p[level][node] on the given y-nodes.
DtnTrace dtn_from_profiles(GridPtr base, std::span<const double> y_nodes,
                           const std::vector<std::vector<double>>& profiles, const FracParams& params);

/**
 * Semigroup extension of u evaluated at height y:
 * coefficient_j(y) = (lambda_j^s / Gamma(s)) int_0^inf e^{-lambda_j t - y^2/(4t)} t^{s-1} dt * u_j,
 * which equals u_j at y = 0. Zero modes keep their coefficient (the lambda -> 0 limit).
 * The t-integral is the log-spaced trapezoid with Euler-Maclaurin end
 * corrections and an exponential-integral series on (0, t_min).
 */
spectral::SpectralCoefficients st_extension(const spectral::SpectralCoefficients& u, double s, double y,
                                            const QuadratureRule& rule);

// Closed form of one st_extension mode: (2 / Gamma(s)) (z/2)^s K_s(z), z = sqrt(lambda) y.
double st_profile_closed_form(double lambda, double s, double y);

struct Calibration {
    double closed_form = 0.0;
    double calibrated = 0.0;
    double ratio = 0.0;  // calibrated / |closed_form|
};

// d_s closed form 2^{2s-1} Gamma(s) / Gamma(1-s).
double realization_constant(const FracParams& params);

/**
 * Empirical d_s = ||(-Delta)^s v|| / ||DtN v|| for v = sin(kx) on the periodic
 * strip over [0, 2 pi) with N nodes.
 */
Calibration calibrate_realization_constant(const FracParams& params, int k = 1, std::size_t n = 256,
                                           std::size_t ny = 64, double y_max = 10.0);

// The semigroup-extension constant 2s Gamma(-s) / (4^s Gamma(s)) (negative).
double st_constant(const FracParams& params);

/**
 * Empirical magnitude of the semigroup-extension constant: the weighted
 * conormal derivative of st_extension applied to the Hermite mode H_1
 * divided by the OU multiplier 1^s.
 */
Calibration calibrate_st_constant(const FracParams& params, std::size_t ny = 64, double y_max = 10.0);

}  // namespace fracineq::extension
