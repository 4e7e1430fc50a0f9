#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracineq/convex.hpp"
#include "fracineq/grid.hpp"
#include "fracineq/kernel.hpp"
#include "fracineq/metric_measure.hpp"
#include "fracineq/params.hpp"

namespace fracineq::harness {

enum class OperatorKind {
    ExactKernel,  // finite nonnegative-weight sums: inequalities hold without tolerance
    Spectral,     // eigen-multipliers: residuals at rounding/aliasing level
    Extension     // extension + trace: residuals at discretization level
};

std::string_view to_string(OperatorKind kind);

/**
 * Type-erased linear operator acting on node values. `measure` holds the
 * quadrature weight of each node (cell volume, GH weight or point mass).
 * Zero-exterior operators see a zero extension outside the domain, so they
 * do not annihilate constants; the Cordoba check then applies them to
 * phi(u) - phi(0).
 */
struct OperatorHandle {
    std::string id;
    OperatorKind kind = OperatorKind::ExactKernel;
    bool zero_exterior = false;
    std::vector<double> measure;
    std::function<std::vector<double>(std::span<const double>)> apply;

    std::size_t size() const { return measure.size(); }
};

OperatorHandle kernel_handle(GridPtr grid, const nonlocal::KernelSpec& K, std::string id = "kernel");
OperatorHandle frac_pv_handle(GridPtr grid, const FracParams& params);
OperatorHandle restricted_handle(GridPtr grid, const FracParams& params);
OperatorHandle metric_measure_handle(const nonlocal::MetricMeasureSpace& space, double s, nonlocal::MetricForm form);
// Fourier multiplier |k|^{2s} with the full bandwidth N/2 (periodic grid).
OperatorHandle fourier_frac_handle(GridPtr grid, double s);
// Spectral Dirichlet fractional Laplacian with J = N sine modes.
OperatorHandle spectral_dirichlet_handle(GridPtr grid, double s);
// (-Delta_gamma)^s on Gauss-Hermite node values of degree <= J.
OperatorHandle ou_handle(std::size_t J, double s);
// d_s times the DtN trace of the solved extension (strip or cylinder).
OperatorHandle extension_handle(GridPtr grid, const FracParams& params, double y_max = 10.0, std::size_t ny = 64);

using Metadata = std::map<std::string, std::string>;

struct InequalityReport {
    std::string check_name;
    std::string operator_id;
    double min_residual = 0.0;
    std::optional<std::size_t> argmin;
    double tolerance = 0.0;
    bool pass = false;
    Metadata metadata;

    void finalize() { pass = min_residual >= -tolerance; }
};

// Residual field r = phi'(u) A u - A phi(u) (phi(u) - phi(0) for zero-exterior operators).
std::vector<double> cordoba_residual(const OperatorHandle& op, std::span<const double> u,
                                     const ConvexTestFunction& phi);

// Scale used by the default tolerances: ||phi'(u)||_inf ||Au||_inf + ||A phi(u)||_inf.
double cordoba_scale(const OperatorHandle& op, std::span<const double> u, const ConvexTestFunction& phi);

/**
 * Default absolute tolerance for an operator kind: 0 for exact kernels,
 * 1e-8 * scale for spectral operators and 5e-2 * scale for extensions, all
 * multiplied by tol_scale.
 */
double default_tolerance(const OperatorHandle& op, std::span<const double> u, const ConvexTestFunction& phi,
                         double tol_scale = 1.0);

InequalityReport check_cordoba(const OperatorHandle& op, std::span<const double> u, const ConvexTestFunction& phi,
                               double tol);

struct KatoOptions {
    std::vector<double> eps = {1e-1, 1e-2, 1e-3};
    std::vector<double> psi;          // nonnegative test function, default 1
    double pointwise_tolerance = 0.0;
    double pairing_tolerance = 1e-6;
};

/**
 * Kato inequality through phi_eps: the pointwise Cordoba check at every eps,
 * and the pairing P(eps) = sum mu psi (phi_eps'(u) A u - A phi_eps(u)),
 * extrapolated to eps = 0. For the pairing the eps sequence is continued
 * geometrically (same ratio, down to 1e-6 max|u|) and the polynomial through
 * the last three levels is evaluated at 0. Only the supplied eps values enter
 * the pointwise part. The two parts have separate tolerances, so the report carries the
 * smaller margin (worst pointwise residual + its tolerance, extrapolated
 * pairing + its tolerance) as min_residual with tolerance 0.
 */
InequalityReport check_kato(const OperatorHandle& op, std::span<const double> u, const KatoOptions& options);

struct HopfOptions {
    double y_max = 10.0;
    std::size_t ny = 64;
    double margin_factor = 1e-3;
};

/**
 * Weighted conormal derivative -lim y^a u_y at the zero x0 of a nonnegative
 * trace v. Passes when it is below -margin_factor * ||v||_inf.
 */
InequalityReport check_hopf(const GridFunction& v, std::size_t x0, const FracParams& params,
                            const HopfOptions& options = {});
double conormal_derivative_at(const GridFunction& v, std::size_t x0, const FracParams& params,
                              const HopfOptions& options = {});

/**
 * The identities of the symmetric translation-invariant operator
 * L u = 1/2 sum_h delta_h u K(h) on a periodic grid:
 *   mean zero            sum_x L u(x) = 0
 *   product rule         delta_h(uv) = u delta_h v + v delta_h u
 *                                      - (v(x+h)-v(x))(u(x+h)-u(x)) - (v(x-h)-v(x))(u(x-h)-u(x))
 *   energy               2 <u, L u> = sum_x sum_y (u(x) - u(y))^2 K(x - y)
 * v is u shifted by a third of the period plus one. Residuals are relative to
 * the natural scale of each identity; the report also carries the residuals
 * of the forms with the opposite sign on the correction terms.
 */
InequalityReport check_identities(const GridFunction& u, const nonlocal::KernelSpec& K, double tol = 1e-10);

struct CrossOptions {
    double y_max = 10.0;
    std::size_t ny = 64;
    double tolerance = 5e-2;
    bool refine = true;
};

/**
 * Pairwise relative discrepancies among the Fourier multiplier, the P.V.
 * kernel sum, d_s times the extension DtN trace and the semigroup formula on
 * a band-limited periodic u. With refinement, u is resampled on 2N nodes and
 * solved with 2 Ny cells; the largest discrepancy must not grow.
 */
InequalityReport cross_validate(const GridFunction& u, const FracParams& params, const CrossOptions& options = {});

// Relative max-norm discrepancy ||a - b|| / max(||a||, ||b||), 0 when both vanish.
double relative_discrepancy(std::span<const double> a, std::span<const double> b);

}  // namespace fracineq::harness
