#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracineq/grid.hpp"
#include "fracineq/params.hpp"

namespace fracineq::nonlocal {

// Kernel as a function of the displacement vector (length 1 or 2).
using KernelFn = std::function<double(std::span<const double>)>;

/**
 * Nonnegative kernel with a declared singularity order sigma
 * (K(h) ~ |h|^{-sigma} near 0) and an optional far-field cutoff. When the
 * cutoff is unset, operators truncate at 8x the grid extent.
 */
struct KernelSpec {
    KernelFn K;
    double singularity_order = 0.0;
    std::optional<double> cutoff;
    bool symmetric = true;
    int dim = 1;

    double operator()(double h) const { return K(std::array<double, 1>{h}); }
    double operator()(double hx, double hy) const { return K(std::array<double, 2>{hx, hy}); }
};

/**
 * Validates and wraps a kernel. K is sampled on a fixed set of displacements
 * and rejected if it is negative anywhere, or (when `symmetric`) if
 * K(h) != K(-h). Requires singularity_order < dim + 2.
 */
KernelSpec make_kernel(KernelFn K, double singularity_order, int dim,
                       std::optional<double> cutoff = std::nullopt, bool symmetric = true);

// K(h) = C_{n,s} |h|^{-(n+2s)}.
KernelSpec frac_kernel(const FracParams& params);

// 1D kernel supported on the lattice: K(m h) = table[|m|] for 1 <= |m| < table.size(),
// zero elsewhere (table[0] is ignored).
KernelSpec lattice_kernel(std::vector<double> table, double spacing);

// delta_h u(x) = -(u(x+h) + u(x-h) - 2u(x)), with periodic wrap or implicit
// zero exterior. h must be an integer multiple of the grid spacing.
double second_difference(const GridFunction& u, std::size_t node, double displacement);
double second_difference(const GridFunction& u, std::size_t node,
                         std::array<double, 2> displacement);

enum class TailMode {
    None,
    ZeroExterior,  // c * u(x): the far field sees zeros
    PeriodicMean   // c * (u(x) - mean u): the far field of a periodic function averages out
};

/**
 * Translation-invariant lattice operator
 *
 *   A u(x) = sum_k w_k delta_{o_k} u(x) + c * tail(u)(x)
 *
 * over a half lattice of offsets o_k with w_k >= 0. Periodic offsets are
 * reduced modulo N and Dirichlet offsets that leave the domain on both sides
 * are folded into the zero-exterior tail, so application costs O(N * offsets)
 * with offsets bounded by the node count. Summation order is fixed.
 */
class LatticeOperator {
public:
    struct Offset {
        long dx = 0;
        long dy = 0;
    };

    LatticeOperator(GridPtr grid, std::vector<Offset> offsets, std::vector<double> weights,
                    double tail_coefficient, TailMode tail_mode);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::span<const Offset> offsets() const { return offsets_; }
    std::span<const double> weights() const { return weights_; }
    double tail_coefficient() const { return tail_; }
    TailMode tail_mode() const { return tail_mode_; }

    GridFunction apply(const GridFunction& u) const;
    std::vector<double> apply(std::span<const double> u) const;

    // Tail contribution alone (for diagnostics).
    std::vector<double> tail_part(std::span<const double> u) const;

private:
    GridPtr grid_;
    std::vector<Offset> offsets_;
    std::vector<double> weights_;
    double tail_;
    TailMode tail_mode_;
};

// I u(x) = int delta_y u(x) K(y) dy.
LatticeOperator nondiv_operator(GridPtr grid, const KernelSpec& K);
// L u(x) = 1/2 int delta_h u(x) K(h) dh.
LatticeOperator translation_invariant_operator(GridPtr grid, const KernelSpec& K);

GridFunction apply_nondiv(const GridFunction& u, const KernelSpec& K);
GridFunction apply_translation_invariant(const GridFunction& u, const KernelSpec& K);

/**
 * (-Delta)^s by the symmetric second-difference lattice sum. The trapezoid
 * sum over displacements up to r_trunc (default 8x the extent, rounded to a
 * lattice multiple) carries a first-order singular correction: the
 * generalized Euler-Maclaurin term -zeta(2s-1) h^{-2s} C delta_h u (square
 * lattice zeta in 2D), which is a nonnegative extra weight on nearest
 * neighbours. The far field beyond r_trunc is the analytic power-law tail,
 * taken against zero exterior on Dirichlet grids and against the mean on
 * periodic grids.
 */
LatticeOperator frac_pv_operator(GridPtr grid, const FracParams& params,
                                 std::optional<double> r_trunc = std::nullopt);

struct PvDiagnostics {
    double tail_fraction = 0.0;  // analytic far-field term over ||result||_inf
    bool tail_warning = false;   // tail_fraction > 0.1
    double r_trunc = 0.0;
};

GridFunction apply_frac_pv(const GridFunction& u, const FracParams& params,
                           PvDiagnostics* diagnostics = nullptr);

/**
 * Restricted fractional Laplacian on a Dirichlet grid: u is extended by zero,
 * the interior part C int_Omega (u(x) - u(z)) |x-z|^{-n-2s} dz is a trapezoid
 * sum over the closed lattice (boundary nodes carry u = 0) with the same
 * singular correction as frac_pv_operator, and the exterior part
 * C u(x) int_{R^n \ Omega} |x-z|^{-n-2s} dz is analytic in 1D and a
 * boundary-distance angular quadrature on boxes. The discrete operator is
 * symmetric with nonpositive off-diagonal entries.
 */
class RestrictedOperator {
public:
    RestrictedOperator(GridPtr grid, const FracParams& params);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    GridFunction apply(const GridFunction& u) const;
    std::vector<double> apply(std::span<const double> u) const;

    // c(x_i): boundary-node and exterior contributions (the "killing" term).
    std::span<const double> diagonal_shift() const { return shift_; }

private:
    double pair_weight(long dx, long dy) const;

    GridPtr grid_;
    FracParams params_;
    std::vector<double> pair_weights_;  // indexed by |dx| + (N) * |dy|
    std::vector<double> shift_;
};

GridFunction apply_restricted(const GridFunction& u, const FracParams& params);

}  // namespace fracineq::nonlocal
