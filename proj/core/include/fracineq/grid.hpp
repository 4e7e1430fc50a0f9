#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace fracineq {

enum class GridKind {
    Periodic,           // [lo, hi), duplicate endpoint excluded
    DirichletInterval,  // (lo, hi), interior nodes only
    DirichletBox        // (lo, hi)^2, interior nodes only
};

std::string_view to_string(GridKind kind);

struct Extent {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
};

/**
 * Uniform structured grid. Dirichlet grids store interior nodes only and the
 * boundary value is an implicit zero. Box grids use the same axis in both
 * directions; node (i, j) has flat index i + N * j.
 */
class Grid {
public:
    Grid(GridKind kind, Extent extent, std::size_t per_axis);

    GridKind kind() const { return kind_; }
    bool periodic() const { return kind_ == GridKind::Periodic; }
    int dim() const { return kind_ == GridKind::DirichletBox ? 2 : 1; }

    std::size_t per_axis() const { return axis_.size(); }
    std::size_t size() const { return dim() == 1 ? axis_.size() : axis_.size() * axis_.size(); }

    double spacing() const { return h_; }
    double cell_volume() const { return dim() == 1 ? h_ : h_ * h_; }
    Extent extent() const { return extent_; }

    std::span<const double> axis() const { return axis_; }
    std::array<double, 2> point(std::size_t flat) const;

private:
    GridKind kind_;
    Extent extent_;
    double h_;
    std::vector<double> axis_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Rejects node counts below the minimum (4 periodic, 3 Dirichlet, i.e. at
// least four cells) and degenerate extents.
GridPtr make_grid(GridKind kind, Extent extent, std::size_t nodes);

class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values);

    static GridFunction zeros(GridPtr grid);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    double max_abs() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

using ScalarFn = std::function<double(double)>;
using ScalarFn2 = std::function<double(double, double)>;

GridFunction sample(const ScalarFn& f, GridPtr grid);
GridFunction sample(const ScalarFn2& f, GridPtr grid);

/**
 * Band-limited random test function: a trigonometric polynomial of degree
 * `bandwidth` on periodic grids, a sine polynomial on Dirichlet grids (tensor
 * sine polynomial on boxes). Coefficients are N(0,1) / (1 + k), drawn from a
 * seeded mt19937_64. bandwidth = 0 gives a constant (zero on Dirichlet grids).
 */
GridFunction random_smooth(GridPtr grid, std::uint64_t seed, std::size_t bandwidth);

// Discrete L2 pairing with the grid's cell volume as weight.
double inner(const GridFunction& u, const GridFunction& v);

// Pointwise helpers; both operands must share the same grid.
GridFunction map(const GridFunction& u, const std::function<double(double)>& f);
GridFunction axpy(double alpha, const GridFunction& x, const GridFunction& y);
double max_abs_diff(const GridFunction& u, const GridFunction& v);

}  // namespace fracineq
