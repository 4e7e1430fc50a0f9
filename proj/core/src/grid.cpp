#include "fracineq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fracineq/error.hpp"

namespace fracineq {

std::string_view to_string(GridKind kind) {
    switch (kind) {
        case GridKind::Periodic: return "periodic";
        case GridKind::DirichletInterval: return "dirichlet-interval";
        case GridKind::DirichletBox: return "dirichlet-box";
    }
    return "unknown";
}

Grid::Grid(GridKind kind, Extent extent, std::size_t per_axis) : kind_(kind), extent_(extent) {
    detail::require(std::isfinite(extent.lo) && std::isfinite(extent.hi) && extent.hi > extent.lo,
                    "grid extent must be a nondegenerate interval");
    const std::size_t min_nodes = kind == GridKind::Periodic ? 4 : 3;
    detail::require(per_axis >= min_nodes, "grid needs at least " + std::to_string(min_nodes) +
                                               " nodes per axis for kind " +
                                               std::string(to_string(kind)) + ", got " +
                                               std::to_string(per_axis));
    const double len = extent.length();
    axis_.resize(per_axis);
    if (kind == GridKind::Periodic) {
        h_ = len / static_cast<double>(per_axis);
        for (std::size_t i = 0; i < per_axis; ++i) axis_[i] = extent.lo + static_cast<double>(i) * h_;
    } else {
        h_ = len / static_cast<double>(per_axis + 1);
        for (std::size_t i = 0; i < per_axis; ++i)
            axis_[i] = extent.lo + static_cast<double>(i + 1) * h_;
    }
}

std::array<double, 2> Grid::point(std::size_t flat) const {
    const std::size_t n = axis_.size();
    if (dim() == 1) return {axis_[flat], 0.0};
    return {axis_[flat % n], axis_[flat / n]};
}

GridPtr make_grid(GridKind kind, Extent extent, std::size_t nodes) {
    return std::make_shared<const Grid>(kind, extent, nodes);
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    detail::require(grid_ != nullptr, "grid function needs a grid");
    detail::require(values_.size() == grid_->size(),
                    "grid function has " + std::to_string(values_.size()) + " values for " +
                        std::to_string(grid_->size()) + " nodes");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            detail::fail("non-finite grid function value at node " + std::to_string(i));
    }
}

GridFunction GridFunction::zeros(GridPtr grid) {
    const std::size_t n = grid->size();
    return GridFunction(std::move(grid), std::vector<double>(n, 0.0));
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

template <typename Eval>
GridFunction sample_impl(GridPtr grid, Eval&& eval) {
    std::vector<double> out(grid->size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = eval(grid->point(i));
        if (!std::isfinite(v))
            detail::fail("sampled function is not finite at node " + std::to_string(i));
        out[i] = v;
    }
    return GridFunction(std::move(grid), std::move(out));
}

}  // namespace

GridFunction sample(const ScalarFn& f, GridPtr grid) {
    detail::require(grid->dim() == 1, "one-variable sample needs a 1D grid");
    return sample_impl(std::move(grid), [&](std::array<double, 2> p) { return f(p[0]); });
}

GridFunction sample(const ScalarFn2& f, GridPtr grid) {
    detail::require(grid->dim() == 2, "two-variable sample needs a 2D grid");
    return sample_impl(std::move(grid), [&](std::array<double, 2> p) { return f(p[0], p[1]); });
}

GridFunction random_smooth(GridPtr grid, std::uint64_t seed, std::size_t bandwidth) {
    detail::require(bandwidth <= grid->per_axis() / 2,
                    "bandwidth " + std::to_string(bandwidth) + " exceeds half the node count");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Extent ext = grid->extent();
    const double len = ext.length();
    const std::size_t n = grid->size();
    std::vector<double> out(n, 0.0);

    if (grid->periodic()) {
        const double a0 = normal(rng);
        std::vector<double> ca(bandwidth + 1), cb(bandwidth + 1);
        for (std::size_t k = 1; k <= bandwidth; ++k) {
            ca[k] = normal(rng) / (1.0 + static_cast<double>(k));
            cb[k] = normal(rng) / (1.0 + static_cast<double>(k));
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double theta = 2.0 * std::numbers::pi * (grid->axis()[i] - ext.lo) / len;
            double v = a0;
            for (std::size_t k = 1; k <= bandwidth; ++k) {
                const double kt = static_cast<double>(k) * theta;
                v += ca[k] * std::cos(kt) + cb[k] * std::sin(kt);
            }
            out[i] = v;
        }
    } else if (grid->dim() == 1) {
        std::vector<double> c(bandwidth + 1);
        for (std::size_t k = 1; k <= bandwidth; ++k) c[k] = normal(rng) / (1.0 + static_cast<double>(k));
        for (std::size_t i = 0; i < n; ++i) {
            const double theta = std::numbers::pi * (grid->axis()[i] - ext.lo) / len;
            double v = 0.0;
            for (std::size_t k = 1; k <= bandwidth; ++k) v += c[k] * std::sin(static_cast<double>(k) * theta);
            out[i] = v;
        }
    } else {
        std::vector<double> c((bandwidth + 1) * (bandwidth + 1), 0.0);
        for (std::size_t k = 1; k <= bandwidth; ++k)
            for (std::size_t l = 1; l <= bandwidth; ++l)
                c[k + (bandwidth + 1) * l] = normal(rng) / (1.0 + static_cast<double>(k + l));
        for (std::size_t idx = 0; idx < n; ++idx) {
            const auto p = grid->point(idx);
            const double tx = std::numbers::pi * (p[0] - ext.lo) / len;
            const double ty = std::numbers::pi * (p[1] - ext.lo) / len;
            double v = 0.0;
            for (std::size_t k = 1; k <= bandwidth; ++k)
                for (std::size_t l = 1; l <= bandwidth; ++l)
                    v += c[k + (bandwidth + 1) * l] * std::sin(static_cast<double>(k) * tx) *
                         std::sin(static_cast<double>(l) * ty);
            out[idx] = v;
        }
    }
    return GridFunction(std::move(grid), std::move(out));
}

namespace {

void require_same_grid(const GridFunction& u, const GridFunction& v) {
    detail::require(u.grid_ptr() == v.grid_ptr() || (u.size() == v.size() &&
                                                     u.grid().kind() == v.grid().kind()),
                    "grid functions live on different grids");
}

}  // namespace

double inner(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc * u.grid().cell_volume();
}

GridFunction map(const GridFunction& u, const std::function<double(double)>& f) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = f(u[i]);
    return GridFunction(u.grid_ptr(), std::move(out));
}

GridFunction axpy(double alpha, const GridFunction& x, const GridFunction& y) {
    require_same_grid(x, y);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + y[i];
    return GridFunction(x.grid_ptr(), std::move(out));
}

double max_abs_diff(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

}  // namespace fracineq
