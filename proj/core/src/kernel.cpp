#include "fracineq/kernel.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "fracineq/error.hpp"
#include "fracineq/special.hpp"

namespace fracineq::nonlocal {

namespace {

constexpr std::array<double, 9> kProbeDisplacements = {1e-3, 1e-2, 0.1, 0.37, 1.0, 2.5, 7.0, 10.0, 31.0};

long lattice_steps(double displacement, double h) {
    const double m = displacement / h;
    const double r = std::round(m);
    detail::require(std::abs(m - r) <= 1e-9 * std::max(1.0, std::abs(m)),
                    "displacement " + std::to_string(displacement) +
                        " is not a multiple of the grid spacing " + std::to_string(h));
    return static_cast<long>(r);
}

// u at lattice node (i + dx, j + dy) with periodic wrap or zero exterior.
double value_at(const Grid& g, std::span<const double> u, std::size_t flat, long dx, long dy) {
    const long n = static_cast<long>(g.per_axis());
    if (g.dim() == 1) {
        long j = static_cast<long>(flat) + dx;
        if (g.periodic()) {
            j %= n;
            if (j < 0) j += n;
            return u[static_cast<std::size_t>(j)];
        }
        return (j < 0 || j >= n) ? 0.0 : u[static_cast<std::size_t>(j)];
    }
    const long i = static_cast<long>(flat) % n + dx;
    const long j = static_cast<long>(flat) / n + dy;
    if (i < 0 || i >= n || j < 0 || j >= n) return 0.0;
    return u[static_cast<std::size_t>(i + n * j)];
}

double raw_second_difference(const Grid& g, std::span<const double> u, std::size_t node, long dx,
                             long dy) {
    return -(value_at(g, u, node, dx, dy) + value_at(g, u, node, -dx, -dy) - 2.0 * u[node]);
}

struct RawLattice {
    std::map<std::pair<long, long>, double> weights;
    double tail_zero = 0.0;
};

// Folds offset weights into the reduced half lattice of the grid.
void accumulate(const Grid& g, RawLattice& acc, long dx, long dy, double w) {
    if (w == 0.0) return;
    if (dx < 0 || (dx == 0 && dy < 0)) {
        dx = -dx;
        dy = -dy;
    }
    const long n = static_cast<long>(g.per_axis());
    if (g.periodic()) {
        long r = dx % n;
        r = std::min(r, n - r);
        if (r == 0) return;  // delta vanishes for whole periods
        acc.weights[{r, 0}] += w;
        return;
    }
    // Dirichlet: both partners outside once an axis offset reaches n + 1.
    if (std::abs(dx) >= n + 1 || std::abs(dy) >= n + 1) {
        acc.tail_zero += 2.0 * w;
        return;
    }
    acc.weights[{dx, dy}] += w;
}

LatticeOperator finish(GridPtr grid, const RawLattice& acc, double tail, TailMode mode) {
    std::vector<LatticeOperator::Offset> offsets;
    std::vector<double> weights;
    offsets.reserve(acc.weights.size());
    for (const auto& [o, w] : acc.weights) {
        offsets.push_back({o.first, o.second});
        weights.push_back(w);
    }
    if (acc.tail_zero != 0.0) {
        detail::require(mode != TailMode::PeriodicMean, "internal: mixed tail modes");
        mode = TailMode::ZeroExterior;
        tail += acc.tail_zero;
    }
    return LatticeOperator(std::move(grid), std::move(offsets), std::move(weights), tail, mode);
}

double default_cutoff(const Grid& g) { return 8.0 * g.extent().length(); }

LatticeOperator kernel_operator(GridPtr grid, const KernelSpec& K, double factor) {
    detail::require(K.symmetric, "kernel operators require a symmetric kernel");
    detail::require(K.dim == grid->dim(), "kernel dimension does not match the grid");
    const double h = grid->spacing();
    const double cutoff = K.cutoff.value_or(default_cutoff(*grid));
    const long m_max = static_cast<long>(std::floor(cutoff / h + 1e-9));
    const double cell = grid->cell_volume();
    RawLattice acc;
    if (grid->dim() == 1) {
        for (long m = 1; m <= m_max; ++m) {
            const double k = K(static_cast<double>(m) * h);
            accumulate(*grid, acc, m, 0, factor * k * cell);
        }
    } else {
        for (long dx = 0; dx <= m_max; ++dx) {
            for (long dy = (dx == 0 ? 1 : -m_max); dy <= m_max; ++dy) {
                const double r2 = static_cast<double>(dx * dx + dy * dy);
                if (r2 * h * h > cutoff * cutoff * (1.0 + 1e-12)) continue;
                const double k = K(static_cast<double>(dx) * h, static_cast<double>(dy) * h);
                accumulate(*grid, acc, dx, dy, factor * k * cell);
            }
        }
    }
    return finish(std::move(grid), acc, 0.0, TailMode::None);
}

double sphere_area(int n) { return n == 1 ? 2.0 : 2.0 * std::numbers::pi; }

// Navot-type correction weight on each nearest-neighbour second difference.
double singular_correction(const FracParams& p, double h) {
    if (p.n == 1) return -special::zeta(2.0 * p.s - 1.0) * p.c_kernel * std::pow(h, -2.0 * p.s);
    return -special::square_lattice_zeta(2.0 * p.s) * p.c_kernel * std::pow(h, -2.0 * p.s) / 4.0;
}

}  // namespace

KernelSpec make_kernel(KernelFn K, double singularity_order, int dim, std::optional<double> cutoff,
                       bool symmetric) {
    detail::require(static_cast<bool>(K), "kernel function is empty");
    detail::require(dim == 1 || dim == 2, "kernel dimension must be 1 or 2");
    detail::require(singularity_order < dim + 2.0,
                    "kernel singularity order must be below n + 2 for second-difference quadrature");
    if (cutoff) detail::require(*cutoff > 0.0, "kernel cutoff must be positive");
    KernelSpec spec{std::move(K), singularity_order, cutoff, symmetric, dim};

    double scale = 0.0;
    std::vector<std::pair<double, double>> probes;
    for (double r : kProbeDisplacements) {
        if (dim == 1) {
            const double kp = spec(r), km = spec(-r);
            detail::require(std::isfinite(kp) && std::isfinite(km) && kp >= 0.0 && km >= 0.0,
                            "kernel must be finite and nonnegative (probe at |h| = " +
                                std::to_string(r) + ")");
            probes.emplace_back(kp, km);
            scale = std::max({scale, kp, km});
        } else {
            for (double angle : {0.0, 0.7, 1.9}) {
                const double hx = r * std::cos(angle), hy = r * std::sin(angle);
                const double kp = spec(hx, hy), km = spec(-hx, -hy);
                detail::require(std::isfinite(kp) && std::isfinite(km) && kp >= 0.0 && km >= 0.0,
                                "kernel must be finite and nonnegative (probe at |h| = " +
                                    std::to_string(r) + ")");
                probes.emplace_back(kp, km);
                scale = std::max({scale, kp, km});
            }
        }
    }
    if (symmetric) {
        for (const auto& [kp, km] : probes)
            detail::require(std::abs(kp - km) <= 1e-12 * scale, "kernel flagged symmetric but K(h) != K(-h)");
    }
    return spec;
}

KernelSpec frac_kernel(const FracParams& params) {
    const double c = params.c_kernel;
    const double order = params.n + 2.0 * params.s;
    KernelFn K = [c, order](std::span<const double> h) {
        double r2 = 0.0;
        for (double v : h) r2 += v * v;
        return c * std::pow(r2, -0.5 * order);
    };
    return make_kernel(std::move(K), order, params.n);
}

KernelSpec lattice_kernel(std::vector<double> table, double spacing) {
    detail::require(spacing > 0.0, "lattice kernel spacing must be positive");
    for (double v : table) detail::require(std::isfinite(v) && v >= 0.0, "lattice kernel entries must be >= 0");
    const double reach = spacing * static_cast<double>(table.size());
    KernelFn K = [t = std::move(table), spacing](std::span<const double> h) {
        const double m = std::abs(h[0]) / spacing;
        const double r = std::round(m);
        if (std::abs(m - r) > 1e-9 || r < 1.0 || r >= static_cast<double>(t.size())) return 0.0;
        return t[static_cast<std::size_t>(r)];
    };
    return make_kernel(std::move(K), 0.0, 1, reach);
}

double second_difference(const GridFunction& u, std::size_t node, double displacement) {
    const Grid& g = u.grid();
    detail::require(g.dim() == 1, "scalar displacement needs a 1D grid");
    detail::require(node < u.size(), "node index out of range");
    return raw_second_difference(g, u.values(), node, lattice_steps(displacement, g.spacing()), 0);
}

double second_difference(const GridFunction& u, std::size_t node, std::array<double, 2> displacement) {
    const Grid& g = u.grid();
    detail::require(g.dim() == 2, "vector displacement needs a 2D grid");
    detail::require(node < u.size(), "node index out of range");
    return raw_second_difference(g, u.values(), node, lattice_steps(displacement[0], g.spacing()),
                                 lattice_steps(displacement[1], g.spacing()));
}

LatticeOperator::LatticeOperator(GridPtr grid, std::vector<Offset> offsets, std::vector<double> weights,
                                 double tail_coefficient, TailMode tail_mode)
    : grid_(std::move(grid)),
      offsets_(std::move(offsets)),
      weights_(std::move(weights)),
      tail_(tail_coefficient),
      tail_mode_(tail_mode) {
    detail::require(offsets_.size() == weights_.size(), "offset and weight counts differ");
    for (double w : weights_) detail::require(std::isfinite(w) && w >= 0.0, "lattice weights must be >= 0");
    detail::require(std::isfinite(tail_) && tail_ >= 0.0, "tail coefficient must be >= 0");
    if (tail_mode_ == TailMode::None) tail_ = 0.0;
}

std::vector<double> LatticeOperator::tail_part(std::span<const double> u) const {
    std::vector<double> out(u.size(), 0.0);
    if (tail_mode_ == TailMode::None || tail_ == 0.0) return out;
    double mean = 0.0;
    if (tail_mode_ == TailMode::PeriodicMean) {
        for (double v : u) mean += v;
        mean /= static_cast<double>(u.size());
    }
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = tail_ * (u[i] - mean);
    return out;
}

std::vector<double> LatticeOperator::apply(std::span<const double> u) const {
    detail::require(u.size() == grid_->size(), "operator input has the wrong length");
    std::vector<double> out = tail_part(u);
    const Grid& g = *grid_;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < offsets_.size(); ++k)
            acc += weights_[k] * raw_second_difference(g, u, i, offsets_[k].dx, offsets_[k].dy);
        out[i] += acc;
    }
    return out;
}

GridFunction LatticeOperator::apply(const GridFunction& u) const {
    return GridFunction(grid_, apply(u.values()));
}

LatticeOperator nondiv_operator(GridPtr grid, const KernelSpec& K) {
    return kernel_operator(std::move(grid), K, 2.0);
}

LatticeOperator translation_invariant_operator(GridPtr grid, const KernelSpec& K) {
    return kernel_operator(std::move(grid), K, 1.0);
}

GridFunction apply_nondiv(const GridFunction& u, const KernelSpec& K) {
    return nondiv_operator(u.grid_ptr(), K).apply(u);
}

GridFunction apply_translation_invariant(const GridFunction& u, const KernelSpec& K) {
    return translation_invariant_operator(u.grid_ptr(), K).apply(u);
}

LatticeOperator frac_pv_operator(GridPtr grid, const FracParams& params, std::optional<double> r_trunc) {
    detail::require(params.n == grid->dim(), "FracParams dimension does not match the grid");
    const double h = grid->spacing();
    const double requested = r_trunc.value_or(default_cutoff(*grid));
    detail::require(requested >= h, "truncation radius must cover at least one lattice step");
    const long m_max = std::max(1L, std::lround(requested / h));
    const double radius = static_cast<double>(m_max) * h;
    const double c = params.c_kernel;
    const double order = params.n + 2.0 * params.s;
    const double cell = grid->cell_volume();

    RawLattice acc;
    if (grid->dim() == 1) {
        for (long m = 1; m <= m_max; ++m) {
            const double end = (m == m_max) ? 0.5 : 1.0;
            accumulate(*grid, acc, m, 0, end * c * cell * std::pow(static_cast<double>(m) * h, -order));
        }
        accumulate(*grid, acc, 1, 0, singular_correction(params, h));
    } else {
        for (long dx = 0; dx <= m_max; ++dx) {
            for (long dy = (dx == 0 ? 1 : -m_max); dy <= m_max; ++dy) {
                const long r2 = dx * dx + dy * dy;
                if (r2 > m_max * m_max) continue;
                const double r = std::sqrt(static_cast<double>(r2)) * h;
                accumulate(*grid, acc, dx, dy, c * cell * std::pow(r, -order));
            }
        }
        const double corr = singular_correction(params, h);
        accumulate(*grid, acc, 1, 0, corr);
        accumulate(*grid, acc, 0, 1, corr);
    }
    const double tail = c * sphere_area(params.n) * std::pow(radius, -2.0 * params.s) / (2.0 * params.s);
    const TailMode mode = grid->periodic() ? TailMode::PeriodicMean : TailMode::ZeroExterior;
    return finish(std::move(grid), acc, tail, mode);
}

GridFunction apply_frac_pv(const GridFunction& u, const FracParams& params, PvDiagnostics* diagnostics) {
    const LatticeOperator op = frac_pv_operator(u.grid_ptr(), params);
    GridFunction out = op.apply(u);
    if (diagnostics) {
        const Grid& g = u.grid();
        const double radius =
            static_cast<double>(std::max(1L, std::lround(default_cutoff(g) / g.spacing()))) * g.spacing();
        // Analytic far-field correction only; folded exterior lattice terms are exact.
        const double coef =
            params.c_kernel * sphere_area(params.n) * std::pow(radius, -2.0 * params.s) / (2.0 * params.s);
        double mean = 0.0;
        if (g.periodic()) {
            for (double v : u.values()) mean += v;
            mean /= static_cast<double>(u.size());
        }
        double tmax = 0.0;
        for (double v : u.values()) tmax = std::max(tmax, coef * std::abs(v - mean));
        const double rmax = out.max_abs();
        diagnostics->tail_fraction = rmax > 0.0 ? tmax / rmax : 0.0;
        diagnostics->tail_warning = diagnostics->tail_fraction > 0.1;
        diagnostics->r_trunc = radius;
    }
    return out;
}

namespace {

// int_{alpha_lo}^{alpha_hi} cos^{2s}(phi) dphi for |alpha| < pi/2, via the
// incomplete beta function.
double cos_power_integral(double s, double alpha_lo, double alpha_hi) {
    const double full = boost::math::beta(0.5, s + 0.5);
    auto signed_part = [&](double alpha) {
        const double sn = std::sin(alpha);
        const double v = 0.5 * full * boost::math::ibeta(0.5, s + 0.5, sn * sn);
        return alpha < 0.0 ? -v : v;
    };
    return signed_part(alpha_hi) - signed_part(alpha_lo);
}

// int_{R^2 \ box} |x - z|^{-2-2s} dz for x inside the square (lo, hi)^2.
double box_exterior_integral(double s, double lo, double hi, double x, double y) {
    const double d_right = hi - x, d_left = x - lo, d_top = hi - y, d_bottom = y - lo;
    auto side = [s](double d, double left_extent, double right_extent) {
        return std::pow(d, -2.0 * s) *
               cos_power_integral(s, -std::atan(left_extent / d), std::atan(right_extent / d));
    };
    const double angular = side(d_right, d_bottom, d_top) + side(d_top, d_right, d_left) +
                           side(d_left, d_top, d_bottom) + side(d_bottom, d_left, d_right);
    return angular / (2.0 * s);
}

}  // namespace

RestrictedOperator::RestrictedOperator(GridPtr grid, const FracParams& params)
    : grid_(std::move(grid)), params_(params) {
    detail::require(!grid_->periodic(), "the restricted fractional Laplacian needs a Dirichlet grid");
    detail::require(params.n == grid_->dim(), "FracParams dimension does not match the grid");
    const long n = static_cast<long>(grid_->per_axis());
    const double h = grid_->spacing();
    const double c = params.c_kernel;
    const double s = params.s;
    const double order = params.n + 2.0 * s;
    const double cell = grid_->cell_volume();
    const double corr = singular_correction(params, h);
    const Extent ext = grid_->extent();

    pair_weights_.assign(static_cast<std::size_t>(n * n), 0.0);
    for (long dy = 0; dy < (grid_->dim() == 1 ? 1 : n); ++dy) {
        for (long dx = 0; dx < n; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const double r = std::sqrt(static_cast<double>(dx * dx + dy * dy)) * h;
            double w = c * cell * std::pow(r, -order);
            if (dx * dx + dy * dy == 1) w += corr;
            pair_weights_[static_cast<std::size_t>(dx + n * dy)] = w;
        }
    }

    shift_.assign(grid_->size(), 0.0);
    if (grid_->dim() == 1) {
        for (long i = 0; i < n; ++i) {
            const double x = grid_->axis()[static_cast<std::size_t>(i)];
            const double dl = x - ext.lo, dr = ext.hi - x;
            double v = c * 0.5 * h * (std::pow(dl, -order) + std::pow(dr, -order));
            v += c * (std::pow(dl, -2.0 * s) + std::pow(dr, -2.0 * s)) / (2.0 * s);
            if (i == 0) v += corr;
            if (i == n - 1) v += corr;
            shift_[static_cast<std::size_t>(i)] = v;
        }
        return;
    }
    // Boundary lattice nodes of the closed square with trapezoid weights.
    std::vector<std::array<double, 3>> boundary;  // x, y, weight
    for (long j = 0; j <= n + 1; ++j) {
        for (long i = 0; i <= n + 1; ++i) {
            const bool on_x = (i == 0 || i == n + 1), on_y = (j == 0 || j == n + 1);
            if (!on_x && !on_y) continue;
            const double w = (on_x && on_y) ? 0.25 : 0.5;
            boundary.push_back({ext.lo + static_cast<double>(i) * h, ext.lo + static_cast<double>(j) * h, w});
        }
    }
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < n; ++i) {
            const auto flat = static_cast<std::size_t>(i + n * j);
            const auto p = grid_->point(flat);
            double v = 0.0;
            for (const auto& b : boundary) {
                const double dx = p[0] - b[0], dy = p[1] - b[1];
                v += b[2] * cell * std::pow(dx * dx + dy * dy, -0.5 * order);
            }
            v = c * v + c * box_exterior_integral(s, ext.lo, ext.hi, p[0], p[1]);
            const int missing = (i == 0) + (i == n - 1) + (j == 0) + (j == n - 1);
            v += corr * missing;
            shift_[flat] = v;
        }
    }
}

double RestrictedOperator::pair_weight(long dx, long dy) const {
    const long n = static_cast<long>(grid_->per_axis());
    return pair_weights_[static_cast<std::size_t>(std::abs(dx) + n * std::abs(dy))];
}

std::vector<double> RestrictedOperator::apply(std::span<const double> u) const {
    detail::require(u.size() == grid_->size(), "operator input has the wrong length");
    const long n = static_cast<long>(grid_->per_axis());
    std::vector<double> out(u.size());
    if (grid_->dim() == 1) {
        for (long i = 0; i < n; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            double acc = shift_[static_cast<std::size_t>(i)] * ui;
            for (long j = 0; j < n; ++j) {
                if (j == i) continue;
                acc += pair_weights_[static_cast<std::size_t>(std::abs(i - j))] *
                       (ui - u[static_cast<std::size_t>(j)]);
            }
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    }
    const long total = n * n;
    for (long a = 0; a < total; ++a) {
        const long ia = a % n, ja = a / n;
        const double ua = u[static_cast<std::size_t>(a)];
        double acc = shift_[static_cast<std::size_t>(a)] * ua;
        for (long b = 0; b < total; ++b) {
            if (b == a) continue;
            acc += pair_weight(ia - b % n, ja - b / n) * (ua - u[static_cast<std::size_t>(b)]);
        }
        out[static_cast<std::size_t>(a)] = acc;
    }
    return out;
}

GridFunction RestrictedOperator::apply(const GridFunction& u) const {
    return GridFunction(grid_, apply(u.values()));
}

GridFunction apply_restricted(const GridFunction& u, const FracParams& params) {
    return RestrictedOperator(u.grid_ptr(), params).apply(u);
}

}  // namespace fracineq::nonlocal
