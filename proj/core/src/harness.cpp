#include "fracineq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracineq/error.hpp"
#include "fracineq/extension.hpp"
#include "fracineq/spectral.hpp"

namespace fracineq::harness {

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::ExactKernel: return "exact-kernel";
        case OperatorKind::Spectral: return "spectral";
        case OperatorKind::Extension: return "extension";
    }
    return "unknown";
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<double> cell_measure(const Grid& g) { return std::vector<double>(g.size(), g.cell_volume()); }

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> apply_checked(const OperatorHandle& op, std::span<const double> u) {
    detail::require(static_cast<bool>(op.apply), "operator '" + op.id + "' has no apply function");
    detail::require(u.size() == op.size(), "input length does not match operator '" + op.id + "'");
    auto out = op.apply(u);
    detail::require(out.size() == u.size(), "operator '" + op.id + "' returned the wrong length");
    return out;
}

void require_in_domain(std::span<const double> u, const ConvexTestFunction& phi) {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!phi.contains(u[i]))
            detail::fail("u(" + std::to_string(i) + ") = " + fmt(u[i]) + " leaves the convexity domain of '" +
                         phi.name + "'");
}

std::vector<double> shifted_phi(const OperatorHandle& op, std::span<const double> u, const ConvexTestFunction& phi) {
    std::vector<double> pu(u.size());
    const double base = op.zero_exterior ? phi.phi(0.0) : 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) pu[i] = phi.phi(u[i]) - base;
    return pu;
}

}  // namespace

OperatorHandle kernel_handle(GridPtr grid, const nonlocal::KernelSpec& K, std::string id) {
    auto op = std::make_shared<nonlocal::LatticeOperator>(nonlocal::nondiv_operator(grid, K));
    return {std::move(id), OperatorKind::ExactKernel, !grid->periodic(), cell_measure(*grid),
            [op](std::span<const double> u) { return op->apply(u); }};
}

OperatorHandle frac_pv_handle(GridPtr grid, const FracParams& params) {
    auto op = std::make_shared<nonlocal::LatticeOperator>(nonlocal::frac_pv_operator(grid, params));
    return {"frac-pv", OperatorKind::ExactKernel, !grid->periodic(), cell_measure(*grid),
            [op](std::span<const double> u) { return op->apply(u); }};
}

OperatorHandle restricted_handle(GridPtr grid, const FracParams& params) {
    auto op = std::make_shared<nonlocal::RestrictedOperator>(grid, params);
    return {"restricted", OperatorKind::ExactKernel, true, cell_measure(*grid),
            [op](std::span<const double> u) { return op->apply(u); }};
}

OperatorHandle metric_measure_handle(const nonlocal::MetricMeasureSpace& space, double s, nonlocal::MetricForm form) {
    auto sp = std::make_shared<nonlocal::MetricMeasureSpace>(space);
    const std::vector<double> mu(space.measure().begin(), space.measure().end());
    return {form == nonlocal::MetricForm::LieGroup ? "metric-lie" : "metric-manifold", OperatorKind::ExactKernel,
            false, mu, [sp, s, form](std::span<const double> u) {
                return nonlocal::apply_metric_measure(*sp, u, s, form);
            }};
}

OperatorHandle fourier_frac_handle(GridPtr grid, double s) {
    auto basis = spectral::fourier_basis(grid, grid->per_axis() / 2);
    return {"fourier-frac", OperatorKind::Spectral, false, cell_measure(*grid),
            [basis, s](std::span<const double> u) { return spectral::apply_spectral_frac(u, s, basis); }};
}

OperatorHandle spectral_dirichlet_handle(GridPtr grid, double s) {
    auto basis = spectral::dirichlet_basis(grid, grid->per_axis());
    return {"spectral-dirichlet", OperatorKind::Spectral, true, cell_measure(*grid),
            [basis, s](std::span<const double> u) { return spectral::apply_spectral_frac(u, s, basis); }};
}

OperatorHandle ou_handle(std::size_t J, double s) {
    auto basis = spectral::hermite_basis(J);
    const std::vector<double> mu(basis->weights().begin(), basis->weights().end());
    return {"ou-frac", OperatorKind::Spectral, false, mu,
            [basis, s](std::span<const double> u) { return spectral::apply_spectral_frac(u, s, basis); }};
}

OperatorHandle extension_handle(GridPtr grid, const FracParams& params, double y_max, std::size_t ny) {
    return {"extension", OperatorKind::Extension, !grid->periodic(), cell_measure(*grid),
            [grid, params, y_max, ny](std::span<const double> u) {
                const GridFunction v(grid, std::vector<double>(u.begin(), u.end()));
                const auto field = extension::solve_cs_extension(v, params, y_max, ny);
                auto trace = extension::dtn_trace(field, params);
                for (double& t : trace.values) t *= params.d_real;
                return trace.values;
            }};
}

std::vector<double> cordoba_residual(const OperatorHandle& op, std::span<const double> u,
                                     const ConvexTestFunction& phi) {
    require_in_domain(u, phi);
    const auto au = apply_checked(op, u);
    const auto apu = apply_checked(op, shifted_phi(op, u, phi));
    std::vector<double> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = phi.d1(u[i]) * au[i] - apu[i];
    return r;
}

double cordoba_scale(const OperatorHandle& op, std::span<const double> u, const ConvexTestFunction& phi) {
    require_in_domain(u, phi);
    const auto au = apply_checked(op, u);
    const auto apu = apply_checked(op, shifted_phi(op, u, phi));
    double d1 = 0.0;
    for (double x : u) d1 = std::max(d1, std::abs(phi.d1(x)));
    return d1 * max_abs(au) + max_abs(apu);
}

double default_tolerance(const OperatorHandle& op, std::span<const double> u, const ConvexTestFunction& phi,
                         double tol_scale) {
    switch (op.kind) {
        case OperatorKind::ExactKernel: return 0.0;
        case OperatorKind::Spectral: return 1e-8 * tol_scale * cordoba_scale(op, u, phi);
        case OperatorKind::Extension: return 5e-2 * tol_scale * cordoba_scale(op, u, phi);
    }
    return 0.0;
}

InequalityReport check_cordoba(const OperatorHandle& op, std::span<const double> u, const ConvexTestFunction& phi,
                               double tol) {
    detail::require(std::isfinite(tol) && tol >= 0.0, "tolerance must be >= 0");
    const auto r = cordoba_residual(op, u, phi);
    InequalityReport rep;
    rep.check_name = "cordoba";
    rep.operator_id = op.id;
    rep.tolerance = tol;
    const auto it = std::min_element(r.begin(), r.end());
    rep.min_residual = *it;
    rep.argmin = static_cast<std::size_t>(it - r.begin());
    rep.metadata["phi"] = phi.name;
    rep.metadata["operator_kind"] = std::string(to_string(op.kind));
    rep.metadata["nodes"] = std::to_string(u.size());
    rep.metadata["zero_exterior"] = op.zero_exterior ? "true" : "false";
    rep.finalize();
    return rep;
}

InequalityReport check_kato(const OperatorHandle& op, std::span<const double> u, const KatoOptions& options) {
    const auto& eps = options.eps;
    detail::require(!eps.empty(), "Kato check needs at least one eps");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        detail::require(eps[i] > 0.0, "eps values must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1])) detail::fail("eps sequence must be strictly decreasing");
    }
    std::vector<double> psi = options.psi;
    if (psi.empty()) psi.assign(u.size(), 1.0);
    detail::require(psi.size() == u.size(), "psi has the wrong length");
    for (double p : psi) detail::require(p >= 0.0, "psi must be nonnegative");

    InequalityReport rep;
    rep.check_name = "kato";
    rep.operator_id = op.id;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_node = 0;
    auto pairing_at = [&](double e, bool track) {
        const auto r = cordoba_residual(op, u, phi_eps(e));
        double p = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            p += op.measure[i] * psi[i] * r[i];
            if (track && r[i] < worst) {
                worst = r[i];
                worst_node = i;
            }
        }
        return p;
    };
    std::vector<double> levels(eps.begin(), eps.end());
    std::vector<double> pairing;
    for (double e : eps) {
        pairing.push_back(pairing_at(e, true));
        rep.metadata["pairing_eps_" + fmt(e)] = fmt(pairing.back());
    }
    // The pairing only behaves like a polynomial in eps once eps is far below the
    // nodal values of u, so the sequence is continued geometrically before extrapolating.
    const double ratio = eps.size() > 1 ? eps.back() / eps[eps.size() - 2] : 0.1;
    const double eps_floor = 1e-6 * std::max(max_abs(u), std::numeric_limits<double>::min());
    for (std::size_t extra = 0; extra < 8 && levels.back() > eps_floor; ++extra) {
        levels.push_back(levels.back() * ratio);
        pairing.push_back(pairing_at(levels.back(), false));
    }
    const std::size_t m = std::min<std::size_t>(3, levels.size());
    const std::size_t first = levels.size() - m;
    double extrapolated = 0.0;
    for (std::size_t i = first; i < levels.size(); ++i) {
        double l = 1.0;
        for (std::size_t j = first; j < levels.size(); ++j)
            if (j != i) l *= (0.0 - levels[j]) / (levels[i] - levels[j]);
        extrapolated += l * pairing[i];
    }
    rep.metadata["extrapolation_eps_min"] = fmt(levels.back());
    rep.metadata["pairing_extrapolated"] = fmt(extrapolated);
    rep.metadata["pointwise_min"] = fmt(worst);
    rep.metadata["pointwise_tolerance"] = fmt(options.pointwise_tolerance);
    rep.metadata["pairing_tolerance"] = fmt(options.pairing_tolerance);
    rep.argmin = worst_node;
    rep.tolerance = 0.0;
    rep.min_residual = std::min(worst + options.pointwise_tolerance, extrapolated + options.pairing_tolerance);
    rep.finalize();
    return rep;
}

double conormal_derivative_at(const GridFunction& v, std::size_t x0, const FracParams& params,
                              const HopfOptions& options) {
    detail::require(x0 < v.size(), "x0 is out of range");
    const auto field = extension::solve_cs_extension(v, params, options.y_max, options.ny);
    return extension::dtn_trace(field, params).values[x0];
}

InequalityReport check_hopf(const GridFunction& v, std::size_t x0, const FracParams& params,
                            const HopfOptions& options) {
    detail::require(v.grid().dim() == 1, "Hopf check needs a 1D strip or cylinder");
    detail::require(x0 < v.size(), "x0 is out of range");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < 0.0) detail::fail("Hopf datum is negative at node " + std::to_string(i));
    detail::require(v[x0] == 0.0, "Hopf datum must vanish at x0");
    const double vmax = v.max_abs();
    detail::require(vmax > 0.0, "Hopf datum must not vanish identically");

    const double conormal = conormal_derivative_at(v, x0, params, options);
    const double margin = options.margin_factor * vmax;
    InequalityReport rep;
    rep.check_name = "hopf";
    rep.operator_id = v.grid().periodic() ? "extension-strip" : "extension-cylinder";
    rep.min_residual = -conormal - margin;
    rep.argmin = x0;
    rep.tolerance = 0.0;
    rep.metadata["conormal_derivative"] = fmt(conormal);
    rep.metadata["margin"] = fmt(margin);
    rep.metadata["s"] = fmt(params.s);
    rep.metadata["ny"] = std::to_string(options.ny);
    rep.metadata["y_max"] = fmt(options.y_max);
    rep.finalize();
    return rep;
}

InequalityReport check_identities(const GridFunction& u, const nonlocal::KernelSpec& K, double tol) {
    const Grid& g = u.grid();
    detail::require(g.periodic(), "the identities need a periodic grid");
    detail::require(K.symmetric, "the identities need a symmetric kernel");
    const auto op = nonlocal::translation_invariant_operator(u.grid_ptr(), K);
    const std::size_t n = u.size();
    const double h = g.cell_volume();
    const auto uv = u.values();
    const auto lu = op.apply(uv);

    // Mean zero.
    double sum = 0.0, sum_abs = 0.0;
    for (double x : lu) {
        sum += h * x;
        sum_abs += h * std::abs(x);
    }
    const double mean_res = sum_abs > 0.0 ? std::abs(sum) / sum_abs : 0.0;

    // Product rule with v = u shifted by a third of the period, plus one.
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = uv[(i + n / 3) % n] + 1.0;
    std::vector<double> prod(n);
    for (std::size_t i = 0; i < n; ++i) prod[i] = uv[i] * v[i];
    double prod_err = 0.0, flipped_err = 0.0, prod_scale = 0.0;
    for (const auto& o : op.offsets()) {
        const long k = o.dx;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ip = (i + static_cast<std::size_t>(k)) % n;
            const std::size_t im = (i + n - static_cast<std::size_t>(k) % n) % n;
            const double d_uv = -(prod[ip] + prod[im] - 2.0 * prod[i]);
            const double du = -(uv[ip] + uv[im] - 2.0 * uv[i]);
            const double dv = -(v[ip] + v[im] - 2.0 * v[i]);
            const double cross = (v[ip] - v[i]) * (uv[ip] - uv[i]) + (v[im] - v[i]) * (uv[im] - uv[i]);
            const double main = uv[i] * dv + v[i] * du;
            prod_scale = std::max({prod_scale, std::abs(d_uv), std::abs(uv[i] * dv), std::abs(v[i] * du),
                                   std::abs(cross)});
            prod_err = std::max(prod_err, std::abs(d_uv - (main - cross)));
            flipped_err = std::max(flipped_err, std::abs(d_uv - (main + cross)));
        }
    }
    const double prod_res = prod_scale > 0.0 ? prod_err / prod_scale : 0.0;
    const double flipped_res = prod_scale > 0.0 ? flipped_err / prod_scale : 0.0;

    // Energy: 2 <u, Lu> against the double sum of squared differences.
    double pairing = 0.0;
    for (std::size_t i = 0; i < n; ++i) pairing += h * uv[i] * lu[i];
    double energy = 0.0;
    const auto w = op.weights();
    for (std::size_t k = 0; k < w.size(); ++k) {
        const long off = op.offsets()[k].dx;
        for (std::size_t i = 0; i < n; ++i) {
            const double dp = uv[i] - uv[(i + static_cast<std::size_t>(off)) % n];
            const double dm = uv[i] - uv[(i + n - static_cast<std::size_t>(off) % n) % n];
            energy += h * w[k] * (dp * dp + dm * dm);
        }
    }
    const double e_scale = std::max(std::abs(2.0 * pairing), energy);
    const double energy_res = e_scale > 0.0 ? std::abs(2.0 * pairing - energy) / e_scale : 0.0;
    const double energy_flipped = e_scale > 0.0 ? std::abs(2.0 * pairing + 2.0 * energy) / e_scale : 0.0;

    InequalityReport rep;
    rep.check_name = "identities";
    rep.operator_id = "translation-invariant";
    rep.tolerance = tol;
    rep.min_residual = -std::max({mean_res, prod_res, energy_res});
    rep.metadata["mean_zero_residual"] = fmt(mean_res);
    rep.metadata["product_rule_residual"] = fmt(prod_res);
    rep.metadata["energy_residual"] = fmt(energy_res);
    rep.metadata["product_rule_opposite_sign_residual"] = fmt(flipped_res);
    rep.metadata["energy_opposite_sign_residual"] = fmt(energy_flipped);
    rep.metadata["nodes"] = std::to_string(n);
    rep.finalize();
    return rep;
}

double relative_discrepancy(std::span<const double> a, std::span<const double> b) {
    detail::require(a.size() == b.size(), "discrepancy needs equal lengths");
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    const double scale = std::max(max_abs(a), max_abs(b));
    return scale > 0.0 ? diff / scale : 0.0;
}

namespace {

GridFunction resample_periodic(const GridFunction& u, std::size_t nodes) {
    const Grid& g = u.grid();
    const std::size_t n = g.per_axis();
    const auto basis = spectral::fourier_basis(u.grid_ptr(), n / 2);
    const auto c = spectral::analyze(u, basis);
    const auto fine = make_grid(GridKind::Periodic, g.extent(), nodes);
    const double len = g.extent().length(), lo = g.extent().lo;
    std::vector<double> out(nodes, 0.0);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double x = fine->axis()[i] - lo;
        double acc = c.coeffs[0] / std::sqrt(len);
        std::size_t j = 1;
        for (std::size_t k = 1; k <= n / 2; ++k) {
            const double omega = 2.0 * std::numbers::pi * static_cast<double>(k) / len;
            if (2 * k == n) {
                acc += c.coeffs[j++] * std::cos(omega * x) / std::sqrt(len);
            } else {
                acc += c.coeffs[j++] * std::sqrt(2.0 / len) * std::cos(omega * x);
                acc += c.coeffs[j++] * std::sqrt(2.0 / len) * std::sin(omega * x);
            }
        }
        out[i] = acc;
    }
    return GridFunction(fine, std::move(out));
}

struct RouteSet {
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
};

RouteSet all_routes(const GridFunction& u, const FracParams& params, double y_max, std::size_t ny) {
    const auto grid = u.grid_ptr();
    const auto basis = spectral::fourier_basis(grid, grid->per_axis() / 2);
    RouteSet r;
    r.names = {"fourier", "pv-kernel", "dtn", "semigroup"};
    r.values.push_back(spectral::apply_spectral_frac(u.values(), params.s, basis));
    const auto pv = nonlocal::apply_frac_pv(u, params);
    r.values.emplace_back(pv.values().begin(), pv.values().end());
    r.values.push_back(extension_handle(grid, params, y_max, ny).apply(u.values()));
    r.values.push_back(
        spectral::apply_semigroup_frac(u.values(), params.s, basis, spectral::default_semigroup_rule(*basis)));
    return r;
}

double worst_pair(const RouteSet& r, Metadata* meta, const std::string& prefix) {
    double worst = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        for (std::size_t j = i + 1; j < r.values.size(); ++j) {
            const double d = relative_discrepancy(r.values[i], r.values[j]);
            worst = std::max(worst, d);
            if (meta) (*meta)[prefix + r.names[i] + "_vs_" + r.names[j]] = fmt(d);
        }
    return worst;
}

}  // namespace

InequalityReport cross_validate(const GridFunction& u, const FracParams& params, const CrossOptions& options) {
    const Grid& g = u.grid();
    detail::require(g.periodic() && params.n == 1, "cross validation needs a periodic 1D grid");
    InequalityReport rep;
    rep.check_name = "cross";
    rep.operator_id = "fourier|pv-kernel|dtn|semigroup";
    rep.tolerance = options.tolerance;
    const RouteSet coarse = all_routes(u, params, options.y_max, options.ny);
    const double coarse_worst = worst_pair(coarse, &rep.metadata, "coarse_");
    rep.metadata["coarse_nodes"] = std::to_string(g.per_axis());
    rep.metadata["coarse_ny"] = std::to_string(options.ny);
    rep.metadata["coarse_max"] = fmt(coarse_worst);
    rep.min_residual = -coarse_worst;
    if (options.refine) {
        const GridFunction fine_u = resample_periodic(u, 2 * g.per_axis());
        const RouteSet fine = all_routes(fine_u, params, options.y_max, 2 * options.ny);
        const double fine_worst = worst_pair(fine, &rep.metadata, "fine_");
        rep.metadata["fine_nodes"] = std::to_string(2 * g.per_axis());
        rep.metadata["fine_ny"] = std::to_string(2 * options.ny);
        rep.metadata["fine_max"] = fmt(fine_worst);
        const bool shrinks = fine_worst <= coarse_worst || fine_worst <= 1e-8;
        rep.metadata["refinement_shrinks"] = shrinks ? "true" : "false";
        if (!shrinks) rep.min_residual = -(options.tolerance + (fine_worst - coarse_worst));
    }
    rep.metadata["s"] = fmt(params.s);
    rep.finalize();
    return rep;
}

}  // namespace fracineq::harness
