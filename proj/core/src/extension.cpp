#include "fracineq/extension.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracineq/error.hpp"
#include "fracineq/special.hpp"

namespace fracineq::extension {

std::vector<double> graded_y_mesh(double y_max, std::size_t ny) {
    detail::require(std::isfinite(y_max) && y_max > 0.0, "y_max must be positive");
    detail::require(ny >= 16, "the y-mesh needs at least 16 cells, got " + std::to_string(ny));
    const double first = y_max / (20.0 * static_cast<double>(ny));
    const double target = 20.0 * static_cast<double>(ny);  // sum_{k<ny} r^k
    auto total = [ny](double r) {
        double acc = 0.0, p = 1.0;
        for (std::size_t k = 0; k < ny; ++k) {
            acc += p;
            p *= r;
        }
        return acc;
    };
    double lo = 1.0, hi = 2.0;
    while (total(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total(mid) < target ? lo : hi) = mid;
    }
    const double ratio = 0.5 * (lo + hi);
    std::vector<double> y(ny + 1, 0.0);
    double step = first;
    for (std::size_t k = 1; k <= ny; ++k) {
        y[k] = y[k - 1] + step;
        step *= ratio;
    }
    // Rescale the rounding drift so the last node is exactly y_max.
    const double fix = y_max / y[ny];
    for (std::size_t k = 1; k < ny; ++k) y[k] *= fix;
    y[ny] = y_max;
    return y;
}

ExtensionField::ExtensionField(GridPtr base, std::vector<double> y_nodes, std::vector<double> values, double a)
    : base_(std::move(base)), y_(std::move(y_nodes)), values_(std::move(values)), a_(a) {
    detail::require(base_ != nullptr && base_->dim() == 1, "extension fields live over a 1D base grid");
    detail::require(y_.size() >= 4 && y_.front() == 0.0, "y-nodes must start at 0 with at least 4 levels");
    for (std::size_t k = 1; k < y_.size(); ++k) detail::require(y_[k] > y_[k - 1], "y-nodes must increase");
    detail::require(values_.size() == y_.size() * base_->size(), "extension values have the wrong size");
    for (double v : values_) detail::require(std::isfinite(v), "extension values must be finite");
}

namespace {

struct YWeights {
    std::vector<double> conductance;  // per face, size levels - 1
    std::vector<double> mass;         // per level
};

YWeights y_weights(std::span<const double> y, double a) {
    const std::size_t levels = y.size();
    YWeights w;
    w.conductance.resize(levels - 1);
    for (std::size_t k = 0; k + 1 < levels; ++k)
        w.conductance[k] = (1.0 - a) / (std::pow(y[k + 1], 1.0 - a) - std::pow(y[k], 1.0 - a));
    w.mass.resize(levels);
    auto prim = [a](double t) { return std::pow(t, 1.0 + a) / (1.0 + a); };
    for (std::size_t k = 0; k < levels; ++k) {
        const double lower = k == 0 ? 0.0 : 0.5 * (y[k - 1] + y[k]);
        const double upper = k + 1 == levels ? y[k] : 0.5 * (y[k] + y[k + 1]);
        w.mass[k] = prim(upper) - prim(lower);
    }
    return w;
}

// Orthonormal eigenvectors of the 3-point x-Laplacian on the base grid and
// their eigenvalues mu (of minus the discrete Laplacian).
struct XModes {
    Eigen::MatrixXd q;
    std::vector<double> mu;
    long constant_mode = -1;
};

XModes x_modes(const Grid& g) {
    const std::size_t n = g.per_axis();
    const double h = g.spacing();
    const double pi = std::numbers::pi;
    const double nd = static_cast<double>(n);
    XModes m;
    m.q.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m.mu.resize(n);
    auto eig = [h](double half_angle) {
        const double sn = std::sin(half_angle);
        return 4.0 / (h * h) * sn * sn;
    };
    if (g.periodic()) {
        Eigen::Index col = 0;
        m.q.col(col).setConstant(1.0 / std::sqrt(nd));
        m.mu[0] = 0.0;
        m.constant_mode = 0;
        ++col;
        for (std::size_t k = 1; 2 * k < n; ++k) {
            const double norm = std::sqrt(2.0 / nd);
            for (std::size_t i = 0; i < n; ++i) {
                const double phase = 2.0 * pi * static_cast<double>((k * i) % n) / nd;
                m.q(static_cast<Eigen::Index>(i), col) = norm * std::cos(phase);
                m.q(static_cast<Eigen::Index>(i), col + 1) = norm * std::sin(phase);
            }
            m.mu[static_cast<std::size_t>(col)] = m.mu[static_cast<std::size_t>(col) + 1] =
                eig(pi * static_cast<double>(k) / nd);
            col += 2;
        }
        if (n % 2 == 0) {
            for (std::size_t i = 0; i < n; ++i)
                m.q(static_cast<Eigen::Index>(i), col) = (i % 2 == 0 ? 1.0 : -1.0) / std::sqrt(nd);
            m.mu[static_cast<std::size_t>(col)] = 4.0 / (h * h);
        }
        return m;
    }
    const double norm = std::sqrt(2.0 / (nd + 1.0));
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = pi * static_cast<double>((j * (i + 1)) % (2 * (n + 1))) / (nd + 1.0);
            m.q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = norm * std::sin(phase);
        }
        m.mu[j - 1] = eig(pi * static_cast<double>(j) / (2.0 * (nd + 1.0)));
    }
    return m;
}

double x_second_difference(const Grid& g, std::span<const double> row, std::size_t i) {
    const std::size_t n = row.size();
    double left, right;
    if (g.periodic()) {
        left = row[(i + n - 1) % n];
        right = row[(i + 1) % n];
    } else {
        left = i == 0 ? 0.0 : row[i - 1];
        right = i + 1 == n ? 0.0 : row[i + 1];
    }
    return left + right - 2.0 * row[i];
}

}  // namespace

double st_profile_closed_form(double lambda, double s, double y) {
    detail::require(lambda >= 0.0 && y >= 0.0, "closed-form profile needs lambda >= 0 and y >= 0");
    const double z = std::sqrt(lambda) * y;
    if (z == 0.0) return 1.0;
    if (z > 700.0) return 0.0;
    return 2.0 / std::tgamma(s) * std::pow(0.5 * z, s) * special::bessel_k(s, z);
}

ExtensionField solve_cs_extension(const GridFunction& v, const FracParams& params, double y_max, std::size_t ny) {
    const Grid& g = v.grid();
    detail::require(g.dim() == 1, "the extension solver needs a 1D base grid (strip or cylinder)");
    const std::vector<double> y = graded_y_mesh(y_max, ny);
    const std::size_t levels = y.size();
    const std::size_t n = g.per_axis();
    const double a = params.a;
    const YWeights w = y_weights(y, a);
    const XModes xm = x_modes(g);

    const Eigen::Map<const Eigen::VectorXd> trace(v.values().data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd vhat = xm.q.transpose() * trace;

    double mean = 0.0;
    if (g.periodic()) {
        for (double t : v.values()) mean += t;
        mean /= static_cast<double>(n);
    }

    Eigen::MatrixXd coeff(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(levels));
    std::vector<double> sub(levels), diag(levels), sup(levels), rhs(levels), col(levels);
    for (std::size_t m = 0; m < n; ++m) {
        const double top = static_cast<long>(m) == xm.constant_mode ? vhat[static_cast<Eigen::Index>(m)] : 0.0;
        const double bottom = vhat[static_cast<Eigen::Index>(m)];
        // Thomas algorithm on the interior levels 1..levels-2.
        const std::size_t first = 1, last = levels - 2;
        for (std::size_t k = first; k <= last; ++k) {
            sub[k] = w.conductance[k - 1];
            sup[k] = w.conductance[k];
            diag[k] = -(w.conductance[k - 1] + w.conductance[k] + w.mass[k] * xm.mu[m]);
            rhs[k] = 0.0;
        }
        rhs[first] -= sub[first] * bottom;
        rhs[last] -= sup[last] * top;
        for (std::size_t k = first + 1; k <= last; ++k) {
            const double f = sub[k] / diag[k - 1];
            diag[k] -= f * sup[k - 1];
            rhs[k] -= f * rhs[k - 1];
        }
        col[last] = rhs[last] / diag[last];
        for (std::size_t k = last; k-- > first;) col[k] = (rhs[k] - sup[k] * col[k + 1]) / diag[k];
        col[0] = bottom;
        col[levels - 1] = top;
        for (std::size_t k = 0; k < levels; ++k)
            coeff(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = col[k];
    }
    const Eigen::MatrixXd field = xm.q * coeff;  // column k is level k
    std::vector<double> values(field.data(), field.data() + field.size());
    std::copy(v.values().begin(), v.values().end(), values.begin());
    std::fill(values.end() - static_cast<long>(n), values.end(), mean);

    ExtensionField out(v.grid_ptr(), y, std::move(values), a);

    const auto res = extension_residual(out, out.values());
    double rmax = 0.0;
    for (double r : res) rmax = std::max(rmax, std::abs(r));
    double umax = 0.0;
    for (double u : out.values()) umax = std::max(umax, std::abs(u));
    double coef_max = 0.0;
    const double h = g.spacing();
    for (std::size_t k = 1; k + 1 < levels; ++k)
        coef_max = std::max(coef_max, w.conductance[k - 1] + w.conductance[k] + 4.0 * w.mass[k] / (h * h));
    out.residual = umax > 0.0 ? rmax / (coef_max * umax) : 0.0;
    if (out.residual > 1e-10)
        throw NumericalError("extension solve did not converge: relative residual " + std::to_string(out.residual));

    double mu_min = 0.0;
    for (double mu : xm.mu)
        if (mu > 0.0 && (mu_min == 0.0 || mu < mu_min)) mu_min = mu;
    out.decay_ratio = st_profile_closed_form(mu_min, params.s, y_max);
    out.decay_warning = out.decay_ratio > 1e-6;
    if (out.decay_ratio > 1e-2)
        throw NumericalError("y_max = " + std::to_string(y_max) + " is too small: the slowest mode keeps " +
                             std::to_string(out.decay_ratio) + " of its amplitude at the top boundary");
    return out;
}

std::vector<double> extension_residual(const ExtensionField& field, std::span<const double> values) {
    const Grid& g = field.base_grid();
    const std::size_t n = g.size(), levels = field.levels();
    detail::require(values.size() == n * levels, "value array has the wrong size");
    const YWeights w = y_weights(field.y_nodes(), field.a());
    const double h2 = g.spacing() * g.spacing();
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t k = 1; k + 1 < levels; ++k) {
        const auto row = values.subspan(k * n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = values[k * n + i];
            out[k * n + i] = w.conductance[k] * (values[(k + 1) * n + i] - u) -
                             w.conductance[k - 1] * (u - values[(k - 1) * n + i]) +
                             w.mass[k] * x_second_difference(g, row, i) / h2;
        }
    }
    return out;
}

double extension_energy(const ExtensionField& field, std::span<const double> values) {
    const Grid& g = field.base_grid();
    const std::size_t n = g.size(), levels = field.levels();
    detail::require(values.size() == n * levels, "value array has the wrong size");
    const YWeights w = y_weights(field.y_nodes(), field.a());
    const double h = g.spacing();
    double e = 0.0;
    for (std::size_t k = 0; k + 1 < levels; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const double d = values[(k + 1) * n + i] - values[k * n + i];
            e += h * w.conductance[k] * d * d;
        }
    for (std::size_t k = 0; k < levels; ++k) {
        const auto row = values.subspan(k * n, n);
        double acc = 0.0;
        if (g.periodic()) {
            for (std::size_t i = 0; i < n; ++i) {
                const double d = row[(i + 1) % n] - row[i];
                acc += d * d;
            }
        } else {
            acc += row[0] * row[0] + row[n - 1] * row[n - 1];
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double d = row[i + 1] - row[i];
                acc += d * d;
            }
        }
        e += w.mass[k] / h * acc;
    }
    return e;
}

double extension_energy(const ExtensionField& field) { return extension_energy(field, field.values()); }

DtnTrace dtn_from_profiles(GridPtr base, std::span<const double> y, const std::vector<std::vector<double>>& profiles,
                           const FracParams& params) {
    detail::require(y.size() >= 4 && profiles.size() >= 4, "the trace needs at least four y-levels");
    detail::require(y[0] == 0.0, "y-levels must start at 0");
    const std::size_t n = profiles[0].size();
    for (const auto& p : profiles) detail::require(p.size() == n, "profile rows differ in length");
    const double a = params.a;
    const double s = params.s;

    auto face_average = [&](double p, std::size_t k) {
        const double e = p + 1.0 - a;
        return (1.0 - a) / e * (std::pow(y[k + 1], e) - std::pow(y[k], e)) /
               (std::pow(y[k + 1], 1.0 - a) - std::pow(y[k], 1.0 - a));
    };
    const double p1 = 2.0 - 2.0 * s, p2 = 2.0;
    const bool two_terms = std::abs(p2 - p1) >= 0.25;

    // Extrapolation weights: value at y = 0 as a combination of face fluxes.
    std::array<double, 2> w1{};
    {
        const double b0 = face_average(p1, 0), b1 = face_average(p1, 1);
        w1 = {b1 / (b1 - b0), -b0 / (b1 - b0)};
    }
    std::array<double, 3> w2{};
    if (two_terms) {
        Eigen::Matrix3d m;
        for (int k = 0; k < 3; ++k) {
            m(k, 0) = 1.0;
            m(k, 1) = face_average(p1, static_cast<std::size_t>(k));
            m(k, 2) = face_average(p2, static_cast<std::size_t>(k));
        }
        // Row e_0 of the inverse gives the intercept weights.
        const Eigen::Matrix3d inv = m.inverse();
        for (int k = 0; k < 3; ++k) w2[static_cast<std::size_t>(k)] = inv(0, k);
    }

    DtnTrace out;
    out.base = std::move(base);
    out.values.resize(n);
    out.extrapolation_order = two_terms ? 2 : 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::array<double, 3> q{};
        for (std::size_t k = 0; k < 3; ++k) {
            const double g = (1.0 - a) / (std::pow(y[k + 1], 1.0 - a) - std::pow(y[k], 1.0 - a));
            q[k] = -g * (profiles[k + 1][i] - profiles[k][i]);
        }
        const double e0 = q[0];
        const double e1 = w1[0] * q[0] + w1[1] * q[1];
        if (!two_terms) {
            out.values[i] = e1;
            continue;
        }
        const double e2 = w2[0] * q[0] + w2[1] * q[1] + w2[2] * q[2];
        const double scale = std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2])});
        if (std::abs(e2 - e1) > std::abs(e1 - e0) + 1e-12 * scale) out.non_monotone = true;
        out.values[i] = e2;
    }
    return out;
}

DtnTrace dtn_trace(const ExtensionField& field, const FracParams& params) {
    detail::require(std::abs(field.a() - params.a) < 1e-14, "field weight exponent does not match params");
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto r = field.row(k);
        rows.emplace_back(r.begin(), r.end());
    }
    return dtn_from_profiles(field.base_ptr(), field.y_nodes().subspan(0, 4), rows, params);
}

namespace {

double st_mode_multiplier(double lambda, double s, double y, const QuadratureRule& rule) {
    if (y == 0.0 || lambda == 0.0) return 1.0;
    const double t_min = rule.nodes.front(), t_max = rule.nodes.back();
    if (lambda * t_min > 0.01 || lambda * t_max < 100.0)
        throw NumericalError("log-spaced rule [" + std::to_string(t_min) + ", " + std::to_string(t_max) +
                             "] is inadequate for eigenvalue " + std::to_string(lambda));
    const double c = 0.25 * y * y;
    const double dtau = log_step(rule);
    double trap = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double t = rule.nodes[i];
        trap += rule.weights[i] * std::exp(-lambda * t - c / t) * std::pow(t, s - 1.0);
    }
    // Endpoint derivatives of f(tau) = exp(psi), psi = -lambda e^tau - c e^-tau + s tau.
    auto derivs = [&](double t) {
        const double f = std::exp(-lambda * t - c / t + s * std::log(t));
        const double p1 = -lambda * t + c / t + s;
        const double p2 = -lambda * t - c / t;
        const double p3 = -lambda * t + c / t;
        return std::array<double, 2>{p1 * f, (p3 + 3.0 * p1 * p2 + p1 * p1 * p1) * f};
    };
    const auto left = derivs(t_min), right = derivs(t_max);
    const double dt2 = dtau * dtau;
    double integral = trap - dt2 / 12.0 * (right[0] - left[0]) + dt2 * dt2 / 720.0 * (right[1] - left[1]);

    // int_0^{t_min} e^{-lambda t - c/t} t^{s-1} dt = sum_m (-lambda)^m / m! t_min^{s+m} E_{s+m+1}(c / t_min).
    const double z = c / t_min;
    double term = 1.0;
    for (int m = 0; m <= 60; ++m) {
        if (m > 0) term *= -lambda * t_min / m;
        const double add = term * std::pow(t_min, s) * special::expint_general(s + m + 1.0, z);
        integral += add;
        if (std::abs(add) < 1e-18 * std::abs(integral)) break;
    }
    return std::pow(lambda, s) * integral / std::tgamma(s);
}

}  // namespace

spectral::SpectralCoefficients st_extension(const spectral::SpectralCoefficients& u, double s, double y,
                                            const QuadratureRule& rule) {
    detail::require(s > 0.0 && s < 1.0, "st_extension needs 0 < s < 1");
    detail::require(std::isfinite(y) && y >= 0.0, "st_extension needs y >= 0");
    detail::require(u.basis != nullptr, "coefficients carry no basis");
    detail::require(rule.kind == QuadratureKind::LogSpaced && rule.size() >= 3, "st_extension needs a log-spaced rule");
    spectral::SpectralCoefficients out = u;
    for (std::size_t j = 0; j < out.coeffs.size(); ++j) {
        if (out.coeffs[j] == 0.0) continue;
        out.coeffs[j] *= st_mode_multiplier(u.basis->eigenvalue(j), s, y, rule);
    }
    return out;
}

double realization_constant(const FracParams& params) { return realization_constant_closed_form(params.s); }

double st_constant(const FracParams& params) { return st_constant_closed_form(params.s); }

Calibration calibrate_realization_constant(const FracParams& params, int k, std::size_t n, std::size_t ny,
                                           double y_max) {
    detail::require(k >= 1 && 2 * static_cast<std::size_t>(k) < n, "calibration mode must satisfy 1 <= k < N/2");
    const auto grid = make_grid(GridKind::Periodic, {0.0, 2.0 * std::numbers::pi}, n);
    const double kd = static_cast<double>(k);
    const auto v = sample([kd](double x) { return std::sin(kd * x); }, grid);
    const auto field = solve_cs_extension(v, params, y_max, ny);
    const auto trace = dtn_trace(field, params);
    double nv = 0.0, nt = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        nv += v[i] * v[i];
        nt += trace.values[i] * trace.values[i];
    }
    Calibration c;
    c.closed_form = realization_constant(params);
    c.calibrated = std::pow(kd, 2.0 * params.s) * std::sqrt(nv / nt);
    c.ratio = c.calibrated / c.closed_form;
    return c;
}

Calibration calibrate_st_constant(const FracParams& params, std::size_t ny, double y_max) {
    const auto basis = spectral::hermite_basis(1);
    spectral::SpectralCoefficients h1{basis, {0.0, 1.0}};
    const QuadratureRule rule = log_spaced_rule(1e-3, 1e3, 320);
    const std::vector<double> y = graded_y_mesh(y_max, ny);
    std::vector<std::vector<double>> profiles;
    for (std::size_t k = 0; k < 4; ++k) profiles.push_back(st_extension(h1, params.s, y[k], rule).coeffs);
    const DtnTrace trace = dtn_from_profiles(nullptr, std::span<const double>(y).subspan(0, 4), profiles, params);
    Calibration c;
    c.closed_form = st_constant(params);
    // Mode H_1 has eigenvalue 1, so its OU multiplier is 1.
    c.calibrated = std::abs(trace.values[1]);
    c.ratio = c.calibrated / std::abs(c.closed_form);
    return c;
}

}  // namespace fracineq::extension
