#include "fracineq/convex.hpp"

#include <algorithm>
#include <cmath>

#include "fracineq/error.hpp"

namespace fracineq::harness {

ConvexTestFunction make_convex(std::string name, std::function<double(double)> phi, std::function<double(double)> d1,
                               std::function<double(double)> d2, double lo, double hi) {
    detail::require(phi && d1 && d2, "convex test function '" + name + "' needs phi, phi' and phi''");
    detail::require(lo < hi, "convexity domain of '" + name + "' is empty");
    const double a = std::max(lo, -50.0), b = std::min(hi, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = a + (b - a) * i / 999.0;
        const double c = d2(t);
        if (!(std::isfinite(c) && c >= 0.0))
            detail::fail("'" + name + "' is not convex: phi''(" + std::to_string(t) + ") = " + std::to_string(c));
    }
    return ConvexTestFunction{std::move(name), std::move(phi), std::move(d1), std::move(d2), lo, hi};
}

ConvexTestFunction phi_eps(double eps) {
    detail::require(eps > 0.0, "phi_eps needs eps > 0");
    return make_convex(
        "phi_eps(" + std::to_string(eps) + ")", [eps](double t) { return std::hypot(t, eps); },
        [eps](double t) { return t / std::hypot(t, eps); },
        [eps](double t) {
            const double r = std::hypot(t, eps);
            return eps * eps / (r * r * r);
        });
}

std::vector<ConvexTestFunction> convex_battery() {
    std::vector<ConvexTestFunction> out;
    out.push_back(make_convex(
        "affine", [](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; }));
    out.push_back(make_convex(
        "square", [](double t) { return t * t; }, [](double t) { return 2.0 * t; }, [](double) { return 2.0; }));
    out.push_back(make_convex(
        "quartic", [](double t) { return t * t * t * t; }, [](double t) { return 4.0 * t * t * t; },
        [](double t) { return 12.0 * t * t; }));
    out.push_back(make_convex(
        "exp", [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
        [](double t) { return std::exp(t); }, -700.0, 700.0));
    out.push_back(make_convex(
        "softplus", [](double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); },
        [](double t) { return 1.0 / (1.0 + std::exp(-t)); },
        [](double t) {
            const double e = std::exp(-std::abs(t));
            return e / ((1.0 + e) * (1.0 + e));
        }));
    ConvexTestFunction eps = phi_eps(0.1);
    eps.name = "phi_eps";
    out.push_back(std::move(eps));
    out.push_back(make_convex(
        "positive_square",
        [](double t) {
            const double p = std::max(t, 0.0);
            return p * p;
        },
        [](double t) { return 2.0 * std::max(t, 0.0); }, [](double t) { return t > 0.0 ? 2.0 : 0.0; }));
    return out;
}

ConvexTestFunction find_convex(const std::string& name) {
    auto all = convex_battery();
    std::string known;
    for (auto& f : all) {
        if (f.name == name) return f;
        known += (known.empty() ? "" : ", ") + f.name;
    }
    detail::fail("unknown convex function '" + name + "' (known: " + known + ")");
}

}  // namespace fracineq::harness
