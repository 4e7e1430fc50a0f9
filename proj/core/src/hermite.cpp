#include "fracineq/hermite.hpp"

#include <cmath>
#include <string>

#include "fracineq/error.hpp"

namespace fracineq::spectral {

double hermite_he(std::size_t j, double x) {
    double prev = 1.0, cur = x;
    if (j == 0) return prev;
    for (std::size_t k = 1; k < j; ++k) {
        const double next = x * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

HermiteValue hermite_orthonormal(std::size_t j, double x) {
    const auto p = hermite_orthonormal_values(j, x);
    const double jd = static_cast<double>(j);
    HermiteValue out;
    out.value = p[j];
    if (j >= 1) out.d1 = std::sqrt(jd) * p[j - 1];
    if (j >= 2) out.d2 = std::sqrt(jd * (jd - 1.0)) * p[j - 2];
    return out;
}

double ou_apply_orthonormal(std::size_t j, double x) {
    const HermiteValue p = hermite_orthonormal(j, x);
    return -(p.d2 - x * p.d1);
}

CylindricalFn cylindrical_projection(CylindricalFn u, std::size_t m, std::size_t k, const QuadratureRule& rule,
                                     std::optional<std::size_t> degree) {
    detail::require(static_cast<bool>(u), "cylindrical projection needs a function");
    detail::require(m >= 1 && m <= 4, "ambient Gaussian dimension must be in [1, 4]");
    detail::require(k < m, "projection must drop at least one coordinate");
    detail::require(rule.kind == QuadratureKind::GaussHermite, "cylindrical projection needs a Gauss-Hermite rule");
    if (degree)
        detail::require(*degree <= 2 * rule.size() - 1,
                        "Gauss-Hermite rule with " + std::to_string(rule.size()) +
                            " nodes is too small for polynomial degree " + std::to_string(*degree));
    const std::size_t drop = m - k;
    return [u = std::move(u), m, k, drop, rule](std::span<const double> x) {
        if (x.size() != k) detail::fail("projected function expects " + std::to_string(k) + " coordinates");
        std::vector<double> point(m, 0.0);
        for (std::size_t i = 0; i < k; ++i) point[i] = x[i];
        std::vector<std::size_t> idx(drop, 0);
        const std::size_t q = rule.size();
        double acc = 0.0;
        while (true) {
            double w = 1.0;
            for (std::size_t d = 0; d < drop; ++d) {
                point[k + d] = rule.nodes[idx[d]];
                w *= rule.weights[idx[d]];
            }
            acc += w * u(point);
            std::size_t d = 0;
            while (d < drop && ++idx[d] == q) idx[d++] = 0;
            if (d == drop) break;
        }
        return acc;
    };
}

}  // namespace fracineq::spectral
