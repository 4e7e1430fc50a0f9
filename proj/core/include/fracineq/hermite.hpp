#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracineq/quadrature.hpp"

namespace fracineq::spectral {

// Probabilists' Hermite polynomial He_j(x).
double hermite_he(std::size_t j, double x);

// Orthonormal He_j / sqrt(j!) and its first two derivatives at x.
struct HermiteValue {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};
HermiteValue hermite_orthonormal(std::size_t j, double x);

// -Delta_gamma p(x) = -(p''(x) - x p'(x)) for the orthonormal p_j.
double ou_apply_orthonormal(std::size_t j, double x);

using CylindricalFn = std::function<double(std::span<const double>)>;

/**
 * Canonical cylindrical approximation E_k u(x_1..x_k) =
 * int u(x_1..x_k, y) dgamma_{m-k}(y), evaluated with the tensor product of
 * `rule` over the m - k trailing coordinates. When the polynomial degree of
 * u in the trailing coordinates is known and exceeds 2 |rule| - 1, the
 * projection is rejected because the rule would not be exact.
 * Requires k < m <= 4.
 */
CylindricalFn cylindrical_projection(CylindricalFn u, std::size_t m, std::size_t k, const QuadratureRule& rule,
                                     std::optional<std::size_t> degree = std::nullopt);

}  // namespace fracineq::spectral
