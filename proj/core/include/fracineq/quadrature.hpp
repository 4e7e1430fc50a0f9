#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace fracineq {

enum class QuadratureKind { UniformTrapezoid, LogSpaced, GaussHermite };

std::string_view to_string(QuadratureKind kind);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadratureKind kind = QuadratureKind::UniformTrapezoid;

    std::size_t size() const { return nodes.size(); }
    double apply(const std::function<double(double)>& f) const;
};

/**
 * m-point Gauss-Hermite rule for the standard Gaussian (probabilists'
 * normalization, weights sum to one). Exact for polynomials of degree up to
 * 2m - 1. Nodes come from the Jacobi matrix and are then Newton-polished on
 * the orthonormal recurrence; weights are Christoffel numbers so that tiny
 * tail weights keep full relative precision. 1 <= m <= 64.
 */
QuadratureRule gauss_hermite_rule(std::size_t m);

/**
 * Trapezoid rule in tau = log t on [t_min, t_max] with `count` nodes. The
 * weights already contain the Jacobian t, so sum_i w_i f(t_i) ~ int f dt.
 */
QuadratureRule log_spaced_rule(double t_min, double t_max, std::size_t count);

// Step in log t of a log-spaced rule.
double log_step(const QuadratureRule& rule);

// Orthonormal probabilists' Hermite polynomials p_0..p_degree at x
// (p_j = He_j / sqrt(j!)), by three-term recurrence.
std::vector<double> hermite_orthonormal_values(std::size_t degree, double x);

}  // namespace fracineq
