#include "fracineq/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "fracineq/error.hpp"

namespace fracineq {

std::string_view to_string(QuadratureKind kind) {
    switch (kind) {
        case QuadratureKind::UniformTrapezoid: return "uniform-trapezoid";
        case QuadratureKind::LogSpaced: return "log-spaced";
        case QuadratureKind::GaussHermite: return "gauss-hermite";
    }
    return "unknown";
}

double QuadratureRule::apply(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
}

std::vector<double> hermite_orthonormal_values(std::size_t degree, double x) {
    std::vector<double> p(degree + 1);
    p[0] = 1.0;
    if (degree >= 1) p[1] = x;
    for (std::size_t j = 1; j < degree; ++j) {
        const double jd = static_cast<double>(j);
        p[j + 1] = (x * p[j] - std::sqrt(jd) * p[j - 1]) / std::sqrt(jd + 1.0);
    }
    return p;
}

QuadratureRule gauss_hermite_rule(std::size_t m) {
    detail::require(m >= 1 && m <= 64,
                    "Gauss-Hermite order must be in [1, 64], got " + std::to_string(m));
    QuadratureRule rule;
    rule.kind = QuadratureKind::GaussHermite;
    rule.nodes.resize(m);
    rule.weights.resize(m);

    // Jacobi matrix of He_j: zero diagonal, sqrt(j) off-diagonal.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 1 ? m - 1 : 0));
    for (Eigen::Index j = 0; j < sub.size(); ++j) sub[j] = std::sqrt(static_cast<double>(j + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& guess = solver.eigenvalues();

    const double md = static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        double x = guess[static_cast<Eigen::Index>(i)];
        for (int it = 0; it < 8; ++it) {
            const auto p = hermite_orthonormal_values(m, x);
            const double dp = std::sqrt(md) * p[m - 1];
            if (dp == 0.0) break;
            const double step = p[m] / dp;
            x -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        rule.nodes[i] = x;
    }
    // Enforce exact symmetry about zero.
    for (std::size_t i = 0; i < m / 2; ++i) {
        const double x = 0.5 * (rule.nodes[m - 1 - i] - rule.nodes[i]);
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;

    for (std::size_t i = 0; i < m; ++i) {
        const auto p = hermite_orthonormal_values(m - 1, rule.nodes[i]);
        double acc = 0.0;
        for (double v : p) acc += v * v;
        rule.weights[i] = 1.0 / acc;
    }
    return rule;
}

QuadratureRule log_spaced_rule(double t_min, double t_max, std::size_t count) {
    detail::require(t_min > 0.0 && t_max > t_min, "log-spaced rule needs 0 < t_min < t_max");
    detail::require(count >= 3, "log-spaced rule needs at least 3 nodes");
    QuadratureRule rule;
    rule.kind = QuadratureKind::LogSpaced;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    const double lo = std::log(t_min);
    const double step = (std::log(t_max) - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = std::exp(lo + step * static_cast<double>(i));
        rule.nodes[i] = t;
        rule.weights[i] = t * step * ((i == 0 || i + 1 == count) ? 0.5 : 1.0);
    }
    rule.nodes.front() = t_min;
    rule.nodes.back() = t_max;
    return rule;
}

double log_step(const QuadratureRule& rule) {
    detail::require(rule.kind == QuadratureKind::LogSpaced && rule.size() >= 2,
                    "log_step needs a log-spaced rule");
    return (std::log(rule.nodes.back()) - std::log(rule.nodes.front())) /
           static_cast<double>(rule.size() - 1);
}

}  // namespace fracineq
