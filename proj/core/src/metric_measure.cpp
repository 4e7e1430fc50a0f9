#include "fracineq/metric_measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracineq/error.hpp"

namespace fracineq::nonlocal {

MetricMeasureSpace::MetricMeasureSpace(std::vector<std::vector<double>> dist, std::vector<double> mu,
                                       int dimension)
    : mu_(std::move(mu)), dimension_(dimension) {
    const std::size_t n = mu_.size();
    detail::require(n >= 2, "a metric-measure space needs at least two points");
    detail::require(dist.size() == n, "distance matrix and measure sizes differ");
    detail::require(dimension >= 1, "dimension must be positive");
    for (std::size_t i = 0; i < n; ++i)
        detail::require(std::isfinite(mu_[i]) && mu_[i] > 0.0,
                        "measure must be positive (point " + std::to_string(i) + ")");

    dist_.resize(n * n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        detail::require(dist[i].size() == n, "distance matrix must be square");
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist[i][j];
            detail::require(std::isfinite(d), "distances must be finite");
            dist_[i * n + j] = d;
            scale = std::max(scale, d);
        }
    }
    const double slack = 1e-12 * scale;
    for (std::size_t i = 0; i < n; ++i) {
        detail::require(dist_[i * n + i] == 0.0, "distance matrix must have a zero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            detail::require(dist_[i * n + j] > 0.0, "zero off-diagonal distance between points " +
                                                        std::to_string(i) + " and " + std::to_string(j));
            detail::require(dist_[i * n + j] == dist_[j * n + i], "distance matrix must be symmetric");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                detail::require(dist_[i * n + j] <= dist_[i * n + k] + dist_[k * n + j] + slack,
                                "triangle inequality fails for points " + std::to_string(i) + ", " +
                                    std::to_string(j) + ", " + std::to_string(k));
}

double MetricMeasureSpace::volume(double r) const {
    const std::size_t n = size();
    double total = 0.0, acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        double ball = 0.0;
        for (std::size_t y = 0; y < n; ++y)
            if (dist_[x * n + y] <= r) ball += mu_[y];
        acc += mu_[x] * ball;
        total += mu_[x];
    }
    return acc / total;
}

double MetricMeasureSpace::weight(std::size_t i, std::size_t j, double s, MetricForm form) const {
    const double d = dist(i, j);
    if (form == MetricForm::LieGroup) return 1.0 / (volume(d) * std::pow(d, 2.0 * s));
    return std::pow(d, -(dimension_ + 2.0 * s));
}

MetricMeasureSpace circle_space(std::size_t points, double circumference) {
    detail::require(points >= 2, "circle needs at least two points");
    detail::require(circumference > 0.0, "circumference must be positive");
    const double step = circumference / static_cast<double>(points);
    std::vector<std::vector<double>> d(points, std::vector<double>(points, 0.0));
    for (std::size_t i = 0; i < points; ++i)
        for (std::size_t j = 0; j < points; ++j) {
            const std::size_t k = i > j ? i - j : j - i;
            d[i][j] = static_cast<double>(std::min(k, points - k)) * step;
        }
    return MetricMeasureSpace(std::move(d), std::vector<double>(points, step), 1);
}

MetricMeasureSpace cyclic_group(std::size_t order) {
    detail::require(order >= 2, "group order must be at least 2");
    std::vector<std::vector<double>> d(order, std::vector<double>(order, 0.0));
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) {
            const std::size_t k = i > j ? i - j : j - i;
            d[i][j] = static_cast<double>(std::min(k, order - k));
        }
    return MetricMeasureSpace(std::move(d), std::vector<double>(order, 1.0), 1);
}

std::vector<double> apply_metric_measure(const MetricMeasureSpace& space, std::span<const double> u, double s,
                                         MetricForm form) {
    detail::require(s > 0.0 && s < 1.0, "s must lie in (0, 1)");
    detail::require(u.size() == space.size(), "input length does not match the space");
    for (double v : u) detail::require(std::isfinite(v), "input values must be finite");
    const std::size_t n = space.size();
    std::vector<double> w(n * n, 0.0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) w[x * n + y] = w[y * n + x] = space.weight(x, y, s, form);
    std::vector<double> out(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < n; ++y)
            if (y != x) acc += (u[x] - u[y]) * w[x * n + y] * space.mu(y);
        out[x] = acc;
    }
    return out;
}

}  // namespace fracineq::nonlocal
