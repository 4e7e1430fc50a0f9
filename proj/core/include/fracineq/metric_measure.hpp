#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracineq::nonlocal {

enum class MetricForm {
    LieGroup,  // w(x,y) = 1 / (V(d) d^{2s})
    Manifold   // w(x,y) = 1 / d^{n+2s}
};

/**
 * Finite metric-measure surrogate for a manifold or a group with a
 * left-invariant distance. The distance matrix is checked for symmetry, a
 * zero diagonal, strictly positive off-diagonal entries and the triangle
 * inequality over all triples.
 *
 * V(r) is the mu-averaged measure of closed balls,
 *   V(r) = (1/|mu|) sum_x mu(x) mu(B(x, r)),
 * which reduces to the common ball volume on homogeneous spaces and keeps
 * the Lie-group weight symmetric in (x, y) on inhomogeneous ones.
 */
class MetricMeasureSpace {
public:
    MetricMeasureSpace(std::vector<std::vector<double>> dist, std::vector<double> mu, int dimension = 1);

    std::size_t size() const { return mu_.size(); }
    int dimension() const { return dimension_; }
    double dist(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
    double mu(std::size_t i) const { return mu_[i]; }
    std::span<const double> measure() const { return mu_; }

    double volume(double r) const;
    double weight(std::size_t i, std::size_t j, double s, MetricForm form) const;

private:
    std::vector<double> dist_;
    std::vector<double> mu_;
    int dimension_;
};

// Equally spaced points on a circle of the given circumference with arc-length
// distance and measure circumference / N per point.
MetricMeasureSpace circle_space(std::size_t points, double circumference);

// Cyclic group Z_N with the word metric of the generator {+1, -1} and
// counting measure.
MetricMeasureSpace cyclic_group(std::size_t order);

// L u(x) = sum_{y != x} (u(x) - u(y)) w(x, y) mu(y).
std::vector<double> apply_metric_measure(const MetricMeasureSpace& space, std::span<const double> u, double s,
                                         MetricForm form);

}  // namespace fracineq::nonlocal
