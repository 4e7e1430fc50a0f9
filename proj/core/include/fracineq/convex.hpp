#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fracineq::harness {

/**
 * Convex test function with analytic first and second derivatives. The
 * constructor samples phi'' at 1000 points of the convexity domain (clipped
 * to [-50, 50]) and rejects negative values.
 */
struct ConvexTestFunction {
    std::string name;
    std::function<double(double)> phi;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    double lo = -1e300;
    double hi = 1e300;

    bool contains(double t) const { return t >= lo && t <= hi; }
};

ConvexTestFunction make_convex(std::string name, std::function<double(double)> phi, std::function<double(double)> d1,
                               std::function<double(double)> d2, double lo = -1e300, double hi = 1e300);

// phi(t) = sqrt(t^2 + eps^2).
ConvexTestFunction phi_eps(double eps);

// t (affine), t^2, t^4, exp, softplus, phi_eps with eps = 0.1, max(t, 0)^2.
std::vector<ConvexTestFunction> convex_battery();

// Battery lookup by name; throws InvalidArgument listing the known names.
ConvexTestFunction find_convex(const std::string& name);

}  // namespace fracineq::harness
