#include "fracineq/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracineq/error.hpp"

namespace fracineq {

namespace {

void check_exponent(double s) {
    detail::require(std::isfinite(s) && s > 0.0 && s < 1.0,
                    "fractional exponent s must lie in (0,1), got " + std::to_string(s));
}

}  // namespace

double kernel_constant(double s, int n) {
    check_exponent(s);
    detail::require(n == 1 || n == 2, "dimension n must be 1 or 2");
    const double half_n = 0.5 * n;
    return std::pow(4.0, s) * std::tgamma(half_n + s) /
           (std::pow(std::numbers::pi, half_n) * std::abs(std::tgamma(-s)));
}

double realization_constant_closed_form(double s) {
    check_exponent(s);
    return std::pow(2.0, 2.0 * s - 1.0) * std::tgamma(s) / std::tgamma(1.0 - s);
}

double st_constant_closed_form(double s) {
    check_exponent(s);
    return 2.0 * s * std::tgamma(-s) / (std::pow(4.0, s) * std::tgamma(s));
}

FracParams FracParams::make(double s, int n) {
    FracParams p;
    p.s = s;
    p.n = n;
    p.c_kernel = kernel_constant(s, n);
    p.a = 1.0 - 2.0 * s;
    p.d_real = realization_constant_closed_form(s);
    p.c_st = st_constant_closed_form(s);
    return p;
}

}  // namespace fracineq
