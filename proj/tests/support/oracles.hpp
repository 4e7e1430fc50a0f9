#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// (-Delta)^s exp(-x^2) through the Kummer closed form
// 4^s Gamma(1/2 + s) / Gamma(1/2) 1F1(1/2 + s; 1/2; -x^2).
double frac_gaussian_kummer(double s, double x);

// The same quantity by adaptive Gauss-Kronrod on the inverse Fourier integral
// (1/pi) int_0^inf xi^{2s} sqrt(pi) exp(-xi^2/4) cos(xi x) dxi.
double frac_gaussian_fourier(double s, double x);

// Brute-force periodic kernel sum  factor * h * sum_{0<|m|<=M} K(m h) (u_i - u_{i+m}).
std::vector<double> periodic_kernel_sum(std::span<const double> u, double h, const std::function<double(double)>& K,
                                        long M, double factor);

// Dense matrix of a linear map on R^n, assembled column by column.
Eigen::MatrixXd assemble(const std::function<std::vector<double>(std::span<const double>)>& apply, std::size_t n);

// First eigenvalue of the restricted half Laplacian on (-1, 1), from the literature.
inline constexpr double kRestrictedHalfLambda1 = 1.1577738836977;

}  // namespace oracle
