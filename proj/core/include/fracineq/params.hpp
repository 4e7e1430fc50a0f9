#pragma once

namespace fracineq {

/**
 * Exponent bundle for a fractional problem of order s in dimension n.
 *
 * The normalization constants are closed forms:
 *   c_kernel = 4^s Gamma(n/2 + s) / (pi^{n/2} |Gamma(-s)|)
 *   d_real   = 2^{2s-1} Gamma(s) / Gamma(1 - s)
 *   c_st     = 2 s Gamma(-s) / (4^s Gamma(s))      (negative for all s)
 *
 * d_real relates the fractional Laplacian to the weighted conormal derivative
 * of the a = 1 - 2s extension; c_st is the constant that usually accompanies the
 * semigroup extension formula. |c_st| * d_real == 1.
 */
struct FracParams {
    double s = 0.5;
    double a = 0.0;
    int n = 1;
    double c_kernel = 0.0;
    double d_real = 0.0;
    double c_st = 0.0;

    // Throws InvalidArgument unless 0 < s < 1 and n is 1 or 2.
    static FracParams make(double s, int n = 1);
};

double kernel_constant(double s, int n);
double realization_constant_closed_form(double s);
double st_constant_closed_form(double s);

}  // namespace fracineq
