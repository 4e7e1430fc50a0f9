#pragma once

namespace fracineq::special {

// Riemann zeta, analytically continued (thin wrapper over Boost.Math).
double zeta(double x);

// Dirichlet beta function beta(s) = sum_k (-1)^k (2k+1)^{-s}, s > 0.
double dirichlet_beta(double s);

// Regularized square-lattice sum Z(w) = sum_{m in Z^2 \ 0} |m|^{-w}
// = 4 zeta(w/2) beta(w/2), continued below w = 2.
double square_lattice_zeta(double w);

// Generalized exponential integral E_p(z) = int_1^inf e^{-z v} v^{-p} dv for
// real p > 1 and z >= 0.
double expint_general(double p, double z);

// Modified Bessel function of the second kind K_nu(z).
double bessel_k(double nu, double z);

}  // namespace fracineq::special
