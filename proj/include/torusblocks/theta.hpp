#ifndef TORUSBLOCKS_THETA_HPP
#define TORUSBLOCKS_THETA_HPP

#include <complex>
#include <string>

#include "torusblocks/errors.hpp"

namespace torusblocks {

using Complex = std::complex<double>;

// Fixed tau plus the series window that keeps the theta tail below the
// target: exp(-pi Im tau (J + 1/2)^2) < tail_tol.
struct EllipticContext {
    Complex tau;
    int j_theta = 0;        // half-width of the summation window
    int max_level = 9;      // tanh-sinh refinement cap for quadrature users
    std::string branch = "anchored at tau = i";

    explicit EllipticContext(Complex tau_, double tail_tol = 1e-18);
};

// First Jacobi theta function and its t-derivatives.
Complex theta1(Complex t, const EllipticContext& ec);
Complex theta1_dt(Complex t, const EllipticContext& ec, int order = 1);
Complex theta1_prime0(const EllipticContext& ec);

// E(t) = theta1(t) / theta1'(0)
Complex weierstrass_E(Complex t, const EllipticContext& ec);

// sigma_lambda(t) = theta1(lambda - t) theta1'(0) / (theta1(lambda) theta1(t))
Complex sigma_lambda(Complex lambda, Complex t, const EllipticContext& ec);

// rho = theta1'/theta1 and its derivative; poles on the lattice.
Complex rho(Complex t, const EllipticContext& ec);
Complex rho_dt(Complex t, const EllipticContext& ec);

// Level-kappa theta function theta_{kappa,n}(t, tau).
Complex theta_level(long kappa, long n, Complex t, const EllipticContext& ec);

// True when t is within tol of the lattice Z + tau Z.
bool near_lattice(Complex t, Complex tau, double tol = 1e-12);

} // namespace torusblocks

#endif
