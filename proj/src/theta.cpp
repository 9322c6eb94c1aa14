#include "torusblocks/theta.hpp"

#include <cmath>

namespace torusblocks {

namespace {
const Complex I_UNIT(0.0, 1.0);
const double PI = M_PI;
} // namespace

EllipticContext::EllipticContext(Complex tau_, double tail_tol) : tau(tau_) {
    if (tau.imag() <= 0) throw RangeError("need Im tau > 0");
    const double target = -std::log(tail_tol); // ~ 41.4 at 1e-18
    j_theta = static_cast<int>(std::ceil(std::sqrt(target / (PI * tau.imag())))) + 2;
}

bool near_lattice(Complex t, Complex tau, double tol) {
    const double n = std::round(t.imag() / tau.imag());
    const double m = std::round(t.real() - n * tau.real());
    return std::abs(t - (m + n * tau)) < tol;
}

Complex theta1(Complex t, const EllipticContext& ec) {
    return theta1_dt(t, ec, 0);
}

Complex theta1_dt(Complex t, const EllipticContext& ec, int order) {
    // -sum_j exp(pi i (j+1/2)^2 tau + 2 pi i (j+1/2)(t+1/2)), differentiated
    // term by term; window centered where the summand peaks.
    const long j0 = std::lround(-t.imag() / ec.tau.imag() - 0.5);
    Complex acc(0.0, 0.0);
    for (long j = j0 - ec.j_theta; j <= j0 + ec.j_theta; ++j) {
        const double h = static_cast<double>(j) + 0.5;
        const Complex expo = PI * I_UNIT * (h * h * ec.tau + 2.0 * h * (t + 0.5));
        Complex term = std::exp(expo);
        for (int d = 0; d < order; ++d) term *= 2.0 * PI * I_UNIT * h;
        acc += term;
    }
    return -acc;
}

Complex theta1_prime0(const EllipticContext& ec) { return theta1_dt(Complex(0.0, 0.0), ec, 1); }

Complex weierstrass_E(Complex t, const EllipticContext& ec) {
    return theta1(t, ec) / theta1_prime0(ec);
}

Complex sigma_lambda(Complex lambda, Complex t, const EllipticContext& ec) {
    if (near_lattice(t, ec.tau) || near_lattice(lambda, ec.tau))
        throw PoleError("sigma_lambda pole: argument on the lattice");
    return theta1(lambda - t, ec) * theta1_prime0(ec) / (theta1(lambda, ec) * theta1(t, ec));
}

Complex rho(Complex t, const EllipticContext& ec) {
    if (near_lattice(t, ec.tau)) throw PoleError("rho pole at a lattice point");
    return theta1_dt(t, ec) / theta1(t, ec);
}

Complex rho_dt(Complex t, const EllipticContext& ec) {
    if (near_lattice(t, ec.tau)) throw PoleError("rho pole at a lattice point");
    const Complex th = theta1(t, ec);
    const Complex r = theta1_dt(t, ec) / th;
    return theta1_dt(t, ec, 2) / th - r * r;
}

Complex theta_level(long kappa, long n, Complex t, const EllipticContext& ec) {
    if (kappa < 2) throw RangeError("theta_level needs kappa >= 2");
    // sum_j exp(2 pi i kappa (j + n/2kappa)^2 tau + 2 pi i kappa (j + n/2kappa) t)
    const double off = static_cast<double>(n) / (2.0 * static_cast<double>(kappa));
    const double peak = -t.imag() / (2.0 * ec.tau.imag());
    const long j0 = std::lround(peak - off);
    const double target = 42.0;
    const int w = static_cast<int>(std::ceil(std::sqrt(
                      target / (2.0 * PI * static_cast<double>(kappa) * ec.tau.imag())))) +
                  2;
    Complex acc(0.0, 0.0);
    const double dk = static_cast<double>(kappa);
    for (long j = j0 - w; j <= j0 + w; ++j) {
        const double y = static_cast<double>(j) + off;
        acc += std::exp(2.0 * PI * I_UNIT * dk * y * (y * ec.tau + t));
    }
    return acc;
}

} // namespace torusblocks
