#include "doctest.h"

#include <random>

#include "torusblocks/theta.hpp"

using namespace torusblocks;

namespace {
const Complex I_UNIT(0.0, 1.0);

std::vector<Complex> sample_points(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> re(-0.9, 0.9), im(-0.8, 0.8);
    std::vector<Complex> pts;
    while (static_cast<int>(pts.size()) < count) {
        Complex t(re(rng), im(rng));
        if (near_lattice(t, Complex(0.3, 1.0), 1e-2) || near_lattice(t, Complex(0, 1), 1e-2))
            continue;
        pts.push_back(t);
    }
    return pts;
}

} // namespace

TEST_CASE("theta1 basics") {
    EllipticContext ec(Complex(0.0, 1.0));
    CHECK(std::abs(theta1(Complex(0, 0), ec)) < 1e-15);
    // odd function
    for (Complex t : sample_points(10, 7))
        CHECK(std::abs(theta1(-t, ec) + theta1(t, ec)) < 1e-13);
    // derivative against a central difference
    const Complex t0(0.23, 0.11);
    const double h = 1e-5;
    const Complex fd = (theta1(t0 + h, ec) - theta1(t0 - h, ec)) / (2.0 * h);
    CHECK(std::abs(theta1_dt(t0, ec) - fd) < 1e-8);
    const Complex fd2 = (theta1(t0 + h, ec) - 2.0 * theta1(t0, ec) + theta1(t0 - h, ec)) / (h * h);
    CHECK(std::abs(theta1_dt(t0, ec, 2) - fd2) < 1e-5);
}

TEST_CASE("theta1 modular behavior") {
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.0)}) {
        EllipticContext ec(tau);
        EllipticContext ec_t(tau + 1.0);
        EllipticContext ec_s(-1.0 / tau);
        for (Complex t : sample_points(20, 11)) {
            // tau -> tau + 1
            const Complex lhs_t = theta1(t, ec_t);
            const Complex rhs_t = std::exp(Complex(0.0, M_PI / 4.0)) * theta1(t, ec);
            CHECK(std::abs(lhs_t - rhs_t) < 1e-12 * (1 + std::abs(rhs_t)));
            // tau -> -1/tau with |arg(-i tau)| < pi/2
            const Complex lhs_s = theta1(t / tau, ec_s);
            const Complex rhs_s = std::sqrt(-I_UNIT * tau) / I_UNIT *
                                  std::exp(M_PI * I_UNIT * t * t / tau) * theta1(t, ec);
            CHECK(std::abs(lhs_s - rhs_s) < 1e-10 * (1 + std::abs(rhs_s)));
        }
    }
}

TEST_CASE("E and sigma quasi-periodicity") {
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.0)}) {
        EllipticContext ec(tau);
        const Complex lambda(0.31, 0.07);
        for (Complex t : sample_points(50, 23)) {
            const Complex e = weierstrass_E(t, ec);
            CHECK(std::abs(weierstrass_E(t + 1.0, ec) + e) < 1e-12 * (1 + std::abs(e)));
            const Complex shift = -std::exp(-M_PI * I_UNIT * tau - 2.0 * M_PI * I_UNIT * t) * e;
            CHECK(std::abs(weierstrass_E(t + tau, ec) - shift) < 1e-12 * (1 + std::abs(shift)));

            const Complex s = sigma_lambda(lambda, t, ec);
            CHECK(std::abs(sigma_lambda(lambda, t + 1.0, ec) - s) < 1e-12 * (1 + std::abs(s)));
            const Complex s2 = std::exp(2.0 * M_PI * I_UNIT * lambda) * s;
            CHECK(std::abs(sigma_lambda(lambda, t + tau, ec) - s2) < 1e-12 * (1 + std::abs(s2)));
        }
    }
}

TEST_CASE("E(t) ~ t near the origin") {
    EllipticContext ec(Complex(0.3, 1.0));
    const Complex t(1e-4, 0.0);
    CHECK(std::abs(weierstrass_E(t, ec) / t - 1.0) < 1e-6);
}

TEST_CASE("rho reports lattice poles") {
    EllipticContext ec(Complex(0.3, 1.0));
    CHECK_THROWS_AS(rho(Complex(0, 0), ec), PoleError);
    CHECK_THROWS_AS(rho(Complex(1.3, 1.0), ec), PoleError); // 1 + tau
    CHECK_NOTHROW(rho(Complex(0.4, 0.2), ec));
}

TEST_CASE("level theta periodicity and shifts") {
    const long kappa = 5;
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.0)}) {
        EllipticContext ec(tau);
        const Complex q2n = std::exp(2.0 * M_PI * I_UNIT / static_cast<double>(kappa));
        for (Complex t : sample_points(12, 31)) {
            for (long n = -2; n <= 7; ++n) {
                const Complex base = theta_level(kappa, n, t, ec);
                CHECK(std::abs(theta_level(kappa, n + 2 * kappa, t, ec) - base) <
                      1e-14 * (1 + std::abs(base)));
                CHECK(std::abs(theta_level(kappa, -n, -t, ec) - base) <
                      1e-14 * (1 + std::abs(base)));
                // t -> t + 2/kappa multiplies by q^{2n}
                const Complex sh1 = theta_level(kappa, n, t + 2.0 / kappa, ec);
                CHECK(std::abs(sh1 - std::pow(q2n, n) * base) < 1e-12 * (1 + std::abs(base)));
                // t -> t + 2 tau/kappa shifts n by 2
                const Complex sh2 = theta_level(kappa, n, t + 2.0 * tau / static_cast<double>(kappa), ec);
                const Complex rhs = std::exp(-2.0 * M_PI * I_UNIT * t -
                                             2.0 * M_PI * I_UNIT * tau / static_cast<double>(kappa)) *
                                    theta_level(kappa, n + 2, t, ec);
                CHECK(std::abs(sh2 - rhs) < 1e-12 * (1 + std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("level theta modular laws") {
    const long kappa = 4;
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.0)}) {
        EllipticContext ec(tau);
        EllipticContext ec_t(tau + 1.0);
        EllipticContext ec_s(-1.0 / tau);
        const Complex q = std::exp(M_PI * I_UNIT / static_cast<double>(kappa));
        for (Complex t : sample_points(8, 41)) {
            for (long n = 0; n < 2 * kappa; ++n) {
                const Complex base = theta_level(kappa, n, t, ec);
                const Complex lhs_t = theta_level(kappa, n, t, ec_t);
                CHECK(std::abs(lhs_t - std::pow(q, static_cast<double>(n * n) / 2.0) * base) <
                      1e-12 * (1 + std::abs(base)));

                Complex sum(0, 0);
                for (long m = 0; m < 2 * kappa; ++m)
                    sum += std::pow(q, -static_cast<double>(m * n)) * theta_level(kappa, m, t, ec);
                const Complex pref =
                    std::sqrt(-I_UNIT * tau / (2.0 * static_cast<double>(kappa))) *
                    std::exp(M_PI * I_UNIT * static_cast<double>(kappa) * t * t / (2.0 * tau));
                const Complex lhs_s = theta_level(kappa, n, t / tau, ec_s);
                CHECK(std::abs(lhs_s - pref * sum) < 1e-8 * (1 + std::abs(pref * sum)));
            }
        }
    }
}
