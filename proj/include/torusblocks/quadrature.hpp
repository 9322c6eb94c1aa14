#ifndef TORUSBLOCKS_QUADRATURE_HPP
#define TORUSBLOCKS_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "torusblocks/errors.hpp"

namespace torusblocks {

using Complex = std::complex<double>;

struct QuadParams {
    int min_level = 3;
    int max_level = 9;
    double tol = 5e-13;        // relative refinement target
    int taylor_terms = 18;     // endpoint subtraction order
    int circle_points = 128;   // trapezoid samples for Taylor coefficients
    double circle_radius = 0.28;
    double split = 0.15;       // series region [0, split] at each end
};

struct QuadResult {
    Complex value{};
    double err = 0;   // refinement-based estimate
    long evals = 0;
};

// tanh-sinh quadrature of a complex integrand over a real interval,
// doubling the level until the refinement delta meets tol.
QuadResult tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                     const QuadParams& qp);

// Taylor coefficients at 0 of an analytic function, trapezoid on |z| = r.
std::vector<Complex> cauchy_taylor(const std::function<Complex(Complex)>& g, double r,
                                   int terms, int points);

// Endpoint-singular integral of x^{a0} (1-x)^{a1} H(x) over [0,1] where H is
// analytic in a neighborhood of the segment. For exponents <= -1 the value is
// the analytic continuation in the exponent (endpoint Taylor subtraction with
// the singular monomials integrated in closed form); this is exactly the
// meromorphic continuation used to define the elliptic integrals at negative
// exponents. Exponents in (-1, 0] and regular ends go through the same path.
//
// The integrand is supplied windowed: h(x, 0) is the cofactor form anchored
// at the left end (valid on the left disk and the real middle); h(u, 1) is
// the cofactor of the reflected integrand, i.e. H(1-u), anchored at the
// right end (valid on its disk). An exponent of exactly 0 skips endpoint
// processing and the middle region extends to that endpoint.
struct FPIntegrand1D {
    double a0 = 0;
    double a1 = 0;
    std::function<Complex(Complex, int)> h;
};

QuadResult fp_segment(const FPIntegrand1D& f, const QuadParams& qp);

// Iterated 2-D version on [0,1]^2: the outer variable is x, inner y; window
// selectors are passed per axis. h(x, y, wx, wy).
struct FPIntegrand2D {
    double ax0 = 0, ax1 = 0;
    double ay0 = 0, ay1 = 0;
    std::function<Complex(Complex, Complex, int, int)> h;
};

QuadResult fp_rectangle(const FPIntegrand2D& f, const QuadParams& outer, const QuadParams& inner);

} // namespace torusblocks

#endif
