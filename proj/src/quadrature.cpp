#include "torusblocks/quadrature.hpp"

#include <cmath>

namespace torusblocks {

namespace {

struct Node {
    double dist;   // distance from the nearer endpoint
    double weight; // includes the half-length factor
    int side;      // -1: measured from a, +1: measured from b, 0: center
};

// tanh-sinh nodes at spacing h on (a,b), excluding u = 0 when center=false.
// Distances are computed through exp to keep full relative precision at the
// endpoints (that is the whole point of the substitution).
void collect_nodes(double h, bool odd_only, double half, std::vector<Node>& out) {
    const double umax = 3.85;
    out.clear();
    const long nmax = static_cast<long>(std::floor(umax / h));
    for (long j = odd_only ? 1 : 0; j <= nmax; j += odd_only ? 2 : 1) {
        const double u = static_cast<double>(j) * h;
        const double v = 0.5 * M_PI * std::sinh(u);
        const double w = half * 0.5 * M_PI * std::cosh(u) / (std::cosh(v) * std::cosh(v));
        if (w < 1e-290 || !std::isfinite(w)) break;
        const double dist = half * 2.0 / (1.0 + std::exp(2.0 * v));
        if (j == 0) {
            out.push_back({half, w, 0});
        } else {
            out.push_back({dist, w, -1});
            out.push_back({dist, w, +1});
        }
    }
}

} // namespace

QuadResult tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                     const QuadParams& qp) {
    QuadResult res;
    if (!(b > a)) return res;
    const double half = 0.5 * (b - a);

    std::vector<Node> nodes;
    auto eval_sum = [&](const std::vector<Node>& ns) {
        Complex s(0.0, 0.0);
        for (const auto& nd : ns) {
            const double x = nd.side <= 0 ? a + nd.dist : b - nd.dist;
            s += nd.weight * f(x);
            ++res.evals;
        }
        return s;
    };

    double h = std::pow(2.0, -qp.min_level);
    collect_nodes(h, false, half, nodes);
    Complex sum = eval_sum(nodes);
    Complex integral = h * sum;
    res.err = std::abs(integral);
    for (int level = qp.min_level + 1; level <= qp.max_level; ++level) {
        h *= 0.5;
        collect_nodes(h, true, half, nodes);
        sum += eval_sum(nodes);
        const Complex refined = h * sum;
        res.err = std::abs(refined - integral);
        integral = refined;
        if (res.err <= qp.tol * (std::abs(integral) + 1e-300)) break;
    }
    res.value = integral;
    return res;
}

std::vector<Complex> cauchy_taylor(const std::function<Complex(Complex)>& g, double r,
                                   int terms, int points) {
    std::vector<Complex> samples(points);
    for (int s = 0; s < points; ++s) {
        const double th = 2.0 * M_PI * static_cast<double>(s) / points;
        samples[s] = g(Complex(r * std::cos(th), r * std::sin(th)));
    }
    std::vector<Complex> coeffs(terms);
    double rm = 1.0;
    for (int m = 0; m < terms; ++m) {
        Complex acc(0.0, 0.0);
        for (int s = 0; s < points; ++s) {
            const double th = -2.0 * M_PI * static_cast<double>(m * s) / points;
            acc += samples[s] * Complex(std::cos(th), std::sin(th));
        }
        coeffs[m] = acc / (static_cast<double>(points) * rm);
        rm *= r;
    }
    return coeffs;
}

namespace {

// One singular end: integral over [0, s] of x^alpha G(x) with G analytic on
// the disk of radius qp.circle_radius. Closed-form continuation of the
// subtracted Taylor polynomial plus quadrature of the regular remainder.
QuadResult end_piece(const std::function<Complex(Complex)>& G, double alpha, double s,
                     const QuadParams& qp) {
    QuadResult res;
    const int M = qp.taylor_terms;
    auto A = cauchy_taylor(G, qp.circle_radius, M, qp.circle_points);
    res.evals += qp.circle_points;

    Complex closed(0.0, 0.0);
    double sp = std::pow(s, alpha + 1.0);
    for (int m = 0; m < M; ++m) {
        const double denom = alpha + static_cast<double>(m) + 1.0;
        if (std::abs(denom) < 1e-9)
            throw ConvergenceError("resonant endpoint exponent alpha = " + std::to_string(alpha));
        closed += A[m] * sp / denom;
        sp *= s;
    }

    auto rem = [&](double x) -> Complex {
        if (x < 1e-7) return Complex(0.0, 0.0); // remainder ~ x^{alpha+M}, negligible
        Complex horner(0.0, 0.0);
        for (int m = M - 1; m >= 0; --m) horner = horner * x + A[m];
        return std::pow(x, alpha) * (G(Complex(x, 0.0)) - horner);
    };
    QuadResult remainder = tanh_sinh(rem, 0.0, s, qp);
    res.value = closed + remainder.value;
    res.err = remainder.err;
    res.evals += remainder.evals;
    return res;
}

} // namespace

QuadResult fp_segment(const FPIntegrand1D& f, const QuadParams& qp) {
    QuadResult res;
    const double s0 = f.a0 != 0.0 ? qp.split : 0.0;
    const double s1 = f.a1 != 0.0 ? qp.split : 0.0;

    if (f.a0 != 0.0) {
        auto G0 = [&](Complex z) { return std::pow(1.0 - z, f.a1) * f.h(z, 0); };
        QuadResult left = end_piece(G0, f.a0, s0, qp);
        res.value += left.value;
        res.err += left.err;
        res.evals += left.evals;
    }
    if (f.a1 != 0.0) {
        auto G1 = [&](Complex z) { return std::pow(1.0 - z, f.a0) * f.h(z, 1); };
        QuadResult right = end_piece(G1, f.a1, s1, qp);
        res.value += right.value;
        res.err += right.err;
        res.evals += right.evals;
    }
    auto mid = [&](double x) -> Complex {
        return std::pow(x, f.a0) * std::pow(1.0 - x, f.a1) * f.h(Complex(x, 0.0), 0);
    };
    QuadResult middle = tanh_sinh(mid, s0, 1.0 - s1, qp);
    res.value += middle.value;
    res.err += middle.err;
    res.evals += middle.evals;
    return res;
}

QuadResult fp_rectangle(const FPIntegrand2D& f, const QuadParams& outer,
                        const QuadParams& inner) {
    long evals = 0;
    double inner_err = 0;
    FPIntegrand1D outer_f;
    outer_f.a0 = f.ax0;
    outer_f.a1 = f.ax1;
    outer_f.h = [&](Complex x, int wx) -> Complex {
        FPIntegrand1D yf;
        yf.a0 = f.ay0;
        yf.a1 = f.ay1;
        yf.h = [&](Complex y, int wy) { return f.h(x, y, wx, wy); };
        QuadResult r = fp_segment(yf, inner);
        evals += r.evals;
        inner_err = std::max(inner_err, r.err);
        return r.value;
    };
    QuadResult res = fp_segment(outer_f, outer);
    res.evals += evals;
    res.err += inner_err;
    return res;
}

} // namespace torusblocks
