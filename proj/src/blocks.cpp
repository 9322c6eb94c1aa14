#include "torusblocks/blocks.hpp"

#include <cmath>

#include "torusblocks/modular.hpp"

namespace torusblocks {

namespace {

const Complex I_UNIT(0.0, 1.0);

Complex ppow(Complex base, double e) {
    if (base == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    return std::exp(e * std::log(base)); // principal branch
}

// Real positive power of a real variable that may arrive as a complex number
// on a Cauchy circle; principal power.
Complex xpow(Complex x, double e) { return ppow(x, e); }

} // namespace

IntegralSpec::IntegralSpec(long kappa_, long p_, long k_, long n_, Complex lambda_)
    : kappa(kappa_), p(p_), k(k_), n(n_), lambda(lambda_) {
    if (kappa < 2 * p + 2) throw RangeError("need kappa >= 2p+2");
    if (k < 0 || k > p) throw RangeError("need 0 <= k <= p");
    if (p > 2) throw RangeError("blocks are implemented for p <= 2");
    quad_inner.tol = 1e-13;
    quad_inner.max_level = 9;
    quad.max_level = 8;
}

// ---------------------------------------------------------------------------
// Elliptic factor builders. All powers are anchored by continuity: the
// near-zero forms use arg E(t) -> arg t, and the far-end forms are matched
// numerically against the mid-segment branch at a sample point, so no
// quasi-periodicity phase has to be tracked by hand.
// ---------------------------------------------------------------------------

namespace {

// branch sanity walk: principal arg of E(t)/t must move continuously along
// the open segment (0, L)
void check_ratio_branch(Complex L, const EllipticContext& ec) {
    double prev = 0;
    bool have_prev = false;
    for (int i = 1; i < 64; ++i) {
        const double x = static_cast<double>(i) / 64.0;
        const Complex t = L * x;
        const Complex r = weierstrass_E(t, ec) / t;
        const double a = std::arg(r);
        if (have_prev && std::abs(a - prev) > 1.5)
            throw BranchError("E(t)/t crossed a branch cut along the segment");
        prev = a;
        have_prev = true;
    }
}

SegmentWeight elliptic_segment_weight(Complex L, double a, Complex lambda, long kappa,
                                      const EllipticContext& ec) {
    (void)kappa;
    check_ratio_branch(L, ec);
    SegmentWeight w;
    w.L = L;
    w.e0 = a - 1.0;
    w.eL = a - 1.0;
    const Complex Lpow = ppow(L, a - 1.0);

    auto t_sigma = [=, &ec](Complex t) { // t * sigma_lambda(t), analytic at 0
        return t * theta1(lambda - t, ec) * theta1_prime0(ec) /
               (theta1(lambda, ec) * theta1(t, ec));
    };

    w.reg0 = [=, &ec](Complex z) -> Complex {
        const Complex t = L * z;
        return Lpow * ppow(weierstrass_E(t, ec) / t, a) * t_sigma(t);
    };
    w.mid = [=, &ec](Complex z) -> Complex {
        const Complex t = L * z;
        return Lpow * xpow(z, a - 1.0) * ppow(weierstrass_E(t, ec) / t, a) * t_sigma(t);
    };

    // far end: E(L - Lz) = (Lz) k(z) with k analytic and nonvanishing; the
    // constant phase is fixed by matching the mid form at a sample point
    auto kfun = [=, &ec](Complex z) { return weierstrass_E(L - L * z, ec) / (L * z); };
    const double zs = 0.09;
    const double sK = kfun(Complex(zs, 0.0)).real() >= 0 ? 1.0 : -1.0;
    auto regL_raw = [=, &ec](Complex z) -> Complex {
        const Complex t = L - L * z;
        return ppow(sK * kfun(z), a) * (L * z) * theta1(lambda - t, ec) * theta1_prime0(ec) /
               (theta1(lambda, ec) * theta1(t, ec));
    };
    const Complex cL = w.mid(Complex(1.0 - zs, 0.0)) /
                       (xpow(Complex(zs, 0.0), a - 1.0) * regL_raw(Complex(zs, 0.0)));
    w.regL = [=](Complex z) { return cL * regL_raw(z); };
    return w;
}

// Pair factor P(delta) = E(delta)^g anchored at delta -> 0 (principal in the
// offset, continuous on the domain). Corner regs at the lattice zeros are
// phase-matched against the mid form.
struct PairBuilder {
    double g;
    const EllipticContext* ec;

    Complex mid(Complex delta) const {
        return ppow(delta, g) * ppow(weierstrass_E(delta, *ec) / delta, g);
    }

    // reg for a zero at `anchor` approached as delta = anchor + dir * z with
    // z the local scaled coordinate; sample picks the matching point.
    std::function<Complex(Complex)> make_reg(Complex anchor, Complex dir,
                                             Complex z_sample) const {
        const double gg = g;
        const EllipticContext& e = *ec;
        auto core = [&e, anchor, dir](Complex z) {
            return weierstrass_E(anchor + dir * z, e) / z;
        };
        const double sK = core(z_sample).real() >= 0 ? 1.0 : -1.0;
        const Complex num = mid(anchor + dir * z_sample);
        const Complex den = xpow(z_sample, gg) * ppow(sK * core(z_sample), gg);
        const Complex c = num / den;
        return [&e, anchor, dir, gg, sK, c, core](Complex z) -> Complex {
            return c * ppow(sK * core(z), gg);
        };
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Nested simplex 0 <= t2 <= t1 <= L. Global coordinates t1 = L xt, t2 = L xt s
// split into five cells whose corner singularities are pure per-axis powers
// with jointly analytic cofactors:
//   N1     : xt in [0,1/2], s in [0,1]
//   N2a S1 : xt = 1-V, s = VZ        (V in [0,1/2], Z in [0,1])
//   N2a S2 : xt = 1-V'Z, s = V'      (V' in [0,1/2])
//   N2b S1 : xt = 1-V, s = 1-VZ
//   N2b S2 : xt = 1-WZ, s = 1-W
// ---------------------------------------------------------------------------

BlockValue nested_simplex_integral(const SegmentWeight& w, const PairWeight& pair,
                                   const std::function<Complex(Complex)>& smooth,
                                   const QuadParams& outer, const QuadParams& inner) {
    const Complex L = w.L;
    const double e0 = w.e0, eL = w.eL, g = pair.g;
    const Complex L2 = L * L;

    auto flip = [](Complex v, int window) { return window == 0 ? v : 1.0 - v; };

    std::vector<FPIntegrand2D> cells;

    {
        FPIntegrand2D c;
        c.ax0 = 2 * e0 + g + 1;
        c.ax1 = 0;
        c.ay0 = e0;
        c.ay1 = g;
        c.h = [=](Complex X, Complex Y, int wx, int wy) -> Complex {
            X = flip(X, wx);
            Y = flip(Y, wy);
            const Complex half = 0.5;
            // t1 = L X/2, t2 = L X Y / 2, delta = L (X/2)(1-Y)
            const Complex jac = L2 * X * half * half; // includes x-power 1 pulled below
            // pulled: X^{2e0+g+1} Y^{e0} (1-Y)^{g}
            return ppow(half, 2 * e0 + g) * w.reg0(half * X) * w.reg0(half * X * Y) *
                   pair.reg(0, half * X * (1.0 - Y)) * smooth(L * half * X * (1.0 + Y)) * L2 *
                   half * half / X; // divide the one explicit X of the jacobian back out
        };
        // the jacobian contributes X^1 which is part of ax0; fold cleanly:
        c.h = [=](Complex X, Complex Y, int wx, int wy) -> Complex {
            X = flip(X, wx);
            Y = flip(Y, wy);
            const Complex half = 0.5;
            return L2 * half * half * ppow(half, 2 * e0 + g) * w.reg0(half * X) *
                   w.reg0(half * X * Y) * pair.reg(0, half * X * (1.0 - Y)) *
                   smooth(L * half * X * (1.0 + Y));
        };
        cells.push_back(std::move(c));
    }
    // N2a S1: V = X/2, Z = Y; t1 = L(1-V), t2 = L(1-V)VZ, delta = L - LV(1+Z-VZ)
    {
        FPIntegrand2D c;
        c.ax0 = e0 + eL + g + 1;
        c.ax1 = 0;
        c.ay0 = e0;
        c.ay1 = 0;
        c.h = [=](Complex X, Complex Y, int wx, int wy) -> Complex {
            const Complex V = 0.5 * flip(X, wx);
            const Complex Z = flip(Y, wy);
            const Complex om = 1.0 - V;
            const Complex phi = 1.0 + Z - V * Z; // in [1, 2]
            return L2 * om * 0.5 * V / V * // jacobian dV dZ area: V, dV = dX/2
                   ppow(Complex(0.5), e0 + eL + g) * // scale of V = X/2 powers
                   w.regL(V) * ppow(om, e0) * w.reg0(om * V * Z) * ppow(phi, g) *
                   pair.reg(1, V * phi) * smooth(L * om * (1.0 + V * Z));
        };
        cells.push_back(std::move(c));
    }
    // N2a S2: V' = X/2, Z = Y; t1 = L(1-V'Z), t2 = L(1-V'Z)V'
    {
        FPIntegrand2D c;
        c.ax0 = e0 + eL + g + 1;
        c.ax1 = 0;
        c.ay0 = eL;
        c.ay1 = 0;
        c.h = [=](Complex X, Complex Y, int wx, int wy) -> Complex {
            const Complex Vp = 0.5 * flip(X, wx);
            const Complex Z = flip(Y, wy);
            const Complex om = 1.0 - Vp * Z;
            const Complex phi = 1.0 + Z - Vp * Z;
            return L2 * om * 0.5 * ppow(Complex(0.5), e0 + eL + g) * w.regL(Vp * Z) *
                   ppow(om, e0) * w.reg0(om * Vp) * ppow(phi, g) * pair.reg(1, Vp * phi) *
                   smooth(L * om * (1.0 + Vp));
        };
        cells.push_back(std::move(c));
    }
    // N2b S1: V = X/2, Z = Y; t1 = L(1-V), t2 = L(1-V)(1-VZ), delta = L(1-V)VZ
    {
        FPIntegrand2D c;
        c.ax0 = 2 * eL + g + 1;
        c.ax1 = 0;
        c.ay0 = g;
        c.ay1 = 0;
        c.h = [=](Complex X, Complex Y, int wx, int wy) -> Complex {
            const Complex V = 0.5 * flip(X, wx);
            const Complex Z = flip(Y, wy);
            const Complex om = 1.0 - V;
            const Complex phi = 1.0 + Z - V * Z;
            return L2 * om * 0.5 * ppow(Complex(0.5), 2 * eL + g) * w.regL(V) *
                   ppow(phi, eL) * w.regL(V * phi) * ppow(om, g) * pair.reg(0, om * V * Z) *
                   smooth(L * om * (2.0 - V * Z));
        };
        cells.push_back(std::move(c));
    }
    // N2b S2: W = X/2, Z = Y; t1 = L(1-WZ), t2 = L(1-WZ)(1-W)
    {
        FPIntegrand2D c;
        c.ax0 = 2 * eL + g + 1;
        c.ax1 = 0;
        c.ay0 = eL;
        c.ay1 = 0;
        c.h = [=](Complex X, Complex Y, int wx, int wy) -> Complex {
            const Complex Wt = 0.5 * flip(X, wx);
            const Complex Z = flip(Y, wy);
            const Complex om = 1.0 - Wt * Z;
            const Complex phi = 1.0 + Z - Wt * Z;
            return L2 * om * 0.5 * ppow(Complex(0.5), 2 * eL + g) * w.regL(Wt * Z) *
                   ppow(phi, eL) * w.regL(Wt * phi) * ppow(om, g) *
                   pair.reg(0, om * Wt) * smooth(L * om * (2.0 - Wt));
        };
        cells.push_back(std::move(c));
    }

    BlockValue out;
    for (const auto& cell : cells) {
        QuadResult r = fp_rectangle(cell, outer, inner);
        out.value += r.value;
        out.err += r.err;
        out.evals += r.evals;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Product of segments [0,1] x [0,tau]: quadrants split at (1/2, 1/2), each
// with a radial sector pair at its lattice corner of the pair factor.
// Corner ids for pair.reg: 0 -> delta = 0, 1 -> delta = 1, 2 -> delta = -tau,
// 3 -> delta = 1 - tau.
// ---------------------------------------------------------------------------

BlockValue product_segments_integral(const SegmentWeight& w1, const SegmentWeight& w2,
                                     const PairWeight& pair,
                                     const std::function<Complex(Complex)>& smooth,
                                     const QuadParams& outer, const QuadParams& inner) {
    const Complex tau = w2.L;
    const double g = pair.g;

    auto flip = [](Complex v, int window) { return window == 0 ? v : 1.0 - v; };

    struct QuadrantSpec {
        int corner;          // pair.reg id
        bool x_far, y_far;   // which end of each segment the corner sits at
    };
    const QuadrantSpec quadrants[4] = {
        {0, false, false}, // (0,0): delta -> 0
        {1, true, false},  // (1,0): delta -> 1
        {2, false, true},  // (0,1): delta -> -tau
        {3, true, true},   // (1,1): delta -> 1-tau
    };

    BlockValue out;
    for (const auto& qd : quadrants) {
        const double ex = qd.x_far ? w1.eL : w1.e0; // exponent of W1 at this corner
        const double ey = qd.y_far ? w2.eL : w2.e0;
        auto W1reg = qd.x_far ? w1.regL : w1.reg0;
        auto W2reg = qd.y_far ? w2.regL : w2.reg0;
        // absolute coordinates from local ones
        auto xcoord = [=](Complex a) { return qd.x_far ? 1.0 - a : a; };
        auto ycoord = [=](Complex b) { return qd.y_far ? 1.0 - b : b; };
        // local pair argument: delta = corner + (dx * a - tau * dy * b) with
        // signs depending on which corner
        const double sx = qd.x_far ? -1.0 : 1.0;
        const double sy = qd.y_far ? -1.0 : 1.0;

        for (int sector = 0; sector < 2; ++sector) {
            FPIntegrand2D c;
            c.ax0 = ex + ey + g + 1;
            c.ax1 = 0;
            c.ay0 = sector == 0 ? ey : ex;
            c.ay1 = 0;
            c.h = [=, &pair](Complex X, Complex Y, int wx, int wy) -> Complex {
                const Complex R = 0.5 * flip(X, wx);
                const Complex Z = flip(Y, wy);
                // sector 0: (a, b) = (R, R Z); sector 1: (a, b) = (R Z, R)
                const Complex a = sector == 0 ? R : R * Z;
                const Complex b = sector == 0 ? R * Z : R;
                // pair: delta - corner = sx*a - tau*sy*b = R * phi
                const Complex phi =
                    sector == 0 ? (sx - tau * sy * Z) : (sx * Z - tau * sy);
                const Complex zloc = R * phi;
                const double az = sector == 0 ? ey : ex; // angular exponent source
                (void)az;
                Complex angular = sector == 0 ? ppow(Z, 0.0) : ppow(Z, 0.0);
                (void)angular;
                // powers pulled: R^{ex+ey+g+1}, Z^{ay0}; scale 1/2 from R = X/2
                Complex val = tau;            // measure along [0, tau]
                val *= 0.5;                   // dR = dX/2
                val *= ppow(Complex(0.5), ex + ey + g); // R-power scale
                val *= W1reg(a);
                val *= W2reg(b);
                val *= ppow(phi, g) * pair.reg(qd.corner, zloc);
                val *= smooth(xcoord(a) + tau * ycoord(b));
                // remaining angular analytic parts of the W's were pulled as
                // Z^{ay0}; the masked reg takes the full product argument, so
                // nothing else is needed here.
                return val;
            };
            out.evals += 0;
            QuadResult r = fp_rectangle(c, outer, inner);
            out.value += r.value;
            out.err += r.err;
            out.evals += r.evals;
        }
    }
    return out;
}

} // namespace torusblocks
