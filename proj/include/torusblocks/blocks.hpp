#ifndef TORUSBLOCKS_BLOCKS_HPP
#define TORUSBLOCKS_BLOCKS_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "torusblocks/quadrature.hpp"
#include "torusblocks/theta.hpp"

namespace torusblocks {

// One elliptic hypergeometric block evaluation: the p-fold integral with k
// variables on the real simplex and p-k on the tau-scaled one.
struct IntegralSpec {
    long kappa = 4;
    long p = 1;
    long k = 1;
    long n = 2;
    Complex lambda{0.31, 0.0};
    QuadParams quad;       // outer quadrature parameters
    QuadParams quad_inner; // inner (p = 2 only)

    IntegralSpec() = default;
    IntegralSpec(long kappa_, long p_, long k_, long n_, Complex lambda_);
};

struct BlockValue {
    Complex value{};
    double err = 0; // refinement-based estimate
    long evals = 0;
};

// J^{[k]}_{kappa,n}(lambda, tau): one orientation of the integral.
BlockValue j_block(const IntegralSpec& spec, Complex lambda, const EllipticContext& ec);

// u^{[k]}_n = J(lambda) + (-1)^{p+1} J(-lambda).
BlockValue u_block(const IntegralSpec& spec, const EllipticContext& ec);

// Master function with the anchored branch: product of E(t_j)^{-2p/kappa}
// and E(t_i - t_j)^{2/kappa}, arguments fixed at tau = i (0 on the real
// simplex, pi/2 on the scaled one, principal for differences) and continued
// stepwise along the straight path in tau. Points in the scaled group co-move
// with tau (t_j = tau y_j with y_j held fixed).
Complex phi_master(const std::vector<Complex>& ts, long kappa, long p, long k,
                   const EllipticContext& ec);

// Relative residual of the KZB heat equation on a finite-difference stencil
// with one Richardson level.
struct KzbReport {
    double residual = 0;
    double quadrature_err = 0; // propagated block error estimate
    Complex u_center{};
};
KzbReport kzb_residual(const IntegralSpec& spec, const EllipticContext& ec,
                       double h_lambda = 1e-3, double h_tau = 1e-3);

// Both sides of the level recursion between u^{[k]} and u^{[k+1]}.
struct StokesReport {
    Complex lhs{}, rhs{};
    double rel_err = 0;
    double abs_err = 0;
    double scale = 0;
};
StokesReport stokes_check(const IntegralSpec& spec, const EllipticContext& ec);

// S-transformation consistency: the transformed block against the exact
// S-matrix column, and against the level-zero expansion.
struct STransformReport {
    Complex direct{};          // e^{...} tau^{...} u(lambda/tau, -1/tau)
    Complex via_matrix{};      // sum_m s_{m,n} u_m(lambda, tau)
    Complex via_level_zero{};  // e^{-i pi/4}/sqrt(2k) sum_m q^{-mn} u^{[0]}_m
    double rel_err_matrix = 0;
    double rel_err_level_zero = 0;
    double t_check_rel_err = 0; // u(lambda, tau+1) = q^{n^2/2} u(lambda, tau)
};
STransformReport s_transform_check(const IntegralSpec& spec, const EllipticContext& ec);

// Selberg integral by the Gamma-product formula.
double selberg(long p, double alpha, double beta, double gamma);

// Relative spread of u^{[p]}_{p+1} / theta1(lambda)^{p+1} over a lambda grid
// (constant when kappa = 2p+2).
double theta_power_ratio_spread(const IntegralSpec& spec, const EllipticContext& ec,
                                int grid_points = 20);

// ---------------------------------------------------------------------------
// Generic weighted simplex integrals; the elliptic integrands and the plain
// power-weight test case (Selberg oracle) share these.
// ---------------------------------------------------------------------------

// Weight of one integration variable on the segment [0, L].
struct SegmentWeight {
    Complex L;
    double e0 = 0, eL = 0;
    std::function<Complex(Complex)> reg0; // W(L z) (z)^{-e0}, local coord z in [0,1]
    std::function<Complex(Complex)> regL; // W(L(1-z)) z^{-eL}
    std::function<Complex(Complex)> mid;  // W(L z), z in (0,1) real
};

// Pair interaction P(t1 - t2). The domain corners where the pair argument
// can hit a zero are indexed, with a vanishing order and a regularized form
// per corner; z is always the physical offset from the corner's zero:
//   nested [0,L]:  0: P(z) z^{-g0};           1: P(L - z) z^{-g1}
//   product:       0: P(z) z^{-g0};           1: P(1 - z) z^{-g1};
//                  2: P(-tau + z) z^{-g2};    3: P(1 - tau - z) z^{-g3}
struct PairWeight {
    std::array<double, 4> g{0, 0, 0, 0};
    std::function<Complex(Complex)> mid; // P(delta) on the domain
    std::function<Complex(int, Complex)> reg;
};

// integral over the ordered simplex 0 <= t2 <= t1 <= L of
//   W(t1) W(t2) P(t1 - t2) S(t1 + t2)
BlockValue nested_simplex_integral(const SegmentWeight& w, const PairWeight& pair,
                                   const std::function<Complex(Complex)>& smooth,
                                   const QuadParams& outer, const QuadParams& inner);

// integral over [0, 1] x [0, tau] (independent segments) of
//   W1(t1) W2(t2) P(t1 - t2) S(t1 + t2)
BlockValue product_segments_integral(const SegmentWeight& w1, const SegmentWeight& w2,
                                     const PairWeight& pair,
                                     const std::function<Complex(Complex)>& smooth,
                                     const QuadParams& outer, const QuadParams& inner);

} // namespace torusblocks

#endif
