#ifndef TORUSBLOCKS_QCONTEXT_HPP
#define TORUSBLOCKS_QCONTEXT_HPP

#include <complex>

#include "torusblocks/cyclotomic.hpp"
#include "torusblocks/errors.hpp"

namespace torusblocks {

// Root-of-unity working context: q = exp(pi i / kappa) realized exactly as
// zeta_{8 kappa}^4. The order 8 kappa also contains q^{1/2}, exp(-pi i/4)
// and, through the Gauss sum, sqrt(2 kappa).
struct QContext {
    long kappa = 0;
    long p = 0;
    std::shared_ptr<const CycloField> field;

    QContext(long kappa_, long p_ = 0) : kappa(kappa_), p(p_) {
        if (kappa < 2) throw RangeError("kappa must be >= 2");
        if (p < 0) throw RangeError("p must be >= 0");
        if (kappa < 2 * p + 2) throw RangeError("need kappa >= 2p+2");
        field = CycloField::get(8 * kappa);
    }

    long order() const { return 8 * kappa; }

    CycloScalar zeta(long j) const { return CycloScalar::root_of_unity(field, j); }
    // q^e
    CycloScalar q_pow(long e) const { return zeta(4 * e); }
    // q^{e/2} with the principal half-integer branch q^{1/2} = zeta_{4 kappa}
    CycloScalar q_half_pow(long e) const { return zeta(2 * e); }
    CycloScalar q() const { return q_pow(1); }

    CycloScalar from_long(long v) const { return CycloScalar::from_long(field, v); }
    CycloScalar one() const { return CycloScalar::one(field); }
    CycloScalar zero() const { return CycloScalar::zero(field); }

    // exp(+- pi i/4) and i as exact roots of unity
    CycloScalar e_pi_i_4(long sign = +1) const { return zeta(sign * kappa); }
    CycloScalar imag_unit() const { return zeta(2 * kappa); }

    CycloScalar sqrt_two_kappa() const { return sqrt_cyclotomic(2 * kappa, field); }
};

// Scalar-ring adapters. The q-combinatorics below and the Macdonald layer are
// written once against this duck-typed interface.
struct CycloRing {
    QContext ctx;
    using Scalar = CycloScalar;
    explicit CycloRing(QContext c) : ctx(std::move(c)) {}
    Scalar q_power(long e) const { return ctx.q_pow(e); }
    Scalar from_long(long v) const { return ctx.from_long(v); }
    Scalar one() const { return ctx.one(); }
    Scalar zero() const { return ctx.zero(); }
    static bool is_zero(const Scalar& s) { return s.is_zero(); }
};

// Floating-point backend at q = exp(pi i / kappa) (or any fixed log q).
struct ComplexRing {
    std::complex<double> log_q;
    using Scalar = std::complex<double>;
    static ComplexRing root_of_unity(long kappa) {
        return ComplexRing{std::complex<double>(0.0, M_PI / static_cast<double>(kappa))};
    }
    Scalar q_power(long e) const { return std::exp(log_q * static_cast<double>(e)); }
    Scalar q_power_c(std::complex<double> e) const { return std::exp(log_q * e); }
    Scalar from_long(long v) const { return Scalar(static_cast<double>(v), 0.0); }
    Scalar one() const { return Scalar(1.0, 0.0); }
    Scalar zero() const { return Scalar(0.0, 0.0); }
    static bool is_zero(const Scalar& s) { return std::abs(s) < 1e-12; }
};

// [n] = (q^n - q^{-n}) / (q - q^{-1}), computed as the division-free
// geometric sum q^{n-1} + q^{n-3} + ... + q^{1-n}.
template <class Ring>
typename Ring::Scalar q_int(const Ring& r, long n) {
    const bool neg = n < 0;
    if (neg) n = -n;
    auto acc = r.zero();
    for (long i = 0; i < n; ++i) acc = acc + r.q_power(n - 1 - 2 * i);
    return neg ? -acc : acc;
}

// [n]! = [1][2]...[n], with [0]! = 1
template <class Ring>
typename Ring::Scalar q_factorial(const Ring& r, long n) {
    if (n < 0) throw RangeError("q_factorial of negative argument");
    auto acc = r.one();
    for (long i = 1; i <= n; ++i) acc = acc * q_int(r, i);
    return acc;
}

// [n]! / ([j]! [n-j]!)
template <class Ring>
typename Ring::Scalar q_binomial(const Ring& r, long n, long j) {
    if (j < 0 || j > n) throw RangeError("q_binomial needs 0 <= j <= n");
    auto den = q_factorial(r, j) * q_factorial(r, n - j);
    if (Ring::is_zero(den))
        throw DivisionByZeroError("q-factorial vanished in q_binomial(" + std::to_string(n) +
                                  "," + std::to_string(j) + "); kappa too small");
    return q_factorial(r, n) / den;
}

// (n,q)_j = [n][n+1]...[n+j-1], empty product for j = 0
template <class Ring>
typename Ring::Scalar q_pochhammer(const Ring& r, long n, long j) {
    if (j < 0) throw RangeError("q_pochhammer needs j >= 0");
    auto acc = r.one();
    for (long i = 0; i < j; ++i) acc = acc * q_int(r, n + i);
    return acc;
}

} // namespace torusblocks

#endif
