#ifndef TORUSBLOCKS_MACDONALD_HPP
#define TORUSBLOCKS_MACDONALD_HPP

#include "torusblocks/laurent.hpp"
#include "torusblocks/qcontext.hpp"

namespace torusblocks {

// <f,g> = 1/2 ConstTerm( f g prod_{j=0}^{k-1} (1 - q^{2(j+x)})(1 - q^{2(j-x)}) ),
// where q^{2(j+-x)} = q^{2j} (q^x)^{+-2}.
template <class Ring>
typename Ring::Scalar inner_product(const Ring& r,
                                    const LaurentPoly<typename Ring::Scalar>& f,
                                    const LaurentPoly<typename Ring::Scalar>& g, long k) {
    using P = LaurentPoly<typename Ring::Scalar>;
    if (k < 0) throw RangeError("inner_product needs k >= 0");
    P w = P::monomial(0, r.one());
    for (long j = 0; j < k; ++j) {
        P up = P::monomial(0, r.one()) - P::monomial(2, r.q_power(2 * j));
        P dn = P::monomial(0, r.one()) - P::monomial(-2, r.q_power(2 * j));
        w = w * up * dn;
    }
    const auto ct = (f * g * w).coeff(0);
    return ct / r.from_long(2);
}

// Macdonald polynomial P_n^{(k)} by Gram-Schmidt against the level-k inner
// product: top term q^{nx} + q^{-nx} (1 for n = 0), orthogonal to all lower
// degrees. Run this on the generic-q backend where no denominator vanishes.
template <class Ring>
LaurentPoly<typename Ring::Scalar> macdonald_gram_schmidt(const Ring& r, long n, long k) {
    using P = LaurentPoly<typename Ring::Scalar>;
    if (n < 0 || k < 0) throw RangeError("macdonald indices must be non-negative");
    std::vector<P> basis;
    for (long j = 0; j <= n; ++j) {
        P m = j == 0 ? P::monomial(0, r.one())
                     : P::monomial(j, r.one()) + P::monomial(-j, r.one());
        for (long i = 0; i < j; ++i) {
            const auto num = inner_product(r, m, basis[i], k);
            const auto den = inner_product(r, basis[i], basis[i], k);
            if (Ring::is_zero(den)) throw DivisionByZeroError("Gram-Schmidt norm vanished");
            m = m - basis[i].scaled(num / den);
        }
        basis.push_back(std::move(m));
    }
    return basis.back();
}

// D f(x) = (f(x-1) - f(x+1)) / (q^x - q^{-x}); maps x-even to x-even and
// raises the Macdonald level.
template <class Ring>
LaurentPoly<typename Ring::Scalar> shift_apply(const Ring& r,
                                               const LaurentPoly<typename Ring::Scalar>& f) {
    using P = LaurentPoly<typename Ring::Scalar>;
    P num;
    for (const auto& [d, v] : f.coeffs())
        num.add_to(d, v * (r.q_power(-d) - r.q_power(d)));
    P den = P::monomial(1, r.one()) - P::monomial(-1, r.one());
    return divide_exact(num, den);
}

// P_n^{(k)} from P_{n+k}^{(0)} by k applications of the shift operator,
// dividing by (q^{-m} - q^m) for m = n+k, ..., n+1 along the way. This is the
// construction that stays valid at roots of unity (all m < kappa).
template <class Ring>
LaurentPoly<typename Ring::Scalar> macdonald_via_shift(const Ring& r, long n, long k) {
    using P = LaurentPoly<typename Ring::Scalar>;
    if (n < 0 || k < 0) throw RangeError("macdonald indices must be non-negative");
    const long top = n + k;
    P f = top == 0 ? P::monomial(0, r.one())
                   : P::monomial(top, r.one()) + P::monomial(-top, r.one());
    for (long m = top; m > n; --m) {
        f = shift_apply(r, f);
        const auto div = r.q_power(-m) - r.q_power(m);
        if (Ring::is_zero(div))
            throw VanishingDivisorError("q^{-m} - q^m = 0 at m = " + std::to_string(m));
        const auto inv = r.one() / div;
        f = f.scaled(inv);
    }
    return f;
}

// Specialize a generic-q polynomial at q = exp(pi i / kappa). Valid whenever
// every coefficient, in lowest terms, has a nonvanishing denominator there.
LaurentPoly<CycloScalar> specialize(const QContext& ctx, const LaurentPoly<QRational>& f);

// Evaluate a QPoly at the root of unity.
CycloScalar specialize_poly(const QContext& ctx, const QPoly& p);

// Shared table of generic-q Macdonald polynomials (they do not depend on
// kappa). Specialization per context happens on top of this.
class MacdonaldTable {
public:
    static const LaurentPoly<QRational>& formal(long n, long k);

    // Root-of-unity P_n^{(k)}: shift-operator construction when n + k < kappa,
    // otherwise specialization of the generic-q polynomial.
    static LaurentPoly<CycloScalar> at_root_of_unity(const QContext& ctx, long n, long k);
};

} // namespace torusblocks

#endif
