#ifndef TORUSBLOCKS_CYCLOTOMIC_HPP
#define TORUSBLOCKS_CYCLOTOMIC_HPP

#include <complex>
#include <memory>
#include <vector>

#include "torusblocks/rational.hpp"

namespace torusblocks {

// The cyclotomic field Q(zeta_N). Elements are polynomials in zeta_N reduced
// modulo the N-th cyclotomic polynomial Phi_N, so zero-testing is canonical.
class CycloField {
public:
    explicit CycloField(long order);

    long order() const { return order_; }
    long degree() const { return static_cast<long>(phi_.size()) - 1; }

    // Monic Phi_N with integer coefficients, coefficient of x^i at index i.
    const std::vector<mpz_class>& modulus() const { return phi_; }

    // Shared per-order instances so repeated contexts reuse the modulus.
    static std::shared_ptr<const CycloField> get(long order);

private:
    long order_;
    std::vector<mpz_class> phi_;
};

// Exact element of Q(zeta_N), stored as an integer coefficient vector over a
// single positive denominator. Phi_N is monic over Z, so products reduce
// without leaving the integral form; rational bookkeeping is one gcd per op.
class CycloScalar {
public:
    // Default-constructed scalars are the exact zero of an as-yet-unknown
    // order; they combine with scalars of any order.
    CycloScalar() : den_(1) {}

    static CycloScalar zero(std::shared_ptr<const CycloField> f);
    static CycloScalar one(std::shared_ptr<const CycloField> f);
    static CycloScalar from_rational(std::shared_ptr<const CycloField> f, const Rational& r);
    static CycloScalar from_long(std::shared_ptr<const CycloField> f, long v);
    // zeta_N^j, any integer j (reduced mod N).
    static CycloScalar root_of_unity(std::shared_ptr<const CycloField> f, long j);

    const std::shared_ptr<const CycloField>& field() const { return field_; }
    bool is_zero() const { return num_.empty(); }
    bool is_rational() const { return num_.size() <= 1; }
    // Valid only when is_rational().
    Rational rational_value() const;

    // Coefficients in the reduced basis 1, zeta, ..., zeta^{deg-1} as exact
    // rationals in lowest terms (materialized on demand).
    std::vector<Rational> coeffs() const;

    CycloScalar operator-() const;
    CycloScalar& operator+=(const CycloScalar& o);
    CycloScalar& operator-=(const CycloScalar& o);
    CycloScalar& operator*=(const CycloScalar& o);
    CycloScalar& operator/=(const CycloScalar& o);

    friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
    friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
    friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
    friend CycloScalar operator/(CycloScalar a, const CycloScalar& b) { return a /= b; }

    bool operator==(const CycloScalar& o) const;
    bool operator!=(const CycloScalar& o) const { return !(*this == o); }

    CycloScalar inverse() const;
    CycloScalar pow(long e) const;

    // Numerical embedding zeta_N -> exp(2 pi i / N).
    std::complex<double> embed() const;

private:
    CycloScalar(std::shared_ptr<const CycloField> f, std::vector<mpz_class> num, mpz_class den);
    void reduce_mod_phi();
    void normalize();

    std::shared_ptr<const CycloField> field_;
    std::vector<mpz_class> num_;
    mpz_class den_;
};

// Exact square root of a positive integer m inside Q(zeta_N), N = 0 mod 4m,
// realized through the quadratic Gauss sum of order 4m. The result squares
// to m exactly and embeds to the positive real root.
CycloScalar sqrt_cyclotomic(long m, std::shared_ptr<const CycloField> f);

} // namespace torusblocks

#endif
