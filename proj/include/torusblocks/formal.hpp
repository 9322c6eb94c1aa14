#ifndef TORUSBLOCKS_FORMAL_HPP
#define TORUSBLOCKS_FORMAL_HPP

#include <string>
#include <vector>

#include "torusblocks/rational.hpp"

namespace torusblocks {

// Dense polynomial in a formal variable q over the rationals.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static QPoly constant(const Rational& r);
    static QPoly monomial(long deg, const Rational& r = Rational(1));

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lead() const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Division with remainder.
    static void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem);
    static QPoly gcd(QPoly a, QPoly b); // monic

    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Ratio of two polynomials in lowest terms with monic denominator, the
// generic-q scalar backend. Division never hits a vanished root-of-unity
// quantity here, which is what makes Gram-Schmidt safe.
class QRational {
public:
    QRational() : num_(), den_(QPoly::constant(Rational(1))) {}
    QRational(QPoly num, QPoly den);
    static QRational from_rational(const Rational& r);
    static QRational from_long(long v) { return from_rational(Rational(v)); }
    static QRational q_power(long e);

    bool is_zero() const { return num_.is_zero(); }
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    QRational operator-() const;
    friend QRational operator+(const QRational& a, const QRational& b);
    friend QRational operator-(const QRational& a, const QRational& b);
    friend QRational operator*(const QRational& a, const QRational& b);
    friend QRational operator/(const QRational& a, const QRational& b);
    bool operator==(const QRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRational& o) const { return !(*this == o); }

    std::string str() const;

private:
    void reduce();
    QPoly num_, den_;
};

struct FormalRing {
    using Scalar = QRational;
    Scalar q_power(long e) const { return QRational::q_power(e); }
    Scalar from_long(long v) const { return QRational::from_long(v); }
    Scalar one() const { return from_long(1); }
    Scalar zero() const { return Scalar(); }
    static bool is_zero(const Scalar& s) { return s.is_zero(); }
};

} // namespace torusblocks

#endif
