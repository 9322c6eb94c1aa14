#include "torusblocks/formal.hpp"

#include <sstream>

#include "torusblocks/errors.hpp"

namespace torusblocks {

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rational& r) {
    if (r == 0) return QPoly();
    return QPoly({r});
}

QPoly QPoly::monomial(long deg, const Rational& r) {
    if (r == 0) return QPoly();
    std::vector<Rational> c(deg + 1, Rational(0));
    c[deg] = r;
    return QPoly(std::move(c));
}

Rational QPoly::lead() const {
    if (c_.empty()) throw Error("lead of zero polynomial");
    return c_.back();
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(c));
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    std::vector<Rational> q(r.size() > b.c_.size() ? r.size() - b.c_.size() + 1 : 1, Rational(0));
    const Rational lead = b.c_.back();
    while (r.size() >= b.c_.size() && !r.empty()) {
        const std::size_t shift = r.size() - b.c_.size();
        Rational c = r.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[shift + i] -= c * b.c_[i];
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    quot = QPoly(std::move(q));
    rem = QPoly(std::move(r));
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    // normalize monic
    const Rational inv = 1 / a.lead();
    std::vector<Rational> c = a.coeffs();
    for (auto& x : c) x *= inv;
    return QPoly(std::move(c));
}

std::string QPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << to_string(c_[i]);
        if (i > 0) os << "*q^" << i;
        first = false;
    }
    return os.str();
}

QRational::QRational(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroError("zero denominator in QRational");
    reduce();
}

void QRational::reduce() {
    if (num_.is_zero()) {
        den_ = QPoly::constant(Rational(1));
        return;
    }
    QPoly g = QPoly::gcd(num_, den_);
    if (g.degree() > 0 || g.lead() != 1) {
        QPoly q, r;
        QPoly::divmod(num_, g, q, r);
        num_ = q;
        QPoly::divmod(den_, g, q, r);
        den_ = q;
    }
    // monic denominator gives a canonical form, so == is plain comparison
    const Rational lead = den_.lead();
    if (lead != 1) {
        std::vector<Rational> nc = num_.coeffs(), dc = den_.coeffs();
        for (auto& x : nc) x /= lead;
        for (auto& x : dc) x /= lead;
        num_ = QPoly(std::move(nc));
        den_ = QPoly(std::move(dc));
    }
}

QRational QRational::from_rational(const Rational& r) {
    return QRational(QPoly::constant(r), QPoly::constant(Rational(1)));
}

QRational QRational::q_power(long e) {
    if (e >= 0) return QRational(QPoly::monomial(e), QPoly::constant(Rational(1)));
    return QRational(QPoly::constant(Rational(1)), QPoly::monomial(-e));
}

QRational QRational::operator-() const {
    QRational r = *this;
    r.num_ = -r.num_;
    return r;
}

QRational operator+(const QRational& a, const QRational& b) {
    return QRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRational operator-(const QRational& a, const QRational& b) { return a + (-b); }

QRational operator*(const QRational& a, const QRational& b) {
    return QRational(a.num_ * b.num_, a.den_ * b.den_);
}

QRational operator/(const QRational& a, const QRational& b) {
    if (b.is_zero()) throw DivisionByZeroError("division by zero QRational");
    return QRational(a.num_ * b.den_, a.den_ * b.num_);
}

std::string QRational::str() const {
    if (den_ == QPoly::constant(Rational(1))) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

} // namespace torusblocks
