#include "torusblocks/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <mutex>

#include "torusblocks/errors.hpp"

namespace torusblocks {

namespace {

using ZPoly = std::vector<mpz_class>;
using QPolyVec = std::vector<Rational>;

void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
void trim(QPolyVec& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Division with remainder over Q[x].
void divmod_q(const QPolyVec& a, const QPolyVec& b, QPolyVec& quot, QPolyVec& rem) {
    rem = a;
    trim(rem);
    quot.assign(rem.size() > b.size() ? rem.size() - b.size() + 1 : 1, Rational(0));
    const Rational lead = b.back();
    while (rem.size() >= b.size() && !rem.empty()) {
        const std::size_t shift = rem.size() - b.size();
        Rational c = rem.back() / lead;
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
        trim(rem);
    }
    trim(quot);
}

QPolyVec mul_q(const QPolyVec& a, const QPolyVec& b) {
    if (a.empty() || b.empty()) return {};
    QPolyVec r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// Extended Euclid over Q[x]: returns (g, u) with u*a = g mod m.
std::pair<QPolyVec, QPolyVec> xgcd_mod(const QPolyVec& a, const QPolyVec& m) {
    QPolyVec r0 = m, r1 = a;
    QPolyVec u0 = {}, u1 = {Rational(1)};
    trim(r1);
    while (!r1.empty()) {
        QPolyVec q, r2;
        divmod_q(r0, r1, q, r2);
        QPolyVec u2 = u0;
        QPolyVec qu = mul_q(q, u1);
        if (u2.size() < qu.size()) u2.resize(qu.size(), Rational(0));
        for (std::size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
        trim(u2);
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
    }
    return {r0, u0};
}

} // namespace

CycloField::CycloField(long order) : order_(order) {
    if (order < 1) throw RangeError("cyclotomic order must be positive");
    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d; all divisions stay in Z[x]
    // because every Phi_d is monic with integer coefficients.
    std::vector<ZPoly> phis(order + 1);
    for (long n = 1; n <= order; ++n) {
        if (order % n != 0) continue;
        ZPoly xn(n + 1, mpz_class(0));
        xn[0] = -1;
        xn[n] = 1;
        for (long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            const ZPoly& b = phis[d];
            ZPoly rem = xn;
            ZPoly quot(rem.size() - b.size() + 1, mpz_class(0));
            while (rem.size() >= b.size() && !rem.empty()) {
                const std::size_t shift = rem.size() - b.size();
                mpz_class c = rem.back(); // b is monic
                quot[shift] = c;
                for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
                trim(rem);
            }
            if (!rem.empty()) throw Error("cyclotomic polynomial division not exact");
            trim(quot);
            xn = std::move(quot);
        }
        phis[n] = std::move(xn);
    }
    phi_ = std::move(phis[order]);
}

std::shared_ptr<const CycloField> CycloField::get(long order) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const CycloField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const CycloField>(order);
    cache[order] = f;
    return f;
}

CycloScalar::CycloScalar(std::shared_ptr<const CycloField> f, std::vector<mpz_class> num,
                         mpz_class den)
    : field_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {
    reduce_mod_phi();
    normalize();
}

void CycloScalar::reduce_mod_phi() {
    if (!field_) { num_.clear(); return; }
    const auto& phi = field_->modulus();
    const long deg = field_->degree();
    trim(num_);
    while (static_cast<long>(num_.size()) > deg) {
        const std::size_t shift = num_.size() - phi.size();
        const mpz_class c = num_.back(); // phi is monic
        for (std::size_t i = 0; i < phi.size(); ++i) num_[shift + i] -= c * phi[i];
        trim(num_);
    }
}

void CycloScalar::normalize() {
    trim(num_);
    if (num_.empty()) { den_ = 1; return; }
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    mpz_class g = den_;
    for (const auto& c : num_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1) {
        den_ /= g;
        for (auto& c : num_) c /= g;
    }
}

CycloScalar CycloScalar::zero(std::shared_ptr<const CycloField> f) {
    return CycloScalar(std::move(f), {}, 1);
}

CycloScalar CycloScalar::one(std::shared_ptr<const CycloField> f) {
    return CycloScalar(std::move(f), {mpz_class(1)}, 1);
}

CycloScalar CycloScalar::from_rational(std::shared_ptr<const CycloField> f, const Rational& r) {
    if (r == 0) return zero(std::move(f));
    return CycloScalar(std::move(f), {r.get_num()}, r.get_den());
}

CycloScalar CycloScalar::from_long(std::shared_ptr<const CycloField> f, long v) {
    if (v == 0) return zero(std::move(f));
    return CycloScalar(std::move(f), {mpz_class(v)}, 1);
}

CycloScalar CycloScalar::root_of_unity(std::shared_ptr<const CycloField> f, long j) {
    const long n = f->order();
    j %= n;
    if (j < 0) j += n;
    std::vector<mpz_class> c(j + 1, mpz_class(0));
    c[j] = 1;
    return CycloScalar(std::move(f), std::move(c), 1);
}

Rational CycloScalar::rational_value() const {
    if (num_.empty()) return Rational(0);
    if (num_.size() != 1) throw Error("scalar is not rational");
    Rational r(num_[0], den_);
    r.canonicalize();
    return r;
}

std::vector<Rational> CycloScalar::coeffs() const {
    std::vector<Rational> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
        Rational r(c, den_);
        r.canonicalize();
        out.push_back(std::move(r));
    }
    return out;
}

namespace {
const std::shared_ptr<const CycloField>& common_field(const CycloScalar& a, const CycloScalar& b) {
    if (!a.field()) return b.field();
    if (!b.field()) return a.field();
    if (a.field()->order() != b.field()->order())
        throw OrderMismatchError("mixed cyclotomic orders " + std::to_string(a.field()->order()) +
                                 " and " + std::to_string(b.field()->order()));
    return a.field();
}
} // namespace

CycloScalar CycloScalar::operator-() const {
    CycloScalar r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
    field_ = common_field(*this, o);
    if (o.num_.empty()) return *this;
    if (num_.empty()) { num_ = o.num_; den_ = o.den_; return *this; }
    if (num_.size() < o.num_.size()) num_.resize(o.num_.size(), mpz_class(0));
    if (den_ == o.den_) {
        for (std::size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i];
    } else {
        for (auto& c : num_) c *= o.den_;
        for (std::size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i] * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) { return *this += -o; }

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) {
    field_ = common_field(*this, o);
    if (num_.empty() || o.num_.empty()) { num_.clear(); den_ = 1; return *this; }
    std::vector<mpz_class> prod(num_.size() + o.num_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        for (std::size_t j = 0; j < o.num_.size(); ++j) {
            if (o.num_[j] == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
        }
    }
    num_ = std::move(prod);
    den_ *= o.den_;
    reduce_mod_phi();
    normalize();
    return *this;
}

CycloScalar& CycloScalar::operator/=(const CycloScalar& o) { return *this *= o.inverse(); }

bool CycloScalar::operator==(const CycloScalar& o) const {
    if (!field_ || !o.field_) return num_ == o.num_; // one side is a bare zero
    if (field_->order() != o.field_->order()) return false;
    return den_ == o.den_ && num_ == o.num_;
}

CycloScalar CycloScalar::inverse() const {
    if (!field_ || num_.empty()) throw DivisionByZeroError("inverse of zero cyclotomic scalar");
    // Galois-norm inversion: with P = prod over the nontrivial automorphisms
    // sigma_j (j coprime to N) of sigma_j(B), B P = Norm(B) is rational, so
    // B^{-1} = P / Norm(B). Integer arithmetic throughout, one division.
    const long n = field_->order();
    CycloScalar prod = one(field_);
    for (long j = 2; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        std::vector<mpz_class> mapped(n, mpz_class(0));
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0) continue;
            mapped[(static_cast<long>(i) * j) % n] += num_[i];
        }
        prod *= CycloScalar(field_, std::move(mapped), 1);
    }
    CycloScalar norm = prod;
    norm *= CycloScalar(field_, num_, 1);
    if (!norm.is_rational() || norm.is_zero())
        throw Error("norm computation failed in cyclotomic inverse");
    const Rational scale = Rational(den_) / norm.rational_value();
    return prod * from_rational(field_, scale);
}

CycloScalar CycloScalar::pow(long e) const {
    if (!field_) {
        if (e <= 0) throw DivisionByZeroError("0^e with e <= 0");
        return CycloScalar();
    }
    CycloScalar base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    CycloScalar acc = one(field_);
    while (k) {
        if (k & 1ul) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::complex<double> CycloScalar::embed() const {
    if (num_.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(field_->order());
    const long double den = mpz_get_d(den_.get_mpz_t());
    long double re = 0, im = 0;
    for (std::size_t j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        const long double c = mpz_get_d(num_[j].get_mpz_t());
        const long double ang = 2.0L * M_PIl * static_cast<long double>(j) / n;
        re += c * cosl(ang);
        im += c * sinl(ang);
    }
    return {static_cast<double>(re / den), static_cast<double>(im / den)};
}

CycloScalar sqrt_cyclotomic(long m, std::shared_ptr<const CycloField> f) {
    if (m <= 0) throw RangeError("sqrt_cyclotomic requires positive m");
    const long n = f->order();
    if (n % (4 * m) != 0)
        throw OrderMismatchError("order " + std::to_string(n) + " not divisible by 4m = " +
                                 std::to_string(4 * m));
    // Quadratic Gauss sum of order 4m equals (1+i) sqrt(4m) = 2 (1+i) sqrt(m).
    const long step = n / (4 * m);
    CycloScalar g = CycloScalar::zero(f);
    for (long j = 0; j < 4 * m; ++j)
        g += CycloScalar::root_of_unity(f, step * ((j * j) % (4 * m)));
    const CycloScalar i_unit = CycloScalar::root_of_unity(f, n / 4);
    const CycloScalar denom = (CycloScalar::one(f) + i_unit) * CycloScalar::from_long(f, 2);
    return g / denom;
}

} // namespace torusblocks
