#ifndef TORUSBLOCKS_LAURENT_HPP
#define TORUSBLOCKS_LAURENT_HPP

#include <complex>
#include <map>

#include "torusblocks/cyclotomic.hpp"
#include "torusblocks/errors.hpp"
#include "torusblocks/formal.hpp"

namespace torusblocks {

template <class S>
struct ScalarOps {
    static bool is_zero(const S& s) { return s.is_zero(); }
    static bool is_zero_tol(const S& s, double) { return s.is_zero(); }
};

template <>
struct ScalarOps<std::complex<double>> {
    static bool is_zero(const std::complex<double>& s) { return s == std::complex<double>(); }
    static bool is_zero_tol(const std::complex<double>& s, double scale) {
        return std::abs(s) <= 1e-10 * scale;
    }
};

// Laurent polynomial in X = q^x: sum over d of c_d X^d. No zero coefficients
// are stored; x-even polynomials have c_d = c_{-d}.
template <class S>
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(long d, S v) {
        LaurentPoly r;
        r.set(d, std::move(v));
        return r;
    }

    const std::map<long, S>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    S coeff(long d) const {
        auto it = c_.find(d);
        return it == c_.end() ? S{} : it->second;
    }

    void set(long d, S v) {
        if (ScalarOps<S>::is_zero(v)) c_.erase(d);
        else c_[d] = std::move(v);
    }

    void add_to(long d, const S& v) {
        auto it = c_.find(d);
        if (it == c_.end()) {
            if (!ScalarOps<S>::is_zero(v)) c_[d] = v;
            return;
        }
        it->second = it->second + v;
        if (ScalarOps<S>::is_zero(it->second)) c_.erase(it);
    }

    long min_degree() const {
        if (c_.empty()) throw Error("degree of zero Laurent polynomial");
        return c_.begin()->first;
    }
    long max_degree() const {
        if (c_.empty()) throw Error("degree of zero Laurent polynomial");
        return c_.rbegin()->first;
    }

    bool is_x_even() const {
        for (const auto& [d, v] : c_) {
            auto it = c_.find(-d);
            if (it == c_.end() || !(it->second == v)) return false;
        }
        return true;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [d, v] : c_) r.c_[d] = -v;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [d, v] : b.c_) r.add_to(d, v);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        return a + (-b);
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [da, va] : a.c_)
            for (const auto& [db, vb] : b.c_) r.add_to(da + db, va * vb);
        return r;
    }
    LaurentPoly scaled(const S& s) const {
        LaurentPoly r;
        if (ScalarOps<S>::is_zero(s)) return r;
        for (const auto& [d, v] : c_) r.set(d, v * s);
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

private:
    std::map<long, S> c_;
};

// Exact Laurent division f / g; throws NondivisibleError on nonzero remainder.
// For the float backend a remainder below 1e-10 of the working scale counts
// as zero.
template <class S>
LaurentPoly<S> divide_exact(const LaurentPoly<S>& f, const LaurentPoly<S>& g) {
    if (g.is_zero()) throw DivisionByZeroError("Laurent division by zero");
    if (f.is_zero()) return {};
    LaurentPoly<S> rem = f;
    LaurentPoly<S> quot;
    const long gtop = g.max_degree();
    const S glead = g.coeff(gtop);
    double scale = 1.0;
    if constexpr (std::is_same_v<S, std::complex<double>>) {
        for (const auto& [d, v] : f.coeffs()) scale = std::max(scale, std::abs(v));
    }
    while (!rem.is_zero() && rem.max_degree() - rem.min_degree() >= gtop - g.min_degree()) {
        const long d = rem.max_degree() - gtop;
        const S c = rem.coeff(rem.max_degree()) / glead;
        quot.add_to(d, c);
        for (const auto& [dg, vg] : g.coeffs()) rem.add_to(d + dg, -(c * vg));
        if constexpr (std::is_same_v<S, std::complex<double>>) {
            // sweep float dust so the loop terminates
            LaurentPoly<S> clean;
            for (const auto& [dd, vv] : rem.coeffs())
                if (!ScalarOps<S>::is_zero_tol(vv, scale)) clean.set(dd, vv);
            rem = clean;
        }
    }
    if (!rem.is_zero()) throw NondivisibleError("Laurent division left a remainder");
    return quot;
}

// Substitute q^x -> q^m and sum.
template <class Ring>
typename Ring::Scalar evaluate_at(const Ring& r, const LaurentPoly<typename Ring::Scalar>& f,
                                  long m) {
    auto acc = r.zero();
    for (const auto& [d, v] : f.coeffs()) acc = acc + v * r.q_power(m * d);
    return acc;
}

} // namespace torusblocks

#endif
