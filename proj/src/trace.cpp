#include "torusblocks/trace.hpp"

#include <algorithm>
#include <cmath>

#include "torusblocks/macdonald.hpp"
#include "torusblocks/modular.hpp"

namespace torusblocks {

namespace {

// [k+j]! / ([j]! [k-j]!) as an exact scalar; brackets are invariant under
// q -> 1/q so the base sign does not matter here.
CycloScalar trace_binomial(const QContext& ctx, long k, long j) {
    CycloRing r(ctx);
    return q_factorial(r, k + j) / (q_factorial(r, j) * q_factorial(r, k - j));
}

} // namespace

CycloScalar psi_exact(const QContext& ctx, long k, long nu, long mu, int base_sign) {
    if (k < 0) throw RangeError("psi needs k >= 0");
    auto Q = [&](long e) { return ctx.q_pow(base_sign * e); };
    const CycloScalar qdiff = Q(1) - Q(-1);
    // pulling the (q - q^{-1}) factors out of the brackets leaves one
    // division per term: term_j = +- c_{kj} Q^{...} qdiff^j / prod(Q^x - Q^{-x})
    CycloScalar sum = ctx.zero();
    for (long j = 0; j <= k; ++j) {
        CycloScalar den = ctx.one();
        for (long l = 0; l <= j - 1; ++l) {
            if ((mu - l) % ctx.kappa == 0)
                throw PoleError("[mu - " + std::to_string(l) + "] vanishes at mu = " +
                                std::to_string(mu));
            den *= Q(mu - l) - Q(-(mu - l));
        }
        for (long l = 0; l <= j; ++l) {
            if ((nu - l) % ctx.kappa == 0)
                throw PoleError("[nu - " + std::to_string(l) + "] vanishes at nu = " +
                                std::to_string(nu));
            den *= Q(nu - l) - Q(-(nu - l));
        }
        CycloScalar term = trace_binomial(ctx, k, j) * Q(j * (j - 3) / 2) *
                           Q(-j * mu - (j - 1) * nu) * qdiff.pow(j) / den;
        if (j % 2 == 1) term = -term;
        sum += term;
    }
    return Q(nu * mu) * sum;
}

CycloScalar psi_renormalized_exact(const QContext& ctx, long k, long nu, long mu,
                                   int base_sign) {
    if (k < 0) throw RangeError("psi needs k >= 0");
    auto Q = [&](long e) { return ctx.q_pow(base_sign * e); };
    const CycloScalar qdiff = Q(1) - Q(-1);

    // shared nu-denominator: prod_{i=1}^{k} (Q^{nu+i} - Q^{-nu-i})
    CycloScalar nu_shift = ctx.one();
    for (long i = 1; i <= k; ++i) {
        if ((nu + i) % ctx.kappa == 0)
            throw PoleError("[nu + " + std::to_string(i) + "] vanishes at nu = " +
                            std::to_string(nu));
        nu_shift *= Q(nu + i) - Q(-(nu + i));
    }

    CycloScalar sum = ctx.zero();
    for (long j = 0; j <= k; ++j) {
        CycloScalar num = ctx.one();
        for (long l = j; l <= k - 1; ++l) num *= Q(mu - l) - Q(-(mu - l));
        CycloScalar den = nu_shift;
        for (long l = 0; l <= j; ++l) {
            if ((nu - l) % ctx.kappa == 0)
                throw PoleError("[nu - " + std::to_string(l) + "] vanishes at nu = " +
                                std::to_string(nu));
            den *= Q(nu - l) - Q(-(nu - l));
        }
        CycloScalar term = trace_binomial(ctx, k, j) * Q(j * (j - 3) / 2) *
                           Q(-j * mu - (j - 1) * nu) * qdiff.pow(j) * num / den;
        if (j % 2 == 1) term = -term;
        sum += term;
    }
    return Q(nu * mu) * sum;
}

bool trace_f_identity(const QContext& ctx, long k, long m, long n) {
    if (k < 0 || k > ctx.p) throw RangeError("trace_f_identity needs 0 <= k <= p");
    const auto ms = f_admissible_m(ctx, k);
    if (std::find(ms.begin(), ms.end(), m) == ms.end())
        throw RangeError("trace_f_identity: m outside the admissible range");
    CycloRing r(ctx);
    const CycloScalar lhs = f_coeff(ctx, k, m, n);
    CycloScalar rhs = ctx.q_pow(ctx.p * n - k * m - k * (k + 1));
    rhs *= ctx.q_pow(m + ctx.p - k) - ctx.q_pow(-(m + ctx.p - k));
    rhs = rhs / q_binomial(r, ctx.p, k);
    rhs *= psi_renormalized_exact(ctx, k, -m - ctx.p + k, -n - 1, -1);
    return lhs == rhs;
}

bool macdonald_trace_identity(const QContext& ctx, long k, long m, long n) {
    if (k < 0 || ctx.kappa < 2 * k + 2 || n < k + 1 || n > ctx.kappa ||
        m < -ctx.p + 2 * k + 1 || m > ctx.kappa - ctx.p - 1)
        throw RangeError("macdonald_trace_identity index out of range");
    CycloRing r(ctx);
    const long nu = -m - ctx.p + k;
    const CycloScalar lhs = psi_renormalized_exact(ctx, k, nu, n - 1, -1) -
                            psi_renormalized_exact(ctx, k, nu, -n - 1, -1);
    const auto poly = MacdonaldTable::at_root_of_unity(ctx, n - k - 1, k + 1);
    CycloScalar rhs = evaluate_at(r, poly, m + ctx.p - k);
    for (long j = 1; j <= k; ++j) rhs *= ctx.q_pow(-n + 2 * j) - ctx.q_pow(n);
    return lhs == rhs;
}

bool psi_shift_identity(const QContext& ctx, long k, long m, long n) {
    if (k < 0) throw RangeError("psi_shift_identity needs k >= 0");
    if (m % ctx.kappa == 0) throw PoleError("shift divisor [m] vanishes");
    const CycloScalar num = psi_renormalized_exact(ctx, k, m - 1, n, -1) -
                            psi_renormalized_exact(ctx, k, m + 1, n, -1);
    const CycloScalar lhs = num / (ctx.q_pow(m) - ctx.q_pow(-m));
    const CycloScalar rhs = ctx.q_pow(-k - 1) * psi_renormalized_exact(ctx, k + 1, m, n, -1);
    return lhs == rhs;
}

std::pair<CycloScalar, CycloScalar> phi21_terminating(const QContext& ctx, long k, long j,
                                                      long m) {
    if (j < 0 || j > k) throw RangeError("phi21 needs 0 <= j <= k");
    CycloRing r(ctx);
    const long a = m + ctx.p; // arguments enter through m + p only

    CycloScalar sum = ctx.zero();
    for (long i = 0; i <= k - j; ++i) {
        auto den = q_factorial(r, i) * q_pochhammer(r, a - k + 1, i);
        if (den.is_zero())
            throw DivisionByZeroError("phi21 denominator vanished at i = " + std::to_string(i));
        sum += ctx.q_pow(-i * (a - k - j - 1)) * q_pochhammer(r, k + 1, i) *
               q_pochhammer(r, j - k, i) / den;
    }

    auto closed_den = q_pochhammer(r, a - k - j, k + 1);
    if (closed_den.is_zero())
        throw DivisionByZeroError("phi21 closed-form denominator vanished");
    CycloScalar closed =
        ctx.q_pow((k - j) * (k + 1)) * q_pochhammer(r, a - 2 * k, k + 1) / closed_den;
    return {sum, closed};
}

// ---------------------------------------------------------------------------
// float backend
// ---------------------------------------------------------------------------

namespace {

Complex qpow(Complex log_q, Complex e) { return std::exp(log_q * e); }

Complex bracket(Complex log_q, Complex x) {
    return (qpow(log_q, x) - qpow(log_q, -x)) / (qpow(log_q, 1) - qpow(log_q, -1));
}

Complex trace_binomial_float(Complex log_q, long k, long j) {
    Complex acc(1.0, 0.0);
    for (long i = 1; i <= k + j; ++i) acc *= bracket(log_q, static_cast<double>(i));
    for (long i = 1; i <= j; ++i) acc /= bracket(log_q, static_cast<double>(i));
    for (long i = 1; i <= k - j; ++i) acc /= bracket(log_q, static_cast<double>(i));
    return acc;
}

} // namespace

Complex psi_float(Complex log_q, long k, Complex nu, Complex mu) {
    const Complex qdiff = qpow(log_q, 1) - qpow(log_q, -1);
    Complex sum(0.0, 0.0);
    for (long j = 0; j <= k; ++j) {
        Complex den(1.0, 0.0);
        for (long l = 0; l <= j - 1; ++l) den *= bracket(log_q, mu - static_cast<double>(l));
        for (long l = 0; l <= j; ++l) den *= bracket(log_q, nu - static_cast<double>(l));
        if (std::abs(den) < 1e-250) throw PoleError("psi_float hit a vanishing bracket");
        Complex term = trace_binomial_float(log_q, k, j) *
                       qpow(log_q, static_cast<double>(j * (j - 3)) / 2.0) *
                       qpow(log_q, -static_cast<double>(j) * mu -
                                       static_cast<double>(j - 1) * nu) /
                       std::pow(qdiff, static_cast<double>(j + 1)) / den;
        if (j % 2 == 1) term = -term;
        sum += term;
    }
    return qpow(log_q, nu * mu) * sum;
}

Complex psi_renormalized_float(Complex log_q, long k, Complex nu, Complex mu) {
    auto Q = [&](Complex e) { return qpow(log_q, e); };
    const Complex qdiff = Q(1) - Q(-1);
    Complex nu_shift(1.0, 0.0);
    for (long i = 1; i <= k; ++i)
        nu_shift *= Q(nu + static_cast<double>(i)) - Q(-nu - static_cast<double>(i));
    Complex sum(0.0, 0.0);
    for (long j = 0; j <= k; ++j) {
        Complex num(1.0, 0.0);
        for (long l = j; l <= k - 1; ++l)
            num *= Q(mu - static_cast<double>(l)) - Q(-mu + static_cast<double>(l));
        Complex den = nu_shift;
        for (long l = 0; l <= j; ++l)
            den *= Q(nu - static_cast<double>(l)) - Q(-nu + static_cast<double>(l));
        if (std::abs(den) < 1e-250) throw PoleError("psi_renormalized_float vanishing bracket");
        Complex term = trace_binomial_float(log_q, k, j) *
                       qpow(log_q, static_cast<double>(j * (j - 3)) / 2.0) *
                       Q(-static_cast<double>(j) * mu - static_cast<double>(j - 1) * nu) *
                       std::pow(qdiff, static_cast<double>(j)) * num / den;
        if (j % 2 == 1) term = -term;
        sum += term;
    }
    return Q(nu * mu) * sum;
}

Complex psi_renormalized_product_route(Complex log_q, long k, Complex nu, Complex mu) {
    auto Q = [&](Complex e) { return qpow(log_q, e); };
    Complex pref(1.0, 0.0);
    for (long j = 1; j <= k; ++j) {
        const Complex den = Q(nu + static_cast<double>(j)) - Q(-nu - static_cast<double>(j));
        pref *= (Q(mu + 1.0 - static_cast<double>(j)) - Q(-mu - 1.0 + static_cast<double>(j))) /
                den;
    }
    return pref * psi_float(log_q, k, nu, mu);
}

// ---------------------------------------------------------------------------
// Verma oracle
// ---------------------------------------------------------------------------

VermaModel make_verma_model(Complex q, Complex mu, long k, long truncation) {
    if (k < 0 || truncation < 1) throw RangeError("bad Verma model parameters");
    VermaModel m;
    m.q = q;
    m.mu = mu;
    m.k = k;
    m.truncation = truncation;
    const long n = truncation + 1;
    const Complex log_q = std::log(q);
    auto brk = [&](Complex x) { return bracket(log_q, x); };

    m.E.assign(n, std::vector<Complex>(n));
    m.F.assign(n, std::vector<Complex>(n));
    m.qh.assign(n, std::vector<Complex>(n));
    for (long j = 0; j < n; ++j) {
        m.qh[j][j] = qpow(log_q, mu - 2.0 * static_cast<double>(j));
        if (j + 1 < n) m.F[j + 1][j] = 1.0; // F F^j v = F^{j+1} v
        if (j >= 1) m.E[j - 1][j] = brk(static_cast<double>(j)) *
                                    brk(mu - static_cast<double>(j) + 1.0);
    }

    const long d = 2 * k + 1;
    m.EU.assign(d, std::vector<Complex>(d));
    m.FU.assign(d, std::vector<Complex>(d));
    for (long r = 0; r < d; ++r) {
        if (r + 1 < d) m.FU[r + 1][r] = 1.0; // u_r has weight 2k - 2r
        if (r >= 1)
            m.EU[r - 1][r] = brk(static_cast<double>(r)) *
                             brk(static_cast<double>(2 * k - r + 1));
    }
    m.zero_weight_index = k;
    return m;
}

Complex verma_trace_oracle(long k, Complex nu, Complex mu, Complex q, long truncation,
                           double* tail_estimate) {
    if (k < 0 || truncation < 1) throw RangeError("bad oracle parameters");
    const Complex log_q = std::log(q);
    const double ratio = std::abs(qpow(log_q, -2.0 * nu));
    if (ratio >= 1.0)
        throw ConvergenceError("graded trace diverges: |q^{-2 nu}| = " + std::to_string(ratio));
    auto brk = [&](Complex x) { return bracket(log_q, x); };

    // Intertwiner on the highest-weight vector: Phi v = sum_j F^j v (x) w_j
    // with w_0 = u = u_k and the coefficients forced by Delta(E) Phi v = 0,
    //   w_{j+1} = -E w_j / ([j+1][mu-j] q^{2j+2}).
    // state[j][r] tracks Phi(F^i v) expanded over F^j v (x) u_r.
    const long d = 2 * k + 1;
    std::vector<std::vector<Complex>> state(truncation + 2, std::vector<Complex>(d));
    {
        Complex coef(1.0, 0.0);
        state[0][k] = 1.0;
        for (long j = 1; j <= k; ++j) {
            // E u_{k-j+1} = [k-j+1][k+j] u_{k-j}
            coef *= -brk(static_cast<double>(k - j + 1)) * brk(static_cast<double>(k + j));
            coef /= brk(static_cast<double>(j)) * brk(mu - static_cast<double>(j) + 1.0);
            coef *= qpow(log_q, -2.0 * static_cast<double>(j));
            state[j][k - j] = coef;
        }
    }

    Complex trace(0.0, 0.0);
    Complex last_term(0.0, 0.0);
    for (long i = 0; i <= truncation; ++i) {
        const Complex diag = state[i][k];
        last_term = qpow(log_q, nu * (mu - 2.0 * static_cast<double>(i))) * diag;
        trace += last_term;
        // one application of Delta(F) = F (x) 1 + q^{-h} (x) F; descending
        // loops so the old state is read before it is overwritten. Occupied
        // rows reach j = i + k before the step.
        if (i < truncation) {
            for (long j = std::min(i + 1 + k, truncation + 1); j >= 0; --j)
                for (long r = d - 1; r >= 0; --r) {
                    Complex v(0.0, 0.0);
                    if (j >= 1) v += state[j - 1][r];
                    if (r >= 1)
                        v += state[j][r - 1] *
                             qpow(log_q, -(mu - 2.0 * static_cast<double>(j)));
                    state[j][r] = v;
                }
        }
    }
    if (tail_estimate) *tail_estimate = std::abs(last_term) * ratio / (1.0 - ratio);
    return trace;
}

ConventionReport calibrate_convention(Complex q, Complex nu, Complex mu, long k_max,
                                      long truncation) {
    const Complex log_q = std::log(q);
    ConventionReport rep;
    for (long k = 0; k <= k_max; ++k) {
        const Complex oracle = verma_trace_oracle(k, nu, mu, q, truncation);
        const Complex psi = psi_float(log_q, k, nu, mu);
        const Complex ratio = psi / oracle;
        const double c = std::real(std::log(ratio) / (nu * log_q));
        rep.per_k.push_back(c);
        if (k == 0) rep.c = c;
        const Complex adjusted = oracle * qpow(log_q, rep.c * nu);
        rep.rel_err.push_back(std::abs(adjusted - psi) / std::abs(psi));
    }
    rep.consistent = true;
    for (double c : rep.per_k)
        if (std::abs(c - rep.c) > 1e-8) rep.consistent = false;
    return rep;
}

} // namespace torusblocks
