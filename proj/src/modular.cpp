#include "torusblocks/modular.hpp"

#include <algorithm>
#include <complex>

namespace torusblocks {

long BlockBasis::index_of(long n) const {
    auto it = std::find(labels.begin(), labels.end(), n);
    if (it == labels.end()) throw RangeError("label " + std::to_string(n) + " not in block basis");
    return it - labels.begin();
}

std::vector<long> f_admissible_m(const QContext& ctx, long k) {
    std::vector<long> ms;
    for (long m = -ctx.p + 2 * k + 1; m <= ctx.kappa - ctx.p - 1; ++m) ms.push_back(m);
    for (long m = ctx.kappa - ctx.p + 2 * k + 1; m <= 2 * ctx.kappa - ctx.p - 1; ++m)
        ms.push_back(m);
    return ms;
}

CycloScalar f_coeff(const QContext& ctx, long k, long m, long n) {
    if (k < 0 || k > ctx.p) throw RangeError("f_coeff needs 0 <= k <= p");
    CycloRing r(ctx);
    CycloScalar sum = ctx.zero();
    for (long j = 0; j <= k; ++j) {
        auto den = q_pochhammer(r, -m - ctx.p + k + 1, j) *
                   q_pochhammer(r, m + ctx.p - k + 1, k - j);
        if (den.is_zero())
            throw DivisionByZeroError("f_coeff Pochhammer vanished at (k,m,n,j) = (" +
                                      std::to_string(k) + "," + std::to_string(m) + "," +
                                      std::to_string(n) + "," + std::to_string(j) + ")");
        sum += q_binomial(r, k, j) * ctx.q_pow(2 * j * n) / den;
    }
    auto pref = ctx.q_pow(-m * (n + k) - k * (k + 1) / 2) /
                (ctx.q_pow(-1) - ctx.q_pow(1)).pow(k) / q_binomial(r, ctx.p, k);
    return pref * sum;
}

FCoeffTable FCoeffTable::build(const QContext& ctx, long k, long n_lo, long n_hi) {
    FCoeffTable t;
    t.k = k;
    for (long m : f_admissible_m(ctx, k))
        for (long n = n_lo; n <= n_hi; ++n) t.values[{m, n}] = f_coeff(ctx, k, m, n);
    return t;
}

std::vector<CycloScalar> t_matrix(const QContext& ctx) {
    BlockBasis basis(ctx);
    std::vector<CycloScalar> d;
    d.reserve(basis.labels.size());
    for (long n : basis.labels) d.push_back(ctx.q_half_pow(n * n));
    return d;
}

ModularData s_matrix(const QContext& ctx) {
    BlockBasis basis(ctx);
    const long dim = basis.dim();
    CycloRing r(ctx);

    ModularData md;
    md.kappa = ctx.kappa;
    md.p = ctx.p;
    md.basis = basis.labels;
    md.t_diag = t_matrix(ctx);
    md.S = CMat(dim, dim);
    md.S_rescaled = CMat(dim, dim);

    // Macdonald values P^{(p+1)}_{n-p-1}(m); the polynomial depends on n only.
    std::vector<LaurentPoly<CycloScalar>> polys;
    for (long n : basis.labels)
        polys.push_back(MacdonaldTable::at_root_of_unity(ctx, n - ctx.p - 1, ctx.p + 1));

    // S = e^{-pi i/4} / sqrt(2 kappa) * S'
    const CycloScalar prefactor = ctx.e_pi_i_4(-1) / ctx.sqrt_two_kappa();

    for (long col = 0; col < dim; ++col) {
        const long n = basis.labels[col];
        CycloScalar nprod = ctx.one();
        for (long j = 1; j <= ctx.p; ++j) nprod *= ctx.q_pow(-n + j) - ctx.q_pow(n - j);
        for (long row = 0; row < dim; ++row) {
            const long m = basis.labels[row];
            CycloScalar v = ctx.q_pow(ctx.p * (n - m) - ctx.p * (ctx.p + 1) / 2);
            v *= ctx.q_pow(-m) - ctx.q_pow(m);
            v *= nprod;
            v *= evaluate_at(r, polys[col], m);
            md.S_rescaled(row, col) = v;
            md.S(row, col) = prefactor * v;
        }
    }
    return md;
}

namespace {

CMat diag_right_mul(const CMat& a, const std::vector<CycloScalar>& d) {
    CMat r = a;
    for (long i = 0; i < r.rows(); ++i)
        for (long j = 0; j < r.cols(); ++j) r(i, j) = r(i, j) * d[j];
    return r;
}

CMat scalar_identity(long dim, const CycloScalar& s) {
    CMat r(dim, dim);
    for (long i = 0; i < dim; ++i) r(i, i) = s;
    return r;
}

std::string entry_mismatch(const CMat& a, const CMat& b) {
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j)))
                return "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
    return "";
}

using CD = std::complex<double>;

Mat<CD> embed(const CMat& a) {
    Mat<CD> r(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).embed();
    return r;
}

double max_dev_from_scalar_identity(const Mat<CD>& a, CD s) {
    double dev = 0;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            dev = std::max(dev, std::abs(a(i, j) - (i == j ? s : CD(0))));
    return dev;
}

} // namespace

RelationReport verify_relations(const ModularData& md) {
    const QContext ctx(md.kappa, md.p);
    const long dim = md.S.rows();
    RelationReport rep;

    const long sign = md.p % 2 == 0 ? 1 : -1;
    const CycloScalar phase = ctx.q_pow(-md.p * (md.p + 1));

    // rescaled, sqrt-free checks, all exact
    const CMat s2 = md.S_rescaled * md.S_rescaled;
    const CMat s2_expect =
        scalar_identity(dim, ctx.from_long(-2 * md.kappa * sign) * phase);
    rep.s_squared_exact = s2 == s2_expect;
    if (!rep.s_squared_exact)
        rep.first_violation = "S'^2: " + entry_mismatch(s2, s2_expect);

    const CMat st = diag_right_mul(md.S_rescaled, md.t_diag);
    const CMat st3 = st * st * st;
    const CMat st3_sq = st3 * st3;
    const CMat s2_sq = s2 * s2;
    const CMat rhs = s2_sq.scaled(ctx.from_long(2 * md.kappa) * ctx.imag_unit());
    rep.st_cubed_exact = st3_sq == rhs;
    if (!rep.st_cubed_exact && rep.first_violation.empty())
        rep.first_violation = "((S'T)^3)^2: " + entry_mismatch(st3_sq, rhs);

    rep.commute_exact = (st3 * s2) == (s2 * st3);
    if (!rep.commute_exact && rep.first_violation.empty())
        rep.first_violation = "(S'T)^3 does not commute with S'^2";

    // full-phase checks in the float embedding
    const CD target = (static_cast<double>(sign) * CD(0, 1)) * phase.embed();
    const Mat<CD> sf = embed(md.S);
    Mat<CD> tf(dim, dim);
    for (long i = 0; i < dim; ++i) tf(i, i) = md.t_diag[i].embed();
    rep.s_squared_float_err = max_dev_from_scalar_identity(sf * sf, target);
    const Mat<CD> stf = sf * tf;
    rep.st_cubed_float_err = max_dev_from_scalar_identity(stf * stf * stf, target);

    rep.pass = rep.s_squared_exact && rep.st_cubed_exact && rep.commute_exact &&
               rep.s_squared_float_err < 1e-12 && rep.st_cubed_float_err < 1e-12;
    if (!rep.pass && rep.first_violation.empty()) rep.first_violation = "float phase deviation";
    return rep;
}

CycloScalar gauss_product(long p) {
    const QContext ctx(2 * p + 2, p);
    CycloScalar prod = ctx.one();
    for (long j = 1; j <= p; ++j) prod *= ctx.q_pow(j) + ctx.q_pow(-j);
    return prod;
}

KirillovReport kirillov_compare(const ModularData& md) {
    const QContext ctx(md.kappa, md.p);
    CycloRing r(ctx);
    const long dim = md.S.rows();
    KirillovReport rep;

    // T~, S~ and the conjugating diagonal D
    std::vector<CycloScalar> t_tilde, d;
    for (long idx = 0; idx < dim; ++idx) {
        const long n = md.basis[idx];
        t_tilde.push_back(ctx.e_pi_i_4(-1) * ctx.q_half_pow(n * n));
        CycloScalar dj = ctx.q_pow(ctx.p * n);
        for (long l = 1; l <= ctx.p; ++l) dj *= ctx.q_pow(-n + l) - ctx.q_pow(n - l);
        d.push_back(dj);
    }

    CMat s_tilde(dim, dim);
    const CycloScalar pref = ctx.imag_unit() / ctx.sqrt_two_kappa() *
                             ctx.q_pow(-ctx.p * (ctx.p + 1) / 2);
    std::vector<LaurentPoly<CycloScalar>> polys;
    for (long n : md.basis)
        polys.push_back(MacdonaldTable::at_root_of_unity(ctx, n - ctx.p - 1, ctx.p + 1));
    for (long row = 0; row < dim; ++row) {
        const long m = md.basis[row];
        CycloScalar mprod = ctx.one();
        for (long j = 0; j <= ctx.p; ++j) mprod *= ctx.q_pow(-m + j) - ctx.q_pow(m - j);
        for (long col = 0; col < dim; ++col)
            s_tilde(row, col) = pref * mprod * evaluate_at(r, polys[col], m);
    }

    // D^{-1} X D has entries x_{ij} d_j / d_i
    auto conjugated = [&](const CMat& x) {
        CMat out = x;
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j) out(i, j) = x(i, j) * d[j] / d[i];
        return out;
    };

    CMat t_full(dim, dim), t_tilde_full(dim, dim);
    for (long i = 0; i < dim; ++i) {
        t_full(i, i) = md.t_diag[i];
        t_tilde_full(i, i) = t_tilde[i];
    }

    const CMat t_conj = conjugated(t_tilde_full).scaled(ctx.e_pi_i_4(+1));
    rep.t_conjugation = t_full == t_conj;
    if (!rep.t_conjugation) rep.first_violation = "T conjugation: " + entry_mismatch(t_full, t_conj);

    const CMat s_conj = conjugated(s_tilde).scaled(ctx.zeta(-3 * ctx.kappa)); // e^{-3 pi i/4}
    rep.s_conjugation = md.S == s_conj;
    if (!rep.s_conjugation && rep.first_violation.empty())
        rep.first_violation = "S conjugation: " + entry_mismatch(md.S, s_conj);

    rep.t_hat = t_full.scaled(ctx.e_pi_i_4(-1)) == conjugated(t_tilde_full);
    rep.s_hat = md.S.scaled(ctx.zeta(3 * ctx.kappa)) == conjugated(s_tilde);

    rep.s_tilde_symmetric = true;
    for (long i = 0; i < dim && rep.s_tilde_symmetric; ++i)
        for (long j = 0; j < dim; ++j)
            if (!(s_tilde(i, j) == s_tilde(j, i))) { rep.s_tilde_symmetric = false; break; }

    rep.pass = rep.t_conjugation && rep.s_conjugation && rep.t_hat && rep.s_hat;
    return rep;
}

bool macdonald_f_identity(const QContext& ctx, long k, long m, long n) {
    if (k < 0 || k > ctx.p || n < k + 1 || n > ctx.kappa || m < -ctx.p + 2 * k + 1 ||
        m > ctx.kappa - ctx.p - 1)
        throw RangeError("macdonald_f_identity index out of range");
    CycloRing r(ctx);

    const CycloScalar lhs = f_coeff(ctx, k, m, n) - ctx.q_pow(2 * ctx.p * n) * f_coeff(ctx, k, m, -n);

    CycloScalar rhs = ctx.q_pow(ctx.p * n - k * m - k * (k + 1) / 2) / q_binomial(r, ctx.p, k);
    rhs *= ctx.q_pow(-m - ctx.p + k) - ctx.q_pow(m + ctx.p - k);
    for (long j = 1; j <= k; ++j) rhs *= ctx.q_pow(-n + j) - ctx.q_pow(n - j);
    const auto poly = MacdonaldTable::at_root_of_unity(ctx, n - k - 1, k + 1);
    rhs *= evaluate_at(r, poly, m + ctx.p - k);

    return lhs == rhs;
}

RelationRows smf_relation_rows(const QContext& ctx, long k) {
    if (k < 0 || k > ctx.p) throw RangeError("smf_relation_rows needs 0 <= k <= p");
    RelationRows out;
    for (long n = k + 1; n <= ctx.p; ++n) out.n_labels.push_back(n);
    for (long n = ctx.kappa - ctx.p; n <= ctx.kappa - k - 1; ++n) out.n_labels.push_back(n);
    for (long m = -ctx.p + 2 * k + 1; m <= ctx.kappa - ctx.p - 1; ++m) out.m_labels.push_back(m);

    CycloRing r(ctx);
    out.rows = CMat(static_cast<long>(out.n_labels.size()),
                    static_cast<long>(out.m_labels.size()));
    for (std::size_t i = 0; i < out.n_labels.size(); ++i) {
        const long n = out.n_labels[i];
        CycloScalar nprod = ctx.one();
        for (long j = 1; j <= k; ++j) nprod *= ctx.q_pow(-n + j) - ctx.q_pow(n - j);
        const auto poly = MacdonaldTable::at_root_of_unity(ctx, n - k - 1, k + 1);
        for (std::size_t jm = 0; jm < out.m_labels.size(); ++jm) {
            const long m = out.m_labels[jm];
            CycloScalar v = ctx.q_pow(ctx.p * n - k * m - k * (k + 1) / 2) /
                            q_binomial(r, ctx.p, k);
            v *= ctx.q_pow(-m - ctx.p + k) - ctx.q_pow(m + ctx.p - k);
            v *= nprod;
            v *= evaluate_at(r, poly, m + ctx.p - k);
            out.rows(static_cast<long>(i), static_cast<long>(jm)) = v;
        }
    }
    out.rank = exact_rank(out.rows);
    return out;
}

long exact_rank(CMat m) {
    long rank = 0;
    long row = 0;
    for (long col = 0; col < m.cols() && row < m.rows(); ++col) {
        long pivot = -1;
        for (long i = row; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != row)
            for (long j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
        const CycloScalar inv = m(row, col).inverse();
        for (long j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (long i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const CycloScalar c = m(i, col);
            for (long j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - c * m(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace torusblocks
