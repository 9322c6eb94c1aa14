#include "doctest.h"

#include "torusblocks/macdonald.hpp"

using namespace torusblocks;

namespace {

using FP = LaurentPoly<QRational>;

FP sym_monomial(long d) {
    FormalRing r;
    if (d == 0) return FP::monomial(0, r.one());
    return FP::monomial(d, r.one()) + FP::monomial(-d, r.one());
}

} // namespace

TEST_CASE("formal-q scalars") {
    FormalRing r;
    auto two = q_int(r, 2); // q + 1/q
    CHECK(two == (r.q_power(1) + r.q_power(-1)));
    CHECK(q_int(r, 3) == r.q_power(2) + r.one() + r.q_power(-2));
    CHECK((two - two).is_zero());
    CHECK(two / two == r.one());
}

TEST_CASE("constant-term inner product") {
    FormalRing r;
    const auto one = FP::monomial(0, r.one());
    CHECK(inner_product(r, one, one, 0) == QRational::from_rational(rational_of(1, 2)));
    CHECK(inner_product(r, sym_monomial(1), one, 0).is_zero());

    auto p11 = macdonald_gram_schmidt(r, 1, 1);
    auto p01 = macdonald_gram_schmidt(r, 0, 1);
    CHECK(inner_product(r, p11, p01, 1).is_zero());
}

TEST_CASE("Gram-Schmidt polynomials match the closed k = 0 and small cases") {
    FormalRing r;
    for (long n = 1; n <= 8; ++n) CHECK(macdonald_gram_schmidt(r, n, 0) == sym_monomial(n));
    for (long k = 0; k <= 4; ++k)
        CHECK(macdonald_gram_schmidt(r, 0, k) == FP::monomial(0, r.one()));
    CHECK(macdonald_gram_schmidt(r, 1, 1) == sym_monomial(1));
}

TEST_CASE("orthogonality across the (m,n,k) grid") {
    FormalRing r;
    for (long k = 0; k <= 4; ++k) {
        std::vector<FP> polys;
        for (long n = 0; n <= 6; ++n) polys.push_back(macdonald_gram_schmidt(r, n, k));
        for (long m = 0; m <= 6; ++m)
            for (long n = 0; n <= 6; ++n) {
                auto ip = inner_product(r, polys[m], polys[n], k);
                if (m != n) CHECK(ip.is_zero());
                else CHECK(!ip.is_zero());
            }
    }
}

TEST_CASE("shift operator basics") {
    FormalRing r;
    CHECK(shift_apply(r, FP::monomial(0, r.one())).is_zero());

    auto d1 = shift_apply(r, sym_monomial(1));
    CHECK(d1 == FP::monomial(0, r.q_power(-1) - r.q_power(1)));

    auto d2 = shift_apply(r, sym_monomial(2));
    CHECK(d2 == sym_monomial(1).scaled(r.q_power(-2) - r.q_power(2)));

    // odd input: f(x-1) - f(x+1) is not divisible by q^x - q^{-x}
    CHECK_THROWS_AS(shift_apply(r, FP::monomial(1, r.one())), NondivisibleError);

    // x-even input gives x-even output
    for (long n = 1; n <= 5; ++n) CHECK(shift_apply(r, sym_monomial(n)).is_x_even());
}

TEST_CASE("shift-operator recursion lowers n and raises k") {
    FormalRing r;
    for (long k = 0; k <= 3; ++k)
        for (long n = 1; n <= 6; ++n) {
            auto lhs = shift_apply(r, macdonald_gram_schmidt(r, n, k));
            auto rhs = macdonald_gram_schmidt(r, n - 1, k + 1)
                           .scaled(r.q_power(-n) - r.q_power(n));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("shift construction equals Gram-Schmidt at generic q") {
    FormalRing r;
    for (long k = 0; k <= 3; ++k)
        for (long n = 0; n <= 5; ++n)
            CHECK(macdonald_via_shift(r, n, k) == macdonald_gram_schmidt(r, n, k));
}

TEST_CASE("shift construction examples and degree") {
    FormalRing r;
    CHECK(macdonald_via_shift(r, 1, 0) == sym_monomial(1));
    CHECK(macdonald_via_shift(r, 0, 1) == FP::monomial(0, r.one()));
    // P^{(1)}_n has all coefficients 1 on degrees n, n-2, ..., -n
    for (long n = 0; n <= 5; ++n) {
        auto p = macdonald_via_shift(r, n, 1);
        FP expect;
        for (long d = -n; d <= n; d += 2) expect.add_to(d, r.one());
        CHECK(p == expect);
    }
    for (long n = 1; n <= 6; ++n) {
        CHECK(macdonald_via_shift(r, n, 2).max_degree() == n);
        CHECK(macdonald_via_shift(r, n, 2).coeff(n) == r.one());
        CHECK(macdonald_via_shift(r, n, 2).is_x_even());
    }
}

TEST_CASE("root-of-unity construction and evaluation") {
    QContext ctx(8, 2);
    CycloRing r(ctx);

    SUBCASE("P_0 evaluates to 1, P_n^{(0)}(0) = 2") {
        auto p0 = macdonald_via_shift(r, 0, 3);
        for (long m = -3; m <= 3; ++m) CHECK(evaluate_at(r, p0, m) == ctx.one());
        for (long n = 1; n <= 5; ++n)
            CHECK(evaluate_at(r, macdonald_via_shift(r, n, 0), 0) == ctx.from_long(2));
    }

    SUBCASE("P^{(1)}_{n-1} evaluation matches the quotient of q-powers") {
        for (long n = 1; n <= 6; ++n)
            for (long m = 1; m <= 5; ++m) {
                const long mp = m + ctx.p;
                if (mp % ctx.kappa == 0) continue;
                auto val = evaluate_at(r, macdonald_via_shift(r, n - 1, 1), mp);
                auto expect = (ctx.q_pow(n * mp) - ctx.q_pow(-n * mp)) /
                              (ctx.q_pow(mp) - ctx.q_pow(-mp));
                CHECK(val == expect);
            }
    }

    SUBCASE("vanishing divisor is reported when the chain hits kappa") {
        CHECK_THROWS_AS(macdonald_via_shift(r, 7, 1), VanishingDivisorError);
    }
}

TEST_CASE("specialization of generic-q polynomials at the root of unity") {
    QContext ctx(3);
    // P^{(1)}_{kappa-1} has unit coefficients; the shift chain at the root of
    // unity would divide by [kappa] = 0, the specialized table must not.
    auto p = MacdonaldTable::at_root_of_unity(ctx, 2, 1);
    LaurentPoly<CycloScalar> expect;
    for (long d = -2; d <= 2; d += 2) expect.add_to(d, ctx.one());
    CHECK(p == expect);

    // agreement of both paths where both are defined
    QContext ctx8(8, 2);
    CycloRing r8(ctx8);
    for (long k = 0; k <= 3; ++k)
        for (long n = 0; n + k <= 6; ++n) {
            auto direct = macdonald_via_shift(r8, n, k);
            auto special = specialize(ctx8, MacdonaldTable::formal(n, k));
            CHECK(direct == special);
        }
}
