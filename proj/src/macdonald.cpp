#include "torusblocks/macdonald.hpp"

#include <map>
#include <mutex>

namespace torusblocks {

CycloScalar specialize_poly(const QContext& ctx, const QPoly& p) {
    // Horner in q
    CycloScalar acc = ctx.zero();
    const auto& c = p.coeffs();
    for (long i = p.degree(); i >= 0; --i) {
        acc = acc * ctx.q();
        acc += CycloScalar::from_rational(ctx.field, c[i]);
    }
    return acc;
}

LaurentPoly<CycloScalar> specialize(const QContext& ctx, const LaurentPoly<QRational>& f) {
    LaurentPoly<CycloScalar> r;
    for (const auto& [d, v] : f.coeffs()) {
        const CycloScalar den = specialize_poly(ctx, v.den());
        if (den.is_zero())
            throw PoleError("coefficient of degree " + std::to_string(d) +
                            " has a pole at q = exp(pi i/" + std::to_string(ctx.kappa) + ")");
        r.set(d, specialize_poly(ctx, v.num()) / den);
    }
    return r;
}

const LaurentPoly<QRational>& MacdonaldTable::formal(long n, long k) {
    static std::mutex mu;
    static std::map<std::pair<long, long>, LaurentPoly<QRational>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
    FormalRing ring;
    auto poly = macdonald_via_shift(ring, n, k);
    return cache.emplace(std::make_pair(n, k), std::move(poly)).first->second;
}

LaurentPoly<CycloScalar> MacdonaldTable::at_root_of_unity(const QContext& ctx, long n, long k) {
    if (n + k < ctx.kappa) {
        CycloRing ring(ctx);
        return macdonald_via_shift(ring, n, k);
    }
    return specialize(ctx, formal(n, k));
}

} // namespace torusblocks
