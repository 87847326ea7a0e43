#include "qbinom/rmcode.hpp"

namespace qbinom {

RankCode analyze_code(const QPolynomial& f) {
    if (f.is_scalar_multiple_of_identity())
        throw std::invalid_argument("analyze_code: f is a scalar multiple of the identity map");
    const FieldCtx& F = f.ctx();
    RankCode rc;
    rc.q = F.q();
    rc.m = f.m();

    // rank(a f + b x) = m - weight of the point <(1, -b/a)> for a != 0, and m
    // for a = 0, b != 0; so the whole (a,b) scan collapses to the spectrum.
    WeightSpectrum ws = weight_spectrum(f);
    rc.max_weight = ws.max_weight();
    rc.min_distance = rc.m - rc.max_weight;
    rc.mrd = rc.min_distance == rc.m - 1;

    const std::uint64_t qm = F.order();
    rc.rank_distribution[0] = 1;
    std::uint64_t lambdas_hit = 0;
    for (auto& [w, cnt] : ws.entries) {
        rc.rank_distribution[rc.m - w] += cnt * (qm - 1);
        lambdas_hit += cnt;
    }
    rc.rank_distribution[rc.m] += (qm - lambdas_hit) * (qm - 1);  // lambda outside L_f
    rc.rank_distribution[rc.m] += qm - 1;                         // a = 0, b != 0
    return rc;
}

int min_distance(const QPolynomial& f) { return analyze_code(f).min_distance; }

bool is_mrd(const QPolynomial& f) { return analyze_code(f).mrd; }

}  // namespace qbinom
