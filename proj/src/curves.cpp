#include "qbinom/curves.hpp"

#include <algorithm>
#include <cmath>

namespace qbinom {

namespace {

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Z-part of the odd curve: G(Z) = eta Z^2 + eta^{q^s} Z^{2q^s} - 2 beta eta^{(q^s+1)/2} Z^{q^s+1}
struct OddCurve {
    const FieldCtx& F;
    int s;
    Fe eta, eta_qs, c3;

    OddCurve(const FieldCtx& f, const CurveSpec& spec) : F(f), s(spec.s), eta(spec.aux) {
        eta_qs = F.pow_q(eta, s);
        std::uint64_t qs = pow_u64(F.q(), s);
        c3 = F.mul(F.scalar(2), F.mul(spec.beta, F.pow(eta, (qs + 1) / 2)));
    }
    Fe w_of(Fe S) const {  // (S^{q^s} - S)^2
        Fe d = F.sub(F.pow_q(S, s), S);
        return F.mul(d, d);
    }
    Fe g_of(Fe Z) const {
        Fe z2 = F.mul(Z, Z);
        Fe t = F.add(F.mul(eta, z2), F.mul(eta_qs, F.pow_q(z2, s)));
        return F.sub(t, F.mul(c3, F.mul(F.pow_q(Z, s), Z)));
    }
};

// Even curve: F(S,Z) = G'(S, Z^2+Z+eps) with
// G'(S,Y) = S^{2(q^s-1)} Y^{q^s} + S^{q^s-1} (beta + Tr_{q^s/2}(Y)) + Y
struct EvenCurve {
    const FieldCtx& F;
    int s;
    Fe beta, eps;
    std::uint64_t qs;

    EvenCurve(const FieldCtx& f, const CurveSpec& spec)
        : F(f), s(spec.s), beta(spec.beta), eps(spec.aux), qs(pow_u64(f.q(), spec.s)) {}
    Fe y_of(Fe Z) const { return F.add(F.add(F.mul(Z, Z), Z), eps); }
    Fe eval(Fe S, Fe Z) const {
        Fe Y = y_of(Z);
        Fe s1 = F.pow(S, qs - 1);
        Fe s2 = F.mul(s1, s1);
        Fe v = F.mul(s2, F.pow_q(Y, s));
        v = F.add(v, F.mul(s1, F.add(beta, F.tr2(Y, s * F.h()))));
        return F.add(v, Y);
    }
};

}  // namespace

void CurveSpec::validate(const FieldCtx& F) const {
    if (!F.has_tower()) throw std::invalid_argument("curve spec requires tower metadata");
    const int n = F.n();
    const int d = F.h() * n;
    if (s < 1 || gcd_u64(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(n)) != 1)
        throw std::invalid_argument("curve spec: gcd(s, n) must be 1");
    if (!F.in_subfield(beta, d)) throw std::invalid_argument("curve spec: beta outside F_{q^n}");
    if (!F.in_subfield(aux, d)) throw std::invalid_argument("curve spec: aux outside F_{q^n}");
    if (parity == Parity::Odd) {
        if (F.p() == 2) throw std::invalid_argument("curve spec: odd parity over even field");
        if (beta == Fe{1} || beta == F.neg(Fe{1}))
            throw std::invalid_argument("curve spec: beta in {1,-1}");
        if (aux.enc == 0 || F.is_square(aux))
            throw std::invalid_argument("curve spec: eta must be a nonsquare of F_{q^n}");
        if (sign != 1 && sign != -1) throw std::invalid_argument("curve spec: sign must be +-1");
    } else {
        if (F.p() != 2) throw std::invalid_argument("curve spec: even parity over odd field");
        if (beta == Fe{0} || beta == Fe{1})
            throw std::invalid_argument("curve spec: beta in {0,1}");
        if (F.tr2(aux, d) != Fe{1})
            throw std::invalid_argument("curve spec: eps must have Tr_{q^n/2}(eps) = 1");
    }
}

bool on_curve(const FieldCtx& F, const CurveSpec& spec, Fe S, Fe Z) {
    if (spec.parity == Parity::Odd) {
        OddCurve c(F, spec);
        return c.w_of(S) == c.g_of(Z);
    }
    EvenCurve c(F, spec);
    return c.eval(S, Z) == Fe{0};
}

bool good_point(const FieldCtx& F, const CurveSpec& spec, Fe S, Fe Z) {
    if (!on_curve(F, spec, S, Z)) return false;
    if (spec.parity == Parity::Odd) {
        // t = (eta Z^2 - S^2)/4 != 0 and Delta = eta Z^2 != 0; for a nonsquare
        // eta both reduce to Z != 0.
        return Z.enc != 0;
    }
    EvenCurve c(F, spec);
    return S.enc != 0 && c.y_of(Z).enc != 0;
}

std::vector<std::pair<Fe, Fe>> affine_points(const FieldCtx& F, const CurveSpec& spec) {
    spec.validate(F);
    const auto& sub = F.qn_elements();
    std::vector<std::pair<Fe, Fe>> pts;
    if (spec.parity == Parity::Odd) {
        OddCurve c(F, spec);
        // match W(S) against G(Z) through a sorted (value, Z) table
        std::vector<std::pair<std::uint32_t, std::uint32_t>> gvals;
        gvals.reserve(sub.size());
        for (Fe Z : sub) gvals.emplace_back(c.g_of(Z).enc, Z.enc);
        std::sort(gvals.begin(), gvals.end());
        for (Fe S : sub) {
            std::uint32_t w = c.w_of(S).enc;
            auto it = std::lower_bound(gvals.begin(), gvals.end(),
                                       std::make_pair(w, std::uint32_t{0}));
            for (; it != gvals.end() && it->first == w; ++it) pts.emplace_back(S, Fe{it->second});
        }
    } else {
        EvenCurve c(F, spec);
        for (Fe S : sub)
            for (Fe Z : sub)
                if (c.eval(S, Z) == Fe{0}) pts.emplace_back(S, Z);
    }
    return pts;
}

CurveCount count_curve(const FieldCtx& F, const CurveSpec& spec) {
    spec.validate(F);
    CurveCount out;
    const std::uint64_t qs = pow_u64(F.q(), spec.s);
    out.genus = qs * qs - qs - 1;
    const double sq = std::sqrt(static_cast<double>(F.qn()));
    out.hw_low = static_cast<double>(F.qn()) + 1 - 2.0 * static_cast<double>(out.genus) * sq;
    out.hw_high = static_cast<double>(F.qn()) + 1 + 2.0 * static_cast<double>(out.genus) * sq;
    const int bad_places = spec.parity == Parity::Odd ? 4 : static_cast<int>(2 * qs + 2);
    out.slack = bad_places + static_cast<int>(2 * qs);

    if (spec.parity == Parity::Odd) {
        for (auto& [S, Z] : affine_points(F, spec)) {
            ++out.affine;
            if (Z.enc != 0) ++out.good;
        }
    } else {
        EvenCurve c(F, spec);
        for (auto& [S, Z] : affine_points(F, spec)) {
            ++out.affine;
            if (S.enc != 0 && c.y_of(Z).enc != 0) ++out.good;
        }
    }
    out.ok = static_cast<double>(out.affine) + out.slack >= out.hw_low &&
             static_cast<double>(out.affine) <= out.hw_high + out.slack;
    return out;
}

CurveRoundTrip params_from_curve_point(const FieldCtx& F, const CurveSpec& spec, Fe S, Fe Z,
                                       std::optional<Fe> transport_to) {
    spec.validate(F);
    if (!good_point(F, spec, S, Z))
        throw std::invalid_argument("params_from_curve_point: not a good point of the curve");

    const std::uint64_t qs = pow_u64(F.q(), spec.s);
    const int d = F.h() * F.n();
    CurveRoundTrip rt;
    Fe xi;

    if (spec.parity == Parity::Odd) {
        const Fe one{1};
        Fe sgn = spec.sign == 1 ? one : F.neg(one);
        if (F.add(spec.beta, sgn).enc == 0)
            throw std::invalid_argument("params_from_curve_point: beta + sign = 0");
        Fe delta_disc = F.mul(spec.aux, F.mul(Z, Z));  // Delta = eta Z^2
        Fe T = F.mul(F.sub(delta_disc, F.mul(S, S)), F.inv(F.scalar(4)));
        Fe D = F.pow(delta_disc, (qs - 1) / 2);
        Fe B = F.mul(sgn, D);
        Fe A = F.mul(F.inv(F.scalar(2)), F.sub(F.pow_q(S, spec.s), F.mul(sgn, F.mul(S, D))));
        Fe alpha = F.div(F.sub(spec.beta, sgn), F.add(spec.beta, sgn));
        rt.sys = ConditionSystem{T, S, A, B, alpha};
        if (!check_conditions(F, rt.sys, spec.s))
            throw std::logic_error("params_from_curve_point: condition system failed");

        // xi = (S + w)/2 with w the least square root of Delta
        Fe w = F.sqrt_least(delta_disc);
        xi = F.mul(F.add(S, w), F.inv(F.scalar(2)));
        if (F.sub(F.mul(xi, xi), F.add(F.mul(S, xi), T)) != Fe{0} || F.in_subfield(xi, d))
            throw std::logic_error("params_from_curve_point: bad quadratic root");

        // the relation xi^{q^s} = A0 + B0 xi always carries B0 = +Delta^{(q^s-1)/2}
        AbRelations ab = ab_relations_from_xi(F, xi, spec.s);
        if (ab.B != D) throw std::logic_error("params_from_curve_point: realized B differs from +D");
        rt.sign_realized = +1;
        rt.alpha_realized = F.div(F.sub(spec.beta, one), F.add(spec.beta, one));
    } else {
        Fe Y = F.add(F.add(F.mul(Z, Z), Z), spec.aux);
        Fe T = F.mul(F.mul(S, S), Y);
        Fe B = F.pow(S, qs - 1);
        Fe A = F.add(F.mul(spec.beta, F.pow_q(S, spec.s)), F.div(F.add(T, F.pow_q(T, spec.s)), S));
        Fe alpha = F.div(spec.beta, F.add(Fe{1}, spec.beta));
        rt.sys = ConditionSystem{T, S, A, B, alpha};
        if (!check_conditions(F, rt.sys, spec.s))
            throw std::logic_error("params_from_curve_point: condition system failed");

        xi = Fe{0};
        bool found = false;
        for (std::uint64_t e = 0; e < F.order(); ++e) {
            Fe cand{e};
            if (F.sub(F.mul(cand, cand), F.add(F.mul(S, cand), T)) == Fe{0}) {
                xi = cand;
                found = true;
                break;
            }
        }
        if (!found || F.in_subfield(xi, d))
            throw std::logic_error("params_from_curve_point: no root of X^2-SX-T outside F_{q^n}");
        rt.sign_realized = +1;
        rt.alpha_realized = alpha;
    }

    rt.cert = witness_from_xi_auto(F, xi, spec.s);
    if (F.norm_rel(rt.cert.delta) != rt.alpha_realized)
        throw std::logic_error("params_from_curve_point: realized norm class mismatch");
    if (!rt.cert.verify(F))
        throw std::logic_error("params_from_curve_point: certificate failed to verify");
    if (transport_to) {
        if (F.norm_rel(*transport_to) != rt.alpha_realized)
            throw std::invalid_argument("params_from_curve_point: requested delta has a different norm class");
        rt.cert = transport_witness(F, rt.cert, *transport_to);
    }
    return rt;
}

bool split_check_even(const FieldCtx& F, Fe beta, int s) {
    if (F.p() != 2) throw std::invalid_argument("split_check_even requires characteristic 2");
    if (!F.has_tower()) throw std::invalid_argument("split_check_even requires tower metadata");
    if (F.qn() > 1024) throw SizeError("split_check_even grid beyond 2^10 x 2^10");
    const int d = F.h() * F.n();
    if (!F.in_subfield(beta, d)) throw std::invalid_argument("split_check_even: beta outside F_{q^n}");
    const std::uint64_t qs = pow_u64(F.q(), s);
    const auto& sub = F.qn_elements();
    const Fe one{1};
    for (Fe S : sub) {
        Fe s1 = F.pow(S, qs - 1);
        Fe s2 = F.mul(s1, s1);
        Fe s3 = F.mul(s2, s1);
        Fe s4 = F.mul(s2, s2);
        for (Fe Y : sub) {
            Fe yqs = F.pow_q(Y, s);
            Fe tau = F.tr2(Y, s * F.h());
            // H(S,Y) per the eight-term expansion
            Fe H = F.mul(Y, Y);
            H = F.add(H, F.mul(s4, F.mul(yqs, yqs)));
            H = F.add(H, F.mul(F.mul(beta, beta), s2));
            H = F.add(H, F.mul(s1, Y));
            H = F.add(H, F.mul(s3, yqs));
            H = F.add(H, F.mul(beta, s2));
            H = F.add(H, F.mul(s2, Y));
            H = F.add(H, F.mul(s2, yqs));
            Fe G = F.add(F.add(F.mul(s2, yqs), F.mul(s1, F.add(F.add(one, beta), tau))), Y);
            Fe Gp = F.add(F.add(F.mul(s2, yqs), F.mul(s1, F.add(beta, tau))), Y);
            if (H != F.mul(G, Gp)) return false;
        }
    }
    return true;
}

}  // namespace qbinom
