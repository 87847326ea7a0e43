#include "qbinom/binomial.hpp"

namespace qbinom {

BinomialParams BinomialParams::make(const FieldCtx& F, int s, Fe a, Fe b) {
    if (!F.has_tower()) throw std::invalid_argument("binomial family requires tower metadata");
    const int n = F.n();
    const int md = 2 * n;
    s %= md;
    if (s < 0) s += md;
    if (s == 0) throw std::invalid_argument("s must not be divisible by 2n");
    if (gcd_u64(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(n)) != 1)
        throw std::invalid_argument("gcd(s, n) must be 1");
    return BinomialParams{s, a, b};
}

Fe BinomialParams::delta(const FieldCtx& F) const {
    if (a.enc == 0) throw std::invalid_argument("delta undefined for a = 0");
    return F.div(b, a);
}

QPolynomial BinomialParams::map(const FieldCtx& F) const {
    return binomial_map(F, s, a, b);
}

BinomialParams BinomialParams::adjoint_params(const FieldCtx& F) const {
    const int n = F.n();
    const int md = 2 * n;
    int s2 = ((n - s) % md + md) % md;
    Fe a2 = F.pow_q(b, ((n - s) % md + md) % md);
    Fe b2 = F.pow_q(a, ((2 * n - s) % md + md) % md);
    return BinomialParams{s2, a2, b2};
}

bool WitnessCertificate::verify(const FieldCtx& F) const {
    if (x0.enc == 0 || a.enc == 0) return false;
    if (F.in_subfield(xi, F.h())) return false;  // xi in F_q: vectors dependent
    Fe b = F.mul(delta, a);
    QPolynomial f = binomial_map(F, s, a, b);
    if (f.evaluate(x0) != Fe{0}) return false;
    if (f.evaluate(F.mul(xi, x0)) != Fe{0}) return false;
    Fe nd = F.norm_rel(delta);
    return nd != Fe{0} && nd != Fe{1};
}

bool WitnessCertificate::verify_strong(const FieldCtx& F) const {
    if (!verify(F)) return false;
    QPolynomial f = binomial_map(F, s, a, F.mul(delta, a));
    return f.kernel_dimension() == 2;
}

Fe delta_from_xi(const FieldCtx& F, Fe xi, int s) {
    const int n = F.n();
    if (F.in_subfield(xi, F.h() * n))
        throw std::invalid_argument("delta_from_xi: xi lies in F_{q^n}");
    Fe num = F.sub(F.pow_q(xi, s + n), F.pow_q(xi, n));
    Fe den = F.sub(F.pow_q(xi, n), F.pow_q(xi, s));
    if (den.enc == 0) throw ZeroDenominator("delta_from_xi: xi^{q^n} = xi^{q^s}");
    return F.div(num, den);
}

WitnessCertificate witness_from_xi(const FieldCtx& F, Fe xi, int s, Fe x0) {
    const int n = F.n();
    if (F.in_subfield(xi, F.h())) throw std::invalid_argument("witness_from_xi: xi lies in F_q");
    if (x0.enc == 0) throw std::invalid_argument("witness_from_xi: x0 must be nonzero");
    Fe y0 = F.mul(xi, x0);
    Fe num = F.sub(F.mul(x0, F.pow_q(y0, s)), F.mul(y0, F.pow_q(x0, s)));
    Fe den = F.sub(F.mul(y0, F.pow_q(x0, s + n)), F.mul(x0, F.pow_q(y0, s + n)));
    if (den.enc == 0) throw std::logic_error("witness_from_xi: zero denominator with xi outside F_q");
    Fe delta = F.div(num, den);
    Fe da = F.add(F.pow_q(x0, s), F.mul(delta, F.pow_q(x0, s + n)));
    if (da.enc == 0) throw ZeroDenominator("witness_from_xi: x0 inadmissible for this delta");
    Fe a = F.div(F.neg(x0), da);
    WitnessCertificate cert{s, delta, a, x0, xi};
    Fe b = F.mul(delta, a);
    QPolynomial f = binomial_map(F, s, a, b);
    if (f.evaluate(x0) != Fe{0} || f.evaluate(y0) != Fe{0})
        throw std::logic_error("witness_from_xi: constructed kernel vectors do not evaluate to zero");
    return cert;
}

WitnessCertificate witness_from_xi_auto(const FieldCtx& F, Fe xi, int s) {
    for (std::uint64_t e = 1; e < F.order(); ++e) {
        try {
            return witness_from_xi(F, xi, s, Fe{e});
        } catch (const ZeroDenominator&) {
            continue;
        }
    }
    throw ZeroDenominator("witness_from_xi_auto: no admissible x0 for this xi");
}

WitnessCertificate transport_witness(const FieldCtx& F, const WitnessCertificate& cert,
                                     Fe delta_prime) {
    Fe nd = F.norm_rel(cert.delta);
    if (nd.enc == 0 || F.norm_rel(delta_prime) != nd)
        throw std::invalid_argument("transport_witness: norm classes differ");
    const std::uint64_t qs = [&] {
        std::uint64_t r = 1;
        for (int i = 0; i < cert.s; ++i) r *= F.q();
        return r;
    }();
    const std::uint64_t e = qs * (F.qn() - 1);
    for (std::uint64_t le = 1; le < F.order(); ++le) {
        Fe lambda{le};
        if (F.mul(cert.delta, F.pow(lambda, e)) == delta_prime) {
            WitnessCertificate moved{cert.s, delta_prime, F.mul(cert.a, F.pow(lambda, qs - 1)),
                                     F.div(cert.x0, lambda), cert.xi};
            if (!moved.verify(F)) throw std::logic_error("transport_witness: moved witness failed to verify");
            return moved;
        }
    }
    throw std::logic_error("transport_witness: no lambda found despite matching norms");
}

bool check_conditions(const FieldCtx& F, const ConditionSystem& sys, int s) {
    const int d = F.h() * F.n();
    for (Fe v : {sys.T, sys.S, sys.A, sys.B, sys.alpha})
        if (!F.in_subfield(v, d))
            throw std::invalid_argument("check_conditions: parameter outside F_{q^n}");
    if (sys.alpha == Fe{0} || sys.alpha == Fe{1})
        throw std::invalid_argument("check_conditions: alpha in {0,1}");

    const Fe one{1};
    const Fe two = F.scalar(2);
    const Fe T = sys.T, S = sys.S, A = sys.A, B = sys.B, alpha = sys.alpha;

    // 1. (1-alpha)(T+T^{q^s}) - alpha S^{q^s+1} + (1+alpha)(AS - 2BT) = 0
    Fe lhs = F.mul(F.sub(one, alpha), F.add(T, F.pow_q(T, s)));
    lhs = F.sub(lhs, F.mul(alpha, F.mul(F.pow_q(S, s), S)));
    lhs = F.add(lhs, F.mul(F.add(one, alpha), F.sub(F.mul(A, S), F.mul(two, F.mul(B, T)))));
    if (lhs != Fe{0}) return false;

    // 2. X^2 - SX - T irreducible over F_{q^n}
    if (F.p() != 2) {
        Fe disc = F.add(F.mul(S, S), F.mul(F.scalar(4), T));
        if (disc.enc == 0 || F.is_square(disc)) return false;
    } else {
        if (S.enc == 0) return false;
        if (F.tr2(F.div(T, F.mul(S, S)), d) != Fe{1}) return false;
    }

    // 3. S^{q^s} = 2A + BS
    if (F.pow_q(S, s) != F.add(F.mul(two, A), F.mul(B, S))) return false;

    // 4. -T^{q^s} = A^2 + B(AS - BT)
    Fe rhs = F.add(F.mul(A, A), F.mul(B, F.sub(F.mul(A, S), F.mul(B, T))));
    return F.neg(F.pow_q(T, s)) == rhs;
}

AbRelations ab_relations_from_xi(const FieldCtx& F, Fe xi, int s) {
    const int n = F.n();
    const int d = F.h() * n;
    if (F.in_subfield(xi, d))
        throw std::invalid_argument("ab_relations_from_xi: xi lies in F_{q^n}");
    Fe S = F.trace_rel(xi);
    Fe T = F.neg(F.norm_rel(xi));
    Fe y = F.pow_q(xi, s);
    Fe conj = F.pow_q(xi, n);  // the other root, S - xi
    Fe B = F.div(F.sub(y, F.pow_q(y, n)), F.sub(xi, conj));
    Fe A = F.sub(y, F.mul(B, xi));
    if (!F.in_subfield(A, d) || !F.in_subfield(B, d))
        throw std::logic_error("ab_relations_from_xi: A or B left F_{q^n}");

    const Fe two = F.scalar(2);
    if (F.pow_q(S, s) != F.add(F.mul(two, A), F.mul(B, S)))
        throw std::logic_error("ab_relations_from_xi: relation S^{q^s} = 2A + BS failed");
    Fe rhs = F.add(F.mul(A, A), F.mul(B, F.sub(F.mul(A, S), F.mul(B, T))));
    if (F.neg(F.pow_q(T, s)) != rhs)
        throw std::logic_error("ab_relations_from_xi: relation -T^{q^s} = A^2 + B(AS-BT) failed");
    // trace formulas
    Fe t1 = F.trace_rel(F.mul(y, xi));
    if (t1 != F.add(F.add(F.mul(two, F.mul(B, T)), F.mul(A, S)), F.mul(B, F.mul(S, S))))
        throw std::logic_error("ab_relations_from_xi: Tr(xi^{q^s+1}) formula failed");
    Fe t2 = F.trace_rel(F.mul(y, conj));
    if (t2 != F.sub(F.mul(A, S), F.mul(two, F.mul(B, T))))
        throw std::logic_error("ab_relations_from_xi: Tr(xi^{q^s+q^n}) formula failed");
    return AbRelations{A, B, S, T};
}

bool lp_criterion_n3(const FieldCtx& F, Fe delta) {
    if (F.n() != 3) throw std::invalid_argument("lp_criterion_n3 requires n = 3");
    Fe nd = F.norm_rel(delta);
    if (nd == Fe{0} || nd == Fe{1})
        throw std::invalid_argument("lp_criterion_n3: N(delta) in {0,1}");
    Fe A = F.neg(F.inv(F.sub(nd, Fe{1})));
    // Tr and N from F_{q^3} down to F_q
    Fe Aq = F.pow_q(A, 1), Aq2 = F.pow_q(A, 2);
    Fe trA = F.add(A, F.add(Aq, Aq2));
    Fe nA = F.mul(A, F.mul(Aq, Aq2));
    Fe b1 = F.sub(trA, Fe{1});
    if (!F.in_subfield(b1, F.h()) || !F.in_subfield(nA, F.h()))
        throw std::logic_error("lp_criterion_n3: trace or norm left F_q");
    if (F.p() != 2) {
        Fe disc = F.sub(F.mul(b1, b1), F.mul(F.scalar(4), nA));
        return disc.enc != 0 && F.is_square_in(disc, F.q());
    }
    if (b1.enc == 0) return false;
    return F.tr2(F.div(nA, F.mul(b1, b1)), F.h()) == Fe{0};
}

const char* to_string(ScatterKind k) {
    switch (k) {
        case ScatterKind::Scattered: return "SCATTERED";
        case ScatterKind::NotScattered: return "NOT_SCATTERED";
        case ScatterKind::CriterionN3: return "CRITERION_N3";
        case ScatterKind::SpecialN4: return "SPECIAL_N4";
        case ScatterKind::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

int threshold_n(std::uint64_t q, int s) {
    if ((q == 3 && s > 1) || (q == 2 && s > 2)) return 4 * s + 2;
    return 4 * s + 1;
}

namespace {

// Scatteredness of f_{delta,s} for n = 3 reduces to the s = 2 criterion on a
// transformed delta: members with s > n are scalar multiples of f_{1/delta,s-n},
// and s = 1 maps to s = 2 through the adjoint (delta -> delta^{-q^2}).
Fe n3_effective_delta(const FieldCtx& F, int s, Fe delta) {
    Fe d = delta;
    if (s > 3) {
        d = F.inv(d);
        s -= 3;
    }
    if (s == 1) d = F.inv(F.pow_q(d, 2));
    return d;
}

}  // namespace

Classification classify(const FieldCtx& F, int s, Fe delta, bool exhaustive_fallback) {
    const int n = F.n();
    const int md = 2 * n;
    s %= md;
    if (s < 0) s += md;
    if (s == 0 || gcd_u64(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(n)) != 1)
        throw std::invalid_argument("classify: gcd(s, n) must be 1 with s not divisible by 2n");
    if (delta.enc == 0) throw std::invalid_argument("classify: delta must be nonzero");

    Fe nd = F.norm_rel(delta);
    if (nd == Fe{1}) {
        // the point <(1,0)> has weight n: never scattered
        return Classification{ScatterKind::NotScattered, false, false};
    }
    if (n == 3) {
        bool sc = lp_criterion_n3(F, n3_effective_delta(F, s, delta));
        return Classification{ScatterKind::CriterionN3, sc, false};
    }
    if (n == 4 && F.p() != 2 && F.mul(delta, delta) == F.neg(Fe{1})) {
        return Classification{ScatterKind::SpecialN4, true, false};
    }
    if (n >= threshold_n(F.q(), s)) {
        return Classification{ScatterKind::NotScattered, false, false};
    }
    Classification c{ScatterKind::Unknown, std::nullopt, false};
    if (exhaustive_fallback && F.order() <= (1ull << 20)) {
        c.scattered = is_scattered(delta_binomial(F, s, delta));
        c.via_enumeration = true;
    }
    return c;
}

std::vector<bool> norm_image(const FieldCtx& F, int s) {
    const int d = F.h() * F.n();
    std::vector<bool> hit(F.order(), false);
    for (std::uint64_t e = 0; e < F.order(); ++e) {
        Fe xi{e};
        if (F.in_subfield(xi, d)) continue;
        Fe db;
        try {
            db = delta_from_xi(F, xi, s);
        } catch (const ZeroDenominator&) {
            continue;  // reported by design: such xi are skipped
        }
        hit[F.norm_rel(db).enc] = true;
    }
    return hit;
}

std::uint64_t norm_image_count(const FieldCtx& F, int s) {
    auto hit = norm_image(F, s);
    std::uint64_t c = 0;
    for (bool b : hit) c += b ? 1 : 0;
    return c;
}

}  // namespace qbinom
