#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qbinom/curves.hpp"

using namespace qbinom;
using testutil::tower_field;

namespace {

// least beta of F_{q^n} admissible for the given parity
Fe first_valid_beta(const FieldCtx& F, Parity par) {
    for (Fe x : F.subfield_elements(F.h() * F.n())) {
        if (par == Parity::Odd) {
            if (x != Fe{1} && x != F.neg(Fe{1})) return x;
        } else {
            if (x != Fe{0} && x != Fe{1}) return x;
        }
    }
    throw std::logic_error("no valid beta");
}

// direct O(q^{2n}) pair scan, written independently of the bucketed counter
std::uint64_t oracle_affine_count_odd(const FieldCtx& F, const CurveSpec& spec) {
    const auto sub = F.subfield_elements(F.h() * F.n());
    const std::uint64_t qs = [&] {
        std::uint64_t r = 1;
        for (int i = 0; i < spec.s; ++i) r *= F.q();
        return r;
    }();
    std::uint64_t count = 0;
    for (Fe S : sub) {
        for (Fe Z : sub) {
            Fe d = F.sub(F.pow_q(S, spec.s), S);
            Fe lhs = F.neg(F.mul(d, d));
            lhs = F.add(lhs, F.mul(spec.aux, F.mul(Z, Z)));
            lhs = F.add(lhs, F.mul(F.pow_q(spec.aux, spec.s), F.pow(Z, 2 * qs)));
            Fe last = F.mul(F.scalar(2), F.mul(spec.beta,
                                               F.mul(F.pow(spec.aux, (qs + 1) / 2), F.pow(Z, qs + 1))));
            lhs = F.sub(lhs, last);
            if (lhs == Fe{0}) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_SUITE("curves") {

TEST_CASE("curve spec validation") {
    const FieldCtx& F3 = tower_field(3, 1, 2);
    const FieldCtx& F2 = tower_field(2, 1, 3);
    Fe eta = F3.pick_nonsquare();
    auto expect_invalid = [](const FieldCtx& F, CurveSpec spec) {
        CHECK_THROWS_AS(spec.validate(F), std::invalid_argument);
    };
    expect_invalid(F3, CurveSpec{Parity::Odd, 1, Fe{1}, eta, 1});
    expect_invalid(F3, CurveSpec{Parity::Odd, 1, F3.neg(Fe{1}), eta, 1});
    expect_invalid(F3, CurveSpec{Parity::Odd, 1, Fe{0}, Fe{1}, 1});  // eta = 1 is a square
    expect_invalid(F3, CurveSpec{Parity::Odd, 1, Fe{0}, eta, 3});
    expect_invalid(F2, CurveSpec{Parity::Odd, 1, Fe{0}, eta, 1});
    Fe eps = F2.pick_trace_one();
    expect_invalid(F2, CurveSpec{Parity::Even, 1, Fe{0}, eps, 1});
    Fe beta2 = first_valid_beta(F2, Parity::Even);
    expect_invalid(F2, CurveSpec{Parity::Even, 1, beta2, Fe{0}, 1});  // Tr(0) = 0
    CurveSpec ok{Parity::Even, 1, beta2, eps, 1};
    CHECK_NOTHROW(ok.validate(F2));
}

TEST_CASE("count_odd: origin is on the curve but never good") {
    const FieldCtx& F = tower_field(3, 1, 2);  // curve over F_9
    CurveSpec spec{Parity::Odd, 1, Fe{0}, F.pick_nonsquare(), 1};
    CHECK(on_curve(F, spec, Fe{0}, Fe{0}));
    CHECK_FALSE(good_point(F, spec, Fe{0}, Fe{0}));
    CurveCount c = count_curve(F, spec);
    CHECK(c.affine > 0);
    CHECK(c.good < c.affine);
}

TEST_CASE("count_odd agrees with a direct pair scan over F_9") {
    const FieldCtx& F = tower_field(3, 1, 2);
    Fe eta = F.pick_nonsquare();
    const auto sub = F.subfield_elements(2);
    for (Fe beta : sub) {
        if (beta == Fe{1} || beta == F.neg(Fe{1})) continue;
        CurveSpec spec{Parity::Odd, 1, beta, eta, 1};
        CurveCount c = count_curve(F, spec);
        CHECK(c.affine == oracle_affine_count_odd(F, spec));
        CHECK(c.affine == affine_points(F, spec).size());
    }
}

TEST_CASE("count_odd: F_243 instance sits inside the Hasse-Weil window") {
    const FieldCtx& F = tower_field(3, 1, 5);  // q=3, s=1, curve over F_243
    Fe eta = F.pick_nonsquare();
    const auto sub = F.subfield_elements(5);
    int checked = 0;
    for (Fe beta : sub) {
        if (beta == Fe{1} || beta == F.neg(Fe{1})) continue;
        CurveSpec spec{Parity::Odd, 1, beta, eta, 1};
        CurveCount c = count_curve(F, spec);
        CHECK(c.genus == 5);
        // window [243+1-10*sqrt(243), 243+1+10*sqrt(243)] ~ [88.1, 399.9]
        CHECK(c.hw_low == doctest::Approx(88.08).epsilon(0.01));
        CHECK(c.affine >= 88);
        CHECK(c.affine <= 400);
        CHECK(c.good > 0);
        CHECK(c.ok);
        if (++checked >= 12) break;
    }
}

TEST_CASE("count_even: no affine point has S = 0, window at F_32 and F_128") {
    const FieldCtx& F = tower_field(2, 1, 5);
    Fe eps = F.pick_trace_one();
    const auto sub = F.subfield_elements(5);
    for (Fe beta : sub) {
        if (beta == Fe{0} || beta == Fe{1}) continue;
        CurveSpec spec{Parity::Even, 1, beta, eps};
        for (Fe Z : sub) CHECK_FALSE(on_curve(F, spec, Fe{0}, Z));
        CurveCount c = count_curve(F, spec);
        CHECK(c.genus == 1);
        CHECK(c.good == c.affine);  // S != 0 and Y != 0 hold on every affine point
        CHECK(c.affine >= 22);
        CHECK(c.affine <= 44);
        CHECK(c.good > 0);
        CHECK(c.ok);
    }
    SUBCASE("q=2 s=3 n=7: good and affine differ at most by the bad-place count") {
        const FieldCtx& G = tower_field(2, 1, 7);
        CurveSpec spec{Parity::Even, 3, first_valid_beta(G, Parity::Even), G.pick_trace_one()};
        CurveCount c = count_curve(G, spec);
        CHECK(c.affine - c.good <= 2 * 8 + 2);
        CHECK(c.ok);
    }
}

TEST_CASE("split_check_even") {
    const FieldCtx& F = tower_field(2, 1, 3);  // grid over F_8
    const auto sub = F.subfield_elements(3);
    for (Fe beta : sub) CHECK(split_check_even(F, beta, 1));

    SUBCASE("Y = 0 specialization: H(S,0) = (beta^2+beta) S^{2(q^s-1)}") {
        Fe beta{3};
        for (Fe S : sub) {
            Fe s1 = F.mul(S, S);  // S^{2(q^s-1)} with q^s = 2
            Fe h0 = F.mul(F.add(F.mul(beta, beta), beta), s1);
            // G(S,0) * G'(S,0) = S^{q^s-1}(1+beta) * S^{q^s-1} beta
            Fe gg = F.mul(F.mul(S, F.add(Fe{1}, beta)), F.mul(S, beta));
            CHECK(h0 == gg);
        }
    }
    SUBCASE("odd characteristic rejected") {
        CHECK_THROWS_AS(split_check_even(tower_field(3, 1, 2), Fe{0}, 1), std::invalid_argument);
    }
}

TEST_CASE("round trip: every good point of the even F_8 curves yields a certificate") {
    const FieldCtx& F = tower_field(2, 1, 3);
    Fe eps = F.pick_trace_one();
    const auto sub = F.subfield_elements(3);
    int total = 0;
    for (Fe beta : sub) {
        if (beta == Fe{0} || beta == Fe{1}) continue;
        CurveSpec spec{Parity::Even, 1, beta, eps};
        for (auto& [S, Z] : affine_points(F, spec)) {
            REQUIRE(good_point(F, spec, S, Z));
            CurveRoundTrip rt = params_from_curve_point(F, spec, S, Z);
            CHECK(check_conditions(F, rt.sys, spec.s));
            CHECK(rt.cert.verify_strong(F));
            CHECK(F.norm_rel(rt.cert.delta) == rt.alpha_realized);
            CHECK(rt.alpha_realized == F.div(beta, F.add(Fe{1}, beta)));
            ++total;
        }
    }
    CHECK(total == 54);  // frozen from an independent prototype of the pipeline
}

TEST_CASE("round trip: odd curves over F_9, both requested signs") {
    const FieldCtx& F = tower_field(3, 1, 2);
    Fe eta = F.pick_nonsquare();
    const Fe one{1};
    int trips = 0;
    for (std::uint64_t be = 0; be < F.order() && trips < 60; ++be) {
        Fe beta{be};
        if (!F.in_subfield(beta, 2) || beta == one || beta == F.neg(one)) continue;
        for (int sign : {1, -1}) {
            CurveSpec spec{Parity::Odd, 1, beta, eta, sign};
            for (auto& [S, Z] : affine_points(F, spec)) {
                if (!good_point(F, spec, S, Z)) continue;
                CurveRoundTrip rt = params_from_curve_point(F, spec, S, Z);
                CHECK(check_conditions(F, rt.sys, spec.s));
                CHECK(rt.cert.verify_strong(F));
                // the xi relation always realizes the + sign
                CHECK(rt.sign_realized == 1);
                CHECK(rt.alpha_realized == F.div(F.sub(beta, one), F.add(beta, one)));
                CHECK(F.norm_rel(rt.cert.delta) == rt.alpha_realized);
                ++trips;
            }
        }
    }
    CHECK(trips > 0);
}

TEST_CASE("round trip with transport to a requested delta") {
    const FieldCtx& F = tower_field(2, 1, 5);
    Fe eps = F.pick_trace_one();
    CurveSpec spec{Parity::Even, 1, first_valid_beta(F, Parity::Even), eps};
    spec.validate(F);
    auto pts = affine_points(F, spec);
    REQUIRE_FALSE(pts.empty());
    auto [S, Z] = pts.front();
    CurveRoundTrip probe = params_from_curve_point(F, spec, S, Z);
    // least delta in the realized norm class
    Fe target{0};
    for (std::uint64_t e = 1; e < F.order(); ++e)
        if (F.norm_rel(Fe{e}) == probe.alpha_realized) {
            target = Fe{e};
            break;
        }
    REQUIRE(target.enc != 0);
    CurveRoundTrip rt = params_from_curve_point(F, spec, S, Z, target);
    CHECK(rt.cert.delta == target);
    CHECK(rt.cert.verify_strong(F));
    // a mismatched class is rejected
    Fe bad{1};
    REQUIRE(F.norm_rel(bad) != probe.alpha_realized);
    CHECK_THROWS_AS(params_from_curve_point(F, spec, S, Z, bad), std::invalid_argument);
}

TEST_CASE("params_from_curve_point rejects non-good points") {
    const FieldCtx& F = tower_field(3, 1, 2);
    CurveSpec spec{Parity::Odd, 1, Fe{0}, F.pick_nonsquare(), 1};
    CHECK_THROWS_AS(params_from_curve_point(F, spec, Fe{0}, Fe{0}), std::invalid_argument);
}

}  // TEST_SUITE
