#include <doctest.h>

#include "helpers.hpp"
#include "qbinom/rmcode.hpp"

using namespace qbinom;
using testutil::random_nonzero;
using testutil::tower_field;

TEST_SUITE("rmcode") {

TEST_CASE("pseudoregulus code: d = m - 1, MRD") {
    const FieldCtx& F = tower_field(2, 1, 2);  // F_16, m = 4
    QPolynomial f(F);
    f.add_term(1, Fe{1});  // x^q
    RankCode rc = analyze_code(f);
    CHECK(rc.min_distance == 3);
    CHECK(rc.mrd);
    CHECK(is_mrd(f));
}

TEST_CASE("degenerate maps are rejected") {
    const FieldCtx& F = tower_field(2, 1, 2);
    QPolynomial id = QPolynomial::from_coeffs(F, {Fe{1}});
    CHECK_THROWS_AS(analyze_code(id), std::invalid_argument);
    QPolynomial scl = QPolynomial::from_coeffs(F, {F.generator()});
    CHECK_THROWS_AS(analyze_code(scl), std::invalid_argument);
    QPolynomial zero(F);
    CHECK_THROWS_AS(analyze_code(zero), std::invalid_argument);
}

TEST_CASE("rank distribution against a full codeword scan") {
    const FieldCtx& F = tower_field(2, 1, 2);  // q^{2m} = 256 codewords
    for (int trial = 0; trial < 10; ++trial) {
        QPolynomial f(F);
        f.add_term(1, random_nonzero(F));
        f.add_term(2, random_nonzero(F));
        RankCode rc = analyze_code(f);

        std::map<int, std::uint64_t> direct;
        int dmin = rc.m;
        for (std::uint64_t ae = 0; ae < F.order(); ++ae)
            for (std::uint64_t be = 0; be < F.order(); ++be) {
                QPolynomial w = f.scaled(Fe{ae});
                w.add_term(0, Fe{be});
                int rank = rc.m - w.kernel_dimension();
                ++direct[rank];
                if (rank > 0) dmin = std::min(dmin, rank);
            }
        CHECK(direct == rc.rank_distribution);
        CHECK(dmin == rc.min_distance);
    }
}

TEST_CASE("distribution totals") {
    const FieldCtx& F = tower_field(3, 1, 2);  // F_81, m = 4
    QPolynomial f = delta_binomial(F, 1, F.generator());
    RankCode rc = analyze_code(f);
    std::uint64_t total = 0;
    for (auto& [r, c] : rc.rank_distribution) total += c;
    CHECK(total == F.order() * F.order());  // q^{2m}
    CHECK(rc.rank_distribution.at(0) == 1);
}

TEST_CASE("binomial family: MRD iff scattered") {
    for (auto* Fp : {&tower_field(2, 1, 2), &tower_field(3, 1, 1), &tower_field(2, 1, 3)}) {
        const FieldCtx& F = *Fp;
        for (int i = 0; i < 40; ++i) {
            Fe d = random_nonzero(F);
            QPolynomial f = delta_binomial(F, 1, d);
            CHECK(is_mrd(f) == is_scattered(f));
        }
    }
}

TEST_CASE("q=2 n=5: never MRD; minimum distance follows the max weight") {
    const FieldCtx& F = tower_field(2, 1, 5);
    for (std::uint64_t e = 1; e < F.order(); e += 11) {
        Fe d{e};
        RankCode rc = analyze_code(delta_binomial(F, 1, d));
        CHECK_FALSE(rc.mrd);
        CHECK(rc.min_distance == 10 - rc.max_weight);
        if (F.norm_rel(d) != Fe{1}) {
            CHECK(rc.max_weight == 2);
            CHECK(rc.min_distance == 8);  // 2n - 2, not the n - 2 = 3 candidate
        } else {
            CHECK(rc.max_weight == 5);  // the point <(1,0)> has weight n
        }
    }
}

TEST_CASE("n=4 special case is MRD with d = 2n - 1") {
    const FieldCtx& F = tower_field(3, 1, 4);
    for (std::uint64_t e = 1; e < F.order(); ++e) {
        Fe d{e};
        if (F.mul(d, d) != F.neg(Fe{1})) continue;
        RankCode rc = analyze_code(delta_binomial(F, 1, d));
        CHECK(rc.mrd);
        CHECK(rc.min_distance == 7);
    }
}

}  // TEST_SUITE
