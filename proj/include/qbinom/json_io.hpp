// json_io.hpp -- JSON views of the public result types (integer encodings
// throughout), shared by the CLI and the test suites.

#pragma once

#include <json.hpp>

#include "qbinom/binomial.hpp"
#include "qbinom/curves.hpp"
#include "qbinom/rmcode.hpp"

namespace qbinom {

inline nlohmann::json to_json(const FieldCtx& F, const WitnessCertificate& cert) {
    return nlohmann::json{{"q", F.q()},
                          {"n", F.n()},
                          {"s", cert.s},
                          {"delta", cert.delta.enc},
                          {"a", cert.a.enc},
                          {"x0", cert.x0.enc},
                          {"xi", cert.xi.enc},
                          {"verified", cert.verify(F)}};
}

inline nlohmann::json to_json(const FieldCtx& F, const CurveSpec& spec, const CurveCount& c) {
    nlohmann::json j{{"parity", spec.parity == Parity::Odd ? "odd" : "even"},
                     {"q", F.q()},
                     {"n", F.n()},
                     {"s", spec.s},
                     {"beta", spec.beta.enc},
                     {"aux", spec.aux.enc},
                     {"affine", c.affine},
                     {"good", c.good},
                     {"hw_low", c.hw_low},
                     {"hw_high", c.hw_high},
                     {"slack", c.slack},
                     {"ok", c.ok}};
    if (spec.parity == Parity::Odd) j["sign"] = spec.sign;
    return j;
}

inline nlohmann::json to_json(const RankCode& rc) {
    nlohmann::json dist = nlohmann::json::object();
    for (auto& [r, c] : rc.rank_distribution) dist[std::to_string(r)] = c;
    return nlohmann::json{{"q", rc.q},
                          {"m", rc.m},
                          {"params", {rc.m, rc.m, rc.q, rc.min_distance}},
                          {"mrd", rc.mrd},
                          {"max_weight", rc.max_weight},
                          {"rank_distribution", dist}};
}

}  // namespace qbinom
