// curves.hpp -- brute-force point enumeration on the auxiliary plane curves
// over F_{q^n}, Hasse-Weil consistency windows, the char-2 factorization
// check, and the round trip from a curve point to a verified kernel witness.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qbinom/binomial.hpp"
#include "qbinom/gf.hpp"

namespace qbinom {

enum class Parity { Odd, Even };

struct CurveSpec {
    Parity parity = Parity::Odd;
    int s = 1;
    Fe beta;   // odd: beta not in {1,-1}; even: beta not in {0,1}
    Fe aux;    // odd: nonsquare eta; even: eps with Tr_{q^n/2}(eps) = 1
    int sign = +1;  // odd q only; the epsilon in B = eps * Delta^{(q^s-1)/2}

    void validate(const FieldCtx& F) const;  // throws std::invalid_argument
};

struct CurveCount {
    std::uint64_t affine = 0;  // affine points (S,Z) in F_{q^n}^2 on the curve
    std::uint64_t good = 0;    // points usable for the witness construction
    std::uint64_t genus = 0;   // q^{2s} - q^s - 1, consumed as a constant
    double hw_low = 0, hw_high = 0;
    int slack = 0;             // bad-place count plus singular/infinity allowance
    bool ok = false;           // affine inside [hw_low - slack, hw_high + slack]
};

CurveCount count_curve(const FieldCtx& F, const CurveSpec& spec);

/// Affine points in lexicographic (S, Z) encoding order.
std::vector<std::pair<Fe, Fe>> affine_points(const FieldCtx& F, const CurveSpec& spec);

bool on_curve(const FieldCtx& F, const CurveSpec& spec, Fe S, Fe Z);
bool good_point(const FieldCtx& F, const CurveSpec& spec, Fe S, Fe Z);

struct CurveRoundTrip {
    ConditionSystem sys;     // built with the sign requested in the spec
    int sign_realized = +1;  // sign actually carried by the xi relation
    Fe alpha_realized;       // N(cert.delta)
    WitnessCertificate cert;
};

/// Curve point -> condition system -> xi -> witness.  Asserts the conditions
/// and the realized norm class; optionally transports the certificate to a
/// requested delta (whose norm must equal alpha_realized).
CurveRoundTrip params_from_curve_point(const FieldCtx& F, const CurveSpec& spec, Fe S, Fe Z,
                                       std::optional<Fe> transport_to = {});

/// Pointwise check of H(S,Y) = G(S,Y) * G'(S,Y) on the full F_{q^n}^2 grid
/// (q even, q^n <= 2^10).
bool split_check_even(const FieldCtx& F, Fe beta, int s);

}  // namespace qbinom
