// binomial.hpp -- the constructive pipeline for f_{a,b,s}(x) = x + a x^{q^s}
// + b x^{q^{n+s}}: delta from xi, dimension-2 kernel witnesses and their
// transport along norm classes, the four-condition system, the A,B,S,T
// relations, the n=3 quadratic criterion and the classification map.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qbinom/gf.hpp"
#include "qbinom/linpoly.hpp"

namespace qbinom {

/// Raised when a construction hits a zero denominator that the caller is
/// expected to skip (bad xi, bad x0).
class ZeroDenominator : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct BinomialParams {
    int s = 1;
    Fe a, b;

    /// Validates gcd(s, n) = 1 and normalizes s into [1, 2n-1].
    static BinomialParams make(const FieldCtx& F, int s, Fe a, Fe b);
    Fe delta(const FieldCtx& F) const;  // b/a, requires a != 0
    QPolynomial map(const FieldCtx& F) const;
    /// Adjoint member of the family: s'' = n-s (mod 2n), a'' = b^{q^{n-s}},
    /// b'' = a^{q^{2n-s}}; same kernel dimension.
    BinomialParams adjoint_params(const FieldCtx& F) const;
};

/// Self-verifying evidence that dim ker f_{a,delta a,s} = 2: x0 and xi*x0 are
/// two independent kernel vectors, and N(delta) not in {0,1} meets the known
/// upper bound of 2.
struct WitnessCertificate {
    int s = 1;
    Fe delta, a, x0, xi;

    /// Both kernel memberships, independence (xi outside F_q), x0 != 0,
    /// N(delta) not in {0,1}.
    bool verify(const FieldCtx& F) const;
    /// verify() plus an explicit kernel_dimension == 2 rank computation.
    bool verify_strong(const FieldCtx& F) const;
};

/// Eq-4 representative: (xi^{q^{s+n}} - xi^{q^n}) / (xi^{q^n} - xi^{q^s}).
/// Throws std::invalid_argument for xi in F_{q^n}, ZeroDenominator when the
/// denominator vanishes (possible for xi in intermediate subfields).
Fe delta_from_xi(const FieldCtx& F, Fe xi, int s);

/// Builds a dimension-2 witness from xi (not in F_q) and x0 != 0; throws
/// ZeroDenominator when this x0 is inadmissible for the derived delta.
WitnessCertificate witness_from_xi(const FieldCtx& F, Fe xi, int s, Fe x0);

/// witness_from_xi with x0 = 1, advancing x0 in encoding order on rejection.
WitnessCertificate witness_from_xi_auto(const FieldCtx& F, Fe xi, int s);

/// Moves a witness to delta' in the same norm class via the least lambda with
/// delta' = delta * lambda^{q^s(q^n-1)} (enumeration in encoding order).
WitnessCertificate transport_witness(const FieldCtx& F, const WitnessCertificate& cert,
                                     Fe delta_prime);

struct ConditionSystem {
    Fe T, S, A, B, alpha;
};

/// The four-condition test: the alpha-norm equation, irreducibility of
/// X^2 - SX - T, and the two A,B relations.  alpha in {0,1} is rejected.
bool check_conditions(const FieldCtx& F, const ConditionSystem& sys, int s);

struct AbRelations {
    Fe A, B, S, T;
};

/// S = Tr(xi), T = -N(xi), and the unique (A,B) in F_{q^n}^2 with
/// xi^{q^s} = A + B xi; asserts the two relation identities and the two trace
/// formulas before returning.
AbRelations ab_relations_from_xi(const FieldCtx& F, Fe xi, int s);

/// n = 3: true iff Y^2 - (Tr_{q^3/q}(A)-1) Y + N_{q^3/q}(A) has two distinct
/// roots in F_q, with A = -1/(N(delta)-1).  Decides scatteredness of f_{delta,2}.
bool lp_criterion_n3(const FieldCtx& F, Fe delta);

enum class ScatterKind { Scattered, NotScattered, CriterionN3, SpecialN4, Unknown };

struct Classification {
    ScatterKind kind = ScatterKind::Unknown;
    std::optional<bool> scattered;
    bool via_enumeration = false;
};

const char* to_string(ScatterKind k);

/// Classification of L_{delta,s}: norm-1 deltas are never scattered; n=3 uses
/// the quadratic criterion (s-normalized); n=4, q odd, delta^2=-1 is the
/// special scattered case; n at or above the threshold is never scattered;
/// otherwise Unknown (optionally settled by enumeration at desk scale).
Classification classify(const FieldCtx& F, int s, Fe delta, bool exhaustive_fallback = false);

/// Smallest n covered by the asymptotic theorem for given (q, s).
int threshold_n(std::uint64_t q, int s);

/// Characteristic vector (indexed by encoding) of {N(delta_bar(xi))} over all
/// admissible xi outside F_{q^n}.
std::vector<bool> norm_image(const FieldCtx& F, int s);
std::uint64_t norm_image_count(const FieldCtx& F, int s);

}  // namespace qbinom
