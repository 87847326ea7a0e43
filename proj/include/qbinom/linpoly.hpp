// linpoly.hpp -- q-linearized polynomials as F_q-linear maps of F_{q^m},
// reduced mod x^{q^m} - x: evaluation, kernel dimension via matrix rank,
// adjoint, weight spectra of the linear set L_f, scatteredness.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qbinom/gf.hpp"

namespace qbinom {

class QPolynomial {
  public:
    explicit QPolynomial(const FieldCtx& F);  // the zero map
    static QPolynomial from_coeffs(const FieldCtx& F, std::vector<Fe> coeffs);
    /// Text form "a0,a1,...,a_{m-1}" of integer encodings (short lists padded).
    static QPolynomial parse(const FieldCtx& F, const std::string& text);

    const FieldCtx& ctx() const { return *F_; }
    int m() const { return static_cast<int>(c_.size()); }  // dim of F_{q^m} over F_q
    const std::vector<Fe>& coeffs() const { return c_; }

    /// Adds a*x^{q^i}; the exponent is reduced mod m, colliding terms add up.
    void add_term(int i, Fe a);

    Fe evaluate(Fe x) const;
    /// dim over F_q of {x : f(x) = 0}, computed as m minus the rank of the
    /// coordinate matrix of f on the deterministic power basis.
    int kernel_dimension() const;
    QPolynomial adjoint() const;
    /// x -> lambda^{-1} f(lambda x); coefficient i becomes a_i lambda^{q^i-1}.
    QPolynomial conjugated(Fe lambda) const;
    QPolynomial scaled(Fe c) const;

    int qdegree() const;  // -1 for the zero map
    bool is_scalar_multiple_of_identity() const;
    bool operator==(const QPolynomial& other) const { return c_ == other.c_; }
    std::string to_string() const;

  private:
    const FieldCtx* F_;
    std::vector<Fe> c_;
};

/// Point weights of the linear set L_f on PG(1, q^m): entries maps a weight
/// w >= 1 to the number of projective points of that weight.  The point
/// <(0,1)> is tracked separately (always weight 0 for graph subspaces U_f).
struct WeightSpectrum {
    std::map<int, std::uint64_t> entries;
    int weight_at_infinity = 0;

    int max_weight() const;
    std::uint64_t points() const;
};

/// Buckets every nonzero x by f(x)/x (kernel elements land on the ratio-0
/// point); bucket sizes must be q^w - 1.  O(q^m) evaluations.
WeightSpectrum weight_spectrum(const QPolynomial& f);

/// True iff every point of L_f has weight 1 (single pass, early exit).
bool is_scattered(const QPolynomial& f);

/// f_{a,b,s}(x) = x + a x^{q^s} + b x^{q^{n+s}} over F_{q^{2n}}.
QPolynomial binomial_map(const FieldCtx& F, int s, Fe a, Fe b);

/// f_{delta,s}(x) = x^{q^s} + delta x^{q^{n+s}} over F_{q^{2n}}.
QPolynomial delta_binomial(const FieldCtx& F, int s, Fe delta);

}  // namespace qbinom
