// gf.hpp -- exact arithmetic in finite field towers F_p < F_q < F_{q^n} < F_{q^2n}
//
// Elements are stored as their canonical base-p integer encoding (little-endian
// coefficient digits of the residue class mod the field's modulus).  All derived
// quantities (modulus, generator, "least"/"first found" results) are defined
// relative to that encoding order, so two runs produce identical values.
//
// Fields up to 2^20 elements carry log/exp (and, for odd p, Zech) tables; larger
// fields fall back to schoolbook coefficient arithmetic with the same observable
// behaviour.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbinom {

/// An element of a FieldCtx: the canonical base-p integer encoding.
struct Fe {
    std::uint32_t enc = 0;

    constexpr Fe() = default;
    constexpr explicit Fe(std::uint64_t e) : enc(static_cast<std::uint32_t>(e)) {}

    friend constexpr bool operator==(Fe a, Fe b) { return a.enc == b.enc; }
    friend constexpr bool operator!=(Fe a, Fe b) { return a.enc != b.enc; }
    friend constexpr bool operator<(Fe a, Fe b) { return a.enc < b.enc; }
};

/// Tower metadata: q = p^h and the subfield chain F_q < F_{q^n} < F_{q^2n},
/// with the full extension degree over F_p equal to 2nh.
struct Tower {
    int h = 1;
    int n = 1;
};

/// Thrown when a requested computation exceeds the desk-scale limits.
class SizeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class FieldCtx;

/// Power basis 1, u, u^2, ... of F_{q^md} over F_q, where u is the
/// least-encoding element of degree exactly md over F_q.  Provides coordinate
/// vectors (entries in F_q) of arbitrary elements.
class PowerBasis {
  public:
    Fe u;
    int md = 0;                 // dimension over F_q
    std::vector<Fe> powers;     // u^0 .. u^{md-1}

    /// Writes the md coordinates of x (elements of F_q) into out.
    void coords(const FieldCtx& F, Fe x, Fe* out) const;

  private:
    friend class FieldCtx;
    bool identity_ = false;               // coords == coefficient digits
    std::vector<std::uint32_t> inv_;      // deg x deg inverse over F_p, row-major
    std::vector<Fe> wpow_;                // w^0 .. w^{h-1}, F_p-basis of F_q
};

class FieldCtx {
  public:
    /// Builds F_{p^m} with the least-encoding monic irreducible modulus and the
    /// least-encoding primitive element.  Throws std::invalid_argument on bad
    /// parameters and SizeError when p^m > 2^32.
    static FieldCtx make(std::uint64_t p, int m, std::optional<Tower> tower = {});

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;
    FieldCtx(FieldCtx&&) = default;
    FieldCtx& operator=(FieldCtx&&) = default;

    std::uint32_t p() const { return p_; }
    int deg() const { return deg_; }                    // extension degree over F_p
    std::uint64_t order() const { return ord_; }        // p^deg
    const std::vector<std::uint32_t>& modulus() const { return mod_; }
    std::uint64_t modulus_encoding() const;             // base-p encoding incl. leading 1
    Fe generator() const { return g_; }
    bool has_tables() const { return has_tables_; }

    bool has_tower() const { return tower_.has_value(); }
    int h() const { return tower_ ? tower_->h : 1; }
    int n() const;                                      // throws without tower
    std::uint64_t q() const { return q_; }              // p^h
    int qdim() const { return deg_ / h(); }             // dimension over F_q (= 2n)
    std::uint64_t qn() const;                           // q^n, throws without tower

    // --- arithmetic ---------------------------------------------------------
    Fe add(Fe a, Fe b) const {
        if (p_ == 2) return Fe{a.enc ^ b.enc};
        if (has_tables_) return add_zech(a, b);
        return add_base(a, b);
    }
    Fe neg(Fe a) const {
        if (p_ == 2 || a.enc == 0) return a;
        if (has_tables_) {
            std::uint64_t e = log_[a.enc] + half_;
            if (e >= N_) e -= N_;
            return Fe{exp_[e]};
        }
        return neg_base(a);
    }
    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
    Fe mul(Fe a, Fe b) const {
        if (a.enc == 0 || b.enc == 0) return Fe{0};
        if (has_tables_) {
            std::uint64_t e = static_cast<std::uint64_t>(log_[a.enc]) + log_[b.enc];
            if (e >= N_) e -= N_;
            return Fe{exp_[e]};
        }
        return mul_base(a, b);
    }
    Fe inv(Fe a) const;                                 // throws on zero
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, std::uint64_t e) const;                // 0^0 = 1
    Fe frob(Fe a, int j) const;                         // x -> x^{p^j}
    Fe pow_q(Fe a, int k) const;                        // x -> x^{q^k}; k reduced mod 2n
    Fe scalar(std::int64_t c) const;                    // image of the integer c

    // --- tower maps and subfield queries -------------------------------------
    Fe norm_rel(Fe x) const;                            // x^{1+q^n}, lands in F_{q^n}
    Fe trace_rel(Fe x) const;                           // x + x^{q^n}, lands in F_{q^n}
    bool in_subfield(Fe x, int d) const;                // fixed by x -> x^{p^d}; d | deg
    bool is_square(Fe x) const;                         // inside F_{q^n}; odd p, x != 0
    bool is_square_in(Fe x, std::uint64_t Q) const;     // inside F_Q; odd p, x != 0
    Fe sqrt_least(Fe x) const;                          // least-encoding root in the full field
    Fe pick_nonsquare() const;                          // least nonsquare of F_{q^n} (odd p)
    Fe pick_trace_one() const;                          // least eps of F_{q^n}, Tr_{q^n/2}(eps)=1
    Fe tr2(Fe y, int k) const;                          // sum_{i<k} y^{2^i}  (p = 2)
    Fe trace_abs_q(Fe x) const;                         // Tr onto F_q: sum_{i<qdim} x^{q^i}
    std::vector<Fe> subfield_elements(int d) const;     // ascending encodings
    /// Elements of F_{q^n}, ascending; cached at construction (tower only).
    const std::vector<Fe>& qn_elements() const;

    // --- representation ------------------------------------------------------
    std::vector<std::uint32_t> coeffs(Fe x) const;      // little-endian digits, length deg
    Fe from_coeffs(const std::vector<std::uint32_t>& c) const;
    std::string to_string(Fe x) const { return std::to_string(x.enc); }
    /// Accepts a decimal encoding or a polynomial form like "1+2*t+t^3".
    Fe parse(const std::string& text) const;

    /// Power basis of F_{q^qdim} over F_q (built at construction for tower fields).
    const PowerBasis& power_basis() const;

  private:
    FieldCtx() = default;

    Fe add_zech(Fe a, Fe b) const {
        if (a.enc == 0) return b;
        if (b.enc == 0) return a;
        std::uint64_t la = log_[a.enc], lb = log_[b.enc];
        std::uint64_t k = lb >= la ? lb - la : lb + N_ - la;
        std::uint32_t z = zech_[k];
        if (z == kZechNone) return Fe{0};
        std::uint64_t e = la + z;
        if (e >= N_) e -= N_;
        return Fe{exp_[e]};
    }
    Fe add_base(Fe a, Fe b) const;
    Fe neg_base(Fe a) const;
    Fe mul_base(Fe a, Fe b) const;
    Fe pow_base(Fe a, std::uint64_t e) const;
    void decode(std::uint64_t e, std::uint32_t* d) const;
    std::uint64_t encode(const std::uint32_t* d) const;
    void build_tables();
    void build_power_basis();

    static constexpr std::uint64_t kTableLimit = 1ull << 20;
    static constexpr std::uint32_t kZechNone = 0xffffffffu;

    std::uint32_t p_ = 0;
    int deg_ = 0;
    std::uint64_t ord_ = 0;
    std::uint64_t N_ = 0;      // ord - 1
    std::uint64_t half_ = 0;   // log(-1) = N/2 for odd p
    std::uint64_t q_ = 0;
    std::optional<Tower> tower_;
    std::vector<std::uint32_t> mod_;          // length deg+1, monic
    Fe g_;
    bool has_tables_ = false;
    std::vector<std::uint32_t> exp_;          // size N
    std::vector<std::uint32_t> log_;          // size ord; log_[0] unused
    std::vector<std::uint32_t> zech_;         // odd p only
    std::vector<std::uint64_t> pj_mod_;       // p^j mod N for j < deg
    std::unique_ptr<PowerBasis> basis_;       // present when tower is set
    std::vector<Fe> qn_elems_;                // F_{q^n}, present when tower is set
};

/// gcd helper used for the s-parameter checks.
constexpr std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace qbinom
