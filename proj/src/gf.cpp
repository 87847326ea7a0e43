#include "qbinom/gf.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace qbinom {

namespace {

constexpr int kMaxDeg = 32;

// --- dense polynomial arithmetic over F_p, used only during construction ----

int pdeg(const std::vector<std::uint32_t>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

std::vector<std::uint32_t> pmulmod(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b,
                                   const std::vector<std::uint32_t>& mod,
                                   std::uint64_t p) {
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    const int dm = static_cast<int>(mod.size()) - 1;
    for (int i = static_cast<int>(acc.size()) - 1; i >= dm; --i) {
        std::uint64_t c = acc[i];
        if (!c) continue;
        for (int j = 0; j <= dm; ++j) {
            std::uint64_t sub = (c * mod[j]) % p;
            acc[i - dm + j] = (acc[i - dm + j] + p - sub) % p;
        }
    }
    std::vector<std::uint32_t> res(dm, 0);
    for (int i = 0; i < dm && i < static_cast<int>(acc.size()); ++i)
        res[i] = static_cast<std::uint32_t>(acc[i]);
    return res;
}

std::vector<std::uint32_t> ppowmod(std::vector<std::uint32_t> base, std::uint64_t e,
                                   const std::vector<std::uint32_t>& mod, std::uint64_t p) {
    std::vector<std::uint32_t> r(mod.size() - 1, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = pmulmod(r, base, mod, p);
        base = pmulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    // p prime; Fermat
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

std::vector<std::uint32_t> pgcd(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                                std::uint64_t p) {
    while (true) {
        int db = pdeg(b);
        if (db < 0) return a;
        int da = pdeg(a);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        std::uint64_t c = (static_cast<std::uint64_t>(a[da]) * mod_inverse(b[db], p)) % p;
        for (int j = 0; j <= db; ++j) {
            std::uint64_t sub = (c * b[j]) % p;
            a[da - db + j] = static_cast<std::uint32_t>((a[da - db + j] + p - sub) % p);
        }
        if (pdeg(a) < pdeg(b)) std::swap(a, b);
    }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            fs.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) fs.push_back(v);
    return fs;
}

// x^{p^d} gcd test
bool poly_irreducible(const std::vector<std::uint32_t>& f, std::uint64_t p) {
    const int m = static_cast<int>(f.size()) - 1;
    if (m == 1) return true;
    std::vector<std::uint32_t> x(m, 0);
    if (m > 1) x[1] = 1;
    std::uint64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    auto xp = ppowmod(x, pm, f, p);
    // x^{p^m} == x mod f
    auto diff = xp;
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    if (pdeg(diff) >= 0) return false;
    for (std::uint64_t r : prime_factors(m)) {
        std::uint64_t pd = 1;
        for (std::uint64_t i = 0; i < m / r; ++i) pd *= p;
        auto xd = ppowmod(x, pd, f, p);
        xd[1] = static_cast<std::uint32_t>((xd[1] + p - 1) % p);
        auto g = pgcd(f, xd, p);
        if (pdeg(g) != 0) return false;
    }
    return true;
}

bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

}  // namespace

// --- construction ------------------------------------------------------------

FieldCtx FieldCtx::make(std::uint64_t p, int m, std::optional<Tower> tower) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
    if (m < 1) throw std::invalid_argument("extension degree must be positive");
    if (m > kMaxDeg) throw SizeError("extension degree beyond desk scale");
    long double sz = 1;
    for (int i = 0; i < m; ++i) sz *= static_cast<long double>(p);
    if (sz > 4294967296.0L) throw SizeError("field size p^m exceeds 2^32");
    if (tower) {
        if (tower->h < 1 || tower->n < 1 || 2 * tower->n * tower->h != m)
            throw std::invalid_argument("tower inconsistent with extension degree (m != 2nh)");
    }

    FieldCtx F;
    F.p_ = static_cast<std::uint32_t>(p);
    F.deg_ = m;
    F.ord_ = 1;
    for (int i = 0; i < m; ++i) F.ord_ *= p;
    F.N_ = F.ord_ - 1;
    F.half_ = F.N_ / 2;
    F.tower_ = tower;
    F.q_ = 1;
    for (int i = 0; i < F.h(); ++i) F.q_ *= p;

    // least-encoding monic irreducible modulus
    std::vector<std::uint32_t> f(m + 1, 0);
    f[m] = 1;
    bool found = false;
    std::uint64_t limit = F.ord_;
    for (std::uint64_t c = 0; c < limit; ++c) {
        std::uint64_t v = c;
        for (int i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (poly_irreducible(f, p)) {
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");
    F.mod_ = f;

    // least-encoding primitive element, by order test against prime factors
    auto factors = prime_factors(F.N_);
    for (std::uint64_t cand = 1; cand < F.ord_; ++cand) {
        Fe c{cand};
        bool primitive = true;
        for (std::uint64_t r : factors) {
            if (F.pow_base(c, F.N_ / r) == Fe{1}) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            F.g_ = c;
            break;
        }
    }
    if (F.g_ == Fe{0}) throw std::logic_error("no primitive element found");

    if (F.ord_ <= kTableLimit) F.build_tables();
    if (tower) {
        F.build_power_basis();
        F.qn_elems_ = F.subfield_elements(F.h() * F.n());
    }
    return F;
}

void FieldCtx::build_tables() {
    exp_.assign(N_, 0);
    log_.assign(ord_, 0);
    Fe x{1};
    for (std::uint64_t i = 0; i < N_; ++i) {
        exp_[i] = x.enc;
        log_[x.enc] = static_cast<std::uint32_t>(i);
        x = mul_base(x, g_);
    }
    if (x != Fe{1}) throw std::logic_error("generator order mismatch");
    pj_mod_.assign(deg_, 0);
    std::uint64_t pj = 1 % N_;
    for (int j = 0; j < deg_; ++j) {
        pj_mod_[j] = pj;
        pj = (pj * p_) % N_;
    }
    if (p_ != 2) {
        zech_.assign(N_, kZechNone);
        for (std::uint64_t k = 0; k < N_; ++k) {
            // 1 + g^k touches only the constant digit
            std::uint64_t e = exp_[k];
            std::uint32_t d0 = static_cast<std::uint32_t>(e % p_);
            std::uint64_t s = (d0 == p_ - 1) ? e - d0 : e + 1;
            if (s != 0) zech_[k] = log_[s];
        }
    }
    has_tables_ = true;
}

// --- base (schoolbook) paths ---------------------------------------------------

void FieldCtx::decode(std::uint64_t e, std::uint32_t* d) const {
    for (int i = 0; i < deg_; ++i) {
        d[i] = static_cast<std::uint32_t>(e % p_);
        e /= p_;
    }
}

std::uint64_t FieldCtx::encode(const std::uint32_t* d) const {
    std::uint64_t e = 0;
    for (int i = deg_ - 1; i >= 0; --i) e = e * p_ + d[i];
    return e;
}

Fe FieldCtx::add_base(Fe a, Fe b) const {
    std::array<std::uint32_t, kMaxDeg> da{}, db{};
    decode(a.enc, da.data());
    decode(b.enc, db.data());
    for (int i = 0; i < deg_; ++i) {
        da[i] += db[i];
        if (da[i] >= p_) da[i] -= p_;
    }
    return Fe{encode(da.data())};
}

Fe FieldCtx::neg_base(Fe a) const {
    std::array<std::uint32_t, kMaxDeg> da{};
    decode(a.enc, da.data());
    for (int i = 0; i < deg_; ++i)
        if (da[i]) da[i] = p_ - da[i];
    return Fe{encode(da.data())};
}

Fe FieldCtx::mul_base(Fe a, Fe b) const {
    if (a.enc == 0 || b.enc == 0) return Fe{0};
    std::array<std::uint32_t, kMaxDeg> da{}, db{};
    std::array<std::uint64_t, 2 * kMaxDeg> acc{};
    decode(a.enc, da.data());
    decode(b.enc, db.data());
    for (int i = 0; i < deg_; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < deg_; ++j)
            acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_;
    }
    for (int i = 2 * deg_ - 2; i >= deg_; --i) {
        std::uint64_t c = acc[i];
        if (!c) continue;
        for (int j = 0; j <= deg_; ++j) {
            std::uint64_t sub = (c * mod_[j]) % p_;
            acc[i - deg_ + j] = (acc[i - deg_ + j] + p_ - sub) % p_;
        }
    }
    std::array<std::uint32_t, kMaxDeg> res{};
    for (int i = 0; i < deg_; ++i) res[i] = static_cast<std::uint32_t>(acc[i]);
    return Fe{encode(res.data())};
}

Fe FieldCtx::pow_base(Fe a, std::uint64_t e) const {
    if (a.enc == 0) return e == 0 ? Fe{1} : Fe{0};
    if (N_ > 0) e %= N_;
    Fe r{1}, b = a;
    while (e) {
        if (e & 1) r = mul_base(r, b);
        b = mul_base(b, b);
        e >>= 1;
    }
    return r;
}

// --- generic arithmetic --------------------------------------------------------

Fe FieldCtx::inv(Fe a) const {
    if (a.enc == 0) throw std::invalid_argument("division by zero");
    if (has_tables_) {
        std::uint64_t l = log_[a.enc];
        return Fe{exp_[l == 0 ? 0 : N_ - l]};
    }
    return pow_base(a, N_ - 1);  // a^{ord-2}
}

Fe FieldCtx::pow(Fe a, std::uint64_t e) const {
    if (a.enc == 0) return e == 0 ? Fe{1} : Fe{0};
    if (has_tables_) {
        std::uint64_t l = log_[a.enc];
        std::uint64_t ee = e % N_;
        return Fe{exp_[(l * ee) % N_]};
    }
    return pow_base(a, e);
}

Fe FieldCtx::frob(Fe a, int j) const {
    j %= deg_;
    if (j < 0) j += deg_;
    if (j == 0 || a.enc == 0) return a;
    if (has_tables_) {
        std::uint64_t l = log_[a.enc];
        return Fe{exp_[(l * pj_mod_[j]) % N_]};
    }
    std::uint64_t e = 1;
    for (int i = 0; i < j; ++i) e *= p_;
    return pow_base(a, e);
}

Fe FieldCtx::pow_q(Fe a, int k) const {
    if (!tower_) throw std::invalid_argument("pow_q requires tower metadata");
    int md = qdim();
    k %= md;
    if (k < 0) k += md;
    return frob(a, (h() * k) % deg_);
}

Fe FieldCtx::scalar(std::int64_t c) const {
    std::int64_t r = c % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fe{static_cast<std::uint64_t>(r)};
}

// --- tower maps ----------------------------------------------------------------

int FieldCtx::n() const {
    if (!tower_) throw std::invalid_argument("operation requires tower metadata");
    return tower_->n;
}

std::uint64_t FieldCtx::qn() const {
    if (!tower_) throw std::invalid_argument("operation requires tower metadata");
    std::uint64_t r = 1;
    for (int i = 0; i < tower_->n; ++i) r *= q_;
    return r;
}

std::uint64_t FieldCtx::modulus_encoding() const {
    std::uint64_t e = 0;
    for (int i = deg_; i >= 0; --i) e = e * p_ + mod_[i];
    return e;
}

Fe FieldCtx::norm_rel(Fe x) const {
    Fe r = mul(x, pow_q(x, n()));
    if (!in_subfield(r, h() * n())) throw std::logic_error("norm left the subfield");
    return r;
}

Fe FieldCtx::trace_rel(Fe x) const {
    Fe r = add(x, pow_q(x, n()));
    if (!in_subfield(r, h() * n())) throw std::logic_error("trace left the subfield");
    return r;
}

bool FieldCtx::in_subfield(Fe x, int d) const {
    if (d < 1 || deg_ % d != 0) throw std::invalid_argument("subfield degree does not divide field degree");
    return frob(x, d % deg_) == x;
}

bool FieldCtx::is_square_in(Fe x, std::uint64_t Q) const {
    if (p_ == 2) throw std::invalid_argument("is_square requires odd characteristic");
    if (x.enc == 0) throw std::invalid_argument("is_square is undefined at zero");
    return pow(x, (Q - 1) / 2) == Fe{1};
}

bool FieldCtx::is_square(Fe x) const {
    std::uint64_t Q = qn();
    if (p_ != 2 && x.enc != 0 && !in_subfield(x, h() * n()))
        throw std::invalid_argument("is_square: element outside F_{q^n}");
    return is_square_in(x, Q);
}

Fe FieldCtx::sqrt_least(Fe x) const {
    if (p_ == 2) throw std::invalid_argument("sqrt_least requires odd characteristic");
    if (x.enc == 0) return Fe{0};
    if (has_tables_) {
        std::uint64_t l = log_[x.enc];
        if (l & 1) throw std::invalid_argument("sqrt_least: not a square");
        Fe r{exp_[l / 2]};
        Fe r2 = neg(r);
        return r2 < r ? r2 : r;
    }
    for (std::uint64_t e = 0; e < ord_; ++e) {
        Fe y{e};
        if (mul(y, y) == x) return y;
    }
    throw std::invalid_argument("sqrt_least: not a square");
}

Fe FieldCtx::pick_nonsquare() const {
    if (p_ == 2) throw std::invalid_argument("pick_nonsquare requires odd characteristic");
    int d = h() * n();
    for (std::uint64_t e = 1; e < ord_; ++e) {
        Fe x{e};
        if (!in_subfield(x, d)) continue;
        if (!is_square(x)) return x;
    }
    throw std::logic_error("no nonsquare found");
}

Fe FieldCtx::pick_trace_one() const {
    if (p_ != 2) throw std::invalid_argument("pick_trace_one requires characteristic 2");
    int d = h() * n();
    for (std::uint64_t e = 0; e < ord_; ++e) {
        Fe x{e};
        if (!in_subfield(x, d)) continue;
        if (tr2(x, d) == Fe{1}) return x;
    }
    throw std::logic_error("no trace-one element found");
}

Fe FieldCtx::tr2(Fe y, int k) const {
    if (p_ != 2) throw std::invalid_argument("tr2 requires characteristic 2");
    Fe t{0}, cur = y;
    for (int i = 0; i < k; ++i) {
        t = add(t, cur);
        cur = mul(cur, cur);
    }
    return t;
}

Fe FieldCtx::trace_abs_q(Fe x) const {
    Fe t{0};
    for (int i = 0; i < qdim(); ++i) t = add(t, pow_q(x, i));
    return t;
}

std::vector<Fe> FieldCtx::subfield_elements(int d) const {
    std::vector<Fe> out;
    for (std::uint64_t e = 0; e < ord_; ++e) {
        Fe x{e};
        if (in_subfield(x, d)) out.push_back(x);
    }
    return out;
}

const std::vector<Fe>& FieldCtx::qn_elements() const {
    if (!tower_) throw std::invalid_argument("qn_elements requires tower metadata");
    return qn_elems_;
}

// --- representation --------------------------------------------------------------

std::vector<std::uint32_t> FieldCtx::coeffs(Fe x) const {
    std::vector<std::uint32_t> d(deg_);
    decode(x.enc, d.data());
    return d;
}

Fe FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (static_cast<int>(c.size()) > deg_) throw std::invalid_argument("too many coefficients");
    std::array<std::uint32_t, kMaxDeg> d{};
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
        d[i] = c[i];
    }
    return Fe{encode(d.data())};
}

Fe FieldCtx::parse(const std::string& text) const {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty element literal");
    if (s.find('t') == std::string::npos) {
        std::uint64_t v = 0;
        for (char ch : s) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw std::invalid_argument("bad element literal: " + text);
            v = v * 10 + static_cast<std::uint64_t>(ch - '0');
            if (v >= ord_) throw std::invalid_argument("element encoding out of range: " + text);
        }
        return Fe{v};
    }
    // polynomial form: terms "c", "t", "c*t", "t^k", "c*t^k" joined by '+'
    std::array<std::uint32_t, kMaxDeg> d{};
    std::size_t pos = 0;
    try {
    while (pos < s.size()) {
        std::size_t next = s.find('+', pos);
        std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? s.size() : next + 1;
        if (term.empty()) throw std::invalid_argument("bad element literal: " + text);
        std::uint64_t coef = 1;
        int expo = 0;
        std::size_t tp = term.find('t');
        if (tp == std::string::npos) {
            coef = std::stoull(term);
        } else {
            if (tp > 0) {
                std::string cs = term.substr(0, tp);
                if (!cs.empty() && cs.back() == '*') cs.pop_back();
                if (!cs.empty()) coef = std::stoull(cs);
            }
            expo = 1;
            if (tp + 1 < term.size()) {
                if (term[tp + 1] != '^') throw std::invalid_argument("bad element literal: " + text);
                expo = std::stoi(term.substr(tp + 2));
            }
        }
        if (expo < 0 || expo >= deg_) throw std::invalid_argument("exponent out of range: " + text);
        d[expo] = static_cast<std::uint32_t>((d[expo] + coef) % p_);
    }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad element literal: " + text);
    }
    return Fe{encode(d.data())};
}

// --- power basis ------------------------------------------------------------------

void FieldCtx::build_power_basis() {
    auto b = std::make_unique<PowerBasis>();
    const int md = qdim();
    b->md = md;

    // u: least-encoding element of degree exactly md over F_q
    auto divisors_md = prime_factors(md);
    for (std::uint64_t e = 0; e < ord_; ++e) {
        Fe x{e};
        bool full = md == 1;
        if (!full) {
            full = true;
            for (std::uint64_t r : divisors_md) {
                int d = static_cast<int>(md / r) * h();
                if (in_subfield(x, d)) {
                    full = false;
                    break;
                }
            }
        }
        if (full) {
            b->u = x;
            break;
        }
    }
    b->powers.resize(md);
    b->powers[0] = Fe{1};
    for (int i = 1; i < md; ++i) b->powers[i] = mul(b->powers[i - 1], b->u);

    const int hh = h();
    if (hh == 1 && (md == 1 || b->u == Fe{p_})) {
        b->identity_ = true;  // u = t: coordinates are the coefficient digits
        basis_ = std::move(b);
        return;
    }

    // w: least-encoding element of F_q of degree exactly h over F_p
    Fe w{1};
    if (hh > 1) {
        auto divisors_h = prime_factors(hh);
        for (std::uint64_t e = 0; e < ord_; ++e) {
            Fe x{e};
            if (!in_subfield(x, hh)) continue;
            bool full = true;
            for (std::uint64_t r : divisors_h) {
                if (in_subfield(x, static_cast<int>(hh / r))) {
                    full = false;
                    break;
                }
            }
            if (full) {
                w = x;
                break;
            }
        }
    }
    b->wpow_.resize(hh);
    b->wpow_[0] = Fe{1};
    for (int j = 1; j < hh; ++j) b->wpow_[j] = mul(b->wpow_[j - 1], w);

    // invert the F_p change-of-basis matrix with columns = coeffs(w^j u^i)
    const int M = deg_;
    std::vector<std::uint32_t> mat(static_cast<std::size_t>(M) * 2 * M, 0);
    auto at = [&](int r, int c) -> std::uint32_t& { return mat[static_cast<std::size_t>(r) * 2 * M + c]; };
    for (int i = 0; i < md; ++i) {
        for (int j = 0; j < hh; ++j) {
            Fe col = mul(b->powers[i], b->wpow_[j]);
            auto digits = coeffs(col);
            int c = i * hh + j;
            for (int r = 0; r < M; ++r) at(r, c) = digits[r];
        }
    }
    for (int r = 0; r < M; ++r) at(r, M + r) = 1;
    // Gauss-Jordan mod p
    for (int col = 0; col < M; ++col) {
        int piv = -1;
        for (int r = col; r < M; ++r)
            if (at(r, col)) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("power basis is singular");
        if (piv != col)
            for (int c = 0; c < 2 * M; ++c) std::swap(at(piv, c), at(col, c));
        std::uint64_t pinv = mod_inverse(at(col, col), p_);
        for (int c = 0; c < 2 * M; ++c)
            at(col, c) = static_cast<std::uint32_t>((at(col, c) * pinv) % p_);
        for (int r = 0; r < M; ++r) {
            if (r == col || !at(r, col)) continue;
            std::uint64_t f = at(r, col);
            for (int c = 0; c < 2 * M; ++c) {
                std::uint64_t sub = (f * at(col, c)) % p_;
                at(r, c) = static_cast<std::uint32_t>((at(r, c) + p_ - sub) % p_);
            }
        }
    }
    b->inv_.assign(static_cast<std::size_t>(M) * M, 0);
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) b->inv_[static_cast<std::size_t>(r) * M + c] = at(r, M + c);
    basis_ = std::move(b);
}

const PowerBasis& FieldCtx::power_basis() const {
    if (!basis_) throw std::invalid_argument("power basis requires tower metadata");
    return *basis_;
}

void PowerBasis::coords(const FieldCtx& F, Fe x, Fe* out) const {
    if (identity_) {
        auto d = F.coeffs(x);
        for (int i = 0; i < md; ++i) out[i] = Fe{d[i]};
        return;
    }
    const int M = F.deg();
    const int hh = M / md;
    auto digits = F.coeffs(x);
    for (int i = 0; i < md; ++i) {
        Fe acc{0};
        for (int j = 0; j < hh; ++j) {
            std::uint64_t c = 0;
            const std::uint32_t* row = inv_.data() + static_cast<std::size_t>(i * hh + j) * M;
            for (int k = 0; k < M; ++k) c += static_cast<std::uint64_t>(row[k]) * digits[k];
            c %= F.p();
            if (c) acc = F.add(acc, F.mul(Fe{c}, wpow_[j]));
        }
        out[i] = acc;
    }
}

}  // namespace qbinom
