#include "qbinom/linpoly.hpp"

#include <algorithm>
#include <sstream>

namespace qbinom {

QPolynomial::QPolynomial(const FieldCtx& F) : F_(&F) {
    if (!F.has_tower()) throw std::invalid_argument("QPolynomial requires a tower field");
    c_.assign(F.qdim(), Fe{0});
}

QPolynomial QPolynomial::from_coeffs(const FieldCtx& F, std::vector<Fe> coeffs) {
    QPolynomial f(F);
    if (coeffs.size() > f.c_.size()) throw std::invalid_argument("too many q-coefficients");
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.c_[i] = coeffs[i];
    return f;
}

QPolynomial QPolynomial::parse(const FieldCtx& F, const std::string& text) {
    QPolynomial f(F);
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= f.m()) throw std::invalid_argument("too many q-coefficients: " + text);
        f.c_[i++] = F.parse(item);
    }
    return f;
}

void QPolynomial::add_term(int i, Fe a) {
    int m = this->m();
    i %= m;
    if (i < 0) i += m;
    c_[i] = F_->add(c_[i], a);
}

Fe QPolynomial::evaluate(Fe x) const {
    const FieldCtx& F = *F_;
    Fe acc{0};
    for (int i = 0; i < m(); ++i) {
        if (c_[i].enc == 0) continue;
        acc = F.add(acc, F.mul(c_[i], F.pow_q(x, i)));
    }
    return acc;
}

int QPolynomial::kernel_dimension() const {
    const FieldCtx& F = *F_;
    const PowerBasis& pb = F.power_basis();
    const int md = pb.md;
    std::vector<Fe> M(static_cast<std::size_t>(md) * md);
    std::vector<Fe> col(md);
    for (int j = 0; j < md; ++j) {
        Fe fj = evaluate(pb.powers[j]);
        pb.coords(F, fj, col.data());
        for (int i = 0; i < md; ++i) M[static_cast<std::size_t>(i) * md + j] = col[i];
    }
    int rank = 0;
    for (int c = 0; c < md && rank < md; ++c) {
        int piv = -1;
        for (int r = rank; r < md; ++r)
            if (M[static_cast<std::size_t>(r) * md + c] != Fe{0}) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int cc = 0; cc < md; ++cc)
                std::swap(M[static_cast<std::size_t>(piv) * md + cc],
                          M[static_cast<std::size_t>(rank) * md + cc]);
        Fe pinv = F.inv(M[static_cast<std::size_t>(rank) * md + c]);
        for (int r = rank + 1; r < md; ++r) {
            Fe v = M[static_cast<std::size_t>(r) * md + c];
            if (v == Fe{0}) continue;
            Fe fmult = F.mul(v, pinv);
            for (int cc = c; cc < md; ++cc) {
                Fe& cell = M[static_cast<std::size_t>(r) * md + cc];
                cell = F.sub(cell, F.mul(fmult, M[static_cast<std::size_t>(rank) * md + cc]));
            }
        }
        ++rank;
    }
    return md - rank;
}

QPolynomial QPolynomial::adjoint() const {
    const FieldCtx& F = *F_;
    const int md = m();
    QPolynomial r(F);
    for (int i = 0; i < md; ++i) {
        int j = (md - i) % md;
        r.c_[j] = F.pow_q(c_[i], j);
    }
    return r;
}

QPolynomial QPolynomial::conjugated(Fe lambda) const {
    const FieldCtx& F = *F_;
    if (lambda.enc == 0) throw std::invalid_argument("conjugation requires lambda != 0");
    QPolynomial r(F);
    for (int i = 0; i < m(); ++i) {
        if (c_[i].enc == 0) continue;
        r.c_[i] = F.mul(c_[i], F.div(F.pow_q(lambda, i), lambda));
    }
    return r;
}

QPolynomial QPolynomial::scaled(Fe c) const {
    QPolynomial r(*F_);
    for (int i = 0; i < m(); ++i) r.c_[i] = F_->mul(c_[i], c);
    return r;
}

int QPolynomial::qdegree() const {
    for (int i = m() - 1; i >= 0; --i)
        if (c_[i].enc != 0) return i;
    return -1;
}

bool QPolynomial::is_scalar_multiple_of_identity() const {
    return qdegree() <= 0;
}

std::string QPolynomial::to_string() const {
    std::string out;
    for (int i = 0; i < m(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(c_[i].enc);
    }
    return out;
}

int WeightSpectrum::max_weight() const {
    return entries.empty() ? 0 : entries.rbegin()->first;
}

std::uint64_t WeightSpectrum::points() const {
    std::uint64_t s = 0;
    for (auto& [w, c] : entries) s += c;
    return s;
}

WeightSpectrum weight_spectrum(const QPolynomial& f) {
    const FieldCtx& F = f.ctx();
    const std::uint64_t ord = F.order();
    const std::uint64_t q = F.q();
    std::vector<std::uint32_t> bucket(ord, 0);
    for (std::uint64_t e = 1; e < ord; ++e) {
        Fe x{e};
        Fe key = F.div(f.evaluate(x), x);
        ++bucket[key.enc];
    }
    WeightSpectrum ws;
    std::uint64_t mass = 0;
    for (std::uint64_t k = 0; k < ord; ++k) {
        std::uint64_t c = bucket[k];
        if (!c) continue;
        std::uint64_t v = c + 1;
        int w = 0;
        while (v > 1) {
            if (v % q) throw std::logic_error("weight bucket size is not of the form q^w - 1");
            v /= q;
            ++w;
        }
        ++ws.entries[w];
        mass += c;
    }
    if (mass != ord - 1) throw std::logic_error("weight spectrum mass identity violated");
    return ws;
}

bool is_scattered(const QPolynomial& f) {
    const FieldCtx& F = f.ctx();
    const std::uint64_t ord = F.order();
    const std::uint32_t limit = static_cast<std::uint32_t>(F.q() - 1);
    std::vector<std::uint32_t> bucket(ord, 0);
    for (std::uint64_t e = 1; e < ord; ++e) {
        Fe x{e};
        Fe key = F.div(f.evaluate(x), x);
        if (++bucket[key.enc] > limit) return false;
    }
    return true;
}

QPolynomial binomial_map(const FieldCtx& F, int s, Fe a, Fe b) {
    QPolynomial f(F);
    f.add_term(0, Fe{1});
    f.add_term(s, a);
    f.add_term(s + F.n(), b);
    return f;
}

QPolynomial delta_binomial(const FieldCtx& F, int s, Fe delta) {
    QPolynomial f(F);
    f.add_term(s, Fe{1});
    f.add_term(s + F.n(), delta);
    return f;
}

}  // namespace qbinom
