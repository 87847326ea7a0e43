// rmcode.hpp -- the rank-metric code C_f = {x -> a f(x) + b x : a,b in F_{q^m}}
// of a q-polynomial: rank distribution, minimum distance, MRD predicate.
// Codewords are never materialized; ranks collapse to the weight spectrum.

#pragma once

#include <cstdint>
#include <map>

#include "qbinom/linpoly.hpp"

namespace qbinom {

struct RankCode {
    std::uint64_t q = 0;
    int m = 0;  // square matrix side; parameters (m, m, q; d)
    int max_weight = 0;
    int min_distance = 0;
    bool mrd = false;
    std::map<int, std::uint64_t> rank_distribution;  // rank -> codeword count
};

/// Throws std::invalid_argument when f is a scalar multiple of the identity
/// (C_f degenerates to a 1-dimensional code).
RankCode analyze_code(const QPolynomial& f);

int min_distance(const QPolynomial& f);
bool is_mrd(const QPolynomial& f);

}  // namespace qbinom
