// shared test fixtures: cached field contexts and a seeded RNG

#pragma once

#include <map>
#include <memory>
#include <random>
#include <tuple>

#include "qbinom/gf.hpp"

namespace qbinom::testutil {

/// Cached tower field F_{q^{2n}} with q = p^h (contexts are expensive to build).
inline const FieldCtx& tower_field(std::uint32_t p, int h, int n) {
    static std::map<std::tuple<std::uint32_t, int, int>, std::unique_ptr<FieldCtx>> cache;
    auto key = std::make_tuple(p, h, n);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto F = std::make_unique<FieldCtx>(FieldCtx::make(p, 2 * n * h, Tower{h, n}));
        it = cache.emplace(key, std::move(F)).first;
    }
    return *it->second;
}

inline const FieldCtx& plain_field(std::uint32_t p, int m) {
    static std::map<std::tuple<std::uint32_t, int>, std::unique_ptr<FieldCtx>> cache;
    auto key = std::make_tuple(p, m);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto F = std::make_unique<FieldCtx>(FieldCtx::make(p, m));
        it = cache.emplace(key, std::move(F)).first;
    }
    return *it->second;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eedULL);
    return gen;
}

inline Fe random_element(const FieldCtx& F) {
    std::uniform_int_distribution<std::uint64_t> dist(0, F.order() - 1);
    return Fe{dist(rng())};
}

inline Fe random_nonzero(const FieldCtx& F) {
    std::uniform_int_distribution<std::uint64_t> dist(1, F.order() - 1);
    return Fe{dist(rng())};
}

}  // namespace qbinom::testutil
