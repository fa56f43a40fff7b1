#pragma once

#include "iotak/iotak.hpp"

#include <random>
#include <string>
#include <vector>

namespace iotak::testing {

/// The trefoil written out by hand: d b = U a + V c, iota swaps a and c.
inline IotaComplex trefoil() {
    PolyMatrix d(3, 3);
    d.set(0, 1, Monomial{1, 0});
    d.set(2, 1, Monomial{0, 1});
    PolyMatrix iota(3, 3);
    iota.set(2, 0, LaurentPoly::one());
    iota.set(1, 1, LaurentPoly::one());
    iota.set(0, 2, LaurentPoly::one());
    return {"T23", FreeComplex({{"a", 0, -2}, {"b", -1, -1}, {"c", -2, 0}}, std::move(d)),
            {std::move(iota), Variance::skew, {}}};
}

inline IotaComplex times1(const IotaComplex &a, const IotaComplex &b) {
    return product(a, b, ProductVariant::first, {false});
}

inline IotaComplex times2(const IotaComplex &a, const IotaComplex &b) {
    return product(a, b, ProductVariant::second, {false});
}

/// Staircases T(2,3) .. T(6,7), the unknot and their duals.
inline std::vector<IotaComplex> base_corpus() {
    std::vector<IotaComplex> out{unknot_complex(), trefoil()};
    for (auto [p, q] : {std::pair{2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}})
        out.push_back(torus_knot(p, q));
    const std::size_t n = out.size();
    for (std::size_t i = 2; i < n; ++i)
        out.push_back(mirror(out[i]));
    return out;
}

/// Small complexes whose pairwise products stay cheap.
inline std::vector<IotaComplex> small_corpus() {
    return {unknot_complex(), trefoil(), torus_knot(3, 4), mirror(trefoil()), mirror(torus_knot(3, 4))};
}

inline LaurentPoly random_poly(std::mt19937 &rng, int terms = 4, int range = 3) {
    std::uniform_int_distribution<int> e(-range, range);
    std::uniform_int_distribution<int> len(0, terms);
    std::vector<Monomial> t;
    for (int k = len(rng); k > 0; --k)
        t.push_back({e(rng), e(rng)});
    return LaurentPoly::from_terms(std::move(t));
}

} // namespace iotak::testing
