#pragma once

// Local equivalence of iota_K-complexes: filtered, grading preserving
// equivariant chain maps F : C1 -> C2 and G : C2 -> C1, each an isomorphism on
// homology and each intertwining the involutions up to skew-filtered homotopy.

#include "iotak/complex.hpp"
#include "iotak/gf2.hpp"
#include "iotak/homotopy.hpp"
#include "iotak/iota.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace iotak {

class CapExceeded : public std::runtime_error {
  public:
    CapExceeded(std::size_t dim, std::size_t cap)
        : std::runtime_error("chain-map space of dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(cap)),
          dimension(dim) {}
    std::size_t dimension;
};

struct LocalEquivalenceReport {
    bool ok = false;
    std::string failure; // first failing condition, empty when ok
    std::optional<Morphism> forward_homotopy;  // iota_2 F ~ F iota_1
    std::optional<Morphism> backward_homotopy; // iota_1 G ~ G iota_2
};

namespace detail {

/// Empty when m is a filtered, grading preserving equivariant chain map.
inline std::string local_map_issue(const Morphism &m, const FreeComplex &s, const FreeComplex &t) {
    if (m.variance != Variance::equivariant || m.degree != Bidegree{})
        return "not an equivariant map of bidegree (0,0)";
    if (m.rows() != t.size() || m.cols() != s.size())
        return "wrong shape";
    if (!is_homogeneous(m, s, t))
        return "not grading preserving";
    if (!is_filtered(m))
        return "not filtered";
    if (!is_chain_map(m, s, t))
        return "not a chain map";
    return {};
}

} // namespace detail

inline LocalEquivalenceReport verify_local_equivalence(const IotaComplex &a, const IotaComplex &b,
                                                       const Morphism &f, const Morphism &g) {
    LocalEquivalenceReport rep;
    const auto &ca = a.complex;
    const auto &cb = b.complex;
    if (auto s = detail::local_map_issue(f, ca, cb); !s.empty()) {
        rep.failure = "F " + s;
        return rep;
    }
    if (auto s = detail::local_map_issue(g, cb, ca); !s.empty()) {
        rep.failure = "G " + s;
        return rep;
    }
    if (!homology_class_map(f, ca, cb)) {
        rep.failure = "F is not an isomorphism on homology";
        return rep;
    }
    if (!homology_class_map(g, cb, ca)) {
        rep.failure = "G is not an isomorphism on homology";
        return rep;
    }
    const HomotopyConstraints skew_filtered{Variance::skew, true};
    rep.forward_homotopy = homotopy_solve(compose(b.iota, f), compose(f, a.iota), ca, cb, skew_filtered);
    if (!rep.forward_homotopy) {
        rep.failure = "F does not intertwine the involutions";
        return rep;
    }
    rep.backward_homotopy = homotopy_solve(compose(a.iota, g), compose(g, b.iota), cb, ca, skew_filtered);
    if (!rep.backward_homotopy) {
        rep.failure = "G does not intertwine the involutions";
        return rep;
    }
    rep.ok = true;
    return rep;
}

struct LocalEquivalenceSearch {
    std::optional<std::pair<Morphism, Morphism>> witness; // (F, G)
    std::size_t forward_dimension = 0;  // dim of chain maps C1 -> C2
    std::size_t backward_dimension = 0; // dim of chain maps C2 -> C1
};

namespace detail {

/// Enumerates the filtered grading preserving chain maps s -> t in Gray-code
/// order and returns the first one that is nonzero on homology and commutes
/// with the involutions up to skew-filtered homotopy.
inline std::optional<Morphism> search_direction(const IotaComplex &from, const IotaComplex &to, std::size_t cap,
                                                std::size_t &dimension) {
    const auto &s = from.complex;
    const auto &t = to.complex;

    // Chain maps = kernel of the boundary map on bidegree (0,0) slots.
    const SlotSystem maps = slot_system(s, t, Variance::equivariant, {}, true);
    std::vector<gf2::BitVector> rows = gf2::transpose(
        [&] {
            std::vector<gf2::BitVector> cols;
            cols.reserve(maps.slots.size());
            for (std::size_t k = 0; k < maps.slots.size(); ++k)
                cols.push_back(maps.boundary_bits(k));
            return cols;
        }(),
        maps.positions());
    const auto basis = gf2::kernel(rows, maps.slots.size());
    dimension = basis.size();
    if (dimension > cap)
        throw CapExceeded(dimension, cap);

    // Homology test: image of the generator, reduced modulo boundaries.
    const auto z = even_homology_generator(s);
    const auto src = parity_slices(s);
    const auto tgt = parity_slices(t);
    gf2::Echelon tgt_boundaries(tgt.even.size());
    for (const auto &col : gf2::transpose(tgt.d_odd, tgt.odd.size()))
        tgt_boundaries.insert(col);

    // Intertwining test: iota_t F + F iota_s reduced modulo skew boundaries.
    const SlotSystem homotopies = slot_system(s, t, Variance::skew, {1, 1}, true);
    gf2::Echelon skew_boundaries(homotopies.positions());
    for (std::size_t k = 0; k < homotopies.slots.size(); ++k)
        skew_boundaries.insert(homotopies.boundary_bits(k));

    struct Contribution {
        gf2::BitVector homology;
        gf2::BitVector intertwining;
    };
    std::vector<Contribution> contrib;
    std::vector<Morphism> basis_maps;
    for (const auto &bits : basis) {
        Morphism f = maps.assemble(bits);
        gf2::BitVector hom(tgt.even.size());
        if (z)
            z->for_each([&](std::size_t k) {
                for (const auto &[r, p] : f.matrix.column(src.even[k]))
                    hom.flip(tgt.position[r]);
            });
        const Morphism defect = compose(to.iota, f) + compose(f, from.iota);
        gf2::BitVector tw(homotopies.positions());
        defect.matrix.for_each([&](std::size_t r, std::size_t c, const LaurentPoly &) { tw.flip(r * s.size() + c); });
        contrib.push_back({tgt_boundaries.reduce(std::move(hom)), skew_boundaries.reduce(std::move(tw))});
        basis_maps.push_back(std::move(f));
    }

    gf2::BitVector current(dimension);
    gf2::BitVector hom(tgt.even.size());
    gf2::BitVector tw(homotopies.positions());
    const std::uint64_t total = std::uint64_t{1} << dimension;
    for (std::uint64_t step = 0; step < total; ++step) {
        if (step > 0) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(step));
            current.flip(bit);
            hom ^= contrib[bit].homology;
            tw ^= contrib[bit].intertwining;
        }
        if (hom.any() && tw.none()) {
            Morphism f = Morphism::zero(t.size(), s.size());
            current.for_each([&](std::size_t k) { f = f + basis_maps[k]; });
            return f;
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Exhaustive search for a local equivalence.  A result without a witness is
/// a proof that none exists.  Throws CapExceeded when either chain-map space
/// has dimension above cap.
inline LocalEquivalenceSearch search_local_equivalence(const IotaComplex &a, const IotaComplex &b,
                                                       std::size_t cap = 24) {
    if (cap > 48)
        throw std::invalid_argument("search_local_equivalence: cap above 48 is not enumerable");
    LocalEquivalenceSearch out;
    auto f = detail::search_direction(a, b, cap, out.forward_dimension);
    if (!f)
        return out;
    auto g = detail::search_direction(b, a, cap, out.backward_dimension);
    if (!g)
        return out;
    const auto rep = verify_local_equivalence(a, b, *f, *g);
    if (!rep.ok)
        throw std::logic_error("search_local_equivalence: candidate failed verification: " + rep.failure);
    out.witness = std::make_pair(std::move(*f), std::move(*g));
    return out;
}

} // namespace iotak
