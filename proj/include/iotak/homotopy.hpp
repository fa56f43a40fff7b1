#pragma once

// Chain homotopy solver.
//
// Given homogeneous chain maps f, g : S -> T of the same variance and bidegree
// (a, b), look for H of bidegree (a+1, b+1) with d_T H + H d_S = f + g.  Each
// entry of H is forced by the gradings to be one particular monomial or zero,
// so H is a vector of bits and the equation is a linear system over F2.  The
// system splits into connected components, which are eliminated separately.

#include "iotak/complex.hpp"
#include "iotak/gf2.hpp"
#include "iotak/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iotak {

struct HomotopyConstraints {
    Variance variance = Variance::equivariant;
    bool filtered = true; // skew-filtered for skew maps: all exponents >= 0 either way
};

/// The grading-admissible entries of maps S -> T of one variance and bidegree,
/// together with the boundary d_T H + H d_S of each single-entry map.
/// Positions of the boundary are encoded as z * |S| + x.
struct SlotSystem {
    std::size_t source_size = 0;
    std::size_t target_size = 0;
    Variance variance = Variance::equivariant;
    Bidegree degree{};
    std::vector<std::pair<std::size_t, std::size_t>> slots; // (y, x)
    std::vector<Monomial> monomials;
    std::vector<std::vector<std::size_t>> boundary; // sorted positions, per slot

    [[nodiscard]] std::size_t positions() const { return source_size * target_size; }

    /// The map whose entries are the selected slots.
    [[nodiscard]] Morphism assemble(const gf2::BitVector &bits) const {
        PolyMatrix m(target_size, source_size);
        bits.for_each([&](std::size_t k) { m.set(slots[k].first, slots[k].second, monomials[k]); });
        return {std::move(m), variance, degree};
    }

    [[nodiscard]] gf2::BitVector boundary_bits(std::size_t k) const {
        gf2::BitVector v(positions());
        for (auto p : boundary[k])
            v.flip(p);
        return v;
    }
};

inline SlotSystem slot_system(const FreeComplex &source, const FreeComplex &target, Variance var, Bidegree deg,
                              bool filtered) {
    SlotSystem sys;
    sys.source_size = source.size();
    sys.target_size = target.size();
    sys.variance = var;
    sys.degree = deg;
    const std::size_t ns = source.size();
    for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = 0; y < target.size(); ++y) {
            const auto m = forced_monomial(source[x], target[y], var, deg);
            if (!m || (filtered && !m->filtered()))
                continue;
            sys.slots.emplace_back(y, x);
            sys.monomials.push_back(*m);
        }

    std::vector<std::vector<std::size_t>> into_source(ns); // x -> {w : x appears in d w}
    source.diff().for_each([&](std::size_t r, std::size_t c, const LaurentPoly &) { into_source[r].push_back(c); });

    sys.boundary.resize(sys.slots.size());
    for (std::size_t k = 0; k < sys.slots.size(); ++k) {
        const auto [y, x] = sys.slots[k];
        auto &b = sys.boundary[k];
        for (const auto &[z, p] : target.diff().column(y))
            b.push_back(z * ns + x);
        for (auto w : into_source[x])
            b.push_back(y * ns + w);
        std::sort(b.begin(), b.end());
        // (z, x) and (y, w) can coincide only for a diagonal entry of d;
        // cancel pairs anyway so the list is an honest F2 vector.
        std::vector<std::size_t> reduced;
        for (std::size_t i = 0; i < b.size();) {
            std::size_t j = i;
            while (j < b.size() && b[j] == b[i])
                ++j;
            if ((j - i) % 2 == 1)
                reduced.push_back(b[i]);
            i = j;
        }
        b = std::move(reduced);
    }
    return sys;
}

namespace detail {

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

  private:
    std::vector<std::size_t> parent_;
};

inline void require_chain_map(const Morphism &m, const FreeComplex &s, const FreeComplex &t, const char *what) {
    if (!is_homogeneous(m, s, t))
        throw std::invalid_argument(std::string("homotopy_solve: ") + what + " is not homogeneous");
    if (!is_chain_map(m, s, t))
        throw std::invalid_argument(std::string("homotopy_solve: ") + what + " is not a chain map");
}

/// Solves sum_k bits_k * boundary_k = target (positions sorted), component by
/// component.  Returns the chosen slot bits.
inline std::optional<gf2::BitVector> solve_slots(const SlotSystem &sys, const std::vector<std::size_t> &target) {
    const std::size_t nslots = sys.slots.size();

    // Equation -> slots incidence, sorted by position.
    std::vector<std::pair<std::size_t, std::size_t>> incidence;
    for (std::size_t k = 0; k < nslots; ++k)
        for (auto p : sys.boundary[k])
            incidence.emplace_back(p, k);
    std::sort(incidence.begin(), incidence.end());

    struct Equation {
        std::size_t position = 0;
        std::vector<std::size_t> slots;
        bool rhs = false;
    };
    std::vector<Equation> equations;
    for (std::size_t i = 0; i < incidence.size();) {
        Equation eq{incidence[i].first, {}, false};
        while (i < incidence.size() && incidence[i].first == eq.position)
            eq.slots.push_back(incidence[i++].second);
        equations.push_back(std::move(eq));
    }
    {
        std::size_t e = 0;
        for (auto p : target) {
            while (e < equations.size() && equations[e].position < p)
                ++e;
            if (e == equations.size() || equations[e].position != p)
                return std::nullopt; // nonzero where no slot reaches
            equations[e].rhs = true;
        }
    }

    DisjointSets sets(nslots);
    for (const auto &eq : equations)
        for (std::size_t k = 1; k < eq.slots.size(); ++k)
            sets.unite(eq.slots[0], eq.slots[k]);

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> component(nslots, unset);
    std::vector<std::vector<std::size_t>> comp_slots;
    std::vector<std::size_t> local(nslots);
    for (std::size_t k = 0; k < nslots; ++k) {
        const auto root = sets.find(k);
        if (component[root] == unset) {
            component[root] = comp_slots.size();
            comp_slots.emplace_back();
        }
        component[k] = component[root];
        local[k] = comp_slots[component[k]].size();
        comp_slots[component[k]].push_back(k);
    }
    std::vector<std::vector<const Equation *>> comp_equations(comp_slots.size());
    for (const auto &eq : equations)
        comp_equations[component[eq.slots[0]]].push_back(&eq);

    std::vector<std::optional<gf2::BitVector>> partial(comp_slots.size());
    parallel_for(comp_slots.size(), [&](std::size_t ci) {
        const auto &cs = comp_slots[ci];
        const auto &ce = comp_equations[ci];
        bool any_rhs = false;
        for (const auto *eq : ce)
            any_rhs = any_rhs || eq->rhs;
        if (!any_rhs) {
            partial[ci] = gf2::BitVector(cs.size());
            return;
        }
        std::vector<gf2::BitVector> rows;
        rows.reserve(ce.size());
        gf2::BitVector rhs(ce.size());
        for (std::size_t e = 0; e < ce.size(); ++e) {
            gf2::BitVector row(cs.size());
            for (auto k : ce[e]->slots)
                row.flip(local[k]);
            rows.push_back(std::move(row));
            if (ce[e]->rhs)
                rhs.set(e);
        }
        partial[ci] = gf2::solve(rows, rhs, cs.size());
    });

    gf2::BitVector bits(nslots);
    for (std::size_t ci = 0; ci < comp_slots.size(); ++ci) {
        if (!partial[ci])
            return std::nullopt;
        partial[ci]->for_each([&](std::size_t j) { bits.set(comp_slots[ci][j]); });
    }
    return bits;
}

} // namespace detail

/// H with d H + H d = f + g under the constraints, or nullopt when no such H
/// exists.  Throws std::invalid_argument on malformed input.
inline std::optional<Morphism> homotopy_solve(const Morphism &f, const Morphism &g, const FreeComplex &source,
                                              const FreeComplex &target, HomotopyConstraints cons) {
    if (f.variance != g.variance || f.degree != g.degree)
        throw std::invalid_argument("homotopy_solve: f and g differ in variance or bidegree");
    if (f.variance != cons.variance)
        throw std::invalid_argument("homotopy_solve: requested variance does not match the maps");
    if (f.rows() != target.size() || f.cols() != source.size() || g.rows() != target.size() ||
        g.cols() != source.size())
        throw std::invalid_argument("homotopy_solve: shape mismatch");
    detail::require_chain_map(f, source, target, "f");
    detail::require_chain_map(g, source, target, "g");

    const std::size_t ns = source.size();
    const Bidegree hdeg{f.degree.u + 1, f.degree.v + 1};
    const SlotSystem sys = slot_system(source, target, cons.variance, hdeg, cons.filtered);

    const Morphism rhs_map = f + g;
    std::vector<std::size_t> rhs;
    rhs_map.matrix.for_each([&](std::size_t r, std::size_t c, const LaurentPoly &) { rhs.push_back(r * ns + c); });
    std::sort(rhs.begin(), rhs.end());

    const auto bits = detail::solve_slots(sys, rhs);
    if (!bits)
        return std::nullopt;
    Morphism h = sys.assemble(*bits);
    const Morphism check = compose(differential(target), h) + compose(h, differential(source));
    if (check.matrix != rhs_map.matrix)
        throw std::logic_error("homotopy_solve: solution failed exact verification");
    return h;
}

/// Whether f + g admits a null-homotopy under the constraints.
inline bool homotopic(const Morphism &f, const Morphism &g, const FreeComplex &source, const FreeComplex &target,
                      HomotopyConstraints cons) {
    return homotopy_solve(f, g, source, target, cons).has_value();
}

} // namespace iotak
