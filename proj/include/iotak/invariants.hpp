#pragma once

// Large-surgery invariants of an iota_K-complex: the subcomplex A_0^- over
// F2[W], W = UV, with its involution, the mapping cone of Q(1 + iota), and the
// correction terms d, d_bar, d_under with V_0 = -d/2 and so on.

#include "iotak/gf2.hpp"
#include "iotak/iota.hpp"
#include "iotak/parallel.hpp"
#include "iotak/tower.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iotak {

class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct InvariantReport {
    int d = 0;
    int d_bar = 0;
    int d_under = 0;
    int V0 = 0;
    int V0_bar = 0;
    int V0_under = 0;

    bool operator==(const InvariantReport &) const = default;
};

// ---------------------------------------------------------------------------
// A_0^-

namespace detail {

/// W-exponent of the entry from x~ to y~, where the entry from x to y is m and
/// x~ = U^px V^qx x.  Skew maps move the prefactor across with U and V swapped.
inline int tower_exponent(Monomial m, Monomial px, Monomial py, bool skew) {
    const Monomial pre = skew ? px.swapped() : px;
    const Exponent i = checked_sub(checked_add(pre.u, m.u), py.u);
    const Exponent j = checked_sub(checked_add(pre.v, m.v), py.v);
    if (i != j || i < 0)
        throw std::logic_error("a_zero_minus: entry is not a nonnegative power of UV");
    return i;
}

} // namespace detail

/// The F2[W]-complex spanned by U^max(A,0) V^max(-A,0) x, with the restriction
/// of iota as its endomorphism.
inline UTowerComplex a_zero_minus(const IotaComplex &ic) {
    const auto &c = ic.complex;
    const std::size_t n = c.size();
    std::vector<TowerGenerator> basis;
    std::vector<Monomial> prefactor;
    basis.reserve(n);
    prefactor.reserve(n);
    for (const auto &b : c.basis()) {
        const int a = b.alexander();
        prefactor.push_back({std::max(a, 0), std::max(-a, 0)});
        basis.push_back({b.name, b.gr_u - 2 * std::max(a, 0)});
    }
    auto restrict = [&](const PolyMatrix &m, bool skew) {
        SupportMatrix out(n);
        m.for_each([&](std::size_t y, std::size_t x, const LaurentPoly &p) {
            if (!p.is_monomial())
                throw std::logic_error("a_zero_minus: entry is not a monomial");
            const int k = detail::tower_exponent(p.front(), prefactor[x], prefactor[y], skew);
            const int expected = skew ? (basis[y].gr - basis[x].gr) / 2 : (basis[y].gr - basis[x].gr + 1) / 2;
            if (k != expected)
                throw std::logic_error("a_zero_minus: exponent disagrees with the gradings");
            out[x].push_back(y);
        });
        return out;
    };
    if (ic.iota.variance != Variance::skew)
        throw std::invalid_argument("a_zero_minus: iota must be skew");
    SupportMatrix diff = restrict(c.diff(), false);
    SupportMatrix endo = restrict(ic.iota.matrix, true);
    return {std::move(basis), std::move(diff), std::move(endo)};
}

// ---------------------------------------------------------------------------
// Invariants via Smith normal form

namespace detail {

inline InvariantReport make_report(int d, int d_bar, int d_under) {
    for (int v : {d, d_bar, d_under})
        if (!is_even(v))
            throw InvariantError("correction term " + std::to_string(v) + " is odd");
    return {d, d_bar, d_under, -d / 2, -d_bar / 2, -d_under / 2};
}

} // namespace detail

inline InvariantReport involutive_invariants(const UTowerComplex &t) {
    if (!t.endo())
        throw std::invalid_argument("involutive_invariants: complex carries no involution");
    const HomologyDecomp h = homology_snf(t);
    if (h.free.size() != 1)
        throw InvariantError("homology has " + std::to_string(h.free.size()) + " free summands, expected 1");
    const int d = h.free.front();
    if (!is_even(d))
        throw InvariantError("d = " + std::to_string(d) + " is odd");

    const HomologyDecomp hc = homology_snf(involutive_cone(t));
    std::optional<int> same;
    std::optional<int> other;
    for (int g : hc.free) { // descending
        auto &slot = is_even(g - d) ? same : other;
        if (!slot)
            slot = g;
    }
    if (!same || !other)
        throw InvariantError("cone homology lacks a free summand in one parity");
    return detail::make_report(d, *same, *other - 1);
}

inline InvariantReport involutive_invariants(const IotaComplex &ic) { return involutive_invariants(a_zero_minus(ic)); }

// ---------------------------------------------------------------------------
// Independent computation of (d_bar, d_under) from the criteria
//   d_under = max gr(v) with dv = 0, v W-nontorsion, (1 + iota) v = dw;
//   d_bar   = max over triples (x, y, z), (x, y) != 0, with dy = (1 + iota) x,
//             dz = W^m x and W^m y + (1 + iota) z W-nontorsion, of gr(x) + 1
//             (or gr(y) when x = 0).
// Both are linear conditions on finite grading slices.

class OracleCapTooSmall : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    int d_bar = 0;
    int d_under = 0;
    int m_cap = 0;
};

namespace detail {

/// Decides W-nontorsion of cycles.  Far enough down every slice contains all
/// generators of its parity and W acts by isomorphisms, so a cycle is
/// nontorsion iff its generator support is not a boundary there.
class NontorsionTest {
  public:
    explicit NontorsionTest(const UTowerComplex &t) {
        int lo = 0;
        for (std::size_t x = 0; x < t.size(); ++x)
            lo = x == 0 ? t.gr(x) : std::min(lo, t.gr(x));
        for (int parity = 0; parity < 2; ++parity) {
            // largest r <= min gr - 1 of the given parity
            int r = lo - 1;
            if (((r % 2) + 2) % 2 != parity)
                --r;
            slices_[parity] = grading_slice(t, r);
            const auto above = grading_slice(t, r + 1);
            boundaries_[parity].emplace(slices_[parity].size());
            for (auto &col : slice_map(t.diff(), above, slices_[parity]))
                boundaries_[parity]->insert(std::move(col));
        }
    }

    /// v is a vector on the slice `from`.
    [[nodiscard]] bool nontorsion(const gf2::BitVector &v, const GradingSlice &from) const {
        const int parity = ((from.grading % 2) + 2) % 2;
        const auto &sat = slices_[parity];
        gf2::BitVector w(sat.size());
        v.for_each([&](std::size_t i) { w.flip(sat.position[from.gens[i]]); });
        return !boundaries_[parity]->contains(w);
    }

  private:
    GradingSlice slices_[2];
    std::optional<gf2::Echelon> boundaries_[2];
};

/// Columns of the identity-on-generators map from `from` into `to`, i.e.
/// multiplication by the appropriate power of W.
inline std::vector<gf2::BitVector> slice_inclusion(const GradingSlice &from, const GradingSlice &to) {
    std::vector<gf2::BitVector> cols;
    for (auto x : from.gens) {
        gf2::BitVector v(to.size());
        if (!to.contains(x))
            throw std::logic_error("slice_inclusion: generator missing from target slice");
        v.set(to.position[x]);
        cols.push_back(std::move(v));
    }
    return cols;
}

/// Stacks blocks of column vectors into rows: blocks[i][j] maps unknown block j
/// to equation block i (empty = zero).
inline std::vector<gf2::BitVector> block_rows(const std::vector<std::vector<std::vector<gf2::BitVector>>> &blocks,
                                              const std::vector<std::size_t> &unknown_sizes,
                                              const std::vector<std::size_t> &equation_sizes) {
    std::size_t ncols = 0;
    for (auto s : unknown_sizes)
        ncols += s;
    std::vector<gf2::BitVector> rows;
    std::size_t row0 = 0;
    for (std::size_t i = 0; i < equation_sizes.size(); ++i) {
        for (std::size_t r = 0; r < equation_sizes[i]; ++r)
            rows.emplace_back(ncols);
        std::size_t col0 = 0;
        for (std::size_t j = 0; j < unknown_sizes.size(); ++j) {
            const auto &b = blocks[i][j];
            for (std::size_t c = 0; c < b.size(); ++c)
                b[c].for_each([&](std::size_t r) { rows[row0 + r].flip(col0 + c); });
            col0 += unknown_sizes[j];
        }
        row0 += equation_sizes[i];
    }
    return rows;
}

inline gf2::BitVector segment(const gf2::BitVector &v, std::size_t start, std::size_t len) {
    gf2::BitVector out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (v.test(start + i))
            out.set(i);
    return out;
}

/// (1 + iota) restricted to a slice, as columns.
inline std::vector<gf2::BitVector> one_plus_iota(const UTowerComplex &t, const GradingSlice &s) {
    auto cols = slice_map(*t.endo(), s, s);
    for (std::size_t i = 0; i < cols.size(); ++i)
        cols[i].flip(i);
    return cols;
}

inline bool d_under_holds(const UTowerComplex &t, const NontorsionTest &test, int r) {
    const auto cr = grading_slice(t, r);
    const auto up = grading_slice(t, r + 1);
    const auto down = grading_slice(t, r - 1);
    // unknowns (v, w); equations dv = 0 on C_{r-1}, dw + (1 + iota) v = 0 on C_r
    const auto rows = block_rows({{slice_map(t.diff(), cr, down), {}},
                                  {one_plus_iota(t, cr), slice_map(t.diff(), up, cr)}},
                                 {cr.size(), up.size()}, {down.size(), cr.size()});
    for (const auto &k : gf2::kernel(rows, cr.size() + up.size()))
        if (test.nontorsion(segment(k, 0, cr.size()), cr))
            return true;
    return false;
}

inline bool d_bar_holds(const UTowerComplex &t, const NontorsionTest &test, int s, int m) {
    const auto cx = grading_slice(t, s - 1);
    const auto cy = grading_slice(t, s);
    const auto cz = grading_slice(t, s - 2 * m);
    const auto cdz = grading_slice(t, s - 1 - 2 * m);
    const std::size_t nx = cx.size();
    const std::size_t ny = cy.size();
    const std::size_t nz = cz.size();
    // unknowns (x, y, z); equations dy + (1 + iota) x = 0, dz + W^m x = 0
    const auto rows = block_rows({{one_plus_iota(t, cx), slice_map(t.diff(), cy, cx), {}},
                                  {slice_inclusion(cx, cdz), {}, slice_map(t.diff(), cz, cdz)}},
                                 {nx, ny, nz}, {nx, cdz.size()});
    const auto w_m = slice_inclusion(cy, cz);
    const auto iota_z = one_plus_iota(t, cz);
    bool some_xy = false;
    bool some_nontorsion = false;
    for (const auto &k : gf2::kernel(rows, nx + ny + nz)) {
        const auto xy = segment(k, 0, nx + ny);
        some_xy = some_xy || xy.any();
        if (!some_nontorsion) {
            gf2::BitVector l(nz);
            segment(k, nx, ny).for_each([&](std::size_t i) { l ^= w_m[i]; });
            segment(k, nx + ny, nz).for_each([&](std::size_t i) { l ^= iota_z[i]; });
            some_nontorsion = test.nontorsion(l, cz);
        }
        if (some_xy && some_nontorsion)
            return true; // a space is never the union of two proper subspaces
    }
    return false;
}

inline std::pair<int, int> grading_range(const UTowerComplex &t) {
    if (t.size() == 0)
        throw std::invalid_argument("lemma_criteria_oracle: empty complex");
    int lo = t.gr(0);
    int hi = t.gr(0);
    for (std::size_t x = 1; x < t.size(); ++x) {
        lo = std::min(lo, t.gr(x));
        hi = std::max(hi, t.gr(x));
    }
    return {lo, hi};
}

/// Largest s in [lo, hi] (scanning downward) for which some m in ms holds.
inline std::optional<int> first_d_bar(const UTowerComplex &t, const NontorsionTest &test, int hi, int lo,
                                      const std::vector<int> &ms) {
    for (int s = hi; s >= lo; --s) {
        std::vector<char> hit(ms.size(), 0);
        parallel_for(ms.size(), [&](std::size_t i) { hit[i] = d_bar_holds(t, test, s, ms[i]) ? 1 : 0; });
        if (std::find(hit.begin(), hit.end(), 1) != hit.end())
            return s;
    }
    return std::nullopt;
}

} // namespace detail

/// Throws OracleCapTooSmall when allowing m = m_cap + 1 raises d_bar.
inline OracleResult lemma_criteria_oracle(const UTowerComplex &t, int m_cap) {
    if (!t.endo())
        throw std::invalid_argument("lemma_criteria_oracle: complex carries no involution");
    if (m_cap < 0)
        throw std::invalid_argument("lemma_criteria_oracle: m_cap must be nonnegative");
    const auto [lo, hi] = detail::grading_range(t);
    const detail::NontorsionTest test(t);
    // Below lo every slice involved is saturated and W is an isomorphism, so
    // the conditions are periodic there.
    const int floor = lo - 2 - 2 * m_cap;

    OracleResult out;
    out.m_cap = m_cap;
    std::optional<int> under;
    for (int r = hi; r >= floor && !under; --r)
        if (detail::d_under_holds(t, test, r))
            under = r;
    if (!under)
        throw InvariantError("lemma_criteria_oracle: no witness for d_under");
    out.d_under = *under;

    std::vector<int> ms(static_cast<std::size_t>(m_cap) + 1);
    for (int m = 0; m <= m_cap; ++m)
        ms[static_cast<std::size_t>(m)] = m;
    const auto bar = detail::first_d_bar(t, test, hi + 1, floor, ms);
    if (!bar)
        throw InvariantError("lemma_criteria_oracle: no witness for d_bar");
    out.d_bar = *bar;
    if (detail::first_d_bar(t, test, hi + 1, out.d_bar + 1, {m_cap + 1}))
        throw OracleCapTooSmall("lemma_criteria_oracle: m_cap = " + std::to_string(m_cap) + " is too small");
    return out;
}

/// m_cap = (largest torsion order) + 1.
inline OracleResult lemma_criteria_oracle(const UTowerComplex &t) {
    return lemma_criteria_oracle(t, homology_snf(t).max_torsion_order() + 1);
}

// ---------------------------------------------------------------------------
// Obstructions

struct ObstructionVerdict {
    bool pattern1 = false; // all of V0_bar, V0, V0_under >= 0 and 0 <= V0_under - V0_bar <= 1
    bool pattern2 = false; // V0_bar <= 0 and V0 = V0_under = 0
    [[nodiscard]] bool consistent_with_thin_or_lspace() const { return pattern1 || pattern2; }
};

inline ObstructionVerdict obstruction_pattern(const InvariantReport &r) {
    ObstructionVerdict v;
    const int gap = r.V0_under - r.V0_bar;
    v.pattern1 = r.V0_bar >= 0 && r.V0 >= 0 && r.V0_under >= 0 && gap >= 0 && gap <= 1;
    v.pattern2 = r.V0_bar <= 0 && r.V0 == 0 && r.V0_under == 0;
    return v;
}

} // namespace iotak
