#pragma once

// Free complexes over F2[W], W = UV, with integer gradings.  Every nonzero
// entry of a homogeneous map is a single power of W fixed by the gradings,
// so only the supports are stored.

#include "iotak/gf2.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iotak {

struct TowerGenerator {
    std::string name;
    int gr = 0;

    bool operator==(const TowerGenerator &) const = default;
};

/// Column x holds the sorted targets y with a nonzero entry.
using SupportMatrix = std::vector<std::vector<std::size_t>>;

class UTowerComplex {
  public:
    UTowerComplex() = default;
    UTowerComplex(std::vector<TowerGenerator> basis, SupportMatrix diff,
                  std::optional<SupportMatrix> endo = std::nullopt)
        : basis_(std::move(basis)), diff_(std::move(diff)), endo_(std::move(endo)) {
        check_support(diff_, "differential");
        if (endo_)
            check_support(*endo_, "endomorphism");
    }

    [[nodiscard]] std::size_t size() const { return basis_.size(); }
    [[nodiscard]] const std::vector<TowerGenerator> &basis() const { return basis_; }
    [[nodiscard]] const TowerGenerator &operator[](std::size_t i) const { return basis_.at(i); }
    [[nodiscard]] int gr(std::size_t i) const { return basis_[i].gr; }
    [[nodiscard]] const SupportMatrix &diff() const { return diff_; }
    [[nodiscard]] const std::optional<SupportMatrix> &endo() const { return endo_; }

    /// Exponent k of the entry W^k from x to y in the differential.
    [[nodiscard]] int diff_exponent(std::size_t x, std::size_t y) const { return (gr(y) - gr(x) + 1) / 2; }
    /// Exponent k of the entry W^k from x to y in the endomorphism.
    [[nodiscard]] int endo_exponent(std::size_t x, std::size_t y) const { return (gr(y) - gr(x)) / 2; }

    bool operator==(const UTowerComplex &) const = default;

  private:
    void check_support(SupportMatrix &m, const char *what) const {
        if (m.size() != basis_.size())
            throw std::invalid_argument(std::string("UTowerComplex: ") + what + " has the wrong size");
        for (auto &col : m) {
            std::sort(col.begin(), col.end());
            if (std::adjacent_find(col.begin(), col.end()) != col.end())
                throw std::invalid_argument(std::string("UTowerComplex: repeated entry in ") + what);
            if (!col.empty() && col.back() >= basis_.size())
                throw std::invalid_argument(std::string("UTowerComplex: ") + what + " entry out of range");
        }
    }

    std::vector<TowerGenerator> basis_;
    SupportMatrix diff_;
    std::optional<SupportMatrix> endo_;
};

namespace detail {

/// Support of A * B, where a and b are column supports.
inline SupportMatrix support_product(const SupportMatrix &a, const SupportMatrix &b, std::size_t rows) {
    SupportMatrix out(b.size());
    gf2::BitVector acc(rows);
    for (std::size_t x = 0; x < b.size(); ++x) {
        for (auto m : b[x])
            for (auto y : a[m])
                acc.flip(y);
        acc.for_each([&](std::size_t y) { out[x].push_back(y); });
        for (auto y : out[x])
            acc.reset(y);
    }
    return out;
}

inline SupportMatrix support_sum(const SupportMatrix &a, const SupportMatrix &b) {
    SupportMatrix out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        std::set_symmetric_difference(a[x].begin(), a[x].end(), b[x].begin(), b[x].end(),
                                      std::back_inserter(out[x]));
    return out;
}

} // namespace detail

/// Empty when the differential is homogeneous of degree -1 with nonnegative
/// exponents and squares to zero, and the endomorphism (if any) is a grading
/// preserving chain map with nonnegative exponents.
inline std::vector<std::string> tower_issues(const UTowerComplex &t) {
    std::vector<std::string> issues;
    const auto n = t.size();
    for (std::size_t x = 0; x < n; ++x)
        for (auto y : t.diff()[x]) {
            const int delta = t.gr(y) - t.gr(x) + 1;
            if (delta % 2 != 0 || delta < 0)
                issues.push_back("d(" + t[x].name + ") -> " + t[y].name + " is not a nonnegative W-power");
        }
    if (!issues.empty())
        return issues;
    const auto square = detail::support_product(t.diff(), t.diff(), n);
    if (std::any_of(square.begin(), square.end(), [](const auto &c) { return !c.empty(); }))
        issues.emplace_back("d^2 != 0");
    if (const auto &e = t.endo()) {
        for (std::size_t x = 0; x < n; ++x)
            for (auto y : (*e)[x]) {
                const int delta = t.gr(y) - t.gr(x);
                if (delta % 2 != 0 || delta < 0)
                    issues.push_back("endo(" + t[x].name + ") -> " + t[y].name + " is not a nonnegative W-power");
            }
        if (issues.empty() &&
            detail::support_product(t.diff(), *e, n) != detail::support_product(*e, t.diff(), n))
            issues.emplace_back("endomorphism is not a chain map");
    }
    return issues;
}

// ---------------------------------------------------------------------------
// Homology

struct HomologyDecomp {
    std::vector<int> free;                     // gradings, descending
    std::vector<std::pair<int, int>> torsion;  // (grading, order), descending

    bool operator==(const HomologyDecomp &) const = default;

    [[nodiscard]] int max_torsion_order() const {
        int m = 0;
        for (const auto &[g, k] : torsion)
            m = std::max(m, k);
        return m;
    }

    /// F2 dimension of homology in grading r.
    [[nodiscard]] std::size_t dimension(int r) const {
        std::size_t n = 0;
        for (int g : free)
            n += (g >= r && (g - r) % 2 == 0) ? 1 : 0;
        for (const auto &[g, k] : torsion)
            n += (g >= r && (g - r) % 2 == 0 && g - 2 * k < r) ? 1 : 0;
        return n;
    }
};

/// Graded Smith normal form: repeatedly pivot on an entry of minimal exponent
/// (ties broken by smallest column, then smallest row), clear its row and
/// column by homogeneous basis changes, and split off the pair.
inline HomologyDecomp homology_snf(const UTowerComplex &t) {
    const std::size_t n = t.size();
    std::vector<gf2::BitVector> col(n, gf2::BitVector(n));
    std::vector<gf2::BitVector> row(n, gf2::BitVector(n));
    for (std::size_t x = 0; x < n; ++x)
        for (auto y : t.diff()[x]) {
            col[x].set(y);
            row[y].set(x);
        }
    // Basis change b_a <- b_a + c b_b: the matrix becomes P M P with
    // P = 1 + c E_ba, i.e. column a += column b, then row b += row a.
    auto add_column = [&](std::size_t a, std::size_t b) {
        col[a] ^= col[b];
        col[b].for_each([&](std::size_t r) { row[r].flip(a); });
    };
    auto add_row = [&](std::size_t b, std::size_t a) {
        row[b] ^= row[a];
        row[a].for_each([&](std::size_t c) { col[c].flip(b); });
    };

    HomologyDecomp out;
    std::vector<bool> alive(n, true);
    for (;;) {
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        int best = 0;
        for (std::size_t x = 0; x < n && !(pivot && best == 0); ++x) {
            if (!alive[x])
                continue;
            col[x].for_each([&](std::size_t y) {
                const int k = t.diff_exponent(x, y);
                if (!pivot || k < best) {
                    pivot = {x, y};
                    best = k;
                }
            });
        }
        if (!pivot)
            break;
        const auto [x, y] = *pivot;
        std::vector<std::size_t> others;
        col[x].for_each([&](std::size_t r) {
            if (r != y)
                others.push_back(r);
        });
        for (auto r : others) { // y <- y + W^(k'-k) r
            add_column(y, r);
            add_row(r, y);
        }
        others.clear();
        row[y].for_each([&](std::size_t c) {
            if (c != x)
                others.push_back(c);
        });
        for (auto c : others) { // c <- c + W^(k'-k) x
            add_column(c, x);
            add_row(x, c);
        }
        if (col[x].count() != 1 || row[y].count() != 1 || col[y].any() || row[x].any())
            throw std::logic_error("homology_snf: pivot not isolated");
        col[x].reset(y);
        row[y].reset(x);
        alive[x] = alive[y] = false;
        if (best > 0)
            out.torsion.emplace_back(t.gr(y), best);
    }
    for (std::size_t x = 0; x < n; ++x)
        if (alive[x])
            out.free.push_back(t.gr(x));
    std::sort(out.free.rbegin(), out.free.rend());
    std::sort(out.torsion.rbegin(), out.torsion.rend());
    return out;
}

// ---------------------------------------------------------------------------
// Grading slices: the F2 vector space spanned by W^j x with gr(x) - 2j = r.

struct GradingSlice {
    int grading = 0;
    std::vector<std::size_t> gens;          // generators x with gr(x) >= r, same parity
    std::vector<std::size_t> position;      // x -> index in gens, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    [[nodiscard]] std::size_t size() const { return gens.size(); }
    [[nodiscard]] bool contains(std::size_t x) const { return position[x] != npos; }
};

inline GradingSlice grading_slice(const UTowerComplex &t, int r) {
    GradingSlice s;
    s.grading = r;
    s.position.assign(t.size(), GradingSlice::npos);
    for (std::size_t x = 0; x < t.size(); ++x)
        if (t.gr(x) >= r && (t.gr(x) - r) % 2 == 0) {
            s.position[x] = s.gens.size();
            s.gens.push_back(x);
        }
    return s;
}

/// Matrix of a support map from the slice `from` to the slice `to`, as columns.
/// Entries whose generator falls outside `to` vanish (they would need a
/// negative W-power and cannot occur for homogeneous maps).
inline std::vector<gf2::BitVector> slice_map(const SupportMatrix &m, const GradingSlice &from,
                                             const GradingSlice &to) {
    std::vector<gf2::BitVector> cols;
    cols.reserve(from.size());
    for (auto x : from.gens) {
        gf2::BitVector v(to.size());
        for (auto y : m[x])
            if (to.contains(y))
                v.flip(to.position[y]);
        cols.push_back(std::move(v));
    }
    return cols;
}

/// F2 dimension of H_r computed directly from the slices.
inline std::size_t slice_homology_dimension(const UTowerComplex &t, int r) {
    const auto above = grading_slice(t, r + 1);
    const auto here = grading_slice(t, r);
    const auto below = grading_slice(t, r - 1);
    const auto rank_out = gf2::rank(slice_map(t.diff(), here, below), below.size());
    const auto rank_in = gf2::rank(slice_map(t.diff(), above, here), here.size());
    return here.size() - rank_out - rank_in;
}

// ---------------------------------------------------------------------------
// The involutive mapping cone of Q(1 + iota).

inline UTowerComplex involutive_cone(const UTowerComplex &t) {
    if (!t.endo())
        throw std::invalid_argument("involutive_cone: complex carries no endomorphism");
    const std::size_t n = t.size();
    const auto &iota = *t.endo();
    std::vector<TowerGenerator> basis;
    basis.reserve(2 * n);
    for (const auto &g : t.basis())
        basis.push_back({g.name + "^dom", g.gr + 1});
    for (const auto &g : t.basis())
        basis.push_back({g.name + "^Q", g.gr});

    SupportMatrix diff(2 * n);
    for (std::size_t x = 0; x < n; ++x) {
        auto &dom = diff[x];
        dom = t.diff()[x];
        // (1 + iota) x, in the Q copy
        std::vector<std::size_t> q{x};
        std::vector<std::size_t> sum;
        std::set_symmetric_difference(q.begin(), q.end(), iota[x].begin(), iota[x].end(), std::back_inserter(sum));
        for (auto y : sum)
            dom.push_back(n + y);
        for (auto y : t.diff()[x])
            diff[n + x].push_back(n + y);
    }
    return {std::move(basis), std::move(diff)};
}

} // namespace iotak
