#pragma once

// Free, bigraded chain complexes over R and the morphisms between them.
//
// Every matrix is stored in the column convention: entry (y, x) is the
// coefficient of y in the image of x.  A morphism carries a variance flag.
// Skew maps satisfy F(U x) = V F(x), so composing F after G swaps U and V in
// the coefficients of G.

#include "iotak/gf2.hpp"
#include "iotak/matrix.hpp"
#include "iotak/ring.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace iotak {

struct BasisElement {
    std::string name;
    int gr_u = 0;
    int gr_v = 0;

    bool operator==(const BasisElement &) const = default;

    /// A = (gr_U - gr_V) / 2.  Only meaningful when the parities agree.
    [[nodiscard]] int alexander() const { return (gr_u - gr_v) / 2; }
};

class FreeComplex {
  public:
    /// The zero complex.
    FreeComplex() = default;

    FreeComplex(std::vector<BasisElement> basis, PolyMatrix diff, bool filtered = true)
        : basis_(std::move(basis)), diff_(std::move(diff)), filtered_(filtered) {
        if (diff_.rows() != basis_.size() || diff_.cols() != basis_.size())
            throw std::invalid_argument("FreeComplex: differential must be square of basis size");
    }

    [[nodiscard]] std::size_t size() const { return basis_.size(); }
    [[nodiscard]] bool empty() const { return basis_.empty(); }
    [[nodiscard]] const std::vector<BasisElement> &basis() const { return basis_; }
    [[nodiscard]] const BasisElement &operator[](std::size_t i) const { return basis_.at(i); }
    [[nodiscard]] const PolyMatrix &diff() const { return diff_; }
    [[nodiscard]] bool filtered() const { return filtered_; }

    [[nodiscard]] std::optional<std::size_t> index_of(const std::string &name) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].name == name)
                return i;
        return std::nullopt;
    }

    bool operator==(const FreeComplex &) const = default;

  private:
    std::vector<BasisElement> basis_;
    PolyMatrix diff_;
    bool filtered_ = true;
};

// ---------------------------------------------------------------------------
// Morphisms

enum class Variance { equivariant, skew };

inline Variance operator*(Variance a, Variance b) {
    return a == b ? Variance::equivariant : Variance::skew;
}

inline const char *to_string(Variance v) { return v == Variance::skew ? "skew" : "equivariant"; }

struct Bidegree {
    int u = 0;
    int v = 0;
    auto operator<=>(const Bidegree &) const = default;
    [[nodiscard]] Bidegree swapped() const { return {v, u}; }
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.u + b.u, a.v + b.v}; }
};

struct Morphism {
    PolyMatrix matrix;
    Variance variance = Variance::equivariant;
    Bidegree degree{};

    [[nodiscard]] std::size_t rows() const { return matrix.rows(); }
    [[nodiscard]] std::size_t cols() const { return matrix.cols(); }
    bool operator==(const Morphism &) const = default;

    static Morphism identity(std::size_t n) { return {PolyMatrix::identity(n), Variance::equivariant, {}}; }
    static Morphism zero(std::size_t rows, std::size_t cols, Variance var = Variance::equivariant,
                         Bidegree deg = {}) {
        return {PolyMatrix(rows, cols), var, deg};
    }
};

/// The differential as an equivariant map of bidegree (-1, -1).
inline Morphism differential(const FreeComplex &c) { return {c.diff(), Variance::equivariant, {-1, -1}}; }

/// f after g.
inline Morphism compose(const Morphism &f, const Morphism &g) {
    if (f.variance == Variance::equivariant)
        return {f.matrix * g.matrix, g.variance, f.degree + g.degree};
    return {f.matrix * swap_uv(g.matrix), f.variance * g.variance, f.degree + g.degree.swapped()};
}

inline Morphism operator+(Morphism a, const Morphism &b) {
    if (a.variance != b.variance || a.degree != b.degree)
        throw std::invalid_argument("Morphism sum: variance or bidegree mismatch");
    a.matrix += b.matrix;
    return a;
}

/// F|G on tensor products, (F|G)(x (x) y) = F(x) (x) G(y).  Both factors must
/// share a variance; for skew factors a scalar crossing into either side is
/// swapped, which is consistent because the tensor is over R.
inline Morphism tensor(const Morphism &f, const Morphism &g) {
    if (f.variance != g.variance)
        throw std::invalid_argument("tensor of morphisms: mixed variance is not R-linear");
    return {kronecker(f.matrix, g.matrix), f.variance, f.degree + g.degree};
}

/// The only monomial that may appear at (y, x) in a homogeneous map of the
/// given variance and bidegree, or nullopt when parity rules every one out.
inline std::optional<Monomial> forced_monomial(const BasisElement &x, const BasisElement &y,
                                               Variance var, Bidegree deg) {
    const int su = var == Variance::equivariant ? x.gr_u : x.gr_v;
    const int sv = var == Variance::equivariant ? x.gr_v : x.gr_u;
    const int du = y.gr_u - su - deg.u;
    const int dv = y.gr_v - sv - deg.v;
    if (du % 2 != 0 || dv % 2 != 0)
        return std::nullopt;
    return Monomial{du / 2, dv / 2};
}

/// Offending entries of m : source -> target, described in words.  Empty
/// means every entry is the grading-forced monomial.
inline std::vector<std::string> homogeneity_issues(const Morphism &m, const FreeComplex &source,
                                                   const FreeComplex &target) {
    std::vector<std::string> issues;
    if (m.cols() != source.size() || m.rows() != target.size()) {
        issues.emplace_back("matrix shape does not match source/target");
        return issues;
    }
    m.matrix.for_each([&](std::size_t r, std::size_t c, const LaurentPoly &p) {
        const auto forced = forced_monomial(source[c], target[r], m.variance, m.degree);
        if (!forced || !p.is_monomial() || p.front() != *forced)
            issues.push_back(source[c].name + " -> " + target[r].name + ": " + to_string(p) +
                             (forced ? " (expected " + to_string(*forced) + ")" : " (no admissible monomial)"));
    });
    return issues;
}

inline bool is_homogeneous(const Morphism &m, const FreeComplex &source, const FreeComplex &target) {
    return homogeneity_issues(m, source, target).empty();
}

inline bool is_filtered(const Morphism &m) {
    bool ok = true;
    m.matrix.for_each([&](std::size_t, std::size_t, const LaurentPoly &p) { ok = ok && p.filtered(); });
    return ok;
}

/// d_target F + F d_source = 0, computed exactly.
inline bool is_chain_map(const Morphism &f, const FreeComplex &source, const FreeComplex &target) {
    if (f.cols() != source.size() || f.rows() != target.size())
        return false;
    const Morphism lhs = compose(differential(target), f);
    const Morphism rhs = compose(f, differential(source));
    return (lhs.matrix + rhs.matrix).is_zero();
}

// ---------------------------------------------------------------------------
// Verification

struct ComplexReport {
    bool shape = true;
    bool homogeneous = true;
    bool square_zero = true;
    bool filtration = true;
    std::vector<std::string> issues;

    [[nodiscard]] bool ok() const { return shape && homogeneous && square_zero && filtration; }
};

inline ComplexReport verify_complex(const FreeComplex &c) {
    ComplexReport rep;
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto &b = c[i];
        if (!seen.emplace(b.name, i).second) {
            rep.shape = false;
            rep.issues.push_back("duplicate generator name " + b.name);
        }
        if ((b.gr_u - b.gr_v) % 2 != 0) {
            rep.homogeneous = false;
            rep.issues.push_back(b.name + ": gr_U and gr_V have different parity");
        }
    }
    for (auto &s : homogeneity_issues(differential(c), c, c)) {
        rep.homogeneous = false;
        rep.issues.push_back("homogeneity: " + s);
    }
    const PolyMatrix sq = c.diff() * c.diff();
    sq.for_each([&](std::size_t r, std::size_t col, const LaurentPoly &p) {
        rep.square_zero = false;
        rep.issues.push_back("d^2 nonzero at " + c[col].name + " -> " + c[r].name + ": " + to_string(p));
    });
    if (c.filtered()) {
        c.diff().for_each([&](std::size_t r, std::size_t col, const LaurentPoly &p) {
            if (!p.filtered()) {
                rep.filtration = false;
                rep.issues.push_back("negative exponent at " + c[col].name + " -> " + c[r].name);
            }
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Constructions

/// C1 (x) C2 with basis pairs in lexicographic order, named "x|y".
inline FreeComplex tensor(const FreeComplex &c1, const FreeComplex &c2) {
    std::vector<BasisElement> basis;
    basis.reserve(c1.size() * c2.size());
    for (const auto &a : c1.basis())
        for (const auto &b : c2.basis())
            basis.push_back({a.name + "|" + b.name, a.gr_u + b.gr_u, a.gr_v + b.gr_v});
    PolyMatrix d = kronecker(c1.diff(), PolyMatrix::identity(c2.size())) +
                   kronecker(PolyMatrix::identity(c1.size()), c2.diff());
    return {std::move(basis), std::move(d), c1.filtered() && c2.filtered()};
}

/// Name of the dual basis element; dualizing twice restores the original.
inline std::string dual_name(const std::string &n) {
    if (!n.empty() && n.back() == '^')
        return n.substr(0, n.size() - 1);
    return n + "^";
}

/// Hom_R(C, R): negated gradings, transposed differential.
inline FreeComplex dual(const FreeComplex &c) {
    std::vector<BasisElement> basis;
    basis.reserve(c.size());
    for (const auto &b : c.basis())
        basis.push_back({dual_name(b.name), -b.gr_u, -b.gr_v});
    return {std::move(basis), c.diff().transpose(), c.filtered()};
}

/// Same F2 complex with the roles of U and V exchanged.
inline FreeComplex skew(const FreeComplex &c) {
    std::vector<BasisElement> basis;
    basis.reserve(c.size());
    for (const auto &b : c.basis())
        basis.push_back({b.name, b.gr_v, b.gr_u});
    return {std::move(basis), swap_uv(c.diff()), c.filtered()};
}

/// A map on C read as a map on skew(C) (or back): same F2-linear map, with
/// U and V exchanged in coefficients and bidegree.
inline Morphism skew(const Morphism &m) { return {swap_uv(m.matrix), m.variance, m.degree.swapped()}; }

// ---------------------------------------------------------------------------
// Homology over R via finite slices.
//
// Because U and V are units, the slices {U^i V^j x : A = 0, gr_U = m} are all
// identified for m of a fixed parity.  Each generator contributes exactly one
// vector to the slice of its own gr_U parity, and a homogeneous entry is a
// single bit.

struct ParitySlices {
    std::vector<std::size_t> even; // generators with gr_U even
    std::vector<std::size_t> odd;
    std::vector<std::size_t> position; // index inside its own parity class
    std::vector<gf2::BitVector> d_even; // rows: odd targets, columns: even sources
    std::vector<gf2::BitVector> d_odd;  // rows: even targets, columns: odd sources
};

inline bool is_even(int n) { return n % 2 == 0; }

inline ParitySlices parity_slices(const FreeComplex &c) {
    ParitySlices s;
    s.position.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto &bucket = is_even(c[i].gr_u) ? s.even : s.odd;
        s.position[i] = bucket.size();
        bucket.push_back(i);
    }
    s.d_even.assign(s.odd.size(), gf2::BitVector(s.even.size()));
    s.d_odd.assign(s.even.size(), gf2::BitVector(s.odd.size()));
    c.diff().for_each([&](std::size_t r, std::size_t col, const LaurentPoly &) {
        if (is_even(c[col].gr_u))
            s.d_even[s.position[r]].flip(s.position[col]);
        else
            s.d_odd[s.position[r]].flip(s.position[col]);
    });
    return s;
}

struct HomologyCheck {
    bool holds = false;
    std::size_t even_dim = 0; // slice with gr_U even
    std::size_t odd_dim = 0;
};

/// H_*(C) = R with the generator in even gr_U parity.
inline HomologyCheck homology_is_R(const FreeComplex &c) {
    const auto s = parity_slices(c);
    const std::size_t re = gf2::rank(s.d_even, s.even.size());
    const std::size_t ro = gf2::rank(s.d_odd, s.odd.size());
    HomologyCheck h;
    h.even_dim = s.even.size() - re - ro;
    h.odd_dim = s.odd.size() - ro - re;
    h.holds = h.even_dim == 1 && h.odd_dim == 0;
    return h;
}

/// A cycle in the even slice whose class generates the homology, as a bit
/// vector over the even generators; nullopt if the even homology vanishes.
inline std::optional<gf2::BitVector> even_homology_generator(const FreeComplex &c) {
    const auto s = parity_slices(c);
    gf2::Echelon boundaries(s.even.size());
    for (const auto &col : gf2::transpose(s.d_odd, s.odd.size()))
        boundaries.insert(col);
    for (auto &z : gf2::kernel(s.d_even, s.even.size()))
        if (!boundaries.contains(z))
            return z;
    return std::nullopt;
}

/// Whether an equivariant, bidegree (0, 0) chain map is nonzero on the
/// even-slice homology.  Throws if f is not such a chain map.
inline bool homology_class_map(const Morphism &f, const FreeComplex &source, const FreeComplex &target) {
    if (f.variance != Variance::equivariant || f.degree != Bidegree{})
        throw std::invalid_argument("homology_class_map: need an equivariant map of bidegree (0,0)");
    if (!is_homogeneous(f, source, target))
        throw std::invalid_argument("homology_class_map: map is not homogeneous");
    if (!is_chain_map(f, source, target))
        throw std::invalid_argument("homology_class_map: not a chain map");
    const auto z = even_homology_generator(source);
    if (!z)
        return false;
    const auto src = parity_slices(source);
    const auto tgt = parity_slices(target);
    gf2::BitVector image(tgt.even.size());
    z->for_each([&](std::size_t k) {
        for (const auto &[r, p] : f.matrix.column(src.even[k]))
            image.flip(tgt.position[r]); // parity of gr_U is preserved
    });
    gf2::Echelon boundaries(tgt.even.size());
    for (const auto &col : gf2::transpose(tgt.d_odd, tgt.odd.size()))
        boundaries.insert(col);
    return !boundaries.contains(image);
}

} // namespace iotak
