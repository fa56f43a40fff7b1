#pragma once

// iota_K-complexes: a filtered free complex over R together with a skew
// homotopy involution iota satisfying iota^2 ~ id + Phi Psi.

#include "iotak/complex.hpp"
#include "iotak/homotopy.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iotak {

struct IotaComplex {
    std::string name;
    FreeComplex complex;
    Morphism iota; // skew, bidegree (0, 0)

    [[nodiscard]] std::size_t size() const { return complex.size(); }
};

// ---------------------------------------------------------------------------
// Formal derivatives

inline Morphism build_phi(const FreeComplex &c) {
    return {c.diff().map([](const LaurentPoly &p) { return formal_derivative(p, Variable::U); }),
            Variance::equivariant,
            {1, -1}};
}

inline Morphism build_psi(const FreeComplex &c) {
    return {c.diff().map([](const LaurentPoly &p) { return formal_derivative(p, Variable::V); }),
            Variance::equivariant,
            {-1, 1}};
}

/// H_B = sum_n C(n, 2) P_n U^(n-2), where d = sum_n P_n U^n.  Satisfies
/// Phi^2 = d H_B + H_B d exactly.
inline Morphism phi_squared_homotopy(const FreeComplex &c) {
    auto h = c.diff().map([](const LaurentPoly &p) {
        std::vector<Monomial> out;
        for (const auto &m : p.terms())
            if (((m.u % 4) + 4) % 4 >= 2) // n(n-1)/2 is odd iff n = 2, 3 mod 4
                out.push_back({detail::checked_sub(m.u, 2), m.v});
        return LaurentPoly::from_terms(std::move(out));
    });
    return {std::move(h), Variance::equivariant, {3, -1}};
}

/// The same construction on the skew complex, read back: Psi^2 = d H + H d.
inline Morphism psi_squared_homotopy(const FreeComplex &c) { return skew(phi_squared_homotopy(skew(c))); }

// ---------------------------------------------------------------------------
// Verification

struct IotaReport {
    /// Conditions (1)..(6): free complex, filtered, graded, homology R,
    /// iota skew chain map, iota^2 ~ id + Phi Psi.
    std::array<bool, 6> conditions{true, true, true, true, true, true};
    std::vector<std::string> issues;
    std::optional<Morphism> homotopy; // witness for condition 6
    bool homotopy_checked = false;

    [[nodiscard]] bool ok() const {
        for (bool b : conditions)
            if (!b)
                return false;
        return true;
    }
    /// 1-based index of the first failing condition, 0 if none.
    [[nodiscard]] int first_failure() const {
        for (std::size_t i = 0; i < conditions.size(); ++i)
            if (!conditions[i])
                return static_cast<int>(i) + 1;
        return 0;
    }
};

struct VerifyOptions {
    /// Condition 6 needs a linear solve over all admissible homotopy entries;
    /// switching it off leaves conditions 1-5.
    bool check_homotopy = true;
};

inline IotaReport verify_iota_complex(const IotaComplex &ic, VerifyOptions opts = {}) {
    IotaReport rep;
    const auto &c = ic.complex;
    auto fail = [&](int cond, std::string msg) {
        rep.conditions[static_cast<std::size_t>(cond - 1)] = false;
        rep.issues.push_back("(" + std::to_string(cond) + ") " + std::move(msg));
    };

    const ComplexReport cr = verify_complex(c);
    if (!cr.shape || !cr.square_zero)
        fail(1, "not a free chain complex");
    if (!cr.filtration || !c.filtered())
        fail(2, "differential is not filtered");
    if (!cr.homogeneous)
        fail(3, "differential is not homogeneous of bidegree (-1,-1)");
    for (const auto &s : cr.issues)
        rep.issues.push_back("    " + s);

    if (rep.conditions[0] && rep.conditions[2]) {
        const auto h = homology_is_R(c);
        if (!h.holds)
            fail(4, "slice homology dims (" + std::to_string(h.even_dim) + ", " + std::to_string(h.odd_dim) +
                        "), expected (1, 0)");
    }

    const Morphism &iota = ic.iota;
    if (iota.rows() != c.size() || iota.cols() != c.size()) {
        fail(5, "iota has the wrong shape");
    } else {
        if (iota.variance != Variance::skew)
            fail(5, "iota is not skew-equivariant");
        if (iota.degree != Bidegree{})
            fail(5, "iota does not have skew bidegree (0,0)");
        for (const auto &s : homogeneity_issues(iota, c, c))
            fail(5, "iota is not skew-graded: " + s);
        if (!is_filtered(iota))
            fail(5, "iota is not skew-filtered");
        if (rep.conditions[0] && !is_chain_map(iota, c, c))
            fail(5, "iota is not a chain map");
    }

    if (opts.check_homotopy && rep.ok()) {
        rep.homotopy_checked = true;
        const Morphism sq = compose(iota, iota);
        const Morphism target = Morphism::identity(c.size()) + compose(build_phi(c), build_psi(c));
        rep.homotopy = homotopy_solve(sq, target, c, c, {Variance::equivariant, true});
        if (!rep.homotopy)
            fail(6, "no filtered equivariant homotopy iota^2 ~ id + Phi Psi");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Constructions

/// C_e = (R, 0, {1}, iota_e).
inline IotaComplex unit_complex() {
    FreeComplex c({{"1", 0, 0}}, PolyMatrix(1, 1));
    return {"unknot", std::move(c), {PolyMatrix::identity(1), Variance::skew, {}}};
}

enum class ProductVariant { first = 1, second = 2 };

/// iota_1 x_1 iota_2 = iota_1|iota_2 + Phi_1 iota_1 | Psi_2 iota_2, and x_2 with
/// Phi and Psi exchanged.  The composites apply iota first.
inline Morphism product_iota(const IotaComplex &a, const IotaComplex &b, ProductVariant variant) {
    const auto &ca = a.complex;
    const auto &cb = b.complex;
    const bool first = variant == ProductVariant::first;
    const Morphism left = compose(first ? build_phi(ca) : build_psi(ca), a.iota);
    const Morphism right = compose(first ? build_psi(cb) : build_phi(cb), b.iota);
    return tensor(a.iota, b.iota) + tensor(left, right);
}

inline IotaComplex product(const IotaComplex &a, const IotaComplex &b, ProductVariant variant,
                           VerifyOptions check = {}) {
    for (const auto *ic : {&a, &b}) {
        const auto rep = verify_iota_complex(*ic, check);
        if (!rep.ok())
            throw std::invalid_argument("product: " + ic->name + " fails condition (" +
                                        std::to_string(rep.first_failure()) + ")");
    }
    return {a.name + " # " + b.name, tensor(a.complex, b.complex), product_iota(a, b, variant)};
}

inline std::string inverse_name(const std::string &n) {
    const std::string suffix = "^-1";
    if (n.size() > suffix.size() && n.ends_with(suffix)) {
        std::string base = n.substr(0, n.size() - suffix.size());
        if (base.size() > 2 && base.front() == '(' && base.back() == ')')
            base = base.substr(1, base.size() - 2);
        return base;
    }
    return n.find(' ') == std::string::npos ? n + suffix : "(" + n + ")" + suffix;
}

/// C^vee with iota^vee(phi) = swap o phi o iota, i.e. the U/V-swapped transpose.
inline IotaComplex dual_iota(const IotaComplex &ic) {
    return {inverse_name(ic.name), dual(ic.complex), {swap_uv(ic.iota.matrix.transpose()), Variance::skew, {}}};
}

// ---------------------------------------------------------------------------
// Inverses: C x C^vee is locally equivalent to C_e through the cotrace and
// trace maps.

struct InverseWitnesses {
    IotaComplex unit;
    IotaComplex product; // C x_1 C^vee
    Morphism cotrace;    // C_e -> C (x) C^vee, 1 -> sum x (x) x^vee
    Morphism trace;      // C (x) C^vee -> C_e, a (x) b -> b(a)

    bool graded_filtered = false;
    bool chain_maps = false;
    bool trace_after_cotrace_is_identity = false;
    bool homology_isomorphisms = false;
    std::optional<Morphism> cotrace_intertwining; // skew H for iota F + F iota_e
    std::optional<Morphism> trace_intertwining;   // skew H for iota_e G + G iota
    std::vector<std::string> issues;

    [[nodiscard]] bool ok() const {
        return graded_filtered && chain_maps && trace_after_cotrace_is_identity && homology_isomorphisms &&
               cotrace_intertwining && trace_intertwining;
    }
};

inline InverseWitnesses inverse_witnesses(const IotaComplex &ic) {
    const std::size_t n = ic.size();
    InverseWitnesses w;
    w.unit = unit_complex();
    w.product = product(ic, dual_iota(ic), ProductVariant::first);
    w.cotrace = Morphism::zero(n * n, 1);
    w.trace = Morphism::zero(1, n * n);
    for (std::size_t i = 0; i < n; ++i) {
        w.cotrace.matrix.set(i * n + i, 0, LaurentPoly::one());
        w.trace.matrix.set(0, i * n + i, LaurentPoly::one());
    }
    const auto &pc = w.product.complex;
    const auto &uc = w.unit.complex;

    w.graded_filtered = is_homogeneous(w.cotrace, uc, pc) && is_homogeneous(w.trace, pc, uc) &&
                        is_filtered(w.cotrace) && is_filtered(w.trace);
    if (!w.graded_filtered)
        w.issues.emplace_back("trace/cotrace not grading preserving and filtered");
    w.chain_maps = is_chain_map(w.cotrace, uc, pc) && is_chain_map(w.trace, pc, uc);
    if (!w.chain_maps) {
        w.issues.emplace_back("trace/cotrace not chain maps");
        return w;
    }
    w.trace_after_cotrace_is_identity = compose(w.trace, w.cotrace) == Morphism::identity(1);
    if (!w.trace_after_cotrace_is_identity)
        w.issues.emplace_back("trace o cotrace != id (even number of generators)");
    w.homology_isomorphisms = homology_class_map(w.cotrace, uc, pc) && homology_class_map(w.trace, pc, uc);
    if (!w.homology_isomorphisms)
        w.issues.emplace_back("trace/cotrace vanish on homology");

    const HomotopyConstraints skew_filtered{Variance::skew, true};
    w.cotrace_intertwining = homotopy_solve(compose(w.product.iota, w.cotrace), compose(w.cotrace, w.unit.iota),
                                            uc, pc, skew_filtered);
    if (!w.cotrace_intertwining)
        w.issues.emplace_back("cotrace does not intertwine the involutions");
    w.trace_intertwining = homotopy_solve(compose(w.unit.iota, w.trace), compose(w.trace, w.product.iota), pc,
                                          uc, skew_filtered);
    if (!w.trace_intertwining)
        w.issues.emplace_back("trace does not intertwine the involutions");
    return w;
}

} // namespace iotak
