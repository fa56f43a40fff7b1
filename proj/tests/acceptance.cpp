// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "iotak/iotak.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

using namespace iotak;

namespace {

struct Triple {
    int bar;
    int v;
    int under;
};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (pass)
                detail = what;
            pass = false;
        }
    }
};

std::string show(const InvariantReport &r) {
    return "(" + std::to_string(r.V0_bar) + ", " + std::to_string(r.V0) + ", " + std::to_string(r.V0_under) + ")";
}

bool matches(const InvariantReport &r, Triple t) { return r.V0_bar == t.bar && r.V0 == t.v && r.V0_under == t.under; }

IotaComplex sum(const std::vector<IotaComplex> &parts) {
    IotaComplex acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        acc = product(acc, parts[i], ProductVariant::first, {false});
    return acc;
}

IotaComplex t(int p, int q) { return torus_knot(p, q); }

struct TableRow {
    IotaComplex knot;
    Triple expected;
};

std::vector<TableRow> table() {
    return {
        {sum({t(4, 5), t(4, 5)}), {4, 4, 6}},
        {sum({t(4, 5), t(4, 5), t(5, 6)}), {7, 7, 9}},
        {sum({t(6, 7), t(6, 7)}), {9, 9, 12}},
        {sum({t(4, 5), t(6, 7)}), {7, 7, 9}},
        {sum({mirror(t(3, 4)), mirror(t(4, 5)), t(5, 6)}), {-1, 1, 1}},
    };
}

std::vector<IotaComplex> staircases() {
    std::vector<IotaComplex> out;
    for (auto [p, q] : {std::pair{2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}})
        out.push_back(t(p, q));
    return out;
}

/// Unknot, staircases, their duals and all pairwise products.
std::vector<IotaComplex> corpus() {
    std::vector<IotaComplex> base{unknot_complex()};
    for (const auto &s : staircases()) {
        base.push_back(s);
        base.push_back(mirror(s));
    }
    std::vector<IotaComplex> out = base;
    for (const auto &a : base)
        for (const auto &b : base)
            out.push_back(product(a, b, ProductVariant::first, {false}));
    return out;
}

bool exact_phi_identities(const IotaComplex &ic) {
    const auto &c = ic.complex;
    const auto d = differential(c);
    const auto phi = build_phi(c);
    const auto hb = phi_squared_homotopy(c);
    return (compose(phi, d) + compose(d, phi)).matrix.is_zero() &&
           (compose(d, hb) + compose(hb, d)).matrix == compose(phi, phi).matrix;
}

Outcome criterion1() {
    Outcome o;
    const auto r = involutive_invariants(t(2, 3));
    o.require(matches(r, {1, 1, 1}), "T(2,3) gives " + show(r));
    o.detail = o.pass ? "T(2,3) " + show(r) : o.detail;
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (auto v : {ProductVariant::first, ProductVariant::second}) {
        const auto r = involutive_invariants(product(t(2, 3), t(2, 3), v));
        o.require(matches(r, {1, 1, 2}), "T(2,3) # T(2,3) gives " + show(r));
    }
    if (o.pass)
        o.detail = "T(2,3) # T(2,3) (1, 1, 2) under both products";
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::string rows;
    for (const auto &row : table()) {
        const auto r = involutive_invariants(row.knot);
        o.require(matches(r, row.expected), row.knot.name + " gives " + show(r));
        rows += (rows.empty() ? "" : "; ") + row.knot.name + " " + show(r);
    }
    if (o.pass)
        o.detail = rows;
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto r = involutive_invariants(sum({t(5, 6), t(5, 6)}));
    o.require(matches(r, {6, 6, 6}), "T(5,6) # T(5,6) gives " + show(r));
    if (o.pass)
        o.detail = "T(5,6) # T(5,6) " + show(r);
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (const auto &row : table()) {
        const auto v = obstruction_pattern(involutive_invariants(row.knot));
        o.require(!v.pattern1 && !v.pattern2, row.knot.name + " satisfies a pattern");
    }
    for (const auto &k : {t(2, 3), sum({t(2, 3), t(2, 3)}), unknot_complex()}) {
        const auto v = obstruction_pattern(involutive_invariants(k));
        o.require(v.consistent_with_thin_or_lspace(), k.name + " satisfies neither pattern");
    }
    if (o.pass)
        o.detail = "table knots obstructed; trefoil, T(2,3) # T(2,3), unknot consistent";
    return o;
}

Outcome criterion6(const std::vector<IotaComplex> &all) {
    Outcome o;
    for (const auto &ic : all)
        o.require(exact_phi_identities(ic), ic.name + ": Phi identities");
    for (const auto &s : staircases())
        for (const auto &ic : {s, mirror(s)}) {
            const auto &c = ic.complex;
            o.require(compose(ic.iota, ic.iota) == Morphism::identity(c.size()), ic.name + ": iota^2 != id");
            o.require(compose(build_phi(c), build_psi(c)).matrix.is_zero(), ic.name + ": Phi Psi != 0");
        }
    std::vector<IotaComplex> with_inverse{unknot_complex()};
    for (const auto &s : staircases()) {
        with_inverse.push_back(s);
        with_inverse.push_back(mirror(s));
    }
    for (const auto &ic : with_inverse)
        o.require(inverse_witnesses(ic).trace_after_cotrace_is_identity, ic.name + ": trace o cotrace != id");
    if (o.pass)
        o.detail = std::to_string(all.size()) + " complexes";
    return o;
}

Outcome criterion7(const std::vector<IotaComplex> &all) {
    Outcome o;
    const HomotopyConstraints eq{Variance::equivariant, true};
    for (const auto &ic : all) {
        const auto &c = ic.complex;
        const auto rep = verify_iota_complex(ic);
        o.require(rep.ok() && rep.homotopy, ic.name + ": iota^2 ~ id + Phi Psi");
        const auto i2 = compose(ic.iota, ic.iota);
        o.require(homotopic(compose(i2, i2), Morphism::identity(c.size()), c, c, eq), ic.name + ": iota^4 ~ id");
        o.require(homotopic(compose(build_phi(c), build_psi(c)), compose(build_psi(c), build_phi(c)), c, c, eq),
                  ic.name + ": Phi Psi ~ Psi Phi");
    }

    const auto tr = t(2, 3);
    const auto &c = tr.complex;
    const auto id = Morphism::identity(c.size());
    const auto f = tensor(id, id) + tensor(build_psi(c), build_phi(c));
    const auto g = tensor(id, id) + tensor(build_phi(c), build_psi(c));
    const auto x1 = product(tr, tr, ProductVariant::first);
    const auto x2 = product(tr, tr, ProductVariant::second);
    const auto leq = verify_local_equivalence(x1, x2, f, g);
    o.require(leq.ok, "x_1 / x_2 equivalence: " + leq.failure);

    const auto left = product(product(tr, t(3, 4), ProductVariant::first), mirror(tr), ProductVariant::first);
    const auto right = product(tr, product(t(3, 4), mirror(tr), ProductVariant::first), ProductVariant::first);
    o.require(homotopic(left.iota, right.iota, left.complex, left.complex, {Variance::skew, true}),
              "associativity on T(2,3) # T(3,4) # T(2,3)^-1");

    for (const auto &ic : {tr, t(3, 4), mirror(t(4, 5))}) {
        const auto w = inverse_witnesses(ic);
        o.require(w.cotrace_intertwining && w.trace_intertwining, ic.name + ": trace/cotrace intertwining");
    }

    const Morphism zero{PolyMatrix(3, 3), Variance::equivariant, {1, -1}};
    o.require(!homotopic(build_phi(c), zero, c, c, eq), "Phi ~ 0 on the trefoil was not refuted");
    if (o.pass)
        o.detail = std::to_string(all.size()) + " complexes; Phi ~ 0 infeasible on the trefoil";
    return o;
}

Outcome criterion8(const std::vector<IotaComplex> &all) {
    Outcome o;
    std::vector<IotaComplex> targets = all;
    for (auto &row : table())
        targets.push_back(std::move(row.knot));
    targets.push_back(sum({t(5, 6), t(5, 6)}));
    for (const auto &ic : targets) {
        const auto tower = a_zero_minus(ic);
        const auto r = involutive_invariants(tower);
        const auto oracle = lemma_criteria_oracle(tower);
        o.require(oracle.d_bar == r.d_bar && oracle.d_under == r.d_under, ic.name + ": oracle disagrees");
        o.require(r.d_under <= r.d && r.d <= r.d_bar, ic.name + ": ordering");
        o.require(r.d % 2 == 0, ic.name + ": odd d");
    }
    if (o.pass)
        o.detail = std::to_string(targets.size()) + " complexes agree";
    return o;
}

Outcome criterion9() {
    Outcome o;
    const auto res = search_local_equivalence(unknot_complex(), t(2, 3));
    o.require(!res.witness, "a witness was found");
    if (o.pass)
        o.detail = "exhaustive search negative (chain-map dimension " + std::to_string(res.forward_dimension) + ")";
    return o;
}

} // namespace

int main() {
    const auto all = corpus();
    const std::vector<std::function<Outcome()>> criteria{
        criterion1,
        criterion2,
        criterion3,
        criterion4,
        criterion5,
        [&] { return criterion6(all); },
        [&] { return criterion7(all); },
        [&] { return criterion8(all); },
        criterion9,
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        std::printf("criterion %zu: %s (%.3f s) %s\n", i + 1, o.pass ? "PASS" : "FAIL", elapsed.count(),
                    o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
