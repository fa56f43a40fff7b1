#pragma once

// Model iota_K-complexes: the unknot, staircases with the reflection
// involution, torus knots and mirrors.

#include "iotak/iota.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace iotak {

struct Staircase {
    std::vector<int> u_steps; // a_1 .. a_k
    std::vector<int> v_steps; // b_1 .. b_k

    [[nodiscard]] std::size_t length() const { return u_steps.size(); }
    [[nodiscard]] int genus() const { return std::accumulate(u_steps.begin(), u_steps.end(), 0); }

    bool operator==(const Staircase &) const = default;
};

inline IotaComplex unknot_complex() { return unit_complex(); }

/// Generators x_0 .. x_2k with d x_(2m-1) = U^a_m x_(2m-2) + V^b_m x_(2m) and
/// iota(x_m) = x_(2k-m).  x_0 sits at gr_U = 0.
inline IotaComplex staircase_complex(const Staircase &s, std::string name = "staircase") {
    const std::size_t k = s.length();
    if (s.v_steps.size() != k)
        throw std::invalid_argument("staircase_complex: step lists differ in length");
    for (std::size_t m = 0; m < k; ++m) {
        if (s.u_steps[m] < 1 || s.v_steps[m] < 1)
            throw std::invalid_argument("staircase_complex: steps must be positive");
        if (s.v_steps[m] != s.u_steps[k - 1 - m])
            throw std::invalid_argument("staircase_complex: steps are not palindromic");
    }
    if (k == 0) {
        auto u = unknot_complex();
        u.name = std::move(name);
        return u;
    }

    const std::size_t n = 2 * k + 1;
    std::vector<BasisElement> basis(n);
    int gr_u = 0;
    int alex = s.genus();
    auto place = [&](std::size_t i) { basis[i] = {"x" + std::to_string(i), gr_u, gr_u - 2 * alex}; };
    place(0);
    PolyMatrix diff(n, n);
    for (std::size_t m = 1; m <= k; ++m) {
        const int a = s.u_steps[m - 1];
        const int b = s.v_steps[m - 1];
        gr_u += 1 - 2 * a;
        alex -= a;
        place(2 * m - 1);
        gr_u -= 1;
        alex -= b;
        place(2 * m);
        diff.set(2 * m - 2, 2 * m - 1, Monomial{a, 0});
        diff.set(2 * m, 2 * m - 1, Monomial{0, b});
    }
    PolyMatrix iota(n, n);
    for (std::size_t i = 0; i < n; ++i)
        iota.set(n - 1 - i, i, LaurentPoly::one());
    return {std::move(name), FreeComplex(std::move(basis), std::move(diff)), {std::move(iota), Variance::skew, {}}};
}

/// Exponents n_0 < n_1 < ... of the Alexander polynomial
/// (1 - t)(1 - t^pq) / ((1 - t^p)(1 - t^q)), whose coefficients alternate
/// +1, -1, +1, ...
inline std::vector<int> torus_alexander_exponents(int p, int q) {
    if (p < 1 || q < 1)
        throw std::invalid_argument("torus_knot: p and q must be positive");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("torus_knot: p and q must be coprime");
    if (static_cast<long long>(p) * q > 100000)
        throw std::invalid_argument("torus_knot: p * q too large");
    const int pq = p * q;
    // numerator (1 - t)(1 - t^pq)
    std::vector<long long> num(static_cast<std::size_t>(pq) + 2, 0);
    num[0] += 1;
    num[1] -= 1;
    num[static_cast<std::size_t>(pq)] -= 1;
    num[static_cast<std::size_t>(pq) + 1] += 1;
    // divide by 1 - t^e, i.e. multiply by the series 1 + t^e + t^2e + ...:
    // out_i = in_i + out_(i-e)
    auto divide = [](std::vector<long long> in, int e) {
        for (std::size_t i = static_cast<std::size_t>(e); i < in.size(); ++i)
            in[i] += in[i - static_cast<std::size_t>(e)];
        return in;
    };
    std::vector<long long> quotient = divide(divide(num, p), q);
    const std::size_t degree = static_cast<std::size_t>((p - 1) * (q - 1));
    for (std::size_t i = degree + 1; i < quotient.size(); ++i)
        if (quotient[i] != 0)
            throw std::logic_error("torus_alexander_exponents: division is not exact");
    std::vector<int> exps;
    for (std::size_t i = 0; i <= degree; ++i) {
        if (quotient[i] == 0)
            continue;
        const long long expected = exps.size() % 2 == 0 ? 1 : -1;
        if (quotient[i] != expected)
            throw std::logic_error("torus_alexander_exponents: coefficients do not alternate");
        exps.push_back(static_cast<int>(i));
    }
    return exps;
}

inline Staircase torus_staircase(int p, int q) {
    const auto n = torus_alexander_exponents(p, q);
    Staircase s;
    for (std::size_t m = 1; 2 * m < n.size(); ++m) {
        s.u_steps.push_back(n[2 * m - 1] - n[2 * m - 2]);
        s.v_steps.push_back(n[2 * m] - n[2 * m - 1]);
    }
    if (2 * s.genus() != (p - 1) * (q - 1))
        throw std::logic_error("torus_staircase: genus disagrees with (p-1)(q-1)/2");
    return s;
}

inline std::string torus_name(int p, int q) { return "T(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

inline IotaComplex torus_knot(int p, int q) { return staircase_complex(torus_staircase(p, q), torus_name(p, q)); }

inline IotaComplex mirror(const IotaComplex &ic) { return dual_iota(ic); }

} // namespace iotak
