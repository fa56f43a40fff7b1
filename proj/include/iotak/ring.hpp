#pragma once

// Exact arithmetic in R = F2[U, V, U^-1, V^-1].
//
// Coefficients live in F2, so a polynomial is nothing more than the set of
// monomials that appear in it.  Terms are kept sorted lexicographically on
// (U-exponent, V-exponent); equality is structural on that canonical form.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iotak {

using Exponent = std::int32_t;

namespace detail {

inline Exponent checked_add(Exponent a, Exponent b) {
    Exponent out{};
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("iotak: exponent overflow");
    return out;
}

inline Exponent checked_sub(Exponent a, Exponent b) {
    Exponent out{};
    if (__builtin_sub_overflow(a, b, &out))
        throw std::overflow_error("iotak: exponent overflow");
    return out;
}

} // namespace detail

/// U^u V^v.  Exponents may be negative.
struct Monomial {
    Exponent u = 0;
    Exponent v = 0;

    constexpr auto operator<=>(const Monomial &) const = default;

    /// Nonnegative in both variables, i.e. an element of F2[U, V].
    [[nodiscard]] constexpr bool filtered() const { return u >= 0 && v >= 0; }

    [[nodiscard]] Monomial operator*(Monomial o) const {
        return {detail::checked_add(u, o.u), detail::checked_add(v, o.v)};
    }
    [[nodiscard]] Monomial inverse() const {
        return {detail::checked_sub(0, u), detail::checked_sub(0, v)};
    }
    [[nodiscard]] constexpr Monomial swapped() const { return {v, u}; }
};

/// U-hat = UV.
inline constexpr Monomial u_hat{1, 1};

enum class Variable { U, V };

class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(Monomial m) : terms_{m} {} // NOLINT(google-explicit-constructor)
    LaurentPoly(std::initializer_list<Monomial> ms) : terms_(ms) { normalize(); }

    /// Builds from an arbitrary list; repeated monomials cancel in pairs.
    static LaurentPoly from_terms(std::vector<Monomial> ms) {
        LaurentPoly p;
        p.terms_ = std::move(ms);
        p.normalize();
        return p;
    }

    static LaurentPoly one() { return LaurentPoly(Monomial{0, 0}); }

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] const std::vector<Monomial> &terms() const { return terms_; }
    [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
    [[nodiscard]] const Monomial &front() const { return terms_.front(); }

    [[nodiscard]] bool contains(Monomial m) const {
        return std::binary_search(terms_.begin(), terms_.end(), m);
    }

    /// All exponents nonnegative.
    [[nodiscard]] bool filtered() const {
        return std::all_of(terms_.begin(), terms_.end(), [](Monomial m) { return m.filtered(); });
    }

    bool operator==(const LaurentPoly &) const = default;

    LaurentPoly &operator+=(const LaurentPoly &o) {
        std::vector<Monomial> out;
        out.reserve(terms_.size() + o.terms_.size());
        std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(),
                                      o.terms_.end(), std::back_inserter(out));
        terms_ = std::move(out);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly p, const LaurentPoly &q) {
        p += q;
        return p;
    }

    friend LaurentPoly operator*(const LaurentPoly &p, const LaurentPoly &q) {
        if (p.is_zero() || q.is_zero())
            return {};
        std::vector<Monomial> out;
        out.reserve(p.size() * q.size());
        for (const auto &a : p.terms_)
            for (const auto &b : q.terms_)
                out.push_back(a * b);
        return from_terms(std::move(out));
    }

    LaurentPoly &operator*=(const LaurentPoly &o) { return *this = *this * o; }

  private:
    // Sort, then drop pairs of equal monomials (characteristic 2).
    void normalize() {
        std::sort(terms_.begin(), terms_.end());
        std::vector<Monomial> out;
        out.reserve(terms_.size());
        for (const auto &m : terms_) {
            if (!out.empty() && out.back() == m)
                out.pop_back();
            else
                out.push_back(m);
        }
        terms_ = std::move(out);
    }

    std::vector<Monomial> terms_;
};

/// d/dU or d/dV, coefficients reduced mod 2: U^i V^j -> i U^(i-1) V^j.
inline LaurentPoly formal_derivative(const LaurentPoly &p, Variable var) {
    std::vector<Monomial> out;
    for (const auto &m : p.terms()) {
        if (var == Variable::U) {
            if (m.u % 2 != 0)
                out.push_back({detail::checked_sub(m.u, 1), m.v});
        } else if (m.v % 2 != 0) {
            out.push_back({m.u, detail::checked_sub(m.v, 1)});
        }
    }
    return LaurentPoly::from_terms(std::move(out));
}

/// The ring automorphism exchanging U and V.
inline LaurentPoly swap_uv(const LaurentPoly &p) {
    std::vector<Monomial> out;
    out.reserve(p.size());
    for (const auto &m : p.terms())
        out.push_back(m.swapped());
    return LaurentPoly::from_terms(std::move(out));
}

inline std::string to_string(Monomial m) {
    auto power = [](const char *var, Exponent e) -> std::string {
        if (e == 0)
            return "";
        if (e == 1)
            return var;
        return std::string(var) + "^" + std::to_string(e);
    };
    std::string s = power("U", m.u) + power("V", m.v);
    return s.empty() ? "1" : s;
}

inline std::string to_string(const LaurentPoly &p) {
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto &m : p.terms()) {
        if (!s.empty())
            s += " + ";
        s += to_string(m);
    }
    return s;
}

inline std::ostream &operator<<(std::ostream &os, const LaurentPoly &p) { return os << to_string(p); }
inline std::ostream &operator<<(std::ostream &os, Monomial m) { return os << to_string(m); }

} // namespace iotak
