#pragma once

// Dense linear algebra over F2 on packed 64-bit words.  Matrices are lists of
// row vectors; every routine here is exact.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace iotak::gf2 {

class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    [[nodiscard]] std::size_t size() const { return size_; }

    [[nodiscard]] bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void assign(std::size_t i, bool b) { b ? set(i) : reset(i); }

    BitVector &operator^=(const BitVector &o) {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] ^= o.words_[k];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }
    bool operator==(const BitVector &) const = default;

    [[nodiscard]] bool any() const {
        for (auto w : words_)
            if (w != 0)
                return true;
        return false;
    }
    [[nodiscard]] bool none() const { return !any(); }

    [[nodiscard]] std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Index of the lowest set bit, or size() if none.
    [[nodiscard]] std::size_t first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] != 0)
                return (k << 6) + static_cast<std::size_t>(std::countr_zero(words_[k]));
        return size_;
    }

    /// Calls f(i) for every set bit, in increasing order.
    template <class F> void for_each(F &&f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w != 0) {
                f((k << 6) + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    /// Parity of the dot product.
    [[nodiscard]] bool dot(const BitVector &o) const {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            acc ^= words_[k] & o.words_[k];
        return (std::popcount(acc) & 1) != 0;
    }

  private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Incrementally maintained reduced row echelon form.  Each pivot column is
/// set in exactly one stored row.
class Echelon {
  public:
    explicit Echelon(std::size_t ncols) : ncols_(ncols) {}

    [[nodiscard]] std::size_t ncols() const { return ncols_; }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }
    [[nodiscard]] const std::vector<BitVector> &rows() const { return rows_; }
    [[nodiscard]] const std::vector<std::size_t> &pivots() const { return pivots_; }

    [[nodiscard]] BitVector reduce(BitVector v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (v.test(pivots_[r]))
                v ^= rows_[r];
        return v;
    }

    [[nodiscard]] bool contains(const BitVector &v) const { return reduce(v).none(); }

    /// Adds v to the row space; returns false if it was already there.
    bool insert(BitVector v) {
        v = reduce(std::move(v));
        const std::size_t p = v.first();
        if (p >= v.size())
            return false;
        for (auto &row : rows_)
            if (row.test(p))
                row ^= v;
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

  private:
    std::size_t ncols_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const std::vector<BitVector> &rows, std::size_t ncols) {
    Echelon e(ncols);
    for (const auto &r : rows)
        e.insert(r);
    return e.rank();
}

/// Basis of {x : A x = 0} where A has the given rows and ncols columns.
inline std::vector<BitVector> kernel(const std::vector<BitVector> &rows, std::size_t ncols) {
    Echelon e(ncols);
    for (const auto &r : rows)
        e.insert(r);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots())
        is_pivot[p] = true;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f])
            continue;
        BitVector x(ncols);
        x.set(f);
        for (std::size_t r = 0; r < e.rank(); ++r)
            if (e.rows()[r].test(f))
                x.set(e.pivots()[r]);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Some x with A x = b, or nullopt when the system is inconsistent.  Free
/// variables are set to zero.
inline std::optional<BitVector> solve(const std::vector<BitVector> &rows, const BitVector &rhs,
                                      std::size_t ncols) {
    // Augmented column sits at index ncols.
    Echelon e(ncols + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        BitVector aug(ncols + 1);
        rows[i].for_each([&](std::size_t j) { aug.set(j); });
        if (rhs.test(i))
            aug.set(ncols);
        e.insert(std::move(aug));
    }
    BitVector x(ncols);
    for (std::size_t r = 0; r < e.rank(); ++r) {
        if (e.pivots()[r] == ncols)
            return std::nullopt;
        if (e.rows()[r].test(ncols))
            x.set(e.pivots()[r]);
    }
    return x;
}

/// Row i of the result is the image of basis vector i of the column space,
/// i.e. transposes a rows x ncols matrix.
inline std::vector<BitVector> transpose(const std::vector<BitVector> &rows, std::size_t ncols) {
    std::vector<BitVector> out(ncols, BitVector(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].for_each([&](std::size_t j) { out[j].set(i); });
    return out;
}

} // namespace iotak::gf2
