#pragma once

// Sparse matrices over R, stored by column.  Column x lists the nonzero
// coefficients of the image of basis element x, sorted by row index.

#include "iotak/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace iotak {

class PolyMatrix {
  public:
    using Entry = std::pair<std::size_t, LaurentPoly>;
    using Column = std::vector<Entry>;

    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    static PolyMatrix identity(std::size_t n) {
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.columns_[i].emplace_back(i, LaurentPoly::one());
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return columns_.size(); }
    [[nodiscard]] const Column &column(std::size_t c) const { return columns_.at(c); }

    [[nodiscard]] const LaurentPoly &at(std::size_t r, std::size_t c) const {
        static const LaurentPoly zero;
        const auto &col = columns_.at(c);
        auto it = lower_bound(col, r);
        return (it != col.end() && it->first == r) ? it->second : zero;
    }

    /// Adds p into entry (r, c).
    void add(std::size_t r, std::size_t c, const LaurentPoly &p) {
        if (r >= rows_)
            throw std::out_of_range("PolyMatrix::add: row out of range");
        if (p.is_zero())
            return;
        auto &col = columns_.at(c);
        auto it = lower_bound(col, r);
        if (it != col.end() && it->first == r) {
            it->second += p;
            if (it->second.is_zero())
                col.erase(it);
        } else {
            col.emplace(it, r, p);
        }
    }

    void set(std::size_t r, std::size_t c, LaurentPoly p) {
        if (r >= rows_)
            throw std::out_of_range("PolyMatrix::set: row out of range");
        auto &col = columns_.at(c);
        auto it = lower_bound(col, r);
        const bool present = it != col.end() && it->first == r;
        if (p.is_zero()) {
            if (present)
                col.erase(it);
        } else if (present) {
            it->second = std::move(p);
        } else {
            col.emplace(it, r, std::move(p));
        }
    }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(columns_.begin(), columns_.end(), [](const Column &c) { return c.empty(); });
    }

    [[nodiscard]] std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto &c : columns_)
            n += c.size();
        return n;
    }

    /// Calls f(row, col, poly) for every nonzero entry, column-major.
    template <class F> void for_each(F &&f) const {
        for (std::size_t c = 0; c < columns_.size(); ++c)
            for (const auto &[r, p] : columns_[c])
                f(r, c, p);
    }

    /// Entrywise image under f; zero results are dropped.
    template <class F> [[nodiscard]] PolyMatrix map(F &&f) const {
        PolyMatrix out(rows_, cols());
        for (std::size_t c = 0; c < columns_.size(); ++c)
            for (const auto &[r, p] : columns_[c]) {
                LaurentPoly q = f(p);
                if (!q.is_zero())
                    out.columns_[c].emplace_back(r, std::move(q));
            }
        return out;
    }

    [[nodiscard]] PolyMatrix transpose() const {
        PolyMatrix out(cols(), rows_);
        for (std::size_t c = 0; c < columns_.size(); ++c)
            for (const auto &[r, p] : columns_[c])
                out.columns_[r].emplace_back(c, p);
        return out;
    }

    bool operator==(const PolyMatrix &) const = default;

    PolyMatrix &operator+=(const PolyMatrix &o) {
        check_same_shape(o);
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            Column merged;
            merged.reserve(columns_[c].size() + o.columns_[c].size());
            auto a = columns_[c].begin();
            auto b = o.columns_[c].begin();
            while (a != columns_[c].end() || b != o.columns_[c].end()) {
                if (b == o.columns_[c].end() || (a != columns_[c].end() && a->first < b->first)) {
                    merged.push_back(std::move(*a++));
                } else if (a == columns_[c].end() || b->first < a->first) {
                    merged.push_back(*b++);
                } else {
                    LaurentPoly s = a->second + b->second;
                    if (!s.is_zero())
                        merged.emplace_back(a->first, std::move(s));
                    ++a;
                    ++b;
                }
            }
            columns_[c] = std::move(merged);
        }
        return *this;
    }

    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix &b) {
        a += b;
        return a;
    }

    friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) {
        if (a.cols() != b.rows())
            throw std::invalid_argument("PolyMatrix: shape mismatch in product");
        PolyMatrix out(a.rows(), b.cols());
        std::vector<LaurentPoly> scratch(a.rows());
        std::vector<std::size_t> touched;
        for (std::size_t c = 0; c < b.cols(); ++c) {
            touched.clear();
            for (const auto &[k, q] : b.columns_[c])
                for (const auto &[r, p] : a.columns_[k]) {
                    if (scratch[r].is_zero())
                        touched.push_back(r);
                    scratch[r] += p * q;
                }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (auto r : touched) {
                if (!scratch[r].is_zero())
                    out.columns_[c].emplace_back(r, std::move(scratch[r]));
                scratch[r] = LaurentPoly{};
            }
        }
        return out;
    }

    /// Image of a column vector (given as dense coefficients).
    [[nodiscard]] std::vector<LaurentPoly> apply(const std::vector<LaurentPoly> &x) const {
        if (x.size() != cols())
            throw std::invalid_argument("PolyMatrix::apply: size mismatch");
        std::vector<LaurentPoly> y(rows_);
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (x[c].is_zero())
                continue;
            for (const auto &[r, p] : columns_[c])
                y[r] += p * x[c];
        }
        return y;
    }

  private:
    static Column::const_iterator lower_bound(const Column &col, std::size_t r) {
        return std::lower_bound(col.begin(), col.end(), r,
                                [](const Entry &e, std::size_t key) { return e.first < key; });
    }
    static Column::iterator lower_bound(Column &col, std::size_t r) {
        return std::lower_bound(col.begin(), col.end(), r,
                                [](const Entry &e, std::size_t key) { return e.first < key; });
    }

    void check_same_shape(const PolyMatrix &o) const {
        if (rows_ != o.rows_ || cols() != o.cols())
            throw std::invalid_argument("PolyMatrix: shape mismatch in sum");
    }

    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

/// Kronecker product: entry (i1*rB + i2, j1*cB + j2) = A(i1, j1) * B(i2, j2).
/// With basis pairs ordered lexicographically this is the matrix of F|G.
inline PolyMatrix kronecker(const PolyMatrix &a, const PolyMatrix &b) {
    PolyMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
            const std::size_t c = j1 * b.cols() + j2;
            for (const auto &[i1, p] : a.column(j1))
                for (const auto &[i2, q] : b.column(j2))
                    out.add(i1 * b.rows() + i2, c, p * q);
        }
    return out;
}

inline PolyMatrix swap_uv(const PolyMatrix &m) {
    return m.map([](const LaurentPoly &p) { return swap_uv(p); });
}

} // namespace iotak
