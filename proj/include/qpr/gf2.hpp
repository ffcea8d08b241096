#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qpr/error.hpp"

namespace qpr {

// Dense bit vector over GF(2).
class BitVec {
public:
    using Word = std::uint64_t;

    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool v = true) {
        if (v)
            w_[i >> 6] |= Word{1} << (i & 63);
        else
            w_[i >> 6] &= ~(Word{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= Word{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (Word w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        return std::any_of(w_.begin(), w_.end(), [](Word w) { return w != 0; });
    }

    // Parity of the bitwise AND with another vector.
    bool dot(const BitVec& o) const {
        Word acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }

    // Index of the lowest set bit, or size() if none.
    std::size_t first_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        return n_;
    }

    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            Word w = w_[i];
            while (w) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for_each_set([&](std::size_t i) { s.push_back(i); });
        return s;
    }

    const std::vector<Word>& words() const { return w_; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    std::size_t n_ = 0;
    std::vector<Word> w_;
};

// Sparse binary matrix stored as sorted (row, col) positions.
class BinaryMatrix {
public:
    using Entry = std::pair<std::size_t, std::size_t>;

    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_support_(rows) {}
    BinaryMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)), row_support_(rows) {
        std::sort(entries_.begin(), entries_.end());
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto [r, c] = entries_[i];
            if (r >= rows_ || c >= cols_)
                fail(ErrorKind::dimension, "matrix entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                               ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
            if (i > 0 && entries_[i - 1] == entries_[i])
                fail(ErrorKind::parse, "duplicate matrix entry (" + std::to_string(r) + ", " + std::to_string(c) + ")");
            row_support_[r].push_back(c);
        }
    }

    static BinaryMatrix from_rows(std::size_t cols, const std::vector<BitVec>& rows) {
        std::vector<Entry> e;
        for (std::size_t r = 0; r < rows.size(); ++r)
            rows[r].for_each_set([&](std::size_t c) { e.emplace_back(r, c); });
        return BinaryMatrix(rows.size(), cols, std::move(e));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t popcount() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    const std::vector<std::size_t>& row(std::size_t r) const { return row_support_[r]; }

    bool get(std::size_t r, std::size_t c) const {
        const auto& s = row_support_[r];
        return std::binary_search(s.begin(), s.end(), c);
    }

    std::vector<BitVec> dense_rows() const {
        std::vector<BitVec> out(rows_, BitVec(cols_));
        for (const auto& [r, c] : entries_) out[r].set(c);
        return out;
    }

    BinaryMatrix transpose() const {
        std::vector<Entry> e;
        e.reserve(entries_.size());
        for (const auto& [r, c] : entries_) e.emplace_back(c, r);
        return BinaryMatrix(cols_, rows_, std::move(e));
    }

    bool operator==(const BinaryMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Entry> entries_;
    std::vector<std::vector<std::size_t>> row_support_;
};

// Incrementally built echelon basis supporting span membership queries.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t n) : n_(n) {}

    // Reduces v against the basis in place.
    void reduce(BitVec& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v.get(pivots_[i])) v ^= rows_[i];
    }

    bool contains(BitVec v) const {
        reduce(v);
        return !v.any();
    }

    // Returns true if v was independent and got added.
    bool insert(BitVec v) {
        reduce(v);
        if (!v.any()) return false;
        pivots_.push_back(v.first_set());
        rows_.push_back(std::move(v));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return n_; }

private:
    std::size_t n_;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const std::vector<BitVec>& rows, std::size_t cols) {
    EchelonBasis b(cols);
    for (const auto& r : rows) b.insert(r);
    return b.rank();
}

inline std::size_t rank(const BinaryMatrix& m) { return rank(m.dense_rows(), m.cols()); }

// Reduced row echelon form; columns are visited in the given order.
// Returns the pivot column of each surviving row (rows are reordered, zero rows dropped).
inline std::vector<std::size_t> rref(std::vector<BitVec>& rows, const std::vector<std::size_t>& col_order) {
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t c : col_order) {
        if (top == rows.size()) break;
        std::size_t p = top;
        while (p < rows.size() && !rows[p].get(c)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[top], rows[p]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != top && rows[r].get(c)) rows[r] ^= rows[top];
        pivots.push_back(c);
        ++top;
    }
    rows.resize(top);
    return pivots;
}

// Basis of {v : H v = 0}.
inline std::vector<BitVec> kernel_basis(const BinaryMatrix& h) {
    const std::size_t n = h.cols();
    std::vector<BitVec> rows = h.dense_rows();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    const auto pivots = rref(rows, order);
    std::vector<char> is_pivot(n, 0);
    for (std::size_t p : pivots) is_pivot[p] = 1;
    std::vector<BitVec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(n);
        v.set(f);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].get(f)) v.set(pivots[r]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// True when A Bᵀ = 0 over GF(2).
inline bool orthogonal(const BinaryMatrix& a, const BinaryMatrix& b) {
    if (a.cols() != b.cols()) return false;
    const auto ra = a.dense_rows();
    const auto rb = b.dense_rows();
    for (const auto& x : ra)
        for (const auto& y : rb)
            if (x.dot(y)) return false;
    return true;
}

}  // namespace qpr
