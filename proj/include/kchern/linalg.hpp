#pragma once

// Exact sparse linear algebra over Q: row echelon forms, kernels, linear
// membership and quotient bases. Pivoting is deterministic: the pivot of a
// row is its first nonzero column, so bases are reproducible.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kchern/error.hpp"
#include "kchern/rational.hpp"

namespace kchern {

using Vec = std::vector<Rational>;
using SparseEntry = std::pair<std::size_t, Rational>;
/// Sorted by column, no stored zeros.
using SparseVec = std::vector<SparseEntry>;

inline SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(i, v[i]);
    return s;
}

inline Vec to_dense(const SparseVec& s, std::size_t n) {
    Vec v(n);
    for (const auto& [i, c] : s) {
        if (i >= n) throw MismatchError("sparse index out of range");
        v[i] = c;
    }
    return v;
}

inline bool is_zero(const Vec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
        return m;
    }

    static RatMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        RatMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw MismatchError("row length mismatch");
            m.data_[r] = to_sparse(rows[r]);
        }
        return m;
    }

    static RatMatrix from_columns(const std::vector<Vec>& columns, std::size_t rows) {
        RatMatrix m(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != rows) throw MismatchError("column length mismatch");
            for (std::size_t r = 0; r < rows; ++r)
                if (!columns[c][r].is_zero()) m.data_[r].emplace_back(c, columns[c][r]);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational get(std::size_t r, std::size_t c) const {
        check(r, c);
        for (const auto& [j, v] : data_[r])
            if (j == c) return v;
        return {};
    }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        check(r, c);
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const SparseEntry& e, std::size_t k) { return e.first < k; });
        if (it != row.end() && it->first == c) {
            if (v.is_zero())
                row.erase(it);
            else
                it->second = v;
        } else if (!v.is_zero()) {
            row.insert(it, SparseEntry{c, v});
        }
    }

    const SparseVec& row(std::size_t r) const { return data_.at(r); }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw MismatchError("matrix-vector dimension mismatch");
        Vec y(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r])
                if (!x[c].is_zero()) y[r] += v * x[c];
        return y;
    }

    std::vector<Vec> dense_rows() const {
        std::vector<Vec> out;
        out.reserve(rows_);
        for (const auto& r : data_) out.push_back(to_dense(r, cols_));
        return out;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
        return t;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw MismatchError("matrix product dimension mismatch");
        RatMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            std::map<std::size_t, Rational> acc;
            for (const auto& [k, v] : a.data_[r])
                for (const auto& [c, w] : b.data_[k]) acc[c] += v * w;
            for (auto& [c, v] : acc)
                if (!v.is_zero()) out.data_[r].emplace_back(c, v);
        }
        return out;
    }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw MismatchError("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVec> data_;
};

/// Incremental row echelon form. Each stored row has a leading 1 at its
/// pivot column and is zero at every earlier column.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

    std::size_t cols() const noexcept { return ncols_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    bool full() const noexcept { return rows_.size() == ncols_; }

    /// Reduce v against the stored rows (every pivot column cleared).
    SparseVec reduce(SparseVec v) const {
        std::map<std::size_t, Rational> acc;
        for (auto& [c, x] : v) {
            if (c >= ncols_) throw MismatchError("vector longer than echelon width");
            if (!x.is_zero()) acc[c] += x;
        }
        reduce_map(acc);
        SparseVec out;
        for (auto& [c, x] : acc)
            if (!x.is_zero()) out.emplace_back(c, x);
        return out;
    }

    /// Returns true iff v was independent of the stored rows.
    bool insert(SparseVec v) {
        SparseVec r = reduce(std::move(v));
        if (r.empty()) return false;
        Rational lead = r.front().second;
        if (!lead.is_one()) {
            Rational inv = Rational(1) / lead;
            for (auto& e : r) e.second *= inv;
        }
        pivot_row_[r.front().first] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(r));
        reduced_ = false;
        return true;
    }

    bool insert(const Vec& v) { return insert(to_sparse(v)); }

    /// Back-substitute so every stored row vanishes at all other pivot columns.
    void make_reduced() {
        if (reduced_) return;
        std::vector<std::size_t> order;
        for (std::size_t c = ncols_; c-- > 0;)
            if (pivot_row_[c] >= 0) order.push_back(static_cast<std::size_t>(pivot_row_[c]));
        for (std::size_t idx : order) {
            SparseVec& row = rows_[idx];
            std::map<std::size_t, Rational> acc;
            for (std::size_t k = 1; k < row.size(); ++k) acc.emplace(row[k].first, row[k].second);
            reduce_map(acc);
            SparseVec out{row.front()};
            for (auto& [c, x] : acc)
                if (!x.is_zero()) out.emplace_back(c, x);
            row = std::move(out);
        }
        reduced_ = true;
    }

    long pivot_row(std::size_t col) const { return pivot_row_.at(col); }
    bool is_pivot(std::size_t col) const { return pivot_row_.at(col) >= 0; }
    const std::vector<SparseVec>& rows() const noexcept { return rows_; }

    std::vector<std::size_t> pivot_columns() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < ncols_; ++c)
            if (pivot_row_[c] >= 0) out.push_back(c);
        return out;
    }
    std::vector<std::size_t> free_columns() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < ncols_; ++c)
            if (pivot_row_[c] < 0) out.push_back(c);
        return out;
    }

private:
    void reduce_map(std::map<std::size_t, Rational>& acc) const {
        auto it = acc.begin();
        while (it != acc.end()) {
            std::size_t c = it->first;
            long pr = pivot_row_[c];
            if (pr < 0 || it->second.is_zero()) {
                if (it->second.is_zero())
                    it = acc.erase(it);
                else
                    ++it;
                continue;
            }
            Rational coef = it->second;
            const SparseVec& row = rows_[static_cast<std::size_t>(pr)];
            it = acc.erase(it);
            for (std::size_t k = 1; k < row.size(); ++k) {
                auto [jt, inserted] = acc.try_emplace(row[k].first, -(coef * row[k].second));
                if (!inserted) jt->second -= coef * row[k].second;
            }
            it = acc.upper_bound(c);
        }
    }

    std::size_t ncols_;
    std::vector<long> pivot_row_;
    std::vector<SparseVec> rows_;
    bool reduced_ = true;
};

inline std::size_t rank(const RatMatrix& m) {
    RowEchelon e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e.rank();
}

/// Basis of {x : m x = 0}, one vector per free column of the reduced echelon form.
inline std::vector<Vec> kernel_basis(const RatMatrix& m) {
    RowEchelon e(m.cols());
    for (std::size_t r = 0; r < m.rows() && !e.full(); ++r) e.insert(m.row(r));
    e.make_reduced();
    std::vector<Vec> basis;
    for (std::size_t f : e.free_columns()) {
        Vec x(m.cols());
        x[f] = Rational(1);
        for (const auto& row : e.rows()) {
            for (std::size_t k = 1; k < row.size(); ++k)
                if (row[k].first == f) x[row.front().first] = -row[k].second;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Some x with m x = b (free variables set to zero), or nullopt.
inline std::optional<Vec> solve_membership(const RatMatrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw MismatchError("right-hand side length does not match matrix rows");
    const std::size_t n = m.cols();
    RowEchelon e(n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseVec row = m.row(r);
        if (!b[r].is_zero()) row.emplace_back(n, b[r]);
        e.insert(std::move(row));
    }
    if (e.is_pivot(n)) return std::nullopt;
    e.make_reduced();
    Vec x(n);
    for (const auto& row : e.rows()) {
        const SparseEntry& last = row.back();
        if (last.first == n) x[row.front().first] = last.second;
    }
    return x;
}

/// Complement of a subspace spanned by coordinate vectors: the selected
/// coordinates (non-pivot columns) form a basis of the quotient, and the
/// projection sends every ambient coordinate to its class in that basis.
class QuotientBasis {
public:
    QuotientBasis() = default;

    QuotientBasis(std::size_t ambient_dim, RowEchelon echelon) : ambient_(ambient_dim) {
        echelon.make_reduced();
        selected_ = echelon.free_columns();
        std::vector<long> sel_index(ambient_dim, -1);
        for (std::size_t j = 0; j < selected_.size(); ++j) sel_index[selected_[j]] = static_cast<long>(j);
        column_image_.resize(ambient_dim);
        for (std::size_t c = 0; c < ambient_dim; ++c) {
            if (sel_index[c] >= 0) {
                column_image_[c].emplace_back(static_cast<std::size_t>(sel_index[c]), Rational(1));
                continue;
            }
            const SparseVec& row = echelon.rows()[static_cast<std::size_t>(echelon.pivot_row(c))];
            for (std::size_t k = 1; k < row.size(); ++k)
                column_image_[c].emplace_back(static_cast<std::size_t>(sel_index[row[k].first]), -row[k].second);
        }
        subspace_rank_ = echelon.rank();
    }

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return selected_.size(); }
    std::size_t subspace_rank() const noexcept { return subspace_rank_; }
    const std::vector<std::size_t>& selected() const noexcept { return selected_; }
    const SparseVec& column_image(std::size_t c) const { return column_image_.at(c); }

    Vec project(const Vec& x) const {
        if (x.size() != ambient_) throw MismatchError("projection input has wrong length");
        Vec y(dim());
        for (std::size_t c = 0; c < ambient_; ++c) {
            if (x[c].is_zero()) continue;
            for (const auto& [j, w] : column_image_[c]) y[j] += w * x[c];
        }
        return y;
    }

    RatMatrix projection() const {
        RatMatrix p(dim(), ambient_);
        for (std::size_t c = 0; c < ambient_; ++c)
            for (const auto& [j, w] : column_image_[c]) p.set(j, c, w);
        return p;
    }

private:
    std::size_t ambient_ = 0;
    std::size_t subspace_rank_ = 0;
    std::vector<std::size_t> selected_;
    std::vector<SparseVec> column_image_;
};

inline QuotientBasis quotient_basis(std::size_t ambient_dim, const std::vector<Vec>& subspace) {
    RowEchelon e(ambient_dim);
    for (const auto& v : subspace) {
        if (v.size() != ambient_dim) throw MismatchError("subspace vector has wrong length");
        if (e.full()) break;
        e.insert(v);
    }
    return QuotientBasis(ambient_dim, std::move(e));
}

inline std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace kchern
