#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "diffhull/errors.hpp"
#include "diffhull/rational.hpp"

namespace diffhull {

using Vec = std::vector<Rational>;

// Sparse vector: (index, value) pairs, sorted by index, no zero values.
using SparseRow = std::vector<std::pair<int, Rational>>;

inline SparseRow to_sparse(const Vec &v)
{
    SparseRow r;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero())
            r.emplace_back(i, v[i]);
    return r;
}

inline Vec to_dense(const SparseRow &r, int n)
{
    Vec v(n, Rational(0));
    for (const auto &[i, c] : r)
        v[i] = c;
    return v;
}

// dst += c * src, keeping the sorted no-zero invariant.
inline void row_axpy(SparseRow &dst, const SparseRow &src, const Rational &c)
{
    if (c.is_zero() || src.empty())
        return;
    SparseRow out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, c * src[j].second);
            ++j;
        } else {
            Rational v = dst[i].second + c * src[j].second;
            if (!v.is_zero())
                out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

inline void row_scale(SparseRow &r, const Rational &c)
{
    if (c.is_zero()) {
        r.clear();
        return;
    }
    for (auto &[i, v] : r)
        v *= c;
}

inline Rational row_coeff(const SparseRow &r, int idx)
{
    auto it = std::lower_bound(r.begin(), r.end(), idx,
                               [](const auto &p, int k) { return p.first < k; });
    if (it != r.end() && it->first == idx)
        return it->second;
    return Rational(0);
}

// Sparse matrix over the rationals. No stored zeros, indices in range.
class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    void set(int r, int c, const Rational &v)
    {
        check_index(r, c);
        if (v.is_zero())
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    void add(int r, int c, const Rational &v)
    {
        check_index(r, c);
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            if (!v.is_zero())
                entries_[{r, c}] = v;
            return;
        }
        it->second += v;
        if (it->second.is_zero())
            entries_.erase(it);
    }

    Rational at(int r, int c) const
    {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    const std::map<std::pair<int, int>, Rational> &entries() const
    {
        return entries_;
    }

    Vec apply(const Vec &v) const
    {
        if (static_cast<int>(v.size()) != cols_)
            throw DimensionMismatch("matrix-vector size mismatch");
        Vec out(rows_, Rational(0));
        for (const auto &[rc, val] : entries_) {
            const auto &[r, c] = rc;
            if (!v[c].is_zero())
                out[r] += val * v[c];
        }
        return out;
    }

    SparseRow apply_sparse(const SparseRow &v) const
    {
        return to_sparse(apply(to_dense(v, cols_)));
    }

    SparseMatrix mul(const SparseMatrix &o) const
    {
        if (cols_ != o.rows_)
            throw DimensionMismatch("matrix product shape mismatch");
        SparseMatrix out(rows_, o.cols_);
        // group o's entries by row for the inner loop
        std::map<int, SparseRow> orows;
        for (const auto &[rc, val] : o.entries_)
            orows[rc.first].emplace_back(rc.second, val);
        for (const auto &[rc, val] : entries_) {
            auto it = orows.find(rc.second);
            if (it == orows.end())
                continue;
            for (const auto &[j, w] : it->second)
                out.add(rc.first, j, val * w);
        }
        return out;
    }

    SparseMatrix transpose() const
    {
        SparseMatrix t(cols_, rows_);
        for (const auto &[rc, val] : entries_)
            t.entries_[{rc.second, rc.first}] = val;
        return t;
    }

    std::vector<SparseRow> row_list() const
    {
        std::vector<SparseRow> rows(rows_);
        for (const auto &[rc, val] : entries_)
            rows[rc.first].emplace_back(rc.second, val);
        return rows;
    }

    Vec column(int j) const
    {
        Vec v(rows_, Rational(0));
        for (const auto &[rc, val] : entries_)
            if (rc.second == j)
                v[rc.first] = val;
        return v;
    }

    static SparseMatrix identity(int n)
    {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.entries_[{i, i}] = Rational(1);
        return m;
    }

    static SparseMatrix from_columns(const std::vector<Vec> &cols, int nrows)
    {
        SparseMatrix m(nrows, static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
            if (static_cast<int>(cols[j].size()) != nrows)
                throw DimensionMismatch("column height mismatch");
            for (int i = 0; i < nrows; ++i)
                if (!cols[j][i].is_zero())
                    m.entries_[{i, j}] = cols[j][i];
        }
        return m;
    }

    friend bool operator==(const SparseMatrix &a, const SparseMatrix &b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }

  private:
    void check_index(int r, int c) const
    {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw DimensionMismatch("matrix index out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::map<std::pair<int, int>, Rational> entries_;
};

// --- Gaussian elimination -------------------------------------------------

struct Echelon {
    int cols = 0;
    std::vector<SparseRow> rows; // reduced echelon, pivot coefficient 1
    std::vector<int> pivots;     // strictly increasing pivot columns
};

namespace detail {

// Dense elimination for small problems.
inline Echelon rref_dense(const std::vector<SparseRow> &input, int ncols)
{
    std::vector<Vec> m;
    m.reserve(input.size());
    for (const auto &r : input)
        m.push_back(to_dense(r, ncols));
    Echelon e;
    e.cols = ncols;
    int row = 0;
    for (int col = 0; col < ncols && row < static_cast<int>(m.size()); ++col) {
        int piv = -1;
        for (int i = row; i < static_cast<int>(m.size()); ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(m[row], m[piv]);
        Rational inv = m[row][col].reciprocal();
        for (int c = col; c < ncols; ++c)
            m[row][c] *= inv;
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            if (i == row || m[i][col].is_zero())
                continue;
            Rational f = m[i][col];
            for (int c = col; c < ncols; ++c)
                m[i][c] -= f * m[row][c];
        }
        e.pivots.push_back(col);
        ++row;
    }
    for (int i = 0; i < row; ++i)
        e.rows.push_back(to_sparse(m[i]));
    return e;
}

// Sparse elimination; pivot choice favors short rows (Markowitz-style).
inline Echelon rref_sparse(std::vector<SparseRow> work, int ncols)
{
    std::map<int, std::vector<int>> by_lead;
    for (int i = 0; i < static_cast<int>(work.size()); ++i)
        if (!work[i].empty())
            by_lead[work[i].front().first].push_back(i);

    Echelon e;
    e.cols = ncols;
    std::vector<SparseRow> placed;
    while (!by_lead.empty()) {
        auto it = by_lead.begin();
        int col = it->first;
        std::vector<int> bucket = std::move(it->second);
        by_lead.erase(it);
        std::size_t best = 0;
        for (std::size_t i = 1; i < bucket.size(); ++i)
            if (work[bucket[i]].size() < work[bucket[best]].size())
                best = i;
        int pidx = bucket[best];
        SparseRow pivot = std::move(work[pidx]);
        row_scale(pivot, pivot.front().second.reciprocal());
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            if (bucket[i] == pidx)
                continue;
            SparseRow &r = work[bucket[i]];
            row_axpy(r, pivot, -r.front().second);
            if (!r.empty())
                by_lead[r.front().first].push_back(bucket[i]);
        }
        e.pivots.push_back(col);
        placed.push_back(std::move(pivot));
    }
    // back-substitution: clear pivot columns above
    for (int i = static_cast<int>(placed.size()) - 1; i >= 0; --i) {
        for (int j = i + 1; j < static_cast<int>(placed.size()); ++j) {
            Rational c = row_coeff(placed[i], e.pivots[j]);
            if (!c.is_zero())
                row_axpy(placed[i], placed[j], -c);
        }
    }
    e.rows = std::move(placed);
    return e;
}

} // namespace detail

inline Echelon rref(std::vector<SparseRow> rows, int ncols)
{
    if (ncols < 64 && rows.size() < 64)
        return detail::rref_dense(rows, ncols);
    return detail::rref_sparse(std::move(rows), ncols);
}

// RREF together with the transform G such that out.rows = G * input.
struct EchelonWithTransform {
    Echelon ech;
    std::vector<SparseRow> transform; // one row per ech row, over input indices
};

inline EchelonWithTransform rref_with_transform(std::vector<SparseRow> work,
                                                int ncols)
{
    const int n = static_cast<int>(work.size());
    std::vector<SparseRow> trans(n);
    for (int i = 0; i < n; ++i)
        trans[i] = {{i, Rational(1)}};

    std::map<int, std::vector<int>> by_lead;
    for (int i = 0; i < n; ++i)
        if (!work[i].empty())
            by_lead[work[i].front().first].push_back(i);

    EchelonWithTransform out;
    out.ech.cols = ncols;
    std::vector<SparseRow> placed, placed_trans;
    while (!by_lead.empty()) {
        auto it = by_lead.begin();
        int col = it->first;
        std::vector<int> bucket = std::move(it->second);
        by_lead.erase(it);
        std::size_t best = 0;
        for (std::size_t i = 1; i < bucket.size(); ++i)
            if (work[bucket[i]].size() < work[bucket[best]].size())
                best = i;
        int pidx = bucket[best];
        SparseRow pivot = std::move(work[pidx]);
        SparseRow ptrans = std::move(trans[pidx]);
        Rational inv = pivot.front().second.reciprocal();
        row_scale(pivot, inv);
        row_scale(ptrans, inv);
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            if (bucket[i] == pidx)
                continue;
            SparseRow &r = work[bucket[i]];
            Rational f = -r.front().second;
            row_axpy(r, pivot, f);
            row_axpy(trans[bucket[i]], ptrans, f);
            if (!r.empty())
                by_lead[r.front().first].push_back(bucket[i]);
        }
        out.ech.pivots.push_back(col);
        placed.push_back(std::move(pivot));
        placed_trans.push_back(std::move(ptrans));
    }
    for (int i = static_cast<int>(placed.size()) - 1; i >= 0; --i) {
        for (int j = i + 1; j < static_cast<int>(placed.size()); ++j) {
            Rational c = row_coeff(placed[i], out.ech.pivots[j]);
            if (!c.is_zero()) {
                row_axpy(placed[i], placed[j], -c);
                row_axpy(placed_trans[i], placed_trans[j], -c);
            }
        }
    }
    out.ech.rows = std::move(placed);
    out.transform = std::move(placed_trans);
    return out;
}

// --- Subspace --------------------------------------------------------------

// Subspace of Q^n held as a canonical reduced-echelon basis, so equality of
// subspaces is equality of representations.
class Subspace {
  public:
    Subspace() = default;

    static Subspace zero(int ambient) { return Subspace(ambient); }

    static Subspace full(int ambient)
    {
        Subspace s(ambient);
        for (int i = 0; i < ambient; ++i) {
            s.basis_.push_back({{i, Rational(1)}});
            s.pivots_.push_back(i);
        }
        return s;
    }

    static Subspace span_rows(std::vector<SparseRow> rows, int ambient)
    {
        Subspace s(ambient);
        Echelon e = rref(std::move(rows), ambient);
        s.basis_ = std::move(e.rows);
        s.pivots_ = std::move(e.pivots);
        return s;
    }

    static Subspace span(const std::vector<Vec> &vectors, int ambient)
    {
        std::vector<SparseRow> rows;
        rows.reserve(vectors.size());
        for (const auto &v : vectors) {
            if (static_cast<int>(v.size()) != ambient)
                throw DimensionMismatch("span vector has wrong length");
            rows.push_back(to_sparse(v));
        }
        return span_rows(std::move(rows), ambient);
    }

    // Span of unit vectors e_i, i in idx. Already echelon.
    static Subspace coordinate_span(int ambient, std::vector<int> idx)
    {
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        Subspace s(ambient);
        for (int i : idx) {
            if (i < 0 || i >= ambient)
                throw DimensionMismatch("coordinate index out of range");
            s.basis_.push_back({{i, Rational(1)}});
            s.pivots_.push_back(i);
        }
        return s;
    }

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<SparseRow> &basis() const { return basis_; }
    const std::vector<int> &pivots() const { return pivots_; }

    std::vector<Vec> basis_dense() const
    {
        std::vector<Vec> out;
        out.reserve(basis_.size());
        for (const auto &r : basis_)
            out.push_back(to_dense(r, ambient_));
        return out;
    }

    // Residual of v after reduction modulo the basis; zero iff v lies here.
    SparseRow reduce(SparseRow v) const
    {
        for (std::size_t i = 0; i < basis_.size() && !v.empty(); ++i) {
            Rational c = row_coeff(v, pivots_[i]);
            if (!c.is_zero())
                row_axpy(v, basis_[i], -c);
        }
        return v;
    }

    bool contains(const SparseRow &v) const { return reduce(v).empty(); }
    bool contains(const Vec &v) const { return contains(to_sparse(v)); }

    bool contains(const Subspace &other) const
    {
        if (other.ambient_ != ambient_)
            throw DimensionMismatch("ambient dimension mismatch");
        for (const auto &r : other.basis_)
            if (!contains(r))
                return false;
        return true;
    }

    friend bool operator==(const Subspace &a, const Subspace &b)
    {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ &&
               a.basis_ == b.basis_;
    }

    Subspace sum(const Subspace &other) const
    {
        if (other.ambient_ != ambient_)
            throw DimensionMismatch("ambient dimension mismatch");
        std::vector<SparseRow> rows = basis_;
        rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
        return span_rows(std::move(rows), ambient_);
    }

  private:
    explicit Subspace(int ambient) : ambient_(ambient) {}

    int ambient_ = 0;
    std::vector<SparseRow> basis_;
    std::vector<int> pivots_;
};

// --- Derived operations ----------------------------------------------------

inline int rank(const SparseMatrix &m)
{
    return static_cast<int>(rref(m.row_list(), m.cols()).rows.size());
}

// Basis of { v : m v = 0 }.
inline Subspace kernel(const SparseMatrix &m)
{
    Echelon e = rref(m.row_list(), m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : e.pivots)
        is_pivot[p] = true;
    std::vector<SparseRow> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        SparseRow v;
        // entries at pivot columns, then the free column itself
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            Rational c = row_coeff(e.rows[i], f);
            if (!c.is_zero())
                v.emplace_back(e.pivots[i], -c);
        }
        v.emplace_back(f, Rational(1));
        std::sort(v.begin(), v.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        basis.push_back(std::move(v));
    }
    return Subspace::span_rows(std::move(basis), m.cols());
}

// Column span of m.
inline Subspace image(const SparseMatrix &m)
{
    return Subspace::span_rows(m.transpose().row_list(), m.rows());
}

inline Subspace map_span(const SparseMatrix &m, const Subspace &s)
{
    if (s.ambient() != m.cols())
        throw DimensionMismatch("map_span ambient mismatch");
    std::vector<SparseRow> rows;
    for (const auto &r : s.basis())
        rows.push_back(m.apply_sparse(r));
    return Subspace::span_rows(std::move(rows), m.rows());
}

inline Subspace intersect(const Subspace &a, const Subspace &b)
{
    if (a.ambient() != b.ambient())
        throw DimensionMismatch("intersect: ambient dimension mismatch");
    const int n = a.ambient();
    const int ra = a.dim(), rb = b.dim();
    SparseMatrix m(n, ra + rb);
    for (int j = 0; j < ra; ++j)
        for (const auto &[i, c] : a.basis()[j])
            m.set(i, j, c);
    for (int j = 0; j < rb; ++j)
        for (const auto &[i, c] : b.basis()[j])
            m.set(i, ra + j, -c);
    Subspace ker = kernel(m);
    std::vector<SparseRow> rows;
    for (const auto &kv : ker.basis()) {
        SparseRow v;
        for (const auto &[idx, c] : kv)
            if (idx < ra)
                row_axpy(v, a.basis()[idx], c);
        rows.push_back(std::move(v));
    }
    return Subspace::span_rows(std::move(rows), n);
}

// Basis of { v : m v ∈ target }.
inline Subspace preimage(const SparseMatrix &m, const Subspace &target)
{
    if (target.ambient() != m.rows())
        throw DimensionMismatch("preimage: target ambient != row count");
    const int nc = m.cols(), t = target.dim();
    SparseMatrix aug(m.rows(), nc + t);
    for (const auto &[rc, val] : m.entries())
        aug.set(rc.first, rc.second, val);
    for (int j = 0; j < t; ++j)
        for (const auto &[i, c] : target.basis()[j])
            aug.set(i, nc + j, -c);
    Subspace ker = kernel(aug);
    std::vector<SparseRow> rows;
    for (const auto &kv : ker.basis()) {
        SparseRow v;
        for (const auto &[idx, c] : kv)
            if (idx < nc)
                v.emplace_back(idx, c);
        rows.push_back(std::move(v));
    }
    return Subspace::span_rows(std::move(rows), nc);
}

// One solution of m x = rhs, if any.
inline std::optional<Vec> solve(const SparseMatrix &m, const Vec &rhs)
{
    if (static_cast<int>(rhs.size()) != m.rows())
        throw DimensionMismatch("solve: rhs length mismatch");
    std::vector<SparseRow> rows = m.row_list();
    for (int i = 0; i < m.rows(); ++i)
        if (!rhs[i].is_zero())
            rows[i].emplace_back(m.cols(), rhs[i]);
    Echelon e = rref(std::move(rows), m.cols() + 1);
    // free variables set to zero; pivot in the rhs column means inconsistent
    Vec x(m.cols(), Rational(0));
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == m.cols())
            return std::nullopt;
        x[e.pivots[i]] = row_coeff(e.rows[i], m.cols());
    }
    return x;
}

// Quotient W / U presented by an explicit complement inside W: canonical
// representatives plus a coordinate map valid on all of W.
class QuotientMap {
  public:
    QuotientMap() = default;

    QuotientMap(const Subspace &ambient_space, const Subspace &sub)
        : ambient_(ambient_space.ambient()),
          sub_dim_(sub.dim())
    {
        if (sub.ambient() != ambient_)
            throw DimensionMismatch("quotient: ambient dimension mismatch");
        if (!ambient_space.contains(sub))
            throw NotASubspace("quotient: sub is not contained in ambient");
        // complement: reduce the ambient basis modulo sub, re-echelonize
        std::vector<SparseRow> res;
        for (const auto &w : ambient_space.basis()) {
            SparseRow r = sub.reduce(w);
            if (!r.empty())
                res.push_back(std::move(r));
        }
        reps_ = Subspace::span_rows(std::move(res), ambient_);
        // stacked rows S = [sub; reps], T = G S
        std::vector<SparseRow> stacked = sub.basis();
        stacked.insert(stacked.end(), reps_.basis().begin(),
                       reps_.basis().end());
        auto et = rref_with_transform(std::move(stacked), ambient_);
        T_ = std::move(et.ech);
        G_ = std::move(et.transform);
    }

    int ambient() const { return ambient_; }
    int dim() const { return reps_.dim(); }
    const Subspace &representatives() const { return reps_; }

    // Coefficients of [v] in the representative basis. v must lie in W.
    Vec coords(const SparseRow &v) const
    {
        SparseRow rem = v;
        Vec gamma(T_.rows.size(), Rational(0));
        for (std::size_t i = 0; i < T_.rows.size() && !rem.empty(); ++i) {
            Rational c = row_coeff(rem, T_.pivots[i]);
            if (!c.is_zero()) {
                gamma[i] = c;
                row_axpy(rem, T_.rows[i], -c);
            }
        }
        if (!rem.empty())
            throw NotASubspace("quotient coords: vector outside the ambient "
                               "subspace");
        Vec full(sub_dim_ + reps_.dim(), Rational(0));
        for (std::size_t i = 0; i < G_.size(); ++i) {
            if (gamma[i].is_zero())
                continue;
            for (const auto &[j, g] : G_[i])
                full[j] += gamma[i] * g;
        }
        return Vec(full.begin() + sub_dim_, full.end());
    }

    Vec coords(const Vec &v) const { return coords(to_sparse(v)); }

    // Idempotent projection onto the representatives, kernel containing sub.
    Vec project(const Vec &v) const
    {
        Vec c = coords(to_sparse(v));
        Vec out(ambient_, Rational(0));
        for (int i = 0; i < reps_.dim(); ++i)
            if (!c[i].is_zero())
                for (const auto &[j, w] : reps_.basis()[i])
                    out[j] += c[i] * w;
        return out;
    }

  private:
    int ambient_ = 0;
    int sub_dim_ = 0;
    Subspace reps_;
    Echelon T_;
    std::vector<SparseRow> G_;
};

inline QuotientMap quotient(const Subspace &ambient_space, const Subspace &sub)
{
    return QuotientMap(ambient_space, sub);
}

// Coefficients relative to a fixed independent spanning list (not
// necessarily echelon).
class BasisCoords {
  public:
    BasisCoords() = default;

    BasisCoords(std::vector<SparseRow> rows, int ambient) : ambient_(ambient)
    {
        count_ = static_cast<int>(rows.size());
        auto et = rref_with_transform(std::move(rows), ambient);
        if (static_cast<int>(et.ech.rows.size()) != count_)
            throw NotASubspace("basis list is linearly dependent");
        T_ = std::move(et.ech);
        G_ = std::move(et.transform);
    }

    int ambient() const { return ambient_; }
    int count() const { return count_; }

    Vec coords(const SparseRow &v) const
    {
        SparseRow rem = v;
        Vec gamma(T_.rows.size(), Rational(0));
        for (std::size_t i = 0; i < T_.rows.size() && !rem.empty(); ++i) {
            Rational c = row_coeff(rem, T_.pivots[i]);
            if (!c.is_zero()) {
                gamma[i] = c;
                row_axpy(rem, T_.rows[i], -c);
            }
        }
        if (!rem.empty())
            throw NotASubspace("vector outside the spanned subspace");
        Vec full(count_, Rational(0));
        for (std::size_t i = 0; i < G_.size(); ++i) {
            if (gamma[i].is_zero())
                continue;
            for (const auto &[j, g] : G_[i])
                full[j] += gamma[i] * g;
        }
        return full;
    }

    Vec coords(const Vec &v) const { return coords(to_sparse(v)); }

  private:
    int ambient_ = 0;
    int count_ = 0;
    Echelon T_;
    std::vector<SparseRow> G_;
};

} // namespace diffhull
