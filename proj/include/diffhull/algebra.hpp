#pragma once

#include <string>
#include <vector>

#include "diffhull/linalg.hpp"

namespace diffhull {

// Finite-dimensional associative unital algebra over Q, given by a basis and
// structure constants.
class StructureConstantAlgebra {
  public:
    StructureConstantAlgebra() = default;

    StructureConstantAlgebra(std::vector<std::string> labels, Vec unit,
                             std::vector<std::vector<SparseRow>> table)
        : labels_(std::move(labels)), unit_(std::move(unit)),
          table_(std::move(table))
    {
        const int n = dim();
        if (static_cast<int>(unit_.size()) != n ||
            static_cast<int>(table_.size()) != n)
            throw DimensionMismatch("structure constant table shape mismatch");
        for (const auto &row : table_)
            if (static_cast<int>(row.size()) != n)
                throw DimensionMismatch("structure constant table shape "
                                        "mismatch");
    }

    int dim() const { return static_cast<int>(labels_.size()); }
    const std::string &label(int i) const { return labels_[i]; }
    const Vec &unit() const { return unit_; }

    SparseRow basis_product(int i, int j) const { return table_[i][j]; }

    SparseRow basis_commutator(int i, int j) const
    {
        SparseRow c = table_[i][j];
        row_axpy(c, table_[j][i], Rational(-1));
        return c;
    }

    // Exhaustive associativity + unit checks over basis triples.
    void verify_axioms() const;

  private:
    std::vector<std::string> labels_;
    Vec unit_;
    std::vector<std::vector<SparseRow>> table_; // table_[i][j] = e_i e_j
};

// --- generic element arithmetic over any algebra backend -------------------
//
// An algebra backend exposes: dim(), label(i), unit(), basis_product(i,j),
// basis_commutator(i,j). Products may throw OverflowError on truncated
// backends; commutators are cancellation-aware there.

template <class Alg>
Vec alg_product(const Alg &a, const Vec &x, const Vec &y)
{
    Vec out(a.dim(), Rational(0));
    for (int i = 0; i < a.dim(); ++i) {
        if (x[i].is_zero())
            continue;
        for (int j = 0; j < a.dim(); ++j) {
            if (y[j].is_zero())
                continue;
            Rational c = x[i] * y[j];
            for (const auto &[k, v] : a.basis_product(i, j))
                out[k] += c * v;
        }
    }
    return out;
}

template <class Alg>
Vec alg_commutator(const Alg &a, const Vec &x, const Vec &y)
{
    Vec out(a.dim(), Rational(0));
    for (int i = 0; i < a.dim(); ++i) {
        if (x[i].is_zero())
            continue;
        for (int j = 0; j < a.dim(); ++j) {
            if (y[j].is_zero())
                continue;
            Rational c = x[i] * y[j];
            for (const auto &[k, v] : a.basis_commutator(i, j))
                out[k] += c * v;
        }
    }
    return out;
}

inline void StructureConstantAlgebra::verify_axioms() const
{
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        Vec ei(n, Rational(0));
        ei[i] = Rational(1);
        if (alg_product(*this, unit_, ei) != ei ||
            alg_product(*this, ei, unit_) != ei)
            throw AxiomViolation("unit law fails", label(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec eij = to_dense(table_[i][j], n);
            for (int k = 0; k < n; ++k) {
                Vec ek(n, Rational(0));
                ek[k] = Rational(1);
                Vec lhs = alg_product(*this, eij, ek);
                Vec ejk(n, Rational(0));
                for (const auto &[t, v] : table_[j][k])
                    ejk[t] = v;
                Vec ei(n, Rational(0));
                ei[i] = Rational(1);
                Vec rhs = alg_product(*this, ei, ejk);
                if (lhs != rhs)
                    throw AxiomViolation("associativity fails",
                                         label(i) + "," + label(j) + "," +
                                             label(k));
            }
        }
}

// --- bimodules --------------------------------------------------------------
//
// Bimodule backends expose: dim(), label(m), left_mul(i,m), right_mul(m,i),
// ad_basis(i,m) = e_i f_m - f_m e_i.

// Bimodule over a StructureConstantAlgebra given by action constants.
class Bimodule {
  public:
    Bimodule() = default;

    Bimodule(std::vector<std::string> labels,
             std::vector<std::vector<SparseRow>> left,
             std::vector<std::vector<SparseRow>> right)
        : labels_(std::move(labels)), left_(std::move(left)),
          right_(std::move(right))
    {}

    int dim() const { return static_cast<int>(labels_.size()); }
    const std::string &label(int m) const { return labels_[m]; }

    SparseRow left_mul(int i, int m) const { return left_[i][m]; }
    SparseRow right_mul(int m, int i) const { return right_[m][i]; }

    SparseRow ad_basis(int i, int m) const
    {
        SparseRow r = left_[i][m];
        row_axpy(r, right_[m][i], Rational(-1));
        return r;
    }

    // (xy)m = x(ym), m(xy) = (mx)y, (xm)y = x(my), unit acts as identity.
    void verify_axioms(const StructureConstantAlgebra &a) const;

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<SparseRow>> left_;  // left_[i][m] = e_i f_m
    std::vector<std::vector<SparseRow>> right_; // right_[m][i] = f_m e_i
};

// An algebra viewed as a bimodule over itself.
template <class Alg>
class SelfBimodule {
  public:
    explicit SelfBimodule(const Alg &a) : a_(&a) {}

    int dim() const { return a_->dim(); }
    const std::string &label(int m) const { return a_->label(m); }
    SparseRow left_mul(int i, int m) const { return a_->basis_product(i, m); }
    SparseRow right_mul(int m, int i) const { return a_->basis_product(m, i); }
    SparseRow ad_basis(int i, int m) const
    {
        return a_->basis_commutator(i, m);
    }
    const Alg &algebra() const { return *a_; }

  private:
    const Alg *a_;
};

template <class Mod>
Vec mod_left(const Mod &mod, const Vec &a, const Vec &m)
{
    Vec out(mod.dim(), Rational(0));
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; j < mod.dim(); ++j) {
            if (m[j].is_zero())
                continue;
            Rational c = a[i] * m[j];
            for (const auto &[k, v] : mod.left_mul(i, j))
                out[k] += c * v;
        }
    }
    return out;
}

template <class Mod>
Vec mod_right(const Mod &mod, const Vec &m, const Vec &a)
{
    Vec out(mod.dim(), Rational(0));
    for (int j = 0; j < mod.dim(); ++j) {
        if (m[j].is_zero())
            continue;
        for (int i = 0; i < static_cast<int>(a.size()); ++i) {
            if (a[i].is_zero())
                continue;
            Rational c = m[j] * a[i];
            for (const auto &[k, v] : mod.right_mul(j, i))
                out[k] += c * v;
        }
    }
    return out;
}

// ad_c(m) = c m - m c for an algebra element c and module element m.
template <class Mod>
Vec mod_ad(const Mod &mod, const Vec &c, const Vec &m)
{
    Vec out(mod.dim(), Rational(0));
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (c[i].is_zero())
            continue;
        for (int j = 0; j < mod.dim(); ++j) {
            if (m[j].is_zero())
                continue;
            Rational w = c[i] * m[j];
            for (const auto &[k, v] : mod.ad_basis(i, j))
                out[k] += w * v;
        }
    }
    return out;
}

// Matrix of ad_c acting on the bimodule.
template <class Mod>
SparseMatrix ad_matrix(const Mod &mod, const Vec &c)
{
    SparseMatrix out(mod.dim(), mod.dim());
    for (int j = 0; j < mod.dim(); ++j) {
        for (int i = 0; i < static_cast<int>(c.size()); ++i) {
            if (c[i].is_zero())
                continue;
            for (const auto &[k, v] : mod.ad_basis(i, j))
                out.add(k, j, c[i] * v);
        }
    }
    return out;
}

inline void Bimodule::verify_axioms(const StructureConstantAlgebra &a) const
{
    const int n = a.dim(), m = dim();
    auto unit_vec = a.unit();
    for (int t = 0; t < m; ++t) {
        Vec ft(m, Rational(0));
        ft[t] = Rational(1);
        if (mod_left(*this, unit_vec, ft) != ft ||
            mod_right(*this, ft, unit_vec) != ft)
            throw AxiomViolation("bimodule unit law fails", label(t));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec ei(n, Rational(0)), ej(n, Rational(0));
            ei[i] = Rational(1);
            ej[j] = Rational(1);
            Vec eij = alg_product(a, ei, ej);
            for (int t = 0; t < m; ++t) {
                Vec ft(m, Rational(0));
                ft[t] = Rational(1);
                if (mod_left(*this, eij, ft) !=
                    mod_left(*this, ei, mod_left(*this, ej, ft)))
                    throw AxiomViolation("left action fails",
                                         a.label(i) + "," + a.label(j) + "," +
                                             label(t));
                if (mod_right(*this, ft, eij) !=
                    mod_right(*this, mod_right(*this, ft, ei), ej))
                    throw AxiomViolation("right action fails",
                                         a.label(i) + "," + a.label(j) + "," +
                                             label(t));
                if (mod_right(*this, mod_left(*this, ei, ft), ej) !=
                    mod_left(*this, ei, mod_right(*this, ft, ej)))
                    throw AxiomViolation("actions do not commute",
                                         a.label(i) + "," + a.label(j) + "," +
                                             label(t));
            }
        }
}

// --- constructions ----------------------------------------------------------

// M_n(Q) with the matrix-unit basis E_ij, E_ij E_kl = delta_jk E_il.
inline StructureConstantAlgebra matrix_algebra(int n)
{
    if (n < 1)
        throw DimensionMismatch("matrix_algebra needs n >= 1");
    const int d = n * n;
    auto idx = [n](int i, int j) { return i * n + j; };
    std::vector<std::string> labels(d);
    std::vector<std::vector<SparseRow>> table(
        d, std::vector<SparseRow>(static_cast<std::size_t>(d)));
    Vec unit(d, Rational(0));
    for (int i = 0; i < n; ++i) {
        unit[idx(i, i)] = Rational(1);
        for (int j = 0; j < n; ++j)
            labels[idx(i, j)] =
                "E" + std::to_string(i + 1) + std::to_string(j + 1);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (j == k)
                        table[idx(i, j)][idx(k, l)] = {
                            {idx(i, l), Rational(1)}};
    return StructureConstantAlgebra(std::move(labels), std::move(unit),
                                    std::move(table));
}

// --- subalgebra spans -------------------------------------------------------

// A commutative subalgebra C, spanned by coefficient vectors over the ambient
// algebra basis. `generators` indexes the vectors used for ad-recursions;
// `assume_maximal` records the documented assumption for truncated backends
// where maximality is only checkable up to the cutoff.
struct Subalgebra {
    std::vector<Vec> vectors;
    std::vector<int> generators;
    bool assume_maximal = false;
    std::string note;

    int count() const { return static_cast<int>(vectors.size()); }

    std::vector<Vec> generator_vectors() const
    {
        std::vector<Vec> out;
        for (int g : generators)
            out.push_back(vectors.at(g));
        return out;
    }
};

struct SubalgebraReport {
    bool commutative = true;
    bool closed_under_product = true;
    bool contains_unit = true;
    bool centralizer_equals_span = true;
    bool up_to_cutoff = false; // some products skipped past the cutoff
    int skipped_products = 0;
    std::string witness;
};

template <class Alg>
Subspace subalgebra_span(const Alg &a, const Subalgebra &c)
{
    return Subspace::span(c.vectors, a.dim());
}

// Closure/commutativity/unit checks on the span.
template <class Alg>
SubalgebraReport verify_subalgebra(const Alg &a, const Subalgebra &c)
{
    SubalgebraReport rep;
    Subspace span = subalgebra_span(a, c);
    if (!span.contains(a.unit())) {
        rep.contains_unit = false;
        rep.witness = "unit not in span";
    }
    for (std::size_t i = 0; i < c.vectors.size(); ++i)
        for (std::size_t j = 0; j < c.vectors.size(); ++j) {
            try {
                Vec p = alg_product(a, c.vectors[i], c.vectors[j]);
                if (!span.contains(p)) {
                    rep.closed_under_product = false;
                    rep.witness = "product of span vectors " +
                                  std::to_string(i) + "," + std::to_string(j) +
                                  " leaves the span";
                }
                if (j > i) {
                    Vec k = alg_commutator(a, c.vectors[i], c.vectors[j]);
                    for (const auto &x : k)
                        if (!x.is_zero()) {
                            rep.commutative = false;
                            rep.witness = "vectors " + std::to_string(i) +
                                          "," + std::to_string(j) +
                                          " do not commute";
                        }
                }
            } catch (const OverflowError &) {
                rep.up_to_cutoff = true;
                ++rep.skipped_products;
            }
        }
    return rep;
}

// Commutativity plus centralizer-equality ("maximal commutative"): the
// centralizer is computed from the designated generators; on truncated
// backends the verdict is tagged up-to-cutoff.
template <class Alg>
SubalgebraReport is_maximal_commutative(const Alg &a, const Subalgebra &c)
{
    SubalgebraReport rep = verify_subalgebra(a, c);
    SelfBimodule<Alg> self(a);
    Subspace centralizer = Subspace::full(a.dim());
    for (const Vec &g : c.generator_vectors())
        centralizer = intersect(centralizer, kernel(ad_matrix(self, g)));
    Subspace span = subalgebra_span(a, c);
    if (!(centralizer == span)) {
        rep.centralizer_equals_span = false;
        if (rep.witness.empty())
            rep.witness = "centralizer has dimension " +
                          std::to_string(centralizer.dim()) + ", span has " +
                          std::to_string(span.dim());
    }
    return rep;
}

} // namespace diffhull
