#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffhull/algebra.hpp"
#include "diffhull/filtration.hpp"
#include "diffhull/linalg.hpp"

namespace diffhull {

// Successive quotients F_p / F_{p-1} with chosen echelon complements, so
// classes have canonical coordinates and projections are stored maps.
class GradedPieces {
  public:
    GradedPieces() = default;

    static GradedPieces from_filtration(const AdFiltration &f)
    {
        GradedPieces g;
        g.ambient_ = f.ambient();
        g.zero_beyond_ = f.stabilized() || f.exhaustive();
        for (int p = 0; p <= f.top(); ++p)
            g.pieces_.emplace_back(f.level(p), f.level(p - 1));
        return g;
    }

    int ambient() const { return ambient_; }
    int count() const { return static_cast<int>(pieces_.size()); }
    int top() const { return count() - 1; }
    bool zero_beyond() const { return zero_beyond_; }

    int dim(int p) const
    {
        if (p < 0 || p > top())
            return 0;
        return pieces_[p].dim();
    }

    int total_dim() const
    {
        int s = 0;
        for (const auto &q : pieces_)
            s += q.dim();
        return s;
    }

    const QuotientMap &piece(int p) const { return pieces_[p]; }

    Vec representative(int p, int i) const
    {
        return to_dense(pieces_[p].representatives().basis()[i], ambient_);
    }

    // Class coordinates of an ambient vector lying in F_p.
    Vec classify(int p, const Vec &v) const
    {
        if (p < 0 || (p > top() && zero_beyond_))
            return {};
        if (p > top())
            throw CutoffExceeded("graded piece beyond the computed range");
        return pieces_[p].coords(v);
    }

  private:
    int ambient_ = 0;
    bool zero_beyond_ = false;
    std::vector<QuotientMap> pieces_;
};

// A homogeneous class: degree plus coordinates in the piece basis.
struct GradedElem {
    int degree = 0;
    Vec coords;

    bool is_zero() const
    {
        for (const auto &c : coords)
            if (!c.is_zero())
                return false;
        return true;
    }
};

namespace detail {

struct GradedEntry {
    bool available = false;
    Vec coords; // in the target piece basis (possibly empty when it is 0)
};

using GradedTable = std::vector<std::vector<std::vector<std::vector<GradedEntry>>>>;

// Shared table builder: op(i-th basis rep of src0 deg p0, j-th of src1 deg p1)
// classified into tgt degree p0+p1+shift.
template <class Op>
GradedTable build_graded_table(const GradedPieces &src0,
                               const GradedPieces &src1,
                               const GradedPieces &tgt,
                               const AdFiltration &tgt_filt, int shift,
                               Op &&op, const std::string &what)
{
    GradedTable table(src0.count());
    for (int p0 = 0; p0 < src0.count(); ++p0) {
        table[p0].resize(src1.count());
        for (int p1 = 0; p1 < src1.count(); ++p1) {
            int td = p0 + p1 + shift;
            auto &cell = table[p0][p1];
            cell.assign(src0.dim(p0),
                        std::vector<GradedEntry>(src1.dim(p1)));
            for (int i = 0; i < src0.dim(p0); ++i)
                for (int j = 0; j < src1.dim(p1); ++j) {
                    GradedEntry entry;
                    try {
                        Vec v = op(src0.representative(p0, i),
                                   src1.representative(p1, j));
                        bool zero = true;
                        for (const auto &c : v)
                            if (!c.is_zero())
                                zero = false;
                        if (td < 0) {
                            if (!zero)
                                throw diffhull::InclusionViolation(
                                    what + " lands below degree 0",
                                    "degrees " + std::to_string(p0) + "," +
                                        std::to_string(p1));
                            entry.available = true;
                        } else if (td <= tgt.top()) {
                            if (!tgt_filt.level(td).contains(v))
                                throw diffhull::InclusionViolation(
                                    what + " violates the filtration "
                                           "inclusion",
                                    "degrees " + std::to_string(p0) + "," +
                                        std::to_string(p1) + " basis " +
                                        std::to_string(i) + "," +
                                        std::to_string(j));
                            entry.available = true;
                            entry.coords = tgt.classify(td, v);
                        } else if (tgt.zero_beyond()) {
                            if (!tgt_filt.level(tgt_filt.top()).contains(v))
                                throw diffhull::InclusionViolation(
                                    what + " leaves the stabilized level",
                                    "degrees " + std::to_string(p0) + "," +
                                        std::to_string(p1));
                            entry.available = true; // class is zero
                        }
                        // else: truncated range, entry stays unavailable
                    } catch (const OverflowError &) {
                        // unavailable
                    }
                    cell[i][j] = std::move(entry);
                }
        }
    }
    return table;
}

// Bilinear extension of a graded table to homogeneous classes.
inline std::optional<GradedElem>
apply_graded_table(const GradedTable &table, const GradedPieces &tgt,
                   const GradedElem &a, const GradedElem &b, int shift)
{
    int td = a.degree + b.degree + shift;
    GradedElem out;
    out.degree = td;
    out.coords.assign(tgt.dim(td), Rational(0));
    if (a.degree > static_cast<int>(table.size()) - 1 ||
        (a.degree >= 0 &&
         b.degree > static_cast<int>(table[a.degree].size()) - 1)) {
        // a piece beyond the computed range: zero only if nothing is there
        if (tgt.zero_beyond() && (a.is_zero() || b.is_zero()))
            return out;
        return std::nullopt;
    }
    if (td > tgt.top() && !tgt.zero_beyond())
        return std::nullopt;
    const auto &cell = table[a.degree][b.degree];
    for (int i = 0; i < static_cast<int>(a.coords.size()); ++i) {
        if (a.coords[i].is_zero())
            continue;
        for (int j = 0; j < static_cast<int>(b.coords.size()); ++j) {
            if (b.coords[j].is_zero())
                continue;
            const GradedEntry &e = cell[i][j];
            if (!e.available)
                return std::nullopt;
            Rational c = a.coords[i] * b.coords[j];
            for (int t = 0; t < static_cast<int>(e.coords.size()); ++t)
                out.coords[t] += c * e.coords[t];
        }
    }
    return out;
}

} // namespace detail

struct GradedAxiomReport {
    std::vector<std::string> violations;
    int checked = 0;
    int skipped = 0; // triples touching unavailable (truncated) entries
    bool pass() const { return violations.empty(); }
};

// The associated graded of an ad-filtration on A, carrying the commutative
// product and the degree (-1) bracket { [a0], [a1] } = [ [a0, a1] ].
class GradedPoissonAlgebra {
  public:
    GradedPoissonAlgebra() = default;

    template <class Alg>
    static GradedPoissonAlgebra build(const Alg &alg, const AdFiltration &fa)
    {
        GradedPoissonAlgebra g;
        g.pieces_ = GradedPieces::from_filtration(fa);
        g.product_ = detail::build_graded_table(
            g.pieces_, g.pieces_, g.pieces_, fa, 0,
            [&](const Vec &u, const Vec &v) { return alg_product(alg, u, v); },
            "graded product");
        g.bracket_ = detail::build_graded_table(
            g.pieces_, g.pieces_, g.pieces_, fa, -1,
            [&](const Vec &u, const Vec &v) {
                return alg_commutator(alg, u, v);
            },
            "graded bracket");
        g.unit_ = GradedElem{0, g.pieces_.classify(0, alg.unit())};
        return g;
    }

    // Rebuild with every representative perturbed by the sum of the lower
    // level's basis; identical tables certify lift independence.
    template <class Alg>
    static bool lifts_agree(const Alg &alg, const AdFiltration &fa)
    {
        GradedPoissonAlgebra base = build(alg, fa);
        GradedPieces pieces = GradedPieces::from_filtration(fa);
        auto perturb = [&](int p, int i) {
            Vec v = pieces.representative(p, i);
            const Subspace &lower = fa.level(p - 1);
            for (const auto &row : lower.basis())
                for (const auto &[k, c] : row)
                    v[k] += c;
            return v;
        };
        for (int p0 = 0; p0 < pieces.count(); ++p0)
            for (int p1 = 0; p1 < pieces.count(); ++p1)
                for (int i = 0; i < pieces.dim(p0); ++i)
                    for (int j = 0; j < pieces.dim(p1); ++j) {
                        const auto &pe = base.product_[p0][p1][i][j];
                        const auto &be = base.bracket_[p0][p1][i][j];
                        try {
                            if (pe.available) {
                                Vec v = alg_product(alg, perturb(p0, i),
                                                    perturb(p1, j));
                                Vec c = pieces.classify(p0 + p1, v);
                                if (c != pe.coords)
                                    return false;
                            }
                            if (be.available && p0 + p1 >= 1) {
                                Vec v = alg_commutator(alg, perturb(p0, i),
                                                       perturb(p1, j));
                                Vec c = pieces.classify(p0 + p1 - 1, v);
                                if (c != be.coords)
                                    return false;
                            }
                        } catch (const OverflowError &) {
                            // perturbed lift ran past the cutoff; skip
                        } catch (const CutoffExceeded &) {
                        }
                    }
        return true;
    }

    const GradedPieces &pieces() const { return pieces_; }
    const GradedElem &unit() const { return unit_; }

    bool product_available(int p0, int i, int p1, int j) const
    {
        return product_[p0][p1][i][j].available;
    }

    std::optional<GradedElem> product(const GradedElem &a,
                                      const GradedElem &b) const
    {
        return detail::apply_graded_table(product_, pieces_, a, b, 0);
    }

    std::optional<GradedElem> bracket(const GradedElem &a,
                                      const GradedElem &b) const
    {
        return detail::apply_graded_table(bracket_, pieces_, a, b, -1);
    }

    GradedElem basis_elem(int p, int i) const
    {
        GradedElem e;
        e.degree = p;
        e.coords.assign(pieces_.dim(p), Rational(0));
        e.coords[i] = Rational(1);
        return e;
    }

    // Def.-2 axioms: commutativity, associativity, unit, antisymmetry,
    // Jacobi, Leibniz. Triples with unavailable (truncated) entries are
    // counted as skipped.
    GradedAxiomReport verify_axioms() const;

  private:
    GradedPieces pieces_;
    detail::GradedTable product_;
    detail::GradedTable bracket_;
    GradedElem unit_;

    friend class GradedPoissonModule;
};

// The associated graded of the bimodule filtration: symmetric module over the
// graded algebra with the degree (-1) bracket { [m], [a] } = [ [m, a] ].
class GradedPoissonModule {
  public:
    GradedPoissonModule() = default;

    template <class Alg, class Mod>
    static GradedPoissonModule build(const Alg &alg, const Mod &mod,
                                     const AdFiltration &fa,
                                     const AdFiltration &fm,
                                     const GradedPoissonAlgebra &gr)
    {
        (void)alg;
        GradedPoissonModule g;
        g.alg_ = &gr;
        g.pieces_ = GradedPieces::from_filtration(fm);
        g.left_ = detail::build_graded_table(
            gr.pieces(), g.pieces_, g.pieces_, fm, 0,
            [&](const Vec &a, const Vec &m) { return mod_left(mod, a, m); },
            "graded left action");
        g.right_ = detail::build_graded_table(
            g.pieces_, gr.pieces(), g.pieces_, fm, 0,
            [&](const Vec &m, const Vec &a) { return mod_right(mod, m, a); },
            "graded right action");
        g.bracket_ = detail::build_graded_table(
            g.pieces_, gr.pieces(), g.pieces_, fm, -1,
            [&](const Vec &m, const Vec &a) {
                Vec v = mod_ad(mod, a, m); // [a, m]
                for (auto &c : v)
                    c = -c; // { n, b } = [m, a]
                return v;
            },
            "graded module bracket");
        return g;
    }

    const GradedPieces &pieces() const { return pieces_; }

    GradedElem basis_elem(int p, int i) const
    {
        GradedElem e;
        e.degree = p;
        e.coords.assign(pieces_.dim(p), Rational(0));
        e.coords[i] = Rational(1);
        return e;
    }

    std::optional<GradedElem> act(const GradedElem &n,
                                  const GradedElem &b) const
    {
        return detail::apply_graded_table(right_, pieces_, n, b, 0);
    }

    std::optional<GradedElem> act_left(const GradedElem &b,
                                       const GradedElem &n) const
    {
        return detail::apply_graded_table(left_, pieces_, b, n, 0);
    }

    std::optional<GradedElem> bracket(const GradedElem &n,
                                      const GradedElem &b) const
    {
        return detail::apply_graded_table(bracket_, pieces_, n, b, -1);
    }

    // Symmetry, module laws, the two Leibniz identities, Lie-module law.
    GradedAxiomReport verify_axioms() const;

  private:
    const GradedPoissonAlgebra *alg_ = nullptr;
    GradedPieces pieces_;
    detail::GradedTable left_;   // [b-deg][n-deg]
    detail::GradedTable right_;  // [n-deg][b-deg]
    detail::GradedTable bracket_;
};

namespace detail {

inline bool graded_equal(const std::optional<GradedElem> &a,
                         const std::optional<GradedElem> &b)
{
    if (!a || !b)
        return false;
    // zero classes are equal regardless of degree or representation
    if (a->is_zero() || b->is_zero())
        return a->is_zero() && b->is_zero();
    return a->degree == b->degree && a->coords == b->coords;
}

inline std::optional<GradedElem> graded_add(std::optional<GradedElem> a,
                                            const std::optional<GradedElem> &b)
{
    if (!a || !b)
        return std::nullopt;
    if (a->is_zero())
        return b;
    if (b->is_zero())
        return a;
    if (a->degree != b->degree)
        return std::nullopt;
    for (std::size_t i = 0; i < a->coords.size(); ++i)
        a->coords[i] += b->coords[i];
    return a;
}

inline std::optional<GradedElem> graded_neg(std::optional<GradedElem> a)
{
    if (a)
        for (auto &c : a->coords)
            c = -c;
    return a;
}

} // namespace detail

inline GradedAxiomReport GradedPoissonAlgebra::verify_axioms() const
{
    GradedAxiomReport rep;
    const int P = pieces_.count();
    auto elems = [&](int p) { return pieces_.dim(p); };

    auto note = [&](const std::string &what, int p0, int i, int p1, int j,
                    int p2 = -1, int k = -1) {
        std::string w = what + " at (" + std::to_string(p0) + "." +
                        std::to_string(i) + ", " + std::to_string(p1) + "." +
                        std::to_string(j);
        if (p2 >= 0)
            w += ", " + std::to_string(p2) + "." + std::to_string(k);
        rep.violations.push_back(w + ")");
    };

    for (int p0 = 0; p0 < P; ++p0)
        for (int i = 0; i < elems(p0); ++i) {
            GradedElem a = basis_elem(p0, i);
            auto ua = product(unit_, a);
            ++rep.checked;
            if (!ua)
                ++rep.skipped;
            else if (!detail::graded_equal(ua, a))
                note("unit law", 0, 0, p0, i);
            for (int p1 = 0; p1 < P; ++p1)
                for (int j = 0; j < elems(p1); ++j) {
                    GradedElem b = basis_elem(p1, j);
                    ++rep.checked;
                    auto ab = product(a, b), ba = product(b, a);
                    if (!ab || !ba)
                        ++rep.skipped;
                    else if (!detail::graded_equal(ab, ba))
                        note("commutativity", p0, i, p1, j);
                    auto br = bracket(a, b), rb = bracket(b, a);
                    if (!br || !rb)
                        ++rep.skipped;
                    else if (!detail::graded_equal(br,
                                                   detail::graded_neg(rb)))
                        note("antisymmetry", p0, i, p1, j);
                    for (int p2 = 0; p2 < P; ++p2)
                        for (int k = 0; k < elems(p2); ++k) {
                            GradedElem c = basis_elem(p2, k);
                            ++rep.checked;
                            // associativity
                            auto lhs = ab ? product(*ab, c) : std::nullopt;
                            auto bc = product(b, c);
                            auto rhs = bc ? product(a, *bc) : std::nullopt;
                            if (!lhs || !rhs)
                                ++rep.skipped;
                            else if (!detail::graded_equal(lhs, rhs))
                                note("associativity", p0, i, p1, j, p2, k);
                            // Jacobi
                            auto j1 = bc ? bracket(a, *bc) : std::nullopt;
                            auto ca = product(c, a);
                            (void)ca;
                            auto bcc = bracket(b, c);
                            auto t1 = bcc ? bracket(a, *bcc) : std::nullopt;
                            auto cab = bracket(c, a);
                            auto t2 = cab ? bracket(b, *cab) : std::nullopt;
                            auto abk = bracket(a, b);
                            auto t3 = abk ? bracket(c, *abk) : std::nullopt;
                            auto sum = detail::graded_add(
                                detail::graded_add(t1, t2), t3);
                            if (!sum)
                                ++rep.skipped;
                            else if (!sum->is_zero())
                                note("jacobi", p0, i, p1, j, p2, k);
                            // Leibniz { a, b c } = { a, b } c + b { a, c }
                            auto l1 = bc ? bracket(a, *bc) : std::nullopt;
                            auto l2 = abk ? product(*abk, c) : std::nullopt;
                            auto ack = bracket(a, c);
                            auto l3 = ack ? product(b, *ack) : std::nullopt;
                            auto rhs2 = detail::graded_add(l2, l3);
                            if (!l1 || !rhs2)
                                ++rep.skipped;
                            else if (!detail::graded_equal(l1, rhs2))
                                note("leibniz", p0, i, p1, j, p2, k);
                            (void)j1;
                        }
                }
        }
    return rep;
}

inline GradedAxiomReport GradedPoissonModule::verify_axioms() const
{
    GradedAxiomReport rep;
    const GradedPoissonAlgebra &A = *alg_;
    auto note = [&](const std::string &what) {
        rep.violations.push_back(what);
    };

    for (int pn = 0; pn < pieces_.count(); ++pn)
        for (int i = 0; i < pieces_.dim(pn); ++i) {
            GradedElem n = basis_elem(pn, i);
            // unit acts as identity, symmetrically
            auto un = act(n, A.unit());
            auto nu = act_left(A.unit(), n);
            ++rep.checked;
            if (!un || !nu)
                ++rep.skipped;
            else if (!detail::graded_equal(un, n) ||
                     !detail::graded_equal(nu, n))
                note("module unit law at " + std::to_string(pn) + "." +
                     std::to_string(i));
            for (int p1 = 0; p1 < A.pieces().count(); ++p1)
                for (int j = 0; j < A.pieces().dim(p1); ++j) {
                    GradedElem b1 = A.basis_elem(p1, j);
                    ++rep.checked;
                    // symmetry of the graded bimodule
                    auto nb = act(n, b1);
                    auto bn = act_left(b1, n);
                    if (!nb || !bn)
                        ++rep.skipped;
                    else if (!detail::graded_equal(nb, bn))
                        note("graded symmetry at n=" + std::to_string(pn) +
                             "." + std::to_string(i) + " b=" +
                             std::to_string(p1) + "." + std::to_string(j));
                    for (int p2 = 0; p2 < A.pieces().count(); ++p2)
                        for (int k = 0; k < A.pieces().dim(p2); ++k) {
                            GradedElem b2 = A.basis_elem(p2, k);
                            ++rep.checked;
                            // associativity of the action
                            auto b12 = A.product(b1, b2);
                            auto lhs =
                                b12 ? act(n, *b12) : std::nullopt;
                            auto rhs = nb ? act(*nb, b2) : std::nullopt;
                            if (!lhs || !rhs)
                                ++rep.skipped;
                            else if (!detail::graded_equal(lhs, rhs))
                                note("action associativity");
                            // { n b1, b2 } = { n, b2 } b1 + n { b1, b2 }
                            auto nb1 = nb;
                            auto t1 = nb1 ? bracket(*nb1, b2) : std::nullopt;
                            auto nb2 = bracket(n, b2);
                            auto s1 = nb2 ? act(*nb2, b1) : std::nullopt;
                            auto bb = A.bracket(b1, b2);
                            auto s2 = bb ? act(n, *bb) : std::nullopt;
                            auto rhs1 = detail::graded_add(s1, s2);
                            if (!t1 || !rhs1)
                                ++rep.skipped;
                            else if (!detail::graded_equal(t1, rhs1))
                                note("module leibniz (first law)");
                            // { n, b1 b2 } = { n, b1 } b2 + b1 { n, b2 }
                            auto t2 =
                                b12 ? bracket(n, *b12) : std::nullopt;
                            auto nbr1 = bracket(n, b1);
                            auto u1 = nbr1 ? act(*nbr1, b2) : std::nullopt;
                            auto u2 = nb2 ? act_left(b1, *nb2) : std::nullopt;
                            auto rhs3 = detail::graded_add(u1, u2);
                            if (!t2 || !rhs3)
                                ++rep.skipped;
                            else if (!detail::graded_equal(t2, rhs3))
                                note("module leibniz (second law)");
                            // right Lie-module law:
                            // {{n,b1},b2} - {{n,b2},b1} = {n,{b1,b2}}
                            auto v1 = nbr1 ? bracket(*nbr1, b2) : std::nullopt;
                            auto v2 = nb2 ? bracket(*nb2, b1) : std::nullopt;
                            auto lhs4 = detail::graded_add(
                                v1, detail::graded_neg(v2));
                            auto rhs4 = bb ? bracket(n, *bb) : std::nullopt;
                            if (!lhs4 || !rhs4)
                                ++rep.skipped;
                            else if (!detail::graded_equal(lhs4, rhs4))
                                note("lie module law");
                        }
                }
        }
    return rep;
}

// Flatten the graded algebra into a structure-constant algebra with a degree
// array. Requires every entry to be available (finite fixtures).
struct GradedAlgebraModel {
    StructureConstantAlgebra algebra;
    std::vector<int> degree;                  // per flat basis index
    std::vector<std::pair<int, int>> pieces;  // flat index -> (degree, i)
};

// The differential hull of A in a filtration-adapted basis: new basis =
// union of the graded representatives, ordered by level. Structure constants
// are those of A restricted to the hull; the per-index level array makes the
// bar filtration a span of coordinate tuples.
struct AdaptedAlgebra {
    StructureConstantAlgebra algebra;
    std::vector<int> level;          // per adapted basis index
    std::vector<Vec> ambient_basis;  // adapted basis in ambient coordinates
    BasisCoords coords;              // ambient -> adapted coordinates
};

template <class Alg>
AdaptedAlgebra filtration_adapted(const Alg &a, const AdFiltration &f)
{
    GradedPieces pieces = GradedPieces::from_filtration(f);
    AdaptedAlgebra out;
    std::vector<SparseRow> rows;
    std::vector<std::string> labels;
    for (int p = 0; p <= pieces.top(); ++p)
        for (int i = 0; i < pieces.dim(p); ++i) {
            Vec v = pieces.representative(p, i);
            out.ambient_basis.push_back(v);
            rows.push_back(to_sparse(v));
            out.level.push_back(p);
            labels.push_back("f" + std::to_string(p) + "_" +
                             std::to_string(i));
        }
    out.coords = BasisCoords(rows, a.dim());
    const int n = static_cast<int>(out.ambient_basis.size());
    std::vector<std::vector<SparseRow>> table(
        n, std::vector<SparseRow>(static_cast<std::size_t>(n)));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            Vec p = alg_product(a, out.ambient_basis[s], out.ambient_basis[t]);
            try {
                table[s][t] = to_sparse(out.coords.coords(p));
            } catch (const NotASubspace &) {
                throw diffhull::InclusionViolation(
                    "hull is not closed under the product",
                    labels[s] + " * " + labels[t]);
            }
        }
    Vec unit = out.coords.coords(a.unit());
    out.algebra = StructureConstantAlgebra(std::move(labels), std::move(unit),
                                           std::move(table));
    return out;
}

inline GradedAlgebraModel flatten(const GradedPoissonAlgebra &g)
{
    const GradedPieces &ps = g.pieces();
    if (!ps.zero_beyond())
        throw CutoffExceeded("cannot flatten a truncated graded algebra");
    GradedAlgebraModel out;
    std::vector<std::pair<int, int>> index;
    for (int p = 0; p <= ps.top(); ++p)
        for (int i = 0; i < ps.dim(p); ++i) {
            index.emplace_back(p, i);
            out.degree.push_back(p);
        }
    const int n = static_cast<int>(index.size());
    std::vector<std::string> labels;
    for (auto [p, i] : index)
        labels.push_back("g" + std::to_string(p) + "_" + std::to_string(i));
    std::vector<std::vector<SparseRow>> table(
        n, std::vector<SparseRow>(static_cast<std::size_t>(n)));
    auto flat_of = [&](const GradedElem &e) {
        Vec v(n, Rational(0));
        int base = 0;
        for (int p = 0; p < e.degree; ++p)
            base += ps.dim(p);
        if (e.degree <= ps.top())
            for (int t = 0; t < static_cast<int>(e.coords.size()); ++t)
                v[base + t] = e.coords[t];
        return v;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto [p0, i] = index[a];
            auto [p1, j] = index[b];
            auto prod = g.product(g.basis_elem(p0, i), g.basis_elem(p1, j));
            if (!prod)
                throw CutoffExceeded("flatten: unavailable product entry");
            table[a][b] = to_sparse(flat_of(*prod));
        }
    Vec unit = flat_of(g.unit());
    out.algebra = StructureConstantAlgebra(std::move(labels), std::move(unit),
                                           std::move(table));
    out.pieces = std::move(index);
    return out;
}

} // namespace diffhull
