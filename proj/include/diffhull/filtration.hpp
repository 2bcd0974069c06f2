#pragma once

#include <string>
#include <vector>

#include "diffhull/algebra.hpp"
#include "diffhull/linalg.hpp"

namespace diffhull {

// The increasing filtration F_p M = { m : ad_c^{p+1}(m) = 0 for all c in C },
// computed iteratively as F_p = preimage of F_{p-1} under every ad-generator.
// Indexed by the natural numbers, F_{-1} = 0.
class AdFiltration {
  public:
    AdFiltration() = default;
    AdFiltration(int ambient, std::vector<Subspace> levels, bool stabilized,
                 bool exhaustive, int requested)
        : ambient_(ambient), levels_(std::move(levels)),
          stabilized_(stabilized), exhaustive_(exhaustive),
          requested_(requested), zero_(Subspace::zero(ambient))
    {}

    int ambient() const { return ambient_; }
    int top() const { return static_cast<int>(levels_.size()) - 1; }
    bool stabilized() const { return stabilized_; }
    bool exhaustive() const { return exhaustive_; }
    int requested_p_max() const { return requested_; }

    // Levels beyond the last computed one are meaningful only when the
    // filtration stabilized (they equal the top level then).
    bool level_known(int p) const
    {
        return p <= top() || stabilized_ || exhaustive_;
    }

    const Subspace &level(int p) const
    {
        if (p < 0)
            return zero_;
        if (p > top())
            return levels_.back();
        return levels_[p];
    }

    std::vector<int> dims() const
    {
        std::vector<int> d;
        for (const auto &s : levels_)
            d.push_back(s.dim());
        return d;
    }

    // Least p with v in F_p, or -1 when v is not in the top level.
    int level_of(const Vec &v) const
    {
        for (int p = 0; p <= top(); ++p)
            if (levels_[p].contains(v))
                return p;
        return -1;
    }

  private:
    int ambient_ = 0;
    std::vector<Subspace> levels_;
    bool stabilized_ = false;
    bool exhaustive_ = false;
    int requested_ = 0;
    Subspace zero_;
};

// ad_c^k(m), iterated commutator.
template <class Mod>
Vec ad_power(const Mod &mod, const Vec &c, Vec m, int k)
{
    for (int t = 0; t < k; ++t)
        m = mod_ad(mod, c, m);
    return m;
}

template <class Mod>
AdFiltration compute_filtration(const Mod &mod,
                                const std::vector<Vec> &ad_generators,
                                int p_max)
{
    const int n = mod.dim();
    std::vector<SparseMatrix> ads;
    for (const auto &g : ad_generators)
        ads.push_back(ad_matrix(mod, g));

    std::vector<Subspace> levels;
    bool stabilized = false, exhaustive = false;
    for (int p = 0; p <= p_max; ++p) {
        Subspace next = Subspace::full(n);
        for (const auto &m : ads) {
            Subspace constraint =
                levels.empty() ? kernel(m) : preimage(m, levels.back());
            next = intersect(next, constraint);
        }
        if (!levels.empty()) {
            if (!next.contains(levels.back()))
                throw Error("FiltrationNotNested",
                            "filtration level dropped; ad-generators are "
                            "inconsistent");
            if (next == levels.back()) {
                stabilized = true;
                break;
            }
        }
        levels.push_back(next);
        if (next.dim() == n) {
            exhaustive = true;
            stabilized = true;
            break;
        }
    }
    return AdFiltration(n, std::move(levels), stabilized, exhaustive, p_max);
}

// Convenience: filtration of an algebra over itself.
template <class Alg>
AdFiltration compute_filtration(const Alg &alg, const Subalgebra &c, int p_max)
{
    SelfBimodule<Alg> self(alg);
    return compute_filtration(self, c.generator_vectors(), p_max);
}

// Definitional form of the filtration: intersection of the kernels of all
// (p+1)-fold products ad_{c_0} ... ad_{c_p} over tuples of C-basis vectors.
// Multisets suffice, since the ad operators commute.
template <class Mod>
Subspace filtration_level_bruteforce(const Mod &mod,
                                     const std::vector<Vec> &c_basis, int p)
{
    std::vector<SparseMatrix> ads;
    for (const auto &c : c_basis)
        ads.push_back(ad_matrix(mod, c));
    const int n = mod.dim();
    Subspace out = Subspace::full(n);

    std::vector<int> tuple(p + 1, 0);
    while (true) {
        SparseMatrix prod = ads[tuple[0]];
        for (int t = 1; t <= p; ++t)
            prod = ads[tuple[t]].mul(prod);
        out = intersect(out, kernel(prod));
        // next non-decreasing tuple
        int k = p;
        while (k >= 0 && tuple[k] == static_cast<int>(ads.size()) - 1)
            --k;
        if (k < 0)
            break;
        ++tuple[k];
        for (int t = k + 1; t <= p; ++t)
            tuple[t] = tuple[k];
    }
    return out;
}

// True iff the iterative filtration equals the definitional one for all
// levels up to p_max.
template <class Mod>
bool filtration_bruteforce_check(const Mod &mod,
                                 const std::vector<Vec> &c_basis,
                                 const AdFiltration &filt, int p_max)
{
    for (int p = 0; p <= p_max; ++p) {
        if (!filt.level_known(p))
            return false;
        if (!(filtration_level_bruteforce(mod, c_basis, p) == filt.level(p)))
            return false;
    }
    return true;
}

// Union of the filtration; closed under product when the filtration is
// honest. `partial` is set when p_max was hit before stabilization.
struct HullResult {
    Subspace span;
    bool partial = false;
    bool closed = true;
    int checked_products = 0;
    int skipped_products = 0; // past the cutoff on truncated backends
    std::string witness;
};

template <class Alg>
HullResult differential_hull(const Alg &alg, const AdFiltration &filt)
{
    HullResult out;
    out.span = filt.level(filt.top());
    out.partial = !(filt.stabilized() || filt.exhaustive());
    auto basis = out.span.basis_dense();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            try {
                Vec p = alg_product(alg, basis[i], basis[j]);
                ++out.checked_products;
                if (!out.span.contains(p)) {
                    out.closed = false;
                    out.witness = "basis product " + std::to_string(i) + "," +
                                  std::to_string(j) + " leaves the hull";
                }
            } catch (const OverflowError &) {
                ++out.skipped_products;
            }
        }
    return out;
}

// Sub-bimodule closure of the hull of M under the hull of A.
template <class Alg, class Mod>
HullResult differential_hull_module(const Alg &alg, const Mod &mod,
                                    const AdFiltration &alg_filt,
                                    const AdFiltration &mod_filt)
{
    HullResult out;
    out.span = mod_filt.level(mod_filt.top());
    out.partial = !(mod_filt.stabilized() || mod_filt.exhaustive());
    auto abasis = alg_filt.level(alg_filt.top()).basis_dense();
    auto mbasis = out.span.basis_dense();
    for (std::size_t i = 0; i < abasis.size(); ++i)
        for (std::size_t j = 0; j < mbasis.size(); ++j) {
            try {
                Vec l = mod_left(mod, abasis[i], mbasis[j]);
                Vec r = mod_right(mod, mbasis[j], abasis[i]);
                ++out.checked_products;
                if (!out.span.contains(l) || !out.span.contains(r)) {
                    out.closed = false;
                    out.witness = "action of hull basis " + std::to_string(i) +
                                  " on " + std::to_string(j) +
                                  " leaves the hull";
                }
            } catch (const OverflowError &) {
                ++out.skipped_products;
            }
        }
    return out;
}

// --- almost commutative / almost symmetric inclusion checks -----------------

struct InclusionViolationEntry {
    std::string check;
    int p0 = 0, p1 = 0;
    std::string witness;
};

struct AlmostStructureReport {
    std::vector<InclusionViolationEntry> violations;
    int checked = 0;
    int skipped = 0; // overflowing products or unknown target levels
    bool pass() const { return violations.empty(); }
};

namespace detail {

template <class Filt>
bool inclusion_target_known(const Filt &f, int p)
{
    return p < 0 || f.level_known(p);
}

} // namespace detail

// Exhaustive filtration-level inclusion checks over basis pairs:
//   F_{p0}A . F_{p1}A  in F_{p0+p1}A        (product)
//   [F_{p0}A, F_{p1}A] in F_{p0+p1-1}A      (commutator)
//   F_{p0}A . F_{p1}M, F_{p0}M . F_{p1}A in F_{p0+p1}M
//   [F_{p0}A, F_{p1}M] in F_{p0+p1-1}M
//   ad_c^i(F_p M) in F_{p-i}M over the ad-generators
template <class Alg, class Mod>
AlmostStructureReport
verify_almost_structure(const Alg &alg, const AdFiltration &fa,
                        const Mod &mod, const AdFiltration &fm,
                        const std::vector<Vec> &ad_generators, int p_max)
{
    AlmostStructureReport rep;

    auto record = [&rep](const std::string &check, int p0, int p1,
                         const std::string &witness) {
        rep.violations.push_back({check, p0, p1, witness});
    };

    auto run_pairs = [&](const std::string &name, const AdFiltration &f0,
                         const AdFiltration &f1, const AdFiltration &ftgt,
                         int shift, auto &&op) {
        for (int p0 = 0; p0 <= p_max; ++p0)
            for (int p1 = 0; p1 <= p_max; ++p1) {
                int tgt = p0 + p1 + shift;
                if (!detail::inclusion_target_known(ftgt, tgt)) {
                    ++rep.skipped;
                    continue;
                }
                const Subspace &target =
                    tgt < 0 ? Subspace::zero(ftgt.ambient()) : ftgt.level(tgt);
                auto b0 = f0.level(p0).basis_dense();
                auto b1 = f1.level(p1).basis_dense();
                for (std::size_t i = 0; i < b0.size(); ++i)
                    for (std::size_t j = 0; j < b1.size(); ++j) {
                        try {
                            Vec v = op(b0[i], b1[j]);
                            ++rep.checked;
                            if (!target.contains(v))
                                record(name, p0, p1,
                                       "basis pair " + std::to_string(i) +
                                           "," + std::to_string(j));
                        } catch (const OverflowError &) {
                            ++rep.skipped;
                        }
                    }
            }
    };

    run_pairs("algebra.product", fa, fa, fa, 0,
              [&](const Vec &u, const Vec &v) {
                  return alg_product(alg, u, v);
              });
    run_pairs("algebra.commutator", fa, fa, fa, -1,
              [&](const Vec &u, const Vec &v) {
                  return alg_commutator(alg, u, v);
              });
    run_pairs("module.left", fa, fm, fm, 0, [&](const Vec &u, const Vec &v) {
        return mod_left(mod, u, v);
    });
    run_pairs("module.right", fm, fa, fm, 0, [&](const Vec &u, const Vec &v) {
        return mod_right(mod, u, v);
    });
    run_pairs("module.commutator", fa, fm, fm, -1,
              [&](const Vec &u, const Vec &v) { return mod_ad(mod, u, v); });

    // ad_c^i(F_p M) in F_{p-i} M
    for (std::size_t g = 0; g < ad_generators.size(); ++g) {
        for (int p = 0; p <= p_max; ++p)
            for (int i = 0; i <= p + 1; ++i) {
                if (!fm.level_known(p)) {
                    ++rep.skipped;
                    continue;
                }
                for (const Vec &v : fm.level(p).basis_dense()) {
                    try {
                        Vec w = ad_power(mod, ad_generators[g], v, i);
                        ++rep.checked;
                        const Subspace &tgt = p - i < 0
                                                  ? Subspace::zero(fm.ambient())
                                                  : fm.level(p - i);
                        if (!tgt.contains(w))
                            record("ad.decreasing", p, i,
                                   "generator " + std::to_string(g));
                    } catch (const OverflowError &) {
                        ++rep.skipped;
                    }
                }
            }
    }
    return rep;
}

// --- independent recursion for operators on Q[x]/(x^n) ----------------------
//
// Operators on the n-dimensional space with basis 1, x, ..., x^{n-1} are
// n x n matrices, flattened row-major. The recursion
//     Diff_{-1} = 0,  Diff_p = { D : [c, D] in Diff_{p-1} for all c }
// is computed directly from multiplication-operator matrices, bypassing the
// structure-constant machinery.
struct DiffOperatorRecursion {
    int n = 0;
    std::vector<Subspace> levels;
    // the multiplication-by-x matrix as a flat vector, for reuse by callers
    Vec x_operator;
};

inline DiffOperatorRecursion grothendieck_diff_recursion(int n, int p_max)
{
    DiffOperatorRecursion out;
    out.n = n;
    const int nn = n * n;
    auto flat = [n](int i, int j) { return i * n + j; };

    // multiplication by x^k on the monomial basis: e_j -> e_{j+k}
    std::vector<std::vector<Vec>> mults; // mults[k] = matrix rows
    for (int k = 0; k < n; ++k) {
        std::vector<Vec> m(n, Vec(n, Rational(0)));
        for (int j = 0; j + k < n; ++j)
            m[j + k][j] = Rational(1);
        mults.push_back(std::move(m));
    }
    out.x_operator.assign(nn, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.x_operator[flat(i, j)] = mults[1][i][j];

    // ad matrices on flattened operator space: D -> cD - Dc
    std::vector<SparseMatrix> ads;
    for (int k = 1; k < n; ++k) {
        SparseMatrix ad(nn, nn);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int t = 0; t < n; ++t) {
                    // (cD)_{ij} depends on D_{tj} with weight c_{it}
                    if (!mults[k][i][t].is_zero())
                        ad.add(flat(i, j), flat(t, j), mults[k][i][t]);
                    // (Dc)_{ij} depends on D_{it} with weight c_{tj}
                    if (!mults[k][t][j].is_zero())
                        ad.add(flat(i, j), flat(i, t), -mults[k][t][j]);
                }
        ads.push_back(std::move(ad));
    }

    Subspace prev = Subspace::zero(nn);
    for (int p = 0; p <= p_max; ++p) {
        Subspace cur = Subspace::full(nn);
        for (const auto &ad : ads)
            cur = intersect(cur, preimage(ad, prev));
        out.levels.push_back(cur);
        prev = cur;
    }
    return out;
}

} // namespace diffhull
