#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffhull/algebra.hpp"
#include "diffhull/linalg.hpp"

namespace diffhull {

// A chain in C_k(A, M) = M (x) A^{(x)k}, written over tuples of basis
// indices: tuple[0] indexes M, tuple[1..k] index A.
using BarTuple = std::vector<int>;
using BarChain = std::map<BarTuple, Rational>;

inline void chain_add(BarChain &dst, const BarTuple &t, const Rational &c)
{
    if (c.is_zero())
        return;
    auto it = dst.find(t);
    if (it == dst.end()) {
        dst.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        dst.erase(it);
}

// b(m (x) a_1 ... a_k) = m a_1 (x) a_2 ... a_k
//   + sum_i (-1)^i m (x) ... a_i a_{i+1} ...
//   + (-1)^k a_k m (x) a_1 ... a_{k-1}
template <class Alg, class Mod>
BarChain hochschild_boundary(const Alg &alg, const Mod &mod,
                             const BarChain &chain)
{
    BarChain out;
    for (const auto &[tuple, coeff] : chain) {
        const int k = static_cast<int>(tuple.size()) - 1;
        if (k < 1)
            continue;
        // m a_1
        for (const auto &[m2, c] : mod.right_mul(tuple[0], tuple[1])) {
            BarTuple t;
            t.push_back(m2);
            t.insert(t.end(), tuple.begin() + 2, tuple.end());
            chain_add(out, t, coeff * c);
        }
        // inner contractions
        Rational sign(-1);
        for (int i = 1; i < k; ++i) {
            for (const auto &[a2, c] :
                 alg.basis_product(tuple[i], tuple[i + 1])) {
                BarTuple t;
                t.push_back(tuple[0]);
                for (int s = 1; s <= k; ++s) {
                    if (s == i)
                        t.push_back(a2);
                    else if (s != i + 1)
                        t.push_back(tuple[s]);
                }
                chain_add(out, t, coeff * c * sign);
            }
            sign = -sign;
        }
        // (-1)^k a_k m
        Rational last_sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
        for (const auto &[m2, c] : mod.left_mul(tuple[k], tuple[0])) {
            BarTuple t;
            t.push_back(m2);
            t.insert(t.end(), tuple.begin() + 1, tuple.end() - 1);
            chain_add(out, t, coeff * c * last_sign);
        }
    }
    return out;
}

// --- materialized bar complexes ---------------------------------------------

// Optional slice filters: an exact total weight (for graded/weight slices)
// and a cap on the total filtration level. Arrays are per basis index.
struct BarSliceSpec {
    int k_max = 0;
    std::optional<int> exact_weight;
    std::optional<int> level_cap;
    std::vector<int> alg_weight, mod_weight;
    std::vector<int> alg_level, mod_level;
};

class BarComplex {
  public:
    int k_max() const { return static_cast<int>(bases_.size()) - 1; }
    int dim(int k) const
    {
        if (k < 0 || k > k_max())
            return 0;
        return static_cast<int>(bases_[k].size());
    }
    const std::vector<BarTuple> &basis(int k) const { return bases_[k]; }

    int index_of(int k, const BarTuple &t) const
    {
        auto it = index_[k].find(t);
        if (it == index_[k].end())
            throw FiltrationNotPreserved(
                "tuple escapes the materialized slice", tuple_label(t));
        return it->second;
    }

    // boundary b_k : C_k -> C_{k-1}; index 0 holds a 0-row matrix
    const SparseMatrix &boundary(int k) const { return boundary_[k]; }

    // Level sum of a basis tuple (0 when no level data was supplied).
    int tuple_level(int k, int i) const { return levels_[k][i]; }

    Vec chain_to_vec(int k, const BarChain &chain) const
    {
        Vec v(dim(k), Rational(0));
        for (const auto &[t, c] : chain)
            v[index_of(k, t)] = c;
        return v;
    }

    static std::string tuple_label(const BarTuple &t)
    {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            s += (i ? "," : "") + std::to_string(t[i]);
        return s + ")";
    }

    template <class Alg, class Mod>
    static BarComplex build(const Alg &alg, const Mod &mod,
                            const BarSliceSpec &spec)
    {
        BarComplex out;
        for (int k = 0; k <= spec.k_max; ++k) {
            std::vector<BarTuple> basis;
            BarTuple cur(static_cast<std::size_t>(k) + 1, 0);
            enumerate(alg, mod, spec, cur, 0, 0, 0, basis);
            out.bases_.push_back(std::move(basis));
            out.index_.emplace_back();
            out.levels_.emplace_back();
            for (int i = 0; i < out.dim(k); ++i) {
                out.index_[k][out.bases_[k][i]] = i;
                int lvl = 0;
                if (!spec.mod_level.empty()) {
                    const BarTuple &t = out.bases_[k][i];
                    lvl = spec.mod_level[t[0]];
                    for (int s = 1; s <= k; ++s)
                        lvl += spec.alg_level[t[s]];
                }
                out.levels_[k].push_back(lvl);
            }
        }
        // boundary matrices
        out.boundary_.push_back(SparseMatrix(0, out.dim(0)));
        for (int k = 1; k <= spec.k_max; ++k) {
            SparseMatrix b(out.dim(k - 1), out.dim(k));
            for (int j = 0; j < out.dim(k); ++j) {
                BarChain one{{out.bases_[k][j], Rational(1)}};
                for (const auto &[t, c] :
                     hochschild_boundary(alg, mod, one))
                    b.add(out.index_of(k - 1, t), j, c);
            }
            out.boundary_.push_back(std::move(b));
        }
        return out;
    }

  private:
    template <class Alg, class Mod>
    static void enumerate(const Alg &alg, const Mod &mod,
                          const BarSliceSpec &spec, BarTuple &cur, int pos,
                          int weight_so_far, int level_so_far,
                          std::vector<BarTuple> &outbasis)
    {
        const int slots = static_cast<int>(cur.size());
        if (pos == slots) {
            if (spec.exact_weight && weight_so_far != *spec.exact_weight)
                return;
            outbasis.push_back(cur);
            return;
        }
        const int n = pos == 0 ? mod.dim() : alg.dim();
        for (int i = 0; i < n; ++i) {
            int w = weight_so_far, l = level_so_far;
            if (spec.exact_weight) {
                w += pos == 0 ? spec.mod_weight[i] : spec.alg_weight[i];
            }
            if (spec.level_cap) {
                l += pos == 0 ? spec.mod_level[i] : spec.alg_level[i];
                if (l > *spec.level_cap)
                    continue;
            }
            cur[pos] = i;
            enumerate(alg, mod, spec, cur, pos + 1, w, l, outbasis);
        }
        cur[pos] = 0;
    }

    std::vector<std::vector<BarTuple>> bases_;
    std::vector<std::map<BarTuple, int>> index_;
    std::vector<std::vector<int>> levels_;
    std::vector<SparseMatrix> boundary_;
};

// Homology of a materialized complex: H_k = ker b_k / im b_{k+1}. The top
// degree k_max is not reported (its incoming boundary is not materialized).
struct HomologySlot {
    int k = 0;
    int dim = 0;
    Subspace representatives;
};

inline std::vector<HomologySlot> complex_homology(const BarComplex &bc)
{
    std::vector<HomologySlot> out;
    for (int k = 0; k + 1 <= bc.k_max(); ++k) {
        Subspace cycles = k == 0 ? Subspace::full(bc.dim(0))
                                 : kernel(bc.boundary(k));
        Subspace boundaries = image(bc.boundary(k + 1));
        QuotientMap q(cycles, boundaries);
        out.push_back({k, q.dim(), q.representatives()});
    }
    return out;
}

// Full Hochschild homology of a finite-dimensional pair, dims and echelon
// representatives for k <= k_max.
template <class Alg, class Mod>
std::vector<HomologySlot> hochschild_homology(const Alg &alg, const Mod &mod,
                                              int k_max)
{
    BarSliceSpec spec;
    spec.k_max = k_max + 1;
    BarComplex bc = BarComplex::build(alg, mod, spec);
    return complex_homology(bc);
}

// --- filtered chain complexes ------------------------------------------------

// A bounded chain complex with a bounded exhaustive filtration per degree.
class FilteredChainComplex {
  public:
    FilteredChainComplex() = default;

    FilteredChainComplex(std::vector<int> dims,
                         std::vector<SparseMatrix> boundary,
                         std::vector<std::vector<Subspace>> filt)
        : dims_(std::move(dims)), boundary_(std::move(boundary)),
          filt_(std::move(filt))
    {
        p_top_ = 0;
        for (const auto &f : filt_)
            p_top_ = std::max(p_top_, static_cast<int>(f.size()) - 1);
        for (std::size_t k = 0; k < filt_.size(); ++k) {
            if (filt_[k].empty() || filt_[k].back().dim() != dims_[k])
                throw UnboundedFiltration(
                    "filtration is not exhaustive on degree " +
                    std::to_string(k));
        }
    }

    int k_max() const { return static_cast<int>(dims_.size()) - 1; }
    int p_top() const { return p_top_; }

    int dim(int k) const
    {
        if (k < 0 || k > k_max())
            return 0;
        return dims_[k];
    }

    // b_k : C_k -> C_{k-1}; zero-shaped outside the window
    SparseMatrix boundary(int k) const
    {
        if (k < 1 || k > k_max())
            return SparseMatrix(dim(k - 1), dim(k));
        return boundary_[k];
    }

    Subspace level(int k, int p) const
    {
        if (k < 0 || k > k_max())
            return Subspace::zero(0);
        if (p < 0)
            return Subspace::zero(dims_[k]);
        const auto &f = filt_[k];
        if (p >= static_cast<int>(f.size()))
            return f.back();
        return f[p];
    }

    // Boundary maps F_p into F_p; returns a witness string on failure.
    std::optional<std::string> filtration_preserved() const
    {
        for (int k = 1; k <= k_max(); ++k)
            for (int p = 0; p <= p_top_; ++p) {
                Subspace img = map_span(boundary_[k], level(k, p));
                if (!level(k - 1, p).contains(img))
                    return "b(F_" + std::to_string(p) + " C_" +
                           std::to_string(k) + ") leaves F_" +
                           std::to_string(p);
            }
        return std::nullopt;
    }

    std::vector<int> total_homology_dims() const
    {
        std::vector<int> out;
        for (int k = 0; k + 1 <= k_max(); ++k) {
            Subspace cycles =
                k == 0 ? Subspace::full(dim(0)) : kernel(boundary_[k]);
            Subspace boundaries = image(boundary_[k + 1]);
            QuotientMap q(cycles, boundaries);
            out.push_back(q.dim());
        }
        return out;
    }

  private:
    std::vector<int> dims_;
    std::vector<SparseMatrix> boundary_;
    std::vector<std::vector<Subspace>> filt_; // filt_[k][p]
    int p_top_ = 0;
};

// Filtration of the bar complex by total tuple level (the span of tuples
// whose component levels sum to at most p). Verifies that the boundary
// preserves it.
inline FilteredChainComplex filtered_from_bar(const BarComplex &bc,
                                              int p_cap_hint = -1)
{
    std::vector<int> dims;
    std::vector<SparseMatrix> boundary;
    std::vector<std::vector<Subspace>> filt;
    int p_top = 0;
    for (int k = 0; k <= bc.k_max(); ++k)
        for (int i = 0; i < bc.dim(k); ++i)
            p_top = std::max(p_top, bc.tuple_level(k, i));
    if (p_cap_hint >= 0)
        p_top = std::max(p_top, p_cap_hint);
    for (int k = 0; k <= bc.k_max(); ++k) {
        dims.push_back(bc.dim(k));
        boundary.push_back(bc.boundary(k));
        std::vector<Subspace> levels;
        for (int p = 0; p <= p_top; ++p) {
            std::vector<int> idx;
            for (int i = 0; i < bc.dim(k); ++i)
                if (bc.tuple_level(k, i) <= p)
                    idx.push_back(i);
            levels.push_back(Subspace::coordinate_span(bc.dim(k), idx));
        }
        filt.push_back(std::move(levels));
    }
    FilteredChainComplex fc(std::move(dims), std::move(boundary),
                            std::move(filt));
    if (auto witness = fc.filtration_preserved())
        throw FiltrationNotPreserved("bar filtration is not preserved",
                                     *witness);
    return fc;
}

} // namespace diffhull
