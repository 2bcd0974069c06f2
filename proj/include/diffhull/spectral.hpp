#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffhull/graded.hpp"
#include "diffhull/hochschild.hpp"
#include "diffhull/linalg.hpp"

namespace diffhull {

// One (p, q) cell of a page: representatives of
//   E^r_{p,q} = Z^r_{p,q} / ( Z^{r-1}_{p-1,q+1} + b Z^{r-1}_{p+r-1,q-r+2} ),
//   Z^r_{p,q} = { x in F_p C_{p+q} : b x in F_{p-r} C_{p+q-1} }.
struct SpectralCell {
    int p = 0, q = 0;
    QuotientMap cell;     // representatives live in C_{p+q} coordinates
    SparseMatrix d;       // d^r into the (p-r, q+r-1) cell
    int dim() const { return cell.dim(); }
};

class SpectralPage {
  public:
    int r = 0;
    std::map<std::pair<int, int>, SpectralCell> cells;

    int dim(int p, int q) const
    {
        auto it = cells.find({p, q});
        return it == cells.end() ? 0 : it->second.dim();
    }

    const SpectralCell *cell(int p, int q) const
    {
        auto it = cells.find({p, q});
        return it == cells.end() ? nullptr : &it->second;
    }

    // d^r composed with d^r vanishes cell-by-cell.
    bool differentials_square_to_zero() const
    {
        for (const auto &[pq, c] : cells) {
            auto tgt = cells.find({pq.first - r, pq.second + r - 1});
            if (tgt == cells.end())
                continue;
            if (!tgt->second.d.mul(c.d).is_zero())
                return false;
        }
        return true;
    }
};

// Spectral sequence of a bounded exhaustively filtered complex. Z-groups are
// cached across pages.
class SpectralEngine {
  public:
    explicit SpectralEngine(const FilteredChainComplex &fc) : fc_(&fc) {}

    const FilteredChainComplex &complex() const { return *fc_; }

    // Z^r_{p,q}; r = -1 is the convention Z^{-1}_{p,q} = F_p C_{p+q}.
    const Subspace &z_group(int r, int p, int q)
    {
        auto key = std::make_tuple(r, p, q);
        auto it = zcache_.find(key);
        if (it != zcache_.end())
            return it->second;
        const int k = p + q;
        Subspace z;
        if (k < 0 || k > fc_->k_max() || p < 0) {
            z = Subspace::zero(fc_->dim(k));
        } else if (r < 0) {
            z = fc_->level(k, p);
        } else {
            z = intersect(preimage(fc_->boundary(k), fc_->level(k - 1, p - r)),
                          fc_->level(k, p));
        }
        return zcache_.emplace(key, std::move(z)).first->second;
    }

    SpectralPage page(int r)
    {
        SpectralPage out;
        out.r = r;
        const int p_top = fc_->p_top();
        for (int k = 0; k <= fc_->k_max(); ++k)
            for (int p = 0; p <= p_top; ++p) {
                int q = k - p;
                Subspace num = z_group(r, p, q);
                Subspace div = z_group(r - 1, p - 1, q + 1)
                                   .sum(map_span(fc_->boundary(k + 1),
                                                 z_group(r - 1, p + r - 1,
                                                         q - r + 2)));
                SpectralCell cell;
                cell.p = p;
                cell.q = q;
                cell.cell = QuotientMap(num, div);
                out.cells.emplace(std::make_pair(p, q), std::move(cell));
            }
        // differentials, now that every cell exists
        for (auto &[pq, cell] : out.cells) {
            auto [p, q] = pq;
            const int k = p + q;
            auto tgt = out.cells.find({p - r, q + r - 1});
            int tdim = tgt == out.cells.end() ? 0 : tgt->second.dim();
            SparseMatrix d(tdim, cell.dim());
            if (tdim > 0 && cell.dim() > 0) {
                const auto &reps = cell.cell.representatives();
                for (int j = 0; j < cell.dim(); ++j) {
                    Vec img = fc_->boundary(k).apply(
                        to_dense(reps.basis()[j], fc_->dim(k)));
                    Vec coords = tgt->second.cell.coords(to_sparse(img));
                    for (int i = 0; i < tdim; ++i)
                        if (!coords[i].is_zero())
                            d.set(i, j, coords[i]);
                }
            }
            cell.d = std::move(d);
        }
        return out;
    }

  private:
    const FilteredChainComplex *fc_;
    std::map<std::tuple<int, int, int>, Subspace> zcache_;
};

// --- convergence -------------------------------------------------------------

struct ConvergenceReport {
    bool stabilized = false;
    int stable_at = -1;
    std::vector<int> einf_totals;   // sum over p of dim E^inf_{p, n-p}
    std::vector<int> homology_dims; // dim H_n(total complex)
    bool pass = false;
};

// Detect stabilization (equal dims and vanishing differentials on pages r,
// r+1) by r_stop, then compare E^inf totals with the homology of the total
// complex for n <= k_max - 1.
inline ConvergenceReport converge_check(const FilteredChainComplex &fc,
                                        int r_stop)
{
    SpectralEngine eng(fc);
    ConvergenceReport rep;
    std::optional<SpectralPage> prev;
    SpectralPage stable;
    for (int r = 0; r <= r_stop; ++r) {
        SpectralPage cur = eng.page(r);
        bool zero_d = true;
        for (const auto &[pq, c] : cur.cells)
            if (!c.d.is_zero())
                zero_d = false;
        if (prev && zero_d) {
            bool same = true;
            for (const auto &[pq, c] : cur.cells)
                if (prev->dim(pq.first, pq.second) != c.dim())
                    same = false;
            if (same) {
                rep.stabilized = true;
                rep.stable_at = r;
                stable = std::move(cur);
                break;
            }
        }
        prev = std::move(cur);
    }
    if (!rep.stabilized)
        throw NotStabilized("pages did not stabilize by r = " +
                            std::to_string(r_stop));
    rep.homology_dims = fc.total_homology_dims();
    rep.pass = true;
    for (int n = 0; n + 1 <= fc.k_max(); ++n) {
        int total = 0;
        for (int p = 0; p <= fc.p_top(); ++p)
            total += stable.dim(p, n - p);
        rep.einf_totals.push_back(total);
        if (total != rep.homology_dims[n])
            rep.pass = false;
    }
    return rep;
}

// --- E^1 comparison ----------------------------------------------------------

struct E1Mismatch {
    int p = 0, q = 0;
    int spectral_dim = 0;
    int graded_homology_dim = 0;
};

struct E1Report {
    std::vector<E1Mismatch> mismatches;
    int cells_compared = 0;
    bool pass() const { return mismatches.empty(); }
};

// Compare E^1_{p,q} of the filtered complex against H_{p+q}(Gr A, Gr M)_p,
// the degree-p slice of the bar homology of the associated graded. The
// comparison stays inside the window p + q <= k_max - 1.
template <class GrAlg, class GrMod>
E1Report compare_e1(const FilteredChainComplex &fc, const GrAlg &gr_alg,
                    const GrMod &gr_mod, const std::vector<int> &alg_degree,
                    const std::vector<int> &mod_degree, int p_limit = -1)
{
    SpectralEngine eng(fc);
    SpectralPage e1 = eng.page(1);
    E1Report rep;
    const int p_top = p_limit >= 0 ? p_limit : fc.p_top();
    for (int p = 0; p <= p_top; ++p) {
        BarSliceSpec spec;
        spec.k_max = fc.k_max();
        spec.exact_weight = p;
        spec.alg_weight = alg_degree;
        spec.mod_weight = mod_degree;
        BarComplex slice = BarComplex::build(gr_alg, gr_mod, spec);
        auto hom = complex_homology(slice);
        for (int k = 0; k + 1 <= fc.k_max(); ++k) {
            int lhs = e1.dim(p, k - p);
            int rhs = hom[k].dim;
            ++rep.cells_compared;
            if (lhs != rhs)
                rep.mismatches.push_back({p, k - p, lhs, rhs});
        }
    }
    return rep;
}

} // namespace diffhull
