#pragma once

#include <map>
#include <vector>

#include "diffhull/hkr.hpp"
#include "diffhull/linalg.hpp"
#include "diffhull/presented.hpp"

namespace diffhull {

// Degree slice of N (x)_B Omega^k for a presented graded algebra B with
// N = B. Ambient basis: (coefficient monomial, dv-mask) pairs of the right
// degree; relations: coefficient multiples of the relation polynomials and
// multiples of d(relation) wedged into the remaining differentials. For a
// free polynomial ring the slice is just the enumerated basis.
struct KaehlerSlice {
    int k = 0;
    int degree = 0;
    std::vector<FormKey> basis; // ambient pairs, sorted
    Subspace relation_span;
    Subspace representatives;
    bool truncated = false;

    int dim() const { return representatives.dim(); }
};

inline std::vector<FormKey> enumerate_form_basis(
    const PresentedGradedAlgebra &b, int k, int d)
{
    const PolyRing &ring = b.ring();
    std::vector<FormKey> out;
    std::vector<int> vars(ring.vars());
    for (int i = 0; i < ring.vars(); ++i)
        vars[i] = i;
    // iterate k-subsets as masks, ascending
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << ring.vars()); ++m)
        if (mask_size(m) == k)
            masks.push_back(m);
    for (unsigned m : masks) {
        int dmask = 0;
        for (int v : mask_vars(m))
            dmask += ring.degrees[v];
        if (dmask > d)
            continue;
        for (const auto &mono : b.enumerate_degree(d - dmask))
            out.emplace_back(mono, m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline KaehlerSlice kaehler_slice(const PresentedGradedAlgebra &b, int k,
                                  int d)
{
    const PolyRing &ring = b.ring();
    KaehlerSlice slice;
    slice.k = k;
    slice.degree = d;
    slice.basis = enumerate_form_basis(b, k, d);
    std::map<FormKey, int> index;
    for (std::size_t i = 0; i < slice.basis.size(); ++i)
        index[slice.basis[i]] = static_cast<int>(i);
    const int n = static_cast<int>(slice.basis.size());

    std::vector<SparseRow> rel_rows;
    auto add_form_row = [&](const Form &f) {
        Vec dense(n, Rational(0));
        for (const auto &[key, c] : f) {
            auto it = index.find(key);
            if (it == index.end())
                return false;
            dense[it->second] += c;
        }
        SparseRow row = to_sparse(dense);
        if (!row.empty())
            rel_rows.push_back(std::move(row));
        return true;
    };

    for (const auto &r : b.relations()) {
        int rd = r.homogeneous_degree(ring);
        if (rd < 0)
            continue;
        // coefficient relations: (r * m) dv_S
        for (unsigned mask = 0; mask < (1u << ring.vars()); ++mask) {
            if (mask_size(mask) != k)
                continue;
            int dmask = 0;
            for (int v : mask_vars(mask))
                dmask += ring.degrees[v];
            if (d - dmask - rd < 0)
                continue;
            for (const auto &m : b.enumerate_degree(d - dmask - rd)) {
                Form f;
                for (const auto &[rm, rc] : r.terms()) {
                    Monomial prod = m;
                    for (int v = 0; v < ring.vars(); ++v)
                        prod[v] += rm[v];
                    form_add(f, prod, mask, rc);
                }
                if (!add_form_row(f))
                    slice.truncated = true;
            }
        }
        // differential relations: m * d(r) ^ dv_{S'}
        if (k >= 1) {
            for (unsigned mask = 0; mask < (1u << ring.vars()); ++mask) {
                if (mask_size(mask) != k - 1)
                    continue;
                int dmask = 0;
                for (int v : mask_vars(mask))
                    dmask += ring.degrees[v];
                if (d - dmask - rd < 0)
                    continue;
                for (const auto &m : b.enumerate_degree(d - dmask - rd)) {
                    Form f;
                    for (int v = 0; v < ring.vars(); ++v) {
                        Poly dr = r.derivative(v);
                        for (const auto &[dm, dc] : dr.terms()) {
                            unsigned nm;
                            int sign;
                            if (!wedge_prepend(mask, v, nm, sign))
                                continue;
                            Monomial prod = m;
                            for (int u = 0; u < ring.vars(); ++u)
                                prod[u] += dm[u];
                            form_add(f, prod, nm, dc * Rational(sign));
                        }
                    }
                    if (!add_form_row(f))
                        slice.truncated = true;
                }
            }
        }
    }
    slice.relation_span = Subspace::span_rows(std::move(rel_rows), n);
    QuotientMap q(Subspace::full(n), slice.relation_span);
    slice.representatives = q.representatives();
    return slice;
}

} // namespace diffhull
