#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffhull/linalg.hpp"
#include "diffhull/poly.hpp"

namespace diffhull {

// Finitely presented graded commutative algebra: variables with non-negative
// degrees and homogeneous relation polynomials. Degree slices are computed by
// linear algebra on monomials under per-variable exponent caps; caps come
// from the grading for positive-degree variables and from pure-power
// relations (visible nilpotency) for degree-0 variables. With monomial
// relations the slices are exact; otherwise they are flagged truncated.
class PresentedGradedAlgebra {
  public:
    PresentedGradedAlgebra() = default;

    PresentedGradedAlgebra(PolyRing ring, std::vector<Poly> relations,
                           int degree_cutoff)
        : ring_(std::move(ring)), relations_(std::move(relations)),
          degree_cutoff_(degree_cutoff)
    {
        monomial_relations_ = true;
        for (const auto &r : relations_) {
            int d = r.homogeneous_degree(ring_);
            if (d == -2)
                throw AxiomViolation("relation is not homogeneous",
                                     r.str(ring_));
            if (r.terms().size() > 1)
                monomial_relations_ = false;
        }
        caps_.assign(ring_.vars(), 0);
        for (int v = 0; v < ring_.vars(); ++v) {
            if (ring_.degrees[v] > 0) {
                caps_[v] = degree_cutoff_ / ring_.degrees[v];
                continue;
            }
            // degree-0 variable: needs a visible nilpotency bound
            std::optional<int> bound;
            for (const auto &r : relations_) {
                if (r.terms().size() != 1)
                    continue;
                const Monomial &m = r.terms().begin()->first;
                bool pure = m[v] > 0;
                for (int u = 0; u < ring_.vars() && pure; ++u)
                    if (u != v && m[u] != 0)
                        pure = false;
                if (pure)
                    bound = bound ? std::min(*bound, m[v]) : m[v];
            }
            if (!bound)
                throw UnboundedFiltration(
                    "degree-0 variable \"" + ring_.names[v] +
                    "\" has no pure-power relation; slices are infinite");
            caps_[v] = *bound - 1;
        }
        // sanity of the presentation: B_0 contains 1 and 1 is not a relation
        DegreeSlice b0 = degree_basis(0);
        Monomial one(ring_.vars(), 0);
        bool has_one = false;
        for (int i = 0; i < b0.dim(); ++i)
            if (b0.monomials[b0.rep_indices[i]] == one)
                has_one = true;
        Vec onev(b0.monomials.size(), Rational(0));
        for (std::size_t i = 0; i < b0.monomials.size(); ++i)
            if (b0.monomials[i] == one)
                onev[i] = Rational(1);
        if (!has_one && b0.relation_span.contains(onev))
            throw AxiomViolation("the unit lies in the relation ideal");
        if (b0.dim() < 1)
            throw AxiomViolation("B_0 is zero");
    }

    const PolyRing &ring() const { return ring_; }
    const std::vector<Poly> &relations() const { return relations_; }
    int degree_cutoff() const { return degree_cutoff_; }
    const std::vector<int> &exponent_caps() const { return caps_; }
    bool exact_slices() const { return monomial_relations_; }

    struct DegreeSlice {
        int degree = 0;
        std::vector<Monomial> monomials; // ambient slice, sorted
        Subspace relation_span;          // inside the ambient slice
        Subspace representatives;        // complement, echelon
        std::vector<int> rep_indices;    // pivot monomial of each rep
        bool truncated = false;          // some relation multiples skipped

        int dim() const { return representatives.dim(); }
    };

    // Monomials of the given degree within the caps.
    std::vector<Monomial> enumerate_degree(int d) const
    {
        std::vector<Monomial> out;
        Monomial cur(ring_.vars(), 0);
        enumerate_rec(cur, 0, d, out);
        return out;
    }

    DegreeSlice degree_basis(int d) const
    {
        if (d > degree_cutoff_)
            throw CutoffExceeded("degree " + std::to_string(d) +
                                 " beyond the cutoff");
        DegreeSlice slice;
        slice.degree = d;
        slice.monomials = enumerate_degree(d);
        std::map<Monomial, int> index;
        for (std::size_t i = 0; i < slice.monomials.size(); ++i)
            index[slice.monomials[i]] = static_cast<int>(i);
        const int n = static_cast<int>(slice.monomials.size());

        std::vector<SparseRow> rel_rows;
        for (const auto &r : relations_) {
            int rd = r.homogeneous_degree(ring_);
            if (rd < 0 || rd > d)
                continue;
            for (const auto &m : enumerate_degree(d - rd)) {
                SparseRow row;
                bool in_range = true;
                Vec dense(n, Rational(0));
                for (const auto &[rm, rc] : r.terms()) {
                    Monomial prod = m;
                    for (int v = 0; v < ring_.vars(); ++v)
                        prod[v] += rm[v];
                    auto it = index.find(prod);
                    if (it == index.end()) {
                        in_range = false;
                        break;
                    }
                    dense[it->second] += rc;
                }
                if (!in_range) {
                    slice.truncated = true;
                    continue;
                }
                row = to_sparse(dense);
                if (!row.empty())
                    rel_rows.push_back(std::move(row));
            }
        }
        slice.relation_span = Subspace::span_rows(std::move(rel_rows), n);
        QuotientMap q(Subspace::full(n), slice.relation_span);
        slice.representatives = q.representatives();
        for (const auto &row : slice.representatives.basis())
            slice.rep_indices.push_back(row.front().first);
        return slice;
    }

  private:
    void enumerate_rec(Monomial &cur, int v, int remaining,
                       std::vector<Monomial> &out) const
    {
        if (v == ring_.vars()) {
            if (remaining == 0)
                out.push_back(cur);
            return;
        }
        int dv = ring_.degrees[v];
        for (int e = 0; e <= caps_[v]; ++e) {
            int used = e * dv;
            if (dv > 0 && used > remaining)
                break;
            cur[v] = e;
            enumerate_rec(cur, v + 1, remaining - used, out);
        }
        cur[v] = 0;
    }

    PolyRing ring_;
    std::vector<Poly> relations_;
    int degree_cutoff_ = 0;
    std::vector<int> caps_;
    bool monomial_relations_ = true;
};

} // namespace diffhull
