#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffhull/hkr.hpp"
#include "diffhull/hochschild.hpp"
#include "diffhull/linalg.hpp"
#include "diffhull/ordered_algebra.hpp"
#include "diffhull/poly.hpp"

namespace diffhull {

// Free graded polynomial ring with a Poisson bracket given on generators and
// extended as a biderivation.
struct PoissonPolyRing {
    PolyRing ring;
    std::vector<std::vector<Poly>> gen_bracket; // gen_bracket[i][j] = {v_i,v_j}

    static PoissonPolyRing make(PolyRing r,
                                const std::vector<std::tuple<int, int, Poly>>
                                    &brackets)
    {
        PoissonPolyRing out;
        const int n = r.vars();
        out.gen_bracket.assign(n, std::vector<Poly>(n));
        out.ring = std::move(r);
        for (const auto &[i, j, p] : brackets) {
            out.gen_bracket[i][j] = p;
            Poly neg = p;
            neg *= Rational(-1);
            out.gen_bracket[j][i] = neg;
        }
        return out;
    }

    // { f, g } = sum_{u,v} df/du {u,v} dg/dv
    Poly bracket(const Poly &f, const Poly &g) const
    {
        const int n = ring.vars();
        Poly out;
        for (int u = 0; u < n; ++u) {
            Poly fu = f.derivative(u);
            if (fu.is_zero())
                continue;
            for (int v = 0; v < n; ++v) {
                if (gen_bracket[u][v].is_zero())
                    continue;
                Poly gv = g.derivative(v);
                if (gv.is_zero())
                    continue;
                out += fu * gen_bracket[u][v] * gv;
            }
        }
        return out;
    }

    // Degree homogeneity { B_p, B_q } in B_{p+q-1} on generators.
    bool bracket_graded() const
    {
        for (int i = 0; i < ring.vars(); ++i)
            for (int j = 0; j < ring.vars(); ++j) {
                if (gen_bracket[i][j].is_zero())
                    continue;
                int d = gen_bracket[i][j].homogeneous_degree(ring);
                if (d != ring.degrees[i] + ring.degrees[j] - 1)
                    return false;
            }
        return true;
    }

    // Jacobi on generator triples; a biderivation bracket is Poisson iff
    // this holds.
    bool jacobi_on_generators() const
    {
        const int n = ring.vars();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Poly vi = Poly::variable(i, n);
                    Poly vj = Poly::variable(j, n);
                    Poly vk = Poly::variable(k, n);
                    Poly s = bracket(vi, bracket(vj, vk)) +
                             bracket(vj, bracket(vk, vi)) +
                             bracket(vk, bracket(vi, vj));
                    if (!s.is_zero())
                        return false;
                }
        return true;
    }
};

// Which reading of the Def.-3 double sum to use: ordered pairs i < j, or all
// ordered pairs (which cancel pairwise by antisymmetry).
enum class PairSum { upper, all };

// The canonical boundary
//   d(n (x) db_1 ... db_k) = sum_i (-1)^{i-1} {n, b_i} (x) db_1 ...^i... db_k
//     + sum_{i<j} (-1)^{i+j} n (x) d{b_i,b_j} db_1 ...^i...^j... db_k
// evaluated on forms in generator coordinates.
inline Form canonical_boundary(const PoissonPolyRing &B, const Form &form,
                               PairSum mode = PairSum::upper)
{
    const int n = B.ring.vars();
    Form out;
    for (const auto &[key, coeff] : form) {
        const auto &[mono, mask] = key;
        std::vector<int> vars = mask_vars(mask);
        const int k = static_cast<int>(vars.size());
        Poly nmono = Poly::monomial(mono);
        // first sum
        for (int i = 0; i < k; ++i) {
            Poly br = B.bracket(nmono, Poly::variable(vars[i], n));
            if (br.is_zero())
                continue;
            unsigned rest = mask & ~(1u << vars[i]);
            Rational sign = (i % 2 == 0) ? Rational(1) : Rational(-1);
            for (const auto &[bm, bc] : br.terms())
                form_add(out, bm, rest, coeff * bc * sign);
        }
        // second sum
        auto second_term = [&](int i, int j, const Rational &sign) {
            const Poly &br = B.gen_bracket[vars[i]][vars[j]];
            if (br.is_zero())
                return;
            unsigned rest = mask & ~(1u << vars[i]) & ~(1u << vars[j]);
            for (int v = 0; v < n; ++v) {
                Poly dv = br.derivative(v);
                if (dv.is_zero())
                    continue;
                unsigned nm;
                int wsign;
                if (!wedge_prepend(rest, v, nm, wsign))
                    continue;
                for (const auto &[dm, dc] : dv.terms()) {
                    Monomial prod = mono;
                    for (int u = 0; u < n; ++u)
                        prod[u] += dm[u];
                    form_add(out, prod, nm,
                             coeff * dc * sign * Rational(wsign));
                }
            }
        };
        if (mode == PairSum::upper) {
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) {
                    Rational sign(((i + 1) + (j + 1)) % 2 == 0 ? 1 : -1);
                    second_term(i, j, sign);
                }
        } else {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    if (i == j)
                        continue;
                    Rational sign(((i + 1) + (j + 1)) % 2 == 0 ? 1 : -1);
                    second_term(i, j, sign);
                }
        }
    }
    return out;
}

// --- materialized slices -----------------------------------------------------

// Slices of the canonical complex C^can_k(B, B) = B (x) Omega^k by grading
// degree (and optionally by weight), under a total exponent budget. The
// boundary maps a slice into the (k-1, d-1) slice of the same weight.
class CanonicalComplex {
  public:
    CanonicalComplex(PoissonPolyRing B, int k_max, int d_max, int exp_cap,
                     PairSum mode = PairSum::upper,
                     std::optional<int> weight = std::nullopt)
        : B_(std::move(B)), k_max_(k_max), d_max_(d_max), exp_cap_(exp_cap),
          mode_(mode), weight_(weight)
    {
        if (!B_.bracket_graded())
            throw AxiomViolation("generator brackets are not homogeneous of "
                                 "degree -1");
        for (int k = 0; k <= k_max_ + 1; ++k) {
            slices_.emplace_back();
            for (int d = 0; d <= d_max_ + 1; ++d)
                slices_[k].push_back(build_slice(k, d));
        }
        for (int k = 0; k <= k_max_ + 1; ++k) {
            boundary_.emplace_back();
            for (int d = 0; d <= d_max_ + 1; ++d)
                boundary_[k].push_back(build_boundary(k, d));
        }
    }

    const PoissonPolyRing &poisson_ring() const { return B_; }
    int k_max() const { return k_max_; }
    int d_max() const { return d_max_; }

    int slice_dim(int k, int d) const
    {
        if (k < 0 || d < 0 || k > k_max_ + 1 || d > d_max_ + 1)
            return 0;
        return static_cast<int>(slices_[k][d].size());
    }

    const std::vector<FormKey> &slice_basis(int k, int d) const
    {
        return slices_[k][d];
    }

    // boundary matrix (k, d) -> (k-1, d-1)
    const SparseMatrix &boundary(int k, int d) const
    {
        return boundary_[k][d];
    }

    bool d_squared_zero() const
    {
        for (int k = 2; k <= k_max_ + 1; ++k)
            for (int d = 2; d <= d_max_ + 1; ++d) {
                if (!boundary(k - 1, d - 1).mul(boundary(k, d)).is_zero())
                    return false;
            }
        return true;
    }

    // H^can_k(B,B)_d = ker d(k,d) / im d(k+1,d+1)
    int homology_dim(int k, int d) const
    {
        if (k > k_max_ || d > d_max_)
            throw CutoffExceeded("homology slice beyond the window");
        Subspace cycles = kernel(boundary(k, d));
        Subspace boundaries = image(boundary(k + 1, d + 1));
        return QuotientMap(cycles, boundaries).dim();
    }

    Vec form_to_vec(int k, int d, const Form &f) const
    {
        std::map<FormKey, int> index;
        for (std::size_t i = 0; i < slices_[k][d].size(); ++i)
            index[slices_[k][d][i]] = static_cast<int>(i);
        Vec v(slice_dim(k, d), Rational(0));
        for (const auto &[key, c] : f) {
            auto it = index.find(key);
            if (it == index.end())
                throw CutoffExceeded("form lies outside the materialized "
                                     "slice");
            v[it->second] = c;
        }
        return v;
    }

  private:
    std::vector<FormKey> build_slice(int k, int d) const
    {
        std::vector<FormKey> out;
        const int n = B_.ring.vars();
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (mask_size(mask) != k)
                continue;
            int dmask = 0, wmask = 0;
            for (int v : mask_vars(mask)) {
                dmask += B_.ring.degrees[v];
                wmask += B_.ring.weights.empty() ? 0 : B_.ring.weights[v];
            }
            if (dmask > d)
                continue;
            Monomial cur(n, 0);
            collect_monomials(cur, 0, d - dmask, k, mask, wmask, out);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void collect_monomials(Monomial &cur, int v, int remaining_degree, int k,
                           unsigned mask, int mask_weight,
                           std::vector<FormKey> &out) const
    {
        if (monomial_exponent_sum(cur) + k > exp_cap_)
            return;
        if (v == B_.ring.vars()) {
            if (remaining_degree != 0)
                return;
            if (weight_ &&
                B_.ring.monomial_weight(cur) + mask_weight != *weight_)
                return;
            out.emplace_back(cur, mask);
            return;
        }
        int dv = B_.ring.degrees[v];
        for (int e = 0;; ++e) {
            if (monomial_exponent_sum(cur) - cur[v] + e + k > exp_cap_)
                break;
            int used = e * dv;
            if (dv > 0 && used > remaining_degree)
                break;
            cur[v] = e;
            collect_monomials(cur, v + 1, remaining_degree - used, k, mask,
                              mask_weight, out);
        }
        cur[v] = 0;
    }

    SparseMatrix build_boundary(int k, int d)
    {
        const auto &src = slices_[k][d];
        const std::vector<FormKey> &tgt =
            (k >= 1 && d >= 1) ? slices_[k - 1][d - 1] : empty_;
        std::map<FormKey, int> index;
        for (std::size_t i = 0; i < tgt.size(); ++i)
            index[tgt[i]] = static_cast<int>(i);
        SparseMatrix m(static_cast<int>(tgt.size()),
                       static_cast<int>(src.size()));
        for (std::size_t j = 0; j < src.size(); ++j) {
            Form one{{src[j], Rational(1)}};
            Form img = canonical_boundary(B_, one, mode_);
            for (const auto &[key, c] : img) {
                // the boundary must drop the grading degree by exactly 1
                int deg = B_.ring.monomial_degree(key.first);
                for (int v : mask_vars(key.second))
                    deg += B_.ring.degrees[v];
                if (deg != d - 1)
                    throw AxiomViolation(
                        "canonical boundary is not homogeneous of degree -1");
                auto it = index.find(key);
                if (it == index.end())
                    throw CutoffExceeded(
                        "boundary escapes the materialized slices");
                m.add(it->second, static_cast<int>(j), c);
            }
        }
        return m;
    }

    PoissonPolyRing B_;
    int k_max_, d_max_, exp_cap_;
    PairSum mode_;
    std::optional<int> weight_;
    std::vector<std::vector<std::vector<FormKey>>> slices_;
    std::vector<std::vector<SparseMatrix>> boundary_;
    std::vector<FormKey> empty_;
};

// --- Theorem 1: the chain identity beta . d1 . gamma = canonical boundary ----

// Works over the Weyl fixture: the associated graded is the polynomial ring
// q[x, xi] with {xi, x} = 1, graded by xi-degree; the monomial lift of
// x^a xi^b is x^a d^b, whose exponent vector is literally the same.
struct ChainIdentityResult {
    Form lhs; // beta of the projected Hochschild boundary of the lifted chain
    Form rhs; // canonical boundary of the input form
    bool equal = false;
    int filtration_level = 0;
};

inline ChainIdentityResult theorem1_chain_identity(
    const TruncatedOrderedAlgebra &weyl, const PoissonPolyRing &gr,
    const Monomial &n, const std::vector<Monomial> &bs,
    PairSum mode = PairSum::upper)
{
    ChainIdentityResult out;

    // filtration level of the lifted chain: total xi-exponent
    int p = n[1];
    for (const auto &b : bs)
        p += b[1];
    out.filtration_level = p;

    // gamma on the monomial presentation, lifted along x^a xi^b -> x^a d^b
    PolyChain gamma_chain = antisymmetrize(n, bs);
    BarChain lifted;
    for (const auto &[tuple, c] : gamma_chain) {
        BarTuple t;
        for (const auto &m : tuple)
            t.push_back(weyl.index_of(m)); // throws CutoffExceeded if outside
        chain_add(lifted, t, c);
    }

    // Hochschild boundary in the Weyl algebra
    SelfBimodule self(weyl);
    BarChain boundary = hochschild_boundary(weyl, self, lifted);

    // project to Gr_{p-1}: keep level-(p-1) terms, reading monomials back
    PolyChain projected;
    for (const auto &[tuple, c] : boundary) {
        int level = 0;
        for (int idx : tuple)
            level += weyl.level(idx);
        if (level > p - 1)
            throw FiltrationNotPreserved(
                "hochschild boundary left the expected filtration level",
                BarComplex::tuple_label(tuple));
        if (level < p - 1)
            continue;
        std::vector<Monomial> t;
        for (int idx : tuple)
            t.push_back(weyl.exponents(idx));
        poly_chain_add(projected, t, c);
    }

    out.lhs = hkr_beta(projected);

    std::vector<Poly> bpolys;
    for (const auto &b : bs)
        bpolys.push_back(Poly::monomial(b));
    Form omega = wedge_expand(n, bpolys);
    out.rhs = canonical_boundary(gr, omega, mode);
    out.equal = out.lhs == out.rhs;
    return out;
}

// The graded Poisson ring of the Weyl fixture: q[x, xi], deg x = 0,
// deg xi = 1, weights (1, -1), {xi, x} = 1.
inline PoissonPolyRing weyl_graded_ring()
{
    PolyRing r;
    r.names = {"x", "xi"};
    r.degrees = {0, 1};
    r.weights = {1, -1};
    Poly one = Poly::constant(Rational(1), 2);
    return PoissonPolyRing::make(r, {{1, 0, one}});
}

// q[x, xi] with the symplectic bracket, graded by xi-degree.
inline PoissonPolyRing symplectic_plane_ring()
{
    return weyl_graded_ring();
}

// Free q[e, h, f] with the sl2 linear bracket {h,e} = 2e, {f,e} = -h,
// {f,h} = 2f and degrees (0, 1, 2).
inline PoissonPolyRing sl2_kks_ring()
{
    PolyRing r;
    r.names = {"e", "h", "f"};
    r.degrees = {0, 1, 2};
    const int n = 3;
    Poly e = Poly::variable(0, n), h = Poly::variable(1, n),
         f = Poly::variable(2, n);
    Poly me = e, mh = h, mf = f;
    me *= Rational(2);
    mh *= Rational(-1);
    mf *= Rational(2);
    return PoissonPolyRing::make(r, {
                                        {1, 0, me}, // {h, e} = 2e
                                        {2, 0, mh}, // {f, e} = -h
                                        {2, 1, mf}, // {f, h} = 2f
                                    });
}

// q[x, y] with the zero bracket, graded by total degree.
inline PoissonPolyRing zero_bracket_plane_ring()
{
    PolyRing r;
    r.names = {"x", "y"};
    r.degrees = {1, 1};
    r.weights = {1, 1};
    return PoissonPolyRing::make(r, {});
}

// A deliberately non-Poisson bracket on q[u, v, w] (degrees 1): Jacobi fails,
// and the canonical "boundary" no longer squares to zero.
inline PoissonPolyRing jacobi_violating_ring()
{
    PolyRing r;
    r.names = {"u", "v", "w"};
    r.degrees = {1, 1, 1};
    const int n = 3;
    Poly u = Poly::variable(0, n), w = Poly::variable(2, n);
    return PoissonPolyRing::make(r, {
                                        {0, 1, w}, // {u, v} = w
                                        {1, 2, u}, // {v, w} = u
                                        {2, 0, u}, // {w, u} = u
                                    });
}

} // namespace diffhull
