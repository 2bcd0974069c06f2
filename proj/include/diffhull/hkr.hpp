#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "diffhull/poly.hpp"

namespace diffhull {

// Differential form with polynomial coefficients over a free commutative
// ring: coefficient monomial plus a bitmask of wedged generator
// differentials. Masks are read in ascending variable order.
using FormKey = std::pair<Monomial, unsigned>;
using Form = std::map<FormKey, Rational>;

inline void form_add(Form &f, const Monomial &n, unsigned mask,
                     const Rational &c)
{
    if (c.is_zero())
        return;
    FormKey key{n, mask};
    auto it = f.find(key);
    if (it == f.end()) {
        f.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        f.erase(it);
}

inline int mask_size(unsigned mask)
{
    int k = 0;
    while (mask) {
        k += mask & 1u;
        mask >>= 1;
    }
    return k;
}

inline std::vector<int> mask_vars(unsigned mask)
{
    std::vector<int> out;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1u)
            out.push_back(v);
    return out;
}

// Append dv_j to a wedge with ascending mask: sign counts the transpositions
// past the variables greater than j. Returns 0 coefficient on a repeat.
inline bool wedge_append(unsigned mask, int j, unsigned &out_mask, int &sign)
{
    unsigned bit = 1u << j;
    if (mask & bit)
        return false;
    int greater = 0;
    for (int v = j + 1; v < 32; ++v)
        if (mask & (1u << v))
            ++greater;
    out_mask = mask | bit;
    sign = greater % 2 == 0 ? 1 : -1;
    return true;
}

// Prepend dv_j: sign counts the variables smaller than j.
inline bool wedge_prepend(unsigned mask, int j, unsigned &out_mask, int &sign)
{
    unsigned bit = 1u << j;
    if (mask & bit)
        return false;
    int smaller = 0;
    for (int v = 0; v < j; ++v)
        if (mask & (1u << v))
            ++smaller;
    out_mask = mask | bit;
    sign = smaller % 2 == 0 ? 1 : -1;
    return true;
}

// n (x) db_1 ... db_k expanded into generator-differential coordinates,
// with no normalization factor.
inline Form wedge_expand(const Monomial &n, const std::vector<Poly> &bs)
{
    Form f;
    form_add(f, n, 0u, Rational(1));
    for (const auto &b : bs) {
        Form next;
        for (const auto &[key, c] : f) {
            const auto &[m, mask] = key;
            for (int v = 0; v < static_cast<int>(m.size()); ++v) {
                Poly db = b.derivative(v);
                for (const auto &[dm, dc] : db.terms()) {
                    unsigned nm;
                    int sign;
                    if (!wedge_append(mask, v, nm, sign))
                        continue;
                    Monomial prod = m;
                    for (std::size_t t = 0; t < prod.size(); ++t)
                        prod[t] += dm[t];
                    form_add(next, prod, nm, c * dc * Rational(sign));
                }
            }
        }
        f = std::move(next);
    }
    return f;
}

// Chains of C_k(B, N) for free commutative B with N = B, written over
// monomial tuples (n, b_1, ..., b_k).
using PolyChain = std::map<std::vector<Monomial>, Rational>;

inline void poly_chain_add(PolyChain &dst, const std::vector<Monomial> &t,
                           const Rational &c)
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

// sum over permutations sgn(s) n (x) b_{s(1)} (x) ... (x) b_{s(k)}
inline PolyChain antisymmetrize(const Monomial &n,
                                const std::vector<Monomial> &bs)
{
    PolyChain out;
    std::vector<int> perm(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i)
        perm[i] = static_cast<int>(i);
    // iterate permutations with their parity
    std::vector<int> p = perm;
    auto parity = [](const std::vector<int> &v) {
        int inv = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] > v[j])
                    ++inv;
        return inv % 2 == 0 ? 1 : -1;
    };
    std::sort(p.begin(), p.end());
    do {
        std::vector<Monomial> tuple;
        tuple.push_back(n);
        for (int i : p)
            tuple.push_back(bs[i]);
        poly_chain_add(out, tuple, Rational(parity(p)));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Hochschild boundary over free commutative B with symmetric coefficients:
// tensor factors multiply by adding exponents.
inline PolyChain poly_bar_boundary(const PolyChain &chain)
{
    PolyChain out;
    auto merged = [](const Monomial &a, const Monomial &b) {
        Monomial m = a;
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] += b[i];
        return m;
    };
    for (const auto &[tuple, coeff] : chain) {
        const int k = static_cast<int>(tuple.size()) - 1;
        if (k < 1)
            continue;
        {
            std::vector<Monomial> t;
            t.push_back(merged(tuple[0], tuple[1]));
            t.insert(t.end(), tuple.begin() + 2, tuple.end());
            poly_chain_add(out, t, coeff);
        }
        Rational sign(-1);
        for (int i = 1; i < k; ++i) {
            std::vector<Monomial> t;
            t.push_back(tuple[0]);
            for (int s = 1; s <= k; ++s) {
                if (s == i)
                    t.push_back(merged(tuple[i], tuple[i + 1]));
                else if (s != i + 1)
                    t.push_back(tuple[s]);
            }
            poly_chain_add(out, t, coeff * sign);
            sign = -sign;
        }
        {
            std::vector<Monomial> t;
            t.push_back(merged(tuple[k], tuple[0]));
            t.insert(t.end(), tuple.begin() + 1, tuple.end() - 1);
            poly_chain_add(out, t,
                           coeff * (k % 2 == 0 ? Rational(1) : Rational(-1)));
        }
    }
    return out;
}

// beta(n (x) b_1 ... b_k) = 1/k! n (x)_B db_1 ... db_k
inline Form hkr_beta(const PolyChain &chain)
{
    Form out;
    for (const auto &[tuple, coeff] : chain) {
        const int k = static_cast<int>(tuple.size()) - 1;
        std::vector<Poly> bs;
        for (int i = 1; i <= k; ++i)
            bs.push_back(Poly::monomial(tuple[i]));
        Form w = wedge_expand(tuple[0], bs);
        Rational norm = coeff / Rational::factorial(k);
        for (const auto &[key, c] : w)
            form_add(out, key.first, key.second, c * norm);
    }
    return out;
}

// gamma(n (x)_B dv_{s_1} ... dv_{s_k}) = antisymmetrized chain, on forms in
// generator coordinates.
inline PolyChain hkr_gamma(const Form &form, int nvars)
{
    PolyChain out;
    for (const auto &[key, c] : form) {
        const auto &[n, mask] = key;
        std::vector<Monomial> bs;
        for (int v : mask_vars(mask)) {
            Monomial m(nvars, 0);
            m[v] = 1;
            bs.push_back(std::move(m));
        }
        for (const auto &[t, pc] : antisymmetrize(n, bs))
            poly_chain_add(out, t, pc * c);
    }
    return out;
}

} // namespace diffhull
