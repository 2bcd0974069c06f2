#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "diffhull/algebra.hpp"
#include "diffhull/linalg.hpp"

namespace diffhull {

// Degree-truncated algebra on ordered generators g_0 < g_1 < ... with the
// Weyl-family rewrite rule
//
//     g_j g_i  ->  g_i g_j + kappa(i,j) * 1      (j > i),
//
// kappa a rational constant. Basis: normally ordered monomials of total
// degree <= cutoff. Word arithmetic is exact; only conversion of a result to
// the basis can overflow, and plain products are fail-loud: a product whose
// expansion contains a term past the cutoff raises Overflow. Commutators
// cancel at the word level first, so [c,m] is available whenever the result
// itself fits.
class TruncatedOrderedAlgebra {
  public:
    struct Generator {
        std::string name;
        int level = 0;  // filtration level contribution
        int weight = 0; // grading weight contribution (for slicing)
    };

    using Expo = std::vector<int>;
    using WordSum = std::map<Expo, Rational>; // normally ordered terms

    TruncatedOrderedAlgebra(std::vector<Generator> gens,
                            std::vector<std::vector<Rational>> kappa,
                            int cutoff)
        : gens_(std::move(gens)), kappa_(std::move(kappa)), cutoff_(cutoff)
    {
        if (cutoff_ < 0)
            throw DimensionMismatch("cutoff must be non-negative");
        enumerate_basis();
        build_table();
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    int cutoff() const { return cutoff_; }
    int generator_count() const { return static_cast<int>(gens_.size()); }
    const std::string &generator_name(int g) const { return gens_[g].name; }

    const std::string &label(int i) const { return labels_[i]; }
    const Expo &exponents(int i) const { return basis_[i]; }

    int degree(int i) const
    {
        return std::accumulate(basis_[i].begin(), basis_[i].end(), 0);
    }
    int level(int i) const
    {
        int s = 0;
        for (int g = 0; g < generator_count(); ++g)
            s += basis_[i][g] * gens_[g].level;
        return s;
    }
    int weight(int i) const
    {
        int s = 0;
        for (int g = 0; g < generator_count(); ++g)
            s += basis_[i][g] * gens_[g].weight;
        return s;
    }

    int index_of(const Expo &e) const
    {
        auto it = index_.find(e);
        if (it == index_.end())
            throw CutoffExceeded("monomial outside the truncation",
                                 expo_label(e));
        return it->second;
    }
    std::optional<int> try_index_of(const Expo &e) const
    {
        auto it = index_.find(e);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    Vec unit() const
    {
        Vec u(dim(), Rational(0));
        u[index_.at(Expo(gens_.size(), 0))] = Rational(1);
        return u;
    }

    SparseRow basis_product(int i, int j) const
    {
        const auto &cell = table_[i][static_cast<std::size_t>(j)];
        if (!cell)
            throw OverflowError("product escapes the cutoff",
                                label(i) + " * " + label(j));
        return *cell;
    }

    SparseRow basis_commutator(int i, int j) const
    {
        const auto &cell = comm_table_[i][static_cast<std::size_t>(j)];
        if (!cell)
            throw OverflowError("commutator escapes the cutoff",
                                "[" + label(i) + ", " + label(j) + "]");
        return *cell;
    }

    // Exact normal form of an arbitrary word (generator index sequence).
    WordSum normal_form(const std::vector<int> &word) const
    {
        std::map<std::vector<int>, WordSum> memo;
        return nf(word, memo);
    }

    // Same rewrite system driven from the other end; used by the confluence
    // check.
    WordSum normal_form_rightmost(const std::vector<int> &word) const
    {
        WordSum out;
        std::map<std::vector<int>, Rational> pending{{word, Rational(1)}};
        while (!pending.empty()) {
            auto it = pending.begin();
            std::vector<int> w = it->first;
            Rational c = it->second;
            pending.erase(it);
            int k = -1;
            for (int t = static_cast<int>(w.size()) - 2; t >= 0; --t)
                if (w[t] > w[t + 1]) {
                    k = t;
                    break;
                }
            if (k < 0) {
                Expo e(gens_.size(), 0);
                for (int g : w)
                    ++e[g];
                out[e] += c;
                if (out[e].is_zero())
                    out.erase(e);
                continue;
            }
            int hi = w[k], lo = w[k + 1];
            std::vector<int> swapped = w;
            std::swap(swapped[k], swapped[k + 1]);
            pending[swapped] += c;
            if (pending[swapped].is_zero())
                pending.erase(swapped);
            const Rational &kap = kappa_[lo][hi];
            if (!kap.is_zero()) {
                std::vector<int> contracted;
                contracted.reserve(w.size() - 2);
                for (int t = 0; t < static_cast<int>(w.size()); ++t)
                    if (t != k && t != k + 1)
                        contracted.push_back(w[t]);
                pending[contracted] += c * kap;
                if (pending[contracted].is_zero())
                    pending.erase(contracted);
            }
        }
        return out;
    }

    std::vector<int> word_of(const Expo &e) const
    {
        std::vector<int> w;
        for (int g = 0; g < generator_count(); ++g)
            for (int t = 0; t < e[g]; ++t)
                w.push_back(g);
        return w;
    }

    // Basis conversion of an exact word sum; throws on any out-of-cutoff term.
    SparseRow to_basis(const WordSum &ws) const
    {
        Vec out(dim(), Rational(0));
        for (const auto &[e, c] : ws) {
            auto idx = try_index_of(e);
            if (!idx)
                throw OverflowError("term escapes the cutoff", expo_label(e));
            out[*idx] += c;
        }
        return to_sparse(out);
    }

    std::string expo_label(const Expo &e) const
    {
        std::string s;
        for (int g = 0; g < generator_count(); ++g) {
            if (e[g] == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += gens_[g].name;
            if (e[g] > 1)
                s += "^" + std::to_string(e[g]);
        }
        return s.empty() ? "1" : s;
    }

  private:
    WordSum nf(const std::vector<int> &word,
               std::map<std::vector<int>, WordSum> &memo) const
    {
        auto it = memo.find(word);
        if (it != memo.end())
            return it->second;
        int k = -1;
        for (int t = 0; t + 1 < static_cast<int>(word.size()); ++t)
            if (word[t] > word[t + 1]) {
                k = t;
                break;
            }
        WordSum out;
        if (k < 0) {
            Expo e(gens_.size(), 0);
            for (int g : word)
                ++e[g];
            out[e] = Rational(1);
        } else {
            int hi = word[k], lo = word[k + 1];
            std::vector<int> swapped = word;
            std::swap(swapped[k], swapped[k + 1]);
            out = nf(swapped, memo);
            const Rational &kap = kappa_[lo][hi];
            if (!kap.is_zero()) {
                std::vector<int> contracted;
                contracted.reserve(word.size() - 2);
                for (int t = 0; t < static_cast<int>(word.size()); ++t)
                    if (t != k && t != k + 1)
                        contracted.push_back(word[t]);
                for (const auto &[e, c] : nf(contracted, memo)) {
                    out[e] += kap * c;
                    if (out[e].is_zero())
                        out.erase(e);
                }
            }
        }
        memo[word] = out;
        return out;
    }

    void enumerate_basis()
    {
        // graded lexicographic enumeration, degree then lex
        Expo e(gens_.size(), 0);
        for (int d = 0; d <= cutoff_; ++d)
            enumerate_degree(e, 0, d);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            index_[basis_[i]] = static_cast<int>(i);
            labels_.push_back(expo_label(basis_[i]));
        }
    }

    void enumerate_degree(Expo &e, int g, int rem)
    {
        if (g == generator_count() - 1) {
            e[g] = rem;
            basis_.push_back(e);
            e[g] = 0;
            return;
        }
        for (int t = rem; t >= 0; --t) {
            e[g] = t;
            enumerate_degree(e, g + 1, rem - t);
        }
        e[g] = 0;
    }

    void build_table()
    {
        const int n = dim();
        table_.assign(n, std::vector<std::optional<SparseRow>>(
                             static_cast<std::size_t>(n)));
        comm_table_.assign(n, std::vector<std::optional<SparseRow>>(
                                  static_cast<std::size_t>(n)));
        std::map<std::vector<int>, WordSum> memo;
        for (int i = 0; i < n; ++i) {
            std::vector<int> wi = word_of(basis_[i]);
            for (int j = 0; j < n; ++j) {
                std::vector<int> w = wi;
                std::vector<int> wj = word_of(basis_[j]);
                w.insert(w.end(), wj.begin(), wj.end());
                WordSum prod = nf(w, memo);
                table_[i][j] = to_basis_opt(prod);
                // commutator: cancel at the word level, then convert
                std::vector<int> wrev = wj;
                wrev.insert(wrev.end(), wi.begin(), wi.end());
                WordSum diff = prod;
                for (const auto &[e, c] : nf(wrev, memo)) {
                    diff[e] -= c;
                    if (diff[e].is_zero())
                        diff.erase(e);
                }
                comm_table_[i][j] = to_basis_opt(diff);
            }
        }
    }

    std::optional<SparseRow> to_basis_opt(const WordSum &ws) const
    {
        Vec out(dim(), Rational(0));
        for (const auto &[e, c] : ws) {
            auto idx = try_index_of(e);
            if (!idx)
                return std::nullopt;
            out[*idx] += c;
        }
        return to_sparse(out);
    }

    std::vector<Generator> gens_;
    std::vector<std::vector<Rational>> kappa_; // kappa_[i][j], i < j
    int cutoff_ = 0;
    std::vector<Expo> basis_;
    std::map<Expo, int> index_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::optional<SparseRow>>> table_;
    std::vector<std::vector<std::optional<SparseRow>>> comm_table_;
};

// Weyl algebra truncation: generators x and d with d x = x d + 1. The
// filtration level of x^a d^b is b (its order as a differential operator),
// the slicing weight is a - b.
inline TruncatedOrderedAlgebra weyl_truncated(int cutoff)
{
    std::vector<TruncatedOrderedAlgebra::Generator> gens = {
        {"x", 0, 1},
        {"d", 1, -1},
    };
    std::vector<std::vector<Rational>> kappa(2,
                                             std::vector<Rational>(2, 0L));
    kappa[0][1] = Rational(1);
    return TruncatedOrderedAlgebra(std::move(gens), std::move(kappa), cutoff);
}

// Commutative truncated polynomial algebra on the given variables, filtered
// and sliced by total degree.
inline TruncatedOrderedAlgebra
commutative_truncated(const std::vector<std::string> &names, int cutoff)
{
    std::vector<TruncatedOrderedAlgebra::Generator> gens;
    for (const auto &n : names)
        gens.push_back({n, 1, 1});
    std::vector<std::vector<Rational>> kappa(
        names.size(), std::vector<Rational>(names.size(), 0L));
    return TruncatedOrderedAlgebra(std::move(gens), std::move(kappa), cutoff);
}

// The polynomial subalgebra spanned by powers of one generator, with that
// generator as the single ad-generator. For the Weyl fixture this is the
// q[x] slice, maximal commutative by assumption (recorded, not provable at a
// finite cutoff).
inline Subalgebra power_subalgebra(const TruncatedOrderedAlgebra &a, int gen,
                                   bool assume_maximal)
{
    Subalgebra c;
    c.assume_maximal = assume_maximal;
    c.note = assume_maximal
                 ? "maximality of the polynomial slice assumed beyond cutoff"
                 : "";
    int unit_like = -1;
    for (int i = 0; i < a.dim(); ++i) {
        const auto &e = a.exponents(i);
        bool pure = true;
        for (int g = 0; g < a.generator_count(); ++g)
            if (g != gen && e[g] != 0)
                pure = false;
        if (!pure)
            continue;
        Vec v(a.dim(), Rational(0));
        v[i] = Rational(1);
        c.vectors.push_back(std::move(v));
        if (e[gen] == 1)
            unit_like = static_cast<int>(c.vectors.size()) - 1;
    }
    if (unit_like >= 0)
        c.generators = {unit_like};
    return c;
}

} // namespace diffhull
