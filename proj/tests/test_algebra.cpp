#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffhull/algebra.hpp"
#include "diffhull/ordered_algebra.hpp"

using namespace diffhull;

namespace {

Vec basis_vec(int n, int i)
{
    Vec v(n, Rational(0));
    v[i] = Rational(1);
    return v;
}

// E_ij as a coefficient vector in matrix_algebra(n), 1-based indices
Vec unit_matrix(int n, int i, int j)
{
    return basis_vec(n * n, (i - 1) * n + (j - 1));
}

Subalgebra diagonal_subalgebra(int n)
{
    Subalgebra c;
    for (int i = 1; i <= n; ++i)
        c.vectors.push_back(unit_matrix(n, i, i));
    c.generators.resize(n);
    for (int i = 0; i < n; ++i)
        c.generators[i] = i;
    return c;
}

// span{I, J, ..., J^{n-1}} for the upper Jordan block J = sum E_{i,i+1}
Subalgebra jordan_subalgebra(const StructureConstantAlgebra &a, int n)
{
    Vec j(n * n, Rational(0));
    for (int i = 1; i < n; ++i)
        j[(i - 1) * n + i] = Rational(1);
    Subalgebra c;
    c.vectors.push_back(a.unit());
    Vec p = j;
    for (int k = 1; k < n; ++k) {
        c.vectors.push_back(p);
        p = alg_product(a, p, j);
    }
    c.generators = {1};
    return c;
}

} // namespace

TEST_CASE("matrix algebra structure")
{
    StructureConstantAlgebra a1 = matrix_algebra(1);
    CHECK(a1.dim() == 1);
    CHECK(alg_product(a1, basis_vec(1, 0), basis_vec(1, 0)) ==
          basis_vec(1, 0));
    a1.verify_axioms();

    StructureConstantAlgebra a2 = matrix_algebra(2);
    CHECK(alg_product(a2, unit_matrix(2, 1, 2), unit_matrix(2, 2, 1)) ==
          unit_matrix(2, 1, 1));
    Vec zero(4, Rational(0));
    CHECK(alg_product(a2, unit_matrix(2, 1, 2), unit_matrix(2, 1, 2)) == zero);
    a2.verify_axioms();

    StructureConstantAlgebra a3 = matrix_algebra(3);
    CHECK(a3.dim() == 9);
    a3.verify_axioms();
}

TEST_CASE("self-bimodule satisfies the bimodule axioms")
{
    StructureConstantAlgebra a = matrix_algebra(2);
    // materialize the explicit action constants and run the checker
    std::vector<std::string> labels;
    std::vector<std::vector<SparseRow>> left(4), right(4);
    for (int i = 0; i < 4; ++i) {
        labels.push_back(a.label(i));
        for (int m = 0; m < 4; ++m) {
            left[i].push_back(a.basis_product(i, m));
            right[i].push_back(a.basis_product(i, m));
        }
    }
    // right_[m][i] = f_m e_i
    std::vector<std::vector<SparseRow>> right_fixed(4);
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i)
            right_fixed[m].push_back(a.basis_product(m, i));
    Bimodule b(labels, left, right_fixed);
    b.verify_axioms(a);
}

TEST_CASE("maximal commutative subalgebras of M_2")
{
    StructureConstantAlgebra a = matrix_algebra(2);

    SUBCASE("diagonal: commutative with centralizer equal to itself")
    {
        auto rep = is_maximal_commutative(a, diagonal_subalgebra(2));
        CHECK(rep.commutative);
        CHECK(rep.centralizer_equals_span);
        CHECK(rep.closed_under_product);
        CHECK(rep.contains_unit);
    }

    SUBCASE("span{I, E12}: both flags true")
    {
        auto rep = is_maximal_commutative(a, jordan_subalgebra(a, 2));
        CHECK(rep.commutative);
        CHECK(rep.centralizer_equals_span);
    }

    SUBCASE("span{I}: commutative but not maximal")
    {
        Subalgebra c;
        c.vectors.push_back(a.unit());
        c.generators = {0};
        auto rep = is_maximal_commutative(a, c);
        CHECK(rep.commutative);
        CHECK(!rep.centralizer_equals_span);
    }
}

TEST_CASE("weyl truncation: normal ordering")
{
    TruncatedOrderedAlgebra w = weyl_truncated(4);
    // basis x^a d^b, a+b <= 4
    CHECK(w.dim() == 15);

    int ix = w.index_of({1, 0});
    int id = w.index_of({0, 1});

    SUBCASE("d * x = x d + 1")
    {
        SparseRow p = w.basis_product(id, ix);
        Vec v = to_dense(p, w.dim());
        CHECK(v[w.index_of({1, 1})] == Rational(1));
        CHECK(v[w.index_of({0, 0})] == Rational(1));
        int nonzero = 0;
        for (const auto &c : v)
            if (!c.is_zero())
                ++nonzero;
        CHECK(nonzero == 2);
    }

    SUBCASE("x * (x d) = x^2 d, already ordered")
    {
        SparseRow p = w.basis_product(ix, w.index_of({1, 1}));
        CHECK(p.size() == 1);
        CHECK(p[0].first == w.index_of({2, 1}));
        CHECK(p[0].second == Rational(1));
    }

    SUBCASE("d^2 * x = x d^2 + 2 d")
    {
        SparseRow p = w.basis_product(w.index_of({0, 2}), ix);
        Vec v = to_dense(p, w.dim());
        CHECK(v[w.index_of({1, 2})] == Rational(1));
        CHECK(v[w.index_of({0, 1})] == Rational(2));
    }

    SUBCASE("levels and weights")
    {
        CHECK(w.level(w.index_of({2, 1})) == 1);
        CHECK(w.level(w.index_of({0, 3})) == 3);
        CHECK(w.weight(w.index_of({2, 1})) == 1);
        CHECK(w.weight(w.index_of({1, 3})) == -2);
    }
}

TEST_CASE("weyl truncation: overflow is fail-loud, commutators cancel first")
{
    TruncatedOrderedAlgebra w = weyl_truncated(3);
    int top = w.index_of({2, 1}); // x^2 d, degree 3
    int ix = w.index_of({1, 0});
    CHECK_THROWS_AS(w.basis_product(ix, top), OverflowError);
    // [x, x^2 d] = -x^2 has degree 2, so the commutator is representable
    SparseRow c = w.basis_commutator(ix, top);
    Vec v = to_dense(c, w.dim());
    CHECK(v[w.index_of({2, 0})] == Rational(-1));
    // a commutator whose result genuinely overflows still throws
    int x3 = w.index_of({3, 0});
    int d3 = w.index_of({0, 3});
    CHECK_THROWS_AS(w.basis_commutator(x3, d3), OverflowError);
}

TEST_CASE("weyl rewrite is confluent on x^a d^b x^c words")
{
    TruncatedOrderedAlgebra w = weyl_truncated(6);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c) {
                std::vector<int> word;
                for (int t = 0; t < a; ++t)
                    word.push_back(0);
                for (int t = 0; t < b; ++t)
                    word.push_back(1);
                for (int t = 0; t < c; ++t)
                    word.push_back(0);
                CHECK(w.normal_form(word) == w.normal_form_rightmost(word));
            }
}

TEST_CASE("weyl product agrees with the action on polynomials")
{
    const int cutoff = 5;
    TruncatedOrderedAlgebra w = weyl_truncated(cutoff);

    // x^a d^b acting on x^t: falling factorial t(t-1)...(t-b+1) x^{t-b+a}
    auto act_monomial = [&](int a, int b, const Vec &poly) {
        Vec out(2 * cutoff + 1, Rational(0));
        for (int t = 0; t < static_cast<int>(poly.size()); ++t) {
            if (poly[t].is_zero() || t < b)
                continue;
            Rational c = poly[t];
            for (int s = 0; s < b; ++s)
                c *= Rational(t - s);
            out[t - b + a] += c;
        }
        return out;
    };
    auto act = [&](const SparseRow &op, const Vec &poly) {
        Vec out(2 * cutoff + 1, Rational(0));
        for (const auto &[i, c] : op) {
            Vec part = act_monomial(w.exponents(i)[0], w.exponents(i)[1],
                                    poly);
            for (std::size_t t = 0; t < out.size(); ++t)
                out[t] += c * part[t];
        }
        return out;
    };

    for (int i = 0; i < w.dim(); ++i)
        for (int j = 0; j < w.dim(); ++j) {
            if (w.degree(i) + w.degree(j) > cutoff)
                continue;
            SparseRow prod = w.basis_product(i, j);
            for (int t = 0; t <= cutoff; ++t) {
                Vec xt(2 * cutoff + 1, Rational(0));
                xt[t] = Rational(1);
                Vec via_product = act(prod, xt);
                Vec composed =
                    act({{i, Rational(1)}}, act({{j, Rational(1)}}, xt));
                CHECK(via_product == composed);
            }
        }
}

TEST_CASE("polynomial slice of the weyl algebra")
{
    TruncatedOrderedAlgebra w = weyl_truncated(6);
    Subalgebra c = power_subalgebra(w, 0, true);
    CHECK(c.count() == 7); // 1, x, ..., x^6
    CHECK(c.generators.size() == 1);
    auto rep = is_maximal_commutative(w, c);
    CHECK(rep.commutative);
    CHECK(rep.centralizer_equals_span);
    CHECK(rep.contains_unit);
    CHECK(rep.up_to_cutoff); // high products past the cutoff were skipped
}

TEST_CASE("commutative truncated polynomials")
{
    TruncatedOrderedAlgebra p = commutative_truncated({"x", "y"}, 3);
    CHECK(p.dim() == 10);
    int ix = p.index_of({1, 0});
    int iy = p.index_of({0, 1});
    SparseRow xy = p.basis_product(ix, iy);
    SparseRow yx = p.basis_product(iy, ix);
    CHECK(xy == yx);
    CHECK(p.basis_commutator(ix, iy).empty());
    CHECK(p.level(p.index_of({2, 1})) == 3);
}
