#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diffhull/linalg.hpp"

using namespace diffhull;

namespace {

SparseMatrix from_rows(const std::vector<std::vector<long>> &rows)
{
    int nr = static_cast<int>(rows.size());
    int nc = nr ? static_cast<int>(rows[0].size()) : 0;
    SparseMatrix m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j)
            if (rows[i][j] != 0)
                m.set(i, j, Rational(rows[i][j]));
    return m;
}

Vec dense(std::initializer_list<long> xs)
{
    Vec v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("rational arithmetic and serialization round-trip")
{
    Rational a(1, 3), b(2, 5);
    CHECK((a + b).str() == "11/15");
    CHECK((a * b).str() == "2/15");
    CHECK((a - a).is_zero());
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(-4, 8).str() == "-1/2");
    CHECK(Rational(3, -6).str() == "-1/2"); // denominator made positive

    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> num(-5000, 5000);
    std::uniform_int_distribution<long> den(1, 5000);
    for (int i = 0; i < 500; ++i) {
        Rational r(num(rng), den(rng));
        CHECK(Rational::parse(r.str()) == r);
    }
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK_THROWS_AS(Rational::parse("x/2"), ParseError);
}

TEST_CASE("kernel: trivial cases")
{
    SparseMatrix z(1, 1); // the zero map on Q
    CHECK(kernel(z).dim() == 1);

    CHECK(kernel(SparseMatrix::identity(3)).dim() == 0);

    // [[1,2],[2,4]] has kernel spanned by (-2,1)
    SparseMatrix m = from_rows({{1, 2}, {2, 4}});
    Subspace k = kernel(m);
    CHECK(k.dim() == 1);
    CHECK(k.contains(dense({-2, 1})));
}

TEST_CASE("rank-nullity on random sparse matrices up to 30x30")
{
    std::mt19937 rng(987654321);
    std::uniform_int_distribution<int> size(1, 30);
    std::uniform_int_distribution<int> val(-4, 4);
    std::uniform_int_distribution<int> fill(0, 9);
    for (int trial = 0; trial < 60; ++trial) {
        int nr = size(rng), nc = size(rng);
        SparseMatrix m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j)
                if (fill(rng) < 3)
                    m.set(i, j, Rational(val(rng)));
        Subspace ker = kernel(m);
        CHECK(rank(m) + ker.dim() == nc);
        // every kernel basis vector is annihilated
        for (const auto &row : ker.basis()) {
            Vec v = to_dense(row, nc);
            for (const auto &y : m.apply(v))
                CHECK(y.is_zero());
        }
    }
}

TEST_CASE("dense and sparse elimination agree")
{
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SparseRow> rows;
        int nr = 10, nc = 12;
        for (int i = 0; i < nr; ++i) {
            Vec v(nc, Rational(0));
            for (int j = 0; j < nc; ++j)
                v[j] = Rational(val(rng));
            rows.push_back(to_sparse(v));
        }
        Echelon a = detail::rref_dense(rows, nc);
        Echelon b = detail::rref_sparse(rows, nc);
        CHECK(a.pivots == b.pivots);
        CHECK(a.rows == b.rows);
    }
}

TEST_CASE("quotient: representatives, projection, idempotence")
{
    SUBCASE("ambient = sub gives the zero quotient")
    {
        Subspace w = Subspace::span({dense({1, 0}), dense({0, 1})}, 2);
        QuotientMap q = quotient(w, w);
        CHECK(q.dim() == 0);
        for (const auto &c : q.project(dense({3, 4})))
            CHECK(c.is_zero());
    }

    SUBCASE("Q^2 mod span(e1): project(a,b) = (0,b)")
    {
        Subspace amb = Subspace::full(2);
        Subspace sub = Subspace::span({dense({1, 0})}, 2);
        QuotientMap q = quotient(amb, sub);
        CHECK(q.dim() == 1);
        Vec p = q.project(dense({5, 7}));
        CHECK(p[0].is_zero());
        CHECK(p[1] == Rational(7));
    }

    SUBCASE("Q^3 mod span(e1+e2)")
    {
        Subspace amb = Subspace::full(3);
        Subspace sub = Subspace::span({dense({1, 1, 0})}, 3);
        QuotientMap q = quotient(amb, sub);
        CHECK(q.dim() == 2);
        for (const auto &c : q.project(dense({1, 1, 0})))
            CHECK(c.is_zero());
        // idempotence and vanishing exactly on the subspace
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> val(-5, 5);
        for (int t = 0; t < 25; ++t) {
            Vec v = {Rational(val(rng)), Rational(val(rng)),
                     Rational(val(rng))};
            Vec p = q.project(v);
            CHECK(q.project(p) == p);
            Vec diff(3);
            for (int i = 0; i < 3; ++i)
                diff[i] = v[i] - p[i];
            CHECK(sub.contains(diff)); // v - P v lies in the subspace
        }
    }

    SUBCASE("containment is verified")
    {
        Subspace amb = Subspace::span({dense({1, 0, 0})}, 3);
        Subspace sub = Subspace::span({dense({0, 1, 0})}, 3);
        CHECK_THROWS_AS(quotient(amb, sub), NotASubspace);
    }
}

TEST_CASE("intersect")
{
    Subspace a = Subspace::span({dense({1, 0}), dense({0, 1})}, 2);
    CHECK(intersect(a, a) == a);

    Subspace e1 = Subspace::span({dense({1, 0})}, 2);
    Subspace e2 = Subspace::span({dense({0, 1})}, 2);
    CHECK(intersect(e1, e2).dim() == 0);

    Subspace s12 = Subspace::span({dense({1, 0, 0}), dense({0, 1, 0})}, 3);
    Subspace s23 = Subspace::span({dense({0, 1, 0}), dense({0, 0, 1})}, 3);
    Subspace i = intersect(s12, s23);
    CHECK(i.dim() == 1);
    CHECK(i.contains(dense({0, 1, 0})));

    Subspace bad = Subspace::full(2);
    CHECK_THROWS_AS(intersect(s12, bad), DimensionMismatch);
}

TEST_CASE("preimage")
{
    SparseMatrix id = SparseMatrix::identity(2);
    CHECK(preimage(id, Subspace::full(2)) == Subspace::full(2));

    Subspace e1 = Subspace::span({dense({1, 0})}, 2);
    CHECK(preimage(id, e1) == e1);

    SparseMatrix m = from_rows({{1, 0}, {0, 0}});
    Subspace pre = preimage(m, Subspace::zero(2));
    CHECK(pre.dim() == 1);
    CHECK(pre.contains(dense({0, 1})));
}

TEST_CASE("solve finds particular solutions")
{
    SparseMatrix m = from_rows({{1, 2}, {3, 4}});
    auto x = solve(m, dense({5, 6}));
    REQUIRE(x.has_value());
    Vec y = m.apply(*x);
    CHECK(y[0] == Rational(5));
    CHECK(y[1] == Rational(6));

    SparseMatrix sing = from_rows({{1, 1}, {1, 1}});
    CHECK(!solve(sing, dense({0, 1})).has_value());
}

TEST_CASE("image and map_span")
{
    SparseMatrix m = from_rows({{1, 0}, {0, 0}, {2, 0}});
    Subspace im = image(m);
    CHECK(im.dim() == 1);
    CHECK(im.contains(dense({1, 0, 2})));
    CHECK(map_span(m, Subspace::full(2)) == im);
}
