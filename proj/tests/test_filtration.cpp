#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffhull/filtration.hpp"
#include "diffhull/fixtures.hpp"
#include "diffhull/graded.hpp"

using namespace diffhull;

TEST_CASE("ad_power on matrix units and in the weyl algebra")
{
    StructureConstantAlgebra a = matrix_algebra(2);
    SelfBimodule self(a);
    Vec j = matrix_unit(2, 1, 2);
    // [E12, E11] = E12 E11 - E11 E12 = -E12
    Vec r = ad_power(self, j, matrix_unit(2, 1, 1), 1);
    Vec expected = j;
    for (auto &c : expected)
        c = -c;
    CHECK(r == expected);
    // center acts trivially
    CHECK(ad_power(self, a.unit(), matrix_unit(2, 2, 1), 1) ==
          Vec(4, Rational(0)));

    TruncatedOrderedAlgebra w = weyl_truncated(4);
    SelfBimodule ws(w);
    Vec x = basis_vector(w.dim(), w.index_of({1, 0}));
    Vec d = basis_vector(w.dim(), w.index_of({0, 1}));
    Vec ad1 = ad_power(ws, x, d, 1); // [x, d] = -1
    CHECK(ad1[w.index_of({0, 0})] == Rational(-1));
    CHECK(ad_power(ws, x, d, 2) == Vec(w.dim(), Rational(0)));
}

TEST_CASE("diagonal subalgebras: filtration stabilizes at C")
{
    for (int n = 2; n <= 4; ++n) {
        MatrixFixture f = matrix_diagonal_fixture(n);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 6);
        CHECK(filt.top() == 0);
        CHECK(filt.stabilized());
        CHECK(!filt.exhaustive());
        CHECK(filt.level(0) == subalgebra_span(f.algebra, f.c));
        CHECK(filt.level(5) == filt.level(0));
        HullResult hull = differential_hull(f.algebra, filt);
        CHECK(!hull.partial);
        CHECK(hull.closed);
        CHECK(hull.span == subalgebra_span(f.algebra, f.c));
    }
}

TEST_CASE("jordan subalgebra of M_2: the hand-worked filtration")
{
    MatrixFixture f = matrix_jordan_fixture(2);
    AdFiltration filt = compute_filtration(f.algebra, f.c, 5);
    CHECK(filt.dims() == std::vector<int>{2, 3, 4});
    CHECK(filt.exhaustive());
    CHECK(filt.level(0) == subalgebra_span(f.algebra, f.c));
    // F_1 = upper triangular matrices
    Subspace upper = Subspace::span({matrix_unit(2, 1, 1),
                                     matrix_unit(2, 1, 2),
                                     matrix_unit(2, 2, 2)},
                                    4);
    CHECK(filt.level(1) == upper);
    HullResult hull = differential_hull(f.algebra, filt);
    CHECK(hull.span == Subspace::full(4));
    CHECK(hull.closed);
}

TEST_CASE("iterative filtration equals the polarized brute force")
{
    SUBCASE("matrix-jordan-2, p <= 3")
    {
        MatrixFixture f = matrix_jordan_fixture(2);
        SelfBimodule self(f.algebra);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 5);
        CHECK(filtration_bruteforce_check(self, f.c.vectors, filt, 3));
    }
    SUBCASE("matrix-jordan-3, p <= 4")
    {
        MatrixFixture f = matrix_jordan_fixture(3);
        SelfBimodule self(f.algebra);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 8);
        CHECK(filtration_bruteforce_check(self, f.c.vectors, filt, 4));
    }
    SUBCASE("matrix-diagonal-2 agrees trivially")
    {
        MatrixFixture f = matrix_diagonal_fixture(2);
        SelfBimodule self(f.algebra);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 3);
        CHECK(filtration_bruteforce_check(self, f.c.vectors, filt, 3));
    }
}

TEST_CASE("weyl filtration: F_p is the span of operators of order <= p")
{
    WeylFixture f = weyl_fixture(6);
    AdFiltration filt = compute_filtration(f.algebra, f.c, 6);
    CHECK(filt.exhaustive());
    CHECK(filt.top() == 6);
    for (int p = 0; p <= 6; ++p) {
        std::vector<int> idx;
        for (int i = 0; i < f.algebra.dim(); ++i)
            if (f.algebra.level(i) <= p)
                idx.push_back(i);
        CHECK(filt.level(p) ==
              Subspace::coordinate_span(f.algebra.dim(), idx));
    }
    CHECK(filt.level(0) == subalgebra_span(f.algebra, f.c));
    HullResult hull = differential_hull(f.algebra, filt);
    CHECK(hull.span == Subspace::full(f.algebra.dim()));
    CHECK(hull.closed);
    CHECK(hull.skipped_products > 0); // cutoff products skipped, tagged
}

TEST_CASE("theorem-2 inclusions hold exhaustively")
{
    SUBCASE("matrix-jordan-2")
    {
        MatrixFixture f = matrix_jordan_fixture(2);
        SelfBimodule self(f.algebra);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 5);
        auto rep = verify_almost_structure(f.algebra, filt, self, filt,
                                           f.c.generator_vectors(), 3);
        CHECK(rep.pass());
        CHECK(rep.checked > 0);
    }
    SUBCASE("matrix-jordan-3")
    {
        MatrixFixture f = matrix_jordan_fixture(3);
        SelfBimodule self(f.algebra);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 8);
        auto rep = verify_almost_structure(f.algebra, filt, self, filt,
                                           f.c.generator_vectors(), 3);
        CHECK(rep.pass());
    }
    SUBCASE("weyl cutoff 6")
    {
        WeylFixture f = weyl_fixture(6);
        SelfBimodule self(f.algebra);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 6);
        auto rep = verify_almost_structure(f.algebra, filt, self, filt,
                                           f.c.generator_vectors(), 3);
        CHECK(rep.pass());
        CHECK(rep.skipped > 0);
    }
    SUBCASE("diagonal fixture passes vacuously")
    {
        MatrixFixture f = matrix_diagonal_fixture(2);
        SelfBimodule self(f.algebra);
        AdFiltration filt = compute_filtration(f.algebra, f.c, 3);
        auto rep = verify_almost_structure(f.algebra, filt, self, filt,
                                           f.c.generator_vectors(), 3);
        CHECK(rep.pass());
    }
}

TEST_CASE("example-1 recursion: differential operators on Q[x]/(x^3)")
{
    const int n = 3, p_max = 4;
    DiffOperatorRecursion rec = grothendieck_diff_recursion(n, p_max);
    MatrixFixture f = matrix_lower_shift_fixture(n);
    AdFiltration filt = compute_filtration(f.algebra, f.c, p_max);
    for (int p = 0; p <= p_max; ++p)
        CHECK(rec.levels[p] == filt.level(p));
    // order-0 operators are exactly multiplication by C
    CHECK(rec.levels[0] == subalgebra_span(f.algebra, f.c));
}

TEST_CASE("induced poisson structure of the jordan fixture")
{
    MatrixFixture f = matrix_jordan_fixture(2);
    AdFiltration filt = compute_filtration(f.algebra, f.c, 5);
    GradedPoissonAlgebra gr = GradedPoissonAlgebra::build(f.algebra, filt);

    CHECK(gr.pieces().dim(0) == 2);
    CHECK(gr.pieces().dim(1) == 1);
    CHECK(gr.pieces().dim(2) == 1);

    // the classes e = [E12]_0, h = [E11 - E22]_1, f = [E21]_2
    GradedElem e{0, gr.pieces().classify(0, matrix_unit(2, 1, 2))};
    Vec h_amb = matrix_unit(2, 1, 1);
    for (int t = 0; t < 4; ++t)
        h_amb[t] -= matrix_unit(2, 2, 2)[t];
    GradedElem h{1, gr.pieces().classify(1, h_amb)};
    GradedElem ff{2, gr.pieces().classify(2, matrix_unit(2, 2, 1))};

    auto he = gr.bracket(h, e);
    REQUIRE(he.has_value());
    GradedElem two_e = e;
    for (auto &c : two_e.coords)
        c *= Rational(2);
    CHECK(he->degree == 0);
    CHECK(he->coords == two_e.coords);

    auto fe = gr.bracket(ff, e);
    REQUIRE(fe.has_value());
    CHECK(fe->degree == 1);
    Vec minus_h = h.coords;
    for (auto &c : minus_h)
        c = -c;
    CHECK(fe->coords == minus_h);

    auto fh = gr.bracket(ff, h);
    REQUIRE(fh.has_value());
    CHECK(fh->degree == 2);
    Vec two_f = ff.coords;
    for (auto &c : two_f)
        c *= Rational(2);
    CHECK(fh->coords == two_f);

    // all products among e, h, f vanish in the graded algebra
    for (const GradedElem *u : {&e, &h, &ff})
        for (const GradedElem *v : {&e, &h, &ff}) {
            auto p = gr.product(*u, *v);
            REQUIRE(p.has_value());
            CHECK(p->is_zero());
        }

    auto axioms = gr.verify_axioms();
    CHECK(axioms.pass());
    CHECK(axioms.skipped == 0);
    CHECK(GradedPoissonAlgebra::lifts_agree(f.algebra, filt));

    // module structure of A over itself: symmetric, all laws hold
    SelfBimodule self(f.algebra);
    GradedPoissonModule gm =
        GradedPoissonModule::build(f.algebra, self, filt, filt, gr);
    auto mreport = gm.verify_axioms();
    CHECK(mreport.pass());
}

TEST_CASE("induced poisson structure of the diagonal fixture is trivial")
{
    MatrixFixture f = matrix_diagonal_fixture(3);
    AdFiltration filt = compute_filtration(f.algebra, f.c, 4);
    GradedPoissonAlgebra gr = GradedPoissonAlgebra::build(f.algebra, filt);
    CHECK(gr.pieces().count() == 1);
    CHECK(gr.pieces().dim(0) == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto b = gr.bracket(gr.basis_elem(0, i), gr.basis_elem(0, j));
            REQUIRE(b.has_value());
            CHECK(b->is_zero());
        }
    CHECK(gr.verify_axioms().pass());
}

TEST_CASE("induced poisson structure of the weyl fixture")
{
    WeylFixture f = weyl_fixture(6);
    AdFiltration filt = compute_filtration(f.algebra, f.c, 6);
    GradedPoissonAlgebra gr = GradedPoissonAlgebra::build(f.algebra, filt);

    // graded piece p has basis { [x^a d^p] : a <= 6 - p }
    for (int p = 0; p <= 6; ++p)
        CHECK(gr.pieces().dim(p) == 7 - p);

    // { xi, x } = 1 where xi = [d]_1
    GradedElem xi{1, gr.pieces().classify(
                         1, basis_vector(f.algebra.dim(),
                                         f.algebra.index_of({0, 1})))};
    GradedElem x{0, gr.pieces().classify(
                        0, basis_vector(f.algebra.dim(),
                                        f.algebra.index_of({1, 0})))};
    auto br = gr.bracket(xi, x);
    REQUIRE(br.has_value());
    CHECK(br->degree == 0);
    Vec one = gr.pieces().classify(
        0, basis_vector(f.algebra.dim(), f.algebra.index_of({0, 0})));
    CHECK(br->coords == one);

    // products are the monomial products x^a xi^p * x^c xi^q where defined
    auto prod = gr.product(x, xi);
    REQUIRE(prod.has_value());
    CHECK(prod->degree == 1);
    Vec xd = gr.pieces().classify(
        1, basis_vector(f.algebra.dim(), f.algebra.index_of({1, 1})));
    CHECK(prod->coords == xd);

    auto axioms = gr.verify_axioms();
    CHECK(axioms.pass());
    CHECK(axioms.skipped > 0); // truncated entries skipped, honestly counted
}
