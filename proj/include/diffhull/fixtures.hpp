#pragma once

#include <string>
#include <vector>

#include "diffhull/algebra.hpp"
#include "diffhull/ordered_algebra.hpp"

namespace diffhull {

inline Vec basis_vector(int n, int i)
{
    Vec v(n, Rational(0));
    v[i] = Rational(1);
    return v;
}

// E_ij in matrix_algebra(n), 1-based row/column.
inline Vec matrix_unit(int n, int i, int j)
{
    return basis_vector(n * n, (i - 1) * n + (j - 1));
}

struct MatrixFixture {
    StructureConstantAlgebra algebra;
    Subalgebra c;
};

// M_n with the diagonal maximal commutative subalgebra.
inline MatrixFixture matrix_diagonal_fixture(int n)
{
    MatrixFixture f;
    f.algebra = matrix_algebra(n);
    for (int i = 1; i <= n; ++i) {
        f.c.vectors.push_back(matrix_unit(n, i, i));
        f.c.generators.push_back(i - 1);
    }
    return f;
}

// M_n with C = span{ I, J, ..., J^{n-1} }, J the upper Jordan block.
inline MatrixFixture matrix_jordan_fixture(int n)
{
    MatrixFixture f;
    f.algebra = matrix_algebra(n);
    Vec j(n * n, Rational(0));
    for (int i = 1; i < n; ++i) {
        Vec e = matrix_unit(n, i, i + 1);
        for (int t = 0; t < n * n; ++t)
            j[t] += e[t];
    }
    f.c.vectors.push_back(f.algebra.unit());
    Vec p = j;
    for (int k = 1; k < n; ++k) {
        f.c.vectors.push_back(p);
        p = alg_product(f.algebra, p, j);
    }
    f.c.generators = {1};
    return f;
}

// M_n with C spanned by powers of the regular representation of x on
// Q[x]/(x^n) (the lower shift); coordinates line up with the operator
// recursion of Example 1.
inline MatrixFixture matrix_lower_shift_fixture(int n)
{
    MatrixFixture f;
    f.algebra = matrix_algebra(n);
    Vec x(n * n, Rational(0));
    for (int i = 1; i < n; ++i) {
        Vec e = matrix_unit(n, i + 1, i);
        for (int t = 0; t < n * n; ++t)
            x[t] += e[t];
    }
    f.c.vectors.push_back(f.algebra.unit());
    Vec p = x;
    for (int k = 1; k < n; ++k) {
        f.c.vectors.push_back(p);
        p = alg_product(f.algebra, p, x);
    }
    f.c.generators = {1};
    return f;
}

struct WeylFixture {
    TruncatedOrderedAlgebra algebra;
    Subalgebra c;
};

// Truncated Weyl algebra with the polynomial slice q[x] as C.
inline WeylFixture weyl_fixture(int cutoff)
{
    TruncatedOrderedAlgebra w = weyl_truncated(cutoff);
    Subalgebra c = power_subalgebra(w, 0, /*assume_maximal=*/true);
    return WeylFixture{std::move(w), std::move(c)};
}

inline const std::vector<std::string> &fixture_names()
{
    static const std::vector<std::string> names = {
        "matrix-diagonal-2", "matrix-diagonal-3", "matrix-diagonal-4",
        "matrix-jordan-2",   "matrix-jordan-3",   "matrix-jordan-4",
        "weyl",              "poly-symplectic",   "sl2-kks",
        "example2-plane",
    };
    return names;
}

} // namespace diffhull
