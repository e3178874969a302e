"""Cross-check the corpus form builders against independent expansions.

Every built form is re-derived from its factored literature shape with
sympy and compared coefficient by coefficient, so the exact-arithmetic
builders and the symbolic route must agree term for term.
"""

from fractions import Fraction

import sympy

from sonckit.corpus import (
    FORM_BUILDERS,
    CHOI_LAM_SHEAR,
    MOTZKIN_SHEAR,
    choi_lam_q1,
    p_family,
    q_family,
    robinson2,
    schmuedgen,
    separator_quaternary,
    separator_ternary,
    square_trinomial,
)

X = sympy.symbols("x1:5")


def _to_terms(expr, nvars):
    poly = sympy.Poly(sympy.expand(expr), *X[:nvars])
    out = {}
    for monomial, coeff in poly.terms():
        out[tuple(int(e) for e in monomial)] = Fraction(
            int(sympy.fraction(coeff)[0]), int(sympy.fraction(coeff)[1])
        )
    return out


def _assert_matches(form, expr):
    assert dict(form.terms) == _to_terms(expr, form.num_vars), form.name


def test_robinson2_matches_symbolic_expansion():
    x, y, z, w = X
    expr = (
        x**2 * (x - w) ** 2
        + y**2 * (y - w) ** 2
        + z**2 * (z - w) ** 2
        + 2 * x * y * z * (x + y + z - 2 * w)
    )
    _assert_matches(robinson2(), expr)


def test_schmuedgen_matches_symbolic_expansion():
    x, y, z = X[:3]
    expr = 200 * ((x**3 - 4 * x * z**2) ** 2 + (y**3 - 4 * y * z**2) ** 2) + (
        y**2 - x**2
    ) * x * (x + 2 * z) * (x * (x - 2 * z) + 2 * (y**2 - 4 * z**2))
    _assert_matches(schmuedgen(), expr)


def test_squares_families_match_symbolic_expansion():
    for n, two_d in ((2, 6), (3, 6), (3, 8)):
        d = two_d // 2
        xn = X[n - 1]
        expr = sum(
            (X[i] ** (d - 2) * xn**2 + 2 * X[i] ** (d - 1) * xn + X[i] ** d) ** 2
            for i in range(n - 1)
        )
        _assert_matches(p_family(n, two_d), expr)
    for n, two_d in ((3, 6), (3, 8)):
        xn = X[n - 1]
        core = X[0] * xn + X[1] * xn + X[0] * X[1]
        expr = core**2 * xn ** (two_d - 4) + sum(
            X[i] ** two_d for i in range(2, n - 1)
        )
        _assert_matches(q_family(n, two_d), expr)


def test_square_trinomial_matches_symbolic_expansion():
    x, y, z = X[:3]
    expr = (2 * x**2 * z**2 + 2 * x**2 * y**2 - sympy.Rational(1, 2) * y**2 * z**2) ** 2
    _assert_matches(square_trinomial(), expr)


def test_separators_match_symbolic_expansion():
    x, y, z, w = X
    motzkin_expr = x**4 * y**2 + x**2 * y**4 - 3 * x**2 * y**2 * z**2 + z**6
    ternary = (
        sympy.Rational(1, 2) * (z**3 + 2 * x * y * z + x**2 * y) ** 2 + motzkin_expr
    )
    _assert_matches(separator_ternary(), ternary)
    q1_expr = x**2 * y**2 + x**2 * z**2 + y**2 * z**2 + w**4 - 4 * w * x * y * z
    quaternary = (x * y + x * z + y * z) ** 2 + w**4 + q1_expr
    _assert_matches(separator_quaternary(), quaternary)


def test_sheared_forms_match_symbolic_substitution():
    x, y, z, w = X
    m = x**4 * y**2 + x**2 * y**4 - 3 * x**2 * y**2 * z**2 + z**6
    sheared = m.subs({x: x - z, y: y - z}, simultaneous=True)
    _assert_matches(FORM_BUILDERS["motzkin_tilde"](), sheared)
    q1 = x**2 * y**2 + x**2 * z**2 + y**2 * z**2 + w**4 - 4 * w * x * y * z
    sheared_q1 = q1.subs(
        {x: x - w, y: y - w, z: z + w}, simultaneous=True
    )
    _assert_matches(FORM_BUILDERS["q1_tilde"](), sheared_q1)


def test_shear_matrices_agree_with_substitutions():
    # row i of the matrix is the substitution of variable i
    assert MOTZKIN_SHEAR == ((1, 0, -1), (0, 1, -1), (0, 0, 1))
    assert CHOI_LAM_SHEAR == ((1, 0, 0, -1), (0, 1, 0, -1), (0, 0, 1, 1), (0, 0, 0, 1))
    assert choi_lam_q1().terms[(1, 1, 1, 1)] == -4
