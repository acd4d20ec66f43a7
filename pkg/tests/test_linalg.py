"""Exact polynomial / rational-function / matrix layer, checked against sympy."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lmtool.linalg import (
    Poly,
    QMatrix,
    RatFunc,
    RowReducer,
    nullspace,
    parse_monomial_sum,
    poly_divmod,
    poly_gcd,
    rank,
    rat_from_str,
    rat_to_str,
)

X = sympy.Symbol("x")

rationals = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=6
)


@st.composite
def polys(draw, max_degree=6):
    coeffs = draw(st.lists(rationals, min_size=0, max_size=max_degree + 1))
    return Poly({i: c for i, c in enumerate(coeffs) if c})


def to_sympy(p: Poly):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * X ** i for i, c in p.items()),
        sympy.Integer(0),
    )


def from_sympy(expr) -> Poly:
    poly = sympy.Poly(sympy.expand(expr), X)
    return Poly({m[0]: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())})


# -- rationals ---------------------------------------------------------------

def test_rat_string_round_trip():
    assert rat_to_str(Fraction(3, 4)) == "3/4"
    assert rat_to_str(Fraction(-5)) == "-5"
    assert rat_from_str("7/2") == Fraction(7, 2)
    assert rat_from_str("-3") == Fraction(-3)
    assert rat_from_str(str(Fraction(22, -6))) == Fraction(-11, 3)


def test_rat_rejects_garbage():
    with pytest.raises(ValueError):
        rat_from_str("1/0")
    with pytest.raises(ValueError):
        rat_from_str("x")


# -- polynomials --------------------------------------------------------------

def test_poly_basics():
    p = Poly.parse("x^2 - 2*x + 1")
    assert p.degree() == 2
    assert p(Fraction(1)) == 0
    assert p(Fraction(3)) == 4
    assert str(p) == "x^2 - 2*x + 1"
    assert Poly.zero().degree() is None
    assert Poly.one().degree() == 0


def test_poly_parse_rejects_bad_input():
    for bad in ("x + ", "1//2", "y", "x^-1", ""):
        with pytest.raises(ValueError):
            Poly.parse(bad)


@given(polys(), polys())
def test_poly_mul_matches_sympy(p, q):
    assert to_sympy(p * q).equals(sympy.expand(to_sympy(p) * to_sympy(q)))


@given(polys(), polys())
def test_poly_add_sub(p, q):
    assert to_sympy(p + q).equals(to_sympy(p) + to_sympy(q))
    assert (p - q) + q == p


@given(polys(max_degree=4))
def test_poly_derivative_matches_sympy(p):
    assert to_sympy(p.derivative()).equals(sympy.diff(to_sympy(p), X))


@given(polys(max_degree=3), st.integers(min_value=0, max_value=3))
def test_poly_pow(p, e):
    expected = Poly.one()
    for _ in range(e):
        expected = expected * p
    assert p ** e == expected


@given(polys(), polys())
def test_poly_divmod_exact(p, q):
    if q.is_zero:
        with pytest.raises(ZeroDivisionError):
            poly_divmod(p, q)
        return
    quo, rem = poly_divmod(p, q)
    assert quo * q + rem == p
    assert rem.is_zero or rem.degree() < q.degree()


def test_poly_divmod_literals():
    quo, rem = poly_divmod(Poly.parse("x^2 - 1"), Poly.parse("x - 1"))
    assert quo == Poly.parse("x + 1")
    assert rem.is_zero
    quo, rem = poly_divmod(Poly.parse("x^2 + 1"), Poly.parse("x"))
    assert quo == Poly.parse("x")
    assert rem == Poly.parse("1")


@given(polys(max_degree=4), polys(max_degree=4))
def test_poly_gcd_matches_sympy(p, q):
    ours = poly_gcd(p, q)
    theirs = sympy.gcd(to_sympy(p), to_sympy(q), X)
    if p.is_zero and q.is_zero:
        assert ours.is_zero
    else:
        assert to_sympy(ours).equals(sympy.monic(theirs, X))


def test_poly_shift_x():
    p = Poly.parse("x^2 + 1")
    assert p.shift_x(2) == Poly.parse("x^4 + x^2")


# -- rational functions --------------------------------------------------------

def test_ratfunc_reduces():
    r = RatFunc(Poly.parse("x^2 - 1"), Poly.parse("x - 1"))
    assert r.is_polynomial
    assert r.as_poly() == Poly.parse("x + 1")


def test_ratfunc_monic_denominator():
    r = RatFunc(Poly.parse("x"), Poly.parse("2*x + 2"))
    assert r.den.leading_coeff() == 1
    assert r == RatFunc(Poly.parse("1/2*x"), Poly.parse("x + 1"))


@given(polys(max_degree=3), polys(max_degree=3), polys(max_degree=2))
def test_ratfunc_arithmetic_matches_sympy(a, b, d):
    if d.is_zero:
        return
    r = RatFunc(a, d)
    s = RatFunc(b, d)
    total = r + s
    expect = sympy.cancel((to_sympy(a) + to_sympy(b)) / to_sympy(d))
    got = sympy.cancel(to_sympy(total.num) / to_sympy(total.den))
    assert sympy.simplify(got - expect) == 0


@given(polys(max_degree=3), polys(max_degree=2))
def test_ratfunc_derivative_matches_sympy(a, d):
    if d.is_zero:
        return
    r = RatFunc(a, d).derivative()
    expect = sympy.cancel(sympy.diff(to_sympy(a) / to_sympy(d), X))
    got = sympy.cancel(to_sympy(r.num) / to_sympy(r.den))
    assert sympy.simplify(got - expect) == 0


# -- row reduction -------------------------------------------------------------

@st.composite
def matrices(draw):
    ncols = draw(st.integers(min_value=1, max_value=6))
    nrows = draw(st.integers(min_value=1, max_value=6))
    rows = draw(
        st.lists(
            st.lists(rationals, min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    return QMatrix.from_rows(rows)


def to_sympy_matrix(m: QMatrix):
    return sympy.Matrix(
        m.nrows, m.ncols,
        [sympy.Rational(m.entry(i, j).numerator, m.entry(i, j).denominator)
         for i in range(m.nrows) for j in range(m.ncols)],
    )


@given(matrices())
@settings(max_examples=60)
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy_matrix(m).rank()


@given(matrices())
@settings(max_examples=60)
def test_nullspace_is_a_nullspace_basis(m):
    basis = nullspace(m)
    assert len(basis) == m.ncols - rank(m)
    for vec in basis:
        for i in range(m.nrows):
            assert sum(m.entry(i, j) * vec[j] for j in range(m.ncols)) == 0
    # canonical: one vector per free column, unit there, supported no later
    red = RowReducer(m.ncols)
    for i in range(m.nrows):
        red.add_row(m.row(i))
    free = [j for j in range(m.ncols) if j not in red.pivot_cols()]
    assert [max(j for j, c in enumerate(v) if c) for v in basis] == free
    for v, j in zip(basis, free):
        assert v[j] == 1


@given(matrices(), st.randoms(use_true_random=False))
@settings(max_examples=40)
def test_rref_is_row_order_invariant(m, rng):
    rows = [list(m.row(i)) for i in range(m.nrows)]
    shuffled = rows[:]
    rng.shuffle(shuffled)
    red_a, red_b = RowReducer(m.ncols), RowReducer(m.ncols)
    for r in rows:
        red_a.add_row(r)
    for r in shuffled:
        red_b.add_row(r)
    assert red_a.rref() == red_b.rref()


def test_prefix_rank_and_prefix_nullspace():
    m = QMatrix.from_rows([
        [1, 0, 2, 0],
        [0, 0, 1, 1],
    ])
    red = RowReducer(4)
    for i in range(m.nrows):
        red.add_row(m.row(i))
    assert [red.prefix_rank(n) for n in range(5)] == [0, 1, 1, 2, 2]
    # truncating the 4-column nullspace vectors solves the 3-column system
    full = red.nullspace()
    pre = red.nullspace(3)
    assert [v[:3] for v in full if max(j for j, c in enumerate(v) if c) < 3] == list(pre)


def test_rank_literals():
    assert rank(QMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(QMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(QMatrix.from_rows([[0] * 5, [0] * 5])) == 0


def test_nullspace_literals():
    assert nullspace(QMatrix.from_rows([[1, 1]])) == ((Fraction(-1), Fraction(1)),)
    assert nullspace(QMatrix.from_rows([[1, 0], [0, 1]])) == ()
    # no constraints at all: the canonical basis of the full space
    assert nullspace(QMatrix.from_rows([[0, 0, 0]])) == (
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    )


def test_add_row_reports_rank_growth():
    red = RowReducer(3)
    assert red.add_row([1, 2, 3])
    assert not red.add_row([2, 4, 6])
    assert red.add_row([0, 1, 1])
    assert red.rank == 2


# -- shared text grammar --------------------------------------------------------

def test_parse_monomial_sum():
    terms = parse_monomial_sum("3*x^2*y - 1/2*y + 4", ("x", "y"))
    assert terms == {(2, 1): Fraction(3), (0, 1): Fraction(-1, 2), (0, 0): Fraction(4)}


def test_parse_monomial_sum_rejects_unknown_variable():
    with pytest.raises(ValueError):
        parse_monomial_sum("x*z", ("x", "y"))
