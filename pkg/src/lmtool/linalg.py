"""Exact linear algebra over Q: polynomials, rational functions, matrices.

Everything runs on ``fractions.Fraction``; there are no floats anywhere, so
every result is exact and reproducible bit-for-bit.  Matrix reduction uses
plain Gaussian elimination with the pivot taken as the first nonzero entry in
column order, which makes the reduced echelon form -- and hence nullspace
bases -- canonical for a given row space and column order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

Rat = Fraction


def rat_from_str(text: str | int) -> Fraction:
    """Parse a rational written as ``p`` or ``p/q``."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc
    raise ValueError(f"not a rational: {text!r}")


def rat_to_str(value: Fraction) -> str:
    """Format a rational as ``p`` or ``p/q`` (lowest terms, positive q)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial over Q, stored sparsely as exponent -> coefficient.

    Immutable.  The degree of the zero polynomial is reported as ``None``,
    the "minus infinity" marker.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, Fraction] = {}
        for e, v in items:
            e = int(e)
            if e < 0:
                raise ValueError("negative exponent in polynomial")
            v = Fraction(v)
            if e in c:
                v += c[e]
            if v:
                c[e] = v
            elif e in c:
                del c[e]
        self._c = c
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly({0: 1})

    @staticmethod
    def const(value: Fraction | int) -> "Poly":
        return Poly({0: Fraction(value)})

    @staticmethod
    def x(power: int = 1) -> "Poly":
        return Poly({power: 1})

    @staticmethod
    def from_list(coeffs: Sequence[Fraction | int]) -> "Poly":
        """Coefficients in increasing order of exponent: [c0, c1, ...]."""
        return Poly(dict(enumerate(coeffs)))

    @staticmethod
    def parse(text: str) -> "Poly":
        terms = parse_monomial_sum(text, ("x",))
        return Poly({exps[0]: c for exps, c in terms.items()})

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int | None:
        """Degree, or None (minus infinity) for the zero polynomial."""
        return max(self._c) if self._c else None

    def leading_coeff(self) -> Fraction:
        return self._c[max(self._c)] if self._c else Fraction(0)

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._c.items())

    def __getitem__(self, exponent: int) -> Fraction:
        return self._c.get(exponent, Fraction(0))

    def coeff_list(self, length: int) -> list[Fraction]:
        """Dense coefficient list [c0 .. c_{length-1}]."""
        out = [Fraction(0)] * length
        for e, v in self._c.items():
            if e < length:
                out[e] = v
        return out

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, Fraction(0)) + v
            if w:
                c[e] = w
            elif e in c:
                del c[e]
        return Poly(c)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly({e: -v for e, v in self._c.items()})

    def __mul__(self, other: "Poly | Fraction | int") -> "Poly":
        if isinstance(other, Poly):
            c: dict[int, Fraction] = {}
            for e1, v1 in self._c.items():
                for e2, v2 in other._c.items():
                    e = e1 + e2
                    w = c.get(e, Fraction(0)) + v1 * v2
                    if w:
                        c[e] = w
                    elif e in c:
                        del c[e]
            return Poly(c)
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                return Poly()
            return Poly({e: v * f for e, v in self._c.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of polynomial")
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "Poly":
        return Poly({e - 1: v * e for e, v in self._c.items() if e > 0})

    def __call__(self, point: Fraction | int) -> Fraction:
        p = Fraction(point)
        return sum((v * p**e for e, v in self._c.items()), Fraction(0))

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lc = self.leading_coeff()
        return self * (1 / lc)

    def shift_x(self, a: int) -> "Poly":
        """Multiply by x**a."""
        if a == 0:
            return self
        return Poly({e + a: v for e, v in self._c.items()})

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __str__(self) -> str:
        return format_monomial_sum({(e,): v for e, v in self._c.items()}, ("x",))

    def __repr__(self) -> str:
        return f"Poly({self})"


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Exact quotient and remainder; raises ZeroDivisionError on zero divisor."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q: dict[int, Fraction] = {}
    r = {e: v for e, v in num._c.items()}
    dd = den.degree()
    dlc = den.leading_coeff()
    den_items = list(den._c.items())
    while r:
        e = max(r)
        if e < dd:
            break
        f = r[e] / dlc
        k = e - dd
        q[k] = f
        for de, dv in den_items:
            t = de + k
            w = r.get(t, Fraction(0)) - f * dv
            if w:
                r[t] = w
            elif t in r:
                del r[t]
    return Poly(q), Poly(r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Rational function num/den, always reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly({0: 1})):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly(), Poly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree():
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
            lc = den.leading_coeff()
            if lc != 1:
                inv = 1 / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        return RatFunc(p, Poly.one())

    @property
    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def as_poly(self) -> Poly:
        if not self.is_polynomial:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __neg__(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other: "RatFunc | Poly | Fraction | int") -> "RatFunc":
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.num, self.den * other.den)
        if isinstance(other, Poly):
            return RatFunc(self.num * other, self.den)
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def derivative(self) -> "RatFunc":
        # (n/d)' = (n'd - nd')/d^2
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def ratfunc_reduce(num: Poly, den: Poly) -> RatFunc:
    """Reduce num/den to lowest terms with monic denominator."""
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# matrices and row reduction
# ---------------------------------------------------------------------------

class QMatrix:
    """Dense immutable matrix over Q (row-major)."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Sequence[Fraction | int]):
        if nrows < 0 or ncols < 0 or len(entries) != nrows * ncols:
            raise ValueError("matrix shape does not match entry count")
        self.nrows = nrows
        self.ncols = ncols
        self.entries = tuple(Fraction(v) for v in entries)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Fraction | int]]) -> "QMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        flat: list[Fraction | int] = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return QMatrix(nrows, ncols, flat)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.ncols + j]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.entries))


def _row_gcd(row: list[int], start: int) -> int:
    g = 0
    for v in row[start:]:
        if v:
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


class RowReducer:
    """Incremental Gaussian elimination over Q with canonical output.

    Rows are rescaled to integers internally (a pure speed matter: the pivot
    choice and final reduced echelon form are exactly those of
    fraction-preserving elimination, since scaling a row never changes the
    row space or which column carries the first nonzero entry).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: list[list[int]] = []   # echelon rows, leading entry positive
        self._pivot_of: dict[int, int] = {}  # pivot column -> index into _rows
        self._rref: tuple[tuple[int, ...], tuple[tuple[Fraction, ...], ...]] | None = None

    # -- building -----------------------------------------------------------

    def _to_int_row(self, entries: Iterable[Fraction | int]) -> list[int]:
        row = list(entries)
        if len(row) != self.ncols:
            raise ValueError("row length mismatch")
        dens = [v.denominator for v in row if isinstance(v, Fraction) and v.denominator != 1]
        if dens:
            scale = lcm(*dens)
            return [
                v.numerator * (scale // v.denominator) if isinstance(v, Fraction) else int(v) * scale
                for v in row
            ]
        return [v.numerator if isinstance(v, Fraction) else int(v) for v in row]

    def add_row(self, entries: Iterable[Fraction | int]) -> bool:
        """Reduce a row against the current basis; returns True if rank grew."""
        if self._rref is not None:
            raise RuntimeError("reducer already finalized")
        row = self._to_int_row(entries)
        n = self.ncols
        j = next((t for t in range(n) if row[t]), None)
        while j is not None:
            pivot_idx = self._pivot_of.get(j)
            if pivot_idx is None:
                g = _row_gcd(row, j)
                if row[j] < 0:
                    g = -g
                if g != 1:
                    for t in range(j, n):
                        row[t] //= g
                self._pivot_of[j] = len(self._rows)
                self._rows.append(row)
                return True
            prow = self._rows[pivot_idx]
            a, b = row[j], prow[j]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            for t in range(j, n):
                row[t] = row[t] * fa - prow[t] * fb
            g = _row_gcd(row, j + 1)
            if g > 1:
                for t in range(j + 1, n):
                    row[t] //= g
            j = next((t for t in range(j + 1, n) if row[t]), None)
        return False

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivot_cols(self) -> list[int]:
        return sorted(self._pivot_of)

    def prefix_rank(self, ncols_prefix: int) -> int:
        """Rank of the submatrix made of the first ``ncols_prefix`` columns."""
        return sum(1 for c in self._pivot_of if c < ncols_prefix)

    # -- canonical form ------------------------------------------------------

    def rref(self) -> tuple[tuple[int, ...], tuple[tuple[Fraction, ...], ...]]:
        """Reduced row echelon form: (pivot columns, rows with unit pivots)."""
        if self._rref is None:
            pivots = sorted(self._pivot_of)
            rows = [list(self._rows[self._pivot_of[c]]) for c in pivots]
            n = self.ncols
            for i in range(len(pivots) - 1, -1, -1):
                pc = pivots[i]
                prow = rows[i]
                for t in range(i):
                    r = rows[t]
                    if r[pc]:
                        a, b = r[pc], prow[pc]
                        g = gcd(a, b)
                        fa, fb = b // g, a // g
                        # prow is zero before pc, but fa rescales everything
                        for s in range(n):
                            r[s] = r[s] * fa - prow[s] * fb
                        if fa < 0:  # keep leading entry positive
                            for s in range(n):
                                r[s] = -r[s]
                        g = _row_gcd(r, 0)
                        if g > 1:
                            for s in range(n):
                                r[s] //= g
            frac_rows = tuple(
                tuple(Fraction(v, row[pc]) for v in row)
                for pc, row in zip(pivots, rows)
            )
            self._rref = (tuple(pivots), frac_rows)
        return self._rref

    def nullspace(self, ncols_prefix: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
        """Canonical nullspace basis, one vector per free column in increasing
        column order; restricting to a column prefix solves the truncated
        system because each vector is supported on columns <= its free column.
        """
        n = self.ncols if ncols_prefix is None else ncols_prefix
        pivots, rows = self.rref()
        pivot_set = set(pivots)
        basis = []
        for j in range(n):
            if j in pivot_set:
                continue
            vec = [Fraction(0)] * n
            vec[j] = Fraction(1)
            for pc, row in zip(pivots, rows):
                if pc < j and row[j]:
                    vec[pc] = -row[j]
            basis.append(tuple(vec))
        return tuple(basis)


def rank(matrix: QMatrix) -> int:
    red = RowReducer(matrix.ncols)
    for i in range(matrix.nrows):
        red.add_row(matrix.row(i))
    return red.rank


def nullspace(matrix: QMatrix) -> tuple[tuple[Fraction, ...], ...]:
    red = RowReducer(matrix.ncols)
    for i in range(matrix.nrows):
        red.add_row(matrix.row(i))
    return red.nullspace()


# ---------------------------------------------------------------------------
# shared text form for sums of monomials
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z]+)|(?P<op>[\^*+-]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ValueError(f"cannot parse {rest!r}")
        if m.group("num"):
            out.append(("num", m.group("num")))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


def parse_monomial_sum(text: str, variables: Sequence[str]) -> dict[tuple[int, ...], Fraction]:
    """Parse "c*x^a*d^b + ..." into {(a, b, ...): c} over the given variables.

    Grammar: terms joined by + or -, each term a '*'-separated product of an
    optional rational and variable powers ``v`` or ``v^k``.
    """
    tokens = _tokenize(text)
    var_index = {v: i for i, v in enumerate(variables)}
    result: dict[tuple[int, ...], Fraction] = {}
    pos = 0

    def parse_term(sign: int) -> None:
        nonlocal pos
        coeff = Fraction(sign)
        exps = [0] * len(variables)
        saw_factor = False
        while True:
            if pos >= len(tokens):
                raise ValueError("unexpected end of expression")
            kind, val = tokens[pos]
            if kind == "num":
                coeff *= Fraction(val)
                pos += 1
            elif kind == "name":
                if val not in var_index:
                    raise ValueError(f"unknown variable {val!r}")
                pos += 1
                power = 1
                if pos < len(tokens) and tokens[pos] == ("op", "^"):
                    pos += 1
                    if pos >= len(tokens) or tokens[pos][0] != "num" or "/" in tokens[pos][1]:
                        raise ValueError("expected integer exponent after '^'")
                    power = int(tokens[pos][1])
                    pos += 1
                exps[var_index[val]] += power
            else:
                raise ValueError(f"unexpected {val!r}")
            saw_factor = True
            if pos < len(tokens) and tokens[pos] == ("op", "*"):
                pos += 1
                continue
            break
        if not saw_factor:
            raise ValueError("empty term")
        key = tuple(exps)
        new = result.get(key, Fraction(0)) + coeff
        if new:
            result[key] = new
        elif key in result:
            del result[key]

    if not tokens:
        raise ValueError("empty expression")
    sign = 1
    if tokens[pos] in (("op", "+"), ("op", "-")):
        sign = -1 if tokens[pos][1] == "-" else 1
        pos += 1
    parse_term(sign)
    while pos < len(tokens):
        kind, val = tokens[pos]
        if (kind, val) == ("op", "+"):
            sign = 1
        elif (kind, val) == ("op", "-"):
            sign = -1
        else:
            raise ValueError(f"expected '+' or '-', found {val!r}")
        pos += 1
        parse_term(sign)
    return result


def format_monomial_sum(
    terms: Mapping[tuple[int, ...], Fraction],
    variables: Sequence[str],
) -> str:
    """Format {(a, b, ...): c} as "c*x^a*d^b + ..." (0 for the empty sum).

    Terms are ordered by decreasing total degree, then decreasing exponent of
    the first variable, matching how such operators are usually written.
    """
    if not terms:
        return "0"
    keys = sorted(terms, key=lambda k: (-sum(k), tuple(-e for e in k)))
    parts: list[str] = []
    for idx, key in enumerate(keys):
        coeff = terms[key]
        factors = []
        for var, e in zip(variables, key):
            if e == 1:
                factors.append(var)
            elif e > 1:
                factors.append(f"{var}^{e}")
        mag = abs(coeff)
        if not factors:
            body = rat_to_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = rat_to_str(mag) + "*" + "*".join(factors)
        if idx == 0:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append((" - " if coeff < 0 else " + ") + body)
    return "".join(parts)
