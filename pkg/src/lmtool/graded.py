"""Filtered pieces of ideals of A and of their hom spaces, computed exactly.

For condition subspaces V1, V2 the hom space between the corresponding
rank-one right ideals is modeled by operators with rational coefficients:

    Hom(V1, V2) = {p : p . V1 contained in V2},  p = u o g^{-1},

where g is the conductor of V1, u runs over A, and p acts by p.f = u.(f/g).
Writing V1 = span(low_basis) + g*C[x], membership is linear in the normal
form coefficients of u:

  * u . C[x] in V2 -- for a functional of order d at c it is enough to check
    u.(x-c)^s for s <= d + b_max (b_max the largest d-order available):
    beyond that every term of u.(x-c)^s is divisible by (x-c)^(d+1);
  * u . (v/g) is a polynomial lying in V2 for each low-basis v -- pole
    cancellation and the functional conditions, both linear.

Columns (monomials of u) are sorted by weighted degree, so the system for
degree k is a column prefix of the system for k_max: one reduction yields
every dimension, and the canonical nullspace gives nested bases (each basis
vector is supported on columns up to its free column).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, perm
from typing import Sequence

from .linalg import Poly, RatFunc, RowReducer, poly_divmod
from .subspace import Functional, SubspaceSpec
from .weyl import SymbolPoly, Weight, WeylEl, dim_A, monomial_basis


@dataclass(frozen=True)
class QFraction:
    """Operator u o g^{-1} in the quotient skew field, acting by f -> u.(f/g)."""

    u: WeylEl
    g: Poly

    def wdegree(self, weight: Weight) -> int | None:
        deg = self.u.wdegree(weight)
        if deg is None:
            return None
        return deg - weight.w1 * self.g.degree()

    def apply_poly(self, f: Poly) -> RatFunc:
        return self.u.apply_ratfunc(RatFunc(f, self.g))

    def to_dict(self) -> dict:
        return {"u": str(self.u), "g": str(self.g)}

    def __str__(self) -> str:
        if self.g == Poly.one():
            return str(self.u)
        return f"({self.u}) * ({self.g})^-1"


@dataclass(frozen=True)
class GradedPiece:
    """Basis of a filtered piece (weighted degree <= k) of a module or hom space."""

    kind: str                      # "module" | "hom"
    sources: tuple[SubspaceSpec, ...]
    weight: Weight
    k: int
    dim: int
    basis: tuple

    def to_dict(self) -> dict:
        if self.kind == "module":
            basis = [str(u) for u in self.basis]
        else:
            basis = [q.to_dict() for q in self.basis]
        return {
            "kind": self.kind,
            "sources": [s.name for s in self.sources],
            "weight": list(self.weight.as_tuple()),
            "k": self.k,
            "dim": self.dim,
            "basis": basis,
        }


def _functional_on_shifted_power(fn: Functional, m: int, a: int) -> Fraction:
    """fn(x^a * (x - c)^m) in closed form.

    (x^a (x-c)^m)^(e)(c) = C(e,m) m! * perm(a, e-m) * c^(a-e+m) for e >= m.
    """
    c = fn.point
    out = Fraction(0)
    for e, coeff in fn.terms:
        if e < m:
            continue
        p = perm(a, e - m)
        if p:
            out += coeff * comb(e, m) * factorial(m) * p * c ** (a - e + m)
    return out


def _g_adic_digits(p: Poly, g: Poly) -> list[Poly]:
    """Digits d_t with p = sum d_t g^t, deg d_t < deg g."""
    digits = []
    while not p.is_zero:
        q, r = poly_divmod(p, g)
        digits.append(r)
        p = q
    return digits


def _shift_digits_by_x(digits: list[Poly], g: Poly, gdeg: int) -> list[Poly]:
    """Digits of x*p from digits of p: x*d_t = c_t*g + e_t with a single
    carry c_t (the x^(gdeg-1) coefficient of d_t) since g is monic."""
    new: list[Poly] = []
    carry = Fraction(0)
    for d in digits:
        xd = d.shift_x(1)
        c = xd[gdeg]
        if c:
            xd = xd - g * c
        if carry:
            xd = xd + Poly.const(carry)
        new.append(xd)
        carry = c
    if carry:
        new.append(Poly.const(carry))
    return new


class _Tower:
    """One reduced linear system per (source, target, weight); every filtered
    piece up to kmax is a column prefix of it."""

    __slots__ = ("src", "dst", "weight", "kmax", "g", "gdeg",
                 "cols", "col_index", "reducer", "_basis_cache")

    def __init__(self, src: SubspaceSpec, dst: SubspaceSpec, weight: Weight, kmax: int):
        self.src = src
        self.dst = dst
        self.weight = weight
        self.kmax = kmax
        self.g = src.conductor
        self.gdeg = self.g.degree()
        k_u = kmax + weight.w1 * self.gdeg
        self.cols = monomial_basis(weight, k_u)
        self.col_index = {ab: i for i, ab in enumerate(self.cols)}
        self.reducer = RowReducer(len(self.cols))
        self._basis_cache: dict[int, tuple[tuple[Fraction, ...], ...]] = {}
        if self.cols:
            b_max = k_u // weight.w2
            self._add_target_rows(k_u, b_max)
            self._add_pole_rows(k_u, b_max)

    # the two condition blocks -------------------------------------------------

    def _add_target_rows(self, k_u: int, b_max: int) -> None:
        """u . C[x] in dst, checked on the basis (x-c)^s adapted to each
        functional; rows beyond s = d + b_max vanish identically."""
        ncols = len(self.cols)
        for fn in self.dst.functionals:
            d = fn.order
            for s in range(d + b_max + 1):
                row = [Fraction(0)] * ncols
                nonzero = False
                for idx, (a, b) in enumerate(self.cols):
                    if b > s or s - b > d:
                        continue
                    val = perm(s, b) * _functional_on_shifted_power(fn, s - b, a)
                    if val:
                        row[idx] = val
                        nonzero = True
                if nonzero:
                    self.reducer.add_row(row)

    def _add_pole_rows(self, k_u: int, b_max: int) -> None:
        """u . (v/g) polynomial and in dst, for each low-basis v of src.

        Per column x^a d^b:  x^a d^b . (v/g) = x^a P_b / g^(b+1) with
        P_b = P'_{b-1} g - b P_{b-1} g'.  The g-adic digits of x^a P_b give
        the pole part (digits 0..b, one row per pole order and x-power < deg g)
        and the polynomial part (digits > b), on which the target functionals
        are evaluated via a precomputed table of fn(x^j * g^t).
        """
        gdeg = self.gdeg
        if gdeg == 0 or not self.src.low_basis:
            return
        weight = self.weight
        ncols = len(self.cols)
        g_prime = self.g.derivative()
        fns = self.dst.functionals

        # fn(x^j * g^t), grown on demand
        gpows: list[Poly] = [Poly.one()]
        ltab: list[list[list[Fraction]]] = [[] for _ in fns]

        def l_entry(fi: int, t: int, j: int) -> Fraction:
            rows = ltab[fi]
            while len(rows) <= t:
                tt = len(rows)
                while len(gpows) <= tt:
                    gpows.append(gpows[-1] * self.g)
                gp = gpows[tt]
                rows.append([fns[fi].apply(gp.shift_x(j2)) for j2 in range(gdeg)])
            return rows[t][j]

        for v in self.src.low_basis:
            div_rows = [[Fraction(0)] * ncols for _ in range((b_max + 1) * gdeg)]
            fn_rows = [[Fraction(0)] * ncols for _ in fns]
            p_b = v
            for b in range(b_max + 1):
                if b:
                    p_b = p_b.derivative() * self.g - b * (p_b * g_prime)
                digits = _g_adic_digits(p_b, self.g)
                a_top = (k_u - b * weight.w2) // weight.w1
                for a in range(a_top + 1):
                    if a:
                        digits = _shift_digits_by_x(digits, self.g, gdeg)
                    idx = self.col_index.get((a, b))
                    if idx is None:
                        continue
                    for t, digit in enumerate(digits):
                        if digit.is_zero:
                            continue
                        if t <= b:
                            pole_order = b + 1 - t  # row group (pole_order - 1)
                            base = (pole_order - 1) * gdeg
                            for e, coeff in digit.items():
                                div_rows[base + e][idx] = coeff
                        else:
                            for fi in range(len(fns)):
                                acc = Fraction(0)
                                for e, coeff in digit.items():
                                    acc += coeff * l_entry(fi, t - b - 1, e)
                                if acc:
                                    fn_rows[fi][idx] += acc
            for row in div_rows:
                if any(row):
                    self.reducer.add_row(row)
            for row in fn_rows:
                if any(row):
                    self.reducer.add_row(row)

    # queries --------------------------------------------------------------------

    def ncols_at(self, k: int) -> int:
        return dim_A(self.weight, k + self.weight.w1 * self.gdeg)

    def dim(self, k: int) -> int:
        n = self.ncols_at(k)
        return n - self.reducer.prefix_rank(n)

    def basis_vectors(self, k: int) -> tuple[tuple[Fraction, ...], ...]:
        n = self.ncols_at(k)
        if n not in self._basis_cache:
            self._basis_cache[n] = self.reducer.nullspace(n)
        return self._basis_cache[n]

    def basis_elements(self, k: int) -> tuple[WeylEl, ...]:
        out = []
        for vec in self.basis_vectors(k):
            terms = {self.cols[i]: c for i, c in enumerate(vec) if c}
            out.append(WeylEl(terms))
        return tuple(out)


_MIN_BUILD_K = 12
_tower_cache: dict[tuple[SubspaceSpec, SubspaceSpec, Weight], _Tower] = {}


def _tower_for(src: SubspaceSpec, dst: SubspaceSpec, weight: Weight, k: int) -> _Tower:
    key = (src, dst, weight)
    tower = _tower_cache.get(key)
    if tower is None or tower.kmax < k:
        tower = _Tower(src, dst, weight, max(k, _MIN_BUILD_K))
        _tower_cache[key] = tower
    return tower


def clear_cache() -> None:
    """Drop all memoized towers (mainly for honest timing in tests)."""
    _tower_cache.clear()


_TRIVIAL = SubspaceSpec.trivial()


def module_piece(spec: SubspaceSpec, weight: Weight, k: int) -> GradedPiece:
    """Basis of {u in A : wdeg(u) <= k, u . C[x] in V}."""
    tower = _tower_for(_TRIVIAL, spec, weight, max(k, 0))
    basis = tower.basis_elements(k)
    return GradedPiece("module", (spec,), weight, k, len(basis), basis)


def hom_piece(src: SubspaceSpec, dst: SubspaceSpec, weight: Weight, k: int) -> GradedPiece:
    """Basis of {p : wdeg(p) <= k, p . V1 in V2} as operators u o g^{-1}."""
    tower = _tower_for(src, dst, weight, max(k, 0))
    basis = tuple(QFraction(u, tower.g) for u in tower.basis_elements(k))
    return GradedPiece("hom", (src, dst), weight, k, len(basis), basis)


def module_dims(spec: SubspaceSpec, weight: Weight, kmax: int, kmin: int = 0) -> list[int]:
    tower = _tower_for(_TRIVIAL, spec, weight, max(kmax, 0))
    return [tower.dim(k) for k in range(kmin, kmax + 1)]


def hom_dims(src: SubspaceSpec, dst: SubspaceSpec, weight: Weight, kmax: int, kmin: int = 0) -> list[int]:
    tower = _tower_for(src, dst, weight, max(kmax, 0))
    return [tower.dim(k) for k in range(kmin, kmax + 1)]


def gr_symbol_space(piece_k: GradedPiece, piece_prev: GradedPiece) -> tuple[SymbolPoly, ...]:
    """Basis of the degree-k graded piece as principal symbols.

    Because bases are nested, the symbols of the vectors new at level k are
    automatically independent and span the graded piece; its dimension is
    dim_k - dim_{k-1}.  Hom symbols are numerator forms, of weighted degree
    k + w1*deg(g).
    """
    if piece_k.kind != piece_prev.kind:
        raise ValueError("graded pieces of different kinds")
    if piece_k.sources != piece_prev.sources:
        raise ValueError("graded pieces of different sources")
    if piece_k.weight != piece_prev.weight:
        raise ValueError("graded pieces of different weights")
    if piece_prev.k != piece_k.k - 1:
        raise ValueError("pieces must sit at consecutive degrees")
    weight = piece_k.weight
    new = piece_k.basis[piece_prev.dim:]
    if piece_k.kind == "module":
        return tuple(u.top_component(weight, piece_k.k) for u in new)
    gdeg = piece_k.sources[0].conductor.degree()
    target = piece_k.k + weight.w1 * gdeg
    return tuple(q.u.top_component(weight, target) for q in new)


def gr_inclusion_check(spec: SubspaceSpec, weight: Weight, k: int) -> bool:
    """Does the degree-k graded piece of End sit inside gr A?

    In numerator form this is divisibility of every symbol by x^deg(g).
    """
    piece_k = hom_piece(spec, spec, weight, k)
    piece_prev = hom_piece(spec, spec, weight, k - 1)
    gdeg = spec.conductor.degree()
    symbols = gr_symbol_space(piece_k, piece_prev)
    return all(sym.divisible_by_x(gdeg) for sym in symbols)
