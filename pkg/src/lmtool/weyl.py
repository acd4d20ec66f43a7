"""The first Weyl algebra A = C<x, d> / (dx - xd - 1) in normal order.

Elements are finite sums c * x^a * d^b (d denotes the derivative operator).
Products are renormalized with d^b x^a = sum_i C(b,i) * a!/(a-i)! * x^(a-i) d^(b-i).

A weight w = (w1, w2) of strictly positive integers filters A by
wdeg(x^a d^b) = a*w1 + b*w2; the associated graded algebra is the commutative
polynomial ring in the principal symbols of x and d, represented here by
:class:`SymbolPoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, perm
from typing import Iterable, Mapping

from .linalg import Poly, RatFunc, format_monomial_sum, parse_monomial_sum


@dataclass(frozen=True)
class Weight:
    """Filtration weight (w1, w2); both components must be positive integers."""

    w1: int
    w2: int

    def __post_init__(self) -> None:
        if not (isinstance(self.w1, int) and isinstance(self.w2, int)):
            raise ValueError("weights must be integers")
        if self.w1 < 1 or self.w2 < 1:
            raise ValueError("weights must be strictly positive")

    @staticmethod
    def parse(text: str) -> "Weight":
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"weight must be 'w1,w2', got {text!r}")
        return Weight(int(parts[0]), int(parts[1]))

    def degree(self, a: int, b: int) -> int:
        return a * self.w1 + b * self.w2

    def as_tuple(self) -> tuple[int, int]:
        return (self.w1, self.w2)

    def __str__(self) -> str:
        return f"({self.w1},{self.w2})"


def _clean(terms: dict[tuple[int, int], Fraction]) -> dict[tuple[int, int], Fraction]:
    return {k: v for k, v in terms.items() if v}


class WeylEl:
    """Element of the Weyl algebra in normal order: {(a, b): coeff}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Fraction | int] | Iterable[tuple[tuple[int, int], Fraction | int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict[tuple[int, int], Fraction] = {}
        for (a, b), v in items:
            if a < 0 or b < 0:
                raise ValueError("negative exponent in Weyl element")
            v = Fraction(v)
            key = (int(a), int(b))
            if key in t:
                v += t[key]
            if v:
                t[key] = v
            elif key in t:
                del t[key]
        self._terms = t
        self._hash: int | None = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "WeylEl":
        return WeylEl()

    @staticmethod
    def one() -> "WeylEl":
        return WeylEl({(0, 0): 1})

    @staticmethod
    def x(power: int = 1) -> "WeylEl":
        return WeylEl({(power, 0): 1})

    @staticmethod
    def d(power: int = 1) -> "WeylEl":
        return WeylEl({(0, power): 1})

    @staticmethod
    def scalar(value: Fraction | int) -> "WeylEl":
        return WeylEl({(0, 0): Fraction(value)})

    @staticmethod
    def from_poly(p: Poly) -> "WeylEl":
        return WeylEl({(e, 0): v for e, v in p.items()})

    @staticmethod
    def parse(text: str) -> "WeylEl":
        return WeylEl(parse_monomial_sum(text, ("x", "d")))

    # -- inspection -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._terms.items())

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def x_part(self) -> Poly:
        """The purely polynomial part (all terms with d-order 0)."""
        return Poly({a: v for (a, b), v in self._terms.items() if b == 0})

    def max_d_order(self) -> int:
        return max((b for (_, b) in self._terms), default=0)

    # -- algebra --------------------------------------------------------------

    def __add__(self, other: "WeylEl") -> "WeylEl":
        if not isinstance(other, WeylEl):
            return NotImplemented
        t = dict(self._terms)
        for k, v in other._terms.items():
            w = t.get(k, Fraction(0)) + v
            if w:
                t[k] = w
            elif k in t:
                del t[k]
        return WeylEl(t)

    def __sub__(self, other: "WeylEl") -> "WeylEl":
        return self + (-other)

    def __neg__(self) -> "WeylEl":
        return WeylEl({k: -v for k, v in self._terms.items()})

    def __mul__(self, other: "WeylEl | Poly | Fraction | int") -> "WeylEl":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return WeylEl({k: v * f for k, v in self._terms.items()}) if f else WeylEl()
        if isinstance(other, Poly):
            other = WeylEl.from_poly(other)
        if not isinstance(other, WeylEl):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                c = c1 * c2
                # d^b1 x^a2 = sum_i C(b1,i) a2!/(a2-i)! x^(a2-i) d^(b1-i)
                for i in range(min(b1, a2) + 1):
                    key = (a1 + a2 - i, b1 + b2 - i)
                    w = out.get(key, Fraction(0)) + c * comb(b1, i) * perm(a2, i)
                    if w:
                        out[key] = w
                    elif key in out:
                        del out[key]
        return WeylEl(out)

    def __rmul__(self, other: "Poly | Fraction | int") -> "WeylEl":
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, Poly):
            return WeylEl.from_poly(other) * self
        return NotImplemented

    def __pow__(self, n: int) -> "WeylEl":
        if n < 0:
            raise ValueError("negative power of Weyl element")
        out = WeylEl.one()
        for _ in range(n):
            out = out * self
        return out

    # -- action on functions ---------------------------------------------------

    def apply_poly(self, f: Poly) -> Poly:
        """Apply to a polynomial: (x^a d^b) . f = x^a * f^(b)."""
        derivs = [f]
        for _ in range(self.max_d_order()):
            derivs.append(derivs[-1].derivative())
        out = Poly()
        for (a, b), c in self._terms.items():
            out = out + (derivs[b] * c).shift_x(a)
        return out

    def apply_ratfunc(self, r: RatFunc) -> RatFunc:
        """Apply to a rational function (derivatives via the quotient rule)."""
        derivs = [r]
        for _ in range(self.max_d_order()):
            derivs.append(derivs[-1].derivative())
        out = RatFunc(Poly())
        for (a, b), c in self._terms.items():
            out = out + derivs[b] * Poly({a: c})
        return out

    # -- filtration -------------------------------------------------------------

    def wdegree(self, weight: Weight) -> int | None:
        """Weighted degree, or None (minus infinity) for zero."""
        if not self._terms:
            return None
        return max(weight.degree(a, b) for (a, b) in self._terms)

    def top_component(self, weight: Weight, k: int) -> "SymbolPoly":
        """Principal symbol at weighted degree k (terms of lower degree drop).

        Raises ValueError if the element has weighted degree above k.
        """
        deg = self.wdegree(weight)
        if deg is not None and deg > k:
            raise ValueError(f"element has weighted degree {deg} > {k}")
        return SymbolPoly({key: v for key, v in self._terms.items() if weight.degree(*key) == k})

    # -- identity -----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylEl) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_monomial_sum(self._terms, ("x", "d"))

    def __repr__(self) -> str:
        return f"WeylEl({self})"


def parse_weyl(text: str) -> WeylEl:
    """Parse the text form, e.g. "x^2*d^2 + 2*x*d - 2"."""
    return WeylEl.parse(text)


class SymbolPoly:
    """Polynomial in the commuting symbols of x and d (the associated graded
    algebra of A is C[x, y]); used for principal-symbol computations."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Fraction | int] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict[tuple[int, int], Fraction] = {}
        for (a, b), v in items:
            v = Fraction(v)
            key = (int(a), int(b))
            if key in t:
                v += t[key]
            if v:
                t[key] = v
            elif key in t:
                del t[key]
        self._terms = t
        self._hash: int | None = None

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._terms.items())

    def __add__(self, other: "SymbolPoly") -> "SymbolPoly":
        t = dict(self._terms)
        for k, v in other._terms.items():
            w = t.get(k, Fraction(0)) + v
            if w:
                t[k] = w
            elif k in t:
                del t[k]
        return SymbolPoly(t)

    def __mul__(self, other: "SymbolPoly | Fraction | int") -> "SymbolPoly":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return SymbolPoly({k: v * f for k, v in self._terms.items()}) if f else SymbolPoly()
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                w = out.get(key, Fraction(0)) + c1 * c2
                if w:
                    out[key] = w
                elif key in out:
                    del out[key]
        return SymbolPoly(out)

    __rmul__ = __mul__

    def is_homogeneous(self, weight: Weight) -> bool:
        degs = {weight.degree(a, b) for (a, b) in self._terms}
        return len(degs) <= 1

    def min_x_exponent(self) -> int | None:
        """Smallest x-exponent across terms (None for zero); the symbol is
        divisible by x^m exactly when this is >= m."""
        return min((a for (a, _) in self._terms), default=None)

    def divisible_by_x(self, m: int) -> bool:
        if self.is_zero:
            return True
        return self.min_x_exponent() >= m

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymbolPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_monomial_sum(self._terms, ("x", "y"))

    def __repr__(self) -> str:
        return f"SymbolPoly({self})"


def dim_A(weight: Weight, k: int) -> int:
    """Dimension of the filtered piece A_k(w): lattice points with
    a*w1 + b*w2 <= k.  For weight (1,1) this is (k+1)(k+2)/2."""
    if k < 0:
        return 0
    return sum((k - b * weight.w2) // weight.w1 + 1 for b in range(k // weight.w2 + 1))


def monomial_basis(weight: Weight, k: int) -> tuple[tuple[int, int], ...]:
    """Monomials (a, b) of weighted degree <= k, sorted by (degree, b).

    With this order the basis of A_j is a prefix of the basis of A_k for
    every j <= k, which the graded-piece solver relies on.
    """
    if k < 0:
        return ()
    out = []
    for b in range(k // weight.w2 + 1):
        rem = k - b * weight.w2
        for a in range(rem // weight.w1 + 1):
            out.append((weight.degree(a, b), b, a))
    out.sort()
    return tuple((a, b) for (_, b, a) in out)
