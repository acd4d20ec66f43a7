"""Subspaces of C[x] cut out by finitely many single-point linear conditions.

A subspace spec describes V = {f in C[x] : l_1(f) = ... = l_m(f) = 0} where
each functional has the shape l(f) = sum_e coeff_e * f^(e)(c) for a single
rational point c.  Such V contain g*C[x] for the conductor polynomial
g = prod_j (x - c_j)^(d_j + 1) (d_j the maximal derivative order used at c_j),
so V = span(low_basis) + g*C[x] with low_basis a basis of the part of V of
degree below deg g.  This finite data is everything the graded solvers need.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import Poly, RowReducer, rat_from_str, rat_to_str


class SpecError(ValueError):
    """Raised for malformed subspace spec documents."""


@dataclass(frozen=True)
class Functional:
    """Single-point functional f -> sum_e coeff_e * f^(e)(point).

    Functionals supported at several points are not representable (and the
    input format cannot express them); at least one term must be nonzero.
    """

    point: Fraction
    terms: tuple[tuple[int, Fraction], ...]  # (derivative order, coefficient)

    def __post_init__(self) -> None:
        seen: dict[int, Fraction] = {}
        for order, coeff in self.terms:
            if order < 0:
                raise SpecError("derivative order must be >= 0")
            coeff = Fraction(coeff)
            if coeff:
                seen[order] = seen.get(order, Fraction(0)) + coeff
        cleaned = tuple(sorted((o, c) for o, c in seen.items() if c))
        if not cleaned:
            raise SpecError("functional has no nonzero term")
        object.__setattr__(self, "point", Fraction(self.point))
        object.__setattr__(self, "terms", cleaned)

    @property
    def order(self) -> int:
        """Maximal derivative order appearing."""
        return self.terms[-1][0]

    def apply(self, f: Poly) -> Fraction:
        out = Fraction(0)
        deriv = f
        level = 0
        for order, coeff in self.terms:
            while level < order:
                deriv = deriv.derivative()
                level += 1
            out += coeff * deriv(self.point)
        return out

    def __str__(self) -> str:
        parts = [f"{rat_to_str(c)}*f^({o})({rat_to_str(self.point)})" for o, c in self.terms]
        return " + ".join(parts)


def functional_apply(functional: Functional, f: Poly) -> Fraction:
    return functional.apply(f)


def _normalize_functionals(functionals: Iterable[Functional]) -> tuple[Functional, ...]:
    """Canonical form: group by point, row-reduce each point's coefficient
    matrix (deduplicates and drops dependent functionals), sort points."""
    by_point: dict[Fraction, list[Functional]] = {}
    for fn in functionals:
        by_point.setdefault(fn.point, []).append(fn)
    out: list[Functional] = []
    for point in sorted(by_point):
        fns = by_point[point]
        width = max(fn.order for fn in fns) + 1
        red = RowReducer(width)
        for fn in fns:
            row = [Fraction(0)] * width
            for order, coeff in fn.terms:
                row[order] += coeff
            red.add_row(row)
        _, rows = red.rref()
        for row in rows:
            out.append(Functional(point, tuple((o, c) for o, c in enumerate(row) if c)))
    return tuple(out)


@dataclass(frozen=True)
class SubspaceSpec:
    """Validated subspace description with derived conductor and low basis.

    Equality and hashing use the normalized functionals only, so two specs
    defining the same subspace through different presentations compare equal.
    """

    name: str
    functionals: tuple[Functional, ...]
    gaps: tuple[int, ...] | None = None
    warnings: tuple[str, ...] = ()
    conductor: Poly = field(init=False)
    low_basis: tuple[Poly, ...] = field(init=False)

    def __post_init__(self) -> None:
        normalized = _normalize_functionals(self.functionals)
        object.__setattr__(self, "functionals", normalized)
        by_point: dict[Fraction, int] = {}
        for fn in normalized:
            by_point[fn.point] = max(by_point.get(fn.point, -1), fn.order)
        g = Poly.one()
        for point in sorted(by_point):
            g = g * (Poly.x() - Poly.const(point)) ** (by_point[point] + 1)
        object.__setattr__(self, "conductor", g)
        object.__setattr__(self, "low_basis", self._compute_low_basis())

    def _compute_low_basis(self) -> tuple[Poly, ...]:
        deg = self.conductor.degree()
        if deg == 0:
            return ()
        red = RowReducer(deg)
        for fn in self.functionals:
            red.add_row([fn.apply(Poly.x(i) if i else Poly.one()) for i in range(deg)])
        return tuple(Poly(dict(enumerate(vec))) for vec in red.nullspace())

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def trivial(name: str = "trivial") -> "SubspaceSpec":
        return SubspaceSpec(name=name, functionals=(), gaps=())

    @staticmethod
    def from_gaps(name: str, gaps: Sequence[int]) -> "SubspaceSpec":
        """Monomial spec: V = span{x^i : i not in gaps} via f^(gamma)(0) = 0."""
        gap_set = sorted(set(int(g) for g in gaps))
        if any(g < 0 for g in gap_set):
            raise SpecError("gaps must be non-negative integers")
        fns = tuple(Functional(Fraction(0), ((g, Fraction(1)),)) for g in gap_set)
        warnings = ()
        if gap_set and not _complement_closed(gap_set):
            warnings = (
                "gap complement is not closed under addition; "
                "the subspace is not a semigroup algebra",
            )
        return SubspaceSpec(name=name, functionals=fns, gaps=tuple(gap_set), warnings=warnings)

    @staticmethod
    def from_functionals(name: str, functionals: Sequence[Functional]) -> "SubspaceSpec":
        return SubspaceSpec(name=name, functionals=tuple(functionals))

    # -- queries -----------------------------------------------------------------

    def contains(self, f: Poly) -> bool:
        """Membership test for V (all functionals vanish)."""
        return all(fn.apply(f) == 0 for fn in self.functionals)

    @property
    def conductor_degree(self) -> int:
        return self.conductor.degree()

    @property
    def points(self) -> tuple[Fraction, ...]:
        return tuple(sorted({fn.point for fn in self.functionals}))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubspaceSpec) and self.functionals == other.functionals

    def __hash__(self) -> int:
        return hash(self.functionals)

    def describe(self) -> dict:
        out: dict = {"name": self.name}
        if self.gaps is not None:
            out["kind"] = "monomial"
            out["gaps"] = list(self.gaps)
        else:
            out["kind"] = "conditions"
            out["points"] = [rat_to_str(p) for p in self.points]
        out["num_functionals"] = len(self.functionals)
        out["conductor"] = str(self.conductor)
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def _complement_closed(gaps: Sequence[int]) -> bool:
    """Is N \\ gaps closed under addition?  Only sums <= max(gaps) matter."""
    gap_set = set(gaps)
    top = max(gaps)
    non_gaps = [s for s in range(top + 1) if s not in gap_set]
    return not any(s + t in gap_set for s in non_gaps for t in non_gaps)


_TOP_KEYS = {"name", "kind", "gaps", "points"}
_POINT_KEYS = {"c", "functionals"}
_TERM_KEYS = {"order", "coeff"}


def parse_spec(document: str | dict) -> SubspaceSpec:
    """Parse and validate a subspace spec document (JSON text or dict).

    Two kinds are accepted::

        {"kind": "monomial", "gaps": [1, 2]}
        {"kind": "conditions",
         "points": [{"c": "0", "functionals": [[{"order": 1, "coeff": "1"}]]}]}

    Unknown keys are rejected; duplicate points are merged.  Rationals may be
    written as integers or "p/q" strings.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SpecError("spec document must be a JSON object")
    unknown = set(document) - _TOP_KEYS
    if unknown:
        raise SpecError(f"unknown keys in spec: {sorted(unknown)}")
    kind = document.get("kind")
    if kind not in ("monomial", "conditions"):
        raise SpecError("spec 'kind' must be 'monomial' or 'conditions'")
    name = document.get("name")
    if name is not None and not isinstance(name, str):
        raise SpecError("spec 'name' must be a string")

    if kind == "monomial":
        if "points" in document:
            raise SpecError("monomial spec cannot carry 'points'")
        gaps = document.get("gaps")
        if not isinstance(gaps, list) or not all(isinstance(g, int) and g >= 0 for g in gaps):
            raise SpecError("'gaps' must be a list of non-negative integers")
        if name is None:
            name = "gaps-" + "-".join(str(g) for g in sorted(set(gaps))) if gaps else "trivial"
        return SubspaceSpec.from_gaps(name, gaps)

    if "gaps" in document:
        raise SpecError("conditions spec cannot carry 'gaps'")
    points = document.get("points")
    if not isinstance(points, list) or not points:
        raise SpecError("'points' must be a non-empty list (use a monomial "
                        "spec with empty gaps for the trivial subspace)")
    functionals: list[Functional] = []
    for entry in points:
        if not isinstance(entry, dict):
            raise SpecError("each point must be an object")
        unknown = set(entry) - _POINT_KEYS
        if unknown:
            raise SpecError(f"unknown keys in point: {sorted(unknown)}")
        if "c" not in entry or "functionals" not in entry:
            raise SpecError("point needs 'c' and 'functionals'")
        try:
            c = rat_from_str(entry["c"])
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
        fns = entry["functionals"]
        if not isinstance(fns, list) or not fns:
            raise SpecError("'functionals' must be a non-empty list")
        for fn_terms in fns:
            if not isinstance(fn_terms, list) or not fn_terms:
                raise SpecError("each functional must be a non-empty list of terms")
            terms = []
            for term in fn_terms:
                if not isinstance(term, dict):
                    raise SpecError("each term must be an object")
                unknown = set(term) - _TERM_KEYS
                if unknown:
                    raise SpecError(f"unknown keys in term: {sorted(unknown)}")
                if "order" not in term or "coeff" not in term:
                    raise SpecError("term needs 'order' and 'coeff'")
                order = term["order"]
                if not isinstance(order, int) or order < 0:
                    raise SpecError("'order' must be a non-negative integer")
                try:
                    coeff = rat_from_str(term["coeff"])
                except ValueError as exc:
                    raise SpecError(str(exc)) from exc
                terms.append((order, coeff))
            if not any(c for _, c in terms):
                raise SpecError("functional has no nonzero term")
            functionals.append(Functional(c, tuple(terms)))
    if name is None:
        name = f"points-{len({fn.point for fn in functionals})}"
    return SubspaceSpec.from_functionals(name, functionals)
