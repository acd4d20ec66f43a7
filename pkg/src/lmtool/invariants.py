"""Hilbert sequences, Euler-characteristic fits, and the invariant checks.

The numerical invariants of a subspace spec V:

  * p_D -- the stable value of p(k) = dim A_k - dim End_k, where End is the
    endomorphism ring of the ideal attached to V (weight-independent);
  * n -- the constant term of the quadratic fit h(k) = (k+a+1)(k+a+2)/2 - n
    to the Hilbert sequence of the ideal at weight (1,1), with a an integer
    shift absorbing the choice of embedding;
  * the headline identity p_D = 2n, its relative version p_12 = n_1 + n_2
    for hom spaces between two ideals, and the dual identity (the fit
    constant of Hom(M, A) equals n).

All fits require a run of exactly matching tail entries before they are
trusted: two entries pin (shift, constant) and at least three more must
confirm them, so a fit needs a window of five.  Anything shorter raises
NotStabilized, which callers surface as "raise kmax".
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence, Union

from .graded import gr_inclusion_check, hom_dims, module_dims
from .subspace import SubspaceSpec
from .weyl import Weight, dim_A

W11 = Weight(1, 1)
DEFAULT_WEIGHTS = (Weight(1, 1), Weight(1, 2), Weight(2, 1), Weight(2, 3))

_STABLE_WINDOW = 5  # 2 anchors + 3 confirmations


class NotStabilizedError(RuntimeError):
    """The sequence has not reached its eventual quadratic; raise kmax."""


class NonPolynomialError(RuntimeError):
    """The tail of the sequence fits no quadratic of the Euler family."""


class NegativeChernError(RuntimeError):
    """A fit produced a negative constant term; reported, never swallowed."""


HilbertSource = Union[str, SubspaceSpec, tuple[SubspaceSpec, SubspaceSpec]]


@dataclass(frozen=True)
class HilbertSeq:
    """Dimensions of filtered pieces for k = k_min .. k_max."""

    source: str
    weight: Weight
    k_min: int
    k_max: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.k_max - self.k_min + 1:
            raise ValueError("value count does not match k range")

    def value_at(self, k: int) -> int:
        return self.values[k - self.k_min]


@dataclass(frozen=True)
class FitResult:
    """Exact fit h(k) = (k+shift+1)(k+shift+2)/2 - constant on the window."""

    shift: int
    constant: int
    window: tuple[int, int]
    exact: bool

    def predicted(self, k: int) -> int:
        return (k + self.shift + 1) * (k + self.shift + 2) // 2 - self.constant


def hilbert_seq(source: HilbertSource, weight: Weight, k_min: int = 0, k_max: int = 12) -> HilbertSeq:
    """Hilbert sequence of "A", of a spec's ideal, or of a hom space (pair)."""
    if k_max < k_min:
        raise ValueError("k_max below k_min")
    if source == "A":
        values = tuple(dim_A(weight, k) for k in range(k_min, k_max + 1))
        label = "A"
    elif isinstance(source, SubspaceSpec):
        values = tuple(module_dims(source, weight, k_max, k_min))
        label = f"module({source.name})"
    elif isinstance(source, tuple) and len(source) == 2:
        src, dst = source
        values = tuple(hom_dims(src, dst, weight, k_max, k_min))
        label = f"hom({src.name},{dst.name})"
    else:
        raise ValueError(f"unsupported Hilbert source: {source!r}")
    return HilbertSeq(label, weight, k_min, k_max, values)


def fit_euler(h: HilbertSeq) -> FitResult:
    """Fit the tail of a Hilbert sequence to (k+a+1)(k+a+2)/2 - c.

    The last two values determine (a, c); the window is the maximal exact
    suffix.  Raises NotStabilized when the window is shorter than five
    entries and NonPolynomial when even the last three values lie on no
    quadratic of the family.
    """
    vals = h.values
    if len(vals) < _STABLE_WINDOW:
        raise NotStabilizedError(
            f"{h.source}: need at least {_STABLE_WINDOW} values to fit, got {len(vals)}"
        )
    if any(vals[i + 1] < vals[i] for i in range(len(vals) - 1)):
        raise NonPolynomialError(f"{h.source}: sequence of dimensions is not non-decreasing")
    if vals[-1] - 2 * vals[-2] + vals[-3] != 1:
        raise NonPolynomialError(
            f"{h.source}: tail {vals[-3:]} fits no Euler quadratic "
            "(second difference is not 1); a larger kmax may stabilize it"
        )
    k_top = h.k_max
    shift = vals[-1] - vals[-2] - k_top - 1
    constant = (k_top + shift + 1) * (k_top + shift + 2) // 2 - vals[-1]
    fit = FitResult(shift, constant, (k_top, k_top), True)
    k0 = k_top
    while k0 - 1 >= h.k_min and h.value_at(k0 - 1) == fit.predicted(k0 - 1):
        k0 -= 1
    length = k_top - k0 + 1
    if length < _STABLE_WINDOW:
        raise NotStabilizedError(
            f"{h.source}: fit window [{k0},{k_top}] has only {length} entries; raise kmax"
        )
    return FitResult(shift, constant, (k0, k_top), length >= 3)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LmResult:
    """Stabilized codimension p_D with its full p-sequence."""

    spec_name: str
    weight: Weight
    value: int
    p_values: tuple[int, ...]


def lm_invariant(spec: SubspaceSpec, weight: Weight = W11, kmax: int = 12) -> LmResult:
    """p_D = lim dim A_k - dim End_k; requires the last three entries to agree."""
    if kmax < 4:
        raise ValueError("kmax must be >= 4")
    dims = hom_dims(spec, spec, weight, kmax)
    p = tuple(dim_A(weight, k) - d for k, d in enumerate(dims))
    if not (p[-1] == p[-2] == p[-3]):
        raise NotStabilizedError(
            f"p-sequence for {spec.name} at {weight} still moving: tail {p[-3:]}; raise kmax"
        )
    return LmResult(spec.name, weight, p[-1], p)


@dataclass(frozen=True)
class ChernResult:
    spec_name: str
    n: int
    shift: int
    fit: FitResult
    sequence: HilbertSeq


def chern_from_sequence(h: HilbertSeq, name: str = "") -> ChernResult:
    fit = fit_euler(h)
    if fit.constant < 0:
        raise NegativeChernError(
            f"{name or h.source}: fit constant {fit.constant} is negative"
        )
    return ChernResult(name or h.source, fit.constant, fit.shift, fit, h)


def chern_number(spec: SubspaceSpec, kmax: int = 12) -> ChernResult:
    """Second invariant n of the ideal of V: shift-normalized fit constant of
    its Hilbert sequence at weight (1,1)."""
    return chern_from_sequence(hilbert_seq(spec, W11, 0, kmax), spec.name)


@dataclass(frozen=True)
class RelativeResult:
    names: tuple[str, str]
    p_12: int
    shift: int
    n_1: int
    n_2: int
    ok: bool
    sequence: HilbertSeq


def relative_invariant(src: SubspaceSpec, dst: SubspaceSpec, kmax: int = 12) -> RelativeResult:
    """Relative invariant of Hom(M_1, M_2) and the verdict p_12 = n_1 + n_2."""
    seq = hilbert_seq((src, dst), W11, 0, kmax)
    fit = fit_euler(seq)
    n_1 = chern_number(src, kmax).n
    n_2 = chern_number(dst, kmax).n
    return RelativeResult(
        (src.name, dst.name), fit.constant, fit.shift, n_1, n_2,
        fit.constant == n_1 + n_2, seq,
    )


@dataclass(frozen=True)
class DualResult:
    spec_name: str
    constant: int
    shift: int
    n: int
    ok: bool
    sequence: HilbertSeq


def dual_check(spec: SubspaceSpec, kmax: int = 12) -> DualResult:
    """Fit Hom(M, A) and compare its constant with n."""
    seq = hilbert_seq((spec, SubspaceSpec.trivial()), W11, 0, kmax)
    fit = fit_euler(seq)
    n = chern_number(spec, kmax).n
    return DualResult(spec.name, fit.constant, fit.shift, n, fit.constant == n, seq)


@dataclass(frozen=True)
class WeightIndependenceResult:
    spec_name: str
    values: tuple[tuple[Weight, int], ...]
    p_sequences: tuple[tuple[Weight, tuple[int, ...]], ...]
    ok: bool


def weight_independence(
    spec: SubspaceSpec,
    weights: Sequence[Weight] = DEFAULT_WEIGHTS,
    kmax: int = 12,
) -> WeightIndependenceResult:
    """p_D computed at each weight; verdict true when all values agree."""
    if len(weights) < 2:
        raise ValueError("weight independence needs at least two weights")
    results = [lm_invariant(spec, w, kmax) for w in weights]
    values = tuple((r.weight, r.value) for r in results)
    ok = len({v for _, v in values}) == 1
    return WeightIndependenceResult(
        spec.name, values, tuple((r.weight, r.p_values) for r in results), ok
    )


def telescoping_check(spec: SubspaceSpec, weight: Weight = W11, kmax: int = 12) -> bool:
    """Partial sums of graded-piece dimensions must reproduce the filtered
    codimension at every level: sum_{i<=k} (gr A_i - gr End_i) = dim A_k - dim End_k."""
    dims = hom_dims(spec, spec, weight, kmax, kmin=-1)  # dims[0] is level -1
    running = 0
    prev_a = 0
    for k in range(0, kmax + 1):
        a_k = dim_A(weight, k)
        gr_a = a_k - prev_a
        gr_d = dims[k + 1] - dims[k]
        running += gr_a - gr_d
        if running != a_k - dims[k + 1]:
            return False
        prev_a = a_k
    return True


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Report:
    """Carrier for everything a CLI verb needs to emit; optional fields stay
    None when a verb does not compute them.  Verdicts are recomputable from
    the embedded sequences."""

    name: str
    kmax: int
    weight: Weight = W11
    weights: tuple[Weight, ...] | None = None
    hilbert_M: tuple[int, ...] | None = None
    hilbert_D: tuple[int, ...] | None = None
    hilbert_dual: tuple[int, ...] | None = None
    hilbert_hom: tuple[int, ...] | None = None
    p_by_weight: tuple[tuple[Weight, tuple[int, ...]], ...] | None = None
    shift_a: int | None = None
    n: int | None = None
    p_D: int | None = None
    p_12: int | None = None
    n_pair: tuple[int, int] | None = None
    d_fit: tuple[int, int] | None = None      # (shift, constant) of the End fit
    dual_constant: int | None = None
    verdicts: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self, timing: bool = False) -> dict:
        out: dict = {
            "name": self.name,
            "weight": list(self.weight.as_tuple()),
            "kmax": self.kmax,
        }
        if self.weights is not None:
            out["weights"] = [list(w.as_tuple()) for w in self.weights]
        for key in ("hilbert_M", "hilbert_D", "hilbert_dual", "hilbert_hom"):
            val = getattr(self, key)
            if val is not None:
                out[key] = list(val)
        if self.p_by_weight is not None:
            out["p_by_weight"] = {str(w): list(p) for w, p in self.p_by_weight}
        for key in ("shift_a", "n", "p_D", "p_12"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.n_pair is not None:
            out["n_1"], out["n_2"] = self.n_pair
        if self.d_fit is not None:
            out["d_fit"] = {"shift": self.d_fit[0], "constant": self.d_fit[1]}
        if self.dual_constant is not None:
            out["dual_constant"] = self.dual_constant
        out["verdicts"] = dict(self.verdicts)
        out["ok"] = self.ok
        if self.warnings:
            out["warnings"] = list(self.warnings)
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def verify_lm_chern(spec: SubspaceSpec, kmax: int = 12) -> Report:
    """The headline check: p_D = 2n at weight (1,1), with the End-sequence fit
    cross-checked to have shift 0 and constant p_D."""
    t0 = time.perf_counter()
    ch = chern_number(spec, kmax)
    lm = lm_invariant(spec, W11, kmax)
    d_seq = hilbert_seq((spec, spec), W11, 0, kmax)
    d_fit = fit_euler(d_seq)
    d_ok = d_fit.shift == 0 and d_fit.constant == lm.value
    return Report(
        name=spec.name,
        kmax=kmax,
        weight=W11,
        hilbert_M=ch.sequence.values,
        hilbert_D=d_seq.values,
        p_by_weight=((W11, lm.p_values),),
        shift_a=ch.shift,
        n=ch.n,
        p_D=lm.value,
        d_fit=(d_fit.shift, d_fit.constant),
        verdicts={"t2": lm.value == 2 * ch.n and d_ok},
        warnings=spec.warnings,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def full_report(
    spec: SubspaceSpec,
    kmax: int = 12,
    weights: Sequence[Weight] = DEFAULT_WEIGHTS,
) -> Report:
    """Full verification: headline identity, dual fit, weight independence,
    graded inclusion at every level, and the telescoping identity."""
    t0 = time.perf_counter()
    base = verify_lm_chern(spec, kmax)
    dual = dual_check(spec, kmax)
    wind = weight_independence(spec, weights, kmax)
    gr_ok = all(
        gr_inclusion_check(spec, w, k) for w in weights for k in range(0, kmax + 1)
    )
    tel_ok = all(telescoping_check(spec, w, kmax) for w in weights)
    return Report(
        name=spec.name,
        kmax=kmax,
        weight=W11,
        weights=tuple(weights),
        hilbert_M=base.hilbert_M,
        hilbert_D=base.hilbert_D,
        hilbert_dual=dual.sequence.values,
        p_by_weight=wind.p_sequences,
        shift_a=base.shift_a,
        n=base.n,
        p_D=base.p_D,
        d_fit=base.d_fit,
        dual_constant=dual.constant,
        verdicts={
            "t2": base.verdicts["t2"],
            "dual": dual.ok,
            "weights": wind.ok,
            "gr_inclusion": gr_ok,
            "telescoping": tel_ok,
        },
        warnings=spec.warnings,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


# -- serialization helpers ----------------------------------------------------

def report_csv(report: Report) -> str:
    """Hilbert table: k, dim_A, dim_M, dim_D, p_k.

    Dual/hom sequences get their own column only when the standard module
    and endomorphism columns are absent (dual and relative runs).
    """
    primary = report.hilbert_M is not None or report.hilbert_D is not None
    cols: list[tuple[str, list[int] | None]] = [
        ("dim_A", [dim_A(report.weight, k) for k in range(report.kmax + 1)]),
        ("dim_M", list(report.hilbert_M) if report.hilbert_M is not None else None),
        ("dim_D", list(report.hilbert_D) if report.hilbert_D is not None else None),
        ("dim_dual", list(report.hilbert_dual) if report.hilbert_dual is not None and not primary else None),
        ("dim_hom", list(report.hilbert_hom) if report.hilbert_hom is not None and not primary else None),
    ]
    present = [(name, vals) for name, vals in cols if vals is not None]
    header = ["k"] + [name for name, _ in present]
    p_col: list[int] | None = None
    if report.hilbert_D is not None:
        p_col = [dim_A(report.weight, k) - d for k, d in enumerate(report.hilbert_D)]
        header.append("p_k")
    lines = [",".join(header)]
    for k in range(report.kmax + 1):
        row = [str(k)] + [str(vals[k]) for _, vals in present]
        if p_col is not None:
            row.append(str(p_col[k]))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def report_text(report: Report) -> str:
    lines = [f"spec: {report.name}"]
    lines.append(f"kmax: {report.kmax}  weight: {report.weight}")
    for label in ("hilbert_M", "hilbert_D", "hilbert_dual", "hilbert_hom"):
        val = getattr(report, label)
        if val is not None:
            lines.append(f"{label}: {list(val)}")
    if report.p_by_weight is not None:
        for w, p in report.p_by_weight:
            lines.append(f"p{w}: {list(p)}")
    for label in ("shift_a", "n", "p_D", "p_12", "dual_constant"):
        val = getattr(report, label)
        if val is not None:
            lines.append(f"{label}: {val}")
    if report.n_pair is not None:
        lines.append(f"n_1: {report.n_pair[0]}  n_2: {report.n_pair[1]}")
    if report.verdicts:
        verdict_str = "  ".join(f"{k}={str(v).lower()}" for k, v in report.verdicts.items())
        lines.append(f"verdicts: {verdict_str}")
    lines.append(f"ok: {str(report.ok).lower()}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"
