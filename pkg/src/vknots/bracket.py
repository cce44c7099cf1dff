"""Kauffman bracket state sum, f-polynomial and skein machinery.

The bracket of a diagram with c crossings is the exact sum over all 2^c
splice assignments

    <D> = sum_S A^(#A - #B) (-A^2 - A^-2)^(loops(S) - 1)

and the f-polynomial is (-A^3)^(-writhe) <D>.  States are evaluated by
counting loops with a union-find over the diagram arcs; per-state results
are aggregated into an (#B, loops) histogram with int64 counts, so the
hot loop can run in a compiled kernel while the polynomial assembly stays
exact.  A splice at a positive crossing is orientation-coherent for the
A choice and incoherent for B; at a negative crossing the two swap.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from .diagram import (
    Diagram,
    DiagramError,
    SpliceContext,
    crossing_change,
    splice_context,
    splice_disoriented,
    splice_oriented,
    writhe,
)
from .laurent import LOOP_FACTOR, LaurentPoly, monomial_pow

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency, but
    _HAVE_NUMBA = False  # the pure python path keeps everything working

DEFAULT_MAX_CROSSINGS = 24
_KERNEL_THRESHOLD = 10  # below this the python loop beats kernel dispatch


class TooManyCrossings(DiagramError):
    pass


class IncompleteChoices(DiagramError):
    pass


class IdentityViolation(DiagramError):
    """A skein identity that is a theorem failed to hold: an implementation
    bug, never a property of the input."""


# ---------------------------------------------------------------------------
# states

@dataclass(frozen=True)
class State:
    """A full splice assignment with its loop count and exponent."""

    choices: tuple[str, ...]  # indexed by crossing id - 1
    loop_count: int
    splice_exponent: int

    def choice(self, crossing: int) -> str:
        return self.choices[crossing - 1]

    def as_dict(self) -> dict[int, str]:
        return {i + 1: ch for i, ch in enumerate(self.choices)}


def _arc_structure(d: Diagram):
    """Arc indexing plus per-crossing slot arcs.

    Returns (n_arcs, free_loops, crossing rows); each row is
    (o_in, o_out, u_in, u_out, sign) with arc indices.
    """
    arc_index: dict[tuple[int, int], int] = {}
    free = 0
    for ci, comp in enumerate(d.components):
        if not comp:
            free += 1
            continue
        for j in range(len(comp)):
            arc_index[(ci, j)] = len(arc_index)
    rows: list[list[int]] = [[0, 0, 0, 0, 0] for _ in range(d.crossing_count)]
    for ci, comp in enumerate(d.components):
        m = len(comp)
        for j, p in enumerate(comp):
            row = rows[p.crossing - 1]
            inn = arc_index[(ci, (j - 1) % m)]
            out = arc_index[(ci, j)]
            if p.over:
                row[0], row[1] = inn, out
            else:
                row[2], row[3] = inn, out
            row[4] = p.sign
    return len(arc_index), free, rows


def _loops_for_mask(n_arcs: int, rows: Sequence[Sequence[int]], mask: int) -> int:
    """Loop count among the arcs for the state encoded by mask (bit=1 is B)."""
    parent = list(range(n_arcs))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, (o_in, o_out, u_in, u_out, sign) in enumerate(rows):
        is_b = (mask >> x) & 1
        coherent = (sign > 0) == (is_b == 0)
        if coherent:
            pairs = ((o_in, u_out), (u_in, o_out))
        else:
            pairs = ((o_in, u_in), (o_out, u_out))
        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    return sum(1 for i in range(n_arcs) if parent[i] == i)


def splice_state(d: Diagram, choices: Mapping[int, str]) -> State:
    """Evaluate one splice assignment: loop count and A-minus-B exponent."""
    c = d.crossing_count
    if set(choices) != set(range(1, c + 1)):
        raise IncompleteChoices(f"choices must cover crossings 1..{c}")
    for v in choices.values():
        if v not in ("A", "B"):
            raise IncompleteChoices(f"bad splice choice {v!r}")
    n_arcs, free, rows = _arc_structure(d)
    mask = 0
    n_b = 0
    for cid, ch in choices.items():
        if ch == "B":
            mask |= 1 << (cid - 1)
            n_b += 1
    loops = (_loops_for_mask(n_arcs, rows, mask) if n_arcs else 0) + free
    ordered = tuple(choices[i + 1] for i in range(c))
    return State(choices=ordered, loop_count=loops, splice_exponent=c - 2 * n_b)


def state_contribution(s: State) -> LaurentPoly:
    """I(S) = A^exponent (-A^2-A^-2)^(loops-1), the state's bracket term."""
    return LaurentPoly.monomial(1, s.splice_exponent) * (LOOP_FACTOR ** (s.loop_count - 1))


def state_index(s: State) -> int:
    """The residue mod 4 shared by every exponent of the state's bracket
    contribution: (exponent + 2 loops - 2) mod 4."""
    return (s.splice_exponent + 2 * s.loop_count - 2) % 4


# ---------------------------------------------------------------------------
# histogram evaluation

def _hist_python(n_arcs: int, rows, start: int, stop: int, c: int) -> np.ndarray:
    hist = np.zeros((c + 1, n_arcs + 1), dtype=np.int64)
    for mask in range(start, stop):
        loops = _loops_for_mask(n_arcs, rows, mask)
        hist[bin(mask).count("1"), loops] += 1
    return hist


if _HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _hist_kernel(coh, inc, a_coherent, n_arcs, start, stop, hist):  # pragma: no cover
        c = coh.shape[0]
        parent = np.empty(n_arcs, np.int32)
        for mask in range(start, stop):
            for i in range(n_arcs):
                parent[i] = i
            n_b = 0
            for x in range(c):
                bit = (mask >> x) & 1
                n_b += bit
                if (a_coherent[x] == 1) == (bit == 0):
                    row = coh[x]
                else:
                    row = inc[x]
                for t in range(2):
                    a = row[2 * t]
                    b = row[2 * t + 1]
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        parent[b] = a
            loops = 0
            for i in range(n_arcs):
                if parent[i] == i:
                    loops += 1
            hist[n_b, loops] += 1


def _kernel_arrays(rows):
    c = len(rows)
    coh = np.empty((c, 4), dtype=np.int32)
    inc = np.empty((c, 4), dtype=np.int32)
    a_coherent = np.empty(c, dtype=np.uint8)
    for x, (o_in, o_out, u_in, u_out, sign) in enumerate(rows):
        coh[x] = (o_in, u_out, u_in, o_out)
        inc[x] = (o_in, u_in, o_out, u_out)
        a_coherent[x] = 1 if sign > 0 else 0
    return coh, inc, a_coherent


def _state_histogram(d: Diagram, workers: int = 1, engine: Optional[str] = None) -> np.ndarray:
    """The (#B-splices, arc-loop-count) histogram over all 2^c states."""
    c = d.crossing_count
    n_arcs, _, rows = _arc_structure(d)
    total = 1 << c
    use_kernel = _HAVE_NUMBA and (engine == "numba" or (engine is None and c >= _KERNEL_THRESHOLD))
    if engine == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("numba engine requested but numba is not importable")
    bounds = [total * i // max(1, workers) for i in range(max(1, workers) + 1)]
    ranges = [(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]
    if use_kernel:
        coh, inc, a_coherent = _kernel_arrays(rows)

        def run(rg):
            hist = np.zeros((c + 1, n_arcs + 1), dtype=np.int64)
            _hist_kernel(coh, inc, a_coherent, n_arcs, rg[0], rg[1], hist)
            return hist
    else:

        def run(rg):
            return _hist_python(n_arcs, rows, rg[0], rg[1], c)

    if len(ranges) <= 1:
        parts = [run(rg) for rg in ranges]
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            parts = list(pool.map(run, ranges))
    out = np.zeros((c + 1, n_arcs + 1), dtype=np.int64)
    for part in parts:
        out += part
    return out


def _assemble(c: int, free: int, hist: np.ndarray) -> LaurentPoly:
    if c == 0:
        if free == 0:
            return LaurentPoly.one()  # the empty diagram: multiplicative unit
        return LOOP_FACTOR ** (free - 1)
    max_loops = hist.shape[1] - 1
    powers = [LaurentPoly.one()]
    for _ in range(max_loops + free):
        powers.append(powers[-1] * LOOP_FACTOR)
    acc: dict[int, int] = {}
    for n_b in range(hist.shape[0]):
        for loops in range(hist.shape[1]):
            count = int(hist[n_b, loops])
            if not count:
                continue
            exponent = c - 2 * n_b
            for e, coeff in (powers[loops + free - 1]).terms():
                key = e + exponent
                acc[key] = acc.get(key, 0) + coeff * count
    return LaurentPoly(acc)


def _check_size(d: Diagram, max_crossings: Optional[int]) -> None:
    limit = DEFAULT_MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.crossing_count > limit:
        raise TooManyCrossings(
            f"{d.crossing_count} crossings exceeds the limit {limit}"
        )


def bracket(d: Diagram, max_crossings: Optional[int] = None, engine: Optional[str] = None) -> LaurentPoly:
    """The Kauffman bracket, by exact state sum over all 2^c states."""
    _check_size(d, max_crossings)
    _, free, _ = _arc_structure(d)
    return _assemble(d.crossing_count, free, _state_histogram(d, engine=engine))


def bracket_parallel(
    d: Diagram,
    workers: Optional[int] = None,
    max_crossings: Optional[int] = None,
    engine: Optional[str] = None,
) -> LaurentPoly:
    """Same polynomial as :func:`bracket`, bit for bit, for every worker
    count.  The state range [0, 2^c) is split into contiguous chunks and
    the integer histograms are summed, so the result does not depend on
    scheduling."""
    _check_size(d, max_crossings)
    if workers is None:
        workers = min(8, os.cpu_count() or 1)
    if workers < 1:
        raise ValueError("workers must be positive")
    _, free, _ = _arc_structure(d)
    return _assemble(d.crossing_count, free, _state_histogram(d, workers=workers, engine=engine))


def f_polynomial(d: Diagram, max_crossings: Optional[int] = None, engine: Optional[str] = None) -> LaurentPoly:
    """The normalized bracket (-A^3)^(-writhe) <D>, invariant under all
    generalized Reidemeister moves."""
    return monomial_pow(-1, 3, -writhe(d)) * bracket(d, max_crossings, engine)


def index_spectrum(d: Diagram, max_crossings: Optional[int] = None) -> set[int]:
    """The set of state indices over all states of the diagram."""
    _check_size(d, max_crossings)
    c = d.crossing_count
    _, free, _ = _arc_structure(d)
    if c == 0:
        return {(2 * max(free, 1) - 2) % 4}
    hist = _state_histogram(d)
    out = set()
    for n_b in range(hist.shape[0]):
        for loops in range(hist.shape[1]):
            if hist[n_b, loops]:
                exponent = c - 2 * n_b
                out.add((exponent + 2 * (loops + free) - 2) % 4)
    return out


# ---------------------------------------------------------------------------
# skein identities

@dataclass(frozen=True)
class SkeinReport:
    """Both sides of the one-crossing splice identity

        f = -A^(-2s) f0 - (-A^3)^(-2l) A^(-4s) finf

    where s is the crossing sign and l the signed count of crossings whose
    sign the disoriented splice flips."""

    crossing: int
    sign: int
    k: int
    l: int
    f: LaurentPoly
    f_oriented: LaurentPoly
    f_disoriented: LaurentPoly
    rhs: LaurentPoly
    holds: bool

    def to_json(self) -> dict:
        return {
            "crossing": self.crossing,
            "sign": self.sign,
            "k": self.k,
            "l": self.l,
            "f": self.f.to_pairs(),
            "f_oriented": self.f_oriented.to_pairs(),
            "f_disoriented": self.f_disoriented.to_pairs(),
            "rhs": self.rhs.to_pairs(),
            "holds": self.holds,
        }


def _skein_rhs(sign: int, l: int, f0: LaurentPoly, finf: LaurentPoly) -> LaurentPoly:
    front = LaurentPoly.monomial(-1, -2 * sign)
    tail = monomial_pow(-1, 3, -2 * l) * LaurentPoly.monomial(-1, -4 * sign)
    return front * f0 + tail * finf


def skein_identity_check(d: Diagram, crossing: int, max_crossings: Optional[int] = None) -> SkeinReport:
    """Verify the splice identity at one crossing, exactly.

    The disoriented splice depends on which arc is reversed: k, l and the
    resulting writhe are per-choice data, but (-A^3)^(-2l) f_inf does not
    depend on the choice, so the identity must hold for both matched
    (l, f_inf) pairs.  A failure raises IdentityViolation since the
    identity holds for every diagram; the report carries the first-arc
    numbers.
    """
    f = f_polynomial(d, max_crossings)
    f0 = f_polynomial(splice_oriented(d, crossing), max_crossings)
    results = []
    for arc in ("first", "second"):
        ctx = splice_context(d, crossing, reversed_arc=arc)
        finf = f_polynomial(splice_disoriented(d, crossing, arc), max_crossings)
        results.append((ctx, finf, _skein_rhs(ctx.sign, ctx.l, f0, finf)))
    tail1 = monomial_pow(-1, 3, -2 * results[0][0].l) * results[0][1]
    tail2 = monomial_pow(-1, 3, -2 * results[1][0].l) * results[1][1]
    if tail1 != tail2:
        raise IdentityViolation(
            "(-A^3)^(-2l) f_inf differs between the two arc choices"
        )
    ctx, finf, rhs = results[0]
    report = SkeinReport(
        crossing=crossing,
        sign=ctx.sign,
        k=ctx.k,
        l=ctx.l,
        f=f,
        f_oriented=f0,
        f_disoriented=finf,
        rhs=rhs,
        holds=(f == rhs and f == results[1][2]),
    )
    if not report.holds:
        raise IdentityViolation(
            f"skein identity failed at crossing {crossing}: {f} != {rhs}"
        )
    return report


# ---------------------------------------------------------------------------
# finite-type coefficients

@dataclass(frozen=True)
class FiniteTypeSeries:
    """Taylor coefficients of p(e^x) at x = 0, as exact rationals."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]


def finite_type_coefficients(p: LaurentPoly, order: int) -> FiniteTypeSeries:
    """v_m = sum_j coeff(j) j^m / m! for m = 0..order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = []
    fact = 1
    for m in range(order + 1):
        if m:
            fact *= m
        total = sum(c * pow(e, m) for e, c in p.terms())
        coeffs.append(Fraction(total, fact))
    return FiniteTypeSeries(coefficients=tuple(coeffs))


@dataclass(frozen=True)
class RecursionReport:
    """Comparison of the crossing-switch difference against its series
    recursion, under both candidate sign conventions for l.

    ``difference_identity_holds`` covers the exact polynomial identity

        f(d+) - f(d-) = (A^2 - A^-2) f0 + (-A^3)^(-2l) (A^4 - A^-4) finf

    which follows by subtracting the two sign cases of the splice identity.
    The series rows state, order by order, whether

        v_n(diff) = sum_{k<n} 2^(n-k)/(n-k)! [ (1-(-1)^(n-k)) v_k(f0)
                     + ((2-3l')^(n-k) - (-2-3l')^(n-k)) v_k(finf) ]

    holds with l' = l and with l' = -l.
    """

    crossing: int
    l: int
    order: int
    difference_identity_holds: bool
    series_match_l: tuple[bool, ...]
    series_match_negated_l: tuple[bool, ...]

    @property
    def identified_convention(self) -> str:
        a = all(self.series_match_l)
        b = all(self.series_match_negated_l)
        if a and b:
            return "both"
        if a:
            return "as-defined"
        if b:
            return "negated"
        return "neither"

    def to_json(self) -> dict:
        return {
            "crossing": self.crossing,
            "l": self.l,
            "order": self.order,
            "difference_identity_holds": self.difference_identity_holds,
            "series_match_l": list(self.series_match_l),
            "series_match_negated_l": list(self.series_match_negated_l),
            "identified_convention": self.identified_convention,
        }


def finite_type_recursion_check(
    d: Diagram, crossing: int, order: int, max_crossings: Optional[int] = None
) -> RecursionReport:
    """Check the finite-type recursion for the crossing-switch difference
    at one crossing.  The exact difference identity is asserted (it is a
    theorem); the series formula is reported under both l conventions.
    """
    ctx = splice_context(d, crossing)
    l = ctx.l
    d_plus = d if ctx.sign > 0 else crossing_change(d, crossing)
    d_minus = crossing_change(d, crossing) if ctx.sign > 0 else d
    f_plus = f_polynomial(d_plus, max_crossings)
    f_minus = f_polynomial(d_minus, max_crossings)
    f0 = f_polynomial(splice_oriented(d, crossing), max_crossings)
    finf = f_polynomial(splice_disoriented(d, crossing), max_crossings)
    diff = f_plus - f_minus
    rhs = (
        LaurentPoly({2: 1, -2: -1}) * f0
        + monomial_pow(-1, 3, -2 * l) * LaurentPoly({4: 1, -4: -1}) * finf
    )
    holds = diff == rhs
    if not holds:
        raise IdentityViolation(
            f"crossing-switch difference identity failed at crossing {crossing}"
        )
    v_diff = finite_type_coefficients(diff, order)
    v0 = finite_type_coefficients(f0, order)
    vinf = finite_type_coefficients(finf, order)

    def series_rhs(n: int, ell: int) -> Fraction:
        total = Fraction(0)
        fact = 1
        for m in range(1, n + 1):  # m = n - k
            fact *= m
            k = n - m
            term0 = (1 - (-1) ** m) * v0[k]
            terminf = ((2 - 3 * ell) ** m - (-2 - 3 * ell) ** m) * vinf[k]
            total += Fraction(2**m, fact) * (term0 + terminf)
        return total

    match_l = tuple(v_diff[n] == series_rhs(n, l) for n in range(order + 1))
    match_neg = tuple(v_diff[n] == series_rhs(n, -l) for n in range(order + 1))
    return RecursionReport(
        crossing=crossing,
        l=l,
        order=order,
        difference_identity_holds=holds,
        series_match_l=match_l,
        series_match_negated_l=match_neg,
    )


__all__ = [
    "DEFAULT_MAX_CROSSINGS",
    "FiniteTypeSeries",
    "IdentityViolation",
    "IncompleteChoices",
    "RecursionReport",
    "SkeinReport",
    "SpliceContext",
    "State",
    "TooManyCrossings",
    "bracket",
    "bracket_parallel",
    "f_polynomial",
    "finite_type_coefficients",
    "finite_type_recursion_check",
    "index_spectrum",
    "skein_identity_check",
    "splice_state",
    "state_contribution",
    "state_index",
]
