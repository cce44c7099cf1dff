"""Virtual link diagrams as signed Gauss codes.

A diagram is an ordered collection of components, each a cyclic sequence
of crossing passages.  Every classical crossing appears exactly twice,
once as the over strand and once as the under strand, with one sign
recorded at both passages.  Virtual crossings are not stored at all: a
signed Gauss code determines a virtual link diagram up to the purely
virtual moves, which is exactly the quotient all the invariants in this
package factor through.

Sign convention: sign +1 means the under strand crosses from right to
left when viewed along the over strand's orientation.  The convention is
pinned operationally by the one-crossing kink "O1+U1+", whose bracket
must equal -A^3 so that the normalized bracket is invariant under
first Reidemeister moves.

Text format (one diagram):
    - one line per component, ``#`` lines are comments
    - a component is a sequence of tokens ``O<id><sign>`` / ``U<id><sign>``
      with sign ``+`` or ``-``, e.g. ``O1+U2+O3+U1+O2+U3+``
    - ``()`` (or a blank interior line) denotes a crossing-free component
Crossing ids may be arbitrary positive integers; they are renumbered
1..c in order of first appearance.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


# ---------------------------------------------------------------------------
# errors

class DiagramError(Exception):
    """Base class for all diagram-level errors."""


class MalformedToken(DiagramError):
    pass


class DanglingCrossing(DiagramError):
    pass


class SignMismatch(DiagramError):
    pass


class OpenStrand(DiagramError):
    pass


class BadDegree(DiagramError):
    pass


class UnknownCrossing(DiagramError):
    pass


class InapplicableMove(DiagramError):
    pass


# ---------------------------------------------------------------------------
# core data

class Passage(NamedTuple):
    crossing: int
    over: bool
    sign: int

    def token(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class Diagram:
    """An immutable virtual link diagram.

    ``components`` holds cyclic passage sequences; crossing ids are always
    exactly 1..crossing_count in order of first appearance.  All operations
    return new diagrams.
    """

    components: tuple[tuple[Passage, ...], ...]

    @property
    def crossing_count(self) -> int:
        return sum(len(comp) for comp in self.components) // 2

    @property
    def component_count(self) -> int:
        return len(self.components)

    def signs(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for comp in self.components:
            for p in comp:
                out[p.crossing] = p.sign
        return out

    def passage_positions(self, crossing: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """((comp, idx) of the over passage, (comp, idx) of the under passage)."""
        over = under = None
        for ci, comp in enumerate(self.components):
            for j, p in enumerate(comp):
                if p.crossing == crossing:
                    if p.over:
                        over = (ci, j)
                    else:
                        under = (ci, j)
        if over is None or under is None:
            raise UnknownCrossing(f"no crossing {crossing} in diagram")
        return over, under

    def __str__(self) -> str:
        return serialize(self)


def _normalize_ids(components: Iterable[Sequence[Passage]]) -> tuple[tuple[Passage, ...], ...]:
    relabel: dict[int, int] = {}
    out = []
    for comp in components:
        new = []
        for p in comp:
            if p.crossing not in relabel:
                relabel[p.crossing] = len(relabel) + 1
            new.append(Passage(relabel[p.crossing], p.over, p.sign))
        out.append(tuple(new))
    return tuple(out)


def _validate(components: tuple[tuple[Passage, ...], ...]) -> None:
    seen: dict[int, list[Passage]] = {}
    for comp in components:
        for p in comp:
            if p.crossing < 1:
                raise MalformedToken(f"crossing id {p.crossing} must be positive")
            if p.sign not in (1, -1):
                raise MalformedToken(f"bad sign {p.sign} at crossing {p.crossing}")
            prior = seen.setdefault(p.crossing, [])
            for q in prior:
                if q.sign != p.sign:
                    raise SignMismatch(f"crossing {p.crossing} recorded with both signs")
                if q.over == p.over:
                    raise DanglingCrossing(
                        f"crossing {p.crossing} appears twice as "
                        f"{'over' if p.over else 'under'}"
                    )
            if len(prior) >= 2:
                raise DanglingCrossing(f"crossing {p.crossing} appears more than twice")
            prior.append(p)
    for k, ps in seen.items():
        if len(ps) != 2:
            raise DanglingCrossing(f"crossing {k} appears only once")
    c = len(seen)
    if seen and (min(seen) != 1 or max(seen) != c):
        raise DanglingCrossing("crossing ids are not 1..c")


def make_diagram(components: Iterable[Sequence[Passage]]) -> Diagram:
    """Build a validated diagram, renumbering crossing ids by first appearance."""
    comps = _normalize_ids(components)
    _validate(comps)
    return Diagram(comps)


# ---------------------------------------------------------------------------
# parsing and serialization

_GAUSS_TOKEN = re.compile(r"\s*([OU])(\d+)([+-])")


def parse_gauss(text: str) -> Diagram:
    """Parse the Gauss-code text format described in the module docstring."""
    lines = text.splitlines()
    # leading/trailing blank lines carry no meaning; interior blanks are
    # crossing-free components (serialize always emits the explicit marker)
    while lines and not lines[0].strip():
        lines.pop(0)
    while lines and not lines[-1].strip():
        lines.pop()
    components: list[list[Passage]] = []
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        if stripped == "" or stripped == "()":
            components.append([])
            continue
        comp: list[Passage] = []
        pos = 0
        while pos < len(stripped):
            m = _GAUSS_TOKEN.match(stripped, pos)
            if m is None:
                raise MalformedToken(f"bad token at {stripped[pos:pos + 12]!r}")
            role, num, sign = m.groups()
            if int(num) < 1:
                raise MalformedToken(f"crossing id must be positive in {m.group(0)!r}")
            comp.append(Passage(int(num), role == "O", 1 if sign == "+" else -1))
            pos = m.end()
        components.append(comp)
    return make_diagram(components)


def serialize(d: Diagram) -> str:
    """Canonical text form; ``parse_gauss`` round-trips it exactly."""
    lines = []
    for comp in d.components:
        lines.append("".join(p.token() for p in comp) if comp else "()")
    return "\n".join(lines)


_PD_TOKEN = re.compile(r"\s*([XV])\[(\d+)\s*,(\d+)\s*,(\d+)\s*,(\d+)\]([+-]?)")


def parse_pd(text: str) -> Diagram:
    """Parse a PD text into a Gauss-code diagram.

    Records are ``X[a,b,c,d]<sign>`` for classical crossings and
    ``V[a,b,c,d]`` for virtual ones, over edge labels that each occur
    exactly twice.  The four labels are listed counterclockwise; ``a`` is
    the incoming under edge and ``c`` the outgoing under edge.  For sign
    ``+`` the over strand runs d -> b, for sign ``-`` it runs b -> d.
    Virtual records connect a-c and b-d and leave no passage behind.
    """
    records: list[tuple[str, tuple[int, int, int, int], int]] = []
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        pos = 0
        while pos < len(line):
            m = _PD_TOKEN.match(line, pos)
            if m is None:
                raise MalformedToken(f"bad PD record at {line[pos:pos + 16]!r}")
            kind, a, b, c, dd, sign = m.groups()
            if kind == "X" and sign == "":
                raise MalformedToken(f"classical record {m.group(0)!r} needs a sign")
            if kind == "V" and sign != "":
                raise MalformedToken(f"virtual record {m.group(0)!r} must not carry a sign")
            records.append(
                (kind, (int(a), int(b), int(c), int(dd)), 1 if sign == "+" else -1)
            )
            pos = m.end()

    # ports are (record index, slot); label edges join the two occurrences
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ri, (_, labels, _) in enumerate(records):
        for slot, lab in enumerate(labels):
            occurrences.setdefault(lab, []).append((ri, slot))
    for lab, ports in occurrences.items():
        if len(ports) != 2:
            raise BadDegree(f"edge label {lab} used {len(ports)} times (expected 2)")

    def other_port(port: tuple[int, int]) -> tuple[int, int]:
        ri, slot = port
        lab = records[ri][1][slot]
        p, q = occurrences[lab]
        return q if p == port else p

    # through-path direction inside a record: X enters at slot a (under) or
    # at the over-in slot; V pass-throughs are direction free.  Each
    # traversal consumes both ports of the path it uses.
    def through(port: tuple[int, int]) -> tuple[tuple[int, int], Optional[Passage]]:
        ri, slot = port
        kind, _, sign = records[ri]
        cid = ri + 1
        if kind == "V":
            return (ri, (slot + 2) % 4), None
        over_in = 3 if sign > 0 else 1
        if slot == 0:
            return (ri, 2), Passage(cid, False, sign)
        if slot == over_in:
            return (ri, (over_in + 2) % 4), Passage(cid, True, sign)
        raise OpenStrand(
            f"record {ri} entered at an outgoing slot; edge labels do not "
            "form coherently oriented strands"
        )

    used: set[tuple[int, int]] = set()
    components: list[list[Passage]] = []

    def trace(start: tuple[int, int]) -> None:
        comp: list[Passage] = []
        port = start
        while True:
            if port in used:
                raise OpenStrand(f"strand through port {port} does not close up")
            exit_port, passage = through(port)
            used.add(port)
            used.add(exit_port)
            if passage is not None:
                comp.append(passage)
            port = other_port(exit_port)
            if port == start:
                break
        components.append(comp)

    for ri, (kind, _, sign) in enumerate(records):
        if kind != "X":
            continue
        for entry in (0, 3 if sign > 0 else 1):
            if (ri, entry) not in used:
                trace((ri, entry))
    for ri, (kind, _, _) in enumerate(records):
        if kind == "V":
            for entry in (0, 1, 2, 3):
                if (ri, entry) not in used:
                    trace((ri, entry))
    return make_diagram(components)


# ---------------------------------------------------------------------------
# elementary operations

def writhe(d: Diagram) -> int:
    """Sum of crossing signs."""
    return sum(d.signs().values())


def crossing_change(d: Diagram, crossing: int) -> Diagram:
    """Swap over/under at both passages of one crossing and negate its sign."""
    d.passage_positions(crossing)  # raises UnknownCrossing
    comps = tuple(
        tuple(
            Passage(p.crossing, not p.over, -p.sign) if p.crossing == crossing else p
            for p in comp
        )
        for comp in d.components
    )
    return Diagram(comps)


def reverse_all(d: Diagram) -> Diagram:
    """Reverse the orientation of every component.  Signs are unchanged."""
    return Diagram(tuple(tuple(reversed(comp)) for comp in d.components))


def _cyclic_segment(comp: Sequence[Passage], start: int, stop: int) -> list[Passage]:
    """Passages at positions start..stop inclusive, walking forward
    cyclically.  stop == start - 1 (mod length) yields the empty segment;
    callers cut between two distinct positions i, j via start=i+1,
    stop=j-1, so the full-cycle reading of that boundary case never
    arises.
    """
    m = len(comp)
    if m == 0:
        return []
    out = []
    k = start % m
    stop = stop % m
    if (stop + 1) % m == start % m:
        return []
    while True:
        out.append(comp[k])
        if k == stop:
            break
        k = (k + 1) % m
    return out


def _splice_arcs(d: Diagram, crossing: int) -> tuple[list[Passage], list[Passage], list[tuple[Passage, ...]]]:
    """The two open arcs produced by cutting at a crossing.

    Returns (first, second, untouched components).  The first arc begins at
    the outgoing under strand of the crossing; the second begins at the
    outgoing over strand.
    """
    (oc, oi), (uc, uj) = d.passage_positions(crossing)
    rest = [comp for ci, comp in enumerate(d.components) if ci not in (oc, uc)]
    if oc == uc:
        comp = d.components[oc]
        first = _cyclic_segment(comp, uj + 1, oi - 1)
        second = _cyclic_segment(comp, oi + 1, uj - 1)
    else:
        ucomp, ocomp = d.components[uc], d.components[oc]
        first = list(ucomp[uj + 1:]) + list(ucomp[:uj])
        second = list(ocomp[oi + 1:]) + list(ocomp[:oi])
    return first, second, rest


def splice_oriented(d: Diagram, crossing: int) -> Diagram:
    """Remove one crossing, reconnecting the strands coherently with the
    orientation.  The component count changes by exactly one.
    """
    (oc, oi), (uc, uj) = d.passage_positions(crossing)
    comps = list(d.components)
    if oc == uc:
        comp = comps.pop(oc)
        a = _cyclic_segment(comp, oi + 1, uj - 1)
        b = _cyclic_segment(comp, uj + 1, oi - 1)
        comps.extend([a, b])
    else:
        hi, lo = max(oc, uc), min(oc, uc)
        ocomp, ucomp = d.components[oc], d.components[uc]
        comps.pop(hi)
        comps.pop(lo)
        merged = (
            list(ocomp[oi + 1:]) + list(ocomp[:oi])
            + list(ucomp[uj + 1:]) + list(ucomp[:uj])
        )
        comps.append(merged)
    return make_diagram(comps)


def splice_disoriented(d: Diagram, crossing: int, reversed_arc: str = "first") -> Diagram:
    """Remove one crossing with the orientation-incoherent reconnection.

    One of the two arcs produced by cutting at the crossing must be
    reversed to restore a consistent orientation; ``reversed_arc`` selects
    which ("first" starts at the outgoing under strand).  Crossings met
    exactly once by the reversed arc have their sign flipped.
    """
    if reversed_arc not in ("first", "second"):
        raise ValueError("reversed_arc must be 'first' or 'second'")
    first, second, rest = _splice_arcs(d, crossing)
    keep, flip = (second, first) if reversed_arc == "first" else (first, second)
    counts: dict[int, int] = {}
    for p in flip:
        counts[p.crossing] = counts.get(p.crossing, 0) + 1
    flipped_ids = {k for k, n in counts.items() if n == 1}
    merged = list(keep) + [Passage(p.crossing, p.over, p.sign) for p in reversed(flip)]
    comps = [merged] + [list(c) for c in rest]
    comps = [
        [
            Passage(p.crossing, p.over, -p.sign if p.crossing in flipped_ids else p.sign)
            for p in comp
        ]
        for comp in comps
    ]
    return make_diagram(comps)


@dataclass(frozen=True)
class SpliceContext:
    """Per-crossing data entering the skein recursion.

    ``unchanged`` holds the crossings whose sign survives the disoriented
    splice (both intersecting arcs on the same side of the cut), ``flipped``
    those whose sign flips (one arc on each side).  ``k`` and ``l`` are the
    corresponding signed counts, so writhe(d) = k + l + sign and the
    disoriented splice has writhe k - l.
    """

    crossing: int
    sign: int
    k: int
    l: int
    unchanged: frozenset[int]
    flipped: frozenset[int]


def splice_context(d: Diagram, crossing: int, reversed_arc: str = "first") -> SpliceContext:
    """Partition the other crossings by how the disoriented splice at
    ``crossing`` treats them, for the given arc choice.

    Crossings between the reversed arc and a third component make the
    partition (and k, l individually) depend on the choice; k + l and
    the combination (-A^3)^(-2l) f_inf do not.
    """
    if reversed_arc not in ("first", "second"):
        raise ValueError("reversed_arc must be 'first' or 'second'")
    first, second, _ = _splice_arcs(d, crossing)
    arc = first if reversed_arc == "first" else second
    counts: dict[int, int] = {}
    for p in arc:
        counts[p.crossing] = counts.get(p.crossing, 0) + 1
    signs = d.signs()
    unchanged, flipped = set(), set()
    for cid, s in signs.items():
        if cid == crossing:
            continue
        if counts.get(cid, 0) == 1:
            flipped.add(cid)
        else:
            unchanged.add(cid)
    return SpliceContext(
        crossing=crossing,
        sign=signs[crossing],
        k=sum(signs[c] for c in unchanged),
        l=sum(signs[c] for c in flipped),
        unchanged=frozenset(unchanged),
        flipped=frozenset(flipped),
    )


# ---------------------------------------------------------------------------
# Reidemeister moves

@dataclass(frozen=True)
class MoveKind:
    """A move together with an optional site.

    When ``site`` is None, :func:`apply_move` picks an admissible site at
    random (seeded).  Site layouts:

    R1-add:    (comp, gap, over_first, sign)
    R1-remove: (comp, pos)                      pair at pos, pos+1
    R2-add:    ((comp_o, gap_o), (comp_u, gap_u), parallel, sign)
    R2-remove: ((comp_o, pos_o), (comp_u, pos_u))
    R3:        ((comp1, pos1), (comp2, pos2), (comp3, pos3))
               positions of the three consecutive pairs
    """

    kind: str
    site: Optional[tuple] = None


R1_ADD = "R1-add"
R1_REMOVE = "R1-remove"
R2_ADD = "R2-add"
R2_REMOVE = "R2-remove"
R3 = "R3"
MOVE_KINDS = (R1_ADD, R1_REMOVE, R2_ADD, R2_REMOVE, R3)

# Admissible R3 configurations, derived from the local triangle picture.
# Strand 1 passes over both r and q, strand 2 is over at p and under at r,
# strand 3 is under at both p and q.  For each arrangement of the pair
# orders (s1 sees (r,q) or (q,r), etc.) exactly two sign triples
# (sign r, sign q, sign p) occur, one for each mirror image of the
# triangle.  Keys: (s1_sees_r_first, s2_sees_p_first, s3_sees_p_first).
_R3_SIGNS: dict[tuple[bool, bool, bool], tuple[tuple[int, int, int], ...]] = {
    (True, True, True): ((1, 1, -1), (-1, -1, 1)),
    (False, True, True): ((-1, -1, -1), (1, 1, 1)),
    (True, False, True): ((-1, 1, 1), (1, -1, -1)),
    (True, True, False): ((1, -1, 1), (-1, 1, -1)),
    (False, False, True): ((1, -1, 1), (-1, 1, -1)),
    (False, True, False): ((-1, 1, 1), (1, -1, -1)),
    (True, False, False): ((-1, -1, -1), (1, 1, 1)),
    (False, False, False): ((1, 1, -1), (-1, -1, 1)),
}


def _consecutive_pairs(d: Diagram) -> list[tuple[int, int, Passage, Passage]]:
    """All cyclically consecutive passage pairs as (comp, pos, first, second)."""
    out = []
    for ci, comp in enumerate(d.components):
        m = len(comp)
        if m < 2:
            continue
        for j in range(m):
            out.append((ci, j, comp[j], comp[(j + 1) % m]))
    return out


def _r1_remove_sites(d: Diagram) -> list[tuple]:
    return [
        (ci, j)
        for ci, j, p, q in _consecutive_pairs(d)
        if p.crossing == q.crossing and p.over != q.over
    ]


def _r2_remove_sites(d: Diagram) -> list[tuple]:
    overs: list[tuple[int, int, Passage, Passage]] = []
    unders: list[tuple[int, int, Passage, Passage]] = []
    for ci, j, p, q in _consecutive_pairs(d):
        if p.crossing == q.crossing:
            continue
        if p.over and q.over:
            overs.append((ci, j, p, q))
        elif not p.over and not q.over:
            unders.append((ci, j, p, q))
    sites = []
    for ci, j, p, q in overs:
        if p.sign != -q.sign:
            continue
        for ck, l, u, v in unders:
            if {u.crossing, v.crossing} != {p.crossing, q.crossing}:
                continue
            # same component: the two pairs must not share positions
            if ci == ck:
                m = len(d.components[ci])
                span = {j, (j + 1) % m, l, (l + 1) % m}
                if len(span) != 4:
                    continue
            sites.append(((ci, j), (ck, l)))
    return sites


def _r3_sites(d: Diagram) -> list[tuple]:
    pairs = _consecutive_pairs(d)
    overs = [t for t in pairs if t[2].over and t[3].over and t[2].crossing != t[3].crossing]
    mixed = [t for t in pairs if t[2].over != t[3].over and t[2].crossing != t[3].crossing]
    unders = [t for t in pairs if not t[2].over and not t[3].over and t[2].crossing != t[3].crossing]
    signs = d.signs()
    sites = []
    for c1, j1, a1, b1 in overs:
        rq = {a1.crossing, b1.crossing}
        for c2, j2, a2, b2 in mixed:
            # strand 2 is over at p and under at r, with r among strand 1's pair
            over2, under2 = (a2, b2) if a2.over else (b2, a2)
            r, p = under2.crossing, over2.crossing
            if r not in rq or p in rq:
                continue
            q = (rq - {r}).pop()
            for c3, j3, a3, b3 in unders:
                if {a3.crossing, b3.crossing} != {p, q}:
                    continue
                positions = {(c1, j1), (c1, (j1 + 1) % len(d.components[c1])),
                             (c2, j2), (c2, (j2 + 1) % len(d.components[c2])),
                             (c3, j3), (c3, (j3 + 1) % len(d.components[c3]))}
                if len(positions) != 6:
                    continue
                key = (a1.crossing == r, a2.crossing == p, a3.crossing == p)
                if (signs[r], signs[q], signs[p]) in _R3_SIGNS[key]:
                    sites.append(((c1, j1), (c2, j2), (c3, j3)))
    return sites


def _insert(comp: Sequence[Passage], gap: int, items: Sequence[Passage]) -> list[Passage]:
    gap = gap % (len(comp) + 1) if comp else 0
    return list(comp[:gap]) + list(items) + list(comp[gap:])


def _apply_r1_add(d: Diagram, site: tuple) -> Diagram:
    ci, gap, over_first, sign = site
    if not (0 <= ci < len(d.components)):
        raise InapplicableMove(f"no component {ci}")
    cid = d.crossing_count + 1
    pair = [Passage(cid, over_first, sign), Passage(cid, not over_first, sign)]
    comps = [list(c) for c in d.components]
    comps[ci] = _insert(comps[ci], gap, pair)
    return make_diagram(comps)


def _apply_r1_remove(d: Diagram, site: tuple) -> Diagram:
    if site not in _r1_remove_sites(d):
        raise InapplicableMove(f"no removable kink at {site}")
    ci, j = site
    comp = list(d.components[ci])
    m = len(comp)
    drop = {j, (j + 1) % m}
    comps = [list(c) for c in d.components]
    comps[ci] = [p for k, p in enumerate(comp) if k not in drop]
    return make_diagram(comps)


def _apply_r2_add(d: Diagram, site: tuple) -> Diagram:
    (co, gap_o), (cu, gap_u), parallel, sign = site
    for ci in (co, cu):
        if not (0 <= ci < len(d.components)):
            raise InapplicableMove(f"no component {ci}")
    x = d.crossing_count + 1
    y = x + 1
    over_pair = [Passage(x, True, sign), Passage(y, True, -sign)]
    if parallel:
        under_pair = [Passage(x, False, sign), Passage(y, False, -sign)]
    else:
        under_pair = [Passage(y, False, -sign), Passage(x, False, sign)]
    comps = [list(c) for c in d.components]
    comps[co] = _insert(comps[co], gap_o, over_pair)
    if cu == co:
        gap_u = gap_u % (len(d.components[cu]) + 1) if d.components[cu] else 0
        if gap_u >= (gap_o % (len(d.components[co]) + 1) if d.components[co] else 0):
            gap_u += 2
    comps[cu] = _insert(comps[cu], gap_u, under_pair)
    return make_diagram(comps)


def _apply_r2_remove(d: Diagram, site: tuple) -> Diagram:
    if site not in _r2_remove_sites(d):
        raise InapplicableMove(f"no removable bigon at {site}")
    (co, jo), (cu, ju) = site
    drop: dict[int, set[int]] = {}
    mo, mu = len(d.components[co]), len(d.components[cu])
    drop.setdefault(co, set()).update({jo, (jo + 1) % mo})
    drop.setdefault(cu, set()).update({ju, (ju + 1) % mu})
    comps = [
        [p for k, p in enumerate(comp) if k not in drop.get(ci, set())]
        for ci, comp in enumerate(d.components)
    ]
    return make_diagram(comps)


def _apply_r3(d: Diagram, site: tuple) -> Diagram:
    if site not in _r3_sites(d):
        raise InapplicableMove(f"no R3 triangle at {site}")
    comps = [list(c) for c in d.components]
    for ci, j in site:
        m = len(comps[ci])
        j2 = (j + 1) % m
        comps[ci][j], comps[ci][j2] = comps[ci][j2], comps[ci][j]
    return make_diagram(comps)


def _random_site(d: Diagram, kind: str, rng: random.Random) -> tuple:
    if kind in (R1_ADD, R2_ADD):
        if not d.components:
            raise InapplicableMove(f"no admissible site for {kind}")
        if kind == R1_ADD:
            ci = rng.randrange(len(d.components))
            gap = rng.randrange(len(d.components[ci]) + 1)
            return (ci, gap, rng.random() < 0.5, rng.choice((1, -1)))
        co = rng.randrange(len(d.components))
        cu = rng.randrange(len(d.components))
        return (
            (co, rng.randrange(len(d.components[co]) + 1)),
            (cu, rng.randrange(len(d.components[cu]) + 1)),
            rng.random() < 0.5,
            rng.choice((1, -1)),
        )
    sites = {R1_REMOVE: _r1_remove_sites, R2_REMOVE: _r2_remove_sites, R3: _r3_sites}[kind](d)
    if not sites:
        raise InapplicableMove(f"no admissible site for {kind}")
    return sites[rng.randrange(len(sites))]


def apply_move(d: Diagram, move: MoveKind, rng_seed: Optional[int] = None) -> Diagram:
    """Apply a generalized Reidemeister move on the Gauss code.

    Purely virtual moves do not change the code at all, so only the
    classical R1/R2/R3 rewrites appear here.  Raises InapplicableMove when
    the requested site (or kind, if no site exists) does not admit the move.
    """
    if move.kind not in MOVE_KINDS:
        raise InapplicableMove(f"unknown move kind {move.kind!r}")
    site = move.site
    if site is None:
        site = _random_site(d, move.kind, random.Random(rng_seed))
    return {
        R1_ADD: _apply_r1_add,
        R1_REMOVE: _apply_r1_remove,
        R2_ADD: _apply_r2_add,
        R2_REMOVE: _apply_r2_remove,
        R3: _apply_r3,
    }[move.kind](d, site)


def applicable_kinds(d: Diagram) -> list[str]:
    kinds = []
    if d.components:
        kinds.extend([R1_ADD, R2_ADD])
    if _r1_remove_sites(d):
        kinds.append(R1_REMOVE)
    if _r2_remove_sites(d):
        kinds.append(R2_REMOVE)
    if _r3_sites(d):
        kinds.append(R3)
    return kinds


def random_move(d: Diagram, rng: random.Random) -> tuple[MoveKind, Diagram]:
    """Pick a uniformly random applicable move kind and site; returns both
    the move (with its concrete site) and the rewritten diagram.
    """
    kinds = applicable_kinds(d)
    if not kinds:
        raise InapplicableMove("no moves apply to the empty diagram")
    kind = kinds[rng.randrange(len(kinds))]
    site = _random_site(d, kind, rng)
    move = MoveKind(kind, site)
    return move, apply_move(d, move)


# ---------------------------------------------------------------------------
# canonical form and random generation

def canonical_form(d: Diagram) -> tuple:
    """Lexicographically least encoding over component rotations, component
    order and crossing relabeling.  Two diagrams that differ only by those
    choices have equal canonical forms.
    """
    from itertools import permutations

    def encode(comps: list[list[Passage]]) -> tuple:
        relabel: dict[int, int] = {}
        out = []
        for comp in comps:
            enc = []
            for p in comp:
                if p.crossing not in relabel:
                    relabel[p.crossing] = len(relabel) + 1
                enc.append((0 if p.over else 1, relabel[p.crossing], p.sign))
            out.append(tuple(enc))
        return tuple(out)

    best: Optional[tuple] = None
    rotation_sets = [
        [list(comp[r:]) + list(comp[:r]) for r in range(max(1, len(comp)))]
        for comp in d.components
    ]

    def rec(order: tuple[int, ...], chosen: list[list[Passage]]):
        nonlocal best
        if len(chosen) == len(order):
            cand = encode(chosen)
            if best is None or cand < best:
                best = cand
            return
        idx = order[len(chosen)]
        for rot in rotation_sets[idx]:
            rec(order, chosen + [rot])

    for order in permutations(range(len(d.components))):
        rec(order, [])
    if best is None:
        best = ()
    return best


def random_diagram(rng: random.Random, crossings: int, components: int = 1) -> Diagram:
    """A random diagram with the exact crossing and component count
    (components beyond the passage-bearing ones come out crossing-free).
    """
    slots = [rng.randrange(components) for _ in range(2 * crossings)]
    comps: list[list[Passage]] = [[] for _ in range(components)]
    order = list(range(crossings)) * 2
    rng.shuffle(order)
    first_role: dict[int, bool] = {}
    signs = {k: rng.choice((1, -1)) for k in range(crossings)}
    for si, k in zip(slots, order):
        if k not in first_role:
            first_role[k] = rng.random() < 0.5
            comps[si].append(Passage(k + 1, first_role[k], signs[k]))
        else:
            comps[si].append(Passage(k + 1, not first_role[k], signs[k]))
    return make_diagram(comps)
