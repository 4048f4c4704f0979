"""Legendrian knots in the standard contact 3-space, presented by fronts.

A front is read left to right as a list of events on horizontal positions
numbered from the top (position 1 is the highest strand). An event at level
``i`` acts on positions ``i`` and ``i + 1``:

* ``lcusp`` inserts a new cusp whose two branches occupy positions i, i+1;
* ``cross`` swaps the strands at positions i, i+1;
* ``rcusp`` joins the strands at positions i, i+1 and removes them.

The Chekanov-Eliashberg algebra is computed over Z/2 from the front via the
standard resolution: generators are crossings and right cusps, and the
differential counts admissible disks found by an exhaustive sweep.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .homlin import Z2, ChainComplex, GradedRanks, SparseMatrix, homology

EVENT_KINDS = ("lcusp", "cross", "rcusp")
DEFAULT_WORD_BUDGET = 64


class FrontError(ValueError):
    pass


class RotationError(FrontError):
    """The front admits no Maslov potential (some component has rot != 0)."""


class SearchBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class Event:
    kind: str
    level: int

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise FrontError(f"unknown event type {self.kind!r}")
        if self.level < 1:
            raise FrontError("levels start at 1")


@dataclass(frozen=True)
class Arc:
    """A smooth branch of the front running from a left cusp to a right cusp."""

    left_event: int
    right_event: int
    upper_at_left: bool
    upper_at_right: bool


@dataclass(frozen=True)
class FrontDiagram:
    strands: int
    events: tuple[Event, ...]
    maslov: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(
            e if isinstance(e, Event) else Event(e["type"], int(e["level"])) for e in self.events))
        if self.maslov is not None:
            object.__setattr__(self, "maslov", tuple(int(m) for m in self.maslov))
        self._sweep()

    @classmethod
    def from_json(cls, data: Mapping) -> "FrontDiagram":
        try:
            events = tuple(Event(e["type"], int(e["level"])) for e in data["events"])
            return cls(int(data["strands"]), events, data.get("maslov"))
        except (KeyError, TypeError) as exc:
            raise FrontError(f"malformed front: {exc}") from exc

    @classmethod
    def load(cls, path) -> "FrontDiagram":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        out: dict = {"strands": self.strands,
                     "events": [{"type": e.kind, "level": e.level} for e in self.events]}
        if self.maslov is not None:
            out["maslov"] = list(self.maslov)
        return out

    # -- combinatorics of the sweep

    def _sweep(self):
        """Validate the event list and record which arc sits at each position."""
        pos: list[int] = []  # arc ids top to bottom
        arcs_left: list[tuple[int, bool]] = []
        arcs_right: dict[int, tuple[int, bool]] = {}
        crossings: list[tuple[int, int, int]] = []  # (event, top-left arc, bottom-left arc)
        for idx, e in enumerate(self.events):
            i = e.level
            if e.kind == "lcusp":
                if i > len(pos) + 1:
                    raise FrontError(f"event {idx}: left cusp at level {i} with {len(pos)} strands")
                if len(pos) + 2 > self.strands:
                    raise FrontError(f"event {idx}: more than {self.strands} strands")
                a = len(arcs_left)
                arcs_left += [(idx, True), (idx, False)]
                pos[i - 1:i - 1] = [a, a + 1]
            elif e.kind == "cross":
                if i + 1 > len(pos):
                    raise FrontError(f"event {idx}: crossing at level {i} with {len(pos)} strands")
                crossings.append((idx, pos[i - 1], pos[i]))
                pos[i - 1], pos[i] = pos[i], pos[i - 1]
            else:
                if i + 1 > len(pos):
                    raise FrontError(f"event {idx}: right cusp at level {i} with {len(pos)} strands")
                arcs_right[pos[i - 1]] = (idx, True)
                arcs_right[pos[i]] = (idx, False)
                del pos[i - 1:i + 1]
        if pos:
            raise FrontError(f"{len(pos)} strands left open at the right end")
        arcs = tuple(Arc(arcs_left[a][0], arcs_right[a][0], arcs_left[a][1], arcs_right[a][1])
                     for a in range(len(arcs_left)))
        object.__setattr__(self, "_arcs", arcs)
        object.__setattr__(self, "_crossings", tuple(crossings))
        if self.maslov is not None and len(self.maslov) != len(arcs):
            raise FrontError(f"maslov list has {len(self.maslov)} entries, front has {len(arcs)} arcs")

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self._arcs

    @property
    def crossing_arcs(self) -> tuple[tuple[int, int, int], ...]:
        return self._crossings

    def cusp_partner(self, arc: int, side: str) -> int:
        a = self.arcs[arc]
        ev = a.left_event if side == "left" else a.right_event
        for j, b in enumerate(self.arcs):
            if j != arc and (b.left_event if side == "left" else b.right_event) == ev:
                return j
        raise AssertionError("cusp with one branch")

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for start in range(len(self.arcs)):
            if start in seen:
                continue
            comp, a, side = [], start, "right"
            while a not in seen:
                seen.add(a)
                comp.append(a)
                a = self.cusp_partner(a, side)
                side = "left" if side == "right" else "right"
            comps.append(comp)
        return comps

    def orientation(self) -> list[int]:
        """+1 if the arc is traversed left to right, -1 otherwise."""
        direction = [0] * len(self.arcs)
        for comp in self.components():
            sign = 1
            for a in comp:
                direction[a] = sign
                sign = -sign
        return direction

    def maslov_potential(self) -> tuple[int, ...]:
        """Integer potential on arcs, upper branch = lower branch + 1 at each cusp."""
        if self.maslov is not None:
            pot = self.maslov
            self._check_potential(pot)
            return pot
        pot: list[int | None] = [None] * len(self.arcs)
        for comp in self.components():
            pot[comp[0]] = 0
            # walk the cycle once; the last step closes it and checks consistency
            side = "right"
            a = comp[0]
            for _ in range(len(comp)):
                b = self.cusp_partner(a, side)
                upper = (self.arcs[a].upper_at_right if side == "right" else self.arcs[a].upper_at_left)
                val = pot[a] - 1 if upper else pot[a] + 1
                if pot[b] is None:
                    pot[b] = val
                elif pot[b] != val:
                    raise RotationError("nonzero rotation number: no Maslov potential exists")
                a = b
                side = "left" if side == "right" else "right"
            lo = min(pot[x] for x in comp)
            for x in comp:
                pot[x] -= lo
        return tuple(pot)

    def _check_potential(self, pot):
        for ev in range(len(self.events)):
            branches = [(j, a) for j, a in enumerate(self.arcs)
                        if a.left_event == ev or a.right_event == ev]
            if len(branches) != 2:
                continue
            up = [j for j, a in branches if (a.upper_at_left if a.left_event == ev else a.upper_at_right)]
            lo = [j for j, a in branches if j not in up]
            if pot[up[0]] != pot[lo[0]] + 1:
                raise FrontError(f"supplied potential fails at the cusp of event {ev}")

    def crossing_signs(self) -> list[int]:
        d = self.orientation()
        return [1 if d[top] == d[bot] else -1 for _, top, bot in self.crossing_arcs]

    def count(self, kind: str) -> int:
        return sum(1 for e in self.events if e.kind == kind)


def classical_invariants(fd: FrontDiagram) -> tuple[int, int]:
    """(Thurston-Bennequin number, rotation number)."""
    fd.maslov_potential()  # raises for nonzero rotation
    tb = sum(fd.crossing_signs()) - fd.count("rcusp")
    d = fd.orientation()
    down = up = 0
    for a_idx, arc in enumerate(fd.arcs):
        # a cusp is traversed downward when the path enters on the upper branch
        if arc.upper_at_right and d[a_idx] == 1:
            down += 1
        if arc.upper_at_right and d[a_idx] == -1:
            up += 1
        if arc.upper_at_left and d[a_idx] == -1:
            down += 1
        if arc.upper_at_left and d[a_idx] == 1:
            up += 1
    return tb, (down - up) // 2


# ------------------------------------------------------------------ plat position

def _stacked(levels: Sequence[int]) -> bool:
    """Left cusps at these levels (in order) leave pairs (1,2), (3,4), ... behind."""
    pairs: list[int] = []  # pair ids top to bottom, two entries each
    for k, a in enumerate(levels):
        if a % 2 == 0 or a > len(pairs) + 1:
            return False
        pairs[a - 1:a - 1] = [k, k]
    return True


def is_plat(fd: FrontDiagram) -> bool:
    """Left cusps first, right cusps last, and the cusp pairs stacked at both ends."""
    kinds = [e.kind for e in fd.events]
    nl = kinds.count("lcusp")
    nr = kinds.count("rcusp")
    if not (all(k == "lcusp" for k in kinds[:nl])
            and all(k == "rcusp" for k in kinds[len(kinds) - nr:])):
        return False
    return (_stacked([e.level for e in fd.events[:nl]])
            and _stacked([e.level for e in reversed(fd.events[len(kinds) - nr:])]))


def _push_left_cusps(events: list[Event]) -> list[Event]:
    """Move every left cusp to the front by Legendrian isotopy, stacked at level 1.

    A left cusp passes a right cusp or a crossing it does not touch by relabeling
    levels. When the crossing involves the strand just above the cusp, the cusp
    is first moved below that strand, which adds the two crossings where the
    strand passes both branches. Once at the front, a cusp at an even level would
    split an existing pair, so it is lifted past the strand above it the same way.
    """
    ev = list(events)
    done = 0
    while True:
        i = next((k for k in range(done, len(ev)) if ev[k].kind == "lcusp"), None)
        if i is None:
            return ev
        if i > done:
            prev, a = ev[i - 1], ev[i].level
            j = prev.level
            if prev.kind == "rcusp":
                ev[i - 1:i + 1] = ([Event("lcusp", a), Event("rcusp", j + 2)] if a < j
                                   else [Event("lcusp", a + 2), Event("rcusp", j)])
            elif j <= a - 2:
                ev[i - 1:i + 1] = [Event("lcusp", a), prev]
            elif j >= a:
                ev[i - 1:i + 1] = [Event("lcusp", a), Event("cross", j + 2)]
            else:
                ev[i:i + 1] = [Event("lcusp", a + 1), Event("cross", a), Event("cross", a + 1)]
            continue
        a = ev[i].level
        if a % 2 == 0:
            ev[i:i + 1] = [Event("lcusp", a - 1), Event("cross", a), Event("cross", a - 1)]
        done += 1


def plat_position(fd: FrontDiagram) -> FrontDiagram:
    """A Legendrian isotopic front with all left cusps first and right cusps last."""
    ev = _push_left_cusps(list(fd.events))
    mirrored = [Event({"lcusp": "rcusp", "rcusp": "lcusp"}.get(e.kind, e.kind), e.level)
                for e in reversed(ev)]
    ev = [Event({"lcusp": "rcusp", "rcusp": "lcusp"}.get(e.kind, e.kind), e.level)
          for e in reversed(_push_left_cusps(mirrored))]
    width = 2 * sum(1 for e in ev if e.kind == "lcusp")
    return FrontDiagram(width, tuple(ev))


# ------------------------------------------------------------------ the DGA

Word = tuple[str, ...]


@dataclass(frozen=True)
class DGA:
    degrees: Mapping[str, int]
    differential: Mapping[str, frozenset]  # generator -> set of words (Z/2 sum)
    order: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.order:
            object.__setattr__(self, "order", tuple(self.degrees))

    def word_degree(self, w: Word) -> int:
        return sum(self.degrees[x] for x in w)

    def grading_defects(self) -> list[tuple[str, Word]]:
        return [(g, w) for g in self.order for w in sorted(self.differential[g])
                if self.word_degree(w) != self.degrees[g] - 1]

    def apply(self, words: Iterable[Word]) -> frozenset:
        """Differential of a Z/2 sum of words (Leibniz rule, no signs)."""
        acc: Counter = Counter()
        for w in words:
            for i, x in enumerate(w):
                for v in self.differential[x]:
                    acc[w[:i] + v + w[i + 1:]] += 1
        return frozenset(w for w, c in acc.items() if c % 2)

    def square_defects(self) -> list[str]:
        return [g for g in self.order if self.apply(self.differential[g])]

    def to_json(self) -> dict:
        return {"generators": [{"name": g, "degree": self.degrees[g],
                                "differential": [" ".join(w) if w else "1"
                                                 for w in sorted(self.differential[g])]}
                               for g in self.order]}


def _generator_names(fd: FrontDiagram) -> dict[int, str]:
    names, a, c = {}, 0, 0
    for idx, e in enumerate(fd.events):
        if e.kind == "cross":
            a += 1
            names[idx] = f"a{a}"
        elif e.kind == "rcusp":
            c += 1
            names[idx] = f"c{c}"
    return names


def _admissible_disks(fd: FrontDiagram, names: Mapping[int, str], budget: int):
    """Yield (positive-corner event, word) for every admissible disk in the front."""
    events = fd.events
    out: list[tuple[int, Word]] = []

    def walk(e, up, lo, cu, cl):
        if len(cu) + len(cl) > budget:
            raise SearchBudgetError(f"disk boundary longer than {budget} corners")
        if e == len(events):
            return
        ev = events[e]
        j = ev.level
        if ev.kind == "lcusp":
            walk(e + 1, up + 2 if up >= j else up, lo + 2 if lo >= j else lo, cu, cl)
        elif ev.kind == "rcusp":
            if up == j and lo == j + 1:
                out.append((e, tuple(reversed(cu)) + tuple(cl)))
            elif up in (j, j + 1) or lo in (j, j + 1):
                return
            else:
                walk(e + 1, up - 2 if up > j + 1 else up, lo - 2 if lo > j + 1 else lo, cu, cl)
        else:
            if up == j and lo == j + 1:
                out.append((e, tuple(reversed(cu)) + tuple(cl)))
                return
            if up == j:
                ups = [(j + 1, None)]
            elif up == j + 1:
                ups = [(j, None), (j + 1, names[e])]
            else:
                ups = [(up, None)]
            if lo == j:
                los = [(j + 1, None), (j, names[e])]
            elif lo == j + 1:
                los = [(j, None)]
            else:
                los = [(lo, None)]
            for (nu, cu_add), (nl, cl_add) in itertools.product(ups, los):
                if nu >= nl:
                    continue
                walk(e + 1, nu, nl,
                     cu + [cu_add] if cu_add else cu,
                     cl + [cl_add] if cl_add else cl)

    for s, ev in enumerate(events):
        if ev.kind == "lcusp":
            walk(s + 1, ev.level, ev.level + 1, [], [])
    return out


def chekanov_dga(fd: FrontDiagram, budget: int = DEFAULT_WORD_BUDGET) -> DGA:
    """Chekanov-Eliashberg algebra of a front in plat position (see ``plat_position``)."""
    if not is_plat(fd):
        raise FrontError("front is not in plat position; convert it with plat_position first")
    pot = fd.maslov_potential()
    names = _generator_names(fd)
    degrees: dict[str, int] = {}
    cross = {ev: (top, bot) for ev, top, bot in fd.crossing_arcs}
    for idx in sorted(names):
        if idx in cross:
            top, bot = cross[idx]
            degrees[names[idx]] = pot[top] - pot[bot]
        else:
            degrees[names[idx]] = 1
    acc: dict[str, Counter] = {names[i]: Counter() for i in sorted(names)}
    for idx in sorted(names):
        if fd.events[idx].kind == "rcusp":
            acc[names[idx]][()] += 1
    for e, word in _admissible_disks(fd, names, budget):
        acc[names[e]][word] += 1
    diff = {g: frozenset(w for w, c in cnt.items() if c % 2) for g, cnt in acc.items()}
    dga = DGA(degrees, diff, tuple(names[i] for i in sorted(names)))
    bad = dga.grading_defects()
    if bad:
        raise AssertionError(f"differential does not lower degree by one: {bad[:3]}")
    sq = dga.square_defects()
    if sq:
        raise AssertionError(f"differential squares to a nonzero element on {sq}")
    return dga


# --------------------------------------------------------- augmentations, LCH

@dataclass(frozen=True)
class Augmentation:
    values: Mapping[str, int]

    def __call__(self, g: str) -> int:
        return self.values.get(g, 0)

    def support(self) -> tuple[str, ...]:
        return tuple(sorted(g for g, v in self.values.items() if v))

    def to_json(self) -> dict:
        return dict(sorted(self.values.items()))


def _eval_word(w: Word, eps: Mapping[str, int]) -> int:
    for x in w:
        if not eps.get(x, 0):
            return 0
    return 1


def is_augmentation(d: DGA, eps: Mapping[str, int]) -> bool:
    if any(v and d.degrees[g] != 0 for g, v in eps.items()):
        return False
    for g in d.order:
        if sum(_eval_word(w, eps) for w in d.differential[g]) % 2:
            return False
    return True


def augmentations(d: DGA) -> list[Augmentation]:
    """All Z/2 augmentations, ordered by their assignment bits."""
    zero = [g for g in d.order if d.degrees[g] == 0]
    checks = [g for g in d.order if d.degrees[g] == 1]
    out = []
    for bits in itertools.product((0, 1), repeat=len(zero)):
        eps = dict(zip(zero, bits))
        if all(sum(_eval_word(w, eps) for w in d.differential[g]) % 2 == 0 for g in checks):
            out.append(Augmentation(eps))
    return out


def linearized_differential(d: DGA, e: Augmentation) -> dict[str, Counter]:
    lin: dict[str, Counter] = {}
    for g in d.order:
        cnt: Counter = Counter()
        for w in d.differential[g]:
            for i, x in enumerate(w):
                if _eval_word(w[:i] + w[i + 1:], e.values):
                    cnt[x] += 1
        lin[g] = Counter({x: 1 for x, c in cnt.items() if c % 2})
    return lin


def lch(d: DGA, e: Augmentation) -> GradedRanks:
    """Linearized contact homology over Z/2."""
    if not is_augmentation(d, e.values):
        raise ValueError("not an augmentation of this algebra")
    lin = linearized_differential(d, e)
    by_deg: dict[int, list[str]] = {}
    for g in d.order:
        by_deg.setdefault(d.degrees[g], []).append(g)
    index = {g: i for gs in by_deg.values() for i, g in enumerate(gs)}
    dims = {k: len(v) for k, v in by_deg.items()}
    bd = {}
    for k, gs in by_deg.items():
        ent = {}
        for g in gs:
            for x in lin[g]:
                ent[(index[x], index[g])] = 1
        if ent:
            bd[k] = SparseMatrix(dims.get(k - 1, 0), dims[k], ent)
    return homology(ChainComplex(dims, bd, Z2))


def gfh_from_lch(l: GradedRanks) -> GradedRanks:
    return l.shift(1)


def lch_spectrum(d: DGA) -> list[tuple[Augmentation, GradedRanks]]:
    return [(e, lch(d, e)) for e in augmentations(d)]


# ------------------------------------------------------------ knot type checks

def _diagram_arcs(fd: FrontDiagram):
    """Over-arcs of the knot diagram, treating the steeper-downward strand as over.

    Returns (crossing records, number of diagram arcs); each record is
    (over arc, incoming under arc, outgoing under arc, sign).
    """
    if len(fd.components()) != 1:
        raise FrontError("knot invariants need a single component")
    d = fd.orientation()
    comp = fd.components()[0]
    # ordered passage of crossings along each front arc, in direction of travel
    passes: dict[int, list[tuple[int, str]]] = {a: [] for a in range(len(fd.arcs))}
    for ci, (ev, top, bot) in enumerate(fd.crossing_arcs):
        passes[top].append((ev, "over"))
        passes[bot].append((ev, "under"))
    seq: list[tuple[int, str]] = []
    for a in comp:
        items = sorted(passes[a])
        if d[a] == -1:
            items.reverse()
        seq += items
    # diagram arcs break at each under passage
    unders = [i for i, (_, r) in enumerate(seq) if r == "under"]
    if not unders:
        return [], 1
    n = len(unders)
    arc_of_pos = {}
    cur = 0
    start = unders[0]
    for off in range(len(seq)):
        i = (start + off) % len(seq)
        if seq[i][1] == "under" and off:
            cur += 1
        arc_of_pos[i] = cur % n
    signs = dict(zip((ev for ev, _, _ in fd.crossing_arcs), fd.crossing_signs()))
    over_at = {seq[i][0]: arc_of_pos[i] for i in range(len(seq)) if seq[i][1] == "over"}
    records = []
    for i in unders:
        ev = seq[i][0]
        incoming = arc_of_pos[(i - 1) % len(seq)]
        outgoing = arc_of_pos[i]
        records.append((over_at[ev], incoming, outgoing, signs[ev]))
    return records, n


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [r[:] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _interpolate(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Coefficients (low degree first) of the polynomial through the points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


def alexander_polynomial(fd: FrontDiagram) -> tuple[int, ...]:
    """Normalized Alexander polynomial coefficients, lowest degree first, positive at t = 1.

    The Fox-calculus minor has linear entries, so it is evaluated exactly at enough
    integer points and interpolated.
    """
    records, n = _diagram_arcs(fd)
    if n <= 1:
        return (1,)

    def minor(t: int) -> Fraction:
        m = [[Fraction(0)] * n for _ in records]
        for r, (k, i, j, s) in enumerate(records):
            if s > 0:
                m[r][k] += 1 - t
                m[r][i] += t
                m[r][j] -= 1
            else:
                m[r][k] += t - 1
                m[r][i] += 1
                m[r][j] -= t
        return _det([row[1:] for row in m[1:]])

    xs = list(range(2, n + 2))
    coeffs = _interpolate(xs, [minor(x) for x in xs])
    if any(c.denominator != 1 for c in coeffs):
        raise FrontError("non-integral Alexander minor")
    out = [int(c) for c in coeffs]
    while out and out[0] == 0:
        out.pop(0)
    while out and out[-1] == 0:
        out.pop()
    if out and sum(out) < 0:
        out = [-c for c in out]
    return tuple(out)


def knot_determinant(fd: FrontDiagram) -> int:
    coeffs = alexander_polynomial(fd)
    return abs(sum(c * (-1) ** i for i, c in enumerate(coeffs)))


# -------------------------------------------------------------- fixtures

def vertical_twist(level: int, d: int) -> list[Event]:
    """d crossings stacked in one column on the strands at ``level``, ``level + 1``.

    Consecutive crossings are joined by a left cusp on the left and a right cusp
    on the right, so the two strands twist vertically instead of horizontally.
    """
    if d < 1:
        raise ValueError("need at least one crossing")
    ev = [Event("lcusp", level + 1 + 2 * j) for j in range(d - 1)]
    ev += [Event("cross", level + 2 * j) for j in range(d)]
    ev += [Event("rcusp", level + 1) for _ in range(d - 1)]
    return ev


def twist_front(d: int) -> FrontDiagram:
    """Twist knot with a two-crossing clasp and a vertical column of d crossings, in plat position.

    d = 3 is the m(5_2) knot; in general the knot type is the twist knot with d half twists.
    """
    if d < 2:
        raise ValueError("twist fronts need d >= 2")
    ev = [Event("lcusp", 1), Event("lcusp", 1), Event("cross", 2), Event("cross", 2)]
    ev += vertical_twist(2, d)
    ev += [Event("rcusp", 1), Event("rcusp", 1)]
    return plat_position(FrontDiagram(2 * (d + 1), tuple(ev)))


def unknot_front() -> FrontDiagram:
    return FrontDiagram(2, (Event("lcusp", 1), Event("rcusp", 1)))


def trefoil_front() -> FrontDiagram:
    ev = [Event("lcusp", 1), Event("lcusp", 3)] + [Event("cross", 2)] * 3 + [Event("rcusp", 3), Event("rcusp", 1)]
    return FrontDiagram(4, tuple(ev))
