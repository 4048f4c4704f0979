"""Finite spectrum surrogates.

A surrogate is a finite simplicial complex K with an integer shift s and stands
for the desuspended suspension spectrum Sigma^{-s} Sigma^infty K. It carries
reduced homology, mod-2 cup squares and the Sq^1 information read off from
integral torsion, which is enough to test a few necessary conditions for being
an honest suspension spectrum.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .homlin import Z, Z2, GradedRanks, homology, simplicial_chains

# stable stems pi_k^s(S^0), k = 0..8
PI_STEMS = ("Z", "Z/2", "Z/2", "Z/24", "0", "0", "Z/2", "Z/240", "Z/2 x Z/2")
TABLE_HORIZON = len(PI_STEMS) - 1


class HorizonError(ValueError):
    pass


# ---------------------------------------------------------------- simplicial complexes

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    facets: tuple[Simplex, ...]

    def __post_init__(self):
        fs = sorted({tuple(sorted(set(int(v) for v in f))) for f in self.facets})
        if any(not f for f in fs):
            raise ValueError("empty facet")
        # drop facets contained in other facets
        keep = [f for f in fs if not any(f != g and set(f) < set(g) for g in fs)]
        object.__setattr__(self, "facets", tuple(keep))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def simplices(self, k: int) -> list[Simplex]:
        out = set()
        for f in self.facets:
            if len(f) > k:
                out.update(itertools.combinations(f, k + 1))
        return sorted(out)

    def link(self, v: int) -> "SimplicialComplex | None":
        fs = [tuple(x for x in f if x != v) for f in self.facets if v in f]
        fs = [f for f in fs if f]
        return SimplicialComplex(tuple(fs)) if fs else None

    def relabeled(self, offset: int) -> "SimplicialComplex":
        return SimplicialComplex(tuple(tuple(v + offset for v in f) for f in self.facets))

    def reduced_homology(self, ring: str = Z) -> GradedRanks:
        cx, _ = simplicial_chains([list(f) for f in self.facets], ring=ring, reduced=True)
        return homology(cx, ring)

    def to_json(self):
        return {"facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data) -> "SimplicialComplex":
        try:
            return cls(tuple(tuple(int(v) for v in f) for f in data["facets"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed complex: {exc}") from exc


def boundary_sphere(n: int) -> SimplicialComplex:
    """S^n as the boundary of the (n+1)-simplex."""
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    return SimplicialComplex(tuple(itertools.combinations(range(n + 2), n + 1)))


def torus() -> SimplicialComplex:
    """The 7-vertex torus."""
    return SimplicialComplex(tuple(
        f for i in range(7) for f in (((i, (i + 1) % 7, (i + 3) % 7)), (i, (i + 2) % 7, (i + 3) % 7))))


def projective_plane() -> SimplicialComplex:
    return SimplicialComplex(((1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
                              (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)))


# Nine vertices indexed by Z/3 x Z/3 (vertex 3a + b); four translation orbits of 4-simplices.
_CP2_FACETS = (
    (0, 1, 2, 3, 4), (0, 1, 2, 3, 5), (0, 1, 2, 4, 5), (0, 1, 3, 4, 6), (0, 1, 3, 5, 7),
    (0, 1, 3, 6, 7), (0, 1, 4, 5, 6), (0, 1, 5, 6, 8), (0, 1, 5, 7, 8), (0, 1, 6, 7, 8),
    (0, 2, 3, 4, 8), (0, 2, 3, 5, 8), (0, 2, 4, 5, 6), (0, 2, 4, 6, 7), (0, 2, 4, 7, 8),
    (0, 2, 5, 6, 8), (0, 2, 6, 7, 8), (0, 3, 4, 6, 7), (0, 3, 4, 7, 8), (0, 3, 5, 7, 8),
    (1, 2, 3, 4, 8), (1, 2, 3, 5, 7), (1, 2, 3, 6, 7), (1, 2, 3, 6, 8), (1, 2, 4, 5, 7),
    (1, 2, 4, 7, 8), (1, 2, 6, 7, 8), (1, 3, 4, 6, 8), (1, 4, 5, 6, 8), (1, 4, 5, 7, 8),
    (2, 3, 5, 6, 7), (2, 3, 5, 6, 8), (2, 4, 5, 6, 7), (3, 4, 5, 6, 7), (3, 4, 5, 6, 8),
    (3, 4, 5, 7, 8),
)


def complex_projective_plane() -> SimplicialComplex:
    """A 9-vertex, 36-facet triangulation of CP^2 (3-neighborly)."""
    return SimplicialComplex(_CP2_FACETS)


def point() -> SimplicialComplex:
    return SimplicialComplex(((0,),))


def suspension(k: SimplicialComplex) -> SimplicialComplex:
    """Join with two new vertices."""
    n, s = max(k.vertices) + 1, max(k.vertices) + 2
    return SimplicialComplex(tuple(f + (n,) for f in k.facets) + tuple(f + (s,) for f in k.facets))


def plus(k: SimplicialComplex) -> SimplicialComplex:
    """K with a disjoint basepoint added."""
    return SimplicialComplex(k.facets + ((max(k.vertices) + 1,),))


def wedge_complexes(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Glue the smallest vertex of b to the smallest vertex of a."""
    off = max(a.vertices) + 1 - min(b.vertices)
    b2 = b.relabeled(off)
    base_b, base_a = min(b2.vertices), min(a.vertices)
    glued = tuple(tuple(base_a if v == base_b else v for v in f) for f in b2.facets)
    return SimplicialComplex(a.facets + glued)


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    faces = sorted({s for f in k.facets for r in range(1, len(f) + 1)
                    for s in itertools.combinations(f, r)})
    label = {s: i for i, s in enumerate(faces)}
    out = []
    for f in k.facets:
        for perm in itertools.permutations(f):
            out.append(tuple(label[tuple(sorted(perm[:i]))] for i in range(1, len(f) + 1)))
    return SimplicialComplex(tuple(out))


# ---------------------------------------------------------------- mod-2 cochains

def _reduce(vec: int, basis: dict[int, int]) -> int:
    """Reduce a bitset against an echelon basis keyed by leading bit."""
    while vec:
        top = vec.bit_length() - 1
        if top not in basis:
            return vec
        vec ^= basis[top]
    return 0


def _insert(vec: int, basis: dict[int, int]) -> bool:
    vec = _reduce(vec, basis)
    if vec:
        basis[vec.bit_length() - 1] = vec
        return True
    return False


class Cochains:
    """Mod-2 simplicial cochains with the Alexander-Whitney cup product."""

    def __init__(self, k: SimplicialComplex):
        self.complex = k
        self.cells = {d: k.simplices(d) for d in range(k.dim + 1)}
        self.index = {d: {s: i for i, s in enumerate(c)} for d, c in self.cells.items()}
        self._coface_cache: dict[int, list[int]] = {}

    def _cofaces(self, d: int) -> list[int]:
        """Bitset over (d+1)-simplices of the cofaces of each d-simplex."""
        if d not in self._coface_cache:
            out = [0] * len(self.cells[d])
            idx = self.index[d]
            for j, s in enumerate(self.cells.get(d + 1, [])):
                for i in range(len(s)):
                    out[idx[s[:i] + s[i + 1:]]] |= 1 << j
            self._coface_cache[d] = out
        return self._coface_cache[d]

    def coboundary(self, d: int, x: int) -> int:
        """delta of a d-cochain given as a bitset over d-simplices."""
        if d + 1 not in self.cells:
            return 0
        cof = self._cofaces(d)
        out = 0
        while x:
            low = x & -x
            out ^= cof[low.bit_length() - 1]
            x ^= low
        return out

    def coboundary_image(self, d: int) -> dict[int, int]:
        """Echelon basis of delta(C^{d-1}) inside C^d."""
        basis: dict[int, int] = {}
        if d == 0:
            return basis
        for i in range(len(self.cells[d - 1])):
            _insert(self.coboundary(d - 1, 1 << i), basis)
        return basis

    def cocycles(self, d: int) -> list[int]:
        """Basis of ker(delta) on C^d via elimination on coboundary columns."""
        n = len(self.cells[d])
        if d + 1 not in self.cells:
            return [1 << i for i in range(n)]
        # rows: (image bitset, combination bitset)
        rows = [(self.coboundary(d, 1 << i), 1 << i) for i in range(n)]
        piv: dict[int, tuple[int, int]] = {}
        kernel = []
        for img, comb in rows:
            while img:
                top = img.bit_length() - 1
                if top not in piv:
                    piv[top] = (img, comb)
                    break
                pi, pc = piv[top]
                img ^= pi
                comb ^= pc
            if not img:
                kernel.append(comb)
        return kernel

    def cohomology_basis(self, d: int) -> list[int]:
        """Cocycles whose classes form a basis of H^d(K; Z/2)."""
        basis = dict(self.coboundary_image(d))
        out = []
        for z in self.cocycles(d):
            if _insert(z, basis):
                out.append(z)
        return out

    def cup(self, p: int, x: int, q: int, y: int) -> int:
        out = 0
        ip, iq = self.index[p], self.index[q]
        for j, s in enumerate(self.cells.get(p + q, [])):
            if (x >> ip[s[:p + 1]] & 1) and (y >> iq[s[p:]] & 1):
                out |= 1 << j
        return out

    def is_coboundary(self, d: int, x: int) -> bool:
        return _reduce(x, self.coboundary_image(d)) == 0


def cup_square_degrees(k: SimplicialComplex) -> list[int]:
    """Degrees d > 0 where x -> x cup x is nonzero on H^d(K; Z/2)."""
    co = Cochains(k)
    out = []
    for d in range(1, k.dim // 2 + 1):
        for x in co.cohomology_basis(d):
            if not co.is_coboundary(2 * d, co.cup(d, x, d, x)):
                out.append(d)
                break
    return out


def sq1_degrees(k: SimplicialComplex) -> list[int]:
    """Degrees d where Sq^1 is nonzero on H^d(K; Z/2): a Z/2 summand in H_d(K; Z)."""
    h = k.reduced_homology(Z)
    return [d for d in h.nonzero_degrees() if 2 in h.torsion(d)]


# ---------------------------------------------------------------- surrogates

@dataclass(frozen=True)
class SpectrumSurrogate:
    """Sigma^{-shift} Sigma^infty of ``complex``; with no complex only ``ranks`` are known."""

    complex: SimplicialComplex | None
    shift: int = 0
    ranks: GradedRanks | None = None  # reduced homology of the (absent) complex, over Z
    label: str = ""

    def __post_init__(self):
        if self.complex is None and self.ranks is None:
            raise ValueError("a surrogate needs a complex or its homology")


def suspension_spectrum(k: SimplicialComplex, label: str = "") -> SpectrumSurrogate:
    return SpectrumSurrogate(k, 0, None, label)


def from_homology(ranks: GradedRanks, label: str = "") -> SpectrumSurrogate:
    """A surrogate known only through its homology (cup structure unavailable)."""
    return SpectrumSurrogate(None, 0, ranks, label)


def spec_homology(x: SpectrumSurrogate, ring: str = Z) -> GradedRanks:
    if x.complex is not None:
        h = x.complex.reduced_homology(ring)
    elif ring == Z:
        h = x.ranks
    else:
        h = GradedRanks.from_ranks(x.ranks.mod2_ranks())
    return h.shift(-x.shift)


def shift(x: SpectrumSurrogate, n: int) -> SpectrumSurrogate:
    """Raise every homology degree by n."""
    return SpectrumSurrogate(x.complex, x.shift - n, x.ranks, x.label)


def _suspend_to(x: SpectrumSurrogate, s: int) -> SpectrumSurrogate:
    k = x.complex
    for _ in range(s - x.shift):
        k = suspension(k)
    return SpectrumSurrogate(k, s, None, x.label)


def wedge(*xs: SpectrumSurrogate) -> SpectrumSurrogate:
    if not xs:
        raise ValueError("wedge of nothing")
    if any(x.complex is None for x in xs):
        total = GradedRanks({})
        for x in xs:
            total = total + spec_homology(x)
        return SpectrumSurrogate(None, 0, total, "+".join(x.label for x in xs))
    s = max(x.shift for x in xs)
    parts = [_suspend_to(x, s) for x in xs]
    k = parts[0].complex
    for p in parts[1:]:
        k = wedge_complexes(k, p.complex)
    return SpectrumSurrogate(k, s, None, "+".join(x.label for x in xs if x.label))


def sphere_spectrum(n: int) -> SpectrumSurrogate:
    """Sigma^infty S^n (n >= 0) or its desuspension for n < 0."""
    if n >= 0:
        return SpectrumSurrogate(boundary_sphere(n), 0, None, f"S{n}")
    return SpectrumSurrogate(boundary_sphere(0), -n, None, f"S{n}")


# ---------------------------------------------------------------- obstruction

@dataclass(frozen=True)
class Verdict:
    status: str  # "possible" | "obstructed" | "inconclusive"
    reason: str = ""
    homology_level: str = ""  # verdict from homology alone

    def __str__(self):
        return f"{self.status}: {self.reason}" if self.reason else self.status

    def to_json(self):
        return {"status": self.status, "reason": self.reason, "homologyLevel": self.homology_level}


def _degree_test(x: SpectrumSurrogate) -> str | None:
    for ring in (Z, Z2):
        h = spec_homology(x, ring)
        low = [k for k in h.nonzero_degrees() if k <= 0]
        if low:
            return f"nonzero homology in degree {low[0]}"
    return None


def suspension_obstruction(x: SpectrumSurrogate) -> Verdict:
    """Necessary conditions for x to be the suspension spectrum of a connected pointed space.

    Degree test: reduced homology must vanish in degrees <= 0. Instability: a mod-2
    class of spectrum degree d may not carry a nonzero Sq^i with i > d; here Sq^i is
    available for i = 1 (integral Bockstein) and i = cohomological degree (cup square).
    """
    low = _degree_test(x)
    if low:
        return Verdict("obstructed", low, "obstructed")
    if x.complex is None:
        return Verdict("inconclusive", "cup structure unavailable", "possible")
    for j in sq1_degrees(x.complex):
        d = j - x.shift
        if 1 > d:
            return Verdict("obstructed", f"Sq1 instability: degree-{d} class with Sq1 != 0", "possible")
    for j in cup_square_degrees(x.complex):
        d = j - x.shift
        if j > d:
            return Verdict("obstructed", f"Sq{j} instability: degree-{d} class with Sq{j} != 0", "possible")
    return Verdict("possible", "", "possible")


# ---------------------------------------------------------------- sphere wedges and pi_*

@dataclass(frozen=True)
class SphereWedge:
    dims: tuple[int, ...]
    shift: int = 0

    def effective(self) -> tuple[int, ...]:
        return tuple(n + self.shift for n in self.dims)

    def homology(self) -> GradedRanks:
        return GradedRanks.from_ranks(dict(_count(self.effective())))

    def surrogate(self) -> SpectrumSurrogate:
        return wedge(*(sphere_spectrum(n) for n in self.effective()))

    def __str__(self):
        body = "+".join(f"S{n}" for n in self.dims)
        return f"{body} @shift {self.shift}" if self.shift else body


def _count(xs: Iterable[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for x in xs:
        out[x] = out.get(x, 0) + 1
    return out


_WEDGE_RE = re.compile(r"^\s*S(-?\d+)((?:\s*\+\s*S-?\d+)*)\s*(?:@shift\s+(-?\d+))?\s*$")


def parse_wedge(text: str) -> SphereWedge:
    """Parse the literal syntax "S1+S1+S2 @shift 0"."""
    m = _WEDGE_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse sphere wedge {text!r}")
    dims = [int(m.group(1))] + [int(t) for t in re.findall(r"S(-?\d+)", m.group(2) or "")]
    return SphereWedge(tuple(dims), int(m.group(3) or 0))


def stem(k: int) -> str:
    if k < 0:
        return "0"
    if k > TABLE_HORIZON:
        raise HorizonError(f"table horizon exceeded: stem {k} > {TABLE_HORIZON}")
    return PI_STEMS[k]


def pi_s_lookup(w: SphereWedge, k: int) -> str:
    """pi_k of the wedge as a direct sum of table entries, zeros dropped."""
    parts = [stem(k - n) for n in w.effective()]
    nonzero = [p for p in parts if p != "0"]
    return " + ".join(nonzero) if nonzero else "0"


# ---------------------------------------------------------------- named fixtures

def named(name: str) -> SpectrumSurrogate:
    """Fixture surrogates: S<n>, T2, RP2, CP2, point."""
    if re.fullmatch(r"S-?\d+", name):
        return sphere_spectrum(int(name[1:]))
    table = {"T2": torus, "RP2": projective_plane, "CP2": complex_projective_plane, "point": point}
    if name not in table:
        raise KeyError(f"unknown complex {name!r}")
    return suspension_spectrum(table[name](), name)
