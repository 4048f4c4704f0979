"""Decision procedures built on GFH profiles: fiber-dimension bounds, fillability,
duality, and comparison of GFH with the topology of exact fillings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .homlin import Z, Z2, GradedRanks
from .spectop import (SimplicialComplex, SpectrumSurrogate, boundary_sphere, projective_plane,
                      spec_homology, shift, suspension_obstruction, suspension_spectrum, torus,
                      wedge_complexes)

NO_FILLING = "noFilling"
NO_CONNECTED_FILLING = "noConnectedFilling"
NO_OBSTRUCTION = "noObstruction"


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class GFHProfile:
    rings: Mapping[str, GradedRanks]
    m: int
    connected: bool = True

    def __post_init__(self):
        if self.m < 0:
            raise ProfileError("Legendrian dimension must be >= 0")
        if not self.rings:
            raise ProfileError("profile has no coefficient rings")

    def nonzero(self) -> set[int]:
        out: set[int] = set()
        for h in self.rings.values():
            out |= h.nonzero_degrees()
        return out

    def mod2(self) -> GradedRanks:
        if Z2 in self.rings:
            return self.rings[Z2]
        if Z in self.rings:
            # universal coefficients; exact for finite complexes
            return GradedRanks.from_ranks(self.rings[Z].mod2_ranks())
        raise ProfileError("duality needs a Z/2 profile (or a Z profile to reduce)")

    def to_json(self) -> dict:
        return {"m": self.m, "connected": self.connected,
                "rings": {r: h.to_json() for r, h in self.rings.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "GFHProfile":
        try:
            rings = {str(r): GradedRanks.from_json(h) for r, h in data["rings"].items()}
            return cls(rings, int(data["m"]), bool(data.get("connected", True)))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ProfileError(f"malformed profile: {exc}") from exc

    @classmethod
    def load(cls, path) -> "GFHProfile":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def profile(ranks: Mapping[int, int] | GradedRanks, m: int = 1, ring: str = Z2,
            connected: bool = True) -> GFHProfile:
    h = ranks if isinstance(ranks, GradedRanks) else GradedRanks.from_ranks(ranks)
    return GFHProfile({ring: h}, m, connected)


# ---------------------------------------------------------------- N_min

def nmin_lower_bound(p: GFHProfile) -> int:
    best = 1
    for h in p.rings.values():
        for deg in h.nonzero_degrees():
            if deg <= 0:
                best = max(best, -deg + 1)
            if deg >= 0:
                best = max(best, deg - p.m)
    return best


@dataclass(frozen=True)
class NminReport:
    homology_bound: int
    steenrod_bound: int | None  # None when no cell-level surrogate was supplied
    detail: str = ""

    def to_json(self):
        return {"homologyLevelBound": self.homology_bound,
                "steenrodEnhancedBound": self.steenrod_bound, "detail": self.detail}


def nmin_report(p: GFHProfile, surrogate: SpectrumSurrogate | None = None,
                max_extra: int = 16) -> NminReport:
    """Both bounds on the fiber dimension.

    The generating family spectrum shifted up by N must be a suspension spectrum of a
    connected space, so with a surrogate for it the least such N not obstructed by
    the Steenrod test is also a lower bound.
    """
    hb = nmin_lower_bound(p)
    if surrogate is None:
        return NminReport(hb, None, "no cell-level surrogate; Steenrod bound unavailable")
    for n in range(1, hb + max_extra + 1):
        v = suspension_obstruction(shift(surrogate, n))
        if v.status != "obstructed":
            detail = "" if n <= hb else f"shift by {n - 1} obstructed: {suspension_obstruction(shift(surrogate, n - 1)).reason}"
            return NminReport(hb, max(hb, n), detail)
    raise ProfileError("surrogate stays obstructed under every tested shift")


# ---------------------------------------------------------------- fillings

def fillability_obstruction(p: GFHProfile) -> str:
    nz = p.nonzero()
    if any(k < 0 for k in nz):
        return NO_FILLING
    if p.connected and 0 in nz:
        return NO_CONNECTED_FILLING
    return NO_OBSTRUCTION


@dataclass(frozen=True)
class DualityReport:
    passed: bool
    pairs: tuple[tuple[int, int], ...]  # (negative degree, partner degree), both nonzero
    witness: tuple[int, int] | None = None  # (k, partner degree) breaking the pairing

    def to_json(self):
        out = {"result": "pass" if self.passed else "fail", "pairs": [list(x) for x in self.pairs]}
        if self.witness:
            out["witness"] = {"k": self.witness[0], "partnerDegree": self.witness[1]}
        return out


def duality_audit(p: GFHProfile) -> DualityReport:
    """GFH_{-k} != 0 iff GFH_{m+1+k} != 0 over Z/2, for k >= 1.

    k = 0 is skipped: degree m + 1 always carries the fundamental class of the
    Legendrian (the unknot has GFH only there), so it has no partner in degree 0.
    """
    nz = p.mod2().nonzero_degrees()
    ks = sorted({-d for d in nz if d < 0} | {d - p.m - 1 for d in nz if d > p.m + 1})
    pairs = []
    for k in ks:
        lo, hi = -k, p.m + 1 + k
        if (lo in nz) != (hi in nz):
            return DualityReport(False, tuple(pairs), (k, hi))
        pairs.append((lo, hi))
    return DualityReport(True, tuple(pairs))


@dataclass(frozen=True)
class SurfaceFilling:
    genus: int
    boundary: int = 1
    orientable: bool = True

    def __post_init__(self):
        if self.boundary < 1:
            raise ProfileError("a filling has at least one boundary component")
        if self.genus < 0 or (not self.orientable and self.genus < 1):
            raise ProfileError("bad genus")

    def euler_characteristic(self) -> int:
        return (2 - 2 * self.genus if self.orientable else 2 - self.genus) - self.boundary

    def to_json(self):
        return {"genus": self.genus, "boundary": self.boundary, "orientable": self.orientable}

    @classmethod
    def from_json(cls, data: Mapping) -> "SurfaceFilling":
        return cls(int(data["genus"]), int(data.get("boundary", 1)), bool(data.get("orientable", True)))


@dataclass(frozen=True)
class IntervalFilling:
    """The interval filling a pair of points (a 0-dimensional Legendrian)."""


def _connected_sum(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    fa, fb = a.facets[-1], b.facets[0]
    off = max(a.vertices) + 1
    glue = {v: w for v, w in zip(fb, fa)}
    moved = tuple(tuple(glue.get(v, v + off) for v in f) for f in b.facets[1:])
    return SimplicialComplex(a.facets[:-1] + moved)


def closed_surface(genus: int, orientable: bool = True) -> SimplicialComplex:
    if orientable and genus == 0:
        return boundary_sphere(2)
    piece = torus() if orientable else projective_plane()
    out = piece
    for _ in range(genus - 1):
        out = _connected_sum(out, piece)
    return out


def filling_quotient(s: SurfaceFilling | IntervalFilling) -> SimplicialComplex:
    """A complex homotopy equivalent to the filling with its boundary collapsed.

    Collapsing each boundary circle gives the closed surface with b points
    identified, which is the closed surface wedge b - 1 circles.
    """
    if isinstance(s, IntervalFilling):
        return boundary_sphere(1)
    k = closed_surface(s.genus, s.orientable)
    for _ in range(s.boundary - 1):
        k = wedge_complexes(k, boundary_sphere(1))
    return k


def seidel_spectrum(s: SurfaceFilling | IntervalFilling) -> SpectrumSurrogate:
    return suspension_spectrum(filling_quotient(s), "filling")


@dataclass(frozen=True)
class SeidelComparison:
    match: bool
    expected: GradedRanks
    observed: GradedRanks
    mismatched: tuple[int, ...] = field(default=())

    def to_json(self):
        return {"verdict": "MATCH" if self.match else "MISMATCH",
                "expected": self.expected.to_json(), "observed": self.observed.to_json(),
                "mismatchedDegrees": list(self.mismatched)}


def compare_seidel(gfh: GradedRanks, filling: SurfaceFilling | IntervalFilling,
                   ring: str = Z2) -> SeidelComparison:
    exp = spec_homology(seidel_spectrum(filling), ring)
    bad = tuple(sorted(k for k in exp.nonzero_degrees() | gfh.nonzero_degrees()
                       if exp.groups.get(k) != gfh.groups.get(k)))
    return SeidelComparison(not bad, exp, gfh, bad)


def euler_audit(gfh: GradedRanks, filling: SurfaceFilling) -> bool:
    """chi(GFH) against the reduced Euler characteristic of the filling quotient, two ways."""
    direct = 1 - (2 * filling.genus + filling.boundary - 1) if filling.orientable else None
    via_complex = spec_homology(seidel_spectrum(filling), Z2).euler_characteristic()
    if direct is not None and direct != via_complex:
        return False
    return gfh.euler_characteristic() == via_complex
