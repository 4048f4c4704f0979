"""Linear-at-infinity generating families, their difference functions, and the
sheared machinery for fillings over a point.

A descriptor evaluates

    f(x, eta) = chi(x, eta) * core(x, eta) + A(eta) + sum_j s_j * eta_j**2

where ``core`` is a polynomial, ``chi`` a product of smoothstep cutoffs that is
identically 1 on the inner part of the support box and 0 outside it, ``A`` the
linear tail and the signs ``s_j`` in {-1, 0, +1} record stabilizations.
Variables are ordered base first, then fiber.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from decimal import Decimal
from typing import Callable, Sequence

import numpy as np

from . import cubegrid
from .cubegrid import Axis, CubicalPair, GridSpec, SampledField
from .homlin import Z, GradedRanks

DEFAULT_BLEND = 0.25
GRID_MARGIN = 0.25


class DescriptorError(ValueError):
    pass


class WindowError(ValueError):
    pass


class ChoiceViolation(ValueError):
    """A shear parameter breaks one of the required inequalities; the message names it."""


def smoothstep(x):
    x = np.clip(x, 0.0, 1.0)
    return x * x * (3.0 - 2.0 * x)


def _dec(x) -> str:
    return str(Decimal(repr(float(x)))) if not isinstance(x, str) else x


# ---------------------------------------------------------------- descriptor

@dataclass(frozen=True)
class Monomial:
    coeff: float
    exponents: tuple[int, ...]

    def __call__(self, coords: Sequence[np.ndarray]):
        out = self.coeff
        for c, e in zip(coords, self.exponents):
            if e:
                out = out * c ** e
        return out


@dataclass(frozen=True)
class GFDescriptor:
    base_dim: int
    fiber_dim: int
    core: tuple[Monomial, ...]
    support: tuple[tuple[float, float], ...]  # one interval per variable
    tail: tuple[float, ...]
    blend: float = DEFAULT_BLEND
    quadratic: tuple[int, ...] = ()

    def __post_init__(self):
        nv = self.base_dim + self.fiber_dim
        if self.base_dim < 0:
            raise DescriptorError("base dimension must be >= 0")
        if self.fiber_dim < 1:
            raise DescriptorError("fiber dimension must be at least 1")
        object.__setattr__(self, "core", tuple(
            m if isinstance(m, Monomial) else Monomial(float(m[0]), tuple(m[1])) for m in self.core))
        object.__setattr__(self, "support", tuple((float(a), float(b)) for a, b in self.support))
        object.__setattr__(self, "tail", tuple(float(a) for a in self.tail))
        quad = tuple(self.quadratic) or (0,) * self.fiber_dim
        object.__setattr__(self, "quadratic", quad)
        if len(self.support) != nv:
            raise DescriptorError(f"support box needs {nv} intervals, got {len(self.support)}")
        if any(not a < b for a, b in self.support):
            raise DescriptorError("support intervals need lo < hi")
        if len(self.tail) != self.fiber_dim or len(self.quadratic) != self.fiber_dim:
            raise DescriptorError("tail and quadratic signs need one entry per fiber variable")
        if not any(self.tail):
            raise DescriptorError("linear tail must be nonzero")
        if any(q not in (-1, 0, 1) for q in self.quadratic):
            raise DescriptorError("quadratic signs must be -1, 0 or +1")
        for m in self.core:
            if len(m.exponents) != nv or any(e < 0 for e in m.exponents):
                raise DescriptorError(f"monomial {m} does not match {nv} variables")
            if any(e and q for e, q in zip(m.exponents[self.base_dim:], self.quadratic)):
                raise DescriptorError("the core may not involve stabilization variables")
        if not 0.0 < self.blend <= 1.0:
            raise DescriptorError("blend radius must lie in (0, 1]")

    @property
    def nvars(self) -> int:
        return self.base_dim + self.fiber_dim

    @property
    def is_linear(self) -> bool:
        return not any(m.coeff for m in self.core)

    def cutoff(self, coords: Sequence[np.ndarray]):
        """Product of per-axis cutoffs: 1 on the inner box, 0 outside the support box.

        Stabilization axes are skipped; the core does not depend on them.
        """
        out = 1.0
        skip = (0,) * self.base_dim + self.quadratic
        for c, (lo, hi), q in zip(coords, self.support, skip):
            if q:
                continue
            mid, half = (lo + hi) / 2.0, (hi - lo) / 2.0
            inner = half * (1.0 - self.blend)
            out = out * (1.0 - smoothstep((np.abs(c - mid) - inner) / (half - inner)))
        return out

    def core_part(self, coords: Sequence[np.ndarray]):
        if self.is_linear:
            return 0.0
        poly = 0.0
        for m in self.core:
            poly = poly + m(coords)
        return self.cutoff(coords) * poly

    def linear_part(self, fiber: Sequence[np.ndarray]):
        out = 0.0
        for a, y in zip(self.tail, fiber):
            if a:
                out = out + a * y
        return out

    def quadratic_part(self, fiber: Sequence[np.ndarray]):
        out = 0.0
        for s, y in zip(self.quadratic, fiber):
            if s:
                out = out + s * y * y
        return out

    def __call__(self, *coords):
        if len(coords) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates")
        fiber = coords[self.base_dim:]
        return self.core_part(coords) + self.linear_part(fiber) + self.quadratic_part(fiber)

    # -- JSON

    def to_json(self) -> dict:
        return {
            "baseDim": self.base_dim,
            "fiberDim": self.fiber_dim,
            "core": [{"coeff": _dec(m.coeff), "exponents": list(m.exponents)} for m in self.core],
            "supportBox": [[_dec(a), _dec(b)] for a, b in self.support],
            "blendRadius": _dec(self.blend),
            "tail": [_dec(a) for a in self.tail],
            "stabilization": list(self.quadratic),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GFDescriptor":
        try:
            nb, nf = int(data["baseDim"]), int(data["fiberDim"])
            core = tuple(Monomial(float(Decimal(str(m["coeff"]))), tuple(int(e) for e in m["exponents"]))
                         for m in data.get("core", []))
            support = tuple((float(Decimal(str(a))), float(Decimal(str(b)))) for a, b in data["supportBox"])
            tail = tuple(float(Decimal(str(a))) for a in data["tail"])
            blend = float(Decimal(str(data.get("blendRadius", DEFAULT_BLEND))))
            quad = tuple(int(q) for q in data.get("stabilization", [0] * nf))
        except (KeyError, TypeError, ArithmeticError, ValueError) as ex:
            raise DescriptorError(f"malformed descriptor: {ex}") from ex
        return cls(nb, nf, core, support, tail, blend, quad)

    @classmethod
    def load(cls, path) -> "GFDescriptor":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def stabilize(g: GFDescriptor, sign: int | str = 1) -> GFDescriptor:
    """Add one fiber variable carrying +y**2 or -y**2; the tail ignores it."""
    s = {"+": 1, "-": -1}.get(sign, sign)
    if s not in (1, -1):
        raise ValueError("stabilization sign must be + or -")
    core = tuple(Monomial(m.coeff, m.exponents + (0,)) for m in g.core)
    lo = min(a for a, _ in g.support[g.base_dim:])
    hi = max(b for _, b in g.support[g.base_dim:])
    return GFDescriptor(g.base_dim, g.fiber_dim + 1, core, g.support + ((lo, hi),),
                        g.tail + (0.0,), g.blend, g.quadratic + (s,))


# ---------------------------------------------------------------- difference function

@dataclass(frozen=True)
class DifferenceFunction:
    """delta(x, eta, eta~) = f(x, eta~) - f(x, eta); variables ordered (x, eta, eta~)."""

    family: GFDescriptor

    @property
    def nvars(self) -> int:
        return self.family.base_dim + 2 * self.family.fiber_dim

    def __call__(self, *coords):
        g = self.family
        x = coords[:g.base_dim]
        eta = coords[g.base_dim:g.base_dim + g.fiber_dim]
        eta2 = coords[g.base_dim + g.fiber_dim:]
        return g(*x, *eta2) - g(*x, *eta)

    def sample(self, grid: GridSpec) -> SampledField:
        if grid.dim != self.nvars:
            raise ValueError(f"grid has dimension {grid.dim}, field needs {self.nvars}")
        return SampledField.from_function(grid, self)


def difference_function(g: GFDescriptor) -> DifferenceFunction:
    return DifferenceFunction(g)


def default_grid(g: GFDescriptor, samples: int | Sequence[int], budget: int = cubegrid.DEFAULT_BUDGET,
                 margin: float = GRID_MARGIN) -> GridSpec:
    """Box for delta: the support box grown by ``margin`` of its width on each side.

    Stabilized fiber axes reuse the widest fiber interval of the box.
    """
    nv = g.base_dim + 2 * g.fiber_dim
    counts = [samples] * nv if isinstance(samples, int) else list(samples)
    if len(counts) != nv:
        raise ValueError(f"need {nv} sample counts")
    grown = []
    for lo, hi in g.support:
        pad = margin * (hi - lo) / 2.0
        grown.append((lo - pad, hi + pad))
    fiber = grown[g.base_dim:]
    axes = [Axis(lo, hi, n) for (lo, hi), n in zip(grown[:g.base_dim] + fiber + fiber, counts)]
    return GridSpec(tuple(axes), budget)


# ---------------------------------------------------------------- windows and GFH

@dataclass(frozen=True)
class Window:
    eps: float
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.eps) and math.isfinite(self.omega)):
            raise WindowError("window ends must be finite")
        if self.eps <= 0:
            raise WindowError(f"need eps > 0, got {self.eps}")
        if not self.omega > self.eps:
            raise WindowError(f"need omega > eps, got ({self.eps}, {self.omega})")

    def check(self, spectrum: Sequence[float]):
        if spectrum and not (self.eps < min(spectrum) and max(spectrum) < self.omega):
            raise WindowError(
                f"window ({self.eps}, {self.omega}) must satisfy eps < {min(spectrum)} and "
                f"{max(spectrum)} < omega")

    def to_json(self):
        return {"eps": _dec(self.eps), "omega": _dec(self.omega)}


def window_from_spectrum(spectrum: Sequence[float]) -> Window:
    if not spectrum:
        raise WindowError("empty length spectrum: pass an explicit window")
    return Window(0.5 * min(spectrum), 2.0 * max(spectrum) + 1.0)


def length_spectrum(g: GFDescriptor, grid: GridSpec) -> list[float]:
    fld = difference_function(g).sample(grid)
    return cubegrid.positive_spectrum(cubegrid.detect_critical_values(fld))


def choose_window(g: GFDescriptor, grid: GridSpec, override: tuple[float, float] | None = None) -> Window:
    if override is not None:
        return Window(float(override[0]), float(override[1]))
    return window_from_spectrum(length_spectrum(g, grid))


@dataclass(frozen=True)
class GFHResult:
    ranks: GradedRanks
    raw: GradedRanks
    fiber_dim: int
    window: Window
    grid: GridSpec
    cells_in_pair: int
    cells_after_reduction: int

    def metadata(self) -> dict:
        return {"N": self.fiber_dim, "window": self.window.to_json(), "grid": self.grid.to_json(),
                "cellsInPair": self.cells_in_pair, "cellsAfterReduction": self.cells_after_reduction}


def gfh(g: GFDescriptor, grid: GridSpec, window: Window, ring: str = Z, detail: bool = False):
    """Pair homology of (delta <= omega, delta <= eps), regraded down by the fiber dimension."""
    fld = difference_function(g).sample(grid)
    res = cubegrid.relative_pair_homology(CubicalPair(fld, window.eps, window.omega), ring, detail=True)
    out = GFHResult(res.ranks.shift(-g.fiber_dim), res.ranks, g.fiber_dim, window, grid,
                    res.cells_in_pair, res.cells_after_reduction)
    return out if detail else out.ranks


# ---------------------------------------------------------------- shearing

@dataclass(frozen=True)
class ShearSpec:
    u: float
    mu: float
    Omega: float
    t_minus: float

    def __post_init__(self):
        if not self.u > 1:
            raise ChoiceViolation(f"1 < u violated: u = {self.u}")
        if not self.mu > 0:
            raise ChoiceViolation(f"mu > 0 violated: mu = {self.mu}")
        if not self.Omega > 0:
            raise ChoiceViolation(f"Omega > 0 violated: Omega = {self.Omega}")
        if not 0 < self.t_minus < 1:
            raise ChoiceViolation(f"0 < t_minus < 1 violated: t_minus = {self.t_minus}")

    def check_choices(self, spectrum: Sequence[float]):
        """Raise ChoiceViolation naming the first failing inequality."""
        if not spectrum:
            return
        lmin, lmax = min(spectrum), max(spectrum)
        bound = min(math.sqrt(1.0 + lmin), 2.0)
        if not self.u < bound:
            raise ChoiceViolation(f"u < min(sqrt(1 + lmin), 2) violated: {self.u} >= {bound:.6g}")
        if not self.mu < lmin:
            raise ChoiceViolation(f"mu < lmin violated: {self.mu} >= {lmin}")
        if not self.mu < (self.u - 1) ** 2 / 2:
            raise ChoiceViolation(
                f"mu < (u - 1)^2 / 2 violated: {self.mu} >= {(self.u - 1) ** 2 / 2:.6g}")
        if not self.Omega > lmax + lmax * lmax / 2:
            raise ChoiceViolation(
                f"lmax + lmax^2 / 2 < Omega violated: {self.Omega} <= {lmax + lmax * lmax / 2:.6g}")

    def to_json(self):
        return {"u": _dec(self.u), "mu": _dec(self.mu), "Omega": _dec(self.Omega),
                "tMinus": _dec(self.t_minus)}

    @classmethod
    def from_json(cls, data: dict) -> "ShearSpec":
        try:
            return cls(*(float(Decimal(str(data[k]))) for k in ("u", "mu", "Omega", "tMinus")))
        except (KeyError, ArithmeticError, ValueError, TypeError) as ex:
            if isinstance(ex, ChoiceViolation):
                raise
            raise DescriptorError(f"malformed shear spec: {ex}") from ex


@dataclass(frozen=True)
class Shear:
    """H(t) = 0 for t <= 1, -(t - 1)^2 / 2 for t >= u, and on (1, u)
    H'(t) = -(u - 1) s((t - 1)/(u - 1)) with s the cubic smoothstep.

    The integral of -(u - 1) s over (1, u) is -(u - 1)^2 / 2, so H is C^1 at both ends.
    """

    spec: ShearSpec

    def H(self, t):
        t = np.asarray(t, dtype=float)
        u = self.spec.u
        x = np.clip((t - 1.0) / (u - 1.0), 0.0, 1.0)
        mid = -(u - 1.0) ** 2 * (x ** 3 - x ** 4 / 2.0)
        return np.where(t >= u, -0.5 * (t - 1.0) ** 2, mid)

    def dH(self, t):
        t = np.asarray(t, dtype=float)
        u = self.spec.u
        x = np.clip((t - 1.0) / (u - 1.0), 0.0, 1.0)
        return np.where(t >= u, -(t - 1.0), -(u - 1.0) * smoothstep(x))

    def ddH(self, t):
        t = np.asarray(t, dtype=float)
        u = self.spec.u
        x = (t - 1.0) / (u - 1.0)
        inside = (t > 1.0) & (t < u)
        return np.where(t >= u, -1.0, np.where(inside, -6.0 * x * (1.0 - x), 0.0))

    def lam(self, alpha: float, t):
        t = np.asarray(t, dtype=float)
        return (alpha - self.H(t)) / t


def shear(spec: ShearSpec, spectrum: Sequence[float] | None = None) -> Shear:
    if spectrum is not None:
        spec.check_choices(spectrum)
    return Shear(spec)


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    passed: bool
    margin: float
    witness: float | None  # t where the margin is attained

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "margin": self.margin, "witness": self.witness}


@dataclass(frozen=True)
class LambdaReport:
    checks: tuple[LemmaCheck, ...]
    samples: int
    t_max: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"passed": self.passed, "samples": self.samples, "tMax": self.t_max,
                "checks": [c.to_json() for c in self.checks]}


def _escape_time(sh: Shear, lmax: float) -> float:
    """Smallest sampled t >= u with lambda_{-mu}(t) > lmax, found by doubling then bisection."""
    mu = sh.spec.mu
    lo, hi = sh.spec.u, 2.0 * sh.spec.u
    while float(sh.lam(-mu, hi)) <= lmax:
        lo, hi = hi, 2.0 * hi
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if float(sh.lam(-mu, mid)) > lmax:
            hi = mid
        else:
            lo = mid
    return hi


def verify_lambda_lemmas(spec: ShearSpec, spectrum: Sequence[float], sigma: float | None = None,
                         samples: int = 20_000) -> LambdaReport:
    if not spectrum:
        raise ValueError("lambda checks need a nonempty length spectrum")
    spec.check_choices(spectrum)
    lmin, lmax = min(spectrum), max(spectrum)
    u, mu = spec.u, spec.mu
    if sigma is not None and not (u * u - 1 < sigma < lmin):
        raise ChoiceViolation(f"u^2 - 1 < sigma < lmin violated: sigma = {sigma}, "
                              f"bounds ({u * u - 1:.6g}, {lmin})")
    sh = Shear(spec)
    t_max = 1.05 * _escape_time(sh, lmax)
    ts = np.linspace(t_max / samples, t_max, samples)
    ts = np.union1d(ts, [1.0, u])
    checks = []

    def record(name, margins, where):
        i = int(np.argmin(margins))
        checks.append(LemmaCheck(name, bool(margins[i] > 0), float(margins[i]),
                                 None if where is None else float(where[i])))

    record("lambda_Omega(t) > lmax", sh.lam(spec.Omega, ts) - lmax, ts)
    l1, lu = float(sh.lam(-mu, 1.0)), float(sh.lam(-mu, u))
    record("-lmin < lambda_{-mu}(1)", np.array([l1 + lmin]), None)
    record("lambda_{-mu}(1) < 0", np.array([-l1]), None)
    record("0 < lambda_{-mu}(u)", np.array([lu]), None)
    record("lambda_{-mu}(u) < lmin", np.array([lmin - lu]), None)
    record("H' < 0 on (1, u]", -sh.dH(ts[(ts > 1) & (ts <= u)]), ts[(ts > 1) & (ts <= u)])
    inner = ts[(ts > 1) & (ts < u)]
    record("H'' < 0 on (1, u)", -sh.ddH(inner), inner)
    if sigma is not None:
        seg = ts[(ts >= 1) & (ts <= u)]
        vals = sh.lam(sigma, seg)
        record("lambda_sigma decreasing on [1, u]", vals[:-1] - vals[1:], seg[1:])
        record("lambda_sigma > 0 on [1, u]", vals, seg)
        record("lambda_sigma < lmin on [1, u]", lmin - vals, seg)
    return LambdaReport(tuple(checks), len(ts), t_max)


# ---------------------------------------------------------------- fillings

@dataclass(frozen=True)
class FillingDescriptor:
    """F(t, eta) = t * (A(eta) + q(eta) + b(t) * core-part(eta)), b a smoothstep from 0 at
    t_minus to 1 at t = 1. Only point bases are supported."""

    base: GFDescriptor
    t_minus: float = 0.5

    def __post_init__(self):
        if self.base.base_dim != 0:
            raise DescriptorError("fillings are only supported over a point base")
        if not 0 < self.t_minus < 1:
            raise DescriptorError("t_minus must lie in (0, 1)")

    def profile(self, t):
        return smoothstep((np.asarray(t, dtype=float) - self.t_minus) / (1.0 - self.t_minus))

    def __call__(self, t, *eta):
        g = self.base
        return t * (g.linear_part(eta) + g.quadratic_part(eta) + self.profile(t) * g.core_part(eta))

    def to_json(self):
        return {"base": self.base.to_json(), "tMinus": _dec(self.t_minus)}

    @classmethod
    def from_json(cls, data: dict) -> "FillingDescriptor":
        try:
            return cls(GFDescriptor.from_json(data["base"]), float(Decimal(str(data.get("tMinus", "0.5")))))
        except (KeyError, ArithmeticError, TypeError) as ex:
            raise DescriptorError(f"malformed filling descriptor: {ex}") from ex


@dataclass(frozen=True)
class ShearedDifference:
    """Delta(t, eta, eta~) = F(t, eta~) + H(t) - F(t, eta)."""

    filling: FillingDescriptor
    shear: Shear

    @property
    def nvars(self) -> int:
        return 1 + 2 * self.filling.base.fiber_dim

    def __call__(self, t, *etas):
        n = self.filling.base.fiber_dim
        return self.filling(t, *etas[n:]) + self.shear.H(t) - self.filling(t, *etas[:n])

    def sample(self, grid: GridSpec) -> SampledField:
        if grid.dim != self.nvars:
            raise ValueError(f"grid has dimension {grid.dim}, field needs {self.nvars}")
        return SampledField.from_function(grid, self)


def sheared_difference(fd: FillingDescriptor, spec: ShearSpec) -> ShearedDifference:
    if not math.isclose(fd.t_minus, spec.t_minus):
        raise DescriptorError("filling and shear spec disagree on t_minus")
    return ShearedDifference(fd, Shear(spec))


def reeb_critical_point(length: float) -> tuple[float, float]:
    """(t, value) of the critical point of Delta created by a chord of the given length."""
    return length + 1.0, length + length * length / 2.0


def t_axis(spec: ShearSpec, spectrum: Sequence[float], count: int, lo: float | None = None) -> Axis:
    """A t-axis from below t_minus to past the escape time, with u landing on a sample."""
    lo = spec.t_minus / 2.0 if lo is None else lo
    if not 0 < lo < spec.t_minus:
        raise ValueError("the t-axis must start inside (0, t_minus)")
    lmax = max(spectrum) if spectrum else 0.0
    need = _escape_time(Shear(spec), lmax) if spectrum else spec.u + 1.0
    # k steps from lo to u; take the finest spacing that still reaches past the escape time
    for k in range(count - 2, 0, -1):
        h = (spec.u - lo) / k
        if lo + (count - 1) * h > need:
            return Axis(lo, lo + (count - 1) * h, count)
    raise ValueError(f"{count} t-samples cannot reach t = {need:.4g} with u on the grid")


@dataclass(frozen=True)
class SeidelReport:
    W: GradedRanks
    A: GradedRanks
    B: GradedRanks
    C: GradedRanks
    grid: GridSpec
    u_index: int

    def to_json(self):
        return {k: getattr(self, k).to_json() for k in "WABC"} | {"grid": self.grid.to_json()}


def _slab(fld: SampledField, lo: int, hi: int) -> SampledField:
    a = fld.grid.axes[0]
    h = a.step
    axis = Axis(a.lo + lo * h, a.lo + (hi - 1) * h, hi - lo) if hi - lo >= 2 else None
    if axis is None:
        raise ValueError("slab needs at least two t-samples")
    return SampledField(GridSpec((axis,) + fld.grid.axes[1:], fld.grid.budget), fld.values[lo:hi])


def _slice_at(fld: SampledField, i: int) -> SampledField:
    return SampledField(GridSpec(fld.grid.axes[1:], fld.grid.budget), fld.values[i])


def seidel_decomposition(fd: FillingDescriptor, spec: ShearSpec, grid: GridSpec,
                         spectrum: Sequence[float] | None = None, ring: str = Z) -> SeidelReport:
    """Pair homology of (Delta <= Omega, Delta <= -mu) over t = u, t <= u, t >= u and all t.

    The first grid axis is t and must contain u as a sample.
    """
    if spectrum is not None:
        spec.check_choices(spectrum)
    ta = grid.axes[0]
    k = (spec.u - ta.lo) / ta.step
    ui = int(round(k))
    if not (0 < ui < ta.count - 1 and math.isclose(ta.lo + ui * ta.step, spec.u, rel_tol=0, abs_tol=1e-9)):
        raise ValueError(f"t-axis must contain u = {spec.u} as an interior sample")
    if not ta.lo < spec.t_minus:
        raise ValueError("t-axis must start below t_minus")
    fld = sheared_difference(fd, spec).sample(grid)
    lo, hi = -spec.mu, spec.Omega

    def pair(f):
        if not np.any((f.values > lo) & (f.values <= hi)):
            return GradedRanks({})
        return cubegrid.relative_pair_homology(CubicalPair(f, lo, hi), ring)

    W = pair(_slice_at(fld, ui))
    A = pair(_slab(fld, 0, ui + 1))
    B = pair(_slab(fld, ui, ta.count))
    C = pair(fld)
    return SeidelReport(W, A, B, C, grid, ui)


# ---------------------------------------------------------------- fixtures

def cubic_family(blend: float = DEFAULT_BLEND) -> GFDescriptor:
    """eta^3 - 3 eta inside |eta| <= 2(1 - blend), blended to the tail eta by |eta| = 2."""
    return GFDescriptor(0, 1, (Monomial(1.0, (3,)), Monomial(-4.0, (1,))), ((-2.0, 2.0),), (1.0,), blend)


def linear_family() -> GFDescriptor:
    return GFDescriptor(0, 1, (), ((-2.0, 2.0),), (1.0,))


def bumped(g: GFDescriptor, amplitude: float) -> GFDescriptor:
    """Add amplitude * (1 - (y/h)^2)^2 in the first fiber variable, h the support half-width."""
    i = g.base_dim
    lo, hi = g.support[i]
    h = (hi - lo) / 2.0
    c = (lo + hi) / 2.0
    if c != 0.0:
        raise DescriptorError("bump assumes a support interval centered at 0")

    def mono(coef, e):
        ex = [0] * g.nvars
        ex[i] = e
        return Monomial(amplitude * coef, tuple(ex))

    extra = (mono(1.0, 0), mono(-2.0 / h ** 2, 2), mono(1.0 / h ** 4, 4))
    return replace(g, core=g.core + extra)
