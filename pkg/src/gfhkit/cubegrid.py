"""Cubical sublevel-set homology on rectilinear grids.

A scalar field sampled on an n_1 x ... x n_d grid is turned into the full
cubical complex of the box. Cells are addressed on the doubled grid of shape
(2 n_1 - 1, ..., 2 n_d - 1): a coordinate is even when the cell is a vertex
along that axis and odd when it spans an edge. A cell belongs to the sublevel
set at level t when every one of its vertices has value <= t.

Pair homology H_*(X_b, X_a) is computed on the quotient complex of cells that
enter between the two levels. Before any matrix work the quotient is shrunk,
first by coreductions swept through the lower stars of the vertices in value
order, then by leftover elementary collapses and coreductions; all remove a pair joined by a
coefficient of +-1 with no other incidence on one side, so they are exact over
Z and leave the remaining boundary maps unchanged.
"""

from __future__ import annotations

import json
import math
import struct
import warnings
from dataclasses import dataclass, field
from functools import reduce
from operator import mul
from typing import Callable, Sequence

import numpy as np
from numba import njit

from .homlin import Z, Z2, ChainComplex, GradedRanks, SparseMatrix, homology

DEFAULT_BUDGET = 250_000_000

_BINARY_MAGIC = b"GFHFIELD"


class BudgetExceeded(RuntimeError):
    pass


class ThresholdError(ValueError):
    pass


class ThresholdWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Axis:
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise ValueError(f"axis needs finite lo < hi, got [{self.lo}, {self.hi}]")
        if self.count < 2:
            raise ValueError("an axis needs at least two samples")

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.count - 1)

    def coords(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class GridSpec:
    axes: tuple[Axis, ...]
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(
            a if isinstance(a, Axis) else Axis(float(a[0]), float(a[1]), int(a[2])) for a in self.axes))
        if not self.axes:
            raise ValueError("grid needs at least one axis")

    @classmethod
    def cube(cls, dim: int, lo: float, hi: float, count: int, budget: int = DEFAULT_BUDGET):
        return cls(tuple(Axis(lo, hi, count) for _ in range(dim)), budget)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.count for a in self.axes)

    @property
    def cell_shape(self) -> tuple[int, ...]:
        return tuple(2 * a.count - 1 for a in self.axes)

    @property
    def vertex_count(self) -> int:
        return reduce(mul, self.shape, 1)

    @property
    def cell_count(self) -> int:
        return reduce(mul, self.cell_shape, 1)

    def check_budget(self):
        if self.cell_count > self.budget:
            raise BudgetExceeded(
                f"grid has {self.cell_count} cells, budget is {self.budget}")

    def mesh(self) -> list[np.ndarray]:
        """Broadcastable coordinate arrays, one per axis."""
        return np.meshgrid(*(a.coords() for a in self.axes), indexing="ij", sparse=True)

    def refined(self) -> "GridSpec":
        """Same box with the spacing halved on every axis."""
        return GridSpec(tuple(Axis(a.lo, a.hi, 2 * a.count - 1) for a in self.axes), self.budget)

    def to_json(self) -> dict:
        return {"axes": [[a.lo, a.hi, a.count] for a in self.axes], "budget": self.budget}


@dataclass(frozen=True, eq=False)
class SampledField:
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if vals.shape != self.grid.shape:
            raise ValueError(f"value array has shape {vals.shape}, grid is {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid: GridSpec, fn: Callable[..., np.ndarray]) -> "SampledField":
        grid.check_budget()
        vals = np.broadcast_to(fn(*grid.mesh()), grid.shape)
        return cls(grid, np.array(vals, dtype=np.float64))

    # -- snapshots

    def to_bytes(self) -> bytes:
        head = _BINARY_MAGIC + struct.pack("<q", self.grid.dim)
        for a in self.grid.axes:
            head += struct.pack("<ddq", a.lo, a.hi, a.count)
        return head + self.values.astype("<f8").tobytes(order="C")

    @classmethod
    def from_bytes(cls, data: bytes) -> "SampledField":
        if not data.startswith(_BINARY_MAGIC):
            raise ValueError("not a field snapshot")
        off = len(_BINARY_MAGIC)
        (dim,) = struct.unpack_from("<q", data, off)
        off += 8
        axes = []
        for _ in range(dim):
            lo, hi, n = struct.unpack_from("<ddq", data, off)
            off += 24
            axes.append(Axis(lo, hi, n))
        grid = GridSpec(tuple(axes))
        vals = np.frombuffer(data, dtype="<f8", offset=off).reshape(grid.shape)
        return cls(grid, vals)

    def to_json(self) -> dict:
        return {"grid": self.grid.to_json(), "values": self.values.ravel().tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "SampledField":
        grid = GridSpec(tuple(Axis(*a) for a in data["grid"]["axes"]),
                        int(data["grid"].get("budget", DEFAULT_BUDGET)))
        return cls(grid, np.asarray(data["values"], dtype=np.float64).reshape(grid.shape))


@dataclass(frozen=True)
class CubicalPair:
    field: SampledField
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ThresholdError(f"need lower < upper, got ({self.lower}, {self.upper})")


# ------------------------------------------------------------ cell categories

def cell_categories(fld: SampledField, lower: float, upper: float | None = None) -> np.ndarray:
    """int8 array on the doubled grid: 0 in X_lower, 1 in X_upper only, 2 outside.

    With ``upper`` omitted the result is 0 inside X_lower and 2 outside.
    """
    fld.grid.check_budget()
    v = fld.values
    vcat = np.where(v <= lower, 0, 2).astype(np.int8)
    if upper is not None:
        vcat[(v > lower) & (v <= upper)] = 1
    cat = np.zeros(fld.grid.cell_shape, dtype=np.int8)
    cat[tuple(slice(None, None, 2) for _ in range(fld.grid.dim))] = vcat
    d = fld.grid.dim
    for j in range(d):
        odd = [slice(None)] * d
        left = [slice(None)] * d
        right = [slice(None)] * d
        odd[j], left[j], right[j] = slice(1, None, 2), slice(0, -1, 2), slice(2, None, 2)
        np.maximum(cat[tuple(left)], cat[tuple(right)], out=cat[tuple(odd)])
    return cat


# ------------------------------------------------------------ numba kernel

@njit(cache=True)
def _push(stack, sp, x):
    if sp == stack.shape[0]:
        bigger = np.empty(stack.shape[0] * 2, np.int64)
        bigger[:sp] = stack[:sp]
        stack = bigger
    stack[sp] = x
    return stack, sp + 1


@njit(cache=True)
def _reduce_pairs(state, shape, strides):
    """Collapse/coreduce the cells with state 1 in place; removed cells get state 3.

    Returns the number of removed pairs.
    """
    d = shape.shape[0]
    n = state.shape[0]
    stack = np.empty(4096, np.int64)
    coord = np.empty(d, np.int64)
    removed = 0
    for start in range(n):
        if state[start] != 1:
            continue
        sp = 0
        stack, sp = _push(stack, sp, start)
        while sp > 0:
            sp -= 1
            c = stack[sp]
            if state[c] != 1:
                continue
            rem = c
            for j in range(d):
                coord[j] = rem // strides[j]
                rem -= coord[j] * strides[j]
            partner = -1
            nface = 0
            face = -1
            for j in range(d):
                if coord[j] & 1:
                    for s in (-1, 1):
                        x = c + s * strides[j]
                        if state[x] == 1:
                            nface += 1
                            face = x
            if nface == 1:
                partner = face
            else:
                ncof = 0
                cof = -1
                for j in range(d):
                    if not coord[j] & 1:
                        for s in (-1, 1):
                            cj = coord[j] + s
                            if cj < 0 or cj >= shape[j]:
                                continue
                            x = c + s * strides[j]
                            if state[x] == 1:
                                ncof += 1
                                cof = x
                if ncof == 1:
                    partner = cof
            if partner < 0:
                continue
            state[c] = 3
            state[partner] = 3
            removed += 1
            for y in (c, partner):
                rem = y
                for j in range(d):
                    coord[j] = rem // strides[j]
                    rem -= coord[j] * strides[j]
                for j in range(d):
                    for s in (-1, 1):
                        cj = coord[j] + s
                        if cj < 0 or cj >= shape[j]:
                            continue
                        x = y + s * strides[j]
                        if state[x] == 1:
                            stack, sp = _push(stack, sp, x)
    return removed


@njit(cache=True)
def _lower_star_sweep(vals, vshape, state, cshape, order):
    """Coreduce the pair complex vertex by vertex in increasing (value, index) order.

    Inside the lower star of each vertex, cells are visited by dimension; a cell
    with exactly one alive face is removed together with that face.
    """
    d = vshape.shape[0]
    vstr = np.empty(d, np.int64)
    cstr = np.empty(d, np.int64)
    vstr[d - 1] = 1
    cstr[d - 1] = 1
    for j in range(d - 2, -1, -1):
        vstr[j] = vstr[j + 1] * vshape[j + 1]
        cstr[j] = cstr[j + 1] * cshape[j + 1]
    npat = 1
    for j in range(d):
        npat *= 3
    # pattern p <-> offsets o_j in {-1,0,1}, digit (o_j + 1) in base 3
    offs = np.empty((npat, d), np.int64)
    nnz = np.zeros(npat, np.int64)
    for p in range(npat):
        q = p
        for j in range(d - 1, -1, -1):
            offs[p, j] = q % 3 - 1
            q //= 3
            if offs[p, j] != 0:
                nnz[p] += 1
    pow3 = np.empty(d, np.int64)
    pow3[d - 1] = 1
    for j in range(d - 2, -1, -1):
        pow3[j] = pow3[j + 1] * 3
    by_dim = np.argsort(nnz, kind="mergesort")
    instar = np.zeros(npat, np.bool_)
    vc = np.empty(d, np.int64)
    removed = 0
    for v in order:
        val = vals[v]
        rem = v
        for j in range(d):
            vc[j] = rem // vstr[j]
            rem -= vc[j] * vstr[j]
        cbase = 0
        for j in range(d):
            cbase += 2 * vc[j] * cstr[j]
        for t in range(npat):
            p = by_dim[t]
            if nnz[p] == 0:
                instar[p] = True
                continue
            ok = True
            w = v
            for j in range(d):
                o = offs[p, j]
                if o != 0:
                    nj = vc[j] + o
                    if nj < 0 or nj >= vshape[j]:
                        ok = False
                        break
                    w += o * vstr[j]
            if ok:
                wv = vals[w]
                if wv > val or (wv == val and w > v):
                    ok = False
            if ok:
                # every proper sub-pattern (one offset zeroed) must be in the star too
                for j in range(d):
                    if offs[p, j] != 0 and not instar[p - (offs[p, j]) * pow3[j]]:
                        ok = False
                        break
            instar[p] = ok
        for t in range(npat):
            p = by_dim[t]
            if not instar[p]:
                continue
            c = cbase
            for j in range(d):
                c += offs[p, j] * cstr[j]
            if state[c] != 1:
                continue
            nface = 0
            face = -1
            for j in range(d):
                if offs[p, j] != 0:
                    for s in (-1, 1):
                        x = c + s * cstr[j]
                        if state[x] == 1:
                            nface += 1
                            face = x
            if nface == 1:
                state[c] = 3
                state[face] = 3
                removed += 1
    return removed


def _chain_complex_on(cells: np.ndarray, shape: tuple[int, ...], alive: np.ndarray,
                      ring: str) -> ChainComplex:
    """Cubical boundary restricted to ``cells`` (flat indices with alive[idx] true)."""
    d = len(shape)
    strides = np.array([reduce(mul, shape[j + 1:], 1) for j in range(d)], dtype=np.int64)
    coords = np.array(np.unravel_index(cells, shape)).T if len(cells) else np.zeros((0, d), np.int64)
    dims_of = (coords & 1).sum(axis=1) if len(cells) else np.zeros(0, np.int64)
    index: dict[int, int] = {}
    counts: dict[int, int] = {}
    for c, k in zip(cells.tolist(), dims_of.tolist()):
        index[c] = counts.get(k, 0)
        counts[k] = index[c] + 1
    entries: dict[int, dict[tuple[int, int], int]] = {}
    for c, co, k in zip(cells.tolist(), coords, dims_of.tolist()):
        if k == 0:
            continue
        ent = entries.setdefault(k, {})
        i = 0
        for j in range(d):
            if co[j] & 1:
                sign = 1 if i % 2 == 0 else -1
                i += 1
                for s, sg in ((1, sign), (-1, -sign)):
                    x = c + s * int(strides[j])
                    if alive[x]:
                        ent[(index[x], index[c])] = sg
    bd = {k: SparseMatrix(counts.get(k - 1, 0), counts[k], ent) for k, ent in entries.items() if ent}
    return ChainComplex(counts, bd, ring)


@dataclass(frozen=True)
class PairReduction:
    ranks: GradedRanks
    cells_in_pair: int
    cells_after_reduction: int


def _pair_homology_from_categories(cat: np.ndarray, ring: str, fld: SampledField | None = None,
                                   lower: float = -math.inf, upper: float = math.inf) -> PairReduction:
    shape = cat.shape
    flat = cat.reshape(-1)
    state = (flat == 1).astype(np.int8)
    total = int(state.sum())
    strides = np.array([reduce(mul, shape[j + 1:], 1) for j in range(len(shape))], dtype=np.int64)
    if total and fld is not None:
        vals = fld.values.reshape(-1)
        live = np.flatnonzero((vals > lower) & (vals <= upper))
        order = live[np.argsort(vals[live], kind="stable")]
        _lower_star_sweep(vals, np.array(fld.grid.shape, dtype=np.int64), state,
                          np.array(shape, dtype=np.int64), order)
    if total:
        _reduce_pairs(state, np.array(shape, dtype=np.int64), strides)
    alive = state == 1
    cells = np.flatnonzero(alive)
    cx = _chain_complex_on(cells, shape, alive, ring)
    return PairReduction(homology(cx, ring), total, len(cells))


def relative_pair_homology(pair: CubicalPair, ring: str = Z, detail: bool = False):
    """H_*(X_upper, X_lower) of the lower-star filtration."""
    v = pair.field.values
    if not np.any((v > pair.lower) & (v <= pair.upper)):
        raise ThresholdError(
            f"no sample value lies in ({pair.lower}, {pair.upper}]; the thresholds straddle no cells")
    cat = cell_categories(pair.field, pair.lower, pair.upper)
    res = _pair_homology_from_categories(cat, ring, pair.field, pair.lower, pair.upper)
    return res if detail else res.ranks


def sublevel_homology(fld: SampledField, t: float, ring: str = Z) -> GradedRanks:
    cat = cell_categories(fld, -math.inf, t)
    # cells in X_t have category <= 1 here; shift so they are the "pair" cells
    return _pair_homology_from_categories(np.where(cat == 1, 1, 2).astype(np.int8), ring,
                                          fld, -math.inf, t).ranks


@dataclass(frozen=True, eq=False)
class SublevelComplex:
    """Explicit cubical complex of a sublevel set, for small grids."""

    complex: ChainComplex
    cells: dict[int, np.ndarray]  # degree -> flat doubled-grid indices
    grid: GridSpec
    level: float

    def marker(self, t: float, fld: SampledField) -> dict[int, list[int]]:
        """Indices (per degree) of the cells that already lie in the sublevel set at t <= level."""
        if t > self.level:
            raise ValueError("marker level above the complex level")
        cat = cell_categories(fld, t).reshape(-1)
        return {k: [i for i, c in enumerate(cs.tolist()) if cat[c] == 0] for k, cs in self.cells.items()}


def build_sublevel_complex(fld: SampledField, t: float, ring: str = Z) -> SublevelComplex:
    if not math.isfinite(t):
        raise ValueError("level must be finite")
    cat = cell_categories(fld, t).reshape(-1)
    alive = cat == 0
    cells = np.flatnonzero(alive)
    cx = _chain_complex_on(cells, fld.grid.cell_shape, alive, ring)
    coords_dim = (np.array(np.unravel_index(cells, fld.grid.cell_shape)) & 1).sum(axis=0) \
        if len(cells) else np.zeros(0, np.int64)
    by_dim = {k: cells[coords_dim == k] for k in sorted(set(coords_dim.tolist()))}
    return SublevelComplex(cx, by_dim, fld.grid, t)


# ------------------------------------------------------------ critical values

@dataclass(frozen=True)
class CriticalValue:
    value: float
    kind: str  # "positive" | "negative" | "zero"
    cells: int

    def to_json(self):
        return {"value": self.value, "kind": self.kind, "cells": self.cells}


def _cube_reduce(a: np.ndarray, op) -> np.ndarray:
    """Reduce ``a`` over the 2^d corners of every elementary cube."""
    out = a
    for j in range(a.ndim):
        lo = [slice(None)] * a.ndim
        hi = [slice(None)] * a.ndim
        lo[j], hi[j] = slice(0, -1), slice(1, None)
        out = op(out[tuple(lo)], out[tuple(hi)])
    return out


def critical_cubes(fld: SampledField) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Elementary cubes where every discrete gradient component takes both signs
    (or vanishes) on the cube's corners.

    Returns (center value, value spread, flattest-corner value, flattest-corner
    squared gradient) per candidate cube.
    """
    v = fld.values
    steps = [a.step for a in fld.grid.axes]
    mask = None
    g2 = np.zeros_like(v)
    for j in range(v.ndim):
        g = np.gradient(v, steps[j], axis=j, edge_order=1)
        m = (_cube_reduce(g, np.minimum) <= 0) & (_cube_reduce(g, np.maximum) >= 0)
        mask = m if mask is None else mask & m
        g2 += g * g
        del g
    # drop cubes touching the box boundary: one-sided differences there are not critical data
    inner = tuple(slice(1, -1) for _ in range(v.ndim))
    core = np.zeros_like(mask)
    core[inner] = mask[inner]
    idx = np.nonzero(core)
    best_g = np.full(len(idx[0]), np.inf)
    best_v = np.zeros(len(idx[0]))
    lo = np.full(len(idx[0]), np.inf)
    hi = np.full(len(idx[0]), -np.inf)
    for corner in np.ndindex(*(2,) * v.ndim):
        at = tuple(i + c for i, c in zip(idx, corner))
        cv, cg = v[at], g2[at]
        better = cg < best_g
        best_g = np.where(better, cg, best_g)
        best_v = np.where(better, cv, best_v)
        lo = np.minimum(lo, cv)
        hi = np.maximum(hi, cv)
    return (lo + hi) / 2.0, hi - lo, best_v, best_g


def detect_critical_values(fld: SampledField, tolerance: float | None = None) -> list[CriticalValue]:
    """Approximate critical values, clustered, with sign classification.

    Cube values whose gap is at most ``tolerance`` join one cluster; by default
    the tolerance is twice the largest value spread across a single candidate cube.
    A cluster reports the sample value at its flattest corner, so a critical
    point that sits on a grid vertex comes back exactly.
    """
    vals, spread, corner_v, corner_g = critical_cubes(fld)
    if vals.size == 0:
        return []
    tol = 2.0 * float(spread.max()) if tolerance is None else tolerance
    tol = max(tol, 1e-12)
    order = np.argsort(vals, kind="stable")
    clusters: list[list[int]] = [[int(order[0])]]
    for i in order[1:]:
        if vals[i] - vals[clusters[-1][-1]] <= tol:
            clusters[-1].append(int(i))
        else:
            clusters.append([int(i)])
    out = []
    for c in clusters:
        rep = c[int(np.argmin(corner_g[c]))]
        value = float(corner_v[rep])
        if abs(float(np.mean(vals[c]))) <= tol:
            kind = "zero"
        else:
            kind = "positive" if value > 0 else "negative"
        out.append(CriticalValue(value, kind, len(c)))
    return out


def positive_spectrum(crit: Sequence[CriticalValue]) -> list[float]:
    return [c.value for c in crit if c.kind == "positive"]


def threshold_warnings(pair: CubicalPair, crit: Sequence[CriticalValue]) -> list[str]:
    """Complain when a threshold sits within one cell oscillation of a critical value."""
    v = pair.field.values
    osc = max(float(np.abs(np.diff(v, axis=j)).max()) for j in range(v.ndim))
    msgs = []
    for name, t in (("lower", pair.lower), ("upper", pair.upper)):
        for c in crit:
            if abs(c.value - t) <= osc:
                msgs.append(f"{name} threshold {t} is within {osc:.3g} of critical value {c.value:.4g}")
    for m in msgs:
        warnings.warn(m, ThresholdWarning, stacklevel=2)
    return msgs
