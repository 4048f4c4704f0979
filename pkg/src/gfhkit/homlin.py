"""Exact homological linear algebra over Z and Z/2.

Everything here works with Python integers; no floating point is involved.
Chain complexes are stored as one sparse boundary matrix per degree, with
``boundary[k]`` mapping C_k -> C_{k-1} (rows index (k-1)-cells, columns index
k-cells).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping


Z = "z"
Z2 = "z2"
RINGS = (Z, Z2)


class ChainComplexError(ValueError):
    pass


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in dict(self.entries).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = int(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_triples(cls, rows, cols, triples):
        acc: dict[tuple[int, int], int] = {}
        for r, c, v in triples:
            if (r, c) in acc:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            acc[(r, c)] = v
        return cls(rows, cols, acc)

    @classmethod
    def from_dense(cls, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, row in enumerate(rows_list)
                                for j, v in enumerate(row) if v})

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, {})

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def triples(self):
        return sorted((r, c, v) for (r, c), v in self.entries.items())

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: Counter = Counter()
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] += v * w
        return SparseMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def permuted(self, row_perm, col_perm) -> "SparseMatrix":
        """Return P M Q where new row row_perm[r] holds old row r."""
        return SparseMatrix(self.rows, self.cols,
                            {(row_perm[r], col_perm[c]): v for (r, c), v in self.entries.items()})


def factorint(n: int) -> dict[int, int]:
    from sympy import factorint as _factorint  # heavy import, only needed for torsion
    return _factorint(n)


def _prime_powers(n: int) -> list[int]:
    return [p ** e for p, e in factorint(abs(n)).items()]


@dataclass(frozen=True)
class GradedRanks:
    """degree -> (free rank, torsion as sorted prime powers)."""

    groups: Mapping[int, tuple[int, tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, (free, tors) in dict(self.groups).items():
            pp: list[int] = []
            for t in tors:
                if t < 0:
                    t = -t
                if t > 1:
                    pp.extend(_prime_powers(t))
            if free < 0:
                raise ValueError("negative rank")
            if free or pp:
                clean[int(k)] = (int(free), tuple(sorted(pp)))
        object.__setattr__(self, "groups", dict(sorted(clean.items())))

    @classmethod
    def from_ranks(cls, ranks: Mapping[int, int]):
        return cls({k: (r, ()) for k, r in ranks.items()})

    def free(self, k: int) -> int:
        return self.groups.get(k, (0, ()))[0]

    def torsion(self, k: int) -> tuple[int, ...]:
        return self.groups.get(k, (0, ()))[1]

    def degrees(self) -> list[int]:
        return list(self.groups)

    def nonzero_degrees(self) -> set[int]:
        return set(self.groups)

    def is_zero(self) -> bool:
        return not self.groups

    def shift(self, n: int) -> "GradedRanks":
        """Raise every degree by n."""
        return GradedRanks({k + n: v for k, v in self.groups.items()})

    def __add__(self, other: "GradedRanks") -> "GradedRanks":
        out: dict[int, tuple[int, tuple[int, ...]]] = {}
        for k in set(self.groups) | set(other.groups):
            f1, t1 = self.groups.get(k, (0, ()))
            f2, t2 = other.groups.get(k, (0, ()))
            out[k] = (f1 + f2, t1 + t2)
        return GradedRanks(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k % 2) * f for k, (f, _) in self.groups.items())

    def ranks(self) -> dict[int, int]:
        return {k: f for k, (f, _) in self.groups.items()}

    def mod2_ranks(self) -> dict[int, int]:
        """F2 dimensions via universal coefficients (for a Z-computed profile)."""
        out: Counter = Counter()
        for k, (f, tors) in self.groups.items():
            twos = sum(1 for t in tors if t % 2 == 0)
            out[k] += f + twos
            out[k + 1] += twos
        return {k: v for k, v in sorted(out.items()) if v}

    def to_json(self) -> dict:
        out = {}
        for k, (f, tors) in self.groups.items():
            entry: dict = {"free": f}
            if tors:
                entry["torsion"] = list(tors)
            out[str(k)] = entry
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedRanks":
        groups = {}
        for k, v in data.items():
            if isinstance(v, int):
                groups[int(k)] = (v, ())
            else:
                groups[int(k)] = (int(v.get("free", 0)), tuple(v.get("torsion", ())))
        return cls(groups)

    def __repr__(self):
        parts = []
        for k, (f, tors) in self.groups.items():
            parts.append(f"{k}: ({f}, {list(tors)})")
        return "GradedRanks({" + ", ".join(parts) + "})"


# ---------------------------------------------------------------- Smith form

def _diagonalize(entries: dict[tuple[int, int], int]) -> list[int]:
    """Reduce an integer matrix (dict form, mutated) to diagonal pivots.

    Pivot rule: smallest magnitude, ties broken by (row, col).
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for (r, c), v in entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, {})[r] = v

    def setv(r, c, v):
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, {})[r] = v
        else:
            rows[r].pop(c, None)
            cols[c].pop(r, None)
            if not rows[r]:
                del rows[r]
            if not cols[c]:
                del cols[c]

    def add_row(dst, src, k):
        # row dst += k * row src
        for c, v in list(rows.get(src, {}).items()):
            setv(dst, c, rows.get(dst, {}).get(c, 0) + k * v)

    def add_col(dst, src, k):
        for r, v in list(cols.get(src, {}).items()):
            setv(r, dst, cols.get(dst, {}).get(r, 0) + k * v)

    pivots: list[int] = []
    while rows:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), r, c)
                if best is None or key < best:
                    best = key
        _, pr, pc = best
        p = rows[pr][pc]
        for r, v in sorted(cols[pc].items()):
            if r != pr:
                add_row(r, pr, -(v // p))
        for c, v in sorted(rows[pr].items()):
            if c != pc:
                add_col(c, pc, -(v // p))
        # leftover remainders are smaller than |p|; the next global pick takes them
        if len(rows[pr]) == 1 and len(cols[pc]) == 1:
            pivots.append(abs(p))
            setv(pr, pc, 0)
    return pivots


def _normalize_factors(diag: Iterable[int]) -> list[int]:
    """Turn any list of nonzero diagonal entries into invariant factors d1 | d2 | ..."""
    diag = [abs(d) for d in diag if d]
    r = len(diag)
    by_prime: dict[int, list[int]] = {}
    for d in diag:
        for p, e in factorint(d).items():
            by_prime.setdefault(p, []).append(e)
    factors = [1] * r
    for p, exps in by_prime.items():
        exps = sorted(exps)
        # largest exponents go to the last factors
        for i, e in enumerate(reversed(exps)):
            factors[r - 1 - i] *= p ** e
    return factors


def smith_normal_form(m: SparseMatrix) -> tuple[list[int], int]:
    """Invariant factors d1 | d2 | ... | dr and the rank r of an integer matrix."""
    factors = _normalize_factors(_diagonalize(dict(m.entries)))
    return factors, len(factors)


def rank_mod2(m: SparseMatrix) -> int:
    """Rank over F2 by elimination on bit-packed rows."""
    rows: dict[int, int] = {}
    for (r, c), v in m.entries.items():
        if v & 1:
            rows[r] = rows.get(r, 0) ^ (1 << c)
    basis: dict[int, int] = {}  # leading bit -> row
    for vec in rows.values():
        while vec:
            lead = vec.bit_length() - 1
            if lead in basis:
                vec ^= basis[lead]
            else:
                basis[lead] = vec
                break
    return len(basis)


# ------------------------------------------------------------- chain complexes

@dataclass(frozen=True)
class ChainComplex:
    """Finite chain complex; ``dims[k]`` cells in degree k, ``boundary[k]``: C_k -> C_{k-1}."""

    dims: Mapping[int, int]
    boundary: Mapping[int, SparseMatrix] = field(default_factory=dict)
    ring: str = Z

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        dims = {int(k): int(v) for k, v in self.dims.items() if v}
        bd = {}
        for k, m in self.boundary.items():
            if m.entries:
                if m.cols != dims.get(k, 0) or m.rows != dims.get(k - 1, 0):
                    raise ChainComplexError(
                        f"boundary in degree {k} has shape {m.rows}x{m.cols}, "
                        f"expected {dims.get(k - 1, 0)}x{dims.get(k, 0)}")
                if self.ring == Z2:
                    m = SparseMatrix(m.rows, m.cols, {rc: v & 1 for rc, v in m.entries.items()})
                bd[int(k)] = m
        object.__setattr__(self, "dims", dict(sorted(dims.items())))
        object.__setattr__(self, "boundary", bd)

    def degree_range(self) -> tuple[int, int]:
        if not self.dims:
            return (0, -1)
        return min(self.dims), max(self.dims)

    def d(self, k: int) -> SparseMatrix:
        m = self.boundary.get(k)
        if m is None:
            return SparseMatrix.zeros(self.dims.get(k - 1, 0), self.dims.get(k, 0))
        return m

    def square_defects(self) -> list[int]:
        """Degrees k where d_{k-1} d_k is nonzero (in the complex's ring)."""
        bad = []
        for k in self.boundary:
            if k - 1 not in self.boundary:
                continue
            prod = self.d(k - 1).matmul(self.d(k))
            vals = prod.entries.values()
            if self.ring == Z2:
                if any(v & 1 for v in vals):
                    bad.append(k)
            elif vals:
                bad.append(k)
        return bad

    def check(self):
        bad = self.square_defects()
        if bad:
            raise ChainComplexError(f"boundary squared is nonzero in degrees {bad}")

    def with_ring(self, ring: str) -> "ChainComplex":
        return ChainComplex(self.dims, self.boundary, ring)

    def quotient(self, sub: Mapping[int, Iterable[int]]) -> "ChainComplex":
        """The quotient complex self / sub, where ``sub[k]`` lists k-cells of a subcomplex."""
        subsets = {k: set(v) for k, v in sub.items()}
        for k, cells in subsets.items():
            m = self.d(k)
            cols = m.columns()
            for c in cells:
                if c >= self.dims.get(k, 0) or c < 0:
                    raise ChainComplexError(f"cell {c} not present in degree {k}")
                leaks = [r for r in cols[c] if r not in subsets.get(k - 1, set())]
                if leaks:
                    raise ChainComplexError(
                        f"subcomplex is not closed: boundary of {k}-cell {c} leaves it")
        keep = {k: [i for i in range(n) if i not in subsets.get(k, set())]
                for k, n in self.dims.items()}
        index = {k: {old: new for new, old in enumerate(v)} for k, v in keep.items()}
        dims = {k: len(v) for k, v in keep.items()}
        bd = {}
        for k, m in self.boundary.items():
            ci, ri = index.get(k, {}), index.get(k - 1, {})
            ent = {(ri[r], ci[c]): v for (r, c), v in m.entries.items() if r in ri and c in ci}
            bd[k] = SparseMatrix(dims.get(k - 1, 0), dims.get(k, 0), ent)
        return ChainComplex(dims, bd, self.ring)


def _eliminate_units(cx: ChainComplex):
    """Cancel pairs joined by a unit boundary coefficient (algebraic Morse reduction).

    Returns (dims, columns) of an equivalent smaller complex, where columns[k]
    maps each surviving k-cell to its boundary {(k-1)-cell: coeff}.
    """
    ring = cx.ring
    cols: dict[int, dict[int, dict[int, int]]] = {}
    cofaces: dict[int, dict[int, set[int]]] = {}
    for k, n in cx.dims.items():
        cols[k] = {i: {} for i in range(n)}
        cofaces[k] = {i: set() for i in range(n)}
    for k, m in cx.boundary.items():
        for (r, c), v in m.entries.items():
            if ring == Z2:
                v &= 1
                if not v:
                    continue
            cols[k][c][r] = v
            cofaces[k - 1][r].add(c)

    def norm(v):
        return v & 1 if ring == Z2 else v

    for k in sorted(cols):
        if k - 1 not in cols:
            continue
        # iterate until no unit entry remains between degrees k and k-1
        progress = True
        while progress:
            progress = False
            for tau in sorted(cols[k]):
                col = cols[k].get(tau)
                if col is None:
                    continue
                sigma = None
                for r in sorted(col):
                    if abs(col[r]) == 1:
                        sigma = r
                        break
                if sigma is None:
                    continue
                a = col[sigma]
                # every other k-cell y with sigma in its boundary: y -= (coef/a) tau
                for y in sorted(cofaces[k - 1][sigma]):
                    if y == tau:
                        continue
                    ycol = cols[k][y]
                    q = norm(ycol[sigma] * a)  # a = ±1 so 1/a = a
                    for r, v in col.items():
                        nv = norm(ycol.get(r, 0) - q * v)
                        if nv:
                            if r not in ycol:
                                cofaces[k - 1][r].add(y)
                            ycol[r] = nv
                        elif r in ycol:
                            del ycol[r]
                            cofaces[k - 1][r].discard(y)
                # remove tau and sigma
                for r in col:
                    cofaces[k - 1][r].discard(tau)
                del cols[k][tau]
                for z in cofaces.get(k, {}).get(tau, ()):
                    cols[k + 1][z].pop(tau, None)
                cofaces[k].pop(tau, None)
                for r, v in cols[k - 1].get(sigma, {}).items():
                    cofaces[k - 2][r].discard(sigma)
                cols[k - 1].pop(sigma, None)
                cofaces[k - 1].pop(sigma, None)
                progress = True
    dims = {k: len(v) for k, v in cols.items()}
    return dims, cols


def homology(c: ChainComplex, ring: str | None = None) -> GradedRanks:
    """H_k = ker d_k / im d_{k+1}, over Z (with torsion) or Z/2."""
    ring = ring or c.ring
    cx = c.with_ring(ring) if ring != c.ring else c
    cx.check()
    dims, cols = _eliminate_units(cx)
    # reindex surviving cells
    index = {k: {old: i for i, old in enumerate(sorted(v))} for k, v in cols.items()}
    mats: dict[int, SparseMatrix] = {}
    for k, cells in cols.items():
        if k - 1 not in index:
            continue
        ent = {}
        for old, col in cells.items():
            for r, v in col.items():
                ent[(index[k - 1][r], index[k][old])] = v
        mats[k] = SparseMatrix(dims.get(k - 1, 0), dims[k], ent)
    out = {}
    snf: dict[int, tuple[list[int], int]] = {}
    for k, m in mats.items():
        if ring == Z2:
            snf[k] = ([], rank_mod2(m))
        else:
            snf[k] = smith_normal_form(m)
    for k, n in dims.items():
        rk = snf.get(k, ([], 0))[1]
        factors, rk1 = snf.get(k + 1, ([], 0))
        free = n - rk - rk1
        tors = tuple(d for d in factors if d > 1) if ring == Z else ()
        out[k] = (free, tors)
    return GradedRanks(out)


def relative_homology(total: ChainComplex, sub: Mapping[int, Iterable[int]],
                      ring: str | None = None) -> GradedRanks:
    """Homology of total / sub; ``sub`` must be closed under the boundary."""
    return homology(total.quotient(sub), ring)


def rank_nullity_audit(c: ChainComplex) -> bool:
    """Over Z/2: rank d_k + rank d_{k+1} + dim H_k == dim C_k for every k."""
    c2 = c.with_ring(Z2)
    h = homology(c2)
    for k, n in c2.dims.items():
        if rank_mod2(c2.d(k)) + rank_mod2(c2.d(k + 1)) + h.free(k) != n:
            return False
    return True


def complex_from_columns(dims: Mapping[int, int],
                         columns: Mapping[int, Mapping[int, Mapping[int, int]]],
                         ring: str = Z) -> ChainComplex:
    """Build a ChainComplex from per-cell boundary dictionaries."""
    bd = {}
    for k, cells in columns.items():
        ent = {}
        for c, col in cells.items():
            for r, v in col.items():
                ent[(r, c)] = v
        if ent:
            bd[k] = SparseMatrix(dims.get(k - 1, 0), dims.get(k, 0), ent)
    return ChainComplex(dims, bd, ring)


def gcd_list(xs):
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def simplicial_chains(facets: Iterable[Iterable[int]], ring: str = Z,
                      reduced: bool = False):
    """Oriented simplicial chain complex of the closure of ``facets``.

    Returns (complex, simplices) where ``simplices[k]`` is the sorted list of
    k-simplices (as sorted tuples) indexing the basis in degree k. With
    ``reduced`` an augmentation cell is added in degree -1.
    """
    from itertools import combinations

    faces: dict[int, set[tuple[int, ...]]] = {}
    for f in facets:
        f = tuple(sorted(set(f)))
        for k in range(len(f)):
            for s in combinations(f, k + 1):
                faces.setdefault(k, set()).add(s)
    simplices = {k: sorted(v) for k, v in faces.items()}
    index = {k: {s: i for i, s in enumerate(v)} for k, v in simplices.items()}
    dims = {k: len(v) for k, v in simplices.items()}
    bd = {}
    for k in range(1, len(simplices)):
        ent = {}
        for j, s in enumerate(simplices[k]):
            for i in range(len(s)):
                ent[(index[k - 1][s[:i] + s[i + 1:]], j)] = -1 if i % 2 else 1
        bd[k] = SparseMatrix(dims[k - 1], dims[k], ent)
    if reduced and dims.get(0):
        dims[-1] = 1
        bd[0] = SparseMatrix(1, dims[0], {(0, j): 1 for j in range(dims[0])})
    return ChainComplex(dims, bd, ring), simplices
