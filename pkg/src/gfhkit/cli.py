"""Command-line entry point: ``gfhkit <command> ...``.

Results go to stdout (or ``--out``) as a JSON document with a ``result`` part,
which depends only on the inputs and flags, and a ``manifest`` part recording
provenance and wall time.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import metadata
from pathlib import Path

import numpy as np

from . import cubegrid, genfam, legfront, obstruct, spectop
from .homlin import Z, Z2, GradedRanks

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_WINDOW, EXIT_ROTATION = 0, 1, 2, 3, 4, 5


class InputError(ValueError):
    pass


@dataclass
class RunManifest:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)  # path -> sha256
    grid: dict | None = None
    window: dict | None = None
    shear: dict | None = None
    version: str = ""
    wall_time: float = 0.0

    def digest(self, path: str) -> bytes:
        data = Path(path).read_bytes()
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data

    def to_json(self) -> dict:
        out = asdict(self)
        out["wallTime"] = f"{out.pop('wall_time'):.3f}"
        return {k: v for k, v in out.items() if v is not None}


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _load_json(man: RunManifest, path: str):
    try:
        return json.loads(man.digest(path))
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _counts(text: str | None, dim: int) -> list[int]:
    if text is None:
        default = {1: 201, 2: 201, 3: 81, 4: 61}.get(dim, 21)
        return [default] * dim
    parts = [int(x) for x in text.lower().split("x")]
    if len(parts) == 1:
        parts = parts * dim
    if len(parts) != dim:
        raise InputError(f"--grid needs 1 or {dim} sample counts")
    return parts


def _ranks_compact(h: GradedRanks) -> dict:
    """Free-only degrees as plain integers, the rest as {free, torsion}."""
    return {str(k): (f if not t else {"free": f, "torsion": list(t)}) for k, (f, t) in h.groups.items()}


# ---------------------------------------------------------------- commands

def cmd_gfh_numeric(args, man: RunManifest) -> tuple[dict, int]:
    try:
        g = genfam.GFDescriptor.from_json(_load_json(man, args.descriptor))
    except genfam.DescriptorError as exc:
        raise InputError(str(exc)) from exc
    for _ in range(args.stabilize):
        g = genfam.stabilize(g, 1)
    nv = g.base_dim + 2 * g.fiber_dim
    grid = genfam.default_grid(g, _counts(args.grid, nv), args.budget)
    grid.check_budget()
    man.grid = grid.to_json()
    override = None
    if args.eps is not None or args.omega is not None:
        if args.eps is None or args.omega is None:
            raise InputError("--eps and --omega go together")
        override = (args.eps, args.omega)
    spectrum = genfam.length_spectrum(g, grid)
    window = genfam.choose_window(g, grid, override)
    window.check(spectrum)
    man.window = window.to_json()
    res = genfam.gfh(g, grid, window, args.ring, detail=True)
    return {"gfh": res.ranks.to_json(), "N": g.fiber_dim, "ring": args.ring,
            "window": window.to_json(), "lengthSpectrum": [genfam._dec(x) for x in spectrum],
            "grid": grid.to_json()}, EXIT_OK


def _front_from(man: RunManifest, path: str) -> legfront.FrontDiagram:
    try:
        fd = legfront.FrontDiagram.from_json(_load_json(man, path))
    except legfront.RotationError:
        raise
    except legfront.FrontError as exc:
        raise InputError(str(exc)) from exc
    return fd


def _front_results(fd: legfront.FrontDiagram):
    tb, rot = legfront.classical_invariants(fd)
    if rot != 0:
        raise legfront.RotationError(f"rotation number {rot} != 0: LCH is not Z-graded")
    plat = fd if legfront.is_plat(fd) else legfront.plat_position(fd)
    dga = legfront.chekanov_dga(plat)
    defects = dga.square_defects() + [g for g, _ in dga.grading_defects()]
    return tb, rot, dga, legfront.lch_spectrum(dga), defects


def cmd_gfh_front(args, man: RunManifest) -> tuple[dict, int]:
    fd = _front_from(man, args.front)
    tb, rot, dga, spec, defects = _front_results(fd)
    out: dict = {"tb": tb, "rot": rot, "augmentationCount": len(spec)}
    if args.list_aug:
        out["augmentations"] = [e.to_json() for e, _ in spec]
    else:
        out["augmentations"] = [{"augmentation": e.to_json(), "lch": l.to_json(),
                                 "gfh": legfront.gfh_from_lch(l).to_json()} for e, l in spec]
    if defects:
        out["invariantFailures"] = sorted(set(defects))
    return out, EXIT_FAIL if defects else EXIT_OK


def _shear_from(args, data) -> genfam.ShearSpec:
    base = data.get("shear", {}) if isinstance(data, dict) else {}
    vals = {"u": args.u, "mu": args.mu, "Omega": args.Omega, "tMinus": args.tminus}
    merged = {k: (str(v) if v is not None else base.get(k)) for k, v in vals.items()}
    defaults = {"u": "1.5", "mu": "0.1", "Omega": "15", "tMinus": None}
    for k, v in defaults.items():
        if merged[k] is None:
            merged[k] = v
    if merged["tMinus"] is None:
        merged["tMinus"] = data.get("tMinus", "0.5")
    return genfam.ShearSpec.from_json(merged)


def _lambda_csv(path: str, spec: genfam.ShearSpec, spectrum, hi: float, rows: int = 400):
    sh = genfam.shear(spec, spectrum)
    ts = np.linspace(1.0, hi, rows)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "H", "lambda_minus_mu", "lambda_Omega"])
        for t in ts:
            w.writerow([f"{t:.6g}", f"{float(sh.H(t)):.6g}", f"{float(sh.lam(-spec.mu, t)):.6g}",
                        f"{float(sh.lam(spec.Omega, t)):.6g}"])


def cmd_verify_seidel(args, man: RunManifest) -> tuple[dict, int]:
    data = _load_json(man, args.filling)
    try:
        fd = genfam.FillingDescriptor.from_json(data)
    except genfam.DescriptorError as exc:
        raise InputError(str(exc)) from exc
    spec = _shear_from(args, data)
    man.shear = spec.to_json()
    g = fd.base
    probe = genfam.default_grid(g, [201] * (2 * g.fiber_dim), args.budget)
    spectrum = genfam.length_spectrum(g, probe)
    spec.check_choices(spectrum)
    lemmas = genfam.verify_lambda_lemmas(spec, spectrum) if spectrum else None
    if lemmas is not None and not lemmas.passed:
        return {"lambdaLemmas": lemmas.to_json(), "verdict": "MISMATCH"}, EXIT_WINDOW
    nt, *rest = _counts(args.grid, 1 + 2 * g.fiber_dim) if args.grid else [121] + [161] * (2 * g.fiber_dim)
    fiber = genfam.default_grid(g, rest).axes
    grid = cubegrid.GridSpec((genfam.t_axis(spec, spectrum, nt),) + fiber, args.budget)
    grid.check_budget()
    man.grid = grid.to_json()
    rep = genfam.seidel_decomposition(fd, spec, grid, spectrum, args.ring)
    euler = rep.C.euler_characteristic() == rep.A.euler_characteristic() + rep.B.euler_characteristic() - rep.W.euler_characteristic()
    match = rep.W == rep.A and rep.B.is_zero() and rep.C.is_zero() and euler
    if args.csv:
        _lambda_csv(args.csv, spec, spectrum, grid.axes[0].hi)
    out = rep.to_json() | {"shear": spec.to_json(), "lengthSpectrum": [genfam._dec(x) for x in spectrum],
                           "eulerAudit": euler, "verdict": "MATCH" if match else "MISMATCH"}
    if lemmas is not None:
        out["lambdaLemmas"] = lemmas.to_json()
    return out, EXIT_OK if match else EXIT_FAIL


def _obstruct_profile(p: obstruct.GFHProfile) -> dict:
    return {"nmin": obstruct.nmin_lower_bound(p), "fillability": obstruct.fillability_obstruction(p),
            "duality": obstruct.duality_audit(p).to_json()["result"],
            "dualityDetail": obstruct.duality_audit(p).to_json(),
            "nminReport": obstruct.nmin_report(p).to_json()}


def cmd_obstruct(args, man: RunManifest) -> tuple[dict, int]:
    data = _load_json(man, args.input)
    if isinstance(data, dict) and "events" in data:
        fd = _front_from(man, args.input)
        _, _, _, spec, defects = _front_results(fd)
        if not spec:
            raise InputError("front has no augmentations, so no generating family")
        per = [_obstruct_profile(obstruct.profile(legfront.gfh_from_lch(l), m=1)) for _, l in spec]
        # any augmentation may be the one induced by a family, so the bound is the minimum
        best = min(per, key=lambda r: r["nmin"])
        out = {"nmin": best["nmin"], "fillability": best["fillability"], "duality": best["duality"],
               "perAugmentation": per}
        return out, EXIT_FAIL if defects else EXIT_OK
    try:
        p = obstruct.GFHProfile.from_json(data)
    except obstruct.ProfileError as exc:
        raise InputError(str(exc)) from exc
    return _obstruct_profile(p), EXIT_OK


def _spectrum_target(tokens: list[str], man: RunManifest):
    """Parse '[susp k | desusp k] <wedge | complex name | file.json>'."""
    up = 0
    while tokens and tokens[0] in ("susp", "desusp"):
        if len(tokens) < 2:
            raise InputError(f"{tokens[0]} needs an integer")
        k = int(tokens[1])
        up += k if tokens[0] == "susp" else -k
        tokens = tokens[2:]
    if not tokens:
        raise InputError("missing spectrum")
    body = tokens[0]
    rest = tokens[1:]
    if body.startswith("S") and (body[1:2].isdigit() or body[1:2] == "-"):
        text = body
        if rest[:1] == ["@shift"]:
            text, rest = f"{body} @shift {rest[1]}", rest[2:]
        w = spectop.parse_wedge(text)
        w = spectop.SphereWedge(w.dims, w.shift + up)
        return w, w.surrogate(), rest
    if body.endswith(".json"):
        k = spectop.SimplicialComplex.from_json(_load_json(man, body))
        x = spectop.suspension_spectrum(k, body)
    else:
        try:
            x = spectop.named(body)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    return None, spectop.shift(x, up), rest


def cmd_spectrum(args, man: RunManifest) -> tuple[dict, int]:
    tokens = " ".join(args.expression).split()
    try:
        wedge, x, rest = _spectrum_target(tokens, man)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not rest:
        raise InputError("missing action: homology, pi <k> or obstruct")
    action = rest[0]
    if action == "homology":
        return {"homology": _ranks_compact(spectop.spec_homology(x, args.ring))}, EXIT_OK
    if action == "pi":
        if wedge is None or len(rest) != 2:
            raise InputError("pi lookup needs a sphere wedge and a degree")
        return {"pi": spectop.pi_s_lookup(wedge, int(rest[1]))}, EXIT_OK
    if action == "obstruct":
        v = spectop.suspension_obstruction(x)
        return {"verdict": str(v), "homologyLevel": v.homology_level}, EXIT_OK
    raise InputError(f"unknown action {action!r}")


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gfhkit", description="Generating family homology toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON document here instead of stdout")
        p.add_argument("--ring", choices=[Z, Z2], default=Z)
        p.add_argument("--budget", type=int, default=cubegrid.DEFAULT_BUDGET, help="cell budget")

    p = sub.add_parser("gfh-numeric", help="GFH of a generating family descriptor")
    p.add_argument("descriptor")
    p.add_argument("--grid", help="samples per axis, e.g. 201 or 61x61x61x61")
    p.add_argument("--eps", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--stabilize", type=int, default=0, metavar="K")
    common(p)

    p = sub.add_parser("gfh-front", help="GFH of a front via linearized contact homology")
    p.add_argument("front")
    p.add_argument("--list-aug", action="store_true")
    common(p)

    p = sub.add_parser("verify-seidel", help="W/A/B/C decomposition of a sheared filling")
    p.add_argument("filling")
    p.add_argument("--grid", help="t x eta x eta~ samples, e.g. 121x161x161")
    p.add_argument("--u", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--Omega", type=float)
    p.add_argument("--tminus", type=float)
    p.add_argument("--csv", help="write a lambda-function sweep as CSV")
    common(p)

    p = sub.add_parser("obstruct", help="N_min bound, fillability and duality verdicts")
    p.add_argument("input", help="profile or front JSON")
    common(p)

    p = sub.add_parser("spectrum", help="surrogate homology, pi lookup, suspension verdict")
    p.add_argument("expression", nargs="+", help='e.g. "S1+S1+S2 pi 3" or "desusp 1 CP2 obstruct"')
    common(p)
    return ap


COMMANDS = {"gfh-numeric": cmd_gfh_numeric, "gfh-front": cmd_gfh_front,
            "verify-seidel": cmd_verify_seidel, "obstruct": cmd_obstruct, "spectrum": cmd_spectrum}


def run(argv: list[str] | None = None) -> tuple[dict | None, int, str]:
    """Run a command; returns (document, exit code, error message)."""
    args = build_parser().parse_args(argv)
    man = RunManifest(args.command, version=_version())
    t0 = time.perf_counter()
    try:
        result, code = COMMANDS[args.command](args, man)
    except (InputError, genfam.DescriptorError, obstruct.ProfileError) as exc:
        return None, EXIT_INPUT, str(exc)
    except (cubegrid.BudgetExceeded, legfront.SearchBudgetError) as exc:
        return None, EXIT_BUDGET, str(exc)
    except (genfam.WindowError, genfam.ChoiceViolation, cubegrid.ThresholdError) as exc:
        return None, EXIT_WINDOW, str(exc)
    except legfront.RotationError as exc:
        return None, EXIT_ROTATION, str(exc)
    except (legfront.FrontError, spectop.HorizonError) as exc:
        return None, EXIT_INPUT, str(exc)
    man.wall_time = time.perf_counter() - t0
    return {"result": result, "manifest": man.to_json()}, code, ""


def main(argv: list[str] | None = None) -> int:
    doc, code, err = run(argv)
    if doc is None:
        print(f"gfhkit: error: {err}", file=sys.stderr)
        return code
    text = json.dumps(doc, indent=2, sort_keys=True)
    out = getattr(build_parser().parse_known_args(argv)[0], "out", None)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
