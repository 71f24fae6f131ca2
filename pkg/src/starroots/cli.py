"""Command-line front end.

Every command prints JSON on standard output. Exit status is 0 on success,
2 for domain failures (the JSON then has an ``error`` field naming the
failure) and 1 for unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .complexified import EPS_STRATUM, CQuat, classify_stratum
from .continuation import (
    MATCH_TOL,
    DomainPath,
    global_roots_no_real,
    global_roots_with_real,
    monodromy_of_loop,
    permutation_cycles,
    verify_group_table,
)
from .errors import AnchorNotReal, StarRootsError
from .power_map import sigma_k_array
from .quaternion import EPS_REAL, ImUnit
from .root_solver import point_star_roots
from .slice_function import StemPoly, classify_differential, phi_multiplicity, star_power, star_product

COMMANDS = (
    "star-pow",
    "star-prod",
    "roots-point",
    "roots-global",
    "monodromy",
    "classify",
    "group-table",
    "verify",
)


class InputError(Exception):
    """Unreadable or malformed input; exit status 1."""


@dataclass
class RunConfig:
    command: str
    eps_real: float = EPS_REAL
    eps_stratum: float = EPS_STRATUM
    eps_match: float = MATCH_TOL
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        for name in ("eps_real", "eps_stratum", "eps_match"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be strictly positive")


def _cx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _cq(w) -> list:
    return [_cx(z) for z in np.asarray(w, dtype=complex).reshape(4)]


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _load(path: str, parse):
    data = _load_json(path)
    try:
        return parse(data)
    except StarRootsError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _root_json(r) -> dict:
    out = {"label": r.label, "t_class": r.t_class, "values": [_cq(v) for v in r.branch_values]}
    if "tau" in r.meta:
        out["tau"] = r.meta["tau"]
    return out


def cmd_star_pow(cfg: RunConfig) -> dict:
    F = _load(cfg.args["stem"][0], StemPoly.from_json)
    return star_power(F, cfg.args["k"]).to_json()


def cmd_star_prod(cfg: RunConfig) -> dict:
    stems = cfg.args["stem"]
    if len(stems) < 2:
        raise InputError("star-prod needs --stem twice (left factor first)")
    out = _load(stems[0], StemPoly.from_json)
    for path in stems[1:]:
        out = star_product(out, _load(path, StemPoly.from_json))
    return out.to_json()


def cmd_roots_point(cfg: RunConfig) -> dict:
    k = cfg.args["k"]
    w = _load(cfg.args["w"], CQuat.from_json)
    tol = cfg.args.get("tol") or cfg.eps_stratum
    branches = point_star_roots(w, k, tol)
    rows = []
    for b in sorted(branches, key=lambda b: b.label):
        res = float(np.abs(sigma_k_array(b.value.as_array(), k) - w.as_array()).max())
        rows.append(
            {
                "label": b.label_str,
                "value": b.value.to_json(),
                "t": _cx(b.t),
                "lift": {"u0": _cx(b.lift.u0), "u1": _cx(b.lift.u1), "s": b.lift.s.to_json()},
                "stratum": str(b.stratum),
                "residual": res,
            }
        )
    return {"k": k, "w": w.to_json(), "branches": rows}


def _anchor_index(path: DomainPath, x: float) -> int:
    hits = np.flatnonzero(np.abs(path.points - x) <= 1e-12 * (1 + abs(x)))
    if hits.size == 0:
        raise AnchorNotReal(f"the path has no sample at the real point {x!r}")
    return int(hits[0])


def cmd_roots_global(cfg: RunConfig) -> dict:
    k = cfg.args["k"]
    F = _load(cfg.args["stem"][0], StemPoly.from_json)
    path = _load(cfg.args["path"], DomainPath.from_json)
    x = cfg.args.get("anchor_real")
    if x is not None or path.anchor is not None:
        idx = path.anchor if x is None else _anchor_index(path, x)
        path = DomainPath(path.points, path.closed, idx)
        roots = global_roots_with_real(F, path, k, cfg.eps_stratum)
        mode = "with_real"
    else:
        roots = global_roots_no_real(F, path, k, cfg.eps_stratum)
        mode = "no_real"
        path = roots[0].path if roots else path
    return {
        "mode": mode,
        "k": k,
        "points": [_cx(z) for z in path.points],
        "roots": [_root_json(r) for r in roots],
    }


def cmd_monodromy(cfg: RunConfig) -> dict:
    k = cfg.args["k"]
    F = _load(cfg.args["stem"][0], StemPoly.from_json)
    loop = _load(cfg.args["loop"], DomainPath.from_json)
    try:
        perm = monodromy_of_loop(F, loop, k)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {
        "k": k,
        "basepoint": _cx(loop.points[0]),
        "permutation": perm,
        "cycles": permutation_cycles(perm),
    }


def cmd_classify(cfg: RunConfig) -> dict:
    a = cfg.args
    if a.get("w"):
        w = _load(a["w"], CQuat.from_json)
        st = classify_stratum(w, a["k"], a.get("tol") or cfg.eps_stratum)
        out = {"k": a["k"], "stratum": st.tag.name}
        if st.r_index is not None:
            out["r_index"] = st.r_index
            out["r"] = st.r
        return out
    if not a.get("stem") or a.get("z") is None:
        raise InputError("classify needs either --w FILE --k K or --stem FILE --z RE IM")
    F = _load(a["stem"][0], StemPoly.from_json)
    z = complex(*a["z"])
    try:
        I = ImUnit.from_vector(a.get("unit") or (1.0, 0.0, 0.0))
        verdict = classify_differential(F, z, I, a.get("tol") or 1e-9)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {"z": _cx(z), "unit": list(I[1:]), "verdict": verdict.name}
    try:
        out["phi_multiplicity"] = phi_multiplicity(F, z, I)
    except StarRootsError as exc:
        out["phi_multiplicity"] = None
        out["phi_error"] = exc.kind
    return out


def cmd_group_table(cfg: RunConfig) -> dict:
    return verify_group_table(cfg.args["k"])


def cmd_verify(cfg: RunConfig):
    from .verification import format_table, run_checks

    results = run_checks(samples=cfg.args.get("samples") or 50)
    if cfg.args.get("json"):
        text = json.dumps(
            [
                {"check": r.name, "measured": float(r.measured), "bound": float(r.bound), "passed": bool(r.passed)}
                for r in results
            ],
            indent=2,
        )
    else:
        text = format_table(results)
    return text, all(r.passed for r in results)


HANDLERS = {
    "star-pow": cmd_star_pow,
    "star-prod": cmd_star_prod,
    "roots-point": cmd_roots_point,
    "roots-global": cmd_roots_global,
    "monodromy": cmd_monodromy,
    "classify": cmd_classify,
    "group-table": cmd_group_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps-real", type=float, default=EPS_REAL, help="non-real threshold for quaternions")
    common.add_argument("--eps-stratum", type=float, default=EPS_STRATUM, help="stratum vanishing threshold")
    common.add_argument("--eps-match", type=float, default=MATCH_TOL, help="branch matching tolerance")

    parser = argparse.ArgumentParser(prog="starroots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star-pow", parents=[common], help="k-th star-power of a stem")
    p.add_argument("--stem", action="append", required=True, metavar="FILE")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("star-prod", parents=[common], help="star-product of two or more stems")
    p.add_argument("--stem", action="append", required=True, metavar="FILE")

    p = sub.add_parser("roots-point", parents=[common], help="all k*k pointwise roots")
    p.add_argument("--w", required=True, metavar="FILE")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("roots-global", parents=[common], help="global roots along a path")
    p.add_argument("--stem", action="append", required=True, metavar="FILE")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--path", required=True, metavar="FILE")
    p.add_argument("--anchor-real", type=float, metavar="X")

    p = sub.add_parser("monodromy", parents=[common], help="label permutation around a loop")
    p.add_argument("--stem", action="append", required=True, metavar="FILE")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--loop", required=True, metavar="FILE")

    p = sub.add_parser("classify", parents=[common], help="stratum of a point or singularity of a stem")
    p.add_argument("--w", metavar="FILE")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--stem", action="append", metavar="FILE")
    p.add_argument("--z", type=float, nargs=2, metavar=("RE", "IM"))
    p.add_argument("--unit", type=float, nargs=3, metavar=("I1", "I2", "I3"))
    p.add_argument("--tol", type=float)

    p = sub.add_parser("group-table", parents=[common], help="automorphism group checks")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--json", action="store_true")
    return parser


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    k = cfg.args.get("k")
    if k is not None and k < 1:
        raise InputError("--k must be a positive integer")
    if cfg.command == "verify":
        text, ok = cmd_verify(cfg)
        print(text, file=out)
        return 0 if ok else 1
    result = HANDLERS[cfg.command](cfg)
    print(json.dumps(result, indent=2), file=out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    args = {k: v for k, v in vars(ns).items() if k not in ("command", "eps_real", "eps_stratum", "eps_match")}
    try:
        cfg = RunConfig(ns.command, ns.eps_real, ns.eps_stratum, ns.eps_match, args)
        return run(cfg)
    except StarRootsError as exc:
        print(json.dumps(exc.to_dict(), indent=2))
        return 2
    except InputError as exc:
        print(json.dumps({"error": "InputError", "message": str(exc)}, indent=2))
        return 1


if __name__ == "__main__":
    sys.exit(main())
