"""Command-line interface.

Exit codes: 0 success, 1 verification failure (with witness), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence, Union

from . import free_boolean as fb
from . import heisenberg as hb
from . import stone_actions as sa
from . import ultrametric as um
from .boolean_core import ClopenVector
from .errors import InputError
from .selftest import run_selftest

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class CommandResult:
    code: int
    payload: Union[dict, list, str]

    def render(self, fmt: str = "json") -> str:
        if isinstance(self.payload, str):
            return self.payload.rstrip("\n")
        if fmt == "text":
            return _as_text(self.payload)
        return json.dumps(self.payload)


def _as_text(value: Any, indent: str = "") -> str:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            nested = isinstance(v, dict) or (isinstance(v, list) and any(isinstance(i, dict) for i in v))
            if nested:
                lines.append(f"{indent}{k}:")
                lines.append(_as_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(
            indent + ("  ".join(f"{k}={_scalar(v)}" for k, v in item.items()) if isinstance(item, dict) else _scalar(item))
            for item in value
        )
    return indent + _scalar(value)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "[" + " ".join(_scalar(i) for i in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "-" if v is None else str(v)


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg} (line {exc.lineno})") from None


def _load_space(path: str) -> um.RationalUltraSpace:
    return um.RationalUltraSpace.from_json(_load_json(path))


def _labels(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _chain(space: um.RationalUltraSpace, text: str) -> fb.Chain:
    labels = _labels(text)
    if len(set(labels)) != len(labels):
        raise InputError("repeated point in chain")
    return fb.Chain.from_labels(labels, space)


def _load_group(path: str, n: int) -> sa.PermGroup:
    doc = _load_json(path)
    if not isinstance(doc, list) or not all(isinstance(p, list) for p in doc):
        raise InputError("group JSON must be an array of image arrays")
    perms = [sa.Permutation(tuple(int(i) for i in p)) for p in doc]
    if any(p.n != n for p in perms):
        raise InputError(f"permutations must act on {n} points")
    return sa.PermGroup.generated_by(perms, n)


def _frac(q) -> Optional[str]:
    return None if q is None else um.format_fraction(q)


def cmd_verify_ultrametric(args) -> CommandResult:
    space = _load_space(args.space)
    check = um.verify_ultrametric(space)
    if check:
        return CommandResult(EXIT_OK, {"ultrametric": True})
    x, y, z = check.witness
    p = space.points
    return CommandResult(
        EXIT_FAIL,
        {
            "ultrametric": False,
            "witness": [p[x], p[y], p[z]],
            "d_xz": _frac(space.d(x, z)),
            "d_xy": _frac(space.d(x, y)),
            "d_yz": _frac(space.d(y, z)),
        },
    )


def cmd_ball_partition(args) -> CommandResult:
    space = _load_space(args.space)
    part = um.ball_partition(space, args.eps, closed=args.closed)
    return CommandResult(
        EXIT_OK,
        {
            "eps": _frac(um.to_fraction(args.eps)),
            "closed": args.closed,
            "blocks": [str(b) for b in part.blocks],
            "labels": [space.labels_of(b.bits) for b in part.blocks],
        },
    )


def cmd_hausdorff(args) -> CommandResult:
    space = _load_space(args.space)
    a = space.subset_mask(_labels(args.a))
    b = space.subset_mask(_labels(args.b))
    return CommandResult(EXIT_OK, {"distance": _frac(um.hausdorff_distance(a, b, space))})


def cmd_norm(args) -> CommandResult:
    space = _load_space(args.space)
    u = _chain(space, args.chain)
    fast = fb.norm_bottleneck(u, space)
    out: dict = {"norm": _frac(fast.value), "witness": fast.witness.to_labels(space)}
    if args.oracle:
        slow = fb.norm_bruteforce_witness(u, space)
        agrees = slow.value == fast.value
        out["oracle_agrees"] = agrees
        if not agrees:
            out["oracle_norm"] = _frac(slow.value)
            return CommandResult(EXIT_FAIL, out)
    return CommandResult(EXIT_OK, out)


def cmd_witness(args) -> CommandResult:
    space = _load_space(args.space)
    u = _chain(space, args.chain)
    res = fb.norm_bottleneck(u, space)
    return CommandResult(
        EXIT_OK,
        {
            "chain": u.labels(space),
            "witness": res.witness.to_labels(space),
            "length": _frac(fb.phi_length(res.witness, space)),
            "normal": res.witness.is_normal(),
        },
    )


def cmd_closedness(args) -> CommandResult:
    space = _load_space(args.space)
    u = _chain(space, args.chain)
    if not u.is_even():
        raise InputError(f"chain of odd size {len(u)} is not in the even subgroup")
    dist = fb.distance_to_image(u, space)
    inside = fb.in_image(u, space)
    bound = None if inside else fb.closedness_bound(u, space)
    holds = inside or (bound is not None and dist >= bound)
    out = {
        "chain": u.labels(space),
        "in_image": inside,
        "distance_to_image": _frac(dist),
        "eps0": _frac(bound),
        "bound_holds": holds,
    }
    return CommandResult(EXIT_OK if holds else EXIT_FAIL, out)


def cmd_heisenberg(args) -> CommandResult:
    n = args.n
    if n < 0:
        raise InputError("dimension must be nonnegative")
    if args.what == "order":
        return CommandResult(EXIT_OK, {"order": hb.heisenberg_order(n)})
    if args.what == "center":
        return CommandResult(EXIT_OK, {"center": [h.to_json() for h in hb.center(n)]})
    return CommandResult(EXIT_OK, hb.multiplication_csv(n))


def cmd_semidirect(args) -> CommandResult:
    G = _load_group(args.group, args.n)
    if args.what == "order":
        return CommandResult(EXIT_OK, {"order": hb.semidirect_order(args.n, G), "group_order": len(G)})
    report = hb.retraction_check(args.n, G)
    ok = all(report.values())
    return CommandResult(EXIT_OK if ok else EXIT_FAIL, {"order": hb.semidirect_order(args.n, G), **report, "ok": ok})


def cmd_duality(args) -> CommandResult:
    doc = _load_json(args.algebra)
    members = doc.get("members") if isinstance(doc, dict) else doc
    if not isinstance(members, list) or not members or not all(isinstance(m, str) for m in members):
        raise InputError('algebra JSON must be an array of bit strings (or {"members": [...]})')
    vecs = [ClopenVector.parse(m) for m in members]
    algebra = sa.BooleanSubalgebra(vecs)
    found = sa.atoms(algebra)
    rebuilt = sa.BooleanSubalgebra.generated_by(found, algebra.n)
    return CommandResult(
        EXIT_OK,
        {"atoms": [str(a) for a in found], "dual_points": len(found), "round_trip": rebuilt == algebra},
    )


def cmd_wreath(args) -> CommandResult:
    table = _load_json(args.group)
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InputError("group table JSON must be an array of rows")
    w = sa.wreath_retract(table)
    report = w.verify()
    ok = all(report.values())
    return CommandResult(EXIT_OK if ok else EXIT_FAIL, {"base_order": len(w.H), "order": w.order(), **report, "ok": ok})


def cmd_isometry_group(args) -> CommandResult:
    space = _load_space(args.space)
    G = um.isometry_group(space)
    return CommandResult(EXIT_OK, {"order": len(G), "elements": [list(g.images) for g in G]})


def cmd_selftest(args) -> CommandResult:
    results = run_selftest(seed=args.seed, trials=args.trials)
    ok = all(r.passed for r in results)
    payload = {
        "seed": args.seed,
        "trials": args.trials,
        "claims": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "failed": [r.name for r in results if not r.passed],
        "passed": ok,
    }
    return CommandResult(EXIT_OK if ok else EXIT_FAIL, payload)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nonarch", description="Finite non-archimedean group toolkit.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify-ultrametric", help="check the strong triangle inequality")
    s.add_argument("space")
    s.set_defaults(func=cmd_verify_ultrametric)

    s = sub.add_parser("ball-partition", help="partition into balls of radius eps")
    s.add_argument("space")
    s.add_argument("--eps", required=True)
    s.add_argument("--closed", action="store_true", help="use closed balls")
    s.set_defaults(func=cmd_ball_partition)

    s = sub.add_parser("hausdorff", help="Hausdorff distance of two point sets")
    s.add_argument("space")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_hausdorff)

    for name, func, helptext in (
        ("norm", cmd_norm, "ultra-norm of an even chain"),
        ("witness", cmd_witness, "optimal pairing of an even chain"),
        ("closedness", cmd_closedness, "distance of a chain to the embedded space"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("space")
        s.add_argument("--chain", required=True, help="comma-separated point labels")
        if name == "norm":
            s.add_argument("--oracle", action="store_true", help="cross-check against brute force")
        s.set_defaults(func=func)

    s = sub.add_parser("heisenberg", help="Heisenberg group of an n-point space")
    s.add_argument("what", choices=("table", "center", "order"))
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_heisenberg)

    s = sub.add_parser("semidirect", help="Heisenberg group semidirect a permutation group")
    s.add_argument("what", choices=("order", "retract-check"))
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--group", required=True, help="JSON array of permutations (closed under products)")
    s.set_defaults(func=cmd_semidirect)

    s = sub.add_parser("duality", help="finite Stone duality")
    s.add_argument("what", choices=("atoms",))
    s.add_argument("algebra")
    s.set_defaults(func=cmd_duality)

    s = sub.add_parser("wreath", help="Z_2 wreath product retracting onto a finite group")
    s.add_argument("--group", required=True, help="JSON multiplication table")
    s.set_defaults(func=cmd_wreath)

    s = sub.add_parser("isometry-group", help="all isometries of a space")
    s.add_argument("space")
    s.set_defaults(func=cmd_isometry_group)

    s = sub.add_parser("selftest", help="run the seeded property suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str]) -> tuple[CommandResult, str]:
    parser = build_parser()
    fmt = "json"
    try:
        args = parser.parse_args(list(argv))
        fmt = args.format
        result = args.func(args)
    except InputError as exc:
        result = CommandResult(EXIT_INPUT, {"error": str(exc)})
    return result, fmt


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result, fmt = run(argv)
    stream = sys.stdout if result.code != EXIT_INPUT else sys.stderr
    print(result.render(fmt), file=stream)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
