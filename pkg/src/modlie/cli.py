"""Command-line entry points: rootsys, sl2, parabolic, h1 and paperlab."""

from __future__ import annotations

import argparse
import json
import re
import sys

from .chevalley import lie_algebra
from .rootsys import RootSystemError, info, root_system


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _type_arg(text: str) -> str:
    try:
        root_system(text)
    except RootSystemError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def rootsys_main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="rootsys", description="Root system data.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_info = sub.add_parser("info", help="basic invariants as JSON")
    p_info.add_argument("type", type=_type_arg, help="type and rank, e.g. E8")
    args = ap.parse_args(argv)
    _print_json(info(root_system(args.type)))
    return 0


def sl2_main(argv: list[str] | None = None) -> int:
    from .sl2core import NoTriple, SearchSpaceTooLarge, extend_mod_p, jm_extend_char0, partition_of

    ap = argparse.ArgumentParser(prog="sl2", description="Extend a nilpotent element to sl2-triples.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_ext = sub.add_parser("extend")
    p_ext.add_argument("--type", required=True, type=_type_arg)
    p_ext.add_argument("--p", type=int, default=None, help="prime; omit for the rationals")
    p_ext.add_argument("--e", required=True, help="element in the DSL")
    args = ap.parse_args(argv)
    L = lie_algebra(args.type, args.p)
    e = L.parse(args.e)
    out: dict = {"status": "ok", "triples": [], "e_partition": str(partition_of(L, e)), "notes": []}
    try:
        triples = [jm_extend_char0(L, e)] if args.p is None else extend_mod_p(L, e)
        out["triples"] = [t.as_dsl(L) for t in triples]
        out["notes"] = [f"f_freedom={t.f_freedom} source={t.source}" for t in triples]
    except NoTriple as exc:
        out.update(status="no_triple", notes=[str(exc)])
    except SearchSpaceTooLarge as exc:
        out.update(status="search_too_large", notes=[str(exc)])
    _print_json(out)
    return 0 if out["status"] == "ok" else 1


def parabolic_main(argv: list[str] | None = None) -> int:
    from .parabolic import standard_parabolic

    ap = argparse.ArgumentParser(prog="parabolic", description="Standard parabolic subalgebras.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_lay = sub.add_parser("layers", help="dimensions of the level layers of the nilradical")
    p_lay.add_argument("--type", required=True, type=_type_arg)
    p_lay.add_argument("--J", default="", help="comma-separated simple indices of the Levi")
    args = ap.parse_args(argv)
    J = [int(j) for j in args.J.split(",") if j.strip()]
    pd = standard_parabolic(lie_algebra(args.type), J)
    _print_json(pd.layer_dims())
    return 0


def _parse_sl2_module(p: int, text: str):
    from .sl2reps import dual, simple_L, tensor

    text = text.replace(" ", "")
    m = re.fullmatch(r"L\((\d+)\)", text)
    if m:
        return simple_L(p, int(m.group(1)))
    m = re.fullmatch(r"L\((\d+)\)\*(?:x|⊗)L\((\d+)\)", text)
    if m:
        return tensor(dual(simple_L(p, int(m.group(1)))), simple_L(p, int(m.group(2))))
    raise argparse.ArgumentTypeError(f"cannot parse module {text!r}; use L(m) or L(a)*xL(b)")


def h1_main(argv: list[str] | None = None) -> int:
    from .cohomology import SL2_P_MAP, h1
    from .sl2reps import SL2_STRUCTURE

    ap = argparse.ArgumentParser(prog="h1", description="dim H^1(sl2, M) over F_p.")
    ap.add_argument("--p", type=int, required=True)
    ap.add_argument("--module", required=True, help='"L(m)" or "L(a)*xL(b)"')
    ap.add_argument("--restricted", action="store_true", help="also impose the [p]-map condition")
    args = ap.parse_args(argv)
    try:
        M = _parse_sl2_module(args.p, args.module)
    except (argparse.ArgumentTypeError, ValueError) as exc:
        ap.error(str(exc))
    cs = h1(SL2_STRUCTURE, M.as_action(), p_map=SL2_P_MAP if args.restricted else None)
    _print_json({"z1": cs.z1_dim, "b1": cs.b1_dim, "h1": cs.h1_dim})
    return 0


def paperlab_main(argv: list[str] | None = None) -> int:
    from .paperlab import reports_json, run_all

    ap = argparse.ArgumentParser(prog="paperlab", description="Run the scripted checks.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_run = sub.add_parser("run")
    p_run.add_argument("--only", default=None, help="comma-separated check ids, e.g. C4,C8")
    p_run.add_argument("--prefix", default=None, help="id prefix filter")
    p_run.add_argument("--json", dest="json_out", default=None, help="write the JSON report here")
    p_run.add_argument("--type", default=None)
    p_run.add_argument("--p", type=int, default=None)
    args = ap.parse_args(argv)
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    reports = run_all(prefix=args.prefix, only=only, type_=args.type, p=args.p)
    for r in reports:
        line = f"{r.id:4s} {r.status:5s} {r.runtime_ms:7d} ms"
        if r.mismatches:
            line += "  mismatched: " + ", ".join(r.mismatches)
        if r.error:
            line += "  " + r.error
        print(line)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(reports_json(reports))
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(paperlab_main())
