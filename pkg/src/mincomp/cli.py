"""Command-line client.

Every data command builds the same request model the HTTP service consumes
and either dispatches in-process or, with ``--server URL``, posts it to a
running service.  ``--format structured`` prints the canonical JSON
serialization (sorted keys, compact separators) so reports round-trip
byte-identically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from .engine import ORACLE_HARD_CAP, default_jobs
from .errors import CapacityError, SpecParseError
from .service import handlers
from .service.models import (
    CheckRequest,
    OracleRequest,
    RemarkFamilyRequest,
    RobustFamilyRequest,
    SweepRequest,
    VerdictRequest,
    ZCheckRequest,
    ZSetSpec,
)
from .zset import parse_structured, window_membership

STRUCTURED = "structured"


def _dump(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _post(server: str, path: str, payload: Dict[str, Any]) -> Dict[str, Any]:
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    if response.status_code >= 400:
        detail = response.json().get("detail", response.text)
        raise SystemExit(f"error: server returned {response.status_code}: {detail}")
    return response.json()


def _zset_spec_from_args(args: argparse.Namespace) -> ZSetSpec:
    if args.zset_file:
        raw = Path(args.zset_file).read_text(encoding="utf-8")
    elif args.zset:
        raw = args.zset
    else:
        raise SpecParseError("give a structured set with --zset JSON or --zset-file PATH")
    data = json.loads(raw)
    return ZSetSpec.model_validate(data)


def _print_hypotheses(payload: Dict[str, Any]) -> None:
    for hyp in payload["hypotheses"]:
        mark = "+" if hyp["holds"] else "-"
        print(f"  [{mark}] {hyp['name']}: {_dump(hyp['witness'])}")
    for note in payload.get("notes", []):
        print(f"  note: {note}")


def _print_certificates(payloads: list, fmt: str) -> None:
    if fmt == STRUCTURED:
        print(_dump(payloads))
        return
    for cert in payloads:
        confirmed = cert.get("oracleConfirmed")
        extra = "" if confirmed is None else f"  (oracle confirmed: {confirmed})"
        print(f"{cert['theorem']}: {cert['verdict']}{extra}")
        _print_hypotheses(cert)


def _cmd_oracle(args: argparse.Namespace) -> int:
    req = OracleRequest(
        group=args.group, subject=args.set, side=args.side, bound=args.bound, jobs=args.jobs
    )
    if args.server:
        payload = _post(args.server, "/oracle", req.model_dump())
    else:
        payload = handlers.run_oracle(req).model_dump()
    if args.format == STRUCTURED:
        print(_dump(payload))
    else:
        witness = payload["witness"]
        print(f"status: {payload['status']}")
        if witness is not None:
            print(f"witness ({payload['witnessSide']}): {{{','.join(map(str, witness))}}}")
        print(f"searched: {payload['searched']} candidate sets in {payload['elapsedSeconds']}s")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    req = CheckRequest(
        group=args.group, h=args.h, k=args.k, c=args.c, e=args.e, f=args.f, theorem=args.theorem
    )
    if args.server:
        payload = _post(args.server, "/check", req.model_dump())
    else:
        payload = handlers.run_check(req).model_dump()
    _print_certificates(payload["certificates"], args.format)
    return 0


def _cmd_verdict(args: argparse.Namespace) -> int:
    req = VerdictRequest(
        group=args.group, subject=args.set, confirmOracle=args.confirm_oracle, bound=args.bound
    )
    if args.server:
        payload = _post(args.server, "/verdict", req.model_dump())
    else:
        payload = handlers.run_verdict(req).model_dump()
    _print_certificates(payload["certificates"], args.format)
    return 0


def _cmd_zcheck(args: argparse.Namespace) -> int:
    req = ZCheckRequest(zset=_zset_spec_from_args(args), theorem=args.theorem)
    if args.server:
        payload = _post(args.server, "/zcheck", req.model_dump())
    else:
        payload = handlers.run_zcheck(req).model_dump()
    if args.format == STRUCTURED:
        print(_dump(payload))
    else:
        print(f"{payload['theorem']}: {payload['verdict']}")
        _print_hypotheses(payload)
        if payload["automatic"]:
            print(f"  automatic: {', '.join(payload['automatic'])}")
    return 0


def _cmd_show(args: argparse.Namespace) -> int:
    member = parse_structured(_zset_spec_from_args(args).to_spec())
    for x, marker in window_membership(member, -args.window, args.window):
        print(f"{x} {marker}")
    return 0


def _cmd_family(args: argparse.Namespace) -> int:
    if args.family == "robust":
        req: Any = RobustFamilyRequest(
            p=args.p, a=args.a, residues=json.loads(args.residues), sporadic={}
        )
        path = "/family/robust"
        runner = handlers.run_robust_family
    else:
        req = RemarkFamilyRequest(n=args.n, removed=json.loads(args.removed), sporadic={})
        path = "/family/remark"
        runner = handlers.run_remark_family
    if args.server:
        payload = _post(args.server, path, req.model_dump())
    else:
        payload = runner(req).model_dump()
    if args.format == STRUCTURED:
        print(_dump(payload))
    else:
        print(f"member: {_dump(payload['zset'])}")
        cert = payload["certificate"]
        print(f"{cert['theorem']}: {cert['verdict']}")
        _print_hypotheses(cert)
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    if args.server:
        path = "/reproduce" + (f"?item={args.item}" if args.item else "")
        payload = _post(args.server, path, {})
    else:
        payload = handlers.run_reproduce(args.item).model_dump()
    if args.format == STRUCTURED:
        print(_dump(payload))
    else:
        for row in payload["results"]:
            if row["outOfScope"]:
                print(f"SKIP  {row['item']}: out of scope -- {row['description']}")
            else:
                tag = "PASS" if row["passed"] else "FAIL"
                print(f"{tag}  {row['item']}: expected {row['expected']}, got {row['actual']}")
    return 0 if payload["allPassed"] else 1


def _cmd_sweep(args: argparse.Namespace) -> int:
    req = SweepRequest(suite=args.suite)
    if args.server:
        payload = _post(args.server, "/sweep", req.model_dump())
    else:
        payload = handlers.run_sweep_request(req).model_dump()
    if args.format == STRUCTURED:
        print(_dump(payload))
    else:
        print(
            f"{payload['name']}: {payload['instances']} instances, "
            f"{payload['confirmed']} confirmed, {len(payload['violations'])} violations "
            f"in {payload['elapsedSeconds']}s"
        )
        for violation in payload["violations"][:20]:
            print(f"  violation: {violation}")
    return 0 if payload["ok"] else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mincomp",
        description="Non-minimal complement certificates and the exhaustive minimality oracle.",
    )
    parser.add_argument("--server", default=os.environ.get("MINCOMP_SERVER"),
                        help="send the request to a running service instead of computing in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["text", STRUCTURED], default="text")

    p = sub.add_parser("oracle", help="exhaustively decide minimal-complement status")
    p.add_argument("--group", required=True, help="cyclic:12 | dihedral:6 | product:... | table:PATH")
    p.add_argument("--set", required=True, help="subset literal, e.g. {2,4,6,8,10} or !{0}")
    p.add_argument("--side", choices=["left", "right", "both"], default="both")
    p.add_argument("--bound", type=int, default=None, help=f"order cap override (<= {ORACLE_HARD_CAP})")
    p.add_argument("--jobs", type=int, default=default_jobs())
    add_common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("check", help="run theorem checkers on an explicit (H, K, C, E, F) instance")
    p.add_argument("--group", required=True)
    p.add_argument("--h", required=True, help="subset literal for H")
    p.add_argument("--k", required=True, help="subset literal for K")
    p.add_argument("--c", required=True)
    p.add_argument("--e", default="{}")
    p.add_argument("--f", default="{}")
    p.add_argument("--theorem", default=None,
                   help="PropCoset | ThmFAvoids | ThmQFinite | ThmSingleCoset | ThmCMinusC")
    add_common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("verdict", help="auto-decompose a subset and run every checker")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--confirm-oracle", action="store_true")
    p.add_argument("--bound", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_verdict)

    p = sub.add_parser("zcheck", help="apply a rule to a structured integer set")
    p.add_argument("--zset", help="inline JSON spec")
    p.add_argument("--zset-file", help="path to a JSON spec")
    p.add_argument("--theorem", required=True,
                   help="PropCoset | ThmFAvoids | ThmQ | ThmSingleCoset | ThmCMinusC")
    add_common(p)
    p.set_defaults(func=_cmd_zcheck)

    p = sub.add_parser("show", help="list window membership of a structured integer set")
    p.add_argument("--zset", help="inline JSON spec")
    p.add_argument("--zset-file", help="path to a JSON spec")
    p.add_argument("--window", type=int, default=30, help="list integers in [-W, W]")
    p.set_defaults(func=_cmd_show)

    p = sub.add_parser("family", help="generate and check a structured family member")
    fam = p.add_subparsers(dest="family", required=True)
    pr = fam.add_parser("robust", help="prime-modulus family member")
    pr.add_argument("--p", type=int, required=True)
    pr.add_argument("--a", type=int, required=True)
    pr.add_argument("--residues", required=True, help="JSON list, e.g. [1,2,3,4,5]")
    add_common(pr)
    pr.set_defaults(func=_cmd_family)
    pm = fam.add_parser("remark", help="even-classes family member with removed residues")
    pm.add_argument("--n", type=int, required=True)
    pm.add_argument("--removed", required=True, help="JSON list, e.g. [1,2]")
    add_common(pm)
    pm.set_defaults(func=_cmd_family)

    p = sub.add_parser("reproduce", help="run the built-in catalog of worked examples")
    p.add_argument("--item", default=None)
    add_common(p)
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("sweep", help="run an exhaustive cross-validation suite")
    p.add_argument("--suite", required=True, choices=["fini", "soundness", "identities", "robust", "remark"])
    add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
