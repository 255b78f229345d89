"""Command-line entry point: ``dualpolar {rho,blocks,present,verify}``.

Exit status is 0 when the report status is pass (or not-applicable for
``present``), 1 on a mathematical failure, 2 on bad input and 3 when a
resource cap stopped a sweep.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import sys

import numpy as np

from . import modular, presentations, verify
from .algebra import AlgebraMap, homomorphism_defect
from .qnum import check_prime
from .scheme import SchemeFamily, SchemeParams, structure_tensor

EXIT = {"pass": 0, "not-applicable": 0, "fail": 1, "resource-cap": 3}


def _params(args) -> SchemeParams:
    return SchemeParams(SchemeFamily.parse(args.family), args.d, args.b)


def rho_report(params: SchemeParams, mod: int = None) -> dict:
    rho = structure_tensor(params).rho
    if mod is not None:
        check_prime(mod)
    d = params.d
    entries = []
    for s in range(d + 1):
        for t in range(d + 1):
            for u in range(min(s, t) + 1):
                v = int(rho[s, t, u])
                entries.append([s, t, u, v % mod if mod else v])
    return {
        "command": "rho",
        "params": {"family": params.family.value, "d": d, "b": params.b, "mod": mod},
        "status": "pass",
        "result": {"entries": entries},
        "witness": None,
    }


def tensor_from_report(report: dict) -> np.ndarray:
    """Rebuild the [s, t, u] object array from a ``rho`` JSON report."""
    d = report["params"]["d"]
    arr = np.zeros((d + 1, d + 1, d + 1), dtype=object)
    for s, t, u, v in report["result"]["entries"]:
        arr[s, t, u] = v
    return arr


def blocks_report(params: SchemeParams, p: int) -> dict:
    rep = modular.locality_report(params, p)
    closed = rep.closed_form_verdict
    agree = closed is None or closed == rep.is_local_by_count
    if params.b % p == 0:
        agree = rep.k_blocks >= 2
    return {
        "command": "blocks",
        "params": {"family": params.family.value, "d": params.d, "b": params.b, "p": p},
        "status": "pass" if agree else "fail",
        "result": {
            "k_blocks": rep.k_blocks,
            "contributing_indices": rep.contributing_indices,
            "local": rep.is_local_by_count,
            "closed_form_local": closed,
        },
        "witness": None if agree else {
            "k_blocks": rep.k_blocks, "closed_form_local": closed,
        },
    }


def _label(x) -> str:
    return " (x) ".join(map(_label, x)) if isinstance(x, tuple) else str(x)


def _map_rows(f: AlgebraMap) -> list:
    rows = []
    for i, label in enumerate(f.source.labels):
        col = f.matrix[:, i]
        rows.append({
            "source": _label(label),
            "image": {_label(f.target.labels[j]): int(col[j]) for j in np.nonzero(col)[0]},
        })
    return rows


def _swap_source(f: AlgebraMap, source) -> AlgebraMap:
    return AlgebraMap(source, f.target, f.matrix)


def present_report(params: SchemeParams, p: int) -> dict:
    check_prime(p)
    head = {
        "command": "present",
        "params": {"family": params.family.value, "d": params.d, "b": params.b, "p": p},
    }
    k = modular.k_blocks(params, p)
    if k != 1:
        return {**head, "status": "not-applicable", "result": {"k_blocks": k},
                "witness": None}
    fam = params.family
    d = params.d
    table = modular.scheme_table(params, p)
    if p == 2 or fam.hermitian or d == 1:
        f = presentations.weighted_ring_map(params, p)
        name = f"P/W_{d}"
        direction = "presentation -> algebra"
    elif fam in (SchemeFamily.C, SchemeFamily.B):
        dp = (d - 1) // 2
        f = _swap_source(presentations.theorem2_presentation_map(dp, params.b, p), table)
        name = f"P/W_{dp} (x) P/W_1"
        direction = "algebra -> presentation"
    else:
        dp = d // 2
        f = _swap_source(presentations.d_quotient_map(dp, params.b, p), table)
        name = f"(P/W_{dp} (x) P/W_1)/(Y_{dp} (x) Y_1)"
        direction = "algebra -> presentation"
    bad = homomorphism_defect(f)
    bijective = f.is_bijective()
    ok = bad is None and bijective
    return {
        **head,
        "status": "pass" if ok else "fail",
        "result": {
            "k_blocks": k,
            "presentation": name,
            "direction": direction,
            "map": _map_rows(f),
            "homomorphism": bad is None,
            "bijective": bijective,
        },
        "witness": None if ok else verify._jsonable(bad) or {"rank": f.rank()},
    }


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(report, out, indent=2)
        out.write("\n")
        return
    if report["command"] == "rho":
        rows = report["result"]["entries"]
        if fmt == "csv":
            w = csv.writer(out)
            w.writerow(["s", "t", "u", "rho"])
            w.writerows(rows)
        else:
            for s, t, u, v in rows:
                out.write(f"rho[{s},{t},{u}] = {v}\n")
        return
    if report["command"] == "verify" or "suite" in report:
        out.write(f"suite {report['suite']}: {report['status']} {report['counts']}\n")
        for r in report["instances"]:
            if r["status"] != "pass":
                out.write(f"  {r['status']:>14}  {r['instance']}  {json.dumps(r['witness'])}\n")
        return
    if fmt == "csv":
        w = csv.writer(out)
        for k, v in report["result"].items():
            if k != "map":
                w.writerow([k, json.dumps(v)])
        return
    out.write(f"{report['command']} {report['params']}: {report['status']}\n")
    for k, v in report["result"].items():
        if k == "map":
            for row in v:
                img = " + ".join(f"{c}*{lbl}" for lbl, c in row["image"].items()) or "0"
                out.write(f"  {row['source']} -> {img}\n")
        else:
            out.write(f"  {k}: {v}\n")


def _int_tuple(text: str) -> tuple:
    return tuple(int(x) for x in text.split(",") if x)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dualpolar", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    fams = [f.value for f in SchemeFamily]

    def scheme_args(sp):
        sp.add_argument("family", choices=fams)
        sp.add_argument("d", type=int)
        sp.add_argument("b", type=int, help="q, or r for the Hermitian families")

    def fmt_arg(sp, default):
        sp.add_argument("--format", choices=("json", "csv", "table"), default=default)

    sp = sub.add_parser("rho", help="structure constants of the Riemann basis")
    scheme_args(sp)
    sp.add_argument("--mod", type=int, default=None)
    fmt_arg(sp, "table")

    sp = sub.add_parser("blocks", help="block count and locality in characteristic p")
    scheme_args(sp)
    sp.add_argument("p", type=int)
    fmt_arg(sp, "table")

    sp = sub.add_parser("present", help="polynomial presentation of a local algebra")
    scheme_args(sp)
    sp.add_argument("p", type=int)
    fmt_arg(sp, "table")

    sp = sub.add_parser("verify", help="run a verification sweep")
    sp.add_argument("suite", choices=sorted(verify.SUITES))
    sp.add_argument("--p", type=_int_tuple, default=None, help="comma-separated primes")
    sp.add_argument("--dmax", type=int, default=None)
    sp.add_argument("--dmin", type=int, default=None)
    sp.add_argument("--bmax", type=int, default=None)
    sp.add_argument("--bases", type=_int_tuple, default=None)
    sp.add_argument("--cap", type=int, default=None, help="oracle point cap")
    sp.add_argument("--n", type=int, default=None, help="iso-cond sample size")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    fmt_arg(sp, "json")
    return ap


_BOUND_NAMES = {
    "p": "primes", "dmax": "dmax", "dmin": "dmin", "bmax": "bmax",
    "bases": "bases", "cap": "cap", "n": "n", "seed": "seed",
}


def _suite_bounds(args) -> dict:
    accepted = inspect.signature(verify.SUITES[args.suite]).parameters
    bounds = {}
    for flag, name in _BOUND_NAMES.items():
        val = getattr(args, flag)
        if val is None:
            continue
        if name not in accepted:
            raise ValueError(f"suite {args.suite!r} does not take --{flag}")
        bounds[name] = val
    return bounds


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "rho":
            report = rho_report(_params(args), args.mod)
        elif args.command == "blocks":
            report = blocks_report(_params(args), args.p)
        elif args.command == "present":
            report = present_report(_params(args), args.p)
        else:
            report = verify.run_suite(args.suite, jobs=args.jobs, **_suite_bounds(args))
            report = {"command": "verify", **report}
    except ValueError as exc:
        print(f"dualpolar: error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.format, out)
    return EXIT[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
