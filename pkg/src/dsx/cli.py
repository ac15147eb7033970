"""Command-line front door: load, validate, construct, verify.

Exit status 0 when all requested verifications pass, 1 on a failed
verification, 2 on malformed input (unknown subcommand, unreadable file,
schema violation).  Reports are deterministic: identical inputs and flags
produce byte-identical reports except for the isolated "timings" section.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import io as dio
from .based import BasedDeltaSet
from .delta import validate as validate_delta
from .based import validate_based
from .dgred import order_tower, reduce_mod_n, uv_identities
from .homology import (bockstein, certify_moore, homology_of, homology_table,
                       homology, is_homology_iso, fp_matrix_is_iso)
from .moore import MooreSystem
from .moves import BudgetExhausted, cone, find_collapse_sequence, \
    fill_horns, mapping_cylinder
from .products import geometric_product, smash
from .delta import SubDeltaSet


class _CliError(Exception):
    def __init__(self, message, status):
        super().__init__(message)
        self.status = status


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dsx",
        description="finite Delta-sets, products, Moore constructions and "
                    "exact chain-level verification")
    ap.add_argument("--format", choices=("text", "structured"),
                    default="text", help="stdout rendering")
    ap.add_argument("--report", metavar="PATH",
                    help="also write the structured report to PATH")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for randomized property-test sampling")
    ap.add_argument("--jobs", type=int, default=1,
                    help="bound on internal parallelism (default 1; the "
                         "current engine is sequential regardless)")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("validate", help="check a Delta-set file")
    p.add_argument("file")

    p = sub.add_parser("product", help="geometric product of two files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out", "-o", required=True)

    p = sub.add_parser("smash", help="smash product of two based files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out", "-o", required=True)

    p = sub.add_parser("cone", help="cone of a Delta-set")
    p.add_argument("file")
    p.add_argument("--out", "-o", required=True)
    p.add_argument("--certificate", metavar="PATH",
                   help="write the collapse certificate")

    p = sub.add_parser("cylinder", help="mapping cylinder of a morphism file")
    p.add_argument("morphism")
    p.add_argument("--out", "-o", required=True)
    p.add_argument("--certificate", metavar="PATH")

    p = sub.add_parser("certify",
                       help="search for an expansion certificate K -> L")
    p.add_argument("sub", help="Delta-set file of the subcomplex")
    p.add_argument("ambient", help="Delta-set file containing it")
    p.add_argument("--budget", type=int, default=100000)
    p.add_argument("--require-pass", action="store_true",
                   help="exit 1 unless a certificate is found")
    p.add_argument("--certificate", metavar="PATH")

    p = sub.add_parser("fill-horns", help="bounded horn filling")
    p.add_argument("file")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--out", "-o", required=True)

    p = sub.add_parser("homology", help="homology table of a file")
    p.add_argument("file")
    p.add_argument("--coeff", choices=("Z", "Q", "Fp"), default="Z")
    p.add_argument("--p", type=int)
    p.add_argument("--reduced", action="store_true")

    p = sub.add_parser("bockstein", help="mod-p Bockstein matrix")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("moore", help="build and certify Moore data")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--power", type=int)
    p.add_argument("--coherence", type=int)
    p.add_argument("--emit", metavar="DIR")

    p = sub.add_parser("dg", help="chain-level reductions and towers")
    dgsub = p.add_subparsers(dest="dg_command")
    q = dgsub.add_parser("reduce", help="mod-n reduction t(X)")
    q.add_argument("file")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--uv-trials", type=int, default=0)
    q = dgsub.add_parser("tower", help="n-order witness tower")
    q.add_argument("file")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    return ap


def _check(report, name, passed, **details):
    entry = {"name": name, "verdict": "PASS" if passed else "FAIL"}
    entry.update(details)
    report["checks"].append(entry)
    return passed


def _digest(data):
    blob = json.dumps(data, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _table(table):
    """Report tables use string keys so JSON round-trips are lossless."""
    return {str(k): v for k, v in table.items()}


def _homology_args(ns):
    if ns.coeff == "Fp":
        if ns.p is None:
            raise _CliError("--coeff Fp needs --p", 2)
        return "F", ns.p
    return ns.coeff, None


def _cmd_validate(ns, report):
    K = dio.read_delta(ns.file)  # loader refuses invalid files
    violations = (validate_based(K) if isinstance(K, BasedDeltaSet)
                  else validate_delta(K))
    report["tables"]["counts"] = list(K.counts())
    return _check(report, "semisimplicial-identity", not violations,
                  violations=violations[:10])


def _cmd_product(ns, report):
    A, B = dio.read_delta(ns.a), dio.read_delta(ns.b)
    if isinstance(A, BasedDeltaSet) or isinstance(B, BasedDeltaSet):
        raise _CliError("product expects unbased files (use smash)", 2)
    P = geometric_product(A, B)
    dio.write_delta(P, ns.out)
    report["tables"]["counts"] = list(P.counts())
    report["outputs"] = {"delta": ns.out}
    euler_ok = P.euler_characteristic() == \
        A.euler_characteristic() * B.euler_characteristic()
    return _check(report, "euler-multiplicativity", euler_ok,
                  chi=P.euler_characteristic())


def _cmd_smash(ns, report):
    A, B = dio.read_delta(ns.a), dio.read_delta(ns.b)
    if not (isinstance(A, BasedDeltaSet) and isinstance(B, BasedDeltaSet)):
        raise _CliError("smash expects based files", 2)
    P = smash(A, B)
    dio.write_delta(P, ns.out)
    report["tables"]["counts"] = list(P.counts())
    report["outputs"] = {"delta": ns.out}
    return _check(report, "smash-valid", not validate_based(P))


def _cmd_cone(ns, report):
    K = dio.read_delta(ns.file)
    if isinstance(K, BasedDeltaSet):
        raise _CliError("cone expects an unbased file", 2)
    CK, incl, cert = cone(K)
    dio.write_delta(CK, ns.out)
    report["outputs"] = {"delta": ns.out}
    report["tables"]["counts"] = list(CK.counts())
    ok = cert.verify() and len(cert) == K.n_cells()
    report["certificates"]["cone"] = _digest(dio.certificate_to_dict(cert))
    if ns.certificate:
        dio.write_certificate(cert, ns.certificate)
    return _check(report, "cone-certificate", ok, moves=len(cert))


def _cmd_cylinder(ns, report):
    f = dio.read_morphism(ns.morphism)
    if isinstance(f.source, BasedDeltaSet):
        raise _CliError("cylinder expects an unbased morphism", 2)
    Mf, g, j, i0, i1, cert = mapping_cylinder(f)
    dio.write_delta(Mf, ns.out)
    report["outputs"] = {"delta": ns.out}
    report["tables"]["counts"] = list(Mf.counts())
    ok = cert.verify()
    report["certificates"]["back-inclusion"] = \
        _digest(dio.certificate_to_dict(cert))
    if ns.certificate:
        dio.write_certificate(cert, ns.certificate)
    return _check(report, "back-inclusion-expansions", ok, moves=len(cert))


def _cmd_certify(ns, report):
    K = dio.read_delta(ns.sub)
    L = dio.read_delta(ns.ambient)
    if isinstance(K, BasedDeltaSet) or isinstance(L, BasedDeltaSet):
        raise _CliError("certify expects unbased files", 2)
    for s in K.dim_of:
        if L.dim_of.get(s) != K.dim_of[s]:
            raise _CliError(f"{s!r} is not a simplex of the ambient file", 2)
    sub = SubDeltaSet(L, list(K.dim_of))
    verdict = "UNKNOWN"
    cert = None
    try:
        cert = find_collapse_sequence(L, sub, budget=ns.budget)
    except BudgetExhausted:
        report["checks"].append({"name": "search", "verdict": "FAIL",
                                 "reason": "budget exhausted"})
    if cert is not None:
        verdict = "CERTIFIED"
        report["certificates"]["expansion"] = \
            _digest(dio.certificate_to_dict(cert))
        if ns.certificate:
            dio.write_certificate(cert, ns.certificate)
        report["tables"]["moves"] = len(cert)
    else:
        hk = _table(homology_table(homology_of(K)))
        hl = _table(homology_table(homology_of(L)))
        if hk == hl:
            verdict = "HOMOLOGY-ISO"
        else:
            verdict = "OBSTRUCTED"
        report["tables"]["homology"] = {"sub": hk, "ambient": hl}
    report["tables"]["verdict"] = verdict
    if ns.require_pass:
        return _check(report, "certified", verdict == "CERTIFIED",
                      verdict=verdict)
    report["checks"].append({"name": "certify", "verdict": "PASS",
                             "result": verdict})
    return True


def _cmd_fill_horns(ns, report):
    K = dio.read_delta(ns.file)
    if isinstance(K, BasedDeltaSet):
        raise _CliError("fill-horns expects an unbased file", 2)
    out, cert = fill_horns(K, ns.max_dim, ns.rounds)
    dio.write_delta(out, ns.out)
    report["outputs"] = {"delta": ns.out}
    report["tables"]["counts"] = list(out.counts())
    report["tables"]["expansions"] = len(cert)
    return _check(report, "fill-horns-certificate", cert.verify())


def _cmd_homology(ns, report):
    K = dio.read_delta(ns.file)
    coeff, p = _homology_args(ns)
    reduced = ns.reduced or isinstance(K, BasedDeltaSet)
    groups = homology_of(K, coeff=coeff, p=p, reduced=reduced)
    report["tables"]["homology"] = _table(homology_table(groups))
    report["checks"].append({"name": "homology", "verdict": "PASS"})
    return True


def _cmd_bockstein(ns, report):
    K = dio.read_delta(ns.file)
    if not isinstance(K, BasedDeltaSet):
        raise _CliError("bockstein expects a based file", 2)
    entry = bockstein(K, ns.p, ns.degree)
    report["tables"]["bockstein"] = {
        "matrix": entry["matrix"],
        "source_dim": entry["source_dim"],
        "target_dim": entry["target_dim"]}
    report["checks"].append({"name": "bockstein", "verdict": "PASS"})
    return True


def _cmd_moore(ns, report):
    sys_ = MooreSystem(ns.p)
    ok = _check(report, "moore-homology", True, table=_table(sys_.table))
    report["tables"]["moore"] = _table(sys_.table)
    emitted = {}
    if ns.emit:
        import os
        os.makedirs(ns.emit, exist_ok=True)
        path = f"{ns.emit}/moore_p{ns.p}.json"
        dio.write_delta(sys_.M, path)
        emitted["M"] = path
    if ns.power:
        P = sys_.power(ns.power)
        passed, table = certify_moore(P, ns.p, 2 * ns.power)
        ok = _check(report, f"symmetric-power-{ns.power}", passed,
                    table=_table(table)) and ok
        report["tables"][f"P{ns.power}"] = _table(table)
        if ns.emit:
            path = f"{ns.emit}/moore_p{ns.p}_power{ns.power}.json"
            dio.write_delta(P, path)
            emitted[f"P{ns.power}"] = path
    if ns.coherence:
        for i in range(2, ns.coherence + 1):
            _, verdict = sys_.coherence_composite(i)
            ok = _check(report, f"coherence-{i}", verdict) and ok
    if emitted:
        report["outputs"] = emitted
    return ok


def _cmd_dg(ns, report):
    if ns.dg_command == "reduce":
        X = dio.read_complex(ns.file)
        red = reduce_mod_n(X, ns.n)
        ok = _check(report, "exterior-invariants", not red.ext.check())
        if ns.uv_trials:
            res = uv_identities(X, X, ns.n, trials=ns.uv_trials, seed=ns.seed)
            ok = _check(report, "uv-identities", res["pass"],
                        trials=res["trials"]) and ok
        report["tables"]["t_ranks"] = [red.complex.rank(k) for k in
                                       range(red.complex.lo,
                                             red.complex.hi + 1)]
        return ok
    if ns.dg_command == "tower":
        X = dio.read_complex(ns.file)
        tower = order_tower(X, ns.n, ns.k)
        ok = _check(report, "tower-invariants", tower.verify(),
                    levels=len(tower.levels))
        report["tables"]["level_ranks"] = [
            [lvl.complex.rank(k) for k in
             range(lvl.complex.lo, lvl.complex.hi + 1)]
            for lvl in tower.levels]
        return ok
    raise _CliError("dg needs a subcommand (reduce | tower)", 2)


_COMMANDS = {
    "validate": _cmd_validate,
    "product": _cmd_product,
    "smash": _cmd_smash,
    "cone": _cmd_cone,
    "cylinder": _cmd_cylinder,
    "certify": _cmd_certify,
    "fill-horns": _cmd_fill_horns,
    "homology": _cmd_homology,
    "bockstein": _cmd_bockstein,
    "moore": _cmd_moore,
    "dg": _cmd_dg,
}


def _render_text(report, stream):
    for check in report["checks"]:
        extras = {k: v for k, v in check.items()
                  if k not in ("name", "verdict")}
        line = f"[{check['verdict']}] {check['name']}"
        if extras:
            line += " " + json.dumps(extras, sort_keys=True, default=str)
        print(line, file=stream)
    for key, table in report.get("tables", {}).items():
        print(f"{key}: {json.dumps(table, sort_keys=True, default=str)}",
              file=stream)


def run(argv, stream=None):
    """Run a command; returns (exit_status, report)."""
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), {"error": "argument parsing"}
    if not ns.command:
        parser.print_help(stream)
        return 2, {"error": "no subcommand"}
    report = {"command": ["dsx"] + list(argv), "checks": [],
              "tables": {}, "certificates": {}, "timings": {}}
    started = time.perf_counter()
    try:
        ok = _COMMANDS[ns.command](ns, report)
        status = 0 if ok else 1
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status, {"error": str(exc)}
    except dio.SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2, {"error": str(exc)}
    report["timings"]["total_s"] = round(time.perf_counter() - started, 6)
    if ns.format == "structured":
        json.dump(report, stream, sort_keys=True, indent=1, default=str)
        stream.write("\n")
    else:
        _render_text(report, stream)
    if ns.report:
        with open(ns.report, "w") as fh:
            json.dump(report, fh, sort_keys=True, indent=1, default=str)
            fh.write("\n")
    return status, report


def main():
    sys.exit(run(sys.argv[1:])[0])


if __name__ == "__main__":
    main()
