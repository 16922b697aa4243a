"""Command-line interface: validate, build, demo.

Exit codes: 0 success, 1 identity or validation failure, 2 input error,
3 unmet precondition (the scalar r is not a unit but a reduced artifact
was requested).  All artifacts are JSON files written atomically under the
output directory.
"""

import argparse
import json
import os
import sys
import time

from . import bundles
from .dga import validate_dga
from .errors import (
    BundleFormatError,
    CharTwoNeedsTables,
    DgmfError,
    RNotUnit,
    SolverGaveUp,
)
from .factorization import (
    build_cone_and_rho,
    build_mf1,
    build_mf2,
    build_resolution,
    verify_mf,
)
from .groebner import check_regular_sequence
from .instances import BUILDERS
from .linkage import run_pipeline
from .solver import SolverConfig, complete_multiplication

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _matrix_payload(name, m):
    return {
        "name": name,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)],
    }


class Reporter:
    """Collects stages, identities, and artifacts into a stable report."""

    def __init__(self, command, out_dir):
        self.command = command
        self.out_dir = out_dir
        self.start = time.time()
        self.report = {
            "command": command,
            "bundle": None,
            "stages": [],
            "identities": [],
            "artifacts": [],
            "timings": {},
        }

    def stage(self, name, status, seconds):
        self.report["stages"].append(
            {"name": name, "status": status, "seconds": round(seconds, 3)}
        )

    def identities(self, results):
        for r in results:
            self.report["identities"].append(
                {"name": r.name, "ok": bool(r.ok), "detail": r.detail}
            )

    def artifact(self, filename, payload):
        path = os.path.join(self.out_dir, filename)
        bundles.atomic_write(path, json.dumps(payload, indent=2) + "\n")
        self.report["artifacts"].append(path)
        return path

    def finish(self):
        self.report["timings"]["total_seconds"] = round(time.time() - self.start, 3)
        path = os.path.join(self.out_dir, "report.json")
        bundles.atomic_write(path, json.dumps(self.report, indent=2) + "\n")
        return path


def _run_stage(reporter, name, fn):
    t0 = time.time()
    try:
        value = fn()
    except DgmfError:
        reporter.stage(name, "failed", time.time() - t0)
        raise
    reporter.stage(name, "ok", time.time() - t0)
    return value


def cmd_validate(args):
    reporter = Reporter("validate", args.out)
    try:
        inst = bundles.load_path(args.bundle)
    except BundleFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reporter.report["bundle"] = inst.name
    t0 = time.time()
    report = validate_dga(inst.bundle, sequence=inst.sequence)
    reporter.stage("validate_dga", "ok" if report.ok else "failed", time.time() - t0)
    reporter.identities(report.checks)
    ok = report.ok
    if args.sequence_check:
        t0 = time.time()
        regular = check_regular_sequence(inst.sequence)
        reporter.stage(
            "regular_sequence", "ok" if regular else "failed", time.time() - t0
        )
        ok = ok and regular
    path = reporter.finish()
    for c in report.failures:
        print(repr(c), file=sys.stderr)
    print(f"report: {path}")
    return EXIT_OK if ok else EXIT_FAIL


def _build(inst, args, reporter):
    reporter.report["bundle"] = inst.name

    def validated():
        report = validate_dga(inst.bundle, sequence=inst.sequence)
        reporter.identities(report.checks)
        if not report.ok:
            raise DgmfError(
                "bundle validation failed: "
                + "; ".join(repr(c) for c in report.failures)
            )
        return report

    _run_stage(reporter, "validate_dga", validated)
    state = _run_stage(
        reporter,
        "pipeline",
        lambda: run_pipeline(inst.bundle, inst.sequence, inst.f),
    )
    reporter.identities(state.identity_results)
    reporter.artifact("X.json", _matrix_payload("X", state.X))
    reporter.artifact("Xdag.json", _matrix_payload("Xdag", state.Xdag))

    _, _, cone_results = _run_stage(
        reporter, "cone", lambda: build_cone_and_rho(state)
    )
    reporter.identities(cone_results)

    if args.mf1:
        mf1 = _run_stage(reporter, "mf1", lambda: build_mf1(state))
        results = verify_mf(mf1)
        reporter.identities(results)
        if any(not r.ok for r in results):
            raise DgmfError("mf1 verification failed")
        reporter.artifact(
            "mf1.json",
            {
                "f": str(state.f),
                "even": _matrix_payload("mf1_even", mf1.even),
                "odd": _matrix_payload("mf1_odd", mf1.odd),
            },
        )
    if args.mf2:
        mf2 = _run_stage(reporter, "mf2", lambda: build_mf2(state))
        results = verify_mf(mf2)
        reporter.identities(results)
        if any(not r.ok for r in results):
            raise DgmfError("mf2 verification failed")
        reporter.artifact(
            "mf2.json",
            {
                "f": str(state.f),
                "even": _matrix_payload("mf2_even", mf2.even),
                "odd": _matrix_payload("mf2_odd", mf2.odd),
            },
        )
    if args.resolution:
        variant = args.resolution
        res = _run_stage(
            reporter,
            f"resolution_{variant}",
            lambda: build_resolution(state, variant=variant, check_len=args.check_len),
        )
        results = res.verify(args.check_len)
        reporter.identities(results)
        if any(not r.ok for r in results):
            raise DgmfError("resolution verification failed")
        reporter.artifact(
            f"resolution_{variant}.json",
            {
                "f": str(state.f),
                "ranks_head": res.ranks_head,
                "head": [
                    _matrix_payload(f"d{i+1}", m) for i, m in enumerate(res.head)
                ],
                "tail_pair": [
                    _matrix_payload("tail_even", res.tail_pair[0]),
                    _matrix_payload("tail_odd", res.tail_pair[1]),
                ],
            },
        )
    bad = [e for e in reporter.report["identities"] if not e["ok"]]
    if bad:
        raise DgmfError("identity failures: " + ", ".join(e["name"] for e in bad))


def cmd_build(args):
    reporter = Reporter("build", args.out)
    try:
        if args.solve_mult:
            ring, sequence, f, cx, split, label = bundles.load_path(
                args.bundle, differentials_only=True
            )
        else:
            inst = bundles.load_path(args.bundle)
    except BundleFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        if args.solve_mult:
            seed = int(os.environ.get("DGMF_SEED", "0"))
            cfg = SolverConfig(seed=seed)

            def solved():
                from .instances import Instance

                bundle = complete_multiplication(
                    cx, ring.one, cfg, split=split, label=label
                )
                return Instance(label, ring, sequence, f, bundle)

            inst = _run_stage(reporter, "solve_mult", solved)
        _build(inst, args, reporter)
    except RNotUnit as exc:
        reporter.finish()
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (SolverGaveUp, CharTwoNeedsTables, DgmfError) as exc:
        reporter.finish()
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    path = reporter.finish()
    print(f"report: {path}")
    return EXIT_OK


DEMO_FLAGS = {
    "E1": {"mf1": True, "mf2": True, "resolution": "acute"},
    "E2": {"mf1": True, "mf2": False, "resolution": "N"},
    "E3": {"mf1": True, "mf2": True, "resolution": "N"},
}


def cmd_demo(args):
    builder = BUILDERS.get(args.name)
    if builder is None:
        print(f"input error: unknown demo {args.name!r}", file=sys.stderr)
        return EXIT_INPUT
    inst = builder()
    bundle_path = os.path.join(args.out, f"{args.name}.bundle.json")
    bundles.save_path(bundle_path, inst)
    print(f"bundle: {bundle_path}")
    flags = DEMO_FLAGS[args.name]
    build_args = argparse.Namespace(
        bundle=bundle_path,
        out=args.out,
        mf1=flags["mf1"],
        mf2=flags["mf2"],
        resolution=flags["resolution"],
        check_len=10,
        solve_mult=False,
    )
    return cmd_build(build_args)


def make_parser():
    parser = argparse.ArgumentParser(
        prog="dgmf",
        description=(
            "Exact matrix factorizations and periodic resolutions from "
            "self-dual algebra bundles."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a bundle file")
    p.add_argument("bundle")
    p.add_argument("--sequence-check", action="store_true")
    p.add_argument("--out", default="./out")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="run the pipeline and write artifacts")
    p.add_argument("bundle")
    p.add_argument("--mf1", action="store_true")
    p.add_argument("--mf2", action="store_true")
    p.add_argument("--resolution", choices=["N", "acute"])
    p.add_argument("--check-len", type=int, default=10)
    p.add_argument("--solve-mult", action="store_true")
    p.add_argument("--out", default="./out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("demo", help="run a shipped example end to end")
    p.add_argument("name", choices=["E1", "E2", "E3"])
    p.add_argument("--out", default="./out")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
