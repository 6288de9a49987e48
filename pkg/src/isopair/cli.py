"""Batch command-line interface.

Subcommands: invariants | classify | decompose | equivalent | gen | selfcheck.
Exit codes are stable across commands: 0 success (or "equivalent"),
1 not-equivalent / failed selfcheck, 2 malformed or invalid input.

With several input files the reports are written next to the inputs
(`<input>.report.json` or `.report.txt`), optionally in parallel with
--jobs; a single input reports to standard output.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from isopair.classify import (
    BLOCK_DIMS,
    CheckResult,
    MultiplicityVector,
    conjugated_model,
    elementary_decompose,
    invariants,
    multiplicities,
    multiplicity_matrix,
    multiplicity_matrix_inverse,
    normal_form,
    pair_from_multiplicities,
    random_pair,
    verify_decomposition,
)
from isopair.instances import ClassificationReport, DocumentError, InstanceDocument
from isopair.linalg import Matrix
from isopair.presymplectic import is_presymplectomorphism

EXIT_OK = 0
EXIT_DIFFER = 1
EXIT_INPUT = 2

DEFAULT_SELFCHECK_SEED = "selfcheck-2015"


def _load_document(path: str, expected_mode: str | None) -> InstanceDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: cannot read input ({exc})") from exc
    try:
        doc = InstanceDocument.from_json_text(text)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from exc
    if expected_mode is not None and doc.mode != expected_mode:
        raise DocumentError(
            f"{path}: document mode {doc.mode!r} does not match --mode {expected_mode!r}")
    return doc


def _report_for(command: str, doc: InstanceDocument, *, witness: bool,
                trace: bool) -> ClassificationReport:
    pair = doc.classified_pair()
    k = invariants(pair)
    if command == "invariants":
        return ClassificationReport(k=k.entries)
    if command == "classify":
        if witness:
            w = normal_form(pair)
            n = w.multiplicities
            checks = (
                CheckResult("witness is a presymplectomorphism",
                            is_presymplectomorphism(w.phi, pair.space, w.model.space)),
                CheckResult("witness maps A onto the model subspace",
                            w.phi.apply_subspace(pair.a) == w.model.a),
                CheckResult("witness maps B onto the model subspace",
                            w.phi.apply_subspace(pair.b) == w.model.b),
            )
            return ClassificationReport(
                k=k.entries, n=n.entries,
                summand_dims=tuple(n[i] * BLOCK_DIMS[i] for i in range(10)),
                witness=w.phi, verification=checks)
        n = multiplicities(pair)
        return ClassificationReport(
            k=k.entries, n=n.entries,
            summand_dims=tuple(n[i] * BLOCK_DIMS[i] for i in range(10)))
    if command == "decompose":
        decomp = elementary_decompose(pair)
        verification = verify_decomposition(pair, decomp)
        n = decomp.multiplicities()
        return ClassificationReport(
            k=k.entries, n=n.entries, summand_dims=decomp.summand_dims(),
            summands=tuple(s.subspace.basis.entries for s in decomp.summands),
            trace=tuple((label, sub.basis.entries) for label, sub in decomp.trace)
            if trace else None,
            verification=verification.checks)
    raise AssertionError(f"unknown command {command}")


def _render(report: ClassificationReport, fmt: str) -> str:
    return report.to_json_text() if fmt == "structured" else report.to_text()


def _process_one(task: tuple) -> tuple[str, str | None, str | None]:
    """Worker for batch processing: (path, report text, error message)."""
    path, command, mode, fmt, witness, trace = task
    try:
        doc = _load_document(path, mode)
        report = _report_for(command, doc, witness=witness, trace=trace)
        return path, _render(report, fmt), None
    except (ValueError, RuntimeError) as exc:
        return path, None, str(exc)


def _run_report_command(command: str, args: argparse.Namespace) -> int:
    tasks = [(path, command, args.mode, args.format,
              getattr(args, "witness", False), getattr(args, "trace", False))
             for path in args.inputs]
    if len(tasks) == 1:
        path, text, err = _process_one(tasks[0])
        if err is not None:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_INPUT
        sys.stdout.write(text)
        return EXIT_OK

    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_process_one, tasks))
    else:
        results = [_process_one(t) for t in tasks]
    status = EXIT_OK
    ext = "json" if args.format == "structured" else "txt"
    for path, text, err in results:
        if err is not None:
            print(f"error: {err}", file=sys.stderr)
            status = EXIT_INPUT
        else:
            out = Path(f"{path}.report.{ext}")
            out.write_text(text, encoding="utf-8")
            print(f"{path} -> {out}")
    return status


def _cmd_equivalent(args: argparse.Namespace) -> int:
    try:
        docs = [_load_document(p, args.mode) for p in (args.input1, args.input2)]
        pairs = [d.classified_pair() for d in docs]
        vectors = [multiplicities(p).entries for p in pairs]
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    same = vectors[0] == vectors[1]
    if args.format == "structured":
        from isopair.instances import _render_json
        sys.stdout.write(_render_json(
            {"equivalent": same, "n1": list(vectors[0]), "n2": list(vectors[1])}) + "\n")
    else:
        if same:
            print("equivalent")
        else:
            print("not equivalent")
            print(f"n1 = {vectors[0]}")
            print(f"n2 = {vectors[1]}")
    return EXIT_OK if same else EXIT_DIFFER


def _cmd_gen(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else 0
    try:
        if args.multiplicities is not None:
            parts = [p.strip() for p in args.multiplicities.split(",")]
            if len(parts) != 10 or not all(p.lstrip("-").isdigit() for p in parts):
                raise ValueError(
                    "--multiplicities must be ten comma-separated integers")
            n = MultiplicityVector(tuple(int(p) for p in parts))
            if args.dim is not None and n.total_dimension() != args.dim:
                raise ValueError(
                    f"--dim {args.dim} does not match the model dimension "
                    f"{n.total_dimension()} of --multiplicities")
            if args.rank is not None and n.form_rank() != args.rank:
                raise ValueError(
                    f"--rank {args.rank} does not match the model form rank "
                    f"{n.form_rank()} of --multiplicities")
            pair = conjugated_model(n, seed)
        else:
            if args.dim is None:
                raise ValueError("either --dim or --multiplicities is required")
            if args.rank is not None:
                rank = args.rank
            else:
                import random as _random
                rank = 2 * _random.Random(f"rank:{seed}:{args.dim}").randint(
                    0, args.dim // 2)
            pair, _ = random_pair(args.dim, rank, seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    mode = args.mode or "presymplectic"
    if mode == "poisson":
        doc = InstanceDocument.from_pair_dualized(pair)
    else:
        doc = InstanceDocument.from_pair(pair)
    sys.stdout.write(doc.to_json_text())
    return EXIT_OK


# -- selfcheck -------------------------------------------------------------------


def _check_matrix_columns() -> str | None:
    m = multiplicity_matrix()
    for t in range(1, 11):
        pair = pair_from_multiplicities(MultiplicityVector.unit(t))
        column = tuple(int(m.entries[r][t - 1]) for r in range(10))
        if invariants(pair).entries != column:
            return (f"type-{t} model has invariants {invariants(pair).entries}, "
                    f"matrix column is {column}")
    return None


def _check_matrix_determinant() -> str | None:
    det = multiplicity_matrix().det()
    return None if det in (1, -1) else f"determinant is {det}"


def _check_matrix_inverse() -> str | None:
    m = multiplicity_matrix()
    minv = multiplicity_matrix_inverse()
    if any(x.denominator != 1 for row in minv.entries for x in row):
        return "inverse is not integral"
    if m @ minv != Matrix.identity(10):
        return "product with the inverse is not the identity"
    return None


def _check_model_multiplicities() -> str | None:
    for t in range(1, 11):
        pair = pair_from_multiplicities(MultiplicityVector.unit(t))
        if multiplicities(pair).entries != MultiplicityVector.unit(t).entries:
            return f"type-{t} model does not classify to the unit vector"
    return None


def _check_seeded_batch(seed: str) -> str | None:
    for dim in range(0, 9):
        for rank in range(0, dim + 1, 4):
            pair, truth = random_pair(dim, rank, seed=f"{seed}:{dim}:{rank}")
            if multiplicities(pair).entries != truth.entries:
                return f"round-trip failed at dim={dim} rank={rank}"
            decomp = elementary_decompose(pair)
            report = verify_decomposition(pair, decomp)
            if not report.passed:
                return (f"decomposition verification failed at dim={dim} "
                        f"rank={rank}: {[c.name for c in report.failures]}")
            w = normal_form(pair)
            if w.multiplicities.entries != truth.entries:
                return f"witness multiplicities differ at dim={dim} rank={rank}"
    return None


def _cmd_selfcheck(args: argparse.Namespace) -> int:
    seed = str(args.seed) if args.seed is not None else DEFAULT_SELFCHECK_SEED
    checks = (
        ("matrix M column check", _check_matrix_columns),
        ("matrix M determinant", _check_matrix_determinant),
        ("matrix M inverse", _check_matrix_inverse),
        ("canonical model multiplicities", _check_model_multiplicities),
        ("seeded round-trip batch", lambda: _check_seeded_batch(seed)),
    )
    status = EXIT_OK
    for name, fn in checks:
        try:
            problem = fn()
        except Exception as exc:  # a crashed check is a failed check
            problem = f"raised {type(exc).__name__}: {exc}"
        if problem is None:
            print(f"ok   {name}")
        else:
            print(f"FAIL {name}: {problem}")
            if status == EXIT_OK:
                status = EXIT_DIFFER
            break
    return status


# -- argument parsing ---------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("text", "structured"), default="text",
                        help="human-oriented text or canonical JSON output")
    shared.add_argument("--mode", choices=("presymplectic", "poisson"), default=None,
                        help="expected document mode (for gen: the emitted mode)")
    shared.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="process this many input files concurrently")

    parser = argparse.ArgumentParser(
        prog="isopair",
        description="classify pairs of (co)isotropic subspaces exactly")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[shared],
                       help="compute the ten dimension invariants k")
    p.add_argument("inputs", nargs="+", metavar="INSTANCE")

    p = sub.add_parser("classify", parents=[shared],
                       help="compute k, the multiplicities n and summand dimensions")
    p.add_argument("inputs", nargs="+", metavar="INSTANCE")
    p.add_argument("--witness", action="store_true",
                   help="also emit the normal-form change of basis")

    p = sub.add_parser("decompose", parents=[shared],
                       help="emit the ten orthogonal summand bases")
    p.add_argument("inputs", nargs="+", metavar="INSTANCE")
    p.add_argument("--trace", action="store_true",
                   help="also emit every intermediate subspace of the construction")

    p = sub.add_parser("equivalent", parents=[shared],
                       help="exit 0 iff the two instances are equivalent")
    p.add_argument("input1", metavar="INSTANCE1")
    p.add_argument("input2", metavar="INSTANCE2")

    p = sub.add_parser("gen", parents=[shared],
                       help="emit a seeded random instance document")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--seed", default=None)
    p.add_argument("--multiplicities", default=None, metavar="n1,...,n10",
                   help="generate a conjugated model with this ground truth")

    p = sub.add_parser("selfcheck", parents=[shared],
                       help="run the built-in audit; exit 0 on full pass")
    p.add_argument("--seed", default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command in ("invariants", "classify", "decompose"):
        return _run_report_command(args.command, args)
    if args.command == "equivalent":
        return _cmd_equivalent(args)
    if args.command == "gen":
        return _cmd_gen(args)
    return _cmd_selfcheck(args)


if __name__ == "__main__":
    sys.exit(main())
