"""Command-line front end.

Exit status: 0 on success, 1 when a verification disagrees, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds, families, lattice, transforms, verifier
from .lattice import EXACT, FLOAT, CapaxError, GroundSet, SetFunction

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class DocumentError(CapaxError, ValueError):
    """A malformed set-function document; the message names the field."""


# --- documents -------------------------------------------------------------


def _parse_rational(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise DocumentError(f"{where}: rational values must be 'p/q' strings, got {raw!r}")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: cannot parse {raw!r} as a rational 'p/q'") from None


def _parse_float(raw, where: str) -> float:
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise DocumentError(f"{where}: float values must be JSON numbers, got {raw!r}")
    return float(raw)


def parse_document(doc) -> SetFunction:
    """Build a set function from a decoded SetFunctionDocument."""
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise DocumentError(f"n: expected an integer, got {n!r}")
    try:
        ground = GroundSet(n)
    except lattice.PreconditionError as exc:
        raise DocumentError(f"n: {exc}") from None
    mode_name = doc.get("scalarMode", "rational")
    if mode_name not in ("rational", "float"):
        raise DocumentError(f"scalarMode: expected 'rational' or 'float', got {mode_name!r}")
    mode = EXACT if mode_name == "rational" else FLOAT
    parse = _parse_rational if mode == EXACT else _parse_float
    encoding = doc.get("encoding", "dense")
    values = doc.get("values")
    if encoding == "dense":
        if not isinstance(values, list):
            raise DocumentError("values: dense encoding needs a JSON array")
        if len(values) != ground.size:
            raise DocumentError(f"values: dense array must have 2^n = {ground.size} entries, got {len(values)}")
        parsed = [parse(v, f"values[{i}]") for i, v in enumerate(values)]
    elif encoding == "sparse":
        if not isinstance(values, dict):
            raise DocumentError("values: sparse encoding needs a JSON object")
        parsed = [0] * ground.size
        seen = set()
        for key, raw in values.items():
            try:
                mask = ground.check_mask(lattice.parse_subset(key))
            except lattice.PreconditionError as exc:
                raise DocumentError(f"values[{key!r}]: {exc}") from None
            if mask in seen:
                raise DocumentError(f"values[{key!r}]: subset given twice")
            seen.add(mask)
            parsed[mask] = parse(raw, f"values[{key!r}]")
    else:
        raise DocumentError(f"encoding: expected 'dense' or 'sparse', got {encoding!r}")
    return SetFunction(ground, parsed, mode)


def to_document(xi: SetFunction) -> dict:
    """Dense document; rationals print as str(Fraction), e.g. '1/2', '-3', '0'."""
    if xi.mode == EXACT:
        values = [str(v) for v in xi.values]
        mode = "rational"
    else:
        values = [float(v) for v in xi.values]
        mode = "float"
    return {"n": xi.n, "encoding": "dense", "scalarMode": mode, "values": values}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def read_document(path: str) -> SetFunction:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DocumentError(f"--in: cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"--in: invalid JSON ({exc})") from None
    return parse_document(doc)


def _emit(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- commands --------------------------------------------------------------

_KINDS = {
    "mobius": (transforms.mobius, "mobius"),
    "zeta": (transforms.zeta, "zeta"),
    "interaction": (transforms.interaction, "interaction"),
    "banzhaf": (transforms.banzhaf, "banzhaf"),
    "inverse-interaction": (transforms.inverse_interaction, "inverse-interaction"),
}


def cmd_transform(args) -> int:
    xi = read_document(args.input)
    fn, oracle_name = _KINDS[args.kind]
    out = fn(xi)
    status = EXIT_OK
    if args.check_naive:
        if xi.n > verifier.ORACLE_CAP:
            raise DocumentError(f"n: --check-naive supports n <= {verifier.ORACLE_CAP}")
        ref = verifier.naive_transform_oracle(oracle_name, xi)
        same = ref == out if xi.mode == EXACT else ref.allclose(out, atol=1e-9)
        if not same:
            print(f"transform {args.kind}: fast kernel disagrees with the naive oracle", file=sys.stderr)
            status = EXIT_MISMATCH
    _emit(dumps(to_document(out)), args.output)
    return status


def cmd_cover(args) -> int:
    xi = read_document(args.input)
    _emit(dumps(to_document(lattice.monotonic_cover(xi))), args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    rows = bounds.bound_table(args.max_a)
    if args.format == "csv":
        text = _csv(["a", "upper", "lower"], rows)
    else:
        text = dumps([{"a": a, "upper": u, "lower": l} for a, u, l in rows])
    _emit(text, args.output)
    return EXIT_OK


def cmd_vertex_table(args) -> int:
    rows = bounds.vertex_mobius_matrix(args.max_n)
    if args.format == "csv":
        width = args.max_n
        header = ["n"] + [f"k{k}" for k in range(width)] + ["max_k", "min_k"]
        body = [
            [r.n, *r.values, *([""] * (width - len(r.values))), r.max_k, "" if r.min_k is None else r.min_k]
            for r in rows
        ]
        text = _csv(header, body)
    else:
        text = dumps([{"n": r.n, "values": list(r.values), "max_k": r.max_k, "min_k": r.min_k} for r in rows])
    _emit(text, args.output)
    return EXIT_OK


def cmd_asymptote(args) -> int:
    rows = []
    for n in range(2, args.max_n + 1):
        b = bounds.bound_spec(n, n)
        rows.append((n, b.upper, -b.lower, bounds.asymptotic_estimate(n)))
    if args.format == "csv":
        text = _csv(["n", "upper", "abs_lower", "estimate"], [(n, u, l, f"{e:.6g}") for n, u, l, e in rows])
    else:
        text = dumps([{"n": n, "upper": u, "abs_lower": l, "estimate": e} for n, u, l, e in rows])
    _emit(text, args.output)
    return EXIT_OK


def _subset_arg(spec: str, n: int, flag: str) -> int:
    try:
        mask = lattice.parse_subset(spec)
        return GroundSet(n).check_mask(mask)
    except lattice.PreconditionError as exc:
        raise DocumentError(f"{flag}: {exc}") from None


_WHICH = {
    "upper": bounds.extremal_upper,
    "lower": bounds.extremal_lower,
    "sym-upper": families.symmetric_extremal_upper,
    "sym-lower": families.symmetric_extremal_lower,
}


def cmd_extremal(args) -> int:
    try:
        GroundSet(args.n)
    except lattice.PreconditionError as exc:
        raise DocumentError(f"--n: {exc}") from None
    A = _subset_arg(args.set, args.n, "--set")
    if A == 0:
        raise DocumentError("--set: must be nonempty")
    _emit(dumps(to_document(_WHICH[args.which](A, args.n))), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    mu = read_document(args.input)
    report = lattice.validate_capacity(mu)
    out = {"capacity": report.as_dict(), "minimal_additivity_order": families.minimal_additivity_order(mu)}
    if args.k_additive is not None:
        if not 1 <= args.k_additive <= mu.n:
            raise DocumentError(f"--k-additive: need 1 <= K <= {mu.n}")
        out["k_additive"] = {"k": args.k_additive, "result": families.is_at_most_k_additive(mu, args.k_additive)}
    if args.partition is not None:
        try:
            part = families.Partition.parse(args.partition, mu.n)
        except lattice.PreconditionError as exc:
            raise DocumentError(f"--partition: {exc}") from None
        out["partition"] = {"blocks": part.as_lists(), "compatible": families.is_p_symmetric_compatible(mu, part)}
    if args.basis:
        if not report.is_capacity:
            raise DocumentError("--basis: input is not a capacity")
        b = families.basis(mu)
        out["basis"] = {"blocks": b.as_lists(), "p": len(b)}
    _emit(dumps(out), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    n = args.n
    if not 1 <= n <= verifier.VERTEX_CAP:
        raise DocumentError(f"--n: vertex enumeration supports 1 <= n <= {verifier.VERTEX_CAP}")
    masks = None
    if args.set is not None:
        A = _subset_arg(args.set, n, "--set")
        if A == 0:
            raise DocumentError("--set: must be nonempty")
        masks = [A]
    vertices = verifier.enumerate_vertices(n)
    reports = verifier.extremize_all(args.target, n, vertices)
    chosen = [reports[A] for A in (masks or sorted(reports))]
    ok = all(r.matches_bounds() for r in chosen)
    _emit(dumps({"n": n, "target": args.target, "vertices": vertices.count, "ok": ok, "results": [r.as_dict() for r in chosen]}), args.output)
    return EXIT_OK if ok else EXIT_MISMATCH


# --- parser ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="capax", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("transform", help="apply a linear transform to a set-function document")
    t.add_argument("--kind", required=True, choices=sorted(_KINDS))
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--out", dest="output")
    t.add_argument("--check-naive", action="store_true", help="compare against the literal-sum oracle")
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("cover", help="monotonic cover of a grounded set function")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--out", dest="output")
    c.set_defaults(func=cmd_cover)

    b = sub.add_parser("bounds", help="table of exact Moebius bounds by |A|")
    b.add_argument("--max-a", type=int, required=True)
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.add_argument("--out", dest="output")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("vertex-table", help="(-1)^k C(n-1,k) for the symmetric vertices, with markers")
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--out", dest="output")
    v.set_defaults(func=cmd_vertex_table)

    a = sub.add_parser("asymptote", help="exact bound next to the large-n estimate")
    a.add_argument("--max-n", type=int, default=24)
    a.add_argument("--format", choices=("json", "csv"), default="csv")
    a.add_argument("--out", dest="output")
    a.set_defaults(func=cmd_asymptote)

    e = sub.add_parser("extremal", help="write a capacity attaining a bound")
    e.add_argument("--set", required=True, help="comma-separated elements, e.g. 1,2,3")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--which", choices=sorted(_WHICH), required=True)
    e.add_argument("--out", dest="output")
    e.set_defaults(func=cmd_extremal)

    k = sub.add_parser("check", help="capacity, k-additivity and indifference checks")
    k.add_argument("--in", dest="input", required=True)
    k.add_argument("--k-additive", type=int)
    k.add_argument("--partition", help="blocks separated by '|', e.g. '1,2|3'")
    k.add_argument("--basis", action="store_true")
    k.add_argument("--out", dest="output")
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("verify", help="exhaustive vertex check of the bounds")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--target", choices=verifier.TRANSFORMS, default="mobius")
    r.add_argument("--set")
    r.add_argument("--out", dest="output")
    r.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors exit 2
        return EXIT_INPUT if exc.code else EXIT_OK
    for name in ("max_a", "max_n"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            print(f"capax: error: --{name.replace('_', '-')} must be >= 1", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (CapaxError, ValueError) as exc:
        print(f"capax: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
