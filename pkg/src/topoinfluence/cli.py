"""Command-line frontend.

Six subcommands cover the pipelines: ``influence`` (one dataset, one
radius), ``sweep`` (several radii), ``family`` (closed-form oracle rows
or a seeded random graph), ``identities`` (exact verification of the
combinatorial sums), ``grammar`` (string dataset emission), and
``mask`` (the node-masking experiment).

Every report is wrapped in a versioned envelope that echoes the parsed
configuration, seed included, so any output file identifies the run
that made it.  Identical configurations produce byte-identical output.

Exit codes: 0 success, 2 bad input or parameters, 3 exact-enumeration
size cap, 4 numeric failure (eigensolver breakdown, identity mismatch).
"""

from __future__ import annotations

import argparse
import sys
from itertools import product

from . import __version__
from .engine import DEFAULT_EXACT_CAP, InfluenceResult, compute_influence
from .errors import (
    EigensolverError,
    EmptyLanguageError,
    InputError,
    SizeCapError,
    TopoInfluenceError,
)
from .families import (
    FAMILIES,
    closed_form_entropy,
    closed_form_mu,
    erdos_renyi_graph,
    get_family,
    verify_combinatorial_identities,
)
from .grammars import BUILTIN_INDICES, builtin_grammar, enumerate_strings
from .loaders import (
    FORMATS,
    dump_edges,
    load_edges,
    load_matrix,
    load_strings,
    load_vectors,
    read_text,
)
from .masking import VARIANTS, generate_er_dataset, run_masking_experiment
from .metric_complex import METRICS, build_complex, build_distance_matrix
from .report import make_envelope, render

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_NUMERIC = 4

# Labeling every string of length N enumerates all 2^N of them.
NEG_LENGTH_MAX = 16

_METRIC_FORMAT = {
    "edit": "strings",
    "hamming": "vectors",
    "euclidean": "vectors",
    "precomputed": "matrix",
}


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _sample_rows(result: InfluenceResult) -> list[dict]:
    exact = result.method == "exact"
    rows = []
    for i in range(result.n):
        row = {
            "index": i,
            "label": result.labels[i],
            "s": float(result.shapley[i]),
            "mu": float(result.mu[i]),
        }
        if exact:
            row["s_exact"] = str(result.shapley[i])
            row["mu_exact"] = str(result.mu[i])
        if result.std_error:
            row["std_error"] = result.std_error[i]
        rows.append(row)
    return rows


def _profile_payload(result: InfluenceResult, radius: float | None = None) -> dict:
    payload: dict = {
        "n": result.n,
        "method": result.method,
    }
    if radius is not None:
        payload["radius"] = float(radius)
    if result.method == "sampled":
        payload["permutations"] = result.permutations
    payload["entropy_nats"] = result.entropy
    payload["total_s"] = float(result.total)
    payload["samples"] = _sample_rows(result)
    return payload


def _resolve_input_plan(args) -> tuple[str, str]:
    """(input format, metric); validates that the pair is coherent."""
    metric = args.metric
    fmt = args.input_format
    if fmt == "edges":
        if metric is not None:
            raise InputError(
                "edge-list input is already a graph; --metric does not apply"
            )
        return fmt, ""
    if metric is None and fmt is None:
        metric, fmt = "edit", "strings"
    elif fmt is None:
        fmt = _METRIC_FORMAT[metric]
    elif metric is None:
        by_format = {"strings": "edit", "matrix": "precomputed"}
        if fmt not in by_format:
            raise InputError(
                f"{fmt} input needs an explicit --metric (hamming or euclidean)"
            )
        metric = by_format[fmt]
    if _METRIC_FORMAT[metric] != fmt:
        raise InputError(
            f"--metric {metric} expects {_METRIC_FORMAT[metric]} input, "
            f"not {fmt}"
        )
    return fmt, metric


def _read_input(args) -> str:
    if args.input == "-":
        return sys.stdin.read()
    return read_text(args.input)


def _build_at_radius(text: str, fmt: str, metric: str, radius: float):
    """(complex, labels) for one radius of a distance-bearing input."""
    if fmt == "strings":
        points = load_strings(text)
        matrix = build_distance_matrix(points, metric)
        labels = points.labels
    elif fmt == "vectors":
        points = load_vectors(text)
        matrix = build_distance_matrix(points, metric)
        labels = points.labels
    else:  # matrix
        matrix = load_matrix(text)
        labels = tuple(str(i) for i in range(matrix.n))
    return build_complex(matrix, radius), labels


def _run_engine(args, complex_, labels) -> InfluenceResult:
    mode = "exact" if args.sample is None else "sampled"
    return compute_influence(
        complex_,
        labels=labels,
        mode=mode,
        cap=args.cap,
        permutations=args.sample or 0,
        seed=args.seed,
    )


def _cmd_influence(args) -> int:
    fmt, metric = _resolve_input_plan(args)
    text = _read_input(args)
    if fmt == "edges":
        if args.radius is not None:
            raise InputError("edge-list input has no distances; drop --radius")
        complex_ = load_edges(text)
        labels = tuple(str(i) for i in range(complex_.n))
        radius = None
    else:
        if args.radius is None:
            raise InputError(f"{fmt} input needs --radius")
        complex_, labels = _build_at_radius(text, fmt, metric, args.radius)
        radius = args.radius
    result = _run_engine(args, complex_, labels)
    config = {
        "subcommand": "influence",
        "input": args.input,
        "input_format": fmt,
        "metric": metric or "none",
        "radius": "none" if radius is None else radius,
        "mode": result.method,
        "permutations": result.permutations,
        "seed": args.seed,
        "cap": args.cap,
        "threads": args.threads,
    }
    envelope = make_envelope(
        "profile", __version__, config, _profile_payload(result, radius)
    )
    _write_output(render(envelope, args.format, bits=args.bits), args.output)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    fmt, metric = _resolve_input_plan(args)
    if fmt == "edges":
        raise InputError("sweep needs distances to threshold; edge lists fix one graph")
    text = _read_input(args)
    radii = args.radii
    profiles = []
    for radius in radii:
        complex_, labels = _build_at_radius(text, fmt, metric, radius)
        result = _run_engine(args, complex_, labels)
        profiles.append(_profile_payload(result, radius))
    config = {
        "subcommand": "sweep",
        "input": args.input,
        "input_format": fmt,
        "metric": metric,
        "radii": ",".join(str(r) for r in radii),
        "mode": "exact" if args.sample is None else "sampled",
        "permutations": args.sample or 0,
        "seed": args.seed,
        "cap": args.cap,
        "threads": args.threads,
    }
    envelope = make_envelope(
        "sweep", __version__, config, {"profiles": profiles}
    )
    _write_output(render(envelope, args.format, bits=args.bits), args.output)
    return EXIT_OK


def _cmd_family(args) -> int:
    kind = args.kind.replace("-", "_")
    config = {
        "subcommand": "family",
        "kind": kind,
        "n": args.n,
        "seed": args.seed,
    }
    if kind == "erdos_renyi":
        if args.p is None:
            raise InputError("erdos_renyi needs --p")
        if args.m is not None:
            raise InputError("erdos_renyi takes --n and --p, not --m")
        config["p"] = args.p
        graph = erdos_renyi_graph(args.n, args.p, args.seed)
        if args.emit_edges:
            _write_output(dump_edges(graph, comment=graph.source), args.output)
            return EXIT_OK
        result = compute_influence(graph, mode="exact", cap=args.cap)
        payload = _profile_payload(result)
    else:
        family = get_family(kind)
        if family.arity == 2:
            if args.m is None:
                raise InputError(f"{kind} needs --m for the left side size")
            params = (args.m, args.n)
            config["m"] = args.m
        else:
            if args.m is not None:
                raise InputError(f"{kind} takes only --n")
            params = (args.n,)
        graph = family.build(*params)
        if args.emit_edges:
            _write_output(dump_edges(graph, comment=graph.source), args.output)
            return EXIT_OK
        scores = family.scores(*params)
        mu = closed_form_mu(scores)
        roles = family.roles(*params)
        samples = [
            {
                "index": i,
                "label": roles[i],
                "s": float(scores[i]),
                "mu": float(mu[i]),
                "s_exact": str(scores[i]),
                "mu_exact": str(mu[i]),
            }
            for i in range(len(scores))
        ]
        role_counts = []
        for role in dict.fromkeys(roles):
            role_counts.append([role, roles.count(role)])
        payload = {
            "n": len(scores),
            "method": "closed_form",
            "entropy_nats": closed_form_entropy(scores),
            "total_s": float(sum(scores)),
            "roles": role_counts,
            "samples": samples,
        }
    envelope = make_envelope("family", __version__, config, payload)
    _write_output(render(envelope, args.format, bits=args.bits), args.output)
    return EXIT_OK


def _cmd_identities(args) -> int:
    report = verify_combinatorial_identities(args.n_max)
    results = [
        {
            "identity": name,
            "checked": report.checked[name],
            "mismatches": sum(1 for m in report.mismatches if m[0] == name),
        }
        for name in ("star", "bipartite", "wheel")
    ]
    payload = {
        "n_max": report.n_max,
        "ok": report.ok,
        "results": results,
        "mismatch_detail": [
            {
                "identity": name,
                "params": list(params),
                "lhs": str(lhs),
                "rhs": str(rhs),
            }
            for name, params, lhs, rhs in report.mismatches
        ],
    }
    config = {"subcommand": "identities", "n_max": args.n_max, "seed": 0}
    envelope = make_envelope("identities", __version__, config, payload)
    _write_output(render(envelope, args.format, bits=args.bits), args.output)
    return EXIT_OK if report.ok else EXIT_NUMERIC


def _cmd_grammar(args) -> int:
    grammar = builtin_grammar(args.g)
    if args.len is not None:
        lengths = [args.len]
    else:
        lo, hi = args.range
        lengths = list(range(lo, hi + 1))
    lines: list[str] = []
    for length in lengths:
        accepted = enumerate_strings(grammar, length)
        if args.neg:
            if length > NEG_LENGTH_MAX:
                raise InputError(
                    f"--neg labels all 2^{length} strings; max length "
                    f"{NEG_LENGTH_MAX}"
                )
            good = set(accepted)
            lines.append(
                f"# {grammar.name} length {length}: {len(accepted)} of "
                f"{2 ** length} accepted"
            )
            for bits in product("01", repeat=length):
                s = "".join(bits)
                lines.append(f"{s}\t{1 if s in good else 0}")
        else:
            if not accepted:
                lines.append(f"# {grammar.name}: no strings of length {length}")
                continue
            lines.append(f"# {grammar.name} length {length}: {len(accepted)} strings")
            lines.extend(accepted)
    _write_output("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_mask(args) -> int:
    n_lo, n_hi = args.n_range
    p_lo, p_hi = args.p_range
    dataset = generate_er_dataset(
        args.count, n_range=(n_lo, n_hi), p_range=(p_lo, p_hi), seed=args.seed
    )
    report = run_masking_experiment(dataset, j_values=tuple(args.j), seed=args.seed)
    rates = [
        {"j": j, "variant": variant, "rate": report.rate(j, variant)}
        for j in report.j_values
        for variant in VARIANTS
    ]
    payload = {
        "graph_count": report.graph_count,
        "j_values": list(report.j_values),
        "rates": rates,
        "rows": [
            {
                "graph": r.graph,
                "n": r.n,
                "j": r.j,
                "variant": r.variant,
                "label_before": r.label_before,
                "label_after": r.label_after,
                "flipped": r.flipped,
            }
            for r in report.rows
        ],
    }
    config = {
        "subcommand": "mask",
        "count": args.count,
        "n_range": f"{n_lo}:{n_hi}",
        "p_range": f"{p_lo}:{p_hi}",
        "j": ",".join(str(j) for j in args.j),
        "seed": args.seed,
        "threads": args.threads,
    }
    envelope = make_envelope("masking", __version__, config, payload)
    _write_output(render(envelope, args.format, bits=args.bits), args.output)
    return EXIT_OK


def _int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")


def _float_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated reals, got {text!r}"
        )


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("json", "csv", "table"), default="table",
        help="report serialization (default: table)",
    )
    parser.add_argument(
        "--output", metavar="PATH", help="write the report here instead of stdout"
    )
    parser.add_argument(
        "--bits", action="store_true",
        help="show entropy in bits in table output (stored values stay in nats)",
    )


def _add_engine_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--exact", action="store_true",
        help="full coalition enumeration (default)",
    )
    group.add_argument(
        "--sample", type=int, metavar="P",
        help="estimate from P random insertion orders instead",
    )
    parser.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    parser.add_argument(
        "--cap", type=int, default=DEFAULT_EXACT_CAP,
        help=f"refuse exact enumeration above this size (default {DEFAULT_EXACT_CAP})",
    )
    parser.add_argument(
        "--threads", type=int, default=1,
        help="reserved; evaluation is single-threaded and output-invariant",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topoinfluence",
        description=(
            "Attribute the connected-component structure of a dataset's "
            "neighbor complex to individual samples."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_inf = sub.add_parser(
        "influence", help="influence profile of one dataset at one radius"
    )
    p_inf.add_argument(
        "--input", required=True, metavar="PATH", help="dataset file, or - for stdin"
    )
    p_inf.add_argument(
        "--input-format", choices=FORMATS,
        help="override the format inferred from --metric",
    )
    p_inf.add_argument("--metric", choices=METRICS + ("precomputed",))
    p_inf.add_argument("--radius", type=float, help="neighbor threshold r")
    _add_engine_flags(p_inf)
    _add_output_flags(p_inf)
    p_inf.set_defaults(handler=_cmd_influence)

    p_sweep = sub.add_parser(
        "sweep", help="influence profiles at several radii over one dataset"
    )
    p_sweep.add_argument("--input", required=True, metavar="PATH")
    p_sweep.add_argument("--input-format", choices=("strings", "vectors", "matrix"))
    p_sweep.add_argument("--metric", choices=METRICS + ("precomputed",))
    p_sweep.add_argument(
        "--radii", type=_float_list, required=True, metavar="R1,R2,...",
    )
    _add_engine_flags(p_sweep)
    _add_output_flags(p_sweep)
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_fam = sub.add_parser(
        "family", help="closed-form oracle rows, or a seeded random graph"
    )
    p_fam.add_argument(
        "--kind", required=True,
        choices=tuple(sorted(FAMILIES)) + ("erdos_renyi",),
    )
    p_fam.add_argument("--n", type=int, required=True, help="vertex count (right side for bipartite)")
    p_fam.add_argument("--m", type=int, help="left side size (bipartite only)")
    p_fam.add_argument("--p", type=float, help="edge probability (erdos_renyi only)")
    p_fam.add_argument("--seed", type=int, default=0)
    p_fam.add_argument(
        "--cap", type=int, default=DEFAULT_EXACT_CAP,
        help="exact-enumeration cap for erdos_renyi evaluation",
    )
    p_fam.add_argument(
        "--emit-edges", action="store_true",
        help="print the graph as an edge list instead of a report",
    )
    _add_output_flags(p_fam)
    p_fam.set_defaults(handler=_cmd_family)

    p_id = sub.add_parser(
        "identities", help="verify the closed-form combinatorial sums exactly"
    )
    p_id.add_argument("--n-max", type=int, default=20)
    _add_output_flags(p_id)
    p_id.set_defaults(handler=_cmd_identities)

    p_gram = sub.add_parser(
        "grammar", help="emit the length-N strings of a built-in grammar"
    )
    p_gram.add_argument("--g", type=int, required=True, choices=BUILTIN_INDICES)
    group = p_gram.add_mutually_exclusive_group(required=True)
    group.add_argument("--len", type=int, help="single string length")
    group.add_argument(
        "--range", type=_int_range, metavar="A:B", help="inclusive length range"
    )
    p_gram.add_argument(
        "--neg", action="store_true",
        help="label every string of the length 1/0 instead of emitting "
        "accepted strings bare",
    )
    p_gram.add_argument("--output", metavar="PATH")
    p_gram.set_defaults(handler=_cmd_grammar)

    p_mask = sub.add_parser(
        "mask", help="label-flip rates under top/bottom/random node masking"
    )
    p_mask.add_argument("--count", type=int, default=200, help="ensemble size")
    p_mask.add_argument("--n-range", type=_int_range, default=(8, 14), metavar="A:B")
    p_mask.add_argument(
        "--p-range", type=_float_range, default=(0.02, 0.21), metavar="A:B"
    )
    p_mask.add_argument(
        "--j", type=_int_list, default=[1, 2, 3], metavar="J1,J2,...",
        help="how many vertices to mask (default 1,2,3)",
    )
    p_mask.add_argument("--seed", type=int, default=0)
    p_mask.add_argument("--threads", type=int, default=1, help="reserved")
    _add_output_flags(p_mask)
    p_mask.set_defaults(handler=_cmd_mask)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SizeCapError as exc:
        print(f"topoinfluence: size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except EigensolverError as exc:
        print(f"topoinfluence: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except EmptyLanguageError as exc:
        print(f"topoinfluence: empty dataset: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TopoInfluenceError as exc:
        print(f"topoinfluence: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
