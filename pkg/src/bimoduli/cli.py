"""Command-line surface: JSON file ingestion, pipeline orchestration, reporting.

Exit codes are part of the contract:
  0  success / affirmative verdict
  1  negative verdict (not bi-invariant, not equivalent)
  2  parse error (bad file, bad JSON shape, unknown catalog name)
  3  Jacobi identity failure
  4  precondition failure (not compact type, or a metric command was given
     a metric that is not bi-invariant)
  5  metric not positive definite
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import catalog
from .curvature import positivity_probe
from .decompose import DecompositionError, NotCompactTypeError, compact_type_check, decompose
from .lie_core import (
    DEFAULT_TOL,
    LieAlgebra,
    Metric,
    NotPositiveDefiniteError,
    center,
    validate_jacobi,
)
from .metrics import (
    NotBiInvariantError,
    canonicalize,
    conformally_equivalent,
    invariant_form_space,
    is_biinvariant_metric,
    isometric,
    metric_coordinates,
    moduli_description,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_JACOBI = 3
EXIT_PRECONDITION = 4
EXIT_NOT_POSITIVE = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _err(code: int, message: str) -> CliError:
    return CliError(code, message)


def load_algebra(path: str, tol: float, skip_validate: bool) -> LieAlgebra:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _err(EXIT_PARSE, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _err(EXIT_PARSE, f"{path} is not valid JSON: {exc}")
    try:
        name = str(doc["name"])
        dim = int(doc["dim"])
        table = {}
        for item in doc["brackets"]:
            i, j = int(item["i"]), int(item["j"])
            table[(i, j)] = [(int(k), float(c)) for k, c in item["terms"]]
        alg = LieAlgebra(name, dim, table)
    except (KeyError, TypeError, ValueError) as exc:
        raise _err(EXIT_PARSE, f"{path} is not a valid algebra file: {exc}")
    if not skip_validate:
        bad = validate_jacobi(alg, tol)
        if bad:
            raise _err(
                EXIT_JACOBI,
                f"{path}: Jacobi identity fails on triples {bad[:5]}"
                + (" ..." if len(bad) > 5 else ""),
            )
    return alg


def load_metric(path: str, dim: int) -> Metric:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _err(EXIT_PARSE, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _err(EXIT_PARSE, f"{path} is not valid JSON: {exc}")
    try:
        mat = np.asarray(doc["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise _err(EXIT_PARSE, f"{path} is not a valid metric file: {exc}")
    if mat.shape != (dim, dim):
        raise _err(EXIT_PARSE, f"{path}: metric shape {mat.shape} does not match dim {dim}")
    skew = float(np.max(np.abs(mat - mat.T))) if mat.size else 0.0
    if skew > 1e-12:
        print(
            f"warning: {path} is asymmetric by {skew:.2e}; symmetrizing",
            file=sys.stderr,
        )
    try:
        return Metric.from_matrix(mat)
    except NotPositiveDefiniteError as exc:
        raise _err(EXIT_NOT_POSITIVE, f"{path}: {exc}")


def algebra_document(alg: LieAlgebra) -> dict:
    return {
        "name": alg.name,
        "dim": alg.dim,
        "brackets": [
            {"i": i, "j": j, "terms": [[k, c] for k, c in terms]}
            for (i, j), terms in sorted(alg.brackets.items())
        ],
    }


def _round_floats(obj, digits: int = 12):
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def emit_json(doc: dict) -> None:
    print(json.dumps(_round_floats(doc), sort_keys=True))


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _fingerprint_doc(fp) -> dict:
    return {
        "dim": fp.dim,
        "rank": fp.rank,
        "root_profile": list(fp.root_profile),
        "root_count": fp.root_count,
    }


def _space_doc(desc) -> dict:
    return {
        "term": desc.render(),
        "homeomorphic": desc.render_homeomorphic(),
        "dim": desc.dim,
    }


def _space_line(label: str, desc) -> str:
    homeo = desc.render_homeomorphic()
    body = desc.render() if homeo is None else f"{desc.render()} ≅ {homeo}"
    return f"{label} ≅ {body}  (dim {desc.dim})" if not desc.is_point else f"{label} = point"


def cmd_analyze(args) -> int:
    alg = load_algebra(args.algebra, args.tol, args.skip_validate)
    report = compact_type_check(alg)
    z = center(alg)
    doc: dict = {
        "command": "analyze",
        "name": alg.name,
        "dim": alg.dim,
        "center_dim": z.dim,
        "compact_type": report.is_compact_type,
        "reason": report.reason,
    }
    if not report.is_compact_type:
        doc["message"] = "no bi-invariant metric exists"
        doc["invariant_form_dim"] = len(invariant_form_space(alg))
        if args.json:
            emit_json(doc)
        else:
            print(f"algebra: {alg.name} (dim {alg.dim})")
            print(f"compact type: no ({report.reason})")
            print(f"invariant form dim: {doc['invariant_form_dim']} (none positive definite)")
            print("no bi-invariant metric exists")
        return EXIT_OK

    dec = decompose(alg, args.seed)
    desc = moduli_description(alg, args.seed)
    forms = invariant_form_space(alg)
    doc.update(
        {
            "ideal_dims": list(dec.ideal_dims),
            "class_sizes": list(dec.class_sizes),
            "fingerprints": [_fingerprint_doc(fp) for fp in dec.class_fingerprints],
            "invariant_form_dim": len(forms),
            "bi": _space_doc(desc.bi),
            "ebi": _space_doc(desc.ebi),
            "contractible": desc.contractible,
        }
    )
    if args.json:
        emit_json(doc)
        return EXIT_OK
    print(f"algebra: {alg.name} (dim {alg.dim})")
    print("compact type: yes")
    print(f"center dim: {z.dim}")
    print(f"ideal dims: {list(dec.ideal_dims)}")
    for size, fp in zip(dec.class_sizes, dec.class_fingerprints):
        prof = ", ".join(_fmt(v) for v in fp.root_profile)
        print(f"class: {size} ideal(s) with dim={fp.dim} rank={fp.rank} profile=({prof})")
    print(f"invariant form dim: {len(forms)}")
    print(_space_line("BI", desc.bi))
    print(_space_line("EBI", desc.ebi))
    print("contractible: yes")
    return EXIT_OK


def _coords_doc(coords) -> dict:
    return {
        "center_dim": coords.center_dim,
        "alpha": list(coords.flat),
        "classes": [
            {"fingerprint": _fingerprint_doc(e.fingerprint), "alphas": list(e.alphas)}
            for e in coords.class_entries
        ],
    }


def cmd_check_metric(args) -> int:
    alg = load_algebra(args.algebra, args.tol, args.skip_validate)
    metric = load_metric(args.metric, alg.dim)
    ok = is_biinvariant_metric(alg, metric, args.tol)
    doc: dict = {"command": "check-metric", "name": alg.name, "bi_invariant": ok}
    if not ok:
        if args.json:
            emit_json(doc)
        else:
            print("bi-invariant: no")
        return EXIT_NEGATIVE
    report = compact_type_check(alg)
    if not report.is_compact_type:
        raise _err(EXIT_PRECONDITION, f"{alg.name}: {report.reason}")
    coords = canonicalize(metric_coordinates(alg, metric, decompose(alg, args.seed), args.tol))
    doc["coordinates"] = _coords_doc(coords)
    if args.json:
        emit_json(doc)
    else:
        print("bi-invariant: yes")
        alpha = ", ".join(_fmt(a) for a in coords.flat)
        print(f"canonical alpha: ({alpha})")
        if coords.center_dim:
            print(f"center dim: {coords.center_dim} (moduli contribution is a point)")
    return EXIT_OK


def cmd_equivalent(args) -> int:
    alg1 = load_algebra(args.algebra1, args.tol, args.skip_validate)
    met1 = load_metric(args.metric1, alg1.dim)
    alg2 = load_algebra(args.algebra2, args.tol, args.skip_validate)
    met2 = load_metric(args.metric2, alg2.dim)
    try:
        if args.mode == "isometry":
            verdict = isometric(alg1, met1, alg2, met2, seed=args.seed, tol=args.tol)
            scale = None
        else:
            result = conformally_equivalent(
                alg1, met1, alg2, met2, seed=args.seed, tol=args.tol
            )
            verdict, scale = result.equivalent, result.scale
    except (NotBiInvariantError, NotCompactTypeError) as exc:
        raise _err(EXIT_PRECONDITION, str(exc))
    doc: dict = {"command": "equivalent", "mode": args.mode, "equivalent": verdict}
    if scale is not None:
        doc["lambda"] = scale
    if args.json:
        emit_json(doc)
    else:
        print("equivalent: " + ("yes" if verdict else "no"))
        if verdict and scale is not None:
            print(f"lambda: {_fmt(scale)}")
    return EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_curvature(args) -> int:
    alg = load_algebra(args.algebra, args.tol, args.skip_validate)
    metric = load_metric(args.metric, alg.dim)
    try:
        report = positivity_probe(alg, metric, samples=args.samples, seed=args.seed, tol=args.tol)
    except (NotBiInvariantError, NotCompactTypeError) as exc:
        raise _err(EXIT_PRECONDITION, str(exc))
    if args.csv:
        print("plane_index,sectional")
        for idx, val in enumerate(report.sectional_samples):
            print(f"{idx},{val:.12g}")
        return EXIT_OK
    doc: dict = {
        "command": "curvature",
        "name": alg.name,
        "ricci": [list(row) for row in report.ricci.matrix],
        "scalar": report.scalar,
        "min_sectional_sampled": report.min_sectional_sampled,
        "samples": int(report.sectional_samples.size),
        "flat": report.flat,
        "zero_plane": None
        if report.zero_plane is None
        else [list(report.zero_plane[0]), list(report.zero_plane[1])],
        "einstein_constant": report.einstein_constant,
    }
    if args.json:
        emit_json(doc)
        return EXIT_OK
    print(f"algebra: {alg.name} (dim {alg.dim})")
    print("ricci:")
    for row in report.ricci.matrix:
        print("  [" + ", ".join(_fmt(v) for v in row) + "]")
    print(f"scalar curvature: {_fmt(report.scalar)}")
    print(f"min sectional over {report.sectional_samples.size} samples: {_fmt(report.min_sectional_sampled)}")
    if report.zero_plane is not None:
        u, v = report.zero_plane
        print("zero plane: x=(" + ", ".join(_fmt(a) for a in u) + "), y=(" + ", ".join(_fmt(a) for a in v) + ")")
    else:
        print("zero plane: none found")
    if report.einstein_constant is not None:
        print(f"einstein constant: {_fmt(report.einstein_constant)}")
    else:
        print("einstein constant: none (Ricci not proportional to the metric)")
    print(f"flat: {'yes' if report.flat else 'no'}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        if args.json:
            emit_json(
                {
                    "command": "catalog-list",
                    "entries": [
                        {"name": e.name, "dim": e.algebra.dim, "summary": e.summary}
                        for e in catalog.entries()
                    ],
                }
            )
        else:
            for e in catalog.entries():
                print(f"{e.name:16s} dim {e.algebra.dim:2d}  {e.summary}")
        return EXIT_OK
    try:
        entry = catalog.builtin(args.name)
    except KeyError as exc:
        raise _err(EXIT_PARSE, str(exc))
    print(json.dumps(algebra_document(entry.algebra), sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="residual tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomized steps (default 0)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--skip-validate", action="store_true", help="skip the Jacobi check on input algebras")

    parser = argparse.ArgumentParser(
        prog="bimoduli",
        description="Bi-invariant metrics on Lie algebras: existence, canonical coordinates, moduli, curvature.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="decompose an algebra and describe its moduli spaces")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check-metric", parents=[common], help="test a metric for bi-invariance and report canonical coordinates")
    p.add_argument("algebra")
    p.add_argument("metric")
    p.set_defaults(func=cmd_check_metric)

    p = sub.add_parser("equivalent", parents=[common], help="decide isometry or conformal equivalence of two metrics")
    p.add_argument("mode", choices=["isometry", "conformal"])
    p.add_argument("algebra1")
    p.add_argument("metric1")
    p.add_argument("algebra2")
    p.add_argument("metric2")
    p.set_defaults(func=cmd_equivalent)

    p = sub.add_parser("curvature", parents=[common], help="curvature report for a bi-invariant metric")
    p.add_argument("algebra")
    p.add_argument("metric")
    p.add_argument("--samples", type=int, default=1000, help="number of sampled planes (default 1000)")
    p.add_argument("--csv", action="store_true", help="emit sampled sectional curvatures as CSV instead of a report")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("catalog", parents=[common], help="list built-in algebras or emit one as JSON")
    catalog_sub = p.add_subparsers(dest="action", required=True)
    pl = catalog_sub.add_parser("list", parents=[common])
    pl.set_defaults(func=cmd_catalog)
    pe = catalog_sub.add_parser("emit", parents=[common])
    pe.add_argument("name")
    pe.set_defaults(func=cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NotCompactTypeError, NotBiInvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NotPositiveDefiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_POSITIVE
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
