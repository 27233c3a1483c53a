"""Command line front end: analyze, wind, factorize, curve.

Exit codes: 0 the controller stabilizes the plant, 1 it does not,
2 degenerate (a boundary test came within tolerance of zero, or a
winding query hit the boundary), 3 parse failure, 4 invalid
factorization, 5 dimension mismatch, 6 unsupported ring, 7 ill-posed
loop, 8 other error.  The environment variable NYQ_MAX_SAMPLES caps
adaptive curve refinement.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from .delay import compactified_axis
from .errors import (
    DegenerateBoundaryError,
    DimensionError,
    IllPosedLoopError,
    InvalidFactorizationError,
    NyqError,
    ProblemFormatError,
    UnsupportedRingError,
)
from .feedback import (
    closed_loop,
    direct_stability_oracle,
    nyquist_verdict,
    ring_det,
    ring_mat_mul,
    ring_mat_sub,
)
from .polynomials import parse_coefficient
from .problems import (
    ProblemSpec,
    factorization_to_json,
    load_problem,
    parse_exp_expression,
    parse_rational_expression,
)
from .rational import (
    RationalMatrix,
    det_rational,
    left_coprime_factorization,
    right_coprime_factorization,
    verify_bezout,
)
from .rings import RINGS, disk_index, make_ring
from .winding import MeanMotionConfig, WindingConfig, circle_curve, phase_unwrap
from .rings import apw_index

EXIT_YES = 0
EXIT_NO = 1
EXIT_DEGENERATE = 2
EXIT_PARSE = 3
EXIT_FACTORIZATION = 4
EXIT_DIMENSION = 5
EXIT_UNSUPPORTED = 6
EXIT_ILL_POSED = 7
EXIT_OTHER = 8

_VERDICT_EXIT = {"yes": EXIT_YES, "no": EXIT_NO, "degenerate": EXIT_DEGENERATE}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path, header, rows):
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    finally:
        if path:
            out.close()


def _build_ring(spec: ProblemSpec, samples: int):
    wind_cfg = WindingConfig(initial_samples=samples)
    name = spec.ring
    if name in ("disk_rational", "hardy_rational"):
        return make_ring(name, tol=spec.options.boundary_tolerance)
    if name == "apw_plus":
        return make_ring(name)
    if name == "callier_desoer":
        return make_ring(name, wind_cfg=wind_cfg)
    if name == "polydisk_rational":
        nvars = 1
        if spec.plant_rcf:
            first = spec.plant_rcf["N"][0][0]
            nvars = getattr(first, "nvars", 1)
        return make_ring(name, nvars=nvars, wind_cfg=wind_cfg)
    return make_ring(name)


def _outcome_line(label, outcome):
    idx = "-" if outcome.index is None else str(outcome.index)
    flags = []
    if outcome.degenerate:
        flags.append("degenerate")
    if not outcome.certificate.certified:
        flags.append("uncertified")
    extra = f" [{', '.join(flags)}]" if flags else ""
    note = f" ({outcome.reason})" if outcome.reason else ""
    return (
        f"  {label}: invertible_in_S={outcome.invertible_in_S} index={idx} "
        f"min|.|={outcome.certificate.min_modulus:.6g}{extra}{note}"
    )


def _print_verdict(verdict, prefix=""):
    print(f"{prefix}verdict: {verdict.stabilizes}")
    print(_outcome_line("det(I-CP)   ", verdict.det_I_minus_CP))
    print(_outcome_line("det(D_P)    ", verdict.det_DP))
    print(_outcome_line("det(D~_C)   ", verdict.det_DtildeC))
    sum_str = "-" if verdict.index_sum is None else str(verdict.index_sum)
    print(f"  index sum: {sum_str}")
    for note in verdict.notes:
        print(f"  note: {note}")


def _analyze_rational(spec: ProblemSpec, ring, gamma):
    if spec.plant is None or spec.controller is None:
        raise ProblemFormatError("rational analysis needs 'plant' and 'controller'")
    rcf = spec.plant_rcf or right_coprime_factorization(spec.plant, gamma)
    results = []
    gains = spec.options.sweep_gains or [None]
    for gain in gains:
        C = spec.controller if gain is None else spec.controller * gain
        lcf = left_coprime_factorization(C, gamma) if (
            spec.controller_lcf is None or gain is not None
        ) else spec.controller_lcf
        verdict = nyquist_verdict(spec.plant, C, rcf, lcf, ring)
        results.append((gain, verdict))
    return results


def _analyze_generic(spec: ProblemSpec, ring):
    if spec.plant_rcf is None or spec.controller_lcf is None:
        raise InvalidFactorizationError(
            f"ring {spec.ring!r} needs plant_rcf and controller_lcf with witnesses"
        )
    if spec.options.sweep_gains:
        raise ProblemFormatError("gain sweeps are only supported for rational rings")
    return [(None, nyquist_verdict(None, None, spec.plant_rcf, spec.controller_lcf, ring))]


def cmd_analyze(args) -> int:
    spec = load_problem(args.problem)
    if args.ring:
        spec.ring = args.ring
    if args.tolerance is not None:
        spec.options.boundary_tolerance = args.tolerance
    if args.gamma is not None:
        spec.options.gamma = parse_coefficient(args.gamma)
    if args.samples is not None:
        spec.options.samples = args.samples
    ring = _build_ring(spec, spec.options.samples)
    print(f"ring: {spec.ring}")
    if spec.ring in ("disk_rational", "hardy_rational"):
        results = _analyze_rational(spec, ring, spec.options.gamma)
    else:
        results = _analyze_generic(spec, ring)

    report = {"ring": spec.ring}
    if len(results) == 1 and results[0][0] is None:
        verdict = results[0][1]
        _print_verdict(verdict)
        report["verdict"] = verdict.to_json()
        exit_code = _VERDICT_EXIT[verdict.stabilizes]
    else:
        report["sweep"] = []
        for gain, verdict in results:
            print(f"gain {gain}:")
            _print_verdict(verdict, prefix="  ")
            entry = {"gain": str(gain)}
            entry.update(verdict.to_json())
            report["sweep"].append(entry)
        exit_code = EXIT_YES
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report, fh, indent=2)
    return exit_code


def _wind_disk(args, text) -> int:
    f = parse_rational_expression(text)
    cfg = WindingConfig(initial_samples=args.samples or 1024)
    outcome = disk_index(f, args.tolerance or 1e-9, cfg)
    print(f"expression: {f}")
    if outcome.index is not None:
        print(
            f"winding: {outcome.index} certified={outcome.certificate.certified} "
            f"min|f|={outcome.certificate.min_modulus:.6g}"
        )
    else:
        print(f"no winding: {outcome.reason}")
    if args.csv is not None:
        n = args.samples or 1024
        t = np.linspace(0.0, 1.0, n)
        values = circle_curve(f)(t)
        try:
            unwrapped = phase_unwrap(values)
        except NyqError:
            unwrapped = np.full(n, math.nan)
        _write_csv(
            args.csv,
            ["t", "re", "im", "unwrapped_arg"],
            [
                (float(tt), float(v.real), float(v.imag), float(a))
                for tt, v, a in zip(t, values, unwrapped)
            ],
        )
    if outcome.degenerate or outcome.index is None:
        return EXIT_DEGENERATE
    return EXIT_YES


def _wind_ap(args, text) -> int:
    basis = (
        tuple(float(b) for b in args.basis.split(",")) if args.basis else (1.0,)
    )
    f = parse_exp_expression(text, basis)
    outcome = apw_index(f)
    print(f"expression: {f}")
    if outcome.index is not None:
        print(
            f"average winding: {outcome.index} "
            f"certified={outcome.certificate.certified} "
            f"min|f|={outcome.certificate.min_modulus:.6g}"
        )
    else:
        print(f"no average winding: {outcome.reason}")
    if args.csv is not None:
        n = args.samples or 1024
        y = np.linspace(-100.0, 100.0, n)
        values = f.evaluate(y)
        try:
            unwrapped = phase_unwrap(values)
        except NyqError:
            unwrapped = np.full(n, math.nan)
        _write_csv(
            args.csv,
            ["t", "re", "im", "unwrapped_arg"],
            [
                (float(tt), float(v.real), float(v.imag), float(a))
                for tt, v, a in zip(y, values, unwrapped)
            ],
        )
    if outcome.degenerate or outcome.index is None:
        return EXIT_DEGENERATE
    return EXIT_YES


def cmd_wind(args) -> int:
    text = args.expression
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read().strip()
    ring = args.ring or "disk"
    if ring in ("disk", "disk_rational", "hardy_rational"):
        return _wind_disk(args, text)
    if ring in ("ap", "apw_plus"):
        return _wind_ap(args, text)
    raise UnsupportedRingError(f"wind supports disk and ap rings, not {ring!r}")


def cmd_factorize(args) -> int:
    spec = load_problem(args.problem)
    if args.ring:
        spec.ring = args.ring
    if spec.ring not in ("disk_rational", "hardy_rational"):
        raise UnsupportedRingError(
            f"automatic coprime factorization is only available for rational "
            f"rings, not {spec.ring!r}"
        )
    gamma = parse_coefficient(args.gamma) if args.gamma else spec.options.gamma
    if args.controller:
        if spec.controller is None:
            raise ProblemFormatError("problem file has no controller")
        cf = left_coprime_factorization(spec.controller, gamma)
        target = spec.controller
    else:
        if spec.plant is None:
            raise ProblemFormatError("problem file has no plant")
        cf = right_coprime_factorization(spec.plant, gamma)
        target = spec.plant
    if not verify_bezout(cf, target):
        raise InvalidFactorizationError("computed factorization failed verification")
    payload = factorization_to_json(cf)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    else:
        json.dump(payload, sys.stdout, indent=2)
        print()
    return EXIT_YES


def _curve_rows_rational(spec: ProblemSpec, n: int):
    if spec.plant is None or spec.controller is None:
        raise ProblemFormatError("curve export needs 'plant' and 'controller'")
    m = spec.plant.cols
    icp = RationalMatrix.identity(m) - spec.controller * spec.plant
    det = det_rational(icp)
    if det.is_zero():
        raise IllPosedLoopError("det(I - CP) is identically zero")
    t = np.linspace(0.0, 1.0, n)
    values = circle_curve(det)(t)
    return t, values


def _generic_dets(spec: ProblemSpec, ring):
    if spec.plant_rcf is None or spec.controller_lcf is None:
        raise InvalidFactorizationError(
            "curve export for this ring needs plant_rcf and controller_lcf"
        )
    N, D = spec.plant_rcf["N"], spec.plant_rcf["D"]
    Nt, Dt = spec.controller_lcf["N"], spec.controller_lcf["D"]
    lam = ring_mat_sub(ring, ring_mat_mul(ring, Dt, D), ring_mat_mul(ring, Nt, N))
    return ring_det(ring, lam), ring_det(ring, D), ring_det(ring, Dt)


def cmd_curve(args) -> int:
    spec = load_problem(args.problem)
    if args.ring:
        spec.ring = args.ring
    n = args.samples or spec.options.samples
    ring = _build_ring(spec, n)
    if spec.ring in ("disk_rational", "hardy_rational"):
        t, values = _curve_rows_rational(spec, n)
    elif spec.ring == "apw_plus":
        d_lam, d_dp, d_dc = _generic_dets(spec, ring)
        t = np.linspace(-1000.0, 1000.0, n)
        values = d_lam.evaluate(t) / (d_dp.evaluate(t) * d_dc.evaluate(t))
    elif spec.ring == "callier_desoer":
        d_lam, d_dp, d_dc = _generic_dets(spec, ring)
        t = np.linspace(0.0, 1.0, n)
        inner = np.clip(t, 0.25 / n, 1.0 - 0.25 / n)
        s = 1j * compactified_axis(inner)
        values = d_lam.evaluate(s) / (d_dp.evaluate(s) * d_dc.evaluate(s))
    else:
        raise UnsupportedRingError(
            f"curve export supports disk, hardy, ap and cd rings, not {spec.ring!r}"
        )
    _write_csv(
        args.csv,
        ["t", "re", "im"],
        [(float(tt), float(v.real), float(v.imag)) for tt, v in zip(t, values)],
    )
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nyq",
        description="Feedback stability verdicts over rings of stable transfer functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--ring", choices=sorted(RINGS) + ["disk", "ap"], default=None)
        p.add_argument("--tolerance", type=float, default=None,
                       help="boundary tolerance (default 1e-9)")
        p.add_argument("--samples", type=int, default=None,
                       help="initial curve samples (default 1024)")
        p.add_argument("--gamma", default=None,
                       help="stable-denominator base point (default 2)")
        p.add_argument("--csv", default=None, help="write curve samples to CSV")
        p.add_argument("--json-out", dest="json_out", default=None,
                       help="write the machine-readable report here")

    p = sub.add_parser("analyze", help="decide whether the controller stabilizes the plant")
    p.add_argument("problem", help="problem JSON file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("wind", help="winding / average winding of an expression")
    p.add_argument("expression", help="inline expression or a file containing one")
    p.add_argument("--basis", default=None,
                   help="comma-separated frequency basis for ap expressions")
    common(p)
    p.set_defaults(func=cmd_wind)

    p = sub.add_parser("factorize", help="coprime factorization over the stable ring")
    p.add_argument("problem", help="problem JSON file")
    p.add_argument("--controller", action="store_true",
                   help="factor the controller (left) instead of the plant (right)")
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    common(p)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("curve", help="CSV trace of det(I-CP) along the test boundary")
    p.add_argument("problem", help="problem JSON file")
    common(p)
    p.set_defaults(func=cmd_curve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidFactorizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FACTORIZATION
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except UnsupportedRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except IllPosedLoopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ILL_POSED
    except DegenerateBoundaryError as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NyqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
