"""Command-line surface: JSON matrix I/O and experiment drivers.

Matrix documents are JSON objects {"ring", "rows", "cols", "data"} where a
real entry is a number, a complex entry is [re, im] and a quaternion entry
is [w, x, y, z].  Exit codes: 0 success, 1 parse error, 2 Cayley-domain
error, 3 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .algebra import Quaternion, RingTag
from .cayley import cayley
from .covering import CoverageReport, make_cover, verify_cover
from .errors import (
    CayleyError,
    NotCritical,
    OutsideDomain,
    ParseError,
    ShapeMismatch,
    UnknownSpace,
)
from .lefteig import (
    detect_infinite_family,
    left_eigenvalues_2x2,
    noncover_witness,
    singularity_residual,
)
from .matrix import DenseMatrix, GroupElement
from .morse import (
    HeightFunction,
    classify_critical_set,
    flow_closed_form,
    flow_rk4,
    gradient,
    is_critical,
    is_morse,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DOMAIN = 2
EXIT_PRECONDITION = 3


@dataclass
class RunConfig:
    """Seed, sample count and tolerance overrides of one CLI invocation."""

    seed: int = 0
    samples: int = 0
    tolerances: dict = field(default_factory=dict)
    output: str | None = None

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "tolerances": dict(self.tolerances),
            "output": self.output,
        }


# ---------------------------------------------------------------------------
# MatrixDocument
# ---------------------------------------------------------------------------

def parse_matrix(doc) -> DenseMatrix:
    """MatrixDocument -> DenseMatrix; raises ParseError on schema violations."""
    if not isinstance(doc, dict):
        raise ParseError("matrix document must be a JSON object")
    try:
        ring = RingTag(doc["ring"])
        rows, cols = int(doc["rows"]), int(doc["cols"])
        data = doc["data"]
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad matrix document: {exc}") from exc
    if rows < 1 or cols < 1:
        raise ParseError("rows and cols must be positive")
    if not isinstance(data, list) or len(data) != rows:
        raise ParseError("data must be a list of `rows` rows")
    width = {RingTag.C: 2, RingTag.H: 4}
    try:
        if ring is RingTag.R:
            arr = np.array(data, dtype=np.float64)
            if arr.shape != (rows, cols):
                raise ParseError("row lengths do not match cols")
            return DenseMatrix(ring, arr)
        arr = np.array(data, dtype=np.float64)
        if arr.shape != (rows, cols, width[ring]):
            raise ParseError(
                f"entries must be length-{width[ring]} arrays of numbers"
            )
        if ring is RingTag.C:
            return DenseMatrix(ring, arr[..., 0] + 1j * arr[..., 1])
        return DenseMatrix(ring, arr)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad matrix data: {exc}") from exc


def serialize_matrix(M: DenseMatrix) -> dict:
    """DenseMatrix -> MatrixDocument (inverse of parse_matrix)."""
    if M.ring is RingTag.R:
        data = M.data.tolist()
    elif M.ring is RingTag.C:
        data = np.stack([M.data.real, M.data.imag], axis=-1).tolist()
    else:
        data = M.data.tolist()
    return {"ring": M.ring.value, "rows": M.rows, "cols": M.cols, "data": data}


def _load_doc(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _quat_list(q: Quaternion) -> list[float]:
    return [q.w, q.x, q.y, q.z]


def _report_dict(report: CoverageReport, config: RunConfig) -> dict:
    return {
        "version": __version__,
        "config": config.as_dict(),
        "space": report.space,
        "n": report.n,
        "samples": report.samples,
        "covered": report.covered,
        "per_center_counts": report.per_center_counts,
        "uncovered_witnesses": [serialize_matrix(w) for w in report.uncovered_witnesses],
        "seed": report.seed,
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_cayley(args) -> int:
    center = parse_matrix(_load_doc(args.center))
    x = parse_matrix(_load_doc(args.x))
    try:
        a = GroupElement(center, center.ring, tol=1e-9)
    except CayleyError as exc:
        raise ParseError(f"center is not orthogonal: {exc}") from exc
    result = cayley(a, x, eps=args.eps_inv)
    _dump(serialize_matrix(result), args.out)
    return EXIT_OK


def cmd_cover(args) -> int:
    spec = make_cover(args.space, args.n)
    config = RunConfig(
        seed=args.seed,
        samples=args.samples,
        tolerances={"eps_cover": args.eps_cover},
        output=args.out,
    )
    if args.eps_cover is not None:
        spec = type(spec)(
            space=spec.space, n=spec.n, centers=spec.centers, eps=args.eps_cover
        )
    report = verify_cover(spec, args.samples, args.seed)
    print(f"{report.covered}/{report.samples}")
    _dump(_report_dict(report, config), args.out)
    return EXIT_OK


def cmd_flow(args) -> int:
    h = HeightFunction(parse_matrix(_load_doc(args.x)))
    a = GroupElement(parse_matrix(_load_doc(args.center)), h.ring, tol=1e-8)
    alpha0 = GroupElement(parse_matrix(_load_doc(args.alpha0)), h.ring, tol=1e-8)
    if not is_critical(h, a, args.eps_crit):
        raise NotCritical("flow center is not critical for the height function")
    n_samples = max(2, int(round(args.t_end / max(args.dt, 1e-12) / 50)) + 1)
    times = np.linspace(0.0, args.t_end, min(51, max(2, n_samples)))
    closed = flow_closed_form(h, a, alpha0, times)
    rk4 = flow_rk4(h, alpha0, args.t_end, args.dt)
    per_step = max(1, round((times[1] - times[0]) / args.dt)) if len(times) > 1 else 1
    deviation = 0.0
    rk4_samples = []
    for i, (t, m) in enumerate(closed.samples):
        k = min(i * per_step, len(rk4.samples) - 1)
        rk4_samples.append(rk4.samples[k][1])
        deviation = max(deviation, (m - rk4.samples[k][1]).norm())
    final_grad = gradient(h, GroupElement(closed.samples[-1][1], h.ring, 1e-6)).norm()
    out = {
        "version": __version__,
        "times": [t for t, _ in closed.samples],
        "closed_form": [serialize_matrix(m) for _, m in closed.samples],
        "rk4": [serialize_matrix(m) for m in rk4_samples],
        "max_deviation": deviation,
        "final_gradient_norm": final_grad,
        "rk4_group_drift": rk4.max_group_residual,
    }
    _dump(out, args.out)
    return EXIT_OK


def cmd_lefteig(args) -> int:
    mat = parse_matrix(_load_doc(args.matrix))
    if mat.ring is not RingTag.H or mat.rows != 2 or mat.cols != 2:
        raise ShapeMismatch("lefteig expects a 2x2 matrix over ring H")
    spec = left_eigenvalues_2x2(mat)
    if spec.kind == "finite":
        out = {
            "kind": "finite",
            "roots": [_quat_list(r) for r in spec.roots],
            "residuals": [singularity_residual(mat, r) for r in spec.roots],
        }
    else:
        rng = np.random.default_rng(0)
        worst = 0.0
        for _ in range(16):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            t = Quaternion(0.0, *v)
            worst = max(worst, singularity_residual(mat, spec.sphere_point(t)))
        out = {
            "kind": "sphere",
            "center": _quat_list(spec.center),
            "axis": _quat_list(spec.axis),
            "sampled_residual_max": worst,
        }
        if spec.q is not None:
            out["q"] = _quat_list(spec.q)
            out["cos_theta"] = spec.cos_theta
            out["sin_theta"] = spec.sin_theta
    out["version"] = __version__
    _dump(out, args.out)
    return EXIT_OK


def cmd_critical(args) -> int:
    x = parse_matrix(_load_doc(args.matrix))
    h = HeightFunction(x)
    cs = classify_critical_set(h)
    out = {
        "version": __version__,
        "n0": cs.n0,
        "levels": [[t, m] for t, m in cs.levels],
        "is_morse": is_morse(h),
        "predicted_total_dim": cs.predicted_total_dim,
    }
    _dump(out, args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    doc = _load_doc(args.sigmas)
    if not isinstance(doc, list) or len(doc) != 4:
        raise ParseError("sigmas file must hold a list of four [w,x,y,z] arrays")
    try:
        sigmas = tuple(Quaternion.from_array(s) for s in doc)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad quaternion entry: {exc}") from exc
    for s in sigmas:
        if abs(s.norm() - 1.0) > 1e-9:
            raise ParseError("witness construction requires unit quaternions")
    witness, cert = noncover_witness(sigmas)
    fam = detect_infinite_family(witness, tol=1e-7)
    out = {
        "version": __version__,
        "matrix": serialize_matrix(witness),
        "residuals": list(cert),
    }
    if fam is not None:
        q, theta = fam
        out["q"] = _quat_list(q)
        out["theta"] = theta
    _dump(out, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _default_seed() -> int:
    try:
        return int(os.environ.get("CAYLEY_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleygroups",
        description=(
            "Cayley transforms, height-function flows and categorical "
            "coverings on O(n), U(n) and Sp(n).  Random sampling is "
            "full-support Gram-Schmidt orthonormalization (not corrected "
            "to exact Haar)."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cayley", help="apply the transform centered at a matrix")
    p.add_argument("center", help="JSON document of the orthogonal center")
    p.add_argument("x", help="JSON document of the argument matrix")
    p.add_argument("--eps-inv", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("cover", help="Monte-Carlo verification of a covering")
    p.add_argument("space", choices=["unitary", "sp2", "mprime", "symunitary"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eps-cover", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("flow", help="gradient flow: closed form vs RK4")
    p.add_argument("x", help="defining matrix of the height function")
    p.add_argument("center", help="critical point JSON document")
    p.add_argument("alpha0", help="initial group element JSON document")
    p.add_argument("--t-end", type=float, default=5.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--eps-crit", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("lefteig", help="left spectrum of a 2x2 quaternionic matrix")
    p.add_argument("matrix")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lefteig)

    p = sub.add_parser("critical", help="critical-set structure of a height function")
    p.add_argument("matrix")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("witness", help="non-coverage witness for four unit quaternions")
    p.add_argument("--sigmas", required=True, help="JSON list of four [w,x,y,z]")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        args.seed = _default_seed()
    try:
        return args.func(args)
    except (ParseError, UnknownSpace) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OutsideDomain as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CayleyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
