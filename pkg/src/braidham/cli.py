"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails or the solver
finds nothing, 2 on invalid input.  Reports go to stdout (or ``--out``);
diagnostics go to stderr, with verbosity set by ``BRAIDHAM_LOG``
(``quiet``, ``info`` or ``debug``).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from .braid import (
    BraidPair,
    BraidWordSyntaxError,
    SolverConfig,
    anyon_a,
    anyon_b,
    evaluate_word,
    solve_b_given_a,
)
from .hamiltonians import DiracParams, DomainError, Momentum
from .matrix_core import frobenius_distance, identity, matrix_order
from .pipeline import PAPER_THETA, UnsupportedAngleError, run_derivation, run_sweep

log = logging.getLogger("braidham")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

THETA_HELP = (
    "deformation angle in radians (default -pi/2 = %(default)r, the angle at which the "
    "anyon generators of the nu=1/2 fractional quantum Hall state appear)"
)

# option name -> (type, default); shared by flags and the config file
OPTIONS = {
    "mass": (float, None),
    "px": (float, None),
    "py": (float, None),
    "pz": (float, None),
    "theta": (float, PAPER_THETA),
    "samples": (int, 1000),
    "seed": (int, 0),
    "tol": (float, 1e-12),
    "format": (str, "text"),
    "word": (str, None),
    "max_restarts": (int, 32),
    "residual_target": (float, 1e-10),
    "exploratory": (bool, False),
    "out": (str, None),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(text)
    return value


_finite_float.__name__ = "float"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value file; flags override its values")
    common.add_argument("--format", choices=("json", "text"), default=None, help="output format (default text)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--tol", type=_finite_float, default=None, help="absolute residual tolerance (default 1e-12)")

    parser = _Parser(prog="braidham", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    derive = sub.add_parser("derive", parents=[common], help="run the derivation for one (m, p)")
    derive.add_argument("--mass", type=_finite_float)
    for axis in ("px", "py", "pz"):
        derive.add_argument(f"--{axis}", type=_finite_float)
    derive.add_argument("--theta", type=_finite_float, help=THETA_HELP % {"default": PAPER_THETA})
    derive.add_argument(
        "--exploratory",
        action="store_true",
        default=None,
        help="allow any angle; b(theta) is found numerically and no Bogoliubov match is asserted",
    )

    sweep = sub.add_parser("sweep", parents=[common], help="seeded random derivations; reports the worst residuals")
    sweep.add_argument("--samples", type=int)
    sweep.add_argument("--seed", type=int)

    word = sub.add_parser("braid-word", parents=[common], help="evaluate a word in a, b (uppercase = inverse)")
    word.add_argument("--word")
    word.add_argument("--theta", type=_finite_float, help=THETA_HELP % {"default": PAPER_THETA})

    solve = sub.add_parser("solve-b", parents=[common], help="search for b with aba = bab given a(theta)")
    solve.add_argument("--theta", type=_finite_float, help=THETA_HELP % {"default": PAPER_THETA})
    solve.add_argument("--seed", type=int)
    solve.add_argument("--max-restarts", type=int)
    solve.add_argument("--residual-target", type=_finite_float)
    return parser


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment, dashes in keys become underscores."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config {path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in OPTIONS:
            raise UsageError(f"config {path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _coerce(key: str, text: str):
    kind = OPTIONS[key][0]
    try:
        if kind is bool:
            lowered = text.lower()
            if lowered not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(text)
            return lowered in ("true", "1", "yes")
        return _finite_float(text) if kind is float else kind(text)
    except ValueError:
        raise UsageError(f"config key {key}: invalid {kind.__name__} value {text!r}") from None


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags (in increasing precedence)."""
    cfg = {k: default for k, (_, default) in OPTIONS.items()}
    if args.config:
        try:
            file_values = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"--config: cannot read {args.config}: {exc.strerror}") from None
        cfg.update({k: _coerce(k, v) for k, v in file_values.items()})
    for k in OPTIONS:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    if cfg["format"] not in ("json", "text"):
        raise UsageError(f"--format: expected json or text, got {cfg['format']!r}")
    if not cfg["tol"] > 0:
        raise UsageError("--tol: must be positive")
    return cfg


# -- output --------------------------------------------------------------------


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Serialize with every float written as a 17-significant-digit decimal."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite number in report: {obj!r}")
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _matrix_json(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _matrix_text(M: np.ndarray) -> str:
    def cell(z):
        re = 0.0 if abs(z.real) < 5e-16 else z.real
        im = 0.0 if abs(z.imag) < 5e-16 else z.imag
        return f"{re:+.12f}{im:+.12f}j"

    return "\n".join("  [" + "  ".join(cell(z) for z in row) + "]" for row in M)


def _checks_text(checks: list[dict]) -> list[str]:
    width = max(len(c["name"]) for c in checks)
    return [f"  {c['name']:<{width}}  {c['residual']:.3e}  {'PASS' if c['pass'] else 'FAIL'}" for c in checks]


def _emit(cfg: dict, payload: dict, text_lines: list[str]) -> None:
    out = to_json(payload) if cfg["format"] == "json" else "\n".join(text_lines)
    out += "\n"
    if cfg["out"]:
        Path(cfg["out"]).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


# -- commands ------------------------------------------------------------------


def cmd_derive(cfg: dict) -> int:
    if cfg["mass"] is None:
        raise UsageError("--mass is required")
    if all(cfg[k] is None for k in ("px", "py", "pz")):
        raise UsageError("--px/--py/--pz: at least one momentum component is required")
    p = Momentum(*(cfg[k] or 0.0 for k in ("px", "py", "pz")))
    try:
        params = DiracParams(cfg["mass"], p)
        report = run_derivation(params, cfg["theta"], cfg["tol"], strict_paper_mode=not cfg["exploratory"])
    except (DomainError, UnsupportedAngleError) as exc:
        raise UsageError(str(exc)) from None

    payload = report.to_dict()
    lines = [
        f"derivation  m={report.m!r}  p={list(report.p)!r}  theta={report.theta!r}  tol={report.tol:.1e}",
        *_checks_text(payload["checks"]),
        f"orders      a: {report.order_a}  b: {report.order_b}  "
        f"(-I at a^{report.minus_identity.get('a', [])}, b^{report.minus_identity.get('b', [])})",
        f"order(R1 R2): {report.order_r1r2}",
        "decomposability  " + "  ".join(f"{k}={v:.6f}" for k, v in report.decomposability.items()),
    ]
    lines += [f"info        {k}={v:.3e}" for k, v in report.info.items()]
    lines.append(f"pass: {str(report.passed).lower()}")
    _emit(cfg, payload, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(cfg: dict) -> int:
    if cfg["samples"] < 1:
        raise UsageError(f"--samples: must be >= 1, got {cfg['samples']}")
    log.info("sweep: %d samples, seed %d", cfg["samples"], cfg["seed"])
    summary = run_sweep(cfg["samples"], cfg["seed"], cfg["tol"], cfg["theta"])
    payload = summary.to_dict()
    lines = [
        f"sweep  samples={summary.samples}  seed={summary.seed}  tol={summary.tol:.1e}  (max residual per check)",
        *_checks_text(payload["checks"]),
        f"orders: {payload['orders']}",
        f"failed samples: {summary.failures}",
        f"pass: {str(summary.passed).lower()}",
    ]
    _emit(cfg, payload, lines)
    return EXIT_OK if summary.passed else EXIT_FAIL


def cmd_braid_word(cfg: dict) -> int:
    text = cfg["word"]
    if text is None:
        raise UsageError("--word is required")
    pair = BraidPair(anyon_a(cfg["theta"]), anyon_b())
    try:
        M = evaluate_word(pair, text)
    except BraidWordSyntaxError as exc:
        raise UsageError(f"--word: {exc}") from None
    order = matrix_order(M, tol=max(cfg["tol"], 1e-12))
    dist = frobenius_distance(M, identity(2))
    payload = {
        "inputs": {"word": text, "theta": cfg["theta"]},
        "matrix": _matrix_json(M),
        "order": order.order,
        "minus_identity": order.minus_identity,
        "distance_to_identity": dist,
    }
    lines = [
        f"word {text!r} on (a(theta={cfg['theta']!r}), b):",
        _matrix_text(M),
        f"order: {order.order if order.order is not None else 'none <= 64'}",
        f"-I at powers: {order.minus_identity}",
        f"||M - I||_F = {dist:.17g}",
    ]
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_solve_b(cfg: dict) -> int:
    if cfg["max_restarts"] < 1:
        raise UsageError("--max-restarts: must be >= 1")
    if not cfg["residual_target"] > 0:
        raise UsageError("--residual-target: must be positive")
    a = anyon_a(cfg["theta"])
    solver = SolverConfig(
        max_restarts=cfg["max_restarts"], residual_target=cfg["residual_target"], rng_seed=cfg["seed"]
    )
    result = solve_b_given_a(a, solver)
    payload = {
        "inputs": {"theta": cfg["theta"], "seed": cfg["seed"], "max_restarts": cfg["max_restarts"]},
        "found": result.found,
        "restarts": result.restarts,
        "residual": result.residual if math.isfinite(result.residual) else None,
    }
    lines = [f"solve-b  theta={cfg['theta']!r}  seed={cfg['seed']}"]
    if result.found:
        dist = frobenius_distance(result.b, anyon_b())
        coincides = dist < max(cfg["tol"], cfg["residual_target"])
        payload.update(b=_matrix_json(result.b), distance_to_paper_b=dist, coincides_with_paper_b=coincides)
        lines += [
            "b =",
            _matrix_text(result.b),
            f"||aba - bab||_F = {result.residual:.3e}  (after {result.restarts} restart(s))",
            f"||b - b_ref||_F = {dist:.3e}  coincides with reference b: {str(coincides).lower()}",
        ]
    else:
        lines.append(f"no non-trivial b found in {result.restarts} restarts")
    _emit(cfg, payload, lines)
    return EXIT_OK if result.found else EXIT_FAIL


COMMANDS = {"derive": cmd_derive, "sweep": cmd_sweep, "braid-word": cmd_braid_word, "solve-b": cmd_solve_b}


class _StderrHandler(logging.StreamHandler):
    # resolve sys.stderr at emit time so redirection after setup is honoured
    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _value):
        pass


def _configure_logging() -> None:
    levels = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    name = os.environ.get("BRAIDHAM_LOG", "quiet").strip().lower()
    for h in [h for h in log.handlers if isinstance(h, _StderrHandler)]:
        log.removeHandler(h)
    handler = _StderrHandler()
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(levels.get(name, logging.ERROR))
    log.propagate = False
    if name not in levels:
        log.error("BRAIDHAM_LOG=%r not recognised; using quiet", name)


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"braidham: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - the exit-code contract admits only 0/1/2
        log.debug("unexpected failure", exc_info=True)
        print(f"braidham: internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
