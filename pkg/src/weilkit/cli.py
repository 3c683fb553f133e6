"""Command-line front end. JSON in, JSON out.

Exit status: 0 success, 1 domain error or failed check, 2 unparseable input or
bad configuration. Errors go to stderr as ``{"error": {"code", "message", "details"}}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence, TextIO

from . import codec, figures, laws
from .algebra import check_weil, hom_from_images, tensor
from .errors import ConfigError, ExpressionError, WeilError
from .expression import from_json as expr_from_json
from .figures import ImplicitFigure
from .functor import default_variables, eval_expression
from .scalars import EXACT, MODES, to_scalar


class InputError(Exception):
    code = "parse_error"


def _dump(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def _read_input(args, stdin: TextIO) -> Any:
    if getattr(args, "json", None) is not None:
        text = args.json
    elif args.input in (None, "-"):
        text = stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON input: {exc}") from exc


def _require(data: Any, key: str):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"input must be an object with a {key!r} field")
    return data[key]


def cmd_algebra_build(args, data) -> tuple[Any, int]:
    w = codec.algebra_from_spec(data if "presentation" in data or "generators" in data
                                else _require(data, "presentation"), args.mode)
    return codec.algebra_to_json(w), 0


def cmd_algebra_check(args, data) -> tuple[Any, int]:
    spec = data.get("algebra", data) if isinstance(data, dict) else data
    w = codec.algebra_from_spec(spec, args.mode)
    report = check_weil(w)
    return {"algebra": w.id, "name": w.name, **report.to_json()}, 0 if report.passed else 1


def cmd_algebra_tensor(args, data) -> tuple[Any, int]:
    specs = data if isinstance(data, list) else _require(data, "factors")
    if not isinstance(specs, list) or len(specs) < 2:
        raise InputError("tensor needs a list of at least two algebra specs")
    algebras = [codec.algebra_from_spec(s, args.mode) for s in specs]
    w = algebras[0]
    homs = []
    for other in algebras[1:]:
        w, left, right = tensor(w, other)
        homs = [left, right]
    out = codec.algebra_to_json(w)
    out["inclusions"] = [codec.hom_to_json(h) for h in homs]
    return out, 0


def cmd_algebra_hom(args, data) -> tuple[Any, int]:
    source = codec.algebra_from_spec(_require(data, "source"), args.mode)
    target = codec.algebra_from_spec(_require(data, "target"), args.mode)
    images = [codec.element_from_json(v, target) for v in _require(data, "images")]
    hom = hom_from_images(source, target, images)
    out = codec.hom_to_json(hom)
    if "apply" in data:
        out["applied"] = [codec.element_to_json(hom(codec.element_from_json(v, source)))
                          for v in data["apply"]]
    return out, 0


def cmd_lift(args, data) -> tuple[Any, int]:
    w = codec.algebra_from_spec(_require(data, "algebra"), args.mode)
    raw = data.get("expressions", [data["expression"]] if "expression" in data else None)
    if raw is None:
        raise InputError("lift needs 'expression' or 'expressions'")
    exprs = [expr_from_json(e) for e in raw]
    env_raw = data.get("env", {})
    if not isinstance(env_raw, dict):
        raise InputError("'env' must map variable names to elements")
    env = {name: codec.element_from_json(v, w) for name, v in env_raw.items()}
    values = [eval_expression(e, env, w) for e in exprs]
    return {
        "algebra": {"id": w.id, "name": w.name},
        "variables": list(default_variables(exprs)),
        "values": [codec.element_to_json(v) for v in values],
    }, 0


def cmd_laws(args, data) -> tuple[Any, int]:
    try:
        config = laws.LawConfig.from_json(data) if data is not None else laws.LawConfig()
    except TypeError as exc:
        raise ConfigError(f"bad config: {exc}") from exc
    for flag in ("seed", "trials", "tolerance", "mutant"):
        value = getattr(args, flag)
        if value is not None:
            setattr(config, flag, value)
    if args.mode_given:
        config.mode = args.mode
    report = laws.run_laws(config)
    return report, 0 if report["status"] == "pass" else 1


def _base(data, mode: str) -> list:
    base = _require(data, "base")
    if not isinstance(base, list):
        raise InputError("'base' must be a list of coordinates")
    return [to_scalar(b, mode) for b in base]


def cmd_figure_fiber(args, data) -> tuple[Any, int]:
    f = ImplicitFigure.from_json(_require(data, "figure"))
    fiber = figures.first_order_fiber(f, _base(data, args.mode), args.mode, args.tolerance or 1e-9)
    return fiber.to_json(), 0


def cmd_figure_intersect(args, data) -> tuple[Any, int]:
    figs = _require(data, "figures")
    if not isinstance(figs, list) or len(figs) != 2:
        raise InputError("'figures' must hold exactly two figures")
    f1, f2 = (ImplicitFigure.from_json(f) for f in figs)
    fiber = figures.intersect_first_order(f1, f2, _base(data, args.mode), args.mode,
                                          args.tolerance or 1e-9)
    return fiber.to_json(), 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default=None)
    common.add_argument("--in", dest="input", default="-", help="input JSON path, or - for stdin")
    common.add_argument("--json", default=None, help="inline JSON input (overrides --in)")
    common.add_argument("--out", default="-", help="output path, or - for stdout")
    common.add_argument("--tolerance", type=float, default=None)

    parser = argparse.ArgumentParser(prog="weilkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="build, check, tensor Weil algebras or map between them")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    alg_sub.add_parser("build", parents=[common]).set_defaults(func=cmd_algebra_build)
    alg_sub.add_parser("check", parents=[common]).set_defaults(func=cmd_algebra_check)
    alg_sub.add_parser("tensor", parents=[common]).set_defaults(func=cmd_algebra_tensor)
    alg_sub.add_parser("hom", parents=[common]).set_defaults(func=cmd_algebra_hom)

    sub.add_parser("lift", parents=[common], help="evaluate expressions on Weil elements") \
        .set_defaults(func=cmd_lift)

    lp = sub.add_parser("laws", parents=[common], help="run the randomized law suite")
    lp.add_argument("--seed", type=int, default=None)
    lp.add_argument("--trials", type=int, default=None)
    lp.add_argument("--mutant", choices=sorted(laws.MUTANTS), default=None)
    lp.set_defaults(func=cmd_laws, input=None)

    fig = sub.add_parser("figure", help="first-order fibers of implicit figures")
    fig_sub = fig.add_subparsers(dest="action", required=True)
    fig_sub.add_parser("fiber", parents=[common]).set_defaults(func=cmd_figure_fiber)
    fig_sub.add_parser("intersect", parents=[common]).set_defaults(func=cmd_figure_intersect)
    return parser


def _error(stderr: TextIO, code: str, message: str, details: dict | None = None) -> None:
    stderr.write(_dump({"error": {"code": code, "message": message, "details": details or {}}}))


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin, stdout, stderr = stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.mode_given = args.mode is not None
    args.mode = args.mode or EXACT
    if getattr(args, "tolerance", None) is not None and not args.tolerance > 0:
        _error(stderr, "config_error", "tolerance must be positive")
        return 2
    laws_without_input = args.func is cmd_laws and args.input is None and args.json is None
    try:
        data = None if laws_without_input else _read_input(args, stdin)
        result, status = args.func(args, data)
    except InputError as exc:
        _error(stderr, exc.code, str(exc))
        return 2
    except (ConfigError, ExpressionError) as exc:
        _error(stderr, exc.code, str(exc), exc.details)
        return 2
    except WeilError as exc:
        _error(stderr, exc.code, str(exc), exc.details)
        return 1
    except (KeyError, TypeError, AttributeError) as exc:
        _error(stderr, "parse_error", f"input does not match the expected schema: {exc!r}")
        return 2
    text = _dump(result)
    if args.out in (None, "-"):
        stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
