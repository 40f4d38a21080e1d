"""Command-line front end.

    halphen curve halphen --g 6 --format latex
    halphen verify --operator halphen --g 4 --deep
    halphen table --operator halphen --g-max 12 --jobs 4

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import HalphenError, InvalidGenusError
from .halphen import classify, spectral_curve
from .lame import lame_spectral_curve
from .verify import verify_halphen, verify_lame

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    operator: str = "halphen"
    g: int | None = None
    g_max: int | None = None
    format: str = "text"
    deep: bool = False
    errata: bool = False
    jobs: int = 1
    out: str | None = None


def _validate(operator: str, g: int) -> None:
    if operator == "halphen":
        classify(g)
    elif g < 1:
        raise InvalidGenusError(f"genus must be a positive integer, got {g}")


def _curve(operator: str, g: int):
    return spectral_curve(g) if operator == "halphen" else lame_spectral_curve(g)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run_curve(cfg: RunConfig) -> int:
    _validate(cfg.operator, cfg.g)
    curve = _curve(cfg.operator, cfg.g)
    text = {"text": curve.to_text, "latex": curve.to_latex, "json": curve.to_json}[cfg.format]()
    _emit(text, cfg.out)
    return EXIT_OK


def run_verify(cfg: RunConfig) -> int:
    _validate(cfg.operator, cfg.g)
    if cfg.operator == "halphen":
        report = verify_halphen(cfg.g, deep=cfg.deep, errata=cfg.errata)
    else:
        report = verify_lame(cfg.g)
    _emit(report.to_json() if cfg.format == "json" else report.to_table(), cfg.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _valid_genera(operator: str, g_max: int) -> list[int]:
    if operator == "lame":
        return list(range(1, g_max + 1))
    return [g for g in range(1, g_max + 1) if g % 3 != 2]


def _row(args: tuple[str, int]) -> tuple[bool, str]:
    operator, g = args
    try:
        return True, _curve(operator, g).to_json()
    except HalphenError as exc:
        return False, json.dumps({"operator": operator, "g": g, "error": str(exc)}, separators=(",", ":"))


def run_table(cfg: RunConfig) -> int:
    if cfg.g_max is None or cfg.g_max < 1:
        raise InvalidGenusError("--g-max must be at least 1")
    work = [(cfg.operator, g) for g in _valid_genera(cfg.operator, cfg.g_max)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_row, work))  # map keeps input order
    else:
        rows = [_row(item) for item in work]
    _emit("\n".join(line for _, line in rows), cfg.out)
    return EXIT_OK if all(ok for ok, _ in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="halphen", description="Spectral curves of Halphen and Lamé operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", help="compute one spectral curve")
    p.add_argument("operator", choices=("halphen", "lame"))
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run the verification suite for one genus")
    p.add_argument("--operator", choices=("halphen", "lame"), default="halphen")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="include the chi-equation check")
    p.add_argument("--errata", action="store_true", help="compare against corrected reference data")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out")

    p = sub.add_parser("table", help="JSON lines for every valid genus up to --g-max")
    p.add_argument("--operator", choices=("halphen", "lame"), default="halphen")
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        operator=ns.operator,
        g=getattr(ns, "g", None),
        g_max=getattr(ns, "g_max", None),
        format=getattr(ns, "format", "text"),
        deep=getattr(ns, "deep", False),
        errata=getattr(ns, "errata", False),
        jobs=getattr(ns, "jobs", 1),
        out=ns.out,
    )


def main(argv: list[str] | None = None) -> int:
    cfg = config_from_args(build_parser().parse_args(argv))
    runner = {"curve": run_curve, "verify": run_verify, "table": run_table}[cfg.command]
    try:
        return runner(cfg)
    except InvalidGenusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HalphenError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
