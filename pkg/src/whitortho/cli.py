"""Command-line front end: ``whitortho {tabulate,verify,transform}``.

Exit codes: 0 success, 1 an identity or the round-trip bound failed,
2 bad configuration or input, 3 evaluation failure.

Settings come from flags, then an optional ``--config`` JSON file, then
built-in defaults, in that order of precedence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .errors import WhittakerError
from .orthocheck import DEFAULT_SUITES, SUITES, SuiteGrid, run_suites
from .quadrature import panel_budget
from .transform import SpectralFunction, _Memo, _synthesis_floor, analyze, synthesize
from .whittaker import WhittakerOrder, macdonald_k_imag, whittaker_w_pair

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_EVAL = 3

BUNDLED_EXAMPLE = "gaussian_spectral.csv"


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class XRange:
    lo: float = 0.1
    hi: float = 20.0
    points: int = 50
    spacing: str = "log"

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.points)
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class RunConfig:
    command: str
    kappa: float = 0.0
    mu_list: tuple[float, ...] = (1.0,)
    mu_prime: tuple[float, ...] = ()
    xi: tuple[float, ...] = ()
    x_range: XRange = field(default_factory=XRange)
    tolerances: dict = field(default_factory=dict)
    suites: tuple[str, ...] = DEFAULT_SUITES
    output_format: str = "csv"
    output_path: str | None = None
    crosscheck_macdonald: bool = False
    input_path: str | None = None

    def validate(self) -> "RunConfig":
        if self.command not in ("tabulate", "verify", "transform"):
            raise ConfigError(f"unknown command {self.command!r}")
        if not math.isfinite(self.kappa):
            raise ConfigError("kappa must be finite")
        xr = self.x_range
        if xr.spacing not in ("log", "linear"):
            raise ConfigError("spacing must be 'log' or 'linear'")
        if xr.points < 1 or not 0.0 < xr.lo <= xr.hi or (xr.points > 1 and xr.lo == xr.hi):
            raise ConfigError("x range must satisfy 0 < x_lo < x_hi with points >= 1")
        for name, val in self.tolerances.items():
            if not (isinstance(val, (int, float)) and val > 0.0):
                raise ConfigError(f"tolerance {name!r} must be positive")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if not self.mu_list:
            raise ConfigError("need at least one mu")
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}, default, all")
        return self


# ---------------------------------------------------------------------------
# formatting


def fmt(v: float) -> str:
    """17 significant digits; nan/inf spelled out."""
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.17g}"


def _json(obj: Any) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _sibling(path: str | None, suffix: str) -> str | None:
    if path is None:
        return None
    p = Path(path)
    return str(p.with_name(f"{p.stem}_{suffix}{p.suffix}"))


# ---------------------------------------------------------------------------
# commands


def cmd_tabulate(cfg: RunConfig) -> int:
    if cfg.crosscheck_macdonald and cfg.kappa != 0.0:
        raise ConfigError("--crosscheck-macdonald needs kappa = 0")
    if cfg.output_format == "csv" and len(cfg.mu_list) != 1:
        raise ConfigError("CSV tabulation takes a single mu; use --format json for several")
    tables = []
    failed = False
    for mu in cfg.mu_list:
        order = WhittakerOrder(cfg.kappa, mu)
        rows = []
        for x in cfg.x_range.grid():
            x = float(x)
            try:
                w, d = whittaker_w_pair(order, x)
                row = {"x": x, "W": float(w.value), "dWdx": float(d.value),
                       "regime": w.regime.value, "err": float(w.abs_error_estimate)}
            except (WhittakerError, ArithmeticError) as exc:
                failed = True
                row = {"x": x, "W": math.nan, "dWdx": math.nan,
                       "regime": "error:" + type(exc).__name__, "err": math.nan}
            if cfg.crosscheck_macdonald:
                row["macdonald"] = math.sqrt(x / math.pi) * macdonald_k_imag(mu, 0.5 * x)
            rows.append(row)
        tables.append({"kappa": cfg.kappa, "mu": mu, "rows": rows})
    if cfg.output_format == "csv":
        rows = tables[0]["rows"]
        header = list(rows[0].keys())
        _emit(_csv(header, [[r[h] for h in header] for r in rows]), cfg.output_path)
    else:
        _emit(_json(tables[0] if len(tables) == 1 else tables), cfg.output_path)
    return EXIT_EVAL if failed else EXIT_OK


def _suite_grid(cfg: RunConfig) -> SuiteGrid:
    grid = SuiteGrid()
    kw: dict[str, Any] = {}
    if cfg.explicit_kappa:
        kw["kappas"] = (cfg.kappa,)
    if cfg.mu_prime:
        kw["pairs"] = tuple((m, mp) for m in cfg.mu_list for mp in cfg.mu_prime)
    elif cfg.explicit_mu:
        kw["mus"] = tuple(cfg.mu_list)
    if cfg.xi:
        kw["xis"] = tuple(cfg.xi)
    if "identity" in cfg.tolerances:
        kw["tol"] = float(cfg.tolerances["identity"])
    return replace(grid, **kw)


def cmd_verify(cfg: RunConfig) -> int:
    reports = run_suites(cfg.suites, _suite_grid(cfg))
    records = [
        {"identity": r.identity_name, "error": float(r.measured_error), "tol": float(r.tolerance),
         "passed": r.passed, "params": r.parameters}
        for r in reports
    ]
    if cfg.output_format == "csv":
        rows = [[r["identity"], r["error"], r["tol"], "true" if r["passed"] else "false", r["params"]] for r in records]
        _emit(_csv(["identity", "error", "tol", "passed", "params"], rows), cfg.output_path)
    else:
        _emit(_json(records), cfg.output_path)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def read_spectral(path: str | None) -> SpectralFunction:
    """Spectral function from CSV (``mu,f``) or JSON; the bundled example if ``path`` is None."""
    try:
        if path is None:
            text = resources.files("whitortho").joinpath("data", BUNDLED_EXAMPLE).read_text(encoding="utf-8")
            suffix = ".csv"
        else:
            text = Path(path).read_text(encoding="utf-8")
            suffix = Path(path).suffix.lower()
        if suffix == ".json":
            data = json.loads(text)
            if isinstance(data, dict):
                data = data.get("rows", data.get("spectral"))
            mu = [float(r["mu"]) for r in data]
            f = [float(r["f"]) for r in data]
        else:
            reader = csv.reader(io.StringIO(text))
            header = next(reader)
            if [h.strip() for h in header] != ["mu", "f"]:
                raise ConfigError(f"spectral CSV header must be 'mu,f', got {','.join(header)!r}")
            rows = [r for r in reader if r]
            mu = [float(r[0]) for r in rows]
            f = [float(r[1]) for r in rows]
        return SpectralFunction(np.array(mu), np.array(f))
    except ConfigError:
        raise
    except (OSError, ValueError, KeyError, TypeError, StopIteration, IndexError) as exc:
        raise ConfigError(f"cannot read spectral function: {exc}") from exc


def cmd_transform(cfg: RunConfig) -> int:
    f = read_spectral(cfg.input_path)
    tol = float(cfg.tolerances.get("quadrature", 1e-8))
    bound = float(cfg.tolerances.get("round_trip", 0.01))
    mus = [float(m) for m in cfg.mu_list]
    xs = [float(x) for x in cfg.x_range.grid()]
    if f.is_zero():
        radial = [0.0] * len(xs)
        recovered = [0.0] * len(mus)
    else:
        inner = tol / 10
        floor = _synthesis_floor(f, cfg.kappa, inner)
        g = _Memo(lambda x: synthesize(f, cfg.kappa, x, inner, atol=floor(x)))
        recovered = [analyze(g, cfg.kappa, m, tol).value for m in mus]
        radial = [g(x) for x in xs]
    expected = [float(f(m)) for m in mus]
    errors = [abs(r - e) / abs(e) if e != 0.0 else abs(r) for r, e in zip(recovered, expected)]
    sup = max(errors) if errors else 0.0
    passed = sup <= bound
    if cfg.output_format == "csv":
        _emit(_csv(["mu", "f"], list(zip(mus, recovered))), cfg.output_path)
        _emit(_csv(["x", "g"], list(zip(xs, radial))), _sibling(cfg.output_path, "radial") or cfg.output_path)
        summary = _csv(["sup_error", "bound", "passed"], [[sup, bound, "true" if passed else "false"]])
        _emit(summary, _sibling(cfg.output_path, "summary") or cfg.output_path)
    else:
        doc = {
            "kappa": cfg.kappa,
            "spectral": [{"mu": m, "f": v, "f_input": e} for m, v, e in zip(mus, recovered, expected)],
            "radial": [{"x": x, "g": v} for x, v in zip(xs, radial)],
            "sup_error": sup,
            "bound": bound,
            "passed": passed,
        }
        _emit(_json(doc), cfg.output_path)
    return EXIT_OK if passed else EXIT_FAILED


# ---------------------------------------------------------------------------
# argument handling


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="whitortho", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=["tabulate", "verify", "transform"])
    p.add_argument("--config", help="JSON file with RunConfig fields")
    p.add_argument("--kappa", type=float)
    p.add_argument("--mu", type=_floats, help="comma-separated list")
    p.add_argument("--mu-prime", type=_floats, help="comma-separated list (verify)")
    p.add_argument("--xi", type=_floats, help="comma-separated list (verify)")
    p.add_argument("--x-lo", type=float)
    p.add_argument("--x-hi", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--spacing", choices=["log", "linear"])
    p.add_argument("--tol", type=float, help="quadrature tolerance (transform) or identity tolerance (verify)")
    p.add_argument("--bound", type=float, help="round-trip error bound (transform)")
    p.add_argument("--suite", help="comma-separated suite names, 'default' or 'all' (verify)")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out")
    p.add_argument("--crosscheck-macdonald", action="store_true", default=None)
    p.add_argument("--input", help="spectral function file, CSV 'mu,f' or JSON (transform)")
    return p


_COMMAND_DEFAULTS = {
    "tabulate": {},
    "verify": {},
    "transform": {"mu_list": (1.7, 2.0, 2.3), "x_range": XRange(1e-3, 30.0, 40, "log")},
}


def _suite_names(text: str) -> tuple[str, ...]:
    names: list[str] = []
    for t in (s.strip() for s in text.split(",")):
        if t == "default":
            names.extend(DEFAULT_SUITES)
        elif t == "all":
            names.extend(SUITES)
        elif t:
            names.append(t)
    return tuple(dict.fromkeys(names))


def _load_file(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)} | {"x_lo", "x_hi", "points", "spacing", "mu", "suite"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults < config file < flags."""
    settings: dict[str, Any] = dict(_COMMAND_DEFAULTS[args.command])
    xr = settings.pop("x_range", XRange())
    x_parts = {"lo": xr.lo, "hi": xr.hi, "points": xr.points, "spacing": xr.spacing}
    tolerances: dict[str, float] = {}
    explicit_kappa = explicit_mu = False

    layers = []
    if args.config:
        layers.append(_load_file(args.config))
    layers.append({
        "kappa": args.kappa, "mu": args.mu, "mu_prime": args.mu_prime, "xi": args.xi,
        "x_lo": args.x_lo, "x_hi": args.x_hi, "points": args.points, "spacing": args.spacing,
        "suite": args.suite, "output_format": args.format, "output_path": args.out,
        "crosscheck_macdonald": args.crosscheck_macdonald, "input_path": args.input,
        "tolerances": {k: v for k, v in (
            ("identity" if args.command == "verify" else "quadrature", args.tol), ("round_trip", args.bound),
        ) if v is not None},
    })
    for layer in layers:
        for key, val in layer.items():
            if val is None:
                continue
            if key in ("x_lo", "x_hi", "points", "spacing"):
                x_parts[{"x_lo": "lo", "x_hi": "hi"}.get(key, key)] = val
            elif key == "x_range":
                x_parts.update(val)
            elif key in ("mu", "mu_list"):
                settings["mu_list"] = tuple(float(v) for v in (val if isinstance(val, (list, tuple)) else [val]))
                explicit_mu = True
            elif key == "kappa":
                settings["kappa"] = float(val)
                explicit_kappa = True
            elif key in ("suite", "suites"):
                settings["suites"] = _suite_names(val if isinstance(val, str) else ",".join(val))
            elif key == "tolerances":
                tolerances.update(val)
            elif key in ("mu_prime", "xi"):
                settings[key] = tuple(float(v) for v in (val if isinstance(val, (list, tuple)) else [val]))
            else:
                settings[key] = val
    try:
        x_range = XRange(float(x_parts["lo"]), float(x_parts["hi"]), int(x_parts["points"]), str(x_parts["spacing"]))
        cfg = RunConfig(command=args.command, x_range=x_range, tolerances=tolerances, **settings)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    object.__setattr__(cfg, "explicit_kappa", explicit_kappa)
    object.__setattr__(cfg, "explicit_mu", explicit_mu)
    return cfg.validate()


COMMANDS = {"tabulate": cmd_tabulate, "verify": cmd_verify, "transform": cmd_transform}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        panel_budget()  # reject a malformed WHITTAKER_PANEL_BUDGET up front
        cfg = resolve_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"whitortho: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"whitortho: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (WhittakerError, ArithmeticError) as exc:
        print(f"whitortho: evaluation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
