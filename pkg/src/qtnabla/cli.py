"""Command-line interface: ``qtnabla compute | verify | cache``.

Settings resolve as defaults < ``config.json`` in the cache directory <
``QTNABLA_*`` environment variables < command-line flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import llt, macdonald, shuffle, verify
from .ring import QtPoly, parse_poly
from .shapes import ShapeError, SkewShape, as_partition
from .symfun import SymFunc, e as e_basis

ENV_PREFIX = "QTNABLA_"
CONFIG_NAME = "config.json"
OBJECTS = ("nabla_en", "D", "qt_catalan", "hilbert", "llt", "macdonald", "enk")

# Largest n accepted without --force, as (limit for m = 1, limit for m >= 2).
LIMITS = {
    "nabla_en": (6, 4),
    "D": (6, 4),
    "main": (6, 4),
    "hilbert": (7, 5),
    "qt_catalan": (12, 8),
    "enk": (6, 4),
    "macdonald": (8, 8),
    "llt": (16, 16),
}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "qtnabla"


@dataclass
class Config:
    cache_dir: Path = field(default_factory=default_cache_dir)
    threads: int = 1
    output: str = "text"
    n: int | None = None
    m: int = 1
    mu: str | None = None
    eta: str | None = None
    eval: str | None = None
    profile: str = "quick"
    only: str | None = None
    force: bool = False

    def set(self, key: str, value) -> None:
        if value is None:
            return
        if key == "cache_dir":
            value = Path(value).expanduser()
        elif key == "threads":
            value = (os.cpu_count() or 1) if str(value) == "auto" else int(value)
            if value < 1:
                raise UsageError("--threads must be a positive integer or 'auto'")
        elif key in ("n", "m"):
            value = int(value)
        elif key == "force":
            value = value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
        elif key == "output" and value not in ("json", "csv", "text"):
            raise UsageError(f"--output must be json, csv or text, not {value!r}")
        setattr(self, key, value)


FLAG_KEYS = ("cache_dir", "threads", "output", "n", "m", "mu", "eta", "eval", "profile", "only", "force")


def resolve_config(args: argparse.Namespace, environ=os.environ) -> Config:
    cfg = Config()
    # the cache directory decides where the config file lives, so resolve it first
    cache_dir = getattr(args, "cache_dir", None) or environ.get(ENV_PREFIX + "CACHE_DIR")
    if cache_dir:
        cfg.set("cache_dir", cache_dir)
    path = cfg.cache_dir / CONFIG_NAME
    if path.exists():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"{path}: unreadable config file ({exc})") from exc
        for key, value in data.items():
            if key not in FLAG_KEYS or key == "cache_dir":
                raise UsageError(f"{path}: unknown setting {key!r}")
            cfg.set(key, value)
    for key in FLAG_KEYS:
        value = environ.get(ENV_PREFIX + key.upper())
        if value is not None and key != "cache_dir":
            cfg.set(key, value)
    for key in FLAG_KEYS:
        value = getattr(args, key, None)
        if key == "force" and value is False:
            continue
        if key != "cache_dir":
            cfg.set(key, value)
    return cfg


# -- argument parsing -----------------------------------------------------------

def parse_parts(text: str | None) -> tuple[int, ...]:
    if text is None or text.strip() in ("", "()", "0"):
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("()").split(",") if x)
    except ValueError as exc:
        raise UsageError(f"bad partition or composition {text!r}") from exc


def parse_eval(text: str | None) -> dict:
    """``q=1,t=0`` or ``t=1/q``; values are integers, fractions or monomials."""
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"bad --eval item {item!r}; expected var=value")
        var, val = (s.strip() for s in item.split("=", 1))
        if var not in ("q", "t", "u"):
            raise UsageError(f"unknown variable {var!r} in --eval")
        try:
            out[var] = Fraction(val)
            if out[var].denominator == 1:
                out[var] = int(out[var])
            continue
        except ValueError:
            pass
        if val.startswith("1/"):
            p = parse_poly(val[2:])
            if not p.is_monomial():
                raise UsageError(f"--eval {var}={val}: only monomial reciprocals are supported")
            ((e, c),) = p.items()
            if abs(c) != 1:
                raise UsageError(f"--eval {var}={val}: coefficient must be 1")
            out[var] = QtPoly.monomial(-e[0], -e[1], -e[2], c)
        else:
            try:
                out[var] = parse_poly(val)
            except ValueError as exc:
                raise UsageError(f"bad --eval value {val!r}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="degree / number of rows (ribbon size for llt)")
    common.add_argument("--m", type=int, help="power of nabla (default 1)")
    common.add_argument("--mu", help="partition or composition, e.g. 3,1")
    common.add_argument("--eta", help="second composition for super contents, e.g. 2")
    common.add_argument("--eval", help="substitution such as q=1,t=1 or t=1/q")
    common.add_argument("--output", help="json | csv | text (default text)")
    common.add_argument("--threads", help="worker count or 'auto'")
    common.add_argument("--cache-dir", dest="cache_dir", help="Macdonald table cache directory")
    common.add_argument("--profile", help="quick | full")
    common.add_argument("--only", help="comma-separated check names")
    common.add_argument("--force", action="store_true", help="override the size guards")

    parser = argparse.ArgumentParser(prog="qtnabla", description="Exact checks of the shuffle formula for nabla e_n.")
    sub = parser.add_subparsers(dest="command", required=True)
    pc = sub.add_parser("compute", parents=[common], help="compute one object")
    pc.add_argument("object", choices=OBJECTS)
    sub.add_parser("verify", parents=[common], help="run identity checks")
    pk = sub.add_parser("cache", parents=[common], help="manage the Macdonald table cache")
    pk.add_argument("action", choices=("warm", "validate", "clear"))
    return parser


# -- compute ----------------------------------------------------------------------------

def guard(name: str, n: int, m: int, force: bool) -> None:
    lim1, lim2 = LIMITS[name]
    limit = lim1 if m == 1 else lim2
    if n > limit and not force:
        raise UsageError(
            f"refusing {name} with n={n}, m={m}: the limit is n <= {limit} "
            f"({lim1} for m=1, {lim2} for m>=2); pass --force to override"
        )


def _need_n(cfg: Config) -> int:
    if cfg.n is None:
        raise UsageError("--n is required")
    if cfg.n < 1 or cfg.m < 1:
        raise UsageError("--n and --m must be positive")
    return cfg.n


def compute(obj: str, cfg: Config) -> list[tuple[str, int, int, str, object]]:
    """Rows (name, n, m, extra, value); value is a SymFunc or a polynomial."""
    m = cfg.m
    if obj == "macdonald":
        mu = as_partition(parse_parts(cfg.mu))
        if not mu:
            raise UsageError("--mu is required for macdonald")
        guard("macdonald", sum(mu), 1, cfg.force)
        return [("macdonald", sum(mu), 0, ",".join(map(str, mu)), macdonald.modified_macdonald(mu))]
    if obj == "llt":
        n = _need_n(cfg)
        mu = as_partition(parse_parts(cfg.mu))
        guard("llt", sum(mu), 1, cfg.force)
        core = llt.n_core(mu, n).core
        G = llt.llt_poly(SkewShape(mu, core), n)
        return [("llt", n, 0, ",".join(map(str, mu)), G)]
    n = _need_n(cfg)
    guard(obj, n, m, cfg.force)
    if obj == "nabla_en":
        return [("nabla_en", n, m, "", macdonald.nabla_power(e_basis(n), m).to("s"))]
    if obj == "D" and (cfg.mu or cfg.eta):
        mu, eta = parse_parts(cfg.mu), parse_parts(cfg.eta)
        extra = f"mu={','.join(map(str, mu))};eta={','.join(map(str, eta))}"
        return [("D_super", n, m, extra, shuffle.super_D_coeff(n, m, mu, eta))]
    if obj == "D":
        return [("D", n, m, "", shuffle.compute_D(n, m, workers=cfg.threads).to("s"))]
    if obj == "qt_catalan":
        return [("qt_catalan", n, m, "", shuffle.qt_catalan(n, m))]
    if obj == "hilbert":
        return [("hilbert", n, m, "", shuffle.hilbert_series(n, m))]
    if obj == "enk":
        return [
            ("nabla_enk", n, m, f"k={k}", macdonald.nabla_power(macdonald.e_nk(n, k), m).to("s"))
            for k in range(1, n + 1)
        ]
    raise UsageError(f"unknown object {obj!r}")


def apply_eval(value, subs: dict):
    return value.evaluate(**subs) if subs else value


def _value_text(value) -> str:
    if isinstance(value, SymFunc):
        return value.render()
    return str(value)


def render_rows(rows, output: str) -> str:
    if output == "json":
        data = []
        for name, n, m, extra, value in rows:
            item = {"name": name, "n": n, "m": m, "extra": extra}
            if isinstance(value, SymFunc):
                item["value"] = value.to_json()
            else:
                item["value"] = str(value)
            data.append(item)
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if output == "csv":
        flat = []
        for name, n, m, extra, value in rows:
            if isinstance(value, SymFunc):
                for lam, c in value.items():
                    tag = f"{value.basis}[{','.join(map(str, lam))}]"
                    flat.append((name, n, m, f"{extra};{tag}" if extra else tag, c))
            else:
                flat.append((name, n, m, extra, value))
        return shuffle.csv_rows(flat)
    lines = []
    for name, n, m, extra, value in rows:
        label = f"{extra}: " if extra and len(rows) > 1 else ""
        lines.append(label + _value_text(value))
    return "\n".join(lines) + "\n"


def cmd_compute(obj: str, cfg: Config) -> int:
    rows = compute(obj, cfg)
    subs = parse_eval(cfg.eval)
    rows = [(a, b, c, d, apply_eval(v, subs)) for a, b, c, d, v in rows]
    sys.stdout.write(render_rows(rows, cfg.output))
    return EXIT_OK


# -- verify -------------------------------------------------------------------------------

def _single_checks(names: Sequence[str], n: int, m: int) -> list[verify.CheckResult]:
    table = {
        "main": lambda: [verify.check_main_conjecture(n, m)],
        "specializations": lambda: verify.check_specializations(n, m),
        "enk": lambda: [verify.check_enk(n, m)],
        "enk_identity": lambda: [verify.check_enk_identity(n)],
        "hilbert_dim": lambda: [verify.check_dimension(n)],
        "catalan_dim": lambda: [verify.check_catalan_count(n)],
        "component_symmetry": lambda: [verify.check_component_symmetry(n, m)],
        "schur_positive": lambda: [verify.check_schur_positivity(n, m)],
        "component_positive": lambda: [verify.check_component_positivity(n, m)],
        "qt_symmetry": lambda: [verify.check_qt_symmetry(n, m)],
        "catalan_hook": lambda: [verify.check_catalan_hook(n, m)],
        "qt_catalan": lambda: [verify.check_catalan_poly(n, m)],
        "dinv_zero": lambda: [verify.check_dinv_zero(n)],
        "equal_rule": lambda: [verify.check_equal_rule(n, m)],
        "standardization": lambda: [verify.check_standardization(n, m)],
        "fermionic": lambda: [verify.check_fermionic(n)],
        "fermionic_reorder": lambda: [verify.check_fermionic_reorder(n)],
        "fermionic_H": lambda: [verify.check_fermionic_H(n)],
        "schroder": lambda: [verify.check_schroder(n)],
        "shuffle_reorder": lambda: [verify.check_shuffle_reorder(n)],
        "coherence": lambda: [verify.check_coherence(n, m)],
        "spin_inv": lambda: [verify.check_spin_inv(12, n)],
        "quotient_bijection": lambda: [verify.check_quotient_bijection(12, n)],
        "llt_positive": lambda: [verify.check_llt_positivity(10, n)],
        "dinv_transport": lambda: [verify.check_transport(n, m)],
        "llt_components": lambda: [verify.check_llt_components(n, m)],
    }
    out = []
    for name in names:
        if name not in table:
            raise UsageError(f"unknown check {name!r}; choose from {', '.join(table)}")
        out.extend(table[name]())
    return out


def render_report(results: Sequence[verify.CheckResult], output: str) -> str:
    if output == "json":
        return verify.report_json(results) + "\n"
    if output == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "params", "status", "elapsed", "witness"])
        for r in results:
            w.writerow([r.name, json.dumps(r.params, sort_keys=True), r.status, f"{r.elapsed:.4f}", r.witness or ""])
        return buf.getvalue()
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: Config) -> int:
    names = [s.strip() for s in cfg.only.split(",")] if cfg.only else None
    if cfg.profile not in ("quick", "full"):
        raise UsageError(f"--profile must be quick or full, not {cfg.profile!r}")
    if names:
        unknown = set(names) - set(verify.CHECK_NAMES)
        if unknown:
            raise UsageError(f"unknown check(s): {', '.join(sorted(unknown))}")
    if cfg.n is not None:
        if cfg.n < 1 or cfg.m < 1:
            raise UsageError("--n and --m must be positive")
        selected = names or [c for c in verify.CHECK_NAMES if c not in ("spin_inv", "quotient_bijection", "llt_positive")]
        if "main" in selected or "coherence" in selected or "schur_positive" in selected:
            guard("main", cfg.n, cfg.m, cfg.force)
        results = _single_checks(selected, cfg.n, cfg.m)
    else:
        results = verify.run_suite(cfg.profile, only=names, threads=cfg.threads)
    sys.stdout.write(render_report(results, cfg.output))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- cache -----------------------------------------------------------------------------------

def cmd_cache(action: str, cfg: Config) -> int:
    cache_dir = cfg.cache_dir
    if action == "clear":
        removed = 0
        if cache_dir.is_dir():
            for path in sorted(cache_dir.glob("macdonald-*.json")):
                path.unlink()
                removed += 1
        print(f"removed {removed} table(s) from {cache_dir}")
        return EXIT_OK
    if action == "warm":
        n = _need_n(cfg)
        guard("macdonald", n, 1, cfg.force)
        for d in range(1, n + 1):
            path = macdonald.cache_path(cache_dir, d)
            if path.exists():
                macdonald.load_table_file(path)
                print(f"degree {d}: present {path}")
                continue
            table = macdonald.MacdonaldTable.solve(d)
            print(f"degree {d}: wrote {macdonald.save_table(table, cache_dir)}")
        return EXIT_OK
    # validate
    paths = sorted(cache_dir.glob("macdonald-*.json")) if cache_dir.is_dir() else []
    if cfg.n is not None:
        paths = [p for p in paths if p == macdonald.cache_path(cache_dir, cfg.n)]
    status = EXIT_OK
    for path in paths:
        try:
            table = macdonald.load_table_file(path)
            problems = table.validate(full=True)
            if problems:
                raise macdonald.CacheError(f"{path}: {problems[0]}")
            print(f"ok {path}")
        except macdonald.CacheError as exc:
            print(f"FAIL {exc}")
            status = EXIT_FAIL
    if not paths:
        print(f"no tables in {cache_dir}")
    return status


# -- entry point ----------------------------------------------------------------------------

def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = resolve_config(args)
        macdonald.set_cache_dir(cfg.cache_dir if cfg.cache_dir.is_dir() else None)
        if args.command == "compute":
            return cmd_compute(args.object, cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        return cmd_cache(args.action, cfg)
    except (UsageError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except macdonald.CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
