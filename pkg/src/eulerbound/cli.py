"""Command-line entry point: ``eulerbound {product,verify,zeta,sequence}``.

Settings are layered: built-in defaults, then an optional ``--config`` file of
``key=value`` lines, then flags given on the command line.  The environment
variable ``EULERBOUND_PRIME_LIMIT`` fixes the size of the prime table a run
builds (otherwise the smallest table covering the run is used).

Exit status: 0 on success, 1 when a required inequality fails, 2 on invalid
configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction

from . import __version__
from .bounds import (
    DEFAULT_ASYMPTOTIC_FROM,
    DEFAULT_SAFETY,
    DEFAULT_TERMS,
    IrrationalityParams,
    ParameterError,
    sci_str,
    sweep_euler,
    sweep_ratio,
    verify_chain,
)
from .intervals import decimal_str, fraction_str
from .primes import CapacityError, Effort, build_prime_table, max_limit
from .products import KINDS, growth_check_euler, growth_check_ratio, partial_product
from .sequences import (
    EUCLID_CAP,
    HERMITE_CAP,
    MISMATCH,
    euclid_term,
    hermite_term,
    prime_harmonic_sums,
)
from .zeta import (
    BERNOULLI_MAX,
    bernoulli,
    l_chi4_target,
    zeta_even_coefficient,
    zeta_interval,
    zeta_ratio_exact,
)

ENV_PRIME_LIMIT = "EULERBOUND_PRIME_LIMIT"


class ConfigError(ValueError):
    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.field = name


@dataclass
class RunConfig:
    command: str = ""
    what: str | None = None
    kind: str = "euler"
    chain: str = "euler"
    s: list[int] = field(default_factory=list)
    x: list[int] = field(default_factory=list)
    x_range: str | None = None
    mu: Fraction | None = None
    eps: Fraction = Fraction(1, 10)
    c4: Fraction = Fraction(1)
    terms: int = DEFAULT_TERMS
    asymptotic_from: int = DEFAULT_ASYMPTOTIC_FROM
    safety: Fraction = Fraction(DEFAULT_SAFETY)
    sweep: int | None = None
    growth: bool = False
    n: int | None = None
    m: int | None = None
    max: int | None = None
    count: int | None = None
    trial_bound: int = 10**6
    rho_iterations: int = 5_000_000
    time_cap: float = 120.0
    format: str = "json"
    out: str | None = None
    threads: int = 1
    prime_limit: int | None = None


# -- parsing helpers ---------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    return [int(part) for part in str(text).replace(",", " ").split()]


def parse_x_range(text: str) -> list[int]:
    """``start:stop[:geometric|linear[:step]]``; geometric steps by x10 by default."""
    parts = text.split(":")
    if len(parts) < 2 or len(parts) > 4:
        raise ValueError("expected start:stop[:geometric|linear[:step]]")
    start, stop = int(parts[0]), int(parts[1])
    mode = parts[2] if len(parts) > 2 else "geometric"
    if mode not in ("geometric", "linear"):
        raise ValueError(f"unknown stepping {mode!r}")
    step = int(parts[3]) if len(parts) > 3 else (10 if mode == "geometric" else 1)
    if start < 1 or stop < start:
        raise ValueError("need 1 <= start <= stop")
    if (mode == "geometric" and step < 2) or step < 1:
        raise ValueError("step too small")
    xs, x = [], start
    while x <= stop:
        xs.append(x)
        x = x * step if mode == "geometric" else x + step
    return xs


_CONVERT = {
    "s": _int_list, "x": _int_list,
    "mu": Fraction, "eps": Fraction, "c4": Fraction, "safety": Fraction,
    "terms": int, "asymptotic_from": int, "sweep": int, "n": int, "m": int,
    "max": int, "count": int, "trial_bound": int, "rho_iterations": int,
    "time_cap": float, "threads": int, "prime_limit": int,
    "growth": lambda v: str(v).lower() in ("1", "true", "yes", "on"),
}


def read_config_file(path: str) -> dict:
    """``key=value`` lines; ``#`` starts a comment; dashes and underscores are interchangeable."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("config", f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _merge(cfg: RunConfig, values: dict, source: str) -> None:
    names = {f.name for f in fields(RunConfig)}
    for key, value in values.items():
        if value is None:
            continue
        if key not in names:
            raise ConfigError(key, f"unknown setting in {source}")
        try:
            if key in _CONVERT and not isinstance(value, (list, Fraction, bool)):
                value = _CONVERT[key](value)
            elif key in ("mu", "eps", "c4", "safety") and not isinstance(value, Fraction):
                value = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(key, f"bad value {value!r} ({exc})") from None
        setattr(cfg, key, value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--format", choices=("json", "csv", "table"))
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--threads", type=int, help="worker threads (output is identical for any value)")

    parser = argparse.ArgumentParser(prog="eulerbound", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", parents=[common], help="exact partial Euler products")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--s", help="exponent(s), comma separated")
    p.add_argument("--x", help="cutoff(s), comma separated")
    p.add_argument("--x-range", dest="x_range", help="start:stop[:geometric|linear[:step]]")
    p.add_argument("--growth", action="store_const", const=True, help="attach the 2-adic growth verdict")

    v = sub.add_parser("verify", parents=[common], help="verify the pi(x) lower-bound chains")
    v.add_argument("--chain", choices=("euler", "ratio"))
    v.add_argument("--s", help="exponent(s), comma separated (ratio chain: offset s, default 1)")
    v.add_argument("--x", help="cutoff(s), comma separated")
    v.add_argument("--x-range", dest="x_range")
    v.add_argument("--mu", help="irrationality measure (default 2 for euler, 1 for ratio)")
    v.add_argument("--eps")
    v.add_argument("--c4")
    v.add_argument("--terms", help="terms in the zeta(s) enclosure")
    v.add_argument("--asymptotic-from", dest="asymptotic_from",
                   help="x below which large-x links are reported but not required")
    v.add_argument("--safety", help="factor on the ratio tail bound's leading term")
    v.add_argument("--sweep", help="check pi(x) >= bound at every integer x up to this value")

    z = sub.add_parser("zeta", parents=[common], help="exact zeta-related values")
    z.add_argument("what", choices=("ratio", "bernoulli", "coefficient", "interval", "l-target"))
    z.add_argument("--n")
    z.add_argument("--m")
    z.add_argument("--s")
    z.add_argument("--terms")

    q = sub.add_parser("sequence", parents=[common], help="Euclid/Hermite sequences, prime harmonic sum")
    q.add_argument("what", choices=("euclid", "hermite", "harmonic"))
    q.add_argument("--max", help="largest n for euclid")
    q.add_argument("--count", help="number of hermite terms")
    q.add_argument("--x", help="cutoff(s) for harmonic")
    q.add_argument("--x-range", dest="x_range")
    q.add_argument("--trial-bound", dest="trial_bound")
    q.add_argument("--rho-iterations", dest="rho_iterations")
    q.add_argument("--time-cap", dest="time_cap")
    return parser


def load_config(argv: list[str] | None = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    cfg = RunConfig()
    if os.environ.get(ENV_PRIME_LIMIT):
        _merge(cfg, {"prime_limit": os.environ[ENV_PRIME_LIMIT]}, ENV_PRIME_LIMIT)
    config_path = args.pop("config", None)
    if config_path:
        _merge(cfg, read_config_file(config_path), config_path)
    _merge(cfg, args, "command line")
    validate(cfg)
    return cfg


# -- validation ----------------------------------------------------------------------

def _xs(cfg: RunConfig) -> list[int]:
    xs = list(cfg.x)
    if cfg.x_range:
        try:
            xs += parse_x_range(cfg.x_range)
        except ValueError as exc:
            raise ConfigError("x_range", str(exc)) from None
    return sorted(set(xs))


def validate(cfg: RunConfig) -> None:
    if cfg.threads < 1:
        raise ConfigError("threads", "must be >= 1")
    if cfg.format not in ("json", "csv", "table"):
        raise ConfigError("format", "must be json, csv or table")
    if cfg.prime_limit is not None and not 2 <= cfg.prime_limit <= max_limit():
        raise ConfigError("prime_limit", f"must be in [2, {max_limit()}]")
    cmd = cfg.command
    if cmd == "product":
        if cfg.kind not in KINDS:
            raise ConfigError("kind", f"must be one of {KINDS}")
        if not cfg.s:
            cfg.s = [2] if cfg.kind == "euler" else [1]
        if any(s < 1 for s in cfg.s):
            raise ConfigError("s", "must be >= 1")
        if cfg.kind == "euler" and any(s < 2 for s in cfg.s) and not cfg.growth:
            raise ConfigError("s", "euler products need s >= 2 (s = 1 only with --growth)")
        if any(x < 2 for x in _xs(cfg)):
            raise ConfigError("x", "must be >= 2")
    elif cmd == "verify":
        if not cfg.s:
            cfg.s = [2] if cfg.chain == "euler" else [1]
        if cfg.chain == "euler" and any(s < 2 for s in cfg.s):
            raise ConfigError("s", "the euler chain needs s >= 2")
        if cfg.chain == "ratio" and any(s < 1 for s in cfg.s):
            raise ConfigError("s", "the ratio chain needs s >= 1")
        if cfg.mu is None:
            cfg.mu = Fraction(2) if cfg.chain == "euler" else Fraction(1)
        try:
            IrrationalityParams(cfg.mu, cfg.eps)
        except ParameterError as exc:
            raise ConfigError("mu" if "mu" in str(exc) else "eps", str(exc)) from None
        if cfg.eps <= 0:
            raise ConfigError("eps", "must be > 0")
        if cfg.c4 <= 0:
            raise ConfigError("c4", "must be > 0")
        if cfg.terms < 1:
            raise ConfigError("terms", "must be >= 1")
        if any(x < 2 for x in _xs(cfg)):
            raise ConfigError("x", "must be >= 2")
        if cfg.sweep is not None and cfg.sweep < 2:
            raise ConfigError("sweep", "must be >= 2")
    elif cmd == "zeta":
        need = {"ratio": "n", "coefficient": "n", "bernoulli": "m", "interval": "s"}.get(cfg.what)
        if need and getattr(cfg, need) is None:
            raise ConfigError(need, f"required for 'zeta {cfg.what}'")
        if cfg.what in ("ratio", "coefficient") and cfg.n < 1:
            raise ConfigError("n", "must be >= 1")
        if cfg.what == "bernoulli" and not 0 <= cfg.m <= BERNOULLI_MAX:
            raise ConfigError("m", f"must be in [0, {BERNOULLI_MAX}]")
        if cfg.what in ("ratio", "coefficient") and 4 * cfg.n > BERNOULLI_MAX:
            raise ConfigError("n", f"needs Bernoulli index {4 * cfg.n} > {BERNOULLI_MAX}")
        if cfg.what == "interval":
            if len(cfg.s) != 1 or cfg.s[0] < 2:
                raise ConfigError("s", "give a single s >= 2")
            if cfg.terms < 1:
                raise ConfigError("terms", "must be >= 1")
    elif cmd == "sequence":
        if cfg.what == "euclid":
            if cfg.max is None or not 1 <= cfg.max <= EUCLID_CAP:
                raise ConfigError("max", f"must be in [1, {EUCLID_CAP}]")
        elif cfg.what == "hermite":
            if cfg.count is None or cfg.count < 1:
                raise ConfigError("count", "must be >= 1")
            if cfg.count > 303:  # pi(2000)
                raise ConfigError("count", f"must be <= pi({HERMITE_CAP}) = 303")
        elif any(x < 3 for x in _xs(cfg)):
            raise ConfigError("x", "must be >= 3")
    if cmd in ("product", "verify") or (cmd == "sequence" and cfg.what == "harmonic"):
        if cfg.sweep is None and not _xs(cfg):
            raise ConfigError("x", "give --x or --x-range")
    if cfg.prime_limit is not None:
        need = max(_xs(cfg) + [cfg.sweep or 0, 2])
        if need > cfg.prime_limit:
            raise ConfigError("x", f"{need} exceeds prime table limit {cfg.prime_limit}")


# -- commands ---------------------------------------------------------------------------

def _pool_map(cfg: RunConfig, fn, items):
    if cfg.threads == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(fn, items))


def _table(cfg: RunConfig, need: int):
    return build_prime_table(max(cfg.prime_limit or 2, need, 2))


def cmd_product(cfg: RunConfig) -> tuple[list[dict], int]:
    xs = _xs(cfg)
    table = _table(cfg, xs[-1])
    items = [(s, x) for s in cfg.s for x in xs]

    def run(item):
        s, x = item
        record = partial_product(cfg.kind, s, x, table)
        row = record.to_dict()
        if cfg.growth and cfg.kind in ("euler", "ratio"):
            check = growth_check_euler if cfg.kind == "euler" else growth_check_ratio
            row["growth"] = check(record).to_dict()
        return row

    return _pool_map(cfg, run, items), 0


def cmd_verify(cfg: RunConfig) -> tuple[list[dict], int]:
    params = IrrationalityParams(cfg.mu, cfg.eps)
    if cfg.sweep is not None:
        table = _table(cfg, cfg.sweep)
        rows = []
        for s in cfg.s:
            if cfg.chain == "euler":
                result = sweep_euler(s, params, cfg.sweep, cfg.terms, table)
            else:
                result = sweep_ratio(params, cfg.sweep, cfg.c4, s, table)
            rows.append({"s": s, "params": params.to_dict(), **result.to_dict()})
        status = 0 if all(r["x0"] is not None and r["x0"] <= cfg.asymptotic_from for r in rows) else 1
        return rows, status
    xs = _xs(cfg)
    table = _table(cfg, xs[-1])
    items = [(s, x) for s in cfg.s for x in xs]

    def run(item):
        s, x = item
        return verify_chain(cfg.chain, s, x, params, terms=cfg.terms, c4=cfg.c4,
                            asymptotic_from=cfg.asymptotic_from, safety=cfg.safety, table=table)

    reports = _pool_map(cfg, run, items)
    status = 0 if all(r.required_ok for r in reports) else 1
    if cfg.format in ("csv", "table"):
        return [r.csv_row() for r in reports], status
    return [r.to_dict() for r in reports], status


def cmd_zeta(cfg: RunConfig) -> tuple[list[dict], int]:
    what = cfg.what
    if what == "ratio":
        value = zeta_ratio_exact(cfg.n)
        row = {"quantity": f"zeta({2 * cfg.n})^2/zeta({4 * cfg.n})", "n": cfg.n, "value": fraction_str(value)}
    elif what == "coefficient":
        value = zeta_even_coefficient(cfg.n)
        row = {"quantity": f"zeta({2 * cfg.n})/pi^{2 * cfg.n}", "n": cfg.n, "value": fraction_str(value)}
    elif what == "bernoulli":
        row = {"quantity": f"B_{cfg.m}", "m": cfg.m, "value": fraction_str(bernoulli(cfg.m))}
    elif what == "interval":
        s = cfg.s[0]
        z = zeta_interval(s, cfg.terms)
        row = {"quantity": f"zeta({s})", "s": s, "terms": cfg.terms,
               "lo": fraction_str(z.lo), "hi": fraction_str(z.hi),
               "lo_approx": decimal_str(z.lo, 15), "hi_approx": decimal_str(z.hi, 15),
               "width_approx": sci_str(z.width, 6)}
    else:
        row = {"quantity": "L(1,chi4)^3/L(3,chi4)", "value": fraction_str(l_chi4_target())}
    return [row], 0


def cmd_sequence(cfg: RunConfig) -> tuple[list[dict], int]:
    if cfg.what == "euclid":
        effort = Effort(cfg.trial_bound, cfg.rho_iterations, cfg.time_cap)
        terms = _pool_map(cfg, lambda n: euclid_term(n, effort), range(1, cfg.max + 1))
        mismatches = [t.index for t in terms if t.paper_match == MISMATCH]
        if mismatches:
            print(f"warning: computed terms differ from the printed list at n = "
                  f"{', '.join(map(str, mismatches))}", file=sys.stderr)
        status = 0 if all(t.complete for t in terms) else 1
        return [t.to_dict() for t in terms], status
    if cfg.what == "hermite":
        table = _table(cfg, HERMITE_CAP)
        terms = _pool_map(cfg, lambda k: hermite_term(k, table), range(1, cfg.count + 1))
        return [t.to_dict() for t in terms], 0
    xs = _xs(cfg)
    return [h.to_dict() for h in prime_harmonic_sums(xs, _table(cfg, xs[-1]))], 0


COMMANDS = {"product": cmd_product, "verify": cmd_verify, "zeta": cmd_zeta, "sequence": cmd_sequence}


# -- output ----------------------------------------------------------------------------------

def _flatten(row: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = json.dumps(value, sort_keys=True, separators=(",", ":"))
        else:
            out[name] = value
    return out


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n" for row in rows)
    flat = [_flatten(row) for row in rows]
    columns = sorted({key for row in flat for key in row})
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue()
    return _text_table(flat, columns)


def _text_table(rows: list[dict], columns: list[str], max_cell: int = 40) -> str:
    def cell(value) -> str:
        text = "" if value is None else str(value)
        return text if len(text) <= max_cell else text[: max_cell - 3] + "..."

    grid = [[cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in grid]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in grid]
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = load_config(argv)
    except ConfigError as exc:
        print(f"eulerbound: invalid configuration: {exc}", file=sys.stderr)
        return 2
    try:
        rows, status = COMMANDS[cfg.command](cfg)
    except (CapacityError, ParameterError) as exc:
        print(f"eulerbound: {exc}", file=sys.stderr)
        return 2
    text = render(rows, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
