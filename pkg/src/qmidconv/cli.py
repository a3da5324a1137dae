"""Command line harness: ``qmc verify``, ``qmc convolve`` and ``qmc list-suites``.

Configs are JSON files carrying ``"version": 1``. Reports are written with
sorted keys and no timestamps, so the same config and seed always produce
the same bytes.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import zlib
from pathlib import Path

import numpy as np

from . import convolution as conv
from .catalog import registry
from .catalog.jp import jp_system
from .errors import ConfigError, QMCError
from .qseries import QContext
from .qsystems import SystemSpec

CONFIG_VERSION = 1
REPORT_SCHEMA = "qmc-report/1"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_CONTEXT_KEYS = {"eps_tail", "eps_term", "n_max", "w_consec", "rank_tol", "residual_tol", "branch"}
_VERIFY_KEYS = {"version", "suites", "q", "context", "draws", "seed", "params", "grid", "format"}
_CONVOLVE_KEYS = {"version", "q", "context", "lam", "system", "middle"}


# ------------------------------------------------------------------ JSON helpers


def to_jsonable(v):
    """Complex numbers become floats when real, else {"re", "im"}; NaN becomes null, infinities strings."""
    if isinstance(v, dict):
        return {str(k): to_jsonable(u) for k, u in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(u) for u in v]
    if isinstance(v, np.ndarray):
        return to_jsonable(v.tolist())
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        if v.imag == 0:
            return to_jsonable(v.real)
        return {"re": to_jsonable(v.real), "im": to_jsonable(v.imag)}
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return v


def from_jsonable(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return complex(v["re"], v["im"])
    if isinstance(v, list):
        return [from_jsonable(u) for u in v]
    return v


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


# ------------------------------------------------------------------ config


def load_config(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    if data.get("version") != CONFIG_VERSION:
        raise ConfigError(f"config version must be {CONFIG_VERSION}, got {data.get('version')!r}")
    return data


def _check_keys(data: dict, allowed: set, where: str):
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")


def _contexts(data: dict) -> list[QContext]:
    qs = data.get("q", [0.3, 0.5])
    if not isinstance(qs, list):
        qs = [qs]
    if not qs:
        raise ConfigError("q list is empty")
    overrides = data.get("context", {})
    if not isinstance(overrides, dict):
        raise ConfigError("context must be an object")
    _check_keys(overrides, _CONTEXT_KEYS, "context")
    try:
        return [QContext(from_jsonable(q), **overrides) for q in qs]
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad context: {e}") from e


@dataclasses.dataclass(frozen=True)
class VerifyConfig:
    suites: tuple
    contexts: tuple
    count: int
    seed: int
    explicit: dict
    grid: registry.GridSpec
    fmt: str

    def describe(self) -> dict:
        return {
            "suites": list(self.suites),
            "q": [c.q for c in self.contexts],
            "context": {k: getattr(self.contexts[0], k) for k in sorted(_CONTEXT_KEYS - {"branch"})}
            | {"branch": self.contexts[0].branch.value},
            "draws": {"count": self.count},
            "seed": self.seed,
            "params": {fam: [p.as_dict() for p in ps] for fam, ps in sorted(self.explicit.items())},
            "grid": dataclasses.asdict(self.grid),
        }


def verify_config(data: dict, suites=None, seed=None, fmt=None) -> VerifyConfig:
    """Validate a parsed config; command line values win over the file."""
    _check_keys(data, _VERIFY_KEYS, "config")
    names = list(suites) if suites else data.get("suites", registry.suite_ids())
    if not isinstance(names, list):
        raise ConfigError("suites must be a list")
    unknown = [s for s in names if s not in registry.SUITES]
    if unknown:
        raise ConfigError(f"unknown suites: {unknown}")
    names = sorted(set(names))

    draws = data.get("draws", {})
    if not isinstance(draws, dict):
        raise ConfigError("draws must be an object")
    _check_keys(draws, {"count"}, "draws")
    count = draws.get("count", 5)
    if not isinstance(count, int) or count < 0:
        raise ConfigError("draws.count must be a nonnegative integer")

    seed = data.get("seed", 0) if seed is None else seed
    if not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
        raise ConfigError("seed must be an unsigned 64-bit integer")

    explicit = {}
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object keyed by family")
    for fam, entries in params.items():
        if fam not in registry.FAMILIES:
            raise ConfigError(f"unknown parameter family {fam!r}")
        if not isinstance(entries, list):
            raise ConfigError(f"params.{fam} must be a list")
        try:
            explicit[fam] = tuple(registry.FAMILIES[fam].from_dict(e) for e in entries)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"bad parameters for {fam}: {e}") from e

    grid = data.get("grid", {})
    if not isinstance(grid, dict):
        raise ConfigError("grid must be an object")
    _check_keys(grid, {"points", "lo", "hi"}, "grid")
    try:
        grid = registry.GridSpec(**grid)
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e

    fmt = fmt or data.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, got {fmt!r}")
    return VerifyConfig(tuple(names), tuple(_contexts(data)), count, seed, explicit, grid, fmt)


# ------------------------------------------------------------------ verify


def _draws(cfg: VerifyConfig, family: str, qi: int, ctx: QContext) -> list:
    if family in cfg.explicit:
        return [("explicit", p) for p in cfg.explicit[family]]
    rng = np.random.default_rng([cfg.seed, zlib.crc32(family.encode()), qi])
    draw = registry.FAMILIES[family].draw
    return [("random", draw(ctx, rng)) for _ in range(cfg.count)]


def _run_check(ctx, check, p) -> dict:
    tol = check.tolerance(ctx)
    try:
        outcome = check.run(ctx, p)
    except Exception as e:  # a crashing check is a failed check, not a crashed run
        return {"status": "error", "error": f"{type(e).__name__}: {e}", "tol": tol, "gates": [], "measurements": []}
    gates = [{"name": g.name, "satisfied": g.satisfied, "margin": g.margin} for g in outcome.gates]
    if outcome.gated_out:
        return {"status": "skip", "tol": tol, "gates": gates, "measurements": []}
    rows = [{"label": m.label, "value": m.value, "pass": bool(m.value <= tol)} for m in outcome.measurements]
    ok = bool(rows) and all(r["pass"] for r in rows)
    worst = max((r["value"] for r in rows), default=None)
    return {"status": "pass" if ok else "fail", "tol": tol, "gates": gates, "measurements": rows, "worst": worst}


def run_verify(cfg: VerifyConfig) -> dict:
    entries = []
    with registry.use_grid(cfg.grid):
        for qi, ctx in enumerate(cfg.contexts):
            cache: dict = {}
            for suite in cfg.suites:
                for check in registry.SUITES[suite][1]:
                    if check.family not in cache:
                        try:
                            cache[check.family] = _draws(cfg, check.family, qi, ctx)
                        except Exception as e:
                            cache[check.family] = e
                    draws = cache[check.family]
                    if isinstance(draws, Exception):
                        entries.append({"suite": suite, "check": check.id, "family": check.family, "q": ctx.q,
                                        "draw": -1, "source": "random", "params": None, "status": "error",
                                        "error": f"parameter draw failed: {draws}", "tol": check.tolerance(ctx),
                                        "gates": [], "measurements": []})
                        continue
                    for k, (source, p) in enumerate(draws):
                        entry = {"suite": suite, "check": check.id, "family": check.family, "q": ctx.q,
                                 "q_index": qi, "draw": k, "source": source, "params": p.as_dict()}
                        entry.update(_run_check(ctx, check, p))
                        entries.append(entry)
    entries.sort(key=lambda e: (e["suite"], e["check"], e.get("q_index", 0), e["draw"]))
    return {
        "schema": REPORT_SCHEMA,
        "seed": cfg.seed,
        "config": cfg.describe(),
        "summary": _summary(entries),
        "entries": entries,
    }


def _summary(entries) -> dict:
    total = {s: 0 for s in ("pass", "fail", "skip", "error")}
    per_suite: dict = {}
    for e in entries:
        total[e["status"]] += 1
        per_suite.setdefault(e["suite"], {s: 0 for s in total})[e["status"]] += 1
    return {"total": total, "suites": per_suite}


def report_failed(report: dict) -> bool:
    t = report["summary"]["total"]
    return t["fail"] + t["error"] > 0


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "check", "q", "draw", "status", "label", "value", "tol", "pass"])
    for e in report["entries"]:
        q = json.dumps(to_jsonable(e["q"]), sort_keys=True)
        if not e["measurements"]:
            w.writerow([e["suite"], e["check"], q, e["draw"], e["status"], "", "", repr(e["tol"]), ""])
        for m in e["measurements"]:
            w.writerow([e["suite"], e["check"], q, e["draw"], e["status"], m["label"], repr(m["value"]),
                        repr(e["tol"]), int(m["pass"])])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    return report_csv(report) if fmt == "csv" else dumps(report)


# ------------------------------------------------------------------ convolve


def _system_from(ctx, data) -> SystemSpec:
    if not isinstance(data, dict):
        raise ConfigError("system must be an object")
    kind = data.get("kind")
    try:
        if kind == "jp":
            _check_keys(data, {"kind", "mu", "alphas", "betas"}, "system")
            return jp_system(ctx, from_jsonable(data["mu"]), from_jsonable(data["alphas"]), from_jsonable(data["betas"]))
        if kind == "matrices":
            _check_keys(data, {"kind", "B_inf", "B", "poles"}, "system")
            return SystemSpec(from_jsonable(data["B_inf"]), from_jsonable(data["B"]), from_jsonable(data["poles"]))
    except KeyError as e:
        raise ConfigError(f"system is missing {e}") from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad system: {e}") from e
    raise ConfigError(f"system.kind must be 'jp' or 'matrices', got {kind!r}")


def run_convolve(data: dict) -> dict:
    _check_keys(data, _CONVOLVE_KEYS, "config")
    if isinstance(data.get("q"), list):
        raise ConfigError("convolve takes a single q")
    ctx = _contexts(data)[0]
    if "lam" not in data:
        raise ConfigError("lam is required")
    lam = from_jsonable(data["lam"])
    spec = _system_from(ctx, data.get("system"))
    res = conv.convolve(ctx, spec, lam)
    rep = conv.subspaces(ctx, res)
    out = {"q": ctx.q, "lam": lam, "F_inf": res.F_inf, "F": list(res.F)} | rep.to_dict()
    if data.get("middle", False):
        F_inf, F = conv.middle_convolve(ctx, res, report=rep)
        out["middle"] = {"F_inf": F_inf, "F": list(F)}
    return out


# ------------------------------------------------------------------ entry point


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qmc", description="q-middle convolution verification harness")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run catalog suites and write a report")
    v.add_argument("--config", required=True)
    v.add_argument("--suite", action="append", default=None, help="suite id; repeat for several")
    v.add_argument("--out", help="directory for report.json / report.csv (default: stdout)")
    v.add_argument("--format", choices=("json", "csv"))
    v.add_argument("--seed", type=int)

    c = sub.add_parser("convolve", help="print the convolved tuple and its invariant subspaces")
    c.add_argument("--config", required=True)

    ls = sub.add_parser("list-suites", help="list suite ids")
    ls.add_argument("--records", action="store_true", help="dump the full check registry as JSON")
    return ap


def _emit(text: str, out_dir, name: str):
    if out_dir is None:
        sys.stdout.write(text)
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "list-suites":
            if args.records:
                sys.stdout.write(dumps(registry.registry_records()))
            else:
                for sid in registry.suite_ids():
                    desc, checks = registry.SUITES[sid]
                    print(f"{sid}\t{len(checks)} checks\t{desc}")
            return EXIT_OK
        data = load_config(args.config)
        if args.command == "convolve":
            try:
                text = dumps(run_convolve(data))
            except QMCError as e:
                raise ConfigError(f"{type(e).__name__}: {e}") from e
            sys.stdout.write(text)
            return EXIT_OK
        cfg = verify_config(data, args.suite, args.seed, args.format)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    report = run_verify(cfg)
    _emit(render(report, cfg.fmt), args.out, f"report.{cfg.fmt}")
    t = report["summary"]["total"]
    print(f"pass={t['pass']} fail={t['fail']} skip={t['skip']} error={t['error']}", file=sys.stderr)
    return EXIT_FAIL if report_failed(report) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
