"""Command-line driver for the verification harness."""

from __future__ import annotations

import argparse
import glob
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .alcove import reduced_chain
from .chevalley import admissible_subsets, dump_records
from .qbg import dump_qbg
from .rootsys import SignedPerm, parse_weight
from .verify import FAMILIES, CheckResult, UnknownCheck, check_golden, golden_payload, run_checks, select_families


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int = 2
    qdeg: int = 3
    checks: list[str] = field(default_factory=lambda: ["*"])
    seed: int = 0
    seed2: int = 1
    out: str | None = None
    format: str = "json"
    golden: str | None = None

    def validate(self) -> list[str]:
        warnings = []
        if not 1 <= self.n <= 4:
            raise ConfigError(f"rank n must be in [1, 4], got {self.n}")
        if self.n > 3:
            warnings.append(f"rank {self.n} is expensive; expect long run times")
        if self.qdeg < 1:
            raise ConfigError(f"truncation degree must be >= 1, got {self.qdeg}")
        if self.format not in ("json", "md"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.seed == self.seed2:
            warnings.append("seed and seed2 are equal; chain independence is trivially satisfied")
        return warnings


_INT_KEYS = {"n", "qdeg", "seed", "seed2"}
_KEY_ALIASES = {"rank": "n", "trunc_degree": "qdeg", "D": "qdeg", "output": "out"}


def read_config_file(path: str) -> dict:
    """Parse a ``key=value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = _KEY_ALIASES.get(key, key)
            if key not in RunConfig.__dataclass_fields__:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _coerce(key, value)
    return out


def _coerce(key: str, value):
    if key in _INT_KEYS:
        return int(value)
    if key == "checks":
        return [p.strip() for p in value.split(",") if p.strip()] if isinstance(value, str) else list(value)
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qkwhitney",
        description="Verify quantum K-theoretic Whitney relations for the type C flag manifold.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--config", help="key=value file; command-line flags override it")
    p.add_argument("--n", type=int, help="rank (default 2)")
    p.add_argument("--qdeg", type=int, help="Novikov truncation degree D (default 3)")
    p.add_argument("--checks", help="comma-separated glob patterns (default '*')")
    p.add_argument("--seed", type=int, help="lambda-chain seed (default 0)")
    p.add_argument("--seed2", type=int, help="second seed for chain independence (default 1)")
    p.add_argument("--format", choices=("json", "md"), help="report format (default json)")
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--golden", help="directory of golden files to compare against")
    p.add_argument("--write-golden", metavar="DIR", help="write golden files for ranks 1 and 2 and exit")
    p.add_argument("--list-checks", action="store_true", help="list check families and exit")
    p.add_argument("--dump-qbg", action="store_true", help="print the quantum Bruhat graph as JSON and exit")
    p.add_argument("--dump-chain", metavar="WEIGHT", help="print the reduced chain of WEIGHT (e.g. 1,0,-1) and exit")
    p.add_argument("--dump-records", metavar="WEIGHT", help="print admissible subsets for WEIGHT as JSON rows and exit")
    p.add_argument("--start", metavar="WINDOW", help="start element for --dump-records (default identity)")
    return p


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = read_config_file(args.config) if args.config else {}
    for key in RunConfig.__dataclass_fields__:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = _coerce(key, v)
    return RunConfig(**values)


def _glob_golden(directory: str) -> list[str]:
    return sorted(glob.glob(os.path.join(directory, "*.json")))


def run(cfg: RunConfig) -> tuple[dict, list[CheckResult]]:
    t0 = time.perf_counter()
    results = run_checks(cfg.checks, cfg.n, cfg.qdeg, cfg.seed, cfg.seed2)
    if cfg.golden:
        files = _glob_golden(cfg.golden)
        if not files:
            raise ConfigError(f"no golden files in {cfg.golden}")
        results.extend(check_golden(f, cfg.seed) for f in files)
    passed = sum(r.passed for r in results)
    report = {
        "config": asdict(cfg),
        "results": [r.to_json() for r in results],
        "summary": {
            "passed": passed,
            "failed": len(results) - passed,
            "total": len(results),
            "wall_time_ms": round((time.perf_counter() - t0) * 1000, 3),
        },
    }
    return report, results


def render_markdown(report: dict) -> str:
    cfg, s = report["config"], report["summary"]
    lines = [
        f"# qkwhitney report (n={cfg['n']}, D={cfg['qdeg']}, seeds={cfg['seed']},{cfg['seed2']})",
        "",
        "| check | params | status | ms |",
        "|---|---|---|---|",
    ]
    for r in report["results"]:
        params = ", ".join(f"{k}={v}" for k, v in r["params"].items())
        lines.append(f"| {r['name']} | {params} | {r['status']} | {r['wall_time_ms']:.1f} |")
    lines += ["", f"**{s['passed']}/{s['total']} passed**, {s['failed']} failed, {s['wall_time_ms']:.0f} ms"]
    fails = [r for r in report["results"] if r["status"] != "pass"]
    for r in fails:
        lines += ["", f"## {r['name']} {r['params']}", "```", r["residual"], "```"]
    return "\n".join(lines) + "\n"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write report to {out}: {exc.strerror}") from exc


def write_golden(directory: str, D: int = 3, seed: int = 0) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for n in (1, 2):
        path = os.path.join(directory, f"line_bundles_n{n}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(golden_payload(n, D, seed), fh, indent=1, sort_keys=True)
            fh.write("\n")
        paths.append(path)
    return paths


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.list_checks:
            for fam in FAMILIES:
                print(f"{fam.name:20s} {fam.description}")
            return 0
        if args.dump_qbg:
            print(dump_qbg(cfg.n))
            return 0
        if args.dump_chain:
            lam = parse_weight(args.dump_chain)
            print(reduced_chain(lam, cfg.seed).to_json())
            return 0
        if args.dump_records:
            lam = parse_weight(args.dump_records)
            start = SignedPerm(parse_weight(args.start).coords) if args.start else SignedPerm.identity(lam.rank)
            print(dump_records(admissible_subsets(start, reduced_chain(lam, cfg.seed))))
            return 0
        if args.write_golden:
            for path in write_golden(args.write_golden, cfg.qdeg, cfg.seed):
                print(path)
            return 0
        for w in cfg.validate():
            print(f"warning: {w}", file=sys.stderr)
        select_families(cfg.checks)
        report, results = run(cfg)
        text = json.dumps(report, indent=1) + "\n" if cfg.format == "json" else render_markdown(report)
        _write(text, cfg.out)
    except (ConfigError, UnknownCheck, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
