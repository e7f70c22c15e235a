"""
Command-line entry point.

    klsatake datum  A2~ [--fold 0,2,1 | --weights 1,1,1]
    klsatake kl     A1~ --cutoff 9 [--w-range 0:5] [--cache-dir DIR]
    klsatake satake A2~ --bound 10 [--jobs 4] [--json] [-o FILE]
    klsatake verify A2~ --suite weightmult --bound 12

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 internal assertion (the offending triple is printed).
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import verify
from .folding import InvalidAutomorphism, OrderCapExceeded, fold, parse_sigma
from .hecke import CutoffError, HeckeAlgebra, InvalidWeights, KLTable, WeightFunction, default_cache_dir
from .satake import SatakeAssertion, SatakeComputer, SphericalConstantTable
from .weyl import DatumError, DominantWeight, group_from_label, parse_label

log = logging.getLogger("klsatake")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_ASSERT = 0, 1, 2, 3

# per-command defaults, applied after flags and config file
DEFAULT_CUTOFF = 9
DEFAULT_BOUND = {"datum": 10, "satake": 10, "weightmult": 12, "tensor": 10, "xi": 6}
DEFAULT_COUNT = 6


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    datum: str | None = None
    fold: str | None = None
    weights: str | None = None
    cutoff: int | None = None
    bound: int | None = None
    count: int | None = None
    seed: int | None = None
    output: str | None = None
    cache_dir: str | None = None
    jobs: int | None = None
    suite: str | None = None
    w_range: str | None = None
    json: bool | None = None

    def validate(self) -> None:
        if not self.datum:
            raise ConfigError("no datum given (e.g. A2~)")
        parse_label(self.datum)
        if self.fold and self.weights:
            raise ConfigError("--fold and --weights are mutually exclusive: folding determines the weights")
        for name in ("cutoff", "bound", "count"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.jobs is not None and self.jobs < 1:
            raise ConfigError("jobs must be at least 1")

    def weight_values(self) -> tuple[int, ...] | None:
        if not self.weights:
            return None
        try:
            return tuple(int(t) for t in self.weights.replace(" ", "").strip("[]").split(",") if t)
        except ValueError as exc:
            raise ConfigError(f"cannot parse weights {self.weights!r}") from exc

    def build_group(self):
        """The (possibly folded or reweighted) Coxeter group this job runs on."""
        self.validate()
        group = group_from_label(self.datum)
        if self.fold:
            return fold(group, parse_sigma(self.fold)).group
        ws = self.weight_values()
        if ws is not None:
            WeightFunction(ws).validate(group)
            group = group_from_label(self.datum, ws)
        return group


_INT_KEYS = {"cutoff", "bound", "count", "seed", "jobs"}


def read_config_file(path: str) -> dict:
    """Plain ``key = value`` lines; '#' starts a comment; dashes in keys allowed."""
    out = {}
    names = {f.name for f in fields(JobConfig)}
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key = value")
        key, val = (t.strip() for t in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in names:
            raise ConfigError(f"{path}:{n}: unknown key {key!r}")
        if key in _INT_KEYS:
            try:
                out[key] = int(val)
            except ValueError as exc:
                raise ConfigError(f"{path}:{n}: {key} must be an integer") from exc
        elif key == "json":
            out[key] = val.lower() in ("1", "true", "yes", "on")
        else:
            out[key] = val
    return out


def config_from_args(args: argparse.Namespace) -> JobConfig:
    base = read_config_file(args.config) if args.config else {}
    flags = {f.name: getattr(args, f.name, None) for f in fields(JobConfig)}
    if not flags["json"]:
        flags["json"] = None
    merged = {**base, **{k: v for k, v in flags.items() if v is not None}}
    return JobConfig(**merged)


# ---------------------------------------------------------------------------
# output helpers


def _emit(cfg: JobConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
        log.info("wrote %s", cfg.output)
    else:
        sys.stdout.write(text)


def _matrix_text(m) -> str:
    return "\n".join("  " + " ".join(f"{c if c else 'inf':>3}" for c in row) for row in m)


def _require_affine(group, command: str) -> None:
    if len(group.finite_indices) == group.n_generators:
        raise ConfigError(f"{command} needs an affine datum (e.g. A2~), got {group.label}")


# ---------------------------------------------------------------------------
# commands


def cmd_datum(cfg: JobConfig) -> int:
    group = cfg.build_group()
    affine = len(group.finite_indices) < group.n_generators
    m = group.coxeter_matrix()
    gens = []
    parent = getattr(group, "parent", None)
    for k, name in enumerate(group.names):
        entry = {"name": name, "weight": group.weights[k]}
        if parent is not None:
            entry["parent_word"] = [parent.names[i] for i in parent.reduced_word(group.generators[k])]
        gens.append(entry)
    bound = cfg.bound if cfg.bound is not None else DEFAULT_BOUND["datum"]
    sample = []
    if affine:
        for x in group.dominant_weights(bound):
            sample.append({"x": list(x.coords), "length_M": group.length(group.max_dc_rep(x))})
    data = {
        "datum": group.label,
        "affine": affine,
        "coxeter_matrix": m,
        "generators": gens,
        "weights": list(group.weights),
        "dominant_sample": sample,
    }
    if parent is not None:
        data["orbits"] = [list(o) for o in group.orbits]
    if cfg.json:
        _emit(cfg, json.dumps(data, indent=1, sort_keys=True) + "\n")
        return EXIT_OK
    lines = [f"datum {group.label}  ({'affine' if affine else 'finite'})", "Coxeter matrix (0 = inf):"]
    lines.append(_matrix_text(m))
    lines.append("generators:")
    for g in gens:
        extra = f"  = {'.'.join(g['parent_word'])}" if "parent_word" in g else ""
        lines.append(f"  {g['name']}  L = {g['weight']}{extra}")
    if affine:
        lines.append(f"Q+ sample (length(M_x) <= {bound}):")
        for s in sample:
            lines.append(f"  x = {tuple(s['x'])}  length(M_x) = {s['length_M']}")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def _parse_range(text: str | None, cutoff: int) -> tuple[int, int]:
    if not text:
        return 0, cutoff
    try:
        lo, _, hi = text.partition(":")
        a = int(lo) if lo else 0
        b = int(hi) if hi else cutoff
    except ValueError as exc:
        raise ConfigError(f"--w-range must look like LO:HI, got {text!r}") from exc
    if b > cutoff:
        raise CutoffError(f"--w-range upper end {b} exceeds cutoff {cutoff}")
    return a, b


def cmd_kl(cfg: JobConfig) -> int:
    group = cfg.build_group()
    cutoff = cfg.cutoff if cfg.cutoff is not None else DEFAULT_CUTOFF
    lo, hi = _parse_range(cfg.w_range, cutoff)
    alg = HeckeAlgebra(group, cutoff)
    table = KLTable(alg)
    cache = Path(cfg.cache_dir) if cfg.cache_dir else default_cache_dir()
    path, computed = table.save(cache)
    if not computed:
        log.info("no recomputation: P loaded from cache")
    # the cached file always covers the whole window; the range only filters output
    ws = [w for w, l in zip(alg.elements, alg.lengths) if lo <= l <= hi]
    polys = table.compute(ws)
    for (i, j), P in polys.items():
        if not (P.is_polynomial() and P.in_even_powers()):
            raise SatakeAssertion(
                f"P is not in Z[v^2]: {P}", (alg.word_string(i), alg.word_string(j), None)
            )
    if cfg.json or cfg.output:
        text = table.dumps(ws)
    else:
        rows = [f"datum {group.label}  L = {list(alg.gen_weights)}  cutoff {cutoff}  cache {path}"]
        rows.append(f"{len(ws)} elements, {len(polys)} nonzero P; nontrivial P:")
        for (i, j), P in sorted(polys.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if P != 1:
                rows.append(f"  P[{alg.word_string(i)}, {alg.word_string(j)}] = {P}")
        text = "\n".join(rows) + "\n"
    _emit(cfg, text)
    return EXIT_OK


# satake cells are independent; workers rebuild the computer once each

_WORKER: SatakeComputer | None = None


def _init_worker(cfg: JobConfig, bound: int) -> None:
    global _WORKER
    _WORKER = SatakeComputer(cfg.build_group(), bound)


def _row(x: tuple[int, ...]) -> list[tuple]:
    comp = _WORKER
    xw = DominantWeight(tuple(x))
    out = []
    for y in comp.xs:
        r, _ = comp.constants(xw, y)
        out.extend((xw.coords, y.coords, z.coords, v) for z, v in r.items() if v)
    return out


def satake_table(cfg: JobConfig, bound: int, jobs: int = 1) -> tuple[SatakeComputer, SphericalConstantTable]:
    """The full r-table on the bounded range, row-parallel for jobs > 1."""
    _init_worker(cfg, bound)
    comp = _WORKER
    xs = [x.coords for x in comp.xs]
    if jobs > 1 and len(xs) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(cfg, bound)) as ex:
            rows = list(ex.map(_row, xs))
    else:
        rows = [_row(x) for x in xs]
    tab = SphericalConstantTable(comp.group.label, tuple(comp.alg.gen_weights), list(comp.xs))
    for x, y, z, v in sorted(itertools.chain.from_iterable(rows)):
        tab.entries[(DominantWeight(x), DominantWeight(y), DominantWeight(z))] = v
    return comp, tab


def sl2_match(comp: SatakeComputer, tab: SphericalConstantTable) -> bool:
    return verify.sl2_table(comp, len(comp.xs), tab).ok


def cmd_satake(cfg: JobConfig) -> int:
    group = cfg.build_group()
    _require_affine(group, "satake")
    bound = cfg.bound if cfg.bound is not None else DEFAULT_BOUND["satake"]
    comp, tab = satake_table(cfg, bound, cfg.jobs or 1)
    extra = {
        "bound": comp.bound,
        "L_M0": comp.LM0,
        "dominant": [list(x.coords) for x in comp.xs],
    }
    if group.n_generators == 2:
        extra["sl2_clebsch_gordan_match"] = sl2_match(comp, tab)
    if cfg.json:
        _emit(cfg, tab.dumps(extra))
    else:
        text = tab.text()
        if "sl2_clebsch_gordan_match" in extra:
            text += f"matches SL2 Clebsch-Gordan: {str(extra['sl2_clebsch_gordan_match']).lower()}\n"
        _emit(cfg, text)
    return EXIT_OK


def _count_bound(group, count: int) -> int:
    """Smallest length bound giving at least ``count`` dominant elements."""
    b = group.length(group.longest_finite)
    while True:
        xs = group.dominant_weights(b)
        if len(xs) >= count:
            return group.length(group.max_dc_rep(xs[count - 1]))
        b = 2 * b + 1


def run_suite(cfg: JobConfig, suite: str) -> verify.SuiteReport:
    group = cfg.build_group()
    jobs = cfg.jobs or 1
    if suite == "r-recursion":
        return verify.r_recursion(group, cfg.cutoff)
    if suite == "41c":
        return verify.identity_41c(group)
    if suite == "bar":
        return verify.kl_structure(group, cfg.cutoff if cfg.cutoff is not None else DEFAULT_CUTOFF)
    _require_affine(group, f"suite {suite}")
    if suite == "weightmult":
        return verify.weight_multiplicity(group, cfg.bound if cfg.bound is not None else DEFAULT_BOUND[suite])
    if suite == "tensor":
        comp, tab = satake_table(cfg, cfg.bound if cfg.bound is not None else DEFAULT_BOUND[suite], jobs)
        return verify.tensor_product(comp, tab)
    if suite == "sl2":
        count = cfg.count if cfg.count is not None else DEFAULT_COUNT
        comp, tab = satake_table(cfg, _count_bound(group, count), jobs)
        return verify.sl2_table(comp, count, tab)
    if suite == "xi":
        comp = SatakeComputer(group, cfg.bound if cfg.bound is not None else DEFAULT_BOUND[suite])
        return verify.xi_checks(comp, cfg.seed or 0)
    raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(verify.SUITES)}")


def cmd_verify(cfg: JobConfig) -> int:
    if not cfg.suite:
        raise ConfigError(f"--suite is required; choose from {', '.join(verify.SUITES)} or all")
    names = list(verify.SUITES) if cfg.suite == "all" else [s.strip() for s in cfg.suite.split(",")]
    cfg.build_group()  # surface configuration errors before skipping anything
    reports = []
    for name in names:
        try:
            reports.append(run_suite(cfg, name))
        except ValueError as exc:
            if cfg.suite != "all":
                raise ConfigError(str(exc)) from exc
            log.info("skipping %s: %s", name, exc)
    if cfg.json:
        text = json.dumps([r.to_json() for r in reports], indent=1, sort_keys=True) + "\n"
    else:
        lines = []
        for r in reports:
            lines.append(r.line())
            lines.extend(f"  {n}" for n in r.notes)
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return EXIT_OK if reports and all(r.ok for r in reports) else EXIT_VERIFY


COMMANDS = {"datum": cmd_datum, "kl": cmd_kl, "satake": cmd_satake, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("datum", nargs="?", help="datum label such as A2~ (affine) or A3 (finite)")
    common.add_argument("--datum", dest="datum_flag", metavar="LABEL", help="same as the positional datum")
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--fold", help="diagram automorphism as a permutation, e.g. 0,2,1")
    common.add_argument("--weights", help="explicit generator weights, e.g. 2,1")
    common.add_argument("--cutoff", type=int, help="Coxeter length cutoff for the Hecke window")
    common.add_argument("--bound", type=int, help="bound on length(M_x) for dominant x")
    common.add_argument("--count", type=int, help="number of dominant elements (sl2 suite)")
    common.add_argument("--seed", type=int, help="random seed (xi suite)")
    common.add_argument("-o", "--output", help="write the result to this file")
    common.add_argument("--cache-dir", help="KL cache directory (default $KLSATAKE_CACHE or ~/.cache/klsatake)")
    common.add_argument("--jobs", type=int, help="worker processes for independent cells")
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    common.add_argument("-q", "--quiet", action="store_true", help="only log warnings")

    p = argparse.ArgumentParser(prog="klsatake", description="Weighted KL bases and spherical structure constants.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("datum", parents=[common], help="print Coxeter matrix, generators, weights, Q+ sample")
    k = sub.add_parser("kl", parents=[common], help="compute and cache P_{y,w}")
    k.add_argument("--w-range", help="LO:HI range of Coxeter lengths of w to report")
    sub.add_parser("satake", parents=[common], help="structure constants r(x,y,z)")
    v = sub.add_parser("verify", parents=[common], help="run a cross-check suite")
    v.add_argument("--suite", help=f"one of {', '.join(verify.SUITES)}, a comma list, or all")
    return p


def _configure_logging(level: int) -> None:
    # only the package logger, so embedding applications keep their own setup
    for h in [h for h in log.handlers if getattr(h, "_klsatake", False)]:
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    handler._klsatake = True
    log.addHandler(handler)
    log.setLevel(level)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(logging.WARNING if args.quiet else logging.INFO)
    if args.datum_flag:
        if args.datum and args.datum != args.datum_flag:
            print("error: positional datum and --datum disagree", file=sys.stderr)
            return EXIT_CONFIG
        args.datum = args.datum_flag
    try:
        cfg = config_from_args(args)
        if args.command != "kl":
            cfg = replace(cfg, w_range=None)
        return COMMANDS[args.command](cfg)
    except (SatakeAssertion, AssertionError) as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        triple = getattr(exc, "triple", None)
        if triple is not None:
            print("triple: " + ", ".join(str(t) for t in triple), file=sys.stderr)
        return EXIT_ASSERT
    except (ConfigError, DatumError, InvalidWeights, InvalidAutomorphism, OrderCapExceeded, CutoffError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BrokenPipeError:
        # output piped into e.g. head; nothing left to report
        sys.stderr.close()
        return EXIT_OK
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
