"""Command-line front end for the catalog.

Verbs: verify (run one family or the whole catalog), table1 (the thirteen
consolidated delta-form rows at their smallest admissible k), sweep (list
every permuting trinomial exponent over one field), report (re-emit a saved
report), catalog (dump the family manifest).

Reports are a JSON document with two top-level sections: "stable", which is
byte-identical across runs with the same configuration and seed, and
"timings", which is not.  CSV output carries one line per instance and only
stable columns.  Exit codes: 0 every asserted instance permutes, 1 at least
one fails, 2 the selection falls outside the family's applicability, 3
configuration error (bad flags, bad config file, cap refusal).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .ffcore import DEFAULT_SIZE_CAP, FieldCtx, make_field
from .families import (
    InapplicableError,
    default_parameters,
    family_manifest,
    instantiate,
    lookup,
    registry,
    resolve_exponent,
    valid_coefficients,
)
from .permcheck import is_permutation, make_fn_trinomial
from .transform import DEFAULT_SEED, DELTA_EXHAUSTIVE_CAP, DELTA_SAMPLES, pick_deltas

__all__ = [
    "ConfigError",
    "InstanceResult",
    "FamilyRun",
    "RunConfig",
    "SCHEMA",
    "run_family_verification",
    "cmd_verify",
    "cmd_table1",
    "cmd_sweep",
    "cmd_report",
    "cmd_catalog",
    "build_report",
    "stable_json",
    "report_csv",
    "main",
    "entrypoint",
]

SCHEMA = "permlab-report/1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INAPPLICABLE = 2
EXIT_CONFIG = 3


class ConfigError(Exception):
    """Unusable flag/config-file input, distinct from a failed verification."""


@dataclass(frozen=True)
class RunConfig:
    cap: int = DEFAULT_SIZE_CAP
    seed: int = DEFAULT_SEED
    delta_samples: int = DELTA_SAMPLES
    jobs: int = 1
    kprime: int = 1

    def as_dict(self) -> dict:
        return {
            "cap": self.cap,
            "seed": self.seed,
            "delta_samples": self.delta_samples,
            "kprime": self.kprime,
        }


@dataclass(frozen=True)
class InstanceResult:
    condition: str
    s_tag: str
    step: int
    s: int
    c_index: int
    delta_index: Optional[int]
    permutes: bool
    witness: Optional[tuple[int, int]]
    image_deficit: int
    informational: bool
    elapsed: float

    def sort_key(self):
        return (self.condition, self.s_tag, self.step, self.c_index,
                -1 if self.delta_index is None else self.delta_index)


@dataclass
class FamilyRun:
    family: str
    p: int
    n: int
    modulus: tuple[int, ...]
    q: int
    kprime: Optional[int]
    deltas_exhaustive: Optional[bool]
    instances: list[InstanceResult] = dc_field(default_factory=list)

    @property
    def asserted(self) -> list[InstanceResult]:
        return [r for r in self.instances if not r.informational]

    @property
    def all_pass(self) -> bool:
        return all(r.permutes for r in self.asserted)


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ConfigError(f"q must be a prime power >= 2, got {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    k, t = 0, q
    while t > 1:
        if t % p:
            raise ConfigError(f"q = {q} is not a prime power")
        t //= p
        k += 1
    return p, k


def _run_one(job):
    fid, fld, c, delta, kw = job
    t0 = time.perf_counter()
    fn = instantiate(fid, fld, c, delta, **kw)
    verdict = is_permutation(fn)
    elapsed = time.perf_counter() - t0
    return verdict, elapsed


def run_family_verification(fid: str, q: int, cfg: RunConfig) -> FamilyRun:
    """Every condition variant x s variant x declared step x valid c x delta.

    Non-primary Frobenius steps are recorded as informational: their verdicts
    appear in the report but do not count against the exit code, so a variant
    that fails as stated is surfaced rather than silently swapped or hidden.
    """
    fam = lookup(fid)
    p, k = _factor_prime_power(q)
    m = 2 if fam.shape == "square" else 4
    if q**m > cfg.cap:
        raise ConfigError(
            f"field order {q}**{m} exceeds the size cap {cfg.cap}")
    if not fam.applies(p, k, cfg.kprime):
        raise InapplicableError(
            f"{fid} does not apply at q = {q}"
            + (f", k' = {cfg.kprime}" if fam.uses_kprime else ""))
    fld = make_field(p, k * m, cap=cfg.cap)
    if fam.form == "delta_form":
        delta_idx, exhaustive = pick_deltas(
            fld, samples=cfg.delta_samples, seed=cfg.seed)
        deltas = [fld.element_at(i) for i in delta_idx]
    else:
        deltas, exhaustive = [None], None

    jobs = []
    meta = []
    for ci, (ctag, _) in enumerate(fam.conds):
        cs = valid_coefficients(fid, fld, kprime=cfg.kprime, cond_variant=ci)
        for si, (stag, _) in enumerate(fam.s_rules):
            s_val = resolve_exponent(fid, q, kprime=cfg.kprime, variant=si)
            for step in fam.steps:
                informational = step != fam.steps[0]
                for c in cs:
                    for d in deltas:
                        kw = dict(kprime=cfg.kprime, step=step, variant=si,
                                  cond_variant=ci)
                        jobs.append((fid, fld, c, d, kw))
                        meta.append((ctag or "default", stag, step, s_val,
                                     c.index,
                                     None if d is None else d.index,
                                     informational))
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(_run_one, jobs))
    else:
        outcomes = [_run_one(j) for j in jobs]

    run = FamilyRun(family=fid, p=p, n=k * m, modulus=fld.modulus, q=q,
                    kprime=cfg.kprime if fam.uses_kprime else None,
                    deltas_exhaustive=exhaustive)
    for (ctag, stag, step, s_val, c_idx, d_idx, info), (verdict, el) in zip(
            meta, outcomes):
        wit = None
        if verdict.witness is not None:
            wit = (verdict.witness[0].index, verdict.witness[1].index)
        run.instances.append(InstanceResult(
            condition=ctag, s_tag=stag, step=step, s=s_val, c_index=c_idx,
            delta_index=d_idx, permutes=verdict.is_permutation, witness=wit,
            image_deficit=verdict.image_deficit, informational=info,
            elapsed=el))
    run.instances.sort(key=InstanceResult.sort_key)
    return run


# ---------------------------------------------------------------------------
# report assembly

def _variant_blocks(run: FamilyRun) -> list[dict]:
    """Instances grouped by condition tag; dual conditions stay separate."""
    tags = []
    for r in run.instances:
        if r.condition not in tags:
            tags.append(r.condition)
    blocks = []
    for tag in tags:
        rows = [r for r in run.instances if r.condition == tag]
        entries = []
        for r in rows:
            entries.append({
                "s_tag": r.s_tag,
                "step": r.step,
                "s": r.s,
                "c": r.c_index,
                "delta": r.delta_index,
                "permutes": r.permutes,
                "witness": None if r.witness is None else list(r.witness),
                "image_deficit": r.image_deficit,
                "informational": r.informational,
            })
        asserted = [r for r in rows if not r.informational]
        informational = [r for r in rows if r.informational]
        blocks.append({
            "condition": tag,
            "instances": entries,
            "summary": {
                "instances": len(rows),
                "asserted": len(asserted),
                "passed": sum(r.permutes for r in asserted),
                "failed": sum(not r.permutes for r in asserted),
                "informational_passed": sum(
                    r.permutes for r in informational),
                "informational_failed": sum(
                    not r.permutes for r in informational),
            },
        })
    return blocks


def _step_outcomes(run: FamilyRun) -> Optional[dict]:
    """Which declared Frobenius step passes, for families that list several."""
    steps = sorted({r.step for r in run.instances})
    if len(steps) < 2:
        return None
    out = {}
    for st in steps:
        rows = [r for r in run.instances if r.step == st]
        out[str(st)] = "pass" if all(r.permutes for r in rows) else "fail"
    return out


def run_to_stable(run: FamilyRun) -> dict:
    doc = {
        "family": run.family,
        "p": run.p,
        "n": run.n,
        "modulus": list(run.modulus),
        "q": run.q,
        "kprime": run.kprime,
        "deltas_exhaustive": run.deltas_exhaustive,
        "conditions": _variant_blocks(run),
        "summary": {
            "instances": len(run.instances),
            "asserted": len(run.asserted),
            "passed": sum(r.permutes for r in run.asserted),
            "failed": sum(not r.permutes for r in run.asserted),
        },
    }
    steps = _step_outcomes(run)
    if steps is not None:
        doc["step_outcomes"] = steps
    return doc


def build_report(runs: Sequence[FamilyRun], cfg: RunConfig,
                 verb: str) -> dict:
    stable = {
        "schema": SCHEMA,
        "verb": verb,
        "config": cfg.as_dict(),
        "runs": [run_to_stable(r) for r in runs],
    }
    timings = {
        "total_s": sum(r.elapsed for run in runs for r in run.instances),
        "runs": [
            {
                "family": run.family,
                "q": run.q,
                "instances_s": [round(r.elapsed, 6) for r in run.instances],
            }
            for run in runs
        ],
    }
    return {"stable": stable, "timings": timings}


def stable_json(doc: dict) -> str:
    """Canonical serialization of the deterministic section."""
    return json.dumps(doc["stable"], sort_keys=True, indent=2)


CSV_COLUMNS = [
    "family", "q", "kprime", "condition", "s_tag", "step", "s", "c",
    "delta", "permutes", "witness_a", "witness_b", "image_deficit",
    "informational",
]


def report_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for run in doc["stable"]["runs"]:
        for block in run["conditions"]:
            for r in block["instances"]:
                wit = r["witness"] or ("", "")
                w.writerow([
                    run["family"], run["q"],
                    "" if run["kprime"] is None else run["kprime"],
                    block["condition"], r["s_tag"], r["step"], r["s"],
                    r["c"], "" if r["delta"] is None else r["delta"],
                    int(r["permutes"]), wit[0], wit[1],
                    r["image_deficit"], int(r["informational"]),
                ])
    return buf.getvalue()


def _emit(doc: dict, fmt: str, out: Optional[str]) -> None:
    if fmt == "csv":
        text = report_csv(doc)
    else:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summarize(runs: Sequence[FamilyRun]) -> None:
    for run in runs:
        verdict = "PASS" if run.all_pass else "FAIL"
        extra = ""
        info = [r for r in run.instances if r.informational]
        if info:
            bad = sum(not r.permutes for r in info)
            extra = f" (+{len(info)} informational, {bad} failing)"
        print(
            f"{verdict} {run.family} q={run.q}: "
            f"{sum(r.permutes for r in run.asserted)}/{len(run.asserted)} "
            f"instances permute{extra}",
            file=sys.stderr)


# ---------------------------------------------------------------------------
# verbs

def _selected_q(args) -> Optional[int]:
    if args.q is not None and (args.p is not None or args.k is not None):
        raise ConfigError("give either --q or --p/--k, not both")
    if args.q is not None:
        return args.q
    if args.p is not None or args.k is not None:
        if args.p is None or args.k is None:
            raise ConfigError("--p and --k must be given together")
        return args.p**args.k
    return None


def cmd_verify(args) -> int:
    cfg = _config_from(args)
    q_sel = _selected_q(args)
    if args.family in (None, "all"):
        fids = [f.fid for f in registry()]
        if q_sel is not None:
            raise ConfigError(
                "an explicit q needs an explicit --family (one family's "
                "applicability cannot speak for the whole catalog)")
    else:
        fids = [args.family]
        lookup(args.family)  # KeyError -> config error
    runs: list[FamilyRun] = []
    for fid in fids:
        if q_sel is not None:
            qs = [q_sel]
        else:
            qs = [p**k for p, k in
                  default_parameters(fid, count=2, cap=cfg.cap,
                                     kprime=cfg.kprime)]
            if not qs:
                raise InapplicableError(
                    f"{fid}: no applicable parameters within cap {cfg.cap}")
        for q in qs:
            runs.append(run_family_verification(fid, q, cfg))
    doc = build_report(runs, cfg, "verify")
    _emit(doc, args.format, args.out)
    _summarize(runs)
    return EXIT_PASS if all(r.all_pass for r in runs) else EXIT_FAIL


TABLE1_MAX_ORDER = 1 << 16


def smallest_table1_k(row: int, kprime: int) -> int:
    """Smallest k with the row applicable and field order 2^(2k) <= 2^16."""
    fam = lookup(f"table1-r{row}")
    for k in range(1, 9):
        if 4**k > TABLE1_MAX_ORDER:
            break
        if fam.applies(2, k, kprime):
            return k
    raise InapplicableError(
        f"table1-r{row}: no admissible k with k' = {kprime}")


def cmd_table1(args) -> int:
    cfg = _config_from(args)
    rows = [args.row] if args.row else list(range(1, 14))
    runs = []
    for row in rows:
        fid = f"table1-r{row}"
        fam = lookup(fid)
        k = args.k if args.k is not None else smallest_table1_k(
            row, cfg.kprime)
        if not fam.applies(2, k, cfg.kprime):
            raise InapplicableError(
                f"{fid} does not admit k = {k}"
                + (f", k' = {cfg.kprime}" if fam.uses_kprime else ""))
        runs.append(run_family_verification(fid, 2**k, cfg))
    doc = build_report(runs, cfg, "table1")
    _emit(doc, args.format, args.out)
    _summarize(runs)
    return EXIT_PASS if all(r.all_pass for r in runs) else EXIT_FAIL


def _sweep_annotations(fld: FieldCtx, q: int, kprime: int) -> dict:
    """(s, c-index) -> sorted family ids whose canonical instance matches."""
    tags: dict[tuple[int, int], list[str]] = {}
    p, k = _factor_prime_power(q)
    for fam in registry():
        if fam.form != "trinomial" or fam.shape != "square":
            continue
        if not fam.applies(p, k, kprime):
            continue
        for si in range(len(fam.s_rules)):
            s_val = resolve_exponent(fam.fid, q, kprime=kprime, variant=si)
            for ci in range(len(fam.conds)):
                for c in valid_coefficients(fam.fid, fld, kprime=kprime,
                                            cond_variant=ci):
                    tags.setdefault((s_val, c.index), []).append(fam.fid)
    return {key: sorted(set(v)) for key, v in tags.items()}


def cmd_sweep(args) -> int:
    """List every (s, c) whose trinomial permutes GF(q^2).

    Reports only; a hit outside the catalog is tagged "unexplained", never
    asserted wrong, and a coefficient failing some family's condition is
    never asserted to break anything.
    """
    cfg = _config_from(args)
    q_sel = _selected_q(args)
    if q_sel is None:
        raise ConfigError("sweep needs --q or --p/--k")
    q = q_sel
    p, k = _factor_prime_power(q)
    if q * q > cfg.cap:
        raise ConfigError(f"field order {q}**2 exceeds the size cap {cfg.cap}")
    fld = make_field(p, 2 * k, cap=cfg.cap)
    order = fld.order
    s_lo = args.s_from if args.s_from is not None else 1
    s_hi = args.s_to if args.s_to is not None else order - 2
    if not (1 <= s_lo <= s_hi <= order - 2):
        raise ConfigError(
            f"s range must sit inside [1, {order - 2}], got "
            f"[{s_lo}, {s_hi}]")
    c_indices = args.c_index if args.c_index else [1]
    for idx in c_indices:
        if not 1 <= idx < order:
            raise ConfigError(f"c index {idx} outside [1, {order - 1}]")
    tags = _sweep_annotations(fld, q, cfg.kprime)

    t0 = time.perf_counter()
    hits = []
    for c_idx in c_indices:
        c = fld.element_at(c_idx)
        for s in range(s_lo, s_hi + 1):
            if s % (order - 1) == 0:
                continue
            fn = make_fn_trinomial(fld, c, s, k=1, qdeg=k)
            if is_permutation(fn).is_permutation:
                fams = tags.get((s, c_idx))
                hits.append({
                    "s": s,
                    "c": c_idx,
                    "families": fams if fams else ["unexplained"],
                })
    elapsed = time.perf_counter() - t0

    stable = {
        "schema": SCHEMA,
        "verb": "sweep",
        "config": cfg.as_dict(),
        "field": {"p": p, "n": 2 * k, "q": q,
                  "modulus": list(fld.modulus)},
        "s_range": [s_lo, s_hi],
        "c_indices": list(c_indices),
        "hits": hits,
    }
    doc = {"stable": stable, "timings": {"total_s": elapsed}}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "c", "families"])
        for h in hits:
            w.writerow([h["s"], h["c"], ";".join(h["families"])])
        text = buf.getvalue()
    else:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{len(hits)} permuting trinomials over GF({q}^2)", file=sys.stderr)
    return EXIT_PASS


def cmd_report(args) -> int:
    if not args.input:
        raise ConfigError("report needs --input pointing at a saved run")
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read report: {exc}") from exc
    if "stable" not in doc or doc["stable"].get("schema") != SCHEMA:
        raise ConfigError(f"not a {SCHEMA} document: {args.input}")
    if args.format == "csv" and doc["stable"].get("verb") in (
            "verify", "table1"):
        text = report_csv(doc)
    elif args.format == "csv":
        raise ConfigError("csv re-emission only covers verify/table1 runs")
    else:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_catalog(args) -> int:
    cfg = _config_from(args)
    manifest = family_manifest(kprime=cfg.kprime)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "form", "shape", "applies", "s_rule",
                    "s_variants", "conditions", "steps", "uses_kprime",
                    "cross", "notes"])
        for e in manifest:
            w.writerow([
                e["id"], e["form"], e["shape"], e["applies"], e["s_rule"],
                ";".join(e["s_variants"]), ";".join(e["conditions"]),
                ";".join(str(s) for s in e["steps"]),
                int(e["uses_kprime"]), ";".join(e["cross"]), e["notes"],
            ])
        text = buf.getvalue()
    else:
        text = json.dumps(manifest, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# argument plumbing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


_CONFIG_KEYS = {
    "q", "p", "k", "kprime", "family", "format", "seed", "cap", "jobs",
    "delta-samples", "row", "out",
}
_INT_KEYS = {"q", "p", "k", "kprime", "seed", "cap", "jobs",
             "delta-samples", "row"}


def parse_config_file(path: str) -> dict:
    """key=value lines, # comments; keys mirror the long flags."""
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        key = key.strip().replace("_", "-")
        val = val.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(val, 0)
            except ValueError as exc:
                raise ConfigError(
                    f"{path}:{lineno}: {key} needs an integer, got "
                    f"{val!r}") from exc
        else:
            values[key] = val
    return values


def _add_shared(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--q", type=int, help="base q (a prime power)")
    sp.add_argument("--p", type=int, help="characteristic, with --k")
    sp.add_argument("--k", type=int, help="exponent so q = p^k, with --p")
    sp.add_argument("--kprime", type=int, default=None,
                    help="auxiliary k' for the families that take one")
    sp.add_argument("--format", choices=("json", "csv"), default=None)
    sp.add_argument("--seed", type=int, default=None,
                    help="delta sampling seed")
    sp.add_argument("--cap", type=int, default=None,
                    help="largest field order the run may construct")
    sp.add_argument("--jobs", type=int, default=None,
                    help="concurrent instance checks")
    sp.add_argument("--delta-samples", type=int, default=None,
                    help="sample count when a field is too large to sweep")
    sp.add_argument("--config", help="key=value file mirroring the flags")
    sp.add_argument("--out", help="write the report here instead of stdout")


def _config_from(args) -> RunConfig:
    cfg = RunConfig(
        cap=args.cap if args.cap is not None else DEFAULT_SIZE_CAP,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
        delta_samples=(args.delta_samples if args.delta_samples is not None
                       else DELTA_SAMPLES),
        jobs=args.jobs if args.jobs is not None else 1,
        kprime=args.kprime if args.kprime is not None else 1,
    )
    if cfg.jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {cfg.jobs}")
    if cfg.delta_samples < 2:
        raise ConfigError("--delta-samples must be >= 2 (0 and 1 always run)")
    if cfg.cap < 4:
        raise ConfigError(f"--cap {cfg.cap} cannot hold any GF(q^2)")
    return cfg


def _apply_config_file(args) -> None:
    if not getattr(args, "config", None):
        return
    file_vals = parse_config_file(args.config)
    for key, val in file_vals.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            continue  # key valid globally but not for this verb
        if getattr(args, attr) is None:
            setattr(args, attr, val)


def build_parser() -> _Parser:
    parser = _Parser(prog="permlab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_verify = sub.add_parser(
        "verify", help="check one family (or the whole catalog)")
    p_verify.add_argument("--family", default=None,
                          help="catalog id, or 'all' (default)")
    _add_shared(p_verify)

    p_table = sub.add_parser(
        "table1", help="the thirteen consolidated delta-form rows")
    p_table.add_argument("--row", type=int, choices=range(1, 14),
                         metavar="1..13", default=None)
    _add_shared(p_table)

    p_sweep = sub.add_parser(
        "sweep", help="list every permuting trinomial exponent over GF(q^2)")
    p_sweep.add_argument("--c-index", type=int, action="append",
                         help="coefficient index to sweep (repeatable)")
    p_sweep.add_argument("--s-from", type=int, default=None)
    p_sweep.add_argument("--s-to", type=int, default=None)
    _add_shared(p_sweep)

    p_report = sub.add_parser("report", help="re-emit a saved report")
    p_report.add_argument("--input", help="path to a saved JSON report")
    _add_shared(p_report)

    p_cat = sub.add_parser("catalog", help="dump the family manifest")
    _add_shared(p_cat)

    return parser


_DISPATCH = {
    "verify": cmd_verify,
    "table1": cmd_table1,
    "sweep": cmd_sweep,
    "report": cmd_report,
    "catalog": cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args)
        if args.format is None:
            args.format = "json"
        if args.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {args.format!r}")
        return _DISPATCH[args.verb](args)
    except ConfigError as exc:
        print(f"permlab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InapplicableError as exc:
        print(f"permlab: inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except KeyError as exc:
        print(f"permlab: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
