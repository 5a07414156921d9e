"""Family sweeps, row serialization (table, CSV, JSON) and the class-number cache."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Optional

from . import __version__
from .forms import ClassGroupSummary, classify_rd, genus_rank, wide_class_number
from .intbase import is_squarefree
from .theorem_lab import FamilyParams, gen_bl_family, gen_paper_family, gen_yokoi, verify_theorem

log = logging.getLogger(__name__)

CACHE_VERSION = f"quadfield-{__version__}/summary-1"
FAMILIES = ("paper", "bl", "yokoi", "rd")

CSV_HEADER = (
    "family", "a", "m", "p", "d", "delta", "h_plus", "h", "unit_norm",
    "rep_plus", "rep_minus", "splitting", "verdict",
)


@dataclass(frozen=True)
class ScanRow:
    family: str
    a: Optional[int]
    m: Optional[int]
    p: Optional[int]
    d: int
    delta: int
    h_plus: int
    h: int
    unit_norm: int
    rep_plus: Optional[tuple[int, int]] = None
    rep_minus: Optional[tuple[int, int]] = None
    splitting: Optional[str] = None
    verdict: Optional[str] = None

    def sort_key(self):
        return (self.d, self.a or 0, self.m or 0, self.p or 0, self.family)

    def to_json(self) -> dict:
        out = asdict(self)
        for k in ("rep_plus", "rep_minus"):
            if out[k] is not None:
                out[k] = list(out[k])
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ScanRow":
        obj = dict(obj)
        for k in ("rep_plus", "rep_minus"):
            if obj[k] is not None:
                obj[k] = tuple(obj[k])
        return cls(**obj)

    def to_csv(self) -> list[str]:
        out = []
        for name in CSV_HEADER:
            v = getattr(self, name)
            if v is None:
                out.append("")
            elif isinstance(v, tuple):
                out.append(f"{v[0]};{v[1]}")
            else:
                out.append(str(v))
        return out

    @classmethod
    def from_csv(cls, rec: dict) -> "ScanRow":
        kw = {}
        for f in fields(cls):
            raw = rec[f.name]
            if raw == "":
                kw[f.name] = None
            elif f.name in ("family", "splitting", "verdict"):
                kw[f.name] = raw
            elif f.name in ("rep_plus", "rep_minus"):
                x, y = raw.split(";")
                kw[f.name] = (int(x), int(y))
            else:
                kw[f.name] = int(raw)
        return cls(**kw)


def row_from_summary(family, s: ClassGroupSummary, a=None, m=None, p=None) -> ScanRow:
    return ScanRow(family, a, m, p, s.d, s.delta, s.h_plus, s.h, s.unit_norm)


def row_from_report(report) -> ScanRow:
    fp, s, rep = report.params, report.summary, report.representation
    return ScanRow(
        "paper", fp.a, fp.m, fp.p, fp.d, s.delta, s.h_plus, s.h, s.unit_norm,
        rep.plus.pair() if rep.plus else None,
        rep.minus.pair() if rep.minus else None,
        report.splitting.value, report.verdict.value,
    )


# -- cache --------------------------------------------------------------------

def load_cache(path) -> dict[int, ClassGroupSummary]:
    """Load Δ -> summary; a missing, stale or corrupt file gives an empty map."""
    if not path or not os.path.exists(path):
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") != CACHE_VERSION:
            log.warning("ignoring cache %s with version %r", path, data.get("version"))
            return {}
        return {int(k): ClassGroupSummary(**v) for k, v in data["entries"].items()}
    except (OSError, ValueError, TypeError, KeyError, AttributeError, ArithmeticError) as exc:
        log.warning("corrupt cache %s (%s); starting cold", path, exc)
        return {}


def save_cache(path, entries: dict[int, ClassGroupSummary]):
    data = {
        "version": CACHE_VERSION,
        "entries": {str(k): asdict(v) for k, v in sorted(entries.items())},
    }
    dirname = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=dirname, prefix=".qfcache")
    with os.fdopen(fd, "w") as fh:
        json.dump(data, fh, indent=1)
    os.replace(tmp, path)


# -- sweeps -------------------------------------------------------------------

def _delta(d):
    return d if d % 4 == 1 else 4 * d


def _evaluate(task):
    family, args, cached = task
    if family == "paper":
        return row_from_report(verify_theorem(FamilyParams(*args), summary=cached))
    a, m, d = args
    s = cached if cached is not None else wide_class_number(d)
    return row_from_summary(family, s, a=a, m=m)


def family_tasks(family: str, max_a=15, max_m=15, max_p=47, max_d=10**4):
    if family == "paper":
        return [("paper", (fp.a, fp.m, fp.p), fp.d) for fp in gen_paper_family(max_a, max_m, max_p)]
    if family == "bl":
        return [("bl", (a, m, d), d) for a, m, d in gen_bl_family(max_d)]
    if family == "yokoi":
        return [("yokoi", (None, m, d), d) for m, d in gen_yokoi(max_m)]
    if family == "rd":
        out = []
        for d in range(2, max_d + 1):
            if is_squarefree(d):
                c = classify_rd(d)
                if c.is_rd:
                    out.append(("rd", (None, c.m, d), d))
        return out
    raise ValueError(f"unknown family {family!r}")


def run_scan(family: str, *, jobs: int = 1, cache_path=None, **bounds) -> list[ScanRow]:
    """Evaluate every grid point of a family; output order never depends on ``jobs``."""
    cache = load_cache(cache_path)
    tasks = [(fam, args, cache.get(_delta(d))) for fam, args, d in family_tasks(family, **bounds)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_evaluate(t) for t in tasks]
    rows.sort(key=ScanRow.sort_key)
    if cache_path:
        for r in rows:
            if r.delta not in cache:
                cache[r.delta] = ClassGroupSummary(
                    r.d, r.delta, r.h_plus, r.h, r.unit_norm, genus_rank(r.delta))
        save_cache(cache_path, cache)
    return rows


def summarize(rows: list[ScanRow]) -> str:
    parts = [f"rows={len(rows)}"]
    verdicts = Counter(r.verdict for r in rows if r.verdict)
    for v in sorted(verdicts):
        parts.append(f"{v}={verdicts[v]}")
    hs = Counter(r.h for r in rows)
    parts.extend(f"h={h}:{hs[h]}" for h in sorted(hs))
    return " ".join(parts)


# -- emission -----------------------------------------------------------------

def format_rows(rows: list[ScanRow], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in rows], indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(r.to_csv())
        return buf.getvalue()
    if fmt == "table":
        body = [list(CSV_HEADER)] + [[c or "-" for c in r.to_csv()] for r in rows]
        widths = [max(len(line[i]) for line in body) for i in range(len(CSV_HEADER))]
        return "".join(
            "  ".join(c.rjust(w) for c, w in zip(line, widths)).rstrip() + "\n" for line in body
        )
    raise ValueError(f"unknown format {fmt!r}")


def parse_rows(text: str, fmt: str) -> list[ScanRow]:
    if fmt == "json":
        return [ScanRow.from_json(o) for o in json.loads(text)]
    if fmt == "csv":
        return [ScanRow.from_csv(rec) for rec in csv.DictReader(io.StringIO(text))]
    raise ValueError(f"cannot parse format {fmt!r}")
