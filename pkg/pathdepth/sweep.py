"""Parameter sweeps over (n, m, t) comparing computed invariants of I_{n,m}^t with the closed forms."""

import concurrent.futures
import csv
import io
import json
import logging
import time
import typing
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field

from . import __version__
from . import families
from .betti import betti_table
from .cache import ResultCache
from .cache import cache_key
from .exceptions import PathDepthError
from .exceptions import ResourceLimitError
from .exceptions import SearchTimeout
from .sdepth import PosetMode
from .sdepth import sdepth
from .sdepth import verify_certificate
from .settings import EngineSettings

log = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"

# statuses that make a run fail when they are FAIL; everything else is informative
MUST_EQUAL = ("depth", "pd", "sdepth_t1")
MUST_HOLD = ("sandwich", "stanley_quotient", "stanley_ideal", "ideal_upper", "monotone")

FORMATS = ("markdown", "jsonl", "json", "csv")


def skipped(reason: str) -> str:
    return f"skipped: {reason}"


def errored(error: Exception) -> str:
    return f"error: {error}"


@dataclass
class SweepRow:
    n: int
    m: int
    t: int
    phi: int
    branch: str
    pd_formula: int
    depth_computed: int | None = None
    pd_computed: int | None = None
    sdepth_quotient: int | None = None
    sdepth_ideal: int | None = None
    bounds: dict = field(default_factory=dict)
    status: dict = field(default_factory=dict)
    runtime_ms: int = 0
    certificates: dict = field(default_factory=dict, repr=False)

    @property
    def key(self) -> tuple[int, int, int]:
        return self.n, self.m, self.t

    @property
    def errored(self) -> bool:
        return any(str(v).startswith("error") for v in self.status.values())

    @property
    def failed(self) -> bool:
        return self.errored or any(self.status.get(name) == FAIL for name in MUST_EQUAL + MUST_HOLD)

    def to_dict(self) -> dict:
        out = asdict(self)
        del out["certificates"]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SweepRow":
        return cls(**data)


ROW_FIELDS = tuple(SweepRow.__dataclass_fields__)


def _compare(ok: bool) -> str:
    return PASS if ok else FAIL


def evaluate_cell(n: int, m: int, t: int, settings: EngineSettings, with_sdepth: bool = False) -> SweepRow:
    """Compute one grid cell; failures of one computation are recorded on the row, never raised."""
    start = time.monotonic()
    phi = families.phi(n, m, t)
    bounds = families.sdepth_upper_bounds(n, m, t)
    row = SweepRow(
        n=n,
        m=m,
        t=t,
        phi=phi.value,
        branch=phi.branch,
        pd_formula=families.pd_formula(n, m, t),
        bounds={
            "ideal_upper": bounds.ideal_upper,
            "quotient_upper": bounds.quotient_upper,
            "remark_upper": bounds.remark_upper,
        },
    )
    ideal = families.path_power(n, m, t)

    try:
        table = betti_table(ideal, settings)
    except ResourceLimitError as e:
        row.status["depth"] = row.status["pd"] = skipped(f"cap {e.cap_name}={e.cap}")
    except PathDepthError as e:
        log.error("I_{%d,%d}^%d: Betti numbers failed: %s", n, m, t, e)
        row.status["depth"] = row.status["pd"] = errored(e)
    else:
        row.pd_computed = table.pd
        row.depth_computed = table.depth
        row.status["depth"] = _compare(row.depth_computed == row.phi)
        row.status["pd"] = _compare(row.pd_computed == row.pd_formula)

    if not with_sdepth:
        row.status["sdepth"] = skipped("not requested")
    else:
        for mode, attr, hint in (
            (PosetMode.QUOTIENT, "sdepth_quotient", phi.value),
            (PosetMode.IDEAL, "sdepth_ideal", phi.value + 1),
        ):
            try:
                result = sdepth(ideal, mode, settings=settings, lower_bound=hint)
            except SearchTimeout as e:
                log.warning("I_{%d,%d}^%d: %s, %s is unknown", n, m, t, e, attr)
                row.status[attr] = UNKNOWN
            except ResourceLimitError as e:
                row.status[attr] = skipped(f"cap {e.cap_name}={e.cap}")
            except PathDepthError as e:
                log.error("I_{%d,%d}^%d: %s failed: %s", n, m, t, attr, e)
                row.status[attr] = errored(e)
            else:
                setattr(row, attr, result.value)
                row.certificates[mode.value] = result.certificate.to_dict()
        _sdepth_statuses(row)

    row.runtime_ms = int((time.monotonic() - start) * 1000)
    return row


def _sdepth_statuses(row: SweepRow):
    sq, si = row.sdepth_quotient, row.sdepth_ideal
    if sq is not None:
        row.status["sandwich"] = _compare(row.phi <= sq <= row.bounds["quotient_upper"])
        if row.depth_computed is not None:
            row.status["stanley_quotient"] = _compare(sq >= row.depth_computed)
        if row.t == 1:
            row.status["sdepth_t1"] = _compare(sq == families.path_formula(row.n, row.m))
    if si is not None:
        row.status["stanley_ideal"] = _compare(si >= row.phi + 1)
        if families.ideal_upper_applies(row.n, row.m, row.t):
            row.status["ideal_upper"] = _compare(si <= row.bounds["ideal_upper"])
        else:
            row.status["ideal_upper"] = skipped("bound needs t+m <= n")


def _monotone_statuses(rows: list[SweepRow]):
    by_key = {r.key: r for r in rows}
    for row in rows:
        prev = by_key.get((row.n, row.m, row.t - 1))
        if prev is None or row.sdepth_quotient is None or prev.sdepth_quotient is None:
            continue
        row.status["monotone"] = _compare(row.sdepth_quotient <= prev.sdepth_quotient)


@dataclass
class SweepReport:
    rows: list[SweepRow]
    metadata: dict

    @property
    def failed(self) -> bool:
        return any(r.failed for r in self.rows)

    def to_dict(self) -> dict:
        return {"metadata": self.metadata, "rows": [r.to_dict() for r in self.rows]}


def _cell_key(n, m, t, with_sdepth, settings) -> str:
    return cache_key("sweep-cell", {"n": n, "m": m, "t": t, "sdepth": with_sdepth}, settings.fingerprint())


def _certificates_hold(entry: dict, settings: EngineSettings) -> bool:
    """Every certificate of a cached row re-validates and backs the value stored beside it."""
    ideal = families.path_power(entry["n"], entry["m"], entry["t"])
    for mode, cert in entry["certificates"].items():
        value = entry[f"sdepth_{mode}"]
        if cert.get("min_rho") != value:
            log.warning("cached %s certificate claims %s, the row says %s", mode, cert.get("min_rho"), value)
            return False
        if not verify_certificate(ideal, cert, max_poset=settings.max_poset):
            return False
    return True


def _cached_row(cache: ResultCache, key: str, settings: EngineSettings) -> SweepRow | None:
    entry = cache.load(key, ROW_FIELDS, verify=lambda value: _certificates_hold(value, settings))
    if entry is None:
        return None
    try:
        row = SweepRow.from_dict(entry)
    except TypeError as e:
        log.warning("ignoring cache entry %s with the wrong layout: %s", key, e)
        return None
    if row.errored:
        return None
    return row


def grid(n_range: typing.Iterable[int], m_range: typing.Iterable[int] | None, t_range: typing.Iterable[int]):
    """All (n, m, t) with 1 <= m <= n; ``m_range=None`` means every m."""
    m_values = None if m_range is None else list(m_range)
    t_values = list(t_range)
    for n in n_range:
        for m in m_values if m_values is not None else range(1, n + 1):
            if 1 <= m <= n:
                for t in t_values:
                    yield n, m, t


def run_sweep(
    cells: typing.Iterable[tuple[int, int, int]],
    settings: EngineSettings | None = None,
    with_sdepth: bool = False,
    cache: ResultCache | None = None,
    jobs: int = 1,
) -> SweepReport:
    """Evaluate every cell, reusing cached rows; rows come back sorted by (n, m, t).

    Cells run in a process pool when ``jobs > 1``; the cache is only written from this process.
    """
    settings = settings or EngineSettings()
    rows: dict[tuple, SweepRow] = {}
    todo = []
    for n, m, t in sorted(set(cells)):
        key = _cell_key(n, m, t, with_sdepth, settings)
        row = _cached_row(cache, key, settings) if cache else None
        if row is not None:
            rows[(n, m, t)] = row
        else:
            todo.append(((n, m, t), key))
    log.info("sweep: %d cells, %d from cache", len(rows) + len(todo), len(rows))

    def store(cell, key, row):
        rows[cell] = row
        if cache and not row.errored:
            cache.save(key, asdict(row))

    if jobs > 1 and len(todo) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(evaluate_cell, *cell, settings, with_sdepth): (cell, key) for cell, key in todo}
            for future in concurrent.futures.as_completed(futures):
                cell, key = futures[future]
                store(cell, key, _row_or_error(future, cell))
    else:
        for cell, key in todo:
            try:
                row = evaluate_cell(*cell, settings, with_sdepth)
            except PathDepthError as e:
                row = _error_row(cell, e)
            store(cell, key, row)

    ordered = [rows[k] for k in sorted(rows)]
    _monotone_statuses(ordered)
    metadata = {
        "tool": "pathdepth",
        "version": __version__,
        "field": settings.field,
        "caps": {k: v for k, v in settings.to_dict().items() if k.startswith("max_") or k == "timeout_secs"},
        "sdepth": with_sdepth,
    }
    return SweepReport(ordered, metadata)


def _row_or_error(future, cell) -> SweepRow:
    try:
        return future.result()
    except PathDepthError as e:
        return _error_row(cell, e)


def _error_row(cell, error: PathDepthError) -> SweepRow:
    n, m, t = cell
    phi = families.phi(n, m, t)
    log.error("I_{%d,%d}^%d: %s", n, m, t, error)
    return SweepRow(n, m, t, phi.value, phi.branch, families.pd_formula(n, m, t), status={"error": errored(error)})


# Ştefan's conjectured formula for m = 2, reported but never asserted


@dataclass
class StefanRow:
    n: int
    t: int
    computed: int | None
    formula: int
    agree: bool | None
    status: str

    def to_dict(self) -> dict:
        return asdict(self)


def explore_stefan(
    n_range: typing.Iterable[int],
    t_range: typing.Iterable[int],
    settings: EngineSettings | None = None,
) -> list[StefanRow]:
    """Computed sdepth(S/I_{n,2}^t) against max(⌈(n+t-1)/3⌉, 1).  EXPLORATORY."""
    settings = settings or EngineSettings()
    rows = []
    for n in n_range:
        if n < 2:
            continue
        for t in t_range:
            formula = families.stefan_formula(n, t)
            try:
                computed = sdepth(
                    families.path_power(n, 2, t),
                    settings=settings,
                    lower_bound=families.phi(n, 2, t).value,
                ).value
            except SearchTimeout as e:
                log.warning("I_{%d,2}^%d: %s, sdepth is unknown", n, t, e)
                rows.append(StefanRow(n, t, None, formula, None, UNKNOWN))
                continue
            except ResourceLimitError as e:
                rows.append(StefanRow(n, t, None, formula, None, skipped(f"cap {e.cap_name}={e.cap}")))
                continue
            agree = computed == formula
            rows.append(StefanRow(n, t, computed, formula, agree, "agree" if agree else "disagree"))
    return rows


# rendering

REPORT_COLUMNS = (
    "n", "m", "t", "depth_computed", "phi", "pd_computed", "pd_formula", "sdepth_quotient", "sdepth_ideal",
)  # fmt: skip


def _flat(row: dict) -> dict:
    out = {k: v for k, v in row.items() if not isinstance(v, dict)}
    for group in ("bounds", "status"):
        for k, v in sorted(row.get(group, {}).items()):
            out[f"{group}.{k}"] = v
    return out


def _columns(flat_rows: list[dict], leading: typing.Sequence[str]) -> list[str]:
    cols = [c for c in leading if any(c in r for r in flat_rows)]
    for r in flat_rows:
        cols += [c for c in r if c not in cols]
    return cols


def _cell(value) -> str:
    return "" if value is None else str(value)


def render(rows: list[dict], fmt: str, metadata: dict | None = None, leading: typing.Sequence[str] = REPORT_COLUMNS):
    """Render row dicts as a markdown table, JSON lines, one JSON document or CSV."""
    if fmt == "json":
        return json.dumps({"metadata": metadata or {}, "rows": rows}, sort_keys=True, indent=2) + "\n"
    if fmt == "jsonl":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    flat = [_flat(r) for r in rows]
    cols = _columns(flat, leading)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue()
    if fmt == "markdown":
        lines = []
        if metadata:
            lines.append(" ".join(f"{k}={v}" for k, v in metadata.items() if not isinstance(v, dict)))
            lines.append("")
        lines.append("| " + " | ".join(cols) + " |")
        lines.append("|" + "---|" * len(cols))
        lines += ["| " + " | ".join(_cell(r.get(c)) for c in cols) + " |" for r in flat]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
