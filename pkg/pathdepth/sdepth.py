"""Stanley depth by interval partitions of the characteristic poset.

For a bound g >= every generator exponent, the characteristic poset of S/I (resp. I, I/J) is the set of
c <= g with x^c not in I (resp. x^c in I, x^c in I but not in J).  Stanley depth equals the largest k such
that the poset splits into intervals [c, d] with ρ(d) = #{i : d_i = g_i} >= k for every interval.

The poset is convex in all three modes, so an interval [c, d] lies inside it iff both ends do.  The search
is an exact cover: columns are poset elements, rows are admissible intervals.  It is solved by OR-tools CP-SAT
(one worker, fixed seed) or by a pure Python backtracking search.
"""

import enum
import functools
import itertools
import logging
import math
import time
import typing
from dataclasses import dataclass

from ortools.sat.python import cp_model

from .exceptions import DomainError
from .exceptions import InconsistentResultError
from .exceptions import MalformedInputError
from .exceptions import ParameterError
from .exceptions import ResourceLimitError
from .exceptions import SearchTimeout
from .monomials import ExponentVector
from .monomials import MonomialIdeal
from .monomials import box
from .monomials import contains
from .monomials import divides
from .monomials import is_subset
from .monomials import lcm
from .settings import DEFAULT_MAX_POSET
from .settings import EngineSettings

log = logging.getLogger(__name__)

Interval = tuple[ExponentVector, ExponentVector]

_DEADLINE_EVERY = 256
_SEED = 1
_REVERSE_SEED = 2


class PosetMode(str, enum.Enum):
    QUOTIENT = "quotient"
    IDEAL = "ideal"
    PAIR = "pair"


def rho(d: ExponentVector, g: ExponentVector) -> int:
    return sum(1 for a, b in zip(d, g, strict=True) if a == b)


@dataclass(frozen=True)
class CharPoset:
    g: ExponentVector
    mode: PosetMode
    elements: tuple[ExponentVector, ...]

    @functools.cached_property
    def members(self) -> frozenset[ExponentVector]:
        return frozenset(self.elements)

    @property
    def n(self) -> int:
        return len(self.g)

    def __len__(self):
        return len(self.elements)

    def rho(self, d: ExponentVector) -> int:
        return rho(d, self.g)

    def recheck(self, ideal: MonomialIdeal, sub: MonomialIdeal | None = None) -> bool:
        """Re-derive membership of every point of the bounding box from the source ideals."""
        test = _membership(self.mode, ideal, sub)
        return all(test(c) == (c in self.members) for c in box(self.g))


def _membership(mode: PosetMode, ideal: MonomialIdeal, sub: MonomialIdeal | None) -> typing.Callable:
    if mode is PosetMode.QUOTIENT:
        return lambda c: not contains(ideal, c)
    if mode is PosetMode.IDEAL:
        return lambda c: contains(ideal, c)
    return lambda c: contains(ideal, c) and not contains(sub, c)


def default_bound(ideal: MonomialIdeal, sub: MonomialIdeal | None = None) -> ExponentVector:
    """Componentwise max of the exponents of G(I) ∪ G(J)."""
    g = ideal.top()
    if sub is not None:
        g = lcm(g, sub.top())
    return g


def build_poset(
    ideal: MonomialIdeal,
    sub: MonomialIdeal | None = None,
    mode: PosetMode | str = PosetMode.QUOTIENT,
    g: ExponentVector | None = None,
    max_poset: int = DEFAULT_MAX_POSET,
) -> CharPoset:
    """The characteristic poset of S/I, I or I/J (``sub`` is J, required in pair mode only).

    :param g: bounding multidegree; defaults to :func:`default_bound` and may only be raised above it
    :param max_poset: refuse bounding boxes with more points
    """
    mode = PosetMode(mode)
    if mode is PosetMode.PAIR:
        if sub is None:
            raise ParameterError("pair mode needs the ideal J of I/J")
        if not is_subset(sub, ideal):
            raise DomainError("pair mode needs J contained in I")
    elif sub is not None:
        raise ParameterError(f"{mode.value} mode takes a single ideal")
    floor = default_bound(ideal, sub)
    if g is None:
        g = floor
    elif len(g) != ideal.n:
        raise MalformedInputError(f"bound {g} has length {len(g)}, the ring has {ideal.n} variables")
    elif not divides(floor, g):
        raise ParameterError(f"bound {g} lies below the generator exponents {floor}", "g >= lcm of G(I) ∪ G(J)")
    size = math.prod(e + 1 for e in g)
    if size > max_poset:
        raise ResourceLimitError("max_poset", max_poset, size)
    test = _membership(mode, ideal, sub)
    elements = tuple(c for c in box(g) if test(c))
    log.debug("%s poset under g=%s has %d of %d points", mode.value, g, len(elements), size)
    return CharPoset(tuple(g), mode, elements)


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple[Interval, ...]
    claimed_min_rho: int
    g: ExponentVector
    mode: PosetMode

    def to_dict(self) -> dict:
        return {
            "g": list(self.g),
            "mode": self.mode.value,
            "intervals": [[list(c), list(d)] for c, d in self.intervals],
            "min_rho": self.claimed_min_rho,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IntervalPartition":
        try:
            g = tuple(int(e) for e in data["g"])
            intervals = tuple((tuple(int(e) for e in c), tuple(int(e) for e in d)) for c, d in data["intervals"])
            return cls(intervals, int(data["min_rho"]), g, PosetMode(data["mode"]))
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInputError(f"not a certificate: {e}") from e


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def verify_partition(poset: CharPoset, part: IntervalPartition, k: int) -> PartitionCheck:
    """Check a certificate against a poset without using any of the search code."""
    reasons = []

    def fail(reason):
        if reason not in reasons:
            reasons.append(reason)

    if tuple(part.g) != tuple(poset.g):
        fail("g mismatch")
    if PosetMode(part.mode) is not poset.mode:
        fail("mode mismatch")
    if part.claimed_min_rho < k:
        fail("claim below k")
    seen = set()
    for c, d in part.intervals:
        if len(c) != poset.n or len(d) != poset.n:
            fail("wrong length")
            continue
        if any(a > b for a, b in zip(c, d)):
            fail("interval not ordered")
            continue
        if sum(1 for a, b in zip(d, poset.g) if a == b) < part.claimed_min_rho:
            fail("rho below claim")
        for e in itertools.product(*(range(a, b + 1) for a, b in zip(c, d))):
            if e not in poset.members:
                fail("outside poset")
            elif e in seen:
                fail("overlap")
            seen.add(e)
    if not poset.members <= seen:
        fail("not covered")
    return PartitionCheck(not reasons, tuple(reasons))


# exact cover


def _candidates(poset: CharPoset, k: int) -> list[Interval]:
    """Intervals [c, d] inside the poset with ρ(d) >= k, by decreasing ρ(d) then lex (c, d)."""
    tops = [d for d in poset.elements if poset.rho(d) >= k]
    out = [(c, d) for c in poset.elements for d in tops if divides(c, d)]
    out.sort(key=lambda cd: (-poset.rho(cd[1]), cd[0], cd[1]))
    return out


def _select(columns, rows, r):
    removed = []
    for j in rows[r]:
        for i in columns[j]:
            for other in rows[i]:
                if other != j:
                    columns[other].discard(i)
        removed.append(columns.pop(j))
    return removed


def _deselect(columns, rows, r, removed):
    for j in reversed(rows[r]):
        columns[j] = removed.pop()
        for i in columns[j]:
            for other in rows[i]:
                if other != j:
                    columns[other].add(i)


class _Deadline:
    def __init__(self, budget: float | None):
        self.budget = budget
        self.stop = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def remaining(self) -> float | None:
        if self.stop is None:
            return None
        left = self.stop - time.monotonic()
        if left <= 0:
            raise SearchTimeout(self.budget)
        return left

    def check(self):
        self.ticks += 1
        if self.stop is not None and self.ticks % _DEADLINE_EVERY == 0 and time.monotonic() > self.stop:
            raise SearchTimeout(self.budget)


def _columns(rows: list[list[ExponentVector]], elements) -> dict[ExponentVector, set[int]] | None:
    """Rows covering each element, or None when some element lies in no candidate interval."""
    columns = {e: set() for e in elements}
    for r, covered in enumerate(rows):
        for e in covered:
            columns[e].add(r)
    if any(not rs for rs in columns.values()):
        return None
    return columns


def _backtrack_cover(rows, columns, deadline: _Deadline, reverse: bool) -> list[int] | None:
    def branch():
        # the most constrained element, lex-smallest on ties
        e = min(columns, key=lambda c: (len(columns[c]), c))
        return sorted(columns[e], reverse=reverse)

    if not columns:
        return []
    solution: list[int] = []
    stack = [[branch(), 0, None]]
    while stack:
        deadline.check()
        frame = stack[-1]
        if frame[2] is not None:
            _deselect(columns, rows, solution.pop(), frame[2])
            frame[2] = None
        if frame[1] >= len(frame[0]):
            stack.pop()
            continue
        r = frame[0][frame[1]]
        frame[1] += 1
        frame[2] = _select(columns, rows, r)
        solution.append(r)
        if not columns:
            return solution
        nxt = branch()
        if nxt:
            stack.append([nxt, 0, None])
    return None


def _cpsat_cover(rows, columns, deadline: _Deadline, reverse: bool) -> list[int] | None:
    """One boolean per candidate interval, exactly one chosen interval per element."""
    model = cp_model.CpModel()
    order = range(len(rows) - 1, -1, -1) if reverse else range(len(rows))
    chosen = {r: model.NewBoolVar(f"i{r}") for r in order}
    for e in sorted(columns):
        model.AddExactlyOne([chosen[r] for r in sorted(columns[e], reverse=reverse)])

    solver = cp_model.CpSolver()
    solver.parameters.num_search_workers = 1
    solver.parameters.random_seed = _REVERSE_SEED if reverse else _SEED
    left = deadline.remaining()
    if left is not None:
        solver.parameters.max_time_in_seconds = left
    status = solver.Solve(model)
    if status in (cp_model.OPTIMAL, cp_model.FEASIBLE):
        return [r for r in range(len(rows)) if solver.BooleanValue(chosen[r])]
    if status == cp_model.INFEASIBLE:
        return None
    if status == cp_model.UNKNOWN:
        raise SearchTimeout(deadline.budget)
    raise InconsistentResultError(f"CP-SAT returned {solver.StatusName(status)} on an exact cover model")


_SOLVERS = {"cpsat": _cpsat_cover, "backtrack": _backtrack_cover}


def sdepth_decision(
    poset: CharPoset,
    k: int,
    timeout_secs: float | None = None,
    reverse: bool = False,
    deadline: _Deadline | None = None,
    solver: str = "cpsat",
) -> IntervalPartition | None:
    """A partition of the poset into intervals with every ρ(top) >= k, or None if there is none.

    :param reverse: search the candidate intervals in the opposite order, with another seed
      (used to re-confirm a failure)
    :param solver: "cpsat" or "backtrack"
    """
    if not 0 <= k <= poset.n:
        raise ParameterError(f"k={k}", f"0 <= k <= {poset.n}")
    if solver not in _SOLVERS:
        raise ParameterError(f"solver={solver!r}", f"one of {sorted(_SOLVERS)}")
    deadline = deadline or _Deadline(timeout_secs)
    if not poset.elements:
        return IntervalPartition((), k, poset.g, poset.mode)
    candidates = _candidates(poset, k)
    rows = [list(box(d, c)) for c, d in candidates]
    columns = _columns(rows, poset.elements)
    picked = None if columns is None else _SOLVERS[solver](rows, columns, deadline, reverse)
    log.debug(
        "k=%d: %d candidate intervals, %s by %s",
        k,
        len(candidates),
        "found" if picked is not None else "none",
        solver,
    )
    if picked is None:
        return None
    intervals = tuple(sorted(candidates[r] for r in picked))
    return IntervalPartition(intervals, min(poset.rho(d) for _, d in intervals), poset.g, poset.mode)


@dataclass(frozen=True)
class SdepthResult:
    value: int
    certificate: IntervalPartition
    poset_size: int

    def to_dict(self) -> dict:
        return {"value": self.value, "poset_size": self.poset_size, "certificate": self.certificate.to_dict()}


def sdepth_of_poset(
    poset: CharPoset,
    settings: EngineSettings | None = None,
    lower_bound: int | None = None,
) -> SdepthResult:
    """Largest k with an admissible partition.

    With a ``lower_bound`` hint the scan steps up from it (down if the hint fails); otherwise it is a binary
    search on [0, n].  Feasibility is monotone in k and k = 0 always succeeds.
    """
    settings = settings or EngineSettings()
    if not poset.elements:
        raise DomainError("Stanley depth of the zero module is undefined")
    deadline = _Deadline(settings.timeout_secs)
    found: dict[int, IntervalPartition | None] = {}

    def feasible(k):
        if k not in found:
            found[k] = sdepth_decision(poset, k, deadline=deadline, solver=settings.solver)
        return found[k] is not None

    n = poset.n
    if lower_bound is not None:
        k = min(max(lower_bound, 0), n)
        if feasible(k):
            while k < n and feasible(k + 1):
                k += 1
        else:
            while not feasible(k):
                k -= 1
        value = k
    else:
        lo, hi = 0, n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if feasible(mid):
                lo = mid
            else:
                hi = mid - 1
        value = lo
    feasible(value)
    certificate = found[value]

    if settings.reconfirm and value < n and sdepth_decision(
        poset, value + 1, reverse=True, deadline=deadline, solver=settings.solver
    ) is not None:
        raise InconsistentResultError(f"searches disagree on k={value + 1}")
    check = verify_partition(poset, certificate, value)
    if not check:
        raise InconsistentResultError(f"certificate for k={value} rejected: {', '.join(check.reasons)}")
    return SdepthResult(value, certificate, len(poset))


def sdepth(
    ideal: MonomialIdeal,
    mode: PosetMode | str = PosetMode.QUOTIENT,
    sub: MonomialIdeal | None = None,
    g: ExponentVector | None = None,
    settings: EngineSettings | None = None,
    lower_bound: int | None = None,
) -> SdepthResult:
    """Stanley depth of S/I, I or I/J with a certificate the checker accepts."""
    settings = settings or EngineSettings()
    poset = build_poset(ideal, sub, mode, g, settings.max_poset)
    return sdepth_of_poset(poset, settings, lower_bound)


def verify_certificate(
    ideal: MonomialIdeal,
    data: dict,
    sub: MonomialIdeal | None = None,
    max_poset: int = DEFAULT_MAX_POSET,
) -> PartitionCheck:
    """Re-validate a serialized certificate from the source ideal(s) alone."""
    part = IntervalPartition.from_dict(data)
    poset = build_poset(ideal, sub, part.mode, part.g, max_poset)
    return verify_partition(poset, part, part.claimed_min_rho)
