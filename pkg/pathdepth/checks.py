"""Named checks of ideal identities and depth/Stanley depth relations.

Every check builds both sides independently and reports one :class:`Verdict` per claim.
"""

import logging
import typing
from dataclasses import dataclass
from dataclasses import field

from . import families
from .betti import depth_quotient
from .exceptions import ParameterError
from .exceptions import SearchTimeout
from .monomials import ExponentVector
from .monomials import MonomialIdeal
from .monomials import add
from .monomials import colon
from .monomials import contains
from .monomials import extend_ring
from .monomials import format_monomial
from .monomials import is_subset
from .monomials import scale
from .monomials import variable
from .sdepth import PosetMode
from .sdepth import sdepth
from .settings import EngineSettings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: str = ""
    unknown: bool = False

    @property
    def label(self) -> str:
        if self.unknown:
            return "unknown"
        return "pass" if self.passed else "FAIL"


@dataclass(frozen=True)
class CheckResult:
    check: str
    params: dict
    verdicts: tuple[Verdict, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        """No claim failed; claims whose search timed out do not count."""
        return all(v.passed or v.unknown for v in self.verdicts)

    @property
    def complete(self) -> bool:
        return not any(v.unknown for v in self.verdicts)

    @property
    def status(self) -> str:
        if not self.passed:
            return "FAIL"
        return "pass" if self.complete else "unknown"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "passed": self.passed,
            "complete": self.complete,
            "verdicts": [
                {"name": v.name, "passed": v.passed, "unknown": v.unknown, "detail": v.detail} for v in self.verdicts
            ],
        }

    def to_text(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.check} {args}: {self.status}"]
        for v in self.verdicts:
            lines.append(f"  [{v.label}] {v.name}")
            if v.detail:
                lines.extend(f"      {line}" for line in v.detail.splitlines())
        return "\n".join(lines) + "\n"


def _identity(pair: families.IdentityPair) -> Verdict:
    if pair.equal:
        return Verdict(pair.name, True)
    return Verdict(pair.name, False, f"left:  {pair.left}\nright: {pair.right}")


def _relation(name: str, left: int, op: str, right: int) -> Verdict:
    ok = {"=": left == right, ">=": left >= right, "<=": left <= right}[op]
    return Verdict(name, ok, f"{left} {op} {right}")


def check_colon_power(n: int, m: int, t: int, **_) -> list[Verdict]:
    return [_identity(families.colon_power_identity(n, m, t))]


def check_colon_top_power(n: int, m: int, t: int, **_) -> list[Verdict]:
    return [_identity(families.colon_top_power_identity(n, m, t))]


def check_truncation(n: int, m: int, t: int, k: int | None = None, **_) -> list[Verdict]:
    ks = [k] if k is not None else range(2, m + 1)
    if not ks:
        raise ParameterError(f"m={m} has no truncation index", "2 <= k <= m")
    return [_identity(families.truncation_identity(n, m, kk, t)) for kk in ks]


def check_ladder(n: int, m: int, t: int, **_) -> list[Verdict]:
    return [_identity(pair) for pair in families.proof_ladder(n, m, t)]


def check_viv(n: int, m: int, t: int, **_) -> list[Verdict]:
    return [_identity(pair) for pair in families.ladder_v_identities(n, m, t)]


def check_colon_w(m: int, t: int, q: int, r: int = 0, **_) -> list[Verdict]:
    pair = families.colon_w_identity(m, t, q, r)
    wit = families.w_monomials(m, t, q, r)
    return [
        Verdict("right ⊆ left", is_subset(pair.right, pair.left)),
        _identity(pair),
        Verdict(f"w(m,t,q) = {format_monomial(wit.w_mtq)}", True, f"n={wit.n}, |supp v|={wit.support_size}"),
    ]


def check_umt(m: int, t: int, settings: EngineSettings | None = None, with_sdepth: bool = True, **_) -> list[Verdict]:
    settings = settings or EngineSettings()
    u = families.u_ideal(m, t)
    bounds = families.u_bounds(m, t)
    out = [
        _identity(families.IdentityPair("U = ∩ V", u, families.u_intersection(m, t))),
        _relation("generator count", len(u), "=", families.u_generator_count(m, t)),
        _relation("depth(S/U)", depth_quotient(u, settings), "=", bounds.depth),
    ]
    if not with_sdepth:
        return out
    for label, mode, lower, upper in (
        ("sdepth(S/U)", PosetMode.QUOTIENT, bounds.quotient_lower, bounds.quotient_upper),
        ("sdepth(U)", PosetMode.IDEAL, bounds.ideal_lower, bounds.ideal_upper),
    ):
        try:
            value = sdepth(u, mode, settings=settings, lower_bound=lower).value
        except SearchTimeout as e:
            log.warning("U_{%d,%d}: %s search timed out, %s is unknown", m, t, mode.value, label)
            out += [Verdict(f"{label} {side}", False, str(e), unknown=True) for side in ("lower", "upper")]
            continue
        out += [_relation(f"{label} lower", value, ">=", lower), _relation(f"{label} upper", value, "<=", upper)]
    return out


def audit_lemma13(
    ideal: MonomialIdeal,
    u: ExponentVector,
    settings: EngineSettings | None = None,
    with_sdepth: bool = True,
) -> list[Verdict]:
    """Colon, regular element and ring extension relations for one ideal and one monomial u not in it."""
    settings = settings or EngineSettings()
    ideal.require_proper_nonzero("the colon and extension audits")
    if contains(ideal, u):
        raise ParameterError(f"{format_monomial(u)} lies in the ideal", "u not in I")
    col = colon(ideal, u)
    n = ideal.n
    ext = extend_ring(ideal)
    fresh = variable(n + 1, n + 1)
    cut = add(ext, MonomialIdeal(n + 1, (fresh,)))

    depth_i = depth_quotient(ideal, settings)
    depth_col = depth_quotient(col, settings)
    depth_ext = depth_quotient(ext, settings)
    out = [
        _relation("depth(S/(I:u)) >= depth(S/I)", depth_col, ">=", depth_i),
        _relation("depth(S'/IS') = depth(S/I) + 1", depth_ext, "=", depth_i + 1),
        _relation("depth(S'/(IS',x)) = depth(S'/IS') - 1", depth_quotient(cut, settings), "=", depth_ext - 1),
    ]
    saturated = scale(col, u) == ideal
    if saturated:
        out.append(_relation("I = u(I:u): depth(S/(I:u)) = depth(S/I)", depth_col, "=", depth_i))
    if not with_sdepth:
        return out

    def sd(i, mode=PosetMode.QUOTIENT):
        return sdepth(i, mode, settings=settings).value

    sq, si = sd(ideal), sd(ideal, PosetMode.IDEAL)
    sq_col, si_col = sd(col), sd(col, PosetMode.IDEAL)
    sq_ext = sd(ext)
    out += [
        _relation("sdepth(S/(I:u)) >= sdepth(S/I)", sq_col, ">=", sq),
        _relation("sdepth(I:u) >= sdepth(I)", si_col, ">=", si),
        _relation("sdepth(S'/IS') = sdepth(S/I) + 1", sq_ext, "=", sq + 1),
        _relation("sdepth(IS') = sdepth(I) + 1", sd(ext, PosetMode.IDEAL), "=", si + 1),
        _relation("sdepth(S'/(IS',x)) = sdepth(S'/IS') - 1", sd(cut), "=", sq_ext - 1),
    ]
    if saturated:
        out += [
            _relation("I = u(I:u): sdepth(S/(I:u)) = sdepth(S/I)", sq_col, "=", sq),
            _relation("I = u(I:u): sdepth(I:u) = sdepth(I)", si_col, "=", si),
        ]
    return out


def check_lemma13(n: int, m: int, t: int, u: ExponentVector | None = None, settings=None, with_sdepth=True, **_):
    """The audits on I_{n,m}^t; u defaults to x_n, or to 1 when x_n lies in the ideal."""
    ideal = families.path_power(n, m, t)
    if u is None:
        u = variable(n, n)
        if contains(ideal, u):
            u = (0,) * n
    return audit_lemma13(ideal, u, settings, with_sdepth)


class CheckEntry(typing.NamedTuple):
    run: typing.Callable[..., list[Verdict]]
    params: tuple[str, ...]
    optional: tuple[str, ...] = ()


CHECKS: dict[str, CheckEntry] = {
    "colon-power": CheckEntry(check_colon_power, ("n", "m", "t")),
    "colon-top-power": CheckEntry(check_colon_top_power, ("n", "m", "t")),
    "truncation": CheckEntry(check_truncation, ("n", "m", "t"), ("k",)),
    "ladder": CheckEntry(check_ladder, ("n", "m", "t")),
    "vIv": CheckEntry(check_viv, ("n", "m", "t")),
    "colon-w": CheckEntry(check_colon_w, ("m", "t", "q"), ("r",)),
    "umt": CheckEntry(check_umt, ("m", "t")),
    "lemma13": CheckEntry(check_lemma13, ("n", "m", "t")),
}


def run_check(check_id: str, settings: EngineSettings | None = None, with_sdepth: bool = True, **params) -> CheckResult:
    """Run a named check.

    :param check_id: one of :data:`CHECKS`
    :param params: the integer parameters of the check; ``None`` values are treated as absent
    """
    try:
        entry = CHECKS[check_id]
    except KeyError:
        raise ParameterError(f"unknown check {check_id!r}, expected one of {sorted(CHECKS)}") from None
    given = {k: v for k, v in params.items() if v is not None}
    missing = [p for p in entry.params if p not in given]
    if missing:
        raise ParameterError(f"check {check_id} is missing {', '.join(missing)}", ", ".join(entry.params))
    extra = sorted(set(given) - set(entry.params) - set(entry.optional))
    if extra:
        raise ParameterError(f"check {check_id} does not take {', '.join(extra)}")
    verdicts = entry.run(settings=settings, with_sdepth=with_sdepth, **given)
    result = CheckResult(check_id, given, tuple(verdicts))
    log.info("check %s %s: %s", check_id, given, result.status)
    return result
