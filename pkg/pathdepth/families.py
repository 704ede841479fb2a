"""Ideal families, witness monomials and closed-form values for powers of path ideals.

Variables are 1-based.  An ideal of a smaller ring (I_{k,m} with k < n) is embedded in the ambient ring of
``n`` variables with the same variable indices; I_{k,m} with k < m is the zero ideal.
"""

import itertools
import typing
from dataclasses import dataclass

from .exceptions import ParameterError
from .monomials import ExponentVector
from .monomials import MonomialIdeal
from .monomials import add
from .monomials import colon
from .monomials import consecutive
from .monomials import intersect
from .monomials import minimalize
from .monomials import mul
from .monomials import power
from .monomials import principal
from .monomials import quotient
from .monomials import scale
from .monomials import squarefree
from .monomials import support
from .monomials import variables_ideal
from .monomials import zero_ideal

BRANCH_LOW = "t<=n+1-m"
BRANCH_HIGH = "t>n+1-m"


@dataclass(frozen=True)
class PathParams:
    n: int
    m: int
    t: int = 1

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise ParameterError(f"path parameters n={self.n}, m={self.m}", "1 <= m <= n")
        if self.t < 1:
            raise ParameterError(f"power t={self.t}", "t >= 1")


class EuclidSplit(typing.NamedTuple):
    """``value = (m+1) q + r`` with ``0 <= r <= m``; ``name`` says which displayed split produced it."""

    name: str
    q: int
    r: int


@dataclass(frozen=True)
class FormulaValue:
    value: int
    branch: str
    split: EuclidSplit | None = None

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class SdepthBounds:
    ideal_upper: int
    quotient_upper: int
    remark_upper: int


@dataclass(frozen=True)
class UBounds:
    """Depth and Stanley depth bounds for S_{t+m}/U_{m,t} and U_{m,t}."""

    depth: int
    quotient_lower: int
    quotient_upper: int
    ideal_lower: int
    ideal_upper: int


@dataclass(frozen=True)
class WitnessMonomials:
    n: int
    w_mt: ExponentVector
    v: ExponentVector
    w_mtq: ExponentVector
    support_size: int
    free_count: int


class IdentityPair(typing.NamedTuple):
    """Two independently built ideals that are claimed to be equal."""

    name: str
    left: MonomialIdeal
    right: MonomialIdeal

    @property
    def equal(self) -> bool:
        return self.left == self.right


# closed forms


def _floor_ceil(s: int, m: int) -> int:
    return s // (m + 1) + -(-s // (m + 1))


def euclid_split(n: int, m: int, t: int) -> EuclidSplit:
    """n - t + 2 = (m+1) q + r."""
    q, r = divmod(n - t + 2, m + 1)
    return EuclidSplit("euclid", q, r)


def cute_split(n: int, m: int, t: int) -> EuclidSplit:
    """n = q (m+1) + t - 1 + r."""
    q, r = divmod(n - t + 1, m + 1)
    return EuclidSplit("cute", q, r)


def phi(n: int, m: int, t: int) -> FormulaValue:
    """Depth of S/I_{n,m}^t."""
    PathParams(n, m, t)
    if t <= n + 1 - m:
        s = n - t + 2
        return FormulaValue(s - _floor_ceil(s, m), BRANCH_LOW, euclid_split(n, m, t))
    return FormulaValue(m - 1, BRANCH_HIGH)


def pd_formula(n: int, m: int, t: int) -> int:
    """Projective dimension of S/I_{n,m}^t."""
    PathParams(n, m, t)
    if t <= n + 1 - m:
        return t - 2 + _floor_ceil(n - t + 2, m)
    return n - m + 1


def path_formula(n: int, m: int) -> int:
    """depth(S/I_{n,m}) = sdepth(S/I_{n,m})."""
    PathParams(n, m)
    return n + 1 - _floor_ceil(n + 1, m)


def depth_ideal_formula(n: int, m: int, t: int) -> int:
    return phi(n, m, t).value + 1


def ideal_upper_applies(n: int, m: int, t: int) -> bool:
    """The ideal_upper bound is only established when t + m <= n, i.e. when w(m,t,q) exists with q >= 1.

    Below that it can fail: (x_1) in one variable has Stanley depth 1, the bound gives 0.
    """
    return t + m <= n


def sdepth_upper_bounds(n: int, m: int, t: int) -> SdepthBounds:
    """Upper bounds for sdepth(I_{n,m}^t) and sdepth(S/I_{n,m}^t); see :func:`ideal_upper_applies`."""
    PathParams(n, m, t)
    ct = -(-t // m)
    return SdepthBounds(
        ideal_upper=min(n + 1 - (n - t + 1) // (m + 1), n - (ct + 1) // 2),
        quotient_upper=phi(n, m, 1).value,
        remark_upper=phi(n, m, t).value + t - ct,
    )


def stefan_formula(n: int, t: int) -> int:
    """The claimed value of sdepth(S/I_{n,2}^t); exploratory only."""
    return max(-(-(n + t - 1) // 3), 1)


# path ideals


def path_ideal(n: int, m: int) -> MonomialIdeal:
    """I_{n,m} = (x_1...x_m, x_2...x_{m+1}, ..., x_{n-m+1}...x_n)."""
    PathParams(n, m)
    return minimalize((consecutive(i, i + m - 1, n) for i in range(1, n - m + 2)), n)


def path_power(n: int, m: int, t: int) -> MonomialIdeal:
    PathParams(n, m, t)
    return power(path_ideal(n, m), t)


def embedded_path_power(k: int, m: int, t: int, n: int) -> MonomialIdeal:
    """I_{k,m}^t read in the ring of ``n`` variables; the zero ideal when k < m."""
    if not 0 <= k <= n:
        raise ParameterError(f"cannot embed I_{{{k},{m}}} in {n} variables", "0 <= k <= n")
    if m < 1 or t < 1:
        raise ParameterError(f"m={m}, t={t}", "m >= 1 and t >= 1")
    if k < m:
        return zero_ideal(n)
    return power(
        minimalize((consecutive(i, i + m - 1, n) for i in range(1, k - m + 2)), n),
        t,
    )


def tilde_path_ideal(n: int, m: int) -> MonomialIdeal:
    """Ĩ_{n,m} with I_{n,m} = (x_{n-m+1}...x_m) Ĩ_{n,m}, for m <= n <= 2m-1."""
    if not m <= n <= 2 * m - 1:
        raise ParameterError(f"n={n}, m={m}", "m <= n <= 2m-1")
    common = consecutive(n - m + 1, m, n)
    return minimalize((quotient(g, common) for g in path_ideal(n, m).gens), n)


def tilde_common_factor(n: int, m: int) -> ExponentVector:
    if not m <= n <= 2 * m - 1:
        raise ParameterError(f"n={n}, m={m}", "m <= n <= 2m-1")
    return consecutive(n - m + 1, m, n)


# U_{m,t}, V_{m,j,k}, P_{m,t,q}


def _require_mt(m: int, t: int):
    if m < 2 or t < 2:
        raise ParameterError(f"m={m}, t={t}", "m >= 2 and t >= 2")


def residue_classes(m: int, t: int) -> list[list[int]]:
    """Indices 1..m+t split by residue; class j (1 <= j <= m) holds the i with i ≡ j (mod m)."""
    return [[i for i in range(j, m + t + 1, m)] for j in range(1, m + 1)]


def umt_split(m: int, t: int) -> tuple[int, int]:
    """(a, b) with t + m = m a + b and 1 <= b <= m."""
    a, b = divmod(t + m, m)
    if b == 0:
        a, b = a - 1, m
    return a, b


def u_ideal(m: int, t: int) -> MonomialIdeal:
    """U_{m,t} in S_{t+m}: products x_{i_1}...x_{i_m} with i_j ≡ j (mod m).

    Each choice of one index per residue class is generated once, whatever the order of the indices.
    """
    _require_mt(m, t)
    n = m + t
    return minimalize((squarefree(choice, n) for choice in itertools.product(*residue_classes(m, t))), n)


def u_generator_count(m: int, t: int) -> int:
    a, b = umt_split(m, t)
    return (a + 1) ** b * a ** (m - b)


def v_ideal(m: int, j: int, k: int, n: int | None = None) -> MonomialIdeal:
    """V_{m,j,k} = (x_j, x_{j+m}, ..., x_{j+(k-1)m}); the ring defaults to the smallest one holding it."""
    if m < 1 or j < 1 or k < 1:
        raise ParameterError(f"m={m}, j={j}, k={k}", "m, j, k >= 1")
    last = j + (k - 1) * m
    if n is None:
        n = last
    if last > n:
        raise ParameterError(f"x{last} overflows the ring of {n} variables", "j + (k-1) m <= n")
    return variables_ideal(range(j, last + 1, m), n)


def u_intersection(m: int, t: int) -> MonomialIdeal:
    """V_{m,1,a+1} ∩ ... ∩ V_{m,b,a+1} ∩ V_{m,b+1,a} ∩ ... ∩ V_{m,m,a} with t + m = m a + b."""
    _require_mt(m, t)
    a, b = umt_split(m, t)
    n = m + t
    out = None
    for j in range(1, m + 1):
        part = v_ideal(m, j, a + 1 if j <= b else a, n)
        out = part if out is None else intersect(out, part)
    return out


def u_bounds(m: int, t: int) -> UBounds:
    _require_mt(m, t)
    a, b = umt_split(m, t)
    return UBounds(
        depth=m - 1,
        quotient_lower=m - 1,
        quotient_upper=t + m - 1 - a,
        ideal_lower=t + m - b * ((a + 1) // 2) - (m - b) * (a // 2),
        ideal_upper=t + m - (a + 1) // 2,
    )


def _require_mtqr(m: int, t: int, q: int, r: int):
    _require_mt(m, t)
    if q < 1 or not 0 <= r <= m:
        raise ParameterError(f"q={q}, r={r}", "q >= 1 and 0 <= r <= m")


def witness_ring(m: int, t: int, q: int, r: int) -> int:
    """n = (m+1) q + t - 1 + r."""
    _require_mtqr(m, t, q, r)
    return (m + 1) * q + t - 1 + r


def w_monomials(m: int, t: int, q: int, r: int = 0) -> WitnessMonomials:
    """w(m,t), v(m,t,q) and w(m,t,q) = w(m,t) v(m,t,q) in the ring of n = (m+1)q + t - 1 + r variables."""
    n = witness_ring(m, t, q, r)
    w_mt = squarefree(itertools.chain.from_iterable(range(s, s + m) for s in range(2, t + 1)), n)
    v = squarefree(
        itertools.chain.from_iterable(
            range(t + ell * (m + 1) + 1, t + ell * (m + 1) + m) for ell in range(1, q)
        ),
        n,
    )
    return WitnessMonomials(
        n=n,
        w_mt=w_mt,
        v=v,
        w_mtq=mul(w_mt, v),
        support_size=len(support(v)),
        free_count=(n - t - m) - 2 * (q - 1),
    )


def p_ideal(m: int, t: int, q: int, r: int = 0) -> MonomialIdeal:
    """P_{m,t,q} = (x_{t+l(m+1)}, x_{t+l(m+1)+m} : 1 <= l <= q-1); zero when q = 1."""
    n = witness_ring(m, t, q, r)
    indices = []
    for ell in range(1, q):
        indices += [t + ell * (m + 1), t + ell * (m + 1) + m]
    return variables_ideal(indices, n)


def p_ideal_by_support(m: int, t: int, q: int, r: int = 0) -> MonomialIdeal:
    """The variables among x_{t+m+1}, ..., x_{n-r} that do not divide v(m,t,q)."""
    n = witness_ring(m, t, q, r)
    v_support = set(support(w_monomials(m, t, q, r).v))
    return variables_ideal((i for i in range(t + m + 1, n - r + 1) if i not in v_support), n)


def _embed_first(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    pad = (0,) * (n - ideal.n)
    return MonomialIdeal(n, tuple(g + pad for g in ideal.gens))


def colon_w_identity(m: int, t: int, q: int, r: int = 0) -> IdentityPair:
    """(I_{n,m}^t : w(m,t,q)) against U_{m,t} + P_{m,t,q} (+ (x_{n-m+1}...x_n) when r = m).

    The equality holds for q >= 2 and for q = 1, r = 0.  For q = 1 and r >= 1 the colon is strictly larger:
    the tail generators of I_{n,m} lie neither in U_{m,t} nor in the (zero) P_{m,t,q}.
    """
    wit = w_monomials(m, t, q, r)
    n = wit.n
    left = colon(path_power(n, m, t), wit.w_mtq)
    right = add(_embed_first(u_ideal(m, t), n), p_ideal(m, t, q, r))
    if r == m:
        right = add(right, principal(consecutive(n - m + 1, n, n)))
    return IdentityPair(f"(I^t:w({m},{t},{q}))", left, right)


# identities from the proofs


def colon_power_identity(n: int, m: int, t: int) -> IdentityPair:
    """(I_{n,m}^t : x_{n-m+1}...x_n) = I_{n,m}^{t-1}."""
    if t < 2:
        raise ParameterError(f"t={t}", "1 <= m <= n and t >= 2")
    PathParams(n, m, t)
    left = colon(path_power(n, m, t), consecutive(n - m + 1, n, n))
    return IdentityPair("colon-power", left, path_power(n, m, t - 1))


def colon_top_power_identity(n: int, m: int, t: int) -> IdentityPair:
    """(I_{n,m}^t : (x_{n-m+1}...x_n)^{t-1}) = I_{n,m}."""
    PathParams(n, m, t)
    top = tuple((t - 1) * e for e in consecutive(n - m + 1, n, n))
    return IdentityPair("colon-top-power", colon(path_power(n, m, t), top), path_ideal(n, m))


def truncation_identity(n: int, m: int, k: int, t: int) -> IdentityPair:
    """((I_{n,m}^t : x_{n-k+2}...x_n), x_{n-m+1}...x_{n-k+1}) = (I_{n-k,m}^t, x_{n-m+1}...x_{n-k+1})."""
    PathParams(n, m, t)
    if not 2 <= k <= m or t < 2:
        raise ParameterError(f"k={k}, t={t}", "1 <= m <= n, 2 <= k <= m and t >= 2")
    head = principal(consecutive(n - m + 1, n - k + 1, n))
    left = add(colon(path_power(n, m, t), consecutive(n - k + 2, n, n)), head)
    right = add(embedded_path_power(n - k, m, t, n), head)
    return IdentityPair(f"truncation k={k}", left, right)


def v_colon_identity(ideal: MonomialIdeal, v: ExponentVector) -> IdentityPair:
    """v (I : v) = (v) ∩ I."""
    return IdentityPair("v(I:v)", scale(colon(ideal, v), v), intersect(principal(v), ideal))


def _ladder_ideals(n: int, m: int, t: int):
    """L_j and U_j, 0 <= j <= m, built by iterated colons and sums from I_{n,m}^t."""
    big = path_power(n, m, t)
    lower = [big]
    upper = [None]
    for j in range(1, m + 1):
        x = principal(consecutive(n - m + j, n - m + j, n))
        upper.append(add(lower[j - 1], x))
        lower.append(colon(lower[j - 1], x.gens[0]))
    return lower, upper


def proof_ladder(n: int, m: int, t: int) -> list[IdentityPair]:
    """Every ideal of the proof ladder built twice: by colons and sums, and by its closed form.

    Emits L_m, U_j (1 <= j <= m), A_{j,l} (2 <= j <= m, 0 <= l <= m-j), B_{j,l} (1 <= l <= m-j)
    and (U_j : w_j) (2 <= j <= m).
    """
    PathParams(n, m, t)
    if n < 2 * m or t < 2:
        raise ParameterError(f"n={n}, m={m}, t={t}", "n >= 2m and t >= 2")

    def x(i):
        return principal(consecutive(i, i, n))

    def run(first, last):
        return principal(consecutive(first, last, n))

    lower, upper = _ladder_ideals(n, m, t)
    pairs = [IdentityPair(f"L_{m}", lower[m], path_power(n, m, t - 1))]
    for j in range(1, m + 1):
        closed = add(
            colon(embedded_path_power(n - m + j - 1, m, t, n), consecutive(n - m + 1, n - m + j - 1, n)),
            x(n - m + j),
        )
        pairs.append(IdentityPair(f"U_{j}", upper[j], closed))
    for j in range(2, m + 1):
        w_j = consecutive(n - 2 * m + j, n - m, n)
        a_prev = add(upper[j], principal(w_j))
        for ell in range(m - j + 1):
            if ell > 0:
                b_iter = add(a_prev, x(n - m - ell + 1))
                b_closed = add(
                    add(embedded_path_power(n - m - ell, m, t, n), x(n - m - ell + 1)),
                    x(n - m + j),
                )
                pairs.append(IdentityPair(f"B_{j},{ell}", b_iter, b_closed))
                a_prev = colon(a_prev, consecutive(n - m - ell + 1, n - m - ell + 1, n))
            a_closed = add(
                add(embedded_path_power(n - m - ell - 1, m, t, n), run(n - 2 * m + j, n - m - ell)),
                x(n - m + j),
            )
            pairs.append(IdentityPair(f"A_{j},{ell}", a_prev, a_closed))
        pairs.append(
            IdentityPair(
                f"(U_{j}:w_{j})",
                colon(upper[j], w_j),
                add(embedded_path_power(n - m + j - 1, m, t - 1, n), x(n - m + j)),
            )
        )
    return pairs


def ladder_v_identities(n: int, m: int, t: int) -> list[IdentityPair]:
    """v (I^t : v) = (v) ∩ I^t for the ladder monomials v = x_{n-m+1}...x_{n-m+j}, 1 <= j <= m."""
    PathParams(n, m, t)
    big = path_power(n, m, t)
    return [v_colon_identity(big, consecutive(n - m + 1, n - m + j, n)) for j in range(1, m + 1)]

