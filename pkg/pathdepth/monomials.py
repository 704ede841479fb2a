"""Exact arithmetic of monomials and monomial ideals.

A monomial x_1^{c_1}...x_n^{c_n} is stored as its exponent vector, a plain tuple of ``n`` nonnegative ints.
Divisibility of monomials is the componentwise order on exponent vectors.  A :class:`MonomialIdeal` keeps
its unique minimal generating set G(I) sorted lexicographically, so two ideals are equal iff their
canonical forms are equal.
"""

import itertools
import logging
import typing
from dataclasses import dataclass

from .exceptions import DomainError
from .exceptions import ExponentOverflowError
from .exceptions import MalformedInputError
from .exceptions import ParameterError
from .exceptions import ResourceLimitError

log = logging.getLogger(__name__)

ExponentVector = tuple[int, ...]

EXPONENT_LIMIT = 2**31

DEFAULT_MAX_GENS = 22
DEFAULT_MAX_LATTICE = 200_000


def exponent_vector(exps: typing.Iterable[int], n: int | None = None) -> ExponentVector:
    """Validate and freeze an exponent vector.

    :param exps: the exponents, one per variable
    :param n: expected number of variables (not checked if None)
    :return: the exponents as a tuple of ints
    """
    vec = tuple(exps)
    if n is not None and len(vec) != n:
        raise MalformedInputError(f"exponent vector {vec} has length {len(vec)}, expected {n}")
    for e in vec:
        if not isinstance(e, int) or isinstance(e, bool):
            raise MalformedInputError(f"exponent {e!r} is not an integer")
        if e < 0:
            raise MalformedInputError(f"exponent {e} is negative")
        if e >= EXPONENT_LIMIT:
            raise ExponentOverflowError(f"exponent {e} does not fit in 31 bits")
    return vec


def _checked(vec: ExponentVector) -> ExponentVector:
    if vec and max(vec) >= EXPONENT_LIMIT:
        raise ExponentOverflowError(f"exponent overflow in {vec}")
    return vec


def unit(n: int) -> ExponentVector:
    return (0,) * n


def variable(i: int, n: int) -> ExponentVector:
    """Exponent vector of x_i (1-based)."""
    if not 1 <= i <= n:
        raise ParameterError(f"variable x{i} outside the ring of {n} variables", "1 <= i <= n")
    return tuple(1 if j == i else 0 for j in range(1, n + 1))


def squarefree(indices: typing.Iterable[int], n: int) -> ExponentVector:
    """Exponent vector of the product of the variables x_i, i in ``indices`` (1-based, repeats add up)."""
    exps = [0] * n
    for i in indices:
        if not 1 <= i <= n:
            raise ParameterError(f"variable x{i} outside the ring of {n} variables", "1 <= i <= n")
        exps[i - 1] += 1
    return tuple(exps)


def consecutive(first: int, last: int, n: int) -> ExponentVector:
    """x_first * x_{first+1} * ... * x_last; the unit monomial when ``last < first``."""
    return squarefree(range(first, last + 1), n)


def divides(u: ExponentVector, v: ExponentVector) -> bool:
    return all(a <= b for a, b in zip(u, v, strict=True))


def mul(u: ExponentVector, v: ExponentVector) -> ExponentVector:
    return _checked(tuple(a + b for a, b in zip(u, v, strict=True)))


def lcm(u: ExponentVector, v: ExponentVector) -> ExponentVector:
    return tuple(max(a, b) for a, b in zip(u, v, strict=True))


def quotient(u: ExponentVector, v: ExponentVector) -> ExponentVector:
    """u / v, rounding every negative exponent up to zero (the generator of (u) : v)."""
    return tuple(max(a - b, 0) for a, b in zip(u, v, strict=True))


def degree(u: ExponentVector) -> int:
    return sum(u)


def support(u: ExponentVector) -> tuple[int, ...]:
    """1-based indices of the variables dividing u."""
    return tuple(i for i, e in enumerate(u, start=1) if e)


def format_monomial(u: ExponentVector) -> str:
    """Compact text form, e.g. ``x1^2*x3``; ``1`` for the unit monomial."""
    factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(u, start=1) if e]
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of K[x_1, ..., x_n] given by its minimal generators.

    Build instances with :func:`minimalize` (or the operations below); the constructor trusts its input.
    The zero ideal has no generators, the unit ideal has the single all-zeros generator.
    """

    n: int
    gens: tuple[ExponentVector, ...]

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def is_proper_nonzero(self) -> bool:
        return not (self.is_zero or self.is_unit)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, u):
        return contains(self, u)

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(format_monomial(g) for g in self.gens) + ")"

    def top(self) -> ExponentVector:
        """Componentwise maximum (lcm) of the generators; the unit monomial for the zero ideal."""
        out = unit(self.n)
        for g in self.gens:
            out = lcm(out, g)
        return out

    def require_proper_nonzero(self, what="this computation"):
        if self.is_zero:
            raise DomainError(f"{what} needs a nonzero ideal, got the zero ideal")
        if self.is_unit:
            raise DomainError(f"{what} needs a proper ideal, got the unit ideal")


def _check_ring(*ideals: MonomialIdeal):
    sizes = {ideal.n for ideal in ideals}
    if len(sizes) > 1:
        raise MalformedInputError(f"ideals live in rings of different sizes {sorted(sizes)}")


def _check_vector(u: ExponentVector, n: int):
    if len(u) != n:
        raise MalformedInputError(f"monomial {u} has length {len(u)}, the ring has {n} variables")


def minimalize(raw_gens: typing.Iterable[typing.Iterable[int]], n: int) -> MonomialIdeal:
    """The monomial ideal generated by ``raw_gens``, in canonical form.

    :param raw_gens: any generating set (duplicates and redundant generators allowed)
    :param n: number of variables
    """
    candidates = {exponent_vector(g, n) for g in raw_gens}
    # a divisor never has larger total degree than its multiple
    kept: list[ExponentVector] = []
    for g in sorted(candidates, key=lambda v: (sum(v), v)):
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return MonomialIdeal(n, tuple(sorted(kept)))


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ())


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, (unit(n),))


def principal(u: ExponentVector) -> MonomialIdeal:
    return MonomialIdeal(len(u), (exponent_vector(u),))


def variables_ideal(indices: typing.Iterable[int], n: int) -> MonomialIdeal:
    """The ideal (x_i : i in indices)."""
    return minimalize((variable(i, n) for i in indices), n)


def contains(ideal: MonomialIdeal, u: ExponentVector) -> bool:
    """True iff the monomial u lies in the ideal."""
    _check_vector(u, ideal.n)
    return any(divides(g, u) for g in ideal.gens)


def multiply(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    _check_ring(left, right)
    return minimalize((mul(a, b) for a in left.gens for b in right.gens), left.n)


def power(ideal: MonomialIdeal, t: int) -> MonomialIdeal:
    """I^t for t >= 1."""
    if t < 1:
        raise ParameterError(f"power exponent t={t} rejected", "t >= 1")
    out = ideal
    for _ in range(t - 1):
        out = multiply(out, ideal)
    return out


def colon(ideal: MonomialIdeal, u: ExponentVector) -> MonomialIdeal:
    """(I : u), generated by lcm(g, u) / u for g in G(I)."""
    _check_vector(u, ideal.n)
    return minimalize((quotient(g, u) for g in ideal.gens), ideal.n)


def add(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    _check_ring(left, right)
    return minimalize(left.gens + right.gens, left.n)


def intersect(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    _check_ring(left, right)
    return minimalize((lcm(a, b) for a in left.gens for b in right.gens), left.n)


def is_subset(left: MonomialIdeal, right: MonomialIdeal) -> bool:
    """True iff left is contained in right."""
    _check_ring(left, right)
    return all(contains(right, g) for g in left.gens)


def scale(ideal: MonomialIdeal, u: ExponentVector) -> MonomialIdeal:
    """u * I; shifting every generator by u keeps the generating set minimal."""
    _check_vector(u, ideal.n)
    return MonomialIdeal(ideal.n, tuple(sorted(mul(g, u) for g in ideal.gens)))


def extend_ring(ideal: MonomialIdeal, k: int = 1) -> MonomialIdeal:
    """I S' in S' = S[x_{n+1}, ..., x_{n+k}]."""
    if k < 0:
        raise ParameterError(f"cannot remove {-k} variables", "k >= 0")
    pad = (0,) * k
    return MonomialIdeal(ideal.n + k, tuple(g + pad for g in ideal.gens))


def lcm_lattice(
    ideal: MonomialIdeal,
    max_gens: int = DEFAULT_MAX_GENS,
    max_lattice: int = DEFAULT_MAX_LATTICE,
) -> frozenset[ExponentVector]:
    """All lcms of nonempty subsets of G(I).

    Built by closing under lcm one generator at a time instead of walking all 2^|G| subsets.
    """
    if len(ideal.gens) > max_gens:
        raise ResourceLimitError("max_gens", max_gens, len(ideal.gens))
    lattice: set[ExponentVector] = set()
    for g in ideal.gens:
        lattice |= {lcm(g, a) for a in lattice}
        lattice.add(g)
        if len(lattice) > max_lattice:
            raise ResourceLimitError("max_lattice", max_lattice, len(lattice))
    log.debug("lcm lattice of %d generators has %d elements", len(ideal.gens), len(lattice))
    return frozenset(lattice)


def box(top: ExponentVector, bottom: ExponentVector | None = None) -> typing.Iterator[ExponentVector]:
    """All exponent vectors between ``bottom`` (default the unit monomial) and ``top``, in lex order."""
    if bottom is None:
        bottom = unit(len(top))
    return itertools.product(*(range(b, t + 1) for b, t in zip(bottom, top, strict=True)))
