"""Multigraded Betti numbers of S/I, projective dimension and depth.

β_{i,a}(S/I) = rank H̃_{i-2}(K^a(I)) for i >= 1, where K^a(I) is the upper Koszul complex
{τ ⊆ supp(a) : x^{a-τ} ∈ I}.  Only degrees in the lcm lattice of G(I) can carry nonzero Betti numbers,
so only those are scanned.
"""

import itertools
import json
import logging
from dataclasses import dataclass
from dataclasses import field

from .exceptions import DomainError
from .exceptions import MalformedInputError
from .homology import SimplicialComplex
from .homology import reduced_homology_ranks
from .monomials import ExponentVector
from .monomials import MonomialIdeal
from .monomials import contains
from .monomials import format_monomial
from .monomials import lcm_lattice
from .monomials import support
from .settings import EngineSettings

log = logging.getLogger(__name__)


def upper_koszul(ideal: MonomialIdeal, a: ExponentVector) -> SimplicialComplex:
    """K^a(I) on the vertices supp(a); void when x^a is not in I."""
    if len(a) != ideal.n:
        raise MalformedInputError(f"degree {a} has length {len(a)}, the ring has {ideal.n} variables")
    if not contains(ideal, a):
        return SimplicialComplex(frozenset())
    faces = set()
    verts = support(a)
    for size in range(len(verts) + 1):
        found = False
        for tau in itertools.combinations(verts, size):
            shifted = tuple(e - 1 if i in tau else e for i, e in enumerate(a, start=1))
            if contains(ideal, shifted):
                faces.add(tau)
                found = True
        # faces are closed under subsets, so no face of this size means none larger
        if not found:
            break
    return SimplicialComplex(frozenset(faces))


@dataclass(frozen=True)
class BettiTable:
    """Nonzero multigraded Betti numbers β_{i,a}(S/I), i >= 1; β_{0,0} = 1 is implicit."""

    n: int
    entries: dict[tuple[int, ExponentVector], int] = field(default_factory=dict)
    coefficient_field: str = "QQ"
    convention: str = "S/I"

    def rows(self) -> list[tuple[int, ExponentVector, int]]:
        return [(i, a, self.entries[(i, a)]) for i, a in sorted(self.entries)]

    @property
    def pd(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def depth(self) -> int:
        return self.n - self.pd

    def totals(self) -> dict[int, int]:
        out = {0: 1}
        for (i, _), rank in sorted(self.entries.items()):
            out[i] = out.get(i, 0) + rank
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "field": self.coefficient_field,
            "convention": self.convention,
            "pd": self.pd,
            "depth": self.depth,
            "rows": [{"i": i, "degree": list(a), "rank": r} for i, a, r in self.rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"# betti numbers of {self.convention}, n={self.n}, field={self.coefficient_field}"]
        lines += [f"beta_{i} {format_monomial(a)} = {r}" for i, a, r in self.rows()]
        lines.append("totals: " + " ".join(f"{i}:{r}" for i, r in self.totals().items()))
        return "\n".join(lines) + "\n"


def betti_table(ideal: MonomialIdeal, settings: EngineSettings | None = None) -> BettiTable:
    settings = settings or EngineSettings()
    if ideal.is_unit:
        raise DomainError("S/I is the zero module for the unit ideal; it has no resolution")
    entries = {}
    lattice = sorted(lcm_lattice(ideal, settings.max_gens, settings.max_lattice))
    for a in lattice:
        complex_ = upper_koszul(ideal, a)
        ranks = reduced_homology_ranks(complex_, settings.field, settings.max_vertices)
        for k, rank in enumerate(ranks):
            if rank:
                entries[(k + 1, a)] = rank
    log.debug("betti table over %d lattice degrees has %d nonzero entries", len(lattice), len(entries))
    return BettiTable(ideal.n, entries, settings.field)


def pd_quotient(ideal: MonomialIdeal, settings: EngineSettings | None = None) -> int:
    ideal.require_proper_nonzero("pd(S/I)")
    return betti_table(ideal, settings).pd


def depth_quotient(ideal: MonomialIdeal, settings: EngineSettings | None = None) -> int:
    ideal.require_proper_nonzero("depth(S/I)")
    return ideal.n - betti_table(ideal, settings).pd


def depth_ideal(ideal: MonomialIdeal, settings: EngineSettings | None = None) -> int:
    """depth(I) = depth(S/I) + 1."""
    return depth_quotient(ideal, settings) + 1
