"""Reduced simplicial homology ranks over QQ or GF(2)."""

import itertools
import logging
import typing
from dataclasses import dataclass

from sympy.polys.domains import GF
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import ImproperlyConfigured
from .exceptions import InconsistentResultError
from .exceptions import ResourceLimitError

log = logging.getLogger(__name__)

Face = tuple[int, ...]

DEFAULT_MAX_VERTICES = 20

FIELDS = {
    "QQ": QQ,
    "GF2": GF(2),
}


def coefficient_domain(field: str):
    try:
        return FIELDS[field]
    except KeyError:
        raise ImproperlyConfigured(f"Unknown coefficient field {field!r}, expected one of {sorted(FIELDS)}") from None


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite simplicial complex given by all of its faces (sorted vertex tuples).

    The void complex has no faces at all; the irrelevant complex has only the empty face.
    """

    faces: frozenset[Face]

    @classmethod
    def from_faces(cls, faces: typing.Iterable[typing.Iterable[int]]) -> "SimplicialComplex":
        """The complex generated by ``faces``, closed under taking subsets."""
        closed: set[Face] = set()
        for face in faces:
            face = tuple(sorted(set(face)))
            if face in closed:
                continue
            for size in range(len(face) + 1):
                closed.update(itertools.combinations(face, size))
        return cls(frozenset(closed))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(f[0] for f in self.faces if len(f) == 1))

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def dimension(self) -> int:
        """-1 for the irrelevant complex, -2 for the void complex."""
        return max((len(f) - 1 for f in self.faces), default=-2)

    def f_vector(self) -> list[int]:
        """Face counts by size, starting at the empty face."""
        counts = [0] * (self.dimension + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return counts

    def is_closed(self) -> bool:
        return all(f[:i] + f[i + 1 :] in self.faces for f in self.faces for i in range(len(f)))

    def cone_point(self) -> int | None:
        """A vertex v with F ∪ {v} a face for every face F, if any."""
        for v in self.vertices:
            if all(tuple(sorted(set(f) | {v})) in self.faces for f in self.faces):
                return v
        return None

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** (size - 1) * count for size, count in enumerate(self.f_vector()))


def _rank(rows: list[list[int]], domain) -> int:
    if not rows or not rows[0]:
        return 0
    return DomainMatrix.from_list(rows, domain).rank()


def _boundary_rows(source: list[Face], target_index: dict[Face, int]) -> list[list[int]]:
    """Matrix of the boundary map, one row per target face and one column per source face."""
    rows = [[0] * len(source) for _ in target_index]
    for col, face in enumerate(source):
        for i in range(len(face)):
            rows[target_index[face[:i] + face[i + 1 :]]][col] = (-1) ** i
    return rows


def reduced_homology_ranks(
    complex_: SimplicialComplex,
    field: str = "QQ",
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> tuple[int, ...]:
    """Ranks of H̃_{-1}, H̃_0, ..., H̃_{dim} of the complex.

    :param complex_: the complex; the void complex has no homology and gives ``()``
    :param field: ``"QQ"`` or ``"GF2"``
    :param max_vertices: refuse complexes on more vertices
    """
    domain = coefficient_domain(field)
    if len(complex_.vertices) > max_vertices:
        raise ResourceLimitError("max_vertices", max_vertices, len(complex_.vertices))
    if complex_.is_void:
        return ()
    by_size: list[list[Face]] = [[] for _ in range(complex_.dimension + 2)]
    for face in sorted(complex_.faces):
        by_size[len(face)].append(face)
    if complex_.cone_point() is not None:
        return (0,) * len(by_size)

    # ranks[s] is the rank of the boundary map from faces of size s to faces of size s - 1
    ranks = [0] * (len(by_size) + 1)
    for size in range(1, len(by_size)):
        index = {f: i for i, f in enumerate(by_size[size - 1])}
        ranks[size] = _rank(_boundary_rows(by_size[size], index), domain)
    out = tuple(len(by_size[s]) - ranks[s] - ranks[s + 1] for s in range(len(by_size)))

    euler = sum((-1) ** (s - 1) * h for s, h in enumerate(out))
    if euler != complex_.reduced_euler_characteristic():
        raise InconsistentResultError(
            f"Euler characteristic {complex_.reduced_euler_characteristic()} disagrees with homology {out}"
        )
    return out
