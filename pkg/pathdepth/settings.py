import os
from dataclasses import asdict
from dataclasses import dataclass

from .exceptions import ImproperlyConfigured
from .homology import DEFAULT_MAX_VERTICES
from .homology import FIELDS
from .monomials import DEFAULT_MAX_GENS
from .monomials import DEFAULT_MAX_LATTICE

CACHE_ENV = "PATHDEPTH_CACHE"

DEFAULT_MAX_POSET = 2_000_000
DEFAULT_TIMEOUT_SECS = 60.0
SOLVERS = ("cpsat", "backtrack")


@dataclass(frozen=True)
class EngineSettings:
    """Caps and switches shared by every engine.

    settings:
    - max_gens: refuse ideals with more minimal generators when building the lcm lattice
    - max_lattice: refuse lcm lattices with more elements
    - max_vertices: refuse upper Koszul complexes on more vertices
    - max_poset: refuse characteristic posets whose bounding box has more points
    - timeout_secs: wall-clock budget of one Stanley depth search
    - field: homology coefficients, "QQ" (reference) or "GF2"
    - solver: "cpsat" (OR-tools CP-SAT, one worker, fixed seed) or "backtrack" (pure Python exact cover)
    - reconfirm: re-run a fresh search at sdepth + 1 before reporting a value
    - paranoid: open the result cache so that every hit re-verifies its certificates

    example::

        settings = EngineSettings.from_options(max_poset=5000, field="GF2")
    """

    max_gens: int = DEFAULT_MAX_GENS
    max_lattice: int = DEFAULT_MAX_LATTICE
    max_vertices: int = DEFAULT_MAX_VERTICES
    max_poset: int = DEFAULT_MAX_POSET
    timeout_secs: float = DEFAULT_TIMEOUT_SECS
    field: str = "QQ"
    solver: str = "cpsat"
    reconfirm: bool = True
    paranoid: bool = False

    def __post_init__(self):
        for name in ("max_gens", "max_lattice", "max_vertices", "max_poset"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ImproperlyConfigured(f"{name} must be a positive integer, got {value!r}")
        if self.timeout_secs <= 0:
            raise ImproperlyConfigured(f"timeout_secs must be positive, got {self.timeout_secs!r}")
        if self.field not in FIELDS:
            raise ImproperlyConfigured(f"field must be one of {sorted(FIELDS)}, got {self.field!r}")
        if self.solver not in SOLVERS:
            raise ImproperlyConfigured(f"solver must be one of {list(SOLVERS)}, got {self.solver!r}")

    @classmethod
    def from_options(cls, **options) -> "EngineSettings":
        """Build settings from keyword options; ``None`` values keep the default."""
        options_cp = {k: v for k, v in options.items() if v is not None}
        known = {}
        for name in cls.__dataclass_fields__:
            if name in options_cp:
                known[name] = options_cp.pop(name)
        if options_cp:
            raise ImproperlyConfigured(f"Unknown setting(s): {sorted(options_cp)}")
        return cls(**known)

    def to_dict(self) -> dict:
        return asdict(self)

    def fingerprint(self) -> dict:
        """The settings that key a cached result; ``paranoid`` only governs how cache reads are trusted."""
        out = self.to_dict()
        del out["paranoid"]
        return out


def cache_location(flag: str | None = None) -> str | None:
    """The result cache location: the ``--cache-dir`` flag, else ``$PATHDEPTH_CACHE``, else none."""
    if flag:
        return flag
    return os.environ.get(CACHE_ENV) or None
