"""Plain-text format for monomial ideals.

Grammar (one item per line, blank lines and ``#`` comments ignored)::

    file     := header monomial*
    header   := "ring n=" INT
    monomial := "1" | compact | pairs
    compact  := factor ("*" factor)*          e.g.  x1^2*x3
    factor   := "x" INT ["^" INT]
    pairs    := pair (" " pair)*               e.g.  x1:2 x3:1
    pair     := "x" INT ":" INT

Repeated variables multiply.  The printer writes the header and the canonical generators in compact form,
so ``parse_ideal(format_ideal(I)) == I`` for every ideal.
"""

import re

import fsspec

from .exceptions import MalformedInputError
from .monomials import MonomialIdeal
from .monomials import format_monomial
from .monomials import minimalize

_HEADER = re.compile(r"^ring\s+n\s*=\s*(\d+)$")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_PAIR = re.compile(r"^x(\d+):(\d+)$")


def _add_power(exps, index, exponent, line):
    if not 1 <= index <= len(exps):
        raise MalformedInputError(f"variable x{index} outside the ring of {len(exps)} variables: {line!r}")
    exps[index - 1] += exponent


def parse_monomial(text: str, n: int) -> tuple[int, ...]:
    line = text.strip()
    exps = [0] * n
    if line == "1":
        return tuple(exps)
    if ":" in line:
        for token in line.split():
            match = _PAIR.match(token)
            if not match:
                raise MalformedInputError(f"cannot parse {token!r} as var:exp in {line!r}")
            _add_power(exps, int(match.group(1)), int(match.group(2)), line)
    else:
        for token in line.replace(" ", "").split("*"):
            match = _FACTOR.match(token)
            if not match:
                raise MalformedInputError(f"cannot parse {token!r} as a variable power in {line!r}")
            _add_power(exps, int(match.group(1)), int(match.group(2) or 1), line)
    return tuple(exps)


def parse_ideal(text: str) -> MonomialIdeal:
    n = None
    raw = []
    for line_f in text.splitlines():
        line = line_f.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            match = _HEADER.match(line)
            if not match:
                raise MalformedInputError(f"expected a 'ring n=<int>' header, got {line!r}")
            n = int(match.group(1))
            if n < 1:
                raise MalformedInputError("the ring needs at least one variable")
            continue
        raw.append(parse_monomial(line, n))
    if n is None:
        raise MalformedInputError("missing 'ring n=<int>' header")
    return minimalize(raw, n)


def format_ideal(ideal: MonomialIdeal) -> str:
    lines = [f"ring n={ideal.n}"]
    lines.extend(format_monomial(g) for g in ideal.gens)
    return "\n".join(lines) + "\n"


def read_ideal(path: str, **storage_options) -> MonomialIdeal:
    """Read an ideal file from any fsspec location (local path, ``memory://``, ``s3://``, ...)."""
    with fsspec.open(path, "rt", **storage_options) as f:
        return parse_ideal(f.read())


def write_ideal(ideal: MonomialIdeal, path: str, **storage_options):
    with fsspec.open(path, "wt", **storage_options) as f:
        f.write(format_ideal(ideal))
