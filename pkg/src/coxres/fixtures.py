"""Named matrix-group fixtures and option presets.

Entries are written symbolically (``"i"``, ``"-z3^2"``) and parsed into exact
scalars, so the data reads like the printed matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import as_scalar
from .groups import MatrixGroup
from .polynomials import PolyRing

__all__ = ["FIXTURES", "PRESETS", "load_fixture", "parse_scalar", "fixture_names", "Preset"]

_SCALAR_RING = PolyRing(1)


def parse_scalar(text):
    """Parse ``"-z3^2"``, ``"i"``, ``"1/2"`` or a number into an exact scalar."""
    if not isinstance(text, str):
        return as_scalar(text)
    p = _SCALAR_RING.parse(text)
    if not p.is_constant():
        raise ValueError(f"{text!r} is not a scalar")
    return as_scalar(p.constant_coeff())


def _m(rows):
    return [[parse_scalar(x) for x in row] for row in rows]


# the ten small three-dimensional representations of non-abelian groups of order <= 12
_CASES = {
    "case1-s3": [
        [[0, -1, 0], [1, -1, 0], [0, 0, 1]],
        [[-1, 1, 0], [0, 1, 0], [0, 0, -1]],
    ],
    "case2-d8": [
        [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
        [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
    ],
    "case3-q8": [
        [["i", 0, 0], [0, "-i", 0], [0, 0, 1]],
        [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
    ],
    "case4-q8": [
        [["i", 0, 0], [0, "-i", 0], [0, 0, -1]],
        [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
    ],
    "case5-d10": [
        [["z5", 0, 0], [0, "z5^4", 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, -1]],
    ],
    "case6-d12": [
        [["-z3^2", 0, 0], [0, "-z3", 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, -1]],
    ],
    "case7-a4": [
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
    ],
    "case8-bd3": [
        [["-z3^2", 0, 0], [0, "-z3", 0], [0, 0, 1]],
        [[0, "-i", 0], ["-i", 0, 0], [0, 0, 1]],
    ],
    "case9-bd3": [
        [["-z3^2", 0, 0], [0, "-z3", 0], [0, 0, -1]],
        [[0, "-i", 0], ["-i", 0, 0], [0, 0, "i"]],
    ],
    "case10-bd3": [
        [["-z3^2", 0, 0], [0, "-z3", 0], [0, 0, 1]],
        [[0, "-i", 0], ["-i", 0, 0], [0, 0, -1]],
    ],
}

_OTHER = {
    "q8-2d": [
        [["i", 0], [0, "-i"]],
        [[0, "-i"], ["-i", 0]],
    ],
    "s3-4d": [
        [[0, -1, 0, 0], [1, -1, 0, 0], [0, 0, 0, -1], [0, 0, 1, -1]],
        [[-1, 1, 0, 0], [0, 1, 0, 0], [0, 0, -1, 1], [0, 0, 0, 1]],
    ],
    "d8-4d": [
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
    ],
}

FIXTURES: dict[str, list] = {**_CASES, **_OTHER}

#: aliases accepted by ``load_fixture``
_ALIASES = {f"case{k}": name for name in _CASES for k in [name.split("-")[0][4:]]}
_ALIASES.update({"q8": "q8-2d", "s3": "s3-4d", "d8": "d8-4d"})


def fixture_names() -> list[str]:
    return list(FIXTURES)


def load_fixture(name: str) -> MatrixGroup:
    key = name.lower()
    key = _ALIASES.get(key, key)
    if key not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return MatrixGroup([_m(g) for g in FIXTURES[key]], name=key)


@dataclass(frozen=True)
class Preset:
    """Pinned options for a reference run."""

    fixture: str
    p0_columns: tuple | None = None
    vectors: tuple | None = None
    extra_generators: tuple = ()
    #: explicit invariant generators in S1..Sn (fixes the variable order)
    base_generators: tuple | None = None
    note: str = ""
    tags: tuple = field(default_factory=tuple)

    def p0(self):
        """P0 as a row matrix (the stored data are its columns)."""
        if self.p0_columns is None:
            return None
        cols = self.p0_columns
        return [list(r) for r in zip(*cols)]


_P0_CASE1 = ((1, 0, 0, 0), (1, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

PRESETS: dict[str, Preset] = {
    "q8-2d-resolution": Preset(
        "q8-2d",
        p0_columns=((1, 0, 0), (1, 2, 0), (1, 0, 2)),
        note="Q8 in GL(2); resolution with four inserted rays",
    ),
    "case1-crepant": Preset(
        "case1-s3",
        p0_columns=_P0_CASE1,
        base_generators=(
            "S3",
            "S1^3 - (3/2)*S1^2*S2 - (3/2)*S1*S2^2 + S2^3",
            "S1^2 - S1*S2 + S2^2",
            "S1^2*S2 - S1*S2^2",
        ),
        vectors=((1, 1, 0, 0), (1, 2, 1, 1)),
        note="S3 in GL(3); crepant resolution by two stellar subdivisions",
    ),
    "case5-crepant": Preset(
        "case5-d10",
        p0_columns=_P0_CASE1,
        base_generators=("S3", "S1^5 - S2^5", "S1*S2", "S1^5 + S2^5"),
        vectors=((1, 1, 0, 0), (1, 2, 1, 1), (2, 4, 1, 2)),
        note="D10 in GL(3); crepant resolution by three stellar subdivisions",
    ),
    "case7-extended": Preset(
        "case7-a4",
        base_generators=(
            "S1*S2*S3",
            "S1^2 + S2^2 + S3^2",
            "S1^2 + z3*S2^2 + z3^2*S3^2",
            "S1^2 + z3^2*S2^2 + z3*S3^2",
        ),
        extra_generators=("T2^2 - T3*T4", "T4^2 - T2*T3", "T3^2 - T2*T4"),
        # chosen so that the vectors below have the sections P0^-1 v_j
        # (0,0,2/3,1/3,0,2/3,1/3), (0,0,1/3,2/3,0,1/3,2/3), (1,0,0,0,1,1,1)
        p0_columns=(
            (1, 0, 0, 0, 0, 1, 0),
            (0, 1, 0, 0, 0, 0, 0),
            (0, 0, 1, 1, 0, 0, 0),
            (0, 0, 0, 0, 0, 1, 0),
            (0, 0, 0, 0, 1, 0, 0),
            (0, 0, 1, 0, 0, 1, 0),
            (0, 0, 2, 1, 0, 0, 3),
        ),
        vectors=((0, 0, 2, 1, 0, 1, 1), (0, 0, 2, 1, 0, 1, 2), (1, 0, 3, 1, 1, 2, 3)),
        note="A4 in GL(3); enlarged generator set, then three stellar subdivisions",
    ),
    "d8-4d-resolution": Preset(
        "d8-4d",
        base_generators=(
            "S1*S2",
            "S1*S4 + S2*S3",
            "S3*S4",
            "S1^2 - S2^2",
            "S3^2 - S4^2",
            "S1*S3 - S2*S4",
            "S1*S4 - S2*S3",
            "S1^2 + S2^2",
            "S3^2 + S4^2",
            "S1*S3 + S2*S4",
        ),
        # chosen so that the vectors below have the sections P0^-1 v_j
        # (0,0,0,1/2,1/2,1/2,1/2,0,0,0), (1/2,1/2,1/2,0,0,0,1/2,0,0,0)
        p0_columns=(
            (1, 1, 0, 0, 0, 1, 0, 0, 0, 0),
            (1, 1, 0, 2, 1, 0, 1, 0, 0, 0),
            (0, 0, 2, 0, 1, 1, 0, 0, 0, 0),
            (1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
            (1, 1, 0, 0, 0, 0, 1, 0, 0, 0),
            (0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
            (2, 2, 2, 0, 0, 0, 1, 0, 0, 0),
            (0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
            (0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
            (0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
        ),
        vectors=((2, 2, 1, 0, 0, 0, 1, 0, 0, 0), (2, 2, 2, 1, 1, 1, 1, 0, 0, 0)),
        note="D8 in GL(4); crepant resolution by two stellar subdivisions (slow)",
        tags=("slow",),
    ),
    # the exceptional divisor has section w = (1/2) * (Z/2-degree); with the
    # default P0 and generators this is the ray below
    "s3-4d-resolution": Preset(
        "s3-4d",
        vectors=((0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 1),),
        note="S3 in GL(4); crepant resolution by one stellar subdivision (slow)",
        tags=("slow",),
    ),
}
