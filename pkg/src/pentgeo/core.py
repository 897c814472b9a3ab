"""Parameter arithmetic, base-block files and the Geometry container.

A pentagonal geometry PENT(k,r,w) is a partial linear space with k points on
every line and r lines through every point, in which the points not collinear
with any point x form a Steiner system S(2,k,w) whose blocks are lines.  This
module knows the counting identities, the on-disk formats and the pair
coverage table; the axioms themselves are checked in pentgeo.pent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ArityMismatch,
    NonIntegralLineCount,
    ParameterDomain,
    PairCoveredTwice,
    PentSyntaxError,
    PointOutOfRange,
    StepNotDividingV,
)

# A line is a sorted, duplicate-free tuple of point identifiers.
Line = tuple[int, ...]


def canonical_line(points: Iterable[int]) -> Line:
    line = tuple(sorted(points))
    if len(set(line)) != len(line):
        raise ParameterDomain(f"repeated point in line {line}")
    return line


@dataclass(frozen=True)
class PentParams:
    """Admissible-shape parameters with the derived point and line counts."""

    k: int
    r: int
    w: int
    v: int
    b: int


def derive_params(k: int, r: int, w: int) -> PentParams:
    """Derive v and b from (k, r, w).

    v = (k-1)r + w + 1 counts points: r lines through a fixed point carry
    (k-1)r other points, and w points are left over for the opposite design.
    b counts lines by double counting point-line flags.
    """
    if k < 3:
        raise ParameterDomain(f"k = {k} < 3")
    if w < k:
        raise ParameterDomain(f"w = {w} < k = {k}")
    if r < 1:
        raise ParameterDomain(f"r = {r} < 1")
    v = (k - 1) * r + w + 1
    if (v * r) % k != 0:
        raise NonIntegralLineCount(f"k = {k} does not divide v*r = {v * r}")
    return PentParams(k=k, r=r, w=w, v=v, b=v * r // k)


def is_admissible(k: int, r: int, w: int) -> bool:
    """Necessary congruence r(w + 1 - r) = 0 (mod k) for PENT(k,r,w)."""
    if k < 3:
        raise ParameterDomain(f"k = {k} < 3")
    if w < k:
        raise ParameterDomain(f"w = {w} < k = {k}")
    if r < 1:
        raise ParameterDomain(f"r = {r} < 1")
    return (r * (w + 1 - r)) % k == 0


@dataclass(frozen=True)
class Geometry:
    """A point set 0..v-1 together with a set of canonical lines.

    Holding lines as a frozenset makes duplicates impossible by type; nothing
    here promises that the axioms hold.  |lines| equals params.b exactly when
    the geometry is complete.
    """

    params: PentParams
    lines: frozenset[Line]

    @property
    def v(self) -> int:
        return self.params.v

    def lines_sorted(self) -> list[Line]:
        return sorted(self.lines)


def geometry(params: PentParams, lines: Iterable[Iterable[int]]) -> Geometry:
    canon = frozenset(canonical_line(ln) for ln in lines)
    for ln in canon:
        for x in ln:
            if not 0 <= x < params.v:
                raise PointOutOfRange(f"point {x} outside 0..{params.v - 1}")
    return Geometry(params=params, lines=canon)


@dataclass(frozen=True)
class BaseBlockFile:
    """Parsed .pent file: parameters, development step d and raw base blocks.

    Blocks are kept exactly as written so parse/write round-trips are stable;
    develop() canonicalizes.  The block count is not constrained: listings
    with short orbits supply more than (d*r)/k base blocks.
    """

    k: int
    r: int
    w: int
    d: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        params = derive_params(self.k, self.r, self.w)
        if self.d < 1:
            raise ParameterDomain(f"d = {self.d} < 1")
        for blk in self.blocks:
            for x in blk:
                if not 0 <= x < params.v:
                    raise PointOutOfRange(f"point {x} outside 0..{params.v - 1}")

    @property
    def params(self) -> PentParams:
        return derive_params(self.k, self.r, self.w)


def parse_pent_file(text: str) -> BaseBlockFile:
    """Parse the .pent exchange format.

    Lines starting with '#' are comments; blank lines are ignored.  The first
    data line is 'k r w d'; every further data line is one base block of
    exactly k point identifiers.  A trailing newline is required.
    """
    if not text.endswith("\n"):
        raise PentSyntaxError("missing trailing newline")
    header: tuple[int, int, int, int] | None = None
    blocks: list[tuple[int, ...]] = []
    k = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            values = tuple(int(tok) for tok in stripped.split())
        except ValueError:
            raise PentSyntaxError(f"non-integer token in {stripped!r}", line_no)
        if header is None:
            if len(values) != 4:
                raise PentSyntaxError("header must be 'k r w d'", line_no)
            header = values
            k = values[0]
            continue
        if len(values) != k:
            raise ArityMismatch(f"block has {len(values)} entries, expected {k}", line_no)
        blocks.append(values)
    if header is None:
        raise PentSyntaxError("no header line")
    if not blocks:
        raise PentSyntaxError("no base blocks")
    return BaseBlockFile(k=header[0], r=header[1], w=header[2], d=header[3], blocks=tuple(blocks))


def write_pent_file(file: BaseBlockFile) -> str:
    lines = ["%d %d %d %d" % (file.k, file.r, file.w, file.d)]
    lines.extend(" ".join(str(x) for x in blk) for blk in file.blocks)
    return "\n".join(lines) + "\n"


def develop(file: BaseBlockFile) -> Geometry:
    """Close the base blocks under x -> x+d (mod v) and deduplicate.

    Blocks invariant under a multiple of d produce short orbits, so the
    developed line count is at most (v/d) * len(blocks).
    """
    params = file.params
    v = params.v
    if v % file.d != 0:
        raise StepNotDividingV(f"d = {file.d} does not divide v = {v}")
    lines: set[Line] = set()
    for blk in file.blocks:
        start = canonical_line(blk)
        cur = start
        while True:
            lines.add(cur)
            cur = canonical_line((x + file.d) % v for x in cur)
            if cur == start:
                break
    return Geometry(params=params, lines=frozenset(lines))


@dataclass(frozen=True)
class PairCoverage:
    """Map from unordered point pair to the unique line covering it.

    Pairs absent from the table are uncovered; those are exactly the edges of
    the deficiency graph.
    """

    v: int
    table: Mapping[tuple[int, int], Line]

    def line_of(self, x: int, y: int) -> Line | None:
        return self.table.get((x, y) if x < y else (y, x))

    def covered(self, x: int, y: int) -> bool:
        return self.line_of(x, y) is not None

    def uncovered_pairs(self) -> list[tuple[int, int]]:
        return [
            (x, y)
            for x in range(self.v)
            for y in range(x + 1, self.v)
            if (x, y) not in self.table
        ]


def pair_coverage(geom: Geometry) -> PairCoverage:
    table: dict[tuple[int, int], Line] = {}
    for ln in geom.lines_sorted():
        for i in range(len(ln)):
            for j in range(i + 1, len(ln)):
                pair = (ln[i], ln[j])
                other = table.get(pair)
                if other is not None:
                    raise PairCoveredTwice(pair, other, ln)
                table[pair] = ln
    return PairCoverage(v=geom.v, table=table)


def geometry_to_json(geom: Geometry, provenance: dict | None = None) -> str:
    payload = {
        "k": geom.params.k,
        "r": geom.params.r,
        "w": geom.params.w,
        "v": geom.params.v,
        "lines": [list(ln) for ln in geom.lines_sorted()],
    }
    if provenance is not None:
        payload["provenance"] = provenance
    return json.dumps(payload, indent=None, separators=(",", ":")) + "\n"


def geometry_from_json(text: str) -> Geometry:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PentSyntaxError(f"bad JSON: {exc}")
    try:
        params = derive_params(int(payload["k"]), int(payload["r"]), int(payload["w"]))
        lines = payload["lines"]
    except KeyError as exc:
        raise PentSyntaxError(f"missing field {exc}")
    return geometry(params, lines)
