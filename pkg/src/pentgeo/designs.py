"""Steiner systems, finite fields, Latin squares and group divisible designs.

Everything a geometry construction consumes as an ingredient is built here
from first principles: S(2,3,w) by the Bose and Skolem recipes, planes over
explicit finite fields, transversal designs from mutually orthogonal Latin
squares.  Verification is exhaustive pair counting; no ingredient leaves this
module unchecked.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .core import Line, canonical_line
from .errors import (
    FieldTooLarge,
    GroupPairCovered,
    Inadmissible,
    NoConstructionAvailable,
    NotPrimePower,
    PairDoubled,
    PairMissing,
    ParameterDomain,
    TooManySquares,
)

MAX_FIELD_ORDER = 49

# Monic irreducible polynomials over GF(p), coefficients low degree first.
IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (1, 1, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (1, 0, 1),
}


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
    return (q, 1)


class FiniteField:
    """GF(q) for prime powers q <= 49.

    Elements are 0..q-1 encoding base-p digit vectors, so 0 and 1 are the
    additive and multiplicative identities.  Prime-power arithmetic reduces
    polynomials modulo a fixed irreducible; the field axioms are checked
    exhaustively on construction.
    """

    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise NotPrimePower(f"{q} is not a prime power")
        if q > MAX_FIELD_ORDER:
            raise FieldTooLarge(f"q = {q} > {MAX_FIELD_ORDER}")
        self.q = q
        self.p, self.e = pe
        self._add = [[0] * q for _ in range(q)]
        self._mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(q):
                self._add[a][b] = self._combine(a, b, add=True)
                self._mul[a][b] = self._combine(a, b, add=False)
        self._inv = [0] * q
        for a in range(1, q):
            row = self._mul[a]
            self._inv[a] = row.index(1)
        self._check_axioms()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits: list[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value

    def _combine(self, a: int, b: int, add: bool) -> int:
        if self.e == 1:
            return (a + b) % self.p if add else (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        if add:
            return self._encode([(x + y) % self.p for x, y in zip(da, db)])
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        poly = IRREDUCIBLE[self.q]
        for i in range(len(prod) - 1, self.e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.e):
                    prod[i - self.e + j] = (prod[i - self.e + j] - c * poly[j]) % self.p
        return self._encode(prod[: self.e])

    def _check_axioms(self):
        q = self.q
        add, mul = self._add, self._mul
        for a in range(q):
            if add[a][0] != a or mul[a][1] != a or mul[a][0] != 0:
                raise NotPrimePower(f"identity axiom fails at {a} in GF({q})")
            for b in range(q):
                if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                    raise NotPrimePower(f"commutativity fails in GF({q})")
                for c in range(q):
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise NotPrimePower(f"associativity fails in GF({q})")
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise NotPrimePower(f"distributivity fails in GF({q})")
        for a in range(1, q):
            if mul[a][self._inv[a]] != 1:
                raise NotPrimePower(f"no inverse for {a} in GF({q})")

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._add[a].index(0)

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg(b)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ParameterDomain("0 has no inverse")
        return self._inv[a]


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)


@dataclass(frozen=True)
class SteinerSystem:
    """S(2,k,w): blocks of size k on points 0..w-1 covering every pair once."""

    k: int
    w: int
    blocks: frozenset[Line]


@dataclass(frozen=True)
class Gdd:
    """K-GDD: groups partition the points; blocks of size k cover every
    cross-group pair exactly once and no within-group pair."""

    k: int
    groups: tuple[tuple[int, ...], ...]
    blocks: frozenset[Line]

    @property
    def n(self) -> int:
        return sum(len(g) for g in self.groups)

    def group_type(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.groups:
            out[len(g)] = out.get(len(g), 0) + 1
        return out


def verify_steiner(s: SteinerSystem) -> None:
    """Exhaustive pair check; raises on the first defect found."""
    if s.k < 2 or s.w < s.k:
        raise ParameterDomain(f"bad S(2,{s.k},{s.w})")
    seen: dict[tuple[int, int], Line] = {}
    for blk in sorted(s.blocks):
        if len(blk) != s.k or any(not 0 <= x < s.w for x in blk):
            raise ParameterDomain(f"bad block {blk}")
        for i in range(s.k):
            for j in range(i + 1, s.k):
                pair = (blk[i], blk[j])
                if pair in seen:
                    raise PairDoubled(pair, seen[pair], blk)
                seen[pair] = blk
    for x in range(s.w):
        for y in range(x + 1, s.w):
            if (x, y) not in seen:
                raise PairMissing((x, y))


def verify_gdd(d: Gdd) -> None:
    """Exhaustive cross-pair check; raises on the first defect found."""
    n = d.n
    group_of = {}
    for gi, grp in enumerate(d.groups):
        for x in grp:
            if x in group_of:
                raise ParameterDomain(f"point {x} in two groups")
            group_of[x] = gi
    if sorted(group_of) != list(range(n)):
        raise ParameterDomain("groups do not partition 0..n-1")
    seen: dict[tuple[int, int], Line] = {}
    for blk in sorted(d.blocks):
        if len(blk) != d.k or any(x not in group_of for x in blk):
            raise ParameterDomain(f"bad block {blk}")
        for i in range(d.k):
            for j in range(i + 1, d.k):
                pair = (blk[i], blk[j])
                if group_of[pair[0]] == group_of[pair[1]]:
                    raise GroupPairCovered(pair, blk)
                if pair in seen:
                    raise PairDoubled(pair, seen[pair], blk)
                seen[pair] = blk
    for x in range(n):
        for y in range(x + 1, n):
            if group_of[x] != group_of[y] and (x, y) not in seen:
                raise PairMissing((x, y))


def single_block_system(k: int) -> SteinerSystem:
    """S(2,k,k): the one block covering everything."""
    if k < 2:
        raise ParameterDomain(f"k = {k} < 2")
    return SteinerSystem(k=k, w=k, blocks=frozenset({tuple(range(k))}))


def _bose(t: int) -> frozenset[Line]:
    # Points (i,c) -> c*(2t+1)+i over the idempotent quasigroup
    # i*j = (i+j)(t+1) mod 2t+1.
    n = 2 * t + 1

    def pt(i: int, c: int) -> int:
        return c * n + i

    blocks = [canonical_line(pt(i, c) for c in range(3)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q = ((i + j) * (t + 1)) % n
            for c in range(3):
                blocks.append(canonical_line([pt(i, c), pt(j, c), pt(q, (c + 1) % 3)]))
    return frozenset(blocks)


def _skolem(t: int) -> frozenset[Line]:
    # Points (i,c) -> c*2t+i plus an extra point 6t, over the half-idempotent
    # quasigroup i*j = pi((i+j) mod 2t) with pi(2x) = x, pi(2x+1) = t+x.
    n = 2 * t
    extra = 6 * t

    def pt(i: int, c: int) -> int:
        return c * n + i

    def star(i: int, j: int) -> int:
        s = (i + j) % n
        return s // 2 if s % 2 == 0 else t + (s - 1) // 2

    blocks = [canonical_line(pt(i, c) for c in range(3)) for i in range(t)]
    for i in range(t):
        for c in range(3):
            blocks.append(canonical_line([extra, pt(t + i, c), pt(i, (c + 1) % 3)]))
    for i in range(n):
        for j in range(i + 1, n):
            q = star(i, j)
            for c in range(3):
                blocks.append(canonical_line([pt(i, c), pt(j, c), pt(q, (c + 1) % 3)]))
    return frozenset(blocks)


def sts(w: int) -> SteinerSystem:
    """Steiner triple system on w points, w = 1 or 3 (mod 6)."""
    if w < 3:
        raise Inadmissible(f"w = {w} < 3")
    if w % 6 == 3:
        blocks = _bose((w - 3) // 6)
    elif w % 6 == 1:
        blocks = _skolem((w - 1) // 6)
    else:
        raise Inadmissible(f"no S(2,3,{w}): w = {w} is not 1 or 3 (mod 6)")
    system = SteinerSystem(k=3, w=w, blocks=blocks)
    verify_steiner(system)
    return system


def affine_plane(q: int) -> SteinerSystem:
    """AG(2,q) as S(2,q,q^2); point (x,y) is numbered x*q+y."""
    f = field(q)
    blocks = []
    for m in range(q):
        for c in range(q):
            blocks.append(canonical_line(x * q + f.add(f.mul(m, x), c) for x in range(q)))
    for c in range(q):
        blocks.append(canonical_line(c * q + y for y in range(q)))
    system = SteinerSystem(k=q, w=q * q, blocks=frozenset(blocks))
    verify_steiner(system)
    return system


def projective_plane(q: int) -> SteinerSystem:
    """PG(2,q) as S(2,q+1,q^2+q+1).

    Affine points (x,y) are numbered x*q+y; the point at infinity on slope m
    is q^2+m and the vertical direction is q^2+q.
    """
    f = field(q)
    blocks = []
    for m in range(q):
        for c in range(q):
            line = [x * q + f.add(f.mul(m, x), c) for x in range(q)]
            line.append(q * q + m)
            blocks.append(canonical_line(line))
    for c in range(q):
        blocks.append(canonical_line([c * q + y for y in range(q)] + [q * q + q]))
    blocks.append(canonical_line(range(q * q, q * q + q + 1)))
    system = SteinerSystem(k=q + 1, w=q * q + q + 1, blocks=frozenset(blocks))
    verify_steiner(system)
    return system


def mols(q: int, t: int) -> list[list[list[int]]]:
    """t mutually orthogonal Latin squares of side q, as L_a(x,y) = ax + y
    for the first t non-zero field elements.  Orthogonality is verified."""
    if t < 1:
        raise ParameterDomain(f"t = {t} < 1")
    f = field(q)
    if t > q - 1:
        raise TooManySquares(f"only {q - 1} MOLS of side {q} available, {t} requested")
    squares = [
        [[f.add(f.mul(a, x), y) for y in range(q)] for x in range(q)]
        for a in range(1, t + 1)
    ]
    for i in range(t):
        for j in range(i + 1, t):
            pairs = {
                (squares[i][x][y], squares[j][x][y]) for x in range(q) for y in range(q)
            }
            if len(pairs) != q * q:
                raise TooManySquares(f"squares {i} and {j} not orthogonal")
    return squares


def uniform_gdd(k: int, g: int) -> Gdd:
    """Transversal design TD(k,g): a k-GDD of type g^k.

    Groups are the contiguous ranges ig..ig+g-1.  For k = 3 the cyclic Latin
    square works for every g >= 2; otherwise g must be a prime power field
    order with k <= g+1.
    """
    if k < 3:
        raise ParameterDomain(f"k = {k} < 3")
    if g < 2:
        raise ParameterDomain(f"g = {g} < 2")
    groups = tuple(tuple(range(i * g, (i + 1) * g)) for i in range(k))
    blocks = []
    if k == 3:
        for x in range(g):
            for y in range(g):
                blocks.append(canonical_line([x, g + y, 2 * g + (x + y) % g]))
    else:
        try:
            f = field(g)
        except (NotPrimePower, FieldTooLarge) as exc:
            raise NoConstructionAvailable(f"no TD({k},{g}) recipe here: {exc}")
        if k - 2 > g - 1:
            raise NoConstructionAvailable(f"TD({k},{g}) needs {k - 2} MOLS, only {g - 1} exist")
        for x in range(g):
            for y in range(g):
                block = [x, g + y]
                for a in range(1, k - 1):
                    block.append((a + 1) * g + f.add(f.mul(a, x), y))
                blocks.append(canonical_line(block))
    design = Gdd(k=k, groups=groups, blocks=frozenset(blocks))
    verify_gdd(design)
    return design


def steiner_to_json_dict(s: SteinerSystem) -> dict:
    return {"k": s.k, "w": s.w, "lines": [list(b) for b in sorted(s.blocks)]}


def gdd_to_json_dict(d: Gdd) -> dict:
    return {
        "k": d.k,
        "groups": [list(g) for g in d.groups],
        "lines": [list(b) for b in sorted(d.blocks)],
    }
