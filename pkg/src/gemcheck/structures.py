"""Finite interpretations of the two mereological signatures.

Two kinds of structure are supported:

* ``PartStructure`` -- a finite domain {0..n-1} with a binary parthood
  relation P.  P is primitive; no order properties are assumed (the
  axioms are *checked*, never baked in).
* ``FusionStructure`` -- a finite domain with a relation F between
  pluralities (subsets of the domain) and individuals.

Pluralities are plain ``frozenset``s of domain indices; the empty
plurality is a legal value.  Internally most code works with bitmask
encodings of pluralities (bit i set iff i is a member), converted at the
public boundary by :func:`mask_of` / :func:`members_of`.

The module also provides the canonical models (powerset lattices minus
the empty set), the definitional translations between the two signatures,
and the structure literal file format used by the CLI and golden tests.

All structures are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

Plurality = frozenset  # frozenset[int]; the denotation of a second-sort term

#: largest domain size for which we ever materialize all 2^n pluralities
MAX_PLURAL_DOMAIN = 20

#: largest 2^k - 1 domain canonical_gem will build
DEFAULT_DOMAIN_LIMIT = 1023


class CapacityError(Exception):
    """A requested computation exceeds the configured finite bounds."""


class StructureFormatError(ValueError):
    """A structure literal file does not parse."""


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def members_of(mask: int) -> Plurality:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class PartStructure:
    """Domain {0..n-1} with a primitive parthood relation."""

    n: int
    part: frozenset  # frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("domain size must be >= 0")
        for (x, y) in self.part:
            if not (0 <= x < self.n and 0 <= y < self.n):
                raise ValueError(f"pair ({x},{y}) out of domain 0..{self.n - 1}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple]) -> "PartStructure":
        return cls(n, frozenset((int(x), int(y)) for x, y in pairs))

    def down_masks(self) -> list:
        """down[y] = bitmask of {x : P(x, y)}."""
        down = [0] * self.n
        for (x, y) in self.part:
            down[y] |= 1 << x
        return down

    def holds(self, x: int, y: int) -> bool:
        return (x, y) in self.part


@dataclass(frozen=True)
class FusionStructure:
    """Domain {0..n-1} with a primitive fusion relation on pluralities."""

    n: int
    fusion: frozenset  # frozenset[tuple[Plurality, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("domain size must be >= 0")
        for (zz, x) in self.fusion:
            if not isinstance(zz, frozenset):
                raise ValueError("pluralities must be frozensets")
            if not (0 <= x < self.n) or any(not (0 <= i < self.n) for i in zz):
                raise ValueError(f"fusion pair ({set(zz)},{x}) out of domain")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple]) -> "FusionStructure":
        return cls(n, frozenset((frozenset(zz), int(x)) for zz, x in pairs))

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[int]) -> "FusionStructure":
        """rows[p] = bitmask of individuals fused by the plurality with mask p."""
        pairs = []
        for p, row in enumerate(rows):
            members = members_of(p)
            for x in iter_bits(row):
                pairs.append((members, x))
        return cls(n, frozenset(pairs))

    def rows(self) -> list:
        """rows[p] = bitmask of {x : F(p, x)}, indexed by plurality mask."""
        if self.n > MAX_PLURAL_DOMAIN:
            raise CapacityError(f"cannot tabulate 2^{self.n} pluralities")
        rows = [0] * (1 << self.n)
        for (zz, x) in self.fusion:
            rows[mask_of(zz)] |= 1 << x
        return rows

    def holds(self, zz: Iterable[int], x: int) -> bool:
        return (frozenset(zz), x) in self.fusion


Structure = Union[PartStructure, FusionStructure]


def kind_of(s: Structure) -> str:
    return "part" if isinstance(s, PartStructure) else "fusion"


# ---------------------------------------------------------------------------
# canonical models


def canonical_gem(k: int, limit: int = DEFAULT_DOMAIN_LIMIT) -> PartStructure:
    """The nonempty subsets of {1..k} ordered by inclusion.

    Domain indices follow a fixed deterministic order: subsets sorted by
    (cardinality, characteristic value).  ``canonical_gem(0)`` is the
    empty structure.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = (1 << k) - 1
    if n > limit:
        raise CapacityError(f"canonical model on 2^{k}-1 = {n} elements exceeds limit {limit}")
    subsets = sorted(range(1, 1 << k), key=lambda m: (bin(m).count("1"), m))
    pairs = []
    for i, a in enumerate(subsets):
        for j, b in enumerate(subsets):
            if a & ~b == 0:
                pairs.append((i, j))
    return PartStructure(n, frozenset(pairs))


# ---------------------------------------------------------------------------
# derived predicates on part structures


def overlap(ps: PartStructure, x: int, y: int) -> bool:
    """Common-part overlap: some z is part of both x and y."""
    return any((z, x) in ps.part and (z, y) in ps.part for z in range(ps.n))


def proper_part(ps: PartStructure, x: int, y: int) -> bool:
    return x != y and (x, y) in ps.part


def mub(ps: PartStructure, zz: Iterable[int]) -> frozenset:
    """Minimal upper bounds of a plurality.

    x qualifies iff zz is nonempty, every member of zz is part of x, and
    x is part of every upper bound of zz.  On pathological relations the
    result may be empty or contain several elements.
    """
    zz = frozenset(zz)
    if not zz:
        return frozenset()
    uppers = [x for x in range(ps.n) if all((y, x) in ps.part for y in zz)]
    return frozenset(x for x in uppers if all((x, y) in ps.part for y in uppers))


def components(s: Structure, zz: Iterable[int]) -> Plurality:
    """The term former U: all individuals contributing to the members of zz.

    On a part structure, x is in U(zz) iff x is part of some member of
    zz.  On a fusion structure, x is in U(zz) iff x is a member of some
    plurality fusing to a member of zz.
    """
    zz = frozenset(zz)
    if isinstance(s, PartStructure):
        return frozenset(x for x in range(s.n)
                         if any((x, y) in s.part for y in zz))
    out = set()
    for (yy, z) in s.fusion:
        if z in zz:
            out |= yy
    return frozenset(out)


# ---------------------------------------------------------------------------
# definitional translations between the signatures


def induced_part(fs: FusionStructure) -> PartStructure:
    """Parthood defined from fusion: x P y iff x belongs to some plurality fusing to y."""
    pairs = set()
    for (zz, y) in fs.fusion:
        for x in zz:
            pairs.add((x, y))
    return PartStructure(fs.n, frozenset(pairs))


def _fuses(down: list, ov: list, zmask: int, x: int) -> bool:
    # zmask fuses to x iff every member is part of x and every part of x
    # overlaps some member of zmask
    if zmask & ~down[x]:
        return False
    rest = down[x]
    while rest:
        low = rest & -rest
        y = low.bit_length() - 1
        if not (zmask & ov[y]):
            return False
        rest ^= low
    return True


def induced_fusion(ps: PartStructure) -> FusionStructure:
    """Fusion defined from parthood (the classical closure conditions).

    (zz, x) is included iff every member of zz is part of x and every
    part of x overlaps some member of zz.  The empty plurality therefore
    fuses to x only when x has no parts at all, which cannot happen on a
    reflexive relation.
    """
    if ps.n > MAX_PLURAL_DOMAIN:
        raise CapacityError(f"cannot enumerate 2^{ps.n} pluralities")
    down = ps.down_masks()
    ov = [0] * ps.n
    for y in range(ps.n):
        m = 0
        for v in range(ps.n):
            if down[v] & down[y]:
                m |= 1 << v
        ov[y] = m
    pairs = []
    for p in range(1 << ps.n):
        members = members_of(p)
        for x in range(ps.n):
            if _fuses(down, ov, p, x):
                pairs.append((members, x))
    return FusionStructure(ps.n, frozenset(pairs))


# ---------------------------------------------------------------------------
# structure literal files
#
#   n=<int>
#   part: (x,y) (x,y) ...          or          fusion: ({a,b},x) ({},x) ...

_PART_PAIR = re.compile(r"\((\d+),(\d+)\)$")
_FUSION_PAIR = re.compile(r"\(\{([\d,]*)\},(\d+)\)$")


def dump_structure(s: Structure) -> str:
    lines = [f"n={s.n}"]
    if isinstance(s, PartStructure):
        body = " ".join(f"({x},{y})" for (x, y) in sorted(s.part))
        lines.append(f"part: {body}".rstrip())
    else:
        pairs = sorted(((mask_of(zz), x) for (zz, x) in s.fusion))
        toks = []
        for (p, x) in pairs:
            inner = ",".join(str(i) for i in sorted(members_of(p)))
            toks.append(f"({{{inner}}},{x})")
        lines.append(("fusion: " + " ".join(toks)).rstrip())
    return "\n".join(lines) + "\n"


def summarize(s: Structure) -> str:
    """One-line rendering in the literal format."""
    return dump_structure(s).strip().replace("\n", " ")


def load_structure(text: str) -> Structure:
    toks = text.split()
    if not toks or not toks[0].startswith("n="):
        raise StructureFormatError("expected header n=<int>")
    try:
        n = int(toks[0][2:])
    except ValueError:
        raise StructureFormatError(f"bad domain size {toks[0][2:]!r}") from None
    if len(toks) < 2 or toks[1] not in ("part:", "fusion:"):
        raise StructureFormatError("expected 'part:' or 'fusion:' after header")
    body = toks[2:]
    try:
        if toks[1] == "part:":
            pairs = []
            for t in body:
                m = _PART_PAIR.match(t)
                if not m:
                    raise StructureFormatError(f"bad part pair {t!r}")
                pairs.append((int(m.group(1)), int(m.group(2))))
            return PartStructure.from_pairs(n, pairs)
        pairs = []
        for t in body:
            m = _FUSION_PAIR.match(t)
            if not m:
                raise StructureFormatError(f"bad fusion pair {t!r}")
            inner = m.group(1)
            members = [int(u) for u in inner.split(",")] if inner else []
            pairs.append((frozenset(members), int(m.group(2))))
        return FusionStructure.from_pairs(n, pairs)
    except ValueError as e:
        raise StructureFormatError(str(e)) from None
