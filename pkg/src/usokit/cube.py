"""Cube combinatorics and the direction-word view of unique sink orientations.

Conventions used throughout the package:

* A vertex of the k-cube is an ``int`` in ``range(2 ** k)``.  Coordinate
  ``i`` (1-based) lives at bit ``i - 1``, and text forms spell coordinate 1
  first, so vertex ``0b10`` of the 2-cube prints as ``"01"``.
* ``Orientation.out[v]`` is a k-bit direction word: bit ``i - 1`` is 1
  exactly when the i-edge at ``v`` points into the upper i-facet.  Both
  endpoints of an edge carry the same bit, so the table is redundant and
  the constructor rejects tables whose endpoints disagree.
* An edge is named by its endpoint in the lower i-facet plus ``i``.

A vertex is a sink of a face when no edge of the face leaves it, which is
the single word test ``(out[v] ^ v) & free == 0``: an i-edge leaves ``v``
exactly when its direction bit differs from ``v``'s own i-bit.

The unique sink property is equivalent to the pairwise condition: for any
two distinct vertices some coordinate where they differ carries equal
direction bits at both.  ``is_uso`` implements that test and the literal
scan over all 3^k faces; the two must always agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterator, Mapping, NamedTuple

from .errors import DimensionError, NotAnUsoError

FACE_CHARS = "01*"


# ---------------------------------------------------------------------------
# vertices and edges


def vertex_bits(v: int, k: int) -> str:
    """Text form of a vertex, coordinate 1 first.  Empty for k = 0."""
    return "".join("1" if v >> i & 1 else "0" for i in range(k))


def vertex_from_bits(bits: str) -> int:
    v = 0
    for i, c in enumerate(bits):
        if c == "1":
            v |= 1 << i
        elif c != "0":
            raise ValueError(f"bad vertex character {c!r}")
    return v


def neighbor(v: int, i: int, k: int) -> int:
    """The vertex across the i-edge at v."""
    if not 1 <= i <= k:
        raise DimensionError(f"coordinate {i} out of range 1..{k}")
    if not 0 <= v < 1 << k:
        raise DimensionError(f"vertex {v} out of range for dimension {k}")
    return v ^ (1 << (i - 1))


class Edge(NamedTuple):
    """An i-edge, named by its endpoint in the lower i-facet."""

    vertex: int
    dim: int


def edge_at(v: int, i: int) -> Edge:
    """The i-edge incident to v, in canonical (lower endpoint) form."""
    return Edge(v & ~(1 << (i - 1)), i)


def check_edge(e: Edge, k: int) -> None:
    if not 1 <= e.dim <= k:
        raise DimensionError(f"edge dimension {e.dim} out of range 1..{k}")
    if not 0 <= e.vertex < 1 << k:
        raise DimensionError(f"edge vertex {e.vertex} out of range")
    if e.vertex >> (e.dim - 1) & 1:
        raise DimensionError(
            f"malformed edge: vertex {vertex_bits(e.vertex, k)} not in the "
            f"lower {e.dim}-facet"
        )


def drop_bit(x: int, pos: int) -> int:
    """Remove bit ``pos`` from x, shifting higher bits down."""
    return (x & ((1 << pos) - 1)) | (x >> (pos + 1)) << pos


def insert_bit(x: int, pos: int, bit: int) -> int:
    """Inverse of drop_bit: splice ``bit`` in at position ``pos``."""
    return (x >> pos) << (pos + 1) | bit << pos | (x & ((1 << pos) - 1))


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Face:
    """A face of the k-cube as a pattern over {0, 1, *}, coordinate 1 first."""

    pattern: str

    def __post_init__(self):
        for c in self.pattern:
            if c not in FACE_CHARS:
                raise ValueError(f"bad face character {c!r}")

    @property
    def cube_dim(self) -> int:
        return len(self.pattern)

    @property
    def dim(self) -> int:
        return self.pattern.count("*")

    @property
    def free_mask(self) -> int:
        m = 0
        for i, c in enumerate(self.pattern):
            if c == "*":
                m |= 1 << i
        return m

    @property
    def fixed_values(self) -> int:
        v = 0
        for i, c in enumerate(self.pattern):
            if c == "1":
                v |= 1 << i
        return v

    def free_positions(self) -> list[int]:
        """0-based bit positions of the free coordinates, ascending."""
        return [i for i, c in enumerate(self.pattern) if c == "*"]

    def vertices(self) -> Iterator[int]:
        """Vertices of the face in lexicographic bit-string order."""
        choices = [("0", "1") if c == "*" else (c,) for c in self.pattern]
        for bits in iproduct(*choices):
            yield vertex_from_bits("".join(bits))

    def __contains__(self, v: int) -> bool:
        return v & ~self.free_mask == self.fixed_values

    @classmethod
    def full(cls, k: int) -> "Face":
        return cls("*" * k)


# ---------------------------------------------------------------------------
# orientations


@dataclass(frozen=True)
class Orientation:
    """Direction words for every vertex of the k-cube, edge-consistent."""

    dim: int
    out: tuple[int, ...]

    def __post_init__(self):
        k, out = self.dim, self.out
        n = 1 << k
        if len(out) != n:
            raise ValueError(f"expected {n} direction words, got {len(out)}")
        for v, w in enumerate(out):
            if not 0 <= w < n:
                raise ValueError(f"direction word {w} at vertex {v} out of range")
        for i in range(k):
            ibit = 1 << i
            for v in range(n):
                if not v & ibit and (out[v] ^ out[v | ibit]) & ibit:
                    raise ValueError(
                        f"inconsistent direction of the {i + 1}-edge at "
                        f"{vertex_bits(v, k)}"
                    )

    def direction(self, v: int, i: int) -> int:
        """Direction bit of the i-edge at v (1 points to the upper facet)."""
        if not 1 <= i <= self.dim:
            raise DimensionError(f"coordinate {i} out of range 1..{self.dim}")
        return self.out[v] >> (i - 1) & 1

    def edges(self) -> Iterator[Edge]:
        for i in range(1, self.dim + 1):
            ibit = 1 << (i - 1)
            for v in range(1 << self.dim):
                if not v & ibit:
                    yield Edge(v, i)


def canonical_orientation(k: int) -> Orientation:
    """All edges point down; the unique sink is the all-zero vertex."""
    return Orientation(k, (0,) * (1 << k))


def unique_sink(o: Orientation, f: Face):
    """The sink of face f, or "none" / "multiple".

    Scans the face's vertices in lexicographic bit-string order.
    """
    if f.cube_dim != o.dim:
        raise DimensionError(
            f"face pattern length {f.cube_dim} does not match dimension {o.dim}"
        )
    free = f.free_mask
    found = None
    for v in f.vertices():
        if not (o.out[v] ^ v) & free:
            if found is not None:
                return "multiple"
            found = v
    return "none" if found is None else found


def _pairwise_ok(out, k: int) -> bool:
    """Every pair of vertices differs somewhere with equal direction bits."""
    n = 1 << k
    full = n - 1
    for v in range(n):
        ov = out[v]
        for w in range(v + 1, n):
            if not (v ^ w) & ~(ov ^ out[w]) & full:
                return False
    return True


@lru_cache(maxsize=None)
def _face_masks(k: int) -> tuple[tuple[int, int], ...]:
    """(fixed values, free mask) for all 3^k face patterns."""
    faces = []
    for spec in iproduct((0, 1, 2), repeat=k):
        fixed = free = 0
        for i, c in enumerate(spec):
            if c == 2:
                free |= 1 << i
            elif c == 1:
                fixed |= 1 << i
        faces.append((fixed, free))
    return tuple(faces)


def _face_scan_ok(out, k: int) -> bool:
    for fixed, free in _face_masks(k):
        sinks = 0
        sub = free
        while True:
            v = fixed | sub
            if not (out[v] ^ v) & free:
                sinks += 1
                if sinks > 1:
                    break
            if sub == 0:
                break
            sub = (sub - 1) & free
        if sinks != 1:
            return False
    return True


def is_uso(o: Orientation, method: str = "pairwise") -> bool:
    """Whether every non-empty face has exactly one sink.

    method "pairwise" runs the quadratic vertex-pair test, "face-scan" the
    literal scan over all 3^k faces.  They agree on every orientation.
    """
    if method == "pairwise":
        return _pairwise_ok(o.out, o.dim)
    if method == "face-scan":
        return _face_scan_ok(o.out, o.dim)
    raise ValueError(f"unknown method {method!r}")


def flippable_edges(o: Orientation) -> set[Edge]:
    """Edges whose endpoints have identical direction words."""
    if not _pairwise_ok(o.out, o.dim):
        raise NotAnUsoError("input is not a unique sink orientation")
    found = set()
    for i in range(1, o.dim + 1):
        ibit = 1 << (i - 1)
        for v in range(1 << o.dim):
            if not v & ibit and o.out[v] == o.out[v | ibit]:
                found.add(Edge(v, i))
    return found


def flip_edges(o: Orientation, edges) -> Orientation:
    """Reverse the given edges.  No unique-sink guarantee on the result."""
    out = list(o.out)
    for e in set(edges):
        check_edge(e, o.dim)
        ibit = 1 << (e.dim - 1)
        out[e.vertex] ^= ibit
        out[e.vertex | ibit] ^= ibit
    return Orientation(o.dim, tuple(out))


# ---------------------------------------------------------------------------
# partial orientations


@dataclass(frozen=True, eq=False)
class PartialOrientation:
    """Direction words on a vertex subset.

    Covers exactly the edges with at least one endpoint in the support; a
    cut edge's direction is read off the supported endpoint.  Treat
    instances as immutable.
    """

    dim: int
    support: frozenset[int]
    out: Mapping[int, int]

    def __post_init__(self):
        n = 1 << self.dim
        if set(self.out) != set(self.support):
            raise ValueError("direction words must cover exactly the support")
        for v in self.support:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range")
            if not 0 <= self.out[v] < n:
                raise ValueError(f"direction word at vertex {v} out of range")
        for v in self.support:
            for i in range(self.dim):
                w = v ^ (1 << i)
                if w in self.support and (self.out[v] ^ self.out[w]) >> i & 1:
                    raise ValueError(
                        f"inconsistent direction of the {i + 1}-edge at "
                        f"{vertex_bits(min(v, w), self.dim)}"
                    )

    def __eq__(self, other):
        if not isinstance(other, PartialOrientation):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.support == other.support
            and dict(self.out) == dict(other.out)
        )

    @classmethod
    def restrict(cls, o: Orientation, support) -> "PartialOrientation":
        sup = frozenset(support)
        return cls(o.dim, sup, {v: o.out[v] for v in sup})


def combine(a: PartialOrientation, b: PartialOrientation) -> Orientation:
    """Glue two partial orientations whose supports partition the cube.

    The two sides must agree on the directions of the cut edges.
    """
    if a.dim != b.dim:
        raise DimensionError("dimension mismatch")
    k = a.dim
    if a.support & b.support or len(a.support) + len(b.support) != 1 << k:
        raise ValueError("supports do not partition the vertex set")
    for v in a.support:
        for i in range(k):
            w = v ^ (1 << i)
            if w in b.support and (a.out[v] ^ b.out[w]) >> i & 1:
                raise ValueError(
                    f"cut disagreement on the {i + 1}-edge at "
                    f"{vertex_bits(min(v, w), k)}"
                )
    out = [0] * (1 << k)
    for v in a.support:
        out[v] = a.out[v]
    for v in b.support:
        out[v] = b.out[v]
    return Orientation(k, tuple(out))
