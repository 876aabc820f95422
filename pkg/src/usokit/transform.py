"""Orientation transformations: products, collapses, facets, swaps, phases.

Everything here consumes and produces whole orientations.  Each operation
also exists as a rewriting rule (width 0 or 1, or a generalized rule for
the product); the orientation-level versions are direct and fast, and the
test suite holds the two routes equal.

Phases of a dimension i are the finest partition of the i-edges such that
reversing any union of parts keeps the unique sink property.  The pairwise
sink condition splits per vertex pair, and for a pair straddling dimension
i with no witness elsewhere it forces the two i-edges to flip together (an
equality, never an inequality, because the unflipped input already
satisfies the pair).  Valid flip sets are therefore exactly the unions of
connected components of that constraint graph, which is what the default
method computes.  method="brute" instead tries all 2^(2^(k-1)) subsets
against the sink test, literally; both are capped at k <= 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cube import (
    Edge,
    Face,
    Orientation,
    _pairwise_ok,
    drop_bit,
    insert_bit,
    vertex_bits,
)
from .errors import (
    DimensionError,
    EnumerationLimitError,
    HypervertexError,
    NotAnUsoError,
    PhaseSelectionError,
)
from .tiling import TileSet, tiles_from_uso, uso_from_tiles

PHASE_DIM_CAP = 5


def _require_uso(o: Orientation) -> None:
    if not _pairwise_ok(o.out, o.dim):
        raise NotAnUsoError("input is not a unique sink orientation")


def _require_coordinate(i: int, k: int) -> None:
    if not 1 <= i <= k:
        raise DimensionError(f"coordinate {i} out of range 1..{k}")


# ---------------------------------------------------------------------------
# frame products and collapses


def product(frame: Orientation, parts) -> Orientation:
    """One part orientation glued onto every frame vertex.

    parts maps each frame vertex to an equal-dimension orientation; the
    result has the frame in coordinates 1..k and the chosen part in the
    remaining d.  Every fiber over a frame vertex orders like its part,
    every cross edge like the frame.
    """
    _require_uso(frame)
    k = frame.dim
    missing = [v for v in range(1 << k) if v not in parts]
    if missing:
        raise ValueError(f"parts mapping is missing vertex {missing[0]}")
    dims = {parts[v].dim for v in range(1 << k)}
    if len(dims) != 1:
        raise DimensionError("parts of unequal dimensions")
    d = dims.pop()
    for v in range(1 << k):
        _require_uso(parts[v])
    out = []
    for x in range(1 << (k + d)):
        xf = x & (1 << k) - 1
        xp = x >> k
        out.append(frame.out[xf] | parts[xf].out[xp] << k)
    result = Orientation(k + d, tuple(out))
    assert _pairwise_ok(result.out, result.dim)
    return result


def inherited(o: Orientation, k_prime: int) -> Orientation:
    """Collapse the top dimensions down to k_prime, one at a time.

    Each step keeps, for every vertex of the smaller cube, the direction
    word of the sink of its top-coordinate edge.  The collapse order does
    not matter; tests pin that down.
    """
    _require_uso(o)
    if not 0 <= k_prime < o.dim:
        raise DimensionError(f"target dimension {k_prime} out of range 0..{o.dim - 1}")
    out = list(o.out)
    k = o.dim
    while k > k_prime:
        top = 1 << (k - 1)
        out = [
            out[v | top] & top - 1 if out[v] >> (k - 1) & 1 else out[v] & top - 1
            for v in range(top)
        ]
        k -= 1
    result = Orientation(k_prime, tuple(out))
    assert _pairwise_ok(result.out, result.dim)
    return result


def facet(o: Orientation, h: int, side: str = "lower") -> Orientation:
    """Restrict to one h-facet, deleting coordinate h."""
    _require_uso(o)
    _require_coordinate(h, o.dim)
    if side not in ("lower", "upper"):
        raise ValueError(f"side must be lower or upper, not {side!r}")
    pos = h - 1
    bit = 1 if side == "upper" else 0
    out = []
    for p in range(1 << (o.dim - 1)):
        out.append(drop_bit(o.out[insert_bit(p, pos, bit)], pos))
    result = Orientation(o.dim - 1, tuple(out))
    assert _pairwise_ok(result.out, result.dim)
    return result


def flip_dimension(o: Orientation, i: int) -> Orientation:
    """Reverse every i-edge."""
    _require_uso(o)
    _require_coordinate(i, o.dim)
    ibit = 1 << (i - 1)
    result = Orientation(o.dim, tuple(w ^ ibit for w in o.out))
    assert _pairwise_ok(result.out, result.dim)
    return result


def mirror(o: Orientation, h: int) -> Orientation:
    """Swap the two h-facets, keeping each h-edge's direction."""
    _require_uso(o)
    _require_coordinate(h, o.dim)
    hbit = 1 << (h - 1)
    result = Orientation(o.dim, tuple(o.out[v ^ hbit] for v in range(1 << o.dim)))
    assert _pairwise_ok(result.out, result.dim)
    return result


def partial_swap(o: Orientation, h: int) -> Orientation:
    """Exchange, across coordinate h, the endpoints of every upward h-edge.

    Tile form: toggle digit 1 <-> 3 at coordinate h, digits 0 and 2 stay.
    """
    _require_uso(o)
    _require_coordinate(h, o.dim)
    shift = 2 * (h - 1)
    ts = tiles_from_uso(o)
    swapped = frozenset(t ^ (t >> shift & 1) << (shift + 1) for t in ts.tiles)
    return uso_from_tiles(TileSet(o.dim, swapped))


# ---------------------------------------------------------------------------
# phases


@dataclass(frozen=True)
class PhasePartition:
    """The i-edge classes whose unions are exactly the sound flip sets."""

    dim_index: int
    classes: tuple[frozenset, ...]


def _expand(p: int, i: int) -> int:
    """Lower endpoint of the i-edge with projection index p."""
    return insert_bit(p, i - 1, 0)


@lru_cache(maxsize=1 << 16)
def _phase_projections(out: tuple, k: int, i: int) -> tuple[tuple[int, ...], ...]:
    """Phase classes as sorted tuples of i-edge projection indices.

    Joins the edges of any vertex pair that differs at i and agrees on no
    other differing coordinate; the input must satisfy the pairwise sink
    condition.
    """
    ibit = 1 << (i - 1)
    rest = (1 << k) - 1 & ~ibit
    m = 1 << (k - 1)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    lowers = [v for v in range(1 << k) if not v & ibit]
    for v in lowers:
        pv = drop_bit(v, i - 1)
        ov = out[v]
        for w_low in lowers:
            w = w_low | ibit
            if (v ^ w) & ~(ov ^ out[w]) & rest:
                continue
            a, b = find(pv), find(drop_bit(w_low, i - 1))
            if a != b:
                parent[a] = b
    groups = {}
    for p in range(m):
        groups.setdefault(find(p), []).append(p)
    return tuple(sorted(tuple(g) for g in groups.values()))


def _brute_phase_projections(out: tuple, k: int, i: int):
    """Literal subset sweep: try every i-edge flip set against the sink test.

    The class of an edge is the intersection of the sound sets containing
    it; the sweep also re-checks that sound sets are exactly the unions of
    classes, which must hold.
    """
    ibit = 1 << (i - 1)
    m = 1 << (k - 1)
    lower = [_expand(p, i) for p in range(m)]
    current = list(out)
    valid = []
    gray = 0
    for code in range(1 << m):
        if code:
            p = (code ^ code >> 1 ^ gray).bit_length() - 1
            gray ^= 1 << p
            current[lower[p]] ^= ibit
            current[lower[p] | ibit] ^= ibit
        if _pairwise_ok(current, k):
            valid.append(gray)
    member = [(1 << m) - 1] * m
    for s in valid:
        for p in range(m):
            if s >> p & 1:
                member[p] &= s
    by_mask = {}
    for p in range(m):
        by_mask.setdefault(member[p], []).append(p)
    assert len(valid) == 1 << len(by_mask)
    for s in valid:
        union = 0
        for p in range(m):
            if s >> p & 1:
                union |= member[p]
        assert union == s
    return tuple(sorted(tuple(g) for g in by_mask.values()))


def phases(o: Orientation, i: int, method: str = "pairs") -> PhasePartition:
    """Partition the i-edges into their flip classes."""
    _require_uso(o)
    _require_coordinate(i, o.dim)
    if o.dim > PHASE_DIM_CAP:
        raise EnumerationLimitError(
            f"phase computation is capped at dimension {PHASE_DIM_CAP}"
        )
    if method == "pairs":
        projections = _phase_projections(o.out, o.dim, i)
    elif method == "brute":
        projections = _brute_phase_projections(o.out, o.dim, i)
    else:
        raise ValueError(f"unknown method {method!r}")
    classes = tuple(
        frozenset(Edge(_expand(p, i), i) for p in cls) for cls in projections
    )
    return PhasePartition(i, classes)


def phase_flip(o: Orientation, i: int, classes) -> Orientation:
    """Reverse the union of whole phase classes; always an USO again."""
    part = phases(o, i)
    chosen = list(classes)
    pool = set(part.classes)
    for cls in chosen:
        if frozenset(cls) not in pool:
            raise PhaseSelectionError(
                f"not a phase class of dimension {i}: {sorted(cls)}"
            )
    out = list(o.out)
    ibit = 1 << (i - 1)
    for cls in chosen:
        for e in cls:
            out[e.vertex] ^= ibit
            out[e.vertex | ibit] ^= ibit
    result = Orientation(o.dim, tuple(out))
    assert _pairwise_ok(result.out, result.dim)
    return result


def phase_swap(o: Orientation, h: int, edges) -> Orientation:
    """Exchange, across coordinate h, the endpoints of the given h-edges.

    The edge set must be a union of h-phases.  Tile form: toggle the high
    bit of digit h on every tile whose vertex touches a chosen edge.
    """
    wanted = set(edges)
    part = phases(o, h)
    covered = set()
    for cls in part.classes:
        inter = cls & wanted
        if inter and inter != cls:
            raise PhaseSelectionError(
                f"edge set splits a phase class of dimension {h}"
            )
        covered |= inter
    if covered != wanted:
        stray = sorted(wanted - covered)
        raise PhaseSelectionError(f"not h-edges of this cube: {stray}")
    hbit = 1 << (h - 1)
    endpoints = set()
    for e in wanted:
        endpoints.add(e.vertex)
        endpoints.add(e.vertex | hbit)
    shift = 2 * (h - 1)
    ts = tiles_from_uso(o)
    moved = []
    for t in ts.tiles:
        v = 0
        for b in range(o.dim):
            v |= (t >> (2 * b + 1) & 1) << b
        moved.append(t ^ 2 << shift if v in endpoints else t)
    result = uso_from_tiles(TileSet(o.dim, frozenset(moved)))
    assert _pairwise_ok(result.out, result.dim)
    return result


# ---------------------------------------------------------------------------
# hypervertices


@dataclass(frozen=True)
class HypervertexWitness:
    """A face all of whose crossing edges are combed, per fixed coordinate."""

    face: Face
    directions: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.directions)


def hypervertex_check(o: Orientation, f: Face):
    """Witness that f behaves like a single vertex, or the violations.

    For every fixed coordinate of f, all edges leaving the face in that
    coordinate must share one direction.  Returns a HypervertexWitness on
    success and a list of violation strings otherwise.
    """
    if f.cube_dim != o.dim:
        raise DimensionError(
            f"face pattern length {f.cube_dim} does not match dimension {o.dim}"
        )
    violations = []
    directions = []
    for i in range(1, o.dim + 1):
        if f.pattern[i - 1] == "*":
            continue
        seen = {o.out[v] >> (i - 1) & 1 for v in f.vertices()}
        if len(seen) == 2:
            violations.append(f"mixed directions across coordinate {i}")
        else:
            directions.append((i, seen.pop()))
    if violations:
        return violations
    return HypervertexWitness(f, tuple(directions))


def hypervertex_replace(o: Orientation, f: Face, sub: Orientation) -> Orientation:
    """Reorient the inside of a hypervertex face by sub, keeping the rest."""
    witness = hypervertex_check(o, f)
    if not isinstance(witness, HypervertexWitness):
        raise HypervertexError("; ".join(witness))
    if sub.dim != f.dim:
        raise DimensionError(
            f"replacement of dimension {sub.dim} for a face of dimension {f.dim}"
        )
    _require_uso(o)
    _require_uso(sub)
    free = f.free_positions()
    out = list(o.out)
    for v in f.vertices():
        word = out[v]
        p = 0
        for a, pos in enumerate(free):
            p |= (v >> pos & 1) << a
        for a, pos in enumerate(free):
            bit = sub.out[p] >> a & 1
            word = word & ~(1 << pos) | bit << pos
        out[v] = word
    result = Orientation(o.dim, tuple(out))
    assert _pairwise_ok(result.out, result.dim)
    return result
