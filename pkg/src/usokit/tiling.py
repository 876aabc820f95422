"""Tile strings over {0,1,2,3} and their bijection with orientations.

A k-dimensional tile is a word of k digits; digit i describes coordinate i
of one cube of a 4-periodic tiling.  Two tiles can sit next to each other
without overlap exactly when some coordinate differs by exactly 2, and a
set of 2^k pairwise compatible tiles covers space.  Under the digit maps

    vertex bit  = 1 iff digit in {2, 3}
    direction   = 1 iff digit in {1, 3}

such a set is the same thing as a unique sink orientation: the vertex map
is a bijection and the pairwise compatibility test becomes the pairwise
sink condition.  Twin tiles (differing in a single coordinate) correspond
to flippable edges.

Tiles are stored packed, 2 bits per coordinate with coordinate 1 in the
lowest slot, so the compatibility test is a couple of word operations.
Digit strings (coordinate 1 first) appear at every API boundary; the
0-dimensional empty tile packs to 0 and prints as "" here, "-" in files.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cube import Orientation, _pairwise_ok
from .errors import NotAnUsoError, NotATilingError

DIGITS = "0123"


# ---------------------------------------------------------------------------
# packed tiles


def tile_pack(s: str) -> int:
    """Pack a digit string, coordinate 1 into the lowest 2-bit slot."""
    t = 0
    for i, c in enumerate(s):
        d = DIGITS.find(c)
        if d < 0:
            raise ValueError(f"bad tile character {c!r}")
        t |= d << (2 * i)
    return t


def tile_unpack(t: int, k: int) -> str:
    return "".join(DIGITS[t >> (2 * i) & 3] for i in range(k))


def tile_digit(t: int, i: int) -> int:
    """Digit of packed tile t at coordinate i (1-based)."""
    return t >> (2 * (i - 1)) & 3


def tile_vertex(t: int, k: int) -> int:
    """Cube vertex of a tile: bit i is the high bit of digit i."""
    v = 0
    for i in range(k):
        v |= (t >> (2 * i + 1) & 1) << i
    return v


def tile_out(t: int, k: int) -> int:
    """Direction word of a tile: bit i is the low bit of digit i."""
    w = 0
    for i in range(k):
        w |= (t >> (2 * i) & 1) << i
    return w


def tile_of(v: int, out_word: int, k: int) -> int:
    """Packed tile of a vertex and its direction word (digit = 2v_i + o_i)."""
    t = 0
    for i in range(k):
        t |= ((v >> i & 1) << 1 | (out_word >> i & 1)) << (2 * i)
    return t


@lru_cache(maxsize=None)
def low_bits_mask(k: int) -> int:
    """Mask with the low bit of each of k slots set (0b...0101)."""
    return ((1 << (2 * k)) - 1) // 3


def packed_gk_adjacent(u: int, v: int, lo: int) -> bool:
    """Compatibility test on packed tiles; lo is low_bits_mask(k).

    Some coordinate differs by exactly 2 iff the XOR has a slot equal to
    binary 10, i.e. high bit set and low bit clear.
    """
    w = u ^ v
    return bool(w >> 1 & ~w & lo)


def gk_adjacent(u: str, v: str) -> bool:
    """Whether two equal-length tiles differ by exactly 2 in some coordinate."""
    if len(u) != len(v):
        raise ValueError("tiles of different lengths")
    k = len(u)
    return packed_gk_adjacent(tile_pack(u), tile_pack(v), low_bits_mask(k))


# ---------------------------------------------------------------------------
# tile sets


def _freeze_tiles(tiles, dim: int) -> frozenset:
    packed = frozenset(tiles)
    limit = 1 << (2 * dim)
    for t in packed:
        if not 0 <= t < limit:
            raise ValueError(f"packed tile {t} out of range for dimension {dim}")
    return packed


def _pack_strings(strings, dim: int | None):
    strings = list(strings)
    if dim is None:
        if not strings:
            raise ValueError("cannot infer dimension from an empty set")
        dim = len(strings[0])
    for s in strings:
        if len(s) != dim:
            raise ValueError(f"tile {s!r} does not have length {dim}")
    packed = frozenset(tile_pack(s) for s in strings)
    if len(packed) != len(strings):
        raise ValueError("duplicate tiles")
    return dim, packed


@dataclass(frozen=True)
class TileSet:
    """A duplicate-free set of k-dimensional tiles (packed ints)."""

    dim: int
    tiles: frozenset

    def __post_init__(self):
        object.__setattr__(self, "tiles", _freeze_tiles(self.tiles, self.dim))

    @classmethod
    def from_strings(cls, strings, dim: int | None = None) -> "TileSet":
        return cls(*_pack_strings(strings, dim))

    def strings(self) -> list[str]:
        return sorted(tile_unpack(t, self.dim) for t in self.tiles)

    def __len__(self) -> int:
        return len(self.tiles)


@dataclass(frozen=True)
class PartialTileSet:
    """A fragment of a tiling, e.g. one replacement set of a rewriting rule."""

    dim: int
    tiles: frozenset

    def __post_init__(self):
        object.__setattr__(self, "tiles", _freeze_tiles(self.tiles, self.dim))

    @classmethod
    def from_strings(cls, strings, dim: int | None = None) -> "PartialTileSet":
        return cls(*_pack_strings(strings, dim))

    def strings(self) -> list[str]:
        return sorted(tile_unpack(t, self.dim) for t in self.tiles)

    def is_pairwise_adjacent(self) -> bool:
        lo = low_bits_mask(self.dim)
        tiles = sorted(self.tiles)
        for a in range(len(tiles)):
            for b in range(a + 1, len(tiles)):
                if not packed_gk_adjacent(tiles[a], tiles[b], lo):
                    return False
        return True

    def __len__(self) -> int:
        return len(self.tiles)


def is_tiling(ts: TileSet) -> bool:
    """Whether the set is complete: 2^k tiles, pairwise compatible."""
    if len(ts.tiles) != 1 << ts.dim:
        return False
    lo = low_bits_mask(ts.dim)
    tiles = sorted(ts.tiles)
    for a in range(len(tiles)):
        ta = tiles[a]
        for b in range(a + 1, len(tiles)):
            if not packed_gk_adjacent(ta, tiles[b], lo):
                return False
    return True


def vertex_outmaps(ts: TileSet) -> list[int] | None:
    """Direction words per vertex, or None if the vertex map is not onto.

    Skips the completeness precondition of uso_from_tiles; used to state
    the equivalence between the tiling test and the sink test.
    """
    k = ts.dim
    out = [None] * (1 << k)
    for t in ts.tiles:
        v = tile_vertex(t, k)
        w = tile_out(t, k)
        if out[v] is not None:
            return None
        out[v] = w
    if any(w is None for w in out):
        return None
    return out


def uso_from_tiles(ts: TileSet) -> Orientation:
    """The orientation of a complete tiling (raises if incomplete)."""
    if not is_tiling(ts):
        raise NotATilingError(
            f"{len(ts.tiles)} tiles, dimension {ts.dim}: not a complete tiling"
        )
    out = vertex_outmaps(ts)
    return Orientation(ts.dim, tuple(out))


def tiles_from_uso(o: Orientation) -> TileSet:
    """The tiling of a unique sink orientation (raises otherwise)."""
    if not _pairwise_ok(o.out, o.dim):
        raise NotAnUsoError("input is not a unique sink orientation")
    k = o.dim
    return TileSet(k, frozenset(tile_of(v, o.out[v], k) for v in range(1 << k)))


def twins(ts: TileSet) -> set[tuple[str, str]]:
    """Tile pairs differing in exactly one coordinate, as sorted string pairs."""
    if not is_tiling(ts):
        raise NotATilingError("twins are defined on complete tilings")
    k = ts.dim
    tiles = sorted(ts.tiles)
    pairs = set()
    for a in range(len(tiles)):
        for b in range(a + 1, len(tiles)):
            w = tiles[a] ^ tiles[b]
            low = w & -w
            slot = 3 << (low.bit_length() - 1 >> 1 << 1)
            if not w & ~slot:
                su, sv = tile_unpack(tiles[a], k), tile_unpack(tiles[b], k)
                pairs.add((min(su, sv), max(su, sv)))
    return pairs


def canonical_tiles(k: int) -> TileSet:
    """The tiling of the canonical orientation: all digits even."""
    return TileSet(k, frozenset(tile_of(v, 0, k) for v in range(1 << k)))


def bow() -> TileSet:
    """The 2-dimensional tiling whose two flippable edges share no vertex."""
    return TileSet.from_strings(["01", "20", "03", "22"])
