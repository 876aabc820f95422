"""String rewriting rules on tilings.

A rule of width d replaces the digit at one chosen coordinate h of every
tile with each member of a replacement set chosen by that digit, turning a
k-dimensional tiling into a (k + d - 1)-dimensional one.  A simple rule
carries four replacement sets S0..S3, one per digit value; a generalized
rule carries i columns of four sets and a labelling picks the column per
input tile.

Validity conditions (checked by the validators, assumed by the appliers):
the even-digit sets of any two columns must be disjoint and unite to a
complete d-dimensional tiling, and likewise the odd-digit sets.  Replacing
a digit that records a facet (high bit) and an edge direction (low bit)
with a whole tiling fragment keeps every cross pair compatible, which is
why sound rules map tilings to tilings in any dimension.

Width 0 rules delete the coordinate; their replacement sets live over the
single empty tile.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionError, InvalidRuleError, LabellingError, NotATilingError
from .tiling import (
    PartialTileSet,
    TileSet,
    canonical_tiles,
    is_tiling,
    low_bits_mask,
    packed_gk_adjacent,
    tile_pack,
    tile_unpack,
    tile_vertex,
)

NAMED_RULE_KINDS = (
    "identity",
    "comb",
    "flip",
    "copy-upper",
    "copy-lower",
    "mirror",
    "partial-swap",
    "take-upper-facet",
    "take-lower-facet",
    "inherit",
)

# digit lists per kind: (d, S0, S1, S2, S3)
_NAMED = {
    "identity": (1, ["0"], ["1"], ["2"], ["3"]),
    "comb": (1, ["0"], ["0"], ["2"], ["2"]),
    "flip": (1, ["1"], ["0"], ["3"], ["2"]),
    "copy-upper": (1, [], [], ["0", "2"], ["1", "3"]),
    "copy-lower": (1, ["0", "2"], ["1", "3"], [], []),
    "mirror": (1, ["2"], ["3"], ["0"], ["1"]),
    "partial-swap": (1, ["0"], ["3"], ["2"], ["1"]),
    "take-upper-facet": (0, [], [], [""], [""]),
    "take-lower-facet": (0, [""], [""], [], []),
    "inherit": (0, [""], [], [], [""]),
}


@dataclass(frozen=True)
class SimpleRule:
    """Replacement sets S0..S3 of equal width d, applied by digit value."""

    d: int
    s0: PartialTileSet
    s1: PartialTileSet
    s2: PartialTileSet
    s3: PartialTileSet

    def __post_init__(self):
        for s in (self.s0, self.s1, self.s2, self.s3):
            if s.dim != self.d:
                raise DimensionError(
                    f"replacement set of width {s.dim} in a rule of width {self.d}"
                )

    def sets(self) -> tuple[PartialTileSet, ...]:
        return (self.s0, self.s1, self.s2, self.s3)


@dataclass(frozen=True)
class GeneralizedRule:
    """i labelled columns of replacement sets; columns[m][j - 1] is S m, j."""

    d: int
    i: int
    columns: tuple[tuple[PartialTileSet, ...], ...]

    def __post_init__(self):
        if self.i < 1:
            raise DimensionError("a rule needs at least one column")
        if len(self.columns) != 4:
            raise ValueError("expected four rows of replacement sets")
        for row in self.columns:
            if len(row) != self.i:
                raise ValueError(f"expected {self.i} columns per row")
            for s in row:
                if s.dim != self.d:
                    raise DimensionError(
                        f"replacement set of width {s.dim} in a rule of width "
                        f"{self.d}"
                    )

    def set_for(self, m: int, j: int) -> PartialTileSet:
        return self.columns[m][j - 1]


def as_generalized(rule: SimpleRule) -> GeneralizedRule:
    """Embed a simple rule as a single-column generalized rule."""
    return GeneralizedRule(rule.d, 1, tuple((s,) for s in rule.sets()))


def named_rule(kind: str) -> SimpleRule:
    """One of the built-in width 0 and width 1 rules, by name."""
    try:
        d, s0, s1, s2, s3 = _NAMED[kind]
    except KeyError:
        raise InvalidRuleError(f"unknown rule kind {kind!r}") from None
    return SimpleRule(
        d,
        PartialTileSet.from_strings(s0, d),
        PartialTileSet.from_strings(s1, d),
        PartialTileSet.from_strings(s2, d),
        PartialTileSet.from_strings(s3, d),
    )


# ---------------------------------------------------------------------------
# validation


def _union_violations(name_a, a: PartialTileSet, name_b, b: PartialTileSet):
    """Check that two replacement sets unite to a complete tiling, disjointly."""
    d = a.dim
    out = []
    common = a.tiles & b.tiles
    if common:
        shown = ", ".join(sorted(tile_unpack(t, d) for t in common)) or "-"
        out.append(f"{name_a} and {name_b} share tiles: {shown}")
    union = sorted(a.tiles | b.tiles)
    if len(a.tiles) + len(b.tiles) != 1 << d:
        out.append(
            f"{name_a} + {name_b} has {len(a.tiles) + len(b.tiles)} tiles, "
            f"needs {1 << d}"
        )
    lo = low_bits_mask(d)
    for x in range(len(union)):
        for y in range(x + 1, len(union)):
            if not packed_gk_adjacent(union[x], union[y], lo):
                out.append(
                    f"{name_a} + {name_b} contains the incompatible pair "
                    f"{tile_unpack(union[x], d)}, {tile_unpack(union[y], d)}"
                )
    return out


def validate_simple(rule: SimpleRule) -> list[str]:
    """Violations of the rule conditions; empty means valid."""
    out = _union_violations("S0", rule.s0, "S2", rule.s2)
    out += _union_violations("S1", rule.s1, "S3", rule.s3)
    return out


def validate_generalized(rule: GeneralizedRule) -> list[str]:
    """Violations over every column pairing; empty means valid.

    On a clean rule the even-digit (and odd-digit) replacement sets of all
    columns must project to the same vertex sets; that is implied by the
    pair conditions, so it is asserted rather than reported.
    """
    out = []
    for j in range(1, rule.i + 1):
        for jp in range(1, rule.i + 1):
            out += _union_violations(
                f"S0.{j}", rule.set_for(0, j), f"S2.{jp}", rule.set_for(2, jp)
            )
            out += _union_violations(
                f"S1.{j}", rule.set_for(1, j), f"S3.{jp}", rule.set_for(3, jp)
            )
    if not out:
        for m in range(4):
            first = {tile_vertex(t, rule.d) for t in rule.set_for(m, 1).tiles}
            for j in range(2, rule.i + 1):
                vs = {tile_vertex(t, rule.d) for t in rule.set_for(m, j).tiles}
                assert vs == first, (
                    f"column vertex projections of S{m} differ despite clean "
                    f"pair checks"
                )
    return out


# ---------------------------------------------------------------------------
# application


def _splice(t: int, h: int, d: int, s: int) -> int:
    """Replace the digit of t at coordinate h with the d digits of s."""
    shift = 2 * (h - 1)
    return (t & (1 << shift) - 1) | s << shift | (t >> (shift + 2)) << (shift + 2 * d)


def apply_simple(rule: SimpleRule, k_set: TileSet, h: int, checked: bool = False) -> TileSet:
    """Rewrite every tile at coordinate h; output width k + d - 1.

    Assumes a valid rule and a complete input unless checked is set.  The
    output cardinality is always asserted, which catches unsound rules
    loudly even in unchecked mode.
    """
    if checked:
        violations = validate_simple(rule)
        if violations:
            raise InvalidRuleError("; ".join(violations))
        if not is_tiling(k_set):
            raise NotATilingError("input is not a complete tiling")
    k = k_set.dim
    if not 1 <= h <= k:
        raise DimensionError(f"coordinate {h} out of range 1..{k}")
    sets = tuple(s.tiles for s in rule.sets())
    shift = 2 * (h - 1)
    out = set()
    for t in k_set.tiles:
        for s in sets[t >> shift & 3]:
            out.add(_splice(t, h, rule.d, s))
    return _sized(out, k + rule.d - 1)


def apply_generalized(
    rule: GeneralizedRule,
    k_set: TileSet,
    labelling: Mapping[str, int],
    h: int,
    checked: bool = False,
) -> TileSet:
    """Rewrite with per-tile column choice; labelling maps tile strings."""
    if checked:
        violations = validate_generalized(rule)
        if violations:
            raise InvalidRuleError("; ".join(violations))
        if not is_tiling(k_set):
            raise NotATilingError("input is not a complete tiling")
    k = k_set.dim
    if not 1 <= h <= k:
        raise DimensionError(f"coordinate {h} out of range 1..{k}")
    packed_labels = {}
    for s, j in labelling.items():
        if not 1 <= j <= rule.i:
            raise LabellingError(f"label {j} for tile {s} out of range 1..{rule.i}")
        packed_labels[tile_pack(s)] = j
    shift = 2 * (h - 1)
    out = set()
    for t in k_set.tiles:
        j = packed_labels.get(t)
        if j is None:
            raise LabellingError(f"missing label for tile {tile_unpack(t, k)}")
        for s in rule.columns[t >> shift & 3][j - 1].tiles:
            out.add(_splice(t, h, rule.d, s))
    return _sized(out, k + rule.d - 1)


def _sized(out: set, new_dim: int) -> TileSet:
    if len(out) != 1 << new_dim:
        raise InvalidRuleError(
            f"rewrite produced {len(out)} tiles, expected {1 << new_dim}; "
            f"the rule is not sound on this input"
        )
    return TileSet(new_dim, frozenset(out))


# ---------------------------------------------------------------------------
# one rule per target: every tiling is one application away from the frame


FRAME_TILES = ("01", "03", "20", "22")
FRAME_LABELLING = {"01": 2, "03": 1, "20": 2, "22": 1}


def universality_rule(k_set: TileSet):
    """A two-column rule that rewrites the fixed 2-dimensional frame
    (the bow, two flippable edges sharing no vertex) into the given tiling.

    Splits the target by its last digit: tiles ending in m, prefix
    collected into V m.  The even columns are (V3, V2) and (V1, V0), the
    odd columns are empty and the canonical tiling of one dimension down.
    Returns the rule and the frame labelling.
    """
    if not is_tiling(k_set):
        raise NotATilingError("the rewrite target must be a complete tiling")
    n = k_set.dim
    if n < 1:
        raise DimensionError("the rewrite target needs dimension at least 1")
    d = n - 1
    shift = 2 * d
    v = [set(), set(), set(), set()]
    for t in k_set.tiles:
        v[t >> shift & 3].add(t & (1 << shift) - 1)
    def pts(tiles):
        return PartialTileSet(d, frozenset(tiles))

    canon = pts(canonical_tiles(d).tiles)
    empty = pts(())
    rule = GeneralizedRule(
        d,
        2,
        (
            (pts(v[3]), pts(v[1])),
            (empty, empty),
            (pts(v[2]), pts(v[0])),
            (canon, canon),
        ),
    )
    return rule, dict(FRAME_LABELLING)


def frame_tiles() -> TileSet:
    """The fixed rewrite frame used by universality_rule."""
    return TileSet.from_strings(FRAME_TILES)


# ---------------------------------------------------------------------------
# rule form of the orientation product


def product_rule(parts) -> GeneralizedRule:
    """The rule that splices one tiling per frame vertex into coordinate k.

    parts is a sequence of equal-dimension complete tilings indexed by
    frame vertex; column j + 1 replaces digit m with m followed by each
    tile of parts[j].  Apply at h = frame dimension with
    product_labelling(frame).
    """
    parts = list(parts)
    if not parts:
        raise DimensionError("need at least one part")
    d = parts[0].dim
    for p in parts:
        if p.dim != d:
            raise DimensionError("parts of unequal dimensions")
        if not is_tiling(p):
            raise NotATilingError("every part must be a complete tiling")
    columns = tuple(
        tuple(
            PartialTileSet(d + 1, frozenset(m | s << 2 for s in p.tiles))
            for p in parts
        )
        for m in range(4)
    )
    return GeneralizedRule(d + 1, len(parts), columns)


def product_labelling(frame: TileSet) -> dict[str, int]:
    """Label every frame tile with its vertex index plus one."""
    k = frame.dim
    return {
        tile_unpack(t, k): tile_vertex(t, k) + 1 for t in frame.tiles
    }
