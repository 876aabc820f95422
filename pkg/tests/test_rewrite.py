import pytest

from usokit import (
    DimensionError,
    GeneralizedRule,
    InvalidRuleError,
    LabellingError,
    NAMED_RULE_KINDS,
    PartialTileSet,
    SimpleRule,
    TileSet,
    apply_generalized,
    apply_simple,
    as_generalized,
    bow,
    canonical_tiles,
    flippable_edges,
    frame_tiles,
    inherited,
    is_tiling,
    named_rule,
    product,
    product_labelling,
    product_rule,
    tiles_from_uso,
    twins,
    universality_rule,
    uso_from_tiles,
    validate_generalized,
    validate_simple,
)

# the d=2 rule whose application is the worked rewrite fixture
EX_RULE = SimpleRule(
    d=2,
    s0=PartialTileSet.from_strings(["01"]),
    s1=PartialTileSet.from_strings(["11", "31"]),
    s2=PartialTileSet.from_strings(["03", "20", "22"]),
    s3=PartialTileSet.from_strings(["33", "13"]),
)
EX_INPUT = TileSet.from_strings(["10", "30", "02", "22"])
EX_OUTPUT = TileSet.from_strings(
    ["110", "310", "130", "330", "012", "032", "202", "222"]
)

TARGET3 = TileSet.from_strings(
    ["101", "103", "020", "122", "220", "300", "312", "332"]
)


def sets_of(rule, m, j):
    return sorted(rule.set_for(m, j).strings())


def test_named_rule_tables():
    tables = {
        "identity": (["0"], ["1"], ["2"], ["3"]),
        "comb": (["0"], ["0"], ["2"], ["2"]),
        "flip": (["1"], ["0"], ["3"], ["2"]),
        "copy-upper": ([], [], ["0", "2"], ["1", "3"]),
        "copy-lower": (["0", "2"], ["1", "3"], [], []),
        "mirror": (["2"], ["3"], ["0"], ["1"]),
        "partial-swap": (["0"], ["3"], ["2"], ["1"]),
        "take-upper-facet": ([], [], [""], [""]),
        "take-lower-facet": ([""], [""], [], []),
        "inherit": ([""], [], [], [""]),
    }
    assert set(tables) == set(NAMED_RULE_KINDS)
    for kind, (s0, s1, s2, s3) in tables.items():
        r = named_rule(kind)
        assert sorted(r.s0.strings()) == s0
        assert sorted(r.s1.strings()) == s1
        assert sorted(r.s2.strings()) == s2
        assert sorted(r.s3.strings()) == s3
        assert r.d == (0 if kind in ("take-upper-facet", "take-lower-facet", "inherit") else 1)


def test_named_rule_rejects_unknown():
    with pytest.raises(InvalidRuleError):
        named_rule("frobnicate")


def test_validate_simple_accepts_known_rules():
    assert validate_simple(EX_RULE) == []
    for kind in NAMED_RULE_KINDS:
        assert validate_simple(named_rule(kind)) == []


def test_validate_simple_reports_violations():
    overlap = SimpleRule(
        d=1,
        s0=PartialTileSet.from_strings(["0"]),
        s1=PartialTileSet.from_strings(["1"]),
        s2=PartialTileSet.from_strings(["0", "2"]),
        s3=PartialTileSet.from_strings(["3"]),
    )
    msgs = validate_simple(overlap)
    assert any("share tiles" in m for m in msgs)

    short = SimpleRule(
        d=1,
        s0=PartialTileSet.from_strings(["0"]),
        s1=PartialTileSet.from_strings(["1"]),
        s2=PartialTileSet(1, frozenset()),
        s3=PartialTileSet.from_strings(["3"]),
    )
    msgs = validate_simple(short)
    assert any("needs 2" in m for m in msgs)

    clash = SimpleRule(
        d=1,
        s0=PartialTileSet.from_strings(["0"]),
        s1=PartialTileSet.from_strings(["1"]),
        s2=PartialTileSet.from_strings(["3"]),
        s3=PartialTileSet.from_strings(["3"]),
    )
    msgs = validate_simple(clash)
    assert any("incompatible" in m for m in msgs)


def test_apply_simple_worked_example():
    assert apply_simple(EX_RULE, EX_INPUT, 1) == EX_OUTPUT


def test_apply_simple_identity(catalogue2):
    r = named_rule("identity")
    for ts in catalogue2:
        for h in (1, 2):
            assert apply_simple(r, ts, h) == ts


def test_apply_simple_partial_swap_example():
    r = named_rule("partial-swap")
    k = TileSet.from_strings(
        ["110", "310", "012", "202", "031", "230", "033", "222"]
    )
    want = TileSet.from_strings(
        ["130", "330", "032", "202", "011", "210", "013", "222"]
    )
    assert apply_simple(r, k, 2) == want


def test_apply_simple_rejects_bad_h():
    with pytest.raises(DimensionError):
        apply_simple(EX_RULE, EX_INPUT, 0)
    with pytest.raises(DimensionError):
        apply_simple(EX_RULE, EX_INPUT, 3)


def test_apply_checked_mode_validates():
    bad = SimpleRule(
        d=1,
        s0=PartialTileSet.from_strings(["0"]),
        s1=PartialTileSet.from_strings(["1"]),
        s2=PartialTileSet.from_strings(["0", "2"]),
        s3=PartialTileSet.from_strings(["3"]),
    )
    with pytest.raises(InvalidRuleError):
        apply_simple(bad, EX_INPUT, 1, checked=True)
    # unchecked application does not validate
    apply_simple(bad, canonical_tiles(1), 1)


def test_dimension_arithmetic(catalogue2):
    for kind in NAMED_RULE_KINDS:
        r = named_rule(kind)
        for ts in catalogue2[:4]:
            for h in (1, 2):
                out = apply_simple(r, ts, h)
                assert out.dim == 2 + r.d - 1
                assert len(out) == 1 << out.dim


def test_unsound_rewrite_fails_loudly():
    # a cardinality-deficient rule cannot reach 2^(k + d - 1) output tiles
    short = SimpleRule(
        d=1,
        s0=PartialTileSet.from_strings(["0"]),
        s1=PartialTileSet.from_strings(["1"]),
        s2=PartialTileSet(1, frozenset()),
        s3=PartialTileSet.from_strings(["3"]),
    )
    with pytest.raises(InvalidRuleError):
        apply_simple(short, canonical_tiles(1), 1)


def test_embedded_simple_equals_generalized():
    g = as_generalized(EX_RULE)
    assert g.i == 1
    assert validate_generalized(g) == []
    labels = {s: 1 for s in EX_INPUT.strings()}
    assert apply_generalized(g, EX_INPUT, labels, 1) == apply_simple(EX_RULE, EX_INPUT, 1)


def test_validate_generalized_worked_rule():
    rule, labels = universality_rule(TARGET3)
    assert validate_generalized(rule) == []
    assert labels == {"01": 2, "03": 1, "20": 2, "22": 1}


def test_validate_generalized_reports_cardinality():
    c1 = canonical_tiles(1).strings()
    r = GeneralizedRule(
        d=1,
        i=2,
        columns=(
            (PartialTileSet.from_strings(["0"]), PartialTileSet(1, frozenset())),
            (PartialTileSet(1, frozenset()),) * 2,
            (PartialTileSet.from_strings(["2"]),) * 2,
            (PartialTileSet.from_strings(c1),) * 2,
        ),
    )
    msgs = validate_generalized(r)
    assert any("needs 2" in m for m in msgs)


def test_universality_rule_worked_example():
    rule, labels = universality_rule(TARGET3)
    assert rule.d == 2
    assert rule.i == 2
    assert sets_of(rule, 0, 1) == ["10"]
    assert sets_of(rule, 2, 1) == ["12", "31", "33"]
    assert sets_of(rule, 0, 2) == ["10"]
    assert sets_of(rule, 2, 2) == ["02", "22", "30"]
    for j in (1, 2):
        assert sets_of(rule, 1, j) == []
        assert sets_of(rule, 3, j) == canonical_tiles(2).strings()
    assert apply_generalized(rule, frame_tiles(), labels, 1) == TARGET3


def test_universality_rule_on_the_frame_itself():
    rule, labels = universality_rule(bow())
    # mechanical last-digit split of the bow
    assert sets_of(rule, 0, 1) == ["0"]  # tiles ending in 3
    assert sets_of(rule, 2, 1) == ["2"]  # tiles ending in 2
    assert sets_of(rule, 0, 2) == ["0"]  # tiles ending in 1
    assert sets_of(rule, 2, 2) == ["2"]  # tiles ending in 0
    assert apply_generalized(rule, frame_tiles(), labels, 1) == bow()


def test_universality_rule_canonical_input():
    rule, labels = universality_rule(canonical_tiles(3))
    for j in (1, 2):
        assert sets_of(rule, 0, j) == []
        assert sets_of(rule, 2, j) == canonical_tiles(2).strings()
    assert apply_generalized(rule, frame_tiles(), labels, 1) == canonical_tiles(3)


def test_universality_round_trip_exhaustive(catalogue2):
    for ts in catalogue2:
        rule, labels = universality_rule(ts)
        assert validate_generalized(rule) == []
        assert apply_generalized(rule, frame_tiles(), labels, 1) == ts


def test_universality_dimension_one():
    for strings in (["0", "2"], ["1", "3"]):
        ts = TileSet.from_strings(strings)
        rule, labels = universality_rule(ts)
        assert rule.d == 0
        assert apply_generalized(rule, frame_tiles(), labels, 1) == ts


def test_apply_generalized_missing_label():
    rule, _ = universality_rule(TARGET3)
    with pytest.raises(LabellingError):
        apply_generalized(rule, frame_tiles(), {"01": 2, "03": 1, "20": 2}, 1)
    with pytest.raises(LabellingError):
        apply_generalized(
            rule, frame_tiles(), {"01": 2, "03": 1, "20": 2, "22": 7}, 1
        )


def test_inherit_rule_matches_inherited(catalogue2):
    r = named_rule("inherit")
    for ts in catalogue2:
        o = uso_from_tiles(ts)
        assert apply_simple(r, ts, 2) == tiles_from_uso(inherited(o, 1))


def test_flippable_preservation(catalogue2):
    # a d=1 rule whose both unions have twins keeps at least one twin pair
    qualifying = [k for k in NAMED_RULE_KINDS if named_rule(k).d == 1]
    for kind in qualifying:
        r = named_rule(kind)
        for union in (
            r.s0.tiles | r.s2.tiles,
            r.s1.tiles | r.s3.tiles,
        ):
            assert twins(TileSet(1, union))
        for ts in catalogue2:
            assert flippable_edges(uso_from_tiles(ts))
            for h in (1, 2):
                out = apply_simple(r, ts, h)
                assert twins(out)


def _opposing_edges_comb_output(rule, ts, h):
    """Opposing input h-edges force combed connecting edges in the output."""
    o = uso_from_tiles(ts)
    k = o.dim
    d = rule.d
    out_o = uso_from_tiles(apply_simple(rule, ts, h))
    for v in range(1 << k):
        if v >> (h - 1) & 1:
            continue
        for g in range(1, k + 1):
            if g == h or v >> (g - 1) & 1:
                continue
            w = v | 1 << (g - 1)
            if o.direction(v, h) == o.direction(w, h):
                continue
            # blow up the h coordinate: output vertices keep the prefix
            # below h, gain d bits, keep the suffix above h
            g_out = g if g < h else g + d - 1
            lowmask = (1 << (h - 1)) - 1
            for block in range(1 << d):
                x = (v & lowmask) | block << (h - 1) | (v >> h) << (h - 1 + d)
                assert out_o.direction(x, g_out) == o.direction(v, g)


def test_opposing_edges_comb_the_connecting_edges(catalogue2):
    rules = [EX_RULE] + [named_rule(k) for k in NAMED_RULE_KINDS if named_rule(k).d >= 1]
    for rule in rules:
        for ts in catalogue2:
            for h in (1, 2):
                _opposing_edges_comb_output(rule, ts, h)


def test_column_vertex_projections_agree():
    # columns of an accepted rule project to the same unoriented vertices
    rule, _ = universality_rule(TARGET3)
    assert validate_generalized(rule) == []
    for m in range(4):
        projections = [
            {tuple(c >= "2" for c in s) for s in sets_of(rule, m, j)}
            for j in (1, 2)
        ]
        assert projections[0] == projections[1]


def test_product_rule_emulates_product(catalogue1, catalogue2):
    down = uso_from_tiles(catalogue1[0])
    up = uso_from_tiles(catalogue1[1])
    for frame_ts in catalogue2:
        frame = uso_from_tiles(frame_ts)
        parts = [down if v % 2 else up for v in range(4)]
        rule = product_rule([tiles_from_uso(p) for p in parts])
        assert validate_generalized(rule) == []
        labels = product_labelling(frame_ts)
        direct = product(frame, dict(enumerate(parts)))
        assert apply_generalized(rule, frame_ts, labels, 2) == tiles_from_uso(direct)
