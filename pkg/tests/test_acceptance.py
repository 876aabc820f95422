"""Release gate: one test per advertised guarantee.

Each test here pins an end-to-end behaviour the package promises: the two
worked rewrite examples reproduce bit-exactly, counting agrees across
independent methods and process counts, rule application never leaves the
space of tilings, every tiling is one rewrite away from the fixed frame,
phases are exactly the minimal flip units, the transform verbs agree with
their rule emulations, and the seeded sampler is statistically sane.
"""

import time
from collections import Counter

from usokit import (
    Edge,
    GeneralizedRule,
    NAMED_RULE_KINDS,
    PartialTileSet,
    SimpleRule,
    SplitMix64,
    TileSet,
    apply_generalized,
    apply_simple,
    count_usos,
    enumerate_brute,
    facet,
    flip_dimension,
    flip_edges,
    flippable_edges,
    frame_tiles,
    inherited,
    is_tiling,
    is_uso,
    mirror,
    named_rule,
    partial_swap,
    phases,
    product,
    product_labelling,
    product_rule,
    sample_markov,
    tiles_from_uso,
    twins,
    universality_rule,
    uso_from_tiles,
    validate_generalized,
    validate_simple,
)
from usokit.enumeration import _catalogue

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

PS_INPUT = TileSet.from_strings(
    ["110", "310", "012", "202", "031", "230", "033", "222"]
)
PS_OUTPUT = TileSet.from_strings(
    ["130", "330", "032", "202", "011", "210", "013", "222"]
)

UNI_TARGET = TileSet.from_strings(
    ["101", "103", "020", "122", "220", "300", "312", "332"]
)


def test_criterion_01_rewrite_example_bit_exact_and_fast():
    assert apply_simple(EX_RULE, EX_INPUT, 1) == EX_OUTPUT
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        apply_simple(EX_RULE, EX_INPUT, 1)
        best = min(best, time.perf_counter() - t0)
    assert best < 1e-3


def test_criterion_02_partial_swap_example_bit_exact():
    assert apply_simple(named_rule("partial-swap"), PS_INPUT, 2) == PS_OUTPUT


def test_criterion_03_universality_example():
    rule, labels = universality_rule(UNI_TARGET)
    assert validate_generalized(rule) == []
    assert labels == {"01": 2, "03": 1, "20": 2, "22": 1}
    assert set(rule.set_for(0, 1).strings()) == {"10"}
    assert set(rule.set_for(2, 1).strings()) == {"12", "33", "31"}
    assert set(rule.set_for(0, 2).strings()) == {"10"}
    assert set(rule.set_for(2, 2).strings()) == {"02", "22", "30"}
    assert apply_generalized(rule, frame_tiles(), labels, 1) == UNI_TARGET


def test_criterion_04_counts_and_method_agreement():
    _catalogue.cache_clear()
    t0 = time.perf_counter()
    assert count_usos(3, "brute").count == 744
    assert time.perf_counter() - t0 < 10
    assert count_usos(1, "brute").count == 2
    assert count_usos(2, "brute").count == 12
    for k in (1, 2, 3):
        assert count_usos(k, "join").count == count_usos(k, "brute").count
    reports = []
    for jobs in (1, 2):
        t0 = time.perf_counter()
        reports.append(count_usos(4, "join", jobs=jobs))
        assert time.perf_counter() - t0 < 900
    assert reports[0].count == reports[1].count == 5541744


def _vertex_split(ts: TileSet):
    """The four prefix sets of a tiling, keyed by its last digit."""
    d = ts.dim - 1
    shift = 2 * d
    v = [set(), set(), set(), set()]
    for t in ts.tiles:
        v[t >> shift & 3].add(t & (1 << shift) - 1)
    return [PartialTileSet(d, frozenset(x)) for x in v]


def _random_simple_rule(rng, d, catalogues) -> SimpleRule:
    def family():
        full = catalogues[d][rng.randbelow(len(catalogues[d]))]
        tiles = sorted(full.tiles)
        mask = rng.next_u64()
        a = frozenset(t for b, t in enumerate(tiles) if mask >> b & 1)
        return (
            PartialTileSet(d, a),
            PartialTileSet(d, frozenset(full.tiles) - a),
        )

    s0, s2 = family()
    s1, s3 = family()
    return SimpleRule(d, s0, s1, s2, s3)


def _random_two_column_rule(rng, d, catalogues) -> GeneralizedRule:
    cat = catalogues[d + 1]
    v = _vertex_split(cat[rng.randbelow(len(cat))])
    w = _vertex_split(cat[rng.randbelow(len(cat))])
    return GeneralizedRule(
        d,
        2,
        (
            (v[3], v[1]),
            (w[3], w[1]),
            (v[2], v[0]),
            (w[2], w[0]),
        ),
    )


def test_criterion_05_soundness_sweep(catalogue3):
    catalogues = {d: list(enumerate_brute(d)) for d in range(4)}
    for kind in NAMED_RULE_KINDS:
        rule = named_rule(kind)
        assert validate_simple(rule) == []
        for ts in catalogue3:
            for h in (1, 2, 3):
                assert is_tiling(apply_simple(rule, ts, h))
    rng = SplitMix64(0x5EED)
    for n in range(100):
        if n % 2:
            rule = _random_simple_rule(rng, rng.randbelow(3), catalogues)
            assert validate_simple(rule) == []
            for ts in catalogue3:
                for h in (1, 2, 3):
                    assert is_tiling(apply_simple(rule, ts, h))
        else:
            rule = _random_two_column_rule(rng, rng.randbelow(3), catalogues)
            assert validate_generalized(rule) == []
            for ts in catalogue3:
                labels = {s: 1 + rng.randbelow(2) for s in ts.strings()}
                for h in (1, 2, 3):
                    assert is_tiling(apply_generalized(rule, ts, labels, h))


def test_criterion_06_universality_sweep(catalogue2, catalogue3):
    frame = frame_tiles()
    for ts in catalogue2 + catalogue3:
        rule, labels = universality_rule(ts)
        assert apply_generalized(rule, frame, labels, 1) == ts
    for i in range(1000):
        ts = sample_markov(4, 32, 20000 + i)
        rule, labels = universality_rule(ts)
        assert apply_generalized(rule, frame, labels, 1) == ts


def test_criterion_07_partial_swap_keeps_phase_partition(catalogue3):
    for ts in catalogue3:
        o = uso_from_tiles(ts)
        for h in (1, 2, 3):
            swapped = partial_swap(o, h)
            assert set(phases(swapped, h).classes) == set(phases(o, h).classes)


def test_criterion_08_phases_are_the_minimal_flip_units(catalogue3):
    for ts in catalogue3:
        o = uso_from_tiles(ts)
        for i in (1, 2, 3):
            classes = phases(o, i).classes
            unions = set()
            for pick in range(1 << len(classes)):
                chosen = frozenset()
                for c, cls in enumerate(classes):
                    if pick >> c & 1:
                        chosen |= cls
                unions.add(chosen)
            edges = sorted({e for cls in classes for e in cls})
            assert len(edges) == 4
            sound = set()
            for pick in range(16):
                subset = [edges[b] for b in range(4) if pick >> b & 1]
                if is_uso(flip_edges(o, subset)):
                    sound.add(frozenset(subset))
            assert sound == unions


def test_criterion_09_transforms_match_their_rule_emulations(
    catalogue1, catalogue2, catalogue3
):
    one_coordinate = {
        "flip": flip_dimension,
        "mirror": mirror,
        "partial-swap": partial_swap,
    }
    for ts in catalogue3:
        o = uso_from_tiles(ts)
        for h in (1, 2, 3):
            for kind, fn in one_coordinate.items():
                assert apply_simple(named_rule(kind), ts, h) == tiles_from_uso(fn(o, h))
            assert apply_simple(named_rule("take-lower-facet"), ts, h) == tiles_from_uso(
                facet(o, h, "lower")
            )
            assert apply_simple(named_rule("take-upper-facet"), ts, h) == tiles_from_uso(
                facet(o, h, "upper")
            )
        assert apply_simple(named_rule("inherit"), ts, 3) == tiles_from_uso(
            inherited(o, 2)
        )

    parts_pool = [uso_from_tiles(t) for t in catalogue1]

    def check_product(frame_ts, assign):
        frame = uso_from_tiles(frame_ts)
        rule = product_rule([tiles_from_uso(p) for p in assign])
        labels = product_labelling(frame_ts)
        direct = product(frame, dict(enumerate(assign)))
        assert apply_generalized(rule, frame_ts, labels, frame_ts.dim) == tiles_from_uso(direct)

    rng = SplitMix64(0x0DDC0DE)
    for ts in catalogue3:
        check_product(ts, [parts_pool[rng.randbelow(2)] for _ in range(8)])
    for frame_ts in catalogue1 + catalogue2:
        n = 1 << frame_ts.dim
        for code in range(1 << n):
            check_product(frame_ts, [parts_pool[code >> v & 1] for v in range(n)])


def test_criterion_10_twins_match_flippable_edges(catalogue1, catalogue2, catalogue3):
    empty = TileSet.from_strings([""], 0)
    for ts in [empty] + catalogue1 + catalogue2 + catalogue3:
        o = uso_from_tiles(ts)
        flips = flippable_edges(o)
        pairs = twins(ts)
        assert len(pairs) == len(flips)
        mapped = set()
        for a, b in pairs:
            diffs = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
            assert len(diffs) == 1
            va = sum((c >= "2") << p for p, c in enumerate(a))
            vb = sum((c >= "2") << p for p, c in enumerate(b))
            assert va ^ vb == 1 << diffs[0]
            mapped.add(Edge(min(va, vb), diffs[0] + 1))
        assert mapped == flips


def test_criterion_11_sampler_chi_square(catalogue2):
    chains = 12000
    counts = Counter(sample_markov(2, 200, seed) for seed in range(chains))
    assert set(counts) == set(catalogue2)
    expected = chains / 12
    chi2 = sum((counts[ts] - expected) ** 2 / expected for ts in catalogue2)
    # 99% critical value of chi-square with 11 degrees of freedom
    assert chi2 < 24.725
