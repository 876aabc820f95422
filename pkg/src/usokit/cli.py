"""Command line driver.

Every verb reads and writes the text forms of the formats module; outputs
are deterministic.  Exit codes: 0 on success, 1 on a domain violation
(not a tiling, not an USO, invalid rule, bad phase selection, bad label),
2 on usage, parse, or range errors.  Failures print a single line
``error: <category>: <detail>`` to stderr.

Randomized verbs require an explicit --seed; the generator is SplitMix64
(see the enumeration module), so equal seeds reproduce equal output on
any platform.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cube import (
    Face,
    Orientation,
    flippable_edges,
    is_uso,
    vertex_bits,
    vertex_from_bits,
)
from .enumeration import (
    MAX_BRUTE_DIM,
    MAX_JOIN_DIM,
    MAX_SAMPLE_DIM,
    RNG_ALGORITHM,
    count_usos,
    enumerate_brute,
    enumerate_join,
    sample_markov,
)
from .errors import (
    DimensionError,
    EnumerationLimitError,
    FormatError,
    LabellingError,
    NotATilingError,
    PhaseSelectionError,
    UsoError,
)
from .formats import (
    read_labels,
    read_orientation,
    read_rule,
    read_tiling,
    write_labels,
    write_orientation,
    write_rule,
    write_tiling,
)
from .rewrite import (
    NAMED_RULE_KINDS,
    apply_generalized,
    named_rule,
    universality_rule,
)
from .tiling import (
    TileSet,
    is_tiling,
    low_bits_mask,
    packed_gk_adjacent,
    tile_unpack,
    tiles_from_uso,
    twins,
    uso_from_tiles,
)
from .transform import (
    facet,
    flip_dimension,
    hypervertex_replace,
    inherited,
    mirror,
    partial_swap,
    phase_flip,
    phase_swap,
    phases,
    product,
)


def _read(path: str) -> str:
    return Path(path).read_text()


def _read_tiling(path: str) -> TileSet:
    ts = read_tiling(_read(path))
    if not is_tiling(ts):
        raise NotATilingError(f"{path}: {_tiling_defect(ts)}")
    return ts


def _tiling_defect(ts: TileSet) -> str:
    if len(ts.tiles) != 1 << ts.dim:
        return f"{len(ts.tiles)} tiles, expected {1 << ts.dim}"
    lo = low_bits_mask(ts.dim)
    tiles = sorted(ts.tiles)
    for a in range(len(tiles)):
        for b in range(a + 1, len(tiles)):
            if not packed_gk_adjacent(tiles[a], tiles[b], lo):
                return (
                    f"incompatible tiles {tile_unpack(tiles[a], ts.dim)} and "
                    f"{tile_unpack(tiles[b], ts.dim)}"
                )
    return "not a tiling"


def _print_tiling(o: Orientation) -> None:
    sys.stdout.write(write_tiling(tiles_from_uso(o)))


# ---------------------------------------------------------------------------
# verbs


def _cmd_validate(args) -> int:
    ts = _read_tiling(args.file)
    o = uso_from_tiles(ts)
    assert is_uso(o, "pairwise")
    if o.dim <= 6:
        # the face scan is 3^k, skip the cross-check for big inputs
        assert is_uso(o, "face-scan")
    flips = len(flippable_edges(o))
    pairs = len(twins(ts))
    assert flips == pairs
    print(f"uso dim={ts.dim} flippable={flips} twins={pairs}")
    return 0


def _cmd_convert(args) -> int:
    text = _read(args.file)
    first = text.split(None, 1)[0] if text.split() else ""
    if first == "uso":
        ts = read_tiling(text)
        if not is_tiling(ts):
            raise NotATilingError(_tiling_defect(ts))
        o = uso_from_tiles(ts)
    elif first == "o":
        o = read_orientation(text)
    else:
        raise FormatError(f"unrecognized header in {args.file}")
    if args.to == "tiles":
        sys.stdout.write(write_tiling(tiles_from_uso(o)))
    else:
        sys.stdout.write(write_orientation(o))
    return 0


def _cmd_apply(args) -> int:
    ts = _read_tiling(args.file)
    rule = read_rule(_read(args.rule))
    if args.labels:
        labels = read_labels(_read(args.labels), ts.dim)
    elif rule.i == 1:
        labels = {s: 1 for s in ts.strings()}
    else:
        raise LabellingError(f"rule has {rule.i} columns, --labels required")
    result = apply_generalized(rule, ts, labels, args.h, checked=True)
    sys.stdout.write(write_tiling(result))
    return 0


def _cmd_rule_make(args) -> int:
    sys.stdout.write(write_rule(named_rule(args.kind)))
    return 0


def _cmd_uni_rule(args) -> int:
    ts = _read_tiling(args.file)
    rule, labels = universality_rule(ts)
    sys.stdout.write(write_rule(rule))
    if args.labels_out:
        Path(args.labels_out).write_text(write_labels(labels))
    return 0


def _cmd_product(args) -> int:
    frame_ts = _read_tiling(args.frame)
    frame = uso_from_tiles(frame_ts)
    parts = {}
    for spec in args.part or []:
        bits, _, path = spec.partition("=")
        if not path:
            raise ValueError(f"--part wants <vertexbits>=<file>, got {spec!r}")
        if len(bits) != frame.dim:
            raise ValueError(
                f"vertex {bits!r} does not match frame dimension {frame.dim}"
            )
        v = vertex_from_bits(bits)
        if v in parts:
            raise ValueError(f"vertex {bits!r} given twice")
        parts[v] = uso_from_tiles(_read_tiling(path))
    missing = [v for v in range(1 << frame.dim) if v not in parts]
    if missing:
        raise ValueError(
            f"missing --part for vertex {vertex_bits(missing[0], frame.dim)}"
        )
    _print_tiling(product(frame, parts))
    return 0


def _cmd_inherit(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    _print_tiling(inherited(o, args.kprime))
    return 0


def _cmd_facet(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    _print_tiling(facet(o, args.h, args.side))
    return 0


def _cmd_flip(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    _print_tiling(flip_dimension(o, args.h))
    return 0


def _cmd_mirror(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    _print_tiling(mirror(o, args.h))
    return 0


def _cmd_partial_swap(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    _print_tiling(partial_swap(o, args.h))
    return 0


def _cmd_phases(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    part = phases(o, args.h, args.method)
    for cls in part.classes:
        print(" ".join(f"{vertex_bits(e.vertex, o.dim)}/{e.dim}" for e in sorted(cls)))
    return 0


def _parse_class_indexes(spec: str, n: int) -> list[int]:
    try:
        picked = [int(x) for x in spec.split(",") if x != ""]
    except ValueError:
        raise ValueError(f"--classes wants comma-separated indexes, got {spec!r}")
    for c in picked:
        if not 0 <= c < n:
            raise PhaseSelectionError(f"class index {c} out of range 0..{n - 1}")
    return picked


def _cmd_phase_flip(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    part = phases(o, args.h)
    picked = _parse_class_indexes(args.classes, len(part.classes))
    _print_tiling(phase_flip(o, args.h, [part.classes[c] for c in picked]))
    return 0


def _cmd_phase_swap(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    part = phases(o, args.h)
    picked = _parse_class_indexes(args.classes, len(part.classes))
    edges = set()
    for c in picked:
        edges |= part.classes[c]
    _print_tiling(phase_swap(o, args.h, edges))
    return 0


def _cmd_hyper_replace(args) -> int:
    o = uso_from_tiles(_read_tiling(args.file))
    try:
        face = Face(args.face)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    sub = uso_from_tiles(_read_tiling(args.with_file))
    _print_tiling(hypervertex_replace(o, face, sub))
    return 0


def _cmd_enumerate(args) -> int:
    if args.method == "brute":
        stream = enumerate_brute(args.k)
    else:
        stream = enumerate_join(args.k, args.jobs)
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        for idx, ts in enumerate(stream):
            if idx:
                sink.write("\n")
            sink.write(write_tiling(ts))
    finally:
        if args.out:
            sink.close()
    return 0


def _cmd_count(args) -> int:
    report = count_usos(args.k, args.method, args.jobs)
    if args.out:
        Path(args.out).write_text(report.line() + "\n")
    else:
        print(report.line())
    return 0


def _cmd_sample(args) -> int:
    sys.stdout.write(write_tiling(sample_markov(args.k, args.steps, args.seed)))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="usokit",
        description="Unique sink orientations of cubes: validate, rewrite, "
        "transform, enumerate, sample.",
        epilog="Exit codes: 0 ok, 1 domain violation, 2 usage or parse error. "
        f"Randomness: {RNG_ALGORITHM}, reproducible per --seed.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="<verb>")

    def verb(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        return p

    p = verb("validate", _cmd_validate, "check a tiling file, report edge stats")
    p.add_argument("file")

    p = verb("convert", _cmd_convert, "convert between tiling and orientation form")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=("tiles", "orientation"))

    p = verb("apply", _cmd_apply, "apply a rewriting rule at one coordinate")
    p.add_argument("file")
    p.add_argument("--rule", required=True)
    p.add_argument("--labels")
    p.add_argument("--h", type=int, required=True)

    p = verb("rule-make", _cmd_rule_make, "emit a built-in rule file")
    p.add_argument("--kind", required=True, choices=NAMED_RULE_KINDS)

    p = verb("uni-rule", _cmd_uni_rule, "emit the rule rewriting the frame to this tiling")
    p.add_argument("file")
    p.add_argument("--labels-out", help="also write the frame label file here")

    p = verb("product", _cmd_product, "glue one part tiling onto every frame vertex")
    p.add_argument("frame")
    p.add_argument(
        "--part",
        action="append",
        metavar="<vertexbits>=<file>",
        help="part tiling per frame vertex (repeat for every vertex)",
    )

    p = verb("inherit", _cmd_inherit, "collapse down to a lower dimension")
    p.add_argument("file")
    p.add_argument("--kprime", type=int, required=True)

    p = verb("facet", _cmd_facet, "restrict to one facet")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--side", required=True, choices=("lower", "upper"))

    p = verb("flip", _cmd_flip, "reverse every edge of one coordinate")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)

    p = verb("mirror", _cmd_mirror, "swap the two facets of one coordinate")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)

    p = verb("partial-swap", _cmd_partial_swap, "swap facets along upward edges only")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)

    p = verb("phases", _cmd_phases, "print the flip classes of one coordinate")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--method", default="pairs", choices=("pairs", "brute"))

    p = verb("phase-flip", _cmd_phase_flip, "reverse chosen flip classes")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--classes", required=True, metavar="<idx,...>",
                   help="0-based indexes into the phases output")

    p = verb("phase-swap", _cmd_phase_swap, "swap facets along chosen flip classes")
    p.add_argument("file")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--classes", required=True, metavar="<idx,...>",
                   help="0-based indexes into the phases output")

    p = verb("hyper-replace", _cmd_hyper_replace, "reorient inside a combed face")
    p.add_argument("file")
    p.add_argument("--face", required=True, help="pattern over 0, 1, *")
    p.add_argument("--with", dest="with_file", required=True, metavar="FILE")

    p = verb("enumerate", _cmd_enumerate, "stream every tiling of a dimension")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", required=True, choices=("brute", "join"),
                   help=f"brute caps at k={MAX_BRUTE_DIM}, join at k={MAX_JOIN_DIM}")
    p.add_argument("--out", help="write the stream here instead of stdout")
    p.add_argument("--jobs", type=int, default=1)

    p = verb("count", _cmd_count, "count the tilings of a dimension")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", required=True, choices=("brute", "join"))
    p.add_argument("--out", help="write the report line here instead of stdout")
    p.add_argument("--jobs", type=int, default=1)

    p = verb("sample", _cmd_sample, "draw one tiling by a seeded flip walk")
    p.add_argument("--k", type=int, required=True,
                   help=f"dimension, at most {MAX_SAMPLE_DIM}")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return 2
    except (DimensionError, EnumerationLimitError) as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return 2
    except UsoError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
