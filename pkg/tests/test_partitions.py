import pytest

from entanglia.partitions import (
    PSClass,
    bottom_label,
    class_labels,
    cover_edges,
    enumerate_partitions,
    format_label,
    format_partition,
    is_proper_label,
    label_leq,
    lattice_json,
    parse_label,
    parse_partition,
    partition_from_blocks,
    proper_labels,
    reduce_label,
    refines,
    top_label,
)

from oracles import naive_set_partitions


def test_bell_counts():
    assert [len(enumerate_partitions(n)) for n in range(1, 7)] == \
        [1, 2, 5, 15, 52, 203]


def test_matches_naive_enumeration():
    for n in range(1, 6):
        ours = set(enumerate_partitions(n))
        naive = {partition_from_blocks(p) for p in naive_set_partitions(n)}
        assert ours == naive


def test_canonical_strings_n3():
    assert [format_partition(p) for p in enumerate_partitions(3)] == \
        ["1|2|3", "1|23", "2|13", "3|12", "123"]


def test_parse_roundtrip():
    for n in (3, 4):
        for p in enumerate_partitions(n):
            assert parse_partition(format_partition(p)) == p


def test_overlapping_blocks_rejected():
    with pytest.raises(ValueError):
        partition_from_blocks([[1, 2], [2, 3]])


def test_refinement_basics():
    bot = parse_partition("1|2|3")
    top = parse_partition("123")
    a = parse_partition("1|23")
    b = parse_partition("2|13")
    assert refines(bot, a) and refines(a, top) and refines(bot, top)
    assert not refines(a, b) and not refines(b, a)
    assert not refines(top, a)
    assert refines(a, a)


def test_refinement_counts_downsets():
    # the down-set of the one-block partition is everything
    parts = enumerate_partitions(4)
    top = parse_partition("1234")
    assert all(refines(p, top) for p in parts)
    bot = parse_partition("1|2|3|4")
    assert sum(refines(bot, p) for p in parts) == len(parts)


def test_label_order_examples():
    assert label_leq(parse_label("1|23"), parse_label("1|23,2|13"))
    assert not label_leq(parse_label("2|13,3|12"), parse_label("1|23"))
    assert label_leq(parse_label("1|2|3"), parse_label("3|12"))


def test_label_leq_equals_downset_inclusion():
    # beta-hat <= alpha-hat exactly when the union of refinement
    # down-sets of beta-hat sits inside that of alpha-hat
    parts = enumerate_partitions(3)

    def downset(label):
        return {p for p in parts if any(refines(p, a) for a in label)}

    labels = list(proper_labels(3))
    for lab_a in labels:
        for lab_b in labels:
            assert label_leq(lab_b, lab_a) == \
                downset(lab_b).issubset(downset(lab_a))


def test_reduce_label_drops_dominated():
    lab = reduce_label([parse_partition("1|2|3"), parse_partition("1|23")])
    assert lab == parse_label("1|23")
    assert is_proper_label(lab)
    assert not is_proper_label([parse_partition("1|2|3"),
                                parse_partition("1|23")])


def test_proper_label_counts():
    assert sum(1 for _ in proper_labels(1)) == 1
    assert sum(1 for _ in proper_labels(2)) == 2
    labs3 = list(proper_labels(3))
    assert len(labs3) == 9
    count4 = sum(1 for _ in proper_labels(4))
    assert count4 > 100
    assert count4 == 346


def test_proper_labels_n3_explicit():
    got = {format_label(l) for l in proper_labels(3)}
    assert got == {
        "1|2|3", "1|23", "2|13", "3|12",
        "2|13,3|12", "1|23,3|12", "1|23,2|13",
        "1|23,2|13,3|12", "123",
    }


def test_proper_labels_are_antichains():
    for lab in proper_labels(4):
        assert is_proper_label(lab)


def test_nontrivial_poset_relations():
    bot = parse_label("1|2|3")
    s = {1: parse_label("1|23"), 2: parse_label("2|13"),
         3: parse_label("3|12")}
    p = {1: parse_label("2|13,3|12"), 2: parse_label("1|23,3|12"),
         3: parse_label("1|23,2|13")}
    t = parse_label("1|23,2|13,3|12")
    for a in (1, 2, 3):
        assert label_leq(bot, s[a])
        assert label_leq(s[a], t) and not label_leq(t, s[a])
        assert label_leq(p[a], t)
        # s_a and p_a are incomparable, s_a sits below the other two pairs
        assert not label_leq(s[a], p[a]) and not label_leq(p[a], s[a])
        for b in (1, 2, 3):
            if b != a:
                assert label_leq(s[a], p[b])


def test_class_counts():
    assert len(class_labels(3)) == 20
    assert len(class_labels(3, include_vacuous=True)) == 21
    assert len(class_labels(2)) == 2
    assert len(class_labels(2, include_vacuous=True)) == 3
    with pytest.raises(ValueError):
        class_labels(4)


def test_class_names_n3():
    names = sorted(c.name for c in class_labels(3))
    expected = ["C1", "C2.1", "C2.4", "C2.8", "C3"]
    for stem in ("C2.2", "C2.3", "C2.5", "C2.6", "C2.7"):
        expected += ["%s.%d" % (stem, a) for a in (1, 2, 3)]
    assert names == sorted(expected)


def _cell(name):
    return next(c for c in class_labels(3) if c.name == name)


def test_class_c28_encoding():
    c = _cell("C2.8")
    assert [format_label(l) for l in c.above] == ["1|2|3"]
    below = {format_label(l) for l in c.below}
    assert {"1|23", "2|13", "3|12", "1|23,2|13,3|12", "123"} <= below
    assert len(below) == 8


def test_class_membership_patterns():
    # spot-check rows of the classification against the defining
    # set algebra: which of the nine label sets contain the cell
    def pattern(cell):
        order = ["1|2|3", "1|23", "2|13", "3|12",
                 "2|13,3|12", "1|23,3|12", "1|23,2|13",
                 "1|23,2|13,3|12", "123"]
        below = {format_label(l) for l in cell.below}
        return tuple(s in below for s in order)

    assert pattern(_cell("C3")) == (True,) * 9
    assert pattern(_cell("C1")) == (False,) * 8 + (True,)
    assert pattern(_cell("C2.1")) == \
        (False,) * 7 + (True, True)
    assert pattern(_cell("C2.4")) == \
        (False, False, False, False, True, True, True, True, True)
    assert pattern(_cell("C2.2.1")) == \
        (False, False, False, False, True, False, False, True, True)
    assert pattern(_cell("C2.3.1")) == \
        (False, False, False, False, False, True, True, True, True)
    assert pattern(_cell("C2.5.1")) == \
        (False, True, False, False, False, True, True, True, True)
    assert pattern(_cell("C2.6.1")) == \
        (False, True, False, False, True, True, True, True, True)
    assert pattern(_cell("C2.7.1")) == \
        (False, False, True, True, True, True, True, True, True)
    assert pattern(_cell("C2.8")) == (False,) + (True,) * 8


def test_cells_are_up_closed():
    labels = list(proper_labels(3))
    for cell in class_labels(3):
        below = set(cell.below)
        for lab in below:
            for other in labels:
                if label_leq(lab, other):
                    assert other in below


def test_every_up_set_appears_once():
    seen = {tuple(sorted(map(format_label, c.below)))
            for c in class_labels(3)}
    assert len(seen) == 20


def test_lattice_json_n3():
    lj = lattice_json(3)
    assert lj["n"] == 3
    assert len(lj["nodes"]) == 9
    assert "1|23,2|13" in lj["nodes"]
    idx = {s: i for i, s in enumerate(lj["nodes"])}
    edges = {tuple(e) for e in lj["edges"]}
    # covers of the bottom label are the three single-split labels
    bot_covers = {j for i, j in edges if i == idx["1|2|3"]}
    assert bot_covers == {idx["1|23"], idx["2|13"], idx["3|12"]}
    # the two-split pairs cover the single splits they contain
    assert (idx["1|23"], idx["1|23,2|13"]) in edges
    assert (idx["1|23"], idx["2|13,3|12"]) not in edges
    # top of the chain: three-split label covered only by the full label
    t = idx["1|23,2|13,3|12"]
    assert {(i, j) for i, j in edges if i == t} == {(t, idx["123"])}
    # every edge respects the order and skips nothing
    labels = [parse_label(s) for s in lj["nodes"]]
    for i, j in edges:
        assert label_leq(labels[i], labels[j])
        assert not label_leq(labels[j], labels[i])


def test_top_bottom_helpers():
    assert format_label(top_label(3)) == "123"
    assert format_label(bottom_label(3)) == "1|2|3"
