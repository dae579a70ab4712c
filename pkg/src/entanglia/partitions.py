"""Set partitions of subsystems, partial-separability labels and the
class lattice they generate.

A separability label is a set of partitions; the convex set it denotes
is generated by all states that are pure-product over some partition
refining a member of the label.  Labels that are antichains under
refinement are canonical ("proper"); the classes of the induced
classification correspond to the up-closed subsets of the proper-label
poset that contain the full-system label.
"""

from dataclasses import dataclass
from itertools import combinations


def partition_from_blocks(blocks):
    """Canonical form: sorted tuples, smallest blocks first, ties broken
    by least element (so 2|13 keeps the singleton in front)."""
    canon = tuple(sorted((tuple(sorted(int(x) for x in b)) for b in blocks),
                         key=lambda b: (len(b), b)))
    seen = [x for b in canon for x in b]
    if len(seen) != len(set(seen)):
        raise ValueError("blocks overlap")
    return canon


def format_partition(p):
    return "|".join("".join(str(x) for x in b) for b in p)


def parse_partition(s):
    blocks = [[int(ch) for ch in part] for part in s.split("|") if part]
    return partition_from_blocks(blocks)


def enumerate_partitions(n):
    """All set partitions of {1..n}, most blocks first, then lexicographic."""
    if not 1 <= n <= 6:
        raise ValueError("supported for 1 <= n <= 6")
    parts = []

    def rec(k, blocks):
        if k > n:
            parts.append(partition_from_blocks(blocks))
            return
        for b in blocks:
            b.append(k)
            rec(k + 1, blocks)
            b.pop()
        blocks.append([k])
        rec(k + 1, blocks)
        blocks.pop()

    rec(1, [])
    return sorted(parts, key=lambda p: (-len(p), p))


def refines(beta, alpha):
    """Whether every block of beta sits inside a block of alpha."""
    lookup = {}
    for b in alpha:
        for x in b:
            lookup[x] = b
    for b in beta:
        home = lookup.get(b[0])
        if home is None or not set(b).issubset(home):
            return False
    return True


# ----------------------------------------------------------------------
# labels


def reduce_label(parts):
    """Keep only the refinement-maximal partitions, canonically ordered."""
    parts = [partition_from_blocks(p) for p in parts]
    keep = []
    for p in parts:
        if any(p != q and refines(p, q) for q in parts):
            continue
        if p not in keep:
            keep.append(p)
    return tuple(sorted(keep, key=lambda p: (-len(p), p)))


def is_proper_label(parts):
    parts = list(parts)
    for i, p in enumerate(parts):
        for q in parts[i + 1:]:
            if refines(p, q) or refines(q, p):
                return False
    return len(parts) > 0


def label_leq(bhat, ahat):
    """Whether every member partition of bhat refines some member of ahat;
    on proper labels this is the partial order of the label poset."""
    return all(any(refines(b, a) for a in ahat) for b in bhat)


def format_label(label):
    return ",".join(format_partition(p) for p in label)


def parse_label(s):
    return reduce_label([parse_partition(tok) for tok in s.split(",") if tok])


def proper_labels(n):
    """All nonempty antichains of the partition poset, lazily.

    Labels are grown along the canonical total order, appending only
    partitions that come strictly later and are incomparable to every
    member already chosen.
    """
    parts = enumerate_partitions(n)

    def rec(chosen, start):
        if chosen:
            yield tuple(chosen)
        for i in range(start, len(parts)):
            p = parts[i]
            if all(not refines(p, q) and not refines(q, p) for q in chosen):
                chosen.append(p)
                yield from rec(chosen, i + 1)
                chosen.pop()

    yield from rec([], 0)


def top_label(n):
    return (partition_from_blocks([range(1, n + 1)]),)


def bottom_label(n):
    return (partition_from_blocks([[k] for k in range(1, n + 1)]),)


@dataclass(frozen=True)
class PSClass:
    """A classification cell: the labels whose convex sets contain it
    (below) and those that exclude it (above)."""
    name: str
    below: tuple
    above: tuple


def _n3_class_name(below_set):
    """Systematic names for the 20 three-subsystem classes; the trailing
    digit records which subsystem plays the special role."""
    bot = bottom_label(3)
    singles = {a: (parse_partition("%d|%s" % (a, "".join(
        str(x) for x in sorted({1, 2, 3} - {a})))),) for a in (1, 2, 3)}
    pairs = {}
    for a in (1, 2, 3):
        others = sorted({1, 2, 3} - {a})
        pairs[a] = reduce_label([singles[others[0]][0], singles[others[1]][0]])
    two_sep = reduce_label([singles[a][0] for a in (1, 2, 3)])
    in_bot = bot in below_set
    in_s = {a: singles[a] in below_set for a in (1, 2, 3)}
    in_p = {a: pairs[a] in below_set for a in (1, 2, 3)}
    in_t = two_sep in below_set
    ns = sum(in_s.values())
    np_ = sum(in_p.values())
    if in_bot:
        return "C3"
    if not in_t:
        return "C1"
    if ns == 3:
        return "C2.8"
    if ns == 2:
        a = next(a for a in (1, 2, 3) if not in_s[a])
        return "C2.7.%d" % a
    if ns == 1:
        a = next(a for a in (1, 2, 3) if in_s[a])
        return ("C2.6.%d" if in_p[a] else "C2.5.%d") % a
    if np_ == 3:
        return "C2.4"
    if np_ == 2:
        a = next(a for a in (1, 2, 3) if not in_p[a])
        return "C2.3.%d" % a
    if np_ == 1:
        a = next(a for a in (1, 2, 3) if in_p[a])
        return "C2.2.%d" % a
    return "C2.1"


def class_labels(n, include_vacuous=False):
    """All classification cells: up-closed subsets of the proper-label
    poset.  By default only cells lying inside the full state set are
    kept (the top label is a member); include_vacuous adds the rest."""
    if n > 3:
        raise ValueError("cell enumeration is only tractable for n <= 3")
    labels = list(proper_labels(n))
    top = top_label(n)
    cells = []
    for bits in range(2 ** len(labels)):
        below = [labels[i] for i in range(len(labels)) if bits >> i & 1]
        below_set = set(below)
        ok = True
        for i, lab in enumerate(labels):
            if lab in below_set:
                for other in labels:
                    if label_leq(lab, other) and other not in below_set:
                        ok = False
                        break
            if not ok:
                break
        if not ok:
            continue
        if top not in below_set:
            if not include_vacuous:
                continue
            if below_set:
                continue  # only the empty cell misses the top consistently
        above = tuple(l for l in labels if l not in below_set)
        below_t = tuple(l for l in labels if l in below_set)
        name = _n3_class_name(below_set) if (n == 3 and below_set) \
            else "empty" if not below_set else ""
        cells.append(PSClass(name=name, below=below_t, above=above))
    return cells


def cover_edges(labels):
    """Hasse covers of the label poset: pairs (i, j) with label i
    strictly below label j and nothing in between."""
    edges = []
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if i == j or not label_leq(a, b) or label_leq(b, a):
                continue
            direct = True
            for k, c in enumerate(labels):
                if k in (i, j):
                    continue
                if label_leq(a, c) and not label_leq(c, a) and \
                        label_leq(c, b) and not label_leq(b, c):
                    direct = False
                    break
            if direct:
                edges.append((i, j))
    return edges


def lattice_json(n):
    """Node strings and cover edges of the proper-label poset."""
    labels = list(proper_labels(n))
    return {
        "n": n,
        "nodes": [format_label(lab) for lab in labels],
        "edges": [[i, j] for i, j in cover_edges(labels)],
    }
