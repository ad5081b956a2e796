"""Lexicon-driven reduction of formal contexts.

Rows/columns whose labels are synonymous ("similar") or share a nearby common
hypernym ("related") are merged pairwise, attributes first, then objects, one
pass per iteration, until nothing merges or the reduced lattice drifts too
far from the original. The taxonomy is a plain hypernym DAG plus synonym
groups, so any lexical resource exported to the TSV format plugs in.
"""

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Set

import numpy as np

from .fca import FormalContext, build_lattice, lattice_quality

SIMILAR = "similar"
RELATED = "related"
UNRELATED = "unrelated"


@dataclass
class ReduceParams:
    hypernym_depth: int = 4
    hyponym_depth: int = 4
    max_iterations: int = 30
    quality_floor: float = 0.8

    def __post_init__(self):
        if self.hypernym_depth < 1 or self.hyponym_depth < 1:
            raise ValueError("depths must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 <= self.quality_floor <= 1.0:
            raise ValueError("quality_floor must lie in [0, 1]")


class MergeEvent(NamedTuple):
    iteration: int
    axis: str
    label_a: str
    label_b: str
    new_label: str
    kind: str


@dataclass
class Taxonomy:
    parent_map: Dict[str, Set[str]] = field(default_factory=dict)
    synsets: List[Set[str]] = field(default_factory=list)

    def __post_init__(self):
        self.parent_map = {str(k): {str(p) for p in v}
                           for k, v in self.parent_map.items()}
        self.synsets = _union_groups([{str(t) for t in s} for s in self.synsets])
        self._synset_of = {}
        for idx, group in enumerate(self.synsets):
            for term in group:
                self._synset_of[term] = idx
        self._check_acyclic()

    def _check_acyclic(self):
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {}

        def visit(node):
            color[node] = GRAY
            for p in self.parent_map.get(node, ()):
                c = color.get(p, WHITE)
                if c == GRAY:
                    raise ValueError(f"taxonomy cycle through {p!r}")
                if c == WHITE:
                    visit(p)
            color[node] = BLACK

        for term in list(self.parent_map):
            if color.get(term, WHITE) == WHITE:
                visit(term)

    def synset(self, term):
        idx = self._synset_of.get(str(term))
        return self.synsets[idx] if idx is not None else {str(term)}

    def shares_synset(self, a, b):
        ia = self._synset_of.get(str(a))
        return ia is not None and ia == self._synset_of.get(str(b))

    def ancestors_within(self, term, depth):
        """term -> minimal upward distance, for every ancestor within depth.

        Synonym hops are free, so a whole synset enters at the distance of
        its first-reached member; the term itself is at distance 0.
        """
        dist = {}
        queue = deque([(str(term), 0)])
        while queue:
            node, d = queue.popleft()
            if node in dist and dist[node] <= d:
                continue
            dist[node] = d
            for mate in self.synset(node):
                if mate not in dist or dist[mate] > d:
                    queue.appendleft((mate, d))
            if d < depth:
                for parent in self.parent_map.get(node, ()):
                    if parent not in dist or dist[parent] > d + 1:
                        queue.append((parent, d + 1))
        return dist


def _union_groups(groups):
    """Merge overlapping term groups into disjoint synsets."""
    merged: List[Set[str]] = []
    for g in groups:
        g = set(g)
        absorbed = [m for m in merged if m & g]
        for m in absorbed:
            g |= m
            merged.remove(m)
        if g:
            merged.append(g)
    return merged


def load_taxonomy(path):
    """Read the tab-separated lexicon: `child<TAB>parent` hypernym edges and
    `syn<TAB>term<TAB>term...` synonym groups ('syn' is reserved). Blank
    lines and '#' comments are ignored."""
    path = Path(path)
    parent_map: Dict[str, Set[str]] = {}
    synsets: List[Set[str]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        if parts[0] == "syn":
            terms = [p.strip() for p in parts[1:] if p.strip()]
            if len(terms) < 2:
                raise ValueError(f"{path}:{lineno}: synonym line needs two or more terms")
            synsets.append(set(terms))
        elif len(parts) == 2 and parts[0].strip() and parts[1].strip():
            parent_map.setdefault(parts[0].strip(), set()).add(parts[1].strip())
        else:
            raise ValueError(f"{path}:{lineno}: expected 'child<TAB>parent' "
                             "or 'syn<TAB>term<TAB>term...'")
    return Taxonomy(parent_map=parent_map, synsets=synsets)


def enumerate_pairs(labels):
    """All unordered label pairs, (i, j) with i < j, in index order."""
    labels = list(labels)
    return [(labels[i], labels[j])
            for i in range(len(labels)) for j in range(i + 1, len(labels))]


def _two_cone(tax, a, b, hyper, hypo):
    """Common ancestors visible from a within hyper steps and from b within
    hypo steps, as {ancestor: (dist_a, dist_b)}."""
    up_a = tax.ancestors_within(a, hyper)
    up_b = tax.ancestors_within(b, hypo)
    return {c: (up_a[c], up_b[c]) for c in up_a.keys() & up_b.keys()}


def classify_pair(a, b, tax, params):
    """Three-way relationship of two terms: similar (identical or
    synonymous), related (common hypernym within the configured cones, both
    ways), else unrelated."""
    a, b = str(a), str(b)
    if a == b or tax.shares_synset(a, b):
        return SIMILAR
    if common_hypernym(a, b, tax, params) is not None:
        return RELATED
    return UNRELATED


def common_hypernym(a, b, tax, params) -> Optional[str]:
    """Nearest common hypernym under the symmetric cone rule, or None.

    The pair must see a shared ancestor within hypernym_depth of one side and
    hyponym_depth of the other, in both orientations; among the qualifying
    ancestors the closest (by summed distance, then distance from a, then
    label) wins. The terms themselves qualify (distance 0) when one lies in
    the other's hypernym cone.
    """
    a, b = str(a), str(b)
    forward = _two_cone(tax, a, b, params.hypernym_depth, params.hyponym_depth)
    backward = _two_cone(tax, b, a, params.hypernym_depth, params.hyponym_depth)
    if not forward or not backward:
        return None
    candidates = set(forward) | {c for c in backward}
    best = None
    for c in candidates:
        da_db = forward.get(c)
        db_da = backward.get(c)
        da = da_db[0] if da_db else db_da[1]
        db = da_db[1] if da_db else db_da[0]
        key = (da + db, da, c)
        if best is None or key < best:
            best = key
    return best[2]


def merge_pair(ctx, axis, i, j, new_label):
    """Replace entries i and j on an axis with one entry at min(i, j) whose
    incidence is their bitwise OR."""
    if axis not in ("object", "attribute"):
        raise ValueError("axis must be 'object' or 'attribute'")
    i, j = int(i), int(j)
    size = len(ctx.objects) if axis == "object" else len(ctx.attributes)
    if i == j:
        raise ValueError("cannot merge an entry with itself")
    if not (0 <= i < size and 0 <= j < size):
        raise ValueError(f"{axis} index out of range (size {size})")
    lo, hi = min(i, j), max(i, j)
    if axis == "object":
        merged_row = ctx.incidence[i] | ctx.incidence[j]
        incidence = np.delete(ctx.incidence, hi, axis=0)
        incidence[lo] = merged_row
        objects = list(ctx.objects)
        del objects[hi]
        objects[lo] = str(new_label)
        return FormalContext(objects, ctx.attributes, incidence)
    merged_col = ctx.incidence[:, i] | ctx.incidence[:, j]
    incidence = np.delete(ctx.incidence, hi, axis=1)
    incidence[:, lo] = merged_col
    attributes = list(ctx.attributes)
    del attributes[hi]
    attributes[lo] = str(new_label)
    return FormalContext(ctx.objects, attributes, incidence)


def _merge_labels(ctx, axis, label_a, label_b, new_label):
    """Merge two labeled entries; if the target label already exists
    elsewhere, both fold into that holder."""
    def labels():
        return ctx.objects if axis == "object" else ctx.attributes

    def idx(lbl):
        return labels().index(lbl)

    existing = [lbl for lbl in labels() if lbl == new_label and lbl not in (label_a, label_b)]
    if existing:
        ctx = merge_pair(ctx, axis, idx(new_label), idx(label_a), new_label)
        ctx = merge_pair(ctx, axis, idx(new_label), idx(label_b), new_label)
    else:
        ctx = merge_pair(ctx, axis, idx(label_a), idx(label_b), new_label)
    return ctx


def reduce_context(ctx, tax, params, rng=None):
    """Iteratively merge similar/related labels until a fixpoint, a lattice
    quality below the floor, or the iteration cap; returns the reduced
    context and the merge trace.

    ``rng`` is accepted for interface stability; the procedure is currently
    fully deterministic and never draws from it.
    """
    if len(ctx.objects) == 0 or len(ctx.attributes) == 0:
        raise ValueError("cannot reduce an empty context")
    original_lattice = build_lattice(ctx)
    trace: List[MergeEvent] = []
    for iteration in range(1, params.max_iterations + 1):
        merges_before = len(trace)
        for axis in ("attribute", "object"):
            snapshot = list(ctx.attributes if axis == "attribute" else ctx.objects)
            consumed: Set[str] = set()
            for label_a, label_b in enumerate_pairs(snapshot):
                if label_a in consumed or label_b in consumed:
                    continue
                current = ctx.attributes if axis == "attribute" else ctx.objects
                if label_a not in current or label_b not in current:
                    continue
                kind = classify_pair(label_a, label_b, tax, params)
                if kind == UNRELATED:
                    continue
                hyper = common_hypernym(label_a, label_b, tax, params)
                if kind == RELATED:
                    new_label = hyper
                else:
                    new_label = hyper if hyper is not None else min(label_a, label_b)
                ctx = _merge_labels(ctx, axis, label_a, label_b, new_label)
                trace.append(MergeEvent(iteration, axis, label_a, label_b,
                                        new_label, kind))
                consumed.update((label_a, label_b, new_label))
        if len(trace) == merges_before:
            break
        quality = lattice_quality(original_lattice, build_lattice(ctx))
        if quality < params.quality_floor:
            break
    return ctx, trace
