"""Formal concept analysis: contexts, concept enumeration, Hasse diagrams,
and the structural invariants used to compare an original lattice with its
reduced counterpart.

Concepts are enumerated with NextClosure over attribute sets; rows are packed
into integer bitmasks so closures are a couple of integer ops each.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

EXACT_WIDTH_LIMIT = 512


@dataclass(frozen=True)
class Concept:
    extent: Tuple[int, ...]  # object indices, ascending
    intent: Tuple[int, ...]  # attribute indices, ascending


@dataclass
class FormalContext:
    objects: Tuple[str, ...]
    attributes: Tuple[str, ...]
    incidence: np.ndarray  # |O| x |A| bool

    def __init__(self, objects, attributes, incidence):
        objects = tuple(str(o) for o in objects)
        attributes = tuple(str(a) for a in attributes)
        if len(set(objects)) != len(objects):
            raise ValueError("object labels must be unique")
        if len(set(attributes)) != len(attributes):
            raise ValueError("attribute labels must be unique")
        incidence = np.asarray(incidence, dtype=bool)
        if incidence.shape != (len(objects), len(attributes)):
            raise ValueError(
                f"incidence shape {incidence.shape} does not match "
                f"{len(objects)} objects x {len(attributes)} attributes")
        self.objects = objects
        self.attributes = attributes
        self.incidence = incidence

    @property
    def shape(self):
        return self.incidence.shape

    def row_masks(self):
        """Each object's attribute set as an int bitmask (bit j = attr j)."""
        masks = []
        for row in self.incidence:
            m = 0
            for j in np.flatnonzero(row):
                m |= 1 << int(j)
            masks.append(m)
        return masks


@dataclass
class ConceptLattice:
    concepts: List[Concept]
    hasse_edges: List[Tuple[int, int]]  # (child, parent) covering pairs
    height: int
    width_interval: Tuple[int, int]
    degree_mean: float = 0.0
    degree_max: int = 0
    cycle_length: int = 0  # girth of the undirected diagram, 0 if acyclic


def _closure(att_mask, row_masks, full):
    """Close an attribute set: objects carrying all of it, then the
    attributes common to those objects (all attributes when none do)."""
    extent = [i for i, r in enumerate(row_masks) if r & att_mask == att_mask]
    intent = full
    for i in extent:
        intent &= row_masks[i]
    return extent, intent


def derive_concepts(ctx):
    """All formal concepts, ordered by extent size then extent tuple."""
    n_att = len(ctx.attributes)
    row_masks = ctx.row_masks()
    full = (1 << n_att) - 1
    concepts = []
    extent, intent = _closure(0, row_masks, full)
    concepts.append((tuple(extent), intent))
    current = intent
    while current != full:
        for i in range(n_att - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                continue
            below = bit - 1  # mask of attributes with index < i
            candidate = (current & below) | bit
            extent, closed = _closure(candidate, row_masks, full)
            # canonical test: nothing below i may appear that wasn't there
            if (closed & below) == (current & below):
                concepts.append((tuple(extent), closed))
                current = closed
                break
        else:  # pragma: no cover - full is always reached first
            break
    out = [Concept(extent, tuple(j for j in range(n_att) if intent >> j & 1))
           for extent, intent in concepts]
    out.sort(key=lambda c: (len(c.extent), c.extent))
    return out


def hasse_edges(concepts):
    """Covering pairs (child, parent) of the extent-inclusion order."""
    n = len(concepts)
    ext_masks = []
    for c in concepts:
        m = 0
        for i in c.extent:
            m |= 1 << int(i)
        ext_masks.append(m)
    less = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and ext_masks[i] != ext_masks[j] \
                    and ext_masks[i] & ext_masks[j] == ext_masks[i]:
                less[i, j] = True
    if n > 1:
        via = (less.astype(np.int32) @ less.astype(np.int32)) > 0
        cover = less & ~via
    else:
        cover = less
    return [(i, j) for i in range(n) for j in range(n) if cover[i, j]]


def _transitive_closure(n, edges):
    reach = np.zeros((n, n), dtype=bool)
    for a, b in edges:
        reach[a, b] = True
    while True:
        step = reach | ((reach.astype(np.int32) @ reach.astype(np.int32)) > 0)
        if np.array_equal(step, reach):
            return reach
        reach = step


def _girth(n, edges):
    """Shortest cycle length of the undirected diagram (0 when acyclic)."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    best = 0
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        while queue:
            u = queue.pop(0)
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    cycle = dist[u] + dist[v] + 1
                    if best == 0 or cycle < best:
                        best = cycle
    return best


def invariants(lattice_or_concepts, edges=None):
    """Size, edge count, height, and width interval of a lattice.

    Height counts nodes on a longest chain. The width interval's lower end is
    the largest level of a longest-path level decomposition (levels are
    antichains); its upper end is the exact maximum antichain via a minimum
    chain cover, or the same bound again for very large lattices.
    """
    if isinstance(lattice_or_concepts, ConceptLattice):
        concepts = lattice_or_concepts.concepts
        edges = lattice_or_concepts.hasse_edges
    else:
        concepts = lattice_or_concepts
        if edges is None:
            edges = hasse_edges(concepts)
    n = len(concepts)
    if n == 0:
        return {"n_concepts": 0, "n_edges": 0, "height": 0, "width_interval": (0, 0)}
    children = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in edges:
        children[a].append(b)
        indeg[b] += 1
    # longest chain ending at each node, traversed in extent-size order
    order = sorted(range(n), key=lambda i: len(concepts[i].extent))
    level = [1] * n
    for u in order:
        for v in children[u]:
            level[v] = max(level[v], level[u] + 1)
    height = max(level)
    counts = np.bincount(np.asarray(level), minlength=height + 1)
    level_bound = int(counts.max())
    if n <= EXACT_WIDTH_LIMIT:
        reach = _transitive_closure(n, edges)
        if reach.any():
            match = maximum_bipartite_matching(csr_matrix(reach), perm_type="column")
            matched = int(np.count_nonzero(match != -1))
        else:
            matched = 0
        width_exact = n - matched
    else:
        width_exact = level_bound
    return {"n_concepts": n, "n_edges": len(edges), "height": height,
            "width_interval": (level_bound, width_exact)}


def build_lattice(ctx):
    """Concepts, covering edges, and invariants for one context."""
    concepts = derive_concepts(ctx)
    edges = hasse_edges(concepts)
    inv = invariants(concepts, edges)
    n = len(concepts)
    degree = np.zeros(n, dtype=int)
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    return ConceptLattice(
        concepts=concepts, hasse_edges=edges, height=inv["height"],
        width_interval=inv["width_interval"],
        degree_mean=float(degree.mean()) if n else 0.0,
        degree_max=int(degree.max()) if n else 0,
        cycle_length=_girth(n, edges))


def _ratio(a, b):
    lo, hi = (a, b) if a <= b else (b, a)
    if hi == 0:
        return 1.0  # both zero
    if lo == 0:
        return 0.0
    return lo / hi


def lattice_quality(orig, reduced):
    """Structural agreement in [0, 1]: the mean of min/max ratios of concept
    count, edge count, height, and width-interval midpoint."""
    inv_o = invariants(orig)
    inv_r = invariants(reduced)
    mid_o = sum(inv_o["width_interval"]) / 2.0
    mid_r = sum(inv_r["width_interval"]) / 2.0
    ratios = [
        _ratio(inv_o["n_concepts"], inv_r["n_concepts"]),
        _ratio(inv_o["n_edges"], inv_r["n_edges"]),
        _ratio(inv_o["height"], inv_r["height"]),
        _ratio(mid_o, mid_r),
    ]
    return float(np.mean(ratios))


# ----------------------------------------------------------------- CXT I/O

def write_cxt(ctx, path=None, name="context"):
    """Serialize in the Burmeister text layout; returns the text, optionally
    writing it to path."""
    lines = ["B", str(name), str(len(ctx.objects)), str(len(ctx.attributes))]
    lines.extend(ctx.objects)
    lines.extend(ctx.attributes)
    for row in ctx.incidence:
        lines.append("".join("X" if v else "." for v in row))
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def read_cxt(source):
    """Parse the Burmeister layout from a path or literal text. A single
    blank line after the counts is tolerated."""
    try:
        is_path = isinstance(source, Path) or (
            "\n" not in str(source) and Path(str(source)).exists())
    except OSError:
        is_path = False
    if is_path:
        text = Path(source).read_text()
        origin = str(source)
    else:
        text = str(source)
        origin = "<string>"
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise ValueError(f"{origin}:1: expected header 'B'")
    if len(lines) < 4:
        raise ValueError(f"{origin}: truncated header")
    name = lines[1]
    try:
        n_obj = int(lines[2].strip())
        n_att = int(lines[3].strip())
    except ValueError:
        raise ValueError(f"{origin}:3: object/attribute counts must be integers") from None
    pos = 4
    if pos < len(lines) and lines[pos].strip() == "":
        pos += 1
    need = n_obj + n_att + n_obj
    if len(lines) - pos < need:
        raise ValueError(f"{origin}: expected {need} more lines after the header")
    objects = [lines[pos + i] for i in range(n_obj)]
    pos += n_obj
    attributes = [lines[pos + i] for i in range(n_att)]
    pos += n_att
    rows = []
    for i in range(n_obj):
        raw = lines[pos + i].strip()
        if len(raw) != n_att or any(c not in ".Xx" for c in raw):
            raise ValueError(
                f"{origin}:{pos + i + 1}: incidence row must be {n_att} of '.'/'X'")
        rows.append([c in "Xx" for c in raw])
    incidence = np.asarray(rows, dtype=bool) if rows else np.zeros((0, n_att), dtype=bool)
    ctx = FormalContext(objects, attributes, incidence)
    ctx.name = name
    return ctx


def lattice_to_json(ctx, lattice=None):
    """Lattice as a JSON-ready dict: labeled concepts, edges, invariants."""
    if lattice is None:
        lattice = build_lattice(ctx)
    inv = invariants(lattice)
    return {
        "concepts": [
            {"extent": [ctx.objects[i] for i in c.extent],
             "intent": [ctx.attributes[j] for j in c.intent]}
            for c in lattice.concepts
        ],
        "edges": [list(e) for e in lattice.hasse_edges],
        "invariants": {
            "n_concepts": inv["n_concepts"],
            "n_edges": inv["n_edges"],
            "height": inv["height"],
            "width_interval": list(inv["width_interval"]),
            "degree_mean": lattice.degree_mean,
            "degree_max": lattice.degree_max,
            "cycle_length": lattice.cycle_length,
        },
    }


def save_lattice_json(ctx, path, lattice=None):
    payload = lattice_to_json(ctx, lattice)
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return payload
