"""Constructive redrawing machinery.

The central construction redraws a one-vertex multigraph (all edges are
loops) from nothing but its rotation, so that even pairs do not cross,
odd pairs cross exactly once, and no loop crosses itself.  Around it sit
even-edge contraction and its inverse vertex split, maximal even forests,
and the full pipeline that turns a drawing in which every edge is crossed
oddly by at most k others into a drawing with at most k crossings per
edge, at the cost of removing at most k(n-1) edges.

For loops at a single vertex the crossing parity of two loops is forced
by the rotation: the pair is odd iff the endings of one interleave with
the endings of the other.  ``interleaving_parity`` implements that
predicate directly and doubles as the independent test oracle for the
redrawing output.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .drawing import Drawing, Ending, ParitySketch, merge_disjoint
from .graphs import Multigraph


class ContractOddEdge(ValueError):
    pass


class ContractLoop(ValueError):
    pass


class InconsistentSplit(ValueError):
    pass


class NotKOddPlane(ValueError):
    pass


class OddPairPresent(ValueError):
    pass


# ---------------------------------------------------------------------------
# One-vertex sketches
# ---------------------------------------------------------------------------


def interleaving_parity(rotation: tuple[Ending, ...], e: int, f: int) -> int:
    """1 iff the endings of f alternate with the endings of e in the cyclic
    rotation (equivalently: f has exactly one ending on each side of e)."""
    if e == f:
        return 0
    pe = [i for i, t in enumerate(rotation) if t[0] == e]
    pf = [i for i, t in enumerate(rotation) if t[0] == f]
    if len(pe) != 2 or len(pf) != 2:
        raise ValueError("both edges must be loops of the rotation")
    a, b = pe
    return 1 if (a < pf[0] < b) != (a < pf[1] < b) else 0


@dataclass(frozen=True)
class OneVertexSketch:
    """Rotation of the 2L loop endings at a single vertex.

    ``reference_gap`` is the index of the ending immediately clockwise of
    the crossing-free reference point s; by default s sits right before
    the smallest ending token, which makes redrawing reproducible.  Loop
    orientations follow s: reading clockwise from s, the first occurrence
    of a loop is its "minus" ending.
    """

    vertex: int
    rotation: tuple[Ending, ...]
    reference_gap: int = field(default=-1)

    def __post_init__(self) -> None:
        counts: dict[int, set[int]] = {}
        for eid, end in self.rotation:
            counts.setdefault(eid, set()).add(end)
        for eid, ends in counts.items():
            if ends != {0, 1}:
                raise ValueError(f"loop {eid} must contribute endings 0 and 1 exactly once")
        if len(self.rotation) != 2 * len(counts):
            raise ValueError("rotation lists an ending twice")
        if self.reference_gap == -1 and self.rotation:
            object.__setattr__(self, "reference_gap", self.rotation.index(min(self.rotation)))
        if self.rotation and not 0 <= self.reference_gap < len(self.rotation):
            raise ValueError("reference gap out of range")
        if not self.rotation:
            object.__setattr__(self, "reference_gap", 0)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(sorted({eid for eid, _ in self.rotation}))

    def linear(self) -> tuple[Ending, ...]:
        g = self.reference_gap
        return self.rotation[g:] + self.rotation[:g]

    def parity(self, e: int, f: int) -> int:
        return interleaving_parity(self.rotation, e, f)

    def graph(self) -> Multigraph:
        v = self.vertex
        return Multigraph((v,), tuple((eid, (v, v)) for eid in self.loops))


def lemma1_redraw(sketch: OneVertexSketch) -> Drawing:
    """Redraw the loops so that the rotation is unchanged, even pairs do
    not cross, odd pairs cross exactly once, and nothing crosses itself.

    Works inductively: repeatedly take a loop minimal in the nesting
    order (no other loop has both endings strictly inside its span from
    the reference point), set it aside, redraw the rest, then reinsert it
    as an arc hugging the vertex that crosses exactly the endings lying
    strictly inside its span.  Each new crossing is the innermost one on
    the loop it crosses, and crossings along the inserted arc follow the
    rotation order of the crossed endings.
    """
    lin = sketch.linear()
    pos = {tok: i for i, tok in enumerate(lin)}
    span: dict[int, tuple[int, int]] = {}
    minus_end: dict[int, int] = {}
    for eid in sketch.loops:
        p0, p1 = sorted((pos[(eid, 0)], pos[(eid, 1)]))
        span[eid] = (p0, p1)
        minus_end[eid] = lin[p0][1]

    # Elimination order: repeatedly pick the nesting-minimal loop
    # (smallest edge id among minimal ones).
    remaining = set(sketch.loops)
    order: list[int] = []
    while remaining:
        minimal = []
        for e in remaining:
            a, b = span[e]
            if not any(a < span[f][0] and span[f][1] < b for f in remaining if f != e):
                minimal.append(e)
        pick = min(minimal)
        order.append(pick)
        remaining.remove(pick)

    # Insert in reverse elimination order; routes run minus -> plus.
    routes: dict[int, list] = {e: [] for e in sketch.loops}
    spins: dict[tuple, bool] = {}
    inserted: set[int] = set()
    for e in reversed(order):
        a, b = span[e]
        crossed = [lin[i] for i in range(a + 1, b) if lin[i][0] in inserted]
        hit_loops = [f for f, _ in crossed]
        assert len(set(hit_loops)) == len(hit_loops), "minimal loop crossed a loop twice"
        for f, f_end in crossed:
            key = ("x", e, f)
            routes[e].append(key)
            is_minus = f_end == minus_end[f]
            if is_minus:
                routes[f].insert(0, key)
            else:
                routes[f].append(key)
            spins[key] = (e < f) != is_minus
        inserted.add(e)

    # Convert minus->plus routes to the stored end0->end1 direction.
    flips: dict[tuple, int] = {k: 0 for k in spins}
    final_routes: dict[int, tuple] = {}
    for e in sketch.loops:
        if minus_end[e] == 0:
            final_routes[e] = tuple(routes[e])
        else:
            final_routes[e] = tuple(reversed(routes[e]))
            for key in routes[e]:
                flips[key] += 1
    final_spins = {k: s != bool(flips[k] % 2) for k, s in spins.items()}

    return Drawing.from_routes(
        sketch.graph(), {sketch.vertex: sketch.rotation}, final_routes, final_spins
    )


# ---------------------------------------------------------------------------
# Self-crossing removal
# ---------------------------------------------------------------------------


def remove_self_crossings(d: Drawing) -> Drawing:
    """Smooth away self-crossings one at a time.  At a self-crossing the
    reconnection that keeps the edge a single curve reverses the section
    of the route between the two visits; every crossing strictly inside
    that section has one of its passes reversed, which flips its spin.
    Crossing counts between distinct edges are exactly preserved and
    rotations at real vertices never change."""
    vrot, routes_t, spins = d.route_view()
    routes = {e: list(r) for e, r in routes_t.items()}
    spins = dict(spins)
    while True:
        target = None
        for e in sorted(routes):
            seen: dict = {}
            for i, c in enumerate(routes[e]):
                if c in seen:
                    target = (e, seen[c], i, c)
                    break
                seen[c] = i
            if target:
                break
        if target is None:
            break
        e, i, j, c = target
        mid = routes[e][i + 1 : j]
        for x in set(mid):
            spins[x] = not spins[x]
        routes[e] = routes[e][:i] + list(reversed(mid)) + routes[e][j + 1 :]
        del spins[c]
    return Drawing.from_routes(
        d.graph, vrot, {e: tuple(r) for e, r in routes.items()}, spins, validate=False
    )


# ---------------------------------------------------------------------------
# Contraction and vertex splitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitRecord:
    """How a merged vertex splits back into the two it came from."""

    merged: int
    u: int
    v: int
    edge: int
    edge_end_at_u: int
    u_block: tuple[Ending, ...]
    v_block: tuple[Ending, ...]


def _rotate_to_front(rot: tuple[Ending, ...], token: Ending) -> tuple[Ending, ...]:
    i = rot.index(token)
    return rot[i:] + rot[:i]


def contract_even_edge(sk: ParitySketch, eid: int, target: int) -> tuple[ParitySketch, SplitRecord]:
    """Slide one endpoint of an even edge along it onto the other.

    The rotations concatenate: if the cyclic orders were (e, e1..ea) at
    the kept endpoint and (e, f1..fb) at the absorbed one, the merged
    vertex reads e1..ea f1..fb.  The parity relation on the surviving
    edges is exactly unchanged.
    """
    u, v = sk.endpoints(eid)
    if u == v:
        raise ContractLoop(f"edge {eid} is a loop")
    if not sk.is_even_edge(eid):
        raise ContractOddEdge(f"edge {eid} is in an odd pair")
    if target == u:
        other = v
        end_at_u = 0
    elif target == v:
        other = u
        end_at_u = 1
    else:
        raise ValueError(f"target {target} is not an endpoint of edge {eid}")

    rot_u = _rotate_to_front(sk.vertex_rotation(target), (eid, end_at_u))[1:]
    rot_v = _rotate_to_front(sk.vertex_rotation(other), (eid, 1 - end_at_u))[1:]
    merged = rot_u + rot_v

    rotation = []
    for w, endings in sk.rotation:
        if w == target:
            rotation.append((w, merged))
        elif w != other:
            rotation.append((w, endings))
    edges = []
    for g, (a, b) in sk.edges:
        if g == eid:
            continue
        edges.append((g, (target if a == other else a, target if b == other else b)))
    sk2 = ParitySketch(tuple(sorted(rotation)), sk.odd_pairs, tuple(sorted(edges)))
    rec = SplitRecord(target, target, other, eid, end_at_u, rot_u, rot_v)
    return sk2, rec


def split_vertex(d: Drawing, rec: SplitRecord) -> Drawing:
    """Inverse of contraction on a concrete drawing: pull the merged
    vertex apart into two close vertices joined by the restored edge,
    which is drawn without crossings."""
    if rec.merged not in d.graph.vertices:
        raise InconsistentSplit(f"vertex {rec.merged} not present")
    if rec.v in d.graph.vertices and rec.v != rec.merged:
        raise InconsistentSplit(f"vertex id {rec.v} already in use")
    current = d.vertex_endings(rec.merged)
    target_seq = rec.u_block + rec.v_block
    if len(current) != len(target_seq):
        raise InconsistentSplit("rotation size does not match the record")
    aligned = None
    for r in range(max(1, len(current))):
        if current[r:] + current[:r] == target_seq:
            aligned = True
            break
    if not aligned:
        raise InconsistentSplit("record blocks are not contiguous in the rotation")

    vrot, routes, spins = d.route_view()
    u, v = rec.u, rec.v
    end_u = rec.edge_end_at_u
    vrot = dict(vrot)
    vrot[u] = ((rec.edge, end_u),) + rec.u_block
    vrot[v] = ((rec.edge, 1 - end_u),) + rec.v_block

    moved = {(g, end) for g, end in rec.v_block}
    new_edges = []
    for g, (a, b) in d.graph.edges:
        na = v if (g, 0) in moved else a
        nb = v if (g, 1) in moved else b
        new_edges.append((g, (na, nb)))
    uv = (u, v) if end_u == 0 else (v, u)
    new_edges.append((rec.edge, uv))
    g2 = Multigraph(tuple(sorted(set(d.graph.vertices) | {v})), tuple(sorted(new_edges)))

    routes = dict(routes)
    routes[rec.edge] = ()
    return Drawing.from_routes(g2, vrot, routes, spins, validate=False)


# ---------------------------------------------------------------------------
# Maximal even forests and the main pipeline
# ---------------------------------------------------------------------------


def max_even_forest(d: Drawing) -> frozenset[int]:
    """Greedy maximal forest whose edges pairwise cross evenly.

    After the single pass in edge-id order, every non-forest edge whose
    endpoints lie in different forest components crosses some forest edge
    an odd number of times (otherwise it would have been taken when
    examined), which is the maximality the pipeline relies on.
    """
    odd = d.odd_pairs()
    parent = {v: v for v in d.graph.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest: list[int] = []
    for eid, (u, v) in d.graph.edges:
        if u == v:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        if any((min(eid, f), max(eid, f)) in odd for f in forest):
            continue
        forest.append(eid)
        parent[ru] = rv
    return frozenset(forest)


@dataclass(frozen=True)
class PipelineTrace:
    """Everything the redrawing pipeline produced on the way to the k-plane
    drawing: the even forest, the removed edges, the drawing after removal
    (g1), per-component contracted sketches (g2) with their split stacks,
    the one-vertex redrawings (g3), and the final drawing (g4)."""

    input: Drawing
    k: int
    forest: frozenset[int]
    removed: frozenset[int]
    g1: Drawing
    components: tuple[tuple[int, ...], ...]
    component_edge_counts: tuple[int, ...]
    sketches: tuple[OneVertexSketch, ...]
    split_stacks: tuple[tuple[SplitRecord, ...], ...]
    g3: tuple[Drawing, ...]
    g4: Drawing


def theorem2_transform(d: Drawing, k: int) -> PipelineTrace:
    """Turn a drawing whose edges are each crossed oddly by at most k
    others into a drawing of a large subgraph with at most k crossings per
    edge: drop every edge crossing the even forest oddly, contract each
    forest tree on the parity sketch, redraw the one-vertex residue, and
    split the contractions back open.  Pair crossing counts of the output
    equal the input crossing parities."""
    if k < 0 or not d.is_k_odd_plane(k):
        raise NotKOddPlane(f"drawing is not {k}-odd-plane")

    sk = d.parity_sketch()
    forest = max_even_forest(d)
    removed = frozenset(
        g
        for g in d.graph.edge_ids()
        if g not in forest and any(sk.parity(g, f) for f in forest)
    )
    g1 = d.remove_edges(removed)

    # Forest components partition the vertices; removal confined every
    # surviving edge to a single component.
    comp_of: dict[int, int] = {}
    comps: list[tuple[int, ...]] = []
    parent = {v: v for v in d.graph.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in sorted(forest):
        u, v = d.graph.endpoints(eid)
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in d.graph.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = [tuple(sorted(g)) for g in sorted(groups.values())]
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    n_removed_bound = k * (d.graph.n - len(comps))
    assert len(removed) <= n_removed_bound, (
        f"removed {len(removed)} edges, proof allows {n_removed_bound}"
    )
    for eid, (u, v) in g1.graph.edges:
        assert comp_of[u] == comp_of[v], "surviving edge straddles forest components"

    sketches: list[OneVertexSketch] = []
    stacks: list[tuple[SplitRecord, ...]] = []
    g3: list[Drawing] = []
    g4_parts: list[Drawing] = []
    for comp in comps:
        part = g1.induced_subdrawing(set(comp))
        sub_sk = part.parity_sketch()
        tree = sorted(f for f in forest if d.graph.endpoints(f)[0] in comp)

        root = comp[0]
        # BFS order over the tree, child contracted into the merged parent.
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in comp}
        for f in tree:
            a, b = part.graph.endpoints(f)
            adj[a].append((b, f))
            adj[b].append((a, f))
        seen = {root}
        frontier = [root]
        bfs_edges: list[tuple[int, int]] = []
        while frontier:
            nxt: list[int] = []
            for p in frontier:
                for child, f in sorted(adj[p]):
                    if child not in seen:
                        seen.add(child)
                        bfs_edges.append((f, child))
                        nxt.append(child)
            frontier = nxt
        assert len(bfs_edges) == len(tree), "forest component is not a tree"

        stack: list[SplitRecord] = []
        for f, child in bfs_edges:
            a, b = sub_sk.endpoints(f)
            target = a if b == child else b
            sub_sk, rec = contract_even_edge(sub_sk, f, target)
            stack.append(rec)
        assert sub_sk.vertices() == (root,)

        rotation = sub_sk.vertex_rotation(root)
        sketch = OneVertexSketch(root, rotation)
        for e in sketch.loops:
            for f in sketch.loops:
                if e < f:
                    assert sketch.parity(e, f) == sub_sk.parity(e, f), (
                        "contracted rotation parity disagrees with the carried matrix"
                    )
        redrawn = lemma1_redraw(sketch)
        sketches.append(sketch)
        stacks.append(tuple(stack))
        g3.append(redrawn)

        restored = redrawn
        for rec in reversed(stack):
            restored = split_vertex(restored, rec)
        g4_parts.append(restored)

    g4 = merge_disjoint(g4_parts)
    assert g4.graph == g1.graph, "pipeline changed the underlying graph"
    return PipelineTrace(
        input=d,
        k=k,
        forest=forest,
        removed=removed,
        g1=g1,
        components=tuple(comps),
        component_edge_counts=tuple(
            sum(1 for _, (u, v) in g1.graph.edges if comp_of[u] == i) for i in range(len(comps))
        ),
        sketches=tuple(sketches),
        split_stacks=tuple(stacks),
        g3=tuple(g3),
        g4=g4,
    )


def hanani_tutte_embed(d: Drawing) -> Drawing:
    """Weak Hanani-Tutte as an algorithm: a drawing in which every pair of
    edges crosses evenly is redrawn without any crossings at all."""
    if d.odd_pairs():
        raise OddPairPresent("drawing has an odd pair")
    trace = theorem2_transform(d, 0)
    assert not trace.removed
    return trace.g4
