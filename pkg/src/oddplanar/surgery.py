"""Face-respecting surgery on drawings.

Everything here modifies a drawing through its faces, which keeps the
result a sphere map by construction: inserting a vertex inside a face,
routing a new edge along a path in the dual (crossing one segment per
step), and the parity-preserving "double crossing" move that pokes one
edge across another and back.

Corners are addressed by darts: the corner of a face at a node sits
immediately counterclockwise of the face-cycle dart leaving that node,
so "insert before dart d" places a new ending into exactly that corner.

Spin computation is shared: every new crossing is described locally by
the clockwise order of (in, out) darts of the two passes relative to
their travel directions, then translated to the stored end0->end1
convention of :meth:`Drawing.from_routes`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .drawing import Drawing, Ending
from .graphs import Multigraph


def _raw_view(d: Drawing):
    """Route view with vertex rotations positionally aligned to the dart
    rotations (unnormalized), so corner indices can be used directly."""
    token = d._ending_of_dart()
    vrot = {v: [token[x] for x in d.rotation[v]] for v in d.graph.vertices}
    routes = {e: list(d.edge_route(e)) for e in d.graph.edge_ids()}
    spins = {c: d.crossing_spin(c) for c in d.crossing_nodes()}
    return vrot, routes, spins


def _spin_for(local_clockwise: tuple[str, str, str, str], a_eid: int, b_eid: int,
              a_forward: bool, b_forward: bool) -> bool:
    """Translate a local clockwise pattern over symbols A_in/A_out/B_in/B_out
    (relative to travel directions) into the stored spin bit.

    ``a_forward`` says whether A's travel direction agrees with its edge's
    end0->end1 direction; same for B.  The two edges must be distinct.
    """
    if a_eid == b_eid:
        raise ValueError("local spin rule needs two distinct edges")

    def rename(sym: str) -> str:
        letter, side = sym.split("_")
        fwd = a_forward if letter == "A" else b_forward
        if not fwd:
            side = "in" if side == "out" else "out"
        return f"{letter}_{side}"

    pat = tuple(rename(s) for s in local_clockwise)
    p1 = "A" if a_eid < b_eid else "B"
    p2 = "B" if p1 == "A" else "A"
    i = pat.index(f"{p1}_in")
    succ = pat[(i + 1) % 4]
    if succ == f"{p2}_in":
        return True
    if succ == f"{p2}_out":
        return False
    raise AssertionError("pattern does not alternate")


def _segment_of_dart(d: Drawing) -> dict[int, tuple[int, int, bool]]:
    """dart -> (edge, segment index, True if dart points along end0->end1)."""
    out: dict[int, tuple[int, int, bool]] = {}
    for eid, p in d.edge_paths.items():
        for q in range(len(p) // 2):
            out[p[2 * q]] = (eid, q, True)
            out[p[2 * q + 1]] = (eid, q, False)
    return out


def insert_vertex_in_face(d: Drawing, face: tuple[int, ...], corner_positions: list[int],
                          new_vid: int, first_eid: int) -> Drawing:
    """Place a new vertex inside the face and join it, crossing-free, to
    the real vertices at the chosen face corners.  New edges are numbered
    from ``first_eid`` in ascending corner order and run (corner, new)."""
    if new_vid in d.graph.vertices:
        raise ValueError(f"vertex id {new_vid} already in use")
    vrot, routes, spins = _raw_view(d)
    corner_nodes = []
    for i in corner_positions:
        x = d.dart_node(face[i])
        if x not in vrot:
            raise ValueError("face corner is not a real vertex")
        corner_nodes.append(x)
    if len(set(corner_nodes)) != len(corner_nodes):
        raise ValueError("corner nodes must be distinct")

    new_edges = []
    w_tokens: list[Ending] = []
    for rank, i in enumerate(sorted(corner_positions)):
        eid = first_eid + rank
        x = d.dart_node(face[i])
        j = d.rotation[x].index(face[i])
        vrot[x].insert(j, (eid, 0))
        new_edges.append((eid, (x, new_vid)))
        routes[eid] = []
    # Clockwise around the new vertex = reverse of the boundary walk.
    for i in sorted(corner_positions, reverse=True):
        rank = sorted(corner_positions).index(i)
        w_tokens.append((first_eid + rank, 1))

    g2 = Multigraph(d.graph.vertices + (new_vid,), d.graph.edges + tuple(new_edges))
    vrot[new_vid] = w_tokens
    return Drawing.from_routes(
        g2,
        {v: tuple(r) for v, r in vrot.items()},
        {e: tuple(r) for e, r in routes.items()},
        spins,
        validate=False,
    )


def route_edge(d: Drawing, eid: int, u: int, v: int,
               u_corner: int | None, v_corner: int | None,
               crossed_darts: list[int]) -> Drawing:
    """Insert edge ``eid`` from u to v along an explicit dual path.

    ``crossed_darts`` lists, in travel order, the dart of each segment the
    new edge crosses; the edge leaves the face on that dart's left and
    enters the face on its right.  Corners are "insert before this dart"
    at u and v (None only for an isolated endpoint).  Each segment may be
    crossed at most once per call.
    """
    if u == v:
        raise ValueError("route_edge does not insert loops")
    if eid in d.graph.edge_ids():
        raise ValueError(f"edge id {eid} already in use")
    vrot, routes, spins = _raw_view(d)
    seg_of = _segment_of_dart(d)
    segs = set()
    for x in crossed_darts:
        key = frozenset((x, d.theta[x]))
        if key in segs:
            raise ValueError("dual path crosses a segment twice")
        segs.add(key)

    # New crossings, travel order.
    inserts: dict[tuple[int, int], object] = {}  # (edge, segment) -> key
    new_route = []
    for i, x in enumerate(crossed_darts):
        g, q, fwd = seg_of[x]
        key = ("new", i)
        new_route.append(key)
        inserts[(g, q)] = key
        # Local clockwise picture: crossing from the dart's left side,
        # B = crossed dart's travel direction: (A_in, B_out, A_out, B_in).
        spins[key] = _spin_for(("A_in", "B_out", "A_out", "B_in"), eid, g, True, fwd)

    # Splice new crossings into the crossed edges' routes.
    by_edge: dict[int, list[tuple[int, object]]] = {}
    for (g, q), key in inserts.items():
        by_edge.setdefault(g, []).append((q, key))
    for g, items in by_edge.items():
        old = routes[g]
        out: list = []
        at: dict[int, object] = dict(items)
        for q in range(len(old) + 1):
            if q in at:
                out.append(at[q])
            if q < len(old):
                out.append(old[q])
        routes[g] = out

    for end, vert, corner in ((0, u, u_corner), (1, v, v_corner)):
        if corner is None:
            if d.rotation[vert]:
                raise ValueError(f"vertex {vert} needs an explicit corner")
            vrot[vert] = [(eid, end)]
        else:
            if d.dart_node(corner) != vert:
                raise ValueError("corner dart not at its endpoint")
            j = d.rotation[vert].index(corner)
            vrot[vert].insert(j, (eid, end))

    g2 = Multigraph(d.graph.vertices, d.graph.edges + ((eid, (u, v)),))
    routes[eid] = new_route
    return Drawing.from_routes(
        g2,
        {w: tuple(r) for w, r in vrot.items()},
        {e: tuple(r) for e, r in routes.items()},
        spins,
        validate=False,
    )


def insert_edge_shortest(d: Drawing, eid: int, u: int, v: int,
                         rng: random.Random | None = None) -> Drawing:
    """Insert the edge along a fewest-crossings dual path (breadth-first
    search over faces, deterministic tie-breaks; ``rng`` shuffles
    exploration order for seeded variety).  Endpoints in different map
    components are bridged without crossings."""
    if u == v:
        raise ValueError("cannot insert a loop")
    faces = d.faces()
    face_of_dart: dict[int, int] = {}
    for i, f in enumerate(faces):
        for x in f:
            face_of_dart[x] = i

    def corners(vert: int) -> list[int]:
        return list(d.rotation[vert])

    u_corners = corners(u)
    v_corners = corners(v)
    if not u_corners or not v_corners:
        # An isolated endpoint floats freely; bridge with no crossings.
        uc = u_corners[0] if u_corners else None
        vc = v_corners[0] if v_corners else None
        return route_edge(d, eid, u, v, uc, vc, [])

    v_faces = {face_of_dart[x]: x for x in reversed(v_corners)}
    start = {}
    for x in u_corners:
        start.setdefault(face_of_dart[x], x)
    # BFS over faces.
    parent: dict[int, tuple[int, int] | None] = {}
    order = sorted(start)
    if rng is not None:
        rng.shuffle(order)
    queue = list(order)
    for f in queue:
        parent[f] = None
    goal = None
    for f in queue:
        if f in v_faces:
            goal = f
            break
    while goal is None and queue:
        nxt: list[int] = []
        for f in queue:
            darts = list(faces[f])
            if rng is not None:
                rng.shuffle(darts)
            for x in darts:
                g = face_of_dart[d.theta[x]]
                if g in parent:
                    continue
                parent[g] = (f, x)
                nxt.append(g)
                if g in v_faces:
                    goal = g
                    break
            if goal is not None:
                break
        queue = nxt
    if goal is None:
        # Different map components with no shared face: plain bridge.
        return route_edge(d, eid, u, v, u_corners[0], v_corners[0], [])
    crossed: list[int] = []
    f = goal
    while parent[f] is not None:
        f, x = parent[f]
        crossed.append(x)
    crossed.reverse()
    u_corner = start[f]
    return route_edge(d, eid, u, v, u_corner, v_faces[goal], crossed)


@dataclass(frozen=True)
class MoveRecord:
    """One parity-preserving double-crossing move: edge of dart a poked
    across edge of dart b inside their common face."""

    edge_a: int
    edge_b: int
    route_pos_a: int
    route_pos_b: int


def double_crossing_move(d: Drawing, dart_a: int, dart_b: int) -> tuple[Drawing, MoveRecord]:
    """Poke the segment of ``dart_a`` across the segment of ``dart_b`` and
    back; both darts must lie on the same face and on distinct edges.  The
    crossing count of that pair grows by exactly two, parities unchanged."""
    faces = d.faces()
    face_of: dict[int, int] = {}
    for i, f in enumerate(faces):
        for x in f:
            face_of[x] = i
    if face_of[dart_a] != face_of[dart_b]:
        raise ValueError("darts are not on a common face")
    seg_of = _segment_of_dart(d)
    ea, qa, fa = seg_of[dart_a]
    eb, qb, fb = seg_of[dart_b]
    if ea == eb:
        raise ValueError("double crossing needs two distinct edges")

    vrot, routes, spins = _raw_view(d)
    z1, z2 = ("dx", 1), ("dx", 2)
    # Walking the face, A traverses its segment along dart_a and B along
    # dart_b; in the disk between them A meets z1 then z2, B meets z2
    # then z1.  Local clockwise rotations (travel-relative):
    spins[z1] = _spin_for(("A_out", "B_in", "A_in", "B_out"), ea, eb, fa, fb)
    spins[z2] = _spin_for(("A_in", "B_in", "A_out", "B_out"), ea, eb, fa, fb)

    pair_a = [z1, z2] if fa else [z2, z1]
    pair_b = [z2, z1] if fb else [z1, z2]
    routes[ea] = routes[ea][:qa] + pair_a + routes[ea][qa:]
    routes[eb] = routes[eb][:qb] + pair_b + routes[eb][qb:]
    out = Drawing.from_routes(
        d.graph,
        {w: tuple(r) for w, r in vrot.items()},
        {e: tuple(r) for e, r in routes.items()},
        spins,
        validate=False,
    )
    return out, MoveRecord(ea, eb, qa, qb)


def undo_double_crossing(d: Drawing, rec: MoveRecord) -> Drawing:
    """Invert the most recent double-crossing move (LIFO discipline: the
    recorded route positions must still name the inserted pair)."""
    vrot, routes, spins = _raw_view(d)
    ra, rb = routes[rec.edge_a], routes[rec.edge_b]
    ca = ra[rec.route_pos_a : rec.route_pos_a + 2]
    cb = rb[rec.route_pos_b : rec.route_pos_b + 2]
    if len(ca) != 2 or set(ca) != set(cb):
        raise ValueError("record does not match the drawing")
    routes[rec.edge_a] = ra[: rec.route_pos_a] + ra[rec.route_pos_a + 2 :]
    routes[rec.edge_b] = rb[: rec.route_pos_b] + rb[rec.route_pos_b + 2 :]
    for c in set(ca):
        del spins[c]
    return Drawing.from_routes(
        d.graph,
        {w: tuple(r) for w, r in vrot.items()},
        {e: tuple(r) for e, r in routes.items()},
        spins,
        validate=False,
    )


# ---------------------------------------------------------------------------
# Seeded constructive generators
# ---------------------------------------------------------------------------


def base_triangle() -> Drawing:
    g = Multigraph((0, 1, 2), ((0, (0, 1)), (1, (0, 2)), (2, (1, 2))))
    vrot = {0: ((1, 0), (0, 0)), 1: ((0, 1), (2, 0)), 2: ((2, 1), (1, 1))}
    return Drawing.crossing_free(g, vrot, validate=False)


def random_planar_triangulation(n: int, seed: int) -> Drawing:
    """Grow a plane triangulation: start from a triangle, repeatedly drop a
    new vertex into a (seeded) random face and join it to the three
    corners.  Every face stays a triangle with distinct corners."""
    if n < 3:
        raise ValueError("need n >= 3")
    rng = random.Random(f"{seed}:tri")
    d = base_triangle()
    eid = 3
    for w in range(3, n):
        faces = sorted(d.faces())
        face = faces[rng.randrange(len(faces))]
        d = insert_vertex_in_face(d, face, [0, 1, 2], w, eid)
        eid += 3
    return d


def random_planar_drawing(n: int, seed: int, deletions: int = 0) -> Drawing:
    """Random embedded planar graph: a grown triangulation minus a seeded
    random selection of edges (isolated vertices may remain)."""
    d = random_planar_triangulation(n, seed)
    if deletions:
        rng = random.Random(f"{seed}:del")
        eids = list(d.graph.edge_ids())
        rng.shuffle(eids)
        d = d.remove_edges(eids[: min(deletions, len(eids))])
    return d


def base_square() -> Drawing:
    g = Multigraph((0, 1, 2, 3), ((0, (0, 1)), (1, (0, 3)), (2, (1, 2)), (3, (2, 3))))
    vrot = {
        0: ((0, 0), (1, 0)),
        1: ((0, 1), (2, 0)),
        2: ((2, 1), (3, 0)),
        3: ((3, 1), (1, 1)),
    }
    return Drawing.crossing_free(g, vrot, validate=False)


def random_quadrangulation(n: int, seed: int) -> Drawing:
    """Grow a simple plane quadrangulation on n >= 4 vertices: insert each
    new vertex into a quadrilateral face joined to two opposite corners."""
    if n < 4:
        raise ValueError("need n >= 4")
    rng = random.Random(f"{seed}:quad")
    d = base_square()
    eid = 4
    for w in range(4, n):
        faces = sorted(f for f in d.faces() if len(f) == 4)
        face = faces[rng.randrange(len(faces))]
        d = insert_vertex_in_face(d, face, [0, 2], w, eid)
        eid += 2
    return d


def add_diagonals(d: Drawing) -> Drawing:
    """Add both diagonals, crossing once, inside every quadrilateral face
    with four distinct corners, skipping any diagonal whose vertex pair
    is already an edge, so the result stays simple when the input is.
    On a quadrangulation whose faces share no opposite corner pair this
    yields 2n-4 + 2(n-2) = 4n-8 edges, each diagonal crossed once."""
    faces = [f for f in sorted(d.faces()) if len(f) == 4]
    vrot, routes, spins = _raw_view(d)
    eid = max(d.graph.edge_ids()) + 1
    new_edges = []
    used_pairs = {frozenset(uv) for _, uv in d.graph.edges}
    # queued corner insertions: before-dart -> ending token
    pending: dict[int, Ending] = {}
    for idx, face in enumerate(faces):
        nodes = [d.dart_node(x) for x in face]
        if len(set(nodes)) != 4:
            continue
        pa, pb = frozenset((nodes[0], nodes[2])), frozenset((nodes[1], nodes[3]))
        if pa in used_pairs or pb in used_pairs:
            continue
        used_pairs.add(pa)
        used_pairs.add(pb)
        ea, eb = eid, eid + 1
        eid += 2
        z = ("diag", idx)
        new_edges.append((ea, (nodes[0], nodes[2])))
        new_edges.append((eb, (nodes[1], nodes[3])))
        routes[ea] = [z]
        routes[eb] = [z]
        # A runs corner0 -> corner2, B corner1 -> corner3; with the face
        # walked counterclockwise the clockwise order at the crossing is
        # (A_in, B_out, A_out, B_in).
        spins[z] = _spin_for(("A_in", "B_out", "A_out", "B_in"), ea, eb, True, True)
        for end, pos, e in ((0, 0, ea), (1, 2, ea), (0, 1, eb), (1, 3, eb)):
            pending[face[pos]] = (e, end)
    for v in d.graph.vertices:
        out: list[Ending] = []
        token = d._ending_of_dart()
        for x in d.rotation[v]:
            if x in pending:
                out.append(pending[x])
            out.append(token[x])
        vrot[v] = out
    g2 = Multigraph(d.graph.vertices, d.graph.edges + tuple(new_edges))
    return Drawing.from_routes(
        g2,
        {w: tuple(r) for w, r in vrot.items()},
        {e: tuple(r) for e, r in routes.items()},
        spins,
        validate=False,
    )


def pseudo_double_wheel(half: int) -> Drawing:
    """The quadrangulation on n = 2*half + 2 vertices (half >= 3) with a
    cycle v0..v_{2*half-1}, an inner apex adjacent to the even cycle
    vertices and an outer apex adjacent to the odd ones.  No two faces
    share an opposite corner pair, so :func:`add_diagonals` on it attains
    the full 4n-8 edge count."""
    if half < 3:
        raise ValueError("need half >= 3")
    m2 = 2 * half
    a, b = m2, m2 + 1
    verts = tuple(range(m2 + 2))
    edges: list[tuple[int, tuple[int, int]]] = []
    cyc: dict[int, int] = {}
    for i in range(m2):
        cyc[i] = len(edges)
        edges.append((len(edges), (i, (i + 1) % m2)))
    spoke: dict[int, int] = {}
    for i in range(m2):
        spoke[i] = len(edges)
        edges.append((len(edges), (a if i % 2 == 0 else b, i)))
    g = Multigraph(verts, tuple(edges))

    def tok(eid: int, at: int) -> Ending:
        u, v = g.endpoints(eid)
        return (eid, 0 if u == at else 1)

    vrot: dict[int, tuple[Ending, ...]] = {}
    # Cycle drawn clockwise with the even apex inside, odd apex outside.
    for i in range(m2):
        nxt = tok(cyc[i], i)
        prv = tok(cyc[(i - 1) % m2], i)
        sp = tok(spoke[i], i)
        if i % 2 == 0:
            vrot[i] = (nxt, sp, prv)  # clockwise: next on cycle, inward, prev
        else:
            vrot[i] = (sp, nxt, prv)  # clockwise: outward, next, prev
    vrot[a] = tuple(tok(spoke[i], a) for i in range(0, m2, 2))
    vrot[b] = tuple(tok(spoke[i], b) for i in reversed(range(1, m2, 2)))
    return Drawing.crossing_free(g, vrot)


def quadrangulation_with_diagonals(n: int, seed: int) -> Drawing:
    """Dense 1-plane warm start: for even n >= 8 the pseudo double wheel
    plus all diagonals (exactly 4n-8 edges); otherwise a grown
    quadrangulation plus whatever diagonals keep the graph simple."""
    if n >= 8 and n % 2 == 0:
        return add_diagonals(pseudo_double_wheel((n - 2) // 2))
    return add_diagonals(random_quadrangulation(n, seed))


def greedy_embed(g: Multigraph, seed: int, attempts: int = 200) -> Drawing:
    """Crossing-free drawing of a planar graph by inserting edges one at a
    time into common faces, restarting with reshuffled insertion orders.
    Raises if no attempt succeeds (in particular for nonplanar input)."""
    for attempt in range(attempts):
        rng = random.Random(f"{seed}:embed:{attempt}")
        order = list(g.edge_ids())
        rng.shuffle(order)
        d = Drawing.crossing_free(
            Multigraph(g.vertices, ()), {v: () for v in g.vertices}, validate=False
        )
        ok = True
        for eid in order:
            u, v = g.endpoints(eid)
            try:
                d2 = insert_edge_shortest(d, eid, u, v, rng=None)
            except Exception:
                ok = False
                break
            if d2.crossing_nodes():
                ok = False
                break
            d = d2
        if ok:
            return d
    raise ValueError("no crossing-free embedding found (graph nonplanar or unlucky order)")
