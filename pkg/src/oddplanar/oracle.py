"""Independent ground truth at desk scale.

Exhaustive enumeration of planarizations of tiny graphs, exact values of
the crossing-number variants over the enumerated space, seeded random
drawing generators, and a stochastic explorer for dense drawings with
bounded odd crossings per edge.

Enumeration never touches the redrawing machinery: a candidate is a
crossing-pair multiset, a rotation system, per-edge crossing orders and
per-crossing spins, and the only referee is the sphere (Euler) check.
Drawings whose edges cross themselves are not enumerated: smoothing a
self-crossing preserves every pairwise crossing count exactly, so no
minimum over drawings changes by ignoring them.

Budgets are counted in candidate drawings examined.  The candidate limit
is enforced deterministically (parallel runs at chunk granularity); the
time limit is a safety net and should not be used to pin down results.
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product

from .bounds import BoundReport, audit_drawing, modd_upper
from .drawing import Drawing, Ending
from .graphs import Multigraph
from .surgery import (
    MoveRecord,
    double_crossing_move,
    greedy_embed,
    insert_edge_shortest,
    quadrangulation_with_diagonals,
    random_planar_triangulation,
)

THREADS_ENV = "ODDPLANAR_THREADS"


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        n = int(raw)
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be positive")
        return n
    return os.cpu_count() or 1


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_crossings: int = 1
    max_candidates: int = 2_000_000
    time_limit: float = 300.0

    def __post_init__(self) -> None:
        if self.max_crossings < 0 or self.max_candidates < 0 or self.time_limit < 0:
            raise ValueError("budget fields must be nonnegative")


@dataclass(frozen=True)
class LowerBoundOnly:
    """No admissible drawing exists within the crossing budget; for the
    plain crossing number this bounds the true value below by ``bound``,
    for pair/odd variants it only certifies the enumerated range."""

    bound: int


# ---------------------------------------------------------------------------
# Random drawings
# ---------------------------------------------------------------------------


def _ccw_key_factory():
    from functools import cmp_to_key

    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(a, b):
        va, vb = a[0], b[0]
        ha, hb = half(va), half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        cr = va[0] * vb[1] - va[1] * vb[0]
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return cmp_to_key(cmp)


def _convex_drawing(g: Multigraph, seed: int) -> Drawing:
    """Vertices in seeded random order in convex position (points on the
    parabola t -> (t, t^2), so all tests are exact integer arithmetic),
    edges as straight chords.  Chords cross iff their endpoints
    interleave in the convex order; concurrent triple intersections are
    detected exactly and dodged by re-sampling the positions."""
    rng = random.Random(f"{seed}:convex")
    order = list(g.vertices)
    rng.shuffle(order)
    slot = {v: i for i, v in enumerate(order)}
    n = g.n
    for attempt in range(64):
        if attempt == 0:
            ts = list(range(n))
        else:
            rng2 = random.Random(f"{seed}:convex:t:{attempt}")
            ts = sorted(rng2.sample(range(1_000_000), n))
        pt = {v: (ts[slot[v]], ts[slot[v]] ** 2) for v in g.vertices}

        def interleave(e, f):
            (a, b), (c, d) = g.endpoints(e), g.endpoints(f)
            if len({a, b, c, d}) < 4:
                return False
            lo, hi = sorted((slot[a], slot[b]))
            return (lo < slot[c] < hi) != (lo < slot[d] < hi)

        eids = g.edge_ids()
        crossings = [
            (e, f) for i, e in enumerate(eids) for f in eids[i + 1 :] if interleave(e, f)
        ]
        along: dict[int, list[tuple[Fraction, tuple]]] = {e: [] for e in eids}
        spins: dict[tuple, bool] = {}
        for e, f in crossings:
            (a, b), (c, d) = g.endpoints(e), g.endpoints(f)
            pa, pb, pc, pd = pt[a], pt[b], pt[c], pt[d]
            d1 = (pb[0] - pa[0], pb[1] - pa[1])
            d2 = (pd[0] - pc[0], pd[1] - pc[1])
            den = d1[0] * d2[1] - d1[1] * d2[0]
            ca = (pc[0] - pa[0], pc[1] - pa[1])
            s = Fraction(ca[0] * d2[1] - ca[1] * d2[0], den)
            t = Fraction(ca[0] * d1[1] - ca[1] * d1[0], den)
            key = (e, f)
            along[e].append((s, key))
            along[f].append((t, key))
            spins[key] = den < 0  # clockwise successor of P1_in is P2_in
        degenerate = False
        routes: dict[int, tuple] = {}
        for e in eids:
            along[e].sort()
            params = [s for s, _ in along[e]]
            if any(params[i] == params[i + 1] for i in range(len(params) - 1)):
                degenerate = True
                break
            routes[e] = tuple(key for _, key in along[e])
        if degenerate:
            continue

        key_ccw = _ccw_key_factory()
        vrot: dict[int, tuple[Ending, ...]] = {}
        for v in g.vertices:
            items = []
            for eid, (x, y) in g.edges:
                if x == v or y == v:
                    other = y if x == v else x
                    vec = (pt[other][0] - pt[v][0], pt[other][1] - pt[v][1])
                    items.append((vec, (eid, 0 if x == v else 1)))
            items.sort(key=key_ccw)
            items.reverse()  # clockwise
            vrot[v] = tuple(tok for _, tok in items)
        return Drawing.from_routes(g, vrot, routes, spins)
    raise RuntimeError("could not find a nondegenerate convex placement")


def perturb_even(d: Drawing, moves: int, seed: int) -> tuple[Drawing, tuple[MoveRecord, ...]]:
    """Apply a seeded sequence of parity-preserving double-crossing moves;
    starting from an all-even drawing the result stays all-even.  The
    records allow replay and last-in-first-out inversion."""
    rng = random.Random(f"{seed}:moves")
    recs: list[MoveRecord] = []
    for _ in range(moves):
        seg_edge = {}
        for eid, p in d.edge_paths.items():
            for x in p:
                seg_edge[x] = eid
        options: list[tuple[int, int]] = []
        for face in sorted(d.faces()):
            for i, a in enumerate(face):
                for b in face[i + 1 :]:
                    if seg_edge[a] != seg_edge[b]:
                        options.append((a, b))
        if not options:
            raise ValueError("no face offers two distinct edges to entangle")
        a, b = options[rng.randrange(len(options))]
        d, rec = double_crossing_move(d, a, b)
        recs.append(rec)
    return d, tuple(recs)


def random_drawing(g: Multigraph, seed: int, model: str = "convex", moves: int | None = None) -> Drawing:
    """Deterministic seeded drawing generator.

    ``convex``: chord diagram in convex position with exact crossing
    extraction.  ``perturbed-even``: a crossing-free embedding (greedy
    face insertion; the graph must be planar) entangled by seeded
    double-crossing moves, so every pair of edges crosses evenly.
    """
    if not g.is_simple:
        raise ValueError("generators take simple graphs")
    if model == "convex":
        return _convex_drawing(g, seed)
    if model == "perturbed-even":
        base = greedy_embed(g, seed)
        rng = random.Random(f"{seed}:nmoves")
        n_moves = moves if moves is not None else rng.randint(1, 4)
        out, _ = perturb_even(base, n_moves, seed)
        return out
    raise ValueError(f"unknown model {model!r}")


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------


def _euler_ok(d: Drawing) -> bool:
    comps = d.map_components()
    face_comp: dict[int, int] = {}
    for i, comp in enumerate(comps):
        for nd in comp:
            face_comp[nd] = i
    fcount = [0] * len(comps)
    for face in d.faces():
        fcount[face_comp[d.dart_node(face[0])]] += 1
    for i, comp in enumerate(comps):
        e_c = sum(len(d.rotation[nd]) for nd in comp) // 2
        f_c = fcount[i] if e_c else 1
        if len(comp) - e_c + f_c != 2:
            return False
    return True


def _rotation_choices(g: Multigraph) -> list[list[tuple[Ending, ...]]]:
    """All cyclic orders per vertex: first incident ending pinned, the
    rest permuted ((deg-1)! options)."""
    out = []
    for v in g.vertices:
        endings = []
        for eid, (a, b) in g.edges:
            if a == v:
                endings.append((eid, 0))
            if b == v:
                endings.append((eid, 1))
        endings.sort()
        if len(endings) <= 1:
            out.append([tuple(endings)])
        else:
            first, rest = endings[0], endings[1:]
            out.append([(first,) + p for p in permutations(rest)])
    return out


def _realizations(g: Multigraph, multiset: tuple[tuple[int, int], ...], tick):
    """Yield every valid drawing whose crossing-pair multiset is exactly
    ``multiset`` (crossing ids, orders along edges, spins, rotations)."""
    cids = list(range(len(multiset)))
    on_edge: dict[int, list[int]] = {e: [] for e in g.edge_ids()}
    for cid, (e, f) in enumerate(multiset):
        on_edge[e].append(cid)
        on_edge[f].append(cid)
    rot_choices = _rotation_choices(g)
    order_choices = [
        list(permutations(on_edge[e])) if len(on_edge[e]) > 1 else [tuple(on_edge[e])]
        for e in g.edge_ids()
    ]
    eids = g.edge_ids()
    for rots in product(*rot_choices):
        vrot = dict(zip(g.vertices, rots))
        for orders in product(*order_choices):
            routes = dict(zip(eids, orders))
            for spin_bits in product((False, True), repeat=len(cids)):
                tick()
                d = Drawing.from_routes(
                    g, vrot, routes, dict(zip(cids, spin_bits)), validate=False
                )
                if _euler_ok(d):
                    yield d


def enumerate_drawings(g: Multigraph, budget: EnumerationBudget):
    """Stream every valid self-crossing-free drawing of g with at most
    ``budget.max_crossings`` crossings, up to sphere homeomorphism
    (deduplicated by canonical encoding; mirror images both appear).
    Crossing-pair multisets are visited in lexicographic order.  Raises
    BudgetExceeded when the candidate or time budget runs out, leaving
    the stream incomplete."""
    if not g.is_simple:
        raise ValueError("enumeration takes simple graphs")
    start = time.monotonic()
    state = {"count": 0}

    def tick():
        state["count"] += 1
        if state["count"] > budget.max_candidates:
            raise BudgetExceeded(f"candidate budget {budget.max_candidates} exhausted")
        if state["count"] % 512 == 0 and time.monotonic() - start > budget.time_limit:
            raise BudgetExceeded(f"time budget {budget.time_limit}s exhausted")

    pairs = sorted(combinations(sorted(g.edge_ids()), 2))
    seen: set = set()
    for size in range(budget.max_crossings + 1):
        for multiset in combinations_with_replacement(pairs, size):
            for d in _realizations(g, multiset, tick):
                key = d.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                yield d


# ---------------------------------------------------------------------------
# Exact crossing-number variants
# ---------------------------------------------------------------------------

_VARIANTS = ("cr", "pcr", "ocr")
_RULES = ("plus", "zero", "minus", "star")


def _multiset_value(multiset, variant: str, rule: str, adjacent) -> tuple[bool, int]:
    """(admissible, value) of any drawing realizing the multiset."""
    counts: dict[tuple[int, int], int] = {}
    for p in multiset:
        counts[p] = counts.get(p, 0) + 1
    adj_present = {p for p in counts if adjacent(p)}
    if rule == "plus" and adj_present:
        return False, 0
    if rule == "star" and any(counts[p] % 2 for p in adj_present):
        return False, 0
    if rule == "minus":
        considered = {p: c for p, c in counts.items() if not adjacent(p)}
    else:
        considered = counts
    if variant == "cr":
        val = sum(considered.values())
    elif variant == "pcr":
        val = len(considered)
    else:
        val = sum(1 for c in considered.values() if c % 2)
    return True, val


def _counting_prune(g: Multigraph, crossings: int) -> bool:
    """True if no drawing of g can have this few crossings: deleting one
    edge per crossing leaves a planar simple graph, so a drawing with c
    crossings forces m - c <= 3n - 6."""
    return g.n >= 3 and crossings < g.m - (3 * g.n - 6)


_EMBED_MEMO: dict[tuple, bool] = {}


def _realizable(g: Multigraph, multiset, max_ticks: int) -> tuple[bool | None, int]:
    """(found, ticks) where found is None if the tick budget ran out."""
    ticks = 0
    if _counting_prune(g, len(multiset)):
        return False, 0
    memo_key = None
    if not multiset:
        memo_key = (g.vertices, g.edges)
        if memo_key in _EMBED_MEMO:
            return _EMBED_MEMO[memo_key], 1
        try:
            greedy_embed(g, seed=0, attempts=64)
            _EMBED_MEMO[memo_key] = True
            return True, 1
        except ValueError:
            pass

    def gen():
        nonlocal ticks

        def tick():
            nonlocal ticks
            ticks += 1
            if ticks > max_ticks:
                raise BudgetExceeded("realizability tick budget")

        yield from _realizations(g, multiset, tick)

    try:
        for _ in gen():
            if memo_key is not None:
                _EMBED_MEMO[memo_key] = True
            return True, ticks
        if memo_key is not None:
            _EMBED_MEMO[memo_key] = False
        return False, ticks
    except BudgetExceeded:
        return None, ticks


def exact_crossing_value(
    g: Multigraph, variant: str, rule: str, budget: EnumerationBudget
):
    """Minimum of the chosen crossing-number variant over all drawings
    admissible under the rule with at most ``budget.max_crossings``
    crossings.  The value is exact whenever the true optimum is attained
    within the crossing budget (the caller chooses the budget; planar
    verdicts at 0 are always exact).  Returns LowerBoundOnly when the
    enumerated space contains no admissible drawing.

    Candidate multisets are processed in (value, multiset) order with
    pruning, so the search stops as soon as no better value is possible.
    Honors the thread-count environment variable; parallel and serial
    runs return identical results.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if rule not in _RULES:
        raise ValueError(f"unknown rule {rule!r}")
    if rule == "star" and variant != "ocr":
        raise ValueError("rule star is defined for the odd crossing number only")
    if not g.is_simple:
        raise ValueError("exact values are defined for simple graphs")

    adj_cache: dict[tuple[int, int], bool] = {}

    def adjacent(p):
        if p not in adj_cache:
            adj_cache[p] = g.adjacent(*p)
        return adj_cache[p]

    pairs = sorted(combinations(sorted(g.edge_ids()), 2))
    candidates: list[tuple[int, int, tuple]] = []
    for size in range(budget.max_crossings + 1):
        for multiset in combinations_with_replacement(pairs, size):
            ok, val = _multiset_value(multiset, variant, rule, adjacent)
            if ok:
                adj_count = sum(1 for p in multiset if adjacent(p))
                candidates.append((val, adj_count, multiset))
    # Equal-value multisets with fewer adjacent crossings first: witnesses
    # tend to be independent, and failed sweeps are the expensive part.
    candidates.sort()

    start = time.monotonic()
    remaining = budget.max_candidates
    best: int | None = None
    nthreads = thread_count()
    i = 0
    while i < len(candidates):
        if best is not None and candidates[i][0] >= best:
            break
        if time.monotonic() - start > budget.time_limit:
            raise BudgetExceeded("time budget exhausted")
        if remaining <= 0:
            raise BudgetExceeded("candidate budget exhausted")
        chunk = []
        while i < len(candidates) and len(chunk) < max(1, nthreads):
            val, _, ms = candidates[i]
            if best is not None and val >= best:
                break
            chunk.append((val, ms))
            i += 1
        if not chunk:
            break
        if nthreads > 1 and len(chunk) > 1:
            with ThreadPoolExecutor(max_workers=nthreads) as pool:
                results = list(
                    pool.map(lambda vm: _realizable(g, vm[1], remaining), chunk)
                )
        else:
            results = [_realizable(g, ms, remaining) for _, ms in chunk]
        for (val, _), (found, used) in zip(chunk, results):
            remaining -= used
            if found is None:
                raise BudgetExceeded("candidate budget exhausted")
            if found and (best is None or val < best):
                best = val
    if best is None:
        return LowerBoundOnly(budget.max_crossings + 1)
    return best


# ---------------------------------------------------------------------------
# Extremal search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    best: Drawing
    edge_count: int
    target_upper: int
    report: BoundReport
    proposals: int
    accepted: int
    budget_exhausted: bool


def extremal_search(k: int, n: int, budget: EnumerationBudget, seed: int) -> SearchResult:
    """Stochastic local search for dense drawings in which every edge is
    crossed oddly by at most k others.  Starts from the densest known
    constructive drawing (a triangulation; for k >= 1 also the
    diagonal-augmented quadrangulation), then proposes edge additions,
    reroutes and parity-preserving pokes, keeping the constraint hard.
    The reported edge count is audited against modd_upper; exceeding it
    would mean an implementation bug, not new mathematics."""
    if k < 0 or n < 3:
        raise ValueError("need k >= 0 and n >= 3")
    rng = random.Random(f"{seed}:search")
    current = random_planar_triangulation(n, seed)
    if k >= 1 and n >= 4:
        alt = quadrangulation_with_diagonals(n, seed)
        if alt.graph.m > current.graph.m and alt.is_k_odd_plane(k):
            current = alt
    best = current
    proposals = 0
    accepted = 0
    start = time.monotonic()
    exhausted = False
    while True:
        if proposals >= budget.max_candidates:
            exhausted = True
            break
        if time.monotonic() - start > budget.time_limit:
            exhausted = True
            break
        proposals += 1
        verts = current.graph.vertices
        present = {frozenset(uv) for _, uv in current.graph.edges}
        absent = [
            (u, v)
            for i, u in enumerate(verts)
            for v in verts[i + 1 :]
            if frozenset((u, v)) not in present
        ]
        roll = rng.random()
        try:
            if absent and roll < 0.6:
                u, v = absent[rng.randrange(len(absent))]
                eid = max(current.graph.edge_ids()) + 1
                cand = insert_edge_shortest(
                    current, eid, u, v, rng=random.Random(f"{seed}:route:{proposals}")
                )
            elif roll < 0.85 and current.graph.m > 0:
                eids = current.graph.edge_ids()
                e = eids[rng.randrange(len(eids))]
                u, v = current.graph.endpoints(e)
                cand = insert_edge_shortest(
                    current.remove_edges({e}),
                    e,
                    u,
                    v,
                    rng=random.Random(f"{seed}:route:{proposals}"),
                )
            else:
                seg_edge = {}
                for eid2, p in current.edge_paths.items():
                    for x in p:
                        seg_edge[x] = eid2
                options = []
                for face in sorted(current.faces()):
                    for ii, a in enumerate(face):
                        for b in face[ii + 1 :]:
                            if seg_edge[a] != seg_edge[b]:
                                options.append((a, b))
                if not options:
                    continue
                a, b = options[rng.randrange(len(options))]
                cand, _ = double_crossing_move(current, a, b)
        except ValueError:
            continue
        if not cand.is_k_odd_plane(k):
            continue
        if cand.graph.m >= current.graph.m:
            current = cand
            accepted += 1
            if current.graph.m > best.graph.m:
                best = current
    assert best.is_k_odd_plane(k)
    assert not best.validate()
    report = audit_drawing(best, k)
    target = modd_upper(k, n)
    assert best.graph.m <= target, "search exceeded a proven upper bound: bug"
    return SearchResult(
        best=best,
        edge_count=best.graph.m,
        target_upper=target,
        report=report,
        proposals=proposals,
        accepted=accepted,
        budget_exhausted=exhausted,
    )
