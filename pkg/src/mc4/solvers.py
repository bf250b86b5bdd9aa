"""Consistency solvers for MC-4 constraint networks.

A network is consistent when some atomic refinement of it is algebraically
closed (such a refinement, a *scenario*, assigns one base case per pair and
survives every triangle of the composition table).  Four deciders cover the
spectrum of label profiles:

- solve_oracle: exhaustive scenario search with triangle pruning.  Complete
  on any profile, exponential, and capped at a handful of vertices; it is
  the ground truth everything else is compared against.
- solve_backtracking: path consistency plus branching on disjunctive
  labels.  Complete on any profile and fast at desk scale.
- solve_trivial_core: profiles whose every label is NONE or contains a
  fixed core (CG, CNO, or CGPP|CGPPi).  Consistency is the absence of an
  explicit NONE label, and a one-shape canonical scenario always works.
- solve_m99 / solve_m81: polynomial deciders for the two maximal non-trivial
  tractable subalgebras.  Each label is translated into a small gadget over
  three primitive constraint kinds — directed "fits inside or congruent"
  arcs (LEQ), "congruent or mutually unembeddable" edges (EQX), and "not
  congruent" edges (NLE) — and consistency reduces to reachability: any two
  regions in one strong component of the LEQ digraph are forced congruent,
  an EQX edge whose endpoints see each other through LEQ forces congruence
  too, and a contradiction is exactly an NLE edge inside one forced-equal
  cluster.

solve() inspects the label profile via mc4.subalgebra.classify and
dispatches to the cheapest complete decider.

Inconsistent outcomes carry a JSON-ready witness, one of:

    {"type": "bottom_edge", "edge": [u, v]}
    {"type": "cycle_chord", "cycle": [names...], "chord": [u, v]}
    {"type": "search_exhausted", "explored": N}

search_pc_incompleteness hunts for a network that path consistency accepts
but that has no scenario, demonstrating why the dedicated deciders are
needed at all.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .algebra import (
    Relation,
    _COMPOSE_CODE,
    _CONVERSE_CODE,
    _POPCOUNT,
    _RELATIONS,
    format_relation,
)
from .network import (
    ConstraintNetwork,
    is_algebraically_closed,
    path_consistency,
    random_network,
)
from .subalgebra import Kind, TractabilityClass, classify

BASIC_CODES = (1, 2, 4, 8)

# Gadget translation tables: relation code -> primitive constraints, with
# (i, j) the ordered base pair and z a fresh auxiliary vertex.  A code maps
# to every listed kind at once; ALL maps to nothing and is dropped.
_M99_LEQ_FWD = (2, 3, 10, 11)      # arc i -> z for aux codes, i -> j otherwise
_M99_LEQ_REV = (4, 5)
_M99_LEQ_AUXREV = (12, 13)         # arc z -> i
_M99_EQX_BASE = (8, 9)
_M99_AUX = (10, 11, 12, 13)
_M99_NLE = (2, 4, 8, 10, 12, 14)
_M99_REJECT = (6, 7)

_M81_LEQ_FWD = (2, 3)
_M81_LEQ_REV = (4, 5)
_M81_BSY = (6, 7)
_M81_NLE = (2, 4, 6, 14)
_M81_REJECT = (8, 9, 10, 11, 12, 13)

_TRIVIAL_CORES = (Relation.CG, Relation.CNO, Relation.CGPP | Relation.CGPPI)

# Largest vertex count handled by the pure-python strongly-connected
# components; larger gadget graphs go through scipy's compiled routines.
_SCIPY_MIN_VERTICES = 257


class ProfileError(ValueError):
    """Raised when a network label falls outside the solver's subalgebra."""


@dataclass(frozen=True)
class Scenario:
    """Full atomic assignment: one (i, j, code) triple per pair with i < j."""

    pairs: tuple[tuple[int, int, int], ...]

    def as_json(self) -> dict:
        return {"pairs": [[i, j, code] for i, j, code in self.pairs]}

    def apply_to(self, net: ConstraintNetwork) -> ConstraintNetwork:
        """Intersect the scenario into a copy of net (NONE marks a clash)."""
        out = net.copy()
        names = out.names
        for i, j, code in self.pairs:
            out.add_constraint(names[i], names[j], _RELATIONS[code])
        return out


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one consistency decision.

    scenario is set on consistent outcomes from the scenario-producing
    solvers (oracle, backtracking, trivial-core); witness is set on every
    inconsistent outcome; classification is filled in by solve().
    """

    consistent: bool
    solver: str
    scenario: Scenario | None = None
    witness: dict | None = None
    classification: TractabilityClass | None = None


def is_valid_scenario(net: ConstraintNetwork, scenario: Scenario) -> bool:
    """True iff scenario covers every pair of net, refines its labels, and
    is algebraically closed."""
    n = len(net)
    if len(scenario.pairs) != n * (n - 1) // 2:
        return False
    seen = set()
    for i, j, code in scenario.pairs:
        if not (0 <= i < j < n) or _POPCOUNT[code] != 1:
            return False
        seen.add((i, j))
    if len(seen) != len(scenario.pairs):
        return False
    refined = scenario.apply_to(net)
    return refined.is_atomic() and is_algebraically_closed(refined)


def _self_loop_witness(net: ConstraintNetwork) -> dict:
    u = net.self_contradiction
    return {"type": "bottom_edge", "edge": [u, u]}


def _first_bottom_edge(net: ConstraintNetwork) -> tuple[int, int] | None:
    n = len(net)
    for i in range(n):
        for j in range(i + 1, n):
            if not net._m[i, j]:
                return i, j
    return None


def _scenario_from(net: ConstraintNetwork) -> Scenario:
    n = len(net)
    pairs = tuple(
        (i, j, int(net._m[i, j])) for i in range(n) for j in range(i + 1, n)
    )
    return Scenario(pairs)


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------


def solve_oracle(net: ConstraintNetwork, max_vertices: int = 6) -> SolveOutcome:
    """Depth-first search over all atomic refinements, triangle-pruned.

    Complete for any label profile but exponential in the number of pairs,
    hence the hard cap on vertices.  Pairs are assigned vertex by vertex
    (all pairs into vertex 2, then into vertex 3, ...) so that every new
    assignment closes triangles only against already-assigned pairs.
    """
    n = len(net)
    if n > max_vertices:
        raise ValueError(f"oracle is capped at {max_vertices} vertices, got {n}")
    if net.self_contradiction is not None:
        return SolveOutcome(False, "oracle", witness=_self_loop_witness(net))
    pairs = sorted(
        ((i, j) for i in range(n) for j in range(i + 1, n)),
        key=lambda p: (p[1], p[0]),
    )
    labels = [int(net._m[i, j]) for i, j in pairs]
    compose_t = _COMPOSE_CODE
    conv = _CONVERSE_CODE
    sol = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    explored = 0

    def dfs(t: int) -> bool:
        nonlocal explored
        if t == len(pairs):
            return True
        b, c = pairs[t]
        sol_b = [sol[a][b] for a in range(b)]
        sol_c = [sol[a][c] for a in range(b)]
        for v in BASIC_CODES:
            if not labels[t] & v:
                continue
            explored += 1
            cv = conv[v]
            ok = True
            for a in range(b):
                x = sol_b[a]
                y = sol_c[a]
                if not (
                    compose_t[x][v] & y
                    and compose_t[y][cv] & x
                    and compose_t[conv[x]][y] & v
                ):
                    ok = False
                    break
            if ok:
                sol[b][c] = v
                sol[c][b] = cv
                if dfs(t + 1):
                    return True
        return False

    if dfs(0):
        pairs_out = tuple(
            (i, j, sol[i][j]) for i in range(n) for j in range(i + 1, n)
        )
        return SolveOutcome(True, "oracle", scenario=Scenario(pairs_out))
    return SolveOutcome(
        False, "oracle", witness={"type": "search_exhausted", "explored": explored}
    )


# ---------------------------------------------------------------------------
# Path consistency + branching
# ---------------------------------------------------------------------------


def solve_backtracking(net: ConstraintNetwork) -> SolveOutcome:
    """Complete solver: path consistency interleaved with label branching.

    Branches on the pair with the fewest remaining base cases (ties to the
    lexicographically first pair), trying base cases in canonical order,
    and re-runs path consistency after each commitment.
    """
    if net.self_contradiction is not None:
        return SolveOutcome(False, "backtracking", witness=_self_loop_witness(net))
    ok, refined = path_consistency(net)
    if not ok:
        i, j = _first_bottom_edge(refined)
        witness = {"type": "bottom_edge", "edge": [net.names[i], net.names[j]]}
        return SolveOutcome(False, "backtracking", witness=witness)
    explored = 0

    def search(cur: ConstraintNetwork) -> ConstraintNetwork | None:
        nonlocal explored
        n = len(cur)
        best = None
        best_card = 5
        for i in range(n):
            for j in range(i + 1, n):
                card = _POPCOUNT[int(cur._m[i, j])]
                if 2 <= card < best_card:
                    best = (i, j)
                    best_card = card
                    if card == 2:
                        break
            if best_card == 2:
                break
        if best is None:
            return cur
        i, j = best
        label = int(cur._m[i, j])
        for v in BASIC_CODES:
            if not label & v:
                continue
            explored += 1
            child = cur.copy()
            child._m[i, j] = v
            child._m[j, i] = _CONVERSE_CODE[v]
            ok_child, closed = path_consistency(child)
            if ok_child:
                found = search(closed)
                if found is not None:
                    return found
        return None

    result = search(refined)
    if result is not None:
        return SolveOutcome(True, "backtracking", scenario=_scenario_from(result))
    return SolveOutcome(
        False,
        "backtracking",
        witness={"type": "search_exhausted", "explored": explored},
    )


# ---------------------------------------------------------------------------
# Trivial-core profiles
# ---------------------------------------------------------------------------


def solve_trivial_core(net: ConstraintNetwork, core: Relation) -> SolveOutcome:
    """Decide a network whose every label is NONE or contains the core.

    For such profiles an explicit NONE label is the only possible
    contradiction: otherwise a single canonical scenario satisfies every
    constraint at once (all pairs CG, all pairs CNO, or a containment chain
    along the vertex order for the CGPP|CGPPi core).

    Raises:
        ValueError: if core is not one of CG, CNO, CGPP|CGPPi.
        ProfileError: if some label is neither NONE nor a superset of core.
    """
    if core not in _TRIVIAL_CORES:
        raise ValueError(f"no trivial-core solver for core {format_relation(core)}")
    if net.self_contradiction is not None:
        return SolveOutcome(False, "trivial-core", witness=_self_loop_witness(net))
    n = len(net)
    core_code = int(core)
    for i in range(n):
        for j in range(i + 1, n):
            code = int(net._m[i, j])
            if code and code & core_code != core_code:
                raise ProfileError(
                    f"label {format_relation(_RELATIONS[code])} on "
                    f"({net.names[i]}, {net.names[j]}) neither is NONE nor "
                    f"contains {format_relation(core)}"
                )
    bottom = _first_bottom_edge(net)
    if bottom is not None:
        i, j = bottom
        witness = {"type": "bottom_edge", "edge": [net.names[i], net.names[j]]}
        return SolveOutcome(False, "trivial-core", witness=witness)
    if core is Relation.CG:
        fill = lambda i, j: 1
    elif core is Relation.CNO:
        fill = lambda i, j: 8
    else:
        fill = lambda i, j: 2
    pairs = tuple(
        (i, j, fill(i, j)) for i in range(n) for j in range(i + 1, n)
    )
    return SolveOutcome(True, "trivial-core", scenario=Scenario(pairs))


# ---------------------------------------------------------------------------
# Gadget graphs for the two maximal subalgebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetGraph:
    """Primitive-constraint graph a network translates into.

    Vertices 0..n_base-1 are the network's vertices in order; the rest are
    auxiliaries introduced by single labels.  leq holds directed arcs,
    the other arrays undirected edges; bottom holds the base pairs whose
    label was NONE.  All arrays have shape (k, 2).
    """

    n_base: int
    n_total: int
    leq: np.ndarray
    eqx: np.ndarray
    nle: np.ndarray
    bsy: np.ndarray
    bottom: np.ndarray


def _edge_array(parts: list[np.ndarray]) -> np.ndarray:
    if not parts:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(parts, axis=0)


def _pair_codes(net: ConstraintNetwork) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(len(net), k=1)
    codes = net._m[rows, cols].astype(np.int64)
    keep = codes != 15
    return rows[keep].astype(np.int64), cols[keep].astype(np.int64), codes[keep]


def _reject_profile(net, rows, cols, codes, reject, class_name) -> None:
    bad = np.isin(codes, reject)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise ProfileError(
            f"label {format_relation(_RELATIONS[int(codes[k])])} on "
            f"({net.names[int(rows[k])]}, {net.names[int(cols[k])]}) is outside {class_name}"
        )


def to_gadget_m99(net: ConstraintNetwork) -> GadgetGraph:
    """Translate an M99-profile network into primitive constraints.

    Single labels map directly (CG to a two-way LEQ arc pair, CGPP to an
    arc plus NLE, CNO to EQX plus NLE, and so on); the four labels that are
    compositions through an intermediate region get one auxiliary vertex z
    each, e.g. CGPP|CNO on (i, j) becomes leq(i, z), eqx(z, j), nle(i, j).

    Raises:
        ProfileError: on a label outside M99 (one containing exactly
            CGPP and CGPPi of the non-CG cases).
    """
    n = len(net)
    rows, cols, codes = _pair_codes(net)
    _reject_profile(net, rows, cols, codes, _M99_REJECT, "the M99 subalgebra")
    aux_mask = np.isin(codes, _M99_AUX)
    n_aux = int(aux_mask.sum())
    aux_id = np.full(codes.shape, -1, dtype=np.int64)
    aux_id[aux_mask] = n + np.arange(n_aux)

    leq_parts = []
    m = codes == 1
    leq_parts.append(np.stack([rows[m], cols[m]], axis=1))
    leq_parts.append(np.stack([cols[m], rows[m]], axis=1))
    m = np.isin(codes, _M99_LEQ_FWD)
    fwd_dst = np.where(aux_mask, aux_id, cols)
    leq_parts.append(np.stack([rows[m], fwd_dst[m]], axis=1))
    m = np.isin(codes, _M99_LEQ_REV)
    leq_parts.append(np.stack([cols[m], rows[m]], axis=1))
    m = np.isin(codes, _M99_LEQ_AUXREV)
    leq_parts.append(np.stack([aux_id[m], rows[m]], axis=1))

    eqx_parts = []
    m = np.isin(codes, _M99_EQX_BASE)
    eqx_parts.append(np.stack([rows[m], cols[m]], axis=1))
    eqx_parts.append(np.stack([aux_id[aux_mask], cols[aux_mask]], axis=1))

    m = np.isin(codes, _M99_NLE)
    nle = np.stack([rows[m], cols[m]], axis=1)
    m = codes == 0
    bottom = np.stack([rows[m], cols[m]], axis=1)
    return GadgetGraph(
        n_base=n,
        n_total=n + n_aux,
        leq=_edge_array(leq_parts),
        eqx=_edge_array(eqx_parts),
        nle=nle,
        bsy=np.empty((0, 2), dtype=np.int64),
        bottom=bottom,
    )


def to_gadget_m81(net: ConstraintNetwork) -> GadgetGraph:
    """Translate an M81-profile network into primitive constraints.

    No auxiliaries are needed: every M81 label is an intersection of LEQ
    arcs, BSY ("congruent or one inside the other") edges and NLE edges.

    Raises:
        ProfileError: on a label outside M81 (one pairing CNO with
            neither or both of CGPP/CGPPi absent — every code from CNO
            alone through CG|CNO mixtures).
    """
    n = len(net)
    rows, cols, codes = _pair_codes(net)
    _reject_profile(net, rows, cols, codes, _M81_REJECT, "the M81 subalgebra")

    leq_parts = []
    m = codes == 1
    leq_parts.append(np.stack([rows[m], cols[m]], axis=1))
    leq_parts.append(np.stack([cols[m], rows[m]], axis=1))
    m = np.isin(codes, _M81_LEQ_FWD)
    leq_parts.append(np.stack([rows[m], cols[m]], axis=1))
    m = np.isin(codes, _M81_LEQ_REV)
    leq_parts.append(np.stack([cols[m], rows[m]], axis=1))

    m = np.isin(codes, _M81_BSY)
    bsy = np.stack([rows[m], cols[m]], axis=1)
    m = np.isin(codes, _M81_NLE)
    nle = np.stack([rows[m], cols[m]], axis=1)
    m = codes == 0
    bottom = np.stack([rows[m], cols[m]], axis=1)
    return GadgetGraph(
        n_base=n,
        n_total=n,
        leq=_edge_array(leq_parts),
        eqx=np.empty((0, 2), dtype=np.int64),
        nle=nle,
        bsy=bsy,
        bottom=bottom,
    )


# ---------------------------------------------------------------------------
# Reachability machinery
# ---------------------------------------------------------------------------


def _scc_python(n: int, adj: list[list[int]]) -> np.ndarray:
    """Iterative Tarjan; returns a component label per vertex."""
    unvisited = -1
    index = [unvisited] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = np.zeros(n, dtype=np.int64)
    counter = 0
    n_comp = 0
    for root in range(n):
        if index[root] != unvisited:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [[root, 0]]
        while work:
            frame = work[-1]
            v = frame[0]
            nbrs = adj[v]
            advanced = False
            while frame[1] < len(nbrs):
                w = nbrs[frame[1]]
                frame[1] += 1
                if index[w] == unvisited:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append([w, 0])
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    return comp


def _scc_labels(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Strongly connected component label per vertex, backend by size."""
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if n >= _SCIPY_MIN_VERTICES:
        graph = csr_matrix(
            (np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n)
        )
        _, labels = connected_components(graph, directed=True, connection="strong")
        return labels.astype(np.int64)
    adj: list[list[int]] = [[] for _ in range(n)]
    for s, d in zip(src.tolist(), dst.tolist()):
        adj[s].append(d)
    return _scc_python(n, adj)


def _linked_queries(
    n_comp: int, csrc: np.ndarray, cdst: np.ndarray, qu: np.ndarray, qv: np.ndarray
) -> np.ndarray:
    """For each query pair of components, is one reachable from the other?

    Queries are resolved in batches: repeatedly pick the component occurring
    most often among the unresolved queries, compute its descendants and
    ancestors with one breadth-first sweep each, and answer every query
    touching it.  Dense translations concentrate on a few components, so a
    handful of sweeps resolves everything.
    """
    n_q = len(qu)
    linked = np.zeros(n_q, dtype=bool)
    if n_q == 0 or len(csrc) == 0:
        return linked
    if n_comp >= _SCIPY_MIN_VERTICES:
        graph = csr_matrix(
            (np.ones(len(csrc), dtype=np.int8), (csrc, cdst)), shape=(n_comp, n_comp)
        )
        graph_t = graph.T.tocsr()
        unresolved = np.ones(n_q, dtype=bool)
        while unresolved.any():
            active = np.concatenate([qu[unresolved], qv[unresolved]])
            c = int(np.bincount(active, minlength=n_comp).argmax())
            fwd = np.zeros(n_comp, dtype=bool)
            fwd[breadth_first_order(graph, c, return_predecessors=False)] = True
            bwd = np.zeros(n_comp, dtype=bool)
            bwd[breadth_first_order(graph_t, c, return_predecessors=False)] = True
            hit_u = unresolved & (qu == c)
            linked[hit_u] = fwd[qv[hit_u]] | bwd[qv[hit_u]]
            hit_v = unresolved & (qv == c)
            linked[hit_v] = fwd[qu[hit_v]] | bwd[qu[hit_v]]
            unresolved &= ~(hit_u | hit_v)
        return linked
    fwd_adj: list[list[int]] = [[] for _ in range(n_comp)]
    for s, d in zip(csrc.tolist(), cdst.tolist()):
        fwd_adj[s].append(d)
    desc_cache: dict[int, set[int]] = {}

    def descendants(c: int) -> set[int]:
        if c not in desc_cache:
            seen = {c}
            frontier = [c]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in fwd_adj[x]:
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            desc_cache[c] = seen
        return desc_cache[c]

    for k in range(n_q):
        a = int(qu[k])
        b = int(qv[k])
        linked[k] = b in descendants(a) or a in descendants(b)
    return linked


def _bottom_witness(g: GadgetGraph, names) -> dict:
    i, j = (int(x) for x in g.bottom[0])
    return {"type": "bottom_edge", "edge": [names[i], names[j]]}


def _cycle_chord_witness(comp: np.ndarray, g: GadgetGraph, names, u: int, v: int) -> dict:
    cid = comp[u]
    cluster = [names[w] for w in range(g.n_base) if comp[w] == cid]
    return {"type": "cycle_chord", "cycle": cluster, "chord": [names[u], names[v]]}


def detect_m99(g: GadgetGraph, names) -> tuple[bool, dict | None]:
    """Decide an M99 gadget graph.

    Repeatedly: compute strong components of the LEQ digraph; every EQX
    edge spanning two components where one reaches the other forces its
    endpoints congruent (the LEQ path rules out the unembeddable case), so
    reciprocal arcs are added and components recomputed.  Each round merges
    at least two components, so the loop ends.  At the fixpoint the members
    of one component are pairwise congruent in every solution, hence an NLE
    edge inside a component is a contradiction — and absent one, reading
    the components as congruence classes yields a solution.
    """
    if len(g.bottom):
        return False, _bottom_witness(g, names)
    src = g.leq[:, 0]
    dst = g.leq[:, 1]
    eqx_u = g.eqx[:, 0]
    eqx_v = g.eqx[:, 1]
    while True:
        comp = _scc_labels(g.n_total, src, dst)
        qu = comp[eqx_u]
        qv = comp[eqx_v]
        pending = qu != qv
        if not pending.any():
            break
        csrc = comp[src]
        cdst = comp[dst]
        span = csrc != cdst
        cond = np.unique(np.stack([csrc[span], cdst[span]], axis=1), axis=0)
        n_comp = int(comp.max()) + 1 if len(comp) else 0
        linked = _linked_queries(n_comp, cond[:, 0], cond[:, 1], qu[pending], qv[pending])
        if not linked.any():
            break
        forced_u = eqx_u[pending][linked]
        forced_v = eqx_v[pending][linked]
        src = np.concatenate([src, forced_u, forced_v])
        dst = np.concatenate([dst, forced_v, forced_u])
    same = comp[g.nle[:, 0]] == comp[g.nle[:, 1]]
    if same.any():
        k = int(np.flatnonzero(same)[0])
        u, v = (int(x) for x in g.nle[k])
        return False, _cycle_chord_witness(comp, g, names, u, v)
    return True, None


def detect_m81(g: GadgetGraph, names) -> tuple[bool, dict | None]:
    """Decide an M81 gadget graph.

    A single strong-components pass suffices: without EQX edges nothing
    forces congruence beyond mutual LEQ reachability, BSY edges are always
    satisfiable within whatever the LEQ arcs allow, so the only
    contradiction is an NLE edge inside one strong component.
    """
    if len(g.bottom):
        return False, _bottom_witness(g, names)
    comp = _scc_labels(g.n_total, g.leq[:, 0], g.leq[:, 1])
    same = comp[g.nle[:, 0]] == comp[g.nle[:, 1]]
    if same.any():
        k = int(np.flatnonzero(same)[0])
        u, v = (int(x) for x in g.nle[k])
        return False, _cycle_chord_witness(comp, g, names, u, v)
    return True, None


def solve_m99(net: ConstraintNetwork) -> SolveOutcome:
    """Polynomial decider for networks labeled within M99."""
    if net.self_contradiction is not None:
        return SolveOutcome(False, "m99", witness=_self_loop_witness(net))
    ok, witness = detect_m99(to_gadget_m99(net), net.names)
    return SolveOutcome(ok, "m99", witness=witness)


def solve_m81(net: ConstraintNetwork) -> SolveOutcome:
    """Polynomial decider for networks labeled within M81."""
    if net.self_contradiction is not None:
        return SolveOutcome(False, "m81", witness=_self_loop_witness(net))
    ok, witness = detect_m81(to_gadget_m81(net), net.names)
    return SolveOutcome(ok, "m81", witness=witness)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def solve(net: ConstraintNetwork) -> SolveOutcome:
    """Decide consistency with the cheapest complete solver for the profile.

    The label profile is classified once; trivial-core, M99 and M81
    profiles go to their polynomial deciders and everything else to the
    complete backtracking solver.  The outcome carries the classification.
    """
    cls = classify(net.relation_profile())
    if cls.kind is Kind.TRIVIAL_CORE:
        out = solve_trivial_core(net, cls.core)
    elif cls.kind is Kind.MAX_M99:
        out = solve_m99(net)
    elif cls.kind is Kind.MAX_M81:
        out = solve_m81(net)
    else:
        out = solve_backtracking(net)
    return dataclasses.replace(out, classification=cls)


# ---------------------------------------------------------------------------
# Path-consistency incompleteness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PcGapReport:
    """A network path consistency accepts despite having no scenario."""

    network: ConstraintNetwork
    phase: str
    examined: int


def _network_from_codes(n: int, assignment: dict[tuple[int, int], int]) -> ConstraintNetwork:
    net = ConstraintNetwork(tuple(f"v{k}" for k in range(n)))
    for (i, j), code in assignment.items():
        if code != 15:
            net.add_constraint(f"v{i}", f"v{j}", _RELATIONS[code])
    return net


def _is_pc_gap(net: ConstraintNetwork) -> bool:
    ok, _ = path_consistency(net)
    if not ok:
        return False
    return not solve_oracle(net, max_vertices=len(net)).consistent


def search_pc_incompleteness(
    max_random_trials: int = 500, seed: int = 2026
) -> PcGapReport:
    """Find a network that is path-consistent but has no scenario.

    Three phases, cheapest evidence first: an exhaustive sweep of all
    {CGPP|CGPPi, CNO}-labeled networks on 3 and 4 vertices (which proves no
    gap exists that small), then a structured family — a cycle of
    CGPP|CGPPi labels whose every chord is CNO — on 5 to 8 vertices, then
    seeded random networks over the same palette as a fallback.

    Raises:
        RuntimeError: if every phase comes up empty.
    """
    examined = 0
    palette_codes = (6, 8, 15)
    for n in (3, 4):
        pair_list = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for combo in itertools.product(palette_codes, repeat=len(pair_list)):
            net = _network_from_codes(n, dict(zip(pair_list, combo)))
            examined += 1
            if _is_pc_gap(net):
                return PcGapReport(net, "exhaustive-small", examined)
    for n in range(5, 9):
        assignment = {
            (i, j): 8 for i in range(n) for j in range(i + 1, n)
        }
        for k in range(n - 1):
            assignment[(k, k + 1)] = 6
        assignment[(0, n - 1)] = 6
        net = _network_from_codes(n, assignment)
        examined += 1
        if _is_pc_gap(net):
            return PcGapReport(net, "cycle-family", examined)
    rng = np.random.default_rng(seed)
    palette = tuple(_RELATIONS[c] for c in (6, 8))
    for _ in range(max_random_trials):
        n = int(rng.integers(5, 9))
        net = random_network(n, density=0.9, palette=palette, rng=rng)
        examined += 1
        if _is_pc_gap(net):
            return PcGapReport(net, "random-fallback", examined)
    raise RuntimeError("no path-consistency gap found in any search phase")
