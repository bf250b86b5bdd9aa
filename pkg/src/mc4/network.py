"""Constraint networks over the MC-4 relations.

A network has a finite set of named vertices (each standing for a spatial
region) and one MC-4 relation per unordered vertex pair, constraining the
congruence relationship of the two regions.  Unconstrained pairs carry ALL,
every vertex relates to itself by CG, and the two orientations of a pair
always hold converse labels, so the whole state is a dense n-by-n matrix of
relation codes.

The text format, one declaration per line with ``#`` starting a comment:

    # vertices first, then constraints
    nodes: a b c
    a b : CG|CGPP
    b c : CNO

Repeated declarations for the same pair intersect, so a contradictory file
stores NONE on the edge rather than failing at parse time.  A self-loop
``a a : R`` is satisfiable only if CG is in R (in which case it says
nothing); the parser rejects self-loops without CG, while the programmatic
``add_constraint`` records them as an immediate contradiction.

``path_consistency`` is the workhorse approximation: it refines every label
against all two-step paths until a fixpoint, detecting many inconsistencies
cheaply, though not all — deciding consistency exactly is the job of
mc4.solvers.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    ParseError,
    Relation,
    RelationSet,
    _COMPOSE_CODE,
    _CONVERSE_CODE,
    _POPCOUNT,
    _RELATIONS,
    format_relation,
    parse_relation,
)

_CONVERSE_ARR = np.array(_CONVERSE_CODE, dtype=np.uint8)
_POPCOUNT_ARR = np.array(_POPCOUNT, dtype=np.uint8)


class ConstraintNetwork:
    """Dense matrix of MC-4 labels over named vertices.

    The matrix invariants (CG diagonal, converse-coherent orientations,
    ALL for unconstrained pairs) are maintained by every mutator, so any
    network reachable through the public API is well-formed.
    """

    __slots__ = ("names", "_index", "_m", "_self_contradiction")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate vertex name")
        self.names = names
        self._index = {name: k for k, name in enumerate(names)}
        n = len(names)
        self._m = np.full((n, n), 15, dtype=np.uint8)
        np.fill_diagonal(self._m, 1)
        self._self_contradiction: str | None = None

    def __len__(self) -> int:
        return len(self.names)

    def _vertex(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown vertex {name!r}") from None

    @property
    def self_contradiction(self) -> str | None:
        """Vertex whose self-loop was constrained to exclude CG, if any."""
        return self._self_contradiction

    def add_constraint(self, u: str, v: str, r: Relation) -> None:
        """Constrain the pair (u, v) by r, intersecting with any prior label.

        A self-loop is a no-op when CG is in r and is otherwise recorded as
        an immediate contradiction (CG always holds reflexively, so no
        assignment could satisfy it).
        """
        i = self._vertex(u)
        j = self._vertex(v)
        if i == j:
            if Relation.CG not in r and self._self_contradiction is None:
                self._self_contradiction = u
            return
        code = int(self._m[i, j]) & int(r)
        self._m[i, j] = code
        self._m[j, i] = _CONVERSE_CODE[code]

    def label(self, u: str, v: str) -> Relation:
        """Current label on (u, v); ALL when unconstrained, CG when u == v."""
        return _RELATIONS[int(self._m[self._vertex(u), self._vertex(v)])]

    def copy(self) -> "ConstraintNetwork":
        dup = ConstraintNetwork.__new__(ConstraintNetwork)
        dup.names = self.names
        dup._index = self._index
        dup._m = self._m.copy()
        dup._self_contradiction = self._self_contradiction
        return dup

    def to_array(self) -> np.ndarray:
        """Copy of the label matrix as relation codes (uint8)."""
        return self._m.copy()

    def is_atomic(self) -> bool:
        """True iff every off-diagonal label is a single base case."""
        n = len(self)
        if n < 2:
            return True
        off = ~np.eye(n, dtype=bool)
        return bool(np.all(_POPCOUNT_ARR[self._m[off]] == 1))

    def relation_profile(self) -> RelationSet:
        """Set of labels appearing on the unordered pairs of the network."""
        n = len(self)
        if n < 2:
            return RelationSet(0)
        mask = 0
        for code in np.unique(self._m[np.triu_indices(n, k=1)]):
            mask |= 1 << int(code)
        return RelationSet(mask)


def path_consistency(net: ConstraintNetwork) -> tuple[bool, ConstraintNetwork]:
    """Refine every label against all two-step paths until a fixpoint.

    Returns (ok, refined) where refined is a new network holding the
    fixpoint labels; ok is False when some label was refined to NONE (or
    one already was), in which case the network is certainly inconsistent.
    ok True means no local contradiction was found, which does not by
    itself guarantee consistency.
    """
    refined = net.copy()
    n = len(refined)
    if refined._self_contradiction is not None:
        return False, refined
    m = [[int(x) for x in row] for row in refined._m]

    def write_back() -> None:
        if n:
            refined._m[:] = np.array(m, dtype=np.uint8)

    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] == 0:
                return False, refined
    compose_t = _COMPOSE_CODE
    conv = _CONVERSE_CODE
    queue = deque((i, j) for i in range(n) for j in range(n) if i != j)
    queued = set(queue)
    while queue:
        i, j = queue.popleft()
        queued.discard((i, j))
        rij = m[i][j]
        row_ij = compose_t[rij]
        for k in range(n):
            if k == i or k == j:
                continue
            new = m[i][k] & row_ij[m[j][k]]
            if new != m[i][k]:
                if new == 0:
                    m[i][k] = 0
                    m[k][i] = 0
                    write_back()
                    return False, refined
                m[i][k] = new
                m[k][i] = conv[new]
                if (i, k) not in queued:
                    queue.append((i, k))
                    queued.add((i, k))
            new = m[k][j] & compose_t[m[k][i]][rij]
            if new != m[k][j]:
                if new == 0:
                    m[k][j] = 0
                    m[j][k] = 0
                    write_back()
                    return False, refined
                m[k][j] = new
                m[j][k] = conv[new]
                if (k, j) not in queued:
                    queue.append((k, j))
                    queued.add((k, j))
    write_back()
    return True, refined


def is_algebraically_closed(net: ConstraintNetwork) -> bool:
    """True iff labels are non-NONE and every label survives every triangle.

    The condition is label(i,j) contained in compose(label(i,k), label(k,j))
    for all triples; on atomic networks it coincides with the
    path_consistency fixpoint reporting ok.
    """
    if net._self_contradiction is not None:
        return False
    n = len(net)
    m = [[int(x) for x in row] for row in net._m]
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j] == 0:
                return False
            for k in range(n):
                if k == i or k == j:
                    continue
                if m[i][j] & ~_COMPOSE_CODE[m[i][k]][m[k][j]]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def parse_network(text: str) -> ConstraintNetwork:
    """Parse the text format documented in the module docstring.

    Raises:
        ParseError: with a 1-based line number, on any malformed line,
            undeclared or duplicate vertices, unknown relation tokens, or a
            self-loop whose relation excludes CG.
    """
    net: ConstraintNetwork | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if net is None:
            if line[:6].lower() != "nodes:":
                raise ParseError("expected a 'nodes:' line before constraints", line=lineno)
            names = line[6:].split()
            if not names:
                raise ParseError("'nodes:' line declares no vertices", line=lineno)
            for name in names:
                if ":" in name:
                    raise ParseError(
                        f"vertex name {name!r} may not contain ':'", token=name, line=lineno
                    )
            if len(set(names)) != len(names):
                raise ParseError("duplicate vertex name", line=lineno)
            net = ConstraintNetwork(names)
            continue
        if ":" not in line:
            raise ParseError("expected 'NAME NAME : RELATION'", line=lineno)
        left, right = line.split(":", 1)
        parts = left.split()
        if len(parts) != 2:
            raise ParseError("expected exactly two vertex names before ':'", line=lineno)
        u, v = parts
        for name in (u, v):
            if name not in net._index:
                raise ParseError(f"undeclared vertex {name!r}", token=name, line=lineno)
        try:
            rel = parse_relation(right)
        except ParseError as exc:
            raise ParseError(str(exc), token=exc.token, line=lineno) from None
        if u == v and Relation.CG not in rel:
            raise ParseError(
                f"self-loop on {u!r} excludes CG and is unsatisfiable", token=u, line=lineno
            )
        net.add_constraint(u, v, rel)
    if net is None:
        raise ParseError("no 'nodes:' line found")
    return net


def serialize_network(net: ConstraintNetwork) -> str:
    """Canonical text form: one 'nodes:' line, then each non-ALL pair once.

    Pairs are emitted in declaration order of their endpoints; ALL labels
    are omitted as they say nothing.  Round-trips through parse_network.
    """
    if net._self_contradiction is not None:
        raise ValueError("network with a self-contradictory loop cannot be serialized")
    lines = ["nodes: " + " ".join(net.names)]
    n = len(net)
    for i in range(n):
        for j in range(i + 1, n):
            code = int(net._m[i, j])
            if code != 15:
                lines.append(f"{net.names[i]} {net.names[j]} : {format_relation(_RELATIONS[code])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def random_network(
    n_vertices: int,
    density: float,
    palette: Iterable[Relation],
    rng: np.random.Generator | int | None = None,
) -> ConstraintNetwork:
    """Random network on vertices v0..v{n-1}.

    Each unordered pair is constrained independently with probability
    ``density``, by a label drawn uniformly from ``palette``; other pairs
    stay ALL.  Pass an int (or a Generator) as ``rng`` to make the draw
    reproducible.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    codes = np.array([int(r) for r in palette], dtype=np.uint8)
    if codes.size == 0:
        raise ValueError("palette is empty")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must be within [0, 1]")
    net = ConstraintNetwork(tuple(f"v{k}" for k in range(n_vertices)))
    rows, cols = np.triu_indices(n_vertices, k=1)
    n_pairs = rows.size
    if n_pairs:
        hit = rng.random(n_pairs) < density
        drawn = codes[rng.integers(0, codes.size, size=n_pairs)]
        vals = np.where(hit, drawn, np.uint8(15)).astype(np.uint8)
        net._m[rows, cols] = vals
        net._m[cols, rows] = _CONVERSE_ARR[vals]
    return net
