"""Bistellar moves: detection, application, degree raising and flip search.

A move is carried by a removable face alpha together with the opposing
non-face beta: the link of alpha must be the boundary sphere of the simplex
on beta's vertices.  Applying the move replaces every facet through alpha by
``beta + alpha - v`` over the vertices v of alpha.  Moves of type i with
0 < i < dim are proper and leave the vertex count unchanged; a dim-move
deletes a vertex and starring a vertex in a facet is its inverse.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import recognition
from .core import Face, PreconditionError, SimplicialComplex, _label_key, from_facets
from .isomorphism import canonical_form


class LemmaViolation(RuntimeError):
    """A degree-raising move guaranteed to exist was not found."""


@dataclass(frozen=True)
class BistellarMove:
    """A removable face with its opposing face; type i removes a (d-i)-face."""

    alpha: frozenset[str]
    beta: frozenset[str]
    move_type: int

    def sort_key(self):
        return (
            tuple(sorted((_label_key(v) for v in self.alpha))),
            tuple(sorted((_label_key(v) for v in self.beta))),
        )

    def inverse(self, dim: int) -> "BistellarMove":
        return BistellarMove(self.beta, self.alpha, dim - self.move_type)

    def describe(self) -> str:
        a = ",".join(sorted(self.alpha, key=_label_key))
        b = ",".join(sorted(self.beta, key=_label_key))
        return f"{self.move_type}-move alpha={{{a}}} beta={{{b}}}"


REMOVABLE = "removable"
BETA_IS_FACE = "beta is a face"
LINK_NOT_BOUNDARY = "link is not a standard sphere boundary"


def classify_face(K: SimplicialComplex, alpha: Face) -> tuple[str, frozenset[str] | None]:
    """Whether alpha is removable; on failure, why not.

    Returns (status, beta): status is REMOVABLE with the opposing face, or
    BETA_IS_FACE with the offending face, or LINK_NOT_BOUNDARY with None.
    """
    link = K.link(alpha)
    i = K.dim - (len(frozenset(str(v) for v in alpha)) - 1)
    if link.vertex_count != i + 1 or len(link.facet_masks) != i + 1:
        return LINK_NOT_BOUNDARY, None
    full = (1 << link.vertex_count) - 1
    expected = sorted(full ^ (1 << b) for b in range(link.vertex_count))
    if list(link.facet_masks) != expected:
        return LINK_NOT_BOUNDARY, None
    beta = frozenset(link.labels)
    if K.has_face(beta):
        return BETA_IS_FACE, beta
    return REMOVABLE, beta


def removable_faces(K: SimplicialComplex, i: int) -> list[BistellarMove]:
    """All bistellar i-moves available on the d-pseudomanifold K."""
    d = K.dim
    if i < 1 or i > d:
        raise PreconditionError(f"move type {i} out of range 1..{d}")
    if not recognition.is_pseudomanifold(K):
        raise PreconditionError("move detection needs a pseudomanifold")
    moves = []
    for am in K.faces_masks(d - i):
        alpha = K.face_labels(am)
        status, beta = classify_face(K, alpha)
        if status == REMOVABLE:
            moves.append(BistellarMove(alpha, beta, i))
    moves.sort(key=BistellarMove.sort_key)
    return moves


def apply_move(K: SimplicialComplex, move: BistellarMove) -> SimplicialComplex:
    """Apply a validated move; stale moves are rejected."""
    if not K.has_face(move.alpha):
        raise PreconditionError(f"stale move: {move.describe()} (alpha is not a face)")
    status, beta = classify_face(K, move.alpha)
    if status != REMOVABLE or beta != frozenset(move.beta):
        raise PreconditionError(f"stale move: {move.describe()} ({status})")
    alpha = frozenset(str(v) for v in move.alpha)
    kept = [f for f in K.facets() if not alpha <= f]
    added = [beta | alpha - {v} for v in alpha]
    return from_facets(kept + added)


def star_vertex(K: SimplicialComplex, facet: Face, label) -> SimplicialComplex:
    """Replace a facet by the cone over its boundary from a fresh vertex."""
    target = frozenset(str(v) for v in facet)
    if target not in K.facets():
        raise PreconditionError(f"{sorted(target)} is not a facet")
    new = str(label)
    if new in K.labels:
        raise PreconditionError(f"label {new!r} is already a vertex")
    kept = [f for f in K.facets() if f != target]
    added = [(target - {w}) | {new} for w in target]
    return from_facets(kept + added)


# -- degree raising and neighbourly reduction ---------------------------------


def vertex_degrees(K: SimplicialComplex) -> dict[str, int]:
    return {v: K.degree([v]) for v in K.labels}


def degree_raising_moves(K: SimplicialComplex, u) -> list[BistellarMove]:
    """Every 1-move creating an edge at u: exhaustive over triangles of lk(u)."""
    if K.dim != 3:
        raise PreconditionError("degree raising is a dimension-3 operation")
    u = str(u)
    link = K.link([u])
    moves = []
    for tm in link.facet_masks:
        tri = link.face_labels(tm)
        opposite = K.link(tri)
        others = set(opposite.labels) - {u}
        if len(opposite.labels) != 2 or len(others) != 1:
            continue
        x = next(iter(others))
        if K.has_face({u, x}):
            continue
        status, beta = classify_face(K, tri)
        if status == REMOVABLE and beta == frozenset({u, x}):
            moves.append(BistellarMove(tri, beta, 1))
    moves.sort(key=BistellarMove.sort_key)
    return moves


def raise_min_degree(K: SimplicialComplex) -> BistellarMove:
    """A 1-move raising the degree of a minimum-degree vertex.

    Guaranteed to exist for combinatorial 3-manifolds on at most 9 vertices
    with minimum degree <= n-2; its absence is surfaced as LemmaViolation
    because it would falsify that guarantee.
    """
    n = K.vertex_count
    if n > 9:
        raise PreconditionError(f"degree raising is guaranteed only for n <= 9, got {n}")
    if not recognition.is_combinatorial_3_manifold(K):
        raise PreconditionError("degree raising needs a combinatorial 3-manifold")
    degrees = vertex_degrees(K)
    k = min(degrees.values())
    if k > n - 2:
        raise PreconditionError(f"minimum degree {k} exceeds n-2 = {n - 2} (already neighbourly)")
    u = min((v for v, dv in degrees.items() if dv == k), key=_label_key)
    moves = degree_raising_moves(K, u)
    if not moves:
        raise LemmaViolation(
            f"no 1-move raises deg({u}) = {k} on an n={n} combinatorial 3-manifold"
        )
    return moves[0]


def neighbourly_reduction(
    K: SimplicialComplex,
) -> tuple[SimplicialComplex, list[BistellarMove]]:
    """Raise minimum degrees until the 1-skeleton is complete.

    Each 1-move adds exactly one edge, so the move list has length
    36 - f_1(K) for a 9-vertex input, which is at most 10.
    """
    if K.vertex_count != 9 or K.dim != 3:
        raise PreconditionError("neighbourly reduction expects a 9-vertex 3-complex")
    if not recognition.is_combinatorial_3_manifold(K):
        raise PreconditionError("neighbourly reduction needs a combinatorial 3-manifold")
    moves: list[BistellarMove] = []
    current = K
    budget = 36 - len(current.faces_masks(1))
    while not recognition.is_neighbourly(current):
        if len(moves) >= budget:
            raise LemmaViolation("reduction exceeded the edge-count budget")
        move = raise_min_degree(current)
        current = apply_move(current, move)
        moves.append(move)
    return current, moves


# -- flip graph search ---------------------------------------------------------


def proper_moves(K: SimplicialComplex) -> list[BistellarMove]:
    d = K.dim
    moves: list[BistellarMove] = []
    for i in range(1, d):
        moves.extend(removable_faces(K, i))
    moves.sort(key=BistellarMove.sort_key)
    return moves


def flip_reachable(
    K: SimplicialComplex,
    L: SimplicialComplex,
    move_budget: int,
    vertex_cap: int,
) -> tuple[bool, list[BistellarMove] | None]:
    """Breadth-first search of the proper-move flip graph, canonical dedupe.

    False means "not found within the budget", not a proof of unreachability.
    """
    if move_budget <= 0 or vertex_cap <= 0:
        raise PreconditionError("move budget and vertex cap must be positive")
    if K.dim != L.dim:
        raise PreconditionError("flip search needs complexes of equal dimension")
    if K.vertex_count > vertex_cap or L.vertex_count > vertex_cap:
        raise PreconditionError("input exceeds the vertex cap")
    target = canonical_form(L).bytes
    start = canonical_form(K).bytes
    if start == target:
        return True, []
    seen = {start}
    frontier: list[tuple[SimplicialComplex, list[BistellarMove]]] = [(K, [])]
    for _ in range(move_budget):
        next_frontier: list[tuple[SimplicialComplex, list[BistellarMove]]] = []
        for current, path in frontier:
            for move in proper_moves(current):
                after = apply_move(current, move)
                digest = canonical_form(after).bytes
                if digest in seen:
                    continue
                if digest == target:
                    return True, path + [move]
                seen.add(digest)
                next_frontier.append((after, path + [move]))
        if not next_frontier:
            return False, None
        frontier = next_frontier
    return False, None


# -- seeded random spheres -----------------------------------------------------


def random_three_sphere(
    seed: int, vertices: int = 9, churn: int = 12
) -> SimplicialComplex:
    """A pseudo-random combinatorial 3-sphere grown from the 5-vertex sphere.

    Starting from the boundary of the 4-simplex, vertices are starred into
    random facets (inverse collapses) interleaved with random proper moves,
    then `churn` further proper moves are applied.  Every intermediate step
    is a bistellar move, so the result is always a combinatorial 3-sphere.
    """
    if vertices < 5 or vertices > 16:
        raise PreconditionError("vertex target out of range 5..16")
    rng = random.Random(seed)
    K = from_facets(combinations([str(i) for i in range(1, 6)], 4))
    next_label = 6

    def random_proper_step(current: SimplicialComplex) -> SimplicialComplex:
        moves = proper_moves(current)
        if not moves:
            return current
        return apply_move(current, rng.choice(moves))

    while K.vertex_count < vertices:
        for _ in range(rng.randrange(0, 3)):
            K = random_proper_step(K)
        facet = rng.choice(K.facets())
        K = star_vertex(K, facet, str(next_label))
        next_label += 1
    for _ in range(churn):
        K = random_proper_step(K)
    return K
