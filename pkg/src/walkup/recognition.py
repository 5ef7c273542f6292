"""Decision procedures for the structural classes the toolkit quantifies over.

Two-sphere recognition relies on surface classification: a pure, connected
2-complex in which every edge lies in exactly two triangles and every vertex
link is a single cycle is a closed surface, and it is a 2-sphere exactly when
its Euler characteristic is 2.  That makes 3-manifold recognition complete in
dimension 3, since all 2-spheres are combinatorial.

Collapsibility is decided by exhaustive backtracking over free-face choices
(greedy collapsing is incomplete), memoized on the surviving face set.  The
vertex-count guardrail keeps the worst case tractable; every use here is a
simplicial complement with at most six vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import PreconditionError, SimplicialComplex, _iter_bits


@dataclass(frozen=True)
class RecognitionReport:
    is_pure: bool
    is_pseudomanifold: bool
    is_closed_surface: bool
    is_two_sphere: bool
    is_three_manifold: bool
    is_neighbourly: bool
    witnesses: tuple[tuple[str, frozenset[str]], ...] = field(default_factory=tuple)

    def witness_for(self, prop: str) -> frozenset[str] | None:
        for name, face in self.witnesses:
            if name == prop:
                return face
        return None

    def as_dict(self) -> dict:
        return {
            "is_pure": self.is_pure,
            "is_pseudomanifold": self.is_pseudomanifold,
            "is_closed_surface": self.is_closed_surface,
            "is_two_sphere": self.is_two_sphere,
            "is_three_manifold": self.is_three_manifold,
            "is_neighbourly": self.is_neighbourly,
            "witnesses": [[prop, sorted(face)] for prop, face in self.witnesses],
        }


def _purity_witness(K: SimplicialComplex) -> int | None:
    if not K.facet_masks:
        return None
    top = max(m.bit_count() for m in K.facet_masks)
    for m in K.facet_masks:
        if m.bit_count() != top:
            return m
    return None


def _skeleton_connected(K: SimplicialComplex) -> bool:
    if not K.facet_masks:
        return True
    reached = K.facet_masks[0]
    pending = [m for m in K.facet_masks[1:]]
    progress = True
    while pending and progress:
        progress = False
        still = []
        for m in pending:
            if m & reached:
                reached |= m
                progress = True
            else:
                still.append(m)
        pending = still
    return not pending


def _ridge_counts(K: SimplicialComplex) -> dict[int, int]:
    d = K.dim
    counts: dict[int, int] = {}
    for rm in K.faces_masks(d - 1):
        counts[rm] = sum(1 for f in K.facet_masks if f & rm == rm)
    return counts


def _facet_graph_connected(K: SimplicialComplex) -> tuple[bool, int | None]:
    """Connectivity of the facet adjacency graph across shared ridges."""
    facets = K.facet_masks
    if len(facets) <= 1:
        return True, None
    d = K.dim
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(len(facets)):
            if j not in seen and (facets[i] & facets[j]).bit_count() == d:
                seen.add(j)
                stack.append(j)
    if len(seen) == len(facets):
        return True, None
    missing = next(j for j in range(len(facets)) if j not in seen)
    return False, facets[missing]


def pseudomanifold_witness(K: SimplicialComplex) -> frozenset[str] | None:
    """None when K is a pseudomanifold, else a face witnessing the failure."""
    if K.dim < 1:
        raise PreconditionError("pseudomanifold test needs dimension >= 1")
    bad = _purity_witness(K)
    if bad is not None:
        return K.face_labels(bad)
    for rm, c in _ridge_counts(K).items():
        if c != 2:
            return K.face_labels(rm)
    ok, lost = _facet_graph_connected(K)
    if not ok:
        return K.face_labels(lost)
    return None


def is_pseudomanifold(K: SimplicialComplex) -> bool:
    return pseudomanifold_witness(K) is None


def _is_single_cycle(L: SimplicialComplex) -> bool:
    if L.dim != 1 or not L.is_pure or L.vertex_count < 3:
        return False
    if len(L.facet_masks) != L.vertex_count:
        return False
    deg = [0] * L.vertex_count
    for em in L.facet_masks:
        for b in _iter_bits(em):
            deg[b] += 1
    return all(d == 2 for d in deg) and _skeleton_connected(L)


def closed_surface_witness(K: SimplicialComplex) -> frozenset[str] | None:
    if K.dim != 2:
        return K.face_labels(K.facet_masks[0]) if K.facet_masks else frozenset()
    bad = _purity_witness(K)
    if bad is not None:
        return K.face_labels(bad)
    for em, c in _ridge_counts(K).items():
        if c != 2:
            return K.face_labels(em)
    for v in K.labels:
        if not _is_single_cycle(K.link([v])):
            return frozenset([v])
    if not _skeleton_connected(K):
        return K.face_labels(K.facet_masks[0])
    return None


def is_two_sphere(K: SimplicialComplex) -> bool:
    """Closed connected surface with Euler characteristic 2."""
    if K.dim != 2:
        raise PreconditionError(f"two-sphere test needs dimension 2, got {K.dim}")
    return closed_surface_witness(K) is None and K.euler_characteristic() == 2


def _two_sphere_quietly(K: SimplicialComplex) -> bool:
    return K.dim == 2 and closed_surface_witness(K) is None and K.euler_characteristic() == 2


def is_combinatorial_3_manifold(K: SimplicialComplex) -> bool:
    """Every vertex link is a 2-sphere (complete in dimension 3)."""
    if K.dim != 3:
        raise PreconditionError(f"3-manifold test needs dimension 3, got {K.dim}")
    return all(_two_sphere_quietly(K.link([v])) for v in K.labels)


def is_neighbourly(K: SimplicialComplex) -> bool:
    """Every floor(d/2)+1 vertices span a face; for dimension 3, a complete 1-skeleton."""
    size = K.dim // 2 + 1
    if size < 1 or K.vertex_count < size:
        return True
    from itertools import combinations

    return all(K.has_face(c) for c in combinations(K.labels, size))


def non_neighbourly_witness(K: SimplicialComplex) -> frozenset[str] | None:
    from itertools import combinations

    size = K.dim // 2 + 1
    for c in combinations(K.labels, size):
        if not K.has_face(c):
            return frozenset(c)
    return None


def singular_vertices(K: SimplicialComplex) -> list[str]:
    """Vertices of a 3-pseudomanifold whose links are not 2-spheres."""
    if K.dim != 3:
        raise PreconditionError("singular vertex scan needs dimension 3")
    if not is_pseudomanifold(K):
        raise PreconditionError("singular vertex scan needs a pseudomanifold")
    return [v for v in K.labels if not _two_sphere_quietly(K.link([v]))]


# -- collapsibility -----------------------------------------------------------

COLLAPSE_VERTEX_GUARDRAIL = 8


def _all_faces(K: SimplicialComplex) -> list[int]:
    faces: list[int] = []
    for i in range(K.dim + 1):
        faces.extend(K.faces_masks(i))
    return faces


def is_collapsible(
    K: SimplicialComplex,
) -> tuple[bool, list[tuple[frozenset[str], frozenset[str]]] | None]:
    """Exhaustive free-face collapsing; returns a full collapse sequence on success.

    A face is free when exactly one face properly contains it; an elementary
    collapse removes the pair.  The complex is collapsible when some sequence
    of elementary collapses leaves a single vertex.
    """
    if K.vertex_count > COLLAPSE_VERTEX_GUARDRAIL:
        raise PreconditionError(
            f"collapsibility guardrail: {K.vertex_count} vertices > {COLLAPSE_VERTEX_GUARDRAIL}"
        )
    if not K.facet_masks:
        raise PreconditionError("collapsibility of the empty complex is undefined")
    faces = _all_faces(K)
    index = {m: i for i, m in enumerate(faces)}
    nfaces = len(faces)
    supers_bits = [0] * nfaces
    for ti, tm in enumerate(faces):
        for si, sm in enumerate(faces):
            if sm != tm and sm & tm == tm:
                supers_bits[ti] |= 1 << si
    # Euler characteristic is a collapse invariant; a point has chi = 1.
    chi = sum((-1) ** (m.bit_count() - 1) for m in faces)
    if chi != 1:
        return False, None

    full = (1 << nfaces) - 1
    dead: set[int] = set()
    sequence: list[tuple[int, int]] = []

    def search(state: int) -> bool:
        if state.bit_count() == 1:
            return True
        if state in dead:
            return False
        bits = state
        while bits:
            low = bits & -bits
            ti = low.bit_length() - 1
            bits ^= low
            live_supers = supers_bits[ti] & state
            if live_supers and live_supers.bit_count() == 1:
                si = live_supers.bit_length() - 1
                sequence.append((ti, si))
                if search(state & ~low & ~live_supers):
                    return True
                sequence.pop()
        dead.add(state)
        return False

    if search(full):
        labelled = [
            (K.face_labels(faces[ti]), K.face_labels(faces[si])) for ti, si in sequence
        ]
        return True, labelled
    return False, None


def certify_sphere_via_complement(
    X: SimplicialComplex,
) -> tuple[bool, frozenset[str] | None]:
    """One-sided sphere certificate: some facet has a collapsible complement.

    False means "no certificate found", never "proved non-sphere".
    """
    if X.dim != 3 or not is_combinatorial_3_manifold(X) or not _skeleton_connected(X):
        raise PreconditionError("certificate scan needs a connected combinatorial 3-manifold")
    for fm in X.facet_masks:
        facet = X.face_labels(fm)
        complement = X.simplicial_complement(facet)
        collapsible, _ = is_collapsible(complement)
        if collapsible:
            return True, facet
    return False, None


# -- aggregate report ---------------------------------------------------------


def recognition_report(K: SimplicialComplex) -> RecognitionReport:
    """Evaluate every predicate, recording a witness face for each failure."""
    witnesses: list[tuple[str, frozenset[str]]] = []
    lead = K.face_labels(K.facet_masks[0]) if K.facet_masks else frozenset()

    pure_bad = _purity_witness(K)
    pure = pure_bad is None
    if not pure:
        witnesses.append(("is_pure", K.face_labels(pure_bad)))

    if K.dim >= 1 and pure:
        pm_bad = pseudomanifold_witness(K)
    else:
        pm_bad = K.face_labels(pure_bad) if pure_bad is not None else lead
    pseudo = pm_bad is None
    if not pseudo:
        witnesses.append(("is_pseudomanifold", pm_bad))

    surf_bad = closed_surface_witness(K)
    closed_surface = surf_bad is None
    if not closed_surface:
        witnesses.append(("is_closed_surface", surf_bad))

    two_sphere = closed_surface and K.euler_characteristic() == 2
    if not two_sphere:
        witnesses.append(("is_two_sphere", surf_bad if surf_bad is not None else lead))

    if K.dim == 3:
        bad_vertex = next(
            (v for v in K.labels if not _two_sphere_quietly(K.link([v]))), None
        )
        three_manifold = bad_vertex is None
        if not three_manifold:
            witnesses.append(("is_three_manifold", frozenset([bad_vertex])))
    else:
        three_manifold = False
        witnesses.append(("is_three_manifold", lead))

    nb_bad = non_neighbourly_witness(K)
    neighbourly = nb_bad is None
    if not neighbourly:
        witnesses.append(("is_neighbourly", nb_bad))

    return RecognitionReport(
        is_pure=pure,
        is_pseudomanifold=pseudo,
        is_closed_surface=closed_surface,
        is_two_sphere=two_sphere,
        is_three_manifold=three_manifold,
        is_neighbourly=neighbourly,
        witnesses=tuple(witnesses),
    )
