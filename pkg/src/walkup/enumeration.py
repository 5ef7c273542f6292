"""Exhaustive censuses of small spheres and 9-vertex combinatorial 3-manifolds.

Both censuses run the same forced-closure search: keep a pool of facets, find
the lexicographically least ridge lying in exactly one facet, and try every
vertex that can close it, introducing fresh vertices in first-use order.  A
completed pool has every ridge in zero or two facets; recognition and
canonical-form rejection then decide what was found.

The 3-manifold censuses are anchored on a vertex star rather than a single
facet: vertex 0's link is pinned to one of the canonically labelled 2-sphere
census members, which fixes 12 of the facets and leaves a small, heavily
constrained completion search.  Every manifold is reconstructed this way from
each of its vertices, and duplicates fall to the canonical-form filter.

Cheap necessary conditions prune the tree: per-face facet counts respect the
bounds a manifold link allows, and whenever a face's star closes ("seals"),
its link must already be a single cycle (edges) or a 2-sphere (vertices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from . import homology, recognition
from .core import PreconditionError, SimplicialComplex, _iter_bits
from .isomorphism import canonical_form, canonical_relabel

MAX_N = 9


@dataclass
class CensusResult:
    complexes: list[SimplicialComplex]  # canonical representatives, sorted by encoding
    counts: dict[str, int]
    stats: dict[str, int] = field(default_factory=dict)


def _submasks(mask: int) -> list[int]:
    subs = []
    s = mask
    while s:
        subs.append(s)
        s = (s - 1) & mask
    return subs


@lru_cache(maxsize=None)
def _ridge_table(d: int) -> tuple[dict[int, int], list[int]]:
    masks = sorted(
        sum(1 << b for b in combo) for combo in combinations(range(MAX_N), d)
    )
    return {m: i for i, m in enumerate(masks)}, masks


class _ClosureSearch:
    """Depth-first forced closure over at most 9 vertices."""

    def __init__(self, d: int, max_vertices: int, max_facets: int):
        self.d = d
        self.max_vertices = max_vertices
        self.max_facets = max_facets
        self.ridge_index, self.ridge_masks = _ridge_table(d)
        self.cnt = [0] * (1 << MAX_N)
        self.facets: list[int] = []
        self.open_ridges = 0
        self.vopen = [0] * MAX_N  # open ridges at each vertex
        self.used = 0
        # degree bounds a manifold vertex link allows on <= 9 vertices
        self.vertex_cap = 12 if d == 3 else max_vertices - 1
        self.pair_cap = 7
        self.vtri = [0] * MAX_N  # triangles present at each vertex (d = 3)
        self.popen = [0] * (1 << MAX_N)  # open triangles over each pair (d = 3)
        self.nodes = 0
        self.completions = 0

    # -- mutation ---------------------------------------------------------

    def try_add(self, fmask: int) -> bool:
        """Validate and apply one facet; False leaves the state untouched."""
        d = self.d
        if len(self.facets) >= self.max_facets or self.cnt[fmask]:
            return False
        bits = list(_iter_bits(fmask))
        ridges = [fmask ^ (1 << b) for b in bits]
        for r in ridges:
            if self.cnt[r] >= 2:
                return False
        for b in bits:
            v = 1 << b
            if self.cnt[v] >= self.vertex_cap:
                return False
            if self.cnt[v] and self.vopen[b] == 0:
                return False  # sealed vertex link
        if d == 3:
            for pair in combinations(bits, 2):
                p = (1 << pair[0]) | (1 << pair[1])
                if self.cnt[p] >= self.pair_cap:
                    return False
                if self.cnt[p] and self.popen[p] == 0:
                    return False  # sealed edge link
            for b in bits:
                fresh = sum(
                    1 for r in ridges if r >> b & 1 and self.cnt[r] == 0
                )
                if self.vtri[b] + fresh > 18:
                    return False
        self._apply(fmask, bits, ridges)
        for b in bits:
            if self.vopen[b] == 0 and not self._vertex_link_ok(b):
                self._unapply(fmask, bits, ridges)
                return False
        if d == 3:
            for pair in combinations(bits, 2):
                p = (1 << pair[0]) | (1 << pair[1])
                if self.popen[p] == 0 and not self._pair_link_is_cycle(p):
                    self._unapply(fmask, bits, ridges)
                    return False
        return True

    def _apply(self, fmask: int, bits: list[int], ridges: list[int]) -> None:
        self.facets.append(fmask)
        if bits[-1] >= self.used:
            self.used = bits[-1] + 1
        for s in _submasks(fmask):
            self.cnt[s] += 1
        for r in ridges:
            bit = 1 << self.ridge_index[r]
            delta = 1 if self.cnt[r] == 1 else -1  # just opened vs just closed
            if self.cnt[r] == 1:
                self.open_ridges |= bit
            else:
                self.open_ridges &= ~bit
            for b in _iter_bits(r):
                self.vopen[b] += delta
                if self.d == 3 and self.cnt[r] == 1:
                    self.vtri[b] += 1
            if self.d == 3:
                for pair in combinations(list(_iter_bits(r)), 2):
                    self.popen[(1 << pair[0]) | (1 << pair[1])] += delta

    def _unapply(self, fmask: int, bits: list[int], ridges: list[int]) -> None:
        self.facets.pop()
        for r in ridges:
            bit = 1 << self.ridge_index[r]
            delta = 1 if self.cnt[r] == 1 else -1  # mirrors _apply exactly
            if self.cnt[r] == 1:
                self.open_ridges &= ~bit
            else:
                self.open_ridges |= bit
            for b in _iter_bits(r):
                self.vopen[b] -= delta
                if self.d == 3 and self.cnt[r] == 1:
                    self.vtri[b] -= 1
            if self.d == 3:
                for pair in combinations(list(_iter_bits(r)), 2):
                    self.popen[(1 << pair[0]) | (1 << pair[1])] -= delta
        for s in _submasks(fmask):
            self.cnt[s] -= 1
        if self.used - 1 == bits[-1] and self.cnt[1 << bits[-1]] == 0:
            self.used -= 1

    def undo(self, fmask: int) -> None:
        bits = list(_iter_bits(fmask))
        self._unapply(fmask, bits, [fmask ^ (1 << b) for b in bits])

    # -- seal validation ---------------------------------------------------

    def _vertex_link_ok(self, b: int) -> bool:
        """Once no ridge at vertex b is open, its link must be closed of the
        right type: a single cycle (d=2) or a connected chi=2 surface (d=3)."""
        at = [f for f in self.facets if f >> b & 1]
        if not at:
            return True
        neighbours = 0
        for f in at:
            neighbours |= f
        m = neighbours.bit_count() - 1
        if self.d == 2:
            if m != len(at):
                return False
        else:
            if m - self.vtri[b] + len(at) != 2:
                return False
        share = self.d  # facets adjacent in the link share d vertices
        seen = 1
        stack = [0]
        visited = {0}
        while stack:
            i = stack.pop()
            for j in range(len(at)):
                if j not in visited and (at[i] & at[j]).bit_count() == share:
                    visited.add(j)
                    seen += 1
                    stack.append(j)
        return seen == len(at)

    def _pair_link_is_cycle(self, p: int) -> bool:
        edges = [f & ~p for f in self.facets if f & p == p]
        verts = 0
        for e in edges:
            verts |= e
        if verts.bit_count() != len(edges):
            return False
        reached = edges[0]
        grew = True
        while grew:
            grew = False
            for e in edges:
                if e & reached and e | reached != reached:
                    reached |= e
                    grew = True
        return reached == verts

    # -- search ------------------------------------------------------------

    def run(self, on_complete) -> None:
        self.nodes += 1
        if self.open_ridges == 0:
            self.completions += 1
            on_complete(self)
            return
        low = self.open_ridges & -self.open_ridges
        ridge = self.ridge_masks[low.bit_length() - 1]
        top = min(self.used + 1, self.max_vertices)
        for v in range(top):
            if ridge >> v & 1:
                continue
            fmask = ridge | (1 << v)
            if self.try_add(fmask):
                self.run(on_complete)
                self.undo(fmask)


def _labels_for(n: int) -> dict[int, str]:
    return {i: str(i + 1) for i in range(n)}


def _complex_from_masks(masks: list[int]) -> SimplicialComplex:
    used = 0
    for m in masks:
        used |= m
    names = _labels_for(used.bit_count())
    return SimplicialComplex._from_masks(
        list(masks), tuple(names[i] for i in range(len(names)))
    )


# -- 2-sphere census ------------------------------------------------------------


def enumerate_two_spheres(n: int) -> CensusResult:
    """All combinatorial 2-spheres on exactly n vertices, up to isomorphism."""
    if n < 4 or n > 8:
        raise PreconditionError(f"2-sphere census covers 4 <= n <= 8, got {n}")
    search = _ClosureSearch(d=2, max_vertices=n, max_facets=2 * n - 4)
    assert search.try_add(0b111)
    found: dict[bytes, SimplicialComplex] = {}
    rejected = 0

    def on_complete(s: _ClosureSearch) -> None:
        nonlocal rejected
        if s.used != n:
            return
        K = _complex_from_masks(s.facets)
        if not recognition.is_two_sphere(K):
            return
        digest = canonical_form(K).bytes
        if digest in found:
            rejected += 1
        else:
            found[digest] = canonical_relabel(K)

    search.run(on_complete)
    ordered = [found[k] for k in sorted(found)]
    return CensusResult(
        ordered,
        {"two_sphere": len(ordered)},
        {"nodes": search.nodes, "completions": search.completions, "isomorph_rejections": rejected},
    )


@lru_cache(maxsize=None)
def _sphere_seeds(n: int) -> tuple[SimplicialComplex, ...]:
    return tuple(enumerate_two_spheres(n).complexes)


# -- 9-vertex 3-manifold censuses -----------------------------------------------


def _star_completions(
    link: SimplicialComplex,
    require_neighbourly: bool,
    found: dict[bytes, SimplicialComplex],
    stats: dict[str, int],
    label_map: dict[int, int] | None = None,
) -> None:
    """Complete vertex 0's pinned star to closed 9-vertex 3-manifolds."""
    m = link.vertex_count
    search = _ClosureSearch(d=3, max_vertices=MAX_N, max_facets=27)
    mapping = label_map or {i: i for i in range(m)}
    for fm in link.facet_masks:
        star_facet = 1  # vertex 0
        for b in _iter_bits(fm):
            star_facet |= 1 << (mapping[b] + 1)
        ok = search.try_add(star_facet)
        assert ok, "a census 2-sphere star must always insert cleanly"

    def on_complete(s: _ClosureSearch) -> None:
        if s.used != MAX_N:
            return
        if require_neighbourly and len(s.facets) != 27:
            return
        K = _complex_from_masks(s.facets)
        if require_neighbourly and not recognition.is_neighbourly(K):
            return
        if not recognition.is_combinatorial_3_manifold(K):
            return
        digest = canonical_form(K).bytes
        if digest in found:
            stats["isomorph_rejections"] += 1
        else:
            found[digest] = canonical_relabel(K)

    search.run(on_complete)
    stats["nodes"] += search.nodes
    stats["completions"] += search.completions


def _classify(found: dict[bytes, SimplicialComplex]) -> tuple[list[SimplicialComplex], dict[str, int]]:
    ordered = [found[k] for k in sorted(found)]
    spheres = sum(
        1 for K in ordered if homology.homology(K) == homology.THREE_SPHERE_PROFILE
    )
    counts = {
        "total": len(ordered),
        "sphere": spheres,
        "non_sphere": len(ordered) - spheres,
    }
    return ordered, counts


def _census_task(task: tuple[str, bool, tuple[int, ...] | None]):
    """One pinned-link completion search; safe to run in a worker process."""
    from . import core

    link_text, require_neighbourly, perm = task
    link = core.from_text(link_text)
    mapping = dict(enumerate(perm)) if perm is not None else None
    found: dict[bytes, SimplicialComplex] = {}
    stats = {"nodes": 0, "completions": 0, "isomorph_rejections": 0}
    _star_completions(link, require_neighbourly, found, stats, mapping)
    payload = [(digest, K.facet_masks, K.labels) for digest, K in sorted(found.items())]
    return payload, stats


def _run_census(
    tasks: list[tuple[str, bool, tuple[int, ...] | None]], threads: int
) -> tuple[dict[bytes, SimplicialComplex], dict[str, int]]:
    found: dict[bytes, SimplicialComplex] = {}
    stats = {"nodes": 0, "completions": 0, "isomorph_rejections": 0}
    if threads > 1:
        from multiprocessing import Pool

        with Pool(threads) as pool:
            results = pool.map(_census_task, tasks)
    else:
        results = [_census_task(t) for t in tasks]
    for payload, task_stats in results:
        for key in stats:
            stats[key] += task_stats[key]
        for digest, masks, labels in payload:
            if digest in found:
                stats["isomorph_rejections"] += 1
            else:
                found[digest] = SimplicialComplex(masks, labels)
    return found, stats


def enumerate_neighbourly_9_manifolds(
    label_seed: int | None = None, threads: int = 1
) -> CensusResult:
    """All neighbourly 9-vertex combinatorial 3-manifolds up to isomorphism.

    Every vertex of such a manifold has an 8-vertex 2-sphere link, so each
    isomorphism class is reached from some pinned canonical link; classes are
    separated into spheres and non-spheres by integer homology.

    `label_seed` relabels the pinned links before searching; the census is
    invariant under any such base reordering.  `threads` distributes the
    pinned-link searches over worker processes; results are merged and sorted,
    so counts and representatives do not depend on the worker count.
    """
    import random

    from .core import to_text

    rng = random.Random(label_seed) if label_seed is not None else None
    tasks = []
    for link in _sphere_seeds(8):
        perm = None
        if rng is not None:
            shuffled = list(range(8))
            rng.shuffle(shuffled)
            perm = tuple(shuffled)
        tasks.append((to_text(link), True, perm))
    found, stats = _run_census(tasks, threads)
    ordered, counts = _classify(found)
    return CensusResult(ordered, counts, stats)


def enumerate_all_9_manifolds(confirm: bool = False, threads: int = 1) -> CensusResult:
    """The full census of 9-vertex combinatorial 3-manifolds (hours-scale).

    Gated behind an explicit flag so the default suites never run it.
    """
    if not confirm:
        raise PreconditionError(
            "the full 9-vertex census is hours-scale; pass confirm=True to run it"
        )
    from .core import to_text

    tasks = []
    for n in range(4, 9):
        for link in _sphere_seeds(n):
            tasks.append((to_text(link), False, None))
    found, stats = _run_census(tasks, threads)
    ordered, counts = _classify(found)
    return CensusResult(ordered, counts, stats)
