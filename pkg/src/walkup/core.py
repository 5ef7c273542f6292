"""Value types for small simplicial complexes.

Vertices are kept as display labels (strings such as ``1``, ``x`` or ``5'``)
and normalized internally to dense ids 0..n-1.  Every face is a bitmask over
those ids, so subset tests, links and joins are single machine-word
operations.  Complexes are immutable values: every operation returns a new
complex, and per-dimension face lists are cached write-once.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 16

Label = str | int
Face = Iterable[Label]


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


def _label_key(label: str) -> tuple[int, int, str]:
    # numeric labels sort by value ahead of symbolic ones ("1" < "9" < "5'" < "x")
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


def _norm_label(label: Label) -> str:
    text = str(label)
    # whitespace and '#' would corrupt the facet-list text format
    if not text or "#" in text or any(ch.isspace() for ch in text):
        raise PreconditionError(
            f"vertex label {label!r} must be non-empty, without whitespace or '#'"
        )
    return text


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _antichain(masks: Iterable[int]) -> list[int]:
    """Drop masks contained in another mask; result sorted ascending."""
    distinct = sorted(set(masks), key=lambda m: (m.bit_count(), m), reverse=True)
    kept: list[int] = []
    for m in distinct:
        if not any(k & m == m for k in kept):
            kept.append(m)
    kept.sort()
    return kept


class SimplicialComplex:
    """An antichain of facets over at most 16 labelled vertices.

    Downward closure is implicit: a face is any non-empty subset of a facet.
    The vertex set always equals the union of the facets, and ids are dense
    in 0..n-1 following the canonical label order.
    """

    __slots__ = ("facet_masks", "labels", "_index", "_faces_cache")

    def __init__(self, facet_masks: tuple[int, ...], labels: tuple[str, ...]):
        self.facet_masks = facet_masks
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._faces_cache: dict[int, tuple[int, ...]] = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def _from_masks(cls, masks: Iterable[int], labels: tuple[str, ...]) -> "SimplicialComplex":
        """Build from facet masks over `labels`, renormalizing to a dense vertex set."""
        kept = _antichain(m for m in masks if m)
        used = 0
        for m in kept:
            used |= m
        if used.bit_count() == len(labels):
            return cls(tuple(kept), labels)
        old_ids = list(_iter_bits(used))
        new_labels = tuple(labels[i] for i in old_ids)
        shift = {old: new for new, old in enumerate(old_ids)}
        remapped = sorted(
            sum(1 << shift[b] for b in _iter_bits(m)) for m in kept
        )
        return cls(tuple(remapped), new_labels)

    # -- basic queries -----------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        if not self.facet_masks:
            return -1
        return max(m.bit_count() for m in self.facet_masks) - 1

    @property
    def is_pure(self) -> bool:
        sizes = {m.bit_count() for m in self.facet_masks}
        return len(sizes) <= 1

    def mask_of(self, face: Face) -> int:
        mask = 0
        for lab in face:
            key = _norm_label(lab)
            if key not in self._index:
                raise PreconditionError(f"vertex {key!r} is not in the complex")
            mask |= 1 << self._index[key]
        if mask == 0:
            raise PreconditionError("the empty set is not a face")
        return mask

    def face_labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[b] for b in _iter_bits(mask))

    def has_face_mask(self, mask: int) -> bool:
        return mask != 0 and any(f & mask == mask for f in self.facet_masks)

    def has_face(self, face: Face) -> bool:
        try:
            mask = self.mask_of(face)
        except PreconditionError:
            return False
        return self.has_face_mask(mask)

    def facets(self) -> list[frozenset[str]]:
        return [self.face_labels(m) for m in self.facet_masks]

    def faces_masks(self, i: int) -> tuple[int, ...]:
        """All i-face masks, sorted by bitmask value."""
        if i < 0 or i > self.dim:
            raise PreconditionError(f"face dimension {i} out of range 0..{self.dim}")
        cached = self._faces_cache.get(i)
        if cached is None:
            found = set()
            size = i + 1
            for fm in self.facet_masks:
                bits = list(_iter_bits(fm))
                if len(bits) < size:
                    continue
                for combo in combinations(bits, size):
                    m = 0
                    for b in combo:
                        m |= 1 << b
                    found.add(m)
            cached = tuple(sorted(found))
            self._faces_cache[i] = cached  # write-once; safe to race
        return cached

    def faces(self, i: int) -> list[frozenset[str]]:
        return [self.face_labels(m) for m in self.faces_masks(i)]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_masks(i)) for i in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * fi for i, fi in enumerate(self.f_vector()))

    # -- derived complexes --------------------------------------------------

    def link(self, face: Face) -> "SimplicialComplex":
        """Faces disjoint from `face` whose union with it is again a face.

        The link of a facet is the empty complex, which is a legitimate
        value here rather than an error.
        """
        sigma = self.mask_of(face)
        if not self.has_face_mask(sigma):
            raise PreconditionError(f"{sorted(self.face_labels(sigma))} is not a face")
        return self._from_masks(
            (f & ~sigma for f in self.facet_masks if f & sigma == sigma), self.labels
        )

    def star(self, face: Face) -> "SimplicialComplex":
        sigma = self.mask_of(face)
        if not self.has_face_mask(sigma):
            raise PreconditionError(f"{sorted(self.face_labels(sigma))} is not a face")
        return self._from_masks(
            (f for f in self.facet_masks if f & sigma == sigma), self.labels
        )

    def induced_subcomplex(self, vertices: Face) -> "SimplicialComplex":
        umask = self.mask_of(vertices)
        return self._from_masks((f & umask for f in self.facet_masks), self.labels)

    def simplicial_complement(self, face: Face) -> "SimplicialComplex":
        sigma = self.mask_of(face)
        if not self.has_face_mask(sigma):
            raise PreconditionError(f"{sorted(self.face_labels(sigma))} is not a face")
        rest = ((1 << self.vertex_count) - 1) & ~sigma
        if rest == 0:
            raise PreconditionError("complement of the full vertex set is empty")
        return self._from_masks((f & rest for f in self.facet_masks), self.labels)

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        overlap = set(self.labels) & set(other.labels)
        if overlap:
            raise PreconditionError(f"vertex sets overlap: {sorted(overlap)}")
        if self.vertex_count + other.vertex_count > MAX_VERTICES:
            raise PreconditionError(f"join would exceed {MAX_VERTICES} vertices")
        return from_facets(
            [a | b for a in self.facets() for b in other.facets()]
        )

    def one_point_suspension(self, u: Label, v: Label) -> "SimplicialComplex":
        """Suspend between existing vertex `u` and fresh vertex `v`."""
        u_lab, v_lab = _norm_label(u), _norm_label(v)
        if u_lab not in self._index:
            raise PreconditionError(f"vertex {u_lab!r} is not in the complex")
        if v_lab in self._index:
            raise PreconditionError(f"vertex {v_lab!r} is already in the complex")
        if self.vertex_count + 1 > MAX_VERTICES:
            raise PreconditionError(f"suspension would exceed {MAX_VERTICES} vertices")
        new_facets: list[set[str]] = []
        for fm in self.facet_masks:
            face = set(self.face_labels(fm))
            new_facets.append(face | {v_lab})
            if u_lab not in face:
                new_facets.append(face | {u_lab})
        return from_facets(new_facets)

    def relabel(self, mapping: dict[Label, Label]) -> "SimplicialComplex":
        """Rename vertices; labels not mentioned keep their name."""
        table = {_norm_label(k): _norm_label(v) for k, v in mapping.items()}
        new_names = [table.get(lab, lab) for lab in self.labels]
        if len(set(new_names)) != len(new_names):
            raise PreconditionError("relabeling must stay injective")
        return from_facets(
            [{new_names[b] for b in _iter_bits(fm)} for fm in self.facet_masks]
        )

    def degree(self, face: Face) -> int:
        return self.link(face).vertex_count

    def edge_degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for em in self.faces_masks(1):
            d = self.link(self.face_labels(em)).vertex_count
            hist[d] = hist.get(d, 0) + 1
        return hist

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facet_masks == other.facet_masks and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.facet_masks, self.labels))

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex(n={self.vertex_count}, dim={self.dim}, "
            f"facets={len(self.facet_masks)})"
        )


EMPTY_COMPLEX = SimplicialComplex((), ())


def from_facets(facet_list: Iterable[Face]) -> SimplicialComplex:
    """Build a complex from vertex-label sets, reducing to an antichain.

    Duplicate facets collapse and faces contained in other input sets are
    dropped.  Labels are normalized to dense ids in canonical label order.
    """
    raw = [frozenset(_norm_label(lab) for lab in face) for face in facet_list]
    if not raw:
        raise PreconditionError("facet list is empty")
    if any(not face for face in raw):
        raise PreconditionError("facets must be non-empty vertex sets")
    labels = tuple(sorted({lab for face in raw for lab in face}, key=_label_key))
    if len(labels) > MAX_VERTICES:
        raise PreconditionError(f"{len(labels)} vertex labels exceed the {MAX_VERTICES} supported")
    index = {lab: i for i, lab in enumerate(labels)}
    masks = []
    for face in raw:
        m = 0
        for lab in face:
            m |= 1 << index[lab]
        masks.append(m)
    return SimplicialComplex(tuple(_antichain(masks)), labels)


# -- canonical text / JSON formats ------------------------------------------


def to_text(K: SimplicialComplex) -> str:
    """Canonical facet-list text: one facet per line, sorted lines."""
    lines = [
        " ".join(sorted(K.face_labels(m), key=_label_key)) for m in K.facet_masks
    ]
    return "\n".join(sorted(lines)) + "\n"


def from_text(text: str) -> SimplicialComplex:
    facets = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        facets.append(stripped.split())
    if not facets:
        raise PreconditionError("no facets found in input text")
    return from_facets(facets)


def to_json_obj(K: SimplicialComplex) -> dict:
    return {
        "facets": [sorted(K.face_labels(m), key=_label_key) for m in K.facet_masks]
    }


def from_json_obj(obj: dict) -> SimplicialComplex:
    if not isinstance(obj, dict) or "facets" not in obj:
        raise PreconditionError('JSON complex must be an object with a "facets" key')
    return from_facets(obj["facets"])


def from_json(text: str) -> SimplicialComplex:
    return from_json_obj(json.loads(text))


def to_json(K: SimplicialComplex) -> str:
    return json.dumps(to_json_obj(K), sort_keys=True)
