from __future__ import annotations

import random
from itertools import combinations

import pytest

from walkup import constructions
from walkup.core import (
    PreconditionError,
    from_facets,
    from_json,
    from_text,
    to_json,
    to_text,
)

# The 27 facets of the 9-vertex Walkup complex, written out directly from the
# definition: for every 5-path of consecutive vertices on the 9-cycle, drop
# one interior vertex.
K39_FACETS = [
    ("1", "2", "3", "5"), ("1", "2", "3", "8"), ("1", "2", "4", "5"),
    ("1", "2", "4", "9"), ("1", "2", "7", "8"), ("1", "2", "7", "9"),
    ("1", "3", "4", "5"), ("1", "3", "4", "9"), ("1", "3", "8", "9"),
    ("1", "6", "7", "8"), ("1", "6", "7", "9"), ("1", "6", "8", "9"),
    ("2", "3", "4", "6"), ("2", "3", "4", "9"), ("2", "3", "5", "6"),
    ("2", "3", "8", "9"), ("2", "4", "5", "6"), ("2", "7", "8", "9"),
    ("3", "4", "5", "7"), ("3", "4", "6", "7"), ("3", "5", "6", "7"),
    ("4", "5", "6", "8"), ("4", "5", "7", "8"), ("4", "6", "7", "8"),
    ("5", "6", "7", "9"), ("5", "6", "8", "9"), ("5", "7", "8", "9"),
]


def test_from_facets_duplicate_collapse():
    K = from_facets([{"a", "b", "c"}, {"a", "b", "c"}])
    assert K.facets() == [frozenset({"a", "b", "c"})]


def test_from_facets_antichain_reduction():
    K = from_facets([{"a", "b"}, {"a", "b", "c"}])
    assert K.facets() == [frozenset({"a", "b", "c"})]


def test_from_facets_k39(k39):
    assert k39.dim == 3
    assert k39.vertex_count == 9
    assert sorted(tuple(sorted(f, key=int)) for f in k39.facets()) == K39_FACETS


def test_from_facets_errors():
    with pytest.raises(PreconditionError):
        from_facets([])
    with pytest.raises(PreconditionError):
        from_facets([set()])
    with pytest.raises(PreconditionError):
        from_facets([set(str(i) for i in range(17))])


def test_faces_counts(k39):
    s35 = constructions.standard_sphere(3)
    assert len(s35.faces(1)) == 10
    assert len(k39.faces(2)) == 54
    tri = from_facets([{"a", "b", "c"}])
    assert tri.faces(2) == [frozenset({"a", "b", "c"})]
    with pytest.raises(PreconditionError):
        k39.faces(4)


def test_f_vector_and_euler(k39):
    assert k39.f_vector() == (9, 36, 54, 27)
    assert k39.euler_characteristic() == 0
    for d in (2, 3, 4):
        sphere = constructions.standard_sphere(d)
        expected = tuple(
            len(list(combinations(range(d + 2), i + 1))) for i in range(d + 1)
        )
        assert sphere.f_vector() == expected
        assert sphere.euler_characteristic() == (2 if d % 2 == 0 else 0)


def test_euler_identity_recomputed_from_faces(catalog, k39, c37, m10):
    for K in list(catalog.values()) + [k39, c37, m10]:
        chi = sum((-1) ** i * len(K.faces(i)) for i in range(K.dim + 1))
        assert chi == K.euler_characteristic()


def test_downward_closure(catalog, k39):
    for K in [catalog["S5"], catalog["calS"], k39]:
        for i in range(1, K.dim + 1):
            lower = set(K.faces(i - 1))
            for face in K.faces(i):
                for v in face:
                    assert face - {v} in lower


def test_link_examples(k39):
    s24 = constructions.standard_sphere(2).relabel({"1": "a", "2": "b", "3": "c", "4": "d"})
    link = s24.link(["a"])
    assert link.vertex_count == 3 and link.dim == 1
    assert len(link.facet_masks) == 3

    lk15 = k39.link(["1", "5"])
    assert set(lk15.labels) == {"2", "3", "4"}
    assert lk15.f_vector() == (3, 3)

    with pytest.raises(PreconditionError):
        k39.link(["1", "6", "2"])


def test_link_of_facet_is_empty():
    tri = from_facets([{"a", "b", "c"}])
    link = tri.link(["a", "b", "c"])
    assert link.facet_masks == () and link.vertex_count == 0


def test_suspension_links_recover_base(catalog):
    rng = random.Random(1)
    samples = [constructions.cycle(n) for n in (4, 5, 7)] + [
        catalog["S2"], catalog["S7"]
    ]
    from walkup.isomorphism import are_isomorphic

    for K in samples:
        u = rng.choice(K.labels)
        sus = K.one_point_suspension(u, "zz")
        assert sus.vertex_count == K.vertex_count + 1
        for apex in (u, "zz"):
            ok, _ = are_isomorphic(sus.link([apex]), K)
            assert ok


def test_star_is_join_of_face_with_link(catalog, k39):
    for K, face in [
        (k39, ["1", "5"]),
        (catalog["S5"], ["x"]),
        (catalog["calS"], ["5", "6"]),
    ]:
        star = K.star(face)
        simplex = from_facets([face])
        rebuilt = simplex.join(K.link(face))
        assert set(star.facets()) == set(rebuilt.facets())


def test_complement_examples(k39):
    comp = k39.simplicial_complement(["4", "6", "7", "8"])
    assert comp.vertex_count == 5
    assert sum(1 for m in comp.facet_masks if m.bit_count() == 4) <= 1

    assert k39.induced_subcomplex(k39.labels) == k39

    with pytest.raises(PreconditionError):
        from_facets([{"a", "b"}]).simplicial_complement(["a", "b"])


def test_join_examples(catalog):
    s02 = from_facets([{"x"}, {"y"}])
    joined = s02.join(constructions.cycle(3).relabel({"1": "a", "2": "b", "3": "c"}))
    from walkup.isomorphism import are_isomorphic

    ok, _ = are_isomorphic(joined, catalog["S2"])
    assert ok
    with pytest.raises(PreconditionError):
        s02.join(from_facets([{"x", "q"}]))


def test_join_associative_up_to_isomorphism():
    from walkup.isomorphism import are_isomorphic

    a = from_facets([{"a"}, {"b"}])
    b = from_facets([{"c"}, {"d"}])
    c = constructions.cycle(3).relabel({"1": "p", "2": "q", "3": "r"})
    left = a.join(b).join(c)
    right = a.join(b.join(c))
    ok, _ = are_isomorphic(left, right)
    assert ok


def test_degree_and_histogram(k39):
    assert k39.degree(["1", "5"]) == 3
    deg3 = [e for e in k39.faces(1) if k39.degree(e) == 3]
    assert len(deg3) == 9
    # computed by brute force over all 36 edges before freezing
    assert k39.edge_degree_histogram() == {3: 9, 4: 9, 5: 9, 6: 9}


def test_link_degree_identity(catalog, k39):
    rng = random.Random(2)
    for K in [catalog["S5"], catalog["calT"], k39]:
        faces = [f for i in range(K.dim + 1) for f in K.faces(i)]
        for face in rng.sample(faces, min(100, len(faces))):
            assert K.degree(face) == K.link(face).vertex_count


def test_text_round_trip(catalog, k39, m10):
    for K in [catalog["S4"], k39, m10]:
        text = to_text(K)
        assert to_text(from_text(text)) == text
        assert to_json(from_json(to_json(K))) == to_json(K)


def test_text_round_trip_random_complexes():
    rng = random.Random(11)
    labels = [str(i) for i in range(1, 10)] + ["x", "y", "5'"]
    for _ in range(50):
        k = rng.randint(1, 5)
        facets = [
            set(rng.sample(labels, rng.randint(1, 5))) for _ in range(k)
        ]
        K = from_facets(facets)
        text = to_text(K)
        again = from_text(text)
        assert again == K
        assert to_text(again) == text


def test_text_comments_and_errors():
    K = from_text("# a comment\na b c\n")
    assert K.facets() == [frozenset({"a", "b", "c"})]
    with pytest.raises(PreconditionError):
        from_text("# only a comment\n")


def test_labels_preserved_through_primes(m10):
    assert "5'" in m10.labels and "7'" in m10.labels
    assert m10.vertex_count == 10


def test_label_and_argument_errors():
    with pytest.raises(PreconditionError):
        from_facets([{"a b", "c"}])  # whitespace in a label
    with pytest.raises(PreconditionError):
        from_facets([{"#x", "y"}])  # '#' collides with the comment syntax
    tri = from_facets([{"a", "b", "c"}])
    with pytest.raises(PreconditionError):
        tri.mask_of(["a", "z"])
    with pytest.raises(PreconditionError):
        tri.relabel({"a": "b"})  # collides with an existing label
    with pytest.raises(PreconditionError):
        tri.one_point_suspension("z", "w")
    with pytest.raises(PreconditionError):
        tri.one_point_suspension("a", "b")


def test_join_vertex_budget():
    left = from_facets([set(str(i) for i in range(1, 9))])
    right = from_facets([set(f"v{i}" for i in range(1, 10))])
    with pytest.raises(PreconditionError):
        left.join(right)  # 17 vertices would not fit a machine word
