"""The region algebra: unions of subspace-minus-cuts terms."""

import random
from fractions import Fraction

from qpdl.frame import Frame, PartialMap, QAction, Ray, Subspace
from qpdl.linalg import Matrix, gr
from qpdl.regions import (
    Region,
    box,
    diamond,
    emptiness,
    make_term,
    sasaki_closure,
    wp,
    wp_map,
)


def rand_amps(rng, dim):
    while True:
        amps = [gr(Fraction(rng.randint(-6, 6), rng.randint(1, 3)),
                   Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
                for _ in range(dim)]
        if any(not a.is_zero() for a in amps):
            return tuple(amps)


def rand_sub(rng, dim, k=None):
    while True:
        rows = [rand_amps(rng, dim) for _ in range(k or rng.randint(1, dim))]
        sub = Subspace.from_rows(rows, dim)
        if not sub.is_zero():
            return sub


def rand_region(rng, dim, depth=3):
    region = Region.of_subspace(rand_sub(rng, dim))
    for _ in range(rng.randint(0, depth)):
        roll = rng.randrange(3)
        other = Region.of_subspace(rand_sub(rng, dim))
        if roll == 0:
            region = region.union(other)
        elif roll == 1:
            region = region.intersect(other)
        else:
            region = region.complement()
    return region


def test_membership_is_boolean_homomorphism():
    rng = random.Random(301)
    for _ in range(60):
        a = rand_region(rng, 4)
        b = rand_region(rng, 4)
        rays = [Ray(rand_amps(rng, 4)) for _ in range(6)]
        for s in rays:
            assert a.union(b).contains_ray(s) == \
                (a.contains_ray(s) or b.contains_ray(s))
            assert a.intersect(b).contains_ray(s) == \
                (a.contains_ray(s) and b.contains_ray(s))
            assert a.complement().contains_ray(s) == (not a.contains_ray(s))


def test_complement_involution():
    rng = random.Random(302)
    for _ in range(30):
        a = rand_region(rng, 4)
        back = a.complement().complement()
        rays = [Ray(rand_amps(rng, 4)) for _ in range(8)]
        for s in rays:
            assert back.contains_ray(s) == a.contains_ray(s)
        assert back.same_rayset(a)


def test_emptiness_returns_member_or_none():
    rng = random.Random(303)
    for _ in range(60):
        a = rand_region(rng, 4)
        w = emptiness(a)
        if w is None:
            assert a.is_empty_rayset()
            rays = [Ray(rand_amps(rng, 4)) for _ in range(10)]
            assert not any(a.contains_ray(s) for s in rays)
        else:
            assert a.contains_ray(w)


def test_empty_and_full():
    assert emptiness(Region.empty(4)) is None
    w = emptiness(Region.full(4))
    assert w is not None
    sub = Subspace.from_rows([[1, 0, 0, 0]], 4)
    gone = Region.of_subspace(sub).intersect(
        Region.of_subspace(sub).complement())
    assert emptiness(gone) is None


def test_term_witness_avoids_cuts():
    # positive span of dim 3 with two 1-dim cuts: the moment-curve search
    # must land strictly outside both
    positive = Subspace.from_rows(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 4)
    cuts = [Subspace.from_rows([[1, 0, 0, 0]], 4),
            Subspace.from_rows([[0, 1, 1, 0]], 4)]
    term = make_term(positive, cuts)
    w = term.witness()
    assert term.contains_ray(w)
    assert positive.contains_ray(w)
    assert not any(c.contains_ray(w) for c in cuts)


def test_make_term_drops_zero_and_full_cuts():
    positive = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]], 4)
    orth = Subspace.from_rows([[0, 0, 1, 0]], 4)
    term = make_term(positive, [orth])
    assert term is not None and term.negatives == ()
    assert make_term(positive, [Subspace.full(4)]) is None
    assert make_term(Subspace.zero(4), []) is None


def test_closure_joins_positives():
    a = Subspace.from_rows([[1, 0, 0, 0]], 4)
    b = Subspace.from_rows([[0, 1, 0, 0]], 4)
    region = Region.of_subspace(a).union(Region.of_subspace(b))
    assert region.closure() == a.join(b)
    cut = Region.of_subspace(a.join(b)).intersect(
        Region.of_subspace(a).complement())
    assert cut.closure() == a.join(b)


def test_wp_matches_pointwise_execution():
    rng = random.Random(304)
    for _ in range(40):
        m = Matrix([[gr(Fraction(rng.randint(-4, 4)),
                        Fraction(rng.randint(-4, 4))) for _ in range(4)]
                    for _ in range(4)])
        pm = PartialMap(m)
        region = rand_region(rng, 4)
        got = wp_map(pm, region)
        for _ in range(5):
            s = Ray(rand_amps(rng, 4))
            out = pm.apply_ray(s)
            expected = out is None or region.contains_ray(out)
            assert got.contains_ray(s) == expected


def test_wp_of_union_is_conjunction():
    rng = random.Random(305)
    fr = Frame(2)
    for _ in range(20):
        region = rand_region(rng, 4)
        a = QAction([fr.gate("H", (1,))])
        b = QAction([fr.gate("CNOT", (1, 2))])
        both = wp(a.union(b), region)
        split = wp(a, region).intersect(wp(b, region))
        for _ in range(6):
            s = Ray(rand_amps(rng, 4))
            assert both.contains_ray(s) == split.contains_ray(s)


def test_box_diamond_sasaki():
    rng = random.Random(306)
    for _ in range(30):
        region = rand_region(rng, 4)
        b = box(region)
        # box is the orthocomplement of the complement's closure
        assert b == region.complement().closure().ortho()
        # the quantum diamond ~box~ is the closure, the least testable
        # property the region can reach
        d = diamond(region)
        assert d.same_rayset(Region.of_subspace(region.closure()))
        assert sasaki_closure(region) == region.closure()


def test_contains_region_and_same_rayset():
    a = Subspace.from_rows([[1, 0, 0, 0]], 4)
    big = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]], 4)
    assert Region.of_subspace(big).contains_region(Region.of_subspace(a))
    assert not Region.of_subspace(a).contains_region(Region.of_subspace(big))
    cutaway = Region.of_subspace(big).intersect(
        Region.of_subspace(a).complement())
    rebuilt = cutaway.union(Region.of_subspace(a))
    assert rebuilt.same_rayset(Region.of_subspace(big))
