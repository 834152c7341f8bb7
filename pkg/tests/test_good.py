import random

import pytest

import fans
from fans import span
from torquot.cone import cone, zero_cone
from torquot.errors import (InvalidMap, MismatchedQuotient, NotEquivariant,
                            NotStrictlyConvex)
from torquot.fan import Fan, is_complete, is_map_of_fans, zero_fan
from torquot.good import (affine_quotient, check_good_quotient, good_model,
                          induced_good_model_map, model_quotient)
from torquot.linalg import determinant, identity, matmul, sublattice
from torquot.quotient import quotient_fan

RAY = Fan.from_rays(1, [(1,)], [[0]])
QUADRANT = cone(2, [(1, 0), (0, 1)])


# ---------------------------------------------------------------------------
# affine quotients


def test_affine_examples():
    aq = affine_quotient(QUADRANT, span(2, (1, -1)))
    assert aq.face == zero_cone(2) and aq.enlarged_kernel == span(2, (1, -1))
    assert aq.image == cone(1, [(1,)])
    aq = affine_quotient(QUADRANT, span(2, (1, 2)))
    assert aq.face == QUADRANT and aq.enlarged_kernel.rank == 2
    assert aq.image == zero_cone(0)
    aq = affine_quotient(cone(2, [(1, 0)]), span(2, (1, 0)))
    assert aq.face == cone(2, [(1, 0)]) and aq.enlarged_kernel == span(2, (1, 0))
    assert aq.image == zero_cone(1)


def test_affine_rejects_lines():
    with pytest.raises(NotStrictlyConvex):
        affine_quotient(cone(2, [(1, 0), (-1, 0)]), span(2, (0, 1)))


def test_affine_matches_quotient_fan():
    rng = random.Random(21)
    for _ in range(40):
        n = rng.randint(1, 4)
        sigma = fans.random_strictly_convex_cone(rng, n)
        L = fans.random_primitive(rng, n, rng.randint(0, n))
        aq = affine_quotient(sigma, L)
        F = fans.cone_fan(sigma)
        q = quotient_fan(F, L)
        assert aq.enlarged_kernel == q.enlarged_kernel
        assert aq.projection == q.projection
        assert fans.cone_fan(aq.image) == q.fan
        assert check_good_quotient(F, q).is_good


# ---------------------------------------------------------------------------
# goodness criterion


def test_goodness_examples():
    r = check_good_quotient(fans.c2(), quotient_fan(fans.c2(), span(2, (1, -1))))
    assert r.is_good and not r.is_geometric
    assert r.per_maximal_cone[0].dims == (1, 2)

    punct = fans.punctured_plane()
    r = check_good_quotient(punct, quotient_fan(punct, span(2, (1, -1))))
    assert not r.is_good
    [m] = r.per_maximal_cone
    assert m.failure == "StrayRay" and m.stray_ray is not None

    single = Fan.from_rays(2, [(1, 0)], [[0]])
    r = check_good_quotient(single, quotient_fan(single, span(2, (1, -1))))
    assert r.is_good and r.is_geometric


def test_blow_up_is_not_good():
    F = fans.blow_up()
    r = check_good_quotient(F, quotient_fan(F, span(2, (1, -1))))
    assert not r.is_good


def test_no_surjective_cone():
    # two rays whose images only together fill the quotient cone
    F = fans.loop_example()
    r = check_good_quotient(F, quotient_fan(F, span(3, (0, 0, 1))))
    assert not r.is_good
    assert r.per_maximal_cone[0].failure == "NoSurjectiveMaximalCone"


def test_mismatched_quotient():
    with pytest.raises(MismatchedQuotient):
        check_good_quotient(fans.c2(), quotient_fan(fans.blow_up(), span(2, (1, -1))))


# ---------------------------------------------------------------------------
# good models


def test_good_model_examples():
    for F in (fans.punctured_plane(), fans.blow_up()):
        gm = good_model(F, span(2, (1, -1)))
        assert gm.G == identity(2) and gm.fan == fans.c2()
        assert gm.P_bar == ((1, 1),) and gm.quotient.fan == RAY
    gm = good_model(fans.p1(), span(1, (1,)))
    assert gm.model_kernel.rank == 1 and gm.fan == zero_fan(0)
    gm = good_model(fans.loop_example(), span(3, (0, 0, 1)))
    assert gm.hull_cones == (cone(3, [(1, 0, 0), (0, 1, 0), (1, 1, 1)]),)
    assert gm.model_kernel.rank == 0


def test_complete_inputs():
    cases = [(fans.p1(), span(1, (1,))), (fans.p2(), span(2, (1, 0))),
             (fans.p2(), span(2, (1, 0), (0, 1)))]
    for F, L in cases:
        gm = good_model(F, L)
        assert gm.fan == gm.quotient.fan
        assert abs(determinant(gm.P_bar)) == 1 if gm.P_bar else gm.rank == 0


def model_corpus(seed, count):
    yield from [(fans.c2(), span(2, (1, -1))), (fans.punctured_plane(), span(2, (1, -1))),
                (fans.blow_up(), span(2, (1, -1))), (fans.loop_example(), span(3, (0, 0, 1)))]
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 4)
        F = fans.stellar_fan(rng, n, drop=rng.choice([0.3, 0.6]))
        yield F, fans.random_primitive(rng, n, rng.randint(0, n - 1))


def test_good_model_invariants():
    for F, L in model_corpus(22, 50):
        gm = good_model(F, L)
        n = F.ambient_rank
        assert matmul(gm.P_bar, gm.G, cols=n) == gm.quotient.projection
        assert is_map_of_fans(gm.G, F, gm.fan)
        assert is_map_of_fans(gm.P_bar, gm.fan, gm.quotient.fan)
        mq = model_quotient(gm)
        assert mq.fan == gm.quotient.fan and mq.projection == gm.P_bar
        assert check_good_quotient(gm.fan, mq).is_good
        if is_complete(F):
            assert gm.fan == gm.quotient.fan


def test_fixed_point_on_good_inputs():
    seen = 0
    for F, L in model_corpus(23, 60):
        if not check_good_quotient(F, quotient_fan(F, L)).is_good:
            continue
        seen += 1
        gm = good_model(F, L)
        assert abs(determinant(gm.G)) == 1 and gm.fan == F
    assert seen >= 5


def test_induced_map_examples():
    L = span(2, (1, -1))
    punct, c2, blow = (good_model(F, L) for F in
                       (fans.punctured_plane(), fans.c2(), fans.blow_up()))
    assert induced_good_model_map(identity(2), punct, c2) == identity(2)
    assert induced_good_model_map(identity(2), blow, c2) == identity(2)
    assert induced_good_model_map(identity(2), c2, c2) == identity(2)


def test_induced_map_errors():
    L = span(2, (1, -1))
    c2, punct = good_model(fans.c2(), L), good_model(fans.punctured_plane(), L)
    with pytest.raises(InvalidMap):
        induced_good_model_map(identity(2), c2, punct)
    other = good_model(fans.c2(), span(2, (1, -2)))
    with pytest.raises(NotEquivariant):
        induced_good_model_map(identity(2), c2, other)


def test_functoriality_on_towers():
    rng = random.Random(24)
    for _ in range(15):
        n = rng.randint(2, 3)
        a, b, c = fans.stellar_tower(rng, n, 3)
        L = fans.random_primitive(rng, n, rng.randint(0, n - 1))
        ga, gb, gc = (good_model(F, L) for F in (a, b, c))
        I = identity(n)
        ab = induced_good_model_map(I, ga, gb)
        bc = induced_good_model_map(I, gb, gc)
        ac = induced_good_model_map(I, ga, gc)
        assert matmul(bc, ab, cols=ga.rank) == ac
        assert induced_good_model_map(I, ga, ga) == identity(ga.rank)


def test_model_sublattice_zero_rank():
    gm = good_model(fans.p2(), sublattice(2))
    assert gm.fan == fans.p2() and gm.model_sublattice().rank == 0
