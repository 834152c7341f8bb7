import random

import pytest

import fans
from torquot.cone import (cone, contains, faces, facets, relative_interior_point,
                          zero_cone)
from torquot.errors import ConeNotInFan, InvalidQuasifan
from torquot.fan import (ConeSystem, Fan, FanClass, Quasifan, face_closure, is_complete,
                         is_map_of_fans, orbit_closure_fan, quasifan_to_fan, star_subfan,
                         validate_fan, zero_fan)
from torquot.linalg import dot, identity

E1, E2 = (1, 0), (0, 1)


def system(n, *cones_):
    return ConeSystem(n, face_closure(cones_))


def test_validate_examples():
    assert validate_fan(fans.c2()).kind == FanClass.FAN
    assert validate_fan(fans.p2()).kind == FanClass.FAN
    bad = system(2, cone(2, [(1, 0), (1, 2)]), cone(2, [(1, 1), (0, 1)]))
    report = validate_fan(bad)
    assert report.kind == FanClass.SYSTEM and report.name == "ConeSystem"
    assert report.violations and report.violations[0].condition == "common-face"
    half = system(2, cone(2, [(1, 0), (-1, 0), (0, 1)]))
    assert validate_fan(half).kind == FanClass.QUASIFAN


def test_validate_reports_missing_faces():
    S = ConeSystem(2, (cone(2, [E1, E2]),))
    report = validate_fan(S)
    assert report.kind == FanClass.SYSTEM
    assert any(v.condition == "missing-face" for v in report.violations)


def test_constructor_checks():
    with pytest.raises(ValueError):
        Fan.from_maximal_cones(2, [cone(2, [(1, 0), (1, 2)]), cone(2, [(1, 1), (0, 1)])])
    with pytest.raises(InvalidQuasifan):
        Quasifan.from_maximal_cones(2, [cone(2, [(1, 0), (1, 2)]), cone(2, [(1, 1), (0, 1)])])


def test_maximal_cones():
    assert fans.c2().maximal_cones == (cone(2, [E1, E2]),)
    assert len(fans.p2().maximal_cones) == 3
    assert fans.punctured_plane().maximal_cones == (cone(2, [E2]), cone(2, [E1]))


def test_map_of_fans_examples():
    for name, make in fans.NAMED.items():
        F = make()
        assert is_map_of_fans(identity(F.ambient_rank), F, F), name
    ray = Fan.from_rays(1, [(1,)], [[0]])
    assert is_map_of_fans(((1, 1),), fans.punctured_plane(), ray)
    check = is_map_of_fans(((1, 1),), fans.c2(), zero_fan(1))
    assert not check and check.failing == cone(2, [E1, E2])


def test_quasifan_to_fan_examples():
    line = system(1, cone(1, [(1,), (-1,)]))
    L, P, fan = quasifan_to_fan(line)
    assert L.rank == 1 and fan == zero_fan(0)
    half = system(2, cone(2, [(1, 0), (-1, 0), (0, 1)]))
    L, P, fan = quasifan_to_fan(half)
    assert L.basis == ((1, 0),) and P == ((0, 1),)
    assert fan == Fan.from_rays(1, [(1,)], [[0]])
    L, P, fan = quasifan_to_fan(fans.p2())
    assert L.rank == 0 and fan == fans.p2()


def test_quasifan_to_fan_rejects_systems():
    with pytest.raises(InvalidQuasifan):
        quasifan_to_fan(system(2, cone(2, [(1, 0), (1, 2)]), cone(2, [(1, 1), (0, 1)])))


def test_star_and_orbit_closure():
    p2 = fans.p2()
    star = star_subfan(p2, cone(2, [E1]))
    assert star.maximal_cones == tuple(sorted([cone(2, [E1, E2]), cone(2, [E1, (-1, -1)])]))
    L, P, fan = orbit_closure_fan(p2, cone(2, [E1]))
    assert L.basis == (E1,) and P == ((0, 1),)
    assert fan == fans.p1()
    L, P, fan = orbit_closure_fan(p2, zero_cone(2))
    assert L.rank == 0 and fan == p2
    L, P, fan = orbit_closure_fan(fans.c2(), cone(2, [E1]))
    assert fan == Fan.from_rays(1, [(1,)], [[0]])
    with pytest.raises(ConeNotInFan):
        orbit_closure_fan(p2, cone(2, [(1, 1)]))


def test_completeness_examples():
    assert is_complete(fans.p2())
    assert is_complete(fans.p1())
    assert not is_complete(fans.c2())
    assert not is_complete(fans.punctured_plane())
    assert is_complete(zero_fan(0))


def _covered(F, v):
    return any(contains(c, v) for c in F.maximal_cones)


def _facet_probes(F):
    # a point just across every facet of every maximal cone
    for c in F.maximal_cones:
        for f in facets(c):
            h = next(u for u in c.halfspaces if not any(dot(u, r) for r in f.rays))
            p = relative_interior_point(f)
            yield tuple(1000 * a - b for a, b in zip(p, h))


def test_completeness_matches_ray_shooting():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 4)
        F = fans.stellar_fan(rng, n, drop=rng.choice([0.0, 0.2]))
        probes_covered = all(_covered(F, v) for v in _facet_probes(F))
        assert is_complete(F) == probes_covered
        if is_complete(F):
            assert all(_covered(F, fans.random_vector(rng, n, 7)) for _ in range(100))


def test_random_fans_are_valid():
    rng = random.Random(6)
    for _ in range(30):
        F = fans.stellar_fan(rng, rng.randint(2, 4))
        assert fans.is_valid_fan(F)
        for c in F.maximal_cones:
            L, P, fan = orbit_closure_fan(F, c)
            assert fans.is_valid_fan(fan)
        for r in F.rays:
            assert fans.is_valid_fan(star_subfan(F, r))


def test_equality_ignores_class():
    F = fans.c2()
    assert ConeSystem(2, F.cones) == F
    assert hash(ConeSystem(2, F.cones)) == hash(F)
    assert sorted(faces(cone(2, [E1, E2]))) == list(F.cones)
