"""Domain algebra and the swept-line membership test for the hull."""

import numpy as np
import pytest

from fueter import domains, hull, quat


def _pt(x, y):
    return quat.BiquaternionPoint(np.asarray(x, float), np.asarray(y, float))


def test_parse_domain_shorthands():
    star = domains.parse_domain("H*")
    assert isinstance(star, domains.PointComplement)
    assert star.n == 1 and star.dim == 4
    star2 = domains.parse_domain("H*:n=2")
    assert star2.n == 2 and star2.dim == 8
    ball = domains.parse_domain("ball:r=2.5")
    assert isinstance(ball, domains.Ball)
    assert ball.contains(np.array([2.4, 0, 0, 0]))
    assert not ball.contains(np.array([2.6, 0, 0, 0]))
    with pytest.raises(ValueError):
        domains.parse_domain("torus:r=1")


def test_parse_domain_json_roundtrip():
    spec = {"type": "intersection", "n": 1, "parts": [
        {"type": "ball", "radius": 1.0, "center": [0, 0, 0, 0]},
        {"type": "halfspace", "normal": [1, 0, 0, 0], "offset": 0.2},
    ]}
    dom = domains.parse_domain(spec)
    assert dom.contains(np.array([0.1, 0.0, 0.0, 0.0]))
    assert not dom.contains(np.array([0.5, 0.0, 0.0, 0.0]))
    again = domains.parse_domain(dom.to_json())
    assert again.to_json() == dom.to_json()


def test_ball_exit_distance_and_boundary():
    ball = domains.parse_domain("ball:r=2")
    # ext_distance measures clearance to the exterior: r - |p| inside, 0 out
    assert abs(ball.ext_distance(np.array([1.0, 0, 0, 0])) - 1.0) < 1e-14
    assert ball.ext_distance(np.array([3.0, 0, 0, 0])) == 0.0
    nb = ball.nearest_boundary(np.array([1.0, 0, 0, 0]))
    np.testing.assert_allclose(nb, [2.0, 0, 0, 0], atol=1e-14)
    assert abs(np.linalg.norm(nb) - 2.0) < 1e-14


def test_point_complement_semantics():
    star = domains.parse_domain("H*")
    assert not star.contains(np.zeros(4))
    p = np.array([0.3, -0.1, 0.0, 0.5])
    assert star.contains(p)
    assert abs(star.ext_distance(p) - np.linalg.norm(p)) < 1e-14
    np.testing.assert_allclose(star.nearest_boundary(p), np.zeros(4))


def test_whole_and_empty_spaces():
    assert domains.WholeSpace(1).contains(np.ones(4))
    assert domains.WholeSpace(1).ext_distance(np.ones(4)) == np.inf
    assert not domains.EmptySet(1).contains(np.zeros(4))
    assert domains.EmptySet(1).ext_distance(np.zeros(4)) == 0.0


def test_real_slice_membership_is_exact():
    # with y = 0 the swept set is the single point x, so the query reduces
    # to plain domain membership with an empty uncertainty band
    ball = domains.parse_domain("ball:r=1")
    inside = hull.hull_contains(_pt([0.5, 0.2, 0, 0], np.zeros(4)), ball)
    assert inside.verdict is True
    assert inside.band == 0.0 and inside.indeterminate is False
    outside = hull.hull_contains(_pt([1.5, 0, 0, 0], np.zeros(4)), ball)
    assert outside.verdict is False


def test_hull_shrinks_with_the_imaginary_part():
    ball = domains.parse_domain("ball:r=1")
    x = np.array([0.3, 0.1, -0.2, 0.0])
    y = np.array([0.2, 0.0, 0.1, 0.1])
    full = hull.hull_contains(_pt(x, y), ball)
    assert full.verdict is True and not full.indeterminate
    for s in (0.75, 0.5, 0.25):
        shrunk = hull.hull_contains(_pt(x, s * y), ball)
        assert shrunk.verdict is True and not shrunk.indeterminate


def test_hull_of_intersection_is_intersection_of_hulls():
    a = domains.parse_domain("ball:r=1")
    b = domains.parse_domain({"type": "ball", "radius": 1.0,
                              "center": [0.5, 0, 0, 0]})
    both = domains.Intersection([a, b])
    rng = np.random.default_rng(20)
    sampler = hull.ImUnitSphereSampler(512)
    agree = 0
    for _ in range(40):
        sigma = _pt(0.2 * rng.normal(size=4), 0.08 * rng.normal(size=4))
        qa = hull.hull_contains(sigma, a, sampler)
        qb = hull.hull_contains(sigma, b, sampler)
        qi = hull.hull_contains(sigma, both, sampler)
        if qa.indeterminate or qb.indeterminate or qi.indeterminate:
            continue
        assert qi.verdict == (qa.verdict and qb.verdict)
        agree += 1
    assert agree >= 30


def test_punctured_space_hull_is_the_nonsingular_locus():
    star = domains.parse_domain("H*")
    singular = _pt([1.0, 0, 0, 0], [0.0, 1.0, 0, 0])  # det = 1 - 1 + 0i
    assert abs(quat.det_biquat(singular.matrix)) < 1e-14
    assert hull.hull_contains(singular, star).verdict is False
    regular = _pt([1.0, 0, 0, 0], [0.0, 0.3, 0, 0])
    assert hull.hull_contains(regular, star).verdict is True


def test_distance_law_on_the_real_slice_of_a_ball():
    for r in (1.0, 2.5):
        ball = domains.parse_domain("ball:r=%g" % r)
        for c in (0.0, 0.4, 0.9 * r):
            sigma = _pt([c, 0, 0, 0], np.zeros(4))
            d = hull.hull_distance(sigma, ball)
            assert abs(d - (r - c) / np.sqrt(2.0)) < 1e-6


def test_witness_realizes_the_distance_and_sits_outside():
    ball = domains.parse_domain("ball:r=1")
    rng = np.random.default_rng(21)
    for _ in range(10):
        sigma = _pt(0.25 * rng.normal(size=4), 0.1 * rng.normal(size=4))
        if not hull.hull_contains(sigma, ball).verdict:
            continue
        d = hull.hull_distance(sigma, ball)
        witness, query = hull.hull_witness(sigma, ball)
        assert isinstance(query, hull.HullQuery)
        assert abs((sigma - witness).norm_C() - d) < 1e-3 * max(d, 1e-12)
        assert hull.hull_contains(witness, ball).verdict is False


def test_distance_and_witness_require_hull_membership():
    ball = domains.parse_domain("ball:r=1")
    outside = _pt([2.5, 0, 0, 0], [0.1, 0, 0, 0])
    with pytest.raises(hull.NotInHullError):
        hull.hull_distance(outside, ball)
    with pytest.raises(hull.NotInHullError):
        hull.hull_witness(outside, ball)


def test_query_serialization():
    ball = domains.parse_domain("ball:r=1")
    query = hull.hull_contains(_pt([0.3, 0, 0, 0], [0.05, 0, 0, 0]), ball)
    blob = query.to_json()
    for key in ("sigma", "verdict", "inf_value", "argmin_q", "band",
                "indeterminate", "count"):
        assert key in blob
    assert blob["verdict"] is True
    assert blob["band"] >= 0.0


def test_sampler_lattice_and_covering_budget():
    with pytest.raises(ValueError):
        hull.ImUnitSphereSampler(6)
    for count in (128, 512):
        sampler = hull.ImUnitSphereSampler(count)
        lattice = sampler.lattice
        assert lattice.shape == (count, 4)
        assert np.abs(lattice[:, 0]).max() == 0.0  # purely imaginary units
        assert np.abs(np.linalg.norm(lattice, axis=1) - 1.0).max() < 1e-12
        # measured worst gap from random probes must sit under the
        # advertised covering chord
        rng = np.random.default_rng(22)
        probes = rng.normal(size=(4000, 3))
        probes /= np.linalg.norm(probes, axis=1, keepdims=True)
        gaps = np.linalg.norm(probes[:, None, :] - lattice[None, :, 1:],
                              axis=2).min(axis=1)
        assert gaps.max() < sampler.covering_chord


def test_near_boundary_query_is_flagged_indeterminate():
    ball = domains.parse_domain("ball:r=1")
    sigma = _pt([0.78, 0, 0, 0], [0.0, 0.2, 0, 0])
    coarse = hull.hull_contains(sigma, ball,
                                sampler=hull.ImUnitSphereSampler(64),
                                refine="never")
    assert coarse.indeterminate is True
    assert coarse.inf_value <= coarse.band
    # a denser lattice shrinks the band and settles the same query
    fine = hull.hull_contains(sigma, ball,
                              sampler=hull.ImUnitSphereSampler(8192))
    assert fine.band < coarse.band
    assert fine.verdict is True
