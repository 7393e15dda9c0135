"""Quaternion arithmetic, complex coordinates, and matrix embeddings."""

import numpy as np

from fueter import quat


def test_unit_multiplication_table():
    e = np.eye(4)
    # i*j = k and cyclic, anti-commuting imaginary units
    products = {
        (1, 1): -e[0], (2, 2): -e[0], (3, 3): -e[0],
        (1, 2): e[3], (2, 1): -e[3],
        (2, 3): e[1], (3, 2): -e[1],
        (3, 1): e[2], (1, 3): -e[2],
    }
    for (i, j), expected in products.items():
        np.testing.assert_array_equal(quat.qmul(e[i], e[j]), expected)
    for i in range(4):
        np.testing.assert_array_equal(quat.qmul(e[0], e[i]), e[i])
        np.testing.assert_array_equal(quat.qmul(e[i], e[0]), e[i])


def test_norm_is_multiplicative():
    rng = np.random.default_rng(1)
    for _ in range(50):
        p = rng.normal(size=4)
        q = rng.normal(size=4)
        lhs = quat.qnorm(quat.qmul(p, q))
        rhs = quat.qnorm(p) * quat.qnorm(q)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, rhs)


def test_conjugation_reverses_products():
    rng = np.random.default_rng(2)
    p = rng.normal(size=4)
    q = rng.normal(size=4)
    lhs = quat.qconj(quat.qmul(p, q))
    rhs = quat.qmul(quat.qconj(q), quat.qconj(p))
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)
    # p conj(p) is the squared norm times the identity
    np.testing.assert_allclose(quat.qmul(p, quat.qconj(p)),
                               [quat.qnorm(p) ** 2, 0, 0, 0], atol=1e-13)


def test_qinner_matches_euclidean_inner_product():
    rng = np.random.default_rng(3)
    p = rng.normal(size=4)
    q = rng.normal(size=4)
    assert abs(quat.qinner(p, q) - np.dot(p, q)) < 1e-13


def test_complex_coordinate_layout_and_roundtrip():
    x = np.array([1.0, 2.0, 3.0, 4.0])
    ab = quat.real_to_ab(x)
    # first complex slot pairs components 0,1; second pairs components 3,2
    assert ab[0] == 1.0 + 2.0j
    assert ab[1] == 4.0 + 3.0j
    rng = np.random.default_rng(4)
    v = rng.normal(size=8)  # two quaternion entries
    np.testing.assert_array_equal(quat.ab_to_real(quat.real_to_ab(v)), v)


def test_kappa_is_right_multiplication_by_k_and_squares_to_minus_one():
    rng = np.random.default_rng(5)
    x = rng.normal(size=4)
    ab = quat.real_to_ab(x)
    k_unit = np.array([0.0, 0.0, 0.0, 1.0])
    np.testing.assert_allclose(quat.ab_to_real(quat.kappa(ab)),
                               quat.qmul(x, k_unit), atol=1e-13)
    np.testing.assert_allclose(quat.kappa(quat.kappa(ab)), -ab, atol=1e-13)
    # component formula: (a, b) -> (-conj b, conj a)
    a, b = ab
    out = quat.kappa(ab)
    assert out[0] == -np.conj(b)
    assert out[1] == np.conj(a)


def test_embed_matrix_structure_and_determinant():
    x = np.array([0.7, -0.2, 0.4, 1.1])
    a = 0.7 - 0.2j  # components 0,1
    b = 1.1 + 0.4j  # components 3,2
    M = quat.embed_M(x)
    np.testing.assert_allclose(M, [[a, -np.conj(b)], [b, np.conj(a)]], atol=0)
    assert abs(np.linalg.det(M) - quat.qnorm(x) ** 2) < 1e-13


def test_det_biquat_matches_closed_form_and_numpy():
    rng = np.random.default_rng(6)
    for _ in range(25):
        x = rng.normal(size=4)
        y = rng.normal(size=4)
        Z = quat.matrix_point(x, y)
        expected = quat.qnorm(x) ** 2 - quat.qnorm(y) ** 2 + 2j * np.dot(x, y)
        assert abs(quat.det_biquat(Z) - expected) < 1e-12
        assert abs(np.linalg.det(Z) - expected) < 1e-12


def test_decompose_matrix_inverts_matrix_point():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3):
        x = rng.normal(size=4 * n)
        y = rng.normal(size=4 * n)
        Z = quat.matrix_point(x, y)
        assert Z.shape == (2 * n, 2)
        x2, y2 = quat.decompose_matrix(Z)
        np.testing.assert_allclose(x2, x, rtol=0, atol=1e-14)
        np.testing.assert_allclose(y2, y, rtol=0, atol=1e-14)


def test_embed_of_decompose_is_bitwise_identity_on_real_slice_matrices():
    rng = np.random.default_rng(8)
    for n in (1, 2):
        x = rng.normal(size=4 * n)
        M = quat.matrix_point(x, np.zeros(4 * n))
        x2, y2 = quat.decompose_matrix(M)
        assert np.array_equal(quat.embed_M(x2), M)
        assert np.all(y2 == 0.0)


def test_norm_C_combines_both_real_parts():
    x = np.array([3.0, 0.0, 0.0, 0.0])
    y = np.array([0.0, 4.0, 0.0, 0.0])
    assert abs(quat.norm_C(x, y) - 5.0) < 1e-13
    assert abs(quat.BiquaternionPoint(x, y).norm_C() - 5.0) < 1e-13


def test_quaternion_class_arithmetic():
    a = quat.Quaternion(1, 2, 3, 4)
    b = quat.Quaternion(0.5, -1, 0.25, 2)
    np.testing.assert_allclose((a * b).arr, quat.qmul(a.arr, b.arr))
    np.testing.assert_allclose((a + b).arr, a.arr + b.arr)
    np.testing.assert_allclose((a - b).arr, a.arr - b.arr)
    np.testing.assert_allclose(a.conj().arr, quat.qconj(a.arr))
    assert a.alpha == 1 + 2j
    assert a.beta == 4 + 3j
    round_trip = quat.Quaternion.from_complex_pair(a.alpha, a.beta)
    np.testing.assert_array_equal(round_trip.arr, a.arr)
    assert a.isclose(quat.Quaternion.from_array(a.arr))


def test_quaternion_vector_operations():
    v = quat.QuaternionVector(np.arange(8.0).reshape(2, 4))
    a = quat.Quaternion(1, 2, 3, 4)
    w = v.right_mul(a)
    for ell in range(2):
        np.testing.assert_allclose(w.entry(ell).arr,
                                   quat.qmul(v.entry(ell).arr, a.arr))
    assert abs(v.norm() - np.linalg.norm(np.arange(8.0))) < 1e-13
    assert abs(v.inner(v) - v.norm() ** 2) < 1e-12
    np.testing.assert_array_equal(v.to_ab(), quat.real_to_ab(v.arr))
    np.testing.assert_array_equal(
        quat.QuaternionVector.from_ab(v.to_ab()).arr, v.arr)


def test_biquaternion_point_roundtrip_and_det():
    rng = np.random.default_rng(9)
    x = rng.normal(size=8)
    y = rng.normal(size=8)
    pt = quat.BiquaternionPoint(x, y)
    assert pt.n == 2
    pt2 = quat.BiquaternionPoint.from_matrix(pt.matrix)
    np.testing.assert_allclose(pt2.x.arr, x, rtol=0, atol=1e-14)
    np.testing.assert_allclose(pt2.y.arr, y, rtol=0, atol=1e-14)
    diff = pt - quat.BiquaternionPoint(0.5 * x, 0.5 * y)
    expected = 0.5 * np.sqrt(np.dot(x, x) + np.dot(y, y))
    assert abs(diff.norm_C() - expected) < 1e-12

    one = quat.BiquaternionPoint(np.array([1.0, 0, 0, 0]),
                                 np.array([0.0, 2.0, 0, 0]))
    det = one.det()
    assert abs(det - (1.0 - 4.0 + 2j * 0.0)) < 1e-13

    try:
        pt.det()
    except ValueError:
        pass
    else:
        raise AssertionError("det() must reject vector-valued points")
