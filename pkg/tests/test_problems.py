import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tikhoflow import builtin, evaluate, hessian_vector_product, min_norm_solution
from tikhoflow.problems import ObjectiveSpec

from helpers import central_gradient, central_hvp


@pytest.fixture(scope="module")
def suite():
    return {
        "paper1d": builtin("paper1d"),
        "shifted_quadratic": builtin("shifted_quadratic", c=np.array([1.0, 2.0])),
        "psd_quadratic": builtin("psd_quadratic", A=np.array([[2.0, 0.0], [0.0, 1.0]]), b=np.array([2.0, 1.0])),
        "least_squares": builtin("least_squares", A=np.array([[1.0, 1.0]]), b=np.array([2.0])),
    }


def test_paper1d_values_on_the_cubic_piece():
    obj = builtin("paper1d")
    val, grad = evaluate(obj, np.array([2.0]))
    assert val == 1.0
    assert grad[0] == 3.0


def test_paper1d_flat_region():
    obj = builtin("paper1d")
    val, grad = evaluate(obj, np.array([0.5]))
    assert val == 0.0
    assert grad[0] == 0.0


def test_quadratic_evaluate():
    obj = builtin("shifted_quadratic", c=np.zeros(2))
    val, grad = evaluate(obj, np.array([3.0, 4.0]))
    assert val == pytest.approx(12.5, abs=0)
    assert np.array_equal(grad, np.array([3.0, 4.0]))


def test_evaluate_rejects_bad_input():
    obj = builtin("paper1d")
    with pytest.raises(ValueError):
        evaluate(obj, np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        evaluate(obj, np.array([np.nan]))


def test_hvp_identity_for_quadratic():
    obj = builtin("shifted_quadratic", c=np.array([5.0, -1.0]))
    v = np.array([0.3, -0.7])
    for x in (np.zeros(2), np.array([10.0, 3.0])):
        assert np.array_equal(hessian_vector_product(obj, x, v), v)


def test_hvp_paper1d_against_finite_differences():
    obj = builtin("paper1d")
    # second derivative of the cubic piece at x=2 is 6
    got = hessian_vector_product(obj, np.array([2.0]), np.array([1.0]))
    assert got[0] == pytest.approx(6.0, rel=1e-12)
    fd = central_hvp(obj.gradient, np.array([2.0]), np.array([1.0]))
    assert got[0] == pytest.approx(fd[0], rel=1e-6)
    # flat piece: vanishing curvature
    got0 = hessian_vector_product(obj, np.array([0.0]), np.array([1.0]))
    assert got0[0] == 0.0
    fd0 = central_hvp(obj.gradient, np.array([0.0]), np.array([1.0]))
    assert abs(fd0[0]) <= 1e-9


def test_hvp_dimension_mismatch():
    obj = builtin("shifted_quadratic", c=np.zeros(2))
    with pytest.raises(ValueError):
        hessian_vector_product(obj, np.zeros(2), np.zeros(3))


def test_builtin_paper1d_metadata():
    obj = builtin("paper1d")
    assert obj.dimension == 1
    assert obj.min_value == 0.0
    assert np.array_equal(min_norm_solution(obj), np.array([0.0]))
    assert obj.argmin_description.contains(np.array([-1.0]))
    assert obj.argmin_description.contains(np.array([1.0]))
    assert not obj.argmin_description.contains(np.array([1.1]))


def test_builtin_shifted_quadratic_min_norm():
    obj = builtin("shifted_quadratic", c=np.array([1.0, 2.0]))
    assert np.array_equal(min_norm_solution(obj), np.array([1.0, 2.0]))


def test_builtin_least_squares_min_norm_pseudoinverse():
    A = np.array([[1.0, 1.0]])
    b = np.array([2.0])
    obj = builtin("least_squares", A=A, b=b)
    xhat = min_norm_solution(obj)
    assert np.allclose(xhat, np.array([1.0, 1.0]), atol=1e-12)
    # solves the system and is orthogonal to the null direction (1, -1)
    assert np.allclose(A @ xhat, b, atol=1e-12)
    assert abs(xhat @ np.array([1.0, -1.0])) <= 1e-12
    assert np.allclose(xhat, np.linalg.pinv(A) @ b, atol=1e-14)


def test_builtin_psd_quadratic():
    A = np.array([[2.0, 0.0], [0.0, 1.0]])
    b = np.array([2.0, 1.0])
    obj = builtin("psd_quadratic", A=A, b=b)
    assert np.allclose(min_norm_solution(obj), np.array([1.0, 1.0]))
    assert obj.min_value == pytest.approx(-1.5)
    val, grad = evaluate(obj, np.array([1.0, 1.0]))
    assert val == pytest.approx(obj.min_value)
    assert np.linalg.norm(grad) <= 1e-12


def test_builtin_rejects_unknown_and_indefinite():
    with pytest.raises(ValueError, match="unknown problem"):
        builtin("nosuch")
    with pytest.raises(ValueError, match="indefinite"):
        builtin("psd_quadratic", A=np.array([[1.0, 0.0], [0.0, -1.0]]), b=np.zeros(2))
    with pytest.raises(ValueError, match="unbounded"):
        builtin("psd_quadratic", A=np.array([[1.0, 0.0], [0.0, 0.0]]), b=np.array([0.0, 1.0]))


def test_min_norm_unavailable():
    obj = ObjectiveSpec(
        dimension=1,
        value=lambda x: float(x[0] ** 2),
        gradient=lambda x: 2 * x,
        hessian_vec=lambda x, v: 2 * v,
        min_value=0.0,
    )
    with pytest.raises(ValueError, match="minimum-norm"):
        min_norm_solution(obj)


def _sample_points(obj, count=50):
    rng = np.random.default_rng(1234)
    return rng.uniform(-3.0, 3.0, size=(count, obj.dimension))


def test_gradient_matches_finite_differences(suite):
    for name, obj in suite.items():
        for x in _sample_points(obj):
            analytic = np.asarray(obj.gradient(x))
            fd = central_gradient(obj.value, x)
            scale = 1.0 + np.linalg.norm(analytic)
            assert np.linalg.norm(analytic - fd) <= 1e-6 * scale, name


def test_hvp_linearity_and_symmetry(suite):
    rng = np.random.default_rng(99)
    for name, obj in suite.items():
        d = obj.dimension
        for _ in range(50):
            x = rng.uniform(-3, 3, d)
            u, v = rng.uniform(-1, 1, d), rng.uniform(-1, 1, d)
            a, b = rng.uniform(-2, 2), rng.uniform(-2, 2)
            lin = hessian_vector_product(obj, x, a * u + b * v)
            ref = a * hessian_vector_product(obj, x, u) + b * hessian_vector_product(obj, x, v)
            assert np.linalg.norm(lin - ref) <= 1e-12 * (1 + np.linalg.norm(ref)), name
            sym1 = hessian_vector_product(obj, x, u) @ v
            sym2 = hessian_vector_product(obj, x, v) @ u
            assert abs(sym1 - sym2) <= 1e-10 * (1 + abs(sym1)), name
            quad = hessian_vector_product(obj, x, v) @ v
            assert quad >= -1e-10 * (v @ v), name


def test_hvp_matches_gradient_finite_differences(suite):
    rng = np.random.default_rng(7)
    for name, obj in suite.items():
        d = obj.dimension
        for _ in range(50):
            x = rng.uniform(-3, 3, d)
            v = rng.uniform(-1, 1, d)
            got = hessian_vector_product(obj, x, v)
            fd = central_hvp(obj.gradient, x, v)
            assert np.linalg.norm(got - fd) <= 1e-5 * (1 + np.linalg.norm(got)), name


def test_gradient_vanishes_at_known_minimizers(suite):
    for name, obj in suite.items():
        x = min_norm_solution(obj)
        grad = np.asarray(obj.gradient(x))
        assert np.linalg.norm(grad) <= 1e-12 * (1 + np.linalg.norm(x)), name


def test_min_norm_lies_in_argmin_and_is_smallest(suite):
    rng = np.random.default_rng(5)
    for name, obj in suite.items():
        xstar = min_norm_solution(obj)
        gap = obj.value(xstar) - obj.min_value
        assert gap <= 1e-12 * (1 + abs(obj.min_value)), name
        if name == "paper1d":
            others = rng.uniform(-1, 1, size=(30, 1))
        elif name == "least_squares":
            null = np.array([1.0, -1.0]) / np.sqrt(2.0)
            others = xstar + rng.uniform(-2, 2, size=(30, 1)) * null
        else:
            others = np.tile(xstar, (2, 1))
        for other in others:
            assert obj.argmin_description.contains(other), name
            assert np.linalg.norm(xstar) <= np.linalg.norm(other) + 1e-12, name


def test_paper1d_is_c2_at_the_seams():
    # value, first and second derivatives of the cubic pieces vanish at +-1
    for seam, piece in ((1.0, lambda s: (s - 1.0) ** 3), (-1.0, lambda s: -((s + 1.0) ** 3))):
        assert piece(seam) == 0.0
    # derivative pieces: 3(x-1)^2 and -3(x+1)^2; second: 6(x-1), -6(x+1)
    assert 3.0 * (1.0 - 1.0) ** 2 == 0.0
    assert -3.0 * (-1.0 + 1.0) ** 2 == 0.0
    assert 6.0 * (1.0 - 1.0) == 0.0
    assert -6.0 * (-1.0 + 1.0) == 0.0
    obj = builtin("paper1d")
    for seam in (-1.0, 1.0):
        val, grad = evaluate(obj, np.array([seam]))
        assert val == 0.0 and grad[0] == 0.0
        assert hessian_vector_product(obj, np.array([seam]), np.array([1.0]))[0] == 0.0


@settings(max_examples=60, deadline=None)
@given(
    x=st.floats(-4, 4),
    u=st.floats(-2, 2),
    v=st.floats(-2, 2),
    a=st.floats(-3, 3),
    b=st.floats(-3, 3),
)
def test_hvp_linearity_property_paper1d(x, u, v, a, b):
    obj = builtin("paper1d")
    xa, ua, va = np.array([x]), np.array([u]), np.array([v])
    lin = hessian_vector_product(obj, xa, a * ua + b * va)
    ref = a * hessian_vector_product(obj, xa, ua) + b * hessian_vector_product(obj, xa, va)
    assert np.linalg.norm(lin - ref) <= 1e-12 * (1 + np.linalg.norm(ref))
