import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import trapezoid

from ghostlight.correlator.gaussian import (
    ComplexQuadraticForm,
    gaussian_exponent,
    gaussian_integral,
    gaussian_prefactor,
    sqrt_det,
)
from ghostlight.errors import QuadraticFormDomainError


def brute_gaussian(M, b, c0=0.0, half=10.0, n=801):
    """Trapezoid quadrature of exp(-x^T M x + b^T x + c0) on [-half, half]^n."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    x = np.linspace(-half, half, n)
    if M.shape[0] == 1:
        f = np.exp(-M[0, 0] * x**2 + b[0] * x + c0)
        return trapezoid(f, x)
    X, Y = np.meshgrid(x, x, indexing="ij")
    quad = M[0, 0] * X**2 + (M[0, 1] + M[1, 0]) * X * Y + M[1, 1] * Y**2
    f = np.exp(-quad + b[0] * X + b[1] * Y + c0)
    return trapezoid(trapezoid(f, x, axis=1), x)


def test_unit_gaussian():
    assert gaussian_integral(ComplexQuadraticForm([[1.0]], [0.0])) == pytest.approx(math.sqrt(math.pi), rel=1e-15)


def test_separable_product():
    q = ComplexQuadraticForm(np.diag([1.0, 2.0]), [0.0, 0.0])
    assert gaussian_integral(q) == pytest.approx(math.pi / math.sqrt(2), rel=1e-15)


def test_coupled_complex_form_against_quadrature():
    M = [[1, 0.3j], [0.3j, 1.5]]
    b = [0.2, -0.1j]
    exact = gaussian_integral(ComplexQuadraticForm(M, b))
    ref = brute_gaussian(M, b, half=8.0, n=1201)
    assert abs(exact - ref) <= 1e-6 * abs(ref)


def test_negative_real_determinant_uses_continuous_branch():
    # Re(det) = 1 - 4 < 0 although Re(M) is the identity
    M = np.diag([1 + 2j, 1 + 2j])
    assert (M[0, 0] * M[1, 1]).real < 0
    exact = gaussian_integral(ComplexQuadraticForm(M, [0.3, 0.1j]))
    ref = brute_gaussian(M, [0.3, 0.1j], n=1601)
    assert abs(exact - ref) <= 1e-6 * abs(ref)


def test_domain_checks():
    with pytest.raises(QuadraticFormDomainError):
        ComplexQuadraticForm([[-1.0]], [0.0])
    with pytest.raises(QuadraticFormDomainError):
        ComplexQuadraticForm([[1.0, 2.0], [2.0, 1.0]], [0.0, 0.0])  # indefinite
    with pytest.raises(QuadraticFormDomainError):
        ComplexQuadraticForm([[1.0, 0.1], [0.2, 1.0]], [0.0, 0.0])  # not symmetric
    with pytest.raises(QuadraticFormDomainError):
        ComplexQuadraticForm(np.eye(3), np.zeros(3))
    with pytest.raises(QuadraticFormDomainError):
        ComplexQuadraticForm(np.eye(2), np.zeros(3))


def test_batched_linear_terms():
    M = np.array([[2.0, 0.5j], [0.5j, 1.0 - 1j]])
    b = np.array([[0.1, 0.2], [0.3j, -0.4], [0.0, 1.0]])
    q = ComplexQuadraticForm(M, b, c0=np.array([0.0, 1j, -0.5]))
    batch = gaussian_integral(q)
    for i in range(3):
        single = gaussian_integral(ComplexQuadraticForm(M, b[i], q.c0[i]))
        assert batch[i] == pytest.approx(single, rel=1e-14)


def test_prefactor_and_exponent_compose():
    q = ComplexQuadraticForm([[1.2 - 0.5j]], [0.4 + 0.1j], 0.3j)
    assert gaussian_integral(q) == pytest.approx(gaussian_prefactor(q) * np.exp(gaussian_exponent(q)), rel=1e-15)


def test_sqrt_det_squares_to_det():
    M = np.array([[3 + 1j, 0.7 - 0.2j], [0.7 - 0.2j, 0.5 - 4j]])
    det = M[0, 0] * M[1, 1] - M[0, 1] ** 2
    assert sqrt_det(M) ** 2 == pytest.approx(det, rel=1e-13)
    assert sqrt_det(M).real > 0


@st.composite
def random_forms(draw, n=None):
    n = n or draw(st.sampled_from([1, 2]))
    f = st.floats(-1.0, 1.0)
    if n == 1:
        M = np.array([[draw(st.floats(0.5, 3.0)) + 1j * draw(st.floats(-2.0, 2.0))]])
    else:
        theta = draw(st.floats(0, math.pi))
        R = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
        re = R @ np.diag([draw(st.floats(0.5, 3.0)), draw(st.floats(0.5, 3.0))]) @ R.T
        im = np.array([[draw(st.floats(-2, 2)), 0.0], [0.0, draw(st.floats(-2, 2))]])
        im[0, 1] = im[1, 0] = draw(st.floats(-1.5, 1.5))
        M = re + 1j * im
    b = np.array([draw(f) + 1j * draw(f) for _ in range(n)])
    return M, b


@given(random_forms())
def test_random_forms_match_quadrature(form):
    M, b = form
    exact = gaussian_integral(ComplexQuadraticForm(M, b))
    ref = brute_gaussian(M, b)
    assert abs(exact - ref) <= 1e-6 * abs(ref)
