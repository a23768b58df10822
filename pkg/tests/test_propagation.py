import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghostlight.correlator.propagation import collins_kernel, fresnel_kernel
from ghostlight.errors import DegenerateKernelError, InvalidGeometryError
from ghostlight.geometry import RayTransferMatrix, free_space, path2_matrix

# detector/object coordinates of the setups simulated here; the phase stays
# below ~200 rad so double rounding is far under the 1e-12 comparison budget
x_vals = st.floats(-0.1, 0.1)


def test_fresnel_modulus(ctx):
    x = np.linspace(-0.3, 0.3, 7)
    np.testing.assert_allclose(np.abs(fresnel_kernel(ctx, 25.0, x, 0.1)), (ctx.wavelength * 25.0) ** -0.5, rtol=1e-12)


@given(x_vals, x_vals, st.floats(0.1, 100.0))
def test_fresnel_symmetric(x, y, L):
    from ghostlight.geometry import WaveContext

    ctx = WaveContext(7.02e-4)
    assert fresnel_kernel(ctx, L, x, y) == fresnel_kernel(ctx, L, y, x)


@given(x_vals, x_vals, st.floats(1.0, 100.0))
def test_collins_free_space_reproduces_fresnel(x, u, L):
    from ghostlight.geometry import WaveContext

    ctx = WaveContext(7.02e-4)
    a = collins_kernel(ctx, free_space(L), x, u, axial_length=L)
    b = fresnel_kernel(ctx, L, x, u)
    assert abs(a - b) <= 1e-12 * abs(b)


def test_fresnel_rejects_nonpositive(ctx):
    with pytest.raises(InvalidGeometryError):
        fresnel_kernel(ctx, 0.0, 0.0, 0.0)


def test_collins_modulus(ctx):
    m = path2_matrix(30, 10, 20)
    assert m.b == pytest.approx(-10.0)
    assert abs(collins_kernel(ctx, m, 0.0, 0.0)) == pytest.approx((ctx.wavelength * 10.0) ** -0.5, rel=1e-12)
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(np.abs(collins_kernel(ctx, m, x, 0.02)), (ctx.wavelength * 10.0) ** -0.5, rtol=1e-12)


def test_collins_degenerate(ctx):
    with pytest.raises(DegenerateKernelError, match="effective_image_matrix"):
        collins_kernel(ctx, RayTransferMatrix(-1.0, 0.0, -0.1, -1.0), 0.0, 0.0)


def test_free_space_phase_convention(ctx):
    # the quadratic phase must grow as +k (x - u)^2 / 2L
    L, x = 10.0, 0.01
    phase = np.angle(fresnel_kernel(ctx, L, x, 0.0) / fresnel_kernel(ctx, L, 0.0, 0.0))
    expected = np.angle(np.exp(1j * ctx.k * x**2 / (2 * L)))
    assert phase == pytest.approx(expected, abs=1e-9)
