"""Reproducing kernels: closed forms against the quadrature inner product.

The reproducing property (f, K(., w)) = f(w) is the ground truth every
kernel must satisfy; it pins normalization, conjugation convention, and the
sector power-map branch all at once.
"""
import math

import numpy as np
import pytest

from berglab.domains import DiskInterior, HalfPlane, Sector
from berglab.exceptions import KernelUnavailableError
from berglab.functions import RationalSection
from berglab.kernels import KernelSection, kernel, rational_expansion, section_family
from berglab.quadrature import QuadConfig, inner_b2

UHP = HalfPlane(normal=1j)
QUADRANT = Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)
QC = QuadConfig(abs_tol=1e-10)


def _reproduce(dom, f, w) -> float:
    K = kernel(dom)
    got = complex(inner_b2(dom, f, lambda z: K(z, w), QC).value)
    return abs(got - complex(f(np.array([w]))[0]))


def test_halfplane_kernel_value():
    # K(i, i) on the upper half-plane equals 1/(4 pi)
    K = kernel(UHP)
    v = complex(K(np.array([1j]), 1j)[0])
    assert abs(v - 1.0 / (4.0 * math.pi)) < 1e-14


def test_halfplane_reproducing():
    f = RationalSection(pole=-1.5j)
    for w in (1j, 0.4 + 0.9j, -2.0 + 0.3j):
        assert _reproduce(UHP, f, w) < 1e-8


def test_disk_reproducing():
    dom = DiskInterior(center=0.2, radius=1.3)
    f = RationalSection(pole=2.4 + 0.8j)
    for w in (0.2, 0.7 + 0.4j, -0.6 - 0.3j):
        assert _reproduce(dom, f, w) < 1e-8


def test_quadrant_reproducing():
    f = RationalSection(pole=-0.8 - 0.9j)
    for w in (0.5 + 0.4j, 1.2 + 0.2j, 0.15 + 0.9j):
        assert _reproduce(QUADRANT, f, w) < 1e-7


def test_quadrant_reproducing_transplanted_monomial():
    # a non-section holomorphic function with poles at 2e^{-i pi/4} and
    # 2e^{3i pi/4}, both safely outside the closed quadrant
    def f(z):
        return z / (z**2 + 4.0j) ** 2

    for w in (0.5 + 0.5j, 1.4 + 0.7j):
        K = kernel(QUADRANT)
        got = complex(inner_b2(QUADRANT, f, lambda z: K(z, w), QC).value)
        assert abs(got - f(complex(w))) < 1e-7


def test_kernel_conjugate_symmetry():
    K = kernel(QUADRANT)
    z, w = 0.3 + 0.7j, 1.1 + 0.25j
    a = complex(K(np.array([z]), w)[0])
    b = complex(K(np.array([w]), z)[0])
    assert abs(a - np.conj(b)) < 1e-13


def test_kernel_diagonal_positive_and_blows_up_at_boundary():
    K = kernel(QUADRANT)
    inner_val = float(np.real(K(np.array([1.0 + 1.0j]), 1.0 + 1.0j)[0]))
    near_val = float(np.real(K(np.array([1.0 + 0.01j]), 1.0 + 0.01j)[0]))
    assert inner_val > 0.0
    assert near_val > 100.0 * inner_val


def test_kernel_section_callable_matches_kernel():
    sec = KernelSection(QUADRANT, 0.6 + 0.8j)
    K = kernel(QUADRANT)
    z = np.array([0.2 + 0.3j, 1.0 + 1.5j])
    np.testing.assert_allclose(sec(z), K(z, 0.6 + 0.8j), rtol=1e-13)


def test_section_family_sizes():
    fam = section_family(QUADRANT, [0.5 + 0.5j, 1.0 + 0.2j])
    assert len(fam) == 2
    assert all(isinstance(s, KernelSection) for s in fam)


def test_quadrant_kernel_is_rational():
    # the quadrant kernel splits into two second-order poles mirrored across
    # the real axis; check the expansion reproduces the kernel pointwise
    w = 0.9 * np.exp(0.25j * math.pi)
    combo = rational_expansion(QUADRANT, complex(w))
    if combo is None:
        pytest.skip("no rational expansion registered for this domain")
    K = kernel(QUADRANT)
    z = np.array([0.4 + 0.2j, 2.0 + 1.0j, 0.1 + 1.4j])
    np.testing.assert_allclose(combo(z), K(z, complex(w)), rtol=1e-12)


def test_cusp_kernel_unavailable():
    from berglab.domains import CuspDomain

    with pytest.raises(KernelUnavailableError):
        kernel(CuspDomain(scale=1.0))
