"""Adaptive quadrature against closed-form areas and moments."""
import math

import numpy as np
import pytest

from berglab.domains import (
    DiskExterior,
    DiskInterior,
    HalfPlane,
    Sector,
)
from berglab.quadrature import QuadConfig, inner_b2, integrate_domain, norm_b2


def test_disk_area():
    dom = DiskInterior(center=0.3 - 0.2j, radius=1.7)
    res = integrate_domain(dom, lambda z: np.ones(z.shape), QuadConfig(abs_tol=1e-10))
    assert abs(res.value - math.pi * 1.7**2) < 1e-8


def test_disk_second_moment():
    # int_D |z|^2 over the unit disk = pi/2
    dom = DiskInterior(center=0.0, radius=1.0)
    res = integrate_domain(dom, lambda z: np.abs(z) ** 2, QuadConfig(abs_tol=1e-10))
    assert abs(res.value - math.pi / 2.0) < 1e-8


def test_exterior_inverse_quartic():
    # int_{|z|>d} |z|^-4 = pi/d^2, the basic integrability scale for sections
    for d in (0.5, 1.0, 2.0):
        dom = DiskExterior(center=0.0, radius=d)
        res = integrate_domain(dom, lambda z: np.abs(z) ** -4, QuadConfig(abs_tol=1e-10))
        assert abs(res.value - math.pi / d**2) < 1e-7 / d**2


def test_halfplane_pole_energy():
    # int_{Im z > 0} |z + i|^-4 = pi/(2*1)^2 / ... direct value pi/4 at height 1
    dom = HalfPlane(normal=1j)
    res = integrate_domain(
        dom, lambda z: np.abs(z + 1j) ** -4, QuadConfig(abs_tol=1e-10)
    )
    assert abs(res.value - math.pi / 4.0) < 1e-8


def test_sector_energy_matches_halfplane_chart():
    # quadrant energy of |z - p|^-4 agrees with the pulled-back half-plane
    # integral under w = z^2 (independent change of variables, same number)
    quad = Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)
    p = -0.7 - 0.6j
    res = integrate_domain(quad, lambda z: np.abs(z - p) ** -4, QuadConfig(abs_tol=1e-10))

    hp = HalfPlane(normal=1j)

    def pulled(w):
        z = np.sqrt(np.abs(w)) * np.exp(0.5j * np.angle(w))
        return np.abs(z - p) ** -4 / (4.0 * np.abs(z) ** 2)

    ref = integrate_domain(hp, pulled, QuadConfig(abs_tol=1e-10))
    assert abs(res.value - ref.value) < 5e-8


def test_vector_integrand():
    dom = DiskInterior(center=0.0, radius=1.0)

    def integrand(z):
        return np.stack([np.ones(z.shape), np.abs(z) ** 2], axis=-1)

    res = integrate_domain(dom, integrand, QuadConfig(abs_tol=1e-10))
    np.testing.assert_allclose(
        np.real(np.asarray(res.value)), [math.pi, math.pi / 2.0], atol=1e-8
    )


def test_sector_complement_gaussian_mass():
    # the quadrant holds exactly a quarter of the plane Gaussian, so its
    # complement must integrate e^{-|z|^2} to 3*pi/4
    from berglab.domains import complement

    quad = Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)
    dom = complement(quad)
    res = integrate_domain(
        dom, lambda z: np.exp(-np.abs(z) ** 2), QuadConfig(abs_tol=1e-10)
    )
    assert abs(res.value - 0.75 * math.pi) < 1e-7


def test_inner_b2_conjugate_symmetry():
    dom = DiskInterior(center=0.0, radius=1.0)
    f = lambda z: 1.0 / (z - 1.5) ** 2
    g = lambda z: 1.0 / (z + 2.0 - 0.5j) ** 2
    a = complex(inner_b2(dom, f, g, QuadConfig(abs_tol=1e-11)).value)
    b = complex(inner_b2(dom, g, f, QuadConfig(abs_tol=1e-11)).value)
    assert abs(a - np.conj(b)) < 1e-9


def test_norm_b2_matches_closed_pairing():
    dom = HalfPlane(normal=1j)
    n = float(np.real(norm_b2(dom, lambda z: (z + 2j) ** -2.0, QuadConfig(abs_tol=1e-10)).value))
    # the closed pairing gives the squared norm of the same section
    from berglab.pairings import pair_closed

    ref = math.sqrt(float(np.real(pair_closed(dom, -2j, -2j))))
    assert abs(n - ref) < 1e-8


def test_quadconfig_validation():
    from berglab.exceptions import ConfigError

    with pytest.raises(ConfigError):
        QuadConfig(abs_tol=0.0)
    with pytest.raises(ConfigError):
        QuadConfig(abs_tol=1e-8, max_cells=2)
    with pytest.raises(ConfigError):
        QuadConfig(unbounded_chart="mercator")
