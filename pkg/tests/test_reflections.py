"""Boundary reflections: involution, fixed boundary, side swap, bilipschitz."""
import math

import numpy as np
import pytest

from berglab.domains import (
    DiskExterior,
    DiskInterior,
    HalfPlane,
    Membership,
    Sector,
    boundary_param,
    membership,
)
from berglab.reflections import (
    bilipschitz_estimate,
    pullback_norm,
    reflect,
    reflect_many,
    reflection_available,
    sector_compression_ratio,
)

UHP = HalfPlane(normal=1j)
QUADRANT = Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)

DOMAINS = [
    UHP,
    QUADRANT,
    DiskInterior(center=0.5 - 0.25j, radius=1.5),
    DiskExterior(center=-1.0 + 2.0j, radius=0.75),
]


def _sample_points(rng, n):
    return rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)


def test_involution():
    rng = np.random.default_rng(11)
    for dom in DOMAINS:
        zs = _sample_points(rng, 200)
        for z in zs:
            image = reflect(dom, complex(z))
            if not isinstance(image, complex):
                continue  # center/infinity special cases
            back = reflect(dom, image)
            assert abs(back - z) < 1e-10 * (1.0 + abs(z))


def test_boundary_points_fixed():
    for dom in DOMAINS:
        for t in np.linspace(0.02, 0.98, 25):
            b = boundary_param(dom, float(t)).point
            if not isinstance(b, complex):
                continue
            image = reflect(dom, b)
            assert abs(image - b) < 1e-10 * (1.0 + abs(b))


def test_side_swap():
    rng = np.random.default_rng(3)
    for dom in DOMAINS:
        zs = _sample_points(rng, 120)
        for z in zs:
            m = membership(dom, complex(z))
            if m is Membership.BOUNDARY:
                continue
            image = reflect(dom, complex(z))
            if not isinstance(image, complex):
                continue
            m2 = membership(dom, image)
            assert m2 is not m


def test_halfplane_reflection_is_conjugation():
    z = 1.7 - 2.3j
    assert abs(reflect(UHP, z) - np.conj(z)) < 1e-14


def test_quadrant_reflection_preserves_modulus():
    # the angle map trades the exterior angle range for the interior one and
    # cannot move the radius
    rng = np.random.default_rng(5)
    for _ in range(50):
        r = rng.uniform(0.1, 5.0)
        phi = rng.uniform(0.5 * math.pi + 1e-3, 2.0 * math.pi - 1e-3)
        z = r * np.exp(1j * phi)
        w = reflect(QUADRANT, complex(z))
        assert abs(abs(w) - r) < 1e-12 * r
        assert 0.0 < np.angle(w) < 0.5 * math.pi


def test_quadrant_reflection_angle_formula():
    # exterior angle phi maps to (2 pi - phi) / 3
    z = 2.0 * np.exp(1.25j * math.pi)
    w = reflect(QUADRANT, complex(z))
    assert abs(np.angle(w) - (2.0 * math.pi - 1.25 * math.pi) / 3.0) < 1e-12


def test_disk_reflection_is_inversion():
    dom = DiskInterior(center=1.0j, radius=2.0)
    z = 1.0j + 0.5  # interior
    w = reflect(dom, z)
    want = 1.0j + 4.0 / np.conj(z - 1.0j)
    assert abs(w - want) < 1e-13


def test_reflect_many_matches_scalar():
    zs = np.array([1.1 * np.exp(1.3j * math.pi), 0.7 * np.exp(1.9j * math.pi)])
    many = reflect_many(QUADRANT, zs)
    each = np.array([reflect(QUADRANT, complex(z)) for z in zs])
    np.testing.assert_allclose(many, each, rtol=1e-14)


def test_compression_ratio_quadrant():
    # opening / gap: the exterior of the quadrant is three times as wide
    assert abs(sector_compression_ratio(QUADRANT) - 1.0 / 3.0) < 1e-12


def test_bilipschitz_window_quadrant():
    # the exterior-to-interior angle map only contracts: quotients fill
    # [1/3, 1] and never leave it
    lo, hi = bilipschitz_estimate(QUADRANT, n_pairs=2000, seed=0)
    assert 1.0 / 3.0 - 0.02 <= lo <= 1.0 / 3.0 + 0.05
    assert hi <= 1.0 + 1e-9
    assert lo < hi


def test_bilipschitz_deterministic():
    a = bilipschitz_estimate(QUADRANT, n_pairs=500, seed=42)
    b = bilipschitz_estimate(QUADRANT, n_pairs=500, seed=42)
    assert a == b


def test_halfplane_bilipschitz_is_isometric():
    lo, hi = bilipschitz_estimate(UHP, n_pairs=500, seed=1)
    assert abs(lo - 1.0) < 1e-9
    assert abs(hi - 1.0) < 1e-9


def test_reflection_available():
    from berglab.domains import CuspDomain

    assert reflection_available(QUADRANT)
    assert reflection_available(UHP)
    assert not reflection_available(CuspDomain(scale=1.0))


def test_pullback_norm_halfplane_is_plain_norm():
    # conjugation preserves area, so pulling a section back through the
    # half-plane reflection reproduces its plain norm upstairs
    from berglab.pairings import pair_closed

    f = lambda z: (z + 0.8j) ** -2.0  # pole below the axis, outside the domain
    got = float(np.real(pullback_norm(UHP, f).value))
    want = math.sqrt(float(np.real(pair_closed(UHP, -0.8j, -0.8j))))
    assert abs(got - want) < 1e-6
