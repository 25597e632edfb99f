"""Membership, complements, boundary parameterization, serialization."""
import math

import numpy as np
import pytest

from berglab.domains import (
    CuspDomain,
    DiskExterior,
    DiskInterior,
    HalfPlane,
    Membership,
    Sector,
    boundary_distance,
    boundary_param,
    complement,
    domain_from_json,
    domain_to_json,
    is_quasidisk,
    is_unbounded,
    membership,
    quasidisk_constant,
)

QUADRANT = Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)


def test_membership_partition_halfplane():
    dom = HalfPlane(normal=1j)
    assert membership(dom, 1.0 + 2.0j) is Membership.INTERIOR
    assert membership(dom, 3.0 - 0.5j) is Membership.EXTERIOR
    assert membership(dom, -7.25) is Membership.BOUNDARY


def test_membership_partition_quadrant():
    assert membership(QUADRANT, 0.3 + 0.4j) is Membership.INTERIOR
    assert membership(QUADRANT, -0.3 + 0.4j) is Membership.EXTERIOR
    assert membership(QUADRANT, 2.0) is Membership.BOUNDARY
    assert membership(QUADRANT, 0.0) is Membership.BOUNDARY  # the vertex
    assert membership(QUADRANT, 1.5j) is Membership.BOUNDARY


def test_membership_scale_invariant_tolerance():
    # the boundary band grows with |z|, so far-out almost-boundary points
    # still classify as boundary
    dom = HalfPlane(normal=1j)
    assert membership(dom, 1e8 + 1e-4j) is Membership.BOUNDARY
    assert membership(dom, 1e8 + 1.0j) is Membership.INTERIOR


def test_membership_disks():
    disk = DiskInterior(center=1.0, radius=2.0)
    assert membership(disk, 1.0) is Membership.INTERIOR
    assert membership(disk, 3.0) is Membership.BOUNDARY
    assert membership(disk, 4.0) is Membership.EXTERIOR
    ext = DiskExterior(center=1.0, radius=2.0)
    assert membership(ext, 1.0) is Membership.EXTERIOR
    assert membership(ext, 4.0) is Membership.INTERIOR


def test_boundary_distance():
    assert abs(boundary_distance(HalfPlane(normal=1j), 2.0 + 3.0j) - 3.0) < 1e-12
    assert abs(boundary_distance(QUADRANT, 0.5 + 0.5j) - 0.5) < 1e-12
    # third-quadrant points see the vertex as the nearest boundary point
    z = -1.0 - 1.0j
    assert abs(boundary_distance(QUADRANT, z) - abs(z)) < 1e-12


def test_complement_swaps_membership():
    for dom in (HalfPlane(normal=1j), QUADRANT, DiskInterior(0.0, 1.0)):
        comp = complement(dom)
        for z in (0.5 + 0.8j, -1.0 - 0.2j, 2.0 - 2.0j, 0.1j):
            m = membership(dom, z)
            if m is Membership.BOUNDARY:
                continue
            flipped = membership(comp, z)
            assert flipped is not m
            assert flipped in (Membership.INTERIOR, Membership.EXTERIOR)


def test_complement_of_quadrant_is_wide_sector():
    comp = complement(QUADRANT)
    assert isinstance(comp, Sector)
    assert abs(comp.opening - 1.5 * math.pi) < 1e-12


def test_boundary_param_lies_on_boundary():
    for dom in (HalfPlane(normal=1j), QUADRANT, DiskInterior(0.5j, 1.5)):
        for t in np.linspace(0.05, 0.95, 7):
            b = boundary_param(dom, float(t))
            if not isinstance(b.point, complex):
                continue
            assert membership(dom, b.point) is Membership.BOUNDARY


def test_unboundedness_flags():
    assert is_unbounded(HalfPlane(normal=1j))
    assert is_unbounded(QUADRANT)
    assert is_unbounded(DiskExterior(0.0, 1.0))
    assert not is_unbounded(DiskInterior(0.0, 1.0))


def test_quasidisk_flags():
    assert is_quasidisk(HalfPlane(normal=1j))
    assert is_quasidisk(QUADRANT)
    assert not is_quasidisk(CuspDomain(scale=1.0))


def test_quasidisk_constant_orders():
    # the half-plane is the round case; opening the angle away from pi makes
    # the three-point constant strictly worse; the cusp blows it up
    c_half = quasidisk_constant(HalfPlane(normal=1j))
    c_quad = quasidisk_constant(QUADRANT)
    c_cusp = quasidisk_constant(CuspDomain(scale=1.0))
    assert c_half <= c_quad < c_cusp
    assert c_cusp > 10.0 * c_quad


def test_domain_json_round_trip():
    for dom in (
        HalfPlane(normal=-1j),
        QUADRANT,
        DiskInterior(0.5 - 0.25j, 1.5),
        DiskExterior(-1.0 + 2.0j, 0.75),
        CuspDomain(scale=2.0),
    ):
        again = domain_from_json(domain_to_json(dom))
        assert again == dom


def test_sector_validation():
    with pytest.raises(ValueError):
        Sector(vertex=0.0, bisector=0.0, opening=0.0)
    with pytest.raises(ValueError):
        Sector(vertex=0.0, bisector=0.0, opening=2.0 * math.pi)
    with pytest.raises(ValueError):
        DiskInterior(0.0, -1.0)
