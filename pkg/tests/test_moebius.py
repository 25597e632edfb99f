"""Fractional-linear map algebra and norm transport through derivatives.

The Cayley-type map between the unit disk and the upper half-plane carries
sections back and forth; weighting by the derivative keeps their norms
equal, which is checked here by quadrature on both sides.
"""
import math

import numpy as np
import pytest

from berglab.domains import DiskInterior, HalfPlane
from berglab.exceptions import MoebiusPoleError
from berglab.functions import MoebiusTransfer
from berglab.moebius import (
    AT_INFINITY,
    IDENTITY_MAP,
    INVERSION_MAP,
    MoebiusMap,
    evaluate_extended,
)
from berglab.quadrature import QuadConfig, norm_b2

# disk -> upper half-plane: z -> i (1 + z) / (1 - z)
CAYLEY = MoebiusMap(1j, 1j, -1.0, 1.0)


def test_identity_and_inversion():
    assert IDENTITY_MAP(0.3 + 0.4j) == 0.3 + 0.4j
    assert INVERSION_MAP(2.0) == 0.5
    assert abs(INVERSION_MAP(1j) - (-1j)) < 1e-16


def test_degenerate_map_rejected():
    with pytest.raises(ValueError):
        MoebiusMap(1.0, 2.0, 2.0, 4.0)  # ad - bc = 0
    with pytest.raises(ValueError):
        MoebiusMap(0.0, 0.0, 0.0, 0.0)


def test_inverse_round_trip():
    m = MoebiusMap(2.0 + 1j, -0.5, 0.3j, 1.0)
    inv = m.inverse()
    zs = np.array([0.2 + 0.1j, -1.5 + 2.0j, 3.0 - 0.4j])
    assert np.max(np.abs(inv(m(zs)) - zs)) < 1e-12
    assert np.max(np.abs(m(inv(zs)) - zs)) < 1e-12


def test_derivative_matches_finite_difference():
    m = CAYLEY
    z = 0.25 - 0.35j
    h = 1e-6
    fd = (m(z + h) - m(z - h)) / (2.0 * h)
    assert abs(m.derivative(z) - fd) < 1e-8


def test_pole_detection():
    m = CAYLEY  # pole at z = 1
    assert m.pole() == 1.0
    with pytest.raises(MoebiusPoleError):
        m(1.0)
    with pytest.raises(MoebiusPoleError):
        m.derivative(1.0)
    assert IDENTITY_MAP.pole() is AT_INFINITY


def test_extended_evaluation_never_raises():
    m = CAYLEY
    assert evaluate_extended(m, 1.0) is AT_INFINITY
    # infinity -> a/c = i/(-1) = -i
    assert abs(evaluate_extended(m, AT_INFINITY) - (-1j)) < 1e-16
    assert evaluate_extended(IDENTITY_MAP, AT_INFINITY) is AT_INFINITY
    assert abs(evaluate_extended(m, 0.0) - 1j) < 1e-16


def test_cayley_maps_disk_to_upper_halfplane():
    theta = np.linspace(0.1, 2.0 * np.pi - 0.1, 17)
    inside = 0.7 * np.exp(1j * theta)
    assert np.all(np.imag(CAYLEY(inside)) > 0.0)
    boundary = np.exp(1j * theta)
    assert np.max(np.abs(np.imag(CAYLEY(boundary)))) < 1e-12


def test_transfer_preserves_norms():
    # pull a section on the half-plane back to the disk with the derivative
    # weight; both norms are computed by quadrature on their own domains
    disk = DiskInterior(0.0, 1.0)
    hp = HalfPlane(normal=1j)
    f = lambda z: (z + 2j) ** -2.0  # pole outside the closed upper half-plane
    pulled = MoebiusTransfer(CAYLEY, f)
    qc = QuadConfig(abs_tol=1e-10)
    n_disk = norm_b2(disk, pulled, qc).value
    n_hp = norm_b2(hp, f, qc).value
    assert abs(n_disk - n_hp) < 1e-7
    assert n_hp > 0.1  # the comparison is not vacuous
