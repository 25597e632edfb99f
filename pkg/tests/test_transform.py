"""The complement-side transform: anchors, routes, and frame diagnostics.

The transform of a section is its pairing against the rational sections of
exterior points, conjugated.  The half-plane case has everything in closed
form, which pins down the quadrature route and the Gram of transformed
sections; the quadrant exercises the two-ray pairing underneath.
"""
import math

import numpy as np
import pytest

from berglab.domains import HalfPlane, Sector, complement
from berglab.exceptions import ConfigError, PointInsideDomainError
from berglab.functions import LinearCombination, RationalSection
from berglab.pairings import gram_rational, pair_closed
from berglab.quadrature import QuadConfig, inner_b2
from berglab.transform import (
    TransformConfig,
    hilbert_transform,
    holomorphy_residual,
    surjectivity_diagnostic,
    transform_factor,
    transform_gram,
    transform_norm_ratio,
)

UHP = HalfPlane(normal=1j)
QUADRANT = Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)


def test_halfplane_anchor_value():
    # the section with pole at -i, evaluated at -2i: the pairing difference
    # lands on (-3i)^2 = -9
    f = RationalSection(-1j)
    val = hilbert_transform(UHP, f, -2j)
    assert abs(val - math.pi / 9.0) < 1e-12


def test_transform_matches_inner_product_definition():
    f = RationalSection(-1j)
    xi = -0.7 - 1.3j
    val = hilbert_transform(UHP, f, xi)
    r_xi = RationalSection(xi)
    direct = np.conj(inner_b2(UHP, f, r_xi, QuadConfig(abs_tol=1e-10)).value)
    assert abs(val - direct) < 1e-8


def test_closed_vs_quadrature_route():
    f = RationalSection(-0.5 - 1j, coefficient=2.0 - 1.0j)
    xi = np.array([-2j, 1.0 - 1.5j, -3.0 - 0.2j])
    closed = hilbert_transform(UHP, f, xi, method="closed")
    quad = hilbert_transform(
        UHP, f, xi, config=TransformConfig(quad=QuadConfig(abs_tol=1e-9)),
        method="quadrature",
    )
    assert np.max(np.abs(closed - quad)) < 1e-7


def test_quadrant_closed_vs_quadrature():
    f = RationalSection(1.2 * np.exp(1.4j * math.pi))
    xi = 0.8 * np.exp(1.6j * math.pi)
    closed = hilbert_transform(QUADRANT, f, xi, method="closed")
    quad = hilbert_transform(
        QUADRANT, f, xi, config=TransformConfig(quad=QuadConfig(abs_tol=1e-9)),
        method="quadrature",
    )
    assert abs(closed - quad) < 1e-7


def test_conjugate_linearity():
    f = RationalSection(-1j)
    g = RationalSection(-2.0 - 0.5j)
    a, b = 1.5 - 2.0j, -0.3 + 0.8j
    combo = LinearCombination([a, b], [f, g])
    xi = -1.0 - 1.0j
    lhs = hilbert_transform(UHP, combo, xi)
    rhs = np.conj(a) * hilbert_transform(UHP, f, xi) + np.conj(b) * hilbert_transform(
        UHP, g, xi
    )
    assert abs(lhs - rhs) < 1e-12


def test_inside_point_rejected():
    with pytest.raises(PointInsideDomainError):
        hilbert_transform(UHP, RationalSection(-1j), 2j)
    with pytest.raises(PointInsideDomainError):
        hilbert_transform(UHP, RationalSection(-1j), 0.0)  # boundary counts too


def test_unknown_method_rejected():
    with pytest.raises(ConfigError):
        hilbert_transform(UHP, RationalSection(-1j), -2j, method="magic")


def test_normalization_factor():
    assert transform_factor(None) == 1.0
    assert transform_factor(TransformConfig()) == 1.0
    over_pi = TransformConfig(normalization="lebesgue-over-pi")
    assert abs(transform_factor(over_pi) - 1.0 / math.pi) < 1e-16
    with pytest.raises(ConfigError):
        TransformConfig(normalization="half-lebesgue")

    f = RationalSection(-1j)
    scaled = hilbert_transform(UHP, f, -2j, config=over_pi)
    assert abs(scaled - 1.0 / 9.0) < 1e-12


def test_norm_ratio_halfplane_unit():
    cfg = TransformConfig(normalization="lebesgue-over-pi", quad=QuadConfig(abs_tol=1e-10))
    ratio = transform_norm_ratio(UHP, RationalSection(-0.8j), cfg)
    assert abs(ratio - 1.0) < 1e-9


def test_norm_ratio_plain_lebesgue_is_pi():
    # without the 1/pi normalization the half-plane transform scales norms by pi
    ratio = transform_norm_ratio(UHP, RationalSection(-1.5 - 0.4j))
    assert abs(ratio - math.pi) < 1e-9


def test_transform_gram_halfplane_closed():
    # transformed sections are -pi r_conj(pole) on the lower half-plane, so
    # the matrix is pi^2 times the plain rational Gram of the mirrored poles;
    # gram_rational indexes (r_j, r_i) while transform_gram indexes
    # (T r_i, T r_j), hence the transpose
    poles = np.array([-1j, -0.5 - 1.5j, 1.0 - 0.8j])
    got = transform_gram(UHP, poles)
    lower = complement(UHP)
    want = math.pi**2 * gram_rational(lower, np.conj(poles)).T
    assert np.max(np.abs(got - want)) < 1e-10
    # Hermitian and positive
    assert np.max(np.abs(got - got.conj().T)) < 1e-12
    assert np.min(np.linalg.eigvalsh(0.5 * (got + got.conj().T))) > 0.0


def test_surjectivity_diagnostic_positive_spectrum():
    poles = np.array([-1j, -0.4 - 1.2j, 0.9 - 0.7j, -1.6 - 0.3j])
    diag = surjectivity_diagnostic(UHP, poles)
    assert diag.eigenvalues.shape == (4,)
    assert float(diag.eigenvalues[0]) > 0.0
    assert float(diag.eigenvalues[-1]) >= float(diag.eigenvalues[0])


def test_holomorphy_residual_small_on_halfplane():
    f = RationalSection(-1j)
    dbar, dz = holomorphy_residual(UHP, f, -0.3 - 1.1j)
    assert dbar < 1e-6
    assert dbar < 1e-4 * max(dz, 1.0)
