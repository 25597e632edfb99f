"""Closed-form section pairings against direct quadrature.

``pair_closed`` carries the analytic formulas (half-plane difference
quotients, disk images, two-ray sector splits); every branch gets checked
here against ``pair_quadrature`` on points chosen to hit it, including the
same-radius sector pair where the two-ray split nearly cancels.
"""
import math

import numpy as np
import pytest

from berglab.domains import DiskExterior, DiskInterior, HalfPlane, Sector
from berglab.exceptions import ConfigError
from berglab.pairings import (
    boundary_rule,
    gram_rational,
    pair_closed,
    pair_contour,
    pair_quadrature,
    ray_core_integral,
    ray_core_integral_numeric,
)
from berglab.quadrature import QuadConfig

UHP = HalfPlane(normal=1j)
QUADRANT = Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)
QC = QuadConfig(abs_tol=1e-11)


def test_halfplane_pair_closed_formula():
    # (r_p, r_q) = -pi / (p - conj q)^2 for double poles below the line
    p, q = -1.5j, 1.0 - 0.5j
    got = complex(pair_closed(UHP, p, q))
    want = -math.pi / (p - np.conj(q)) ** 2
    assert abs(got - want) < 1e-13


def test_halfplane_pair_vs_quadrature():
    pairs = [(-1j, -1j), (-2j, 3.0 - 0.25j), (5.0 - 1e-2j, 5.0 - 1e-2j)]
    for p, q in pairs:
        got = complex(pair_closed(UHP, p, q))
        ref = complex(pair_quadrature(UHP, p, q, QC))
        assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))


def test_quadrant_pair_vs_quadrature():
    pts = [
        0.9 * np.exp(1.25j * math.pi),
        1.3 * np.exp(0.75j * math.pi),
        0.9 * np.exp(1.75j * math.pi),  # same radius as the first: the
        # two-ray split runs into its cancellation-prone corner here
        0.4 * np.exp(1.1j * math.pi),
    ]
    for i, p in enumerate(pts):
        for q in pts[i:]:
            got = complex(pair_closed(QUADRANT, complex(p), complex(q)))
            ref = complex(pair_quadrature(QUADRANT, complex(p), complex(q), QC))
            assert abs(got - ref) <= 5e-8 * max(1.0, abs(ref))


def test_disk_exterior_pair_vs_quadrature():
    dom = DiskExterior(center=0.0, radius=1.0)
    for p, q in [(0.0, 0.0), (0.3 + 0.2j, -0.4j), (0.5, 0.5)]:
        got = complex(pair_closed(dom, p, q))
        ref = complex(pair_quadrature(dom, p, q, QC))
        assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))


def test_disk_interior_pair_vs_quadrature():
    dom = DiskInterior(center=0.0, radius=1.0)
    for p, q in [(1.5, 1.5), (2.0 + 0.5j, -1.8j)]:
        got = complex(pair_closed(dom, p, q))
        ref = complex(pair_quadrature(dom, p, q, QC))
        assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))


def test_pair_hermitian():
    p, q = 0.9 * np.exp(1.2j * math.pi), 1.1 * np.exp(1.6j * math.pi)
    a = complex(pair_closed(QUADRANT, complex(p), complex(q)))
    b = complex(pair_closed(QUADRANT, complex(q), complex(p)))
    assert abs(a - np.conj(b)) < 1e-12


def test_ray_core_closed_vs_numeric():
    # the one-dimensional kernel both ray formulas build on
    for a, b in [(1.0 + 0.3j, 0.5 - 0.2j), (2.0 - 1.0j, -0.3 + 0.8j)]:
        got = complex(ray_core_integral(a, b))
        ref = complex(ray_core_integral_numeric(a, b))
        assert abs(got - ref) < 1e-9


def test_gram_rational_is_hermitian_pd():
    poles = np.array(
        [0.8 * np.exp(1.1j * math.pi), 1.2 * np.exp(1.5j * math.pi), 0.6 * np.exp(1.9j * math.pi)]
    )
    G = gram_rational(QUADRANT, poles, QC)
    np.testing.assert_allclose(G, G.conj().T, atol=1e-12)
    eigs = np.linalg.eigvalsh(G)
    assert eigs[0] > 0.0


def test_boundary_rule_disk_matches_closed():
    dom = DiskInterior(center=0.0, radius=1.0)
    rule = boundary_rule(dom)
    p, q = 1.6, 2.0 - 0.8j
    got = complex(pair_contour(rule, p, q))
    want = complex(pair_closed(dom, p, q))
    assert abs(got - want) < 1e-8


def test_boundary_rule_refinement_improves():
    dom = DiskInterior(center=0.0, radius=1.0)
    p, q = 1.05, 1.1 + 0.05j  # poles close to the circle strain the rule
    want = complex(pair_quadrature(dom, p, q, QC))
    coarse = abs(complex(pair_contour(boundary_rule(dom, refinement=1), p, q)) - want)
    fine = abs(complex(pair_contour(boundary_rule(dom, refinement=4), p, q)) - want)
    assert fine <= coarse + 1e-12


def test_unbounded_boundaries_have_no_contour_rule():
    for dom in (QUADRANT, UHP):
        with pytest.raises(ConfigError):
            boundary_rule(dom)
