"""Full acceptance battery: one test per numbered check, full budget.

Each test prints a single PASS/FAIL line with the measured value and its
tolerance so the run log doubles as the acceptance record.  The slow checks
(c07, c09..c12) assemble sector models or integrate over unbounded
complements; the whole battery is sized for minutes, not seconds.
"""
from berglab.reports import run_check


def _run(check_id: str) -> None:
    result = run_check(check_id, budget="full")
    status = "PASS" if result.passed else "FAIL"
    print(
        f"{result.check_id} {status} value={result.value:.6e} "
        f"tol={result.tol:.1e} -- {result.name}"
    )
    assert result.passed, f"{result.check_id}: {result.note}"


def test_c01_membership_integral():
    _run("c01")


def test_c02_halfplane_transform_value():
    _run("c02")


def test_c03_disk_mean_value():
    _run("c03")


def test_c04_norm_ratios():
    _run("c04")


def test_c05_transfer_isometry():
    _run("c05")


def test_c06_reflection_axioms():
    _run("c06")


def test_c07_norm_sandwich():
    _run("c07")


def test_c08_halfplane_b_matrix():
    _run("c08")


def test_c09_sector_b_convergence():
    _run("c09")


def test_c10_frame_identities():
    _run("c10")


def test_c11_reflection_principle():
    _run("c11")


def test_c12_cusp_conditioning():
    _run("c12")


def test_c13_gram_positivity():
    _run("c13")
