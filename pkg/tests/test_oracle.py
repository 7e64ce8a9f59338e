from fractions import Fraction

import pytest

from dstsim.errors import CapacityError
from dstsim.oracle import Pmf, check_tc_exact, exact_height_cdf, exact_xi_pmf


def test_pmf_validation():
    p = Pmf({3: Fraction(1, 2), 4: Fraction(1, 2)})
    assert p.support == [3, 4]
    assert p.mean() == Fraction(7, 2)
    assert p.cdf_at(2) == 0
    assert p.cdf_at(3) == Fraction(1, 2)
    assert p.cdf_at(100) == 1
    with pytest.raises(ValueError):
        Pmf({0: Fraction(1, 2)})
    with pytest.raises(ValueError):
        Pmf({0: Fraction(3, 2), 1: Fraction(-1, 2)})


def test_pmf_drops_zero_mass():
    p = Pmf({1: Fraction(1), 2: Fraction(0)})
    assert p.support == [1]


def test_height_cdf_k0_is_all_ones():
    assert exact_height_cdf(0, 5) == [Fraction(1)] * 6


def test_height_cdf_k1():
    # any single insertion creates height 1
    assert exact_height_cdf(1, 3) == [0, 1, 1, 1]


def test_height_cdf_k2():
    # second insertion always lands at depth 1
    assert exact_height_cdf(2, 4, b=2) == [0, 0, 1, 1, 1]


def test_height_cdf_k3_binary():
    got = exact_height_cdf(3, 5, b=2)
    assert got == [0, 0, 0, Fraction(1, 2), 1, 1]


def test_height_cdf_monotone_in_n():
    for b in (2, 3):
        cdf = exact_height_cdf(4, 20, b=b)
        assert all(a <= c for a, c in zip(cdf, cdf[1:]))
        assert cdf[0] == 0
        assert 0 < cdf[20] <= 1


def test_height_cdf_budget():
    with pytest.raises(CapacityError):
        exact_height_cdf(7, 10)
    with pytest.raises(CapacityError):
        exact_height_cdf(3, 65)
    with pytest.raises(ValueError):
        exact_height_cdf(-1, 5)


def test_xi_pmf_k1_and_k2():
    assert dict(exact_xi_pmf(1, 2)) == {1: Fraction(1)}
    assert dict(exact_xi_pmf(2, 2)) == {2: Fraction(1)}
    assert dict(exact_xi_pmf(1, 3)) == {1: Fraction(1)}
    assert dict(exact_xi_pmf(2, 3)) == {2: Fraction(1)}


def test_xi_pmf_k3_binary():
    assert dict(exact_xi_pmf(3, 2)) == {3: Fraction(1, 2), 4: Fraction(1, 2)}


def test_xi_pmf_support_starts_at_k():
    for K, b in [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3)]:
        pmf = exact_xi_pmf(K, b)
        assert min(pmf.support) == K
        assert sum(pmf.values()) == 1


def test_xi_pmf_k4_binary_properties():
    pmf = exact_xi_pmf(4, 2)
    # at most one node can freeze per particle, seven above the start boundary
    assert max(pmf.support) <= 8
    assert pmf.mean() > 4


def test_xi_pmf_budget():
    with pytest.raises(CapacityError):
        exact_xi_pmf(5, 2)
    with pytest.raises(CapacityError):
        exact_xi_pmf(4, 3)
    with pytest.raises(ValueError):
        exact_xi_pmf(0, 2)


@pytest.mark.parametrize("K,b", [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_duality_exact(K, b):
    report = check_tc_exact(K, b)
    assert report.equal, report.render()


def test_duality_report_renders():
    report = check_tc_exact(3, 2)
    text = report.render()
    assert "EQUAL" in text
    assert "1/2" in text
