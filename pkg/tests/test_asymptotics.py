import math
from fractions import Fraction

import mpmath
import pytest

from kcolour.asymptotics import (
    ERROR_INTERVAL,
    DifferenceCertificate,
    Refusal,
    applicability,
    certify_positive_difference,
    in_error_interval,
    l_threshold,
    main_term_log,
    ratio_check,
)
from kcolour.core import partition_count_table


def oracle_log_main(alpha, n, ell):
    with mpmath.workdps(60):
        a = mpmath.mpf(alpha.numerator) / alpha.denominator if isinstance(alpha, Fraction) else mpmath.mpf(alpha)
        N = n - 1 - a / 24
        L = ell - a / 24
        term = (
            mpmath.pi
            * (a / 24) ** (a / 2 + 1)
            * (N * L) ** (-(a + 5) / 4)
            * (mpmath.sqrt(N) - mpmath.sqrt(L))
            * mpmath.exp(mpmath.pi * mpmath.sqrt(2 * a / 3) * (mpmath.sqrt(N) + mpmath.sqrt(L)))
        )
        return mpmath.log(term)


def test_applicability_examples():
    assert applicability(2, 5000, 4100)
    assert not applicability(3, 1000, 500)
    assert not applicability(2, 4101, 4100)
    assert applicability(2, 4102, 4100)


def test_applicability_edges():
    assert not applicability(2, 5000, 4096)  # L = 4096 - 1/12 < 4096
    assert applicability(2, 5000, 4097)
    assert not applicability(Fraction(3, 2), 10**9, 10**8)
    assert not applicability(2, 1, 5000)


def test_threshold_alpha_24_and_above():
    assert l_threshold(24) == 2 * 24**11
    assert l_threshold(10) == 2 * 10**11
    assert l_threshold(25) == 2 * 25**11
    assert l_threshold(Fraction(49, 2)) == 2 * Fraction(49, 2) ** 11


def test_main_term_against_oracle():
    for args in [(2, 4200, 4100), (2, 4102, 4100), (2, 10**6, 5000), (Fraction(5, 2), 90000, 80000), (3, 10**7, 400_000)]:
        got = main_term_log(*args)
        want = oracle_log_main(*args)
        assert abs(got - float(want)) <= 1e-9 * abs(float(want)), args
        hp = main_term_log(*args, dps=50)
        assert abs(hp - want) <= mpmath.mpf(10) ** -40 * abs(want)


def test_main_term_monotone_in_n():
    assert main_term_log(2, 4300, 4100) > main_term_log(2, 4200, 4100)
    assert oracle_log_main(2, 4300, 4100) > oracle_log_main(2, 4200, 4100)


def test_main_term_rejects_inapplicable():
    with pytest.raises(ValueError):
        main_term_log(3, 1000, 500)


def test_certify_difference():
    assert isinstance(certify_positive_difference(2, 5000, 4100), DifferenceCertificate)
    ref = certify_positive_difference(3, 1000, 500)
    assert isinstance(ref, Refusal) and not ref
    n = 2 * 4**11 + 2
    cert = certify_positive_difference(4, n + 1, n - 1)
    assert cert.estimate.error_factor_interval == (Fraction(1, 15), Fraction(29, 15))
    assert cert.estimate.N > cert.estimate.L > 0
    assert not certify_positive_difference(4, n, n - 2)


def test_error_interval():
    assert ERROR_INTERVAL == (1 - Fraction(14, 15), 1 + Fraction(14, 15))
    assert in_error_interval(1 / 15) and in_error_interval(29 / 15)
    assert not in_error_interval(2.0)


def test_ratio_k2_window():
    table = partition_count_table(2, 4200)
    for n in range(4102, 4151):
        r = ratio_check(2, n, 4100, table)
        assert 1 / 15 <= r <= 29 / 15
    r = ratio_check(2, 4200, 4100, table)
    assert in_error_interval(r)
    # independent route: exact big-integer difference over the oracle main term
    diff = table[4199] * table[4101] - table[4200] * table[4100]
    with mpmath.workdps(60):
        want = mpmath.mpf(diff) / mpmath.exp(oracle_log_main(2, 4200, 4100))
    assert abs(r - float(want)) < 1e-9


def test_ratio_rejects_short_table_and_fractional_k():
    with pytest.raises(IndexError):
        ratio_check(2, 4200, 4100, partition_count_table(2, 4150))
    with pytest.raises(ValueError):
        ratio_check(Fraction(5, 2), 4200, 4100)
