import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcolour.core import (
    CacheFormatError,
    CountTable,
    convolve,
    format_cache,
    get_table,
    parse_cache,
    partition_count_table,
    read_cache,
    sigma_table,
    write_cache,
)
from oracles import coloured_partitions_brute, divisor_sum, eta_power_series


def test_sigma_examples():
    sig = sigma_table(10)
    assert sig[1] == 1
    assert sig[6] == 12
    assert sig[7] == 8


def test_sigma_matches_divisor_enumeration():
    sig = sigma_table(300)
    assert sig[1:] == [divisor_sum(n) for n in range(1, 301)]


def test_sigma_rejects_zero():
    with pytest.raises(ValueError):
        sigma_table(0)


def test_p1_small():
    assert partition_count_table(1, 6).values == (1, 1, 2, 3, 5, 7, 11)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_table_matches_enumeration(k):
    table = partition_count_table(k, 40)
    for n in range(table.n_max + 1):
        assert table[n] == coloured_partitions_brute(k, n), n


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 7])
def test_table_matches_power_series(k):
    assert list(partition_count_table(k, 120)) == eta_power_series(k, 120)


def test_table_invariants():
    assert partition_count_table(5, 2)[2] == 20
    for k in (1, 4, 9):
        assert partition_count_table(k, 0).values == (1,)
    for k in range(2, 9):
        t = partition_count_table(k, 60)
        assert all(t[n] > 0 for n in range(61))
        assert all(t[n + 1] > t[n] for n in range(1, 60))


def test_table_argument_errors():
    with pytest.raises(ValueError):
        partition_count_table(0, 5)
    with pytest.raises(ValueError):
        partition_count_table(2, -1)


def test_extend_and_prefix():
    t = partition_count_table(3, 20)
    longer = t.extend(50)
    assert longer.values[:21] == t.values
    assert longer == partition_count_table(3, 50)
    assert t.extend(10) is t
    assert longer.prefix(20) == t
    with pytest.raises(IndexError):
        t.prefix(21)


def test_get_table_grows():
    a = get_table(11, 10)
    b = get_table(11, 30)
    assert b.n_max >= 30 and b.values[:11] == a.values
    assert get_table(11, 5) is b


def test_convolve_examples():
    p1 = partition_count_table(1, 6)
    assert convolve(p1, p1) == [1, 2, 5, 10, 20, 36, 65]
    x = [3, 1, 4, 1, 5]
    assert convolve(x, [1, 0, 0, 0, 0, 0]) == x
    assert convolve([7], [6, 1]) == [42]
    with pytest.raises(ValueError):
        convolve([], [1])


@pytest.mark.parametrize("k1,k2", [(1, 1), (2, 5), (3, 8), (8, 8)])
def test_colour_additivity(k1, k2):
    a = partition_count_table(k1, 300)
    b = partition_count_table(k2, 300)
    assert convolve(a, b) == list(partition_count_table(k1 + k2, 300))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 200))
def test_closed_forms(k):
    t = get_table(k, 2)
    assert t[1] == k
    assert t[2] == k * (k + 3) // 2


def test_cache_format_bit_exact():
    text = format_cache(partition_count_table(1, 6))
    assert text == "PKCACHE 1 1 6\n1\n1\n2\n3\n5\n7\n11\n"


def test_cache_round_trip(tmp_path):
    for k in (1, 4, 10):
        t = partition_count_table(k, 1000)
        path = write_cache(t, tmp_path / f"p{k}.pkcache")
        assert read_cache(path) == t
    assert [p.name for p in tmp_path.iterdir() if p.suffix == ".tmp"] == []


@pytest.mark.parametrize(
    "text",
    [
        "PKCACHE 1 1 2\n1\n1\n",  # too few lines
        "PKCACHE 2 1 0\n1\n",  # version
        "PKCACHE 1 1 0\n1",  # no trailing newline
        "PKC 1 1 0\n1\n",
        "PKCACHE 1 1 1\n1\n 1\n",  # padding
        "PKCACHE 1 1 1\n1\n-1\n",
    ],
)
def test_cache_rejects_malformed(text):
    with pytest.raises(CacheFormatError):
        parse_cache(text)


def test_table_is_immutable():
    t = partition_count_table(2, 5)
    with pytest.raises(Exception):
        t.values = (1,)
    assert isinstance(t, CountTable)
