import math
import threading

import pytest

from eightcolor.tables import (
    MTable,
    XTable,
    check_lemma4,
    check_lemma5,
    factor_two,
    format_factored,
    lemma5_bound,
    m_entry,
    v2,
    x_entry,
)

from oracles import m_table_dense, x_table_full_sum

# The first eight rows of m as printed, each entry written as 2^a * b.
PRINTED_M = [
    [2**3, 0, 0, 0, 0, 0, 0, 0],
    [1, 2**7, 0, 0, 0, 0, 0, 0],
    [0, 2**3 * 3, 2**11, 0, 0, 0, 0, 0],
    [0, 1, 2**9, 2**15, 0, 0, 0, 0],
    [0, 0, 2**3 * 5, 2**11 * 5, 2**19, 0, 0, 0],
    [0, 0, 1, 2**7 * 3**2, 2**16 * 3, 2**23, 0, 0],
    [0, 0, 0, 2**3 * 7, 2**12 * 7, 2**19 * 7, 2**27, 0],
    [0, 0, 0, 1, 2**11, 2**17 * 5, 2**26, 2**31],
]

PRINTED_X = {
    1: [2**3],
    2: [2**6 * 3, 2**14],
    3: [2**6 * 3, 2**15 * 31, 2**21 * 227, 2**33 * 7, 2**41],
    4: [2**9 * 1993, 2**17 * 729187, 2**31 * 265617, 2**38 * 3070947],
}


def test_printed_m_matrix():
    for j, row in enumerate(PRINTED_M, 1):
        assert [m_entry(j, k) for k in range(1, 9)] == row


def test_m_examples():
    assert m_entry(3, 2) == 24 and m_entry(3, 3) == 2048
    assert m_entry(8, 4) == 1
    assert m_entry(5, 2) == 0


def test_m_against_dense_recurrence():
    dense = m_table_dense(40, 40)
    for j in range(1, 41):
        for k in range(1, 41):
            assert m_entry(j, k) == dense[j][k]


@pytest.mark.parametrize("j", range(1, 41))
def test_m_structure(j):
    for k in range(1, 45):
        value = m_entry(j, k)
        if k > j or j > 2 * k:
            assert value == 0
    assert m_entry(j, j) == 2 ** (4 * j - 1)
    assert m_entry(2 * j, j) == 1


def test_m_rejects_nonpositive():
    with pytest.raises(ValueError):
        m_entry(0, 1)


def test_printed_x_rows():
    for alpha, row in PRINTED_X.items():
        assert [x_entry(alpha, j) for j in range(1, len(row) + 1)] == row
    assert x_entry(3, 6) == 0


def test_x_window_matches_full_sum():
    full = x_table_full_sum(8)
    for alpha in range(1, 9):
        assert [0] + XTable().row(alpha) == full[alpha]


@pytest.mark.parametrize("alpha", range(1, 9))
def test_x_vanishing_and_corner(alpha):
    top = (2 ** (alpha + 1) - 1) // 3 if alpha % 2 else (2 ** (alpha + 1) - 2) // 3
    for j in range(top + 1, top + 6):
        assert x_entry(alpha, j) == 0
    assert x_entry(alpha, top) == 2 ** (8 * (2**alpha - 1) - 5 * alpha)


def test_x_matches_generating_function_coefficients():
    assert (x_entry(1, 1), x_entry(2, 1), x_entry(2, 2)) == (8, 192, 16384)


def test_v2():
    assert v2(192) == 6
    assert v2(0) == math.inf
    assert v2(-40) == 3
    assert v2(m_entry(3, 2)) == 4 * (2 * 2 - 3) - 1


def test_v2_multiplicative():
    for a in (1, 6, 40, -96, 3 * 2**70):
        for b in (5, 12, 2**33):
            assert v2(a * b) == v2(a) + v2(b)


def test_factored_form():
    assert factor_two(192) == (6, 3)
    assert format_factored(0) == "0"
    assert format_factored(1) == "1"
    assert format_factored(8) == "2^3"
    assert format_factored(24) == "2^3 * 3"
    assert format_factored(-24) == "-2^3 * 3"


def test_lemma4():
    assert check_lemma4(8).passed
    assert check_lemma4(24).passed
    for j in range(1, 25):
        assert v2(m_entry(j, j)) == 4 * (2 * j - j) - 1


def test_lemma5():
    assert v2(x_entry(1, 1)) == lemma5_bound(1, 1) == 3
    assert v2(x_entry(2, 1)) == lemma5_bound(2, 1) == 6
    report = check_lemma5(8)
    assert report.passed, report


def test_lemma5_detects_violation():
    class Broken(XTable):
        def __call__(self, alpha, j):
            return 3 if (alpha, j) == (3, 2) else super().__call__(alpha, j)
    report = check_lemma5(4, Broken())
    assert not report.passed and report.first_fail_index == (3, 2)


def test_concurrent_reads_match_sequential():
    expected = {(a, j): x_entry(a, j) for a in range(1, 8) for j in range(1, 20)}
    fresh = XTable(MTable())
    results = {}

    def work(offset):
        for a in range(1, 8):
            for j in range(1, 20):
                results[(a, j, offset)] = fresh(a, (j + offset) % 19 + 1)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for (a, j, offset), value in results.items():
        assert value == expected[(a, (j + offset) % 19 + 1)]
