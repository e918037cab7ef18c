"""The integer tables m_{j,k} and x_{alpha,j} and their 2-adic valuations."""

from __future__ import annotations

import math
import threading

from .report import BOUND, Report


def v2(n: int) -> int | float:
    """Exponent of the largest power of 2 dividing n; math.inf for 0."""
    n = int(n)
    if n == 0:
        return math.inf
    return (n & -n).bit_length() - 1


class MTable:
    """m_{j,k}: rows built on demand from the two-step recurrence.

    m_{1,1} = 8, m_{2,1} = 1, m_{2,2} = 128, m_{j,1} = 0 for j >= 3 and
    m_{j,k} = 16 m_{j-1,k-1} + m_{j-2,k-1} otherwise.  Row j is stored for
    1 <= k <= j; every entry with k > j is zero.
    """

    def __init__(self):
        self._rows: list[list[int]] = [[], [8], [1, 128]]
        self._lock = threading.Lock()

    def _ensure(self, j: int) -> None:
        if j < len(self._rows):
            return
        with self._lock:
            rows = self._rows
            while len(rows) <= j:
                n = len(rows)
                prev, prev2 = rows[n - 1], rows[n - 2]
                row = [0]
                for k in range(2, n + 1):
                    a = prev[k - 2] if k - 1 <= n - 1 else 0
                    b = prev2[k - 2] if k - 1 <= n - 2 else 0
                    row.append(16 * a + b)
                rows.append(row)

    def __call__(self, j: int, k: int) -> int:
        if j < 1 or k < 1:
            raise ValueError(f"indices must be positive, got ({j}, {k})")
        if k > j:
            return 0
        self._ensure(j)
        return self._rows[j][k - 1]

    def row(self, j: int, width: int) -> list[int]:
        return [self(j, k) for k in range(1, width + 1)]


class XTable:
    """x_{alpha,j} built from row alpha-1 and the m table.

    x_{1,1} = 8 and, for alpha >= 1,
    x_{alpha+1,j} = sum_i x_{alpha,i} m_{3i,i+j}    (alpha odd)
    x_{alpha+1,j} = sum_i x_{alpha,i} m_{3i+1,i+j}  (alpha even).
    """

    def __init__(self, m: MTable | None = None):
        self.m = m if m is not None else MTable()
        self._rows: list[list[int]] = [[], [8]]
        self._lock = threading.Lock()

    @staticmethod
    def support(alpha: int) -> int:
        """Largest j with x_{alpha,j} possibly nonzero."""
        if alpha % 2:
            return (2 ** (alpha + 1) - 1) // 3
        return (2 ** (alpha + 1) - 2) // 3

    @staticmethod
    def summation_window(alpha: int, j: int) -> range:
        """Indices i that can contribute to x_{alpha+1,j}.

        m_{r,c} vanishes unless c <= r <= 2c.  With r = 3i (alpha odd) or
        3i+1 (alpha even) and c = i+j this leaves j/2 <= i <= 2j, resp.
        (j-1)/2 <= i <= 2j-1; the window below covers both and one more on
        each side.
        """
        return range(max(1, (j - 1) // 2 - 1), 2 * j + 2)

    def _ensure(self, alpha: int) -> None:
        if alpha < len(self._rows):
            return
        with self._lock:
            rows = self._rows
            while len(rows) <= alpha:
                prev_alpha = len(rows) - 1
                prev = rows[prev_alpha]
                offset = 0 if prev_alpha % 2 else 1
                row = []
                for j in range(1, self.support(prev_alpha + 1) + 1):
                    total = 0
                    for i in self.summation_window(prev_alpha, j):
                        if i > len(prev):
                            break
                        total += prev[i - 1] * self.m(3 * i + offset, i + j)
                    row.append(total)
                rows.append(row)

    def __call__(self, alpha: int, j: int) -> int:
        if alpha < 1 or j < 1:
            raise ValueError(f"indices must be positive, got ({alpha}, {j})")
        self._ensure(alpha)
        row = self._rows[alpha]
        return row[j - 1] if j <= len(row) else 0

    def row(self, alpha: int, width: int | None = None) -> list[int]:
        if width is None:
            width = self.support(alpha)
        return [self(alpha, j) for j in range(1, width + 1)]


M = MTable()
X = XTable(M)


def m_entry(j: int, k: int) -> int:
    return M(j, k)


def x_entry(alpha: int, j: int) -> int:
    return X(alpha, j)


def factor_two(n: int) -> tuple[int, int]:
    """(a, b) with n = 2^a * b and b odd; (0, 0) for n = 0."""
    if n == 0:
        return 0, 0
    a = v2(n)
    return a, n >> a


def format_factored(n: int) -> str:
    """n written as 2^a * b with b odd, dropping trivial parts."""
    if n == 0:
        return "0"
    sign = "-" if n < 0 else ""
    a, b = factor_two(abs(n))
    if a == 0:
        return f"{sign}{b}"
    if b == 1:
        return f"{sign}2^{a}"
    return f"{sign}2^{a} * {b}"


def check_lemma4(j_max: int, m: MTable = M) -> Report:
    """v2(m_{j,k}) >= 4(2k - j) - 1 whenever k <= j <= 2k, for j <= j_max."""
    checked = 0
    for j in range(1, j_max + 1):
        for k in range((j + 1) // 2, j + 1):
            value = m(j, k)
            bound = 4 * (2 * k - j) - 1
            checked += 1
            if v2(value) < bound:
                return Report("L4", j_max, BOUND, False, (j, k),
                              detail=f"v2(m[{j},{k}])={v2(value)} < {bound}")
    return Report("L4", j_max, BOUND, True, detail=f"{checked} entries")


def lemma5_bound(alpha: int, k: int) -> int:
    """Lower bound on v2(x_{alpha,k}); attained at k = 1."""
    if alpha % 2:
        j = (alpha + 1) // 2
        return 3 * j + 7 * (k - 1)
    j = alpha // 2
    return 3 * (j + 1) + 8 * (k - 1)


def check_lemma5(alpha_max: int, x: XTable = X) -> Report:
    """Valuation bounds for every nonzero x_{alpha,k}, with equality at k = 1."""
    checked = 0
    for alpha in range(1, alpha_max + 1):
        for k in range(1, x.support(alpha) + 1):
            value = x(alpha, k)
            bound = lemma5_bound(alpha, k)
            checked += 1
            got = v2(value)
            if got < bound or (k == 1 and got != bound):
                return Report("L5", alpha_max, BOUND, False, (alpha, k),
                              detail=f"v2(x[{alpha},{k}])={got}, bound {bound}")
    return Report("L5", alpha_max, BOUND, True, detail=f"{checked} entries")
