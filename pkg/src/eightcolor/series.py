"""Truncated power series in one variable q.

A :class:`TruncSeries` holds the coefficients a_0..a_N of a power series
together with its truncation order N; nothing is known about q^(N+1) and
beyond.  Two coefficient rings are supported: exact Python integers and
integers modulo 2^64 (stored as numpy ``uint64``, which wraps exactly).

Every operation returns a new series whose order is the largest one for which
all coefficients are still correct.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Sequence

import numpy as np

WIDTH = 64
MODULUS = 1 << WIDTH
MASK = MODULUS - 1

# Below this fraction of nonzero coefficients a factor is treated as sparse.
_SPARSE_FRACTION = 0.25


class Ring(enum.Enum):
    EXACT = "exact"
    MOD64 = "mod64"

    @property
    def dtype(self):
        return object if self is Ring.EXACT else np.uint64

    def reduce(self, value: int):
        """Map a Python integer into this ring."""
        if self is Ring.EXACT:
            return int(value)
        return np.uint64(int(value) & MASK)


class SeriesError(ValueError):
    pass


class RingMismatchError(SeriesError):
    pass


class NonUnitError(SeriesError, ArithmeticError):
    pass


class InexactShiftError(SeriesError):
    pass


def _as_array(values, ring: Ring) -> np.ndarray:
    if ring is Ring.EXACT:
        arr = np.empty(len(values), dtype=object)
        arr[:] = [int(v) for v in values]
        return arr
    return np.array([int(v) & MASK for v in values], dtype=np.uint64)


class TruncSeries:
    """Power series a_0 + a_1 q + ... + a_N q^N + O(q^(N+1)).

    Instances are immutable; the coefficient array is marked read-only.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs: Sequence[int] | np.ndarray, ring: Ring = Ring.EXACT,
                 order: int | None = None):
        values = [int(c) for c in coeffs]
        if order is None:
            order = len(values) - 1
        if order < 0:
            raise SeriesError(f"order must be nonnegative, got {order}")
        values = values[: order + 1] + [0] * (order + 1 - len(values))
        arr = _as_array(values, ring)
        arr.flags.writeable = False
        self.ring = ring
        self.coeffs = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray, ring: Ring) -> "TruncSeries":
        # Trusted constructor for arrays already in the ring's representation.
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj.ring = ring
        obj.coeffs = arr
        return obj

    @classmethod
    def zeros(cls, order: int, ring: Ring = Ring.EXACT) -> "TruncSeries":
        arr = np.zeros(order + 1, dtype=ring.dtype)
        return cls._wrap(arr, ring)

    @classmethod
    def one(cls, order: int, ring: Ring = Ring.EXACT) -> "TruncSeries":
        return cls.monomial(1, 0, order, ring)

    @classmethod
    def monomial(cls, coeff: int, power: int, order: int,
                 ring: Ring = Ring.EXACT) -> "TruncSeries":
        """coeff * q^power, truncated at ``order``."""
        arr = cls.zeros(order, ring).coeffs.copy()
        if power <= order:
            arr[power] = ring.reduce(coeff)
        return cls._wrap(arr, ring)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} is outside the valid range 0..{self.order}")
        return int(self.coeffs[n])

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return TruncSeries._wrap(self.coeffs[: order + 1].copy(), self.ring)

    def to_ring(self, ring: Ring) -> "TruncSeries":
        if ring is self.ring:
            return self
        if ring is Ring.MOD64:
            return TruncSeries(self.tolist(), Ring.MOD64)
        raise SeriesError("cannot lift mod 2^64 coefficients to exact integers")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def nonzero_indices(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs != 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.ring is other.ring and self.order == other.order
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    def __repr__(self) -> str:
        terms = []
        for n, c in enumerate(self.tolist()[:8]):
            if c:
                terms.append(f"{c}*q^{n}" if n else str(c))
        body = " + ".join(terms) or "0"
        return f"TruncSeries({body} + O(q^{self.order + 1}), ring={self.ring.value})"

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return mul(self, other)
        if isinstance(other, (int, np.integer)):
            return scale(self, int(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return scale(self, int(other))
        return NotImplemented

    def __pow__(self, e: int):
        return power(self, e)


def _check_ring(a: TruncSeries, b: TruncSeries) -> Ring:
    if a.ring is not b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring.value} vs {b.ring.value}")
    return a.ring


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    ring = _check_ring(a, b)
    n = min(a.order, b.order)
    return TruncSeries._wrap(a.coeffs[: n + 1] + b.coeffs[: n + 1], ring)


def sub(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    ring = _check_ring(a, b)
    n = min(a.order, b.order)
    return TruncSeries._wrap(a.coeffs[: n + 1] - b.coeffs[: n + 1], ring)


def scale(a: TruncSeries, c: int) -> TruncSeries:
    return TruncSeries._wrap(a.coeffs * a.ring.reduce(c), a.ring)


def _convolve(x: np.ndarray, y: np.ndarray, n: int, ring: Ring) -> np.ndarray:
    """First n+1 coefficients of the Cauchy product of x and y (schoolbook)."""
    x = x[: n + 1]
    y = y[: n + 1]
    nz_x = np.flatnonzero(x != 0)
    nz_y = np.flatnonzero(y != 0)
    if len(nz_y) < len(nz_x):
        x, y, nz_x, nz_y = y, x, nz_y, nz_x
    if len(nz_x) <= _SPARSE_FRACTION * (n + 1):
        out = np.zeros(n + 1, dtype=ring.dtype)
        for i in nz_x:
            out[i:] += x[i] * y[: n + 1 - i]
        return out
    return np.convolve(x, y)[: n + 1]


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    ring = _check_ring(a, b)
    n = min(a.order, b.order)
    return TruncSeries._wrap(_convolve(a.coeffs, b.coeffs, n, ring), ring)


def _unit_inverse(c: int, ring: Ring) -> int:
    if ring is Ring.EXACT:
        if c not in (1, -1):
            raise NonUnitError(f"constant term {c} is not a unit in the integers")
        return c
    if c % 2 == 0:
        raise NonUnitError(f"constant term {c} is not a unit modulo 2^{WIDTH}")
    return pow(c, -1, MODULUS)


def invert(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse by the triangular recurrence.

    b_0 = 1/a_0 and b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}.
    """
    ring = a.ring
    N = a.order
    inv0 = _unit_inverse(int(a.coeffs[0]), ring)
    support = [int(k) for k in np.flatnonzero(a.coeffs != 0) if k > 0]

    if len(support) <= _SPARSE_FRACTION * (N + 1):
        terms = [(k, int(a.coeffs[k])) for k in support]
        b = [0] * (N + 1)
        b[0] = inv0 if ring is Ring.EXACT else inv0 & MASK
        for n in range(1, N + 1):
            acc = 0
            for k, ak in terms:
                if k > n:
                    break
                acc += ak * b[n - k]
            acc = -inv0 * acc
            b[n] = acc if ring is Ring.EXACT else acc & MASK
        return TruncSeries(b, ring)

    coeffs = a.coeffs
    b = np.zeros(N + 1, dtype=ring.dtype)
    b[0] = ring.reduce(inv0)
    rev = coeffs[::-1]
    for n in range(1, N + 1):
        # rev[N-n : N] holds a_n .. a_1
        acc = -inv0 * int(np.dot(rev[N - n: N], b[:n]))
        b[n] = ring.reduce(acc)
    return TruncSeries._wrap(b, ring)


def power(a: TruncSeries, e: int) -> TruncSeries:
    """a^e by binary exponentiation; negative e inverts first."""
    if e < 0:
        return power(invert(a), -e)
    result = TruncSeries.one(a.order, a.ring)
    base = a
    first = True
    while e:
        if e & 1:
            result = base if first else mul(result, base)
            first = False
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def substitute_power(a: TruncSeries, k: int, order: int | None = None) -> TruncSeries:
    """a(q^k).  The default order is the largest one a determines."""
    if k < 1:
        raise SeriesError(f"substitution power must be positive, got {k}")
    valid = k * (a.order + 1) - 1
    if order is None:
        order = valid
    elif order > valid:
        raise SeriesError(f"a(q^{k}) is only known to order {valid}, asked for {order}")
    out = np.zeros(order + 1, dtype=a.ring.dtype)
    m = order // k
    out[: k * m + 1: k] = a.coeffs[: m + 1]
    return TruncSeries._wrap(out, a.ring)


def shift(a: TruncSeries, s: int) -> TruncSeries:
    """Multiply by q^s.  For s < 0 the division by q^|s| must be exact."""
    if s >= 0:
        out = np.zeros(a.order + 1 + s, dtype=a.ring.dtype)
        out[s:] = a.coeffs
        return TruncSeries._wrap(out, a.ring)
    d = -s
    if d > a.order:
        raise InexactShiftError(f"cannot divide a series of order {a.order} by q^{d}")
    low = np.flatnonzero(a.coeffs[:d] != 0)
    if len(low):
        raise InexactShiftError(
            f"division by q^{d} is inexact: coefficient {int(low[0])} is nonzero")
    return TruncSeries._wrap(a.coeffs[d:].copy(), a.ring)


def huff_even(a: TruncSeries) -> TruncSeries:
    """Keep the even-exponent terms in place; zero the odd ones."""
    out = a.coeffs.copy()
    out[1::2] = a.ring.reduce(0)
    return TruncSeries._wrap(out, a.ring)


def extract_ap(a: TruncSeries, m: int, r: int) -> TruncSeries:
    """sum_n a_{mn+r} q^n."""
    if m < 1 or not 0 <= r < m:
        raise SeriesError(f"need m >= 1 and 0 <= r < m, got m={m}, r={r}")
    if r > a.order:
        raise SeriesError(f"residue {r} exceeds the order {a.order}")
    return TruncSeries._wrap(a.coeffs[r::m].copy(), a.ring)


class Divisibility(NamedTuple):
    ok: bool
    first_fail: int | None


def divisible_by_2pow(a: TruncSeries, e: int) -> Divisibility:
    """Whether 2^e divides every represented coefficient."""
    if e < 0:
        raise SeriesError(f"exponent must be nonnegative, got {e}")
    if a.ring is Ring.MOD64:
        if e > WIDTH:
            raise SeriesError(f"2^{e} is not decidable modulo 2^{WIDTH}")
        bad = np.flatnonzero(a.coeffs & np.uint64((1 << e) - 1))
    else:
        bad = np.flatnonzero(a.coeffs % (1 << e) != 0)
    if len(bad):
        return Divisibility(False, int(bad[0]))
    return Divisibility(True, None)


def first_difference(a: TruncSeries, b: TruncSeries) -> int | None:
    """Smallest index in the common range where a and b differ."""
    _check_ring(a, b)
    n = min(a.order, b.order)
    bad = np.flatnonzero(a.coeffs[: n + 1] != b.coeffs[: n + 1])
    return int(bad[0]) if len(bad) else None


def negate_q(a: TruncSeries) -> TruncSeries:
    """a(-q): flip the sign of every odd-index coefficient."""
    out = a.coeffs.copy()
    out[1::2] = -out[1::2]
    return TruncSeries._wrap(out, a.ring)
