"""Euler products f_k, eta-quotient formulas and the 8-colour partition series."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from .series import (
    Ring,
    TruncSeries,
    add,
    extract_ap,
    huff_even,
    invert,
    mul,
    negate_q,
    power,
    scale,
    shift,
    substitute_power,
)


def pentagonal_exponents(N: int):
    """Yield (exponent, sign) for the terms of f_1 up to q^N, in increasing order."""
    yield 0, 1
    k = 1
    while True:
        lo = k * (3 * k - 1) // 2
        if lo > N:
            return
        sign = -1 if k % 2 else 1
        yield lo, sign
        hi = k * (3 * k + 1) // 2
        if hi <= N:
            yield hi, sign
        k += 1


def euler_f1(N: int, ring: Ring = Ring.EXACT) -> TruncSeries:
    """prod_{j>=1} (1 - q^j) to order N via the pentagonal number theorem."""
    if N < 0:
        raise ValueError(f"order must be nonnegative, got {N}")
    coeffs = [0] * (N + 1)
    for n, sign in pentagonal_exponents(N):
        coeffs[n] = sign
    return TruncSeries(coeffs, ring)


def euler_fk(k: int, N: int, ring: Ring = Ring.EXACT) -> TruncSeries:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return substitute_power(euler_f1(N // k, ring), k, N)


@lru_cache(maxsize=512)
def _eta_power(k: int, e: int, ring: Ring, N: int) -> TruncSeries:
    if e < 0:
        # 1/f_k is f_1^{-1} evaluated at q^k; invert at the smaller order.
        base = substitute_power(invert(euler_f1(N // k, ring)), k, N)
        return power(base, -e)
    return power(euler_fk(k, N, ring), e)


@dataclass(frozen=True)
class EtaTerm:
    """coeff * q^qshift * prod_k f_k^{e_k}."""

    coeff: int
    qshift: int = 0
    factors: tuple[tuple[int, int], ...] = ()

    def __init__(self, coeff: int, qshift: int = 0,
                 factors: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        merged: dict[int, int] = {}
        for k, e in items:
            k, e = int(k), int(e)
            if k < 1:
                raise ValueError(f"f_k needs positive k, got {k}")
            merged[k] = merged.get(k, 0) + e
        if qshift < 0:
            raise ValueError(f"q-shift must be nonnegative, got {qshift}")
        object.__setattr__(self, "coeff", int(coeff))
        object.__setattr__(self, "qshift", int(qshift))
        object.__setattr__(self, "factors",
                           tuple(sorted((k, e) for k, e in merged.items() if e)))

    def evaluate(self, ring: Ring, N: int) -> TruncSeries:
        if self.qshift > N or self.coeff == 0:
            return TruncSeries.zeros(N, ring)
        M = N - self.qshift
        prod = TruncSeries.one(M, ring)
        for k, e in self.factors:
            prod = mul(prod, _eta_power(k, e, ring, M))
        return shift(scale(prod, self.coeff), self.qshift)

    def to_dict(self) -> dict:
        return {"coeff": self.coeff, "qshift": self.qshift,
                "factors": {str(k): e for k, e in self.factors}}

    @classmethod
    def from_dict(cls, data: Mapping) -> "EtaTerm":
        return cls(data["coeff"], data.get("qshift", 0),
                   {int(k): int(e) for k, e in data.get("factors", {}).items()})

    def __str__(self) -> str:
        parts = [str(self.coeff)]
        if self.qshift:
            parts.append(f"q^{self.qshift}")
        parts += [f"f{k}^{e}" for k, e in self.factors]
        return "*".join(parts)


@dataclass(frozen=True)
class EtaFormula:
    """A formal sum of eta terms; the empty sum is zero."""

    terms: tuple[EtaTerm, ...] = ()

    def __init__(self, terms: Iterable[EtaTerm] = ()):
        object.__setattr__(self, "terms", tuple(terms))

    def __add__(self, other: "EtaFormula") -> "EtaFormula":
        return EtaFormula(self.terms + other.terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def to_list(self) -> list[dict]:
        return [t.to_dict() for t in self.terms]

    @classmethod
    def from_list(cls, data: Iterable[Mapping]) -> "EtaFormula":
        return cls(EtaTerm.from_dict(d) for d in data)

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms) or "0"


def eval_formula(F: EtaFormula, ring: Ring, N: int) -> TruncSeries:
    total = TruncSeries.zeros(N, ring)
    for term in F:
        total = add(total, term.evaluate(ring, N))
    return total


_p8_cache: dict[Ring, TruncSeries] = {}
_p8_lock = threading.Lock()


def p8_series(ring: Ring, N: int) -> TruncSeries:
    """sum_n p_8(n) q^n = 1/f_1^8, to order N.

    The longest series computed so far for each ring is kept and truncated on
    later requests.
    """
    with _p8_lock:
        cached = _p8_cache.get(ring)
        if cached is not None and cached.order >= N:
            return cached.truncate(N)
    result = power(invert(euler_f1(N, ring)), 8)
    with _p8_lock:
        cached = _p8_cache.get(ring)
        if cached is None or cached.order < N:
            _p8_cache[ring] = result
    return result


def p8_oracle(n_max: int) -> list[int]:
    """p_8(0..n_max) by counting coloured partitions directly.

    Each of the 8 colours of each part size j is an unbounded knapsack item.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    table = [1] + [0] * n_max
    for j in range(1, n_max + 1):
        for _colour in range(8):
            for n in range(j, n_max + 1):
                table[n] += table[n - j]
    return table


# Operators a registry entry may apply to its left-hand side before comparing.
def _apply_op(op: Mapping | None, s: TruncSeries) -> TruncSeries:
    if not op:
        return s
    name = op["op"]
    if name == "huff_even":
        return huff_even(s)
    if name == "negate_q":
        return negate_q(s)
    if name == "extract_ap":
        return extract_ap(s, int(op["m"]), int(op["r"]))
    raise ValueError(f"unknown operator {name!r}")


@dataclass(frozen=True)
class RegistryEntry:
    tag: str
    lhs: EtaFormula
    rhs: EtaFormula
    lhs_op: Mapping | None = field(default=None, hash=False, compare=False)
    description: str = ""

    def lhs_order_for(self, N: int) -> int:
        """Order at which the LHS formula must be evaluated so the result has order N."""
        if self.lhs_op and self.lhs_op["op"] == "extract_ap":
            return int(self.lhs_op["m"]) * N + int(self.lhs_op["r"])
        return N

    def evaluate(self, ring: Ring, N: int) -> tuple[TruncSeries, TruncSeries]:
        lhs = _apply_op(self.lhs_op, eval_formula(self.lhs, ring, self.lhs_order_for(N)))
        rhs = eval_formula(self.rhs, ring, N)
        return lhs, rhs

    def to_dict(self) -> dict:
        out = {"tag": self.tag, "description": self.description,
               "lhs": self.lhs.to_list(), "rhs": self.rhs.to_list()}
        if self.lhs_op:
            out["lhs_op"] = dict(self.lhs_op)
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "RegistryEntry":
        return cls(tag=data["tag"], lhs=EtaFormula.from_list(data["lhs"]),
                   rhs=EtaFormula.from_list(data["rhs"]),
                   lhs_op=data.get("lhs_op"), description=data.get("description", ""))


@lru_cache(maxsize=1)
def load_registry() -> dict[str, RegistryEntry]:
    """Displayed identities bundled with the package, keyed by tag."""
    text = resources.files("eightcolor").joinpath("data/identities.json").read_text()
    entries = [RegistryEntry.from_dict(d) for d in json.loads(text)["identities"]]
    registry = {}
    for entry in entries:
        if entry.tag in registry:
            raise ValueError(f"duplicate registry tag {entry.tag}")
        registry[entry.tag] = entry
    return registry
