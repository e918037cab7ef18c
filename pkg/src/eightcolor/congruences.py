"""Finite scans of the nine congruence families for p_8(n) modulo powers of 2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Mapping

import numpy as np

from .eta import p8_series
from .series import WIDTH, Ring, TruncSeries
from .tables import v2

# Largest p_8 argument a scan will compute before shrinking n_max.
DEFAULT_MAX_ORDER = 100_000
# Failing coefficients up to this argument get their valuation recomputed exactly.
EXACT_RECHECK_LIMIT = 4_000


class SeriesOrderError(ValueError):
    pass


def is_gen_pentagonal(n: int) -> bool:
    """n = k(3k-1)/2 for some integer k, i.e. 24n+1 is a square."""
    if n < 0:
        return False
    s = 24 * n + 1
    r = math.isqrt(s)
    return r * r == s


EXCEPTIONS: dict[str, Callable[[int], bool]] = {"gen_pentagonal": is_gen_pentagonal}


@dataclass(frozen=True)
class Family:
    id: str
    # step is 2^step_exp(alpha); residue is numerator(alpha) / 3
    step_exp: Callable[[int], int]
    numerator: Callable[[int], int]
    mod_exponent: Callable[[int], int]
    exception: str | None = None


FAMILIES: tuple[Family, ...] = (
    Family("E094", lambda a: 1, lambda a: 3, lambda a: 3),
    Family("E095", lambda a: 2 * a, lambda a: 2 ** (2 * a + 1) + 1, lambda a: 3 * a + 3),
    Family("E096", lambda a: 2 * a + 1, lambda a: 7 * 2 ** (2 * a - 1) + 1, lambda a: 3 * a + 2),
    Family("E097", lambda a: 2 * a + 1, lambda a: 5 * 2 ** (2 * a) + 1, lambda a: 3 * a + 8),
    Family("E098", lambda a: 2 * a + 2, lambda a: 13 * 2 ** (2 * a - 1) + 1, lambda a: 3 * a + 1),
    Family("E099", lambda a: 2 * a + 2, lambda a: 19 * 2 ** (2 * a - 1) + 1, lambda a: 3 * a + 3),
    Family("E100", lambda a: 2 * a + 2, lambda a: 11 * 2 ** (2 * a) + 1, lambda a: 3 * a + 10),
    Family("E101", lambda a: 2 * a + 3, lambda a: 17 * 2 ** (2 * a) + 1, lambda a: 3 * a + 9),
    Family("E102", lambda a: 2 * a + 2, lambda a: 2 ** (2 * a - 1) + 1, lambda a: 3 * a + 1,
           exception="gen_pentagonal"),
)
FAMILY_IDS = tuple(f.id for f in FAMILIES)


@dataclass(frozen=True)
class CongruenceClaim:
    """p_8(step*n + residue) == 0 (mod 2^mod_exponent) for all admissible n >= 0."""

    id: str
    alpha: int
    step: int
    residue: int
    mod_exponent: int
    exception: str | None = None

    def __post_init__(self):
        if not 0 <= self.residue < self.step:
            raise ValueError(f"{self.id}: residue {self.residue} not in [0, {self.step})")
        if self.exception is not None and self.exception not in EXCEPTIONS:
            raise ValueError(f"unknown exception predicate {self.exception!r}")

    def excluded(self, n: int) -> bool:
        return self.exception is not None and EXCEPTIONS[self.exception](n)

    def argument(self, n: int) -> int:
        return self.step * n + self.residue

    def __str__(self) -> str:
        text = f"p8({self.step}n + {self.residue}) == 0 mod 2^{self.mod_exponent}"
        if self.exception:
            text += f" unless {self.exception}(n)"
        return text


def make_claim(family: Family, alpha: int) -> CongruenceClaim:
    numerator = family.numerator(alpha)
    if numerator % 3:
        raise ArithmeticError(f"{family.id} at alpha={alpha}: {numerator} is not divisible by 3")
    return CongruenceClaim(family.id, alpha, 2 ** family.step_exp(alpha), numerator // 3,
                           family.mod_exponent(alpha), family.exception)


def claims_for(alpha: int) -> list[CongruenceClaim]:
    """All nine families at one alpha; the alpha-free family is tagged alpha=1."""
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return [make_claim(f, 1 if f.id == "E094" else alpha) for f in FAMILIES]


@dataclass(frozen=True)
class ScanResult:
    id: str
    alpha: int
    n_max: int
    verdict: str
    counterexample: dict[str, Any] | None = None
    skipped: tuple[int, ...] = ()
    # v2 of p8 at each skipped n, None where it is at least 64
    skipped_v2: tuple[int | None, ...] = ()
    notice: str | None = None
    mod_exponent: int | None = None

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError(f"verdict must be 'pass' or 'fail', got {self.verdict!r}")
        if self.verdict == "fail" and self.counterexample is None:
            raise ValueError("a failing scan must carry a counterexample")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "alpha": self.alpha, "n_max": self.n_max,
                               "verdict": self.verdict, "skipped": list(self.skipped)}
        if self.counterexample is not None:
            out["counterexample"] = dict(self.counterexample)
        if self.skipped_v2:
            out["skipped_v2"] = list(self.skipped_v2)
        if self.notice is not None:
            out["notice"] = self.notice
        if self.mod_exponent is not None:
            out["mod_exponent"] = self.mod_exponent
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScanResult":
        return cls(id=data["id"], alpha=data["alpha"], n_max=data["n_max"],
                   verdict=data["verdict"], counterexample=data.get("counterexample"),
                   skipped=tuple(data.get("skipped", ())),
                   skipped_v2=tuple(data.get("skipped_v2", ())),
                   notice=data.get("notice"), mod_exponent=data.get("mod_exponent"))

    def summary(self) -> str:
        line = (f"{self.verdict.upper()} {self.id} alpha={self.alpha} n<={self.n_max}"
                f" mod 2^{self.mod_exponent}")
        if self.counterexample:
            c = self.counterexample
            line += f" counterexample n={c['n']} p8({c['argument']}) v2={c['v2']}"
        if self.skipped:
            line += f" skipped={len(self.skipped)}"
        if self.notice:
            line += f" [{self.notice}]"
        return line


def _residue_v2(value: int) -> int | None:
    """v2 read off a stored coefficient; None for 0 (infinite, or >= 64 mod 2^64)."""
    return None if value == 0 else v2(value)


def _exact_v2(argument: int, fallback: int | None) -> int | None:
    if argument <= EXACT_RECHECK_LIMIT:
        return v2(p8_series(Ring.EXACT, argument)[argument])
    # A failing coefficient has v2 < mod_exponent <= 64, which the residue determines.
    return fallback


def scan_claim(claim: CongruenceClaim, n_max: int, ring: Ring = Ring.MOD64,
               p8: TruncSeries | None = None, use_exception: bool = True,
               max_order: int = DEFAULT_MAX_ORDER) -> ScanResult:
    """Check 2^e | p8(step*n + residue) for every n <= n_max not excluded."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    if ring is Ring.MOD64 and claim.mod_exponent > WIDTH:
        raise ValueError(f"2^{claim.mod_exponent} exceeds the 2^{WIDTH} ring")
    if claim.residue > max_order:
        raise SeriesOrderError(f"{claim.id}: argument {claim.residue} exceeds the maximum "
                               f"order {max_order}")

    notice = None
    effective = n_max
    if claim.argument(n_max) > max_order:
        effective = (max_order - claim.residue) // claim.step
        notice = (f"n_max reduced from {n_max} to {effective}: arguments beyond "
                  f"{max_order} were not computed")
    needed = claim.argument(effective)
    if p8 is None or p8.order < needed:
        p8 = p8_series(ring, needed)
    if p8.ring is not ring:
        raise ValueError("p8 series ring does not match the scan ring")

    values = p8.coeffs[claim.residue: needed + 1: claim.step]
    mask = (1 << claim.mod_exponent) - 1
    if ring is Ring.MOD64:
        bad = np.flatnonzero(values & np.uint64(mask))
    else:
        bad = np.flatnonzero(values % (1 << claim.mod_exponent) != 0)

    skipped: list[int] = []
    skipped_v2: list[int | None] = []
    counterexample = None
    if use_exception and claim.exception is not None:
        for n in range(effective + 1):
            if claim.excluded(n):
                skipped.append(n)
                skipped_v2.append(_residue_v2(int(values[n])))
    skip_set = set(skipped)
    for n in (int(i) for i in bad):
        if n in skip_set:
            continue
        argument = claim.argument(n)
        found = _exact_v2(argument, _residue_v2(int(values[n])))
        counterexample = {"n": n, "argument": argument, "v2": found}
        break

    return ScanResult(claim.id, claim.alpha, effective,
                      "fail" if counterexample else "pass", counterexample,
                      tuple(skipped), tuple(skipped_v2), notice, claim.mod_exponent)


def scan_all(alpha_max: int, n_max: int, ring: Ring = Ring.MOD64,
             use_exceptions: bool = True,
             max_order: int = DEFAULT_MAX_ORDER) -> list[ScanResult]:
    """Every family at every alpha <= alpha_max, sharing one p8 prefix.

    The alpha-free family E094 is scanned once.
    """
    if alpha_max < 1:
        raise ValueError(f"alpha_max must be positive, got {alpha_max}")
    claims: list[CongruenceClaim] = []
    for alpha in range(1, alpha_max + 1):
        claims += [c for c in claims_for(alpha) if not (c.id == "E094" and alpha > 1)]
    needed = min(max(c.argument(n_max) for c in claims), max_order)
    p8 = p8_series(ring, needed)
    results = [scan_claim(c, n_max, ring, p8, use_exceptions, max_order) for c in claims]
    return sorted(results, key=lambda r: (r.alpha, r.id))
