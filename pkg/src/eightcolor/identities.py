"""Finite-order verification of the series identities and congruence steps.

Every check evaluates both sides independently and compares them
coefficientwise, either exactly or modulo a power of two.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .eta import EtaFormula, EtaTerm, eval_formula, load_registry, p8_series
from .report import EXACT, Report, congruence_mode
from .series import (
    Ring,
    TruncSeries,
    add,
    divisible_by_2pow,
    extract_ap,
    first_difference,
    huff_even,
    mul,
    scale,
    shift,
    sub,
)
from .tables import M, MTable, X, XTable, check_lemma4, check_lemma5

# S = q f4^8/f1^8 and T = q^2 f4^24/f2^24
S_FORMULA = EtaFormula([EtaTerm(1, 1, {4: 8, 1: -8})])
T_FORMULA = EtaFormula([EtaTerm(1, 2, {4: 24, 2: -24})])
# q/S, a unit series
Q_OVER_S_FORMULA = EtaFormula([EtaTerm(1, 0, {1: 8, 4: -8})])


def compare(tag: str, lhs: TruncSeries, rhs: TruncSeries, e: int | None = None) -> Report:
    """Exact comparison (e is None) or congruence modulo 2^e."""
    order = min(lhs.order, rhs.order)
    if e is None:
        idx = first_difference(lhs, rhs)
        mode = EXACT
    else:
        idx = divisible_by_2pow(sub(lhs, rhs), e).first_fail
        mode = congruence_mode(e)
    if idx is None:
        return Report(tag, order, mode, True)
    return Report(tag, order, mode, False, idx, lhs[idx], rhs[idx])


def verify_registry(tag: str, N: int, ring: Ring = Ring.EXACT) -> Report:
    entry = load_registry()[tag]
    lhs, rhs = entry.evaluate(ring, N)
    return compare(tag, lhs, rhs)


def verify_lemma0(N: int) -> list[Report]:
    """The 2-dissections of f1^4 and 1/f1^4, the square of the first, and its q -> -q form."""
    return [verify_registry(tag, N) for tag in ("E6", "E7", "E1", "E11")]


def s_and_t(N: int, ring: Ring = Ring.EXACT) -> tuple[TruncSeries, TruncSeries]:
    return eval_formula(S_FORMULA, ring, N), eval_formula(T_FORMULA, ring, N)


def verify_lemma1(j_max: int, N: int) -> list[Report]:
    """S^j = T (S^(j-2) + 16 S^(j-1)) for j = 1..j_max.

    For j = 1 the identity S = T(1/S + 16) is multiplied by q, so that q/S
    appears as an ordinary (unit) series: q S = T (q/S + 16 q).
    """
    S, T = s_and_t(N)
    reports = []
    q_over_s = eval_formula(Q_OVER_S_FORMULA, Ring.EXACT, N)
    lhs = shift(S, 1).truncate(N)
    rhs = mul(T, add(q_over_s, TruncSeries.monomial(16, 1, N)))
    reports.append(compare("L1[j=1]", lhs, rhs))

    powers = [TruncSeries.one(N), S]
    for j in range(2, j_max + 1):
        powers.append(mul(powers[-1], S))
        rhs = mul(T, add(powers[j - 2], scale(powers[j - 1], 16)))
        reports.append(compare(f"L1[j={j}]", powers[j], rhs))
    return reports


def _h_tag(j: int) -> str:
    return {1: "E030", 2: "E031", 3: "E034"}.get(j, f"E039[j={j}]")


def verify_H_powers(j_max: int, N: int, m: MTable = M) -> list[Report]:
    """H(S^j) = sum_k m_{j,k} T^k, plus the seed H(1/S) = -8."""
    S, T = s_and_t(N)
    reports = []

    # 1/S = q^-1 (q/S); its even-exponent part comes from the odd coefficients of q/S.
    q_over_s = eval_formula(Q_OVER_S_FORMULA, Ring.EXACT, N)
    h_inv = extract_ap(q_over_s, 2, 1)
    reports.append(compare("H(1/S)", h_inv,
                           TruncSeries.monomial(-8, 0, h_inv.order)))

    t_powers = [TruncSeries.one(N)]
    for _ in range(j_max):
        t_powers.append(mul(t_powers[-1], T))
    s_power = TruncSeries.one(N)
    for j in range(1, j_max + 1):
        s_power = mul(s_power, S)
        rhs = TruncSeries.zeros(N)
        for k in range((j + 1) // 2, j + 1):
            rhs = add(rhs, scale(t_powers[k], m(j, k)))
        reports.append(compare(_h_tag(j), huff_even(s_power), rhs))
    return reports


def verify_theorem_L2(N: int) -> list[Report]:
    """sum p8(2n+1) q^n and sum p8(4n+3) q^n against their eta quotients."""
    p8 = p8_series(Ring.EXACT, 4 * N + 3)
    reports = []
    for tag, m, r in (("E020", 2, 1), ("E063", 4, 3)):
        lhs = extract_ap(p8, m, r).truncate(N)
        rhs = eval_formula(load_registry()[tag].rhs, Ring.EXACT, N)
        reports.append(compare(tag, lhs, rhs))
    return reports


def t1_progression(alpha: int, odd: bool) -> tuple[int, int]:
    """(step, residue) on the left of the generating-function formula.

    odd=True is the x_{2alpha-1} family, odd=False the x_{2alpha} family.
    """
    if odd:
        step = 2 ** (2 * alpha - 1)
        return step, (step + 1) // 3
    step = 2 ** (2 * alpha)
    return step, (2 * step + 1) // 3


def t1_formula(alpha: int, odd: bool, x: XTable = X) -> EtaFormula:
    """Right-hand side: (1/f_2^8 or 1/f_1^8) * sum_j x_j q^j (f_2/f_1)^(24 j)."""
    row = 2 * alpha - 1 if odd else 2 * alpha
    prefactor = {2: -8} if odd else {1: -8}
    terms = []
    for j in range(1, x.support(row) + 1):
        factors = {2: 24 * j, 1: -24 * j}
        for k, e in prefactor.items():
            factors[k] = factors.get(k, 0) + e
        terms.append(EtaTerm(x(row, j), j, factors))
    return EtaFormula(terms)


def verify_theorem_T1(alpha: int, N: int, ring: Ring = Ring.EXACT,
                      x: XTable = X) -> list[Report]:
    """Both generating-function formulas at one alpha, for n <= N.

    The left side carries q^(n+1): coefficient n+1 of the right side is the
    p8 value at argument step*n + residue, and coefficient 0 must vanish.
    """
    reports = []
    for odd, tag in ((True, "E004"), (False, "E005")):
        step, residue = t1_progression(alpha, odd)
        p8 = p8_series(ring, step * N + residue)
        lhs = shift(extract_ap(p8, step, residue), 1)
        rhs = eval_formula(t1_formula(alpha, odd, x), ring, N + 1)
        report = compare(f"{tag}[alpha={alpha}]", lhs, rhs)
        if report.passed and rhs[0] != 0:
            report = Report(report.tag, report.order, report.mode, False, 0, 0, rhs[0])
        reports.append(report)
    return reports


def verify_binomial_congruence(k_max: int, m_max: int, N: int,
                               ring: Ring = Ring.EXACT) -> list[Report]:
    """f_k^(2^m) == f_2k^(2^(m-1)) mod 2^m."""
    reports = []
    for k in range(1, k_max + 1):
        for m in range(1, m_max + 1):
            lhs = eval_formula(EtaFormula([EtaTerm(1, 0, {k: 2 ** m})]), ring, N)
            rhs = eval_formula(EtaFormula([EtaTerm(1, 0, {2 * k: 2 ** (m - 1)})]), ring, N)
            reports.append(compare(f"E103[k={k},m={m}]", lhs, rhs, m))
    return reports


def _table_divisibility(tag: str, row: int, bound: Callable[[int], int],
                        x: XTable) -> Report:
    support = x.support(row)
    for k in range(1, support + 1):
        e = bound(k)
        if x(row, k) % (1 << e):
            return Report(tag, support, congruence_mode(bound(1)), False, k,
                          detail=f"x[{row},{k}] not divisible by 2^{e}")
    return Report(tag, support, congruence_mode(bound(1)), True)


def _term(coeff: int, factors: dict[int, int], qshift: int = 0) -> EtaFormula:
    return EtaFormula([EtaTerm(coeff, qshift, factors)])


def proof_steps(alpha: int, x: XTable = X) -> list[tuple[str, int, int, EtaFormula, int]]:
    """(tag, step, residue, right side, modulus exponent) for each series congruence.

    Each says sum_n p8(step*n + residue) q^n == right side (mod 2^e).
    """
    a = alpha
    x_odd = x(2 * a - 1, 1)
    x_even = x(2 * a, 1)
    return [
        ("E004-mod", 2 ** (2 * a - 1), (2 ** (2 * a - 1) + 1) // 3,
         _term(x_odd, {2: 4}), 3 * a + 3),
        ("E13", 2 ** (2 * a), (2 ** (2 * a + 1) + 1) // 3, EtaFormula(), 3 * a + 3),
        ("E14", 2 ** (2 * a), (2 ** (2 * a - 1) + 1) // 3,
         _term(x_odd, {1: 4}), 3 * a + 3),
        ("E106a", 2 ** (2 * a + 1), (7 * 2 ** (2 * a - 1) + 1) // 3,
         _term(-4 * x_odd, {1: 2, 4: 4, 2: -2}), 3 * a + 3),
        ("E106b", 2 ** (2 * a + 1), (7 * 2 ** (2 * a - 1) + 1) // 3,
         _term(-4 * x_odd, {4: 4, 2: -1}), 3 * a + 3),
        ("E107a", 2 ** (2 * a + 1), (2 ** (2 * a - 1) + 1) // 3,
         _term(x_odd, {2: 10, 1: -2, 4: -4}), 3 * a + 1),
        ("E107b", 2 ** (2 * a + 1), (2 ** (2 * a - 1) + 1) // 3,
         _term(x_odd, {2: 1}), 3 * a + 1),
        ("E109", 2 ** (2 * a), (2 ** (2 * a + 1) + 1) // 3,
         _term(x_even, {2: 24, 1: -32}), 3 * a + 11),
        ("E110a", 2 ** (2 * a + 1), (5 * 2 ** (2 * a) + 1) // 3,
         _term(32 * x_even, {2: 100, 1: -84, 4: -24}), 3 * a + 10),
        ("E110b", 2 ** (2 * a + 1), (5 * 2 ** (2 * a) + 1) // 3,
         _term(32 * x_even, {2: 10}), 3 * a + 10),
        ("E111", 2 ** (2 * a + 1), (5 * 2 ** (2 * a) + 1) // 3,
         _term(32 * x_even, {4: 5}), 3 * a + 9),
    ]


def verify_proof_steps(alpha: int, N: int, ring: Ring = Ring.MOD64,
                       x: XTable = X) -> list[Report]:
    """Each congruence used to derive the nine families, at one alpha.

    Left sides come from extracting progressions of the p8 series; right
    sides are evaluated directly, with x-table values substituted.
    """
    suffix = f"[alpha={alpha}]"
    reports = [
        compare("E9", eval_formula(_term(1, {2: 16, 1: -24}), ring, N),
                eval_formula(_term(1, {2: 4}), ring, N), 3),
        _table_divisibility("E10" + suffix, 2 * alpha - 1,
                            lambda k: 3 * alpha + 7 * (k - 1), x),
        _table_divisibility("E15" + suffix, 2 * alpha,
                            lambda k: 3 * alpha + 3 + 8 * (k - 1), x),
    ]
    steps = proof_steps(alpha, x)
    p8 = p8_series(ring, max(step * N + residue for _, step, residue, _, _ in steps))
    for tag, step, residue, rhs_formula, e in steps:
        lhs = extract_ap(p8, step, residue).truncate(N)
        rhs = eval_formula(rhs_formula, ring, N)
        reports.append(compare(tag + suffix, lhs, rhs, e))
    return reports


REGISTRY_TAGS = tuple(load_registry())

# Composite tags understood by run_checks, besides the registry tags.
COMPOSITE_TAGS = ("L0", "L1", "L3", "H(1/S)", "E039", "L2", "E004", "E005", "T1",
                  "E103", "E9", "E10", "E13", "E14", "E15", "E106", "E107", "E109",
                  "E110", "E111", "PROOF", "L4", "L5")


def known_tags() -> tuple[str, ...]:
    return REGISTRY_TAGS + COMPOSITE_TAGS


def run_checks(tags: Iterable[str], N: int, alpha: int = 1, j_max: int = 12,
               alpha_max: int = 8, ring: Ring = Ring.EXACT) -> list[Report]:
    """Dispatch tag names to checks.  ``all`` runs everything."""
    tags = list(tags)
    if "all" in tags:
        tags = list(REGISTRY_TAGS) + ["L1", "L3", "T1", "E103", "PROOF", "L4", "L5"]
    unknown = [t for t in tags if t not in known_tags()]
    if unknown:
        raise KeyError(f"unknown tag(s): {', '.join(unknown)}")

    proof_cache: dict[int, list[Report]] = {}

    def proof(a: int) -> list[Report]:
        if a not in proof_cache:
            proof_cache[a] = verify_proof_steps(a, N, Ring.MOD64 if ring is Ring.MOD64
                                                else Ring.EXACT)
        return proof_cache[a]

    out: list[Report] = []
    for tag in tags:
        if tag in REGISTRY_TAGS:
            out.append(verify_registry(tag, N))
        elif tag == "L0":
            out += verify_lemma0(N)
        elif tag == "L1":
            out += verify_lemma1(j_max, N)
        elif tag in ("L3", "E039", "H(1/S)"):
            out += verify_H_powers(j_max, N)
        elif tag == "L2":
            out += verify_theorem_L2(N)
        elif tag in ("E004", "E005", "T1"):
            reports = verify_theorem_T1(alpha, N, ring)
            out += [r for r in reports if tag == "T1" or r.tag.startswith(tag)]
        elif tag == "E103":
            out += verify_binomial_congruence(2, 6, N, ring)
        elif tag == "PROOF":
            out += proof(alpha)
        elif tag == "L4":
            out.append(check_lemma4(24))
        elif tag == "L5":
            out.append(check_lemma5(alpha_max))
        else:
            out += [r for r in proof(alpha) if r.tag.split("[")[0].rstrip("ab") == tag]
    return out
