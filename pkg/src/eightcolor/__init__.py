"""Exact q-series arithmetic and finite verification of 2-adic congruences for
8-colour partitions p_8(n), whose generating function is 1/f_1^8."""

from .congruences import (
    CongruenceClaim,
    ScanResult,
    claims_for,
    is_gen_pentagonal,
    scan_all,
    scan_claim,
)
from .eta import (
    EtaFormula,
    EtaTerm,
    euler_f1,
    euler_fk,
    eval_formula,
    load_registry,
    p8_oracle,
    p8_series,
)
from .report import Report
from .series import (
    Ring,
    TruncSeries,
    add,
    divisible_by_2pow,
    extract_ap,
    huff_even,
    invert,
    mul,
    power,
    shift,
    substitute_power,
)
from .tables import MTable, XTable, check_lemma4, check_lemma5, m_entry, v2, x_entry

__version__ = "0.1.0"

__all__ = [
    "CongruenceClaim",
    "ScanResult",
    "claims_for",
    "is_gen_pentagonal",
    "scan_all",
    "scan_claim",
    "EtaFormula",
    "EtaTerm",
    "euler_f1",
    "euler_fk",
    "eval_formula",
    "load_registry",
    "p8_oracle",
    "p8_series",
    "Report",
    "Ring",
    "TruncSeries",
    "add",
    "divisible_by_2pow",
    "extract_ap",
    "huff_even",
    "invert",
    "mul",
    "power",
    "shift",
    "substitute_power",
    "MTable",
    "XTable",
    "check_lemma4",
    "check_lemma5",
    "m_entry",
    "v2",
    "x_entry",
]
