"""Closed-form essential dimension values for the torus-normalizer at p,
with case detection and witness-dimension cross-checks.

Valid over fields of characteristic != p containing a primitive p-th root of
unity; the reports carry that hypothesis as informational text.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import build_plan


FIELD_HYPOTHESIS = "char(k) != p and k contains a primitive p-th root of unity"


class EdError(ValueError):
    pass


@dataclass(frozen=True)
class EdReport:
    n: int
    p: int
    case_tag: str
    value: int
    p_power: int  # highest power of p dividing n
    witness_total_dimension: int
    consistency: bool
    field_hypothesis: str = FIELD_HYPOTHESIS

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "case": self.case_tag,
            "value": self.value,
            "p_power": self.p_power,
            "witness_total_dimension": self.witness_total_dimension,
            "consistency": self.consistency,
            "field_hypothesis": self.field_hypothesis,
        }


def detect_case(n: int, p: int) -> str:
    if n % p != 0:
        return "a"
    if n == p:
        return "b"
    m = n
    r = 0
    while m % p == 0:
        m //= p
        r += 1
    return "c" if m == 1 else "d"


def ed_value(n: int, p: int) -> EdReport:
    """Evaluate the closed-form value for (n, p) and cross-check it against
    the constructed witness dimension."""
    if n < 1:
        raise EdError("n must be positive")
    case = detect_case(n, p)
    pe = 1
    while n % (pe * p) == 0:
        pe *= p
    if case == "a":
        value = n // p
    elif case == "b":
        value = 2
    elif case == "c":
        value = n * n // p - n + 1
    else:
        value = pe * (n - pe) - n + 1
    plan = build_plan(case, n, p)
    witness_total = plan.total_dimension
    return EdReport(
        n=n,
        p=p,
        case_tag=case,
        value=value,
        p_power=pe,
        witness_total_dimension=witness_total,
        consistency=witness_total - (n - 1) == value,
    )


def pgl_upper_bound(p: int, r: int) -> int:
    """Upper bound p^(2r-1) - p^r + 1 for the projective linear group at p,
    valid only for r >= 2."""
    if r < 2:
        raise EdError("upper bound requires r >= 2 (the r = 1 value is at least 2)")
    return p ** (2 * r - 1) - p ** r + 1
