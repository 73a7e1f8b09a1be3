"""Generic-freeness certification for monomial representations.

Two routes: the span + faithful-kernel-action criterion for a bare weight
set, and the combination rule (faithful extra summand + torus-generically-
free weight set) for plans carrying a W or L factor.

For p-groups faithfulness is decided on the order-p central elements only:
every nontrivial normal subgroup meets the center, so the kernel of the
action on Ker(phi) is trivial iff no such central element acts trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .constructions import RepPlan, dual_basis_weights, permute_coefficients
from .lattice import WeightSet, kernel_generators_mod, spans
from .permgroup import (
    Perm,
    PermGroupSpec,
    act,
    center_order_p_elements,
    enumerate_elements,
    symmetric_group,
)

FULL_ENUMERATION_CAP = 10_000


class GenFreeError(ValueError):
    pass


@dataclass(frozen=True)
class GenFreeVerdict:
    spans_ok: bool
    kernel_faithful: Optional[bool]
    method: str
    overall: bool
    witnesses: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "spans_ok": self.spans_ok,
            "kernel_faithful": self.kernel_faithful,
            "method": self.method,
            "overall": self.overall,
            "witnesses": [
                {"element": elt, "kernel_vector": list(vec)} for elt, vec in self.witnesses
            ],
            "detail": self.detail,
        }


def _require_invariant(lam: WeightSet, group: PermGroupSpec) -> None:
    members = set(lam.elements)
    for g in group.generators:
        for w in lam.elements:
            if act(g, w) not in members:
                raise GenFreeError(
                    f"weight set is not invariant: generator {g.cycle_string()} "
                    f"moves {w.entries} outside the set")


def _test_elements(group: PermGroupSpec) -> Tuple[str, Tuple[Perm, ...]]:
    if group.is_p_group and group.structure is not None and group.structure.fixed_points == 0:
        return "center-reduction", center_order_p_elements(group)
    elements = enumerate_elements(group, FULL_ENUMERATION_CAP)
    return "full-enumeration", tuple(g for g in elements if not g.is_identity())


def kernel_action_faithful(
    lam: WeightSet, group: PermGroupSpec, method: Optional[str] = None
) -> Tuple[bool, str, Tuple[Tuple[str, Tuple[int, ...]], ...]]:
    """Decide whether the group acts faithfully on Ker(phi), returning one
    moved kernel generator per tested element as witness."""
    if method == "full-enumeration":
        elements = tuple(
            g for g in enumerate_elements(group, FULL_ENUMERATION_CAP) if not g.is_identity())
    elif method == "center-reduction":
        if not group.is_p_group:
            raise GenFreeError("center-reduction is only valid for p-groups")
        elements = center_order_p_elements(group)
    else:
        method, elements = _test_elements(group)
    gens = kernel_generators_mod(lam).basis
    witnesses = []
    faithful = True
    for g in elements:
        moved = None
        for vec in gens:
            if permute_coefficients(g, lam, vec) != vec:
                moved = vec
                break
        if moved is None:
            faithful = False
        else:
            witnesses.append((g.cycle_string(), moved))
    return faithful, method, tuple(witnesses)


def check_lemma34(lam: WeightSet, group: PermGroupSpec, method: Optional[str] = None) -> GenFreeVerdict:
    """Span + faithful kernel action; the weight set must be group-invariant."""
    _require_invariant(lam, group)
    spans_ok = spans(lam)
    faithful, used, witnesses = kernel_action_faithful(lam, group, method)
    return GenFreeVerdict(
        spans_ok=spans_ok,
        kernel_faithful=faithful,
        method=used,
        overall=spans_ok and faithful,
        witnesses=witnesses,
    )


def check_lemma32(plan: RepPlan, group: PermGroupSpec) -> GenFreeVerdict:
    """Combination rule for plans with an extra summand: the torus weights
    must span, and the extra summand must be a faithful representation of the
    finite part."""
    if not plan.extra_summands:
        raise GenFreeError("combination rule needs at least one extra summand")
    spans_ok = spans(plan.torus_weights)
    if plan.case_tag == "a":
        m = plan.extra_summands[0][0]
        if m == 0:
            extra_ok = True
            detail = "extra summand for a trivial group; faithful vacuously"
        else:
            sub = check_lemma34(dual_basis_weights(m, plan.p), symmetric_group(m, plan.p))
            extra_ok = sub.overall
            detail = (
                f"dual-basis weights over (Z/{plan.p})^{m} with S_{m}: "
                f"spans={sub.spans_ok}, kernel_faithful={sub.kernel_faithful}")
    elif plan.case_tag == "b":
        # an order-p character is injective on Z/p
        extra_ok = True
        detail = "order-p character is injective on the cyclic group Z/p"
    else:
        raise GenFreeError(f"no combination-rule recipe for case {plan.case_tag!r}")
    return GenFreeVerdict(
        spans_ok=spans_ok,
        kernel_faithful=extra_ok,
        method="combination-rule",
        overall=spans_ok and extra_ok,
        detail=detail,
    )
