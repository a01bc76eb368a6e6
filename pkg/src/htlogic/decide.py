"""Decision procedure for validity and finite consequence.

Both notions reduce to the three-element algebra: a formula follows from
finitely many assumptions over all algebraic models, and equivalently
over all relational models, exactly when it does over the three-element
chain.  Refutations are therefore found by enumerating at most 3^n
assignments, and each one converts into a countermodel on the two-state
frame.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import (
    Assignment,
    DEFAULT_ASSIGNMENT_CAP,
    algebra_consequence,
    eval_formula,
    make_bt,
)
from .errors import StructureError
from .formula import Formula, render_formula, variables
from .frame import (
    HTModel,
    Verdict,
    enumerate_frames,
    frame_valid,
    make_k0,
    model_to_dict,
    model_truth,
)

# element of the three-chain -> states of the two-state frame
_LEVEL_STATES = {"bot": (), "mid": ("t2",), "top": ("t1", "t2")}


@dataclass
class DecisionResult:
    """Verdict of a decision query, with self-verified evidence: on
    refutation, the counter-assignment into the three-chain and the
    induced countermodel on the two-state frame."""

    assumptions: tuple[Formula, ...]
    conclusion: Formula
    holds: bool
    counter_assignment: Optional[Assignment] = None
    countermodel: Optional[HTModel] = None

    def __post_init__(self):
        self.assumptions = tuple(self.assumptions)
        if self.holds:
            if self.counter_assignment is not None or self.countermodel is not None:
                raise StructureError("positive verdict must not carry evidence")
            return
        if self.counter_assignment is None or self.countermodel is None:
            raise StructureError("refutation must carry evidence")
        bt = make_bt()
        v = self.counter_assignment
        for g in self.assumptions:
            if eval_formula(g, v, bt) != bt.top:
                raise StructureError("counter-assignment does not satisfy an assumption")
        if eval_formula(self.conclusion, v, bt) == bt.top:
            raise StructureError("counter-assignment does not refute the conclusion")
        for g in self.assumptions:
            if not model_truth(self.countermodel, g).holds:
                raise StructureError("countermodel does not satisfy an assumption")
        if model_truth(self.countermodel, self.conclusion).holds:
            raise StructureError("countermodel does not refute the conclusion")

    def to_dict(self) -> dict:
        return {
            "assumptions": [render_formula(g) for g in self.assumptions],
            "conclusion": render_formula(self.conclusion),
            "holds": self.holds,
            "counter_assignment": self.counter_assignment,
            "countermodel": (
                model_to_dict(self.countermodel) if self.countermodel is not None else None
            ),
        }


def countermodel_on_k0(alpha: Formula, v: Assignment) -> HTModel:
    """Convert a refuting assignment into a model on the two-state frame,
    sending bot to no states, mid to the upper state, top to both.  The
    resulting model is guaranteed not to make alpha true."""
    bt = make_bt()
    if eval_formula(alpha, v, bt) == bt.top:
        raise StructureError("assignment does not refute the formula")
    m = {}
    for var in variables(alpha):
        level = v.get(var)
        if level not in _LEVEL_STATES:
            raise StructureError(f"assignment sends {var!r} outside the three-chain")
        m[var] = _LEVEL_STATES[level]
    return HTModel(make_k0(), m)


def decide_consequence(
    gamma: Sequence[Formula],
    alpha: Formula,
    max_assignments: int = DEFAULT_ASSIGNMENT_CAP,
) -> DecisionResult:
    """Decide whether alpha follows from the finite set gamma in every
    model, algebraic or relational, by enumerating assignments into the
    three-chain."""
    gamma = tuple(gamma)
    verdict = algebra_consequence(gamma, alpha, make_bt(), max_assignments)
    if verdict.holds:
        return DecisionResult(gamma, alpha, True)
    v = verdict.witness["assignment"]
    # restrict the countermodel valuation to the variables that matter
    model = countermodel_on_k0(alpha, v)
    extra = sorted(set().union(*(variables(g) for g in gamma)) - set(variables(alpha))) if gamma else []
    if extra:
        m = {var: sorted(states) for var, states in model.m.items()}
        for var in extra:
            m[var] = list(_LEVEL_STATES[v[var]])
        model = HTModel(make_k0(), m)
    return DecisionResult(gamma, alpha, False, dict(v), model)


def decide_validity(
    alpha: Formula,
    max_assignments: int = DEFAULT_ASSIGNMENT_CAP,
) -> DecisionResult:
    """Decide validity: consequence from no assumptions."""
    return decide_consequence((), alpha, max_assignments)


@dataclass
class HarnessReport:
    """Cross-semantics audit: every formula decided over the three-chain
    is re-checked against every enumerated frame (when valid) or its own
    countermodel (when refuted).  Discrepancies indicate a bug, never a
    property of the logic."""

    entries: list[dict] = field(default_factory=list)
    discrepancies: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    @property
    def valid_count(self) -> int:
        return sum(1 for e in self.entries if e["valid"])

    def to_dict(self) -> dict:
        return {
            "formulas": len(self.entries),
            "valid": self.valid_count,
            "refuted": len(self.entries) - self.valid_count,
            "discrepancies": list(self.discrepancies),
            "entries": self.entries,
        }


def equivalence_harness(
    corpus: Sequence[Formula],
    max_frame_size: int = 2,
    mod_iso: bool = False,
    max_assignments: int = DEFAULT_ASSIGNMENT_CAP,
) -> HarnessReport:
    """Run the two semantics against each other over a formula corpus."""
    frames = list(enumerate_frames(max_frame_size, mod_iso=mod_iso))
    report = HarnessReport()
    for f in corpus:
        text = render_formula(f)
        result = decide_validity(f, max_assignments)
        entry = {"formula": text, "valid": result.holds}
        if result.holds:
            for i, k in enumerate(frames):
                fv: Verdict = frame_valid(k, f)
                if not fv.holds:
                    report.discrepancies.append(
                        f"{text}: decided valid but fails on frame #{i} at {fv.witness}"
                    )
            entry["frames_checked"] = len(frames)
        else:
            entry["counter_assignment"] = result.counter_assignment
            if model_truth(result.countermodel, f).holds:
                report.discrepancies.append(
                    f"{text}: decided refuted but countermodel satisfies it"
                )
        report.entries.append(entry)
    return report
