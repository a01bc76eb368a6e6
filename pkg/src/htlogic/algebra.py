"""Finite distributive lattices with two-agent perception operators.

A FiniteAlgebra is a bounded distributive lattice (validated exhaustively
at construction) carrying unary tables s1, s2 and optionally c, plus
optionally a Heyting implication table imp and negation neg.  The axiom
checkers report every violation with a witness tuple instead of stopping
at the first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ResourceError, StructureError
from .formula import And, Formula, Implies, Not, Or, S1, S2, Var, variables

# var name -> element name
Assignment = dict[str, str]

# |carrier| ** |variables| bound for consequence enumeration
DEFAULT_ASSIGNMENT_CAP = 3 ** 12


@dataclass
class AxiomReport:
    """Outcome of an exhaustive axiom check: (label, witness) pairs for
    every falsified instance, plus check-specific extras in details."""

    violations: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, label: str, *witness: str) -> None:
        self.violations.append((label, witness))

    def labels(self) -> set[str]:
        return {label for label, _ in self.violations}

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [
                {"axiom": label, "witness": list(witness)}
                for label, witness in self.violations
            ],
            "details": self.details,
        }


@dataclass
class Verdict:
    """Result of a quantified query: holds, or refuted with a witness."""

    holds: bool
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"holds": self.holds, "witness": self.witness}


class FiniteAlgebra:
    """Bounded distributive lattice with operator tables s1, s2 and
    optional c, imp, neg.

    The order is the primitive datum; meet and join are computed from it
    and cached.  Construction fails with StructureError unless the order
    is a partial order with all binary meets and joins, bot/top are the
    extremes, and distributivity holds.  Reflexive pairs in `le` are
    implied; transitivity and antisymmetry are not.
    """

    def __init__(
        self,
        elements: Sequence[str],
        le: Iterable[tuple[str, str]],
        bot: str,
        top: str,
        s1: Mapping[str, str],
        s2: Mapping[str, str],
        c: Optional[Mapping[str, str]] = None,
        imp: Optional[Mapping[str, Mapping[str, str]]] = None,
        neg: Optional[Mapping[str, str]] = None,
    ):
        self.elements = tuple(elements)
        if not self.elements:
            raise StructureError("carrier must be nonempty")
        if len(set(self.elements)) != len(self.elements):
            raise StructureError("duplicate element names")
        universe = set(self.elements)
        pairs = set()
        for pair in le:
            x, y = pair
            if x not in universe or y not in universe:
                raise StructureError(f"le mentions unknown element in {pair!r}")
            pairs.add((x, y))
        pairs.update((x, x) for x in self.elements)
        self._le = frozenset(pairs)
        self.bot = bot
        self.top = top
        self.s1 = self._unary_table(s1, "s1")
        self.s2 = self._unary_table(s2, "s2")
        self.c = self._unary_table(c, "c") if c is not None else None
        self.neg = self._unary_table(neg, "neg") if neg is not None else None
        self.imp = self._binary_table(imp) if imp is not None else None
        self._validate_order()
        self._meet: dict[tuple[str, str], str] = {}
        self._join: dict[tuple[str, str], str] = {}
        self._build_lattice_tables()
        self._validate_distributivity()

    # -- construction helpers --

    def _unary_table(self, table: Mapping[str, str], name: str) -> dict[str, str]:
        out = dict(table)
        universe = set(self.elements)
        if set(out) != universe or not set(out.values()) <= universe:
            raise StructureError(f"table {name} is not total on the carrier")
        return out

    def _binary_table(self, table: Mapping[str, Mapping[str, str]]) -> dict[str, dict[str, str]]:
        universe = set(self.elements)
        if set(table) != universe:
            raise StructureError("table imp is not total on the carrier")
        out = {}
        for x, row in table.items():
            row = dict(row)
            if set(row) != universe or not set(row.values()) <= universe:
                raise StructureError("table imp is not total on the carrier")
            out[x] = row
        return out

    def _validate_order(self) -> None:
        if self.bot not in self.elements or self.top not in self.elements:
            raise StructureError("bot/top must be carrier elements")
        for x, y in itertools.product(self.elements, repeat=2):
            if (x, y) in self._le and (y, x) in self._le and x != y:
                raise StructureError(f"order not antisymmetric: {x}, {y}")
        for x, y, z in itertools.product(self.elements, repeat=3):
            if (x, y) in self._le and (y, z) in self._le and (x, z) not in self._le:
                raise StructureError(f"order not transitive: {x} <= {y} <= {z}")
        for x in self.elements:
            if (self.bot, x) not in self._le:
                raise StructureError(f"bot is not below {x}")
            if (x, self.top) not in self._le:
                raise StructureError(f"top is not above {x}")

    def _build_lattice_tables(self) -> None:
        for x, y in itertools.product(self.elements, repeat=2):
            self._meet[(x, y)] = self._bound(x, y, lower=True)
            self._join[(x, y)] = self._bound(x, y, lower=False)

    def _bound(self, x: str, y: str, lower: bool) -> str:
        if lower:
            cands = [z for z in self.elements if self.le(z, x) and self.le(z, y)]
            best = [z for z in cands if all(self.le(w, z) for w in cands)]
        else:
            cands = [z for z in self.elements if self.le(x, z) and self.le(y, z)]
            best = [z for z in cands if all(self.le(z, w) for w in cands)]
        if len(best) != 1:
            kind = "meet" if lower else "join"
            raise StructureError(f"{kind} of {x}, {y} does not exist")
        return best[0]

    def _validate_distributivity(self) -> None:
        for x, y, z in itertools.product(self.elements, repeat=3):
            if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)):
                raise StructureError(f"lattice not distributive at ({x}, {y}, {z})")

    # -- lattice API --

    def le(self, x: str, y: str) -> bool:
        return (x, y) in self._le

    def meet(self, x: str, y: str) -> str:
        return self._meet[(x, y)]

    def join(self, x: str, y: str) -> str:
        return self._join[(x, y)]

    def le_pairs(self) -> list[tuple[str, str]]:
        index = {e: i for i, e in enumerate(self.elements)}
        return sorted(self._le, key=lambda p: (index[p[0]], index[p[1]]))

    def replace(self, **tables) -> "FiniteAlgebra":
        """Copy with some operator tables swapped out (lattice unchanged)."""
        kw = {
            "s1": self.s1,
            "s2": self.s2,
            "c": self.c,
            "imp": self.imp,
            "neg": self.neg,
        }
        kw.update(tables)
        return FiniteAlgebra(self.elements, self._le, self.bot, self.top, **kw)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (
            self.elements == other.elements
            and self._le == other._le
            and self.bot == other.bot
            and self.top == other.top
            and self.s1 == other.s1
            and self.s2 == other.s2
            and self.c == other.c
            and self.imp == other.imp
            and self.neg == other.neg
        )

    def __repr__(self) -> str:
        return f"FiniteAlgebra({list(self.elements)!r})"


# --- the basic structures ---

def make_bt() -> FiniteAlgebra:
    """The three-element chain bot < mid < top with the two-agent
    perception operators; the structure every validity question reduces
    to."""
    elements = ("bot", "mid", "top")
    le = [("bot", "mid"), ("bot", "top"), ("mid", "top")]
    rank = {"bot": 0, "mid": 1, "top": 2}
    s1 = {"bot": "bot", "mid": "bot", "top": "top"}
    s2 = {"bot": "bot", "mid": "top", "top": "top"}
    c = {"bot": "top", "mid": "top", "top": "bot"}
    imp = {
        x: {y: ("top" if rank[x] <= rank[y] else y) for y in elements}
        for x in elements
    }
    neg = {x: imp[x]["bot"] for x in elements}
    return FiniteAlgebra(elements, le, "bot", "top", s1, s2, c, imp, neg)


def make_b() -> FiniteAlgebra:
    """The two-element subalgebra {bot, top}: classical logic with both
    agents seeing everything."""
    elements = ("bot", "top")
    le = [("bot", "top")]
    ident = {"bot": "bot", "top": "top"}
    swap = {"bot": "top", "top": "bot"}
    imp = {
        "bot": {"bot": "top", "top": "top"},
        "top": {"bot": "bot", "top": "top"},
    }
    return FiniteAlgebra(elements, le, "bot", "top", dict(ident), dict(ident), swap, imp, dict(swap))


def product_algebra(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Componentwise product; corpus-generation helper for non-chain
    structures.  Optional tables survive only if present in both factors."""

    def name(x: str, y: str) -> str:
        return f"({x},{y})"

    elements = [name(x, y) for x in a.elements for y in b.elements]
    le = [
        (name(x1, y1), name(x2, y2))
        for x1 in a.elements
        for y1 in b.elements
        for x2 in a.elements
        for y2 in b.elements
        if a.le(x1, x2) and b.le(y1, y2)
    ]

    def unary(ta: Mapping[str, str], tb: Mapping[str, str]) -> dict[str, str]:
        return {name(x, y): name(ta[x], tb[y]) for x in a.elements for y in b.elements}

    s1 = unary(a.s1, b.s1)
    s2 = unary(a.s2, b.s2)
    c = unary(a.c, b.c) if a.c is not None and b.c is not None else None
    neg = unary(a.neg, b.neg) if a.neg is not None and b.neg is not None else None
    imp = None
    if a.imp is not None and b.imp is not None:
        imp = {
            name(x1, y1): {
                name(x2, y2): name(a.imp[x1][x2], b.imp[y1][y2])
                for x2 in a.elements
                for y2 in b.elements
            }
            for x1 in a.elements
            for y1 in b.elements
        }
    return FiniteAlgebra(
        elements, le, name(a.bot, b.bot), name(a.top, b.top), s1, s2, c, imp, neg
    )


# --- axiom checks ---

def _require(a: FiniteAlgebra, **tables: bool) -> None:
    missing = [name for name, needed in tables.items() if needed and getattr(a, name) is None]
    if missing:
        raise StructureError(f"algebra lacks required tables: {', '.join(missing)}")


def _check_lattice_axioms(a: FiniteAlgebra, report: AxiomReport) -> None:
    # Construction already guarantees these; recheck so the report stands alone.
    for x, y, z in itertools.product(a.elements, repeat=3):
        if a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)):
            report.add("T1:distributivity", x, y, z)
    for x in a.elements:
        if not a.le(a.bot, x):
            report.add("T1:bot", x)
        if not a.le(x, a.top):
            report.add("T1:top", x)


def _check_s_homomorphism(a: FiniteAlgebra, report: AxiomReport, prefix: str) -> None:
    for label, table in (("S1", a.s1), ("S2", a.s2)):
        for x, y in itertools.product(a.elements, repeat=2):
            if table[a.meet(x, y)] != a.meet(table[x], table[y]):
                report.add(f"{prefix}:meet:{label}", x, y)
            if table[a.join(x, y)] != a.join(table[x], table[y]):
                report.add(f"{prefix}:join:{label}", x, y)


def _check_s_composition(a: FiniteAlgebra, report: AxiomReport, prefix: str) -> None:
    for outer_label, outer in (("S1", a.s1), ("S2", a.s2)):
        for inner_label, inner in (("S1", a.s1), ("S2", a.s2)):
            for x in a.elements:
                if outer[inner[x]] != inner[x]:
                    report.add(f"{prefix}:{outer_label}{inner_label}", x)


def _check_t2_to_t7(a: FiniteAlgebra, report: AxiomReport, include_t6: bool = True) -> None:
    _check_s_homomorphism(a, report, "T2")
    for x in a.elements:
        if a.meet(a.s1[x], a.c[x]) != a.bot:
            report.add("T3:meet", x)
        if a.join(a.s1[x], a.c[x]) != a.top:
            report.add("T3:join", x)
    _check_s_composition(a, report, "T4")
    if a.s1[a.bot] != a.bot:
        report.add("T5:zero")
    if a.s1[a.top] != a.top:
        report.add("T5:one")
    if include_t6:
        for i, x in enumerate(a.elements):
            for y in a.elements[i + 1:]:
                if a.s1[x] == a.s1[y] and a.s2[x] == a.s2[y]:
                    report.add("T6", x, y)
    for x in a.elements:
        if not a.le(a.s1[x], a.s2[x]):
            report.add("T7", x)


def check_t_structure(a: FiniteAlgebra) -> AxiomReport:
    """Exhaustively verify the perception-operator axioms: s1/s2 are
    bounded-lattice homomorphisms absorbing each other, c complements s1,
    s1 lies below s2, and the pair (s1 x, s2 x) determines x."""
    _require(a, s1=True, s2=True, c=True)
    report = AxiomReport()
    _check_lattice_axioms(a, report)
    _check_t2_to_t7(a, report)
    return report


def check_ht_algebra(a: FiniteAlgebra) -> AxiomReport:
    """Exhaustively verify the Heyting-with-operators axioms: imp is the
    residuation of meet, neg x = x -> bot, s1/s2 are Boolean operators
    interacting with imp as required."""
    _require(a, s1=True, s2=True, imp=True, neg=True)
    report = AxiomReport()
    for x, y, z in itertools.product(a.elements, repeat=3):
        if a.le(a.meet(x, z), y) != a.le(z, a.imp[x][y]):
            report.add("HT1:residuation", x, y, z)
    for x in a.elements:
        if a.neg[x] != a.imp[x][a.bot]:
            report.add("HT1:neg", x)
    _check_s_homomorphism(a, report, "HT2")
    for x, y in itertools.product(a.elements, repeat=2):
        if a.s2[a.imp[x][y]] != a.imp[a.s2[x]][a.s2[y]]:
            report.add("HT3", x, y)
        expected = a.meet(a.imp[a.s1[x]][a.s1[y]], a.imp[a.s2[x]][a.s2[y]])
        if a.s1[a.imp[x][y]] != expected:
            report.add("HT4", x, y)
    _check_s_composition(a, report, "HT5")
    for x in a.elements:
        if a.join(a.s1[x], x) != x:
            report.add("HT6", x)
        if a.join(a.s1[x], a.neg[a.s1[x]]) != a.top:
            report.add("HT7", x)
    return report


def check_derived_properties(a: FiniteAlgebra) -> AxiomReport:
    """Verify the consequences that must follow once the base axioms hold:
    s2 preserves the bounds, both operators reflect the order, s1 x <= x
    <= s2 x, the complement laws for c (its defining equations and their
    s-image instances), and the three-valued implication identity
    ((a->c)->b) -> (((b->a)->b)->b) = top when imp is present."""
    base_ok = False
    if a.c is not None and check_t_structure(a).passed:
        base_ok = True
    if not base_ok and a.imp is not None and a.neg is not None and check_ht_algebra(a).passed:
        base_ok = True
    if not base_ok:
        raise StructureError("algebra passes neither the T-structure nor the HT-algebra axioms")
    report = AxiomReport()
    if a.s2[a.bot] != a.bot:
        report.add("T8:zero")
    if a.s2[a.top] != a.top:
        report.add("T8:one")
    for x, y in itertools.product(a.elements, repeat=2):
        if a.le(x, y) != (a.le(a.s1[x], a.s1[y]) and a.le(a.s2[x], a.s2[y])):
            report.add("T9", x, y)
    for x in a.elements:
        if not a.le(a.s1[x], x):
            report.add("T10:lower", x)
        if not a.le(x, a.s2[x]):
            report.add("T10:upper", x)
    c = a.c if a.c is not None else ({x: a.neg[a.s1[x]] for x in a.elements})
    for x in a.elements:
        # defining complement equations for c, then their s-image instances
        if a.meet(a.s1[x], c[x]) != a.bot:
            report.add("T11:Cdef:meet", x)
        if a.join(a.s1[x], c[x]) != a.top:
            report.add("T11:Cdef:join", x)
        for label, table in (("S1", a.s1), ("S2", a.s2)):
            if a.meet(table[x], c[table[x]]) != a.bot:
                report.add(f"T11:{label}:meet", x)
            if a.join(table[x], c[table[x]]) != a.top:
                report.add(f"T11:{label}:join", x)
    if a.imp is not None:
        for x, y, z in itertools.product(a.elements, repeat=3):
            inner = a.imp[a.imp[x][z]][y]
            outer = a.imp[a.imp[a.imp[y][x]][y]][y]
            if a.imp[inner][outer] != a.top:
                report.add("IvoThomas", x, y, z)
    return report


def check_perception_congruence(a: FiniteAlgebra) -> AxiomReport:
    """Build the relation `x == y iff s1 x = s1 y and s2 x = s2 y` and
    verify it is compatible with meet, join, c, s1, s2.  details reports
    the equivalence classes and whether the relation is the identity
    (the determination principle)."""
    _require(a, s1=True, s2=True, c=True)
    pre = AxiomReport()
    _check_lattice_axioms(a, pre)
    _check_t2_to_t7(a, pre, include_t6=False)
    if not pre.passed:
        raise StructureError(f"congruence prerequisites fail: {sorted(pre.labels())}")

    def key(x: str) -> tuple[str, str]:
        return (a.s1[x], a.s2[x])

    classes: dict[tuple[str, str], list[str]] = {}
    for x in a.elements:
        classes.setdefault(key(x), []).append(x)

    def equiv(x: str, y: str) -> bool:
        return key(x) == key(y)

    report = AxiomReport()
    for x, y in itertools.product(a.elements, repeat=2):
        if not equiv(x, y):
            continue
        if not equiv(a.c[x], a.c[y]):
            report.add("congruence:C", x, y)
        if not equiv(a.s1[x], a.s1[y]):
            report.add("congruence:S1", x, y)
        if not equiv(a.s2[x], a.s2[y]):
            report.add("congruence:S2", x, y)
        for z, w in itertools.product(a.elements, repeat=2):
            if not equiv(z, w):
                continue
            if not equiv(a.meet(x, z), a.meet(y, w)):
                report.add("congruence:meet", x, y, z, w)
            if not equiv(a.join(x, z), a.join(y, w)):
                report.add("congruence:join", x, y, z, w)
    index = {e: i for i, e in enumerate(a.elements)}
    sorted_classes = sorted(
        (sorted(members, key=index.get) for members in classes.values()),
        key=lambda cls: index[cls[0]],
    )
    report.details["identity"] = all(len(cls) == 1 for cls in sorted_classes)
    report.details["classes"] = sorted_classes
    return report


# --- the two conversion theorems ---

def derive_implication(t: FiniteAlgebra) -> FiniteAlgebra:
    """Extend a T-structure with the intuitionistic implication
    a -> b = b v /\\_k (c(s_k a) v s_k b) and neg a = a -> bot."""
    report = check_t_structure(t)
    if not report.passed:
        raise StructureError(f"not a T-structure: {sorted(report.labels())}")
    imp: dict[str, dict[str, str]] = {}
    for x in t.elements:
        imp[x] = {}
        for y in t.elements:
            term1 = t.join(t.c[t.s1[x]], t.s1[y])
            term2 = t.join(t.c[t.s2[x]], t.s2[y])
            imp[x][y] = t.join(y, t.meet(term1, term2))
    neg = {x: imp[x][t.bot] for x in t.elements}
    return t.replace(imp=imp, neg=neg)


def derive_c(h: FiniteAlgebra) -> FiniteAlgebra:
    """Extend an HT-algebra with c x = neg(s1 x), recovering the
    T-structure presentation."""
    report = check_ht_algebra(h)
    if not report.passed:
        raise StructureError(f"not an HT-algebra: {sorted(report.labels())}")
    return h.replace(c={x: h.neg[h.s1[x]] for x in h.elements})


def complemented_elements(a: FiniteAlgebra) -> list[str]:
    """Elements with a lattice complement, in carrier order; for a
    T-structure this coincides with the common image of s1 and s2."""
    out = []
    for x in a.elements:
        if any(a.meet(x, y) == a.bot and a.join(x, y) == a.top for y in a.elements):
            out.append(x)
    return out


# --- evaluation and consequence ---

def eval_formula(f: Formula, v: Assignment, a: FiniteAlgebra) -> str:
    """Homomorphic value of f under the variable assignment v."""
    if isinstance(f, Var):
        try:
            return v[f.name]
        except KeyError:
            raise StructureError(f"assignment does not cover variable {f.name!r}") from None
    if isinstance(f, And):
        return a.meet(eval_formula(f.left, v, a), eval_formula(f.right, v, a))
    if isinstance(f, Or):
        return a.join(eval_formula(f.left, v, a), eval_formula(f.right, v, a))
    if isinstance(f, Implies):
        _require(a, imp=True)
        return a.imp[eval_formula(f.left, v, a)][eval_formula(f.right, v, a)]
    if isinstance(f, Not):
        _require(a, neg=True)
        return a.neg[eval_formula(f.child, v, a)]
    if isinstance(f, S1):
        return a.s1[eval_formula(f.child, v, a)]
    if isinstance(f, S2):
        return a.s2[eval_formula(f.child, v, a)]
    raise TypeError(f"not a formula: {f!r}")


def assignments_into(
    var_names: Sequence[str],
    a: FiniteAlgebra,
    max_assignments: int = DEFAULT_ASSIGNMENT_CAP,
) -> Iterable[Assignment]:
    """All assignments of var_names into the carrier, lexicographic in
    variable order with elements in carrier order."""
    total = len(a.elements) ** len(var_names)
    if total > max_assignments:
        raise ResourceError(
            f"{total} assignments exceed the cap of {max_assignments}"
        )
    for combo in itertools.product(a.elements, repeat=len(var_names)):
        yield dict(zip(var_names, combo))


def algebra_consequence(
    gamma: Sequence[Formula],
    alpha: Formula,
    a: FiniteAlgebra,
    max_assignments: int = DEFAULT_ASSIGNMENT_CAP,
) -> Verdict:
    """Does every assignment sending all of gamma to top send alpha to
    top?  Refutations carry the first counter-assignment in enumeration
    order."""
    names = sorted(set().union(*(variables(g) for g in gamma), variables(alpha)))
    for v in assignments_into(names, a, max_assignments):
        if all(eval_formula(g, v, a) == a.top for g in gamma):
            if eval_formula(alpha, v, a) != a.top:
                return Verdict(False, {"assignment": v})
    return Verdict(True)


# --- JSON wire format ---

_ALGEBRA_REQUIRED = {"elements", "le", "bot", "top", "s1", "s2"}
_ALGEBRA_OPTIONAL = {"c", "imp", "neg"}


def algebra_to_dict(a: FiniteAlgebra) -> dict:
    data = {
        "elements": list(a.elements),
        "le": [list(p) for p in a.le_pairs()],
        "bot": a.bot,
        "top": a.top,
        "s1": dict(a.s1),
        "s2": dict(a.s2),
    }
    if a.c is not None:
        data["c"] = dict(a.c)
    if a.imp is not None:
        data["imp"] = {x: dict(row) for x, row in a.imp.items()}
    if a.neg is not None:
        data["neg"] = dict(a.neg)
    return data


def algebra_from_dict(data: dict) -> FiniteAlgebra:
    if not isinstance(data, dict):
        raise StructureError("algebra document must be a JSON object")
    keys = set(data)
    unknown = keys - _ALGEBRA_REQUIRED - _ALGEBRA_OPTIONAL
    if unknown:
        raise StructureError(f"unknown algebra fields: {sorted(unknown)}")
    missing = _ALGEBRA_REQUIRED - keys
    if missing:
        raise StructureError(f"missing algebra fields: {sorted(missing)}")
    le = []
    for pair in data["le"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise StructureError(f"bad le pair: {pair!r}")
        le.append((pair[0], pair[1]))
    return FiniteAlgebra(
        data["elements"],
        le,
        data["bot"],
        data["top"],
        data["s1"],
        data["s2"],
        data.get("c"),
        data.get("imp"),
        data.get("neg"),
    )
