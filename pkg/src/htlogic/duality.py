"""The two constructions connecting frames and algebras.

From a frame: the algebra of its R-closed state sets, with the agent
operators given by inverse image, c by set complement of the s1
operator, and implication read off the implication-from-c construction
pointwise:

    X -> Y = Y u ((C S1 X u S1 Y) n (C S2 X u S2 Y)),  S_i Z = s_i^{-1}(Z)

From an algebra: the frame of its prime filters ordered by inclusion,
with s_i(P) = {x : s_i x in P}.  At the basic instances the two
constructions invert each other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    Assignment,
    FiniteAlgebra,
    check_ht_algebra,
)
from .errors import ResourceError, StructureError
from .frame import (
    DEFAULT_SUBSET_CAP,
    HTFrame,
    HTModel,
    check_frame,
    check_model,
    r_closed_subsets,
)

DEFAULT_ISO_BOUND = 8


@dataclass
class RClosedFamily:
    frame: HTFrame
    sets: list[frozenset[str]]

    def name_of(self, subset: frozenset[str]) -> str:
        return set_name(subset, self.frame)


@dataclass
class PrimeFilter:
    algebra: FiniteAlgebra
    members: frozenset[str]

    def name(self) -> str:
        index = {e: i for i, e in enumerate(self.algebra.elements)}
        return "{" + ",".join(sorted(self.members, key=index.get)) + "}"


def set_name(subset: frozenset[str], frame: HTFrame) -> str:
    """Canonical brace-delimited name of a state set, members in state
    order."""
    index = {w: i for i, w in enumerate(frame.states)}
    return "{" + ",".join(sorted(subset, key=index.get)) + "}"


def r_closed_sets(k: HTFrame, max_subsets: int = DEFAULT_SUBSET_CAP) -> RClosedFamily:
    """All R-closed subsets of k, by size then state positions."""
    return RClosedFamily(k, r_closed_subsets(k, max_subsets))


def complex_algebra(k: HTFrame, max_subsets: int = DEFAULT_SUBSET_CAP) -> FiniteAlgebra:
    """The algebra of R-closed sets of k: order is inclusion, the agent
    operators are inverse images under the agent maps, c the set
    complement of the s1 operator, and implication the two-agent term
    X -> Y = Y u ((C S1 X u S1 Y) n (C S2 X u S2 Y))."""
    report = check_frame(k)
    if not report.passed:
        raise StructureError(f"not a valid frame: {sorted(report.labels())}")
    family = r_closed_subsets(k, max_subsets)
    names = {subset: set_name(subset, k) for subset in family}
    universe = frozenset(k.states)

    def inverse(s: dict[str, str], subset: frozenset[str]) -> frozenset[str]:
        return frozenset(w for w in k.states if s[w] in subset)

    def implication(x: frozenset[str], y: frozenset[str]) -> frozenset[str]:
        term1 = inverse(k.s1, universe - x) | inverse(k.s1, y)
        term2 = inverse(k.s2, universe - x) | inverse(k.s2, y)
        return y | (term1 & term2)

    elements = [names[subset] for subset in family]
    le = [
        (names[x], names[y])
        for x in family
        for y in family
        if x <= y
    ]
    s1 = {names[x]: names[inverse(k.s1, x)] for x in family}
    s2 = {names[x]: names[inverse(k.s2, x)] for x in family}
    c = {names[x]: names[universe - inverse(k.s1, x)] for x in family}
    imp = {
        names[x]: {names[y]: names[implication(x, y)] for y in family}
        for x in family
    }
    neg = {names[x]: imp[names[x]][names[frozenset()]] for x in family}
    return FiniteAlgebra(
        elements, le, names[frozenset()], names[universe], s1, s2, c, imp, neg
    )


def prime_filters(a: FiniteAlgebra, max_subsets: int = DEFAULT_SUBSET_CAP) -> list[PrimeFilter]:
    """All prime filters, found by exhaustive subset check: nonempty,
    proper, upward closed, meet closed, and join-splitting."""
    if 2 ** len(a.elements) > max_subsets:
        raise ResourceError(
            f"2^{len(a.elements)} subsets exceed the cap of {max_subsets}"
        )
    index = {e: i for i, e in enumerate(a.elements)}
    out = []
    for size in range(1, len(a.elements)):
        for combo in itertools.combinations(a.elements, size):
            members = frozenset(combo)
            if _is_prime_filter(a, members):
                out.append(PrimeFilter(a, members))
    out.sort(key=lambda p: (len(p.members), tuple(sorted(index[x] for x in p.members))))
    return out


def _is_prime_filter(a: FiniteAlgebra, members: frozenset[str]) -> bool:
    for x in members:
        for y in a.elements:
            if a.le(x, y) and y not in members:
                return False
    for x, y in itertools.product(members, repeat=2):
        if a.meet(x, y) not in members:
            return False
    for x, y in itertools.product(a.elements, repeat=2):
        if a.join(x, y) in members and x not in members and y not in members:
            return False
    return True


def canonical_frame(a: FiniteAlgebra) -> HTFrame:
    """The frame of prime filters of a, ordered by inclusion, with agent
    maps s_i(P) = {x : s_i x in P}."""
    report = check_ht_algebra(a)
    if not report.passed:
        raise StructureError(f"not an HT-algebra: {sorted(report.labels())}")
    filters = prime_filters(a)
    by_members = {p.members: p.name() for p in filters}

    def shift(s: dict[str, str], p: PrimeFilter) -> str:
        image = frozenset(x for x in a.elements if s[x] in p.members)
        try:
            return by_members[image]
        except KeyError:
            raise StructureError(
                f"agent image of {p.name()} is not a prime filter"
            ) from None

    states = [p.name() for p in filters]
    r = [
        (p.name(), q.name())
        for p in filters
        for q in filters
        if p.members <= q.members
    ]
    s1 = {p.name(): shift(a.s1, p) for p in filters}
    s2 = {p.name(): shift(a.s2, p) for p in filters}
    return HTFrame(states, r, s1, s2)


def model_to_algebraic(m: HTModel) -> tuple[FiniteAlgebra, Assignment]:
    """View a model algebraically: the complex algebra of its frame, with
    each variable assigned its valuation set.  Evaluation there computes
    exactly the satisfaction sets."""
    report = check_model(m)
    if not report.passed:
        raise StructureError(f"valuation not hereditary: {report.violations[:3]}")
    algebra = complex_algebra(m.frame)
    assignment = {var: set_name(m.states_of(var), m.frame) for var in sorted(m.m)}
    return algebra, assignment


def algebraic_to_model(a: FiniteAlgebra, v: Assignment) -> HTModel:
    """View an assignment relationally: the model on the canonical frame
    where p holds at exactly the filters containing v(p).  A filter
    satisfies a formula iff it contains the formula's value."""
    frame = canonical_frame(a)
    filters = prime_filters(a)
    m = {}
    for var, value in v.items():
        if value not in a.elements:
            raise StructureError(f"assignment sends {var!r} outside the carrier")
        m[var] = [p.name() for p in filters if value in p.members]
    return HTModel(frame, m)


def check_isomorphic(
    a: FiniteAlgebra,
    b: FiniteAlgebra,
    max_size: int = DEFAULT_ISO_BOUND,
) -> Optional[dict[str, str]]:
    """First bijection (in permutation order) carrying the order, bounds,
    and every operator table of a onto those of b, or None."""
    if len(a.elements) != len(b.elements):
        return None
    if len(a.elements) > max_size:
        raise ResourceError(
            f"carrier of {len(a.elements)} exceeds the isomorphism bound {max_size}"
        )
    tables = [("s1", a.s1, b.s1), ("s2", a.s2, b.s2)]
    for name in ("c", "neg"):
        ta, tb = getattr(a, name), getattr(b, name)
        if (ta is None) != (tb is None):
            return None
        if ta is not None:
            tables.append((name, ta, tb))
    if (a.imp is None) != (b.imp is None):
        return None
    for perm in itertools.permutations(b.elements):
        f = dict(zip(a.elements, perm))
        if f[a.bot] != b.bot or f[a.top] != b.top:
            continue
        if any(a.le(x, y) != b.le(f[x], f[y]) for x in a.elements for y in a.elements):
            continue
        if any(f[ta[x]] != tb[f[x]] for _, ta, tb in tables for x in a.elements):
            continue
        if a.imp is not None and any(
            f[a.imp[x][y]] != b.imp[f[x]][f[y]]
            for x in a.elements
            for y in a.elements
        ):
            continue
        return f
    return None
