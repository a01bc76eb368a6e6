"""Relational semantics: two-agent frames, models, and satisfaction.

A frame is a set of states with a preorder R and agent maps s1, s2; a
model adds a valuation sending each variable to an R-closed set of
states.  Satisfaction treats implication and negation intuitionistically
(quantifying over R-successors) and the agent operators by jumping to
the agent's state.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .algebra import AxiomReport, Verdict
from .errors import ResourceError, StructureError
from .formula import And, Formula, Implies, Not, Or, S1, S2, Var, variables

DEFAULT_SUBSET_CAP = 2 ** 12
DEFAULT_VALUATION_CAP = 3 ** 12
DEFAULT_FRAME_SIZE_BOUND = 3


class HTFrame:
    """States with a relation R and total agent maps s1, s2.  Construction
    validates only name hygiene; the frame axioms are check_frame's job."""

    def __init__(
        self,
        states: Sequence[str],
        r: Iterable[tuple[str, str]],
        s1: Mapping[str, str],
        s2: Mapping[str, str],
    ):
        self.states = tuple(states)
        if not self.states:
            raise StructureError("frame must have at least one state")
        if len(set(self.states)) != len(self.states):
            raise StructureError("duplicate state names")
        universe = set(self.states)
        pairs = set()
        for pair in r:
            w, u = pair
            if w not in universe or u not in universe:
                raise StructureError(f"R mentions unknown state in {pair!r}")
            pairs.add((w, u))
        self.r = frozenset(pairs)
        self.s1 = self._agent_map(s1, "s1")
        self.s2 = self._agent_map(s2, "s2")

    def _agent_map(self, table: Mapping[str, str], name: str) -> dict[str, str]:
        out = dict(table)
        universe = set(self.states)
        if set(out) != universe or not set(out.values()) <= universe:
            raise StructureError(f"map {name} is not total on the states")
        return out

    def related(self, w: str, u: str) -> bool:
        return (w, u) in self.r

    def successors(self, w: str) -> list[str]:
        return [u for u in self.states if (w, u) in self.r]

    def r_pairs(self) -> list[tuple[str, str]]:
        index = {w: i for i, w in enumerate(self.states)}
        return sorted(self.r, key=lambda p: (index[p[0]], index[p[1]]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HTFrame):
            return NotImplemented
        return (
            self.states == other.states
            and self.r == other.r
            and self.s1 == other.s1
            and self.s2 == other.s2
        )

    def __repr__(self) -> str:
        return f"HTFrame({list(self.states)!r})"


class HTModel:
    """A frame plus a valuation; variables missing from the valuation
    denote the empty set."""

    def __init__(self, frame: HTFrame, m: Mapping[str, Iterable[str]]):
        self.frame = frame
        universe = set(frame.states)
        valuation: dict[str, frozenset[str]] = {}
        for var, states in m.items():
            states = frozenset(states)
            bad = states - universe
            if bad:
                raise StructureError(f"valuation of {var!r} mentions unknown states {sorted(bad)}")
            valuation[var] = states
        self.m = valuation

    def states_of(self, var: str) -> frozenset[str]:
        return self.m.get(var, frozenset())

    def __eq__(self, other) -> bool:
        if not isinstance(other, HTModel):
            return NotImplemented
        mine = {v: s for v, s in self.m.items() if s}
        theirs = {v: s for v, s in other.m.items() if s}
        return self.frame == other.frame and mine == theirs

    def __repr__(self) -> str:
        return f"HTModel({self.frame!r}, {dict(self.m)!r})"


def make_k0() -> HTFrame:
    """The two-state frame whose order mirrors the agent poset: t1 below
    t2, with each agent map constantly its own state."""
    states = ("t1", "t2")
    r = [("t1", "t1"), ("t1", "t2"), ("t2", "t2")]
    return HTFrame(states, r, {"t1": "t1", "t2": "t1"}, {"t1": "t2", "t2": "t2"})


# --- axioms ---

def check_frame(k: HTFrame) -> AxiomReport:
    """Verify the frame axioms by exhaustion: R a preorder, the agent maps
    absorbing each other, s1 below / s2 above along R, R-pairs preserved
    into agent equivalence, every state an agent image.  The derived
    fixed-point property (w = s1 w or w = s2 w) is checked and reported
    separately."""
    report = AxiomReport()
    for w in k.states:
        if not k.related(w, w):
            report.add("K1:reflexive", w)
    for w, u, v in itertools.product(k.states, repeat=3):
        if k.related(w, u) and k.related(u, v) and not k.related(w, v):
            report.add("K1:transitive", w, u, v)
    for outer_label, outer in (("s1", k.s1), ("s2", k.s2)):
        for inner_label, inner in (("s1", k.s1), ("s2", k.s2)):
            for w in k.states:
                if outer[inner[w]] != outer[w]:
                    report.add(f"K2:{outer_label}{inner_label}", w)
    for w in k.states:
        if not k.related(k.s1[w], w):
            report.add("K3", w)
        if not k.related(w, k.s2[w]):
            report.add("K4", w)
    for w, u in itertools.product(k.states, repeat=2):
        if not k.related(w, u):
            continue
        for label, s in (("s1", k.s1), ("s2", k.s2)):
            if not (k.related(s[w], s[u]) and k.related(s[u], s[w])):
                report.add(f"K5:{label}", w, u)
    images = set(k.s1.values()) | set(k.s2.values())
    for w in k.states:
        if w not in images:
            report.add("K6", w)
    fixed = True
    for w in k.states:
        if k.s1[w] != w and k.s2[w] != w:
            report.add("fixpoint", w)
            fixed = False
    report.details["fixed_point"] = fixed
    return report


def check_model(m: HTModel) -> AxiomReport:
    """Verify atomic heredity: every valuation set is closed upward
    along R."""
    report = AxiomReport()
    for var in sorted(m.m):
        states = m.m[var]
        for w in m.frame.states:
            if w not in states:
                continue
            for u in m.frame.successors(w):
                if u not in states:
                    report.add("her-at", var, w, u)
    return report


# --- satisfaction ---

def sat(m: HTModel, w: str, f: Formula) -> bool:
    """Does state w satisfy f in model m?"""
    if isinstance(f, Var):
        return w in m.states_of(f.name)
    if isinstance(f, And):
        return sat(m, w, f.left) and sat(m, w, f.right)
    if isinstance(f, Or):
        return sat(m, w, f.left) or sat(m, w, f.right)
    if isinstance(f, Implies):
        return all(
            not sat(m, u, f.left) or sat(m, u, f.right)
            for u in m.frame.successors(w)
        )
    if isinstance(f, Not):
        return all(not sat(m, u, f.child) for u in m.frame.successors(w))
    if isinstance(f, S1):
        return sat(m, m.frame.s1[w], f.child)
    if isinstance(f, S2):
        return sat(m, m.frame.s2[w], f.child)
    raise TypeError(f"not a formula: {f!r}")


def sat_states(m: HTModel, f: Formula) -> frozenset[str]:
    """The set of states satisfying f."""
    return frozenset(w for w in m.frame.states if sat(m, w, f))


def model_truth(m: HTModel, f: Formula) -> Verdict:
    """Is f satisfied at every state?  Refutations carry the first
    non-satisfying state in state order."""
    for w in m.frame.states:
        if not sat(m, w, f):
            return Verdict(False, {"state": w})
    return Verdict(True)


def r_closed_subsets(k: HTFrame, max_subsets: int = DEFAULT_SUBSET_CAP) -> list[frozenset[str]]:
    """All up-closed subsets of the frame, ordered by size then by state
    positions."""
    if 2 ** len(k.states) > max_subsets:
        raise ResourceError(
            f"2^{len(k.states)} subsets exceed the cap of {max_subsets}"
        )
    index = {w: i for i, w in enumerate(k.states)}
    out = []
    for size in range(len(k.states) + 1):
        for combo in itertools.combinations(k.states, size):
            subset = frozenset(combo)
            if _is_r_closed(k, subset):
                out.append(subset)
    out.sort(key=lambda s: (len(s), tuple(sorted(index[w] for w in s))))
    return out


def _is_r_closed(k: HTFrame, subset: frozenset[str]) -> bool:
    return all(u in subset for w in subset for u in k.successors(w))


def frame_valid(
    k: HTFrame,
    f: Formula,
    max_valuations: int = DEFAULT_VALUATION_CAP,
) -> Verdict:
    """Is f true in every model based on k?  Valuations range over the
    R-closed subsets; a refutation carries the first failing valuation
    and state."""
    names = variables(f)
    closed = r_closed_subsets(k)
    total = len(closed) ** len(names)
    if total > max_valuations:
        raise ResourceError(f"{total} valuations exceed the cap of {max_valuations}")
    for combo in itertools.product(closed, repeat=len(names)):
        model = HTModel(k, dict(zip(names, combo)))
        verdict = model_truth(model, f)
        if not verdict.holds:
            valuation = {v: sorted(s, key=k.states.index) for v, s in zip(names, combo)}
            return Verdict(False, {"valuation": valuation, "state": verdict.witness["state"]})
    return Verdict(True)


def model_consequence(gamma: Sequence[Formula], alpha: Formula, m: HTModel) -> Verdict:
    """If every formula of gamma is true in m, is alpha true in m?
    Holds vacuously when some gamma member fails."""
    for g in gamma:
        if not model_truth(m, g).holds:
            return Verdict(True)
    verdict = model_truth(m, alpha)
    if verdict.holds:
        return Verdict(True)
    return Verdict(False, verdict.witness)


# --- enumeration ---

def enumerate_frames(
    max_states: int,
    bound: int = DEFAULT_FRAME_SIZE_BOUND,
    mod_iso: bool = False,
) -> Iterator[HTFrame]:
    """Every frame on canonically named states w1..wn, n <= max_states,
    passing check_frame; deterministic order.  Only reflexive relations
    are generated (nothing else can pass).  With mod_iso, frames
    isomorphic to an earlier one are skipped."""
    if max_states > bound:
        raise ResourceError(f"max_states {max_states} exceeds the bound {bound}")
    seen: list[HTFrame] = []
    for n in range(1, max_states + 1):
        states = tuple(f"w{i}" for i in range(1, n + 1))
        diagonal = [(w, w) for w in states]
        off_diagonal = [
            (w, u) for w in states for u in states if w != u
        ]
        for mask in range(2 ** len(off_diagonal)):
            r = list(diagonal)
            for i, pair in enumerate(off_diagonal):
                if mask & (1 << i):
                    r.append(pair)
            for s1_values in itertools.product(states, repeat=n):
                s1 = dict(zip(states, s1_values))
                for s2_values in itertools.product(states, repeat=n):
                    s2 = dict(zip(states, s2_values))
                    frame = HTFrame(states, r, s1, s2)
                    if not check_frame(frame).passed:
                        continue
                    if mod_iso:
                        if any(find_frame_isomorphism(frame, old) for old in seen):
                            continue
                        seen.append(frame)
                    yield frame


def find_frame_isomorphism(a: HTFrame, b: HTFrame) -> Optional[dict[str, str]]:
    """First state bijection (in permutation order) carrying R and both
    agent maps of a onto those of b, or None."""
    if len(a.states) != len(b.states):
        return None
    for perm in itertools.permutations(b.states):
        mapping = dict(zip(a.states, perm))
        if {(mapping[w], mapping[u]) for w, u in a.r} != set(b.r):
            continue
        if all(
            mapping[a.s1[w]] == b.s1[mapping[w]] and mapping[a.s2[w]] == b.s2[mapping[w]]
            for w in a.states
        ):
            return mapping
    return None


def reflexive_transitive_closure(k: HTFrame) -> HTFrame:
    """Copy of k with R replaced by its reflexive-transitive closure."""
    closed = {(w, w) for w in k.states} | set(k.r)
    changed = True
    while changed:
        changed = False
        for w, u in list(closed):
            for u2, v in list(closed):
                if u == u2 and (w, v) not in closed:
                    closed.add((w, v))
                    changed = True
    return HTFrame(k.states, closed, k.s1, k.s2)


# --- JSON wire format ---

_FRAME_REQUIRED = {"states", "R", "s1", "s2"}


def frame_to_dict(k: HTFrame) -> dict:
    return {
        "states": list(k.states),
        "R": [list(p) for p in k.r_pairs()],
        "s1": dict(k.s1),
        "s2": dict(k.s2),
    }


def frame_from_dict(data: dict) -> HTFrame:
    if not isinstance(data, dict):
        raise StructureError("frame document must be a JSON object")
    unknown = set(data) - _FRAME_REQUIRED
    if unknown:
        raise StructureError(f"unknown frame fields: {sorted(unknown)}")
    missing = _FRAME_REQUIRED - set(data)
    if missing:
        raise StructureError(f"missing frame fields: {sorted(missing)}")
    r = []
    for pair in data["R"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise StructureError(f"bad R pair: {pair!r}")
        r.append((pair[0], pair[1]))
    return HTFrame(data["states"], r, data["s1"], data["s2"])


_MODEL_REQUIRED = {"frame", "m"}


def model_to_dict(m: HTModel) -> dict:
    return {
        "frame": frame_to_dict(m.frame),
        "m": {
            var: sorted(states, key=m.frame.states.index)
            for var, states in sorted(m.m.items())
        },
    }


def model_from_dict(data: dict, frame_loader=None) -> HTModel:
    """Build a model; the "frame" field may be an inline frame object or
    a string reference resolved through frame_loader."""
    if not isinstance(data, dict):
        raise StructureError("model document must be a JSON object")
    unknown = set(data) - _MODEL_REQUIRED
    if unknown:
        raise StructureError(f"unknown model fields: {sorted(unknown)}")
    missing = _MODEL_REQUIRED - set(data)
    if missing:
        raise StructureError(f"missing model fields: {sorted(missing)}")
    frame_data = data["frame"]
    if isinstance(frame_data, str):
        if frame_loader is None:
            raise StructureError("model references a frame file but no loader was given")
        frame = frame_loader(frame_data)
    else:
        frame = frame_from_dict(frame_data)
    m = data["m"]
    if not isinstance(m, dict):
        raise StructureError("model field 'm' must map variables to state lists")
    return HTModel(frame, m)
