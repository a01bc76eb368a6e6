"""Acceptance criteria, one test per criterion.

Run with `pytest tests/test_acceptance.py -s` to see one line per
criterion.  Budgets (runtime bounds, corpus sizes, exactness) are pinned
here and nowhere else.
"""
import itertools
import time

from htlogic import (
    check_derived_properties,
    check_ht_algebra,
    check_isomorphic,
    check_t_structure,
    complex_algebra,
    canonical_frame,
    decide_validity,
    derive_c,
    derive_implication,
    enumerate_formulas,
    enumerate_frames,
    eval_formula,
    find_frame_isomorphism,
    frame_valid,
    make_b,
    make_bt,
    make_k0,
    model_truth,
    parse_formula,
    prime_filters,
    product_algebra,
    random_formulas,
    render_formula,
    r_closed_subsets,
    sat,
    sat_states,
    algebraic_to_model,
    HTModel,
)


def report(number: int, name: str, ok: bool, extra: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({extra})" if extra else ""
    print(f"[criterion {number}] {name}: {status}{suffix}")


def test_criterion_1_axiom_suite():
    start = time.perf_counter()
    bt = make_bt()
    t_ok = check_t_structure(bt).passed
    ht_ok = check_ht_algebra(bt).passed
    derived = check_derived_properties(bt)
    triples = len(bt.elements) ** 3
    elapsed = time.perf_counter() - start
    ok = t_ok and ht_ok and derived.passed and triples == 27 and elapsed < 1.0
    report(1, "axiom suite", ok, f"{elapsed:.3f}s")
    assert t_ok and ht_ok and derived.passed
    assert triples == 27
    assert elapsed < 1.0


def test_criterion_2_conversion_round_trips():
    bt, b = make_bt(), make_b()
    cases = {
        "bt": bt,
        "b": b,
        "bt*b": product_algebra(bt, b),
        "bt*bt": product_algebra(bt, bt),
    }
    failures = []
    for name, a in cases.items():
        if derive_c(derive_implication(a)) != a:
            failures.append(f"{name}: imp then c")
        if derive_implication(derive_c(a)) != a:
            failures.append(f"{name}: c then imp")
    report(2, "conversion round-trips", not failures, f"{len(cases)} algebras")
    assert not failures, failures


def test_criterion_3_duality_flagship():
    forward = check_isomorphic(complex_algebra(make_k0()), make_bt())
    backward = find_frame_isomorphism(canonical_frame(make_bt()), make_k0())
    ok = forward == {"{}": "bot", "{t2}": "mid", "{t1,t2}": "top"} and backward == {
        "{top}": "t1",
        "{mid,top}": "t2",
    }
    report(3, "duality flagship", ok, f"{forward} / {backward}")
    assert ok


def test_criterion_4_filter_membership_bridge():
    start = time.perf_counter()
    bt = make_bt()
    corpus = set(enumerate_formulas(2, ["p", "q"]))
    corpus.update(random_formulas(10_000, 4, ["p", "q"], seed=41, distinct=True))
    corpus = sorted(corpus, key=render_formula)
    assert len(corpus) >= 10_000
    filters = prime_filters(bt)
    discrepancies = 0
    for vp, vq in itertools.product(bt.elements, repeat=2):
        v = {"p": vp, "q": vq}
        model = algebraic_to_model(bt, v)
        for f in corpus:
            value = eval_formula(f, v, bt)
            for filt in filters:
                if sat(model, filt.name(), f) != (value in filt.members):
                    discrepancies += 1
    elapsed = time.perf_counter() - start
    ok = discrepancies == 0 and elapsed < 60.0
    report(
        4,
        "filter-membership bridge",
        ok,
        f"{len(corpus)} formulas x 9 assignments x {len(filters)} filters, {elapsed:.1f}s",
    )
    assert discrepancies == 0
    assert elapsed < 60.0


def test_criterion_5_heredity():
    corpus = set(enumerate_formulas(2, ["p"]))
    corpus.update(random_formulas(400, 3, ["p"], seed=43, distinct=True))
    corpus = sorted(corpus, key=render_formula)
    violations = 0
    frames = 0
    for k in enumerate_frames(3):
        frames += 1
        for valuation in r_closed_subsets(k):
            model = HTModel(k, {"p": valuation})
            for f in corpus:
                good = sat_states(model, f)
                for w in good:
                    for u in k.successors(w):
                        if u not in good:
                            violations += 1
    report(
        5,
        "heredity",
        violations == 0,
        f"{frames} frames x {len(corpus)} formulas",
    )
    assert violations == 0


def test_criterion_6_decidability_cross_check():
    frames = list(enumerate_frames(2))
    corpus = set(enumerate_formulas(2, ["p"]))
    corpus.update(random_formulas(2_000, 4, ["p"], seed=47, distinct=True))
    corpus = sorted(corpus, key=render_formula)
    disagreements = 0
    bad_countermodels = 0
    for f in corpus:
        result = decide_validity(f)
        relational = all(frame_valid(k, f).holds for k in frames)
        if result.holds != relational:
            disagreements += 1
        if not result.holds:
            if model_truth(result.countermodel, f).holds:
                bad_countermodels += 1
    ok = disagreements == 0 and bad_countermodels == 0
    report(
        6,
        "decidability cross-check",
        ok,
        f"{len(corpus)} formulas x {len(frames)} frames",
    )
    assert disagreements == 0
    assert bad_countermodels == 0


def test_criterion_7_spot_verdicts():
    valid = [
        "S1 p -> p",
        "p -> S2 p",
        "S1 p | ~S1 p",
        "p -> ~~p",
        "((p -> r) -> q) -> (((q -> p) -> q) -> q)",
    ]
    refuted = ["p | ~p", "~~p -> p", "S2 p -> p"]
    wrong = []
    for text in valid:
        if not decide_validity(parse_formula(text)).holds:
            wrong.append(text)
    for text in refuted:
        result = decide_validity(parse_formula(text))
        if result.holds or result.counter_assignment is None or result.countermodel is None:
            wrong.append(text)
    report(7, "spot verdicts", not wrong, f"{len(valid)} valid + {len(refuted)} refuted")
    assert not wrong, wrong


def test_criterion_8_parser_round_trip():
    names = ["p", "q", "r", "x1", "state_2", "a"]
    corpus = random_formulas(10_000, 8, names, seed=53)
    failures = sum(
        1 for f in corpus if parse_formula(render_formula(f)) != f
    )
    report(8, "parser round-trip", failures == 0, f"{len(corpus)} ASTs")
    assert failures == 0
