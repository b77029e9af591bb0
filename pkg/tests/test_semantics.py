import random

import pytest

from dalc.concepts import (
    And,
    Atom,
    BOTTOM,
    DCI,
    Exists,
    Forall,
    GCI,
    KnowledgeBase,
    Not,
    TOP,
)
from dalc.ranks import Rank
from dalc.semantics import (
    FiniteInterpretation,
    NotModularError,
    PreferentialInterpretation,
    RankedInterpretation,
    _search_naive,
    check_postulates,
    convex_height_vectors,
    disjoint_union,
    enumerate_models,
    extension,
    height_of_concept,
    heights_from_order,
    min_elements,
    order_from_heights,
    random_concept,
    random_ranked_interpretation,
    ranked_union,
    satisfies,
    satisfies_all,
    search_countermodel,
    search_model,
)

import corpus


def scenario_interpretation() -> FiniteInterpretation:
    """The eleven-element tax-scenario interpretation (x0..x10)."""
    return FiniteInterpretation(
        11,
        {
            "Employee": frozenset({1, 2, 5, 9}),
            "Company": frozenset({6, 10}),
            "Student": frozenset({1, 5, 7, 8}),
            "EmpStud": frozenset({1, 5}),
            "Parent": frozenset({1, 2, 3}),
            "Tax": frozenset({4}),
        },
        {
            "pays": frozenset({(1, 0), (5, 4)}),
            "empBy": frozenset({(9, 10)}),
            "worksFor": frozenset({(5, 6), (9, 10)}),
        },
    )


# preference arrows drawn in the scenario's preferential variant
SCENARIO_ORDER = frozenset(
    {(7, 5), (8, 5), (9, 5), (5, 1), (7, 1), (8, 1), (9, 1), (9, 2), (10, 6)}
)


def flat(base: FiniteInterpretation) -> RankedInterpretation:
    return RankedInterpretation(base, (0,) * base.domain_size)


def strip_heights(n: int, order) -> tuple[int, ...]:
    """Layer-stripping construction: repeatedly remove minimal elements.

    Used here as the test's own derivation of heights from a drawn order
    (works for any finite strict partial order, modular or not).
    """
    pairs = set(order)
    heights = [0] * n
    remaining = set(range(n))
    level = 0
    while remaining:
        minima = {x for x in remaining if not any((y, x) in pairs for y in remaining)}
        for x in minima:
            heights[x] = level
        remaining -= minima
        level += 1
    return tuple(heights)


def test_scenario_extensions():
    i = flat(scenario_interpretation())
    assert extension(i, And(Atom("Parent"), Atom("Employee"))) == {1, 2}
    assert extension(i, Exists("pays", Atom("Tax"))) == {5}
    assert extension(i, TOP) == set(range(11))
    assert extension(i, BOTTOM) == set()
    assert extension(i, Atom("Missing")) == set()


def test_scenario_satisfaction():
    i = flat(scenario_interpretation())
    assert satisfies(i, GCI(Atom("EmpStud"), And(Atom("Student"), Atom("Employee"))))
    assert not satisfies(i, GCI(Atom("Student"), Not(Exists("pays", Atom("Tax")))))


def test_min_elements_simple():
    base = FiniteInterpretation(2, {"A": frozenset({0, 1})}, {})
    i = RankedInterpretation(base, (2, 0)) if False else RankedInterpretation(
        FiniteInterpretation(3, {"A": frozenset({0, 2})}, {}), (2, 1, 0)
    )
    # extension {0 (height 2), 2 (height 0)}: unique minimum
    assert min_elements(i, Atom("A")) == {2}
    assert min_elements(i, Atom("B")) == set()


def test_min_elements_scenario_preferential_order():
    # heights derived by the stripping construction from the drawn arrows
    heights = strip_heights(11, SCENARIO_ORDER)
    assert heights[7] == heights[8] == 0 and heights[5] == 1 and heights[1] == 2
    i = RankedInterpretation(scenario_interpretation(), heights)
    assert min_elements(i, Atom("Student")) == {7, 8}
    # the preferential reading of the same arrows agrees
    p = PreferentialInterpretation(scenario_interpretation(), SCENARIO_ORDER)
    assert min_elements(p, Atom("Student")) == {7, 8}


def test_satisfies_dci():
    base = FiniteInterpretation(1, {"A": frozenset({0}), "B": frozenset({0})}, {})
    i = RankedInterpretation(base, (0,))
    assert satisfies(i, DCI(Atom("A"), Atom("A")))
    assert not satisfies(i, DCI(Atom("A"), Not(Atom("B"))))


def test_reflexivity_holds_everywhere():
    rng = random.Random(1)
    for _ in range(50):
        i = random_ranked_interpretation(rng, rng.randrange(1, 5), ["A", "B"], ["r"])
        c = random_concept(rng, ["A", "B"], ["r"], 2)
        assert satisfies(i, DCI(c, c))


def test_height_of_concept():
    base = FiniteInterpretation(2, {"A": frozenset({1})}, {})
    i = RankedInterpretation(base, (0, 1))
    assert height_of_concept(i, TOP) == Rank.finite(0)
    assert height_of_concept(i, BOTTOM) == Rank.infinite()
    assert height_of_concept(i, Atom("A")) == Rank.finite(1)


def test_smoothness_on_finite_domains():
    rng = random.Random(5)
    for _ in range(100):
        i = random_ranked_interpretation(rng, rng.randrange(1, 5), ["A", "B", "C"], ["r"])
        c = random_concept(rng, ["A", "B", "C"], ["r"], 2)
        ext = extension(i, c)
        mins = min_elements(i, c)
        assert (ext == set()) == (mins == set())
        assert mins <= ext


def test_ranked_interpretation_validation():
    base = FiniteInterpretation(2, {}, {})
    with pytest.raises(ValueError):
        RankedInterpretation(base, (0, 2))  # gap at 1
    with pytest.raises(ValueError):
        RankedInterpretation(base, (1, 1))  # no layer 0
    with pytest.raises(ValueError):
        FiniteInterpretation(0, {}, {})


def test_heights_from_order_total_incomparability():
    assert heights_from_order(3, []) == (0, 0, 0)


def test_heights_from_order_chain():
    assert heights_from_order(3, [(0, 1), (1, 2), (0, 2)]) == (0, 1, 2)


def test_heights_from_order_fork():
    # two incomparable minima below a single top element
    assert heights_from_order(3, [(0, 2), (1, 2)]) == (0, 0, 1)


def test_heights_from_order_rejects_non_modular():
    with pytest.raises(NotModularError) as exc:
        heights_from_order(3, [(0, 1)])
    assert len(exc.value.triple) == 3


def test_heights_from_order_rejects_non_transitive():
    with pytest.raises(NotModularError):
        heights_from_order(3, [(0, 1), (1, 2)])


def test_heights_from_order_rejects_reflexive_pair():
    with pytest.raises(NotModularError):
        heights_from_order(2, [(0, 0)])


def test_heights_order_round_trip():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randrange(1, 6)
        raw = [rng.randrange(n) for _ in range(n)]
        levels = {h: k for k, h in enumerate(sorted(set(raw)))}
        heights = tuple(levels[h] for h in raw)
        assert heights_from_order(n, order_from_heights(heights)) == heights


def test_disjoint_union_lifts_extensions_componentwise():
    rng = random.Random(2)
    for _ in range(30):
        parts = [
            random_ranked_interpretation(rng, rng.randrange(1, 4), ["A", "B"], ["r"]).as_preferential()
            for _ in range(rng.randrange(1, 4))
        ]
        u = disjoint_union(parts)
        c = random_concept(rng, ["A", "B"], ["r"], 2)
        offset = 0
        for p in parts:
            lifted = {offset + x for x in extension(p, c)}
            assert lifted == {e for e in extension(u, c) if offset <= e < offset + p.base.domain_size}
            offset += p.base.domain_size


def test_disjoint_union_of_one_is_itself():
    rng = random.Random(3)
    p = random_ranked_interpretation(rng, 3, ["A"], ["r"]).as_preferential()
    u = disjoint_union([p])
    assert u.base == p.base and u.order == p.order


def test_disjoint_union_preserves_models():
    kb = corpus.student_kb()
    models = enumerate_models(kb, 2, 6)
    assert models
    u = disjoint_union([m.as_preferential() for m in models])
    assert satisfies_all(u, kb.axioms)


def test_ranked_union_preserves_models():
    kb = corpus.penguin_kb()
    models = enumerate_models(kb, 2, 6)
    assert models
    u = ranked_union(models)
    assert satisfies_all(u, kb.axioms)


def test_ranked_union_of_one_is_itself():
    rng = random.Random(4)
    r = random_ranked_interpretation(rng, 3, ["A"], ["r"])
    u = ranked_union([r])
    assert u.base == r.base and u.heights == r.heights


def test_ranked_union_concept_height_is_min_over_components():
    rng = random.Random(6)
    for _ in range(30):
        parts = [
            random_ranked_interpretation(rng, rng.randrange(1, 4), ["A", "B"], ["r"])
            for _ in range(rng.randrange(1, 4))
        ]
        u = ranked_union(parts)
        c = random_concept(rng, ["A", "B"], ["r"], 2)
        assert height_of_concept(u, c) == min(height_of_concept(p, c) for p in parts)


def test_convex_height_vectors_count():
    # ordered Bell numbers: 1, 3, 13, 75
    assert [len(convex_height_vectors(n)) for n in (1, 2, 3, 4)] == [1, 3, 13, 75]


def test_search_model_running_example():
    res = search_model(corpus.student_kb(), 3)
    assert res.found
    assert satisfies_all(res.interpretation, corpus.student_kb().axioms)


def test_search_model_unsatisfiable_kb():
    kb = KnowledgeBase(tbox=(GCI(TOP, BOTTOM),))
    for bound in (1, 2, 3):
        assert not search_model(kb, bound).found


def test_search_model_empty_kb():
    res = search_model(KnowledgeBase(), 3)
    assert res.found
    assert res.interpretation.base.domain_size == 1
    assert res.interpretation.heights == (0,)


def test_search_countermodel_examples():
    kb = corpus.student_kb()
    # the minimal employed students pay tax, so this query has countermodels
    q = DCI(Atom("EmpStud"), Not(Exists("pays", Atom("Tax"))))
    res = search_countermodel(kb, q, 3)
    assert res.found
    assert satisfies_all(res.interpretation, kb.axioms)
    assert not satisfies(res.interpretation, q)


def test_search_countermodel_reflexivity_absent():
    q = DCI(Atom("C"), Atom("C"))
    for bound in (1, 2, 3):
        assert not search_countermodel(KnowledgeBase(), q, bound).found


def test_search_countermodel_entailed_gci_absent():
    kb = KnowledgeBase(tbox=(GCI(Atom("A"), Atom("B")),))
    assert not search_countermodel(kb, GCI(Atom("A"), Atom("B")), 3).found


def test_search_matches_naive_enumeration():
    rng = random.Random(0)
    atoms, roles = ["A", "B"], ["r"]
    for _ in range(25):
        tbox = tuple(
            GCI(random_concept(rng, atoms, roles, 1), random_concept(rng, atoms, roles, 1))
            for _ in range(rng.randrange(2))
        )
        dtbox = tuple(
            DCI(random_concept(rng, atoms, roles, 1), random_concept(rng, atoms, roles, 1))
            for _ in range(rng.randrange(3))
        )
        kb = KnowledgeBase(tbox, dtbox)
        if rng.random() < 0.4:
            q = None
        else:
            ctor = DCI if rng.random() < 0.7 else GCI
            q = ctor(
                random_concept(rng, atoms, roles, 1),
                random_concept(rng, atoms, roles, 1),
            )
        naive = _search_naive(kb, q, 2)
        fast = search_model(kb, 2) if q is None else search_countermodel(kb, q, 2)
        assert (naive is not None) == fast.found
        if fast.found:
            assert satisfies_all(fast.interpretation, kb.axioms)
            if q is not None:
                assert not satisfies(fast.interpretation, q)


def test_search_matches_naive_with_nested_quantifiers():
    rng = random.Random(42)
    atoms, roles = ["A", "B"], ["r"]
    for _ in range(10):
        dtbox = tuple(
            DCI(random_concept(rng, atoms, roles, 2), random_concept(rng, atoms, roles, 2))
            for _ in range(rng.randrange(3))
        )
        kb = KnowledgeBase(dtbox=dtbox)
        q = DCI(
            random_concept(rng, atoms, roles, 2), random_concept(rng, atoms, roles, 2)
        )
        naive = _search_naive(kb, q, 2)
        fast = search_countermodel(kb, q, 2)
        assert (naive is not None) == fast.found


def test_chunked_scan_matches_single_chunk(monkeypatch):
    # force tiny row blocks so the search crosses chunk boundaries, and
    # compare against the one-chunk run on KBs where that changes nothing
    import dalc.semantics as sem

    kb = corpus.student_kb()
    q = DCI(Atom("EmpStud"), Not(Exists("pays", Atom("Tax"))))
    base_model = search_model(kb, 2)
    base_counter = search_countermodel(kb, q, 2)
    monkeypatch.setattr(sem, "_CHUNK_BITS", 6)
    chunked_model = search_model(kb, 2)
    chunked_counter = search_countermodel(kb, q, 2)
    assert chunked_model.found == base_model.found
    assert chunked_counter.found == base_counter.found
    assert satisfies_all(chunked_counter.interpretation, kb.axioms)
    assert not satisfies(chunked_counter.interpretation, q)
    # exhaustive absence is chunk-invariant too
    bad = KnowledgeBase(tbox=(GCI(TOP, BOTTOM),))
    assert not search_model(bad, 3).found


def test_interpretation_json_dump():
    base = FiniteInterpretation(
        3, {"A": frozenset({0, 2})}, {"r": frozenset({(0, 1)})}
    )
    i = RankedInterpretation(base, (0, 1, 0))
    assert i.to_json_dict() == {
        "domain": 3,
        "atoms": {"A": [0, 2]},
        "roles": {"r": [[0, 1]]},
        "heights": [0, 1, 0],
    }


def test_postulates_hold_on_random_interpretations():
    rng = random.Random(0)
    for _ in range(150):
        i = random_ranked_interpretation(rng, rng.randrange(1, 5), ["A", "B", "C"], ["r", "s"])
        samples = [random_concept(rng, ["A", "B", "C"], ["r", "s"], 2) for _ in range(4)]
        assert check_postulates(i, samples) == []


def test_cons_never_satisfied():
    rng = random.Random(8)
    for _ in range(30):
        i = random_ranked_interpretation(rng, rng.randrange(1, 5), ["A"], ["r"])
        assert not satisfies(i, DCI(TOP, BOTTOM))


def test_classical_gci_equals_bottom_dci():
    # per-interpretation equivalence of C [= D and C & !D ~[= bot
    rng = random.Random(12)
    for _ in range(100):
        i = random_ranked_interpretation(rng, rng.randrange(1, 5), ["A", "B"], ["r"])
        c = random_concept(rng, ["A", "B"], ["r"], 2)
        d = random_concept(rng, ["A", "B"], ["r"], 2)
        assert satisfies(i, GCI(c, d)) == satisfies(i, DCI(And(c, Not(d)), BOTTOM))


def test_quantified_rm_premise_needs_the_conjunction():
    """Weakening the quantified rational-monotonicity premise from
    ¬(conclusion antecedent) to a bare ¬D filler admits countermodels; this
    two-element ranked interpretation is one, pinning why check_postulates
    uses the conjunction in the negated premise."""
    base = FiniteInterpretation(2, {"P": frozenset({0})}, {"r": frozenset({(0, 0), (0, 1)})})
    i = RankedInterpretation(base, (0, 1))
    p = Atom("P")
    fa = Forall("r", TOP)
    # weak-premise variant fires: premise 1 holds, weak negated premise holds
    assert satisfies(i, DCI(fa, p))
    assert not satisfies(i, DCI(fa, Forall("r", Not(p))))
    # ... but the conclusion fails
    assert not satisfies(i, DCI(Forall("r", And(TOP, p)), p))
    # with the conjunction, the negated premise no longer holds, so the rule
    # does not apply here (and check_postulates reports no violation)
    assert satisfies(i, DCI(fa, Exists("r", Not(And(TOP, p)))))
    assert check_postulates(i, [TOP, p], which=("rm_exists", "rm_forall")) == []
