"""Witness construction, evaluation, verification, search and the roundtrip."""

import itertools

import pytest
from helpers import a1_target_instance, cancellation_instance, sum_gadget_instance

from heismem.dioph import brute_solutions, parse_equation
from heismem.heis import B, PowerElem
from heismem.reduction import ADD, MUL, compile_instance
from heismem.skolem import check_assignment, lift_solution, normalize_equation
from heismem.witness import (
    Word,
    WitnessError,
    block_witness,
    bounded_membership_search,
    build_witness,
    component_provenance,
    evaluate_word,
    reduction_roundtrip,
    verify_witness,
)


def test_build_witness_add_block_slot_count():
    ns = normalize_equation(parse_equation("x + y = 2"), nonneg=True)
    inst = compile_instance(ns)
    word = build_witness(inst, {1: 1, 2: 1, 3: 2})
    assert len(word.steps) == 7
    assert word.length == 9  # 1 + 1 + 2 + 1 + 1 + 1 + 2


def test_build_witness_zero_assignment_keeps_f_slots():
    ns = normalize_equation(parse_equation("x*y = 0"), nonneg=True)
    inst = compile_instance(ns)
    word = build_witness(inst, {1: 0, 2: 0, 3: 0})
    assert len(word.steps) == 14
    nonzero = [inst.generators[i].name for i, m in word if m]
    assert nonzero == ["f1", "f2", "f3", "f4"]
    assert word.length == 4
    report = verify_witness(inst, word)
    assert report.ok  # 0 * 0 = 0 and the constant is 0


def test_cancellation_witness_shape():
    inst = cancellation_instance()
    word = Word(((0, 3), (1, 1), (2, 3)))  # (ac)^3 b a^-3
    assert evaluate_word(inst, word) == PowerElem(1, {1: B})
    assert verify_witness(inst, word).ok


def test_evaluate_empty_word_is_identity():
    inst = cancellation_instance()
    assert evaluate_word(inst, Word(())) == PowerElem(1)


def test_evaluate_rejects_bad_index():
    inst = cancellation_instance()
    with pytest.raises(WitnessError):
        evaluate_word(inst, Word(((7, 1),)))
    with pytest.raises(WitnessError):
        Word(((0, -1),))


def test_add_template_off_by_one_differs_in_bookkeeping_component():
    ns = normalize_equation(parse_equation("x + y = 2"), nonneg=True)
    inst = compile_instance(ns)
    word = build_witness(inst, {1: 1, 2: 1, 3: 1})  # violates 1 + 1 = 1
    report = verify_witness(inst, word)
    # the block's 4th copy catches the broken sum; the constant differs too
    components = [entry.component for entry in report.entries]
    assert 4 in components
    assert component_provenance(inst, 4) == "add block 1, copy 4"


def test_verified_witness_from_true_solution():
    eq = parse_equation("x*y = 6")
    ns = normalize_equation(eq)
    inst = compile_instance(ns)
    lifted = lift_solution(eq, {"x": 2, "y": 3}, ns)
    assert verify_witness(inst, build_witness(inst, lifted)).ok


def test_single_equality_violation_is_localized():
    ns = normalize_equation(parse_equation("x^2 = 4"), nonneg=True)
    inst = compile_instance(ns)
    assert (inst.e, inst.d, inst.q) == (1, 0, 1)
    good = {1: 2, 2: 2, 3: 4}
    assert check_assignment(ns, good)
    assert verify_witness(inst, build_witness(inst, good)).ok
    # 1 * 4 = 4 still satisfies the product and the constant, but not z1 = z2
    skewed = {1: 1, 2: 4, 3: 4}
    report = verify_witness(inst, build_witness(inst, skewed))
    assert [entry.component for entry in report.entries] == [9]
    assert report.entries[0].provenance == "equality marker P2"


def test_wrong_constant_is_localized():
    ns = normalize_equation(parse_equation("x*y = 2"), nonneg=True)
    inst = compile_instance(ns)
    report = verify_witness(inst, build_witness(inst, {1: 1, 2: 3, 3: 3}))
    assert [entry.component for entry in report.entries] == [inst.n]
    assert report.entries[0].provenance == "constant marker"


def test_template_grid_matches_assignment_check():
    for text, kind in (("x*y = 2", MUL), ("x + y = 3", ADD)):
        ns = normalize_equation(parse_equation(text), nonneg=True)
        inst = compile_instance(ns)
        for values in itertools.product(range(5), repeat=3):
            s = {1: values[0], 2: values[1], 3: values[2]}
            ok = verify_witness(inst, build_witness(inst, s)).ok
            assert ok == check_assignment(ns, s), (text, values)


def test_block_segments_commute_across_blocks():
    eq = parse_equation("x*y - z = 0")
    ns = normalize_equation(eq)
    inst = compile_instance(ns)
    lifted = lift_solution(eq, {"x": 2, "y": 3, "z": 6}, ns)
    segments = [block_witness(inst, MUL, i, lifted) for i in range(1, inst.e + 1)]
    segments += [block_witness(inst, ADD, j, lifted) for j in range(1, inst.d + 1)]
    value = evaluate_word(inst, Word(tuple(step for seg in segments for step in seg)))
    reversed_value = evaluate_word(
        inst, Word(tuple(step for seg in reversed(segments) for step in seg))
    )
    assert value == reversed_value == inst.target


def test_search_finds_generator_target_immediately():
    inst = cancellation_instance()
    result = bounded_membership_search(inst, 7)
    assert result.found
    assert result.word.length == 1
    assert evaluate_word(inst, result.word) == inst.target


def test_search_sum_gadget_target():
    inst = sum_gadget_instance()
    result = bounded_membership_search(inst, 9, all_shortest=True)
    assert result.found
    for word in result.all_shortest:
        assert evaluate_word(inst, word) == inst.target
    # the shortest witness is the bare f1 = b1 b2 b3, the all-zero template
    assert result.word.length == 1
    assert inst.generators[result.word.steps[0][0]].name == "f1"


def test_search_absent_target_within_bounds():
    inst = a1_target_instance()
    result = bounded_membership_search(inst, 6)
    assert result.status == "not_found"
    assert result.word is None


def test_search_state_cap_is_inconclusive():
    inst = sum_gadget_instance()
    result = bounded_membership_search(inst, 9, state_cap=3)
    assert result.status == "inconclusive"


def test_search_finds_balanced_three_letter_witness():
    # b*c is only reachable as (ac) a^-1 b: one exponent-balanced round trip
    base = cancellation_instance()
    from heismem.reduction import ReductionInstance
    from heismem.heis import HeisElem

    inst = ReductionInstance(
        n=1, generators=base.generators, target=PowerElem(1, {1: HeisElem(0, 1, 1)})
    )
    result = bounded_membership_search(inst, 5)
    assert result.found
    assert result.word.length == 3
    assert evaluate_word(inst, result.word) == inst.target


def test_roundtrip_solvable_equations():
    for text, box in (("x + y = 3", 3), ("x*y = 6", 6)):
        report = reduction_roundtrip(text, box)
        assert report.status == "member"
        assert report.verified
        assert report.generator_count == 14 * report.e + 7 * report.d
        assert report.n == 8 * report.e + 4 * report.d + report.q + 1


def test_roundtrip_unsolvable_with_search():
    report = reduction_roundtrip("x^2 = 2", box=10, search_len=3)
    assert report.status == "no-solution-consistent"
    assert not report.solvable_in_box
    assert report.search.status == "not_found"


def test_roundtrip_every_box_solution_lifts_and_verifies():
    eq = parse_equation("x^2 + y^2 = 5")
    ns = normalize_equation(eq)
    inst = compile_instance(ns)
    count = 0
    for solution in brute_solutions(eq, 5):
        lifted = lift_solution(eq, solution, ns)
        assert verify_witness(inst, build_witness(inst, lifted)).ok
        count += 1
    assert count == 8  # (+-1, +-2) and (+-2, +-1)


def test_degenerate_instance_witness():
    ns = normalize_equation(parse_equation("x = 3"), nonneg=True)
    inst = compile_instance(ns)
    word = build_witness(inst, {})
    assert word.steps == ((0, 3),)
    assert verify_witness(inst, word).ok


def test_discrepancy_report_renders_table():
    ns = normalize_equation(parse_equation("x*y = 2"), nonneg=True)
    inst = compile_instance(ns)
    report = verify_witness(inst, build_witness(inst, {1: 2, 2: 2, 3: 4}))
    text = report.render()
    assert "constant marker" in text
    assert "component" in text
