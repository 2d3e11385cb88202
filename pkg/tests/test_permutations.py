import pytest

from src.core.permgrp.permutations import (
    cycle_notation,
    cycle_type,
    from_cycles,
    identity_permutation,
    image_array,
    parse_cycles,
    shift,
)


def test_cycle_notation_uses_one_based_points():
    p = from_cycles([(1, 2, 3), (4, 5, 6)], 6)
    assert cycle_notation(p) == "(1 2 3)(4 5 6)"


def test_identity_prints_as_empty_cycle():
    assert cycle_notation(identity_permutation(4)) == "()"


def test_parse_compact_and_spaced_forms_agree():
    spaced = parse_cycles("(1 2 3)(4 5 6)", 6)
    compact = parse_cycles("(123)(456)", 6)
    assert spaced == compact == from_cycles([(1, 2, 3), (4, 5, 6)], 6)


def test_parse_identity_aliases():
    for text in ("()", "e", "id", ""):
        assert parse_cycles(text, 3) == identity_permutation(3)


def test_compact_notation_rejected_above_degree_nine():
    with pytest.raises(ValueError):
        parse_cycles("(123)", 10)
    assert cycle_notation(parse_cycles("(1 2 10)", 10)) == "(1 2 10)"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cycles("1 2 3", 3)


def test_from_cycles_rejects_bad_points():
    with pytest.raises(ValueError):
        from_cycles([(1, 4)], 3)
    with pytest.raises(ValueError):
        from_cycles([(1, 2), (2, 3)], 3)


def test_image_array_is_one_based():
    p = from_cycles([(1, 2, 3)], 3)
    assert image_array(p) == [2, 3, 1]


def test_product_is_left_then_right():
    """p * q applies p first: (1 2) then (2 3) sends 1 -> 3."""
    p = from_cycles([(1, 2)], 3)
    q = from_cycles([(2, 3)], 3)
    assert image_array(p * q) == [3, 1, 2]


def test_conjugation_relabels_symbols():
    x = from_cycles([(1, 2, 3)], 4)
    h = from_cycles([(3, 4)], 4)
    assert x ^ h == from_cycles([(1, 2, 4)], 4)


def test_cycle_type_ignores_fixed_points():
    assert cycle_type(from_cycles([(1, 2, 3), (4, 5, 6)], 7)) == (3, 3)
    assert cycle_type(identity_permutation(5)) == ()


def test_shift_moves_permutation_into_larger_degree():
    p = from_cycles([(1, 2)], 2)
    assert shift(p, 2, 5) == from_cycles([(3, 4)], 5)
    with pytest.raises(ValueError):
        shift(p, 4, 5)
