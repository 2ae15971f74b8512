"""Core types, line extraction, and the alternating-sign validators."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ashmlab.core import (
    Line,
    ParseError,
    SignMatrix,
    SignTensor,
    dumps_ashm_json,
    dumps_ashm_txt,
    extract_line,
    is_alternating_unit_line,
    is_alternating_unit_line_by_prefix_sums,
    loads_ashm_json,
    loads_ashm_txt,
    validate_ashm,
    validate_asm,
)
from ashmlab.construct import fixture

S1_PLANES = [
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    [[0, 1, 0], [1, -1, 1], [0, 1, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
]


@pytest.fixture
def s1():
    return SignTensor.from_planes(S1_PLANES)


def test_entries_are_one_based(s1):
    assert s1.entry(2, 2, 2) == -1
    assert s1.entry(1, 3, 1) == 1
    assert s1.plane(2).entry(2, 1) == 1


def test_alphabet_is_enforced():
    with pytest.raises(ValueError, match="out of range"):
        SignMatrix([[0, 2], [1, 0]])
    with pytest.raises(ValueError, match="out of range"):
        SignTensor(np.full((2, 2, 2), -3))


def test_vertical_line_of_worked_tensor(s1):
    line = extract_line(s1, "vertical", 2, 2)
    assert line.entries == (1, -1, 1)
    assert line.kind == "vertical"
    assert line.coordinates == (2, 2)


def test_single_entry_tensor_lines():
    t = SignTensor([[[1]]])
    for kind in ("row", "column", "vertical"):
        assert extract_line(t, kind, 1, 1).entries == (1,)


def test_identity_stack_vertical_readoff():
    planes = [np.eye(3, dtype=int)] * 3
    t = SignTensor.from_planes(planes)
    assert extract_line(t, "vertical", 1, 1).entries == (1, 1, 1)


def test_extract_line_rejects_bad_indices(s1):
    with pytest.raises(IndexError):
        extract_line(s1, "row", 0, 2)
    with pytest.raises(IndexError):
        extract_line(s1, "vertical", 2, 4)
    with pytest.raises(ValueError):
        extract_line(s1, "diagonal", 1, 1)


@pytest.mark.parametrize(
    "line,expected",
    [
        ((1, -1, 1), True),
        ((0, 0, 1), True),
        ((1, 1, -1), False),
        ((0, 0, 0), False),
        ((-1, 1, 1), False),
        ((1, 0, -1, 0, 1), True),
        ((1, -1, 1, -1), False),
    ],
)
def test_alternating_unit_line_cases(line, expected):
    assert is_alternating_unit_line(line) is expected
    assert is_alternating_unit_line_by_prefix_sums(line) is expected


@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=0, max_size=12))
def test_alternating_formulations_agree(line):
    # the direct-scan and prefix-sum definitions are the same predicate
    assert is_alternating_unit_line(line) == is_alternating_unit_line_by_prefix_sums(line)


def test_validate_asm_examples():
    assert validate_asm(SignMatrix([[0, 1, 0], [1, -1, 1], [0, 1, 0]]))
    assert validate_asm(SignMatrix(np.eye(5, dtype=int)))
    assert not validate_asm(SignMatrix([[1, -1], [-1, 1]]))


def test_validate_asm_implies_unit_line_sums():
    m = SignMatrix([[0, 1, 0], [1, -1, 1], [0, 1, 0]])
    assert validate_asm(m)
    assert (m.a.sum(axis=0) == 1).all() and (m.a.sum(axis=1) == 1).all()


def test_validate_ashm_worked_example(s1):
    assert validate_ashm(s1).valid


def test_validate_ashm_reports_all_failing_lines():
    t = SignTensor.from_planes([np.eye(2, dtype=int)] * 2)
    report = validate_ashm(t)
    assert not report.valid
    # the diagonal verticals sum to 2; the off-diagonal ones are all-zero
    # lines, which fail the alternating-unit predicate just as hard
    assert {("vertical", 1, 1), ("vertical", 2, 2)} <= set(report.failing_lines)
    assert set(report.failing_lines) == {("vertical", i, j) for i in (1, 2) for j in (1, 2)}


def test_ashm_planes_are_asms(s1):
    # plane rows/columns are hypermatrix column/row lines
    report = validate_ashm(s1)
    assert report.valid
    for plane in s1.planes():
        assert validate_asm(plane)


def test_max_entry_construction_validates():
    from ashmlab.construct import max_entry_ashm

    assert validate_ashm(max_entry_ashm(7)).valid


def test_fixture_roundtrips_through_text_and_json():
    t = fixture("n11_B")
    assert loads_ashm_txt(dumps_ashm_txt(t)) == t
    assert loads_ashm_json(dumps_ashm_json(t)) == t


def test_text_parser_rejects_out_of_range_and_reports_position():
    with pytest.raises(ParseError, match="line 3"):
        loads_ashm_txt("1\n\n2\n")
    with pytest.raises(ParseError, match="not an integer"):
        loads_ashm_txt("1\n\nx\n")
    with pytest.raises(ParseError, match="expected 8 entries"):
        loads_ashm_txt("2\n1 0\n0 1\n")


def test_text_parser_honours_comments():
    text = "# a comment\n1\n# another\n1\n"
    assert loads_ashm_txt(text).n == 1


def test_json_parser_rejects_bad_shapes():
    with pytest.raises(ParseError):
        loads_ashm_json('{"n": 2, "planes": [[[1, 0], [0, 1]]]}')
    with pytest.raises(ParseError):
        loads_ashm_json('{"planes": []}')
    with pytest.raises(ParseError, match="outside"):
        loads_ashm_json('{"n": 1, "planes": [[[7]]]}')


def test_tensors_are_immutable_and_hashable(s1):
    with pytest.raises(ValueError):
        s1.a[0, 0, 0] = 1
    assert s1 == SignTensor.from_planes(S1_PLANES)
    assert len({s1, SignTensor.from_planes(S1_PLANES)}) == 1


def test_line_is_iterable():
    line = Line((1, 0, -1), "row", (1, 1))
    assert list(line) == [1, 0, -1]
    assert len(line) == 3
