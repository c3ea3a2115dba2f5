import pytest

from gensim.algebra import (
    Algebra,
    AlgebraError,
    AlgebraParseError,
    Signature,
    SignatureMismatchError,
    make_algebra,
    parse_algebra,
    render_algebra,
    self_pair,
    validate_pair,
)


def two_chain(name="A"):
    return make_algebra(name, ["x", "y"], {"f": {"x": "y", "y": "y"}})


def test_parse_render_round_trip(chain5):
    assert parse_algebra(render_algebra(chain5)) == chain5


def test_fixture_contents(chain5):
    assert chain5.name == "Chain5"
    assert chain5.carrier == ("a", "b", "c", "d", "e")
    assert chain5.signature.operations == (("f", 1),)
    assert chain5.apply("f", ("e",)) == "c"
    assert chain5.constants == frozenset()


def test_parse_reports_line_numbers():
    text = "algebra A\nelements x y\nconstants none\nop f/1\n  x -> y\n  y -> z\nend\n"
    with pytest.raises(AlgebraParseError) as exc:
        parse_algebra(text)
    assert "line 6" in str(exc.value)
    assert "z" in str(exc.value)


def test_parse_missing_row():
    text = "algebra A\nelements x y\nconstants none\nop f/1\n  x -> y\nend\n"
    with pytest.raises(AlgebraParseError, match="missing table row"):
        parse_algebra(text)


def test_parse_duplicate_element():
    with pytest.raises(AlgebraParseError, match="duplicate element"):
        parse_algebra("algebra A\nelements x x\nconstants none\n")


def test_parse_binary_rows():
    text = (
        "algebra M\nelements 0 1\nconstants all\nop m/2\n"
        "  (0, 0) -> 0\n  (0, 1) -> 0\n  (1, 0) -> 0\n  (1, 1) -> 1\nend\n"
    )
    algebra = parse_algebra(text)
    assert algebra.apply("m", ("1", "1")) == "1"
    assert algebra.signature.constant_symbols == ("0", "1")
    assert parse_algebra(render_algebra(algebra)) == algebra


def test_parse_unknown_directive():
    with pytest.raises(AlgebraParseError, match="unknown directive"):
        parse_algebra("algebra A\nelements x\nconstants none\nbogus\n")


def test_comments_and_blank_lines_ignored(chain4_a):
    from gensim.corpus import fixture_text

    text = fixture_text("chain4_a.alg")
    assert "#" in text
    assert parse_algebra(text) == chain4_a


def test_signature_rejects_nullary_and_duplicates():
    with pytest.raises(AlgebraError, match="arity"):
        Signature((("c", 0),))
    with pytest.raises(AlgebraError, match="duplicate"):
        Signature((("f", 1), ("f", 2)))
    with pytest.raises(AlgebraError, match="variable"):
        Signature((("z1", 1),))
    with pytest.raises(AlgebraError, match="variable"):
        Signature((("f", 1),), ("z2",))


def test_algebra_requires_total_tables():
    with pytest.raises(AlgebraError, match="missing table row"):
        make_algebra("A", ["x", "y"], {"f": {"x": "y"}}, arities={"f": 1})


def test_algebra_rejects_out_of_carrier_output():
    with pytest.raises(AlgebraError, match="outside the carrier"):
        make_algebra("A", ["x"], {"f": {"x": "w"}})


def test_validate_pair_signature_mismatch():
    a = two_chain("A")
    b = make_algebra("B", ["x", "y"], {"g": {"x": "y", "y": "y"}})
    with pytest.raises(SignatureMismatchError, match="present in only one"):
        validate_pair(a, b)


def test_validate_pair_arity_mismatch():
    a = two_chain("A")
    b = make_algebra(
        "B", ["x", "y"], {"f": {("x", "x"): "y", ("x", "y"): "y",
                                ("y", "x"): "y", ("y", "y"): "y"}}
    )
    with pytest.raises(SignatureMismatchError, match="arity"):
        validate_pair(a, b)


def test_validate_pair_constant_symbols_must_agree():
    a = make_algebra("A", ["x", "y"], {"f": {"x": "y", "y": "y"}}, constants=["x"])
    b = make_algebra("B", ["x", "y"], {"f": {"x": "y", "y": "y"}}, constants=["y"])
    with pytest.raises(SignatureMismatchError, match="constant symbols differ"):
        validate_pair(a, b)


def test_constant_symbol_must_name_a_carrier_element():
    with pytest.raises(AlgebraError, match="not in carrier"):
        make_algebra("B", ["y"], {"f": {"y": "y"}}, constants=["x"])


def test_overlap_is_left_ordered(chain4_a, chain4_b):
    pair = validate_pair(chain4_a, chain4_b)
    assert pair.overlap == ("0", "1", "2", "3")
    assert pair.swapped().left is chain4_b


def test_self_pair(chain5):
    pair = self_pair(chain5)
    assert pair.left is pair.right is chain5
    assert pair.overlap == chain5.carrier


def test_index_and_require_element(chain5):
    assert chain5.index("c") == 2
    with pytest.raises(AlgebraError, match="not in carrier"):
        chain5.require_element("zz")
