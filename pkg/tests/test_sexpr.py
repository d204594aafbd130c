"""Term syntax: parsing, printing, and error offsets."""

import pytest
from hypothesis import given

from conftest import term_strategy
from quotients.errors import ParseError
from quotients.messages import Crypt, Decrypt, MPair, Nonce
from quotients.sexpr import SAtom, SList, parse_sexpr, parse_term, print_term


def test_parse_example():
    assert parse_term("(crypt 1 (decrypt 1 (nonce 5)))") == Crypt(1, Decrypt(1, Nonce(5)))


def test_whitespace_insensitive():
    assert parse_term(" ( mpair\n(nonce 1)\t(nonce 2) ) ") == MPair(Nonce(1), Nonce(2))


def test_arity_error_at_closing_paren():
    text = "(mpair (nonce 1))"
    with pytest.raises(ParseError) as exc:
        parse_term(text)
    assert exc.value.offset == len(text) - 1  # the outer ')'
    assert "mpair takes 2 arguments" in str(exc.value)


def test_unknown_constructor_named():
    with pytest.raises(ParseError) as exc:
        parse_term("(seal 1 (nonce 2))")
    assert "'seal'" in str(exc.value)
    assert exc.value.offset == 1


def test_negative_nonce_rejected():
    with pytest.raises(ParseError) as exc:
        parse_term("(nonce -3)")
    assert "natural" in str(exc.value)


def test_unbalanced_input():
    with pytest.raises(ParseError):
        parse_term("(mpair (nonce 1) (nonce 2)")
    with pytest.raises(ParseError) as exc:
        parse_term("(nonce 1))")
    assert exc.value.offset == len("(nonce 1)")


def test_trailing_form_rejected():
    with pytest.raises(ParseError):
        parse_term("(nonce 1) (nonce 2)")


def test_atom_is_not_a_term():
    with pytest.raises(ParseError):
        parse_term("nonce")
    with pytest.raises(ParseError):
        parse_term("()")


@given(term_strategy())
def test_round_trip(t):
    assert parse_term(print_term(t)) == t


def test_generic_sexpr_nodes():
    node = parse_sexpr("(+ 1 (neg -2))")
    assert isinstance(node, SList)
    head = node.items[0]
    assert isinstance(head, SAtom) and head.value == "+"
    assert node.items[1].value == 1
    inner = node.items[2]
    assert inner.items[0].value == "neg" and inner.items[1].value == -2
