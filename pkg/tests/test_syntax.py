import random

import pytest

from gemcheck import parse, print_formula
from gemcheck.syntax import (And, Eq, ExistsP, ForallI, FusionAtom, Implies,
                             Not, ParseError, PartAtom, PInter, PUnion,
                             Singleton, SortError, SubTerm, PVar)
from gemcheck.theory import theory_by_name, theory_names

from util import random_formula


def test_parse_ref_p():
    assert parse("forall x . P(x,x)") == ForallI("x", PartAtom("x", "x"))


def test_parse_id_f():
    got = parse("forall x . forall y . (F(I(y), x) -> x = y)")
    want = ForallI("x", ForallI("y", Implies(FusionAtom(Singleton("y"), "x"),
                                             Eq("x", "y"))))
    assert got == want


def test_sort_errors():
    with pytest.raises(SortError):
        parse("P(x, YY)")
    with pytest.raises(SortError):
        parse("x sub YY")
    with pytest.raises(SortError):
        parse("XX in YY")
    with pytest.raises(SortError):
        parse("F(x, y)")
    with pytest.raises(SortError):
        parse("forall x sub YY . P(x, x)")
    with pytest.raises(SortError):
        parse("forall XX in YY . XX sub YY")


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse("forall x .\n P(x,, x)")
    assert e.value.line == 2
    assert not isinstance(e.value, SortError)


def test_reserved_names_rejected():
    with pytest.raises(ParseError):
        parse("forall F . P(F, F)")
    with pytest.raises(ParseError):
        parse("forall in . P(in, in)")


def test_precedence():
    f = parse("P(x,y) -> O(x,y) -> x = y")
    assert isinstance(f, Implies) and isinstance(f.right, Implies)
    g = parse("not P(x,y) and O(x,y) or x = y")
    # not > and > or
    assert g == parse("((not P(x,y)) and O(x,y)) or (x = y)")
    h = parse("XX + YY & ZZ sub XX")
    assert h == SubTerm(PUnion(PVar("XX"), PInter(PVar("YY"), PVar("ZZ"))),
                        PVar("XX"))


def test_quantifier_scope_extends_right():
    f = parse("forall x . P(x,x) and O(x,x)")
    assert isinstance(f, ForallI) and isinstance(f.body, And)
    g = parse("(forall x . P(x,x)) and O(y,y)")
    assert isinstance(g, And)


def test_restricted_sugar_preserved():
    f = parse("exists VV sub U(ZZ) . F(VV, x)")
    assert isinstance(f, ExistsP) and f.bound is not None
    assert print_formula(f) == "exists VV sub U(ZZ) . F(VV, x)"


def test_not_equals_round_trip():
    f = parse("not x = y")
    assert isinstance(f, Not)
    assert parse(print_formula(f)) == f


def test_registry_round_trip():
    for name in theory_names():
        for nf in theory_by_name(name):
            assert parse(print_formula(nf.sentence)) == nf.sentence, nf.name


def test_random_round_trip():
    rng = random.Random(12345)
    for _ in range(1000):
        f = random_formula(rng, rng.randrange(7))
        assert parse(print_formula(f)) == f
