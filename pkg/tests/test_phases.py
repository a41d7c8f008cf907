import itertools

import pytest
from hypothesis import given, settings, strategies as st

from stabcat.phases import (DuplicateElementError, EmptyBlockError, EnumerationUnsupportedError,
                            ExplicitOrder, IntegersOrder, LexProductOrder, MissingInnerOrderError,
                            OrderError, Phase, RationalsWithInfinityOrder, lex_product,
                            make_finite_order, order_from_json, refine_order)


def assert_total_order(order, elements):
    for a, b in itertools.product(elements, repeat=2):
        if a == b:
            assert not order.lt(a, b)
        else:
            assert order.lt(a, b) != order.lt(b, a)
    for a, b, c in itertools.product(elements, repeat=3):
        if order.lt(a, b) and order.lt(b, c):
            assert order.lt(a, c)


def test_make_finite_order_by_position():
    order = make_finite_order(["1", "2"])
    one, two = order.elements()
    assert order.lt(one, two) and not order.lt(two, one)


def test_two_phase_torsion_order():
    order = make_finite_order(["-", "+"])
    minus, plus = order.elements()
    assert order.lt(minus, plus)


def test_singleton_order():
    order = make_finite_order(["a"])
    assert len(order.elements()) == 1
    (a,) = order.elements()
    assert not order.lt(a, a)


def test_duplicate_label_rejected_with_offender():
    with pytest.raises(DuplicateElementError, match="b"):
        make_finite_order(["a", "b", "b"])


def test_explicit_carrier_cap():
    with pytest.raises(OrderError, match="cap"):
        ExplicitOrder([Phase.integer(i) for i in range(11)], max_size=10)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=7, unique=True))
def test_order_axioms_random_carriers(labels):
    order = make_finite_order([str(x) for x in labels])
    assert_total_order(order, order.elements())


def test_order_axioms_carrier_of_fifty():
    order = make_finite_order([f"e{i}" for i in range(50)])
    assert_total_order(order, order.elements())


def test_lex_product_constant_inner():
    outer = make_finite_order(["1", "2"])
    inner = make_finite_order(["a", "b"])
    lp = lex_product(outer, inner)
    els = lp.elements()
    assert [str(e) for e in els] == ["(1|a)", "(1|b)", "(2|a)", "(2|b)"]
    assert_total_order(lp, els)


def test_lex_product_rationals_with_infinity_outer():
    # the slope-times-points carrier: comparison only, no enumeration
    outer = RationalsWithInfinityOrder()
    inner = make_finite_order(["x", "y"])
    lp = lex_product(outer, inner)
    a = Phase.parse("(1/2|x)")
    b = Phase.parse("(3/2|x)")
    c = Phase.parse("(3/2|y)")
    d = Phase.parse("(inf|x)")
    assert lp.lt(a, b) and lp.lt(b, c) and lp.lt(c, d)
    with pytest.raises(EnumerationUnsupportedError):
        lp.elements()


def test_lex_product_singleton_outer_matches_inner():
    outer = make_finite_order(["q"])
    inner = make_finite_order(["a", "b", "c"])
    lp = lex_product(outer, inner)
    assert len(lp.elements()) == 3
    for x, y in itertools.combinations(inner.elements(), 2):
        q = outer.elements()[0]
        assert lp.lt(Phase.pair(q, x), Phase.pair(q, y)) == inner.lt(x, y)


def test_lex_product_missing_inner_names_element():
    outer = make_finite_order(["1", "2"])
    with pytest.raises(MissingInnerOrderError, match="2"):
        lex_product(outer, {Phase.integer(1): make_finite_order(["a"])})


def test_refine_order_blocks():
    base = make_finite_order(["1", "2"])
    one, two = base.elements()
    blocks = {one: make_finite_order(["a", "b"]), two: make_finite_order(["c"])}
    psi, r = refine_order(base, blocks)
    assert [str(e) for e in psi.elements()] == ["a", "b", "c"]
    assert {str(k): str(v) for k, v in r.items()} == {"a": "1", "b": "1", "c": "2"}


def test_refine_order_projection_monotone():
    base = make_finite_order(["1", "2", "3"])
    blocks = {ph: make_finite_order([f"{ph}L", f"{ph}R"]) for ph in base.elements()}
    psi, r = refine_order(base, blocks)
    for x, y in itertools.product(psi.elements(), repeat=2):
        if psi.lt(y, x):
            assert not base.lt(r[x], r[y])


def test_refine_order_two_element_split():
    base = make_finite_order(["phi"])
    (phi,) = base.elements()
    lo = Phase.pair(phi, Phase.label("lo"))
    hi = Phase.pair(phi, Phase.label("hi"))
    psi, r = refine_order(base, {phi: ExplicitOrder([lo, hi])})
    assert psi.lt(lo, hi) and r[lo] == phi and r[hi] == phi


def test_refine_order_singleton_blocks_round_trip():
    base = make_finite_order(["x", "y", "z"])
    blocks = {ph: ExplicitOrder([ph]) for ph in base.elements()}
    psi, r = refine_order(base, blocks)
    assert psi.elements() == base.elements()
    assert all(r[ph] == ph for ph in base.elements())


def test_refine_order_empty_block_names_phase():
    base = make_finite_order(["1", "2"])
    one, two = base.elements()
    with pytest.raises(EmptyBlockError, match="2"):
        refine_order(base, {one: make_finite_order(["a"]), two: ExplicitOrder([])})


def test_integers_order_compare_only():
    order = IntegersOrder()
    assert order.lt(Phase.integer(-3), Phase.integer(4))
    with pytest.raises(EnumerationUnsupportedError):
        order.elements()
    with pytest.raises(OrderError):
        order.lt(Phase.label("a"), Phase.integer(0))


def test_rationals_with_infinity():
    order = RationalsWithInfinityOrder()
    assert order.lt(Phase.rational(1, 2), Phase.rational(2, 3))
    assert order.lt(Phase.rational(7, 2), Phase.infinity())
    assert not order.lt(Phase.infinity(), Phase.rational(100))


@settings(max_examples=150, deadline=None)
@given(st.one_of(
    st.integers(-10**6, 10**6).map(Phase.integer),
    st.tuples(st.integers(-100, 100), st.integers(1, 100)).map(lambda t: Phase.rational(*t)),
    st.just(Phase.infinity()),
    st.text(alphabet="abcxyz_:+-", min_size=1, max_size=6).filter(
        lambda s: Phase.parse(s).kind == "label").map(Phase.label),
))
def test_phase_encode_parse_round_trip(phase):
    assert Phase.parse(phase.encode()) == phase


def test_pair_phase_round_trip():
    p = Phase.pair(Phase.infinity(), Phase.rational(1, 2))
    assert Phase.parse(p.encode()) == p
    nested = Phase.pair(Phase.pair(Phase.integer(1), Phase.label("a")), Phase.integer(2))
    assert Phase.parse(nested.encode()) == nested


def test_rational_phases_reduced():
    assert Phase.rational(2, 4) == Phase.rational(1, 2)
    assert Phase.rational(3, -6).encode() == "-1/2"


@pytest.mark.parametrize("doc", [
    {"kind": "integers"},
    {"kind": "rationals-with-infinity"},
    {"kind": "explicit-list", "elements": ["1", "a", "(inf|0)"]},
])
def test_order_json_round_trip(doc):
    order = order_from_json(doc)
    assert order.to_json() == doc


def test_lex_and_refined_json_round_trip():
    outer = make_finite_order(["1", "2"])
    lp = lex_product(outer, make_finite_order(["a", "b"]))
    assert order_from_json(lp.to_json()).to_json() == lp.to_json()
    per = lex_product(outer, {ph: make_finite_order([f"p{ph}"]) for ph in outer.elements()})
    assert order_from_json(per.to_json()).to_json() == per.to_json()
    one, two = outer.elements()
    ref, _ = refine_order(outer, {one: make_finite_order(["a", "b"]), two: make_finite_order(["c"])})
    assert order_from_json(ref.to_json()).to_json() == ref.to_json()
