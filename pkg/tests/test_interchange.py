import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_shapes, random_term
from medial.groups import ALPHA, BETA, GAMMA, ONE, coefficient_vector, path_color
from medial.interchange import (
    MIRROR_RULE,
    SLOTS,
    InterchangeError,
    SwapRequest,
    derive_interchange,
    find_quad_shape,
    has_quad_shape,
    interchange_moves,
    swap_leaves,
    to_quad_form,
)
from medial.rewrite import FWD, MUTATION_LAWS, DerivationTrace, apply_identity_at, verify_trace
from medial.terms import Leaf, dual, leaf_positions, parse, print_canonical, relabel, subterm_at


def _derive(text, a, b):
    t = parse(text)
    tr = derive_interchange(SwapRequest(t, a, b))
    res = verify_trace(tr, MUTATION_LAWS)
    assert res.ok
    return tr, res.final


def test_medial_swap_is_one_step():
    tr, final = _derive("(xy)(zt)", "LR", "RL")
    assert [s.rule for s in tr.steps] == ["M1"]
    assert print_canonical(final) == "(xz)(yt)"


def test_m3_pair_is_one_step():
    tr, final = _derive("((xy)z)t", "LLR", "R")
    assert [s.rule for s in tr.steps] == ["M3"]
    assert print_canonical(final) == "((xt)z)y"


def test_longer_left_comb():
    tr, final = _derive("(((xy)z)t)u", "LLR", "R")
    assert print_canonical(final) == "(((xy)u)t)z"
    assert tr.rules_used() <= set(MUTATION_LAWS.rules)


def test_swap_below_root():
    tr, final = _derive("w(v((xy)(zt)))", "RRLR", "RRRL")
    assert print_canonical(final) == "w(v((xz)(yt)))"
    assert all(s.position.startswith("RR") for s in tr.steps)


@pytest.mark.parametrize("rule", list(SLOTS))
def test_slots_describe_each_law(rule):
    e = MUTATION_LAWS[rule]
    a, b = SLOTS[rule]
    for p, name in leaf_positions(e.lhs):
        other = b if p == a else a if p == b else p
        assert subterm_at(e.rhs, other) == Leaf(name)
    # the mirrored law swaps the mirrored slots
    assert (MIRROR_RULE[rule], tuple(sorted(_mirror(SLOTS[rule])))) in {
        (r, tuple(sorted(s))) for r, s in SLOTS.items()
    }


def _mirror(pair):
    return [p.translate(str.maketrans("LR", "RL")) for p in pair]


@pytest.mark.parametrize(
    "text, a, b",
    [
        ("(xy)(zt)", "LL", "LR"),  # colors differ
        ("(xy)(xt)", "LL", "RR"),  # not linear
        ("(xy)(zt)", "L", "RL"),  # not a leaf
    ],
)
def test_derive_rejects(text, a, b):
    with pytest.raises(InterchangeError):
        derive_interchange(SwapRequest(parse(text), a, b))


def test_all_interchanges_to_rank_7():
    count = 0
    for s in all_shapes(2, 7):
        t = relabel(s)
        for (pa, _), (pb, _) in itertools.combinations(leaf_positions(t), 2):
            if path_color(pa) != path_color(pb):
                continue
            tr = derive_interchange(SwapRequest(t, pa, pb))
            res = verify_trace(tr, MUTATION_LAWS)
            assert res.ok and res.final == swap_leaves(t, pa, pb)
            assert tr.rules_used() <= set(MUTATION_LAWS.rules)
            count += 1
    assert count > 700


@settings(max_examples=60, deadline=None)
@given(st.integers(8, 14), st.randoms(use_true_random=False))
def test_interchanges_on_large_random_shapes(n, rng):
    t = relabel(random_term(rng, n))
    leaves = [p for p, _ in leaf_positions(t)]
    pairs = [(a, b) for a, b in itertools.combinations(leaves, 2) if path_color(a) == path_color(b)]
    if not pairs:
        return
    a, b = rng.choice(pairs)
    tr = derive_interchange(SwapRequest(t, a, b))
    assert verify_trace(tr, MUTATION_LAWS).final == swap_leaves(t, a, b)


def test_swap_there_and_back():
    t = relabel(parse("((xx)(x(xx)))((xx)x)"))
    leaves = [p for p, _ in leaf_positions(t)]
    for a, b in itertools.combinations(leaves, 2):
        if path_color(a) != path_color(b):
            continue
        there = derive_interchange(SwapRequest(t, a, b))
        mid = verify_trace(there, MUTATION_LAWS).final
        back = derive_interchange(SwapRequest(mid, b, a))
        combined = DerivationTrace(t, there.steps + back.steps)
        res = verify_trace(combined, MUTATION_LAWS)
        assert res.ok and res.final == t


def test_moves_are_forward_mutation_steps():
    t = relabel(parse("(((xx)x)x)((xx)x)"))
    moves = interchange_moves(t, "LLLL", "RR")
    cur = t
    for pos, rule in moves:
        cur, _ = apply_identity_at(cur, MUTATION_LAWS[rule], pos, FWD)
    assert cur == swap_leaves(t, "LLLL", "RR")


# --------------------------------------------------------------------------
# quad form


def test_quad_shape_predicate():
    assert has_quad_shape(parse("((xy)u)(zt)"))
    assert has_quad_shape(parse("((xy)(uv))(zt)"))
    assert has_quad_shape(parse("(u(yx))(zt)"))
    assert not has_quad_shape(parse("(xy)(zt)"))
    assert not has_quad_shape(parse("((xy)u)(z(tw))"))
    assert find_quad_shape(parse("w(((xy)u)(zt))")) == "R"


@pytest.mark.parametrize("text", ["((xy)u)(zt)", "(u(yx))(zt)"])
def test_quad_form_already_there(text):
    final, tr = to_quad_form(parse(text))
    assert len(tr) == 0 and print_canonical(final) == text


def test_quad_form_requires_all_colors():
    with pytest.raises(InterchangeError):
        to_quad_form(parse("(xy)(zt)"))
    with pytest.raises(InterchangeError):
        to_quad_form(parse("(xy)(xt)"))


def _four_colored(s):
    return {path_color(p) for p, _ in leaf_positions(s)} == {ALPHA, BETA, GAMMA, ONE}


def test_quad_form_all_shapes_to_rank_8():
    count = 0
    for s in all_shapes(4, 8):
        if not _four_colored(s):
            continue
        t = relabel(s)
        final, tr = to_quad_form(t)
        res = verify_trace(tr, MUTATION_LAWS)
        assert res.ok and res.final == final
        assert find_quad_shape(final) is not None
        assert coefficient_vector(final) == coefficient_vector(t)
        count += 1
    assert count > 400


def test_quad_form_mirror_inputs():
    for s in all_shapes(5, 6):
        if not _four_colored(s):
            continue
        t = relabel(dual(s))
        final, tr = to_quad_form(t)
        assert verify_trace(tr, MUTATION_LAWS).final == final
