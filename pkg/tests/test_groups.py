import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_shapes, identity_corpus, term_strategy
from medial.groups import (
    ALPHA,
    BETA,
    GAMMA,
    KL,
    ONE,
    SUPPORTED_SELECTORS,
    GroupSpec,
    UnsupportedSelector,
    classify,
    coefficient_vector,
    criterion_in_sigma_K,
    in_sigma,
    leaf_colors,
    oracle_in_sigma_K,
    parse_group,
    parse_selector,
    path_color,
    vertex_colors,
)
from medial.interchange import swap_leaves
from medial.rewrite import MUTATION_LAWS
from medial.terms import Identity, dual, leaf_positions, parse, relabel


def test_group_spec_validation():
    g = GroupSpec(4, 6, (5, 7), (0, 1))
    assert g.alpha == (1, 1) and g.order == 24
    with pytest.raises(ValueError):
        GroupSpec(2, 2, (1, 0), (1, 0))
    with pytest.raises(ValueError):
        GroupSpec(0, 2, (0, 0), (0, 1))
    assert parse_group("2,2,1,0,0,1") == KL
    for bad in ["2,2,1,0,0", "2,2,1,0,0,x", "2,2,-1,0,0,1", "6,6,2,0,0,2"]:
        with pytest.raises(ValueError):
            parse_group(bad)
    assert parse_selector("2,4") == frozenset({2, 4})
    for bad in ["", "5", "0,1", "a"]:
        with pytest.raises(ValueError):
            parse_selector(bad)


def test_klein_group():
    assert KL.gamma == GAMMA == (1, 1) and KL.identity == ONE
    for g in KL.elements():
        assert KL.mul(g, g) == ONE


def _named(t, g=KL):
    colors = leaf_colors(t, g)
    return {name: colors[p] for p, name in leaf_positions(t)}


def test_leaf_color_examples():
    assert _named(parse("(xy)(zt)")) == {"x": ONE, "y": GAMMA, "z": GAMMA, "t": ONE}
    assert _named(parse("x")) == {"x": ONE}
    c = _named(parse("((xy)z)t"))
    assert c["y"] == BETA and c["t"] == BETA


def test_leaf_colors_match_path_walk_to_rank_7():
    g = GroupSpec(3, 5, (1, 2), (2, 0))
    for s in all_shapes(1, 7):
        for grp in (KL, g):
            for p, c in leaf_colors(s, grp).items():
                # independent walk: multiply generators one edge at a time
                walk = grp.identity
                for step in p:
                    walk = grp.mul(walk, grp.alpha if step == "L" else grp.beta)
                assert c == walk == path_color(p, grp)


def test_vertex_colors_rule():
    t = parse("(x(yz))t")
    vc = vertex_colors(t)
    for p, c in vc.items():
        if p:
            parent = vc[p[:-1]]
            assert c == KL.mul(parent, ALPHA if p[-1] == "L" else BETA)
    assert vc[""] == ONE


def test_coefficient_vector_examples():
    assert coefficient_vector("x") == {"x": Counter({ONE: 1})}
    assert coefficient_vector("(xy)(zt)") == {
        "x": Counter({ONE: 1}),
        "y": Counter({GAMMA: 1}),
        "z": Counter({GAMMA: 1}),
        "t": Counter({ONE: 1}),
    }
    assert coefficient_vector("x(xy)") == {"x": Counter({ALPHA: 1, GAMMA: 1}), "y": Counter({ONE: 1})}


@given(term_strategy(7))
def test_coefficients_sum_leaf_colors(t):
    vec = coefficient_vector(t)
    colors = leaf_colors(t)
    expect = {}
    for p, name in leaf_positions(t):
        expect.setdefault(name, Counter())[colors[p]] += 1
    assert vec == expect
    assert all(c > 0 for ring in vec.values() for c in ring.values())


@pytest.mark.parametrize("name", ["M1", "M2", "M3", "M4", "M5", "M6"])
def test_mutation_laws_in_sigma(name):
    assert in_sigma(MUTATION_LAWS[name])


@pytest.mark.parametrize(
    "text, verdict", [("xy=yx", False), ("x=x", True), ("x(xy)=y", False)]
)
def test_in_sigma_examples(text, verdict):
    assert in_sigma(text) is verdict


@pytest.mark.parametrize(
    "text, k, verdict",
    [
        ("x(xy)=y", {2, 4}, True),
        ("x(y(z(xy)))=z", {2}, True),
        ("(xy^2)y^2=x", {2, 3, 4}, True),
        ("x(xy)=y", {1}, False),
        ("xy=yx", {2}, False),
    ],
)
def test_oracle_examples(text, k, verdict):
    assert oracle_in_sigma_K(text, k) is verdict


@pytest.mark.parametrize(
    "text, k",
    [
        ("(zx^2)y^2=(zy^2)x^2", {1, 2, 3}),
        ("x(x(yz))=(x(zy))x", {1, 2, 4}),
        ("(xy^2)y^2=x", {2, 3, 4}),
        ("x(xy)=y", {2, 4}),
        ("(yx)x=y", {3, 4}),
        ("((zy)x)x=x((yz)x)", {1, 3, 4}),
    ],
)
def test_criterion_examples(text, k):
    assert criterion_in_sigma_K(text, k)
    assert oracle_in_sigma_K(text, k)


def test_criterion_rejects_distinct_variables():
    for k in SUPPORTED_SELECTORS:
        assert not criterion_in_sigma_K("x=y", k)


def test_criterion_unsupported_selector():
    with pytest.raises(UnsupportedSelector):
        criterion_in_sigma_K("x=x", {1, 2})


CORPUS = identity_corpus(2000, seed=7)


def test_criterion_agrees_with_oracle():
    for e in CORPUS:
        for k in SUPPORTED_SELECTORS:
            assert criterion_in_sigma_K(e, k) == oracle_in_sigma_K(e, k), (str(e), sorted(k))


def test_sigma_is_all_four_operations_and_self_dual():
    for e in CORPUS:
        v = in_sigma(e)
        assert v == oracle_in_sigma_K(e, {1, 2, 3, 4})
        assert v == in_sigma(Identity(dual(e.lhs), dual(e.rhs)))


def test_oracle_monotone_and_balanced():
    subsets = [frozenset(c) for r in range(1, 5) for c in itertools.combinations(range(1, 5), r)]
    for e in CORPUS[:500]:
        verdict = {k: oracle_in_sigma_K(e, k) for k in subsets}
        for small, big in itertools.product(subsets, subsets):
            if small <= big and verdict[big]:
                assert verdict[small]
        for k in subsets:
            if 1 in k and verdict[k]:
                assert classify(e).balanced


@settings(max_examples=300)
@given(term_strategy(6), term_strategy(6), st.sampled_from(sorted(SUPPORTED_SELECTORS, key=sorted)))
def test_criterion_agrees_with_oracle_random(lhs, rhs, k):
    e = Identity(lhs, rhs)
    assert criterion_in_sigma_K(e, k) == oracle_in_sigma_K(e, k)


def test_classify_examples():
    c = classify(MUTATION_LAWS["M1"])
    assert c.balanced and c.linear and c.interchange
    assert not classify("(xy^2)y^2=x").balanced
    c = classify("x=x")
    assert c.balanced and c.linear and not c.interchange
    assert classify("xy=yx").interchange


def test_classify_general_identities():
    # x and y each occur twice, once with each color of the pairs
    assert classify("(zx^2)y^2=(zy^2)x^2").general_123
    assert not classify("(zx^2)y^2=(zy^2)x^2").general_124
    assert classify("x(x(yz))=(x(zy))x").general_124


def test_interchange_laws_in_sigma_iff_same_color():
    for s in all_shapes(2, 5):
        t = relabel(s)
        leaves = list(leaf_positions(t))
        for (pa, a), (pb, b) in itertools.combinations(leaves, 2):
            e = Identity(t, swap_leaves(t, pa, pb))
            assert classify(e).interchange
            assert in_sigma(e) == (path_color(pa) == path_color(pb))
