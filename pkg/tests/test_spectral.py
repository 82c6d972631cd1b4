import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from medial.groups import KL, GroupSpec, parse_group
from medial.spectral import (
    MulticirculantSpec,
    bareiss_determinant,
    bareiss_rank,
    build_multicirculant,
    determinant_agrees,
    eigenpairs,
    eigenvalues,
    exact_basis_witness,
    generating_pairs,
    integer_rank,
    interchange_basis_decision,
    star_index,
    unstar,
    v_identity_row,
    v_matrix,
)

KLEIN_MATRIX = [[-1, 1, 1, 0], [1, -1, 0, 1], [1, 0, -1, 1], [0, 1, 1, -1]]


def test_star_index_examples():
    assert star_index((0, 0), (2, 2)) == 0
    assert star_index((1, 0), (2, 2)) == 1
    assert star_index((0, 1), (2, 2)) == 2
    assert star_index((1, 2), (2, 3)) == 5
    with pytest.raises(ValueError):
        star_index((2, 0), (2, 2))
    with pytest.raises(ValueError):
        star_index((0,), (2, 2))


def test_star_is_a_bijection():
    s = (3, 2, 4)
    seen = {star_index(unstar(i, s), s) for i in range(24)}
    assert seen == set(range(24))


def test_build_examples():
    assert build_multicirculant(MulticirculantSpec((2, 2), (-1, 1, 1, 0))) == KLEIN_MATRIX
    assert build_multicirculant(MulticirculantSpec((1,), (7,))) == [[7]]
    assert build_multicirculant(MulticirculantSpec((3,), (1, 2, 3))) == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]


def test_spec_validation():
    with pytest.raises(ValueError):
        MulticirculantSpec((2, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        MulticirculantSpec((0,), ())


def test_eigenvalue_examples():
    sp = eigenvalues(MulticirculantSpec((2, 2), (-1, 1, 1, 0)))
    assert sorted(np.round(sp.eigenvalues.real, 9)) == [-3, -1, -1, 1]
    assert np.allclose(sp.eigenvalues.imag, 0, atol=1e-9)
    assert sp.exact_determinant == -3
    sp = eigenvalues(MulticirculantSpec((1,), (5,)))
    assert np.allclose(sp.eigenvalues, [5]) and sp.exact_determinant == 5
    sp = eigenvalues(MulticirculantSpec((2,), (3, 7)))
    assert np.allclose(sorted(sp.eigenvalues.real), [-4, 10])


def test_rational_rows():
    sp = eigenvalues(MulticirculantSpec((3,), (Fraction(1, 2), 1, 0)))
    assert sp.exact_determinant == Fraction(9, 8)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_eigen_properties(s, rng):
    n = int(np.prod(s))
    top = [rng.randint(-5, 5) for _ in range(n)]
    spec = MulticirculantSpec(tuple(s), tuple(top))
    A = np.array(build_multicirculant(spec), dtype=float)
    for lam, v in eigenpairs(spec):
        assert np.max(np.abs(A @ v - lam * v)) <= 1e-9
    sp = eigenvalues(spec)
    assert abs(sum(sp.eigenvalues) - n * top[0]) <= 1e-9
    assert determinant_agrees(sp.eigenvalues, sp.exact_determinant)
    _assert_same_multiset(sp.eigenvalues, np.linalg.eigvals(A), 1e-6)


def _assert_same_multiset(xs, ys, tol):
    remaining = list(ys)
    for x in xs:
        i = int(np.argmin([abs(x - y) for y in remaining]))
        assert abs(x - remaining[i]) <= tol
        remaining.pop(i)


def test_bareiss_against_numpy():
    rng = random.Random(5)
    for _ in range(300):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        M = [[rng.randint(-3, 3) * (rng.random() < 0.6) for _ in range(c)] for _ in range(r)]
        expect = np.linalg.matrix_rank(np.array(M, dtype=float))
        assert bareiss_rank(M) == integer_rank(M) == expect
        if r == c:
            assert bareiss_determinant(M) == round(np.linalg.det(np.array(M, dtype=float)))


def test_integer_rank_needs_several_primes():
    p = 1073741789  # a prime just below 2^30
    M = [[p, 0], [0, 1]]
    assert integer_rank(M) == 2
    assert bareiss_determinant([[2**40, 1], [1, 1]]) == 2**40 - 1
    assert integer_rank([[2**40, 2**41], [1, 2]]) == 1


def test_v_matrix_examples():
    assert v_matrix(KL) == KLEIN_MATRIX
    assert v_matrix(GroupSpec(1, 1, (0, 0), (0, 0))) == [[1]]
    assert v_matrix(GroupSpec(2, 1, (1, 0), (1, 0))) == [[-1, 2], [2, -1]]


def test_v_matrix_is_multicirculant():
    for g in [GroupSpec(3, 4, (1, 0), (0, 1)), GroupSpec(6, 4, (1, 3), (2, 1)), GroupSpec(5, 1, (2, 0), (2, 0))]:
        top = v_identity_row(g)
        assert v_matrix(g) == build_multicirculant(MulticirculantSpec((g.m, g.n), tuple(top)))


@pytest.mark.parametrize(
    "spec, verdict",
    [
        ("2,2,1,0,0,1", True),
        ("6,6,1,0,0,1", False),
        ("6,4,1,0,0,1", True),
        ("1,1,0,0,0,0", True),
    ],
)
def test_basis_examples(spec, verdict):
    rep = interchange_basis_decision(parse_group(spec))
    assert rep.verdict is verdict and rep.consistent
    assert rep.rank == verdict and rep.exact == verdict


def test_witness_really_vanishes():
    g = GroupSpec(6, 6, (1, 0), (0, 1))
    j, k = exact_basis_witness(g)
    val = -1 + np.exp(2j * np.pi * (g.alpha[0] * j / 6 + g.alpha[1] * k / 6)) + np.exp(
        2j * np.pi * (g.beta[0] * j / 6 + g.beta[1] * k / 6)
    )
    assert abs(val) < 1e-12


def test_canonical_grid_methods_agree():
    for m in range(2, 13):
        for n in range(2, 13):
            rep = interchange_basis_decision(GroupSpec(m, n, (1, 0), (0, 1)))
            assert rep.exact == rep.rank == rep.closed_form


def test_all_generating_pairs_small_groups():
    for m in range(1, 7):
        for n in range(1, 7):
            for g in generating_pairs(m, n):
                rep = interchange_basis_decision(g)
                assert rep.exact == rep.rank, g


def test_sampled_generating_pairs_to_12():
    rng = random.Random(17)
    for _ in range(150):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        while True:
            try:
                g = GroupSpec(m, n, (rng.randrange(m), rng.randrange(n)), (rng.randrange(m), rng.randrange(n)))
                break
            except ValueError:
                continue
        rep = interchange_basis_decision(g)
        assert rep.exact == rep.rank, g


def test_report_json():
    rep = interchange_basis_decision(GroupSpec(6, 6, (1, 0), (0, 1)))
    d = json.loads(rep.dumps())
    assert d["verdict"] is False and d["rank_value"] == 34 and d["consistent"] is True
    assert set(d) >= {"exact", "rank", "closed_form", "witness"}


def test_non_generating_group_rejected():
    with pytest.raises(ValueError):
        interchange_basis_decision(GroupSpec(4, 4, (2, 0), (0, 2)))
