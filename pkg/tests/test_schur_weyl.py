"""Schur/Weyl module ranks, integral duality, functoriality, Cauchy pieces."""

import random
from math import comb

import pytest
from sodkit.errors import InvalidDims
from sodkit.matrices import ExactMatrix
from sodkit.partitions import count_ssyt, enumerate_box, transpose
from sodkit.rings import GF, QQ, ZZ
from sodkit.schur_weyl import (
    cauchy_filtration,
    cauchy_pairing,
    check_duality,
    schur_module,
    schur_on_morphism,
    weyl_module,
    weyl_on_morphism,
)

FIELDS = (QQ, GF(2), GF(3))


def test_module_ranks_match_tableau_counts():
    shapes = [(), (1,), (2,), (1, 1), (2, 1), (2, 2), (3, 1)]
    for a in shapes:
        for n in (1, 2, 3):
            expected = count_ssyt(a, n)
            for F in FIELDS:
                assert schur_module(a, n, F).rank == expected
                assert weyl_module(a, n, F).rank == expected


def test_rank_vanishes_beyond_row_count():
    assert schur_module((1, 1, 1), 2, QQ).rank == 0
    assert weyl_module((2, 2, 1), 2, GF(2)).rank == 0


def test_duality_unimodular_small():
    for a in enumerate_box(2, 4):
        for n in (2, 3):
            rep = check_duality(a, n)
            assert rep.unimodular
            assert all(f == 1 for f in rep.invariant_factors)
            assert rep.rank == count_ssyt(a, n)


def _random_int_matrix(rng, n):
    return ExactMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])


@pytest.mark.parametrize("alpha", [(1,), (2,), (1, 1), (2, 1)])
def test_functoriality_on_products(alpha):
    rng = random.Random(11)
    n = 3
    for F in (QQ, GF(5)):
        for _ in range(4):
            g = _random_int_matrix(rng, n)
            h = _random_int_matrix(rng, n)
            gh = g.mul(h)
            for functor in (schur_on_morphism, weyl_on_morphism):
                lhs = functor(alpha, gh, F)
                rhs = functor(alpha, g, F).mul(functor(alpha, h, F))
                coerced = ExactMatrix(
                    [[F.coerce(v) for v in row] for row in rhs.entries]
                )
                lhs_c = ExactMatrix(
                    [[F.coerce(v) for v in row] for row in lhs.entries]
                )
                assert lhs_c == coerced


def test_identity_goes_to_identity():
    for alpha in [(1,), (2, 1)]:
        g = ExactMatrix.identity(3)
        got = schur_on_morphism(alpha, g, QQ)
        r = schur_module(alpha, 3, QQ).rank
        assert got == ExactMatrix(
            [[QQ.coerce(1 if i == j else 0) for j in range(r)] for i in range(r)]
        )


def test_cauchy_pairing_rank_single_box():
    # pairing for (1): V tensor W mapped into itself, full rank
    P = cauchy_pairing((1,), 2, 3, QQ)
    assert P.rows == P.cols == 6
    from sodkit.matrices import rank

    assert rank(P, QQ) == 6


def test_cauchy_filtration_frozen_2x2():
    rep = cauchy_filtration(2, 2, 2, QQ)
    assert rep.passed
    got = {s.alpha: s.graded_rank for s in rep.steps}
    assert got == {(2,): 3, (1, 1): 3}
    assert rep.top_rank == comb(4, 2) == rep.expected_top


def test_cauchy_filtration_sweep_passes():
    for n_V, n_W in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)]:
        for m in range(0, min(4, n_V * n_W) + 1):
            for F in (QQ, GF(2)):
                rep = cauchy_filtration(m, n_V, n_W, F)
                assert rep.passed, (n_V, n_W, m, F.label)
                assert rep.top_rank == comb(n_V * n_W, m)


def test_cauchy_graded_matches_tableau_products():
    rep = cauchy_filtration(3, 2, 3, QQ)
    assert rep.passed
    for s in rep.steps:
        assert s.expected == count_ssyt(transpose(s.alpha), 2) * count_ssyt(
            s.alpha, 3
        )
