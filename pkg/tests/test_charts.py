"""Chart atlas, frames, and bundle transition cocycles."""

import time

import pytest
from sodkit.charts import (
    atlas,
    build_chart,
    det_product_check,
    dual_cocycle,
    hom_cocycle,
    orientation_sign,
    quotient_cocycle,
    tautological_cocycle,
    tensor_cocycle,
    trivial_cocycle,
    verify_cocycle,
    weyl_bundle,
)
from sodkit.errors import BadIndexSet, InvalidDims
from sodkit.rings import GF, QQ

CASES = [(1, 2), (1, 3), (2, 3), (2, 4)]


def test_chart_layout_frozen():
    ch = build_chart((2,), 1, 2)
    P = ch.pring
    taut = [[P.to_string(p) for p in row] for row in ch.taut_basis]
    assert taut == [["1"], ["x1_1"]]
    quot = [[P.to_string(p) for p in row] for row in ch.quot_dual_basis]
    assert quot == [["-x1_1", "1"]]

    ch = build_chart((1, 2), 2, 4)
    assert ch.complement == (3, 4)
    P = ch.pring
    taut = [[P.to_string(p) for p in row] for row in ch.taut_basis]
    assert taut == [
        ["x1_1", "x2_1"],
        ["x1_2", "x2_2"],
        ["1", "0"],
        ["0", "1"],
    ]
    quot = [[P.to_string(p) for p in row] for row in ch.quot_dual_basis]
    assert quot == [
        ["1", "0", "-x1_1", "-x2_1"],
        ["0", "1", "-x1_2", "-x2_2"],
    ]


def test_chart_validation():
    with pytest.raises(InvalidDims):
        build_chart((1,), 2, 2)
    with pytest.raises(BadIndexSet):
        build_chart((1, 1), 2, 4)
    with pytest.raises(BadIndexSet):
        build_chart((5,), 1, 2)


def test_orientation_signs():
    assert orientation_sign((1,), 2) == -1  # complement (2), shuffle (2,1): odd
    assert orientation_sign((2,), 2) == 1
    assert orientation_sign((1, 2), 4) == 1  # (3,4,1,2): even
    # sign flips under one adjacent transposition of the split
    assert orientation_sign((1, 3), 4) == -orientation_sign((1, 2), 4)


def test_atlas_counts_and_order():
    for k, n in CASES:
        at = atlas(k, n)
        sets = [c.index_set for c in at.charts]
        assert sets == sorted(sets)
        from math import comb

        assert len(sets) == comb(n, n - k)


def test_cocycles_verify():
    for k, n in CASES:
        for E in (
            tautological_cocycle(k, n),
            quotient_cocycle(k, n),
            trivial_cocycle(k, n, 2),
        ):
            chk = verify_cocycle(E)
            assert chk.passed, (k, n, E.label)
    # a Weyl-functor bundle inherits the cocycle identity
    chk = verify_cocycle(weyl_bundle((1, 1), 2, 4))
    assert chk.passed
    chk = verify_cocycle(weyl_bundle((1, 1), 2, 3, GF(5)))
    assert chk.passed


def test_det_product_identity():
    for k, n in CASES:
        assert det_product_check(k, n)


def test_rank_bookkeeping():
    T = tautological_cocycle(2, 4)
    Q = quotient_cocycle(2, 4)
    assert T.rank == 2 and Q.rank == 2
    assert tensor_cocycle(T, Q).rank == 4
    assert dual_cocycle(T).rank == 2
    assert hom_cocycle(T, Q).rank == 4
    assert weyl_bundle((2, 1), 2, 4).rank == 2  # two tableaux in a 2-row box


def test_weyl_bundle_box_guard():
    with pytest.raises(InvalidDims):
        weyl_bundle((3,), 1, 2)
    with pytest.raises(InvalidDims):
        weyl_bundle((1, 1, 1), 2, 4)
