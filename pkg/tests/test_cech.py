"""Truncated Cech cohomology: closed-form twists, tables, engine invariants.

Expected dimension vectors for projective-space twists come from the
classical section/top-cohomology counts (binomial coefficients); the
Grassmannian Hom-cell values were cross-computed over F2, F3, and the
two-prime rational route, which all agree, and the first-column cells
independently match the tableau-counting section dimensions.
"""

from math import comb

import pytest
from sodkit.cech import (
    CechEngine,
    boundary_squared_is_zero,
    cech_cohomology_dims,
    rhom_cell,
    rhom_table,
    truncation_euler_profile,
)
from sodkit.charts import (
    dual_cocycle,
    hom_cocycle,
    quotient_cocycle,
    tautological_cocycle,
    tensor_cocycle,
    trivial_cocycle,
    weyl_bundle,
)
from sodkit.partitions import count_ssyt, enumerate_box
from sodkit.rings import GF, QQ

F2 = GF(2)
F5 = GF(5)


def twist(d, k, n, F=QQ):
    """O(d) as a cocycle: powers of det(T) (d < 0) or its dual (d > 0)."""
    detT = weyl_bundle((1,) * k, k, n, F)
    E = trivial_cocycle(k, n, 1, F)
    base = detT if d < 0 else dual_cocycle(detT)
    for _ in range(abs(d)):
        E = tensor_cocycle(E, base)
    return E


def expected_proj_line(d, m):
    """Cohomology of O(d) on projective m-space."""
    out = [0] * (m + 1)
    if d >= 0:
        out[0] = comb(d + m, m)
    elif d <= -m - 1:
        out[m] = comb(-d - 1, m)
    return out


@pytest.mark.parametrize("d", range(-4, 5))
def test_p1_line_bundles(d):
    for F in (QQ, F2):
        dims, stab = cech_cohomology_dims(twist(d, 1, 2, F), F, abs(d) + 2)
        assert stab
        assert dims == expected_proj_line(d, 1)


@pytest.mark.parametrize("d", range(-4, 3))
def test_p2_line_bundles(d):
    dims, stab = cech_cohomology_dims(twist(d, 1, 3), QQ, abs(d) + 2)
    assert stab
    assert dims == expected_proj_line(d, 2)


def test_p2_tangent_cotangent_quotient():
    T = tautological_cocycle(1, 3)
    Q = quotient_cocycle(1, 3)
    tangent = hom_cocycle(T, Q)
    dims, stab = cech_cohomology_dims(tangent, QQ, 4)
    assert stab and dims == [8, 0, 0]
    cotangent = hom_cocycle(Q, T)
    dims, stab = cech_cohomology_dims(cotangent, QQ, 4)
    assert stab and dims == [0, 1, 0]
    dims, stab = cech_cohomology_dims(Q, QQ, 4)
    assert stab and dims == [3, 0, 0]


def test_boundary_squared_zero():
    assert boundary_squared_is_zero(twist(-2, 1, 2), QQ, 4)
    assert boundary_squared_is_zero(hom_cocycle(
        tautological_cocycle(1, 3), quotient_cocycle(1, 3)), QQ, 3)
    assert boundary_squared_is_zero(weyl_bundle((1, 1), 2, 3, F5), F5, 3)
    assert boundary_squared_is_zero(twist(1, 2, 4, F2), F2, 3)


def test_truncation_euler_profile_p1():
    # without sections lost to the cap the truncated complex computes the
    # sheaf euler characteristic; positive twists lose equally at both
    # levels once the bound clears the twist, so the profile is bound-stable
    for d in range(-4, 1):
        eu, chain, dims = truncation_euler_profile(twist(d, 1, 2), QQ, 4)
        assert eu == d + 1
        assert dims == expected_proj_line(d, 1)
    for d in range(-4, 5):
        a = truncation_euler_profile(twist(d, 1, 2), QQ, abs(d) + 3)[0]
        b = truncation_euler_profile(twist(d, 1, 2), QQ, abs(d) + 4)[0]
        assert a == b


def test_gr23_full_table():
    t = rhom_table(2, 3, F5)
    assert t.semiorthogonal_ok and t.endomorphism_ok and t.all_stabilized
    assert not t.violations
    box = enumerate_box(2, 3)
    assert box == [(), (1,), (1, 1)]
    for a in box:
        assert t.entries[(a, a)].dims == [1, 0, 0]
        # sections of the dual Weyl bundle count tableaux in the ambient
        assert t.entries[(a, ())].dims == [count_ssyt(a, 3), 0, 0]
    assert t.entries[((), (1,))].dims == [0, 0, 0]
    assert t.entries[((1,), (1, 1))].dims == [0, 0, 0]
    assert t.entries[((1, 1), (1,))].dims == [3, 0, 0]


def test_gr24_spot_cells():
    cases = {
        ((1,), ()): [4, 0, 0, 0, 0],
        ((2, 2), ()): [20, 0, 0, 0, 0],
        ((), (1,)): [0, 0, 0, 0, 0],
        ((1,), (1,)): [1, 0, 0, 0, 0],
        # Hom(det^2 T, wedge^2 T) is the Pluecker twist O(1)
        ((2, 2), (1, 1)): [6, 0, 0, 0, 0],
    }
    for (a, b), want in cases.items():
        e = rhom_cell(2, 4, F2, a, b)
        assert e.stabilized, (a, b)
        assert e.dims == want, (a, b)


def test_gr24_canonical_and_pluecker_twists():
    dims, stab = cech_cohomology_dims(twist(1, 2, 4, F2), F2, 3)
    assert stab and dims == [6, 0, 0, 0, 0]
    dims, stab = cech_cohomology_dims(twist(-4, 2, 4, F2), F2, 6)
    assert stab and dims == [0, 0, 0, 0, 1]


def test_shard_matches_full_enumeration():
    cases = [
        (hom_cocycle(tautological_cocycle(1, 3), quotient_cocycle(1, 3)), QQ, 4),
        (twist(-3, 1, 2, F5), F5, 5),
        (hom_cocycle(weyl_bundle((1, 1), 2, 3, F5), trivial_cocycle(2, 3, 1, F5)), F5, 4),
    ]
    for E, F, D in cases:
        full = CechEngine(E, F, shard=False)
        sharded = CechEngine(E, F, shard=True)
        assert full.reported(D) == sharded.reported(D)


def test_keys_of_weight_agrees_with_bulk_grouping():
    E = weyl_bundle((1,), 2, 3, F5)
    eng = CechEngine(E, F5)
    seen = set()
    for p in (0, 1):
        for loc in eng._geometry[p]:
            sig = (loc.anchor, loc.inv_vars, loc.has_q)
            if sig in seen:
                continue
            seen.add(sig)
            for m in range(4):
                grouped = eng.ctx.keys_by_weight(*sig, m)
                for w, keys in grouped.items():
                    single = eng.ctx.keys_of_weight(*sig, w, m)
                    assert sorted(keys) == sorted(single), (sig, m, w)


def test_unstabilized_is_reported_not_hidden():
    # a ceiling below the junk-kill scale must surface as not-stabilized,
    # never as a silently wrong stabilized value
    e = rhom_cell(2, 4, F2, (2, 2), (1, 1), D=2, ceiling=2)
    assert not e.stabilized
