"""Pushforward and the two inflations along bottleneck quotients."""

import pytest

from mackey.catalog import catalog, named
from mackey.functors import check_axioms, data_equal
from mackey.grouplat import group
from mackey.inflation import (
    BottomNotZero,
    NotBottleneck,
    NotZModule,
    check_psi_phi_agree,
    phi_inflate,
    psi_inflate,
    q_push,
)


def qmap(src, kernel):
    g = group(src)
    return g.quotient(g.subgroup(kernel))


Q8_TO_K4 = qmap("Q8", "Z")
C4_TO_C2 = qmap("C4", "C2")


def test_q_push_constant():
    assert data_equal(q_push(Q8_TO_K4, named("Q8", "Z")), named("K4", "Z"))


def test_q_push_z32():
    assert data_equal(q_push(Q8_TO_K4, named("Q8", "Z(3,2)")), named("K4", "Z(2,1)"))


def test_q_push_mgw_levels():
    # level-by-level copy from the table: F2^2 on top, sign Z/4s, Z/2 bottom
    pushed = q_push(Q8_TO_K4, named("Q8", "mgw"))
    assert pushed.levels["K4"].orders == (2, 2)
    for nm in ("L", "D", "R"):
        assert pushed.levels[nm].orders == (4,)
    assert pushed.levels["e"].orders == (2,)
    assert check_axioms(pushed).ok


def test_psi_table_identities():
    assert data_equal(
        psi_inflate(Q8_TO_K4, named("K4", "Z(2,1)")), named("Q8", "Z(3,2)")
    )
    assert data_equal(
        psi_inflate(Q8_TO_K4, named("K4", "Z*")), named("Q8", "Z(3,1)")
    )
    assert data_equal(psi_inflate(C4_TO_C2, named("C2", "Z")), named("C4", "Z"))


def test_psi_preconditions():
    k4 = group("K4")
    with pytest.raises(NotBottleneck):
        psi_inflate(k4.quotient(k4.subgroup("L")), named("C2", "Z"))
    zq = named("K4", "Z")
    not_module = type(zq)(
        zq.group_name, dict(zq.levels), dict(zq.res), dict(zq.tr), {}, False
    )
    with pytest.raises(NotZModule):
        psi_inflate(Q8_TO_K4, not_module)


def test_push_after_psi_is_identity_on_data():
    for nm, f in catalog("K4").items():
        if not f.is_zmodule:
            continue
        inflated = psi_inflate(Q8_TO_K4, f)
        assert data_equal(q_push(Q8_TO_K4, inflated), f), nm
        assert check_axioms(inflated).ok, nm
        assert inflated.is_zmodule


def test_psi_bottom_structure():
    # below the kernel: identity restriction, index transfer
    inflated = psi_inflate(Q8_TO_K4, named("K4", "Z*"))
    assert inflated.res[("e", "Z")].matrix == ((1,),)
    assert inflated.tr[("e", "Z")].matrix == ((2,),)


def test_phi_inflate_shapes():
    phi_f = phi_inflate(Q8_TO_K4, named("K4", "F"))
    assert data_equal(phi_f, named("Q8", "phi_Z(F)"))
    for nm in ("Q8", "L", "D", "R", "Z"):
        assert phi_f.levels[nm].orders == (2,)
    assert phi_f.levels["e"].is_trivial
    phi_b = phi_inflate(Q8_TO_K4, named("K4", "B(2,0)"))
    assert data_equal(phi_b, named("Q8", "phi_Z(B(2,0))"))
    assert phi_b.levels["Z"].is_trivial


def test_phi_inflate_zero():
    from mackey.functors import zero_functor

    assert phi_inflate(Q8_TO_K4, zero_functor("K4")).is_trivial()


def test_psi_phi_agree_on_vanishing_bottom():
    for nm, f in catalog("K4").items():
        if not f.levels["e"].is_trivial or not f.is_zmodule:
            continue
        assert check_psi_phi_agree(Q8_TO_K4, f), nm


def test_psi_phi_agree_rejects_nonzero_bottom():
    with pytest.raises(BottomNotZero):
        check_psi_phi_agree(Q8_TO_K4, named("K4", "Z"))
