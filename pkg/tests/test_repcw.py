"""Representation parsing, sphere complexes, smash products, reduction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackey.repcw import (
    GroupMismatch,
    NegativeMultiplicity,
    TrivialRep,
    check_boundary,
    cone_of_unit_sphere,
    expand_level_e,
    parse_rep,
    point_complex,
    reduce_complex,
    restrict_complex,
    small_h_unit_sphere,
    smash,
    sphere_complex,
    underlying_homology_ranks,
    unit_sphere_complex,
)


def test_parse_rep():
    r = parse_rep("Q8", "2rhoK+H")
    m = r.mult_dict()
    assert m == {"1": 2, "sigmaL": 2, "sigmaD": 2, "sigmaR": 2, "H": 1}
    assert r.dim == 12
    r2 = parse_rep("Q8", "3+rhoK")
    assert r2.dim == 7
    r3 = parse_rep("Q8", "-1+rhoQ")
    assert r3.dim == 7 and r3.shift == -1
    r4 = parse_rep("C4", "lambda")
    assert r4.dim == 2
    assert parse_rep("Q8", "sigma1").mult_dict() == {"sigmaL": 1}
    with pytest.raises(ValueError):
        parse_rep("C4", "rhoQ")


def test_unit_sphere_shapes():
    s = unit_sphere_complex("C4", "sigma")
    assert s.cells == {0: ("C2",)}
    sh = unit_sphere_complex("Q8", "H")
    assert [len(sh.cells[n]) for n in range(4)] == [1, 3, 4, 2]
    assert sh.entry(1, 0, 0) == ((-1, "1"), (1, "i"))
    assert sh.entry(1, 0, 1) == ((-1, "1"), (1, "j"))
    assert sh.entry(1, 0, 2) == ((-1, "1"), (1, "k"))
    with pytest.raises(TrivialRep):
        unit_sphere_complex("C4", "1")


def test_unit_sphere_h_is_three_sphere():
    h = underlying_homology_ranks(unit_sphere_complex("Q8", "H"))
    assert h[0] == (1, ())
    assert h[1] == (0, ())
    assert h[2] == (0, ())
    assert h[3] == (1, ())


def test_small_h_model_matches():
    h = underlying_homology_ranks(small_h_unit_sphere())
    assert h[0] == (1, ()) and h[3] == (1, ())
    assert h[1] == (0, ()) and h[2] == (0, ())


def test_cone_ranks_of_h_sphere():
    cone = cone_of_unit_sphere(unit_sphere_complex("Q8", "H"))
    sizes, _ = expand_level_e(cone)
    # one fixed cell plus 8 underlying points per free cell: 1, 8, 24, 32, 16
    assert [sizes[n] for n in range(5)] == [1, 8, 24, 32, 16]


def test_sphere_s0_and_suspension():
    s0 = sphere_complex(parse_rep("Q8", "0"))
    assert s0.cells == {0: ("Q8",)}
    s3 = sphere_complex(parse_rep("Q8", "3"))
    assert s3.cells == {3: ("Q8",)}


def test_sign_sphere_homology():
    c = sphere_complex(parse_rep("C4", "sigma"))
    h = underlying_homology_ranks(c)
    assert h.get(1) == (1, ())
    assert all(v == (0, ()) for n, v in h.items() if n != 1)


def test_lambda_sphere_homology():
    c = sphere_complex(parse_rep("C4", "lambda"))
    h = underlying_homology_ranks(c)
    assert h.get(2) == (1, ())


def test_smash_two_circles():
    s1 = sphere_complex(parse_rep("K4", "1"))
    s2 = smash(s1, s1)
    h = underlying_homology_ranks(s2)
    assert h.get(2) == (1, ())


def test_smash_sign_spheres_free_orbit():
    a = cone_of_unit_sphere(unit_sphere_complex("K4", "sigmaL"))
    b = cone_of_unit_sphere(unit_sphere_complex("K4", "sigmaR"))
    s = smash(a, b)
    # the double coset split of K4/L x K4/R is a single free orbit
    assert s.cells[2] == ("e",)
    h = underlying_homology_ranks(s)
    assert h.get(2) == (1, ())


def test_smash_group_mismatch():
    with pytest.raises(GroupMismatch):
        smash(point_complex("Q8"), point_complex("K4"))


def test_negative_multiplicity_rejected():
    with pytest.raises(NegativeMultiplicity):
        sphere_complex(parse_rep("Q8", "rhoK-H"))


def test_reduction_preserves_homology():
    c = cone_of_unit_sphere(unit_sphere_complex("Q8", "H"))
    r = reduce_complex(c)
    assert r.ncells() < c.ncells()
    assert underlying_homology_ranks(r).get(4) == (1, ())
    check_boundary(r)


def test_rho_k_sphere():
    c = sphere_complex(parse_rep("K4", "rhoK"))
    h = underlying_homology_ranks(c)
    assert h.get(4) == (1, ())
    assert all(v == (0, ()) for n, v in h.items() if n != 4)


def test_restrict_h_sphere_to_c4():
    over_c4 = restrict_complex(sphere_complex(parse_rep("Q8", "H")), "L")
    assert over_c4.group_name == "C4"
    direct = sphere_complex(parse_rep("C4", "2lambda"))
    ha = underlying_homology_ranks(over_c4)
    hb = underlying_homology_ranks(direct)
    keys = set(ha) | set(hb)
    for n in keys:
        assert ha.get(n, (0, ())) == hb.get(n, (0, ()))


def test_restrict_to_trivial_is_underlying():
    c = sphere_complex(parse_rep("K4", "sigmaL"))
    r = restrict_complex(c, "e")
    assert r.group_name == "T"
    sizes, _ = expand_level_e(c)
    rsizes, _ = expand_level_e(r)
    assert sizes == rsizes


def test_smash_associativity_on_homology():
    a = cone_of_unit_sphere(unit_sphere_complex("K4", "sigmaL"))
    b = cone_of_unit_sphere(unit_sphere_complex("K4", "sigmaD"))
    c = cone_of_unit_sphere(unit_sphere_complex("K4", "sigmaR"))
    left = smash(smash(a, b), c)
    right = smash(a, smash(b, c))
    hl = underlying_homology_ranks(left)
    hr = underlying_homology_ranks(right)
    keys = set(hl) | set(hr)
    for n in keys:
        assert hl.get(n, (0, ())) == hr.get(n, (0, ()))
    # and as Mackey functors at every level
    from mackey.bredon import homology_mackey
    from mackey.catalog import named
    from mackey.functors import is_isomorphic

    coeff = named("K4", "Z")
    for n in range(0, 4):
        fl, _ = homology_mackey(left, coeff, n)
        fr, _ = homology_mackey(right, coeff, n)
        assert is_isomorphic(fl, fr), n


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_random_sphere_underlying_homology(data):
    gname = data.draw(st.sampled_from(["C2", "C4", "K4", "Q8"]))
    irrs = {
        "C2": ["sigma"], "C4": ["sigma", "lambda"],
        "K4": ["sigmaL", "sigmaD", "sigmaR"],
        "Q8": ["sigmaL", "sigmaD", "sigmaR", "H"],
    }[gname]
    mults = {"1": data.draw(st.integers(0, 2))}
    for irr in irrs:
        mults[irr] = data.draw(st.integers(0, 1 if irr == "H" else 2))
    from mackey.repcw import VirtualRep

    rep = VirtualRep.make(gname, mults)
    c = sphere_complex(rep)
    h = underlying_homology_ranks(c)
    for n, v in h.items():
        expected = (1, ()) if n == rep.dim else (0, ())
        assert v == expected, (gname, mults, n, v)
