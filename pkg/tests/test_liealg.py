"""Lie algebra structure analysis on exact rational presentations."""
from fractions import Fraction

import pytest

from wavesym.charts import BASE_COORDS
from wavesym.equivalence import EquivalenceAlgebra, Gen
from wavesym.expr import add, equal, mul, rat, structurally_zero, sym
from wavesym.liealg import (LieAlgebraPresentation, NonClosure, Subspace,
                            center, centralizer, close_or_fail,
                            coordinate_subspace, derived_series,
                            flag_automorphism_solve, is_ideal,
                            radical, subspace_intersection)
from wavesym.parse import parse
from wavesym.vecfield import vf


@pytest.fixture(scope="module")
def m():
    ea = EquivalenceAlgebra()
    fields = [ea.field(Gen("G", rat(1))), ea.field(Gen("F1")),
              ea.field(Gen("F2")), ea.field(Gen("Pt")), ea.field(Gen("Dt"))]
    return close_or_fail(fields, labels=["G1", "F1", "F2", "Pt", "Dt"])


def test_close_nilpotent_piece():
    ea = EquivalenceAlgebra()
    pres = close_or_fail([ea.field(Gen("Pt")), ea.field(Gen("F1")),
                          ea.field(Gen("G", rat(1)))],
                         labels=["Pt", "F1", "G1"])
    # [Pt, F1] = G(1), everything else zero
    assert pres.table == {(0, 1): (Fraction(0), Fraction(0), Fraction(1))}


def test_close_kernel_heisenberg(ch):
    k = [vf(ch, BASE_COORDS, t=rat(1)), vf(ch, BASE_COORDS, u=rat(1)),
         vf(ch, BASE_COORDS, u=sym(ch.get("t")))]
    H = close_or_fail(k, labels=["Pt", "Pu", "tPu"])
    assert H.table == {(0, 2): (Fraction(0), Fraction(1), Fraction(0))}
    assert radical(H) == H.whole()


def test_close_abelian_projections(ch):
    A = close_or_fail([vf(ch, BASE_COORDS, t=sym(ch.get("t"))),
                       vf(ch, BASE_COORDS, x=rat(1))])
    assert not A.table
    assert center(A) == A.whole()


def test_close_failure_witness(ch):
    with pytest.raises(NonClosure):
        close_or_fail([vf(ch, BASE_COORDS, t=rat(1)),
                       vf(ch, BASE_COORDS, t=parse("t^2", ch))])


def test_dependent_input_pruned(ch):
    A = close_or_fail([vf(ch, BASE_COORDS, t=rat(1)),
                       vf(ch, BASE_COORDS, t=rat(2))])
    assert A.n == 1 and A.pruned


def test_megaideal_chain(m):
    ds = derived_series(m)
    assert [s.dim for s in ds] == [5, 4, 2, 0]
    assert ds[1] == coordinate_subspace([0, 1, 2, 3], 5)
    assert ds[2] == coordinate_subspace([0, 1], 5)
    assert center(m) == coordinate_subspace([0], 5)
    assert centralizer(m, ds[2]) == coordinate_subspace([0, 1, 2], 5)


def test_radical_cases(m):
    assert radical(m) == m.whole()
    sl2 = LieAlgebraPresentation(
        ["h", "e", "f"], {(0, 1): [0, 2, 0], (0, 2): [0, 0, -2], (1, 2): [1, 0, 0]})
    assert radical(sl2).dim == 0


def test_derived_series_strictly_decreases(m):
    ds = derived_series(m)
    assert all(a.dim > b.dim for a, b in zip(ds, ds[1:]))


def test_returned_ideals_are_ideals(m):
    for S in derived_series(m)[1:]:
        assert is_ideal(m, S)
    assert is_ideal(m, center(m))


def test_centralizer_correctness(m):
    S = derived_series(m)[2]
    C = centralizer(m, S)
    for v in C.rows:
        for w in S.rows:
            assert all(c == 0 for c in m.bracket_coords(list(v), list(w)))


def test_flag_automorphism_solve(m):
    flag = [coordinate_subspace(list(range(k)), 5) for k in (1, 2, 3, 4, 5)]
    fam = flag_automorphism_solve(m, flag)
    names = {s.name: sym(s) for s in fam.symbols.values()}
    assert equal(fam.entry(4, 4), rat(1))               # a55 = 1
    assert structurally_zero(fam.entry(2, 3))           # a34 = 0
    assert equal(fam.entry(1, 3), mul(names["a44"], names["a35"]))
    assert equal(fam.entry(0, 3),
                 add(mul(names["a44"], names["a25"]),
                     mul(rat(-1), names["a45"], fam.entry(1, 3))))
    assert not fam.unresolved
    assert (1, 2, 4) in fam.invariant_coordinate_subspaces  # <G(1),F1,Pt>
    # the flag members themselves stay invariant
    for k in (1, 2, 3, 4):
        assert tuple(range(1, k + 1)) in fam.invariant_coordinate_subspaces


def test_flag_identity_on_abelian(ch):
    A = close_or_fail([vf(ch, BASE_COORDS, t=sym(ch.get("t"))),
                       vf(ch, BASE_COORDS, x=rat(1))])
    fam = flag_automorphism_solve(A, [A.whole()])
    assert not fam.solved and not fam.unresolved


def test_table_io_roundtrip(m):
    text = m.format_table()
    again = LieAlgebraPresentation.parse_table(text, m.labels)
    assert again.table == m.table


def test_subspace_intersection():
    S = Subspace([[1, 0, 0], [0, 1, 0]], 3)
    T = Subspace([[0, 1, 0], [0, 0, 1]], 3)
    I = subspace_intersection(S, T)
    assert I == Subspace([[0, 1, 0]], 3)


def test_jacobi_validated():
    # [a,b] = c, [b,c] = b, [a,c] = 0 violates Jacobi: J(a,b,c) = c
    with pytest.raises(NonClosure):
        LieAlgebraPresentation(
            ["a", "b", "c"],
            {(0, 1): [0, 0, 1], (1, 2): [0, 1, 0]})
