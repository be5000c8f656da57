import pytest

from conjtop.errors import InputError, ModelIntegrityError
from conjtop.gf2 import Gf2Matrix
from conjtop.intmat import IntMatrix
from conjtop.involutions import characteristic_class, is_even
from conjtop.lattices import (
    QuotientTransferData,
    alpha_chi_cross_check,
    build_lattice,
    conj_form_mod2,
    invariant_sublattices,
    order_obstruction,
    orientation_class_check,
    torsion_audit,
    transfer_audit,
)

HYP = IntMatrix([[0, 1], [1, 0]])
SWAP = IntMatrix([[0, 1], [1, 0]])


def test_build_lattice_quadric():
    L = build_lattice(HYP, SWAP)
    assert L.rank == 2


def test_build_rejects_non_isometry():
    T = IntMatrix([[1, 1], [0, -1]])
    assert T * T == IntMatrix.identity(2)
    with pytest.raises(InputError, match="isometry"):
        build_lattice(IntMatrix.identity(2).scale(3), T)


def test_build_rejects_non_involution():
    T = IntMatrix([[0, -1], [1, 0]])
    with pytest.raises(InputError, match="square"):
        build_lattice(HYP, T)


def test_invariant_sublattices_quadric(library):
    L = library.lattices["quadric_lattice"]
    plus, minus = invariant_sublattices(L)
    assert len(plus) == 1 and len(minus) == 1
    (p,) = plus
    (m,) = minus
    assert p[0] == p[1] != 0  # spans (1, 1)
    assert m[0] == -m[1] != 0  # spans (1, -1)


def test_invariant_sublattices_identity_cases():
    L = build_lattice(HYP, IntMatrix.identity(2))
    plus, minus = invariant_sublattices(L)
    assert len(plus) == 2 and len(minus) == 0
    L2 = build_lattice(HYP, IntMatrix.identity(2).scale(-1))
    plus2, minus2 = invariant_sublattices(L2)
    assert len(plus2) == 0 and len(minus2) == 2


def test_conj_form_mod2_quadric(library):
    L = library.lattices["quadric_lattice"]
    B = conj_form_mod2(L)
    assert B.gram == Gf2Matrix.identity(2)
    assert characteristic_class(B) == 0b11
    assert not is_even(B)


def test_conj_form_mod2_t4(library):
    L = library.lattices["t4_lattice"]
    B = conj_form_mod2(L)
    assert is_even(B)
    assert characteristic_class(B) == 0


def test_conj_form_with_identity_is_gram():
    L = build_lattice(HYP, IntMatrix.identity(2))
    assert conj_form_mod2(L).gram == Gf2Matrix.from_rows([[0, 1], [1, 0]])
    assert is_even(conj_form_mod2(L))


def test_transfer_audit_quadric(library):
    L = library.lattices["quadric_lattice"]
    report = transfer_audit(L)
    assert report["composition_is_doubling"]
    assert report["pull_injective"]
    assert report["image_invariant"]
    assert report["doubled_invariants_in_image"]
    assert report["invariant_rank"] == 1


def test_transfer_audit_rejects_wrong_composition():
    L = build_lattice(HYP, SWAP)
    bad = QuotientTransferData(1, IntMatrix([[1], [1]]), IntMatrix([[1, 2]]))
    with pytest.raises(ModelIntegrityError, match="multiplication by 2"):
        transfer_audit(L, bad)


def test_transfer_audit_rejects_non_injective_pull():
    L = build_lattice(HYP, SWAP)
    bad = QuotientTransferData(1, IntMatrix([[0], [0]]), IntMatrix([[1, 1]]))
    with pytest.raises(ModelIntegrityError):
        transfer_audit(L, bad)


def test_transfer_audit_rejects_non_invariant_image():
    gram = IntMatrix.identity(2)
    T = IntMatrix.diagonal([1, -1])
    L = build_lattice(gram, T)
    bad = QuotientTransferData(1, IntMatrix([[0], [1]]), IntMatrix([[0, 2]]))
    with pytest.raises(ModelIntegrityError, match="invariant"):
        transfer_audit(L, bad)


def test_orientation_class_check_quadric(library):
    L = library.lattices["quadric_lattice"]
    assert orientation_class_check(L, None, (0, 0))
    assert orientation_class_check(L, None, (2, 2))
    assert orientation_class_check(L, None, (-2, -2))
    assert not orientation_class_check(L, None, (1, 1))
    assert not orientation_class_check(L, None, (2, 0))


def test_orientation_class_symmetry(library):
    L = library.lattices["quadric_lattice"]
    for alpha in ((2, 2), (4, 4), (0, 0)):
        a = orientation_class_check(L, None, alpha)
        b = orientation_class_check(L, None, tuple(-x for x in alpha))
        assert a == b


def test_order_obstruction():
    gram = IntMatrix([[3]])
    L = build_lattice(gram, IntMatrix.identity(1))
    verdict = order_obstruction(L, 3, (1,))
    assert verdict.obstructed and verdict.witness == (1,)
    gram4 = IntMatrix([[4]])
    L4 = build_lattice(gram4, IntMatrix.identity(1))
    assert not order_obstruction(L4, 4, (1,)).obstructed


def test_order_obstruction_validation():
    L = build_lattice(IntMatrix([[3]]), IntMatrix.identity(1))
    with pytest.raises(InputError, match="self-pairing"):
        order_obstruction(L, 5, (1,))
    L2 = build_lattice(IntMatrix.identity(2), IntMatrix.diagonal([1, -1]))
    with pytest.raises(InputError, match="invariant"):
        order_obstruction(L2, 1, (0, 1))


def test_torsion_audit_free_lattice(library):
    L = library.lattices["quadric_lattice"]
    rep = torsion_audit(L)
    assert not rep["checked"]


def test_torsion_audit_with_presentation():
    L = build_lattice(HYP, SWAP, presentation=IntMatrix([[3, 0], [0, 1]]))
    rep = torsion_audit(L)
    assert rep["checked"]
    L2 = build_lattice(HYP, SWAP, presentation=IntMatrix([[2, 0], [0, 1]]))
    with pytest.raises(ModelIntegrityError, match="2-torsion"):
        torsion_audit(L2)


def test_alpha_chi_cross_check(library):
    L = library.lattices["t4_lattice"]
    rep = alpha_chi_cross_check(L)
    assert rep == {"self_pairing": 0, "chi": 0}
    quad = library.lattices["quadric_lattice"]
    assert alpha_chi_cross_check(quad) is None  # no chi marked


def test_alpha_chi_cross_check_violation():
    L = build_lattice(HYP, SWAP, marks={"alpha": (1, 1)}, chi_real=4)
    with pytest.raises(ModelIntegrityError):
        alpha_chi_cross_check(L)
