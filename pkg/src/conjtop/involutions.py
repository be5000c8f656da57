"""Analysis of involutions on closed even-dimensional complexes.

Covers the homological side of a real structure: the fixed point set and
its middle-dimensional class, the mod-2 bilinear form (x, y) -> x . t(y),
its characteristic class and evenness, type classification of the fixed
set's class, the Harnack-style Betti bound with M-detection, the Smith
sequence kernel bound in dimension four, and parity obstructions to
bounding.

All class coordinates refer to the canonical homology basis unless a
marked basis of cycles is supplied; bundled models mark geometric bases so
that reported coordinates match classical conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    check_involution,
    pseudomanifold_check,
    regularity_offender,
)
from .errors import InputError, ModelIntegrityError
from .gf2 import Gf2Matrix, bits_of, gf2_invert, gf2_solve, rref
from .homology import (
    ChainComplexData,
    cochain_pullback,
    cup_eval,
    duality_data,
    homology,
    induced_map,
    intersection_form_matrix,
    poincare_dual_cocycle,
    total_betti,
)


class BilinearFormGF2:
    """Symmetric bilinear form on a finite GF(2) space, given by its Gram."""

    __slots__ = ("dimension", "gram")

    def __init__(self, gram: Gf2Matrix):
        if gram.nrows != gram.ncols:
            raise InputError("Gram matrix must be square")
        if not gram.is_symmetric():
            raise InputError("Gram matrix must be symmetric")
        self.dimension = gram.nrows
        self.gram = gram

    def value(self, x: int, y: int) -> int:
        return (self.gram.mul_vec(y) & x).bit_count() & 1

    def self_value(self, x: int) -> int:
        return self.value(x, x)

    def __eq__(self, other):
        return isinstance(other, BilinearFormGF2) and self.gram == other.gram

    def __repr__(self):
        return f"BilinearFormGF2({self.gram!r})"


def is_even(B: BilinearFormGF2) -> bool:
    """True when the form vanishes on every diagonal value.

    Over GF(2) the diagonal of the Gram matrix determines all values
    B(x, x), so evenness is a diagonal check.
    """
    return B.gram.diagonal_vector() == 0


def characteristic_class(B: BilinearFormGF2) -> int:
    """The unique vector with B(chi, x) = B(x, x) for all x.

    Exists and is unique exactly when B is nondegenerate; degenerate
    inputs are refused with a kernel witness when one exists.
    """
    d = B.gram.diagonal_vector()
    sol = gf2_solve(B.gram, d)
    if sol is None:
        raise InputError("degenerate form: no characteristic vector exists")
    x, kernel = sol
    if kernel:
        raise InputError(
            "degenerate form: characteristic vector not unique "
            f"(kernel witness {bits_of(kernel[0], B.dimension)})"
        )
    return x


@dataclass(frozen=True)
class FixedComponent:
    dimension: int
    subcomplex: SimplicialComplex
    cycle: int | None  # fundamental cycle in the ambient middle chain group


@dataclass(frozen=True)
class FixedSetData:
    subcomplex: SimplicialComplex
    components: tuple
    mid_dimension: int | None
    mid_cycle: int
    mid_class: int | None  # coordinates, None when ambient dimension is odd


class _Basis:
    """Coordinate frame on H_mid: canonical or marked by explicit cycles."""

    def __init__(self, hom, basis_cycles=None):
        self.hom = hom
        if basis_cycles is None:
            self.to_marked = None
            self.cycles = hom.cycles
            return
        basis_cycles = list(basis_cycles)
        if len(basis_cycles) != hom.betti:
            raise InputError(
                f"marked basis has {len(basis_cycles)} cycles, Betti number is {hom.betti}"
            )
        cols = [hom.coordinates_of(z) for z in basis_cycles]
        rows = [0] * hom.betti
        for j, c in enumerate(cols):
            for i in range(hom.betti):
                if (c >> i) & 1:
                    rows[i] |= 1 << j
        T = Gf2Matrix(hom.betti, hom.betti, rows)
        try:
            self.to_marked = gf2_invert(T)
        except InputError:
            raise InputError("marked cycles do not form a homology basis") from None
        self.cycles = tuple(basis_cycles)

    def coords(self, chain: int) -> int:
        c = self.hom.coordinates_of(chain)
        if self.to_marked is None:
            return c
        return self.to_marked.mul_vec(c)

    def transform_form(self, gram_canonical: Gf2Matrix) -> Gf2Matrix:
        if self.to_marked is None:
            return gram_canonical
        # Gram in marked coordinates: columns of T are the marked cycles
        T = gf2_invert(self.to_marked)
        return T.transpose() * gram_canonical * T


def _middle_dimension(space) -> int:
    n = space.dimension
    if n % 2 != 0:
        raise InputError("operation requires an even-dimensional space")
    return n // 2


def fixed_subcomplex(K: SimplicialComplex, tau: SimplicialMap,
                     basis_cycles=None) -> FixedSetData:
    """Pointwise-fixed subcomplex with its middle-dimensional class.

    Components of middle dimension contribute their fundamental cycles to
    the reported class; components of other dimensions are listed but not
    summed.  Requires a regular involution.
    """
    check_involution(K, tau)
    bad = regularity_offender(K, tau)
    if bad is not None:
        raise InputError(f"involution is not regular: simplex {bad} maps onto itself")
    fixed_vertices = {v for v in range(K.vertex_count) if tau(v) == v}
    fixed_simplices = [s for s in K.all_simplices() if all(v in fixed_vertices for v in s)]
    F = SimplicialComplex(K.vertex_count, fixed_simplices)

    components = []
    mid = K.dimension // 2 if K.dimension % 2 == 0 else None
    mid_cycle = 0
    for comp_vertices in F.components():
        comp_simplices = [s for s in fixed_simplices if set(s) <= comp_vertices]
        C = SimplicialComplex(K.vertex_count, comp_simplices)
        cdim = C.dimension
        cycle = None
        if mid is not None and cdim == mid:
            # reindex onto a dense vertex set for the pseudomanifold check
            verts = sorted(comp_vertices)
            lookup = {v: i for i, v in enumerate(verts)}
            dense = SimplicialComplex(
                len(verts), [tuple(lookup[v] for v in s) for s in comp_simplices]
            )
            pseudomanifold_check(dense)
            cycle = 0
            for s in C.simplices(cdim):
                cycle |= 1 << K.index_of(s)
            mid_cycle ^= cycle
        components.append(FixedComponent(cdim, C, cycle))

    mid_class = None
    if mid is not None:
        basis = _Basis(homology(K, mid), basis_cycles)
        mid_class = basis.coords(mid_cycle)
    return FixedSetData(F, tuple(components), mid, mid_cycle, mid_class)


def involution_form(space, tau: SimplicialMap | None = None,
                    basis_cycles=None) -> BilinearFormGF2:
    """Mod-2 form (x, y) -> x . t(y) on middle homology.

    For a simplicial carrier the form is computed on the cohomology side:
    B(x, y) pairs the Poincare dual of x cupped with the pullback of the
    dual of y against the fundamental cycle.  Abstract chain data must
    carry its intersection pairing and involution chain maps.
    """
    if isinstance(space, ChainComplexData):
        mid = space.middle_dimension()
        if space.pairing is None:
            raise InputError("chain data has no intersection pairing")
        hom = homology(space, mid)
        M = induced_map(space, mid)
        gram_can = space.pairing * M
        basis = _Basis(hom, basis_cycles)
        gram = basis.transform_form(gram_can)
        if not gram.is_symmetric():
            raise ModelIntegrityError("involution form is not symmetric", report=gram)
        return BilinearFormGF2(gram)

    K = space
    if tau is None:
        raise InputError("a simplicial involution is required")
    check_involution(K, tau)
    mid = _middle_dimension(K)
    dd = duality_data(K, mid)
    basis = _Basis(dd.hom, basis_cycles)
    duals = [poincare_dual_cocycle(dd, dd.hom.coordinates_of(z)) for z in basis.cycles]
    pulled = [cochain_pullback(tau, mid, d) for d in duals]
    n = len(duals)
    rows = []
    for i in range(n):
        r = 0
        for j in range(n):
            if cup_eval(K, mid, duals[i], pulled[j], dd.fc):
                r |= 1 << j
        rows.append(r)
    gram = Gf2Matrix(n, n, rows)
    if not gram.is_symmetric():
        raise ModelIntegrityError("involution form is not symmetric", report=gram)
    return BilinearFormGF2(gram)


def intersection_form(space, basis_cycles=None) -> BilinearFormGF2:
    """Mod-2 intersection form on middle homology."""
    if isinstance(space, ChainComplexData):
        if space.pairing is None:
            raise InputError("chain data has no intersection pairing")
        basis = _Basis(homology(space, space.middle_dimension()), basis_cycles)
        return BilinearFormGF2(basis.transform_form(space.pairing))
    mid = _middle_dimension(space)
    dd = duality_data(space, mid)
    basis = _Basis(dd.hom, basis_cycles)
    return BilinearFormGF2(basis.transform_form(intersection_form_matrix(dd)))


def _fixed_mid_class(space, tau, basis_cycles=None):
    """Middle class of the fixed set plus the maximal fixed dimension."""
    if isinstance(space, ChainComplexData):
        if space.fixed_class is None:
            raise InputError("chain data does not carry the class of its fixed set")
        return space.fixed_class, None
    data = fixed_subcomplex(space, tau, basis_cycles=basis_cycles)
    max_dim = max((c.dimension for c in data.components), default=-1)
    return data.mid_class, max_dim


def verify_fixed_class_is_characteristic(space, tau=None, basis_cycles=None):
    """Check that the fixed set realizes the characteristic class of the form.

    Returns a report dict with both classes; ``holds`` is the verdict.
    Rejects fixed sets of dimension above the middle (the statement does
    not apply there, e.g. for the identity involution).
    """
    if isinstance(space, ChainComplexData):
        mid = space.middle_dimension()
        fixed_class, _ = _fixed_mid_class(space, tau)
    else:
        mid = _middle_dimension(space)
        fixed_class, max_dim = _fixed_mid_class(space, tau, basis_cycles)
        if max_dim is not None and max_dim > mid:
            raise InputError(
                f"fixed set has dimension {max_dim} above the middle dimension {mid}"
            )
    B = involution_form(space, tau, basis_cycles=basis_cycles)
    chi = characteristic_class(B)
    return {
        "holds": chi == fixed_class,
        "fixed_class": fixed_class,
        "characteristic_class": chi,
        "dimension": B.dimension,
    }


@dataclass(frozen=True)
class TypeVerdict:
    kind: str  # "I_abs" | "I_rel" | "II"
    witness: int  # class of the fixed set, bit-packed coordinates
    compared_against: int | None  # h when the I_rel test was available

    def __str__(self):
        return self.kind


def classify_type(space, tau=None, h: int | None = None, basis_cycles=None) -> TypeVerdict:
    """Type of the involution data from the class of its fixed set.

    I_abs when the fixed set bounds (class zero), I_rel when the class
    equals a caller-supplied distinguished class h, otherwise II.
    """
    fixed_class, _ = _fixed_mid_class(space, tau, basis_cycles)
    if fixed_class is None:
        raise InputError("type classification needs an even-dimensional carrier")
    if fixed_class == 0:
        return TypeVerdict("I_abs", 0, h)
    if h is not None and fixed_class == h:
        return TypeVerdict("I_rel", fixed_class, h)
    return TypeVerdict("II", fixed_class, h)


@dataclass(frozen=True)
class HarnackReport:
    fixed_total_betti: int
    space_total_betti: int
    is_m: bool


def harnack_audit(space, tau=None) -> HarnackReport:
    """Total mod-2 Betti comparison between fixed set and ambient space.

    Equality means an M-object; a fixed set with larger total Betti number
    violates the Smith-theoretic bound and cannot arise from an involution,
    so it is flagged as a model-integrity failure.
    """
    if isinstance(space, ChainComplexData):
        if space.fixed_betti_total is None:
            raise InputError("chain data does not carry fixed-set Betti numbers")
        fix_total = space.fixed_betti_total
    else:
        data = fixed_subcomplex(space, tau)
        fix_total = total_betti(data.subcomplex) if data.subcomplex.dimension >= 0 else 0
    space_total = total_betti(space)
    if fix_total > space_total:
        raise ModelIntegrityError(
            "fixed set total Betti exceeds the ambient total: "
            "not realizable as a conjugation involution",
            report={"fixed": fix_total, "space": space_total},
        )
    return HarnackReport(fix_total, space_total, fix_total == space_total)


@dataclass(frozen=True)
class SmithReport:
    kernel_dimension: int
    h1_trivial: bool
    asserted: bool
    quotient_table: dict = field(compare=False)


def _smith_verdict(kernel_dimension: int, h1_trivial: bool, table=None) -> bool:
    """Assert the kernel bound when the hypothesis holds."""
    if h1_trivial and kernel_dimension > 1:
        raise ModelIntegrityError(
            f"inclusion kernel has dimension {kernel_dimension} > 1 "
            "despite trivial first homology",
            report={"kernel": kernel_dimension, "table": table},
        )
    return h1_trivial


def smith_kernel_bound(K: SimplicialComplex, tau: SimplicialMap) -> SmithReport:
    """Kernel of H_2(Fix) -> H_2(K) for a 4-dimensional carrier.

    When H_1(K) vanishes the kernel dimension is asserted to be at most 1;
    otherwise the number is only reported.  The report carries the ranks
    of the relative homology of (K/tau, Fix) in dimensions 4, 3, 2, the
    groups appearing in the Smith sequence argument.
    """
    if isinstance(K, ChainComplexData):
        raise InputError("the Smith kernel bound needs a geometric complex")
    if K.dimension != 4:
        raise InputError(f"expected a 4-dimensional complex, got dimension {K.dimension}")
    h1_trivial = homology(K, 1).betti == 0
    data = fixed_subcomplex(K, tau)
    F = data.subcomplex

    fix_h2 = homology(F, 2)
    amb = homology(K, 2)
    kernel_dim = 0
    # reindex fixed 2-cycles into the ambient chain group
    fix_simplices = F.simplices(2)
    images = []
    for z in fix_h2.cycles:
        chain = 0
        zz = z
        while zz:
            j = (zz & -zz).bit_length() - 1
            zz &= zz - 1
            chain |= 1 << K.index_of(fix_simplices[j])
        images.append(amb.coordinates_of(chain))
    img_rows, _ = rref(images, amb.betti)
    kernel_dim = fix_h2.betti - len(img_rows)

    table = {k: _orbit_relative_betti(K, tau, k) for k in (4, 3, 2)}
    asserted = _smith_verdict(kernel_dim, h1_trivial, table)
    return SmithReport(kernel_dim, h1_trivial, asserted, table)


def _orbit_relative_betti(K, tau, k) -> int:
    """Betti number of (quotient, fixed set) from the orbit chain complex."""
    from .complexes import orbit_chain_boundaries
    from .homology import _quotient_basis

    boundaries, fixed_flags = orbit_chain_boundaries(K, tau)
    n = K.dimension
    ranks = [boundaries[0].nrows] + [b.ncols for b in boundaries]

    def matrix(kk):
        if 1 <= kk <= n:
            return boundaries[kk - 1]
        if kk == 0:
            return Gf2Matrix.zeros(0, ranks[0])
        if kk == n + 1:
            return Gf2Matrix.zeros(ranks[n], 0)
        return Gf2Matrix.zeros(0, 0)

    def keep(kk):
        if not 0 <= kk <= n:
            return []
        return [j for j in range(ranks[kk]) if not (fixed_flags[kk] >> j) & 1]

    keep_k = keep(k)
    keep_km1 = keep(k - 1)
    keep_kp1 = keep(k + 1)
    pos_km1 = {j: i for i, j in enumerate(keep_km1)}
    pos_k = {j: i for i, j in enumerate(keep_k)}

    def restricted(kk, keep_rows, keep_cols, pos_rows):
        M = matrix(kk)
        rows = [0] * len(keep_rows)
        for new_j, j in enumerate(keep_cols):
            col = M.column(j)
            while col:
                i = (col & -col).bit_length() - 1
                col &= col - 1
                if i in pos_rows:
                    rows[pos_rows[i]] |= 1 << new_j
        return Gf2Matrix(len(keep_rows), len(keep_cols), rows)

    bd_k = restricted(k, keep_km1, keep_k, pos_km1)
    bd_k1 = restricted(k + 1, keep_k, keep_kp1, pos_k)
    return _quotient_basis(k, len(keep_k), bd_k, bd_k1).betti


@dataclass(frozen=True)
class ObstructionVerdict:
    obstructed: bool
    reason: str
    witness: int | None


def parity_obstruction(d: int, B: BilinearFormGF2, invariant_class: int) -> ObstructionVerdict:
    """Odd order or degree obstructs bounding in the complexification.

    The caller supplies a conjugation-invariant class whose self-pairing
    must equal d mod 2; with odd d the form takes a nonzero value on it,
    so the form is not even and the fixed set cannot bound.
    """
    if invariant_class >> B.dimension:
        raise InputError("witness class has too many coordinates")
    self_val = B.self_value(invariant_class)
    if self_val != d % 2:
        raise InputError(
            f"witness validation failed: self-pairing {self_val} does not match order {d}"
        )
    if d % 2 == 1:
        return ObstructionVerdict(True, "odd order cannot bound in complexification",
                                  invariant_class)
    return ObstructionVerdict(False, "no obstruction from parity", None)


def check_m_variety_even_form(space, tau=None, basis_cycles=None) -> dict:
    """M-object with even intersection form must have a bounding fixed set.

    Evaluates the three predicates, asserts the implication, and when the
    input is an M-object additionally asserts the mechanism behind it: the
    involution acts as the identity on mod-2 homology in every dimension.
    """
    harnack = harnack_audit(space, tau)
    form = intersection_form(space, basis_cycles=basis_cycles)
    even = is_even(form)
    fixed_class, _ = _fixed_mid_class(space, tau, basis_cycles)
    report = {
        "is_m": harnack.is_m,
        "even_intersection_form": even,
        "fixed_class": fixed_class,
        "vacuous": not (harnack.is_m and even),
        "trivial_action_checked": False,
    }
    if harnack.is_m:
        n = space.dimension
        for k in range(n + 1):
            hk = homology(space, k)
            if hk.betti == 0:
                continue
            mat = (
                induced_map(space, k)
                if isinstance(space, ChainComplexData)
                else induced_map(tau, k)
            )
            if mat != Gf2Matrix.identity(hk.betti):
                raise ModelIntegrityError(
                    f"M-object whose involution acts nontrivially on H_{k}",
                    report=report,
                )
        report["trivial_action_checked"] = True
    if harnack.is_m and even and fixed_class != 0:
        raise ModelIntegrityError(
            "M-object with even intersection form whose fixed set does not bound",
            report=report,
        )
    return report
