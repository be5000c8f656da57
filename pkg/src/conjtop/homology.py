"""Mod-2 homology and cohomology of complexes, induced maps, cup products.

Works over two kinds of carrier: a :class:`SimplicialComplex`, or abstract
:class:`ChainComplexData` for spaces whose triangulations are too large to
write down.  The abstract path supports homology, induced maps and forms
only; geometric operations (quotients, covers, fixed sets) require an
actual complex.

Homology bases are echelon-canonical: boundary images are put in reduced
row echelon form, cycles are reduced against them and echelonized in turn,
so basis cycles and all coordinates are reproducible.
"""

from __future__ import annotations

from .complexes import SimplicialComplex, SimplicialMap, fundamental_class
from .errors import InputError
from .gf2 import Gf2Matrix, dot, gf2_invert, gf2_kernel_basis, reduce_against, rref


class ChainComplexData:
    """Abstract GF(2) chain complex, optionally with involution data.

    ``boundaries[k]`` is the boundary from k-chains to (k-1)-chains for
    k = 1..n; ``ranks`` fixes the chain ranks in dimensions 0..n.  Optional
    fields: integer boundary matrices, an involution chain map per
    dimension, the Gram matrix of the intersection pairing on the
    canonical middle homology basis, the middle-dimension class of the
    fixed point set in those coordinates, and the total mod-2 Betti number
    of the fixed point set.
    """

    __slots__ = (
        "ranks",
        "boundaries",
        "int_boundaries",
        "involution",
        "pairing",
        "fixed_class",
        "fixed_betti_total",
        "_hom_cache",
    )

    def __init__(
        self,
        ranks,
        boundaries,
        int_boundaries=None,
        involution=None,
        pairing=None,
        fixed_class=None,
        fixed_betti_total=None,
    ):
        self.ranks = tuple(int(r) for r in ranks)
        n = len(self.ranks) - 1
        boundaries = tuple(boundaries)
        if len(boundaries) != n:
            raise InputError(f"expected {n} boundary matrices, got {len(boundaries)}")
        for k, M in enumerate(boundaries, start=1):
            if (M.nrows, M.ncols) != (self.ranks[k - 1], self.ranks[k]):
                raise InputError(f"boundary {k} has shape {M.nrows}x{M.ncols}")
        for k in range(1, n):
            if not (boundaries[k - 1] * boundaries[k]).is_zero():
                raise InputError(f"boundary composition in dimension {k + 1} is nonzero")
        self.boundaries = boundaries
        self.int_boundaries = tuple(int_boundaries) if int_boundaries else None
        if self.int_boundaries:
            for k, (M, B) in enumerate(zip(self.int_boundaries, boundaries), start=1):
                if (M.nrows, M.ncols) != (B.nrows, B.ncols):
                    raise InputError(f"integer boundary {k} shape mismatch")
                if M.mod2() != B:
                    raise InputError(f"integer boundary {k} does not reduce to the GF(2) one")
        if involution is not None:
            involution = tuple(involution)
            if len(involution) != n + 1:
                raise InputError("involution needs one chain map per dimension")
            for k, T in enumerate(involution):
                if (T.nrows, T.ncols) != (self.ranks[k], self.ranks[k]):
                    raise InputError(f"involution chain map {k} has the wrong shape")
                if T * T != Gf2Matrix.identity(self.ranks[k]):
                    raise InputError(f"involution chain map {k} does not square to identity")
            for k in range(1, n + 1):
                if involution[k - 1] * boundaries[k - 1] != boundaries[k - 1] * involution[k]:
                    raise InputError(f"involution does not commute with boundary {k}")
        self.involution = involution
        self._hom_cache = {}
        self.pairing = pairing
        self.fixed_class = fixed_class
        self.fixed_betti_total = fixed_betti_total
        if pairing is not None:
            mid = self.middle_dimension()
            b = homology(self, mid).betti
            if (pairing.nrows, pairing.ncols) != (b, b):
                raise InputError(
                    f"pairing is {pairing.nrows}x{pairing.ncols}, middle Betti is {b}"
                )
            if not pairing.is_symmetric():
                raise InputError("intersection pairing must be symmetric")
        if fixed_class is not None and pairing is not None:
            if fixed_class >> self.pairing.nrows:
                raise InputError("fixed class has more coordinates than the middle Betti")

    @property
    def dimension(self):
        return len(self.ranks) - 1

    def middle_dimension(self):
        n = self.dimension
        if n % 2 != 0:
            raise InputError("middle dimension undefined for odd-dimensional data")
        return n // 2

    def boundary_matrix(self, k):
        if 1 <= k <= self.dimension:
            return self.boundaries[k - 1]
        rows = self.ranks[k - 1] if 0 <= k - 1 <= self.dimension else 0
        cols = self.ranks[k] if 0 <= k <= self.dimension else 0
        return Gf2Matrix.zeros(rows, cols)

    def n_simplices(self, k):
        return self.ranks[k] if 0 <= k <= self.dimension else 0

    def __eq__(self, other):
        return (
            isinstance(other, ChainComplexData)
            and self.ranks == other.ranks
            and self.boundaries == other.boundaries
            and self.int_boundaries == other.int_boundaries
            and self.involution == other.involution
            and self.pairing == other.pairing
            and self.fixed_class == other.fixed_class
            and self.fixed_betti_total == other.fixed_betti_total
        )


class HomologyBasis:
    """Canonical basis of a homology group with coordinate services.

    ``cycles`` are bit-packed chains over the complex's k-simplices (or
    over the restricted simplices when ``chart`` is set by a relative
    computation).
    """

    __slots__ = ("dimension", "n_chains", "betti", "cycles", "chart", "_b_rows", "_b_pivots",
                 "_h_pivots")

    def __init__(self, dimension, n_chains, cycles, b_rows, b_pivots, h_pivots, chart=None):
        self.dimension = dimension
        self.n_chains = n_chains
        self.cycles = tuple(cycles)
        self.betti = len(self.cycles)
        self.chart = chart
        self._b_rows = tuple(b_rows)
        self._b_pivots = tuple(b_pivots)
        self._h_pivots = tuple(h_pivots)

    def coordinates_of(self, chain: int) -> int:
        """Coordinates of a cycle's class in this basis (bit-packed)."""
        if chain >> self.n_chains:
            raise InputError("chain has more coordinates than there are simplices")
        v = reduce_against(chain, self._b_rows, self._b_pivots)
        coords = 0
        for i, (row, p) in enumerate(zip(self.cycles_reduced(), self._h_pivots)):
            if (v >> p) & 1:
                coords |= 1 << i
                v ^= row
        if v != 0:
            raise InputError("chain is not a cycle (its class has no coordinates)")
        return coords

    def cycles_reduced(self):
        # canonical cycles are already reduced modulo boundaries and in RREF
        return self.cycles

    def class_of(self, chain: int):
        return self.coordinates_of(chain)

    def __repr__(self):
        return f"HomologyBasis(dim={self.dimension}, betti={self.betti})"


def _quotient_basis(dimension, n_chains, cycle_matrix, image_matrix, chart=None):
    """Echelon-canonical basis of ker/im from two matrices.

    ``cycle_matrix``: matrix whose kernel is the cycle space (boundary out
    of dimension k); ``image_matrix``: matrix whose column space is the
    boundary subspace (boundary into dimension k).
    """
    z_basis = gf2_kernel_basis(cycle_matrix)
    # columns of image_matrix span the boundary subspace
    cols = [image_matrix.column(j) for j in range(image_matrix.ncols)]
    b_rows, b_pivots = rref(cols, n_chains)
    reduced = []
    for z in z_basis:
        r = reduce_against(z, b_rows, b_pivots)
        if r:
            reduced.append(r)
    h_rows, h_pivots = rref(reduced, n_chains)
    return HomologyBasis(dimension, n_chains, h_rows, b_rows, b_pivots, h_pivots, chart=chart)


def homology(space, k: int, rel=None) -> HomologyBasis:
    """Canonical mod-2 homology basis in dimension k.

    ``space`` is a SimplicialComplex or ChainComplexData.  ``rel``, a
    subcomplex of a simplicial ``space``, switches to relative homology of
    the pair; relative bases carry a ``chart`` listing which simplices of
    the ambient complex index their coordinates.
    """
    if isinstance(space, ChainComplexData):
        if rel is not None:
            raise InputError("relative homology is unavailable for abstract chain data")
        cache = space._hom_cache
        if k in cache:
            return cache[k]
        basis = _quotient_basis(
            k, space.n_simplices(k), space.boundary_matrix(k), space.boundary_matrix(k + 1)
        )
        cache[k] = basis
        return basis
    if not isinstance(space, SimplicialComplex):
        raise InputError(f"unsupported space type {type(space).__name__}")
    if rel is None:
        cache = space._hom_cache
        if k in cache:
            return cache[k]
        basis = _quotient_basis(
            k, space.n_simplices(k), space.boundary_matrix(k), space.boundary_matrix(k + 1)
        )
        cache[k] = basis
        return basis

    if isinstance(rel, SimplicialComplex):
        if not space.contains_subcomplex(rel):
            raise InputError("rel is not a subcomplex of the ambient complex")
        rel_simplices = set(rel.all_simplices())
    else:
        rel_simplices = set(tuple(s) for s in rel)
        sub = space.subcomplex(rel_simplices)
        if set(sub.all_simplices()) != rel_simplices:
            raise InputError("rel simplices are not closed under faces")

    def restrict(kk):
        keep = [
            j for j, s in enumerate(space.simplices(kk)) if s not in rel_simplices
        ]
        return keep

    keep_k = restrict(k)
    keep_km1 = restrict(k - 1)
    keep_kp1 = restrict(k + 1)
    pos_km1 = {j: i for i, j in enumerate(keep_km1)}
    pos_k = {j: i for i, j in enumerate(keep_k)}

    def restricted_boundary(kk, keep_rows, keep_cols, pos_rows):
        M = space.boundary_matrix(kk)
        rows = [0] * len(keep_rows)
        for new_j, j in enumerate(keep_cols):
            col = M.column(j)
            while col:
                i = (col & -col).bit_length() - 1
                col &= col - 1
                if i in pos_rows:
                    rows[pos_rows[i]] |= 1 << new_j
        return Gf2Matrix(len(keep_rows), len(keep_cols), rows)

    bd_k = restricted_boundary(k, keep_km1, keep_k, pos_km1)
    bd_k1 = restricted_boundary(k + 1, keep_k, keep_kp1, pos_k)
    chart = tuple(keep_k)
    return _quotient_basis(k, len(keep_k), bd_k, bd_k1, chart=chart)


def betti_numbers(space):
    n = space.dimension
    return tuple(homology(space, k).betti for k in range(n + 1))


def total_betti(space) -> int:
    return sum(betti_numbers(space))


def coboundary_matrix(space, k: int) -> Gf2Matrix:
    """Coboundary from k-cochains to (k+1)-cochains (transposed boundary)."""
    return space.boundary_matrix(k + 1).transpose()


def cohomology(space, k: int) -> HomologyBasis:
    """Canonical mod-2 cohomology basis in dimension k."""
    if isinstance(space, SimplicialComplex):
        cache = space._coh_cache
        if k in cache:
            return cache[k]
    basis = _quotient_basis(
        k, space.n_simplices(k), coboundary_matrix(space, k), coboundary_matrix(space, k - 1)
    )
    if isinstance(space, SimplicialComplex):
        space._coh_cache[k] = basis
    return basis


def is_cocycle(space, k: int, cochain: int) -> bool:
    return coboundary_matrix(space, k).mul_vec(cochain) == 0


def chain_map_image(f: SimplicialMap, k: int, chain: int) -> int:
    """Push a k-chain through a simplicial map; degenerate images drop out."""
    src = f.source.simplices(k)
    out = 0
    c = chain
    while c:
        j = (c & -c).bit_length() - 1
        c &= c - 1
        s = src[j]
        img = f.map_simplex(s)
        if len(img) == len(s):
            out ^= 1 << f.target.index_of(img)
    return out


def cochain_pullback(f: SimplicialMap, k: int, cochain: int) -> int:
    """Pull a k-cochain on the target back along a simplicial map."""
    out = 0
    for j, s in enumerate(f.source.simplices(k)):
        img = f.map_simplex(s)
        if len(img) == len(s) and (cochain >> f.target.index_of(img)) & 1:
            out |= 1 << j
    return out


def induced_map(f_or_data, k: int, source_basis=None, target_basis=None) -> Gf2Matrix:
    """Matrix of the induced map on mod-2 homology in dimension k.

    Accepts a SimplicialMap, or ChainComplexData carrying an involution
    chain map.  Columns are coordinates of the images of the source basis
    cycles in the target basis.
    """
    if isinstance(f_or_data, ChainComplexData):
        data = f_or_data
        if data.involution is None:
            raise InputError("chain data carries no involution chain map")
        basis = source_basis or homology(data, k)
        tgt = target_basis or basis
        T = data.involution[k] if 0 <= k <= data.dimension else None
        cols = []
        for z in basis.cycles:
            img = T.mul_vec(z) if T is not None else 0
            cols.append(tgt.coordinates_of(img))
        return _matrix_from_coord_columns(cols, tgt.betti)
    f = f_or_data
    src_basis = source_basis or homology(f.source, k)
    dst_basis = target_basis or homology(f.target, k)
    cols = []
    for z in src_basis.cycles:
        img = chain_map_image(f, k, z)
        cols.append(dst_basis.coordinates_of(img))
    return _matrix_from_coord_columns(cols, dst_basis.betti)


def _matrix_from_coord_columns(cols, nrows):
    rows = [0] * nrows
    for j, c in enumerate(cols):
        while c:
            i = (c & -c).bit_length() - 1
            c &= c - 1
            rows[i] |= 1 << j
    return Gf2Matrix(nrows, len(cols), rows)


def cup_eval(K: SimplicialComplex, k: int, a: int, b: int, fc: int | None = None) -> int:
    """Evaluate the front-face/back-face product of cochains on [K].

    ``a`` has degree k, ``b`` degree n-k; evaluation runs over the top
    simplices in the fundamental cycle using the global vertex order.
    """
    n = K.dimension
    if fc is None:
        fc = fundamental_class(K)
    total = 0
    tops = K.simplices(n)
    c = fc
    while c:
        j = (c & -c).bit_length() - 1
        c &= c - 1
        s = tops[j]
        front = s[: k + 1]
        back = s[k:]
        if (a >> K.index_of(front)) & 1 and (b >> K.index_of(back)) & 1:
            total ^= 1
    return total


def cup_pairing(K: SimplicialComplex, k: int, a: int, b: int) -> int:
    """Cup-product pairing of two cocycles of complementary degrees."""
    n = K.dimension
    if not 0 <= k <= n:
        raise InputError(f"degree {k} out of range for a {n}-complex")
    if a >> K.n_simplices(k) or b >> K.n_simplices(n - k):
        raise InputError("cochain width does not match the simplex count")
    if not is_cocycle(K, k, a):
        raise InputError("first argument is not a cocycle")
    if not is_cocycle(K, n - k, b):
        raise InputError("second argument is not a cocycle")
    return cup_eval(K, k, a, b)


class DualityData:
    """Cohomology bases plus cup data needed for Poincare duality work."""

    __slots__ = ("K", "k", "hom", "coh", "coh_dual", "cup", "cup_inv", "eval_matrix", "fc")

    def __init__(self, K, k, hom, coh, coh_dual, cup, cup_inv, eval_matrix, fc):
        self.K = K
        self.k = k
        self.hom = hom
        self.coh = coh
        self.coh_dual = coh_dual
        self.cup = cup
        self.cup_inv = cup_inv
        self.eval_matrix = eval_matrix
        self.fc = fc


def duality_data(K: SimplicialComplex, k: int) -> DualityData:
    """Duality package in degree k of a closed pseudomanifold.

    Raises when the cup pairing between degrees k and n-k degenerates or
    the evaluation pairing is singular; such inputs fail the duality audit
    and the middle-dimension form is not defined for them.
    """
    n = K.dimension
    fc = fundamental_class(K)
    hom = homology(K, k)
    coh = cohomology(K, k)
    coh_dual = cohomology(K, n - k)
    if hom.betti != coh.betti:
        raise InputError("evaluation pairing is degenerate (betti mismatch)")
    cup = Gf2Matrix(
        coh.betti,
        coh_dual.betti,
        (
            sum(
                cup_eval(K, k, ci, dj, fc) << j
                for j, dj in enumerate(coh_dual.cycles)
            )
            for ci in coh.cycles
        ),
    )
    eval_matrix = Gf2Matrix(
        coh.betti,
        hom.betti,
        (
            sum(dot(ci, zj) << j for j, zj in enumerate(hom.cycles))
            for ci in coh.cycles
        ),
    )
    if coh.betti != coh_dual.betti:
        raise InputError(
            f"duality audit failed: betti {coh.betti} in degree {k} vs "
            f"{coh_dual.betti} in degree {n - k}"
        )
    try:
        cup_inv = gf2_invert(cup)
    except InputError:
        raise InputError(
            f"duality audit failed: cup pairing degenerate in degree {k}"
        ) from None
    try:
        gf2_invert(eval_matrix)
    except InputError:
        raise InputError("evaluation pairing between cohomology and homology is singular")
    return DualityData(K, k, hom, coh, coh_dual, cup, cup_inv, eval_matrix, fc)


def duality_audit(K: SimplicialComplex) -> bool:
    """Cup-pairing nondegeneracy check in every degree; True or raises."""
    n = K.dimension
    for k in range(n + 1):
        duality_data(K, k)
    return True


def poincare_dual_cocycle(dd: DualityData, hom_coords: int) -> int:
    """Cocycle Poincare-dual to a homology class given in basis coordinates.

    The dual is characterized by: evaluating any cocycle c on the class
    equals evaluating c cup dual on the fundamental cycle.
    """
    e = dd.eval_matrix.mul_vec(hom_coords)
    lam = dd.cup_inv.mul_vec(e)
    out = 0
    l = lam
    while l:
        i = (l & -l).bit_length() - 1
        l &= l - 1
        out ^= dd.coh_dual.cycles[i]
    return out


def intersection_form_matrix(dd: DualityData) -> Gf2Matrix:
    """Mod-2 intersection form on the canonical homology basis."""
    duals = [poincare_dual_cocycle(dd, 1 << i) for i in range(dd.hom.betti)]
    rows = []
    for i in range(dd.hom.betti):
        r = 0
        for j in range(dd.hom.betti):
            if cup_eval(dd.K, dd.K.dimension - dd.k, duals[i], duals[j], dd.fc):
                r |= 1 << j
        rows.append(r)
    return Gf2Matrix(dd.hom.betti, dd.hom.betti, rows)
