"""Cut-and-glue double coverings, semi-orientations, and dividing tests.

Covers are built sheet-combinatorially: each top simplex of the base gets
two labelled copies and crossing a codimension-1 simplex of the cutting
chain flips the sheet.  Vertices of the total space are equivalence
classes of (top simplex, sheet, vertex) triples under the gluing; over the
branch locus the classes merge into a single sheet, which is exactly the
branching behaviour.

Semi-orientations (orientations up to a global flip) are stored by signs
on top simplices with a canonical representative: the lowest-indexed top
simplex carries +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    check_involution,
    pseudomanifold_check,
)
from .errors import InputError, ModelIntegrityError
from .gf2 import gf2_solve
from .homology import is_cocycle
from .involutions import TypeVerdict, fixed_subcomplex


# ---------------------------------------------------------------------------
# semi-orientations
# ---------------------------------------------------------------------------


def _perm_parity(seq) -> int:
    """Parity (0 even, 1 odd) of the permutation sorting ``seq``."""
    seq = list(seq)
    parity = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                parity ^= 1
    return parity


class SemiOrientation:
    """Pair of mutually opposite orientations of a pure-top-dimension carrier.

    ``signs[t]`` orients top simplex number ``t`` relative to its sorted
    vertex order; the stored representative is canonical (lowest top
    simplex positive), and equality is equality of canonical
    representatives.
    """

    __slots__ = ("carrier", "signs")

    def __init__(self, carrier: SimplicialComplex, signs):
        signs = tuple(int(s) for s in signs)
        n = carrier.dimension
        if len(signs) != carrier.n_simplices(n):
            raise InputError("need one sign per top simplex")
        if any(s not in (1, -1) for s in signs):
            raise InputError("signs must be +1 or -1")
        covered = set()
        for s in carrier.simplices(n):
            for k in range(1, len(s) + 1):
                covered.update(combinations(s, k))
        for s in carrier.all_simplices():
            if s not in covered:
                raise InputError(f"carrier is not pure: {s} is not a face of a top simplex")
        if signs and signs[0] == -1:
            signs = tuple(-s for s in signs)
        self.carrier = carrier
        self.signs = signs

    def flipped(self) -> "SemiOrientation":
        # canonicalization makes the flip the identity; kept for clarity
        return SemiOrientation(self.carrier, tuple(-s for s in self.signs))

    def representative(self):
        return self.signs

    def __eq__(self, other):
        return (
            isinstance(other, SemiOrientation)
            and self.carrier == other.carrier
            and self.signs == other.signs
        )

    def __hash__(self):
        return hash((self.carrier, self.signs))

    def __repr__(self):
        return f"SemiOrientation({''.join('+' if s > 0 else '-' for s in self.signs)})"


def oriented_boundary_edges(simplex, sign):
    """Directed boundary edges of an oriented triangle.

    With positive sign the cycle is v0 -> v1 -> v2 -> v0 on the sorted
    vertices; negative sign reverses it.
    """
    a, b, c = simplex
    if sign > 0:
        return ((a, b), (b, c), (c, a))
    return ((b, a), (c, b), (a, c))


def induced_edge_direction(simplex, sign, edge):
    """Direction a triangle's orientation induces on one of its edges."""
    for (x, y) in oriented_boundary_edges(simplex, sign):
        if (min(x, y), max(x, y)) == edge:
            return (x, y)
    raise InputError(f"edge {edge} is not a face of {simplex}")


def _top_adjacency(K: SimplicialComplex, excluded_faces=frozenset()):
    """Pairs of top simplices glued across non-excluded codim-1 faces."""
    n = K.dimension
    out = []
    for i, cof in enumerate(K.cofaces(n - 1)):
        face = K.simplices(n - 1)[i]
        if face in excluded_faces:
            continue
        if len(cof) == 2:
            out.append((face, cof[0], cof[1]))
    return out


def propagate_signs(K: SimplicialComplex, flip_edges=frozenset(), cut_edges=frozenset()):
    """Signs on the triangles of a surface under per-edge constraints.

    Orientations must be coherent across ordinary interior edges,
    anti-coherent (deliberately flipped) across ``flip_edges``, and are
    unconstrained across ``cut_edges``.  Returns the sign tuple or None
    when the constraints cannot be met.
    """
    if K.dimension != 2:
        raise InputError("orientation propagation implemented for surfaces only")
    tops = K.simplices(2)
    m = len(tops)
    signs = [0] * m
    adj = [[] for _ in range(m)]
    for face, a, b in _top_adjacency(K, cut_edges):
        flip = face in flip_edges
        adj[a].append((b, face, flip))
        adj[b].append((a, face, flip))
    for start in range(m):
        if signs[start]:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for (u, face, flip) in adj[t]:
                # coherent = induced directions on the shared edge disagree
                dir_t = induced_edge_direction(tops[t], signs[t], face)
                want = -1 if induced_edge_direction(tops[u], 1, face) == dir_t else 1
                if flip:
                    want = -want
                if signs[u] == 0:
                    signs[u] = want
                    stack.append(u)
                elif signs[u] != want:
                    return None
    return tuple(signs)


def orient_surface(K: SimplicialComplex, excluded_edges=frozenset()):
    """Coherent signs on a surface cut along some edges, or None."""
    return propagate_signs(K, cut_edges=excluded_edges)


def is_coherent(semi: SemiOrientation, excluded_edges=frozenset()) -> bool:
    """Coherence of a semi-orientation away from given codimension-1 faces.

    Surfaces: adjacent triangles must induce opposite directions on shared
    edges.  Curves: every interior vertex must have one incoming and one
    outgoing edge.
    """
    K = semi.carrier
    if K.dimension == 1:
        flow = {}
        for e, s in zip(K.simplices(1), semi.signs):
            tail, head = e if s > 0 else (e[1], e[0])
            flow[tail] = flow.get(tail, [0, 0])
            flow[tail][1] += 1
            flow[head] = flow.get(head, [0, 0])
            flow[head][0] += 1
        for (v,) in K.simplices(0):
            if (v,) in excluded_edges:
                continue
            inn, out = flow.get(v, (0, 0))
            if inn != out:
                return False
        return True
    tops = K.simplices(2)
    for face, a, b in _top_adjacency(K, excluded_edges):
        da = induced_edge_direction(tops[a], semi.signs[a], face)
        db = induced_edge_direction(tops[b], semi.signs[b], face)
        if da == db:
            return False
    return True


def pushforward_semiorientation(f: SimplicialMap, semi: SemiOrientation) -> tuple:
    """Signs induced on the target tops by a simplicial automorphism.

    Returns the raw (non-canonical) sign tuple so that reversal against a
    reference orientation stays visible.
    """
    K = semi.carrier
    n = K.dimension
    tops = K.simplices(n)
    out = [0] * len(tops)
    for t, s in enumerate(tops):
        img_seq = [f(v) for v in s]
        img = tuple(sorted(img_seq))
        if len(set(img_seq)) != len(s):
            raise InputError("automorphism degenerates a top simplex")
        j = K.index_of(img)
        out[j] = semi.signs[t] * (-1 if _perm_parity(img_seq) else 1)
    return tuple(out)


# ---------------------------------------------------------------------------
# covering complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverComplex:
    """Double cover with projection, deck involution, and sheet labels."""

    total: SimplicialComplex
    projection: SimplicialMap
    deck: SimplicialMap
    sheet_labels: tuple  # per total top simplex: (base top index, sheet bit)
    branch: SimplicialComplex | None = None


def _validate_cover(cover: CoverComplex, base: SimplicialComplex):
    total, proj, deck = cover.total, cover.projection, cover.deck
    if proj.compose(deck).images != proj.images:
        raise ModelIntegrityError("projection does not absorb the deck transformation")
    if not deck.is_involution():
        raise ModelIntegrityError("deck transformation is not an involution")
    branch_vertices = set()
    if cover.branch is not None:
        for (v,) in cover.branch.simplices(0):
            branch_vertices.add(v)
    fibers = {}
    for v in range(total.vertex_count):
        fibers.setdefault(proj(v), set()).add(v)
    for v, fib in fibers.items():
        want = 1 if v in branch_vertices else 2
        if len(fib) != want:
            raise ModelIntegrityError(
                f"fiber over vertex {v} has {len(fib)} points, expected {want}"
            )
    for v in range(total.vertex_count):
        fixed = deck(v) == v
        if fixed != (proj(v) in branch_vertices):
            raise ModelIntegrityError(
                f"deck fixes vertex {v} iff it should lie over the branch locus"
            )
    chi_total = total.euler_characteristic()
    chi_base = base.euler_characteristic()
    chi_branch = cover.branch.euler_characteristic() if cover.branch is not None else 0
    if chi_total != 2 * chi_base - chi_branch:
        raise ModelIntegrityError(
            f"Euler characteristic law violated: {chi_total} != 2*{chi_base} - {chi_branch}"
        )


def double_cover_unbranched(K: SimplicialComplex, w: int) -> CoverComplex:
    """Double cover classified by a 1-cocycle: sheets flip across w-edges.

    Vertices double; within each simplex the sheet of every vertex is the
    root sheet shifted by w on the edge to the lowest vertex (the cocycle
    condition makes this consistent).  The total space is connected
    exactly when the class of w is nonzero.
    """
    if w >> K.n_simplices(1):
        raise InputError("cocycle width does not match the number of edges")
    if not is_cocycle(K, 1, w):
        raise InputError("the given 1-cochain is not a cocycle")

    def edge_bit(a, b):
        if a == b:
            return 0
        e = (min(a, b), max(a, b))
        return (w >> K.index_of(e)) & 1

    nv = K.vertex_count
    simplices = []
    for s in K.all_simplices():
        v0 = s[0]
        for sheet in (0, 1):
            simplices.append(tuple(sorted(v + nv * (sheet ^ edge_bit(v0, v)) for v in s)))
    total = SimplicialComplex(2 * nv, simplices)
    proj = SimplicialMap(total, K, [v % nv for v in range(2 * nv)])
    deck = SimplicialMap(total, total, [(v + nv) % (2 * nv) for v in range(2 * nv)])
    cover = CoverComplex(total, proj, deck, _sheet_labels_from_projection(total, K, proj))
    _validate_cover(cover, K)
    return cover


def _sheet_labels_from_projection(total, base, proj):
    n = base.dimension
    base_tops = base.simplices(n)
    seen = {}
    labels = []
    for t in total.simplices(n):
        img = tuple(sorted(proj(v) for v in t))
        bi = base.index_of(img)
        sheet = seen.get(bi, 0)
        seen[bi] = sheet + 1
        labels.append((bi, sheet))
    return tuple(labels)


def _boundary_support(K: SimplicialComplex, chain_simplices, k: int):
    """Support of the mod-2 boundary of a k-chain given as simplex list."""
    count = {}
    for s in chain_simplices:
        for f in combinations(s, k):
            count[f] = count.get(f, 0) ^ 1
    return [f for f, c in count.items() if c]


def branched_double_cover(K: SimplicialComplex, cut_simplices) -> CoverComplex:
    """Double cover branched over the boundary of the cutting chain.

    ``cut_simplices`` is a mod-2 chain of codimension-1 simplices; the
    branch locus A is the closure of its boundary and must be a full
    subcomplex.  Two copies of each top simplex are glued so the sheet
    flips exactly across the cut; over A the sheets merge.
    """
    n = pseudomanifold_check(K)
    cut = set()
    for s in cut_simplices:
        s = tuple(s)
        if not K.has_simplex(s) or len(s) != n:
            raise InputError(f"cut chain entry {s} is not a codimension-1 simplex")
        cut.symmetric_difference_update({s})

    boundary_support = _boundary_support(K, cut, n - 1)
    branch_simplices = set()
    for f in boundary_support:
        for k in range(1, len(f) + 1):
            branch_simplices.update(combinations(f, k))
    branch_vertices = {v for s in branch_simplices for v in s}
    within = set(map(tuple, K.simplices_within(branch_vertices)))
    if within != branch_simplices:
        extra = sorted(within - branch_simplices)[:3]
        raise InputError(
            f"branch locus is not full: ambient simplices {extra} span branch vertices; "
            "subdivide first"
        )

    tops = K.simplices(n)
    m = len(tops)

    # union-find over (top, sheet, vertex) triples
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for t in range(m):
        for sheet in (0, 1):
            for v in tops[t]:
                find((t, sheet, v))
    for face, a, b in _top_adjacency(K):
        flip = 1 if face in cut else 0
        for sheet in (0, 1):
            for v in face:
                union((a, sheet, v), (b, sheet ^ flip, v))

    classes = sorted({find(x) for x in list(parent)})
    class_index = {c: i for i, c in enumerate(classes)}

    def vertex_of(t, sheet, v):
        return class_index[find((t, sheet, v))]

    total_tops = []
    label_of = {}
    for t in range(m):
        for sheet in (0, 1):
            vs = tuple(sorted(vertex_of(t, sheet, v) for v in tops[t]))
            if len(set(vs)) != len(vs):
                raise InputError(
                    f"cut-and-glue degenerates top simplex {tops[t]}; subdivide first"
                )
            if vs in label_of:
                raise InputError(
                    f"cut-and-glue identifies both copies of {tops[t]}; subdivide first"
                )
            label_of[vs] = (t, sheet)
            total_tops.append(vs)
    total = SimplicialComplex.from_simplices(len(classes), total_tops)

    proj_images = [0] * len(classes)
    deck_images = [0] * len(classes)
    for (t, sheet, v), _ in list(parent.items()):
        i = vertex_of(t, sheet, v)
        proj_images[i] = v
        deck_images[i] = vertex_of(t, 1 - sheet, v)
    proj = SimplicialMap(total, K, proj_images)
    deck = SimplicialMap(total, total, deck_images)

    branch = SimplicialComplex(K.vertex_count, branch_simplices) if branch_simplices \
        else None
    labels = []
    for tt in total.simplices(n):
        labels.append(label_of[tt])
    cover = CoverComplex(total, proj, deck, tuple(labels), branch)
    _validate_cover(cover, K)
    if branch is not None:
        _check_branch_preimage(cover, K, branch_simplices)
    return cover


def _check_branch_preimage(cover: CoverComplex, K, branch_simplices):
    """Branch simplices must be single-sheeted and deck-fixed upstairs."""
    total, proj, deck = cover.total, cover.projection, cover.deck
    preimages = {s: [] for s in branch_simplices}
    for s in total.all_simplices():
        img = tuple(sorted(proj(v) for v in s))
        if img in preimages and len(set(proj(v) for v in s)) == len(s):
            preimages[img].append(s)
    for s, pre in preimages.items():
        if len(pre) != 1:
            raise ModelIntegrityError(
                f"branch simplex {s} has {len(pre)} preimages, expected 1"
            )
    fixed = {s for s in total.all_simplices() if all(deck(v) == v for v in s)}
    expected = {pre[0] for pre in preimages.values()}
    if fixed != expected:
        raise ModelIntegrityError("deck-fixed simplices differ from the branch preimage")


# ---------------------------------------------------------------------------
# dividing test and complex semi-orientations of curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DividingVerdict:
    dividing: bool
    halves: tuple | None  # two frozensets of top indices when dividing
    component_count: int


def dividing_test(K: SimplicialComplex, tau: SimplicialMap) -> DividingVerdict:
    """Does the fixed curve separate the surface into two swapped halves?

    Components of the complement are computed on the top-simplex adjacency
    graph cut along the fixed edges.  Exactly two components swapped by
    the involution means dividing; a single invariant component means
    non-dividing; anything else cannot come from a real structure and is
    refused.
    """
    if K.dimension != 2:
        raise InputError("dividing test runs on surface complexes")
    pseudomanifold_check(K)
    if len(K.components()) != 1:
        raise InputError("dividing test needs a connected surface")
    check_involution(K, tau)
    data = fixed_subcomplex(K, tau)
    F = data.subcomplex
    if F.dimension >= 0 and any(c.dimension != 1 for c in data.components):
        raise InputError("fixed set must be a curve (all components one-dimensional)")
    fixed_edges = frozenset(F.simplices(1))

    tops = K.simplices(2)
    m = len(tops)
    adj = _adj_cache(K, fixed_edges)
    comp = [-1] * m
    n_comp = 0
    for start in range(m):
        if comp[start] >= 0:
            continue
        comp[start] = n_comp
        stack = [start]
        while stack:
            t = stack.pop()
            for u, face in adj[t]:
                if comp[u] < 0:
                    comp[u] = n_comp
                    stack.append(u)
        n_comp += 1

    if n_comp == 1:
        return DividingVerdict(False, None, 1)
    if n_comp == 2:
        # the involution must swap the two components
        def image_comp(t):
            img = tuple(sorted(tau(v) for v in tops[t]))
            return comp[K.index_of(img)]

        c0 = frozenset(t for t in range(m) if comp[t] == 0)
        c1 = frozenset(t for t in range(m) if comp[t] == 1)
        swapped = all(image_comp(t) == 1 for t in c0) and all(
            image_comp(t) == 0 for t in c1
        )
        if swapped:
            return DividingVerdict(True, (c0, c1), 2)
        raise InputError(
            "complement has two components but the involution preserves them: "
            "not a real-structure pattern"
        )
    raise InputError(
        f"complement of the fixed curve has {n_comp} components: "
        "not a real-structure pattern"
    )


def _adj_cache(K, excluded_edges):
    adj = [[] for _ in range(K.n_simplices(2))]
    for face, a, b in _top_adjacency(K, excluded_edges):
        adj[a].append((b, face))
        adj[b].append((a, face))
    return adj


def curve_complex_semiorientation(K: SimplicialComplex, tau: SimplicialMap):
    """Boundary semi-orientation the two halves induce on the fixed curve.

    Requires a dividing involution and orientable halves.  A global
    orientation of the surface restricts to the halves; each half induces
    a direction on every fixed edge and the two inductions must be
    opposite.  Flipping the global orientation flips both at once, so only
    the semi-orientation of the curve is well defined.
    """
    verdict = dividing_test(K, tau)
    if not verdict.dividing:
        raise InputError("complex semi-orientation needs a dividing involution")
    data = fixed_subcomplex(K, tau)
    F = data.subcomplex
    fixed_edges = tuple(F.simplices(1))
    if not fixed_edges:
        raise InputError("fixed curve has no edges")

    signs = orient_surface(K)
    if signs is None:
        raise ModelIntegrityError(
            "surface is non-orientable: halves cannot induce orientations"
        )
    half0, half1 = verdict.halves
    tops = K.simplices(2)
    edge_cofaces = {}
    for face, a, b in _top_adjacency(K):
        if face in set(fixed_edges):
            edge_cofaces[face] = (a, b)

    directions = {}
    for e in fixed_edges:
        a, b = edge_cofaces[e]
        ta, tb = (a, b) if a in half0 else (b, a)
        d0 = induced_edge_direction(tops[ta], signs[ta], e)
        d1 = induced_edge_direction(tops[tb], signs[tb], e)
        if d0 == d1:
            raise ModelIntegrityError(
                f"halves induce the same direction on fixed edge {e}"
            )
        directions[e] = d0

    carrier = SimplicialComplex(K.vertex_count, F.all_simplices())
    carrier_edges = carrier.simplices(1)
    edge_signs = [1 if directions[e] == e else -1 for e in carrier_edges]
    return SemiOrientation(carrier, edge_signs)


# ---------------------------------------------------------------------------
# orientation coverings and orientations modulo curves
# ---------------------------------------------------------------------------


def extendibility_check(X: SimplicialComplex, Y, semi: SemiOrientation) -> dict:
    """Per-component verdicts: does the orientation flip across each curve?

    ``Y`` is a 1-subcomplex (cycle); ``semi`` must be coherent away from
    Y's edges.  A component across which the two sides induce the same
    edge direction is a flip (the orientation does not extend), one with
    opposite inductions extends.
    """
    Y = _as_curve_subcomplex(X, Y)
    y_edges = frozenset(Y.simplices(1))
    if semi.carrier != X:
        raise InputError("semi-orientation must live on the ambient surface")
    if not is_coherent(semi, y_edges):
        raise InputError("orientation is not coherent away from the curve")
    tops = X.simplices(2)
    comp_of = {}
    for i, comp in enumerate(Y.components()):
        for v in comp:
            comp_of[v] = i
    verdicts = {}
    for face, a, b in _top_adjacency(X):
        if face not in y_edges:
            continue
        da = induced_edge_direction(tops[a], semi.signs[a], face)
        db = induced_edge_direction(tops[b], semi.signs[b], face)
        flips = da == db
        c = comp_of[face[0]]
        if c in verdicts and verdicts[c] != flips:
            raise InputError(
                f"curve component {c} has mixed flip behaviour: not a coherent cut"
            )
        verdicts[c] = flips
    return {c: ("flips" if f else "extends") for c, f in verdicts.items()}


def _as_curve_subcomplex(X, Y):
    if isinstance(Y, SimplicialComplex):
        if not X.contains_subcomplex(Y):
            raise InputError("curve is not a subcomplex of the surface")
        sub = Y
    else:
        sub = X.subcomplex([tuple(s) for s in Y])
    if sub.dimension > 1:
        raise InputError("cutting locus must be one-dimensional")
    b = _boundary_support(X, sub.simplices(1), 1)
    if b:
        raise InputError(f"cutting curve is not closed: boundary at {sorted(b)[:3]}")
    return sub


def orientation_cover(X: SimplicialComplex, Y):
    """Cut along Y, take two copies, reglue crosswise; orient the total.

    The complement of Y must be orientable with no orientation extending
    across any component of Y (so Y is dual to the first Stiefel-Whitney
    class when X is non-orientable).  Returns the cover and the canonical
    semi-orientation of the total space; the deck transformation reverses
    it, which is asserted.
    """
    if X.dimension != 2:
        raise InputError("orientation covers implemented for surfaces")
    Y = _as_curve_subcomplex(X, Y)
    y_edges = list(Y.simplices(1))
    signs = propagate_signs(X, flip_edges=frozenset(y_edges))
    if signs is None:
        # diagnose: non-orientable complement, or an extending component
        cut = orient_surface(X, frozenset(y_edges))
        if cut is None:
            raise InputError("complement of the curve is not orientable")
        verdicts = extendibility_check(X, Y, SemiOrientation(X, cut))
        extending = sorted(c for c, v in verdicts.items() if v == "extends")
        raise InputError(
            f"orientation extends across curve component(s) {extending}: "
            "not an orientation cover datum"
        )
    cover = branched_double_cover(X, y_edges)
    if cover.branch is not None:
        raise ModelIntegrityError("closed cutting curve produced a branch locus")

    # orient sheet 0 by the cut orientation and sheet 1 by its reverse
    total = cover.total
    tops_total = total.simplices(2)
    base_tops = X.simplices(2)
    total_signs = []
    for i, (bt, sheet) in enumerate(cover.sheet_labels):
        s = signs[bt] * (1 if sheet == 0 else -1)
        # transport the sign through the vertex relabelling of the lift
        base_seq = base_tops[bt]
        lifted = tops_total[i]
        proj_seq = tuple(cover.projection(lifted[a]) for a in range(3))
        s *= -1 if _perm_parity(tuple(proj_seq.index(v) for v in base_seq)) else 1
        total_signs.append(s)
    total_semi = SemiOrientation(total, total_signs)
    if not is_coherent(total_semi):
        raise ModelIntegrityError("orientation cover total space failed coherence")
    pushed = pushforward_semiorientation(cover.deck, total_semi)
    if pushed != tuple(-s for s in total_semi.signs):
        raise ModelIntegrityError("deck transformation does not reverse the orientation")
    return cover, total_semi


def complement_semiorientation(X: SimplicialComplex, Y) -> SemiOrientation:
    """A coherent orientation of the surface cut along a closed curve."""
    Y = _as_curve_subcomplex(X, Y)
    signs = orient_surface(X, frozenset(Y.simplices(1)))
    if signs is None:
        raise InputError("complement of the curve is not orientable")
    return SemiOrientation(X, signs)


def flip_semiorientation(X: SimplicialComplex, Y) -> SemiOrientation:
    """The orientation of the cut surface that flips across every cut edge.

    This is the combinatorial shape of an orientation modulo a curve: away
    from the curve it is coherent, across the curve it deliberately
    reverses.  Unique up to the global flip when the constraints are
    satisfiable on a connected surface.
    """
    Y = _as_curve_subcomplex(X, Y)
    signs = propagate_signs(X, flip_edges=frozenset(Y.simplices(1)))
    if signs is None:
        raise InputError(
            "no orientation of the complement flips across the whole curve"
        )
    return SemiOrientation(X, signs)


def stiefel_whitney_cocycle(X: SimplicialComplex) -> int:
    """A 1-cocycle representing the first Stiefel-Whitney class of a surface.

    Characterized by evaluating on each 1-homology class as its mod-2
    self-intersection (the Wu relation); computed by solving against the
    evaluation pairing between canonical cohomology and homology bases.
    The unbranched double cover classified by this cocycle is the
    orientation cover.
    """
    from .homology import duality_data, intersection_form_matrix

    if X.dimension != 2:
        raise InputError("Stiefel-Whitney cocycle implemented for surfaces")
    dd = duality_data(X, 1)
    imat = intersection_form_matrix(dd)
    d = imat.diagonal_vector()
    sol = gf2_solve(dd.eval_matrix.transpose(), d)
    if sol is None:
        raise ModelIntegrityError("no cocycle evaluates as the self-intersection form")
    lam, _ = sol
    w = 0
    ll = lam
    while ll:
        i = (ll & -ll).bit_length() - 1
        ll &= ll - 1
        w ^= dd.coh.cycles[i]
    return w


def compare_mod_curves(X: SimplicialComplex, Y1, Y2, s1: SemiOrientation,
                       s2: SemiOrientation) -> dict:
    """Partition of the surface into parts where two cut orientations agree.

    Solves for a 2-chain H with boundary Y1 + Y2 (failure means the curves
    are not homologous, an input error), compares the canonical
    representatives triangle by triangle, and asserts that the agreement
    is constant on H and on its complement.  The partition is independent
    of which solution the solver returns.
    """
    Y1 = _as_curve_subcomplex(X, Y1)
    Y2 = _as_curve_subcomplex(X, Y2)

    target = 0
    for e in set(Y1.simplices(1)) ^ set(Y2.simplices(1)):
        target |= 1 << X.index_of(e)
    sol = gf2_solve(X.boundary_matrix(2), target)
    if sol is None:
        raise InputError("curves are not homologous: no chain bounds their difference")
    h_chain, _ = sol

    tops = X.simplices(2)
    for semi, Y in ((s1, Y1), (s2, Y2)):
        if semi.carrier != X:
            raise InputError("semi-orientations must live on the ambient surface")
        y_edges = frozenset(Y.simplices(1))
        if not is_coherent(semi, y_edges):
            raise InputError("semi-orientation incoherent away from its own curve")
        for face, a, b in _top_adjacency(X):
            if face in y_edges:
                da = induced_edge_direction(tops[a], semi.signs[a], face)
                db = induced_edge_direction(tops[b], semi.signs[b], face)
                if da != db:
                    raise InputError(
                        f"semi-orientation does not flip across its curve at {face}"
                    )

    m = X.n_simplices(2)
    agree = tuple(s1.signs[t] == s2.signs[t] for t in range(m))
    part_h = frozenset(t for t in range(m) if (h_chain >> t) & 1)
    part_c = frozenset(range(m)) - part_h
    for part in (part_h, part_c):
        vals = {agree[t] for t in part}
        if len(vals) > 1:
            raise ModelIntegrityError(
                "agreement is not constant on a bounding part", report={"part": sorted(part)}
            )
    return {
        "parts": (part_h, part_c),
        "agree_on_h": all(agree[t] for t in part_h) if part_h else None,
        "agree_on_complement": all(agree[t] for t in part_c) if part_c else None,
        "agree_part": frozenset(t for t in range(m) if agree[t]),
        "disagree_part": frozenset(t for t in range(m) if not agree[t]),
    }


# ---------------------------------------------------------------------------
# lifted involutions and the congruence checker
# ---------------------------------------------------------------------------


def lift_involution(cover: CoverComplex, tau: SimplicialMap):
    """Both lifts of a base involution to the total space.

    Propagates over the dual graph of the total space: the image of one
    top simplex determines its neighbours.  Roots of components map with
    sheet preserved (the c+ convention); the second lift is deck composed
    with the first.  Inconsistent propagation means the covering class is
    not invariant under the involution.
    """
    total, proj = cover.total, cover.projection
    base = proj.target
    check_involution(base, tau)
    n = total.dimension
    tops = total.simplices(n)
    m = len(tops)

    # vertex-level image constraints collected during propagation
    vertex_image = {}

    def learn(v, w):
        if vertex_image.setdefault(v, w) != w:
            raise InputError(
                "cover class not invariant under the involution: "
                f"vertex {v} receives two images"
            )

    by_base_sheet = {}
    for j, (bi, sheet) in enumerate(cover.sheet_labels):
        by_base_sheet[(bi, sheet)] = j

    base_tops = base.simplices(n)

    assigned = [None] * m
    for root in range(m):
        if assigned[root] is not None:
            continue
        # roots keep their sheet: the canonical lift c+
        root_base, root_sheet = cover.sheet_labels[root]
        img_base = tuple(sorted(tau(v) for v in base_tops[root_base]))
        img_bi = base.index_of(img_base)
        target = by_base_sheet[(img_bi, root_sheet)]
        assigned[root] = target
        _learn_top(total, proj, tau, tops, root, target, learn)
        stack = [root]
        while stack:
            t = stack.pop()
            for face_idx in _top_faces(total, t):
                cof = total.cofaces(n - 1)[face_idx]
                if len(cof) != 2:
                    continue
                u = cof[0] if cof[1] == t else cof[1]
                # the image of u is the coface of the image face adjacent
                # to the image of t
                face = total.simplices(n - 1)[face_idx]
                img_face = tuple(sorted(vertex_image[v] for v in face))
                img_cof = total.cofaces(n - 1)[total.index_of(img_face)]
                img_t = assigned[t]
                if img_t not in img_cof:
                    raise InputError(
                        "cover class not invariant under the involution: "
                        "image face misses the image simplex"
                    )
                img_u = img_cof[0] if img_cof[1] == img_t else img_cof[1]
                if assigned[u] is None:
                    assigned[u] = img_u
                    _learn_top(total, proj, tau, tops, u, img_u, learn)
                    stack.append(u)
                elif assigned[u] != img_u:
                    raise InputError(
                        "cover class not invariant under the involution: "
                        "propagation conflict"
                    )

    images = [vertex_image[v] for v in range(total.vertex_count)]
    c_plus = SimplicialMap(total, total, images)
    c_minus = cover.deck.compose(c_plus)
    for lift in (c_plus, c_minus):
        if proj.compose(lift).images != tau.compose(proj).images:
            raise ModelIntegrityError("constructed lift does not commute with projection")
    return c_plus, c_minus


def _top_faces(total, t):
    n = total.dimension
    s = total.simplices(n)[t]
    return [total.index_of(f) for f in combinations(s, n)]


def _learn_top(total, proj, tau, tops, t, img_t, learn):
    """Record vertex images for one top-simplex assignment."""
    src = tops[t]
    dst = tops[img_t]
    dst_by_proj = {}
    for w in dst:
        dst_by_proj.setdefault(proj(w), []).append(w)
    for v in src:
        want = tau(proj(v))
        cands = dst_by_proj.get(want, [])
        if len(cands) != 1:
            raise InputError(
                "cover class not invariant under the involution: ambiguous vertex image"
            )
        learn(v, cands[0])


@dataclass(frozen=True)
class KharlamovTrace:
    chi: int
    self_intersection_ambient: int  # -chi
    self_intersection_quotient: int  # doubled, per the covering argument
    divisible_by_16: bool
    applicable: bool
    passes: bool


def kharlamov_congruence(chi: int, kind, h1_trivial: bool) -> KharlamovTrace:
    """Euler characteristic congruence mod 8 for bounding real surfaces.

    Applicable to type I_abs with trivial first mod-2 homology of the
    complexification.  The trace follows the 4-fold covering argument:
    the self-intersection downstairs is -chi, doubling into the quotient,
    where divisibility by 16 is forced; hence chi = 0 mod 8.  A violation
    is a model-integrity error carrying the trace.
    """
    if isinstance(kind, TypeVerdict):
        kind = kind.kind
    if kind not in ("I_abs", "I_rel", "II"):
        raise InputError(f"unknown type {kind!r}")
    applicable = kind == "I_abs" and h1_trivial
    s_ca = -chi
    s_quot = 2 * s_ca
    divisible = s_quot % 16 == 0
    passes = (not applicable) or chi % 8 == 0
    trace = KharlamovTrace(chi, s_ca, s_quot, divisible, applicable, passes)
    if applicable and not passes:
        raise ModelIntegrityError(
            f"Euler characteristic {chi} is not divisible by 8 for a bounding surface",
            report=trace,
        )
    return trace
