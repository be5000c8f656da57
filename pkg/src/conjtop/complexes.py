"""Finite abstract simplicial complexes and simplicial maps.

Simplices are strictly increasing tuples of vertex indices; the integer
order on vertices is the global vertex order that cup products and
barycentric subdivision rely on.  Complexes are validated and immutable
after construction.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InputError
from .gf2 import Gf2Matrix


def _normalize_simplex(s):
    t = tuple(int(v) for v in s)
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise InputError(f"simplex {t} is not strictly increasing")
    return t


def closure(simplices):
    """All faces of the given simplices, including themselves."""
    out = set()
    for s in simplices:
        s = _normalize_simplex(s)
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return out


class SimplicialComplex:
    """Validated finite simplicial complex with a fixed vertex order."""

    __slots__ = (
        "vertex_count",
        "_by_dim",
        "_index",
        "_boundary_cache",
        "_cofaces_cache",
        "_hom_cache",
        "_coh_cache",
    )

    def __init__(self, vertex_count: int, simplices):
        all_s = set()
        for s in simplices:
            all_s.add(_normalize_simplex(s))
        by_dim = {}
        for s in all_s:
            if s and (s[0] < 0 or s[-1] >= vertex_count):
                raise InputError(f"simplex {s} has a vertex outside 0..{vertex_count - 1}")
            by_dim.setdefault(len(s) - 1, []).append(s)
        for k, group in by_dim.items():
            if k == 0:
                continue
            for s in group:
                for f in combinations(s, k):
                    if f not in all_s:
                        raise InputError(f"complex not closed under faces: {s} misses {f}")
        dim = max(by_dim) if by_dim else -1
        self.vertex_count = vertex_count
        self._by_dim = tuple(tuple(sorted(by_dim.get(k, ()))) for k in range(dim + 1))
        self._index = {
            s: i for k in range(dim + 1) for i, s in enumerate(self._by_dim[k])
        }
        self._boundary_cache = {}
        self._cofaces_cache = {}
        self._hom_cache = {}
        self._coh_cache = {}

    @classmethod
    def from_simplices(cls, vertex_count: int, generators) -> "SimplicialComplex":
        """Build the closure of the given generating simplices."""
        return cls(vertex_count, closure(generators))

    @property
    def dimension(self) -> int:
        return len(self._by_dim) - 1

    def simplices(self, k: int):
        if 0 <= k < len(self._by_dim):
            return self._by_dim[k]
        return ()

    def all_simplices(self):
        for group in self._by_dim:
            yield from group

    def n_simplices(self, k: int) -> int:
        return len(self.simplices(k))

    def has_simplex(self, s) -> bool:
        return tuple(s) in self._index

    def index_of(self, s) -> int:
        try:
            return self._index[tuple(s)]
        except KeyError:
            raise InputError(f"simplex {tuple(s)} not in complex") from None

    def facets(self):
        """Maximal simplices, sorted by (dimension, tuple)."""
        out = []
        for k in range(self.dimension, -1, -1):
            for s in self.simplices(k):
                if not any(
                    set(s) < set(t) for t in out
                ):
                    out.append(s)
        return sorted(out, key=lambda s: (len(s), s))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.n_simplices(k) for k in range(self.dimension + 1))

    def boundary_matrix(self, k: int) -> Gf2Matrix:
        """GF(2) boundary from k-chains to (k-1)-chains."""
        if k in self._boundary_cache:
            return self._boundary_cache[k]
        rows_n = self.n_simplices(k - 1)
        cols_n = self.n_simplices(k)
        rows = [0] * rows_n
        if k >= 1:
            for j, s in enumerate(self.simplices(k)):
                for f in combinations(s, k):
                    rows[self._index[f]] |= 1 << j
        M = Gf2Matrix(rows_n, cols_n, rows)
        self._boundary_cache[k] = M
        return M

    def cofaces(self, k: int):
        """Map from each k-simplex index to indices of its (k+1)-cofaces."""
        if k in self._cofaces_cache:
            return self._cofaces_cache[k]
        out = [[] for _ in range(self.n_simplices(k))]
        for j, s in enumerate(self.simplices(k + 1)):
            for f in combinations(s, k + 1):
                out[self._index[f]].append(j)
        out = tuple(tuple(c) for c in out)
        self._cofaces_cache[k] = out
        return out

    def subcomplex(self, simplices) -> "SimplicialComplex":
        simplices = [tuple(s) for s in simplices]
        for s in simplices:
            if s not in self._index:
                raise InputError(f"simplex {s} not in ambient complex")
        return SimplicialComplex.from_simplices(self.vertex_count, simplices)

    def contains_subcomplex(self, other: "SimplicialComplex") -> bool:
        return all(s in self._index for s in other.all_simplices())

    def simplices_within(self, vertices):
        """All simplices whose vertices lie inside the given vertex set."""
        vs = set(vertices)
        return [s for s in self.all_simplices() if vs.issuperset(s)]

    def components(self):
        """Vertex sets of connected components (via the 1-skeleton)."""
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, b) in self.simplices(1):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        used = set()
        for (v,) in self.simplices(0):
            used.add(v)
            groups.setdefault(find(v), set()).add(v)
        return [frozenset(g) for _, g in sorted((min(g), g) for g in groups.values())]

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertex_count == other.vertex_count
            and self._by_dim == other._by_dim
        )

    def __hash__(self):
        return hash((self.vertex_count, self._by_dim))

    def __repr__(self):
        counts = ",".join(str(self.n_simplices(k)) for k in range(self.dimension + 1))
        return f"SimplicialComplex(vertices={self.vertex_count}, counts=[{counts}])"


class SimplicialMap:
    """Vertex map between complexes sending simplices to simplices."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, images):
        images = tuple(int(v) for v in images)
        if len(images) != source.vertex_count:
            raise InputError(
                f"vertex image list has length {len(images)}, expected {source.vertex_count}"
            )
        for v in images:
            if not 0 <= v < target.vertex_count:
                raise InputError(f"vertex image {v} outside target range")
        for s in source.all_simplices():
            img = tuple(sorted(set(images[v] for v in s)))
            if not target.has_simplex(img):
                raise InputError(f"image of simplex {s} spans no simplex: {img}")
        self.source = source
        self.target = target
        self.images = images

    def __call__(self, v: int) -> int:
        return self.images[v]

    def map_simplex(self, s):
        """Image vertex set of a simplex, sorted (may have lower dimension)."""
        return tuple(sorted(set(self.images[v] for v in s)))

    def is_degenerate_on(self, s) -> bool:
        return len(set(self.images[v] for v in s)) < len(s)

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self after inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise InputError("composition mismatch between target and source")
        return SimplicialMap(inner.source, self.target, (self.images[v] for v in inner.images))

    def is_identity(self) -> bool:
        return self.source == self.target and all(i == v for v, i in enumerate(self.images))

    def is_involution(self) -> bool:
        if self.source != self.target:
            return False
        return all(self.images[self.images[v]] == v for v in range(len(self.images)))

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __repr__(self):
        return f"SimplicialMap({self.images!r})"


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(K, K, range(K.vertex_count))


def check_involution(K: SimplicialComplex, tau: SimplicialMap):
    if tau.source != K or tau.target != K:
        raise InputError("involution must map the complex to itself")
    if not tau.is_involution():
        raise InputError("map is not an involution (square differs from identity)")


def regularity_offender(K: SimplicialComplex, tau: SimplicialMap):
    """First simplex mapped onto itself without being fixed pointwise."""
    for s in K.all_simplices():
        img = tau.map_simplex(s)
        if img == s and any(tau(v) != v for v in s):
            return s
    return None


def is_regular(K: SimplicialComplex, tau: SimplicialMap) -> bool:
    return regularity_offender(K, tau) is None


def quotient_by_involution(K: SimplicialComplex, tau: SimplicialMap):
    """Orbit complex of a regular involution, with the projection map.

    Simplices of the quotient are the orbit images of simplices of K.  The
    construction refuses when the involution is not regular, and also when
    two simplices that are not exchanged by the involution would collapse
    to the same orbit image (the classical failure that one or two
    barycentric subdivisions repair; see :func:`regularize`).
    """
    check_involution(K, tau)
    bad = regularity_offender(K, tau)
    if bad is not None:
        raise InputError(f"involution is not regular: simplex {bad} maps onto itself")

    reps = sorted({min(v, tau(v)) for v in range(K.vertex_count)})
    rep_rank = {v: i for i, v in enumerate(reps)}

    def orbit_vertex(v):
        return rep_rank[min(v, tau(v))]

    image_to_source = {}
    for s in K.all_simplices():
        img = tuple(sorted(orbit_vertex(v) for v in s))
        if len(set(img)) < len(img):
            raise InputError(f"simplex {s} contains a vertex orbit twice")
        prev = image_to_source.get(img)
        if prev is not None and prev != s and prev != tau.map_simplex(s):
            raise InputError(
                "quotient collision: simplices "
                f"{prev} and {s} share an orbit image; subdivide first"
            )
        if prev is None or s < prev:
            image_to_source[img] = s

    Q = SimplicialComplex(len(reps), image_to_source.keys())
    proj = SimplicialMap(K, Q, (orbit_vertex(v) for v in range(K.vertex_count)))
    return Q, proj


def orbit_chain_boundaries(K: SimplicialComplex, tau: SimplicialMap):
    """Mod-2 chain complex of the orbit space of a regular involution.

    Basis in each dimension: orbits of simplices (fixed simplices are
    singleton orbits).  This is the Delta-complex chain model of the
    quotient space; it stays valid when two non-exchanged simplices share
    an orbit image, the situation where the simplicial quotient refuses.
    Returns (boundaries, fixed_flags): boundary matrices indexed by orbit
    bases and, per dimension, a bit mask of the orbit classes lying in the
    fixed subcomplex.
    """
    check_involution(K, tau)
    bad = regularity_offender(K, tau)
    if bad is not None:
        raise InputError(f"involution is not regular: simplex {bad} maps onto itself")
    from .gf2 import Gf2Matrix

    reps = []
    orbit_index = []
    for k in range(K.dimension + 1):
        lst = []
        idx = {}
        for s in K.simplices(k):
            img = tau.map_simplex(s)
            rep = min(s, img)
            if rep == s:
                idx[s] = len(lst)
                if img != s:
                    idx[img] = len(lst)
                lst.append(s)
        reps.append(lst)
        orbit_index.append(idx)

    boundaries = []
    for k in range(1, K.dimension + 1):
        rows = [0] * len(reps[k - 1])
        for j, s in enumerate(reps[k]):
            for f in combinations(s, k):
                rows[orbit_index[k - 1][f]] ^= 1 << j
        boundaries.append(Gf2Matrix(len(reps[k - 1]), len(reps[k]), rows))

    fixed_flags = []
    for k in range(K.dimension + 1):
        mask = 0
        for j, s in enumerate(reps[k]):
            if all(tau(v) == v for v in s):
                mask |= 1 << j
        fixed_flags.append(mask)
    return boundaries, fixed_flags


def barycentric_subdivide(K: SimplicialComplex, f: SimplicialMap | None = None):
    """Barycentric subdivision, optionally with an induced automorphism.

    New vertices are the simplices of K ordered by (dimension, tuple); new
    simplices are chains under proper face inclusion.
    """
    order = sorted(K.all_simplices(), key=lambda s: (len(s), s))
    rank = {s: i for i, s in enumerate(order)}

    # simplices of the subdivision are chains under proper face inclusion,
    # generated downward from each simplex of K
    seen = set()
    for s in order:
        stack = [(s,)]
        while stack:
            chain = stack.pop()
            if chain in seen:
                continue
            seen.add(chain)
            low = chain[0]
            for k in range(1, len(low)):
                for face in combinations(low, k):
                    stack.append((face,) + chain)
    Kp = SimplicialComplex(len(order), (tuple(rank[s] for s in chain) for chain in seen))

    if f is None:
        return Kp, None
    if f.source != K or f.target != K:
        raise InputError("map to subdivide must be an automorphism of K")
    if sorted(f.images) != list(range(K.vertex_count)):
        raise InputError("map to subdivide must be a bijective automorphism")
    fp = SimplicialMap(Kp, Kp, (rank[f.map_simplex(order[i])] for i in range(len(order))))
    return Kp, fp


def regularize(K: SimplicialComplex, tau: SimplicialMap, max_rounds: int = 2):
    """Subdivide (at most twice) until the involution admits a quotient."""
    check_involution(K, tau)
    for _ in range(max_rounds + 1):
        try:
            quotient_by_involution(K, tau)
            return K, tau
        except InputError:
            pass
        K, tau = barycentric_subdivide(K, tau)
    raise InputError("involution still irregular after two barycentric subdivisions")


def pseudomanifold_check(K: SimplicialComplex):
    """Verify K is a closed pseudomanifold; returns its dimension.

    Requires: pure top dimension, every codimension-1 simplex has exactly
    two cofaces, and the top-dimensional part is strongly connected.
    """
    n = K.dimension
    if n < 0:
        raise InputError("empty complex is not a pseudomanifold")
    if n >= 1:
        cof_top = K.cofaces(n - 1)
        for i, c in enumerate(cof_top):
            if len(c) != 2:
                raise InputError(
                    f"face {K.simplices(n - 1)[i]} has {len(c)} top cofaces, expected 2"
                )
        # purity: every simplex is a face of a top simplex
        covered = set()
        for s in K.simplices(n):
            for k in range(1, len(s) + 1):
                covered.update(combinations(s, k))
        for s in K.all_simplices():
            if s not in covered:
                raise InputError(f"simplex {s} is not a face of any top simplex")
        # strong connectivity through codimension-1 faces
        tops = K.n_simplices(n)
        if tops:
            adj = [[] for _ in range(tops)]
            for c in cof_top:
                a, b = c
                adj[a].append(b)
                adj[b].append(a)
            seen = {0}
            stack = [0]
            while stack:
                t = stack.pop()
                for u in adj[t]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            if len(seen) != tops:
                raise InputError("top-dimensional part is not strongly connected")
    return n


def fundamental_class(K: SimplicialComplex) -> int:
    """Sum of all top simplices as a bit-packed cycle; checks the input.

    Valid only for closed pseudomanifolds; the mod-2 fundamental cycle is
    verified to be a cycle by one boundary multiplication.
    """
    n = pseudomanifold_check(K)
    cyc = (1 << K.n_simplices(n)) - 1
    if n >= 1 and K.boundary_matrix(n).mul_vec(cyc) != 0:
        raise InputError("sum of top simplices fails the cycle check")
    return cyc
