"""Exact linear algebra over GF(2) with bit-packed rows.

A row is a Python integer used as a bit vector (bit ``j`` is column ``j``),
so a row update is one word-level XOR no matter how wide the matrix is.
Vectors use the same encoding.  Pivoting is deterministic: the first
nonzero entry in row-major scan order wins, which keeps every echelon
basis reproducible across runs.
"""

from __future__ import annotations

from .errors import InputError


def vec_from_bits(bits) -> int:
    """Pack an iterable of 0/1 entries into a bit-vector integer."""
    v = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise InputError(f"GF(2) entry must be 0 or 1, got {b!r}")
        if b:
            v |= 1 << j
    return v


def bits_of(v: int, n: int) -> tuple:
    """Unpack a bit-vector integer into an n-tuple of 0/1."""
    return tuple((v >> j) & 1 for j in range(n))


def dot(u: int, v: int) -> int:
    """Parity of the overlap of two bit vectors."""
    return (u & v).bit_count() & 1


class Gf2Matrix:
    """Immutable matrix over GF(2).

    Rows are stored bit-packed; entries are read as ``M[i, j]``.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows):
        rows = tuple(rows)
        if len(rows) != nrows:
            raise InputError(f"expected {nrows} rows, got {len(rows)}")
        mask = (1 << ncols) - 1
        for r in rows:
            if r & ~mask:
                raise InputError("row has bits beyond the declared width")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, entry_rows, ncols=None) -> "Gf2Matrix":
        entry_rows = [list(r) for r in entry_rows]
        if ncols is None:
            ncols = len(entry_rows[0]) if entry_rows else 0
        for r in entry_rows:
            if len(r) != ncols:
                raise InputError("ragged rows in matrix literal")
        return cls(len(entry_rows), ncols, (vec_from_bits(r) for r in entry_rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, (1 << i for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise InputError(f"index {ij} out of range")
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> int:
        return self.rows[i]

    def column(self, j: int) -> int:
        v = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                v |= 1 << i
        return v

    def to_lists(self):
        return [list(bits_of(r, self.ncols)) for r in self.rows]

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(self.ncols, self.nrows, (self.column(j) for j in range(self.ncols)))

    def mul_vec(self, v: int) -> int:
        """Matrix times column vector, both bit-packed."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __mul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise InputError("dimension mismatch in matrix product")
        out = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                k = (rr & -rr).bit_length() - 1
                acc ^= other.rows[k]
                rr &= rr - 1
            out.append(acc)
        return Gf2Matrix(self.nrows, other.ncols, out)

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise InputError("dimension mismatch in matrix sum")
        return Gf2Matrix(self.nrows, self.ncols, (a ^ b for a, b in zip(self.rows, other.rows)))

    def __eq__(self, other):
        return (
            isinstance(other, Gf2Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join("".join(str(b) for b in bits_of(r, self.ncols)) for r in self.rows)
        return f"Gf2Matrix({self.nrows}x{self.ncols}: {body})"

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self == self.transpose()

    def diagonal_vector(self) -> int:
        v = 0
        for i in range(min(self.nrows, self.ncols)):
            if (self.rows[i] >> i) & 1:
                v |= 1 << i
        return v


def rref(rows, ncols):
    """Reduced row echelon form of bit-packed rows.

    Returns (nonzero reduced rows, pivot column per row).  Deterministic:
    columns are scanned left to right, candidate rows top to bottom.
    """
    work = list(rows)
    m = len(work)
    out_rows, pivots = [], []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        pivot = None
        for i in range(r, m):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(m):
            if i != r and (work[i] & bit):
                work[i] ^= work[r]
        out_rows.append(work[r])
        pivots.append(c)
        r += 1
        if r == m:
            break
    # rows past r are zero after full reduction
    return work[:r], pivots


def reduce_against(v: int, basis_rows, pivots) -> int:
    """Reduce a bit vector against echelon rows with known pivots."""
    for row, p in zip(basis_rows, pivots):
        if (v >> p) & 1:
            v ^= row
    return v


def gf2_rank(M: Gf2Matrix) -> int:
    """Rank of M over GF(2)."""
    rows, _ = rref(M.rows, M.ncols)
    return len(rows)


def gf2_kernel_basis(M: Gf2Matrix):
    """Echelon basis of {x : Mx = 0}, as bit-packed vectors."""
    rows, pivots = rref(M.rows, M.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        x = 1 << free
        for row, p in zip(rows, pivots):
            if (row >> free) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def gf2_solve(M: Gf2Matrix, b: int):
    """Solve Mx = b over GF(2).

    ``b`` is a bit-packed vector of length ``M.nrows``.  Returns ``None``
    when the system is inconsistent, else ``(x, kernel_basis)`` where x is
    the particular solution with all free variables zero.
    """
    if b >> M.nrows:
        raise InputError("right-hand side longer than the number of rows")
    n = M.ncols
    aug_bit = 1 << n
    work = [M.rows[i] | (aug_bit if (b >> i) & 1 else 0) for i in range(M.nrows)]
    rows, pivots = [], []
    r = 0
    for c in range(n):
        bit = 1 << c
        pivot = None
        for i in range(r, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] & bit):
                work[i] ^= work[r]
        rows.append(work[r])
        pivots.append(c)
        r += 1
    for i in range(r, len(work)):
        if work[i] & aug_bit:
            return None
    x = 0
    for row, p in zip(work[:r], pivots):
        if row & aug_bit:
            x |= 1 << p
    kernel = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        k = 1 << free
        for row, p in zip(work[:r], pivots):
            if (row >> free) & 1:
                k |= 1 << p
        kernel.append(k)
    return x, kernel


def gf2_invert(M: Gf2Matrix) -> Gf2Matrix:
    """Inverse of a square matrix; raises InputError when singular."""
    if M.nrows != M.ncols:
        raise InputError("only square matrices can be inverted")
    n = M.nrows
    work = [M.rows[i] | (1 << (n + i)) for i in range(n)]
    r = 0
    for c in range(n):
        bit = 1 << c
        pivot = None
        for i in range(r, n):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            raise InputError("matrix is singular over GF(2)")
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(n):
            if i != r and (work[i] & bit):
                work[i] ^= work[r]
        r += 1
    mask = (1 << n) - 1
    return Gf2Matrix(n, n, ((row >> n) & mask for row in work))
