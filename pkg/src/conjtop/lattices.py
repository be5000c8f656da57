"""Integer middle-homology data of a surface: lattice, isometry, transfer.

The lattice side never computes quotient-space homology; push/pull data
for the quotient projection arrives from the caller and is audited against
the identities it must satisfy (composition is multiplication by two,
injectivity, invariance of the image, divisibility of doubled invariant
classes).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, ModelIntegrityError
from .intmat import IntMatrix, int_solve, invariant_factors


@dataclass(frozen=True)
class QuotientTransferData:
    """Push/pull matrices along the double projection, caller-supplied."""

    quotient_rank: int
    p_pull: IntMatrix  # quotient -> ambient, the transfer (inverse Hopf) map
    p_push: IntMatrix  # ambient -> quotient


@dataclass(frozen=True)
class IntegerLattice:
    """Unimodular-free integer lattice with an involutive isometry."""

    rank: int
    gram: IntMatrix
    isometry: IntMatrix
    marks: dict = field(default_factory=dict)
    presentation: IntMatrix | None = None
    chi_real: int | None = None
    transfer: QuotientTransferData | None = None

    def pairing(self, x, y) -> int:
        gx = self.gram.mul_vec(list(y))
        return sum(a * b for a, b in zip(x, gx))


def build_lattice(
    gram: IntMatrix,
    isometry: IntMatrix,
    marks=None,
    presentation: IntMatrix | None = None,
    chi_real: int | None = None,
    transfer: QuotientTransferData | None = None,
) -> IntegerLattice:
    """Validate and assemble lattice data; every failed identity is named."""
    n = gram.nrows
    if gram.ncols != n:
        raise InputError("Gram matrix must be square")
    if not gram.is_symmetric():
        raise InputError("Gram matrix must be symmetric")
    if (isometry.nrows, isometry.ncols) != (n, n):
        raise InputError("isometry has the wrong shape")
    if isometry * isometry != IntMatrix.identity(n):
        raise InputError("isometry does not square to the identity")
    if isometry.transpose() * gram * isometry != gram:
        raise InputError("supplied map is not an isometry of the Gram matrix")
    marks = dict(marks or {})
    for name, vec in marks.items():
        vec = tuple(int(x) for x in vec)
        if len(vec) != n:
            raise InputError(f"marked class {name!r} has length {len(vec)}, rank is {n}")
        marks[name] = vec
    if transfer is not None:
        q = transfer.quotient_rank
        if (transfer.p_pull.nrows, transfer.p_pull.ncols) != (n, q):
            raise InputError("transfer pull matrix has the wrong shape")
        if (transfer.p_push.nrows, transfer.p_push.ncols) != (q, n):
            raise InputError("transfer push matrix has the wrong shape")
    return IntegerLattice(n, gram, isometry, marks, presentation, chi_real, transfer)


def invariant_sublattices(L: IntegerLattice):
    """Integer bases of ker(T - I) and ker(T + I)."""
    from .intmat import int_kernel_basis

    T = L.isometry
    n = L.rank
    I = IntMatrix.identity(n)
    plus = int_kernel_basis(T - I)
    minus = int_kernel_basis(T + I)
    return tuple(plus), tuple(minus)


def conj_form_mod2(L: IntegerLattice) -> "BilinearFormGF2":
    """Reduction mod 2 of the twisted pairing (x, y) -> x . T(y)."""
    from .involutions import BilinearFormGF2

    twisted = L.gram * L.isometry
    return BilinearFormGF2(twisted.mod2())


def transfer_audit(L: IntegerLattice, Q: QuotientTransferData | None = None) -> dict:
    """Verify the push/pull identities for the quotient projection.

    Checks, each by exact matrix arithmetic: push after pull is doubling,
    pull is injective, the image of pull is invariant, and twice any
    invariant class lies in the image of pull.
    """
    Q = Q or L.transfer
    if Q is None:
        raise InputError("no transfer data supplied")
    report = {}
    comp = Q.p_push * Q.p_pull
    if comp != IntMatrix.identity(Q.quotient_rank).scale(2):
        raise ModelIntegrityError("push after pull is not multiplication by 2",
                                  report={"composition": comp})
    report["composition_is_doubling"] = True
    factors = invariant_factors(Q.p_pull)
    if len(factors) != Q.quotient_rank:
        raise ModelIntegrityError("pull map is not injective", report={"factors": factors})
    report["pull_injective"] = True
    T = L.isometry
    fixed = (T - IntMatrix.identity(L.rank)) * Q.p_pull
    if any(any(e != 0 for e in row) for row in fixed.rows):
        raise ModelIntegrityError("image of pull is not invariant under the isometry",
                                  report={"defect": fixed})
    report["image_invariant"] = True
    invariant, _ = invariant_sublattices(L)
    for alpha in invariant:
        doubled = [2 * a for a in alpha]
        if int_solve(Q.p_pull, doubled) is None:
            raise ModelIntegrityError(
                "twice an invariant class escapes the image of pull",
                report={"alpha": alpha},
            )
    report["doubled_invariants_in_image"] = True
    report["invariant_rank"] = len(invariant)
    return report


def orientation_class_check(L: IntegerLattice, Q: QuotientTransferData | None, alpha) -> bool:
    """Is alpha twice a pulled-back class?  Exactly the complex orientations are.

    Solves alpha = 2 * pull(delta) in integers; False is a legitimate
    verdict, not an error.
    """
    Q = Q or L.transfer
    if Q is None:
        raise InputError("no transfer data supplied")
    alpha = [int(a) for a in alpha]
    if len(alpha) != L.rank:
        raise InputError("class vector has the wrong length")
    if any(a % 2 for a in alpha):
        return False
    half = [a // 2 for a in alpha]
    return int_solve(Q.p_pull, half) is not None


def order_obstruction(L: IntegerLattice, d: int, beta) -> "ObstructionVerdict":
    """Odd order forbids bounding; the witness is validated exactly.

    ``beta`` must be invariant under the isometry with self-pairing d.
    """
    from .involutions import ObstructionVerdict

    beta = [int(b) for b in beta]
    if len(beta) != L.rank:
        raise InputError("witness vector has the wrong length")
    if L.isometry.mul_vec(beta) != tuple(beta):
        raise InputError("witness is not invariant under the isometry")
    self_pairing = L.pairing(beta, beta)
    if self_pairing != d:
        raise InputError(
            f"witness validation failed: self-pairing {self_pairing}, expected {d}"
        )
    if d % 2 == 1:
        return ObstructionVerdict(True, "odd order cannot bound in complexification",
                                  tuple(beta))
    return ObstructionVerdict(False, "no obstruction from parity", None)


def torsion_audit(L: IntegerLattice) -> dict:
    """Check the absence of 2-torsion where a presentation permits.

    With no presentation matrix the audit records the assumption instead
    of proving it.  Odd torsion is harmless for mod-2 arguments and
    passes; an even invariant factor flags every transfer-based check as
    unsound for this input.
    """
    if L.presentation is None:
        return {"checked": False, "assumption": "no 2-torsion (presentation not supplied)"}
    factors = invariant_factors(L.presentation)
    even = [f for f in factors if f % 2 == 0]
    if even:
        raise ModelIntegrityError(
            "2-torsion present: transfer-based checks are unsound for this input",
            report={"invariant_factors": factors},
        )
    return {"checked": True, "invariant_factors": factors}


def alpha_chi_cross_check(L: IntegerLattice) -> dict | None:
    """Self-pairing of the marked orientation class against -chi, when both exist."""
    if L.chi_real is None or "alpha" not in L.marks:
        return None
    alpha = L.marks["alpha"]
    self_pairing = L.pairing(alpha, alpha)
    ok = self_pairing == -L.chi_real
    if not ok:
        raise ModelIntegrityError(
            "marked orientation class has self-pairing "
            f"{self_pairing}, expected { -L.chi_real}",
            report={"alpha": alpha, "chi": L.chi_real},
        )
    return {"self_pairing": self_pairing, "chi": L.chi_real}
