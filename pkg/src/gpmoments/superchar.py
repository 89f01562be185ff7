"""Structure constants c_{i,j,k}, the matrices T, U, D, and their identities.

All counting is exact integer arithmetic on the class-index table; floats only
enter when the counts are assembled into T/U/D for the analytic identities.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .field_core import FieldContext
from .periods import PeriodVector


@dataclass(frozen=True)
class StructureTensor:
    """The slice c_{0, j, n} for 0 <= j, n <= d (class d is {0})."""

    ctx: FieldContext
    c0: np.ndarray  # (d+1) x (d+1) nonnegative integers


@dataclass(frozen=True)
class SupercharMatrices:
    U: np.ndarray  # (d+1) x (d+1) complex, symmetric unitary
    T: np.ndarray  # (d+1) x (d+1) real
    D: np.ndarray  # (d+1) x (d+1) complex diagonal


def structure_constant(ctx: FieldContext, i: int, j: int, k: int,
                       check_representative: bool = False) -> int:
    """Count pairs (x, y) in X_i x X_j with x + y = z for a fixed z in X_k.

    The count is independent of the representative; with
    check_representative=True it is recounted at a second representative of
    X_k (when one exists) and the two counts are asserted equal.
    """
    p = ctx.p

    def count_at(z: int) -> int:
        return int(np.count_nonzero(
            ctx.coset_index[(z - ctx.cosets[i]) % p] == j))

    reps = ctx.cosets[k]
    n = count_at(int(reps[0]))
    if check_representative and len(reps) > 1:
        assert n == count_at(int(reps[1])), "representative dependence detected"
    return n


def build_tensor(ctx: FieldContext) -> StructureTensor:
    """Materialize the full c_{0,.,.} slice in one pass per target class."""
    d, p = ctx.d, ctx.p
    c0 = np.zeros((d + 1, d + 1), dtype=np.int64)
    x0 = ctx.cosets[0]
    for n in range(d + 1):
        z = ctx.class_representative(n)
        classes = ctx.coset_index[(z - x0) % p]
        c0[:, n] = np.bincount(classes, minlength=d + 1)
    return StructureTensor(ctx=ctx, c0=c0)


def general_constant(tensor: StructureTensor, i: int, j: int, k: int) -> int:
    """c_{i,j,k} for arbitrary class indices 0..d, derived from the c0 slice.

    For i < d divide the defining equation by g^i; the border classes (index d)
    reduce to membership statements about -1 and 0.
    """
    ctx = tensor.ctx
    d, a = ctx.d, ctx.alpha
    if i == d:
        # x = 0 forces y = z
        return 1 if j == k else 0
    if j == d and k == d:
        return 0
    if j == d:  # y = 0 forces x = z, one solution iff z's class is i
        return 1 if k == i else 0
    if k == d:  # z = 0 forces y = -x, a whole class iff j = i + alpha
        return ctx.k if j == (i + a) % d else 0
    return int(tensor.c0[(j - i) % d, (k - i) % d])


def constant_matrix(tensor: StructureTensor, i: int) -> np.ndarray:
    """The (d+1)x(d+1) matrix of c_{i,j,k} over (j, k), vectorized."""
    ctx = tensor.ctx
    d = ctx.d
    ci = np.zeros((d + 1, d + 1), dtype=np.int64)
    if i == d:
        np.fill_diagonal(ci, 1)
        return ci
    ci[:d, :d] = np.roll(tensor.c0[:d, :d], (i, i), axis=(0, 1))
    ci[(i + ctx.alpha) % d, d] = ctx.k
    ci[d, i] = 1
    return ci


def build_matrices(ctx: FieldContext, tensor: StructureTensor,
                   pv: PeriodVector) -> SupercharMatrices:
    """Assemble U from the periods and T from the counts; D holds the spectrum."""
    if tensor.ctx.d != ctx.d or pv.ctx.d != ctx.d:
        raise DimensionMismatch("context, tensor and periods disagree on d")
    d, p, k = ctx.d, ctx.p, ctx.k

    U = np.empty((d + 1, d + 1), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            U[i, j] = pv.eta[(i + j) % d]
    U[:d, d] = U[d, :d] = np.sqrt(k)
    U[d, d] = 1.0
    U /= np.sqrt(p)

    sizes = np.array([k] * d + [1], dtype=np.float64)
    scale = np.sqrt(sizes[None, :] / sizes[:, None])
    T = tensor.c0.astype(np.float64) * scale

    D = np.diag(np.append(pv.eta, pv.extra_eigenvalue))
    return SupercharMatrices(U=U, T=T, D=D)


def superchar_value(ctx: FieldContext, pv: PeriodVector, i: int, ell: int) -> complex:
    """Value of the i-th supercharacter on class ell (constant on classes)."""
    d = ctx.d
    if i == d:
        return 1.0 + 0j
    if ell == d:
        return complex(ctx.k)
    return complex(pv.eta[(i + ell) % d])


@dataclass(frozen=True)
class CheckResult:
    name: str
    applicable: bool
    passed: bool
    detail: str = ""


def verify_identities(m: SupercharMatrices, tensor: StructureTensor,
                      pv: PeriodVector,
                      unitary_tol: float = 1e-9,
                      scaled_tol: float = 1e-8) -> list[CheckResult]:
    """Run every algebraic check on the assembled matrices.

    Failures are reported, never raised.  Tolerances: unitary_tol bounds
    ||U*U - I||_max; scaled_tol * p bounds the residuals that grow with the
    matrix entries (TU = UD, the product identity, traces).
    """
    ctx = tensor.ctx
    d, p, k = ctx.d, ctx.p, ctx.k
    tol_p = scaled_tol * p
    out = []

    err = np.abs(m.U.conj().T @ m.U - np.eye(d + 1)).max()
    out.append(CheckResult("U_unitary", True, err < unitary_tol, f"max_err={err:.3g}"))

    err = np.abs(m.U - m.U.T).max()
    out.append(CheckResult("U_symmetric", True, err < unitary_tol, f"max_err={err:.3g}"))

    err = np.abs(m.T @ m.U - m.U @ m.D).max()
    out.append(CheckResult("TU_eq_UD", True, err < tol_p, f"max_err={err:.3g}"))

    # normality of T, exact on the counting block
    err = np.abs(m.T @ m.T.T - m.T.T @ m.T).max()
    out.append(CheckResult("T_normal", True, err < tol_p, f"max_err={err:.3g}"))

    # product identity: sigma_i(X_l) sigma_j(X_l) = sum_k c_{i,j,k} sigma_k(X_l)
    sigma = np.array([[superchar_value(ctx, pv, i, ell) for ell in range(d + 1)]
                      for i in range(d + 1)])
    max_err = 0.0
    for i in range(d + 1):
        ci = constant_matrix(tensor, i).astype(np.float64)
        lhs = sigma[i][None, :] * sigma
        rhs = ci @ sigma
        max_err = max(max_err, float(np.abs(lhs - rhs).max()))
    out.append(CheckResult("product_identity", True, max_err < tol_p,
                           f"max_err={max_err:.3g}"))

    # column sums of the counting slice
    colsums_ok = all(int(tensor.c0[:, n].sum()) == k for n in range(d))
    out.append(CheckResult("column_sums", True, colsums_ok, f"expected {k}"))

    # rotation symmetry c_{0,m,n} = c_{0,-m,n-m}
    rot_ok = all(tensor.c0[mm, nn] == tensor.c0[(-mm) % d, (nn - mm) % d]
                 for mm in range(d) for nn in range(d))
    out.append(CheckResult("rotation_symmetry", True, rot_ok))

    # T symmetric iff 2d | (p-1)
    sym_applicable = d > 1 and (p - 1) % (2 * d) == 0
    if sym_applicable:
        sym_ok = bool(np.array_equal(tensor.c0[:d, :d], tensor.c0[:d, :d].T))
        out.append(CheckResult("T_symmetric", True, sym_ok))
    else:
        out.append(CheckResult("T_symmetric", False, True, "2d does not divide p-1"))

    # reflected symmetry c_{0,m,n} = c_{0,n+a,m+a} with a the class of -1;
    # for even d with 2d not dividing p-1 this is the half-turn a = d/2
    if d > 1:
        a = ctx.alpha
        half_ok = all(tensor.c0[mm, nn] == tensor.c0[(nn + a) % d, (mm + a) % d]
                      for mm in range(d) for nn in range(d))
        out.append(CheckResult("half_turn_symmetry", d % 2 == 0 and a == d // 2,
                               half_ok, f"shift={a}"))
    else:
        out.append(CheckResult("half_turn_symmetry", False, True, "d = 1"))

    # trace of T*T against the spectrum
    tr = float(np.trace(m.T.T @ m.T))
    v2 = float(np.sum(np.abs(pv.eta) ** 2))
    expected = v2 + ((p - 1) / d) ** 2
    out.append(CheckResult("trace_identity", True, abs(tr - expected) < tol_p,
                           f"tr={tr:.6g} expected={expected:.6g}"))

    # exact closed form for the sum of squared counts (d > 2 only)
    if d > 2:
        lhs_sq = int((tensor.c0[:d, :d].astype(object) ** 2).sum())
        num = p * p + (d * d - 3 * d - 2) * p + 3 * d + 1
        exact_ok = lhs_sq * d * d == num
        out.append(CheckResult("count_square_sum", True, exact_ok,
                               f"lhs={lhs_sq} rhs={num}/{d * d}"))
    else:
        out.append(CheckResult("count_square_sum", False, True, "d <= 2"))

    # eigencolumn residuals: T u_l = lambda_l u_l with u_l the columns of U
    lam = np.append(pv.eta, pv.extra_eigenvalue)
    res = np.abs(m.T @ m.U - m.U * lam[None, :]).max()
    out.append(CheckResult("eigencolumns", True, res < tol_p, f"max_err={res:.3g}"))

    return out


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)
