"""Matrix-product constructions of isodual quasi-cyclic codes.

The Vandermonde product of 2^a codes of length 2^a * m' (m' odd) is the
matrix product whose matrix is the inverse of the Vandermonde matrix of
a primitive 2^a-th root of unity.  Writing the blocks side by side, the
resulting code of length 2^(2a) * m' is quasi-cyclic of index equal to
the input length, and its constituents along the factors of Y^(2^a) - 1
are precisely the input codes, so isodual inputs give an isodual
product.

The cubic construction glues a code over GF(q) and a code over GF(q^2)
(q = 2 mod 3, so Y^2 + Y + 1 is irreducible) into a QC code of co-index
3 whose two constituents are the given pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import GF, RelativeBasis, field
from .cyclic import WE_FILTER_LIMIT, isodual_witness
from .lincode import LinearCode
from .qc import QCCode, QCReport, is_isodual_qc


@dataclass(frozen=True)
class VandermondeContext:
    """A primitive 2^a-th root of unity with its Vandermonde matrix pair."""

    ctx: GF
    a: int
    alpha: int
    V: tuple[tuple[int, ...], ...]
    Vinv: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return 2**self.a


def vandermonde(ctx: GF, a: int) -> VandermondeContext:
    """Build V = (alpha^(ij)) and its exact inverse 2^-a * (alpha^(-ij))."""
    if a < 1:
        raise ValueError("a must be >= 1")
    size = 2**a
    alpha = ctx.root_of_unity(size)
    v = tuple(tuple(ctx.pow(alpha, i * j) for j in range(size))
              for i in range(size))
    inv_size = ctx.inv(ctx.of(size))
    vinv = tuple(tuple(ctx.mul(inv_size, ctx.pow(alpha, -i * j))
                       for j in range(size)) for i in range(size))
    for i in range(size):
        for j in range(size):
            acc = 0
            for t in range(size):
                acc = ctx.add(acc, ctx.mul(v[i][t], vinv[t][j]))
            if acc != (1 if i == j else 0):
                raise AssertionError("Vandermonde inverse is not exact")
    return VandermondeContext(ctx, a, alpha, v, vinv)


@dataclass(frozen=True)
class MatrixProductSpec:
    codes: tuple[LinearCode, ...]
    A: tuple[tuple[int, ...], ...]


def matrix_product(codes, A) -> LinearCode:
    """The code {(c_0, ..., c_(k-1)) A} with blocks written side by side.

    Entry A[i][j] scales the contribution of code i to block j; the
    generator matrix stacks, for every generator row g of code i, the
    row (A[i][0] g | A[i][1] g | ... ).
    """
    codes = tuple(codes)
    if not codes:
        raise ValueError("at least one code is required")
    ctx, n = codes[0].ctx, codes[0].n
    for c in codes:
        if c.ctx is not ctx or c.n != n:
            raise ValueError("codes must share a field and a length")
    A = tuple(tuple(row) for row in A)
    if len(A) != len(codes) or any(len(r) != len(A[0]) for r in A):
        raise ValueError("matrix shape does not match the code list")
    nblocks = len(A[0])
    rows = []
    for i, code in enumerate(codes):
        for g in code.gen:
            row = []
            for j in range(nblocks):
                row.extend(ctx.mul(A[i][j], v) for v in g)
            rows.append(row)
    return LinearCode(ctx, nblocks * n, rows)


def vandermonde_block_rows(codes, vc: VandermondeContext):
    """The structural block generator with entries alpha^(-ij), un-reduced.

    This is the displayed form (G_i | alpha^(-i) G_i | ...); it spans the
    same code as the exact-inverse version since the two matrices differ
    by the unit 2^a.
    """
    ctx = vc.ctx
    size = vc.size
    rows = []
    for i, code in enumerate(codes):
        for g in code.gen:
            row = []
            for j in range(size):
                c = ctx.pow(vc.alpha, -i * j)
                row.extend(ctx.mul(c, v) for v in g)
            rows.append(tuple(row))
    return rows


def vandermonde_product(codes, vc: VandermondeContext) -> QCCode:
    """The Vandermonde product as a QC code of index the input length.

    Inputs: exactly 2^a codes of common length 2^a * m' with m' odd.  The
    product has length 2^(2a) * m' and co-index 2^a; its constituents
    are the input codes.
    """
    codes = tuple(codes)
    size = vc.size
    if len(codes) != size:
        raise ValueError(f"expected {size} input codes, got {len(codes)}")
    ctx, n = codes[0].ctx, codes[0].n
    if ctx is not vc.ctx:
        raise ValueError("codes and Vandermonde context disagree on the field")
    if n % size != 0 or (n // size) % 2 == 0:
        raise ValueError(
            f"input length {n} is not 2^{vc.a} times an odd co-length")
    inner = matrix_product(codes, vc.Vinv)
    return QCCode(ctx, n, size, inner)


def isodual_by_vandermonde(codes, vc: VandermondeContext,
                           we_budget: int = WE_FILTER_LIMIT
                           ) -> tuple[QCCode, QCReport]:
    """Vandermonde product of isodual codes, with verification report.

    Every input must pass its own isodual check first; a failing input is
    rejected by index.  The product is then verified through its
    constituents.
    """
    codes = tuple(codes)
    for idx, c in enumerate(codes):
        w = isodual_witness(c, we_budget)
        if not w.found:
            raise ValueError(
                f"input code {idx} failed its isodual check ({w.kind}: "
                f"{w.reason})")
    qc = vandermonde_product(codes, vc)
    return qc, is_isodual_qc(qc, we_budget)


# ---------------------------------------------------------------------------
# the cubic construction
# ---------------------------------------------------------------------------

def _cubic_beta(ext: GF) -> int:
    """The smallest root of Y^2 + Y + 1 in GF(q^2)."""
    for x in ext.elements():
        if ext.add(ext.add(ext.mul(x, x), x), 1) == 0:
            return x
    raise AssertionError("Y^2 + Y + 1 has no root in the quadratic extension")


def cubic(c1: LinearCode, c2: LinearCode) -> QCCode:
    """The QC code {(x+2a-b | x-a+2b | x-a-b)} of co-index 3.

    x runs over the GF(q) code c1 and a + beta*b over the GF(q^2) code
    c2, with beta the canonical root of Y^2 + Y + 1.  Requires q = 2
    mod 3 (so the quadratic is irreducible) and characteristic != 3.
    The constituents of the result are c1 and c2.
    """
    ctx = c1.ctx
    if ctx.p == 3:
        raise ValueError("characteristic 3 is excluded")
    if ctx.q % 3 != 2:
        raise ValueError(f"need q = 2 mod 3, got q = {ctx.q}")
    ext = field(ctx.p, 2 * ctx.k)
    if c2.ctx is not ext:
        raise ValueError(f"second code must live over {ext}")
    l = c1.n
    if c2.n != l:
        raise ValueError("both codes must have the same length")
    beta = _cubic_beta(ext)
    basis = RelativeBasis(ext, ctx, [1, beta])
    two = ctx.of(2)
    rows = []
    for x in c1.gen:
        rows.append(tuple(x) * 3)
    ext_rows = list(c2.gen) + [[ext.mul(beta, v) for v in row]
                               for row in c2.gen]
    for w in ext_rows:
        a, b = zip(*(basis.coords(v) for v in w))
        block0 = [ctx.sub(ctx.mul(two, aj), bj) for aj, bj in zip(a, b)]
        block1 = [ctx.add(ctx.neg(aj), ctx.mul(two, bj))
                  for aj, bj in zip(a, b)]
        block2 = [ctx.neg(ctx.add(aj, bj)) for aj, bj in zip(a, b)]
        rows.append(tuple(block0) + tuple(block1) + tuple(block2))
    return QCCode(ctx, l, 3, LinearCode(ctx, 3 * l, rows))


def isodual_by_cubic(c1: LinearCode, c2: LinearCode,
                     we_budget: int = WE_FILTER_LIMIT
                     ) -> tuple[QCCode, QCReport]:
    """Cubic construction with the constituent-wise isodual verification."""
    qc = cubic(c1, c2)
    return qc, is_isodual_qc(qc, we_budget)
