"""Linear codes over a finite field, in canonical generator-matrix form.

A code is stored as the reduced row echelon form of any spanning set, so
code equality is tuple equality of generator matrices.  Weight
enumeration and exact minimum distance run over the full message space
with a vectorized integer kernel: every element of GF(p^e) is expanded
into its e prime-field coordinates, each codeword symbol is a block of e
residues, and whole blocks of messages are enumerated with numpy integer
arithmetic (meet-in-the-middle over a precomputed suffix table).  Codes
too large to enumerate fall back to the dual side via the MacWilliams
transform, then to information-set enumeration by increasing message
weight, which yields either a certified value or an explicit bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .gf import GF

ENUM_LIMIT = 2**26          # full-enumeration threshold, in messages
GENERAL_SEARCH_CAP = 12     # length cap for backtracking permutation search


@dataclass(frozen=True)
class DistanceResult:
    value: int
    certified: bool

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class EquivalenceWitness:
    """Outcome of an equivalence search.

    ``permutation`` and ``multiplier-scale`` witnesses are positive and
    replayable; ``none-found`` means a proof of inequivalence (invariant
    mismatch or exhausted search space); ``budget-exhausted`` is an
    honest "don't know".
    """

    kind: str
    perm: tuple[int, ...] | None = None
    a: int | None = None
    scale: int | None = None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.kind in ("permutation", "multiplier-scale")

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.perm is not None:
            out["perm"] = list(self.perm)
        if self.a is not None:
            out["a"] = self.a
        if self.scale is not None:
            out["scale"] = self.scale
        if self.reason:
            out["reason"] = self.reason
        return out


def _rref(ctx: GF, rows) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return (), ()
    width = len(rows[0])
    r = 0
    pivots = []
    for c in range(width):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = ctx.inv(lead)
            rows[r] = [ctx.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ctx.sub(a, ctx.mul(f, b))
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


class LinearCode:
    """A linear code; ``gen`` is the canonical RREF generator matrix."""

    __slots__ = ("ctx", "n", "gen", "pivots", "_we")

    def __init__(self, ctx: GF, n: int, rows=()):
        for row in rows:
            if len(row) != n:
                raise ValueError("ragged rows")
        self.ctx = ctx
        self.n = n
        self.gen, self.pivots = _rref(ctx, rows)
        self._we = None

    @classmethod
    def from_rows(cls, ctx: GF, rows, n: int | None = None) -> "LinearCode":
        rows = [tuple(r) for r in rows]
        if n is None:
            if not rows:
                raise ValueError("length required for an empty row list")
            n = len(rows[0])
        return cls(ctx, n, rows)

    @property
    def k(self) -> int:
        return len(self.gen)

    dim = k

    def __eq__(self, other):
        return (isinstance(other, LinearCode) and self.ctx is other.ctx
                and self.n == other.n and self.gen == other.gen)

    def __hash__(self):
        return hash((id(self.ctx), self.n, self.gen))

    def __repr__(self):
        return f"LinearCode({self.ctx}, n={self.n}, k={self.k})"

    # -- membership and enumeration ------------------------------------------

    def contains(self, v) -> bool:
        ctx = self.ctx
        v = list(v)
        if len(v) != self.n:
            raise ValueError("length mismatch")
        for row, p in zip(self.gen, self.pivots):
            c = v[p]
            if c:
                v = [ctx.sub(a, ctx.mul(c, b)) for a, b in zip(v, row)]
        return not any(v)

    def is_subcode_of(self, other: "LinearCode") -> bool:
        return all(other.contains(r) for r in self.gen)

    def codewords(self):
        """Iterate over all q^k codewords (use only for small codes)."""
        ctx = self.ctx
        if self.k == 0:
            yield (0,) * self.n
            return
        for msg in itertools.product(ctx.elements(), repeat=self.k):
            word = [0] * self.n
            for m, row in zip(msg, self.gen):
                if m:
                    word = [ctx.add(w, ctx.mul(m, r))
                            for w, r in zip(word, row)]
            yield tuple(word)

    # -- duals ----------------------------------------------------------------

    def dual(self) -> "LinearCode":
        """The Euclidean dual: all vectors orthogonal to every codeword."""
        ctx, n = self.ctx, self.n
        piv = set(self.pivots)
        free = [c for c in range(n) if c not in piv]
        rows = []
        for f in free:
            v = [0] * n
            v[f] = 1
            for i, p in enumerate(self.pivots):
                v[p] = ctx.neg(self.gen[i][f])
            rows.append(v)
        return LinearCode(ctx, n, rows)

    def hermitian_dual(self, conj_exp: int = 0) -> "LinearCode":
        """Dual under sum(a_i * conj(b_i)) with conj = x -> x^(p^conj_exp).

        conj_exp = 0 is the Euclidean dual; otherwise the conjugation must
        be an involution of the field.  The result is the conjugate,
        entry by entry, of the Euclidean dual.
        """
        ctx = self.ctx
        t = conj_exp % ctx.k
        if t and (2 * t) % ctx.k != 0:
            raise ValueError(
                f"x -> x^({ctx.p}^{conj_exp}) is not an involution of {ctx}")
        d = self.dual()
        if t == 0:
            return d
        rows = [[ctx.frobenius(v, t) for v in row] for row in d.gen]
        return LinearCode(ctx, self.n, rows)

    # -- constructions ---------------------------------------------------------

    def direct_sum(self, other: "LinearCode") -> "LinearCode":
        if self.ctx is not other.ctx:
            raise ValueError("direct sum requires a common field")
        n = self.n + other.n
        rows = [list(r) + [0] * other.n for r in self.gen]
        rows += [[0] * self.n + list(r) for r in other.gen]
        return LinearCode(self.ctx, n, rows)

    def apply_permutation(self, sigma) -> "LinearCode":
        """The code with coordinate j moved to position sigma[j]."""
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(self.n)):
            raise ValueError("not a permutation of the coordinates")
        rows = []
        for row in self.gen:
            out = [0] * self.n
            for j, v in enumerate(row):
                out[sigma[j]] = v
            rows.append(out)
        return LinearCode(self.ctx, self.n, rows)

    def scale_column(self, j: int, c: int) -> "LinearCode":
        if c == 0:
            raise ValueError("column scale must be a unit")
        ctx = self.ctx
        rows = [list(r) for r in self.gen]
        for row in rows:
            row[j] = ctx.mul(row[j], c)
        return LinearCode(ctx, self.n, rows)

    # -- weights ----------------------------------------------------------------

    def weight_enumerator(self, budget: int = ENUM_LIMIT) -> tuple[int, ...]:
        """Exact codeword counts by Hamming weight, A_0..A_n."""
        if self._we is not None:
            return self._we
        q, k, n = self.ctx.q, self.k, self.n
        if q**k <= budget:
            counts = _weight_counts(self.ctx, self.gen, n)
        elif q ** (n - k) <= budget:
            dual = self.dual()
            counts = macwilliams_transform(
                _weight_counts(self.ctx, dual.gen, n), n, q)
        else:
            raise ValueError(
                f"enumeration of {q}^{min(k, n - k)} messages exceeds budget")
        self._we = tuple(int(c) for c in counts)
        return self._we

    def min_distance(self, budget: int = ENUM_LIMIT) -> DistanceResult:
        """Exact minimum nonzero weight, or a certified-flagged bound."""
        if self.k == 0:
            raise ValueError("the zero code has no minimum distance")
        q, k, n = self.ctx.q, self.k, self.n
        if q**k <= budget or q ** (n - k) <= budget:
            we = self.weight_enumerator(budget)
            return DistanceResult(next(w for w in range(1, n + 1) if we[w]),
                                  True)
        return self._min_distance_infoset(budget)

    def _min_distance_infoset(self, budget: int) -> DistanceResult:
        """Enumerate messages by increasing weight over the RREF rows.

        The pivot coordinates of a codeword reproduce its message, so a
        codeword from a message of weight w has weight >= w; once the
        best weight seen is <= w + 1 after finishing level w, it is
        exact.
        """
        ctx, k = self.ctx, self.k
        units = [u for u in ctx.units()]
        best = min(sum(1 for v in row if v) for row in self.gen)
        spent = 0
        for w in range(1, k + 1):
            if best <= w:
                return DistanceResult(best, True)
            for support in itertools.combinations(range(k), w):
                # first scalar fixed to 1: scalar multiples share a weight
                for scalars in itertools.product(units, repeat=w - 1):
                    word = list(self.gen[support[0]])
                    for idx, c in zip(support[1:], scalars):
                        row = self.gen[idx]
                        word = [ctx.add(a, ctx.mul(c, b))
                                for a, b in zip(word, row)]
                    wt = sum(1 for v in word if v)
                    if wt < best:
                        best = wt
                    spent += 1
                    if spent >= budget:
                        return DistanceResult(best, False)
            if best <= w + 1:
                return DistanceResult(best, True)
        return DistanceResult(best, True)


# ---------------------------------------------------------------------------
# enumeration kernel
# ---------------------------------------------------------------------------

_SUFFIX_TARGET = 1 << 14
_CHUNK_BYTES = 1 << 25


def _expand_rows(ctx: GF, rows, n: int) -> np.ndarray:
    """Prime-coordinate expansion of the scalar-multiple basis.

    Row i of the code contributes e = ctx.k rows x^t * row_i; every
    symbol becomes e consecutive residues mod p.  The expanded rows are
    an F_p-basis of the code, so enumerating their F_p-span visits each
    codeword exactly once.
    """
    p, e = ctx.p, ctx.k
    out = np.empty((len(rows) * e, n * e), dtype=np.int8)
    for i, row in enumerate(rows):
        for t in range(e):
            scalar = p**t  # the residue-class power x^t
            scaled = [ctx.mul(scalar, v) for v in row]
            flat = []
            for v in scaled:
                flat.extend(ctx.coeffs(v))
            out[i * e + t] = flat
    return out


def _span_table(basis: np.ndarray, p: int) -> np.ndarray:
    """All p^rows combinations of the given expanded rows, reduced mod p."""
    ncols = basis.shape[1]
    table = np.zeros((1, ncols), dtype=np.int8)
    coefs = np.arange(p, dtype=np.int16)
    for row in basis:
        block = (table[None, :, :] + (coefs[:, None] * row[None, :])[:, None, :]) % p
        table = block.reshape(-1, ncols).astype(np.int8)
    return table


def _weight_counts(ctx: GF, rows, n: int) -> np.ndarray:
    """Hamming-weight histogram of the row span, by full enumeration."""
    counts = np.zeros(n + 1, dtype=np.int64)
    if not rows:
        counts[0] = 1
        return counts
    p, e = ctx.p, ctx.k
    basis = _expand_rows(ctx, rows, n)
    total = basis.shape[0]
    lo = 0
    while lo < total and p ** (lo + 1) <= _SUFFIX_TARGET:
        lo += 1
    suffix = _span_table(basis[total - lo:], p)
    prefix = _span_table(basis[:total - lo], p)
    chunk = max(1, _CHUNK_BYTES // max(suffix.shape[0] * suffix.shape[1], 1))
    for start in range(0, prefix.shape[0], chunk):
        pc = prefix[start:start + chunk]
        combined = pc[:, None, :] + suffix[None, :, :]   # entries in [0, 2p-2]
        zero = (combined == 0) | (combined == p)
        if e > 1:
            zero = zero.reshape(pc.shape[0], suffix.shape[0], n, e).all(axis=3)
        w = n - zero.sum(axis=2)
        counts += np.bincount(w.ravel(), minlength=n + 1)
    return counts


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum((-1) ** s * (q - 1) ** (j - s) * comb(i, s) * comb(n - i, j - s)
               for s in range(min(i, j) + 1))


def macwilliams_transform(counts, n: int, q: int) -> tuple[int, ...]:
    """Weight distribution of the dual code, by the MacWilliams identity."""
    counts = [int(c) for c in counts]
    size = sum(counts)
    out = []
    for j in range(n + 1):
        total = sum(counts[i] * krawtchouk(j, i, n, q) for i in range(n + 1))
        if total % size:
            raise ArithmeticError("MacWilliams transform is not integral")
        out.append(total // size)
    return tuple(out)


# ---------------------------------------------------------------------------
# permutation equivalence
# ---------------------------------------------------------------------------

def _column_profiles(words, n: int, q: int):
    """Per-column symbol histograms and pairwise joint-zero counts."""
    cols = [[0] * q for _ in range(n)]
    for w in words:
        for j, v in enumerate(w):
            cols[j][v] += 1
    pairz = [[0] * n for _ in range(n)]
    for w in words:
        zeros = [j for j, v in enumerate(w) if v == 0]
        for a in range(len(zeros)):
            for b in range(a, len(zeros)):
                pairz[zeros[a]][zeros[b]] += 1
                if zeros[a] != zeros[b]:
                    pairz[zeros[b]][zeros[a]] += 1
    return [tuple(c) for c in cols], pairz


def equivalence_search(C: LinearCode, D: LinearCode,
                       node_budget: int = 200_000,
                       enum_budget: int = 1_000_000) -> EquivalenceWitness:
    """Search for a coordinate permutation carrying C onto D.

    Cheap invariants (dimension, weight enumerators of the codes and
    their duals, column histograms) run first; the backtracking search
    over column assignments is capped both by length and by a node
    budget, so the outcome distinguishes proved inequivalence
    ("none-found") from an abandoned search ("budget-exhausted").
    """
    if C.ctx is not D.ctx or C.n != D.n:
        raise ValueError("equivalence search requires a common field and length")
    if C == D:
        return EquivalenceWitness("permutation", perm=tuple(range(C.n)))
    if C.k != D.k:
        return EquivalenceWitness("none-found", reason="dimension mismatch")
    q, n, k = C.ctx.q, C.n, C.k
    try:
        if C.weight_enumerator(enum_budget) != D.weight_enumerator(enum_budget):
            return EquivalenceWitness("none-found",
                                      reason="weight enumerator mismatch")
        if (C.dual().weight_enumerator(enum_budget)
                != D.dual().weight_enumerator(enum_budget)):
            return EquivalenceWitness("none-found",
                                      reason="dual weight enumerator mismatch")
    except ValueError:
        return EquivalenceWitness("budget-exhausted",
                                  reason="codes too large for invariants")
    if n > GENERAL_SEARCH_CAP:
        return EquivalenceWitness(
            "budget-exhausted", reason=f"n > {GENERAL_SEARCH_CAP} search cap")
    if q**k > enum_budget:
        return EquivalenceWitness("budget-exhausted",
                                  reason="too many codewords to enumerate")

    cwords = list(C.codewords())
    dwords = list(D.codewords())
    ccols, cz = _column_profiles(cwords, n, q)
    dcols, dz = _column_profiles(dwords, n, q)
    if sorted(ccols) != sorted(dcols):
        return EquivalenceWitness("none-found",
                                  reason="column profile mismatch")

    sigma = [-1] * n
    used = [False] * n
    nodes = 0

    def backtrack(j: int) -> bool | None:
        nonlocal nodes
        if j == n:
            return C.apply_permutation(sigma) == D
        for t in range(n):
            if used[t] or ccols[j] != dcols[t]:
                continue
            if any(cz[j][i] != dz[t][sigma[i]] for i in range(j)):
                continue
            nodes += 1
            if nodes > node_budget:
                return None
            sigma[j] = t
            used[t] = True
            res = backtrack(j + 1)
            if res:
                return True
            used[t] = False
            sigma[j] = -1
            if res is None:
                return None
        return False

    res = backtrack(0)
    if res:
        return EquivalenceWitness("permutation", perm=tuple(sigma))
    if res is None:
        return EquivalenceWitness("budget-exhausted", reason="node budget")
    return EquivalenceWitness("none-found", reason="search space exhausted")
