"""Cyclic codes via defining sets, with isodual constructions.

A cyclic code of length n (gcd(n, p) = 1) is stored as its defining set:
the exponents i for which the generator polynomial vanishes at alpha^i,
alpha being the canonical primitive n-th root of unity in the splitting
field.  Defining sets make the interesting maps cheap set arithmetic:

    multiplier by a        S -> a^(-1) * S
    coordinate scale by λ  S -> S - dlog(λ)
    reciprocal             S -> -S
    dual                   S -> Z_n minus (-S)

Isoduality of a cyclic code is decided by searching the structured
family (multiplier composed with scale) for a map onto the dual, falling
back to a general permutation search at small length.  The module also
builds the three families of isodual cyclic codes of length 2^a * m'
used by the matrix-product constructions downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .gf import GF, embedding, field
from .lincode import (GENERAL_SEARCH_CAP, EquivalenceWitness, LinearCode,
                      equivalence_search)
from .polyring import Poly, factor_xm_minus_1, poly_gcd, scale_substitute

WE_FILTER_LIMIT = 2**20  # skip weight-enumerator prefilters beyond this


class CyclicEnv:
    """Splitting-field data for length-n cyclic codes over a field."""

    def __init__(self, ctx: GF, n: int):
        if n < 1 or n % ctx.p == 0:
            raise ValueError(f"cyclic length {n} must be coprime to {ctx.p}")
        self.ctx = ctx
        self.n = n
        d, acc = 1, ctx.q % n
        while n > 1 and acc != 1:
            acc = acc * ctx.q % n
            d += 1
        self.splitting = field(ctx.p, ctx.k * d)
        self.emb = embedding(ctx, self.splitting)
        self.alpha = self.splitting.root_of_unity(n)
        pows = [1]
        for _ in range(n - 1):
            pows.append(self.splitting.mul(pows[-1], self.alpha))
        self.alpha_pow = pows
        self._dlog = {v: i for i, v in enumerate(pows)}

    def eval_at_root(self, f: Poly, i: int) -> int:
        acc = 0
        x = self.alpha_pow[i % self.n]
        for c in reversed(f.coeffs):
            acc = self.splitting.add(self.splitting.mul(acc, x), self.emb(c))
        return acc

    def scalar_dlog(self, lam: int) -> int:
        """dlog base alpha of a base-field n-th root of unity."""
        image = self.emb(lam)
        if image not in self._dlog:
            raise ValueError(f"{lam} is not an n-th root of unity")
        return self._dlog[image]

    def nth_roots_in_base(self) -> list[int]:
        """Base-field elements with lam^n = 1, ascending."""
        out = [lam for lam in self.ctx.units()
               if self.ctx.pow(lam, self.n) == 1]
        return sorted(out)

    def poly_from_exponents(self, exps) -> Poly:
        """The monic polynomial with roots alpha^e for e in exps."""
        prod = Poly.one(self.splitting)
        for e in exps:
            prod = prod * Poly(self.splitting,
                               (self.splitting.neg(self.alpha_pow[e % self.n]), 1))
        return prod.map_coeffs(self.emb.inverse, self.ctx)


@lru_cache(maxsize=None)
def cyclic_env(ctx: GF, n: int) -> CyclicEnv:
    return CyclicEnv(ctx, n)


class CyclicCode:
    """A cyclic code identified by its defining set."""

    __slots__ = ("ctx", "n", "defining_set", "_gpoly", "_linear")

    def __init__(self, ctx: GF, n: int, defining_set, gpoly: Poly | None = None):
        cyclic_env(ctx, n)  # validates gcd(n, p) = 1
        s = frozenset(x % n for x in defining_set)
        for x in s:
            if x * ctx.q % n not in s:
                raise ValueError("defining set is not a union of cosets")
        self.ctx = ctx
        self.n = n
        self.defining_set = s
        self._gpoly = gpoly
        self._linear = None

    @classmethod
    def from_gpoly(cls, ctx: GF, n: int, g: Poly) -> "CyclicCode":
        g = g.make_monic() if g else g
        if not g:
            raise ValueError("zero polynomial does not generate a cyclic code")
        if not (Poly.x_pow_minus_one(ctx, n) % g).is_zero():
            raise ValueError(f"generator does not divide x^{n} - 1")
        env = cyclic_env(ctx, n)
        s = {i for i in range(n) if env.eval_at_root(g, i) == 0}
        assert len(s) == g.degree
        return cls(ctx, n, s, gpoly=g)

    @classmethod
    def from_defining_set(cls, ctx: GF, n: int, s) -> "CyclicCode":
        return cls(ctx, n, s)

    @property
    def dim(self) -> int:
        return self.n - len(self.defining_set)

    @property
    def gpoly(self) -> Poly:
        if self._gpoly is None:
            env = cyclic_env(self.ctx, self.n)
            self._gpoly = env.poly_from_exponents(sorted(self.defining_set))
        return self._gpoly

    def to_linear(self) -> LinearCode:
        """Generator-matrix view: the cyclic shifts of the generator."""
        if self._linear is None:
            g = list(self.gpoly.coeffs) + [0] * (self.n - len(self.gpoly.coeffs))
            rows = [tuple(g[-s:] + g[:-s]) if s else tuple(g)
                    for s in range(self.dim)]
            self._linear = LinearCode(self.ctx, self.n, rows)
        return self._linear

    def __eq__(self, other):
        return (isinstance(other, CyclicCode) and self.ctx is other.ctx
                and self.n == other.n
                and self.defining_set == other.defining_set)

    def __hash__(self):
        return hash((id(self.ctx), self.n, self.defining_set))

    def __repr__(self):
        return (f"CyclicCode({self.ctx}, n={self.n}, "
                f"S={sorted(self.defining_set)})")

    # -- the structured maps ---------------------------------------------------

    def dual(self) -> "CyclicCode":
        neg = {(-x) % self.n for x in self.defining_set}
        return CyclicCode(self.ctx, self.n, set(range(self.n)) - neg)

    def multiplier(self, a: int) -> "CyclicCode":
        """The image under the coordinate map j -> a*j (so g -> g(x^a))."""
        if gcd(a, self.n) != 1:
            raise ValueError(f"gcd({a}, {self.n}) != 1")
        ainv = pow(a, -1, self.n)
        return CyclicCode(self.ctx, self.n,
                          {ainv * x % self.n for x in self.defining_set})

    def scale(self, lam: int) -> "CyclicCode":
        """The code generated by g(lam * x); lam must satisfy lam^n = 1."""
        d = cyclic_env(self.ctx, self.n).scalar_dlog(lam)
        return CyclicCode(self.ctx, self.n,
                          {(x - d) % self.n for x in self.defining_set})

    def reciprocal_code(self) -> "CyclicCode":
        return CyclicCode(self.ctx, self.n,
                          {(-x) % self.n for x in self.defining_set})


def cyclic_from_linear(code: LinearCode) -> CyclicCode | None:
    """Recover the cyclic view of a shift-invariant linear code.

    Returns None when the code is not cyclic or its length is not coprime
    to the characteristic.
    """
    n, ctx = code.n, code.ctx
    if n % ctx.p == 0 or code.k == 0 or code.k == n:
        return None
    shift = tuple((i + 1) % n for i in range(n))
    shifted = code.apply_permutation(shift)
    if shifted != code:
        return None
    g = Poly.x_pow_minus_one(ctx, n)
    for row in code.gen:
        g = poly_gcd(g, Poly(ctx, row))
    if g.degree != n - code.k:
        return None
    cyc = CyclicCode.from_gpoly(ctx, n, g)
    return cyc if cyc.to_linear() == code else None


def structured_equivalence(C: CyclicCode, D: CyclicCode) -> EquivalenceWitness:
    """Search multiplier-scale maps carrying C onto D.

    Candidates (a, lam) are tried in lexicographic order; a found witness
    means multiplier(scale(C, lam), a) == D exactly.
    """
    if C.ctx is not D.ctx or C.n != D.n:
        raise ValueError("codes must share a field and length")
    n = C.n
    env = cyclic_env(C.ctx, n)
    s_d = D.defining_set
    for a in range(1, n + 1):
        if gcd(a, n) != 1:
            continue
        ainv = pow(a, -1, n)
        for lam in env.nth_roots_in_base():
            d = env.scalar_dlog(lam)
            if {ainv * ((x - d) % n) % n for x in C.defining_set} == s_d:
                return EquivalenceWitness("multiplier-scale", a=a, scale=lam)
    return EquivalenceWitness("none-found",
                              reason="no multiplier-scale map matches")


def equivalent_witness(C: LinearCode, D: LinearCode,
                       we_budget: int = WE_FILTER_LIMIT) -> EquivalenceWitness:
    """Equivalence of two linear codes: invariants, then structured maps
    when both are cyclic, then backtracking permutation search at small
    length."""
    if C.ctx is not D.ctx or C.n != D.n:
        raise ValueError("codes must share a field and length")
    if C.k != D.k:
        return EquivalenceWitness("none-found", reason="dimension mismatch")
    if C == D:
        return EquivalenceWitness("permutation", perm=tuple(range(C.n)))
    cc, dd = cyclic_from_linear(C), cyclic_from_linear(D)
    if cc is not None and dd is not None:
        w = structured_equivalence(cc, dd)
        if w.found:
            return w
    # a found witness would have implied equal weight enumerators; with
    # none, a mismatch refutes outright
    q = C.ctx.q
    if q ** min(C.k, C.n - C.k) <= we_budget:
        if C.weight_enumerator(we_budget) != D.weight_enumerator(we_budget):
            return EquivalenceWitness("none-found",
                                      reason="weight enumerator mismatch")
    if C.n <= GENERAL_SEARCH_CAP:
        return equivalence_search(C, D, enum_budget=we_budget)
    return EquivalenceWitness(
        "budget-exhausted",
        reason="no structured witness and length exceeds the search cap")


def is_isodual_cyclic(C: CyclicCode,
                      we_budget: int = WE_FILTER_LIMIT) -> EquivalenceWitness:
    """Witness that C is equivalent to its dual, or a refutation.

    The structured family is searched first; every map in it preserves
    weight enumerators, so a found witness already implies the necessary
    condition WE(C) = WE(dual).  Absent a witness, the enumerators are
    compared (within budget) and a mismatch refutes isoduality outright;
    otherwise a general permutation search decides at small length.
    """
    if 2 * C.dim != C.n:
        return EquivalenceWitness(
            "none-found",
            reason=f"dimension {C.dim} is not half the length {C.n}")
    D = C.dual()
    w = structured_equivalence(C, D)
    if w.found:
        return w
    if C.ctx.q ** C.dim <= we_budget:
        if (C.to_linear().weight_enumerator(we_budget)
                != D.to_linear().weight_enumerator(we_budget)):
            return EquivalenceWitness("none-found",
                                      reason="weight enumerator mismatch")
    if C.n <= GENERAL_SEARCH_CAP:
        return equivalence_search(C.to_linear(), D.to_linear(),
                                  enum_budget=we_budget)
    return EquivalenceWitness(
        "budget-exhausted",
        reason="no structured witness and length exceeds the search cap")


def isodual_witness(code: LinearCode,
                    we_budget: int = WE_FILTER_LIMIT) -> EquivalenceWitness:
    """Isoduality of a generic linear code (cyclic structure auto-detected)."""
    if 2 * code.k != code.n:
        return EquivalenceWitness(
            "none-found",
            reason=f"dimension {code.k} is not half the length {code.n}")
    cyc = cyclic_from_linear(code)
    if cyc is not None:
        return is_isodual_cyclic(cyc, we_budget)
    return equivalent_witness(code, code.dual(), we_budget)


# ---------------------------------------------------------------------------
# duadic splittings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DuadicSplitting:
    """A partition of the nonzero cosets swapped by some multiplier."""

    m: int
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    multipliers: tuple[int, ...]

    @property
    def b(self) -> int:
        return self.multipliers[0]

    @property
    def mu_minus_one(self) -> bool:
        return (self.m - 1) in self.multipliers


def find_duadic_splittings(ctx: GF, m: int) -> list[DuadicSplitting]:
    """All splittings of the nonzero q-cosets mod m into swapped halves."""
    if m % 2 == 0:
        raise ValueError("duadic length must be odd")
    if m % ctx.p == 0:
        raise ValueError(f"gcd({m}, {ctx.p}) != 1")
    from .polyring import cyclotomic_cosets
    cosets = [set(c.members) for c in cyclotomic_cosets(ctx.q, m)
              if c.representative != 0]
    if len(cosets) < 2:
        return []
    out = []
    rest = cosets[1:]
    for mask in range(2 ** len(rest)):
        s1 = set(cosets[0])
        s2 = set()
        for i, c in enumerate(rest):
            (s1 if (mask >> i) & 1 else s2).update(c)
        if not s2 or len(s1) != len(s2):
            continue
        mults = [b for b in range(2, m) if gcd(b, m) == 1
                 and {b * x % m for x in s1} == s2
                 and {b * x % m for x in s2} == s1]
        if mults:
            out.append(DuadicSplitting(m, tuple(sorted(s1)), tuple(sorted(s2)),
                                       tuple(mults)))
    return out


def duadic_generators(ctx: GF, splitting: DuadicSplitting) -> tuple[Poly, Poly]:
    """The monic generators with root exponents S1 and S2 respectively."""
    env = cyclic_env(ctx, splitting.m)
    return (env.poly_from_exponents(splitting.s1),
            env.poly_from_exponents(splitting.s2))


# ---------------------------------------------------------------------------
# isodual cyclic code constructions of length 2^a * m'
# ---------------------------------------------------------------------------

def _check_construction_inputs(ctx: GF, a: int, mprime: int):
    if a < 1:
        raise ValueError("a must be >= 1")
    if mprime < 1 or mprime % 2 == 0:
        raise ValueError("m' must be odd")
    if mprime % ctx.p == 0:
        raise ValueError(f"gcd({mprime}, {ctx.p}) != 1")
    if (ctx.q - 1) % (2**a) != 0:
        raise ValueError(f"no primitive 2^{a}-th root of unity in {ctx}")


def _verify_isodual(codes, we_budget=WE_FILTER_LIMIT):
    for c in codes:
        w = is_isodual_cyclic(c, we_budget)
        if not w.found:
            raise ArithmeticError(
                f"constructed code unexpectedly fails the isodual check: {w}")


def construct_1(ctx: GF, a: int, mprime: int,
                verify: bool = True) -> tuple[CyclicCode, CyclicCode]:
    """The two isodual cyclic codes of length 2^a * m' built from the
    split x^m' - 1 = (x - 1) f(x)."""
    _check_construction_inputs(ctx, a, mprime)
    n = 2**a * mprime
    alpha = ctx.root_of_unity(2**a)
    f = Poly.x_pow_minus_one(ctx, mprime) // Poly(ctx, (-1, 1))
    half = 2 ** (a - 1)
    g_minus = Poly(ctx, (ctx.neg(1),) + (0,) * (half - 1) + (1,))
    for k in range(half):
        g_minus = g_minus * scale_substitute(f, ctx.pow(alpha, -(2 * k + 1)))
    g_plus = Poly(ctx, (1,) + (0,) * (half - 1) + (1,))
    for k in range(1, half + 1):
        g_plus = g_plus * scale_substitute(f, ctx.pow(alpha, -2 * k))
    pair = (CyclicCode.from_gpoly(ctx, n, g_minus),
            CyclicCode.from_gpoly(ctx, n, g_plus))
    if verify:
        _verify_isodual(pair)
    return pair


def _mixed_product(ctx: GF, a: int, alpha: int, fi: Poly, fj: Poly):
    half = 2 ** (a - 1)
    prod = Poly.one(ctx)
    for k in range(1, half + 1):
        prod = prod * scale_substitute(fi, ctx.pow(alpha, -2 * k))
    for k in range(half):
        prod = prod * scale_substitute(fj, ctx.pow(alpha, -(2 * k + 1)))
    return prod


def construct_2(ctx: GF, a: int, mprime: int, f1: Poly | None = None,
                f2: Poly | None = None, which: tuple[int, int] = (1, 2),
                verify: bool = True) -> tuple[CyclicCode, CyclicCode]:
    """Isodual cyclic codes of length 2^a * m' from a complementary split
    x^m' - 1 = (x - 1) f1 f2.

    When f1, f2 are not supplied they are derived by grouping the
    reciprocal factor pairs: f1 collects one member of each pair, f2 its
    reciprocal together with any remaining self-reciprocal factors.
    """
    _check_construction_inputs(ctx, a, mprime)
    n = 2**a * mprime
    alpha = ctx.root_of_unity(2**a)
    if (f1 is None) != (f2 is None):
        raise ValueError("supply both f1 and f2 or neither")
    if f1 is None:
        fact = factor_xm_minus_1(ctx, mprime)
        f1, f2 = Poly.one(ctx), Poly.one(ctx)
        for h, hstar in fact.pairs:
            f1 = f1 * h
            f2 = f2 * hstar
        for g in fact.self_reciprocal:
            if g != Poly(ctx, (-1, 1)):
                f2 = f2 * g
    if (Poly(ctx, (-1, 1)) * f1 * f2 !=
            Poly.x_pow_minus_one(ctx, mprime)):
        raise ValueError("f1, f2 do not complete the split of x^m' - 1")
    if sorted(which) != [1, 2]:
        raise ValueError("which must be a permutation of (1, 2)")
    fi, fj = (f1, f2) if which == (1, 2) else (f2, f1)
    prod = _mixed_product(ctx, a, alpha, fi, fj)
    half = 2 ** (a - 1)
    g_minus = Poly(ctx, (ctx.neg(1),) + (0,) * (half - 1) + (1,)) * prod
    g_plus = Poly(ctx, (1,) + (0,) * (half - 1) + (1,)) * prod
    pair = (CyclicCode.from_gpoly(ctx, n, g_minus),
            CyclicCode.from_gpoly(ctx, n, g_plus))
    if verify:
        _verify_isodual(pair)
    return pair


def construct_3(ctx: GF, a: int, splitting: DuadicSplitting,
                variant: str, which: int = 1,
                verify: bool = True) -> tuple[CyclicCode, CyclicCode]:
    """Isodual cyclic codes of length 2^a * m' from a duadic splitting.

    Variant "i" mixes the two odd-like generators exactly like
    :func:`construct_2`; variant "ii" requires the splitting to be given
    by negation and uses a single generator f_which across all scale
    twists.
    """
    mprime = splitting.m
    _check_construction_inputs(ctx, a, mprime)
    if variant not in ("i", "ii"):
        raise ValueError("variant must be 'i' or 'ii'")
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    n = 2**a * mprime
    alpha = ctx.root_of_unity(2**a)
    f1, f2 = duadic_generators(ctx, splitting)
    fi, fj = (f1, f2) if which == 1 else (f2, f1)
    half = 2 ** (a - 1)
    if variant == "i":
        prod = _mixed_product(ctx, a, alpha, fi, fj)
    else:
        if not splitting.mu_minus_one:
            raise ValueError("variant ii requires the splitting by negation")
        prod = Poly.one(ctx)
        for k in range(1, 2**a + 1):
            prod = prod * scale_substitute(fi, ctx.pow(alpha, -k))
    g_minus = Poly(ctx, (ctx.neg(1),) + (0,) * (half - 1) + (1,)) * prod
    g_plus = Poly(ctx, (1,) + (0,) * (half - 1) + (1,)) * prod
    pair = (CyclicCode.from_gpoly(ctx, n, g_minus),
            CyclicCode.from_gpoly(ctx, n, g_plus))
    if verify:
        _verify_isodual(pair)
    return pair
