"""Polynomials over a finite field, and the factorization of x^m - 1.

Coefficient vectors are stored ascending by degree with no trailing zeros
(the zero polynomial is the empty vector).  The only factorization ever
needed is that of x^m - 1 with gcd(m, p) = 1, which splits along the
cyclotomic cosets of the exponents: each irreducible factor is the minimal
polynomial of a power of a primitive m-th root of unity in the splitting
field.  Factors are kept monic throughout, classified into self-reciprocal
ones and reciprocal pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .gf import GF, embedding, field


class Poly:
    """A dense polynomial over a canonical field context."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: GF, coeffs=()):
        cs = [c % ctx.q if isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, ctx: GF) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: GF) -> "Poly":
        return cls(ctx, (1,))

    @classmethod
    def x(cls, ctx: GF, power: int = 1, coeff: int = 1) -> "Poly":
        return cls(ctx, (0,) * power + (coeff,))

    @classmethod
    def x_pow_minus_one(cls, ctx: GF, n: int) -> "Poly":
        return cls(ctx, (ctx.neg(1),) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ctx is other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def _check(self, other: "Poly"):
        if self.ctx is not other.ctx:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f, g, add = self.coeffs, other.coeffs, self.ctx.add
        if len(f) < len(g):
            f, g = g, f
        out = list(f)
        for i, c in enumerate(g):
            out[i] = add(out[i], c)
        return Poly(self.ctx, out)

    def __neg__(self) -> "Poly":
        neg = self.ctx.neg
        return Poly(self.ctx, [neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        f, g = self.coeffs, other.coeffs
        if not f or not g:
            return Poly.zero(self.ctx)
        ctx = self.ctx
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    if b:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
        return Poly(ctx, out)

    def scale(self, c: int) -> "Poly":
        ctx = self.ctx
        return Poly(ctx, [ctx.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other: "Poly"):
        self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        rem = list(self.coeffs)
        dg = other.degree
        inv_lead = ctx.inv(other.coeffs[-1])
        quo = [0] * max(len(rem) - dg, 0)
        while len(rem) - 1 >= dg and rem:
            c = ctx.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - dg
            quo[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = ctx.sub(rem[shift + i], ctx.mul(c, b))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(ctx, quo), Poly(ctx, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        result, base = Poly.one(self.ctx), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def eval(self, x: int) -> int:
        ctx, acc = self.ctx, 0
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def make_monic(self) -> "Poly":
        if not self or self.coeffs[-1] == 1:
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def map_coeffs(self, func, ctx: GF | None = None) -> "Poly":
        return Poly(ctx or self.ctx, [func(c) for c in self.coeffs])

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "Poly(" + " + ".join(reversed(terms)) + ")"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    while g:
        f, g = g, f % g
    return f.make_monic()


def poly_ext_gcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """(d, s, t) with s*f + t*g = d and d the monic gcd."""
    ctx = f.ctx
    r0, r1 = f, g
    s0, s1 = Poly.one(ctx), Poly.zero(ctx)
    t0, t1 = Poly.zero(ctx), Poly.one(ctx)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        c = ctx.inv(r0.coeffs[-1])
        r0, s0, t0 = r0.scale(c), s0.scale(c), t0.scale(c)
    return r0, s0, t0


def poly_inverse_mod(f: Poly, mod: Poly) -> Poly:
    """The inverse of f modulo mod; requires gcd(f, mod) = 1."""
    d, s, _ = poly_ext_gcd(f, mod)
    if d.degree != 0:
        raise ValueError("polynomial is not invertible modulo the given modulus")
    return s % mod


def reciprocal(f: Poly) -> Poly:
    """The monic reciprocal x^deg(f) * f(1/x) / f(0); requires f(0) != 0."""
    if not f or f.coeffs[0] == 0:
        raise ValueError("reciprocal requires a nonzero constant term")
    c0inv = f.ctx.inv(f.coeffs[0])
    return Poly(f.ctx, [f.ctx.mul(c0inv, c) for c in reversed(f.coeffs)])


def is_self_reciprocal(f: Poly) -> bool:
    return f.make_monic() == reciprocal(f)


def scale_substitute(f: Poly, lam: int) -> Poly:
    """Monic normalization of f(lam * x); lam must be nonzero."""
    ctx = f.ctx
    if lam == 0:
        raise ValueError("scale factor must be nonzero")
    out, lp = [], 1
    for c in f.coeffs:
        out.append(ctx.mul(c, lp))
        lp = ctx.mul(lp, lam)
    return Poly(ctx, out).make_monic()


def power_substitute_mod(f: Poly, a: int, n: int) -> Poly:
    """f(x^a) reduced mod x^n - 1; requires gcd(a, n) = 1."""
    if gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1")
    ctx = f.ctx
    out = [0] * n
    for i, c in enumerate(f.coeffs):
        if c:
            j = i * a % n
            out[j] = ctx.add(out[j], c)
    return Poly(ctx, out)


@dataclass(frozen=True)
class CyclotomicCoset:
    n: int
    representative: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


def cyclotomic_cosets(q: int, n: int) -> list[CyclotomicCoset]:
    """Partition of Z_n into orbits under multiplication by q mod n."""
    if gcd(q, n) != 1:
        raise ValueError(f"gcd({q}, {n}) != 1")
    seen = [False] * n
    cosets = []
    for r in range(n):
        if seen[r]:
            continue
        orbit, x = [], r
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = x * q % n
        cosets.append(CyclotomicCoset(n, r, tuple(sorted(orbit))))
    return cosets


def minimal_polynomial(ext: GF, beta: int, base: GF) -> Poly:
    """Monic minimal polynomial of beta (an element of ext) over base.

    Computed as the product of (x - conjugate) over the Frobenius orbit
    of beta under x -> x^|base|; the coefficients land in the embedded
    copy of the base field and are pulled back through it.
    """
    emb = embedding(base, ext)
    orbit, x = [], beta
    while x not in orbit:
        orbit.append(x)
        x = ext.pow(x, base.q)
    prod = Poly.one(ext)
    for r in orbit:
        prod = prod * Poly(ext, (ext.neg(r), 1))
    return prod.map_coeffs(emb.inverse, base)


class Factorization:
    """The monic irreducible factors of x^m - 1 over a field.

    ``self_reciprocal`` lists the factors fixed by reciprocation, in
    increasing order of their smallest exponent; ``pairs`` lists the
    remaining factors two by two, each pair ordered with the
    lexicographically smaller coefficient tuple first.  ``unit`` is the
    leading unit left over after making everything monic (always 1 here).
    """

    def __init__(self, ctx: GF, m: int, self_reciprocal, pairs):
        self.ctx = ctx
        self.m = m
        self.self_reciprocal = list(self_reciprocal)
        self.pairs = list(pairs)
        self.unit = 1

    def all_factors(self) -> list[Poly]:
        out = list(self.self_reciprocal)
        for h, hstar in self.pairs:
            out.extend((h, hstar))
        return out

    def product(self) -> Poly:
        prod = Poly.one(self.ctx)
        for f in self.all_factors():
            prod = prod * f
        return prod

    @property
    def s(self) -> int:
        return len(self.self_reciprocal)

    @property
    def t(self) -> int:
        return len(self.pairs)

    def __repr__(self):
        return (f"Factorization(x^{self.m}-1 over {self.ctx}: "
                f"s={self.s}, t={self.t})")


@lru_cache(maxsize=None)
def factor_xm_minus_1(ctx: GF, m: int) -> Factorization:
    """Factor x^m - 1 into monic irreducibles over ctx.

    Requires gcd(m, p) = 1 (distinct roots).  Each factor is the minimal
    polynomial of alpha^r over ctx, where alpha is the canonical primitive
    m-th root of unity in the splitting field and r runs over cyclotomic
    coset representatives.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m % ctx.p == 0:
        raise ValueError(
            f"gcd({m}, {ctx.p}) != 1: repeated-root regime is unsupported")
    # multiplicative order of q mod m = degree of the splitting extension
    d, acc = 1, ctx.q % m
    while m > 1 and acc != 1:
        acc = acc * ctx.q % m
        d += 1
    splitting = field(ctx.p, ctx.k * d)
    alpha = splitting.root_of_unity(m)
    cosets = cyclotomic_cosets(ctx.q, m)

    by_rep = {}
    for coset in cosets:
        by_rep[coset.representative] = minimal_polynomial(
            splitting, splitting.pow(alpha, coset.representative), ctx)

    self_rec, pairs, used = [], [], set()
    for coset in cosets:
        r = coset.representative
        if r in used:
            continue
        f = by_rep[r]
        neg_rep = min(-x % m for x in coset.members)
        if neg_rep == r:
            self_rec.append(f)
            used.add(r)
        else:
            g = by_rep[neg_rep]
            pair = (f, g) if f.coeffs <= g.coeffs else (g, f)
            pairs.append(pair)
            used.update((r, neg_rep))

    fact = Factorization(ctx, m, self_rec, pairs)
    if fact.product() != Poly.x_pow_minus_one(ctx, m):
        raise AssertionError("factorization does not multiply back")
    return fact
