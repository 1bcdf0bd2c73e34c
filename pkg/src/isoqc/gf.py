"""Exact arithmetic in finite fields GF(p^k).

Elements are plain integers in ``range(p**k)``: the base-p digits of an
element are its coefficients over GF(p) in the polynomial residue basis,
constant term first.  Prime-field elements are therefore just residues,
and for every field the integers ``0`` and ``1`` are the additive and
multiplicative identities.

All arithmetic is exact integer arithmetic; nothing here (or anywhere in
this package) touches floating point.  Field contexts are canonical and
cached: two calls to :func:`field` with the same parameters return the
same object, so context identity checks are cheap and reliable.
"""

from __future__ import annotations

from functools import lru_cache

SIZE_CAP = 2**32
_TABLE_CAP = 2**16  # build exp/log tables only for fields up to this size


class FieldSizeError(ValueError):
    """Field order exceeds the configured size cap."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _factorize(n: int) -> list[int]:
    """Distinct prime factors of n, by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial helpers over GF(p), used only to bootstrap field contexts
# (coefficient lists, ascending degree, no trailing zeros)
# ---------------------------------------------------------------------------

def _ptrim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f: list[int], g: list[int], p: int) -> list[int]:
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        coef = f[-1] * inv_lead % p
        shift = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - coef * b) % p
        _ptrim(f)
    return f


def _ppowmod(f: list[int], e: int, g: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(f, g, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), g, p)
        base = _pmod(_pmul(base, base, p), g, p)
        e >>= 1
    return result


def _pgcd(f: list[int], g: list[int], p: int) -> list[int]:
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _pirreducible(f: list[int], p: int) -> bool:
    """Rabin test: f monic of degree k is irreducible over GF(p)."""
    k = len(f) - 1
    x = [0, 1]
    for t in _factorize(k):
        h = _ppowmod(x, p ** (k // t), f, p)
        # gcd(x^{p^{k/t}} - x, f) must be trivial
        diff = list(h)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _ptrim(diff), p)) != 1:
            return False
    h = _ppowmod(x, p**k, f, p)
    return h == [0, 1]


class GF:
    """A canonical finite field GF(p^k).

    The modulus (for ``k > 1``) is the lexicographically smallest monic
    irreducible of degree ``k`` over GF(p), comparing coefficient tuples
    constant term first; the generator is the smallest element of full
    multiplicative order.  Instances are immutable and safe to share.
    """

    __slots__ = ("p", "k", "q", "modulus", "generator", "_qm1_primes",
                 "_exp", "_log", "_red")

    def __init__(self, p: int, k: int = 1, max_size: int = SIZE_CAP):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        q = p**k
        if q > max_size:
            raise FieldSizeError(f"field order {q} exceeds cap {max_size}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = self._find_modulus() if k > 1 else None
        # reduction rows: x^(k+i) mod modulus, as digit-encoded ints
        self._red = None
        if k > 1:
            rows = []
            cur = [(-c) % p for c in self.modulus[:-1]]  # x^k mod f
            rows.append(tuple(cur))
            for _ in range(k - 2):
                cur = self._shift_reduce(cur)
                rows.append(tuple(cur))
            self._red = rows
        self._qm1_primes = _factorize(q - 1) if q > 2 else []
        self._exp = self._log = None
        self.generator = self._find_generator()
        if 2 < q <= _TABLE_CAP:
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _find_modulus(self) -> tuple[int, ...]:
        # lexicographically smallest monic irreducible, scanning coefficient
        # tuples constant term first
        p, k = self.p, self.k
        from itertools import product
        for tail in product(range(p), repeat=k):
            coeffs = list(tail) + [1]
            if _pirreducible(coeffs, p):
                return tuple(coeffs)
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _shift_reduce(self, row: list[int]) -> list[int]:
        # multiply the coefficient row by x and reduce mod modulus
        p, k = self.p, self.k
        lead = row[-1]
        out = [0] + row[:-1]
        if lead:
            for i in range(k):
                out[i] = (out[i] - lead * self.modulus[i]) % p
        return out

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        for g in range(1, self.q):
            if all(self.pow(g, (self.q - 1) // r) != 1 for r in self._qm1_primes):
                return g
        raise AssertionError("no generator found")  # unreachable

    def _build_tables(self):
        q, g = self.q, self.generator
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        v = 1
        for i in range(q - 1):
            exp[i] = v
            exp[i + q - 1] = v
            log[v] = i
            v = self._mul_raw(v, g)
        self._exp, self._log = exp, log

    # -- element views -------------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Coefficient vector of x over GF(p), constant term first."""
        return tuple(self._digits(x))

    def from_coeffs(self, coeffs) -> int:
        out = 0
        for c in reversed(list(coeffs)):
            out = out * self.p + c % self.p
        return out

    def of(self, n: int) -> int:
        """The image of an ordinary integer (n times the identity)."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return -a % p
        out, mult = 0, 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:k]]
        for i in range(k, 2 * k - 1):
            c = conv[i] % p
            if c:
                row = self._red[i - k]
                for j in range(k):
                    out[j] = (out[j] + c * row[j]) % p
        return self.from_coeffs(out)

    def mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        if self._exp is not None:
            return self._exp[(self.q - 1) - self._log[a]]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if a == 0:
            return 0 if e else 1
        e %= self.q - 1
        if self._exp is not None and a:
            return self._exp[self._log[a] * e % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        for r in self._qm1_primes:
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def root_of_unity(self, n: int) -> int:
        """A fixed element of multiplicative order exactly n.

        Deterministic: the canonical generator raised to (q-1)/n, which is
        its minimal power of order n.  Raises if no such root exists.
        """
        if n < 1:
            raise ValueError("n must be positive")
        if (self.q - 1) % n != 0:
            raise ValueError(
                f"no primitive {n}-th root of unity exists in GF({self.q})")
        return self.pow(self.generator, (self.q - 1) // n)

    def is_square(self, x: int) -> bool:
        if x == 0 or self.p == 2:
            return True
        return self.pow(x, (self.q - 1) // 2) == 1

    def frobenius(self, x: int, e: int = 1, base_degree: int = 1) -> int:
        """x raised to (p^base_degree)^e; e = 0 is the identity."""
        return self.pow(x, self.p ** (base_degree * e)) if e else x

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


@lru_cache(maxsize=None)
def _field_cached(p: int, k: int) -> GF:
    return GF(p, k)


def field(p: int, k: int = 1) -> GF:
    """The canonical field GF(p^k); cached, so contexts are singletons."""
    return _field_cached(p, k)


# functional aliases over contexts

def field_create(p: int, k: int = 1) -> GF:
    return field(p, k)


def root_of_unity(ctx: GF, n: int) -> int:
    return ctx.root_of_unity(n)


def is_square(ctx: GF, x: int) -> bool:
    return ctx.is_square(x)


def frobenius_power(ctx: GF, x: int, e: int, base_degree: int = 1) -> int:
    return ctx.frobenius(x, e, base_degree)


class Embedding:
    """The canonical embedding of one canonical field into a larger one.

    The residue class of the subfield (the root of its modulus) is sent to
    the smallest root of the same modulus in the big field, so the map is
    deterministic.  ``inverse`` is only defined on the image.
    """

    __slots__ = ("sub", "sup", "root", "_fwd", "_bwd")

    def __init__(self, sub: GF, sup: GF):
        if sub.p != sup.p or sup.k % sub.k != 0:
            raise ValueError(f"{sub} does not embed in {sup}")
        self.sub, self.sup = sub, sup
        if sub.k == 1:
            self.root = 1
            self._fwd = list(range(sub.p))
        else:
            root = None
            for x in sup.elements():
                acc, xp = 0, 1
                for c in sub.modulus:
                    if c:
                        acc = sup.add(acc, sup.mul(c, xp))
                    xp = sup.mul(xp, x)
                if acc == 0:
                    root = x
                    break
            if root is None:
                raise AssertionError("modulus has no root in extension")
            self.root = root
            fwd = []
            for a in sub.elements():
                acc, xp = 0, 1
                for c in sub.coeffs(a):
                    if c:
                        acc = sup.add(acc, sup.mul(c, xp))
                    xp = sup.mul(xp, root)
                fwd.append(acc)
            self._fwd = fwd
        self._bwd = {y: x for x, y in enumerate(self._fwd)}

    def __call__(self, x: int) -> int:
        return self._fwd[x]

    def inverse(self, y: int) -> int:
        try:
            return self._bwd[y]
        except KeyError:
            raise ValueError(f"{y} is not in the embedded subfield") from None


@lru_cache(maxsize=None)
def embedding(sub: GF, sup: GF) -> Embedding:
    return Embedding(sub, sup)


def _invert_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    """Invert a square matrix over GF(p) by Gauss-Jordan elimination."""
    n = len(mat)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class RelativeBasis:
    """Coordinates of a big field relative to a basis over a subfield.

    Given ``basis`` (length K = sup.k // base.k, linearly independent over
    the embedded base field), ``coords(x)`` returns base-field elements
    c_0..c_{K-1} with x = sum(emb(c_s) * basis[s]).
    """

    def __init__(self, sup: GF, base: GF, basis):
        if sup.k % base.k != 0:
            raise ValueError("base field does not embed")
        self.sup, self.base = sup, base
        self.basis = tuple(basis)
        self.emb = embedding(base, sup)
        e, kk = base.k, sup.k
        if len(self.basis) * e != kk:
            raise ValueError("basis has wrong size")
        p = sup.p
        cols = []
        for b in self.basis:
            for u in range(e):
                unit = self.emb(base.from_coeffs([int(i == u) for i in range(e)]))
                cols.append(sup.coeffs(sup.mul(unit, b)))
        mat = [[cols[j][i] for j in range(kk)] for i in range(kk)]
        self._minv = _invert_mod_p(mat, p)
        self._p = p

    def coords(self, x: int) -> tuple[int, ...]:
        vec = self.sup.coeffs(x)
        p = self._p
        sol = [sum(r * v for r, v in zip(row, vec)) % p for row in self._minv]
        e = self.base.k
        return tuple(self.base.from_coeffs(sol[s * e:(s + 1) * e])
                     for s in range(len(self.basis)))
