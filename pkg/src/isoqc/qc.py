"""Quasi-cyclic codes and their decomposition into constituent codes.

A quasi-cyclic code of index l and co-index m (length lm, shift by l
positions preserved) corresponds to a module of length l over
F_q[Y]/(Y^m - 1): coordinate j + i*l becomes coefficient i of polynomial
coordinate j.  Factoring Y^m - 1 into irreducibles splits that ring into
field extensions of F_q, one per factor, and the code into one
constituent code of length l per factor.

Each factor slot fixes a concrete extension field and a root identifying
Y with it.  Self-reciprocal factors get their smallest root; the second
member of a reciprocal pair gets the *inverse* of the first member's
root, which is exactly the identification under which duality acts
slot-wise: the dual's self-reciprocal constituents are Hermitian duals
of the original ones, and its pair constituents are the swapped
Euclidean duals.  That statement is re-checked at runtime whenever a
dual is taken through :func:`qc_dual`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd

from .gf import GF, RelativeBasis, embedding, field
from .cyclic import (WE_FILTER_LIMIT, cyclic_from_linear, equivalent_witness,
                     isodual_witness)
from .lincode import EquivalenceWitness, LinearCode
from .polyring import (Poly, cyclotomic_cosets, factor_xm_minus_1,
                       poly_inverse_mod)


# ---------------------------------------------------------------------------
# the interleaving map
# ---------------------------------------------------------------------------

def phi_forward(ctx: GF, v, l: int, m: int) -> tuple[Poly, ...]:
    """Deinterleave a length-lm vector into l polynomial coordinates."""
    v = tuple(v)
    if len(v) != l * m:
        raise ValueError(f"expected a vector of length {l * m}")
    return tuple(Poly(ctx, [v[j + i * l] for i in range(m)]) for j in range(l))


def phi_inverse(ctx: GF, polys, l: int, m: int) -> tuple[int, ...]:
    """Interleave l polynomial coordinates back into a vector."""
    polys = tuple(polys)
    if len(polys) != l:
        raise ValueError(f"expected {l} polynomial coordinates")
    v = [0] * (l * m)
    for j, c in enumerate(polys):
        if c.degree >= m:
            raise ValueError("coordinate degree exceeds the co-index")
        for i, coef in enumerate(c.coeffs):
            v[j + i * l] = coef
    return tuple(v)


def is_quasi_cyclic(code: LinearCode, l: int) -> bool:
    """True iff shifting every codeword by l positions stays in the code."""
    n = code.n
    if n % l != 0:
        raise ValueError(f"index {l} does not divide length {n}")
    shift = tuple((i + l) % n for i in range(n))
    return all(code.contains(_permuted(row, shift)) for row in code.gen)


def _permuted(row, sigma):
    out = [0] * len(row)
    for j, v in enumerate(row):
        out[sigma[j]] = v
    return tuple(out)


# ---------------------------------------------------------------------------
# factor slots
# ---------------------------------------------------------------------------

class SelfSlot:
    """A self-reciprocal factor with its extension field and conjugation."""

    def __init__(self, ctx: GF, m: int, factor: Poly):
        self.ctx = ctx
        self.factor = factor
        K = factor.degree
        self.K = K
        self.field = field(ctx.p, ctx.k * K)
        self.emb = embedding(ctx, self.field)
        self.beta = _smallest_root(self.field, self.emb, factor)
        # conjugation c(Y) -> c(1/Y): the identity in degree 1, otherwise
        # x -> x^(q^(K/2)), which indeed sends beta to its inverse
        self.conj_exp = 0 if K == 1 else ctx.k * K // 2
        expect = self.field.inv(self.beta)
        got = self.field.frobenius(self.beta, 1, self.conj_exp) \
            if self.conj_exp else self.beta
        if got != expect:
            raise AssertionError("conjugation does not invert the root")
        self.beta_pows = _powers(self.field, self.beta, m)


class PairSlot:
    """A reciprocal pair of factors sharing one extension field.

    The second factor's root is the inverse of the first's, pinning the
    identification under which the dual swaps the two constituents.
    """

    def __init__(self, ctx: GF, m: int, first: Poly, second: Poly):
        self.ctx = ctx
        self.factor_first = first
        self.factor_second = second
        K = first.degree
        self.K = K
        self.field = field(ctx.p, ctx.k * K)
        self.emb = embedding(ctx, self.field)
        self.beta_first = _smallest_root(self.field, self.emb, first)
        self.beta_second = self.field.inv(self.beta_first)
        if _eval_embedded(self.field, self.emb, second, self.beta_second) != 0:
            raise AssertionError("inverse root does not lie on the paired factor")
        self.beta_first_pows = _powers(self.field, self.beta_first, m)
        self.beta_second_pows = _powers(self.field, self.beta_second, m)


def _eval_embedded(big: GF, emb, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = big.add(big.mul(acc, x), emb(c))
    return acc


def _smallest_root(big: GF, emb, f: Poly) -> int:
    for x in big.elements():
        if _eval_embedded(big, emb, f, x) == 0:
            return x
    raise AssertionError("factor has no root in its extension field")


def _powers(big: GF, x: int, m: int) -> tuple[int, ...]:
    out = [1]
    for _ in range(m - 1):
        out.append(big.mul(out[-1], x))
    return tuple(out)


class CRTStructure:
    """The factor slots of Y^m - 1 over a base field, in canonical order."""

    def __init__(self, ctx: GF, m: int):
        self.ctx = ctx
        self.m = m
        self.factorization = factor_xm_minus_1(ctx, m)
        self.self_slots = [SelfSlot(ctx, m, f)
                           for f in self.factorization.self_reciprocal]
        self.pair_slots = [PairSlot(ctx, m, h, hs)
                           for h, hs in self.factorization.pairs]

    def dimension_of(self, self_codes, pair_codes) -> int:
        total = sum(slot.K * c.k
                    for slot, c in zip(self.self_slots, self_codes))
        total += sum(slot.K * (c1.k + c2.k)
                     for slot, (c1, c2) in zip(self.pair_slots, pair_codes))
        return total


@lru_cache(maxsize=None)
def crt_structure(ctx: GF, m: int) -> CRTStructure:
    return CRTStructure(ctx, m)


# ---------------------------------------------------------------------------
# QC codes
# ---------------------------------------------------------------------------

class QCCode:
    """A quasi-cyclic code of index l and co-index m over GF(q)."""

    __slots__ = ("ctx", "l", "m", "code", "_decomp")

    def __init__(self, ctx: GF, l: int, m: int, code: LinearCode,
                 check: bool = True):
        if code.n != l * m:
            raise ValueError(f"length {code.n} is not l*m = {l * m}")
        if m % ctx.p == 0:
            raise ValueError(f"co-index {m} must be coprime to {ctx.p}")
        if check and not is_quasi_cyclic(code, l):
            raise ValueError(f"row space is not invariant under shift by {l}")
        self.ctx = ctx
        self.l = l
        self.m = m
        self.code = code
        self._decomp = None

    @classmethod
    def from_rows(cls, ctx: GF, l: int, m: int, rows) -> "QCCode":
        return cls(ctx, l, m, LinearCode(ctx, l * m, rows))

    @property
    def n(self) -> int:
        return self.l * self.m

    @property
    def dim(self) -> int:
        return self.code.k

    def __eq__(self, other):
        return (isinstance(other, QCCode) and self.ctx is other.ctx
                and (self.l, self.m) == (other.l, other.m)
                and self.code == other.code)

    def __repr__(self):
        return (f"QCCode({self.ctx}, l={self.l}, m={self.m}, "
                f"n={self.n}, k={self.dim})")


@dataclass
class Decomposition:
    """Constituents of a QC code, one linear code of length l per factor."""

    structure: CRTStructure
    l: int
    self_codes: list[LinearCode]
    pair_codes: list[tuple[LinearCode, LinearCode]]

    def components(self):
        """All constituents in slot order, flattened."""
        out = [("self", i, c) for i, c in enumerate(self.self_codes)]
        for j, (c1, c2) in enumerate(self.pair_codes):
            out.append(("pair-first", j, c1))
            out.append(("pair-second", j, c2))
        return out

    def dimension(self) -> int:
        return self.structure.dimension_of(self.self_codes, self.pair_codes)

    def to_dict(self) -> dict:
        def code_dict(slot_field, c):
            return {"field": {"p": slot_field.p, "k": slot_field.k},
                    "length": c.n, "dimension": c.k,
                    "gen": [list(r) for r in c.gen]}
        out = {"m": self.structure.m, "l": self.l,
               "self_reciprocal": [], "pairs": []}
        for slot, c in zip(self.structure.self_slots, self.self_codes):
            entry = code_dict(slot.field, c)
            entry["factor"] = list(slot.factor.coeffs)
            out["self_reciprocal"].append(entry)
        for slot, (c1, c2) in zip(self.structure.pair_slots, self.pair_codes):
            out["pairs"].append({
                "factor_first": list(slot.factor_first.coeffs),
                "factor_second": list(slot.factor_second.coeffs),
                "first": code_dict(slot.field, c1),
                "second": code_dict(slot.field, c2)})
        return out


def decompose(qc: QCCode) -> Decomposition:
    """Split a QC code into its constituent codes, slot by slot."""
    if qc._decomp is not None:
        return qc._decomp
    struct = crt_structure(qc.ctx, qc.m)
    phis = [phi_forward(qc.ctx, row, qc.l, qc.m) for row in qc.code.gen]

    def eval_rows(slot_field, emb, pows):
        rows = []
        for polys in phis:
            rows.append(tuple(
                _eval_with_powers(slot_field, emb, c, pows) for c in polys))
        return LinearCode(slot_field, qc.l, rows)

    self_codes = [eval_rows(s.field, s.emb, s.beta_pows)
                  for s in struct.self_slots]
    pair_codes = [(eval_rows(s.field, s.emb, s.beta_first_pows),
                   eval_rows(s.field, s.emb, s.beta_second_pows))
                  for s in struct.pair_slots]
    decomp = Decomposition(struct, qc.l, self_codes, pair_codes)
    if decomp.dimension() != qc.dim:
        raise AssertionError("constituent dimensions do not add up")
    qc._decomp = decomp
    return decomp


def _eval_with_powers(big: GF, emb, poly: Poly, pows) -> int:
    acc = 0
    for i, c in enumerate(poly.coeffs):
        if c:
            acc = big.add(acc, big.mul(emb(c), pows[i]))
    return acc


@lru_cache(maxsize=None)
def _idempotent(ctx: GF, m: int, factor_coeffs: tuple) -> Poly:
    """The CRT idempotent: 1 mod factor, 0 mod every other factor."""
    factor = Poly(ctx, factor_coeffs)
    modulus = Poly.x_pow_minus_one(ctx, m)
    cofactor = modulus // factor
    u = poly_inverse_mod(cofactor, factor)
    return (cofactor * u) % modulus


def _lift_rows(ctx: GF, l: int, m: int, slot_field: GF, beta: int,
               factor: Poly, comp: LinearCode):
    """Base-field generator rows of the lift of one constituent code."""
    if comp.ctx is not slot_field or comp.n != l:
        raise ValueError("component does not match its slot")
    K = factor.degree
    beta_pows = _powers(slot_field, beta, K)
    basis = RelativeBasis(slot_field, ctx, beta_pows)
    e_f = _idempotent(ctx, m, factor.coeffs)
    modulus = Poly.x_pow_minus_one(ctx, m)
    rows = []
    for row in comp.gen:
        for t in range(K):
            scaled = [slot_field.mul(beta_pows[t], v) for v in row]
            polys = []
            for w in scaled:
                coords = basis.coords(w)
                lift = Poly(ctx, coords)
                polys.append((lift * e_f) % modulus)
            rows.append(phi_inverse(ctx, polys, l, m))
    return rows


def recombine(ctx: GF, l: int, m: int, self_codes, pair_codes) -> QCCode:
    """Rebuild the QC code with the given constituents in slot order."""
    struct = crt_structure(ctx, m)
    if len(self_codes) != len(struct.self_slots) \
            or len(pair_codes) != len(struct.pair_slots):
        raise ValueError("component list does not match the factor slots")
    rows = []
    for slot, comp in zip(struct.self_slots, self_codes):
        rows += _lift_rows(ctx, l, m, slot.field, slot.beta, slot.factor, comp)
    for slot, (c1, c2) in zip(struct.pair_slots, pair_codes):
        rows += _lift_rows(ctx, l, m, slot.field, slot.beta_first,
                           slot.factor_first, c1)
        rows += _lift_rows(ctx, l, m, slot.field, slot.beta_second,
                           slot.factor_second, c2)
    qc = QCCode(ctx, l, m, LinearCode(ctx, l * m, rows))
    expect = struct.dimension_of(self_codes,
                                 [(a, b) for a, b in pair_codes])
    if qc.dim != expect:
        raise AssertionError("recombination lost dimensions")
    return qc


def recombine_decomposition(d: Decomposition, ctx: GF, m: int) -> QCCode:
    return recombine(ctx, d.l, m, d.self_codes, d.pair_codes)


def conjugate_component(comp: LinearCode, K: int) -> LinearCode:
    """Entrywise conjugation of a degree-K slot component.

    Identity for K = 1; otherwise the involution x -> x^(q^(K/2)) of the
    slot field, which must therefore have even relative degree.
    """
    if K == 1:
        return comp
    if K % 2:
        raise ValueError(
            f"degree-{K} slots admit no conjugation: expected 1 or even")
    ctx = comp.ctx
    return LinearCode(
        ctx, comp.n,
        [[ctx.frobenius(v, 1, ctx.k // 2) for v in row] for row in comp.gen])


def qc_dual(qc: QCCode, check: bool = True) -> QCCode:
    """The Euclidean dual, with the slot-wise duality re-verified.

    The dual of an index-l QC code is again index-l QC; with ``check``
    on, its decomposition is compared against the conjugate/swapped duals
    of the original constituents, a standing self-test of the CRT
    conventions.
    """
    dual = QCCode(qc.ctx, qc.l, qc.m, qc.code.dual())
    if check:
        dc, oc = decompose(dual), decompose(qc)
        for slot, dcomp, ocomp in zip(dc.structure.self_slots,
                                      dc.self_codes, oc.self_codes):
            if dcomp != ocomp.hermitian_dual(slot.conj_exp):
                raise AssertionError(
                    "self-reciprocal constituent of the dual is not the "
                    "Hermitian dual of the original constituent")
        for (d1, d2), (o1, o2) in zip(dc.pair_codes, oc.pair_codes):
            if d1 != o2.dual() or d2 != o1.dual():
                raise AssertionError(
                    "pair constituents of the dual are not the swapped "
                    "Euclidean duals of the original constituents")
    return dual


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass
class ComponentCheck:
    slot: str                    # e.g. "self[0]" or "pair[1]"
    description: str
    witness: EquivalenceWitness
    verdict: str                 # "verified" | "refuted" | "unknown"

    def to_dict(self) -> dict:
        return {"slot": self.slot, "description": self.description,
                "witness": self.witness.to_dict(), "verdict": self.verdict}


@dataclass
class QCReport:
    kind: str
    verdict: str                 # "verified" | "refuted" | "unknown"
    checks: list[ComponentCheck] = dc_field(default_factory=list)
    detail: str = ""

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "verdict": self.verdict,
               "checks": [c.to_dict() for c in self.checks]}
        if self.detail:
            out["detail"] = self.detail
        return out


def _verdict_of(w: EquivalenceWitness) -> str:
    if w.found:
        return "verified"
    return "refuted" if w.kind == "none-found" else "unknown"


def _combine(checks) -> str:
    verdicts = {c.verdict for c in checks}
    if "refuted" in verdicts:
        return "refuted"
    if "unknown" in verdicts:
        return "unknown"
    return "verified"


def is_isodual_qc(qc: QCCode, we_budget: int = WE_FILTER_LIMIT) -> QCReport:
    """Isoduality via the constituents: every self-reciprocal constituent
    must be isodual and each pair's first constituent equivalent to the
    dual of the second."""
    d = decompose(qc)
    checks = []
    for i, comp in enumerate(d.self_codes):
        w = isodual_witness(comp, we_budget)
        checks.append(ComponentCheck(
            f"self[{i}]", "constituent equivalent to its dual", w,
            _verdict_of(w)))
    for j, (c1, c2) in enumerate(d.pair_codes):
        w = equivalent_witness(c1, c2.dual(), we_budget)
        checks.append(ComponentCheck(
            f"pair[{j}]",
            "first constituent equivalent to the dual of the second", w,
            _verdict_of(w)))
    return QCReport("isodual", _combine(checks), checks)


def is_self_dual_qc(qc: QCCode) -> QCReport:
    """Self-duality via the constituents: Hermitian self-dual on
    self-reciprocal slots, dual pairs on the rest.  Exact, no search."""
    d = decompose(qc)
    checks = []
    for i, (slot, comp) in enumerate(zip(d.structure.self_slots,
                                         d.self_codes)):
        ok = comp == comp.hermitian_dual(slot.conj_exp)
        w = EquivalenceWitness("permutation", perm=tuple(range(comp.n))) \
            if ok else EquivalenceWitness("none-found",
                                          reason="not Hermitian self-dual")
        checks.append(ComponentCheck(
            f"self[{i}]", "constituent Hermitian self-dual", w,
            "verified" if ok else "refuted"))
    for j, (c1, c2) in enumerate(d.pair_codes):
        ok = c2 == c1.dual()
        w = EquivalenceWitness("permutation", perm=tuple(range(c1.n))) \
            if ok else EquivalenceWitness("none-found",
                                          reason="second is not the dual of first")
        checks.append(ComponentCheck(
            f"pair[{j}]", "second constituent equals the dual of the first",
            w, "verified" if ok else "refuted"))
    return QCReport("self-dual", _combine(checks), checks)


def self_dual_exists(ctx: GF, l: int) -> bool:
    """Existence of self-dual QC codes of even index l over the field:
    equivalent to (-1)^(l/2) being a square."""
    if l % 2:
        raise ValueError("the index of a self-dual QC code must be even")
    return ctx.is_square(ctx.pow(ctx.neg(1), l // 2))


@dataclass
class ExistenceVerdict:
    possible: bool | None        # None = not settled here
    reason: str
    witness: QCCode | None = None
    report: QCReport | None = None

    def to_dict(self) -> dict:
        out = {"possible": self.possible, "reason": self.reason}
        if self.report is not None:
            out["report"] = self.report.to_dict()
        return out


def isodual_qc_existence(ctx: GF, l: int, m: int | None = None) -> ExistenceVerdict:
    """Existence of isodual QC codes of index l.

    Odd l is impossible.  For l = 2 a witness with cyclic constituents is
    built explicitly (for the given co-index m): every constituent is the
    span of (-1, 1), whose dual is the span of (1, 1), and the two are
    exchanged by negating the second coordinate; pair slots carry a code
    and its dual.  Larger even indices are reported as necessary-only.
    """
    if l % 2:
        return ExistenceVerdict(False, "the index must be even")
    if l != 2:
        return ExistenceVerdict(
            None, "even index is necessary; no general construction here")
    if m is None:
        m = 3 if ctx.p != 3 else 5
    struct = crt_structure(ctx, m)
    self_codes = [LinearCode(s.field, 2, [(s.field.neg(1), 1)])
                  for s in struct.self_slots]
    pair_codes = []
    for s in struct.pair_slots:
        c = LinearCode(s.field, 2, [(s.field.neg(1), 1)])
        pair_codes.append((c, c.dual()))
    qc = recombine(ctx, 2, m, self_codes, pair_codes)
    report = is_isodual_qc(qc)
    return ExistenceVerdict(True, f"constructed witness of length {2 * m}",
                            qc, report)


# ---------------------------------------------------------------------------
# counting and multiplier equivalence
# ---------------------------------------------------------------------------

def count_qc_cyclic_constituents(ctx: GF, m: int, l: int) -> int:
    """Number of index-l QC codes of length lm with all-cyclic constituents.

    Each slot contributes the number of cyclic codes of length l over its
    extension field, i.e. 2^(number of cyclotomic cosets); pair slots
    count twice.
    """
    if m % ctx.p == 0:
        raise ValueError(f"gcd({m}, {ctx.p}) != 1")
    if gcd(l, ctx.q) != 1:
        raise ValueError(f"gcd({l}, {ctx.q}) != 1")
    fact = factor_xm_minus_1(ctx, m)
    total = 1
    for f in fact.self_reciprocal:
        total *= 2 ** len(cyclotomic_cosets(ctx.q ** f.degree, l))
    for h, _ in fact.pairs:
        total *= (2 ** len(cyclotomic_cosets(ctx.q ** h.degree, l))) ** 2
    return total


def euler_phi(n: int) -> int:
    out, x, f = n, n, 2
    while f * f <= x:
        if x % f == 0:
            out -= out // f
            while x % f == 0:
                x //= f
        f += 1
    if x > 1:
        out -= out // x
    return out


def count_equivalent_qc(l: int, alpha: int) -> int:
    """(phi(l) + 1)^alpha: the multiplier-image count over alpha factors."""
    return (euler_phi(l) + 1) ** alpha


def multiplier_hypothesis_holds(l: int) -> bool:
    """gcd(l, phi(l)) = 1, under which equivalence reduces to multipliers."""
    return gcd(l, euler_phi(l)) == 1


def multiplier_equivalent_qc(qc1: QCCode, qc2: QCCode) -> QCReport:
    """Slot-wise multiplier equivalence of two QC codes.

    Requires all constituents cyclic (otherwise the notion does not
    apply, reported as such); each slot is searched for a multiplier
    carrying one constituent onto the other, exhaustively over the units
    mod l.
    """
    if qc1.ctx is not qc2.ctx or (qc1.l, qc1.m) != (qc2.l, qc2.m):
        raise ValueError("codes must share field, index, and co-index")
    d1, d2 = decompose(qc1), decompose(qc2)
    checks = []
    for (tag1, idx1, c1), (_, _, c2) in zip(d1.components(), d2.components()):
        slot = f"{tag1}[{idx1}]"
        cy1, cy2 = cyclic_from_linear(c1), cyclic_from_linear(c2)
        trivial1 = c1.k in (0, c1.n)
        trivial2 = c2.k in (0, c2.n)
        if (cy1 is None and not trivial1) or (cy2 is None and not trivial2):
            checks.append(ComponentCheck(
                slot, "constituent is not cyclic",
                EquivalenceWitness("budget-exhausted",
                                   reason="multiplier equivalence inapplicable"),
                "unknown"))
            continue
        if trivial1 or trivial2:
            ok = c1 == c2
            w = EquivalenceWitness("multiplier-scale", a=1, scale=1) if ok \
                else EquivalenceWitness("none-found", reason="trivial mismatch")
            checks.append(ComponentCheck(slot, "trivial constituents equal",
                                         w, _verdict_of(w)))
            continue
        found = None
        for a in range(1, qc1.l + 1):
            if gcd(a, qc1.l) != 1:
                continue
            if cy1.multiplier(a) == cy2:
                found = a
                break
        if found is not None:
            w = EquivalenceWitness("multiplier-scale", a=found, scale=1)
        else:
            w = EquivalenceWitness("none-found",
                                   reason="no multiplier matches")
        checks.append(ComponentCheck(
            slot, "constituent carried onto its counterpart by a multiplier",
            w, _verdict_of(w)))
    return QCReport("multiplier-equivalent", _combine(checks), checks)
