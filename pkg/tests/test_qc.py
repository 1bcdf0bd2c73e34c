import itertools
import random
from math import gcd

import pytest

from isoqc.gf import field
from isoqc.cyclic import CyclicCode, equivalent_witness
from isoqc.lincode import LinearCode
from isoqc.polyring import Poly, factor_xm_minus_1
from isoqc.qc import (QCCode, conjugate_component, count_equivalent_qc,
                      count_qc_cyclic_constituents, crt_structure, decompose,
                      euler_phi, is_isodual_qc, is_quasi_cyclic,
                      is_self_dual_qc, isodual_qc_existence,
                      multiplier_equivalent_qc, multiplier_hypothesis_holds,
                      phi_forward, phi_inverse, qc_dual, recombine,
                      recombine_decomposition, self_dual_exists)

F3 = field(3)
F5 = field(5)
F7 = field(7)
F9 = field(3, 2)


def random_qc(ctx, l, m, rng, nrows=None):
    n = l * m
    nrows = nrows or rng.randrange(1, max(2, n // 2))
    rows = []
    for _ in range(nrows):
        r = tuple(rng.randrange(ctx.q) for _ in range(n))
        for s in range(m):
            shift = s * l
            rows.append(r[n - shift:] + r[:n - shift] if shift else r)
    return QCCode(ctx, l, m, LinearCode(ctx, n, rows))


def test_phi_forward_small():
    a, b, c, d = 1, 2, 0, 2
    polys = phi_forward(F3, (a, b, c, d), 2, 2)
    assert polys == (Poly(F3, (a, c)), Poly(F3, (b, d)))
    assert phi_forward(F3, (0, 0, 0, 0), 2, 2) == (Poly.zero(F3),) * 2


def test_phi_roundtrip_random():
    rng = random.Random(1)
    for _ in range(200):
        l, m = rng.randrange(1, 7), rng.randrange(1, 9)
        ctx = [F3, F5, F9][rng.randrange(3)]
        v = tuple(rng.randrange(ctx.q) for _ in range(l * m))
        assert phi_inverse(ctx, phi_forward(ctx, v, l, m), l, m) == v


def test_phi_length_mismatch():
    with pytest.raises(ValueError):
        phi_forward(F3, (1, 2, 3), 2, 2)


def test_is_quasi_cyclic():
    c = CyclicCode.from_gpoly(F3, 7, Poly(F3, (2, 1))).to_linear()
    assert is_quasi_cyclic(c, 1)
    assert is_quasi_cyclic(c, 7)
    rng = random.Random(3)
    qc = random_qc(F5, 2, 3, rng)
    assert is_quasi_cyclic(qc.code, 2)
    with pytest.raises(ValueError):
        is_quasi_cyclic(c, 3)


def test_qccode_validates_shift_invariance():
    with pytest.raises(ValueError):
        QCCode(F3, 2, 2, LinearCode(F3, 4, [(1, 0, 0, 0)]))
    with pytest.raises(ValueError):
        QCCode(F3, 2, 3, LinearCode(F3, 6, []))  # gcd(m, p) != 1


def test_decompose_structure_q7_m3():
    struct = crt_structure(F7, 3)
    assert len(struct.self_slots) == 1 and len(struct.pair_slots) == 1
    assert struct.self_slots[0].field is F7
    assert struct.pair_slots[0].field is F7
    s = struct.pair_slots[0]
    assert s.beta_second == F7.inv(s.beta_first)


def test_decompose_structure_q9_m2():
    struct = crt_structure(F9, 2)
    assert len(struct.self_slots) == 2 and not struct.pair_slots
    assert all(s.field is F9 for s in struct.self_slots)
    assert {s.beta for s in struct.self_slots} == {1, F9.neg(1)}


def test_decompose_structure_q5_m3():
    struct = crt_structure(F5, 3)
    assert len(struct.self_slots) == 2 and not struct.pair_slots
    assert struct.self_slots[0].field is F5
    assert struct.self_slots[1].field is field(5, 2)
    assert struct.self_slots[1].conj_exp == 1  # x -> x^5 on GF(25)


def test_decompose_dimension_sum():
    rng = random.Random(7)
    for ctx, l, m in [(F3, 2, 2), (F5, 2, 3), (F7, 3, 3), (F9, 2, 5),
                      (F3, 3, 7)]:
        qc = random_qc(ctx, l, m, rng)
        d = decompose(qc)
        assert d.dimension() == qc.dim


def test_decompose_recombine_roundtrip():
    rng = random.Random(11)
    for ctx, l, m in [(F3, 2, 2), (F3, 2, 4), (F5, 2, 3), (F7, 2, 3),
                      (F5, 3, 2), (F9, 2, 2), (F3, 2, 7), (F9, 2, 5)]:
        for _ in range(4):
            qc = random_qc(ctx, l, m, rng)
            d = decompose(qc)
            back = recombine_decomposition(d, ctx, m)
            assert back.code == qc.code, (ctx, l, m)


def test_recombine_zero_and_full():
    struct = crt_structure(F5, 3)
    l = 2
    zeros = [LinearCode(s.field, l, []) for s in struct.self_slots]
    qc = recombine(F5, l, 3, zeros, [])
    assert qc.dim == 0
    fulls = [LinearCode(s.field, l,
                        [[1, 0], [0, 1]]) for s in struct.self_slots]
    qc = recombine(F5, l, 3, fulls, [])
    assert qc.dim == l * 3


def test_qc_dual_proposition_small_battery():
    rng = random.Random(13)
    cases = [(q, l, m) for q in (3, 5, 7, 9) for l in (2, 3) for m in (2, 3, 5)]
    for q, l, m in cases:
        ctx = field(3, 2) if q == 9 else field(q)
        if m % ctx.p == 0:
            continue
        qc = random_qc(ctx, l, m, rng)
        dual = qc_dual(qc, check=True)  # raises on any slot mismatch
        assert dual.dim == qc.n - qc.dim
        assert is_quasi_cyclic(dual.code, l)


def test_conjugate_component():
    struct = crt_structure(F5, 3)
    slot = struct.self_slots[1]  # GF(25), conjugation x -> x^5
    c = LinearCode(slot.field, 2, [(1, slot.field.generator)])
    assert conjugate_component(c, 1) is c
    cc = conjugate_component(c, 2)
    assert conjugate_component(cc, 2) == c
    with pytest.raises(ValueError):
        conjugate_component(c, 3)


def test_conjugate_component_preserves_weights():
    # conjugation is a field automorphism applied entrywise, so it always
    # preserves the weight distribution; codes with base-field entries are
    # fixed outright
    struct = crt_structure(F3, 7)
    slot = struct.self_slots[1]  # GF(3^6)
    g = slot.field.generator
    c = LinearCode(slot.field, 2, [(1, g)])
    cc = conjugate_component(c, slot.K)
    assert (c.weight_enumerator(3**6 + 1)
            == cc.weight_enumerator(3**6 + 1))
    base = LinearCode(slot.field, 2, [(1, 2)])
    assert conjugate_component(base, slot.K) == base


def build_self_pair_qc(ctx, l, m, c1, c2):
    """The pattern: isodual c1 on the self slot, (c2, dual(c2)) on the pair."""
    struct = crt_structure(ctx, m)
    assert len(struct.self_slots) == 1 and len(struct.pair_slots) == 1
    return recombine(ctx, l, m, [c1], [(c2, c2.dual())])


def test_is_isodual_qc_positive_l2():
    c1 = LinearCode(F7, 2, [(F7.neg(1), 1)])
    c2 = LinearCode(F7, 2, [(1, 2)])
    qc = build_self_pair_qc(F7, 2, 3, c1, c2)
    rep = is_isodual_qc(qc)
    assert rep.verdict == "verified"
    assert all(c.witness.found for c in rep.checks)


def test_is_isodual_qc_positive_l4():
    c1 = LinearCode(F7, 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    c2 = LinearCode(F7, 4, [(1, 2, 3, 4), (0, 1, 0, 6)])
    qc = build_self_pair_qc(F7, 4, 3, c1, c2)
    rep = is_isodual_qc(qc)
    assert rep.verdict == "verified"


def test_is_isodual_qc_negative():
    # a self constituent of the wrong dimension refutes immediately
    bad = LinearCode(F7, 2, [(1, 0), (0, 1)])
    c2 = LinearCode(F7, 2, [(1, 2)])
    qc = build_self_pair_qc(F7, 2, 3, bad, c2)
    rep = is_isodual_qc(qc)
    assert rep.verdict == "refuted"
    assert any(c.verdict == "refuted" for c in rep.checks)


def test_is_isodual_qc_negative_pair():
    c1 = LinearCode(F7, 2, [(F7.neg(1), 1)])
    struct = crt_structure(F7, 3)
    f = struct.pair_slots[0].field
    # pair whose first member is not equivalent to the dual of the second
    first = LinearCode(f, 2, [(1, 0), (0, 1)])
    second = LinearCode(f, 2, [(1, 2)])
    qc = recombine(F7, 2, 3, [c1], [(first, second)])
    rep = is_isodual_qc(qc)
    assert rep.verdict == "refuted"


def test_is_self_dual_qc_q9_example():
    # the factors of Y^2 - 1 are linear, so the slot conjugation is the
    # identity and the constituent condition is Euclidean self-duality:
    # gamma must satisfy gamma^2 = -1 (possible since -1 is a square)
    gamma = next(x for x in F9.elements() if F9.mul(x, x) == F9.neg(1))
    comp = LinearCode(F9, 2, [(1, gamma)])
    qc = recombine(F9, 2, 2, [comp, comp], [])
    rep = is_self_dual_qc(qc)
    assert rep.verdict == "verified"
    # direct cross-check: the code literally equals its dual
    assert qc.code.dual() == qc.code
    assert is_isodual_qc(qc).verdict == "verified"


def test_is_self_dual_qc_negative():
    comp = LinearCode(F9, 2, [(1, 1)])
    qc = recombine(F9, 2, 2, [comp, comp], [])
    rep = is_self_dual_qc(qc)
    assert rep.verdict == "refuted"


def test_self_dual_exists_table():
    assert not self_dual_exists(F3, 2)
    assert self_dual_exists(F5, 2)
    assert self_dual_exists(F9, 2)
    assert self_dual_exists(F5, 4)
    with pytest.raises(ValueError):
        self_dual_exists(F5, 3)


def test_self_dual_exists_brute_force_l2():
    # oracle: an Euclidean self-dual [2,1] code over GF(q) exists iff some
    # (1, b) satisfies 1 + b^2 = 0, or equivalently -1 is a square
    for ctx in (F3, F5, F7, F9, field(13)):
        found = any(ctx.add(1, ctx.mul(b, b)) == 0 for b in ctx.elements())
        assert self_dual_exists(ctx, 2) == found


def test_isodual_existence_odd_index():
    v = isodual_qc_existence(F5, 3)
    assert v.possible is False


def test_isodual_existence_l2_witnesses():
    for ctx, m in [(F3, 7), (F5, 11), (F7, 3)]:
        v = isodual_qc_existence(ctx, 2, m)
        assert v.possible is True
        assert v.witness is not None and v.witness.n == 2 * m
        assert v.report.verdict == "verified"


def test_isodual_existence_larger_even():
    v = isodual_qc_existence(F5, 6)
    assert v.possible is None


def enumerate_qc_cyclic(ctx, m, l):
    """Oracle: build every QC code whose constituents are all cyclic."""
    struct = crt_structure(ctx, m)
    slot_choices = []
    for s in struct.self_slots + struct.pair_slots:
        fact = factor_xm_minus_1(s.field, l)
        divisors = []
        fs = fact.all_factors()
        for mask in range(2 ** len(fs)):
            g = Poly.one(s.field)
            for i, f in enumerate(fs):
                if (mask >> i) & 1:
                    g = g * f
            divisors.append(CyclicCode.from_gpoly(s.field, l, g).to_linear())
        if isinstance(s, type(struct.self_slots[0])) and s in struct.self_slots:
            slot_choices.append(divisors)
        else:
            slot_choices.append(divisors)
    n_self = len(struct.self_slots)
    seen = set()
    selfs_opts = slot_choices[:n_self]
    pair_opts = slot_choices[n_self:]
    for selfs in itertools.product(*selfs_opts):
        for pair_first in itertools.product(*pair_opts):
            for pair_second in itertools.product(*pair_opts):
                pairs = list(zip(pair_first, pair_second))
                qc = recombine(ctx, l, m, list(selfs), pairs)
                seen.add(qc.code.gen)
    return seen


def test_count_qc_cyclic_small():
    assert count_qc_cyclic_constituents(F3, 2, 2) == 16
    assert count_qc_cyclic_constituents(F5, 3, 2) == 16
    assert count_qc_cyclic_constituents(F7, 3, 2) == 64
    assert count_qc_cyclic_constituents(F5, 1, 2) == 4  # single slot Y - 1
    with pytest.raises(ValueError):
        count_qc_cyclic_constituents(F3, 3, 2)
    with pytest.raises(ValueError):
        count_qc_cyclic_constituents(F3, 2, 3)


def test_count_matches_enumeration_3_2_2():
    got = enumerate_qc_cyclic(F3, 2, 2)
    assert len(got) == count_qc_cyclic_constituents(F3, 2, 2)


def test_count_equivalent():
    assert count_equivalent_qc(2, 1) == 2
    assert count_equivalent_qc(3, 2) == 9
    assert count_equivalent_qc(5, 3) == 125
    assert euler_phi(12) == 4
    assert multiplier_hypothesis_holds(2)
    assert multiplier_hypothesis_holds(3)
    assert not multiplier_hypothesis_holds(8)


def test_multiplier_equivalent_identity_and_recovery():
    # l = 8 over GF(7): the cosets mod 8 are {0},{1,7},{2,6},{3,5},{4},
    # so defining set {1,7} is genuinely moved by multipliers
    l = 8
    c1 = CyclicCode.from_defining_set(F7, l, {1, 7})
    pair_code = CyclicCode.from_defining_set(F7, l, {0, 4})
    qc1 = recombine(F7, l, 3, [c1.to_linear()],
                    [(pair_code.to_linear(), pair_code.to_linear())])
    rep = multiplier_equivalent_qc(qc1, qc1)
    assert rep.verdict == "verified"
    # twist one constituent by a multiplier; the search recovers it
    twisted = c1.multiplier(3)
    assert twisted != c1
    qc2 = recombine(F7, l, 3, [twisted.to_linear()],
                    [(pair_code.to_linear(), pair_code.to_linear())])
    rep = multiplier_equivalent_qc(qc1, qc2)
    assert rep.verdict == "verified"
    assert any(c.witness.a not in (None, 1) for c in rep.checks)


def test_multiplier_equivalent_dimension_mismatch():
    l = 5
    a = CyclicCode.from_gpoly(F7, l, Poly(F7, (-1, 1))).to_linear()
    b = CyclicCode.from_gpoly(F7, l, Poly.one(F7)).to_linear()
    pair = CyclicCode.from_gpoly(F7, l, Poly(F7, (-1, 1))).to_linear()
    qc1 = recombine(F7, l, 3, [a], [(pair, pair)])
    qc2 = recombine(F7, l, 3, [b], [(pair, pair)])
    rep = multiplier_equivalent_qc(qc1, qc2)
    assert rep.verdict == "refuted"


def test_report_serialization():
    c1 = LinearCode(F7, 2, [(F7.neg(1), 1)])
    c2 = LinearCode(F7, 2, [(1, 2)])
    qc = build_self_pair_qc(F7, 2, 3, c1, c2)
    d = decompose(qc).to_dict()
    assert d["m"] == 3 and d["l"] == 2
    rep = is_isodual_qc(qc).to_dict()
    assert rep["verdict"] == "verified"
