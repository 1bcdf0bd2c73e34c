"""Command-line interface and the on-disk code file format.

Code files are JSON with a canonical serialization (sorted keys, no
spaces), so identical inputs always produce byte-identical outputs:

    {"field": {"k": 1, "p": 3}, "kind": "cyclic", "n": 14,
     "gpoly": [...], "meta": {...}}

Kinds: "linear" (n + generator rows), "cyclic" (n + monic generator
polynomial), "qc" (l, m + generator rows).  Field elements serialize as
their integer encoding (base-p digits = coefficients over the prime
subfield); extension fields carry their canonical modulus for
validation.  Matrices are row lists of ascending-coordinate lists.

Exit codes: 0 verified/success, 1 refuted, 2 invalid input, 3 unknown
(budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import construct as construct_mod
from . import cyclic as cyclic_mod
from . import qc as qc_mod
from .gf import GF, field
from .lincode import LinearCode
from .polyring import Poly, factor_xm_minus_1

EXIT_VERIFIED = 0
EXIT_REFUTED = 1
EXIT_INVALID = 2
EXIT_UNKNOWN = 3

DEFAULT_BUDGET_MILLIONS = 64


def parse_q(q: int) -> GF:
    """Interpret a prime power as its canonical field."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return field(p, k)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def poly_str(coeffs) -> str:
    """Conventional descending-degree rendering of a coefficient list."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# code files
# ---------------------------------------------------------------------------

def field_to_dict(ctx: GF) -> dict:
    out = {"p": ctx.p, "k": ctx.k}
    if ctx.k > 1:
        out["modulus"] = list(ctx.modulus)
    return out


def field_from_dict(d: dict) -> GF:
    ctx = field(int(d["p"]), int(d.get("k", 1)))
    if "modulus" in d and tuple(d["modulus"]) != (ctx.modulus or ()):
        raise ValueError(
            f"modulus {d['modulus']} is not the canonical modulus of {ctx}")
    return ctx


def code_to_dict(obj, meta: dict | None = None) -> dict:
    if isinstance(obj, qc_mod.QCCode):
        out = {"field": field_to_dict(obj.ctx), "kind": "qc",
               "l": obj.l, "m": obj.m,
               "gen": [list(r) for r in obj.code.gen]}
    elif isinstance(obj, cyclic_mod.CyclicCode):
        out = {"field": field_to_dict(obj.ctx), "kind": "cyclic",
               "n": obj.n, "gpoly": list(obj.gpoly.coeffs)}
    elif isinstance(obj, LinearCode):
        out = {"field": field_to_dict(obj.ctx), "kind": "linear",
               "n": obj.n, "gen": [list(r) for r in obj.gen]}
    else:
        raise TypeError(f"not a code object: {obj!r}")
    if meta:
        out["meta"] = meta
    return out


def code_from_dict(d: dict):
    ctx = field_from_dict(d["field"])
    kind = d["kind"]
    if kind == "linear":
        return LinearCode(ctx, int(d["n"]), [tuple(r) for r in d["gen"]])
    if kind == "cyclic":
        return cyclic_mod.CyclicCode.from_gpoly(
            ctx, int(d["n"]), Poly(ctx, d["gpoly"]))
    if kind == "qc":
        l, m = int(d["l"]), int(d["m"])
        return qc_mod.QCCode(ctx, l, m,
                             LinearCode(ctx, l * m, [tuple(r) for r in d["gen"]]))
    raise ValueError(f"unknown code kind {kind!r}")


def load_code(path: str):
    with open(path, encoding="utf-8") as fh:
        return code_from_dict(json.load(fh))


def write_code(path: str, obj, meta: dict | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(code_to_dict(obj, meta)))


def as_linear(obj) -> LinearCode:
    if isinstance(obj, qc_mod.QCCode):
        return obj.code
    if isinstance(obj, cyclic_mod.CyclicCode):
        return obj.to_linear()
    return obj


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit(args, human: str, payload: dict):
    if getattr(args, "json", False):
        sys.stdout.write(canonical_json(payload))
    else:
        print(human)


def _verdict_exit(verdict: str) -> int:
    return {"verified": EXIT_VERIFIED, "refuted": EXIT_REFUTED,
            "unknown": EXIT_UNKNOWN}[verdict]


def _witness_verdict(w) -> str:
    if w.found:
        return "verified"
    return "refuted" if w.kind == "none-found" else "unknown"


def _budget_items(args) -> int:
    return int(getattr(args, "budget", DEFAULT_BUDGET_MILLIONS) * 10**6)


def _write_outputs(args, codes, reports, names):
    """Write or print construction results; reports land in meta."""
    metas = [{"verification": r.to_dict() if hasattr(r, "to_dict") else r}
             if r is not None else None for r in reports]
    if getattr(args, "out", None):
        if len(codes) == 1:
            paths = [args.out]
        else:
            paths = [f"{args.out}{i}.code" for i in range(len(codes))]
        for path, code, meta in zip(paths, codes, metas):
            write_code(path, code, meta)
            print(f"wrote {path}")
    else:
        for name, code, meta in zip(names, codes, metas):
            sys.stdout.write(canonical_json(code_to_dict(code, meta)))
    return EXIT_VERIFIED


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_factor(args) -> int:
    ctx = parse_q(args.q)
    fact = factor_xm_minus_1(ctx, args.m)
    payload = {"q": ctx.q, "m": fact.m, "unit": fact.unit,
               "self_reciprocal": [list(f.coeffs)
                                   for f in fact.self_reciprocal],
               "pairs": [[list(h.coeffs), list(hs.coeffs)]
                         for h, hs in fact.pairs]}
    lines = [f"x^{fact.m} - 1 over GF({ctx.q}):"]
    for f in fact.self_reciprocal:
        lines.append(f"  self-reciprocal: {poly_str(f.coeffs)}")
    for h, hs in fact.pairs:
        lines.append(f"  pair: {poly_str(h.coeffs)}  |  {poly_str(hs.coeffs)}")
    _emit(args, "\n".join(lines), payload)
    return EXIT_VERIFIED


def _isodual_reports(codes, budget):
    out = []
    for c in codes:
        w = cyclic_mod.is_isodual_cyclic(c, budget)
        out.append({"isodual": w.to_dict(), "verdict": _witness_verdict(w)})
    return out


def cmd_construct_cyclic1(args) -> int:
    ctx = parse_q(args.q)
    pair = cyclic_mod.construct_1(ctx, args.a, args.mprime)
    reports = _isodual_reports(pair, _budget_items(args))
    return _write_outputs(args, pair, reports, ["minus", "plus"])


def cmd_construct_cyclic2(args) -> int:
    ctx = parse_q(args.q)
    which = (1, 2) if args.which == "12" else (2, 1)
    pair = cyclic_mod.construct_2(ctx, args.a, args.mprime, which=which)
    reports = _isodual_reports(pair, _budget_items(args))
    return _write_outputs(args, pair, reports, ["minus", "plus"])


def cmd_construct_cyclic3(args) -> int:
    ctx = parse_q(args.q)
    splittings = cyclic_mod.find_duadic_splittings(ctx, args.mprime)
    if not splittings:
        raise ValueError(f"no duadic splitting exists for m' = {args.mprime} "
                         f"over GF({ctx.q})")
    if not 0 <= args.splitting < len(splittings):
        raise ValueError(f"splitting index out of range "
                         f"(found {len(splittings)})")
    pair = cyclic_mod.construct_3(ctx, args.a, splittings[args.splitting],
                                  args.variant, which=args.which)
    reports = _isodual_reports(pair, _budget_items(args))
    return _write_outputs(args, pair, reports, ["minus", "plus"])


def cmd_construct_vandermonde(args) -> int:
    codes = [as_linear(load_code(p)) for p in args.inputs]
    if not codes:
        raise ValueError("at least one input code file is required")
    size = len(codes)
    a = size.bit_length() - 1
    if 2**a != size:
        raise ValueError(f"number of inputs must be a power of two, got {size}")
    vc = construct_mod.vandermonde(codes[0].ctx, a)
    qc, rep = construct_mod.isodual_by_vandermonde(codes, vc,
                                                   _budget_items(args))
    return _write_outputs(args, [qc], [rep], ["vandermonde"])


def cmd_construct_cubic(args) -> int:
    c1 = as_linear(load_code(args.c1))
    c2 = as_linear(load_code(args.c2))
    qc, rep = construct_mod.isodual_by_cubic(c1, c2, _budget_items(args))
    return _write_outputs(args, [qc], [rep], ["cubic"])


def cmd_construct_l2qc(args) -> int:
    ctx = parse_q(args.q)
    verdict = qc_mod.isodual_qc_existence(ctx, 2, args.m)
    if verdict.witness is None:
        raise ValueError(verdict.reason)
    return _write_outputs(args, [verdict.witness], [verdict.report],
                          ["l2-qc"])


def cmd_check_isodual(args) -> int:
    obj = load_code(args.file)
    budget = _budget_items(args)
    if isinstance(obj, qc_mod.QCCode):
        rep = qc_mod.is_isodual_qc(obj, budget)
        payload, verdict = rep.to_dict(), rep.verdict
        human = [f"isodual: {verdict}"]
        for c in rep.checks:
            human.append(f"  {c.slot}: {c.verdict} ({c.witness.kind}"
                         + (f", a={c.witness.a}, scale={c.witness.scale}"
                            if c.witness.a is not None else "") + ")")
        _emit(args, "\n".join(human), payload)
        return _verdict_exit(verdict)
    if isinstance(obj, cyclic_mod.CyclicCode):
        w = cyclic_mod.is_isodual_cyclic(obj, budget)
    else:
        w = cyclic_mod.isodual_witness(obj, budget)
    verdict = _witness_verdict(w)
    _emit(args, f"isodual: {verdict} ({w.kind})",
          {"verdict": verdict, "witness": w.to_dict()})
    return _verdict_exit(verdict)


def cmd_check_selfdual(args) -> int:
    obj = load_code(args.file)
    if isinstance(obj, qc_mod.QCCode):
        if obj.l % 2:
            _emit(args, "self-dual: refuted (odd index)",
                  {"verdict": "refuted", "detail": "odd index"})
            return EXIT_REFUTED
        rep = qc_mod.is_self_dual_qc(obj)
        _emit(args, f"self-dual: {rep.verdict}", rep.to_dict())
        return _verdict_exit(rep.verdict)
    lin = as_linear(obj)
    ok = lin == lin.dual()
    verdict = "verified" if ok else "refuted"
    _emit(args, f"self-dual: {verdict}", {"verdict": verdict})
    return _verdict_exit(verdict)


def cmd_check_dual(args) -> int:
    a = as_linear(load_code(args.file))
    b = as_linear(load_code(args.other))
    ok = a.dual() == b
    verdict = "verified" if ok else "refuted"
    _emit(args, f"dual relationship: {verdict}", {"verdict": verdict})
    return _verdict_exit(verdict)


def cmd_check_qc_index(args) -> int:
    lin = as_linear(load_code(args.file))
    ok = qc_mod.is_quasi_cyclic(lin, args.l)
    verdict = "verified" if ok else "refuted"
    _emit(args, f"invariant under shift by {args.l}: {verdict}",
          {"verdict": verdict, "l": args.l})
    return _verdict_exit(verdict)


def cmd_check_equiv(args) -> int:
    a = as_linear(load_code(args.file))
    b = as_linear(load_code(args.other))
    w = cyclic_mod.equivalent_witness(a, b, _budget_items(args))
    verdict = _witness_verdict(w)
    _emit(args, f"equivalent: {verdict} ({w.kind})",
          {"verdict": verdict, "witness": w.to_dict()})
    return _verdict_exit(verdict)


def cmd_minweight(args) -> int:
    lin = as_linear(load_code(args.file))
    if lin.k == 0:
        raise ValueError("the zero code has no minimum distance")
    res = lin.min_distance(_budget_items(args))
    payload = {"min_distance": res.value, "certified": res.certified}
    tag = "certified" if res.certified else "lower-confidence bound"
    _emit(args, f"minimum distance {res.value} ({tag})", payload)
    return EXIT_VERIFIED if res.certified else EXIT_UNKNOWN


def cmd_count_qc_cyclic(args) -> int:
    ctx = parse_q(args.q)
    n = qc_mod.count_qc_cyclic_constituents(ctx, args.m, args.l)
    _emit(args, str(n), {"count": n})
    return EXIT_VERIFIED


def cmd_count_equivalent(args) -> int:
    n = qc_mod.count_equivalent_qc(args.l, args.alpha)
    note = "" if qc_mod.multiplier_hypothesis_holds(args.l) else \
        " (hypothesis gcd(l, phi(l)) = 1 fails; count is formal)"
    _emit(args, f"{n}{note}",
          {"count": n,
           "hypothesis": qc_mod.multiplier_hypothesis_holds(args.l)})
    return EXIT_VERIFIED


def cmd_count_selfdual_exists(args) -> int:
    ctx = parse_q(args.q)
    ok = qc_mod.self_dual_exists(ctx, args.l)
    _emit(args, "yes" if ok else "no", {"exists": ok})
    return EXIT_VERIFIED if ok else EXIT_REFUTED


def cmd_count_isodual_exists(args) -> int:
    ctx = parse_q(args.q)
    verdict = qc_mod.isodual_qc_existence(ctx, args.l, args.m)
    payload = verdict.to_dict()
    if verdict.possible is True:
        _emit(args, f"yes ({verdict.reason})", payload)
        return EXIT_VERIFIED
    if verdict.possible is False:
        _emit(args, f"no ({verdict.reason})", payload)
        return EXIT_REFUTED
    _emit(args, f"unknown ({verdict.reason})", payload)
    return EXIT_UNKNOWN


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sp, budget=True):
    sp.add_argument("--json", action="store_true",
                    help="machine-readable JSON output")
    if budget:
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET_MILLIONS,
                        help="search/enumeration budget, in millions of items")
    sp.add_argument("--threads", type=int, default=1,
                    help="worker cap (the kernels are vectorized; accepted "
                         "for interface stability)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="isoqc",
        description="Construct and verify isodual and self-dual "
                    "quasi-cyclic codes over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("factor", help="factor x^m - 1 over GF(q)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    _add_common(sp, budget=False)
    sp.set_defaults(func=cmd_factor)

    con = sub.add_parser("construct", help="build codes")
    csub = con.add_subparsers(dest="construction", required=True)

    sp = csub.add_parser("cyclic1", help="isodual cyclic pair from (x-1)f")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--mprime", type=int, required=True)
    sp.add_argument("-o", "--out", help="output file prefix")
    _add_common(sp)
    sp.set_defaults(func=cmd_construct_cyclic1)

    sp = csub.add_parser("cyclic2", help="isodual cyclic pair from (x-1)f1f2")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--mprime", type=int, required=True)
    sp.add_argument("--which", choices=["12", "21"], default="12")
    sp.add_argument("-o", "--out")
    _add_common(sp)
    sp.set_defaults(func=cmd_construct_cyclic2)

    sp = csub.add_parser("cyclic3", help="isodual cyclic pair from a duadic "
                                         "splitting")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--mprime", type=int, required=True)
    sp.add_argument("--variant", choices=["i", "ii"], required=True)
    sp.add_argument("--which", type=int, choices=[1, 2], default=1)
    sp.add_argument("--splitting", type=int, default=0,
                    help="index into the list of duadic splittings")
    sp.add_argument("-o", "--out")
    _add_common(sp)
    sp.set_defaults(func=cmd_construct_cyclic3)

    sp = csub.add_parser("vandermonde",
                         help="Vandermonde product of isodual codes")
    sp.add_argument("--inputs", nargs="+", required=True)
    sp.add_argument("-o", "--out")
    _add_common(sp)
    sp.set_defaults(func=cmd_construct_vandermonde)

    sp = csub.add_parser("cubic", help="cubic construction over GF(q), GF(q^2)")
    sp.add_argument("--c1", required=True)
    sp.add_argument("--c2", required=True)
    sp.add_argument("-o", "--out")
    _add_common(sp)
    sp.set_defaults(func=cmd_construct_cubic)

    sp = csub.add_parser("l2-qc", help="index-2 isodual QC witness")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("-o", "--out")
    _add_common(sp)
    sp.set_defaults(func=cmd_construct_l2qc)

    chk = sub.add_parser("check", help="verify code properties")
    ksub = chk.add_subparsers(dest="check", required=True)

    sp = ksub.add_parser("isodual")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=cmd_check_isodual)

    sp = ksub.add_parser("selfdual")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=cmd_check_selfdual)

    sp = ksub.add_parser("dual")
    sp.add_argument("file")
    sp.add_argument("other")
    _add_common(sp)
    sp.set_defaults(func=cmd_check_dual)

    sp = ksub.add_parser("qc-index")
    sp.add_argument("file")
    sp.add_argument("--l", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_check_qc_index)

    sp = ksub.add_parser("equiv")
    sp.add_argument("file")
    sp.add_argument("other")
    _add_common(sp)
    sp.set_defaults(func=cmd_check_equiv)

    sp = sub.add_parser("minweight", help="exact minimum distance")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=cmd_minweight)

    cnt = sub.add_parser("count", help="counting and existence results")
    nsub = cnt.add_subparsers(dest="count", required=True)

    sp = nsub.add_parser("qc-cyclic")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    _add_common(sp, budget=False)
    sp.set_defaults(func=cmd_count_qc_cyclic)

    sp = nsub.add_parser("equivalent")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--alpha", type=int, required=True)
    _add_common(sp, budget=False)
    sp.set_defaults(func=cmd_count_equivalent)

    sp = nsub.add_parser("selfdual-exists")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    _add_common(sp, budget=False)
    sp.set_defaults(func=cmd_count_selfdual_exists)

    sp = nsub.add_parser("isodual-exists")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--m", type=int, default=None)
    _add_common(sp, budget=False)
    sp.set_defaults(func=cmd_count_isodual_exists)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
