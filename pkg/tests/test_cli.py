import json
import subprocess
import sys

import pytest

from isoqc.cli import (canonical_json, code_from_dict, code_to_dict,
                       load_code, main, parse_q, write_code)
from isoqc.cyclic import CyclicCode, construct_1
from isoqc.gf import field
from isoqc.lincode import LinearCode
from isoqc.polyring import Poly

F3 = field(3)
F5 = field(5)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_q():
    assert parse_q(7) is field(7)
    assert parse_q(9) is field(3, 2)
    assert parse_q(25) is field(5, 2)
    with pytest.raises(ValueError):
        parse_q(12)
    with pytest.raises(ValueError):
        parse_q(1)


def test_codefile_roundtrip_linear(tmp_path):
    c = LinearCode(field(5, 2), 3, [(1, 7, 2), (0, 1, 4)])
    p = tmp_path / "c.code"
    write_code(str(p), c, meta={"name": "sample"})
    again = load_code(str(p))
    assert again == c
    # byte-identical re-serialization
    d = json.loads(p.read_text())
    assert canonical_json(code_to_dict(again, d.get("meta"))) == p.read_text()


def test_codefile_roundtrip_cyclic_and_qc(tmp_path):
    cyc = construct_1(F3, 1, 7, verify=False)[0]
    p = tmp_path / "g0.code"
    write_code(str(p), cyc)
    assert load_code(str(p)) == cyc
    from isoqc.qc import QCCode
    qc = QCCode(F3, 2, 7, cyc.to_linear())
    p2 = tmp_path / "qc.code"
    write_code(str(p2), qc)
    back = load_code(str(p2))
    assert back.code == qc.code and (back.l, back.m) == (2, 7)


def test_codefile_rejects_wrong_modulus(tmp_path):
    p = tmp_path / "bad.code"
    p.write_text(json.dumps({
        "field": {"p": 5, "k": 2, "modulus": [2, 4, 1]},
        "kind": "linear", "n": 2, "gen": [[1, 0]]}))
    with pytest.raises(ValueError):
        load_code(str(p))


def test_factor_command(capsys):
    code, out, _ = run(capsys, "factor", "--q", "3", "--m", "14")
    assert code == 0
    assert "x^14 - 1 over GF(3)" in out
    assert "x + 2" in out and "x + 1" in out
    code, out, _ = run(capsys, "factor", "--q", "5", "--m", "11", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["pairs"] == [[[4, 1, 1, 4, 2, 1], [4, 3, 1, 4, 4, 1]]]


def test_factor_gcd_violation(capsys):
    code, _, err = run(capsys, "factor", "--q", "3", "--m", "3")
    assert code == 2
    assert "error" in err


def test_construct_cyclic1_files(tmp_path, capsys):
    prefix = str(tmp_path / "g")
    code, out, _ = run(capsys, "construct", "cyclic1", "--q", "3",
                       "--a", "1", "--mprime", "7", "-o", prefix)
    assert code == 0
    g0 = load_code(prefix + "0.code")
    g1 = load_code(prefix + "1.code")
    assert g0.gpoly == (Poly(F3, (2, 1)) * Poly(F3, (1, 2, 1, 2, 1, 2, 1)))
    assert g1.gpoly == (Poly(F3, (1, 1)) * Poly(F3, (1, 1, 1, 1, 1, 1, 1)))
    # verification reports are embedded
    raw = json.loads((tmp_path / "g0.code").read_text())
    assert raw["meta"]["verification"]["verdict"] == "verified"


def test_construct_cyclic2_and_3(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "cyclic2", "--q", "5",
                       "--a", "1", "--mprime", "11", "--json")
    assert code == 0
    first = json.loads(out.splitlines()[0])
    assert first["kind"] == "cyclic" and first["n"] == 22
    code, out, _ = run(capsys, "construct", "cyclic3", "--q", "5", "--a", "1",
                       "--mprime", "11", "--variant", "ii", "--json")
    assert code == 0
    assert all(json.loads(line)["meta"]["verification"]["verdict"]
               == "verified" for line in out.splitlines())


def test_construct_vandermonde_and_checks(tmp_path, capsys):
    prefix = str(tmp_path / "g")
    run(capsys, "construct", "cyclic1", "--q", "3", "--a", "1",
        "--mprime", "7", "-o", prefix)
    out28 = str(tmp_path / "qc28.code")
    code, _, _ = run(capsys, "construct", "vandermonde", "--inputs",
                     prefix + "0.code", prefix + "1.code", "-o", out28)
    assert code == 0
    qc = load_code(out28)
    assert (qc.l, qc.m, qc.n) == (14, 2, 28)

    code, out, _ = run(capsys, "check", "isodual", out28)
    assert code == 0
    assert "verified" in out

    code, out, _ = run(capsys, "check", "qc-index", out28, "--l", "14")
    assert code == 0

    code, out, _ = run(capsys, "check", "selfdual", out28)
    assert code == 1  # isodual but not self-dual


def test_construct_l2qc(tmp_path, capsys):
    out = str(tmp_path / "w.code")
    code, _, _ = run(capsys, "construct", "l2-qc", "--q", "3", "--m", "7",
                     "-o", out)
    assert code == 0
    qc = load_code(out)
    assert qc.n == 14 and qc.l == 2
    code, txt, _ = run(capsys, "check", "isodual", out)
    assert code == 0


def test_check_dual_and_equiv(tmp_path, capsys):
    a = tmp_path / "a.code"
    b = tmp_path / "b.code"
    c = LinearCode(F3, 2, [(1, 1)])
    write_code(str(a), c)
    write_code(str(b), c.dual())
    code, _, _ = run(capsys, "check", "dual", str(a), str(b))
    assert code == 0
    code, _, _ = run(capsys, "check", "dual", str(a), str(a))
    assert code == 1
    write_code(str(b), c.apply_permutation((1, 0)))
    code, _, _ = run(capsys, "check", "equiv", str(a), str(b))
    assert code == 0
    write_code(str(b), LinearCode(F3, 2, [(1, 0)]))
    code, _, _ = run(capsys, "check", "equiv", str(a), str(b))
    assert code == 1


def test_minweight(tmp_path, capsys):
    g0 = construct_1(F3, 1, 7, verify=False)[0]
    p = tmp_path / "g0.code"
    write_code(str(p), g0)
    code, out, _ = run(capsys, "minweight", str(p), "--json")
    assert code == 0
    data = json.loads(out)
    assert data == {"certified": True, "min_distance": 4}
    z = tmp_path / "zero.code"
    write_code(str(z), LinearCode(F3, 4, []))
    code, _, err = run(capsys, "minweight", str(z))
    assert code == 2


def test_count_commands(capsys):
    code, out, _ = run(capsys, "count", "qc-cyclic", "--q", "3", "--m", "2",
                       "--l", "2")
    assert code == 0 and out.strip() == "16"
    code, out, _ = run(capsys, "count", "equivalent", "--l", "3",
                       "--alpha", "2")
    assert code == 0 and out.strip() == "9"
    code, out, _ = run(capsys, "count", "selfdual-exists", "--q", "3",
                       "--l", "2")
    assert code == 1 and out.strip() == "no"
    code, out, _ = run(capsys, "count", "selfdual-exists", "--q", "9",
                       "--l", "2")
    assert code == 0 and out.strip() == "yes"
    code, out, _ = run(capsys, "count", "isodual-exists", "--q", "5",
                       "--l", "3")
    assert code == 1
    code, out, _ = run(capsys, "count", "isodual-exists", "--q", "5",
                       "--l", "2", "--m", "11")
    assert code == 0
    code, out, _ = run(capsys, "count", "isodual-exists", "--q", "5",
                       "--l", "6")
    assert code == 3


def test_determinism_byte_identical(tmp_path, capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "factor", "--q", "5", "--m", "44", "--json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    for i in range(2):
        p = str(tmp_path / f"r{i}.code")
        run(capsys, "construct", "cyclic1", "--q", "5", "--a", "1",
            "--mprime", "11", "-o", str(tmp_path / f"pre{i}_"))
    d0 = (tmp_path / "pre0_0.code").read_bytes()
    d1 = (tmp_path / "pre1_0.code").read_bytes()
    assert d0 == d1


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "isoqc.cli", "factor", "--q", "3", "--m", "7"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "x^7 - 1" in proc.stdout


def test_cubic_cli(tmp_path, capsys):
    f25 = field(5, 2)
    c1p = tmp_path / "c1.code"
    c2p = tmp_path / "c2.code"
    write_code(str(c1p), LinearCode(F5, 2, [(F5.neg(1), 1)]))
    write_code(str(c2p), LinearCode(f25, 2, [(f25.neg(1), 1)]))
    out = str(tmp_path / "cubic.code")
    code, _, _ = run(capsys, "construct", "cubic", "--c1", str(c1p),
                     "--c2", str(c2p), "-o", out)
    assert code == 0
    qc = load_code(out)
    assert (qc.l, qc.m, qc.n) == (2, 3, 6)
    code, _, _ = run(capsys, "check", "isodual", out)
    assert code == 0
