import json
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor

import pytest

from bentlab.certificate import Report, certificate_digest, emit_certificate, parse_certificate
from bentlab.cli import main, run
from bentlab.field import build_field
from bentlab.walsh import WalshSpectrum


def _cert(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_classify_kasami_example(capsys):
    code, cert = _cert(["classify", "--p", "3", "--n", "2", "--monomial-a-log", "0", "--d", "4"], capsys)
    assert code == 0
    res = cert["results"]
    assert res["is_weakly_regular"] is True
    assert res["S0"] == "-3+0ω"
    for key in ("p", "n", "modulus", "d", "a_log", "is_bent", "is_weakly_regular", "sign", "dual_csv_ref"):
        assert key in res
    assert cert["field"]["modulus"] == [1, 1, 2]


def test_weights_example(capsys):
    code, cert = _cert(["weights", "--k", "1", "--exhaustive"], capsys)
    assert code == 0 and cert["passed"]
    assert cert["results"]["min_lhs"] == 2 and cert["results"]["bound"] == 2


def test_graph_prove_example(capsys):
    code, cert = _cert(["graph", "prove"], capsys)
    assert code == 0
    assert cert["results"]["vertices"] == 162
    assert cert["results"]["max_arc_weight"] == 0
    assert cert["results"]["verdict"] == "pass"


def test_sampled_scan_labels(capsys):
    code, cert = _cert(["weights", "--k", "4", "--mode", "genwi", "--samples", "5000", "--seed", "3"], capsys)
    assert code == 0
    assert cert["results"]["exhaustive"] is False
    assert cert["provenance"] == {"exhaustive": False, "samples": 5000, "seed": 3}


def test_failing_verdict_exits_one(capsys):
    code = main(["family", "--family", "coulter_matthews", "--n", "3", "--k", "2", "--all-a"])
    captured = capsys.readouterr()
    assert code == 1
    assert "weakly_regular_bent" in captured.err
    assert json.loads(captured.out)["passed"] is False


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["classify", "--n", "2"],
    ["weights", "--k", "5", "--mode", "genwi", "--exhaustive"],
    ["field", "--p", "3", "--n", "2", "--modulus", "1 0 1"],
    ["family", "--family", "helleseth_kholosha", "--k", "2"],
    ["classify", "--n", "2", "--d", "4", "--monomial-a-log", "abc"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_zero_coefficient_spelling(capsys):
    code, cert = _cert(["classify", "--n", "2", "--d", "4", "--monomial-a-log", "zero"], capsys)
    assert code == 0
    assert cert["results"]["a_log"] == "zero" and cert["results"]["is_bent"] is False


def test_modulus_override(capsys):
    code, cert = _cert(["classify", "--n", "2", "--d", "4", "--modulus", "1 2 2"], capsys)
    assert code == 0
    assert cert["field"]["text"] == "3 2 1 2 2"


def test_spectrum_csv_and_figure(tmp_path, capsys):
    csv_path, png = tmp_path / "s.csv", tmp_path / "s.png"
    code, cert = _cert(["spectrum", "--n", "3", "--d", "2", "--csv", str(csv_path),
                        "--figure", str(png), "--check-naive"], capsys)
    assert code == 0
    spec = WalshSpectrum.from_csv(csv_path.read_text(), 3)
    assert spec.parseval_ok() and spec.render(0) == cert["results"]["S0"]
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_dual_csv(tmp_path, capsys):
    path = tmp_path / "dual.csv"
    code, cert = _cert(["classify", "--n", "2", "--d", "4", "--dual-csv", str(path)], capsys)
    assert cert["results"]["dual_csv_ref"] == str(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "b_index,dual" and len(lines) == 10


def test_out_file_and_determinism(tmp_path, capsys):
    argv = ["family", "--family", "coulter_matthews", "--n", "4", "--k", "1", "--random-a", "8", "--seed", "9"]
    texts = []
    for i in range(2):
        out = tmp_path / f"c{i}.json"
        assert main(argv + ["--out", str(out)]) == 0
        texts.append(out.read_text())
    a, b = (parse_certificate(t) for t in texts)
    assert certificate_digest(a) == certificate_digest(b)
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_round_trip_and_empty_verdicts():
    rep = Report(command="field").finish()
    text = emit_certificate(rep)
    data = parse_certificate(text)
    assert data["verdicts"] == [] and data["passed"] is True
    assert data == rep.to_dict()
    assert emit_certificate(data) == text
    rep.verdict("x", True, 0.1234567890123456)
    assert parse_certificate(emit_certificate(rep))["verdicts"][0]["value"] == 0.123456789012


def test_concurrent_runs_are_independent():
    argvs = [["cyclotomy", "--p", "3", "--n", "2"], ["graph", "walk", "--k", "2", "--walks", "20"],
             ["awc", "--n", "3", "--random", "50"], ["classify", "--n", "3", "--d", "2"]] * 2
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda a: run(a), argvs))
    codes = [code for code, _ in results]
    assert codes == [0] * len(argvs)
    first, second = results[:4], results[4:]
    for (_, r1), (_, r2) in zip(first, second):
        d1, d2 = r1.to_dict(), r2.to_dict()
        assert certificate_digest(d1) == certificate_digest(d2)


def test_workers_env_gives_same_answer(monkeypatch, capsys):
    argv = ["family", "--family", "coulter_matthews", "--n", "3", "--k", "1", "--all-a"]
    _, serial = _cert(argv, capsys)
    monkeypatch.setenv("BENTLAB_WORKERS", "4")
    _, parallel = _cert(argv, capsys)
    assert certificate_digest(serial) == certificate_digest(parallel)


def test_every_subcommand_runs(tmp_path, capsys):
    cmds = [
        ["field", "--p", "5", "--n", "3"],
        ["family", "--family", "kasami", "--k", "1", "--all-a"],
        ["family", "--family", "helleseth_kholosha", "--k", "1"],
        ["family", "--family", "general_monomial", "--n", "3", "--d", "5", "--a-log", "1"],
        ["conjecture-dual", "--k", "1", "--decomposition-samples", "4", "--csv", str(tmp_path / "c.csv")],
        ["cyclotomy", "--p", "11", "--n", "2"],
        ["awc", "--p", "5", "--n", "2", "--t", "1", "1", "--a", "5", "7"],
        ["graph", "walk", "--k", "1", "--a", "3", "--b", "4"],
        ["graph", "prove", "--dot", str(tmp_path / "g.dot")],
        ["weights", "--k", "2", "--mode", "gengenwi", "--u-digits", "1", "0", "2", "0",
         "--v-digits", "0", "2", "0", "1"],
    ]
    for argv in cmds:
        code, cert = _cert(argv, capsys)
        assert code == 0, (argv, cert)
        assert cert["tool"] == "bentlab" and cert["verdicts"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "bentlab", "graph", "prove"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["results"]["vertices"] == 162


def test_field_certificate_matches_context(capsys):
    _, cert = _cert(["field", "--n", "3"], capsys)
    assert cert["results"]["text"] == build_field(3, 3).to_text()


def test_even_k_weight_scan_has_no_verdict(capsys):
    code, cert = _cert(["weights", "--k", "2", "--exhaustive"], capsys)
    assert code == 0 and cert["verdicts"] == []
    assert cert["results"]["min_lhs"] == 2 and "note" in cert["results"]
