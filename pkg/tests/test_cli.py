import json

import pytest

from rqcs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "msg.txt").write_bytes(b"pay alice 10")
    (tmp_path / "other.txt").write_bytes(b"pay alice 11")
    return tmp_path


def test_params(capsys):
    code, out, _ = run(capsys, "params", "list")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["instance"] for r in rows] == ["rqcs-1", "rqcs-2", "rqcs-3"]
    code, out, _ = run(capsys, "params", "show", "rqcs-3")
    assert json.loads(out)["m"] == 139


def test_keygen_sign_verify_tamper(capsys, files):
    kp, pk, sig = files / "kp.json", files / "pk.json", files / "sig.json"
    assert run(capsys, "keygen", "--instance", "rqcs-1", "--seed", "00" * 31 + "01",
               "--out", str(kp), "--pk-out", str(pk))[0] == 0
    assert run(capsys, "sign", "--sk", str(kp), "--pk", str(pk), "--msg", str(files / "msg.txt"),
               "--out", str(sig), "--seed", "aa")[0] == 0
    code, out, _ = run(capsys, "verify", "--pk", str(pk), "--msg", str(files / "msg.txt"), "--sig", str(sig))
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(capsys, "verify", "--pk", str(pk), "--msg", str(files / "other.txt"), "--sig", str(sig))
    assert code == 1 and not json.loads(out)["valid"]


def test_keygen_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "keygen", "--instance", "rqcs-2", "--seed", "0102", "--out", str(a))
    run(capsys, "keygen", "--instance", "rqcs-2", "--seed", "0102", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_attack_from_signature_file_then_forge(capsys, files):
    kp, pk, sig = files / "kp.json", files / "pk.json", files / "sig.json"
    rep, rec, forged = files / "rep.json", files / "rec.json", files / "forged.json"
    run(capsys, "keygen", "--instance", "custom", "--m", "20", "--n", "15", "--w", "2",
        "--w-g", "2", "--w-r", "2", "--seed", "07", "--out", str(kp), "--pk-out", str(pk))
    run(capsys, "sign", "--sk", str(kp), "--pk", str(pk), "--msg", str(files / "msg.txt"),
        "--out", str(sig), "--seed", "01")
    code, out, _ = run(capsys, "attack", "--pk", str(pk), "--oracle", "file", "--sig", str(sig),
                       "--msg", str(files / "msg.txt"), "--target-sk", str(kp),
                       "--out", str(rep), "--sk-out", str(rec))
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["success"] and doc["signatures_consumed"] == 1
    assert doc["equivalent_or_exact"] in ("exact", "equivalent")
    run(capsys, "sign", "--sk", str(rec), "--pk", str(pk), "--msg", str(files / "other.txt"),
        "--out", str(forged))
    code, _, _ = run(capsys, "verify", "--pk", str(pk), "--msg", str(files / "other.txt"),
                     "--sig", str(forged))
    assert code == 0


def test_attack_self_oracle_with_target(capsys, files):
    kp = files / "kp.json"
    run(capsys, "keygen", "--instance", "rqcs-1", "--seed", "09", "--out", str(kp))
    code, out, _ = run(capsys, "attack", "--pk", str(kp), "--target-sk", str(kp),
                       "--oracle", "self", "--max-retries", "10")
    assert code == 0 and json.loads(out)["equivalent_or_exact"] == "exact"


def test_attack_instance(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "attack", "--instance", "rqcs-1", "--seed", "01", "--out", str(out_path))
    assert code == 0 and json.loads(out_path.read_text())["success"]


def test_attack_failure_exit_code(capsys, files):
    kp, pk, sig = files / "kp.json", files / "pk.json", files / "sig.json"
    run(capsys, "keygen", "--instance", "custom", "--m", "12", "--n", "10", "--w", "2",
        "--w-g", "2", "--w-r", "2", "--seed", "01", "--out", str(kp), "--pk-out", str(pk))
    run(capsys, "sign", "--sk", str(kp), "--pk", str(pk), "--msg", str(files / "msg.txt"),
        "--out", str(sig), "--seed", "01")
    doc = json.loads(sig.read_text())
    doc["u1"] = ["ff0f", "0100", "0200", "0400", "0800", "1000", "2000", "4000", "8000", "0001"]
    sig.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "attack", "--pk", str(pk), "--oracle", "file", "--sig", str(sig),
                       "--msg", str(files / "msg.txt"))
    assert code == 1 and not json.loads(out)["success"]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["keygen", "--instance", "rqcs-1"],
    ["keygen", "--instance", "custom", "--m", "10", "--n", "7", "--w", "3", "--w-g", "2",
     "--w-r", "2", "--out", "x.json"],
    ["keygen", "--instance", "rqcs-1", "--seed", "xyz", "--out", "x.json"],
    ["attack", "--oracle", "self"],
    ["verify", "--pk", "/nonexistent/pk.json", "--msg", "m", "--sig", "s"],
])
def test_usage_errors(capsys, tmp_path, monkeypatch, argv):
    monkeypatch.chdir(tmp_path)
    code, _, err = run(capsys, *argv)
    assert code == 2
    doc = json.loads(err.strip())
    assert set(doc) == {"error", "message"} and len(err.strip().splitlines()) == 1


def test_bad_json_is_format_error(capsys, tmp_path):
    (tmp_path / "pk.json").write_text('{"kind": "public_key"}')
    (tmp_path / "m").write_text("x")
    code, _, err = run(capsys, "verify", "--pk", str(tmp_path / "pk.json"), "--msg",
                       str(tmp_path / "m"), "--sig", str(tmp_path / "pk.json"))
    assert code == 2 and json.loads(err)["error"] == "format"


def test_bench_outputs(capsys, tmp_path):
    csv_path, json_path = tmp_path / "b.csv", tmp_path / "b.json"
    code, out, _ = run(capsys, "bench", "--instances", "rqcs-1", "--trials", "2", "--seed", "01",
                       "--csv", str(csv_path), "--json", str(json_path))
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("instance,params,claimed_security,mean_kra_seconds")
    assert lines[1].startswith('rqcs-1,"(2,89,67,5)",128,')
    doc = json.loads(json_path.read_text())
    assert doc["rows"][0]["success_rate"] == 1.0 and len(doc["trials"]) == 2
