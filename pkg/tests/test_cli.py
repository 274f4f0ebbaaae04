import json

import pytest

from nonevade.cli import main
from nonevade.corpus import BOWTIE_TEXT

D12 = """\
elements: 1 2 3 4 6 12
cover: 1 2
cover: 1 3
cover: 2 4
cover: 2 6
cover: 3 6
cover: 4 12
cover: 6 12
"""


@pytest.fixture
def d12_file(tmp_path):
    path = tmp_path / "d12.lat"
    path.write_text(D12)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys, d12_file):
    code, out, err = run(capsys, "validate", d12_file)
    assert code == 0
    assert "6 elements" in out and "atoms: 2 3" in out


def test_validate_json(capsys, d12_file):
    code, out, err = run(capsys, "validate", d12_file, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["bottom"] == "1" and doc["coatoms"] == ["4", "6"]


def test_validate_bowtie_semantic_failure(capsys, tmp_path):
    path = tmp_path / "bowtie.lat"
    path.write_text(BOWTIE_TEXT)
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "NotALattice" in err


def test_validate_bad_file_usage_error(capsys, tmp_path):
    path = tmp_path / "broken.lat"
    path.write_text("elements 1 2\n")
    code, out, err = run(capsys, "validate", str(path))
    assert code == 2


def test_missing_file_is_usage_error(capsys, tmp_path):
    code, out, err = run(capsys, "validate", str(tmp_path / "nope.lat"))
    assert code == 2


def test_complements(capsys, d12_file):
    code, out, _ = run(capsys, "complements", d12_file, "-x", "4")
    assert code == 0 and "Co(4) = 3" in out
    code, out, _ = run(capsys, "complements", d12_file, "-x", "2")
    assert code == 0 and "(empty)" in out


def test_complements_unknown_element(capsys, d12_file):
    code, out, err = run(capsys, "complements", d12_file, "-x", "9")
    assert code == 1
    assert "UnknownElement" in err


def test_certify_roundtrip(capsys, d12_file, tmp_path):
    cert_path = str(tmp_path / "cert.json")
    code, out, _ = run(capsys, "certify", d12_file, "-x", "2", "-o", cert_path)
    assert code == 0
    doc = json.loads(open(cert_path).read())
    assert doc["vertex"] == "3" and doc["z"] == "6"
    code, out, _ = run(capsys, "verify", d12_file, "-x", "2", "--cert", cert_path)
    assert code == 0 and "verifies" in out


def test_verify_mismatched_certificate(capsys, d12_file, tmp_path):
    cert_path = str(tmp_path / "cert.json")
    run(capsys, "certify", d12_file, "-x", "2", "-o", cert_path)
    code, out, err = run(capsys, "verify", d12_file, "-x", "4", "--cert", cert_path)
    assert code == 1
    assert "FAILED" in out


def test_certificate_file_byte_stable(capsys, d12_file, tmp_path):
    first = tmp_path / "one.json"
    second = tmp_path / "two.json"
    run(capsys, "certify", d12_file, "-x", "2", "-o", str(first))
    run(capsys, "certify", d12_file, "-x", "2", "-o", str(second))
    assert first.read_bytes() == second.read_bytes()


def test_collapse(capsys, d12_file, tmp_path):
    seq_path = str(tmp_path / "seq.json")
    code, out, _ = run(capsys, "collapse", d12_file, "-x", "2", "-o", seq_path)
    assert code == 0 and "3 free pairs" in out
    doc = json.loads(open(seq_path).read())
    assert doc["final"] == "2" and len(doc["pairs"]) == 3


def test_strategy(capsys, d12_file, tmp_path):
    strat_path = str(tmp_path / "strat.json")
    code, out, _ = run(capsys, "strategy", d12_file, "-x", "2", "-o", strat_path)
    assert code == 0
    doc = json.loads(open(strat_path).read())
    assert doc["type"] == "query" and doc["vertex"] == "3"


def test_game_exhaustive(capsys, d12_file):
    code, out, _ = run(capsys, "game", d12_file, "-x", "2", "--exhaustive")
    assert code == 0
    assert "subsets 16" in out and "mismatches 0" in out


def test_game_hidden_chain(capsys, d12_file):
    code, out, _ = run(capsys, "game", d12_file, "-x", "2", "--hidden", "2,6")
    assert code == 0
    assert "verdict: chain" in out


def test_game_hidden_non_chain(capsys, d12_file):
    code, out, _ = run(capsys, "game", d12_file, "-x", "2", "--hidden", "4,6")
    assert code == 0
    assert "not a chain" in out


def test_game_hidden_empty(capsys, d12_file):
    code, out, _ = run(capsys, "game", d12_file, "-x", "2", "--hidden", "")
    assert code == 0 and "verdict: chain" in out


def test_game_hidden_unknown(capsys, d12_file):
    code, out, err = run(capsys, "game", d12_file, "-x", "2", "--hidden", "5")
    assert code == 1


def test_mobius(capsys, d12_file):
    code, out, _ = run(capsys, "mobius", d12_file, "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc == {
        "mobius": 0, "reduced_euler": 0, "noncomplemented_element": "2",
    }


def test_oracle_nonevasive(capsys, d12_file):
    code, out, _ = run(capsys, "oracle", d12_file, "-x", "2",
                       "--check", "nonevasive")
    assert code == 0 and "yes" in out


def test_oracle_on_complex_document(capsys, tmp_path):
    doc = {"vertices": ["a", "b", "c"],
           "facets": [["a", "b"], ["a", "c"], ["b", "c"]]}
    path = tmp_path / "hollow.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "oracle", str(path), "--complex",
                       "--check", "nonevasive")
    assert code == 1 and "no" in out
    code, out, _ = run(capsys, "oracle", str(path), "--complex",
                       "--check", "collapsible")
    assert code == 1


def test_gen_round_trip(capsys, tmp_path):
    out_path = str(tmp_path / "b3.lat")
    code, _, _ = run(capsys, "gen", "boolean", "--n", "3", "-o", out_path)
    assert code == 0
    code, out, _ = run(capsys, "validate", out_path)
    assert code == 0 and "8 elements" in out


def test_gen_stdout(capsys):
    code, out, _ = run(capsys, "gen", "chain", "--n", "3")
    assert code == 0
    assert out.startswith("elements: 0 a 1")


def test_gen_unknown_family(capsys):
    code, _, err = run(capsys, "gen", "mystery", "--n", "3")
    assert code == 2


def test_gen_product(capsys, tmp_path):
    out_path = str(tmp_path / "p.lat")
    code, _, _ = run(capsys, "gen", "product", "--left", "chain:3",
                     "--right", "chain:3", "-o", out_path)
    assert code == 0
    code, out, _ = run(capsys, "validate", out_path)
    assert code == 0 and "9 elements" in out


def test_gen_random_seed_echoed(capsys, tmp_path):
    a = tmp_path / "a.lat"
    b = tmp_path / "b.lat"
    run(capsys, "gen", "random", "--n", "5", "--seed", "9", "-o", str(a))
    run(capsys, "gen", "random", "--n", "5", "--seed", "9", "-o", str(b))
    assert a.read_text() == b.read_text()


def test_json_error_on_stderr(capsys, tmp_path):
    path = tmp_path / "bowtie.lat"
    path.write_text(BOWTIE_TEXT)
    code, out, err = run(capsys, "validate", str(path), "--json")
    assert code == 1
    assert out == ""
    doc = json.loads(err)
    assert doc["error"]["type"] == "NotALattice"


def test_caps_env_override(capsys, d12_file, monkeypatch):
    monkeypatch.setenv("NONEVADE_CAPS", "game=2")
    code, out, err = run(capsys, "game", d12_file, "-x", "2", "--exhaustive")
    assert code == 1
    assert "CapExceeded" in err
    # flag beats env
    code, out, err = run(capsys, "game", d12_file, "-x", "2", "--exhaustive",
                         "--cap-game", "16")
    assert code == 0


def test_caps_env_rejects_garbage(capsys, d12_file, monkeypatch):
    monkeypatch.setenv("NONEVADE_CAPS", "game=lots")
    code, out, err = run(capsys, "validate", d12_file)
    assert code == 2


def test_suite_smoke(capsys):
    code, out, _ = run(capsys, "suite", "--random-count", "3")
    assert code == 0
    assert out.count("[PASS]") == 7


def test_suite_json(capsys):
    code, out, _ = run(capsys, "suite", "--random-count", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True and len(doc["criteria"]) == 7
