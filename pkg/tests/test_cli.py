import json

import pytest

from app.cli import main
from app.lattice import read_basis, write_basis


@pytest.fixture
def basis_file(tmp_path, small_basis):
    return str(write_basis(small_basis, tmp_path / "basis.txt"))


def test_gen_writes_basis(tmp_path):
    out = tmp_path / "gen.txt"
    assert main(["--seed", "1", "gen", "--d", "8", "--k", "4", "--output", str(out)]) == 0
    B = read_basis(out)
    assert (B.n, B.d) == (8, 8)
    assert main(["--seed", "1", "gen", "--d", "8", "--k", "4", "--output", str(tmp_path / "again.txt")]) == 0
    assert read_basis(tmp_path / "again.txt") == B


def test_gen_with_rank(tmp_path):
    out = tmp_path / "gen.txt"
    assert main(["gen", "--d", "12", "--k", "6", "--n", "4", "--output", str(out)]) == 0
    B = read_basis(out)
    assert (B.n, B.d) == (4, 12)


def test_gen_rejects_bad_shape():
    assert main(["gen", "--d", "4", "--k", "4"]) == 2


def test_reduce_keeps_lattice_shape(tmp_path, basis_file):
    out = tmp_path / "reduced.txt"
    assert main(["reduce", "--input", basis_file, "--method", "hkz", "--output", str(out)]) == 0
    R = read_basis(out)
    assert R.n == 2
    assert min(sum(v * v for v in row) for row in R.rows) == 2


def test_bounds_prints_json(basis_file, capsys):
    assert main(["bounds", "--input", basis_file, "--A", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["m"] == [1, 2]
    assert payload["qubits"] == 5
    assert payload["provenance"] == "dual-lemma"


def test_bounds_rejects_bad_radius(basis_file):
    assert main(["bounds", "--input", basis_file, "--A", "large"]) == 2


def test_qubo_and_ising_documents(tmp_path, basis_file):
    qubo = tmp_path / "h.json"
    ising = tmp_path / "z.json"
    assert main(["qubo", "--input", basis_file, "--A", "2", "--output", str(qubo)]) == 0
    assert main(["qubo", "--input", basis_file, "--A", "2", "--ising", "--output", str(ising)]) == 0
    document = json.loads(qubo.read_text(encoding="utf-8"))
    assert (document["kind"], document["n_vars"]) == ("qubo", 5)
    assert json.loads(ising.read_text(encoding="utf-8"))["kind"] == "ising"


@pytest.mark.parametrize("P", ["0", "-3", "abc"])
def test_qubo_rejects_bad_penalty(basis_file, P):
    assert main(["qubo", "--input", basis_file, "--penalty", "--P", P]) == 2


def test_penalty_qubo_needs_bounds_of_two(basis_file):
    assert main(["qubo", "--input", basis_file, "--A", "2", "--penalty"]) == 2


def test_missing_input_file(tmp_path):
    assert main(["bounds", "--input", str(tmp_path / "nope.txt")]) == 2


def test_vqe_writes_record(tmp_path, basis_file):
    out = tmp_path / "run.json"
    code = main(
        ["--out-dir", str(tmp_path), "vqe", "--input", basis_file, "--evaluation", "exact", "--layers", "1", "--output", str(out)]
    )
    assert code == 0
    record = json.loads(out.read_text(encoding="utf-8"))
    assert record["n_qubits"] == 2
    assert record["shortest_norm"] == 2
    assert 0.0 <= record["overlap"] <= 1.0
    assert (tmp_path / "vqe_runs.csv").exists()


def test_vqe_from_hamiltonian_file(tmp_path, basis_file):
    hamiltonian = tmp_path / "h.json"
    out = tmp_path / "run.json"
    assert main(["qubo", "--input", basis_file, "--A", "2", "--output", str(hamiltonian)]) == 0
    args = ["--out-dir", str(tmp_path), "vqe", "--input", basis_file, "--hamiltonian", str(hamiltonian)]
    assert main(args + ["--evaluation", "exact", "--output", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["n_qubits"] == 5


def test_vqe_qubit_limit_exit_code(tmp_path, basis_file, monkeypatch):
    monkeypatch.setenv("SVP_VQE_MAX_QUBITS", "1")
    assert main(["--out-dir", str(tmp_path), "vqe", "--input", basis_file]) == 3


def test_vqe_rejects_bad_alpha(tmp_path, basis_file):
    assert main(["--out-dir", str(tmp_path), "vqe", "--input", basis_file, "--alpha", "2"]) == 2


def test_bad_config_file(tmp_path):
    config = tmp_path / "config.json"
    config.write_text('{"count": 0}', encoding="utf-8")
    assert main(["--config", str(config), "scaling"]) == 2


def test_scaling_command(tmp_out, capsys):
    code = main(["--out-dir", str(tmp_out), "scaling", "--ranks", "10", "--repeats", "1"])
    assert code == 0
    assert capsys.readouterr().out.strip().endswith("scaling.csv")
    assert (tmp_out / "scaling.csv").exists()


def test_unknown_command_exits():
    with pytest.raises(SystemExit):
        main(["teleport"])
