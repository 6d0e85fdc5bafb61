"""End-to-end tests of the command-line front end.

Each test drives main(argv) and checks exit code plus captured output;
golden strings were fixed from the hand-derived model values before
the command layer was written.
"""

import json
import math
from fractions import Fraction as F

import pytest

from persistinfo.cli import main

LOG2_3 = math.log2(3)


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


# ── entropy ───────────────────────────────────────────────────────────────────


def test_entropy_coin_csv(capsys):
    code, out, _ = run(capsys, "entropy", "--model", "coin",
                       "--Lmax", "5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "L,H_exact,H_bits,dH_exact,dH_bits"
    assert lines[1] == "1,1,1,1,1"
    assert lines[5].startswith("5,5,5,1,1")


def test_entropy_tm_exact_staircase(capsys):
    code, out, _ = run(capsys, "entropy", "--model", "tm", "--Lmax", "5",
                       "--backend", "exact", "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    dh = [float(r[4]) for r in rows]
    want = [1.0, LOG2_3 - 2 / 3, 2 / 3, 2 / 3, 1 / 3]
    assert dh == pytest.approx(want, abs=1e-12)


def test_entropy_table_shows_exact_and_summary(capsys):
    code, out, _ = run(capsys, "entropy", "--model", "goldenmean",
                       "--Lmax", "4")
    assert code == 0
    assert "h_hat" in out and "E_hat" in out
    assert "2/3" in out  # exact increments rendered as rationals


def test_entropy_sequence_file(tmp_path, capsys):
    p = tmp_path / "seq.txt"
    p.write_text("01" * 400 + "\n")
    code, out, _ = run(capsys, "entropy", "--seq", str(p),
                       "--Lmax", "4", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    # window counts at different L differ by one, so the plug-in rate
    # is O(1/n) rather than exactly zero
    assert blob["h_hat_bits"] == pytest.approx(0.0, abs=1e-5)
    assert blob["E_hat_bits"] == pytest.approx(1.0, abs=1e-4)
    assert blob["exact"] is False


def test_entropy_sequence_file_comma_alphabet(tmp_path, capsys):
    p = tmp_path / "seq.txt"
    p.write_text(",".join(["-1", "+1"] * 200) + "\n")
    code, out, _ = run(capsys, "entropy", "--seq", str(p),
                       "--Lmax", "3", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["h_hat_bits"] == pytest.approx(0.0, abs=1e-5)
    assert blob["E_hat_bits"] == pytest.approx(1.0, abs=1e-4)


def test_entropy_model_file_markov(tmp_path, capsys):
    doc = {"kind": "markov", "order": 1,
           "rows": {"0": ["1/2", "1/2"], "1": ["1", 0]}}
    p = tmp_path / "gm.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "entropy", "--model", str(p),
                       "--Lmax", "6", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["exact"] is True
    assert blob["h_hat_bits"] == pytest.approx(2 / 3, abs=1e-12)


def test_entropy_inline_periodic_model(capsys):
    code, out, _ = run(capsys, "entropy", "--model",
                       '{"kind": "periodic", "cycle": "01"}',
                       "--Lmax", "3", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["H_bits"] == [1.0, 1.0, 1.0]
    assert blob["E_hat_bits"] == 1.0


def test_entropy_float_backend(capsys):
    code, out, _ = run(capsys, "entropy", "--model", "goldenmean",
                       "--Lmax", "5", "--backend", "float",
                       "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["exact"] is False
    assert blob["h_hat_bits"] == pytest.approx(2 / 3, abs=1e-9)


def test_entropy_missing_model_file(capsys):
    code, _, err = run(capsys, "entropy", "--model", "no/such/file.json",
                       "--Lmax", "3")
    assert code == 1
    assert "error" in err


def test_entropy_rejects_exact_ising(capsys):
    code, _, err = run(capsys, "entropy", "--model",
                       '{"kind": "ising", "J": 1, "h": 0, "beta": 0.5}',
                       "--Lmax", "3", "--backend", "exact")
    assert code == 1
    assert "float" in err


def test_entropy_unknown_kind(capsys):
    code, _, err = run(capsys, "entropy", "--model",
                       '{"kind": "weather"}', "--Lmax", "3")
    assert code == 1
    assert "error" in err


def test_unknown_command_is_usage_error(capsys):
    with pytest.raises(SystemExit):
        main(["frobnicate"])


# ── pmi ───────────────────────────────────────────────────────────────────────


def test_pmi_period3_converges_to_log3(capsys):
    code, out, _ = run(capsys, "pmi", "--model",
                       '{"kind": "periodic", "cycle": "011"}',
                       "--L-grid", "3,4,5", "--g-grid", "3,6,9",
                       "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["verdict"]["kind"] == "converged"
    assert abs(blob["verdict"]["value"] - LOG2_3) <= 1e-9
    assert blob["verdict"]["uncertainty"] <= 1e-9


def test_pmi_goldenmean_converges_to_zero(capsys):
    code, out, _ = run(capsys, "pmi", "--model", "goldenmean",
                       "--L-grid", "1,2,3", "--g-grid", "16,24,32",
                       "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["verdict"]["kind"] == "converged"
    assert abs(blob["verdict"]["value"]) <= 1e-6


def test_pmi_tm_diverges(capsys):
    code, out, _ = run(capsys, "pmi", "--model", "tm",
                       "--L-grid", "3,5,7,9", "--g-grid", "2,4,8")
    assert code == 0
    assert "diverging" in out


def test_pmi_csv_grid(capsys):
    code, out, _ = run(capsys, "pmi", "--model",
                       '{"kind": "periodic", "cycle": "01"}',
                       "--L-grid", "1,2,3", "--g-grid", "0,2,4",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "L,g,E_bits"
    assert len(lines) == 10


def test_pmi_rejects_descending_grid(capsys):
    code, _, err = run(capsys, "pmi", "--model", "coin",
                       "--L-grid", "3,2,1", "--g-grid", "0,2,4")
    assert code == 1
    assert "ascending" in err


def test_pmi_rejects_nonpositive_L(capsys):
    code, _, err = run(capsys, "pmi", "--model", "coin",
                       "--L-grid", "0,1,2", "--g-grid", "0,2,4")
    assert code == 1


# ── table1 ────────────────────────────────────────────────────────────────────


def test_table1_passes_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "table1")
    assert code1 == 0
    for label in ("period-3", "goldenmean", "iid-fair", "thue-morse",
                  "ising"):
        assert label in out1
    assert "diverging" in out1
    code2, out2, _ = run(capsys, "table1")
    assert code2 == 0
    assert out1 == out2


def test_table1_json_cells(capsys):
    code, out, _ = run(capsys, "table1", "--format", "json")
    assert code == 0
    rows = {r["model"]: r for r in json.loads(out)["rows"]}
    assert len(rows) >= 9
    for row in rows.values():
        for cell in row["cells"].values():
            if isinstance(cell["diff"], float):
                assert cell["diff"] <= 1e-6
    tm = rows["thue-morse"]["cells"]
    for q in ("E", "C_P", "PMI"):
        assert tm[q]["computed"] == "diverging"
        assert tm[q]["diff"] == "ok"
    assert tm["e"]["computed"] == "?"
    # table rows required by the closed-form sweep
    for label in ("period-2", "period-5", "markov-r2", "iid-biased"):
        assert label in rows


# ── substitution ─────────────────────────────────────────────────────────────


def test_substitution_worked_example(capsys):
    code, out, _ = run(capsys, "substitution", "--rules", "tm",
                       "--l", "5", "--show-shortcut", "--p", "3")
    assert code == 0
    assert out.count("1/12") >= 12
    assert "00110" in out
    # pair frequencies feeding the shortcut
    for v in ("1/6", "1/3"):
        assert v in out


def test_substitution_l2_csv(capsys):
    code, out, _ = run(capsys, "substitution", "--rules", "tm",
                       "--l", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "factor,freq_exact,freq_float"
    body = dict(line.split(",", 1) for line in lines[1:])
    assert body["00"].startswith("1/6,")
    assert body["01"].startswith("1/3,")
    assert body["10"].startswith("1/3,")
    assert body["11"].startswith("1/6,")


def test_substitution_fib_frequencies_sum_to_one(capsys):
    code, out, _ = run(capsys, "substitution", "--rules", "fib",
                       "--l", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 4  # Fibonacci complexity p(n) = n + 1
    # golden-ratio frequencies are irrational: float column only
    assert all(line.split(",")[1] == "" for line in lines)
    freqs = {line.split(",")[0]: float(line.split(",")[2])
             for line in lines}
    assert sum(freqs.values()) == pytest.approx(1.0, abs=1e-9)
    # cross-check against plug-in counts on a long fixed-point prefix
    from persistinfo.substitution import fibonacci, fixed_point_prefix
    from persistinfo.infocore import empirical_block_distribution
    fib = fibonacci()
    prefix = fixed_point_prefix(fib, 1 << 16)
    emp = empirical_block_distribution(list(prefix), 3, fib.alphabet)
    for w, p in emp.probs.items():
        assert freqs[fib.alphabet.decode(w)] == pytest.approx(
            float(p), abs=2e-3)


def test_substitution_shortcut_requires_power(capsys):
    code, _, err = run(capsys, "substitution", "--rules", "tm",
                       "--l", "5", "--show-shortcut")
    assert code == 1
    assert "--p" in err


def test_substitution_power_too_small(capsys):
    code, _, err = run(capsys, "substitution", "--rules", "tm",
                       "--l", "5", "--show-shortcut", "--p", "1")
    assert code == 1


# ── ising ─────────────────────────────────────────────────────────────────────


def test_ising_sweep_field_has_interior_maximum(capsys):
    # a nonzero field pins the ground state, so E -> 0 at both ends
    # and the curve rises to an interior maximum
    code, out, _ = run(capsys, "ising", "--J", "1", "--h", "0.3",
                       "--Tmin", "0.1", "--Tmax", "10", "--points", "25",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "T,h_P,E,C_P,PMI"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 25
    assert all(r[4] == "0" for r in rows)
    T = [float(r[0]) for r in rows]
    assert T == sorted(T)
    E = [float(r[2]) for r in rows]
    peak = E.index(max(E))
    assert 0 < peak < len(E) - 1  # interior maximum
    # 1e-12 absorbs float dust where E underflows toward zero
    assert all(x <= y + 1e-12 for x, y in zip(E[:peak], E[1:peak + 1]))
    assert all(x + 1e-12 >= y for x, y in zip(E[peak:], E[peak + 1:]))
    assert max(E) > 0.1
    assert abs(E[0]) <= 1e-3 and E[-1] <= 1e-2


def test_ising_sweep_zero_field_decreases_from_one_bit(capsys):
    # at h = 0 the two aligned ground states carry exactly one bit,
    # and E decays monotonically as temperature disorders the chain
    code, out, _ = run(capsys, "ising", "--J", "1", "--h", "0",
                       "--Tmin", "0.1", "--Tmax", "10", "--points", "25",
                       "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    E = [float(r[2]) for r in rows]
    assert E[0] > 0.95
    assert all(x >= y for x, y in zip(E, E[1:]))
    # zero field keeps the symbol marginal uniform
    assert all(abs(float(r[3]) - 1.0) <= 1e-12 for r in rows)
    # entropy rate increases with temperature
    h = [float(r[1]) for r in rows]
    assert all(x < y for x, y in zip(h, h[1:]))


def test_ising_rejects_nonpositive_temperature(capsys):
    code, _, err = run(capsys, "ising", "--J", "1", "--h", "0",
                       "--Tmin", "0", "--Tmax", "10", "--points", "5")
    assert code == 1


# ── sample and plumbing ───────────────────────────────────────────────────────


def test_sample_logistic_alternates(capsys):
    code, out, _ = run(capsys, "sample", "--model",
                       '{"kind": "logistic", "r": 3.4, "x0": 0.3}',
                       "--n", "64")
    assert code == 0
    line = out.strip()
    assert len(line) == 64
    assert set(line) == {"0", "1"}
    assert "00" not in line and "11" not in line  # 2-cycle straddles 1/2


def test_sample_is_seed_deterministic(capsys):
    a = run(capsys, "sample", "--model", "coin", "--n", "50",
            "--seed", "7")
    b = run(capsys, "sample", "--model", "coin", "--n", "50",
            "--seed", "7")
    c = run(capsys, "sample", "--model", "coin", "--n", "50",
            "--seed", "8")
    assert a[0] == b[0] == c[0] == 0
    assert a[1] == b[1]
    assert a[1] != c[1]


def test_sample_roundtrip_through_entropy(tmp_path, capsys):
    code, out, _ = run(capsys, "sample", "--model",
                       '{"kind": "periodic", "cycle": "011"}',
                       "--n", "300", "--seed", "3")
    assert code == 0
    p = tmp_path / "seq.txt"
    p.write_text(out)
    code, out, _ = run(capsys, "entropy", "--seq", str(p),
                       "--Lmax", "4", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["H_bits"][2] == pytest.approx(LOG2_3, abs=1e-2)


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "curve.csv"
    code, out, _ = run(capsys, "entropy", "--model", "coin",
                       "--Lmax", "3", "--format", "csv",
                       "--out", str(dest))
    assert code == 0
    assert out == ""
    text = dest.read_text()
    code, out, _ = run(capsys, "entropy", "--model", "coin",
                       "--Lmax", "3", "--format", "csv")
    assert text == out


def test_outputs_are_deterministic(capsys):
    a = run(capsys, "entropy", "--model", "tm", "--Lmax", "8",
            "--format", "csv")
    b = run(capsys, "entropy", "--model", "tm", "--Lmax", "8",
            "--format", "csv")
    assert a == b
