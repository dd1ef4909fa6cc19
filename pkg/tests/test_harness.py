import json
import math

import pytest
from hypothesis import given, strategies as st

from mixfrac.harness import (TABLES, ConfigError, ConvergenceReport, RunConfig, build_case, convergence_orders,
                             convergence_study, emit, parse_csv, stability_verdict)
from mixfrac.harness.checks import StabilityRow, kernel_property_suite, parse_nu_range
from mixfrac.harness.cli import main
from mixfrac.harness.regression import TolerancePolicy, regression_check, tables_for
from mixfrac.harness.study import ConvergenceRow


@given(c=st.floats(1e-6, 1e3), p=st.floats(0.5, 4.0), n0=st.integers(2, 50))
def test_orders_of_power_law(c, p, n0):
    Ns = [n0 * 2 ** k for k in range(5)]
    orders = convergence_orders(Ns, [c * N ** (-p) for N in Ns])
    assert orders[0] is None
    for o in orders[1:]:
        assert abs(o - p) <= 1e-12


def test_orders_non_dyadic_and_length_check():
    Ns = [10, 30, 45]
    orders = convergence_orders(Ns, [N ** -1.5 for N in Ns])
    assert orders[1] == pytest.approx(1.5, abs=1e-12) and orders[2] == pytest.approx(1.5, abs=1e-12)
    assert convergence_orders([], []) == []
    with pytest.raises(ValueError):
        convergence_orders([1, 2], [1.0])


@given(block=st.integers(1, 3), N=st.one_of(st.none(), st.integers(2, 1000)),
       values=st.one_of(st.none(), st.lists(st.integers(2, 10_000), min_size=1, max_size=6, unique=True)),
       fmt=st.sampled_from(["csv", "markdown"]), T=st.floats(0.1, 10),
       preset=st.sampled_from(["ex1", "ex2", "ex3", "ex3b"]))
def test_config_json_round_trip(block, N, values, fmt, T, preset):
    cfg = RunConfig(preset=preset, block=block, N=N, values=sorted(values) if values else None,
                    format=fmt, T=T, params={"alpha": 0.3})
    again = RunConfig.from_json(cfg.to_json())
    assert again == cfg
    assert RunConfig.from_json(again.to_json()).to_json() == cfg.to_json()


def test_config_file_round_trip(tmp_path):
    cfg = RunConfig(problem={"alpha": 0.5, "mode": "sinpix", "time_terms": [[1, 2]]}, preset=None, M=20, N=10)
    cfg.save(tmp_path / "c.json")
    assert RunConfig.load(tmp_path / "c.json") == cfg


@pytest.mark.parametrize("kw", [
    {"preset": "ex9"}, {"block": 4}, {"sweep": "diagonal"}, {"format": "xml"}, {"values": [40, 20]},
    {"values": [20, 20]}, {"values": []}, {"values": [1, 2]}, {"jobs": 0}, {"T": 0.0}, {"start": "guess"},
    {"forcing": "numeric"}, {"preset": None},
])
def test_invalid_configs(kw):
    with pytest.raises(ConfigError):
        RunConfig(**kw)


def test_invalid_json():
    with pytest.raises(ConfigError):
        RunConfig.from_json("{not json")
    with pytest.raises(ConfigError):
        RunConfig.from_json("[1, 2]")
    with pytest.raises(ConfigError):
        RunConfig.from_json('{"colour": "red"}')
    with pytest.raises(ConfigError):
        RunConfig.load("/nonexistent/config.json")


def test_unknown_preset_parameter():
    with pytest.raises(ConfigError):
        build_case(RunConfig(params={"beta": 0.3}))


def _report():
    rows = [ConvergenceRow(20, 5.9025e-4, None, 1e-3, None, 2e-3, None),
            ConvergenceRow(40, 1.6894e-4, 1.80481, 2.5e-4, 2.0, 5e-4, 2.0)]
    return ConvergenceReport("temporal", rows)


def test_emit_csv_and_parse():
    text = emit(_report(), "csv")
    lines = text.splitlines()
    assert lines[0] == "sweep_value,E,CO,E_c,CO_c,E_energy,CO_energy"
    assert lines[1] == "20,5.9025e-04,,1.0000e-03,,2.0000e-03,"
    assert lines[2].startswith("40,1.6894e-04,1.8048,")
    rows = parse_csv(text)
    assert rows[0].CO is None and rows[1].CO == pytest.approx(1.8048)
    assert rows[1].E == pytest.approx(1.6894e-4)
    with pytest.raises(ValueError):
        parse_csv("a,b\n1,2\n")


def test_emit_markdown(tmp_path):
    path = tmp_path / "t.md"
    text = emit(_report(), "markdown", path)
    assert path.read_text() == text
    lines = text.splitlines()
    assert lines[0] == "| N | E | CO | E_c | CO_c | E_A | CO_A |"
    assert "| 40 | 1.6894e-04 | 1.8048 |" in lines[3]
    with pytest.raises(ValueError):
        emit(_report(), "xml")
    with pytest.raises(ValueError):
        emit(ConvergenceReport("temporal", []), "csv")


def test_convergence_study_small():
    rep = convergence_study(RunConfig(preset="ex1", block=2, M=100, values=(10, 20, 40), forcing="discrete"))
    assert rep.complete and [r.value for r in rep.rows] == [10, 20, 40]
    assert rep.rows[0].CO is None
    assert rep.rows[-1].CO == pytest.approx(2.0, abs=0.15)
    assert rep.metadata["fixed"] == {"M": 100}


def test_single_value_sweep():
    rep = convergence_study(RunConfig(preset="ex1", M=50, values=(10,)))
    assert len(rep.rows) == 1 and rep.rows[0].CO is None
    assert emit(rep, "csv").count("\n") == 2


def test_spatial_sweep():
    rep = convergence_study(RunConfig(preset="ex1", block=2, N=400, sweep="spatial", values=(8, 16, 32)))
    assert rep.rows[-1].CO == pytest.approx(2.0, abs=0.1)
    assert rep.metadata["fixed"] == {"N": 400}


def test_parallel_sweep_matches_serial():
    cfg = RunConfig(preset="ex1", M=40, values=(6, 12))
    a = convergence_study(cfg)
    b = convergence_study(cfg.updated(jobs=2))
    assert a.rows == b.rows


def test_sweep_failure_keeps_partial_rows():
    # explicit problem with a diffusivity that vanishes inside the domain
    bad = {"alpha": 0.5, "mode": "sinpix", "time_terms": [[1, 2]], "p": "zero"}
    rep = convergence_study(RunConfig(preset=None, problem=bad, M=10, values=(4, 8)))
    assert not rep.complete and rep.rows == []
    assert "CoefficientError" in rep.failure


def test_custom_problem_run():
    prob = {"alpha": 0.5, "caputo_terms": [[1.0, 0.3]], "integral_terms": [[2.0, 0.6]], "kappa2": 1.0,
            "mode": "sin2pix", "time_terms": [[1, 1], [1, 2.5]], "p": "ex1_p", "q": "ex1_q"}
    rep = convergence_study(RunConfig(preset=None, problem=prob, M=100, values=(10, 20, 40), forcing="discrete"))
    assert rep.rows[-1].CO == pytest.approx(2.0, abs=0.15)
    with pytest.raises(ConfigError):
        build_case(RunConfig(preset=None, problem={"alpha": 0.5}, M=10, N=10))


def test_tables_transcribed():
    t1 = TABLES["table1"]
    row = t1.blocks[1].rows[3]
    assert row[:3] == (160, 2.5681e-05, 1.9993)
    assert TABLES["table2"].blocks[2].rows[-1][:3] == (320, 2.1011e-06, 1.9745)
    assert TABLES["table2"].blocks[1].advisory
    assert TABLES["table3"].blocks[1].rows[-1][:3] == (160, 5.0397e-06, 2.0403)
    assert TABLES["table1"].blocks[0].rows[-1][:3] == (320, 3.1565e-06, 2.0008)
    assert [t.name for t in tables_for("ex3")] == ["table3", "table4"]
    with pytest.raises(KeyError):
        tables_for("ex7")


def test_regression_table1_first_block():
    res = regression_check("table1", blocks=[1])
    assert res.passed, "\n".join(c.line() for c in res.cells if not c.ok)
    finest = [c for c in res.cells if c.value == 320 and c.column == "CO"]
    assert finest and finest[0].tolerance == TolerancePolicy().order_final


def test_stability_verdict_logic():
    rows = [StabilityRow(4, 0.04, 1e-3, 1e-3), StabilityRow(20, 0.2, 1e-3, 1e-3), StabilityRow(40, 0.9, 1e-3, 1e-3)]
    assert stability_verdict(rows).ok
    assert not stability_verdict(rows + [StabilityRow(80, 3.0, 1e-3, 1e-3)]).ok
    assert not stability_verdict([StabilityRow(4, 0.04, 1.0, 1e-3), rows[1]]).ok
    assert not stability_verdict(rows[:1]).ok


def test_parse_nu_range():
    assert parse_nu_range("0.05:0.95:0.05") == pytest.approx([0.05 * k for k in range(1, 20)])
    assert parse_nu_range("0.2,0.4") == [0.2, 0.4]
    for bad in ("0.1:0.2", "0.5:0.1:0.1", "0.1:0.5:0"):
        with pytest.raises(ValueError):
            parse_nu_range(bad)


def test_kernel_suite_reports_full_sequence_honestly():
    res = {r.name: r for r in kernel_property_suite([0.3, 0.7], j=50, samples=200)}
    assert res["thomee c nu=0.3 j=50"].ok
    assert not res["thomee c nu=0.7 j=50"].ok
    assert res["thomee c_1.. nu=0.7 j=50"].ok
    assert res["quadratic inequality 200 samples"].ok
    assert all(r.ok for n, r in res.items() if n.startswith(("L2", "RL")))


# command line

def test_cli_solve_rejects_sweep_values(capsys):
    assert main(["solve", "--preset", "ex1", "--values", "20"]) == 2


def test_cli_unknown_preset_and_bad_values():
    assert main(["converge", "--preset", "ex9"]) == 2
    assert main(["converge", "--values", "40,20", "--M", "20"]) == 2
    assert main(["converge", "--values", "a,b"]) == 2
    assert main([]) == 2


def test_cli_solve(tmp_path, capsys):
    out = tmp_path / "e.csv"
    assert main(["solve", "--preset", "ex1", "--M", "40", "--N", "10", "--out", str(out)]) == 0
    assert "E=" in capsys.readouterr().out
    assert out.read_text().startswith("j,t,l2,max,energy")


def test_cli_converge_writes_table(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["converge", "--preset", "ex1", "--M", "60", "--values", "5,10,20", "--out", str(out)]) == 0
    rows = parse_csv(out.read_text())
    assert [r.value for r in rows] == [5, 10, 20]


def test_cli_converge_markdown_stdout(capsys):
    assert main(["converge", "--preset", "ex2", "--M", "60", "--values", "5,10", "--format", "markdown"]) == 0
    assert capsys.readouterr().out.startswith("| N | E | CO |")


def test_cli_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"preset": "ex1", "block": 3, "M": 30, "values": [4, 8]}))
    assert main(["converge", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out.count("\n") == 3
    assert main(["converge", "--config", str(tmp_path / "missing.json")]) == 2


def test_cli_check_kernels_narrow_range(capsys):
    assert main(["check-kernels", "--nu", "0.1:0.3:0.1", "--samples", "500"]) == 0
    assert "all kernel checks passed" in capsys.readouterr().out
    assert main(["check-kernels", "--nu", "0.6", "--samples", "10"]) == 1
    assert main(["check-kernels", "--nu", "1:0:1"]) == 2


def test_cli_stability(capsys):
    assert main(["stability", "--preset", "ex1", "--M", "100", "--values", "4,20,40"]) == 0
    out = capsys.readouterr().out
    assert "PASS stability" in out


def test_cli_regress_block(capsys):
    assert main(["regress", "table1", "--block", "1", "--quiet"]) == 0
    assert "table1: 27 cells, 0 failing" in capsys.readouterr().out
    assert main(["regress", "table9"]) == 2


def test_cli_unwritable_output():
    assert main(["converge", "--preset", "ex1", "--M", "20", "--values", "4,8",
                 "--out", "/nonexistent/dir/t.csv"]) == 1


def test_reference_order_math():
    # the log-ratio used for the published CO column
    assert math.log(5.9025e-4 / 1.6894e-4) / math.log(2) == pytest.approx(1.8048, abs=1e-4)
