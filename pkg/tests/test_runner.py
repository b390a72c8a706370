"""Scenario execution: reports, overrides, determinism, sweeps."""

import math

import pytest

from cvpol import (
    CriterionResult,
    PhysicsError,
    SqueezingSpectrum,
    StokesMeans,
    parse_scenario,
    run,
    sweep,
    sweep_spectrum,
)
from cvpol.cli import builtin_text
from cvpol.output import report_json

ENTANGLER = """
param vplus default=0.1
param vminus default=10
mode a squeezed vplus=$vplus vminus=$vminus alpha=5
mode b squeezed vplus=$vplus vminus=$vminus alpha=5
bs a b eta=0.5 phase=pi/2
rotate a angle=-pi/4
rotate b angle=pi/4
measure duan a b
measure epr_quad a b
"""


class TestRun:
    def test_entries_in_declaration_order(self):
        report = run(parse_scenario(ENTANGLER))
        assert [name for name, _ in report.entries] == ["duan", "epr_quad"]
        assert report.entries[0][1].value == pytest.approx(0.1, abs=1e-12)

    def test_parameter_defaults_and_overrides(self):
        spec = parse_scenario(ENTANGLER)
        assert run(spec).params == {"vplus": 0.1, "vminus": 10.0}
        report = run(spec, {"vplus": 1.0, "vminus": 1.0})
        assert report.entries[0][1].value == pytest.approx(1.0, abs=1e-12)

    def test_undeclared_override_rejected(self):
        spec = parse_scenario(ENTANGLER)
        with pytest.raises(ValueError, match="undeclared"):
            run(spec, {"nope": 1.0})

    def test_empty_measurement_list(self):
        report = run(parse_scenario("mode a vacuum\n"))
        assert report.entries == ()

    def test_physics_error_carries_the_line(self):
        spec = parse_scenario("param v default=0.1\nmode a squeezed vplus=$v vminus=$v\n")
        with pytest.raises(PhysicsError) as excinfo:
            run(spec)
        assert excinfo.value.line == 2
        assert "line 2" in str(excinfo.value)

    def test_element_physics_error_line(self):
        spec = parse_scenario(
            "param eta default=0.5\nmode a vacuum\nloss a eta=$eta\n")
        with pytest.raises(PhysicsError) as excinfo:
            run(spec, {"eta": 1.5})
        assert excinfo.value.line == 3

    def test_builtin_paper_scenario_names(self):
        report = run(parse_scenario(builtin_text("paper.pol")))
        names = [name for name, _ in report.entries]
        assert names == ["duan", "epr_quad", "insep_S1S2", "insep_S1S3",
                         "insep_S2S3", "epr_stokes_S2S3"]
        flagged = dict(report.entries)["insep_S1S3"]
        assert flagged.zero_bound
        assert any("insep_S1S3" in w for w in report.warnings)

    def test_builtin_symmetric_scenario(self):
        report = run(parse_scenario(builtin_text("symmetric.pol")))
        results = dict(report.entries)
        duan = results["duan"].value
        for pair_name in ("insep_S1S2", "insep_S1S3", "insep_S2S3"):
            assert results[pair_name].value == pytest.approx(
                math.sqrt(3.0) * duan, abs=1e-9)
        assert isinstance(results["stokes_means_bx"], StokesMeans)

    def test_duplicate_measurements_get_serial_names(self):
        text = ENTANGLER + "measure duan a b\n"
        report = run(parse_scenario(text))
        assert [name for name, _ in report.entries] == ["duan", "epr_quad", "duan_2"]

    def test_determinism_bit_identical(self):
        spec = parse_scenario(builtin_text("paper.pol"))
        first = report_json(run(spec), "paper.pol")
        second = report_json(run(spec), "paper.pol")
        assert first == second


class TestSweep:
    def test_symmetric_squeezing_sweep_is_monotone(self):
        spec = parse_scenario(builtin_text("symmetric.pol"))
        table = sweep(spec, "vplus", 0.05, 1.0, 10)
        column = table.columns.index("insep_S2S3")
        values = [row[column] for row in table.rows]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert table.values == tuple(sorted(table.values))

    def test_descending_bounds_still_ascend(self):
        spec = parse_scenario(ENTANGLER)
        table = sweep(spec, "vplus", 1.0, 0.1, 4)
        assert table.values == tuple(sorted(table.values))

    def test_too_few_steps(self):
        spec = parse_scenario(ENTANGLER)
        with pytest.raises(ValueError):
            sweep(spec, "vplus", 0.1, 1.0, 1)

    def test_undeclared_parameter(self):
        spec = parse_scenario(ENTANGLER)
        with pytest.raises(ValueError):
            sweep(spec, "frequency", 2.0, 10.0, 5)

    def test_rows_match_independent_runs(self):
        spec = parse_scenario(ENTANGLER)
        table = sweep(spec, "vplus", 0.2, 0.8, 3)
        for value, row in zip(table.values, table.rows):
            report = run(spec, {"vplus": value})
            assert row[table.columns.index("duan")] == report.entries[0][1].value


class TestSpectrumSweep:
    def test_frequency_column_is_synthetic(self):
        spec = parse_scenario(builtin_text("paper.pol"))
        spectrum = SqueezingSpectrum(v_min=0.44, v_max=2.831, corner_mhz=5.0)
        table = sweep_spectrum(spec, spectrum, 2.0, 10.0, 33)
        assert table.param == "f"
        assert len(table.rows) == 33
        assert table.values == tuple(sorted(table.values))

    def test_criteria_relax_toward_the_coherent_plateau(self):
        # this Lorentzian model has its best squeezing at zero frequency, so
        # every criterion grows with frequency toward the coherent value
        spec = parse_scenario(builtin_text("paper.pol"))
        spectrum = SqueezingSpectrum(v_min=0.3, v_max=6.0, corner_mhz=4.0)
        table = sweep_spectrum(spec, spectrum, 2.0, 50.0, 9)
        column = table.columns.index("duan")
        values = [row[column] for row in table.rows]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert values[-1] < 1.0

    def test_requires_declared_squeezing_params(self):
        spec = parse_scenario("param x default=1\nmode a vacuum\n")
        spectrum = SqueezingSpectrum(0.5, 2.0, 5.0)
        with pytest.raises(ValueError):
            sweep_spectrum(spec, spectrum, 2.0, 10.0, 5)

    def test_spectrum_validation(self):
        with pytest.raises(PhysicsError):
            SqueezingSpectrum(v_min=0.5, v_max=1.5, corner_mhz=5.0)
        with pytest.raises(PhysicsError):
            SqueezingSpectrum(v_min=0.0, v_max=10.0, corner_mhz=5.0)
        vp, vm = SqueezingSpectrum(0.5, 2.0, 5.0).variances(5.0)
        assert vp == pytest.approx(0.75)
        assert vm == pytest.approx(1.5)
        assert vp * vm >= 1.0
