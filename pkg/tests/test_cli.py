import json

from rotweb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert out, err
    return code, json.loads(out)


class TestClassify:
    def test_toroidal_row(self, capsys):
        code, report = run_json(capsys, "classify", "--params", "1/4,0,1/2,1/2,0,1/4")
        assert code == 0
        assert report["results"]["type"] == "toroidal"
        assert report["results"]["type_by_invariants"] == "toroidal"
        assert report["results"]["canonical"]["form"] == "I"
        assert report["results"]["canonical"]["parameter"] == "2"

    def test_cardioid_quartic(self, capsys):
        code, report = run_json(capsys, "classify", "--quartic", "0,1,0,0,0")
        assert code == 0
        assert report["results"]["type"] == "cardioid"

    def test_zero_quartic_exits_2(self, capsys):
        code, out, err = run(capsys, "classify", "--params", "0,0,0,1,0,0")
        assert code == 2
        assert "no web defined" in err

    def test_requires_exactly_one_input(self, capsys):
        assert run(capsys, "classify")[0] == 2
        assert run(capsys, "classify", "--params", "1,0,0,0,0,0",
                   "--quartic", "1,0,0,0,0")[0] == 2

    def test_malformed_rational_exits_2(self, capsys):
        assert run(capsys, "classify", "--quartic", "1,0,zero,0,0")[0] == 2

    def test_float_probe(self, capsys):
        code, report = run_json(capsys, "classify", "--quartic", "1,0,-5,0,4", "--float-probe")
        assert code == 0
        assert report["findings"] == []

    def test_deterministic_output(self, capsys):
        _, first = run_json(capsys, "classify", "--quartic", "1,0,-5,0,4")
        _, second = run_json(capsys, "classify", "--quartic", "1,0,-5,0,4")
        first.pop("timing_ms")
        second.pop("timing_ms")
        assert first == second

    def test_human_rendering(self, capsys):
        code, out, _ = run(capsys, "classify", "--quartic", "0,1,0,0,0", "--human")
        assert code == 0
        assert "type: cardioid" in out


class TestTables:
    def test_default_scales(self, capsys):
        code, report = run_json(capsys, "tables")
        assert code == 0
        assert report["results"]["passed"] == 15
        assert report["results"]["total"] == 15
        assert report["findings"] == []
        by_name = {row["name"]: row for row in report["results"]["rows"]}
        assert by_name["cap_cyclide"]["type"] == "flat_ring_cyclide"
        assert by_name["prolate_spheroidal"]["equivalence"]["witness"]["discrete"] is True
        assert by_name["prolate_spheroidal"]["equivalence"]["ok"] is True
        assert by_name["spherical"]["equivalence"]["ok"] is True

    def test_second_instantiation(self, capsys):
        code, report = run_json(capsys, "tables", "--scale", "a=2", "--scale", "k=1/3")
        assert code == 0
        assert report["results"]["passed"] == 15

    def test_bad_scale_exits_2(self, capsys):
        assert run(capsys, "tables", "--scale", "a=zero")[0] == 2
        assert run(capsys, "tables", "--scale", "q=2")[0] == 2
        assert run(capsys, "tables", "--scale", "k=7")[0] == 2


class TestCompat:
    def test_worked_example(self, capsys):
        code, report = run_json(
            capsys, "compat", "--potential", "-4/((x^2+y^2+z^2-1)^2 + 4*z^2)", "--energy", "0")
        assert code == 0
        assert report["results"]["web_type"] == "toroidal"
        assert report["results"]["solution"]["dimension"] == 2
        assert report["results"]["solution"]["c33_free"] is True

    def test_killing_subfamily_report(self, capsys):
        code, report = run_json(capsys, "compat", "--potential", "0", "--energy", "1")
        assert code == 0
        assert report["results"]["solution"]["dimension"] == 4

    def test_malformed_potential_exits_2(self, capsys):
        assert run(capsys, "compat", "--potential", "x +")[0] == 2
        assert run(capsys, "compat", "--potential", "1/(x-x)")[0] == 2


class TestSymmetry:
    def test_rotation_scan(self, capsys):
        code, report = run_json(capsys, "symmetry", "R3", "--h", "0")
        assert code == 0
        block, = report["results"]["eigenvalues"]
        assert block["dimension"] == 9
        assert block["tsn_filtered_dimension"] == 6
        assert block["tsn_variety_is_linear"] is True

    def test_dilation_constant_modes(self, capsys):
        code, report = run_json(capsys, "symmetry", "D", "--h", "const")
        assert code == 0
        eigen = {block["h"]: block["dimension"] for block in report["results"]["eigenvalues"]}
        assert eigen == {"-2": 5, "-1": 8, "0": 9, "1": 8, "2": 5}

    def test_translation_scan_killing_flags(self, capsys):
        code, report = run_json(capsys, "symmetry", "X3", "--h", "0")
        assert code == 0
        block, = report["results"]["eigenvalues"]
        assert block["dimension"] == 9
        assert all(block["killing_obstruction_zero"])

    def test_unknown_generator_exits_2(self, capsys):
        assert run(capsys, "symmetry", "R1")[0] == 2
