from conjtop.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def machine_dict(out):
    lines = [l for l in out.strip().split("\n")]
    if "--" in lines:
        lines = lines[lines.index("--") + 1:]
    return dict(l.split("=", 1) for l in lines if "=" in l)


def test_classify_quadric(capsys):
    code, out = run_cli(["classify", "quadric", "--h", "(1,1)"], capsys)
    assert code == 0
    assert machine_dict(out)["verdict"] == "I_rel"


def test_classify_without_h_gives_II(capsys):
    code, out = run_cli(["classify", "quadric"], capsys)
    assert code == 0
    assert machine_dict(out)["verdict"] == "II"


def test_divide_torus_reflection(capsys):
    code, out = run_cli(["divide", "torus_reflection", "--machine"], capsys)
    assert code == 0
    d = machine_dict(out)
    assert d["dividing"] == "true"
    assert d["half_sizes"] == "(32,32)"


def test_divide_torus_diagonal(capsys):
    code, out = run_cli(["divide", "torus_diagonal", "--machine"], capsys)
    assert code == 0
    assert machine_dict(out)["dividing"] == "false"


def test_congruence_pass(capsys):
    code, out = run_cli(
        ["congruence", "--chi", "8", "--type", "I_abs", "--h1-trivial"], capsys
    )
    assert code == 0
    d = machine_dict(out)
    assert d["passes"] == "true"
    assert d["self_intersection_quotient"] == "-16"


def test_congruence_violation_exit_code(capsys):
    code, out = run_cli(
        ["congruence", "--chi", "2", "--type", "I_abs", "--h1-trivial"], capsys
    )
    assert code == 1
    assert "model integrity" in out


def test_congruence_not_applicable(capsys):
    code, out = run_cli(["congruence", "--chi", "2", "--type", "I_rel"], capsys)
    assert code == 0
    assert machine_dict(out)["applicable"] == "false"


def test_unknown_object_exit_code(capsys):
    code, out = run_cli(["homology", "not_a_model"], capsys)
    assert code == 2
    assert "input error" in out


def test_homology_machine(capsys):
    code, out = run_cli(["homology", "torus7", "--machine"], capsys)
    assert code == 0
    d = machine_dict(out)
    assert (d["betti.0"], d["betti.1"], d["betti.2"]) == ("1", "2", "1")


def test_machine_flag_only_keys(capsys):
    code, out = run_cli(["classify", "quadric", "--h", "1,1", "--machine"], capsys)
    assert code == 0
    assert all("=" in line for line in out.strip().split("\n"))


def test_machine_section_sorted_and_deterministic(capsys):
    code1, out1 = run_cli(["conj-form", "quadric"], capsys)
    code2, out2 = run_cli(["conj-form", "quadric"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    keys = [l.split("=")[0] for l in out1.split("--\n")[1].strip().split("\n")]
    assert keys == sorted(keys)


MIRROR_COMMANDS = (
    ["homology", "quadric"],
    ["conj-form", "quadric"],
    ["fixed-set", "torus_reflection"],
    ["divide", "torus_reflection"],
    ["orient", "torus_reflection"],
    ["congruence", "--chi", "8", "--type", "I_abs", "--h1-trivial"],
    ["cover", "sphere_octa_sub", "--cut", "arc1"],
    ["orient-cover", "rp2_6vertex", "--curve", "generator"],
    ["compare", "torus_grid", "--y1", "col0,col2", "--y2", "col1,col3"],
    ["lattice-audit", "quadric_lattice"],
    ["qform", "rp2_loops"],
)


def test_machine_mirrors_human_numbers(capsys):
    import re

    for argv in MIRROR_COMMANDS:
        code, out = run_cli(list(argv), capsys)
        assert code == 0, argv
        human, machine = out.split("--\n")
        machine_values = set()
        for line in machine.strip().split("\n"):
            machine_values.update(re.findall(r"-?\d+", line.split("=", 1)[1]))
        for line in human.strip().split("\n")[1:]:
            if ":" in line:
                for num in re.findall(r"-?\d+", line.split(":", 1)[1]):
                    assert num in machine_values, (num, line, argv)


def test_fixed_set_and_conj_form(capsys):
    code, out = run_cli(["fixed-set", "quadric", "--machine"], capsys)
    assert code == 0
    assert machine_dict(out)["fixed_class"] == "(1,1)"
    code, out = run_cli(["conj-form", "quadric", "--machine"], capsys)
    assert code == 0
    d = machine_dict(out)
    assert d["characteristic_class"] == "(1,1)"
    assert d["even"] == "false"
    assert d["fixed_realizes_characteristic"] == "true"


def test_orient_command(capsys):
    code, out = run_cli(["orient", "torus_reflection", "--machine"], capsys)
    assert code == 0
    assert machine_dict(out)["fixed_edges"] == "8"


def test_cover_commands(capsys):
    code, out = run_cli(
        ["cover", "sphere_octa_sub", "--cut", "arc1", "--machine"], capsys
    )
    assert code == 0
    d = machine_dict(out)
    assert d["total_chi"] == "2" and d["total_betti.1"] == "0"
    code, out = run_cli(
        ["cover", "sphere_octa_sub", "--cut", "arcs_both", "--machine"], capsys
    )
    assert machine_dict(out)["total_betti.1"] == "2"
    code, out = run_cli(
        ["cover", "rp2_6vertex", "--cocycle", "w1_cocycle", "--machine"], capsys
    )
    assert machine_dict(out)["total_chi"] == "2"


def test_cover_requires_exactly_one_mode(capsys):
    code, out = run_cli(["cover", "sphere_octa_sub"], capsys)
    assert code == 2


def test_orient_cover_command(capsys):
    code, out = run_cli(
        ["orient-cover", "klein_bottle", "--curve", "w1dual", "--machine"], capsys
    )
    assert code == 0
    d = machine_dict(out)
    assert d["total_betti.1"] == "2" and d["deck_reverses"] == "true"


def test_compare_command(capsys):
    code, out = run_cli(
        ["compare", "torus_grid", "--y1", "col0,col2", "--y2", "col1,col3",
         "--machine"],
        capsys,
    )
    assert code == 0
    d = machine_dict(out)
    assert d["agree_triangles"] == "32" and d["disagree_triangles"] == "32"


def test_lattice_audit_command(capsys):
    code, out = run_cli(["lattice-audit", "quadric_lattice", "--machine"], capsys)
    assert code == 0
    d = machine_dict(out)
    assert d["orientation_class.cand_b"] == "true"
    assert d["orientation_class.cand_a"] == "false"
    assert d["orientation_class.cand_c"] == "true"
    assert d["orientation_class.cand_d"] == "false"
    assert d["transfer_doubling"] == "true"


def test_qform_commands(capsys):
    code, out = run_cli(["qform", "torus_loops", "--machine"], capsys)
    assert code == 0
    assert machine_dict(out)["arf"] == "0"
    code, out = run_cli(["qform", "rp2_loops", "--machine"], capsys)
    assert machine_dict(out)["brown"] == "7"


def test_model_file_loading(tmp_path, capsys):
    from conjtop.modelfile import format_model
    from conjtop.models import model_library

    path = tmp_path / "library.cjt"
    path.write_text(format_model(model_library()), encoding="utf-8")
    code, out = run_cli(
        ["classify", "quadric", "--h", "(1,1)", "--model", str(path), "--machine"],
        capsys,
    )
    assert code == 0
    assert machine_dict(out)["verdict"] == "I_rel"


def test_missing_model_file(capsys):
    code, out = run_cli(["homology", "torus7", "--model", "/no/such/file"], capsys)
    assert code == 2


def test_unknown_command_rejected(capsys):
    code, out = run_cli(["frobnicate", "x"], capsys)
    assert code == 2
