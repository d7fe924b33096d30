import json

import pytest

from hayd import schema
from hayd.cli import main
from hayd.errors import SchemaError
from hayd.fields import prime_field, rationals
from hayd.groups import cyclic
from hayd.hopf import group_algebra, sweedler
from hayd.suite import BUILTINS

Q = rationals()


def test_parse_serialize_round_trip_on_all_builtins():
    for name, factory in BUILTINS.items():
        H = factory()
        doc = schema.hopf_to_doc(H)
        text = schema.dumps(doc)
        parsed = schema.parse_document(text)
        H2 = schema.doc_to_hopf(parsed)
        assert H2.mult == H.mult and H2.comult == H.comult, name
        assert H2.unit == H.unit and H2.counit == H.counit, name
        assert H2.antipode == H.antipode, name
        assert schema.dumps(schema.hopf_to_doc(H2)) == text, name


def test_two_sided_round_trip():
    from hayd.suite import one_dim_structure

    H = sweedler()
    M = one_dim_structure(H, H.counit, H.basis_vector(2), "rr")
    doc = schema.two_sided_to_doc(M)
    M2 = schema.doc_to_two_sided(schema.parse_document(schema.dumps(doc)), H)
    assert M2.action.tensor == M.action.tensor
    assert M2.coaction.tensor == M.coaction.tensor


def test_action_coaction_round_trip():
    from hayd.reps import comult_coaction, regular_action

    H = sweedler()
    A = regular_action(H, "left")
    doc = schema.parse_document(schema.dumps(schema.action_to_doc(A, H.dim)))
    assert schema.doc_to_action(doc, H.dim).tensor == A.tensor
    C = comult_coaction(H, "right")
    doc = schema.parse_document(schema.dumps(schema.coaction_to_doc(C, H.dim)))
    assert schema.doc_to_coaction(doc, H.dim).tensor == C.tensor


def test_comodule_algebra_round_trip():
    from hayd.galois import comodule_algebra_from_hopf

    H = sweedler()
    CA = comodule_algebra_from_hopf(H)
    doc = schema.parse_document(schema.dumps(schema.comodule_algebra_to_doc(CA)))
    CA2 = schema.doc_to_comodule_algebra(doc, H)
    assert CA2.P.mult == CA.P.mult
    assert CA2.coaction.tensor == CA.coaction.tensor


def test_cli_verify_comodule_algebra_failure_is_exit_one(tmp_path, capsys):
    from hayd.galois import comodule_algebra_from_hopf

    H = sweedler()
    doc = schema.comodule_algebra_to_doc(comodule_algebra_from_hopf(H))
    # retag one coaction entry so the coaction is no longer an algebra map
    doc["coaction"][1]["k"] = (doc["coaction"][1]["k"] + 1) % 4
    path = tmp_path / "ca.json"
    path.write_text(json.dumps(doc))
    assert main(["verify", str(path), "--hopf", "sweedler-2"]) == 1
    assert "FAIL" in capsys.readouterr().out


def _valid_hopf_doc():
    return schema.hopf_to_doc(group_algebra(cyclic(2)))


def _expect_violation(doc, pointer_fragment):
    with pytest.raises(SchemaError) as err:
        schema.parse_document(json.dumps(doc))
    assert any(pointer_fragment in ptr for ptr, _ in err.value.violations), err.value.violations


def test_schema_rejects_index_out_of_range():
    doc = _valid_hopf_doc()
    doc["mult"][0]["i"] = 7
    _expect_violation(doc, "/mult/0/i")


def test_schema_rejects_non_prime_characteristic():
    doc = schema.hopf_to_doc(group_algebra(cyclic(2), prime_field(3)))
    doc["field"]["characteristic"] = 6
    _expect_violation(doc, "/field/characteristic")


def test_schema_rejects_zero_entries_and_duplicates():
    doc = _valid_hopf_doc()
    doc["mult"][0]["c"] = "0"
    _expect_violation(doc, "/mult/0/c")
    doc = _valid_hopf_doc()
    doc["mult"].append(dict(doc["mult"][0]))
    _expect_violation(doc, "/mult")


def test_schema_rejects_bad_scalars():
    doc = _valid_hopf_doc()
    doc["unit"][0]["c"] = "1/0"
    _expect_violation(doc, "/unit/0/c")
    doc = schema.hopf_to_doc(group_algebra(cyclic(2), prime_field(5)))
    doc["unit"][0]["c"] = "2"  # prime-field scalars must be plain integers
    _expect_violation(doc, "/unit/0/c")
    doc = schema.hopf_to_doc(group_algebra(cyclic(2), prime_field(5)))
    doc["unit"][0]["c"] = 7  # out of residue range
    _expect_violation(doc, "/unit/0/c")


def test_schema_rejects_unknown_kind_and_bad_json():
    _expect_violation({"kind": "nonsense"}, "/kind")
    with pytest.raises(SchemaError) as err:
        schema.parse_document("{not json")
    assert "line 1" in err.value.violations[0][1]


def test_dimension_cap_respects_environment(monkeypatch):
    doc = _valid_hopf_doc()
    monkeypatch.setenv("HAYD_MAX_DIM", "1")
    _expect_violation(doc, "/dim")
    monkeypatch.setenv("HAYD_MAX_DIM", "64")
    schema.parse_document(json.dumps(doc))


# -- CLI ------------------------------------------------------------------------


def _write_builtin(tmp_path, name):
    path = tmp_path / f"{name}.json"
    rc = main(["export-builtin", name, "-o", str(path)])
    assert rc == 0
    return path


def test_cli_verify_builtin_export(tmp_path, capsys):
    path = _write_builtin(tmp_path, "sweedler-2")
    assert main(["verify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "pass" in out


def test_cli_verify_corrupted_export_exits_one(tmp_path, capsys):
    path = _write_builtin(tmp_path, "group-c2")
    doc = json.loads(path.read_text())
    doc["antipode"][0]["j"] = 1 - doc["antipode"][0]["j"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_cli_verify_missing_file_exits_two(capsys):
    assert main(["verify", "/nonexistent/nope.json"]) == 2
    assert "input error" in capsys.readouterr().err


def test_cli_check_hopf_axioms_failure_is_exit_one(tmp_path, capsys):
    path = _write_builtin(tmp_path, "sweedler-2")
    doc = json.loads(path.read_text())
    doc["antipode"] = [{"i": i, "j": i, "c": "1"} for i in range(4)]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["check", "hopf_axioms", "--hopf", str(bad)]) == 1
    # but using the same broken structure as context for another check is
    # an input error
    capsys.readouterr()
    assert main(["check", "ayd", "--hopf", str(bad), "--module", str(bad)]) == 2


def test_cli_schema_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "hopf", "field": {"kind": "prime-field", "characteristic": 4}}')
    assert main(["verify", str(bad)]) == 2
    assert "schema error" in capsys.readouterr().err


def test_cli_check_ayd_on_module_file(tmp_path, capsys):
    from hayd.suite import one_dim_structure

    H = sweedler()
    good = one_dim_structure(H, H.counit, H.basis_vector(2), "rr")
    path = tmp_path / "m.json"
    path.write_text(schema.dumps(schema.two_sided_to_doc(good)))
    assert main(["check", "ayd", "--hopf", "sweedler-2", "--module", str(path)]) == 0
    assert main(["check", "yd", "--hopf", "sweedler-2", "--module", str(path)]) == 1
    capsys.readouterr()
    assert main(["check", "stability", "--hopf", "sweedler-2", "--module", str(path)]) == 0
    assert main(
        ["check", "entwined_ayd", "--hopf", "sweedler-2", "--module", str(path)]
    ) == 0
    assert main(
        ["check", "entwined_yd", "--hopf", "sweedler-2", "--module", str(path)]
    ) == 1
    capsys.readouterr()
    # case mismatch is a usage error
    assert main(
        ["check", "ayd", "--hopf", "sweedler-2", "--module", str(path), "--case", "ll"]
    ) == 2


def test_cli_build_ah_and_verify(tmp_path, capsys):
    out = tmp_path / "ah.json"
    assert main(["build", "ah", "--hopf", "group-c2", "-o", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["kind"] == "algebra" and doc["dim"] == 4


def test_cli_build_sayd_prop5(tmp_path, capsys):
    out = tmp_path / "sayd.json"
    assert main(["build", "sayd-prop5", "--hopf", "sweedler-2", "-o", str(out)]) == 0
    doc = schema.parse_document(out.read_text())
    H = sweedler()
    M = schema.doc_to_two_sided(doc, H)
    from hayd.ayd import check_ayd, check_stability

    assert check_ayd(M).passed and check_stability(M).passed


def test_cli_build_sayd_prop5_from_comodule_algebra_file(tmp_path, capsys):
    from hayd.galois import comodule_algebra_from_hopf

    H = sweedler()
    CA = comodule_algebra_from_hopf(H)
    ca_path = tmp_path / "ca.json"
    ca_path.write_text(schema.dumps(schema.comodule_algebra_to_doc(CA)))
    out = tmp_path / "sayd.json"
    rc = main(
        ["build", "sayd-prop5", "--hopf", "sweedler-2", "--module", str(ca_path), "-o", str(out)]
    )
    assert rc == 0
    assert schema.parse_document(out.read_text())["dim"] == 4


def test_cli_check_action_and_comodule_algebra_documents(tmp_path, capsys):
    from hayd.galois import comodule_algebra_from_hopf
    from hayd.reps import regular_action

    H = sweedler()
    a_path = tmp_path / "act.json"
    a_path.write_text(schema.dumps(schema.action_to_doc(regular_action(H, "left"), H.dim)))
    assert main(["check", "action", "--hopf", "sweedler-2", "--module", str(a_path)]) == 0
    ca_path = tmp_path / "ca.json"
    ca_path.write_text(
        schema.dumps(schema.comodule_algebra_to_doc(comodule_algebra_from_hopf(H)))
    )
    assert main(
        ["check", "comodule_algebra", "--hopf", "sweedler-2", "--module", str(ca_path)]
    ) == 0
    capsys.readouterr()


def test_cli_build_tensor(tmp_path, capsys):
    from hayd.suite import one_dim_structure, trivial_structure

    H = sweedler()
    n_path = tmp_path / "n.json"
    m_path = tmp_path / "m.json"
    n_path.write_text(schema.dumps(schema.two_sided_to_doc(trivial_structure(H, "rr"))))
    m_path.write_text(
        schema.dumps(
            schema.two_sided_to_doc(one_dim_structure(H, H.counit, H.basis_vector(2), "rr"))
        )
    )
    out = tmp_path / "t.json"
    rc = main(
        [
            "build", "tensor", "--hopf", "sweedler-2",
            "--left", str(n_path), "--right", str(m_path),
            "--case", "rr", "-o", str(out),
        ]
    )
    assert rc == 0
    doc = schema.parse_document(out.read_text())
    assert doc["dim"] == 1
    # swapping the factors hands the twisted structure to the plain slot
    rc = main(
        [
            "build", "tensor", "--hopf", "sweedler-2",
            "--left", str(m_path), "--right", str(n_path),
            "--case", "rr", "-o", str(out),
        ]
    )
    assert rc == 1


def test_cli_suite_json_is_byte_deterministic(capsys):
    assert main(["suite", "--builtin", "group-c2", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["suite", "--builtin", "group-c2", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["passed"] is True
    assert all(item["millis"] == 0 for item in payload["results"])
    targets = [item["target"] for item in payload["results"]]
    assert targets == sorted(targets)


def test_cli_suite_on_exported_file_target(tmp_path, capsys):
    path = _write_builtin(tmp_path, "group-c3")
    assert main(["suite", "--targets", str(path), "--checks", "hopf-axioms,dual-reflexive"]) == 0


def test_cli_suite_rejects_corrupt_target_before_running(tmp_path, capsys):
    path = _write_builtin(tmp_path, "group-c2")
    doc = json.loads(path.read_text())
    doc["counit"][0]["c"] = "2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["suite", "--targets", str(bad)]) == 2
    assert "input error" in capsys.readouterr().err


def test_cli_list_builtins(capsys):
    assert main(["list-builtins"]) == 0
    out = capsys.readouterr().out
    for name in BUILTINS:
        assert name in out


def test_parse_input_accepts_path_or_text(tmp_path):
    doc = _valid_hopf_doc()
    text = schema.dumps(doc)
    path = tmp_path / "h.json"
    path.write_text(text)
    assert schema.parse_input(str(path)) == schema.parse_input(text)


def test_run_suite_accepts_name_lists():
    from hayd.suite import run_suite

    result = run_suite(["group-c2"], checks=["hopf-axioms"])
    assert result.passed and len(result.items) == 1


def test_cli_verify_json_failure_carries_machine_schema(tmp_path, capsys):
    path = _write_builtin(tmp_path, "group-c2")
    doc = json.loads(path.read_text())
    doc["counit"][0]["c"] = "2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify", str(bad), "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"check", "target", "passed", "witness", "lhs", "rhs", "millis"}
    assert payload["passed"] is False
    assert isinstance(payload["witness"], list)
    assert payload["millis"] == 0  # machine mode stays deterministic
