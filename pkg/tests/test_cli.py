import json

from orbipar.cli import run_command
from orbipar import jsonio
from orbipar.cocycles import Cochain2, CoefficientGroup, FiniteAbelianGroup
from orbipar.liemodel import GroupModel, alcove_normalize
from orbipar.localseries import GradedSeries
from orbipar.pseudoreps import PseudoRep
from orbipar.matrices import CycMatrix
from orbipar.scalars import root_of_unity
from fractions import Fraction


def invoke(tmp_path, command, payload, *extra):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(payload))
    return run_command([*command, str(path), *extra])


def result_of(text):
    return json.loads(text)["result"]


def test_cocycle_h2(tmp_path):
    code, text = invoke(tmp_path, ["cocycle", "h2"], {"group": [2], "coeff_order": 2})
    assert code == 0
    out = json.loads(text)
    assert out["result"]["classes"] == 2
    assert out["audit"]["command"] == "cocycle h2"


def test_cocycle_verify_and_zeta(tmp_path):
    cochain = {"group": [2], "coeff_order": 2,
               "table": [[0, 0, "0"], [0, 1, "0"], [1, 0, "0"], [1, 1, "1/2"]]}
    code, text = invoke(tmp_path, ["cocycle", "verify"], cochain)
    assert code == 0 and result_of(text)["is_cocycle"]
    code, text = invoke(tmp_path, ["cocycle", "zeta"],
                        {"cochain": cochain, "element": [1]})
    assert code == 0
    assert result_of(text) == {"zeta": "1/2", "element_order": 2}


def test_cocycle_extend(tmp_path):
    cochain = {"group": [2], "coeff_order": 2,
               "table": [[0, 0, "0"], [0, 1, "0"], [1, 0, "0"], [1, 1, "1/2"]]}
    code, text = invoke(tmp_path, ["cocycle", "extend"], cochain)
    assert code == 0
    assert result_of(text)["order_profile"] == [1, 2, 4, 4]


def test_pseudorep_roundtrip(tmp_path):
    c = Cochain2(FiniteAbelianGroup([2]), CoefficientGroup(2), [[0, 0], [0, 1]])
    i4 = root_of_unity(Fraction(1, 4), 4)
    mi4 = root_of_unity(Fraction(3, 4), 4)
    sigma = PseudoRep.from_generator(c, CycMatrix.diagonal([i4, mi4]))
    payload = jsonio.pseudorep_to_json(sigma)
    code, text = invoke(tmp_path, ["pseudorep", "verify"], payload)
    assert code == 0 and result_of(text)["valid"]
    code, text = invoke(tmp_path, ["pseudorep", "classify"], payload)
    assert code == 0
    assert result_of(text) == {"exponents": ["3/4", "1/4"], "order": 2, "zeta": "1/2"}


def test_pseudorep_enumerate_and_project(tmp_path):
    code, text = invoke(tmp_path, ["pseudorep", "enumerate"],
                        {"order": 3, "rank": 2, "zeta": "0", "model": "gl"})
    assert code == 0 and result_of(text)["count"] == 6
    code, text = invoke(tmp_path, ["pseudorep", "project"],
                        {"class": {"order": 2, "zeta": "0",
                                   "exponents": ["1/2", "1/2"]},
                         "scalar_order": 2})
    assert code == 0
    assert result_of(text) == {"order": 2, "exponents": ["0", "0"]}


def test_lie_commands(tmp_path):
    code, text = invoke(tmp_path, ["lie", "alcove"],
                        {"model": {"kind": "gl", "r": 2},
                         "exponents": ["5/4", "-1/3"]})
    assert code == 0
    assert result_of(text) == {"alpha": ["2/3", "1/4"], "interior": True}
    code, text = invoke(tmp_path, ["lie", "eigenspaces"],
                        {"model": {"kind": "gl", "r": 2}, "alpha": ["1/3", "0"]})
    assert code == 0
    spaces = result_of(text)["eigenspaces"]
    assert [(e["beta"], e["dimension"]) for e in spaces] == \
        [("1/3", 1), ("0", 2), ("-1/3", 1)]
    code, text = invoke(tmp_path, ["lie", "parabolic"],
                        {"model": {"kind": "gl", "r": 2}, "s": ["1", "0"]})
    assert code == 0
    out = result_of(text)
    assert out["p_mask"] == [[1, 0], [1, 1]] and out["verified"]


def make_series_payload():
    return {"model": {"kind": "gl", "r": 2}, "alpha": ["1/2", "0"], "N": 2,
            "variable": "z", "trunc": 8,
            "terms": [{"basis": [1, 0], "k": 0, "coeff": "1"}]}


def test_local_pipeline(tmp_path):
    code, text = invoke(tmp_path, ["local", "check"], make_series_payload())
    assert code == 0 and result_of(text)["invariant"]
    code, text = invoke(tmp_path, ["local", "descend"], make_series_payload())
    assert code == 0
    out = result_of(text)
    assert out["series"]["terms"] == [{"basis": [1, 0], "k": -1,
                                       "coeff": {"coeffs": ["1/2"], "order": 1}}]
    assert out["residue"]["nilpotent"] and out["residue"]["levi_projection_zero"]
    # ascend the descended series back
    path = tmp_path / "down.json"
    path.write_text(json.dumps(out["series"]))
    code, text = run_command(["local", "ascend", str(path)])
    assert code == 0
    up = result_of(text)["series"]
    assert up["terms"] == [{"basis": [1, 0], "k": 0,
                            "coeff": {"coeffs": ["1"], "order": 1}}]
    code, text = run_command(["local", "residue", str(path)])
    assert code == 0 and result_of(text)["support_in_negative_beta"]


def test_local_twist_flag(tmp_path):
    payload = make_series_payload()
    payload["alpha"] = ["1/3", "0"]
    payload["N"] = 3
    payload["terms"] = [{"basis": [0, 1], "k": 0, "coeff": "1"}]
    code, text = invoke(tmp_path, ["local", "check"], payload)
    assert code == 0 and not result_of(text)["invariant"]
    code, text = invoke(tmp_path, ["local", "check"], payload, "--twist", "2/3")
    assert code == 0 and result_of(text)["invariant"]
    assert json.loads(text)["audit"]["twist"] == "2/3"


def test_moduli_commands(tmp_path):
    code, text = invoke(tmp_path, ["moduli", "rh"],
                        {"genus_x": 2, "group_order": 2, "orbit_orders": [2, 2]})
    assert code == 0 and result_of(text) == {"genus_y": 1}
    code, text = invoke(tmp_path, ["moduli", "strata"],
                        {"group": [2], "coeff_order": 2,
                         "covering": {"genus_x": 2, "group_order": 2,
                                      "orbit_orders": [2]},
                         "model": {"kind": "gl", "r": 1}})
    assert code == 0 and result_of(text)["count"] == 2
    code, text = invoke(tmp_path, ["moduli", "degree"],
                        {"s": ["-1", "1"],
                         "pieces": [{"value": "-1", "rank": 1, "degree": 1},
                                    {"value": "1", "rank": 1, "degree": -1}],
                         "corrections": []})
    assert code == 0 and result_of(text) == {"pairing": "-2"}
    code, text = invoke(tmp_path, ["moduli", "stability"],
                        {"mode": "semistable",
                         "candidates": [{"s": ["-1", "1"],
                                         "pieces": [{"value": "-1", "rank": 1, "degree": 1},
                                                    {"value": "1", "rank": 1, "degree": -1}],
                                         "corrections": []}]})
    assert code == 0
    assert result_of(text) == {"mode": "semistable", "ok": False,
                               "violator": 0, "pairing": "-2"}
    code, text = invoke(tmp_path, ["moduli", "scale"],
                        {"parabolic_degree_y": "1/2", "group_order": 2,
                         "claimed_degree_x": "1"})
    assert code == 0 and result_of(text) == {"scaling_ok": True, "integral": True}


def test_error_exit_codes(tmp_path):
    # domain error: weight on an alcove wall -> exit 1 with machine-readable code
    payload = make_series_payload()
    payload["alpha"] = ["0", "0"]
    payload["N"] = 1
    payload["terms"] = []
    code, text = invoke(tmp_path, ["local", "descend"], payload)
    assert code == 1
    assert json.loads(text)["error"] == "weight_on_wall"
    # malformed json -> exit 2
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, text = run_command(["cocycle", "verify", str(path)])
    assert code == 2 and json.loads(text)["error"] == "malformed_input"
    # schema violation -> exit 2
    code, text = invoke(tmp_path, ["cocycle", "verify"], {"group": [2]})
    assert code == 2 and json.loads(text)["error"] == "malformed_input"
    # scale exceeded -> exit 1
    code, text = invoke(tmp_path, ["cocycle", "h2"],
                        {"group": [8], "coeff_order": 8}, "--scale-bound", "10")
    assert code == 1 and json.loads(text)["error"] == "scale_exceeded"


def test_serialization_roundtrip():
    # parse(print(x)) = x for the compound domain types
    model = GroupModel("gl", r=2)
    w = alcove_normalize(model, [Fraction(1, 2), 0])
    series = GradedSeries(model, w, 2, "z", 6,
                          {(model.basis_index((1, 0)), 0): root_of_unity(Fraction(1, 3), 3)})
    again = jsonio.series_from_json(json.loads(json.dumps(jsonio.series_to_json(series))))
    assert again.equal_on_common_range(series) and again.trunc == series.trunc
    c = Cochain2(FiniteAbelianGroup([4]), CoefficientGroup(2),
                 [[0] * 4, [0, 1, 0, 1], [0] * 4, [0, 1, 0, 1]])
    assert jsonio.cochain_from_json(jsonio.cochain_to_json(c)) == c


def test_determinism(tmp_path):
    payload = make_series_payload()
    outs = set()
    for _ in range(3):
        code, text = invoke(tmp_path, ["local", "descend"], payload)
        assert code == 0
        outs.add(text)
    assert len(outs) == 1
