#!/usr/bin/env python3
"""Regenerate the golden corpus under corpus/.

Each case records a CLI command, its input payload, and the expected output
object.  Key fields of every generated case are asserted inline against
independently established values before the file is written, so regeneration
cannot silently freeze wrong outputs.
"""

import json
import os
import sys
import tempfile

from orbipar.cli import run_command

CORPUS = os.path.join(os.path.dirname(__file__), "..", "corpus")

NEG_COCHAIN = {"group": [2], "coeff_order": 2,
               "table": [[0, 0, "0"], [0, 1, "0"], [1, 0, "0"], [1, 1, "1/2"]]}

C3_COCHAIN = {"group": [3], "coeff_order": 3,
              "table": [[0, 0, "0"], [0, 1, "0"], [0, 2, "0"],
                        [1, 0, "0"], [1, 1, "1/3"], [1, 2, "0"],
                        [2, 0, "0"], [2, 1, "0"], [2, 2, "2/3"]]}

BAD_COCHAIN = {"group": [3], "coeff_order": 3,
               "table": [[0, 0, "0"], [0, 1, "0"], [0, 2, "0"],
                         [1, 0, "0"], [1, 1, "1/3"], [1, 2, "0"],
                         [2, 0, "0"], [2, 1, "0"], [2, 2, "0"]]}

I4 = {"order": 4, "coeffs": ["0", "1"]}
MINUS_I4 = {"order": 4, "coeffs": ["0", "-1"]}
ONE = {"order": 1, "coeffs": ["1"]}
ZERO = {"order": 1, "coeffs": ["0"]}
MINUS_ONE = {"order": 1, "coeffs": ["-1"]}


def mat(entries):
    return {"size": len(entries), "entries": entries}


PSEUDOREP = {
    "order": 2,
    "cocycle": NEG_COCHAIN,
    "images": {
        "0": mat([[ONE, ZERO], [ZERO, ONE]]),
        "1": mat([[I4, ZERO], [ZERO, MINUS_I4]]),
    },
}

SERIES_E21 = {"model": {"kind": "gl", "r": 2}, "alpha": ["1/2", "0"], "N": 2,
              "variable": "z", "trunc": 8,
              "terms": [{"basis": [1, 0], "k": 0, "coeff": "1"}]}

SERIES_E12_Z = {"model": {"kind": "gl", "r": 2}, "alpha": ["1/3", "0"], "N": 3,
                "variable": "z", "trunc": 9,
                "terms": [{"basis": [0, 1], "k": 1, "coeff": "1"}]}

SERIES_E12_CONST = {"model": {"kind": "gl", "r": 2}, "alpha": ["1/3", "0"], "N": 3,
                    "variable": "z", "trunc": 9,
                    "terms": [{"basis": [0, 1], "k": 0, "coeff": "1"}]}

DOWN_HALF_E21 = {"model": {"kind": "gl", "r": 2}, "alpha": ["1/2", "0"], "N": 2,
                 "variable": "w", "trunc": 3,
                 "terms": [{"basis": [1, 0], "k": -1, "coeff": "1/2"}]}

DOWN_MIXED_POLE = {"model": {"kind": "gl", "r": 2}, "alpha": ["1/2", "0"], "N": 2,
                   "variable": "w", "trunc": 3,
                   "terms": [{"basis": [0, 1], "k": -1, "coeff": "1"},
                             {"basis": [1, 0], "k": -1, "coeff": "1"}]}

FLAG_NEG = {"s": ["-1", "1"],
            "pieces": [{"value": "-1", "rank": 1, "degree": 1},
                       {"value": "1", "rank": 1, "degree": -1}],
            "corrections": []}


def case(name, command, payload, checks, args=()):
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "input.json")
        with open(path, "w") as fh:
            json.dump(payload, fh)
        code, text = run_command([*command, path, *[str(a) for a in args]])
    assert code == 0, f"{name}: exit {code}: {text}"
    result = json.loads(text)["result"]
    checks(result)
    data = {"name": name, "command": list(command), "input": payload,
            "expected_output": json.loads(text)}
    if args:
        data["args"] = [str(a) for a in args]
    out = os.path.join(CORPUS, f"{name}.json")
    with open(out, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("wrote", out)


def main():
    os.makedirs(CORPUS, exist_ok=True)

    case("cocycle_verify_trivial", ["cocycle", "verify"],
         {"group": [3], "coeff_order": 2,
          "table": [[i, j, "0"] for i in range(3) for j in range(3)]},
         lambda r: r["is_cocycle"] or _fail())
    case("cocycle_verify_witness", ["cocycle", "verify"], BAD_COCHAIN,
         lambda r: (not r["is_cocycle"]) and r["witness"] is not None or _fail())
    case("cocycle_h2_z2_m2", ["cocycle", "h2"], {"group": [2], "coeff_order": 2},
         lambda r: r["classes"] == 2 or _fail())
    case("cocycle_h2_z6_m4", ["cocycle", "h2"], {"group": [6], "coeff_order": 4},
         lambda r: r["classes"] == 2 or _fail())
    case("cocycle_extend_cyclic4", ["cocycle", "extend"], NEG_COCHAIN,
         lambda r: r["order_profile"] == [1, 2, 4, 4] or _fail())
    case("cocycle_zeta_order3", ["cocycle", "zeta"],
         {"cochain": C3_COCHAIN, "element": [1]},
         lambda r: r["zeta"] == "1/3" or _fail())

    case("pseudorep_verify_diag", ["pseudorep", "verify"], PSEUDOREP,
         lambda r: r["valid"] or _fail())
    case("pseudorep_classify_diag", ["pseudorep", "classify"], PSEUDOREP,
         lambda r: r == {"order": 2, "zeta": "1/2",
                         "exponents": ["3/4", "1/4"]} or _fail())
    case("pseudorep_enumerate_ninth_roots", ["pseudorep", "enumerate"],
         {"order": 3, "rank": 2, "zeta": "1/3", "model": "gl"},
         lambda r: r["count"] == 6 and
         r["classes"][0]["exponents"] == ["1/9", "1/9"] or _fail())
    case("pseudorep_transport_abelian", ["pseudorep", "transport"],
         {"pseudorep": PSEUDOREP, "gamma0": [3], "ambient_group": [6],
          "generator_image": [3]},
         lambda r: r["images"] == PSEUDOREP["images"] or _fail())
    case("pseudorep_project_halves", ["pseudorep", "project"],
         {"class": {"order": 2, "zeta": "0", "exponents": ["1/2", "1/2"]},
          "scalar_order": 2},
         lambda r: r == {"order": 2, "exponents": ["0", "0"]} or _fail())

    case("lie_alcove_gl2", ["lie", "alcove"],
         {"model": {"kind": "gl", "r": 2}, "exponents": ["5/4", "-1/3"]},
         lambda r: r == {"alpha": ["2/3", "1/4"], "interior": True} or _fail())
    case("lie_alcove_sl2", ["lie", "alcove"],
         {"model": {"kind": "sl", "r": 2}, "exponents": ["1/3", "2/3"]},
         lambda r: r == {"alpha": ["1/3", "-1/3"], "interior": True} or _fail())
    case("lie_eigenspaces_gl2", ["lie", "eigenspaces"],
         {"model": {"kind": "gl", "r": 2}, "alpha": ["1/3", "0"]},
         lambda r: [(e["beta"], e["dimension"]) for e in r["eigenspaces"]] ==
         [("1/3", 1), ("0", 2), ("-1/3", 1)] or _fail())
    case("lie_parabolic_gl3", ["lie", "parabolic"],
         {"model": {"kind": "gl", "r": 3}, "s": ["1", "1", "0"]},
         lambda r: r["l_mask"] == [[1, 1, 0], [1, 1, 0], [0, 0, 1]] and
         r["verified"] or _fail())

    case("local_check_invariant", ["local", "check"], SERIES_E12_Z,
         lambda r: r["invariant"] and r["by_index"] and
         r["by_substitution"] or _fail())
    case("local_check_twisted", ["local", "check"], SERIES_E12_CONST,
         lambda r: r["invariant"] or _fail(), args=["--twist", "2/3"])
    case("local_descend_pole", ["local", "descend"], SERIES_E21,
         lambda r: r["series"]["terms"] ==
         [{"basis": [1, 0], "k": -1, "coeff": {"coeffs": ["1/2"], "order": 1}}]
         and r["residue"]["nilpotent"] and r["residue"]["levi_projection_zero"]
         or _fail())
    case("local_descend_regular", ["local", "descend"], SERIES_E12_Z,
         lambda r: r["series"]["terms"] ==
         [{"basis": [0, 1], "k": 0, "coeff": {"coeffs": ["1/3"], "order": 1}}]
         or _fail())
    case("local_ascend_pole", ["local", "ascend"], DOWN_HALF_E21,
         lambda r: r["series"]["terms"] ==
         [{"basis": [1, 0], "k": 0, "coeff": {"coeffs": ["1"], "order": 1}}]
         or _fail())
    case("local_residue_mixed", ["local", "residue"], DOWN_MIXED_POLE,
         lambda r: (not r["nilpotent"]) and
         (not r["support_in_negative_beta"]) or _fail())

    case("moduli_rh_elliptic_quotient", ["moduli", "rh"],
         {"genus_x": 2, "group_order": 2, "orbit_orders": [2, 2]},
         lambda r: r == {"genus_y": 1} or _fail())
    case("moduli_strata_gl1", ["moduli", "strata"],
         {"group": [2], "coeff_order": 2,
          "covering": {"genus_x": 2, "group_order": 2, "orbit_orders": [2]},
          "model": {"kind": "gl", "r": 1}},
         lambda r: r["count"] == 2 or _fail())
    case("moduli_degree_negative", ["moduli", "degree"], FLAG_NEG,
         lambda r: r == {"pairing": "-2"} or _fail())
    case("moduli_stability_violator", ["moduli", "stability"],
         {"mode": "semistable", "candidates": [FLAG_NEG]},
         lambda r: r == {"mode": "semistable", "ok": False, "violator": 0,
                         "pairing": "-2"} or _fail())
    case("moduli_scale_half", ["moduli", "scale"],
         {"parabolic_degree_y": "1/2", "group_order": 2, "claimed_degree_x": "1"},
         lambda r: r == {"scaling_ok": True, "integral": True} or _fail())


def _fail():
    raise AssertionError("corpus check failed")


if __name__ == "__main__":
    sys.exit(main())
