"""End-to-end tests for the command-line interface.

Each test drives ``elliptic_loops.cli.run`` with an argv list and checks
the printed output and the exit code against values computed directly
with the library, so the CLI contract (text/JSON output, 0 = verified,
1 = falsified, 2 = usage or precondition error) stays pinned down.
"""

from __future__ import annotations

import json

import pytest

from elliptic_loops import (
    ProjPoint,
    RingConfig,
    add,
    infinity_decompose,
    scalar_mul,
    stratify,
    validate_params,
)
from elliptic_loops.cli import run


def params_for(p, e, A, B):
    return validate_params(RingConfig.integer(p, e), A, B)


def run_cli(capsys, *argv):
    rc = run(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ----------------------------------------------------------------------------
# arithmetic subcommands
# ----------------------------------------------------------------------------


def test_add_matches_library(capsys):
    params = params_for(5, 2, 2, 1)
    rc, out, _ = run_cli(
        capsys, "add", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "5,1,0", "--point", "0,1,5",
    )
    assert rc == 0
    expected = add(params, ProjPoint.of(params.ring, 5, 1, 0),
                   ProjPoint.of(params.ring, 0, 1, 5))
    assert out.strip() == f"({expected.x} : {expected.y} : {expected.z})"


def test_mul_full_order_gives_identity(capsys):
    # (5 : 1 : 0) has order 25 when e = 3, so 25 * P is the identity.
    rc, out, _ = run_cli(
        capsys, "mul", "-p", "5", "-e", "3", "-A", "2", "-B", "1",
        "--point", "5,1,0", "-n", "25",
    )
    assert rc == 0
    assert out.strip() == "(0 : 1 : 0)"


def test_mul_json_round_trip(capsys):
    params = params_for(5, 3, 2, 1)
    rc, out, _ = run_cli(
        capsys, "mul", "-p", "5", "-e", "3", "-A", "2", "-B", "1",
        "--point", "5,1,0", "-n", "7", "--format", "json",
    )
    assert rc == 0
    obj = json.loads(out)
    assert obj["n"] == 7
    decoded = ProjPoint.from_json(params.ring, obj["multiple"])
    pt = ProjPoint.of(params.ring, 5, 1, 0)
    assert decoded == scalar_mul(params, 7, pt)


def test_order_of_infinity_generator(capsys):
    rc, out, _ = run_cli(
        capsys, "order", "-p", "5", "-e", "3", "-A", "2", "-B", "1",
        "--point", "5,1,0",
    )
    assert rc == 0
    assert out.strip() == "25"


def test_membership_member_and_nonmember_exit_codes(capsys):
    rc, out, _ = run_cli(
        capsys, "membership", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "0,1,1",
    )
    assert rc == 0
    assert "member" in out and "not a member" not in out

    rc, out, _ = run_cli(
        capsys, "membership", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "1,1,1",
    )
    assert rc == 1
    assert "not a member" in out


def test_membership_mixed_points_exit_one(capsys):
    rc, out, _ = run_cli(
        capsys, "membership", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "0,1,1", "--point", "1,1,1", "--format", "json",
    )
    assert rc == 1
    obj = json.loads(out)
    flags = [rec["member"] for rec in obj["members"]]
    assert flags == [True, False]


# ----------------------------------------------------------------------------
# structure subcommands
# ----------------------------------------------------------------------------


def test_stratify_matches_library(capsys):
    params = params_for(5, 2, 2, 1)
    pt = ProjPoint.of(params.ring, 0, 1, 1)
    expected = stratify(params, pt)
    rc, out, _ = run_cli(
        capsys, "stratify", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "0,1,1",
    )
    assert rc == 0
    assert out.strip() == f"t = {expected.val}"


def test_stratify_identity_is_a_precondition_error(capsys):
    # The identity is residue three-torsion, so its Hessian is not a unit.
    rc, out, err = run_cli(
        capsys, "stratify", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "0,1,0",
    )
    assert rc == 2
    assert out == ""
    assert err.startswith("error:")


def test_singular_curve_is_a_usage_error(capsys):
    rc, _, err = run_cli(
        capsys, "enumerate", "-p", "5", "-e", "2", "-A", "0", "-B", "0",
    )
    assert rc == 2
    assert "error:" in err


def test_decompose_infinity_point(capsys):
    params = params_for(5, 2, 2, 1)
    pt = ProjPoint.of(params.ring, 5, 1, 5)
    dec = infinity_decompose(params, pt)
    rc, out, _ = run_cli(
        capsys, "decompose", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "5,1,5", "--format", "json",
    )
    assert rc == 0
    obj = json.loads(out)
    assert obj == {"alpha": dec.alpha, "beta": dec.beta}


def test_decompose_affine_point_is_a_precondition_error(capsys):
    rc, _, err = run_cli(
        capsys, "decompose", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "0,1,1",
    )
    assert rc == 2
    assert "error:" in err


def test_layers_single_t_json(capsys):
    rc, out, _ = run_cli(
        capsys, "layers", "-p", "5", "-e", "3", "-A", "2", "-B", "1",
        "--t", "5", "--format", "json",
    )
    assert rc == 0
    obj = json.loads(out)
    assert len(obj["layers"]) == 1
    rep = obj["layers"][0]
    assert rep["t"] == 5
    assert rep["cardinality"] == 7 * 25
    assert rep["Z_t"] == 100
    assert rep["infinity_order"] == 25


def test_layers_all_t_text(capsys):
    rc, out, _ = run_cli(
        capsys, "layers", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    for line in lines:
        assert "Z_t=   0" in line


def test_torsion_fibers_json(capsys):
    rc, out, _ = run_cli(
        capsys, "torsion", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--format", "json",
    )
    assert rc == 0
    obj = json.loads(out)
    assert obj["q"] == 7
    sizes = sorted(rec["fiber_size"] for rec in obj["fibers"])
    assert sizes == [1, 5, 5, 5, 5, 5, 5]
    affine = [rec for rec in obj["fibers"] if "reduced_line" in rec]
    assert len(affine) == 6
    for rec in affine:
        assert rec["difference_group_size"] == 5
        assert len(rec["reduced_line"]) == 3


# ----------------------------------------------------------------------------
# verification, witnesses, classification
# ----------------------------------------------------------------------------


def test_verify_laws_suite_exits_zero(capsys):
    rc, out, _ = run_cli(
        capsys, "verify", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--suite", "laws",
    )
    assert rc == 0
    assert "VERIFIED" in out
    assert "FAIL" not in out


def test_verify_json_is_deterministic(capsys):
    argv = ("verify", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
            "--suite", "laws", "--seed", "3", "--format", "json")
    rc1, out1, _ = run_cli(capsys, *argv)
    rc2, out2, _ = run_cli(capsys, *argv)
    assert rc1 == rc2 == 0
    first, second = json.loads(out1), json.loads(out2)
    assert first == second
    assert first["verified"] is True
    assert all(rep["holds"] for rep in first["reports"])


def test_witness_exits_one(capsys):
    rc, out, _ = run_cli(
        capsys, "witness", "-p", "5", "-e", "3", "-A", "2", "-B", "1",
        "--type", "A",
    )
    assert rc == 1
    assert "associativity falsified" in out


def test_witness_json_breaks_associativity(capsys):
    params = params_for(5, 3, 2, 1)
    rc, out, _ = run_cli(
        capsys, "witness", "-p", "5", "-e", "3", "-A", "2", "-B", "1",
        "--type", "A", "--format", "json",
    )
    assert rc == 1
    obj = json.loads(out)
    assert obj["associates"] is False
    pts = [ProjPoint.from_json(params.ring, e) for e in obj["points"]]
    lhs = add(params, add(params, pts[0], pts[1]), pts[2])
    rhs = add(params, pts[0], add(params, pts[1], pts[2]))
    assert lhs != rhs
    assert ProjPoint.from_json(params.ring, obj["lhs"]) == lhs
    assert ProjPoint.from_json(params.ring, obj["rhs"]) == rhs


def test_classify_csv_output(capsys):
    rc, out, _ = run_cli(
        capsys, "classify", "--p-max", "5", "--size-max", "30", "--format", "csv",
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,e,A,B,q,order,is_group,invariants,method"
    assert len(lines) == 9
    group_rows = [ln for ln in lines[1:] if ",true," in ln]
    assert len(group_rows) == 2
    for row in group_rows:
        assert "5x15" in row


def test_classify_text_summary(capsys):
    rc, out, _ = run_cli(
        capsys, "classify", "--p-max", "5", "--size-max", "30",
    )
    assert rc == 0
    assert out.strip().splitlines()[-1] == "2 groups among 8 loops"


def test_enumerate_counts(capsys):
    rc, out, _ = run_cli(
        capsys, "enumerate", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--format", "json",
    )
    assert rc == 0
    obj = json.loads(out)
    assert obj["total"] == 175
    assert len(obj["points"]) == 175


# ----------------------------------------------------------------------------
# usage errors
# ----------------------------------------------------------------------------


def test_missing_required_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["mul", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
             "--point", "0,1,1"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_unknown_suite_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
             "--suite", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_malformed_point_exits_two(capsys):
    rc, _, err = run_cli(
        capsys, "order", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "1,2",
    )
    assert rc == 2
    assert "X,Y,Z" in err


def test_point_off_the_loop_exits_two(capsys):
    rc, _, err = run_cli(
        capsys, "order", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
        "--point", "1,1,1",
    )
    assert rc == 2
    assert "not on the loop" in err


def test_missing_point_exits_two(capsys):
    rc, _, err = run_cli(
        capsys, "add", "-p", "5", "-e", "2", "-A", "2", "-B", "1",
    )
    assert rc == 2
    assert "at least 2" in err
