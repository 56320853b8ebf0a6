import numpy as np
import pytest

from tsaboost._src.exceptions import CaseParseError
from tsaboost._src.exceptions import CaseValidationError
from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.grid.grid_case import BranchStatus
from tsaboost._src.grid.grid_case import BusKind
from tsaboost._src.grid.grid_case import case_digest
from tsaboost._src.grid.grid_case import format_case
from tsaboost._src.grid.grid_case import islanding_branches
from tsaboost._src.grid.grid_case import load_case
from tsaboost._src.grid.grid_case import parse_case
from tsaboost._src.grid.grid_ybus import branch_flows
from tsaboost._src.grid.grid_ybus import build_ybus

THREE_BUS = """
# small meshed test system
[SYSTEM]
mva_base=100
[BUS] count=3
1 SLACK 0 0 0 0 1.02
2 PV 0.2 0.1 0 0 1.01
3 PQ 0.8 0.3 0 0.05 1.0
[BRANCH] count=3
1 2 0.01 0.1 0.02 1
2 3 0.01 0.12 0.02 1
1 3 0.02 0.2 0.0 IN
[GEN] count=2
1 0.5 1.02 5.0 1.0 0.2 100
2 0.5 1.01 4.0 1.0 0.25 100
"""


def _replace(old, new, text=THREE_BUS):
    assert old in text
    return text.replace(old, new)


def test_parse_three_bus():
    """sections, kinds and counts of a small case"""
    case = parse_case(THREE_BUS)
    assert case.system_mva_base == 100
    assert (case.n_buses, case.n_branches, case.n_features) == (3, 3, 12)
    assert [b.kind for b in case.buses] == [BusKind.SLACK, BusKind.PV, BusKind.PQ]
    assert case.buses[2].v_setpoint is None
    assert case.buses[2].b_shunt == 0.05
    assert case.slack_position == 0
    assert case.branches[2].status is BranchStatus.IN_SERVICE
    np.testing.assert_array_equal(case.branch_ends, [[0, 1], [1, 2], [0, 2]])
    np.testing.assert_array_equal(case.generator_positions, [0, 1])


def test_bundled_case_layout(case39):
    """the bundled system has 39 buses, 46 branches and 10 machines"""
    assert (case39.n_buses, case39.n_branches, case39.n_features) == (39, 46, 170)
    assert len(case39.generators) == 10
    assert case39.buses[case39.slack_position].id == 31
    assert case39.bus_position[8] == 7
    touched = np.flatnonzero((case39.branch_ends == 7).any(axis=1))
    np.testing.assert_array_equal(touched, [10, 14, 15])


def test_format_case_reparses(case39):
    """the canonical text rebuilds an equal case with an equal digest"""
    again = parse_case(format_case(case39))
    assert again == case39
    assert case_digest(again) == case_digest(case39)


def test_digest_changes_with_content():
    """a changed impedance changes the digest"""
    a = parse_case(THREE_BUS)
    b = parse_case(_replace("2 3 0.01 0.12", "2 3 0.01 0.13"))
    assert case_digest(a) != case_digest(b)
    assert len(case_digest(a)) == 64


def test_load_case_path(tmp_path):
    """load_case reads a file from disk"""
    path = tmp_path / "three.case"
    path.write_text(THREE_BUS)
    assert load_case(path) == parse_case(THREE_BUS)


@pytest.mark.parametrize(
    "old, new, line",
    [
        ("1 SLACK 0 0 0 0 1.02", "1 SLACK 0 0 0 0 high", 6),
        ("3 PQ 0.8 0.3 0 0.05 1.0", "3 PQ 0.8 0.3 0 0.05", 8),
        ("3 PQ 0.8", "3 XX 0.8", 8),
        ("1 3 0.02 0.2 0.0 IN", "1 3 0.02 0.2 0.0 maybe", 12),
        ("mva_base=100", "base=100", 4),
        ("[GEN] count=2", "[GENERATORS]", 13),
        ("# small meshed test system", "1 2 3", 2),
    ],
)
def test_parse_errors_name_the_line(old, new, line):
    """malformed rows raise CaseParseError with the 1-based line number"""
    with pytest.raises(CaseParseError) as excinfo:
        parse_case(_replace(old, new))
    assert excinfo.value.line_number == line
    assert str(excinfo.value).startswith(f"line {line}:")


@pytest.mark.parametrize(
    "old, new",
    [
        ("[BUS] count=3", "[BUS] count=4"),
        ("mva_base=100", ""),
        ("2 PV 0.2", "2 SLACK 0.2"),
        ("2 3 0.01 0.12", "2 3 0.01 0.0"),
        ("2 3 0.01 0.12", "2 7 0.01 0.12"),
        ("2 3 0.01 0.12", "2 2 0.01 0.12"),
        ("2 0.5 1.01 4.0", "3 0.5 1.01 4.0"),
        ("2 0.5 1.01 4.0", "1 0.5 1.01 4.0"),
        ("2 0.5 1.01 4.0 1.0 0.25", "2 0.5 1.01 0.0 1.0 0.25"),
        ("1 SLACK 0 0 0 0 1.02", "1 SLACK 0 0 0 0 0"),
    ],
)
def test_validation_errors(old, new):
    """parsed cases violating a network invariant raise CaseValidationError"""
    with pytest.raises(CaseValidationError):
        parse_case(_replace(old, new))


def test_islanded_case():
    """a bus without branches splits the network"""
    text = _replace("[BUS] count=3", "[BUS] count=4")
    text = _replace("3 PQ 0.8 0.3 0 0.05 1.0", "3 PQ 0.8 0.3 0 0.05 1.0\n4 PQ 0 0 0 0 1", text)
    with pytest.raises(CaseValidationError, match="islands"):
        parse_case(text)


def test_ybus_symmetry_and_charging(case39):
    """Ybus is symmetric and its row sums hold only shunts and line charging"""
    ybus = build_ybus(case39)
    np.testing.assert_allclose(ybus, ybus.T)
    charging = np.zeros(case39.n_buses)
    for br, (f, t) in zip(case39.branches, case39.branch_ends):
        charging[f] += br.b_charging / 2
        charging[t] += br.b_charging / 2
    np.testing.assert_allclose(ybus.sum(axis=1).imag, charging, atol=1e-9)


def test_ybus_outage_removes_stamp():
    """an out-of-service branch leaves no off-diagonal entry"""
    case = parse_case(THREE_BUS)
    mask = np.array([True, True, False])
    ybus = build_ybus(case, mask)
    assert ybus[0, 2] == 0
    assert ybus[0, 1] != 0
    with pytest.raises(TsaBadInputShape):
        build_ybus(case, [True, False])


def test_branch_flows_outage_reports_zero():
    """flows of out-of-service branches are zero, bad shapes raise"""
    case = parse_case(THREE_BUS)
    v = np.array([1.02, 1.01 * np.exp(-0.05j), 0.97 * np.exp(-0.1j)])
    p, q = branch_flows(case, v, [True, False, True])
    assert p[1] == 0 and q[1] == 0
    assert p[0] > 0
    with pytest.raises(TsaBadInputShape):
        branch_flows(case, v[:2])


def test_islanding_branches_bundled(case39):
    """generator step-ups and the links feeding radial pockets split the network"""
    flagged = islanding_branches(case39)
    pairs = {
        (case39.branches[k].from_bus, case39.branches[k].to_bus)
        for k in np.flatnonzero(flagged)
    }
    assert pairs == {
        (2, 30),
        (6, 31),
        (10, 32),
        (16, 19),
        (19, 20),
        (19, 33),
        (20, 34),
        (22, 35),
        (23, 36),
        (25, 37),
        (29, 38),
    }


def test_islanding_branches_mesh_and_outage():
    """a ring has no islanding branch until one of its branches is out"""
    case = parse_case(THREE_BUS)
    np.testing.assert_array_equal(islanding_branches(case), [False, False, False])
    np.testing.assert_array_equal(
        islanding_branches(case, [True, True, False]), [True, True, False]
    )
