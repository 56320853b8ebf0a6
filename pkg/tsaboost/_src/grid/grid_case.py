"""Static network description and the case-file codec."""
import enum
import hashlib
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional
from typing import Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from tsaboost._src.exceptions import CaseParseError
from tsaboost._src.exceptions import CaseValidationError

BUNDLED_CASE = Path(__file__).parent / "data" / "ne39.case"

_HEADER = re.compile(r"^\[(?P<name>[A-Z]+)\](?:\s+count\s*=\s*(?P<count>\d+))?$")
_SECTIONS = ("SYSTEM", "BUS", "BRANCH", "GEN")
_ROW_WIDTH = {"BUS": 7, "BRANCH": 6, "GEN": 7}


class BusKind(enum.Enum):
    """bus type of the power-flow formulation"""

    SLACK = "SLACK"
    PV = "PV"
    PQ = "PQ"


class BranchStatus(enum.Enum):
    """switching state of a branch"""

    IN_SERVICE = 1
    OUT = 0


@dataclass(frozen=True)
class Bus:
    """network node, loads and shunts in p.u. on the system base"""

    id: int
    kind: BusKind
    p_load: float
    q_load: float
    g_shunt: float
    b_shunt: float
    v_setpoint: Optional[float]


@dataclass(frozen=True)
class Branch:
    """pi-model line or transformer, impedances in p.u."""

    index: int
    from_bus: int
    to_bus: int
    r: float
    x: float
    b_charging: float
    status: BranchStatus = BranchStatus.IN_SERVICE


@dataclass(frozen=True)
class Generator:
    """classical machine. `inertia_h` and `damping_d` are given on the machine base."""

    bus: int
    p_gen: float
    v_setpoint: float
    inertia_h: float
    damping_d: float
    xd_prime: float
    mva_base: float


@dataclass(frozen=True)
class GridCase:
    """Buses, branches and generators of a test system.

    Feature layouts and branch indices follow the order of `buses` and
    `branches` exactly as listed in the case file.
    """

    system_mva_base: float
    buses: Tuple[Bus, ...]
    branches: Tuple[Branch, ...]
    generators: Tuple[Generator, ...]

    @property
    def n_buses(self):
        """number of buses, a"""
        return len(self.buses)

    @property
    def n_branches(self):
        """number of branches, b"""
        return len(self.branches)

    @property
    def n_features(self):
        """length of the snapshot feature vector, 2a+2b"""
        return 2 * self.n_buses + 2 * self.n_branches

    @cached_property
    def bus_position(self):
        """dict mapping bus id to its 0-based position in case order"""
        return {bus.id: k for k, bus in enumerate(self.buses)}

    @cached_property
    def slack_position(self):
        """position of the slack bus"""
        return next(k for k, b in enumerate(self.buses) if b.kind is BusKind.SLACK)

    @cached_property
    def branch_ends(self):
        """(b, 2) int array of from/to bus positions"""
        pos = self.bus_position
        ends = [(pos[br.from_bus], pos[br.to_bus]) for br in self.branches]
        return np.array(ends, dtype=int).reshape(-1, 2)

    @cached_property
    def generator_positions(self):
        """bus position of every generator"""
        return np.array([self.bus_position[g.bus] for g in self.generators], dtype=int)

    def in_service_mask(self):
        """branch status mask of the case as listed"""
        return np.array(
            [br.status is BranchStatus.IN_SERVICE for br in self.branches], dtype=bool
        )


def _to_float(token, line_number, name):
    try:
        return float(token)
    except ValueError:
        raise CaseParseError(
            f"expected a real number for `{name}`, got {token!r}", line_number
        ) from None


def _to_int(token, line_number, name):
    try:
        return int(token)
    except ValueError:
        raise CaseParseError(
            f"expected an integer for `{name}`, got {token!r}", line_number
        ) from None


def _parse_status(token, line_number):
    key = token.upper()
    if key in ("1", "IN", "INSERVICE"):
        return BranchStatus.IN_SERVICE
    if key in ("0", "OUT"):
        return BranchStatus.OUT
    raise CaseParseError(f"unknown branch status {token!r}", line_number)


def parse_case(text: str) -> GridCase:
    """Parse case-file content into a validated `GridCase`.

    Parameters
    ----------
    text: str
        content with `[SYSTEM]`, `[BUS]`, `[BRANCH]` and `[GEN]` sections. A header
        may carry `count=<n>`, which is then checked against the number of rows.

    Returns
    -------
    GridCase

    Examples
    --------
    >>> from tsaboost._src.grid.grid_case import parse_case
    >>> case = parse_case('''
    ... [SYSTEM]
    ... mva_base=100
    ... [BUS]
    ... 1 SLACK 0 0 0 0 1.0
    ... 2 PQ 0.5 0 0 0 1.0
    ... [BRANCH]
    ... 1 2 0 0.1 0 1
    ... ''')
    >>> case.n_buses, case.n_branches, case.n_features
    (2, 1, 6)
    """
    section = None
    mva_base = None
    counts = {}
    rows = {"BUS": [], "BRANCH": [], "GEN": []}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            match = _HEADER.match(line)
            if match is None or match["name"] not in _SECTIONS:
                raise CaseParseError(f"unknown section header {line!r}", line_number)
            section = match["name"]
            if match["count"] is not None:
                counts[section] = int(match["count"])
            continue
        if section is None:
            raise CaseParseError("data before the first section header", line_number)
        if section == "SYSTEM":
            key, sep, value = line.partition("=")
            if not sep or key.strip() != "mva_base":
                raise CaseParseError(f"unknown system entry {line!r}", line_number)
            mva_base = _to_float(value.strip(), line_number, "mva_base")
            continue
        tokens = line.split()
        if len(tokens) != _ROW_WIDTH[section]:
            raise CaseParseError(
                f"{section} rows need {_ROW_WIDTH[section]} fields, got {len(tokens)}",
                line_number,
            )
        rows[section].append((line_number, tokens))

    buses = []
    for line_number, tok in rows["BUS"]:
        try:
            kind = BusKind(tok[1].upper())
        except ValueError:
            raise CaseParseError(f"unknown bus kind {tok[1]!r}", line_number) from None
        values = [_to_float(t, line_number, n) for t, n in zip(tok[2:], _BUS_FIELDS)]
        v_set = values[4] if kind is not BusKind.PQ else None
        buses.append(Bus(_to_int(tok[0], line_number, "id"), kind, *values[:4], v_set))

    branches = []
    for index, (line_number, tok) in enumerate(rows["BRANCH"]):
        f_bus = _to_int(tok[0], line_number, "from")
        t_bus = _to_int(tok[1], line_number, "to")
        r, x, b = (_to_float(t, line_number, n) for t, n in zip(tok[2:5], "rxb"))
        status = _parse_status(tok[5], line_number)
        branches.append(Branch(index, f_bus, t_bus, r, x, b, status))

    generators = []
    for line_number, tok in rows["GEN"]:
        values = [_to_float(t, line_number, n) for t, n in zip(tok[1:], _GEN_FIELDS)]
        generators.append(Generator(_to_int(tok[0], line_number, "bus"), *values))

    if mva_base is None:
        raise CaseValidationError("missing `mva_base` in the [SYSTEM] section")
    for name, expected in counts.items():
        found = 1 if name == "SYSTEM" else len(rows[name])
        if found != expected:
            raise CaseValidationError(
                f"section [{name}] declares count={expected} but holds {found} rows"
            )

    case = GridCase(mva_base, tuple(buses), tuple(branches), tuple(generators))
    validate_case(case)
    return case


_BUS_FIELDS = ("p_load", "q_load", "g_shunt", "b_shunt", "v_setpoint")
_GEN_FIELDS = ("p_gen", "v_setpoint", "h", "d", "xd_prime", "mva_base")


def validate_case(case: GridCase) -> None:
    """raise `CaseValidationError` if `case` violates a network invariant"""
    if case.system_mva_base <= 0:
        raise CaseValidationError("mva_base must be positive")
    if not case.buses:
        raise CaseValidationError("case holds no buses")

    seen = set()
    for bus in case.buses:
        if bus.id <= 0:
            raise CaseValidationError(f"bus id {bus.id} must be a positive integer")
        if bus.id in seen:
            raise CaseValidationError(f"duplicate bus id {bus.id}")
        seen.add(bus.id)
        if bus.kind is not BusKind.PQ and not (bus.v_setpoint or 0) > 0:
            raise CaseValidationError(f"bus {bus.id} needs a positive v_setpoint")

    slack = [b.id for b in case.buses if b.kind is BusKind.SLACK]
    if not slack:
        raise CaseValidationError("no slack bus")
    if len(slack) > 1:
        raise CaseValidationError(f"more than one slack bus: {slack}")

    for br in case.branches:
        for end in (br.from_bus, br.to_bus):
            if end not in seen:
                raise CaseValidationError(
                    f"branch {br.index} references unknown bus {end}"
                )
        if br.from_bus == br.to_bus:
            raise CaseValidationError(f"branch {br.index} connects bus {br.from_bus} to itself")
        if br.x == 0:
            raise CaseValidationError(f"branch {br.index} has zero reactance")

    kinds = {b.id: b.kind for b in case.buses}
    gen_buses = set()
    for gen in case.generators:
        if gen.bus not in seen:
            raise CaseValidationError(f"generator references unknown bus {gen.bus}")
        if kinds[gen.bus] is BusKind.PQ:
            raise CaseValidationError(f"generator at PQ bus {gen.bus}")
        if gen.bus in gen_buses:
            raise CaseValidationError(f"more than one generator at bus {gen.bus}")
        gen_buses.add(gen.bus)
        if gen.inertia_h <= 0 or gen.xd_prime <= 0 or gen.mva_base <= 0:
            raise CaseValidationError(
                f"generator at bus {gen.bus} needs positive h, xd_prime and mva_base"
            )

    n_islands = _count_islands(case.n_buses, case.branch_ends)
    if n_islands > 1:
        raise CaseValidationError(
            f"network splits into {n_islands} islands with all branches in service"
        )


def _count_islands(n_buses, ends):
    graph = coo_matrix(
        (np.ones(len(ends)), (ends[:, 0], ends[:, 1])), shape=(n_buses, n_buses)
    )
    n_islands, _ = connected_components(graph, directed=False)
    return n_islands


def islanding_branches(case: GridCase, in_service=None) -> np.ndarray:
    """
    Flag the in-service branches whose loss splits the network.

    Generator step-up branches and the links feeding radial pockets are flagged.

    Parameters
    ----------
    case: GridCase
    in_service: array_like of bool, optional
        branch status mask, default the case as listed

    Returns
    -------
    ndarray of bool, shape (b,)

    Examples
    --------
    >>> from tsaboost._src.grid.grid_case import islanding_branches, load_case
    >>> case = load_case()
    >>> flagged = islanding_branches(case)
    >>> sorted((case.branches[k].from_bus, case.branches[k].to_bus)
    ...        for k in flagged.nonzero()[0])[:3]
    [(2, 30), (6, 31), (10, 32)]
    """
    mask = case.in_service_mask() if in_service is None else np.asarray(in_service, bool)
    ends = case.branch_ends
    base = _count_islands(case.n_buses, ends[mask])
    flagged = np.zeros(case.n_branches, dtype=bool)
    for k in np.flatnonzero(mask):
        keep = mask.copy()
        keep[k] = False
        flagged[k] = _count_islands(case.n_buses, ends[keep]) > base
    return flagged


def format_case(case: GridCase) -> str:
    """canonical case-file text of `case`; `parse_case(format_case(c))` rebuilds `c`"""
    lines = ["[SYSTEM]", f"mva_base={case.system_mva_base!r}", ""]
    lines.append(f"[BUS] count={case.n_buses}")
    for b in case.buses:
        v_set = b.v_setpoint if b.v_setpoint is not None else 1.0
        lines.append(
            f"{b.id} {b.kind.value} {b.p_load!r} {b.q_load!r} "
            f"{b.g_shunt!r} {b.b_shunt!r} {v_set!r}"
        )
    lines.append("")
    lines.append(f"[BRANCH] count={case.n_branches}")
    for br in case.branches:
        lines.append(
            f"{br.from_bus} {br.to_bus} {br.r!r} {br.x!r} "
            f"{br.b_charging!r} {br.status.value}"
        )
    lines.append("")
    lines.append(f"[GEN] count={len(case.generators)}")
    for g in case.generators:
        lines.append(
            f"{g.bus} {g.p_gen!r} {g.v_setpoint!r} {g.inertia_h!r} "
            f"{g.damping_d!r} {g.xd_prime!r} {g.mva_base!r}"
        )
    return "\n".join(lines) + "\n"


def case_digest(case: GridCase) -> str:
    """SHA-256 hex digest of the canonical case text"""
    return hashlib.sha256(format_case(case).encode("utf-8")).hexdigest()


def load_case(path=None) -> GridCase:
    """read and parse a case file, `None` loads the bundled 39-bus case"""
    path = BUNDLED_CASE if path is None else Path(path)
    return parse_case(path.read_text(encoding="utf-8"))
