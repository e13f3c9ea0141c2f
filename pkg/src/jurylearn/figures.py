"""Deterministic data series behind the standard plots, as CSV tables.

Each figure id maps to one table:

1. majority probability P(n, p) for n = 1, 3, 5, 7, 91 over p in [1/2, 1]
2. fixed budget, single voter (rate 1) vs three voters at rates 1 and 2
3. same comparison at group rates 2.25 and 3
4. cost of reaching group competence 0.8 vs group size, for rate rules
   1 (sub-critical), the critical rate, and twice the critical rate
5. concave (power 0.55) and convex (power 2) group profiles vs a linear
   single voter, individual and group competences
6. plateau profile (rate 1, cap 2/3) for one and three voters
7. global mean-drift scenario ``drift3``: individual paths and group curve
8. the three windowed scenarios side by side (consensus, low start,
   fast leader)

All grids are uniform with 512 points unless the table is a trajectory,
which is emitted at full integration resolution.
"""

from __future__ import annotations

from .csvio import CsvTable
from .dynamics import integrate, load_scenario, trajectory_table
from .errors import DomainError
from .profiles import LinearProfile, PlateauProfile, PowerProfile
from .tradeoff import cost_curve, critical_group_rate
from .votemath import majority_prob_homogeneous

__all__ = ["FIGURE_IDS", "figure_table"]

GRID_POINTS = 512


def _grid(t_max: float, points: int = GRID_POINTS) -> list[float]:
    return [t_max * i / (points - 1) for i in range(points)]


def _figure_probability_curves() -> CsvTable:
    sizes = (1, 3, 5, 7, 91)
    header = ("p",) + tuple(f"P_{n}" for n in sizes)
    rows = []
    for i in range(GRID_POINTS):
        p = 0.5 + 0.5 * i / (GRID_POINTS - 1)
        rows.append((p,) + tuple(majority_prob_homogeneous(n, p) for n in sizes))
    return CsvTable(header, rows)


def _fixed_budget_table(group_rates: tuple[float, ...], t_max: float) -> CsvTable:
    single = LinearProfile(1.0)
    header = ("T", "P1") + tuple(f"P3_c{c}" for c in group_rates)
    rows = []
    for t in _grid(t_max):
        row = [t, single.evaluate(t)]
        for c in group_rates:
            row.append(majority_prob_homogeneous(3, LinearProfile(c).evaluate(t / 3)))
        rows.append(tuple(row))
    return CsvTable(header, rows)


def _figure_cost_regimes() -> CsvTable:
    ns = list(range(1, 43, 2))
    sweeps = {
        "cost_rate1": lambda n: 1.0,
        "cost_critical": lambda n: float(critical_group_rate(n)),
        "cost_2x_critical": lambda n: 2.0 * float(critical_group_rate(n)),
    }
    columns = {name: dict(cost_curve(0.8, ns, rule)) for name, rule in sweeps.items()}
    header = ("n",) + tuple(sweeps)
    rows = [(n,) + tuple(columns[name][n] for name in sweeps) for n in ns]
    return CsvTable(header, rows)


def _figure_power_profiles() -> CsvTable:
    single = LinearProfile(1.0)
    concave = PowerProfile(0.55)
    convex = PowerProfile(2.0)
    header = ("T", "P1", "p3_concave", "P3_concave", "p3_convex", "P3_convex")
    rows = []
    for t in _grid(1.2):
        rows.append(
            (
                t,
                single.evaluate(t),
                concave.evaluate(t / 3),
                majority_prob_homogeneous(3, concave.evaluate(t / 3)),
                convex.evaluate(t / 3),
                majority_prob_homogeneous(3, convex.evaluate(t / 3)),
            )
        )
    return CsvTable(header, rows)


def _figure_plateau() -> CsvTable:
    profile = PlateauProfile(rate=1.0, cap=2.0 / 3.0)
    header = ("T", "P1", "p3", "P3")
    rows = []
    for t in _grid(1.0):
        rows.append(
            (
                t,
                profile.evaluate(t),
                profile.evaluate(t / 3),
                majority_prob_homogeneous(3, profile.evaluate(t / 3)),
            )
        )
    return CsvTable(header, rows)


def _figure_mean_drift() -> CsvTable:
    return trajectory_table(integrate(load_scenario("drift3")))


def _figure_windowed() -> CsvTable:
    scenarios = {
        "consensus": "window4-consensus",
        "lowstart": "window4-lowstart",
        "fastleader": "window4-fastleader",
    }
    trajectories = {tag: integrate(load_scenario(name)) for tag, name in scenarios.items()}
    first = next(iter(trajectories.values()))
    header: list[str] = ["t"]
    for tag, traj in trajectories.items():
        header.extend(f"{tag}_p{i}" for i in range(1, traj.config.n + 1))
        header.append(f"{tag}_P_group")
    rows = []
    for k, t in enumerate(first.times):
        row: list[float] = [t]
        for traj in trajectories.values():
            row.extend(traj.states[k])
            row.append(traj.group_curve[k])
        rows.append(tuple(row))
    return CsvTable(tuple(header), rows)


_BUILDERS = {
    1: _figure_probability_curves,
    2: lambda: _fixed_budget_table((1.0, 2.0), t_max=1.6),
    3: lambda: _fixed_budget_table((2.25, 3.0), t_max=1.0),
    4: _figure_cost_regimes,
    5: _figure_power_profiles,
    6: _figure_plateau,
    7: _figure_mean_drift,
    8: _figure_windowed,
}

FIGURE_IDS = tuple(sorted(_BUILDERS))


def figure_table(fig_id: int) -> CsvTable:
    """Build the data series for one figure id (see module docstring)."""
    try:
        builder = _BUILDERS[int(fig_id)]
    except (KeyError, ValueError):
        raise DomainError(f"figure id must be one of {FIGURE_IDS}, got {fig_id!r}") from None
    return builder()
