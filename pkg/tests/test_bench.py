import xml.etree.ElementTree as ET

import numpy as np
import pytest

from polarize.bench import (
    CSV_HEADER,
    BenchBudget,
    ExperimentRecord,
    GridSpec,
    emit_csv,
    emit_plot,
    format_csv,
    load_csv,
    lower_median,
    min_median_max,
    quality_table,
    run_matrix,
    run_matrix_sync,
    summarize,
)
from polarize.errors import OutputError, UsageError
from polarize.generator import generate, make_gen_config
from polarize.solvers import solve

SVG = "{http://www.w3.org/2000/svg}"

GOLDEN_RECORDS = [
    ExperimentRecord(0.4, 25, 0, 12345, "bnb", 0.5, None, 12.5, 40, False),
    ExperimentRecord(0.4, 25, 0, 12345, "ls", 0.5, 1.0, 3.25, 7, False),
    ExperimentRecord(1.0, 25, 0, 2**64 - 1, "bnb", 0.75, None, 0.0, 1, True),
    ExperimentRecord(1.0, 25, 0, 2**64 - 1, "ls", 0.625, None, 1.5, 4, False),
]


def _synthetic(alpha, m, rep, solver, bippol, nodes=10, ratio=None):
    return ExperimentRecord(alpha, m, rep, rep, solver, bippol, ratio, float(rep), nodes, False)


class TestMedian:
    def test_odd(self):
        assert lower_median([3, 1, 2]) == 2

    def test_even_takes_lower_middle(self):
        assert lower_median([1, 2, 3, 4]) == 2

    def test_empty(self):
        with pytest.raises(ValueError):
            lower_median([])

    def test_matches_sort_oracle(self):
        rng = np.random.default_rng(4)
        values = [float(x) for x in rng.uniform(0.0, 0.07, size=50)]
        ordered = sorted(values)
        assert tuple(min_median_max(values)) == (ordered[0], ordered[24], ordered[49])


class TestSummarize:
    def test_groups_and_spreads(self):
        records = []
        for rep, value in enumerate([0.3, 0.1, 0.2, 0.4]):
            records.append(_synthetic(0.4, 25, rep, "bnb", value, nodes=rep + 1))
            records.append(_synthetic(0.4, 25, rep, "ls", value, nodes=2, ratio=1.0))
        records.append(_synthetic(1.0, 25, 0, "bnb", 0.7))

        summary = summarize(records)
        assert [(cell.alpha, cell.m, cell.solver) for cell in summary] == [
            (0.4, 25, "bnb"),
            (0.4, 25, "ls"),
            (1.0, 25, "bnb"),
        ]
        bnb = summary[0]
        assert bnb.count == 4
        assert tuple(bnb.bippol) == (0.1, 0.2, 0.4)
        assert tuple(bnb.search_nodes) == (1, 2, 4)
        assert bnb.ls_ratio is None
        assert tuple(summary[1].ls_ratio) == (1.0, 1.0, 1.0)

    def test_empty(self):
        with pytest.raises(ValueError):
            summarize([])

    def test_quality_table_uses_same_instances(self):
        records = []
        for rep, (exact, ratio) in enumerate([(0.3, 0.99), (0.1, 1.0), (0.2, 0.98)]):
            records.append(_synthetic(0.4, 25, rep, "bnb", exact))
            records.append(_synthetic(0.4, 25, rep, "ls", exact * ratio, ratio=ratio))
        (row,) = quality_table(records)
        assert tuple(row.bippol) == (0.1, 0.2, 0.3)
        assert row.ls_ratio == (1.0, 0.98, 0.99)


class TestCsv:
    def test_golden_file(self, data_dir):
        assert format_csv(GOLDEN_RECORDS) == (data_dir / "golden_records.csv").read_text(encoding="utf-8")

    def test_empty_is_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv([], path)
        assert path.read_text(encoding="utf-8") == CSV_HEADER + "\n"

    def test_load_round_trip(self, data_dir):
        assert load_csv(data_dir / "golden_records.csv") == GOLDEN_RECORDS

    def test_unwritable(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x", encoding="utf-8")
        with pytest.raises(OutputError):
            emit_csv(GOLDEN_RECORDS, blocker / "out.csv")


def test_plot_has_one_point_per_series(tmp_path):
    records = [_synthetic(0.4, 25, 0, "bnb", 0.05), _synthetic(0.4, 25, 0, "ls", 0.05, ratio=1.0)]
    path = tmp_path / "plot.svg"
    emit_plot(summarize(records), path)

    root = ET.parse(path).getroot()
    for gid in ("time-m25", "nodes-m25", "bippol-m25"):
        group = root.find(f".//{SVG}g[@id='{gid}']")
        assert group is not None
        assert len(group.findall(f".//{SVG}use")) == 1


def test_grid_validation():
    with pytest.raises(UsageError):
        GridSpec(alphas=(0.0,), sizes=(10,), replicates=1)
    with pytest.raises(UsageError):
        GridSpec(alphas=(0.5,), sizes=(10,), replicates=0)
    with pytest.raises(UsageError):
        BenchBudget(timeout_s=0)


@pytest.mark.asyncio
async def test_run_matrix_records():
    grid = GridSpec(alphas=(0.4, 1.0), sizes=(8, 10), replicates=2, seed=3)
    records = await run_matrix(grid, ["bnb", "ls"], BenchBudget(timeout_s=30), workers=1)

    assert len(records) == 2 * 2 * 2 * 2
    keys = [(r.alpha, r.m, r.rep, r.solver) for r in records]
    assert keys == sorted(keys, key=lambda k: ([0.4, 1.0].index(k[0]), k[1], k[2], ["bnb", "ls"].index(k[3])))
    for r in records:
        assert 0.0 <= r.bippol <= 1.0
        assert not r.timeout
        if r.solver == "ls":
            assert 0.0 <= r.ls_ratio <= 1.0 + 1e-9
        else:
            assert r.ls_ratio is None

    # 每条记录都可由种子复现
    for r in records:
        g = generate(make_gen_config(r.m, r.alpha, r.seed))
        assert solve(g, r.solver, seed=r.seed).bippol == r.bippol


@pytest.mark.asyncio
async def test_timeouts_are_recorded_not_dropped():
    grid = GridSpec(alphas=(0.05,), sizes=(20,), replicates=2, seed=1)
    records = await run_matrix(grid, ["bnb", "ls"], BenchBudget(timeout_s=1e-9), workers=1)
    assert len(records) == 4
    assert all(r.timeout for r in records if r.solver == "bnb")
    assert all(r.ls_ratio is None for r in records if r.solver == "ls")


@pytest.mark.asyncio
async def test_exhaustive_budget_is_honoured():
    grid = GridSpec(alphas=(0.05,), sizes=(14,), replicates=2, seed=1)
    records = await run_matrix(grid, ["exhaustive", "ls"], BenchBudget(timeout_s=1e-9), workers=1)
    assert len(records) == 4
    assert all(r.timeout for r in records if r.solver == "exhaustive")
    assert all(r.search_nodes < 1 << 14 for r in records if r.solver == "exhaustive")
    assert all(r.ls_ratio is None for r in records if r.solver == "ls")


def test_deterministic_across_runs_and_workers():
    grid = GridSpec(alphas=(0.14, 0.7), sizes=(9,), replicates=3, seed=11)
    first = format_csv(run_matrix_sync(grid, ["bnb", "ls"], workers=1, record_time=False))
    second = format_csv(run_matrix_sync(grid, ["bnb", "ls"], workers=1, record_time=False))
    pooled = format_csv(run_matrix_sync(grid, ["bnb", "ls"], workers=2, record_time=False))
    assert first == second == pooled


def test_unknown_solver():
    grid = GridSpec(alphas=(0.5,), sizes=(5,), replicates=1)
    with pytest.raises(UsageError):
        run_matrix_sync(grid, ["bnb", "magic"], workers=1)


TABLE_MEDIANS = {0.4: 0.0497, 0.7: 0.2487, 1.0: 0.6631}
SMALL_ALPHA_MEDIANS = {0.05: 0.0003, 0.08: 0.0008, 0.11: 0.0015, 0.14: 0.0025}


@pytest.fixture(scope="module")
def replication_records():
    grid = GridSpec(alphas=(0.05, 0.08, 0.11, 0.14, 0.4, 0.7, 1.0), sizes=(25,), replicates=50, seed=2024)
    return run_matrix_sync(grid, ["bnb", "ls"], BenchBudget(timeout_s=60), workers=0)


def _cells(records, solver):
    return {(cell.alpha, cell.m): cell for cell in summarize(records) if cell.solver == solver}


@pytest.mark.slow
def test_table_medians(replication_records):
    cells = _cells(replication_records, "bnb")
    for alpha, expected in TABLE_MEDIANS.items():
        assert cells[(alpha, 25)].bippol.median == pytest.approx(expected, rel=0.15)
    for alpha, expected in SMALL_ALPHA_MEDIANS.items():
        assert expected / 2 <= cells[(alpha, 25)].bippol.median <= expected * 2


@pytest.mark.slow
def test_table_spread_at_alpha_04(replication_records):
    spread = _cells(replication_records, "bnb")[(0.4, 25)].bippol
    assert spread.min == pytest.approx(0.0359, rel=0.25)
    assert spread.max == pytest.approx(0.0611, rel=0.25)


@pytest.mark.slow
def test_median_polarization_grows_with_alpha(replication_records):
    cells = _cells(replication_records, "bnb")
    medians = [cells[(alpha, 25)].bippol.median for alpha in (0.05, 0.08, 0.11, 0.14, 0.4, 0.7, 1.0)]
    assert medians == sorted(medians)


@pytest.mark.slow
def test_hardness_trend(replication_records):
    cells = _cells(replication_records, "bnb")
    easiest = cells[(1.0, 25)].search_nodes.median
    assert easiest >= 1
    assert cells[(0.05, 25)].search_nodes.median >= 10 * easiest
    nodes = [cells[(alpha, 25)].search_nodes.median for alpha in (0.14, 0.4, 0.7, 1.0)]
    assert nodes == sorted(nodes, reverse=True)


def _check_ls_ratios(records, m):
    cells = _cells(records, "ls")
    for alpha in (0.4, 0.7, 1.0):
        ratio = cells[(alpha, m)].ls_ratio
        assert ratio is not None
        assert ratio.median == pytest.approx(1.0, abs=1e-9)
    for alpha in (0.05, 0.08, 0.11, 0.14):
        ratio = cells[(alpha, m)].ls_ratio
        if ratio is not None:
            assert ratio.median >= 0.998


@pytest.mark.slow
def test_ls_ratio_on_replication_grid(replication_records):
    _check_ls_ratios(replication_records, 25)
    for cell in _cells(replication_records, "ls").values():
        if cell.ls_ratio is not None:
            assert cell.ls_ratio.min >= 0.99
    rows = {(row.m, row.alpha): row for row in quality_table(replication_records)}
    assert rows[(25, 1.0)].ls_ratio == pytest.approx((1.0, 1.0, 1.0), abs=1e-9)


@pytest.mark.slow
def test_ls_ratio_at_forty_nodes():
    grid = GridSpec(alphas=(0.05, 0.08, 0.11, 0.14, 0.4, 0.7, 1.0), sizes=(40,), replicates=50, seed=2025)
    records = run_matrix_sync(grid, ["bnb", "ls"], BenchBudget(timeout_s=60), workers=0)
    _check_ls_ratios(records, 40)
