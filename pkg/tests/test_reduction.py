import itertools

import numpy as np
import pytest

from helpers import random_maxcut
from polarize.errors import MaxcutFormatError, SizeCapError
from polarize.reduction import (
    MaxcutGraph,
    cut_value,
    expected_bippol,
    load_maxcut,
    maxcut_bruteforce,
    parse_maxcut,
    recover_cut,
    reduce,
)
from polarize.solvers import solve_bnb, solve_exhaustive


def _product_maxcut(gc: MaxcutGraph) -> int:
    """独立的第二种枚举顺序"""
    return max((cut_value(gc, bits) for bits in itertools.product([0, 1], repeat=gc.n)), default=0)


def test_reduce_k3(k3):
    g = reduce(k3)
    assert g.node_count == 5
    assert g.edge_count == 6
    assert all(e.w == -0.5 for e in g.edges)
    assert g.s == (0.0, 0.0, 0.0, -1.0, 1.0)
    assert [node.id for node in g.nodes][-2:] == ["u-", "u+"]
    # 锚点是孤立点
    assert all(e.src < 3 and e.dst < 3 for e in g.edges)


def test_k3_end_to_end(k3):
    solved = solve_exhaustive(reduce(k3))
    assert solved.bippol == pytest.approx(7 / 75, abs=1e-12)
    assert recover_cut(k3, solved) == 2


def test_empty_graph():
    gc = MaxcutGraph(n=4, edges=())
    solved = solve_exhaustive(reduce(gc))
    assert solved.bippol == pytest.approx(2 / 36, abs=1e-12)
    assert recover_cut(gc, solved) == 0
    assert maxcut_bruteforce(gc)[0] == 0


def test_single_edge_golden():
    gc = MaxcutGraph(n=2, edges=((0, 1),))
    solved = solve_exhaustive(reduce(gc))
    assert solved.bippol == pytest.approx(0.15625, abs=1e-12)
    assert recover_cut(gc, solved) == 1


def test_bruteforce_small_cases(k3):
    assert maxcut_bruteforce(k3)[0] == 2
    path = MaxcutGraph(n=3, edges=((0, 1), (1, 2)))
    cut, sides = maxcut_bruteforce(path)
    assert cut == 2
    assert cut_value(path, sides) == 2


def test_bruteforce_agrees_with_product_enumeration():
    rng = np.random.default_rng(101)
    for _ in range(100):
        gc = random_maxcut(rng, int(rng.integers(1, 13)), max_degree=4)
        cut, sides = maxcut_bruteforce(gc)
        assert cut == _product_maxcut(gc)
        assert cut_value(gc, sides) == cut


def test_bruteforce_cap():
    with pytest.raises(SizeCapError):
        maxcut_bruteforce(MaxcutGraph(n=21, edges=()))


def test_reduction_equivalence_on_random_graphs():
    rng = np.random.default_rng(202)
    for _ in range(100):
        gc = random_maxcut(rng, int(rng.integers(1, 11)), max_degree=3)
        assert gc.max_degree() <= 3
        solved = solve_exhaustive(reduce(gc))
        cut = maxcut_bruteforce(gc)[0]
        assert recover_cut(gc, solved) == cut
        assert solved.bippol == pytest.approx(expected_bippol(gc, cut), abs=1e-12)


def test_bnb_recovers_maxcut():
    rng = np.random.default_rng(303)
    for _ in range(20):
        gc = random_maxcut(rng, int(rng.integers(2, 11)))
        assert recover_cut(gc, solve_bnb(reduce(gc))) == maxcut_bruteforce(gc)[0]


def test_to_networkx(k3):
    graph = k3.to_networkx()
    assert graph.number_of_nodes() == 3
    assert graph.number_of_edges() == 3


class TestParse:
    def test_file(self, data_dir, k3):
        assert load_maxcut(data_dir / "k3.txt") == k3

    def test_comments_and_blank_lines(self):
        gc = parse_maxcut("# triangle\n3 2\n\n0 1\n1 2\n")
        assert gc.edges == ((0, 1), (1, 2))

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3\n",
            "3 2\n0 1\n",
            "3 1\n0 0\n",
            "3 2\n0 1\n1 0\n",
            "3 1\n0 5\n",
            "3 1\na b\n",
        ],
    )
    def test_invalid(self, text):
        with pytest.raises(MaxcutFormatError):
            parse_maxcut(text)
