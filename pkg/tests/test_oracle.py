import pytest

from src.errors import TooLarge
from src.model_impl.chi_mapping import as_pa
from src.model_impl.oracle import (
    candidate_partitions,
    check_naive_partition,
    coarsest_naive_partition_bruteforce,
    set_partitions,
)
from src.model_impl.refinement import refine_partition
from src.model_interface.partition import Partition
from src.model_interface.types import Semantics
from src.tools.corpus import load_corpus


@pytest.mark.parametrize("n,bell", [(0, 0), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_set_partitions_enumerates_bell_many(n, bell):
    parts = list(set_partitions(n))
    assert len(parts) == bell
    assert len(set(parts)) == bell
    assert all(part.covers(n) for part in parts)


def test_naive_conditions_on_a_small_chain():
    pa = as_pa(load_corpus("fig3_ab"))
    assert check_naive_partition(pa, Partition.from_blocks([[0, 1], [2]]))
    assert check_naive_partition(pa, Partition.discrete(3))
    # C cannot answer B's a step
    assert not check_naive_partition(pa, Partition.single(3))


def test_candidates_are_scanned_coarsest_first():
    pa = as_pa(load_corpus("fig3_ab"))
    sizes = [len(c.partition) for c in candidate_partitions(pa)]
    assert sizes == sorted(sizes)
    assert sum(c.valid for c in candidate_partitions(pa)) >= 2


def test_bruteforce_agrees_with_refinement():
    pa = as_pa(load_corpus("fig3_ab"))
    coarsest = coarsest_naive_partition_bruteforce(pa)
    assert coarsest == Partition.from_blocks([[0, 1], [2]])
    assert refine_partition(pa, Semantics.NAIVE).partition == coarsest


def test_bound_is_enforced(monkeypatch):
    pa = as_pa(load_corpus("fig6_rescale"))
    with pytest.raises(TooLarge):
        coarsest_naive_partition_bruteforce(pa, bound=4)
    monkeypatch.setenv("MABISIM_ORACLE_BOUND", "3")
    with pytest.raises(TooLarge):
        coarsest_naive_partition_bruteforce(pa)
