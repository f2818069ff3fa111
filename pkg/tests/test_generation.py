import pytest

from hyperspec import kernels
from hyperspec.generation import (
    canonical_form, census, census_feasible, class_masks, half_sum_closure, iter_hypergraphs,
    label_class_count, label_class_search, mask_to_hypergraph, minimise_specimen,
    orbit_count_bruteforce, trees,
)
from hyperspec.hypergraph import (
    find_half_sum_labeling, find_odd_bipartition, is_connected, is_half_sum_labeling,
)


@pytest.mark.parametrize("k, n, total", [(2, 4, 11), (2, 5, 34), (3, 5, 34), (4, 6, 156)])
def test_iter_counts(k, n, total):
    assert sum(1 for _ in iter_hypergraphs(k, n, connected=False)) == total


def test_iter_matches_orbits():
    assert sum(1 for _ in iter_hypergraphs(3, 5, connected=False)) == orbit_count_bruteforce(3, 5)


def test_trees():
    assert [len(trees(n)) for n in range(2, 8)] == [1, 1, 2, 3, 6, 11]


def test_canonical_form_relabel():
    a = ((1, 2), (2, 3), (3, 4))
    b = ((2, 4), (1, 4), (1, 3))
    assert canonical_form(4, a) == canonical_form(4, b)
    assert canonical_form(4, a) != canonical_form(4, ((1, 2), (1, 3), (1, 4)))


@pytest.mark.parametrize("k, n", [(4, 6), (4, 5), (2, 5), (3, 5)])
def test_census_matches_generation(k, n):
    """The bitmask census and the canonical-form generator see the same classes."""
    c = census(k, n)
    both = half = odd = neither = 0
    for H in iter_hypergraphs(k, n):
        if H.m == 0:
            continue
        c1 = k % 2 == 0 and find_odd_bipartition(H) is not None
        c4 = find_half_sum_labeling(H) is not None
        both += c1 and c4
        half += c4 and not c1
        odd += c1 and not c4
        neither += not (c1 or c4)
    assert (c.both, c.half_sum_only, c.odd_bip_only, c.neither) == (both, half, odd, neither)
    assert c.connected == both + half + odd + neither
    assert c.violations == 0


def test_complement_masks():
    masks, kp, comp = class_masks(4, 6)
    assert (kp, comp, len(masks)) == (2, True, 156)
    H = mask_to_hypergraph(int(masks[-1]), 4, 6, kp, comp)
    assert H.k == 4
    assert class_masks(3, 3)[0].tolist() == [0, 1]


def test_census_specimens_are_specimens():
    c = census(4, 6, keep=5)
    assert c.half_sum_only == 13
    for mask in c.specimen_masks:
        H = c.hypergraph(mask)
        assert is_connected(H)
        assert find_odd_bipartition(H) is None
        assert find_half_sum_labeling(H) is not None


def test_feasibility():
    assert census_feasible(4, 7, "cython")
    assert not census_feasible(4, 7, "python")
    assert not census_feasible(6, 9, "cython")


def test_label_search():
    assert label_class_count(4, 6) == 35 + 56 + 84
    cert = label_class_search(4, 6)
    assert cert.found and cert.classes_checked == label_class_count(4, 6)
    for H, f in cert.specimens:
        assert is_half_sum_labeling(H, f) and find_odd_bipartition(H) is None
        Hm, fm = minimise_specimen(H, f)
        assert is_connected(Hm) and is_half_sum_labeling(Hm, fm)
        assert find_odd_bipartition(Hm) is None and Hm.m <= H.m


def test_label_search_k6_none():
    assert not label_class_search(6, 8).found
    assert label_class_search(3, 5).classes_checked == 0


def test_closure():
    E = half_sum_closure(4, (0, 0, 1, 1, 2, 3))
    assert (1, 2, 3, 4) in E.edges and is_half_sum_labeling(E, (0, 0, 1, 1, 2, 3))
