import random
from itertools import combinations

import pytest
from rainbowsets.exceptions import ExtractionError
from rainbowsets.extract import (
    Adjacency, SpineContext, claim_adjacency, decomposition_tree, distance_vector,
    extract_bounded_expansion, extract_treedepth, extract_treedepth_graph,
    induced_matching_problems, rainbow_induced_matching, subdivision_distances, t_split_level,
)
from rainbowsets.family import IndependentFamily
from rainbowsets.forest import RootedForest, chain_forest, embeds_in_closure
from rainbowsets.graph import (
    Graph, complete_multipartite, disjoint_union, empty_graph, path_graph, power, star_graph,
)
from rainbowsets.oracle import find_rainbow_bruteforce

from instances import claim_audit, random_instance, root_path_instance
from oracles import independent_n_sets, random_graph, rainbow_exists_oracle


# --- split level and distance vectors ---------------------------------------

def test_t_split_level_examples():
    star = RootedForest([None, 0, 0, 0])
    assert t_split_level(star, [[1], [2]]) == 1
    assert t_split_level(chain_forest(4), [[0, 2], [1, 3]]) == 4
    # root 0 - v 1, v has children 2 and 3
    T = RootedForest([None, 0, 1, 1])
    assert t_split_level(T, [[2], [3]]) == 2
    assert t_split_level(T, [[2]]) == 3
    with pytest.raises(ValueError):
        t_split_level(RootedForest([None, None]), [[0]])
    with pytest.raises(ValueError):
        t_split_level(T, [[7]])


def test_distance_vector_examples():
    ctx = SpineContext(chain_forest(5), path_graph(5), 2, (0,))
    assert distance_vector(ctx, 0) == (0,)
    assert distance_vector(ctx, 3) == (3,)
    G = Graph(4, [(0, 1)])
    ctx = SpineContext(RootedForest([None, 0, 1, 1]), G, 1, (0, 1))
    assert distance_vector(ctx, 1) == (1, 0)
    assert distance_vector(ctx, 3) == (2, 2)
    with pytest.raises(ValueError):
        SpineContext(chain_forest(3), path_graph(3), 1, (1,))
    with pytest.raises(ValueError):
        SpineContext(RootedForest([None, 0, 0]), path_graph(3), 1, (0, 2, 1))


def test_claim_adjacency_examples():
    assert claim_adjacency((0, 3), (2, 3), 2, True) is Adjacency.ADJACENT
    assert claim_adjacency((2, 3), (1, 3), 2, True) is Adjacency.NON_ADJACENT
    assert claim_adjacency((2, 3), (1, 3), 2, False) is Adjacency.UNDETERMINED
    with pytest.raises(ValueError):
        claim_adjacency((1,), (1, 1), 2, True)


def test_claim_adjacency_never_contradicts_power():
    rng = random.Random(11)
    assert sum(claim_audit(rng) for _ in range(200)) == 0


# --- tree-depth extraction --------------------------------------------------

def test_extract_n1_takes_first_vertex_of_first_set():
    G = path_graph(4)
    fam = IndependentFamily(power(G, 1), 1, [[3], [1]])
    sel = extract_treedepth(G, chain_forest(4), 1, fam)
    assert sel.picks == ((3, 0),)


def test_extract_on_p3_chain():
    G = path_graph(3)
    F = chain_forest(3)
    host = power(G, 1)
    isets = independent_n_sets(host, 2)
    assert isets == [{0, 2}]
    fam = IndependentFamily(host, 2, isets * 4)
    sel = extract_treedepth(G, F, 1, fam)
    assert sel.vertices == {0, 2} and not sel.problems(fam)


def test_star_square_has_no_independent_pairs():
    G = star_graph(4)
    with pytest.raises(ValueError):
        IndependentFamily(power(G, 2), 2, [[1, 2]])


def test_case_matching_spans_two_chains():
    # root 0 over chains 1-2 and 3-4
    F = RootedForest([None, 0, 1, 0, 3])
    G = Graph(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    host = power(G, 1)
    fam = IndependentFamily(host, 2, [[2, 4]] * 3 + [[1, 4], [2, 3]])
    sel = extract_treedepth(G, F, 1, fam)
    assert not sel.problems(fam)
    assert len({v in F.subtree(1) for v in sel.vertices}) == 2


def test_extract_rejects_bad_inputs():
    G = path_graph(3)
    fam = IndependentFamily(power(G, 2), 1, [[0]])
    with pytest.raises(ValueError):
        extract_treedepth(G, chain_forest(3), 1, fam)
    with pytest.raises(ValueError):
        extract_treedepth(G, RootedForest([None, None, None]), 2, fam)
    # edge 1-2 is not an ancestor pair
    with pytest.raises(ValueError):
        extract_treedepth(G, RootedForest([None, 0, 0]), 2, fam)
    with pytest.raises(ValueError):
        extract_treedepth(G, chain_forest(2), 2, fam)


def test_extract_treedepth_graph_examples():
    G = empty_graph(3)
    fam = IndependentFamily(G, 3, [[0, 1, 2]] * 3)
    assert extract_treedepth_graph(G, 1, fam).vertices == {0, 1, 2}
    G = path_graph(4)
    fam = IndependentFamily(power(G, 2), 2, [[0, 3]] * 6)
    assert extract_treedepth_graph(G, 2, fam).vertices == {0, 3}


def test_failure_on_multipartite_family():
    G = complete_multipartite([2, 2, 2])
    fam = IndependentFamily(G, 2, [[0, 1], [2, 3], [4, 5]])
    assert find_rainbow_bruteforce(fam) is None
    with pytest.raises(ExtractionError) as info:
        extract_treedepth_graph(G, 1, fam)
    rep = info.value.report
    assert rep.family_size >= 0 and rep.stage
    assert set(rep.to_json()) == {"stage", "depth", "family_size", "detail"}


def test_decomposition_tree_fallback():
    G = path_graph(25)
    F = decomposition_tree(G, cap=10)
    assert F.n == 26 and F.is_tree()
    assert embeds_in_closure(Graph(26, G.edges), F)


@pytest.mark.parametrize("seed", range(4))
def test_extraction_sound_and_never_bogus(seed):
    rng = random.Random(100 + seed)
    for _ in range(25):
        G, r, fam = random_instance(rng)
        exists = find_rainbow_bruteforce(fam) is not None
        for extractor in (extract_treedepth_graph, extract_bounded_expansion):
            try:
                sel = extractor(G, r, fam)
            except ExtractionError:
                continue
            assert exists
            assert sel.problems(fam) == []


def test_completeness_n1():
    rng = random.Random(7)
    for _ in range(40):
        G, r, fam = random_instance(rng, max_size=5)
        fam1 = IndependentFamily(fam.host, 1, [[min(s)] for s in fam])
        assert extract_treedepth_graph(G, r, fam1).picks == ((min(fam[0]), 0),)


def test_completeness_on_root_paths():
    rng = random.Random(21)
    for _ in range(60):
        G, F, r, fam = root_path_instance(rng)
        assert rainbow_exists_oracle(fam.host, fam.sets, fam.n)
        assert extract_treedepth(G, F, r, fam).problems(fam) == []


# --- bounded expansion pipeline ---------------------------------------------

def test_pipeline_on_p8_square():
    G = path_graph(8)
    host = power(G, 2)
    isets = independent_n_sets(host, 2)
    rng = random.Random(0)
    for _ in range(10):
        fam = IndependentFamily(host, 2, [rng.choice(isets) for _ in range(12)])
        assert extract_bounded_expansion(G, 2, fam).problems(fam) == []


def test_pipeline_single_class_union_matches_treedepth_route():
    G = empty_graph(3)
    fam = IndependentFamily(G, 2, [[0, 1]] * 2)
    assert extract_bounded_expansion(G, 1, fam) == extract_treedepth_graph(G, 1, fam)


def test_pipeline_reports_pigeonhole_starvation():
    # every independent pair of P6^2 lands in its own pair of refined classes
    G = path_graph(6)
    host = power(G, 2)
    fam = IndependentFamily(host, 2, independent_n_sets(host, 2))
    assert find_rainbow_bruteforce(fam) is not None
    with pytest.raises(ExtractionError) as info:
        extract_bounded_expansion(G, 2, fam)
    assert info.value.report.stage == "pigeonhole"
    assert info.value.report.family_size == 6


# --- induced matchings ------------------------------------------------------

def test_induced_matching_examples():
    G = disjoint_union([path_graph(2)] * 3)
    pairs = [[(0, 1), (2, 3)], [(0, 1), (4, 5)], [(2, 3), (4, 5)], [(0, 1), (2, 3)]]
    out = rainbow_induced_matching(G, 2, pairs)
    assert len(out) == 2 and len({i for _, i in out}) == 2
    assert induced_matching_problems(G, [e for e, _ in out]) == []
    assert rainbow_induced_matching(G, 1, [[(5, 4)], [(0, 1)]]) == [((4, 5), 0)]


def test_induced_matching_rejects_bad_member():
    G = path_graph(5)
    with pytest.raises(ValueError, match="matching 1 has 1 edges"):
        rainbow_induced_matching(G, 2, [[(0, 1), (3, 4)], [(0, 1)]])
    # 1-2 joins the two edges
    with pytest.raises(ValueError, match="matching 0 is not an induced"):
        rainbow_induced_matching(G, 2, [[(0, 1), (2, 3)]])
    with pytest.raises(ValueError, match="matching 0 is not an induced"):
        rainbow_induced_matching(G, 1, [[(0, 2)]])


def test_subdivision_distance_audit():
    rng = random.Random(5)
    for _ in range(30):
        G = random_graph(rng, rng.randint(4, 10), 0.3)
        matchings = [[e, f] for e, f in combinations(sorted(G.edges), 2)
                     if not induced_matching_problems(G, [e, f])]
        if matchings:
            assert min(subdivision_distances(G, matchings)) >= 6
