import itertools
import json
import math
import random
from pathlib import Path

import pytest

from gemcheck import (CapacityError, FusionStructure, PartStructure,
                      automorphism_count, canonical_gem, check_theory,
                      count_models, enumerate_structures, filter_models,
                      find_countermodel, gem_f, gem_p, pp_axioms,
                      verify_equivalence)
from gemcheck.search import (SearchBounds, code_of, random_structure,
                             relation_bits, report_json, structure_from_code)
from gemcheck.semantics import Evaluator

from util import oracle_gem_p_model_codes

GOLDEN = Path(__file__).parent / "golden"


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_structures("part", 2)) == 16
    assert sum(1 for _ in enumerate_structures("fusion", 1)) == 4
    assert sum(1 for _ in enumerate_structures("part", 3)) == 512
    assert sum(1 for _ in enumerate_structures("part", 0)) == 1


def test_enumeration_order_and_codes():
    for kind, n in (("part", 2), ("fusion", 1)):
        for code, s in enumerate(enumerate_structures(kind, n)):
            assert code_of(s) == code
            assert structure_from_code(kind, n, code) == s


def test_enumeration_capacity():
    with pytest.raises(CapacityError):
        list(enumerate_structures("part", 6))
    with pytest.raises(CapacityError):
        list(enumerate_structures("fusion", 4))


def test_partition_correctness():
    for kind, n in (("part", 2), ("fusion", 2), ("part", 3)):
        total = 1 << relation_bits(kind, n)
        serial = list(enumerate_structures(kind, n))
        cut = total // 3
        pieces = (list(enumerate_structures(kind, n, (0, cut)))
                  + list(enumerate_structures(kind, n, (cut, 2 * cut)))
                  + list(enumerate_structures(kind, n, (2 * cut, total))))
        assert pieces == serial


def test_filter_models_part_against_naive_oracle():
    for n in range(4):
        expected = oracle_gem_p_model_codes(n)
        got = [code_of(m) for m in filter_models("part", n, gem_p())]
        assert got == expected, n


def test_model_counts_frozen():
    assert [count_models("part", gem_p(), n) for n in range(5)] == [1, 1, 0, 3, 0]
    assert [count_models("fusion", gem_f(), n) for n in range(4)] == [1, 1, 0, 3]


def test_gem_p_models_at_3_are_canonical_relabelings():
    base = canonical_gem(2)
    expected = set()
    for perm in itertools.permutations(range(3)):
        expected.add(frozenset((perm[x], perm[y]) for (x, y) in base.part))
    got = {m.part for m in filter_models("part", 3, gem_p())}
    assert got == expected and len(got) == 3


def test_filter_native_and_pure_paths_agree():
    for kind, n in (("part", 0), ("part", 1), ("part", 2),
                    ("fusion", 1), ("fusion", 2)):
        for t in (gem_f(), gem_p(), pp_axioms()):
            fast = filter_models(kind, n, t)
            slow = filter_models(kind, n, t, use_native=False)
            assert fast == slow, (kind, n, t.name)


def test_filter_workers_match_serial():
    t = pp_axioms()  # no row-local pruning, so the pool path is exercised
    serial = filter_models("part", 4, t, workers=1)
    pooled = filter_models("part", 4, t, workers=2)
    assert serial == pooled
    assert len(serial) == 219  # labeled posets on four points


def test_check_theory_reports():
    rep = check_theory(canonical_gem(2), gem_p())
    assert rep.all_passed and rep.kind == "part" and rep.n == 3
    rep = check_theory(FusionStructure(1, frozenset()), gem_f())
    failed = [r.name for r in rep.results if not r.passed]
    assert failed == ["exists_F"]
    d = rep.to_dict()
    assert d["failures"][0]["obligation"] == "exists_F"
    assert d["failures"][0]["witness"] == {"individuals": {},
                                           "plurals": {"ZZ": [0]}}
    assert "elapsed_ms" not in d and "elapsed_ms" in rep.to_dict(timings=True)
    rep = check_theory(PartStructure(0, frozenset()), gem_p())
    assert rep.all_passed


def test_countermodel_target_in_base():
    res = find_countermodel("part", gem_p(), gem_p().get("ref_P"),
                            SearchBounds(max_n_part=3))
    assert res.verdict == "exhausted bounds"
    assert res.structure is None


def test_countermodel_golden_drop_id_f():
    res = find_countermodel("fusion", gem_f().drop("id_F"), gem_f().get("id_F"),
                            SearchBounds(max_n_fusion=2))
    got = report_json(res.to_dict())
    assert got == (GOLDEN / "countermodel_id_F.json").read_text()


def test_countermodel_golden_drop_wsp_f():
    res = find_countermodel("fusion", gem_f().drop("wsp_F"), gem_f().get("wsp_F"),
                            SearchBounds(max_n_fusion=2))
    got = report_json(res.to_dict())
    assert got == (GOLDEN / "countermodel_wsp_F.json").read_text()
    # the recorded separating structure really is one
    assert res.structure is not None
    ev = Evaluator(res.structure)
    assert all(ev.eval(nf.sentence) for nf in gem_f().drop("wsp_F"))
    assert not ev.eval(gem_f().get("wsp_F").sentence)


def test_countermodel_random_strategy():
    res = find_countermodel("fusion", gem_f().drop("wsp_F"), gem_f().get("wsp_F"),
                            SearchBounds(max_n_fusion=2, random_samples=3000,
                                         seed=5), strategy="random")
    assert res.verdict in ("found", "sample budget spent")
    if res.structure is not None:
        ev = Evaluator(res.structure)
        assert not ev.eval(gem_f().get("wsp_F").sentence)
    res2 = find_countermodel("fusion", gem_f().drop("wsp_F"),
                             gem_f().get("wsp_F"),
                             SearchBounds(max_n_fusion=2, random_samples=3000,
                                          seed=5), strategy="random")
    assert res.to_dict() == res2.to_dict()


def test_automorphism_counts():
    assert automorphism_count(PartStructure(1, frozenset({(0, 0)}))) == 1
    assert automorphism_count(canonical_gem(2)) == 2
    assert automorphism_count(canonical_gem(3)) == 6
    with pytest.raises(CapacityError):
        automorphism_count(PartStructure(9, frozenset()))


def test_labeled_count_formula():
    for k in (1, 2):
        n = (1 << k) - 1
        aut = automorphism_count(canonical_gem(k))
        assert math.factorial(n) // aut == count_models("part", gem_p(), n)


def test_witness_soundness_on_random_structures():
    rng = random.Random(99)
    for _ in range(120):
        kind = rng.choice(["part", "fusion"])
        s = random_structure(kind, rng.randrange(4), rng)
        rep = check_theory(s, gem_f() if kind == "fusion" else gem_p())
        ev = Evaluator(s)
        for r in rep.results:
            if not r.passed and r.witness is not None:
                t = gem_f() if kind == "fusion" else gem_p()
                assert ev.refutes(t.get(r.name).sentence, r.witness)


def test_equivalence_report_shape():
    rep = verify_equivalence(SearchBounds(max_n_part=2, max_n_fusion=2))
    assert rep.all_ok
    d = rep.to_dict()
    assert [r["models"] for r in d["part_side"]] == [1, 1, 0]
    assert d["model_counts_match"]
    assert json.loads(report_json(d)) == d


def test_equivalence_vacuous_bounds():
    rep = verify_equivalence(SearchBounds(max_n_part=0, max_n_fusion=0))
    assert rep.all_ok


def test_canonical_k3_relabelings_satisfy_gem_p():
    # the labeled-count formula value at k=3 is 7!/6 = 840; the space at
    # n=7 is out of exhaustive reach, so validate the formula's premise:
    # every distinct relabeling of the canonical model is a model
    base = canonical_gem(3)
    relabelings = {frozenset((p[x], p[y]) for (x, y) in base.part)
                   for p in itertools.permutations(range(7))}
    assert len(relabelings) == math.factorial(7) // 6 == 840
    from gemcheck.native import check_native
    sample = random.Random(4).sample(sorted(relabelings, key=sorted), 25)
    for pairs in sample:
        s = PartStructure(7, pairs)
        for nf in gem_p():
            assert check_native(nf.sentence, s), nf.name
    ev = Evaluator(PartStructure(7, sample[0]))
    assert all(ev.eval(nf.sentence) for nf in gem_p())
