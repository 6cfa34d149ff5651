"""Exhaustive and randomized exploration of finite structures.

Relations are encoded as integers so the whole candidate space is a range:

* part relations: bit ``x*n + y`` set iff (x, y) is in the relation;
* fusion relations: bit ``p*n + x`` set iff the plurality with
  characteristic mask ``p`` fuses to ``x``.

Enumeration is by ascending code, which doubles as the lexicographic
order of the encoding; prefix partitions of the space are contiguous code
ranges, so parallel workers merge back in encoding order and the output
never depends on scheduling.

Filtering is a two-stage pipeline.  A scanning stage walks the candidate
space row by row, baking row-local axioms (reflexivity on the part side,
fusion existence and singleton collapse on the fusion side) into the row
value lists and rejecting the rest with the hand-coded native checkers
(cheap axioms first, in a fixed documented order:
ref_P, id_F, exists_F, antis_P, trans_P, fun_F, as_PP, trans_PP, dfP_PP,
approx_F, wsp_F, comp_F, ext_F; the order affects speed, never results).
Every surviving candidate is then re-verified through the formula
evaluator, and any witness or countermodel reported from here is
re-checked through :mod:`gemcheck.semantics` before it is emitted; the
scanning stage is never the final authority.  Agreement of the native
route with the evaluator is itself the subject of the oracle-equivalence
tests.

Two runs with the same bounds, seed, and any worker counts produce
identical reports; JSON serializations are byte-stable (timings are
included only on request, since they are the one nondeterministic field).
"""

from __future__ import annotations

import itertools
import json
import multiprocessing
import random
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from . import native
from .semantics import Assignment, Evaluator
from .structures import (CapacityError, FusionStructure, PartStructure,
                         Structure, components, induced_fusion, induced_part,
                         kind_of, members_of, summarize)
from .syntax import NamedFormula
from .theory import Theory, gem_f, gem_p

DEFAULT_CEILING = 1 << 26

_NATIVE_RANK = {
    native.ref_p: 0, native.id_f: 1, native.exists_f: 2,
    native.exists_f_closure: 2, native.antis_p: 3, native.trans_p: 4,
    native.fun_f: 5, native.fun_f_closure: 5, native.as_pp: 6,
    native.trans_pp: 7, native.dfp_pp: 8, native.approx_f: 9,
    native.wsp_f: 10, native.comp_f: 11, native.ext_f: 12,
}


@dataclass(frozen=True)
class SearchBounds:
    max_n_part: int = 4
    max_n_fusion: int = 3
    random_samples: int = 10000
    seed: int = 0

    def __post_init__(self):
        if min(self.max_n_part, self.max_n_fusion, self.random_samples) < 0:
            raise ValueError("bounds must be >= 0")


# ---------------------------------------------------------------------------
# integer encodings

def relation_bits(kind: str, n: int) -> int:
    return n * n if kind == "part" else n * (1 << n)


def part_from_code(n: int, code: int) -> PartStructure:
    pairs = [(x, y) for x in range(n) for y in range(n)
             if (code >> (x * n + y)) & 1]
    return PartStructure(n, frozenset(pairs))


def fusion_from_code(n: int, code: int) -> FusionStructure:
    mask = (1 << n) - 1
    rows = [(code >> (p * n)) & mask for p in range(1 << n)]
    return FusionStructure.from_rows(n, rows)


def structure_from_code(kind: str, n: int, code: int) -> Structure:
    return part_from_code(n, code) if kind == "part" else fusion_from_code(n, code)


def code_of(s: Structure) -> int:
    if isinstance(s, PartStructure):
        return sum(1 << (x * s.n + y) for (x, y) in s.part)
    return sum(row << (p * s.n) for p, row in enumerate(s.rows()))


def enumerate_structures(kind: str, n: int, code_range: Optional[tuple] = None,
                         ceiling: int = DEFAULT_CEILING) -> Iterator[Structure]:
    """Every relation of the kind exactly once, by ascending code.

    ``code_range=(lo, hi)`` restricts to a slice of the space, which is
    how the space is partitioned by encoding prefix.
    """
    total = 1 << relation_bits(kind, n)
    if total > ceiling:
        raise CapacityError(f"{total} candidates exceed the ceiling {ceiling}")
    lo, hi = code_range if code_range is not None else (0, total)
    for code in range(lo, hi):
        yield structure_from_code(kind, n, code)


def random_structure(kind: str, n: int, rng: random.Random) -> Structure:
    code = rng.getrandbits(relation_bits(kind, n)) if n else 0
    return structure_from_code(kind, n, code)


# ---------------------------------------------------------------------------
# the scanning stage

def _plan(kind: str, n: int, theory: Theory):
    """Split obligations into row-local constraints, natives, and AST rest."""
    row_local = {"ref": False, "exists": False, "id": False}
    deep = []
    rest = []
    for i, nf in enumerate(theory.obligations):
        if kind == "fusion" and nf.sentence == gem_f().get("exists_F").sentence:
            row_local["exists"] = True
            continue
        if kind == "fusion" and nf.sentence == gem_f().get("id_F").sentence:
            row_local["id"] = True
            continue
        if kind == "part" and nf.sentence == gem_p().get("ref_P").sentence:
            row_local["ref"] = True
            continue
        fn = native.native_for(nf.sentence)
        if fn is not None:
            deep.append((_NATIVE_RANK[fn], i, fn))
        else:
            rest.append(nf)
    deep.sort()
    return row_local, [fn for (_, _, fn) in deep], rest


def _allowed_rows(kind: str, n: int, row_local: dict) -> list:
    """Per-row admissible values, most significant row first."""
    full = list(range(1 << n))
    rows = []
    if kind == "part":
        for x in reversed(range(n)):
            rows.append([v for v in full if (v >> x) & 1] if row_local["ref"] else full)
        return rows
    for p in reversed(range(1 << n)):
        vals = full
        if row_local["id"] and p and p & (p - 1) == 0:
            y = p.bit_length() - 1
            vals = [0, 1 << y]
        if row_local["exists"] and p:
            vals = [v for v in vals if v]
        rows.append(vals)
    return rows


def _product_slice(allowed: list, start: int, stop: int):
    """Row-value tuples (most significant first) for product indices [start, stop)."""
    if not allowed:
        if start == 0 < stop:
            yield []
        return
    radices = [len(v) for v in allowed]
    idx = []
    r = start
    for base in reversed(radices):
        idx.append(r % base)
        r //= base
    idx.reverse()
    vals = [allowed[i][idx[i]] for i in range(len(allowed))]
    count = stop - start
    while count > 0:
        yield vals
        count -= 1
        for i in reversed(range(len(idx))):
            idx[i] += 1
            if idx[i] < radices[i]:
                vals[i] = allowed[i][idx[i]]
                break
            idx[i] = 0
            vals[i] = allowed[i][0]
        else:
            return


def _scan_worker(args) -> list:
    """Codes in [start, stop) of the pruned space passing every obligation."""
    kind, n, theory, start, stop, use_native = args
    if not use_native:
        row_local = {"ref": False, "exists": False, "id": False}
        deep, rest = [], list(theory.obligations)
    else:
        row_local, deep, rest = _plan(kind, n, theory)
    allowed = _allowed_rows(kind, n, row_local)
    found = []
    for vals in _product_slice(allowed, start, stop):
        if kind == "part":
            down = [0] * n
            for x in range(n):
                up = vals[n - 1 - x]
                for y in range(n):
                    if (up >> y) & 1:
                        down[y] |= 1 << x
            tables = native.part_tables(n, down) if deep else None
        else:
            frow = vals[::-1]
            tables = native.fusion_tables(n, frow) if deep else None
        if deep and not all(fn(tables) for fn in deep):
            continue
        if rest:
            if kind == "part":
                s = PartStructure(n, frozenset(
                    (x, y) for y in range(n) for x in range(n)
                    if (down[y] >> x) & 1))
            else:
                s = FusionStructure.from_rows(n, frow)
            ev = Evaluator(s)
            if not all(ev.eval(nf.sentence) for nf in rest):
                continue
        code = 0
        width = len(vals)
        for i, v in enumerate(vals):
            code |= v << ((width - 1 - i) * n)
        found.append(code)
    return found


def _pruned_total(allowed: list) -> int:
    total = 1
    for vals in allowed:
        total *= len(vals)
    return total


def filter_models(kind: str, n: int, theory: Theory, workers: int = 1,
                  use_native: bool = True,
                  ceiling: int = DEFAULT_CEILING) -> list:
    """Exactly the structures on which every obligation is true, in code order.

    Candidates are pre-filtered natively where obligations are recognized
    registry axioms, then every survivor is re-verified through the
    evaluator; a disagreement between the two routes raises rather than
    silently corrupting the model set.
    """
    total = 1 << relation_bits(kind, n)
    if total > ceiling:
        raise CapacityError(f"{total} candidates exceed the ceiling {ceiling}")
    row_local, deep, rest = _plan(kind, n, theory)
    if not use_native:
        row_local = {"ref": False, "exists": False, "id": False}
    allowed = _allowed_rows(kind, n, row_local)
    pruned = _pruned_total(allowed)
    if workers > 1 and pruned > 4096:
        chunks = workers * 4
        step = (pruned + chunks - 1) // chunks
        tasks = [(kind, n, theory, a, min(a + step, pruned), use_native)
                 for a in range(0, pruned, step)]
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_scan_worker, tasks)
        codes = [c for part in parts for c in part]
    else:
        codes = _scan_worker((kind, n, theory, 0, pruned, use_native))
    models = []
    for code in codes:
        s = structure_from_code(kind, n, code)
        ev = Evaluator(s)
        for nf in theory.obligations:
            if not ev.eval(nf.sentence):
                raise RuntimeError(
                    f"native scan and evaluator disagree on {nf.name} "
                    f"for {summarize(s)}; this is a bug")
        models.append(s)
    return models


def count_models(kind: str, theory: Theory, n: int, workers: int = 1,
                 ceiling: int = DEFAULT_CEILING) -> int:
    return len(filter_models(kind, n, theory, workers=workers, ceiling=ceiling))


# ---------------------------------------------------------------------------
# reports

def _witness_dict(w: Optional[Assignment]):
    if w is None:
        return None
    return {"individuals": dict(sorted(w.individuals.items())),
            "plurals": {k: sorted(v) for k, v in sorted(w.plurals.items())}}


@dataclass(frozen=True)
class ObligationVerdict:
    name: str
    passed: bool
    witness: Optional[Assignment] = None


@dataclass(frozen=True)
class CheckReport:
    """Per-obligation verdicts for one structure against one theory."""

    theory: str
    kind: str
    n: int
    structure: str
    results: tuple
    elapsed_ms: int

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "theory": self.theory,
            "kind": self.kind,
            "n": self.n,
            "structure": self.structure,
            "candidates": 1,
            "models": 1 if self.all_passed else 0,
            "failures": [{"obligation": r.name, "witness": _witness_dict(r.witness)}
                         for r in self.results if not r.passed],
        }
        if timings:
            d["elapsed_ms"] = self.elapsed_ms
        return d


def check_theory(s: Structure, theory: Theory) -> CheckReport:
    """Evaluate every obligation; failure witnesses are re-verified before emission."""
    t0 = time.monotonic()
    ev = Evaluator(s)
    results = []
    for nf in theory.obligations:
        outcome = ev.check(nf)
        if not outcome.value and outcome.witness is not None:
            if not ev.refutes(nf.sentence, outcome.witness):
                raise RuntimeError(f"unsound witness for {nf.name}; this is a bug")
        results.append(ObligationVerdict(nf.name, outcome.value, outcome.witness))
    return CheckReport(theory.name, kind_of(s), s.n, summarize(s),
                       tuple(results), int((time.monotonic() - t0) * 1000))


@dataclass(frozen=True)
class CountermodelResult:
    verdict: str  # "found" | "exhausted bounds" | "sample budget spent"
    structure: Optional[Structure]
    witness: Optional[Assignment]
    candidates: int
    seed: int

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "verdict": self.verdict,
            "structure": None if self.structure is None else summarize(self.structure),
            "witness": _witness_dict(self.witness),
            "candidates": self.candidates,
            "seed": self.seed,
        }


def find_countermodel(kind: str, base: Theory, target: NamedFormula,
                      bounds: SearchBounds, strategy: str = "exhaustive",
                      workers: int = 1,
                      ceiling: int = DEFAULT_CEILING) -> CountermodelResult:
    """A structure satisfying ``base`` and falsifying ``target``, if the
    bounds contain one.

    Any returned structure has been re-verified through the evaluator,
    and the witness against the target re-checked.
    """
    max_n = bounds.max_n_part if kind == "part" else bounds.max_n_fusion
    checked = 0
    if strategy == "exhaustive":
        for n in range(max_n + 1):
            checked += 1 << relation_bits(kind, n)
            for s in filter_models(kind, n, base, workers=workers, ceiling=ceiling):
                ev = Evaluator(s)
                if not ev.eval(target.sentence):
                    w = ev.find_witness(target.sentence)
                    if w is not None and not ev.refutes(target.sentence, w):
                        raise RuntimeError("unsound countermodel witness; this is a bug")
                    return CountermodelResult("found", s, w, checked, bounds.seed)
        return CountermodelResult("exhausted bounds", None, None, checked, bounds.seed)
    if strategy != "random":
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(bounds.seed)
    for _ in range(bounds.random_samples):
        s = random_structure(kind, max_n, rng)
        checked += 1
        ev = Evaluator(s)
        if all(ev.eval(nf.sentence) for nf in base.obligations):
            if not ev.eval(target.sentence):
                w = ev.find_witness(target.sentence)
                if w is not None and not ev.refutes(target.sentence, w):
                    raise RuntimeError("unsound countermodel witness; this is a bug")
                return CountermodelResult("found", s, w, checked, bounds.seed)
    return CountermodelResult("sample budget spent", None, None, checked, bounds.seed)


# ---------------------------------------------------------------------------
# the equivalence verification

@dataclass(frozen=True)
class EquivalenceReport:
    """Tallies for the two definitional translations at every size.

    Part side: every parthood model's induced fusion must satisfy the
    fusion axioms, the fusion-side parthood definition must hold
    pointwise, and translating back must be the identity.  Fusion side:
    symmetrically, plus a record of whether any fusion model lets the
    empty plurality fuse (none should; the composition axiom forbids it,
    but this is reported rather than assumed).
    """

    max_n_part: int
    max_n_fusion: int
    seed: int
    part_rows: tuple
    fusion_rows: tuple
    violations: tuple
    elapsed_ms: int

    @property
    def all_ok(self) -> bool:
        return not self.violations

    def to_dict(self, timings: bool = False) -> dict:
        common = range(min(self.max_n_part, self.max_n_fusion) + 1)
        d = {
            "max_n_part": self.max_n_part,
            "max_n_fusion": self.max_n_fusion,
            "seed": self.seed,
            "part_side": list(self.part_rows),
            "fusion_side": list(self.fusion_rows),
            "model_counts_match": all(
                self.part_rows[n]["models"] == self.fusion_rows[n]["models"]
                for n in common),
            "violations": list(self.violations),
        }
        if timings:
            d["elapsed_ms"] = self.elapsed_ms
        return d


def verify_equivalence(bounds: SearchBounds, workers: int = 1,
                       ceiling: int = DEFAULT_CEILING) -> EquivalenceReport:
    t0 = time.monotonic()
    violations = []
    part_rows = []
    for n in range(bounds.max_n_part + 1):
        models = filter_models("part", n, gem_p(), workers=workers, ceiling=ceiling)
        row = {"n": n, "candidates": 1 << relation_bits("part", n),
               "models": len(models), "fusion_axioms_pass": 0,
               "def_pf_pass": 0, "round_trip_pass": 0, "injective": True}
        images = set()
        for m in models:
            fs = induced_fusion(m)
            images.add(fs)
            ev = Evaluator(fs)
            bad = [nf.name for nf in gem_f() if not ev.eval(nf.sentence)]
            if bad:
                violations.append({"side": "part", "n": n, "structure": summarize(m),
                                   "check": "gem_f axioms", "detail": bad})
            else:
                row["fusion_axioms_pass"] += 1
            # the fusion-side parthood definition, point by point
            derived = {(x, y) for (zz, y) in fs.fusion for x in zz}
            if derived == set(m.part):
                row["def_pf_pass"] += 1
            else:
                violations.append({"side": "part", "n": n, "structure": summarize(m),
                                   "check": "def_pf", "detail": sorted(
                                       derived ^ set(m.part))})
            if induced_part(fs) == m:
                row["round_trip_pass"] += 1
            else:
                violations.append({"side": "part", "n": n, "structure": summarize(m),
                                   "check": "round_trip_a", "detail": None})
        if len(images) != len(models):
            row["injective"] = False
            violations.append({"side": "part", "n": n, "structure": None,
                               "check": "translation_injective", "detail": None})
        part_rows.append(row)
    fusion_rows = []
    for n in range(bounds.max_n_fusion + 1):
        models = filter_models("fusion", n, gem_f(), workers=workers, ceiling=ceiling)
        row = {"n": n, "candidates": 1 << relation_bits("fusion", n),
               "models": len(models), "part_axioms_pass": 0,
               "def_uf_pass": 0, "round_trip_pass": 0,
               "with_empty_plurality": 0, "injective": True}
        images = set()
        for fs in models:
            if any(not zz for (zz, _) in fs.fusion):
                row["with_empty_plurality"] += 1
            m = induced_part(fs)
            images.add(m)
            ev = Evaluator(m)
            bad = [nf.name for nf in gem_p() if not ev.eval(nf.sentence)]
            if bad:
                violations.append({"side": "fusion", "n": n, "structure": summarize(fs),
                                   "check": "gem_p axioms", "detail": bad})
            else:
                row["part_axioms_pass"] += 1
            # the components former agrees across the two signatures
            if all(components(fs, members_of(p)) == components(m, members_of(p))
                   for p in range(1 << n)):
                row["def_uf_pass"] += 1
            else:
                violations.append({"side": "fusion", "n": n, "structure": summarize(fs),
                                   "check": "def_uf", "detail": None})
            if induced_fusion(m) == fs:
                row["round_trip_pass"] += 1
            else:
                violations.append({"side": "fusion", "n": n, "structure": summarize(fs),
                                   "check": "round_trip_b", "detail": None})
        if len(images) != len(models):
            row["injective"] = False
            violations.append({"side": "fusion", "n": n, "structure": None,
                               "check": "translation_injective", "detail": None})
        fusion_rows.append(row)
    for n in range(min(bounds.max_n_part, bounds.max_n_fusion) + 1):
        if part_rows[n]["models"] != fusion_rows[n]["models"]:
            violations.append({"side": "both", "n": n, "structure": None,
                               "check": "model_counts_match",
                               "detail": [part_rows[n]["models"],
                                          fusion_rows[n]["models"]]})
    return EquivalenceReport(bounds.max_n_part, bounds.max_n_fusion, bounds.seed,
                             tuple(part_rows), tuple(fusion_rows),
                             tuple(violations),
                             int((time.monotonic() - t0) * 1000))


# ---------------------------------------------------------------------------
# misc oracles

def automorphism_count(ps: PartStructure) -> int:
    """Permutations of the domain preserving parthood in both directions."""
    if ps.n > 8:
        raise CapacityError("automorphism counting is limited to n <= 8")
    count = 0
    pairs = ps.part
    for perm in itertools.permutations(range(ps.n)):
        if all(((perm[x], perm[y]) in pairs) == ((x, y) in pairs)
               for x in range(ps.n) for y in range(ps.n)):
            count += 1
    return count


def report_json(d: dict) -> str:
    return json.dumps(d, sort_keys=True, indent=2) + "\n"
