"""Shared test helpers: seeded random formulas and brute-force oracles.

The oracles here are written in deliberately naive set-comprehension
style, independent of both the evaluator and the native checkers, so the
expected values they produce are frozen from a third route.
"""

import itertools
import random

from gemcheck.syntax import (And, Components, Eq, ExistsI, ExistsP, ForallI,
                             ForallP, FusionAtom, Iff, Implies, Member, Not,
                             Or, OverlapAtom, PartAtom, ProperPartAtom, PVar,
                             PInter, PUnion, Singleton, SubTerm, TermEq)

IVARS = ["x", "y", "z", "u", "v", "w"]
PVARS = ["XX", "YY", "ZZ", "UU", "VV", "WW"]


def random_pterm(rng: random.Random, depth: int):
    if depth <= 0:
        return rng.choice([PVar(rng.choice(PVARS)),
                           Singleton(rng.choice(IVARS))])
    kind = rng.randrange(5)
    if kind == 0:
        return PVar(rng.choice(PVARS))
    if kind == 1:
        return Singleton(rng.choice(IVARS))
    if kind == 2:
        return PUnion(random_pterm(rng, depth - 1), random_pterm(rng, depth - 1))
    if kind == 3:
        return PInter(random_pterm(rng, depth - 1), random_pterm(rng, depth - 1))
    return Components(random_pterm(rng, depth - 1))


def random_atom(rng: random.Random):
    kind = rng.randrange(8)
    if kind == 0:
        return Eq(rng.choice(IVARS), rng.choice(IVARS))
    if kind == 1:
        return Member(rng.choice(IVARS), random_pterm(rng, 2))
    if kind == 2:
        return SubTerm(random_pterm(rng, 2), random_pterm(rng, 2))
    if kind == 3:
        return TermEq(random_pterm(rng, 2), random_pterm(rng, 2))
    if kind == 4:
        return FusionAtom(random_pterm(rng, 2), rng.choice(IVARS))
    if kind == 5:
        return PartAtom(rng.choice(IVARS), rng.choice(IVARS))
    if kind == 6:
        return ProperPartAtom(rng.choice(IVARS), rng.choice(IVARS))
    return OverlapAtom(rng.choice(IVARS), rng.choice(IVARS))


def random_formula(rng: random.Random, depth: int):
    if depth <= 0:
        return random_atom(rng)
    kind = rng.randrange(10)
    if kind <= 1:
        return random_atom(rng)
    if kind == 2:
        return Not(random_formula(rng, depth - 1))
    if kind == 3:
        return And(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 4:
        return Or(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 5:
        return Implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 6:
        return Iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    cls = (ForallI, ExistsI, ForallP, ExistsP)[rng.randrange(4)]
    individual = cls in (ForallI, ExistsI)
    var = rng.choice(IVARS if individual else PVARS)
    bound = random_pterm(rng, 1) if rng.random() < 0.4 else None
    return cls(var, random_formula(rng, depth - 1), bound)


# ---------------------------------------------------------------------------
# naive oracles over raw pair sets

def oracle_overlap(n, part, a, b):
    return any((c, a) in part and (c, b) in part for c in range(n))


def oracle_fuses(n, part, zz, x):
    return (all((y, x) in part for y in zz)
            and all(any(oracle_fuses_overlap(n, part, v, y) for v in zz)
                    for y in range(n) if (y, x) in part))


def oracle_fuses_overlap(n, part, v, y):
    return oracle_overlap(n, part, v, y)


def nonempty_subsets(n):
    for r in range(1, n + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(n), r))


def oracle_is_gem_p(n, part):
    if not all((x, x) in part for x in range(n)):
        return False
    for x in range(n):
        for y in range(n):
            if x != y and (x, y) in part and (y, x) in part:
                return False
            if (x, y) in part:
                for z in range(n):
                    if (y, z) in part and (x, z) not in part:
                        return False
    for zz in nonempty_subsets(n):
        fusers = [x for x in range(n) if oracle_fuses(n, part, zz, x)]
        if len(fusers) != 1:
            return False
    return True


def oracle_gem_p_model_codes(n):
    """Codes of all parthood models, by the naive oracle."""
    out = []
    for code in range(1 << (n * n)):
        part = {(x, y) for x in range(n) for y in range(n)
                if (code >> (x * n + y)) & 1}
        if oracle_is_gem_p(n, part):
            out.append(code)
    return out
