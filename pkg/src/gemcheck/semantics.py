"""Evaluation of formulas over finite structures.

This is the single source of truth for what every axiom and lemma means.
Individual quantifiers range over {0..n-1}; plural quantifiers range over
all 2^n subsets of the domain including the empty one.  Atoms evaluate
primitively or through the definitional translation matching the
structure's signature: on a fusion structure P, O and PP are derived from
F; on a part structure F, O, PP and U are derived from P.  Asking for
either signature's predicates on either kind of structure is always legal.

Formulas are compiled once into nested Python closures (cached per AST
node), so repeated evaluation over large assignment spaces does not
re-traverse the tree.  Plural values are bitmasks internally; plural
quantifiers iterate subsets in ascending characteristic order and
short-circuit, which fixes the deterministic witness order.  The
assignment space is never materialized.

Everything here is pure; contexts cache derived predicates per structure
and are safe for concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .structures import (CapacityError, FusionStructure, PartStructure,
                         Plurality, Structure, mask_of, members_of)
from .syntax import (And, Components, Eq, ExistsI, ExistsP, ForallI, ForallP,
                     Formula, FusionAtom, Iff, Implies, Member, NamedFormula,
                     Not, Or, OverlapAtom, PartAtom, PluralTerm,
                     ProperPartAtom, PVar, PInter, PUnion, Singleton, SubTerm,
                     TermEq, free_vars, term_free_ivars, term_free_pvars)

#: past this size even a single plural quantifier is out of reach
MAX_EVAL_DOMAIN = 16


class EvalError(ValueError):
    """Unbound variable or out-of-range binding."""


@dataclass(frozen=True)
class Assignment:
    """Bindings for free variables: individuals to indices, plurals to sets."""

    individuals: dict = field(default_factory=dict)
    plurals: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EvalOutcome:
    """Verdict for a closed sentence, with a refuting assignment on failure.

    The witness, when present, binds the sentence's outermost block of
    universal quantifiers to the first values (in enumeration order)
    under which the remaining body is false.
    """

    value: bool
    witness: Optional[Assignment] = None


class EvalContext:
    """Lookup tables for one structure: primitive and derived predicates.

    down[y]  bitmask of the parts of y (primitive P, or derived via the
             union of pluralities fusing to y on fusion structures)
    ov[y]    bitmask of the individuals overlapping y
    frow[p]  bitmask of the individuals fused by plurality mask p
             (primitive F, or derived from the closure conditions)
    """

    __slots__ = ("structure", "n", "kind", "down", "ov", "frow", "_ucache")

    def __init__(self, s: Structure):
        if s.n > MAX_EVAL_DOMAIN:
            raise CapacityError(f"formula evaluation needs 2^{s.n} pluralities")
        self.structure = s
        self.n = s.n
        n = s.n
        if isinstance(s, PartStructure):
            self.kind = "part"
            down = s.down_masks()
        else:
            self.kind = "fusion"
            self.frow = s.rows()
            down = [0] * n
            for p, row in enumerate(self.frow):
                for y in range(n):
                    if (row >> y) & 1:
                        down[y] |= p
        self.down = down
        self.ov = [0] * n
        for y in range(n):
            m = 0
            dy = down[y]
            for v in range(n):
                if down[v] & dy:
                    m |= 1 << v
            self.ov[y] = m
        if isinstance(s, PartStructure):
            self.frow = self._derive_frows()
        self._ucache = {}

    def _derive_frows(self):
        n, down, ov = self.n, self.down, self.ov
        frow = [0] * (1 << n)
        for p in range(1 << n):
            row = 0
            for x in range(n):
                if p & ~down[x]:
                    continue
                rest = down[x]
                ok = True
                while rest:
                    low = rest & -rest
                    if not (p & ov[low.bit_length() - 1]):
                        ok = False
                        break
                    rest ^= low
                if ok:
                    row |= 1 << x
            frow[p] = row
        return frow

    def umask(self, m: int) -> int:
        """U(m): union of down[y] over members y of m (either signature)."""
        u = self._ucache.get(m)
        if u is None:
            u = 0
            rest = m
            down = self.down
            while rest:
                low = rest & -rest
                u |= down[low.bit_length() - 1]
                rest ^= low
            self._ucache[m] = u
        return u


# ---------------------------------------------------------------------------
# compilation of terms and formulas to closures over (ctx, env)

_UNSET = object()


def _compile_term(t: PluralTerm):
    match t:
        case PVar(name):
            def run(ctx, env, name=name):
                return env[name]
        case Singleton(v):
            def run(ctx, env, v=v):
                return 1 << env[v]
        case PUnion(a, b):
            fa, fb = _compile_term(a), _compile_term(b)

            def run(ctx, env, fa=fa, fb=fb):
                return fa(ctx, env) | fb(ctx, env)
        case PInter(a, b):
            fa, fb = _compile_term(a), _compile_term(b)

            def run(ctx, env, fa=fa, fb=fb):
                return fa(ctx, env) & fb(ctx, env)
        case Components(s):
            fs = _compile_term(s)

            def run(ctx, env, fs=fs):
                return ctx.umask(fs(ctx, env))
        case _:
            raise TypeError(t)
    return run


def _restore(env, var, old):
    if old is _UNSET:
        env.pop(var, None)
    else:
        env[var] = old


def _compile(f: Formula):
    match f:
        case Eq(a, b):
            def run(ctx, env, a=a, b=b):
                return env[a] == env[b]
        case PartAtom(a, b):
            def run(ctx, env, a=a, b=b):
                return (ctx.down[env[b]] >> env[a]) & 1 == 1
        case ProperPartAtom(a, b):
            def run(ctx, env, a=a, b=b):
                i, j = env[a], env[b]
                return i != j and (ctx.down[j] >> i) & 1 == 1
        case OverlapAtom(a, b):
            def run(ctx, env, a=a, b=b):
                return ctx.down[env[a]] & ctx.down[env[b]] != 0
        case FusionAtom(t, v):
            ft = _compile_term(t)

            def run(ctx, env, ft=ft, v=v):
                return (ctx.frow[ft(ctx, env)] >> env[v]) & 1 == 1
        case Member(v, t):
            ft = _compile_term(t)

            def run(ctx, env, ft=ft, v=v):
                return (ft(ctx, env) >> env[v]) & 1 == 1
        case SubTerm(a, b):
            fa, fb = _compile_term(a), _compile_term(b)

            def run(ctx, env, fa=fa, fb=fb):
                return fa(ctx, env) & ~fb(ctx, env) == 0
        case TermEq(a, b):
            fa, fb = _compile_term(a), _compile_term(b)

            def run(ctx, env, fa=fa, fb=fb):
                return fa(ctx, env) == fb(ctx, env)
        case Not(g):
            fg = _compile(g)

            def run(ctx, env, fg=fg):
                return not fg(ctx, env)
        case And(a, b):
            fa, fb = _compile(a), _compile(b)

            def run(ctx, env, fa=fa, fb=fb):
                return fa(ctx, env) and fb(ctx, env)
        case Or(a, b):
            fa, fb = _compile(a), _compile(b)

            def run(ctx, env, fa=fa, fb=fb):
                return fa(ctx, env) or fb(ctx, env)
        case Implies(a, b):
            fa, fb = _compile(a), _compile(b)

            def run(ctx, env, fa=fa, fb=fb):
                return not fa(ctx, env) or fb(ctx, env)
        case Iff(a, b):
            fa, fb = _compile(a), _compile(b)

            def run(ctx, env, fa=fa, fb=fb):
                return fa(ctx, env) == fb(ctx, env)
        case ForallI(v, body, None):
            fb = _compile(body)

            def run(ctx, env, v=v, fb=fb):
                old = env.get(v, _UNSET)
                for i in range(ctx.n):
                    env[v] = i
                    if not fb(ctx, env):
                        _restore(env, v, old)
                        return False
                _restore(env, v, old)
                return True
        case ExistsI(v, body, None):
            fb = _compile(body)

            def run(ctx, env, v=v, fb=fb):
                old = env.get(v, _UNSET)
                for i in range(ctx.n):
                    env[v] = i
                    if fb(ctx, env):
                        _restore(env, v, old)
                        return True
                _restore(env, v, old)
                return False
        case ForallI(v, body, bound):
            ft, fb = _compile_term(bound), _compile(body)

            def run(ctx, env, v=v, ft=ft, fb=fb):
                rest = ft(ctx, env)
                old = env.get(v, _UNSET)
                while rest:
                    low = rest & -rest
                    env[v] = low.bit_length() - 1
                    if not fb(ctx, env):
                        _restore(env, v, old)
                        return False
                    rest ^= low
                _restore(env, v, old)
                return True
        case ExistsI(v, body, bound):
            ft, fb = _compile_term(bound), _compile(body)

            def run(ctx, env, v=v, ft=ft, fb=fb):
                rest = ft(ctx, env)
                old = env.get(v, _UNSET)
                while rest:
                    low = rest & -rest
                    env[v] = low.bit_length() - 1
                    if fb(ctx, env):
                        _restore(env, v, old)
                        return True
                    rest ^= low
                _restore(env, v, old)
                return False
        case ForallP(v, body, None):
            fb = _compile(body)

            def run(ctx, env, v=v, fb=fb):
                old = env.get(v, _UNSET)
                for m in range(1 << ctx.n):
                    env[v] = m
                    if not fb(ctx, env):
                        _restore(env, v, old)
                        return False
                _restore(env, v, old)
                return True
        case ExistsP(v, body, None):
            fb = _compile(body)

            def run(ctx, env, v=v, fb=fb):
                old = env.get(v, _UNSET)
                for m in range(1 << ctx.n):
                    env[v] = m
                    if fb(ctx, env):
                        _restore(env, v, old)
                        return True
                _restore(env, v, old)
                return False
        case ForallP(v, body, bound):
            ft, fb = _compile_term(bound), _compile(body)

            def run(ctx, env, v=v, ft=ft, fb=fb):
                # submasks of t in ascending order via s -> (s - t) & t
                t = ft(ctx, env)
                old = env.get(v, _UNSET)
                s = 0
                while True:
                    env[v] = s
                    if not fb(ctx, env):
                        _restore(env, v, old)
                        return False
                    if s == t:
                        _restore(env, v, old)
                        return True
                    s = (s - t) & t
        case ExistsP(v, body, bound):
            ft, fb = _compile_term(bound), _compile(body)

            def run(ctx, env, v=v, ft=ft, fb=fb):
                t = ft(ctx, env)
                old = env.get(v, _UNSET)
                s = 0
                while True:
                    env[v] = s
                    if fb(ctx, env):
                        _restore(env, v, old)
                        return True
                    if s == t:
                        _restore(env, v, old)
                        return False
                    s = (s - t) & t
        case _:
            raise TypeError(f)
    return run


_COMPILED = {}
_TERM_COMPILED = {}


def compiled(f: Formula):
    fn = _COMPILED.get(f)
    if fn is None:
        fn = _COMPILED[f] = _compile(f)
    return fn


def compiled_term(t: PluralTerm):
    fn = _TERM_COMPILED.get(t)
    if fn is None:
        fn = _TERM_COMPILED[t] = _compile_term(t)
    return fn


# ---------------------------------------------------------------------------
# public evaluation API

def _env_of(s: Structure, a: Optional[Assignment]) -> dict:
    env = {}
    if a is None:
        return env
    for v, i in a.individuals.items():
        if not (0 <= i < s.n):
            raise EvalError(f"binding {v}={i} outside domain 0..{s.n - 1}")
        env[v] = i
    for v, zz in a.plurals.items():
        m = mask_of(zz)
        if m >> s.n:
            raise EvalError(f"plural binding {v} has members outside the domain")
        env[v] = m
    return env


def _check_bound(f_or_t, env, is_term=False):
    if is_term:
        iv, pv = term_free_ivars(f_or_t), term_free_pvars(f_or_t)
    else:
        iv, pv = free_vars(f_or_t)
    for v in sorted(iv | pv):
        if v not in env:
            raise EvalError(f"unbound variable {v!r}")


class Evaluator:
    """Evaluation bound to one structure, sharing its lookup tables."""

    def __init__(self, s: Structure):
        self.ctx = EvalContext(s)

    def term(self, t: PluralTerm, a: Optional[Assignment] = None) -> Plurality:
        env = _env_of(self.ctx.structure, a)
        _check_bound(t, env, is_term=True)
        return members_of(compiled_term(t)(self.ctx, env))

    def eval(self, f: Formula, a: Optional[Assignment] = None) -> bool:
        env = _env_of(self.ctx.structure, a)
        _check_bound(f, env)
        return compiled(f)(self.ctx, env)

    def check(self, nf: NamedFormula) -> EvalOutcome:
        if self.eval(nf.sentence):
            return EvalOutcome(True, None)
        return EvalOutcome(False, self.find_witness(nf.sentence))

    def find_witness(self, sentence: Formula) -> Optional[Assignment]:
        """First assignment to the leading universal block refuting the rest.

        Returns None when the sentence is true or does not start with a
        universal quantifier.
        """
        ctx = self.ctx
        prefix = []
        body = sentence
        while isinstance(body, (ForallI, ForallP)):
            prefix.append((type(body), body.var, body.bound))
            body = body.body
        if not prefix:
            return None
        fbody = compiled(body)
        bound_fns = [compiled_term(b) if b is not None else None
                     for (_, _, b) in prefix]
        env = {}

        def candidates(i):
            cls, var, _ = prefix[i]
            bf = bound_fns[i]
            if cls is ForallI:
                if bf is None:
                    return range(ctx.n)
                m = bf(ctx, env)
                return list(_iter_bits_asc(m))
            if bf is None:
                return range(1 << ctx.n)
            t = bf(ctx, env)
            return _submasks_asc(t)

        def search(i):
            if i == len(prefix):
                return not fbody(ctx, env)
            _, var, _ = prefix[i]
            for val in candidates(i):
                env[var] = val
                if search(i + 1):
                    return True
            env.pop(var, None)
            return False

        if not search(0):
            return None
        individuals, plurals = {}, {}
        for (cls, var, _) in prefix:
            if cls is ForallI:
                individuals[var] = env[var]
            else:
                plurals[var] = members_of(env[var])
        return Assignment(individuals, plurals)

    def refutes(self, sentence: Formula, witness: Assignment) -> bool:
        """True iff the witness really falsifies the body under its prefix."""
        body = sentence
        names = set(witness.individuals) | set(witness.plurals)
        while isinstance(body, (ForallI, ForallP)) and body.var in names:
            body = body.body
        return not self.eval(body, witness)


def _iter_bits_asc(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _submasks_asc(t: int):
    s = 0
    while True:
        yield s
        if s == t:
            return
        s = (s - t) & t


def eval_term(s: Structure, t: PluralTerm, a: Optional[Assignment] = None) -> Plurality:
    return Evaluator(s).term(t, a)


def eval_formula(s: Structure, f: Formula, a: Optional[Assignment] = None) -> bool:
    return Evaluator(s).eval(f, a)


def check_sentence(s: Structure, nf: NamedFormula) -> EvalOutcome:
    return Evaluator(s).check(nf)
