"""Two faces of classical mereology on one finite model.

The canonical model on k atoms is the set of nonempty subsets of
{1..k} under inclusion: 2^k - 1 elements, with the singletons as atoms
and the full set on top.  Its parthood relation satisfies the
parthood-primitive axioms, and the fusion relation it induces (each
plurality fuses to its least upper bound) satisfies the
fusion-primitive axioms.
"""

from gemcheck import (canonical_gem, dump_structure, gem_f, gem_p,
                      induced_fusion, induced_part, mub)
from gemcheck.semantics import Evaluator

model = canonical_gem(2)
print("canonical model on 2 atoms (elements 0,1 atoms, 2 the whole):")
print(dump_structure(model))

print("parthood axioms:")
ev = Evaluator(model)
for axiom in gem_p():
    print(f"  {axiom.name:<10} {ev.eval(axiom.sentence)}")

fusion = induced_fusion(model)
print("\nthe induced fusion relation (plurality -> least upper bound):")
print(dump_structure(fusion))

print("fusion axioms on the induced relation:")
ev = Evaluator(fusion)
for axiom in gem_f():
    print(f"  {axiom.name:<10} {ev.eval(axiom.sentence)}")

print("\ntranslating back recovers the original parthood relation:",
      induced_part(fusion) == model)

print("minimal upper bounds agree with fusion: mub({0,1}) =",
      set(mub(model, {0, 1})))
