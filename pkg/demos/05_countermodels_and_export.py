"""Probing axiom independence, and exporting obligations for ATPs.

Dropping an axiom and searching for a structure that satisfies the rest
while refuting it separates the axiom from the remainder -- at least at
the sizes searched.  Weak supplementation separates already on two
elements; singleton collapse does not separate below n=3.

Every lemma obligation can also be written out as a TPTP problem file
(axioms + the comprehension instances its symbols need + conjecture)
for external first-order provers.
"""

import tempfile
from pathlib import Path

from gemcheck import SearchBounds, dump_structure, find_countermodel, gem_f
from gemcheck.export import emit_all

for dropped in ("wsp_F", "id_F", "ext_F"):
    result = find_countermodel("fusion", gem_f().drop(dropped),
                               gem_f().get(dropped),
                               SearchBounds(max_n_fusion=2))
    print(f"drop {dropped}: {result.verdict} "
          f"({result.candidates} candidates searched)")
    if result.structure is not None:
        print("  separating structure:",
              dump_structure(result.structure).splitlines()[1])
        print("  refuting binding:", result.witness)

out = Path(tempfile.mkdtemp()) / "obligations"
paths = emit_all(out)
print(f"\nwrote {len(paths)} TPTP problems to {out}")
print("\nthe singleton-fusion lemma, as a problem file:")
print((out / "FIx.p").read_text())
