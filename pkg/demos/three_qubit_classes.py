"""
Three-qubit entanglement classes from the rank of a triple-system element
=========================================================================

"""

import random

from qubitfts.classify import (
    cayley_hyperdet,
    class_from_name,
    classify,
    random_class_member,
    reduce_canonical,
    representative,
    state_to_fts,
)
from qubitfts.fts import fts_rank, quartic_norm
from qubitfts.states import QubitState

# one representative per row of the classification
for name in ("A-B-C", "A-BC", "W", "GHZ"):
    cls = class_from_name(name)
    s = representative(cls)
    x = state_to_fts(s)
    print(f"{name:6s} rank {fts_rank(x)}  q = {quartic_norm(x)}  Det = {cayley_hyperdet(s)}")

# a random SLOCC image of the W state is still W
rng = random.Random(3)
s = random_class_member(rng, class_from_name("W"))
print("disguised W:", classify(s).label)

# reduce a generic state to (1, 0, A, 0) and read off the class parameter
s = QubitState(3, {"000": 1, "011": 2, "101": -1, "110": "1/2", "111": 3})
r = reduce_canonical(s)
print("canonical form:", r.canonical)
print("steps:", [type(step).__name__ for step in r.transcript])
print("k =", r.k, " replay ok:", r.replay(s) == r.canonical)
