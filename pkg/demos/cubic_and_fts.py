"""
Cubic Jordan algebra and the triple system built over it
========================================================

"""

import random

from qubitfts.fts import FtsElement, fts_rank, quartic_norm, random_word, apply_word, symplectic_form
from qubitfts.jordan import JordanElement, cubic_norm, jordan_product, sharp

# elements of the algebra are triples of Gaussian rationals, norm is the product
a = JordanElement(1, 2, 3)
print("N(a) =", cubic_norm(a))
print("a#   =", sharp(a))
print("a#'s adjoint is N(a) a:", sharp(sharp(a)) == a.scale(cubic_norm(a)))

# the product is commutative but not associative in general
b = JordanElement(1, "1/2", -1)
print("a o b =", jordan_product(a, b))

# an element of the triple system: (alpha, beta, A, B)
x = FtsElement(1, 0, JordanElement(1, 1, 1), JordanElement(0, 0, 0))
print("q(x) =", quartic_norm(x), " rank", fts_rank(x))

# random words in the generators keep both invariants fixed
rng = random.Random(7)
y = FtsElement(2, -1, JordanElement(0, 1, 3), JordanElement(1, 0, "1/3"))
word = random_word(rng, max_length=5)
print("word of length", len(word))
print("{x,y} before/after:", symplectic_form(x, y), symplectic_form(apply_word(word, x), apply_word(word, y)))
print("q(x)  before/after:", quartic_norm(x), quartic_norm(apply_word(word, x)))
