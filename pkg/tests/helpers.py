"""Random polynomials for property tests (plain ``random`` and hypothesis)."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from nalg.magma import ONE, Flavor, Polynomial

FLAVORS = list(Flavor)


def random_tree(rng: random.Random, nvars: int, deg: int):
    """A raw (uncanonicalized) binary tree with ``deg`` leaves."""
    if deg == 0:
        return ONE
    if deg == 1:
        return rng.randint(1, nvars)
    left = rng.randint(1, deg - 1)
    return (random_tree(rng, nvars, left), random_tree(rng, nvars, deg - left))


def random_polynomial(rng: random.Random, flavor: Flavor, nvars: int = 3, max_degree: int = 6,
                      max_terms: int = 5) -> Polynomial:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        tree = random_tree(rng, nvars, rng.randint(0, max_degree))
        terms.append((tree, Fraction(rng.randint(-9, 9), rng.randint(1, 4))))
    return Polynomial(terms, flavor)


@st.composite
def trees(draw, nvars=3, max_degree=5, min_degree=0):
    deg = draw(st.integers(min_degree, max_degree))

    def build(d):
        if d == 0:
            return ONE
        if d == 1:
            return draw(st.integers(1, nvars))
        left = draw(st.integers(1, d - 1))
        return (build(left), build(d - left))
    return build(deg)


@st.composite
def polynomials(draw, flavor=None, nvars=3, max_degree=5, max_terms=4, nonzero=False):
    fl = draw(st.sampled_from(FLAVORS)) if flavor is None else flavor
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = [(draw(trees(nvars, max_degree)),
              Fraction(draw(st.integers(-6, 6).filter(lambda c: c or not nonzero)), draw(st.integers(1, 3))))
             for _ in range(n)]
    p = Polynomial(terms, fl)
    if nonzero and not p:
        p = Polynomial.var(1, fl)
    return p
