"""Random small presentations for property tests."""
import random

from fitails.combinatorics import enumerate_injections
from fitails.presentation import FIPresentation


def random_presentation(rng: random.Random, max_degree=3, max_terms=3, coeff=7) -> FIPresentation:
    """At least one relation and one nonzero entry; entries of up to ``max_terms`` terms."""
    while True:
        gens = [rng.randint(0, max_degree) for _ in range(rng.randint(1, 2))]
        low = min(gens)
        rels = [rng.randint(low, max_degree) for _ in range(rng.randint(1, 2))]
        entries = {}
        for i, a in enumerate(gens):
            for j, b in enumerate(rels):
                if a > b or rng.random() < 0.2:
                    continue
                pool = enumerate_injections(a, b)
                terms = {}
                for _ in range(rng.randint(1, max_terms)):
                    f = rng.choice(pool)
                    terms[f.images] = terms.get(f.images, 0) + rng.choice(
                        [c for c in range(-coeff, coeff + 1) if c]
                    )
                entries[(i, j)] = terms
        z = FIPresentation(gens, rels, entries)
        if z.entries:
            return z
