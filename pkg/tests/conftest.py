import random

from bergeham.hypergraph import Hypergraph, universe_masks


def random_hypergraph(rng: random.Random, n: int, r: int, m: int | None = None) -> Hypergraph:
    u = universe_masks(n, r)
    if m is None:
        m = rng.randint(0, len(u))
    return Hypergraph(n, r, rng.sample(u, m))
