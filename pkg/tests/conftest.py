import random

from littlelab.classes import FiniteClass


def random_class(rng: random.Random, max_domain: int = 5,
                 max_rows: int = 12) -> FiniteClass:
    """A seeded nonempty class with domain <= max_domain, rows <= max_rows."""
    domain = rng.randint(1, max_domain)
    universe = 1 << domain
    count = rng.randint(1, min(max_rows, universe))
    rows = rng.sample(range(universe), count)
    return FiniteClass(domain, frozenset(rows))


def seeded_classes(seed: int, count: int, max_domain: int = 5,
                   max_rows: int = 12) -> list[FiniteClass]:
    rng = random.Random(seed)
    return [random_class(rng, max_domain, max_rows) for _ in range(count)]
