import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from splitdecomp import Graph
from splitdecomp.oracle import random_connected_graph

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def connected_graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(max(n - 1, 0), n * (n - 1) // 2))
    seed = draw(st.integers(0, 2**31))
    return random_connected_graph(n, m, seed)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(k):
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def rng_graphs(count, n_lo, n_hi, seed, density=None):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        hi = n * (n - 1) // 2 if density is None else min(n * (n - 1) // 2, int(density * n))
        m = rng.randint(n - 1, max(n - 1, hi))
        yield random_connected_graph(n, m, rng.randrange(1 << 30))
