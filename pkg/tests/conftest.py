import functools

import pytest

from grpdhopf import corpus
from grpdhopf.groupoid import GroupoidMorphism, pair_groupoid, unit_groupoid
from grpdhopf.linalg import FieldSpec

Q = FieldSpec.rational()
F5 = FieldSpec.prime(5)
FIELDS = (Q, F5)


@functools.lru_cache(maxsize=None)
def member(name):
    return corpus.load(name)


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


@pytest.fixture(params=corpus.CORPUS)
def corpus_name(request):
    return request.param


def mutate_entry(g, rng):
    """One random single-entry change to the compose, identity or inverse table."""
    table = rng.choice(("compose", "compose", "identity", "inverse"))
    if table == "compose":
        key = rng.choice(sorted(g.compose_table))
        old = g.compose_table[key]
        new = rng.choice([a for a in g.arrows if a != old])
        comp = dict(g.compose_table)
        comp[key] = new
        return g.replace(compose=comp), ("compose", key, new)
    if table == "identity":
        x = rng.randrange(g.n_objects)
        new = rng.choice([a for a in g.arrows if a != g.identity[x]])
        ident = list(g.identity)
        ident[x] = new
        return g.replace(identity=ident), ("identity", x, new)
    a = rng.randrange(g.n_arrows)
    new = rng.choice([b for b in g.arrows if b != g.inverse[a]])
    inv = list(g.inverse)
    inv[a] = new
    return g.replace(inverse=inv), ("inverse", a, new)


def diagonal(n=3):
    """The unit groupoid inside the pair groupoid: x -> (x, x)."""
    u, v = unit_groupoid(n), pair_groupoid(n)
    return GroupoidMorphism(u, v, tuple(range(n)), tuple(x * n + x for x in range(n)))


def projection():
    """Z/3 acting on itself by translation, projected to Z/3: (g, x) -> g."""
    act, z3 = member("action_z3_translation"), member("z3")
    return GroupoidMorphism(act, z3, (0, 0, 0), tuple(a // 3 for a in act.arrows))


def band_swap():
    """Automorphism of band_2_z2 exchanging the two objects: (x, h, y) -> (1-x, h, 1-y)."""
    g = member("band_2_z2")
    amap = []
    for a in g.arrows:
        x, rest = divmod(a, 4)
        h, y = divmod(rest, 2)
        amap.append(((1 - x) * 2 + h) * 2 + (1 - y))
    return GroupoidMorphism(g, g, (1, 0), tuple(amap))


CORPUS_MORPHISMS = {"diagonal": diagonal, "projection": projection, "band_swap": band_swap}


ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    """One PASS/FAIL line per acceptance criterion, echoed in the terminal summary."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
