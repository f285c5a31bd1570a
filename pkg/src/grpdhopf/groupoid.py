"""Finite groupoids as explicit tables, their builders and morphisms.

Objects and arrows are dense integer ids.  ``compose(g, f)`` is "g after f"
and is defined exactly when ``src(g) == tgt(f)``.  Groups are groupoids
with a single object.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .report import Report


class MalformedGroupoidError(ValueError):
    """Tables reference ids that do not exist."""


class ActionLawError(ValueError):
    def __init__(self, law: str, witness: tuple):
        super().__init__(f"action violates the {law} law at {witness}")
        self.law = law
        self.witness = witness


class GuardExceededError(RuntimeError):
    """A brute-force search was asked to run beyond its size guard."""


class NotTransitiveError(ValueError):
    def __init__(self, components):
        super().__init__(f"groupoid is not transitive: components {components}")
        self.components = components


class FiniteGroupoid:
    """A finite groupoid given by its structure tables.

    Args:
        n_objects: number of objects, ids ``0..n_objects-1``.
        src, tgt: per-arrow source and target object ids.
        compose: mapping ``(g, f) -> g∘f`` over the composable pairs.
        identity: per-object identity arrow.
        inverse: per-arrow inverse arrow.
        object_names, arrow_names: optional labels used by the I/O layer.
    """

    def __init__(self, n_objects: int, src: Sequence[int], tgt: Sequence[int],
                 compose: Mapping[tuple[int, int], int], identity: Sequence[int],
                 inverse: Sequence[int], object_names: Sequence[str] | None = None,
                 arrow_names: Sequence[str] | None = None):
        self.n_objects = n_objects
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.compose_table = dict(compose)
        self.identity = tuple(identity)
        self.inverse = tuple(inverse)
        self.object_names = tuple(object_names) if object_names is not None else \
            tuple(str(i) for i in range(n_objects))
        self.arrow_names = tuple(arrow_names) if arrow_names is not None else \
            tuple(f"a{i}" for i in range(len(self.src)))
        if len(self.tgt) != len(self.src):
            raise MalformedGroupoidError("src and tgt tables differ in length")

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def arrows(self) -> range:
        return range(len(self.src))

    def compose(self, g: int, f: int) -> int | None:
        return self.compose_table.get((g, f))

    def hom(self, x: int, y: int) -> list[int]:
        """Arrows from ``x`` to ``y``, by increasing id."""
        return [a for a in self.arrows if self.src[a] == x and self.tgt[a] == y]

    def loops(self, x: int) -> list[int]:
        return self.hom(x, x)

    def composable_pairs(self) -> list[tuple[int, int]]:
        return [(g, f) for g in self.arrows for f in self.arrows if self.src[g] == self.tgt[f]]

    def is_group(self) -> bool:
        return self.n_objects == 1

    def same_tables(self, other: "FiniteGroupoid") -> bool:
        return (self.n_objects == other.n_objects and self.src == other.src
                and self.tgt == other.tgt and self.compose_table == other.compose_table
                and self.identity == other.identity and self.inverse == other.inverse)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return self.same_tables(other)

    def __hash__(self):
        return hash((self.n_objects, self.src, self.tgt, self.identity, self.inverse))

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"

    def replace(self, **kw) -> "FiniteGroupoid":
        args = dict(n_objects=self.n_objects, src=self.src, tgt=self.tgt,
                    compose=self.compose_table, identity=self.identity, inverse=self.inverse,
                    object_names=self.object_names, arrow_names=self.arrow_names)
        args.update(kw)
        return FiniteGroupoid(**args)


def _check_ids(g: FiniteGroupoid):
    n, m = g.n_objects, g.n_arrows
    for a in g.arrows:
        if not (0 <= g.src[a] < n and 0 <= g.tgt[a] < n):
            raise MalformedGroupoidError(f"arrow {a} has a dangling endpoint")
    if len(g.identity) != n:
        raise MalformedGroupoidError("identity table is not total over objects")
    if len(g.inverse) != m:
        raise MalformedGroupoidError("inverse table is not total over arrows")
    for a in list(g.identity) + list(g.inverse):
        if not 0 <= a < m:
            raise MalformedGroupoidError(f"dangling arrow id {a}")
    for (h, f), c in g.compose_table.items():
        if not (0 <= h < m and 0 <= f < m and 0 <= c < m):
            raise MalformedGroupoidError(f"dangling arrow id in compose entry {(h, f, c)}")


def law_holds(g: FiniteGroupoid, axiom: str, witness: tuple) -> bool:
    """Re-evaluate a single groupoid law at a witness tuple."""
    c = g.compose
    if axiom == "objects_nonempty":
        return g.n_objects > 0
    if axiom == "identity_endpoints":
        (x,) = witness
        i = g.identity[x]
        return g.src[i] == x and g.tgt[i] == x
    if axiom == "compose_domain":
        h, f = witness
        return ((h, f) in g.compose_table) == (g.src[h] == g.tgt[f])
    if axiom == "compose_endpoints":
        h, f = witness
        r = c(h, f)
        return r is not None and g.src[r] == g.src[f] and g.tgt[r] == g.tgt[h]
    if axiom == "unit_right":
        (a,) = witness
        return c(a, g.identity[g.src[a]]) == a
    if axiom == "unit_left":
        (a,) = witness
        return c(g.identity[g.tgt[a]], a) == a
    if axiom == "associativity":
        h, f, e = witness
        hf, fe = c(h, f), c(f, e)
        left = c(hf, e) if hf is not None else None
        right = c(h, fe) if fe is not None else None
        return left is not None and left == right
    if axiom == "inverse_left":
        (a,) = witness
        return c(g.inverse[a], a) == g.identity[g.src[a]]
    if axiom == "inverse_right":
        (a,) = witness
        return c(a, g.inverse[a]) == g.identity[g.tgt[a]]
    raise KeyError(axiom)


def validate_groupoid(g: FiniteGroupoid, max_witnesses: int = 1) -> Report:
    """Check every groupoid axiom; each failure carries a witness tuple.

    Raises:
        MalformedGroupoidError: a table refers to a nonexistent id.
    """
    rep = Report()
    counts: dict[str, int] = {}

    def fail(axiom, witness, detail=""):
        if counts.get(axiom, 0) < max_witnesses:
            rep.add(axiom, witness, detail)
        counts[axiom] = counts.get(axiom, 0) + 1

    if g.n_objects == 0:
        fail("objects_nonempty", (), "a groupoid needs at least one object")
        return rep
    _check_ids(g)
    for x in g.objects:
        if not law_holds(g, "identity_endpoints", (x,)):
            fail("identity_endpoints", (x,))
    for h in g.arrows:
        for f in g.arrows:
            if not law_holds(g, "compose_domain", (h, f)):
                fail("compose_domain", (h, f),
                     "composable pair missing" if g.src[h] == g.tgt[f] else "non-composable pair present")
            elif (h, f) in g.compose_table and not law_holds(g, "compose_endpoints", (h, f)):
                fail("compose_endpoints", (h, f))
    for a in g.arrows:
        for law in ("unit_right", "unit_left", "inverse_left", "inverse_right"):
            if not law_holds(g, law, (a,)):
                fail(law, (a,))
    by_tgt: dict[int, list[int]] = {}
    for a in g.arrows:
        by_tgt.setdefault(g.tgt[a], []).append(a)
    for h in g.arrows:
        for f in by_tgt.get(g.src[h], []):
            for e in by_tgt.get(g.src[f], []):
                if not law_holds(g, "associativity", (h, f, e)):
                    fail("associativity", (h, f, e))
    return rep


# ---------------------------------------------------------------- builders

def _from_arrow_list(n_objects, arrows, key_of_compose, identity_key, inverse_key,
                     object_names=None, arrow_name=str):
    """Assemble tables from arrows given as hashable keys with (src, tgt)."""
    keys = [k for k, _, _ in arrows]
    index = {k: i for i, k in enumerate(keys)}
    src = [s for _, s, _ in arrows]
    tgt = [t for _, _, t in arrows]
    comp = {}
    for h, kh in enumerate(keys):
        for f, kf in enumerate(keys):
            if src[h] == tgt[f]:
                comp[(h, f)] = index[key_of_compose(kh, kf)]
    ident = [index[identity_key(x)] for x in range(n_objects)]
    inv = [index[inverse_key(k)] for k in keys]
    return FiniteGroupoid(n_objects, src, tgt, comp, ident, inv, object_names,
                          [arrow_name(k) for k in keys])


def unit_groupoid(n: int) -> FiniteGroupoid:
    """``n`` objects and only their identity arrows."""
    if n < 1:
        raise ValueError("unit_groupoid needs n >= 1")
    return _from_arrow_list(n, [(x, x, x) for x in range(n)], lambda h, f: h,
                            lambda x: x, lambda k: k, arrow_name=lambda k: f"id{k}")


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Arrows are pairs ``(y, x)`` read as ``x -> y``."""
    if n < 1:
        raise ValueError("pair_groupoid needs n >= 1")
    arrows = [((y, x), x, y) for y in range(n) for x in range(n)]
    return _from_arrow_list(n, arrows, lambda h, f: (h[0], f[1]), lambda x: (x, x),
                            lambda k: (k[1], k[0]), arrow_name=lambda k: f"{k[1]}>{k[0]}")


def group_from_table(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FiniteGroupoid:
    """One-object groupoid from a Cayley table ``table[a][b] = a·b``."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise ValueError("Cayley table must be square and nonempty")
    e = next((a for a in range(n) if all(table[a][b] == b for b in range(n))), None)
    if e is None:
        raise ValueError("Cayley table has no identity")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == e and table[b][a] == e), None)
        if b is None:
            raise ValueError(f"element {a} has no inverse")
        inv.append(b)
    comp = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid(1, [0] * n, [0] * n, comp, [e], inv, ["*"],
                          list(names) if names else [f"g{a}" for a in range(n)])


def cyclic_group(n: int) -> FiniteGroupoid:
    g = group_from_table([[(a + b) % n for b in range(n)] for a in range(n)])
    return g.replace(arrow_names=[f"r{a}" for a in range(n)])


def symmetric_group(n: int) -> FiniteGroupoid:
    """S_n on permutations in lexicographic order; ``a·b = a∘b``."""
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
    return group_from_table(table, ["".join(map(str, p)) for p in perms])


def action_groupoid(group: FiniteGroupoid, action, points: int) -> FiniteGroupoid:
    """Arrows ``(g, x)`` from ``x`` to ``g·x``; ``(h, g·x)∘(g, x) = (hg, x)``.

    ``action`` is a callable ``(arrow, point) -> point`` or a table indexed
    ``[arrow][point]``.
    """
    if group.n_objects != 1:
        raise ValueError("action_groupoid needs a one-object groupoid")
    act: Callable[[int, int], int] = action if callable(action) else (lambda a, x: action[a][x])
    e = group.identity[0]
    for x in range(points):
        if act(e, x) != x:
            raise ActionLawError("identity", (e, x))
    for h in group.arrows:
        for g in group.arrows:
            for x in range(points):
                if act(group.compose(h, g), x) != act(h, act(g, x)):
                    raise ActionLawError("compatibility", (h, g, x))
    arrows = [((g, x), x, act(g, x)) for g in group.arrows for x in range(points)]
    return _from_arrow_list(points, arrows, lambda h, f: (group.compose(h[0], f[0]), f[1]),
                            lambda x: (e, x), lambda k: (group.inverse[k[0]], act(k[0], k[1])),
                            arrow_name=lambda k: f"{group.arrow_names[k[0]]}@{k[1]}")


def band_groupoid(n: int, group: FiniteGroupoid) -> FiniteGroupoid:
    """The groupoid ``X × H × X`` on ``n`` objects.

    Arrow ``(x, h, y)`` goes from ``x`` to ``y`` and composition is
    ``(y, h', z)∘(x, h, y) = (x, h'∘h, z)``, so loops at ``x`` multiply
    exactly like ``H`` under ``(x, h, x) -> h``.
    """
    if group.n_objects != 1:
        raise ValueError("band_groupoid needs a one-object groupoid")
    if n < 1:
        raise ValueError("band_groupoid needs n >= 1")
    e = group.identity[0]
    arrows = [((x, h, y), x, y) for x in range(n) for h in group.arrows for y in range(n)]
    return _from_arrow_list(n, arrows, lambda k2, k1: (k1[0], group.compose(k2[1], k1[1]), k2[2]),
                            lambda x: (x, e, x), lambda k: (k[2], group.inverse[k[1]], k[0]),
                            arrow_name=lambda k: f"{k[0]}>{group.arrow_names[k[1]]}>{k[2]}")


def induced_groupoid(h: FiniteGroupoid, u: Sequence[int]):
    """Pull ``h`` back along ``u: P -> h.objects``.

    Arrows are ``(p, g, q)`` with ``u(p) = s(g)`` and ``u(q) = t(g)``.  Returns
    the groupoid and the morphism ``(pr2, u)`` into ``h``.
    """
    u = list(u)
    P = len(u)
    if P == 0:
        raise ValueError("induced_groupoid needs a nonempty point set")
    arrows = [((p, g, q), p, q) for p in range(P) for g in h.arrows for q in range(P)
              if u[p] == h.src[g] and u[q] == h.tgt[g]]
    G = _from_arrow_list(P, arrows, lambda k2, k1: (k1[0], h.compose(k2[1], k1[1]), k2[2]),
                         lambda p: (p, h.identity[u[p]], p), lambda k: (k[2], h.inverse[k[1]], k[0]),
                         arrow_name=lambda k: f"{k[0]}>{h.arrow_names[k[1]]}>{k[2]}")
    amap = [k[1] for k, _, _ in arrows]
    return G, GroupoidMorphism(G, h, tuple(u), tuple(amap))


def disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    n1, m1 = g1.n_objects, g1.n_arrows
    src = list(g1.src) + [s + n1 for s in g2.src]
    tgt = list(g1.tgt) + [t + n1 for t in g2.tgt]
    comp = dict(g1.compose_table)
    comp.update({(h + m1, f + m1): c + m1 for (h, f), c in g2.compose_table.items()})
    ident = list(g1.identity) + [a + m1 for a in g2.identity]
    inv = list(g1.inverse) + [a + m1 for a in g2.inverse]
    onames = [f"0.{s}" for s in g1.object_names] + [f"1.{s}" for s in g2.object_names]
    anames = [f"0.{s}" for s in g1.arrow_names] + [f"1.{s}" for s in g2.arrow_names]
    return FiniteGroupoid(n1 + g2.n_objects, src, tgt, comp, ident, inv, onames, anames)


def subgroupoid(g: FiniteGroupoid, objects: Sequence[int], arrows: Sequence[int]):
    """Full-table restriction to the given (closed) sets; returns it with its inclusion."""
    objects = sorted(objects)
    arrows = sorted(arrows)
    oi = {x: i for i, x in enumerate(objects)}
    ai = {a: i for i, a in enumerate(arrows)}
    comp = {}
    for h in arrows:
        for f in arrows:
            if g.src[h] == g.tgt[f]:
                comp[(ai[h], ai[f])] = ai[g.compose(h, f)]
    sub = FiniteGroupoid(len(objects), [oi[g.src[a]] for a in arrows], [oi[g.tgt[a]] for a in arrows],
                         comp, [ai[g.identity[x]] for x in objects], [ai[g.inverse[a]] for a in arrows],
                         [g.object_names[x] for x in objects], [g.arrow_names[a] for a in arrows])
    return sub, GroupoidMorphism(sub, g, tuple(objects), tuple(arrows))


@dataclass(frozen=True)
class Component:
    objects: tuple[int, ...]
    groupoid: FiniteGroupoid
    inclusion: "GroupoidMorphism"


def component_partition(g: FiniteGroupoid) -> list[tuple[int, ...]]:
    """Objects grouped by connectivity, components ordered by smallest object."""
    parent = list(g.objects)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in g.arrows:
        rs, rt = find(g.src[a]), find(g.tgt[a])
        if rs != rt:
            parent[max(rs, rt)] = min(rs, rt)
    groups: dict[int, list[int]] = {}
    for x in g.objects:
        groups.setdefault(find(x), []).append(x)
    return [tuple(v) for _, v in sorted(groups.items())]


def connected_components(g: FiniteGroupoid) -> list[Component]:
    out = []
    for objs in component_partition(g):
        s = set(objs)
        arrows = [a for a in g.arrows if g.src[a] in s]
        sub, inc = subgroupoid(g, objs, arrows)
        out.append(Component(objs, sub, inc))
    return out


def is_transitive(g: FiniteGroupoid) -> bool:
    return len(component_partition(g)) == 1


def isotropy_group(g: FiniteGroupoid, x: int) -> FiniteGroupoid:
    """The group of loops at ``x`` as a one-object groupoid."""
    return isotropy_inclusion(g, x).domain


def isotropy_inclusion(g: FiniteGroupoid, x: int) -> "GroupoidMorphism":
    if not 0 <= x < g.n_objects:
        raise ValueError(f"no object {x}")
    return subgroupoid(g, [x], g.loops(x))[1]


def isotropy_groupoid(g: FiniteGroupoid):
    """All objects, only the loop arrows; returned with its inclusion."""
    return subgroupoid(g, list(g.objects), [a for a in g.arrows if g.src[a] == g.tgt[a]])


def spanning_arrows(g: FiniteGroupoid) -> dict[int, int]:
    """For each object ``y``: the smallest-id arrow ``y -> x_c`` into its component's base point.

    The base point ``x_c`` is the smallest object of the component and gets its
    identity arrow.  Objects are visited breadth first from the base point.
    """
    tau = {}
    for objs in component_partition(g):
        base = objs[0]
        tau[base] = g.identity[base]
        seen = {base}
        queue = deque([base])
        while queue:
            z = queue.popleft()
            for a in g.arrows:
                y = g.src[a]
                if g.tgt[a] == z and y not in seen:
                    seen.add(y)
                    queue.append(y)
                    tau[y] = min(g.hom(y, base))
    return tau


def generating_arrows(g: FiniteGroupoid) -> tuple[int, ...]:
    """Greedy generating set: an arrow is kept when the earlier ones do not generate it."""
    cached = getattr(g, "_generators", None)
    if cached is not None:
        return cached
    closed = set(g.identity)
    gens = []
    for a in g.arrows:
        if a in closed:
            continue
        gens.append(a)
        closed |= {a, g.inverse[a]}
        frontier = list(closed)
        while frontier:
            new = []
            for h in frontier:
                for f in list(closed):
                    for c in (g.compose(h, f), g.compose(f, h)):
                        if c is not None and c not in closed:
                            closed.add(c)
                            new.append(c)
            frontier = new
    g._generators = tuple(gens)
    return g._generators


def base_points(g: FiniteGroupoid) -> dict[int, int]:
    """Object -> smallest object of its component."""
    return {x: objs[0] for objs in component_partition(g) for x in objs}


# --------------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class GroupoidMorphism:
    domain: FiniteGroupoid
    codomain: FiniteGroupoid
    object_map: tuple[int, ...]
    arrow_map: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, GroupoidMorphism):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.object_map == other.object_map and self.arrow_map == other.arrow_map)

    def __hash__(self):
        return hash((self.object_map, self.arrow_map))

    def __call__(self, arrow: int) -> int:
        return self.arrow_map[arrow]

    def then(self, other: "GroupoidMorphism") -> "GroupoidMorphism":
        """``other ∘ self``."""
        return compose_morphisms(other, self)


def identity_morphism(g: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(g, g, tuple(g.objects), tuple(g.arrows))


def compose_morphisms(psi: GroupoidMorphism, phi: GroupoidMorphism) -> GroupoidMorphism:
    """``psi ∘ phi``."""
    if phi.codomain != psi.domain:
        raise ValueError("morphisms are not composable")
    return GroupoidMorphism(phi.domain, psi.codomain,
                            tuple(psi.object_map[x] for x in phi.object_map),
                            tuple(psi.arrow_map[a] for a in phi.arrow_map))


def validate_morphism(phi: GroupoidMorphism) -> Report:
    g, k = phi.domain, phi.codomain
    rep = Report()
    if len(phi.object_map) != g.n_objects or len(phi.arrow_map) != g.n_arrows:
        rep.add("totality", (len(phi.object_map), len(phi.arrow_map)))
        return rep
    o, a = phi.object_map, phi.arrow_map
    if any(not 0 <= y < k.n_objects for y in o) or any(not 0 <= b < k.n_arrows for b in a):
        rep.add("codomain_ids", ())
        return rep
    for f in g.arrows:
        if k.src[a[f]] != o[g.src[f]]:
            rep.add("preserves_src", (f,))
        if k.tgt[a[f]] != o[g.tgt[f]]:
            rep.add("preserves_tgt", (f,))
        if a[g.inverse[f]] != k.inverse[a[f]]:
            rep.add("preserves_inverse", (f,))
    for x in g.objects:
        if a[g.identity[x]] != k.identity[o[x]]:
            rep.add("preserves_identity", (x,))
    for (h, f), c in g.compose_table.items():
        if k.compose(a[h], a[f]) != a[c]:
            rep.add("preserves_composition", (h, f))
            break
    return rep


def is_isomorphism(phi: GroupoidMorphism) -> bool:
    return (validate_morphism(phi).ok
            and sorted(phi.object_map) == list(phi.codomain.objects)
            and sorted(phi.arrow_map) == list(phi.codomain.arrows))


def enumerate_morphisms(g: FiniteGroupoid, k: FiniteGroupoid, guard: int = 10) -> list[GroupoidMorphism]:
    """Every functor ``g -> k`` by backtracking, in a deterministic order.

    Object maps are tried in lexicographic order, then arrow images by
    increasing id.

    Raises:
        GuardExceededError: ``g`` has more than ``guard`` arrows.
    """
    if g.n_arrows > guard:
        raise GuardExceededError(f"domain has {g.n_arrows} arrows, guard is {guard}")
    order = list(g.arrows)
    pos = {a: i for i, a in enumerate(order)}
    # composition constraints become checkable once their last arrow is assigned
    checks: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for (h, f), c in g.compose_table.items():
        checks[max(pos[h], pos[f], pos[c])].append((h, f, c))
    inv_checks: list[list[int]] = [[] for _ in order]
    for a in g.arrows:
        inv_checks[max(pos[a], pos[g.inverse[a]])].append(a)
    ident_of = {g.identity[x]: x for x in g.objects}
    out = []
    for omap in itertools.product(range(k.n_objects), repeat=g.n_objects):
        amap = [None] * g.n_arrows

        def extend(i):
            if i == len(order):
                out.append(GroupoidMorphism(g, k, tuple(omap), tuple(amap)))
                return
            a = order[i]
            if a in ident_of:
                cands = [k.identity[omap[ident_of[a]]]]
            else:
                cands = k.hom(omap[g.src[a]], omap[g.tgt[a]])
            for b in cands:
                amap[a] = b
                if all(k.compose(amap[h], amap[f]) == amap[c] for h, f, c in checks[i]) and \
                        all(k.inverse[amap[x]] == amap[g.inverse[x]] for x in inv_checks[i]):
                    extend(i + 1)
            amap[a] = None

        extend(0)
    return out


def find_isomorphism(g: FiniteGroupoid, k: FiniteGroupoid, guard: int = 64) -> GroupoidMorphism | None:
    if g.n_objects != k.n_objects or g.n_arrows != k.n_arrows:
        return None
    for phi in enumerate_morphisms(g, k, guard=guard):
        if is_isomorphism(phi):
            return phi
    return None


def tables_match_under(g: FiniteGroupoid, k: FiniteGroupoid, arrow_bijection: Sequence[int]) -> bool:
    """Whether composition tables agree under the given arrow bijection."""
    b = list(arrow_bijection)
    if sorted(b) != list(k.arrows):
        return False
    return all(k.compose(b[h], b[f]) == b[c] for (h, f), c in g.compose_table.items()) and \
        len(g.compose_table) == len(k.compose_table)
