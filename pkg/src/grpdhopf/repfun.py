"""Representative functions on a finite groupoid.

Two models are built.  The concrete one is ``k^{𝒢₁}`` in the delta basis
with precomposition structure maps.  The coend one is the quotient of
``⊕_E Γ(E)* ⊗ Γ(E)`` by the intertwiner relations over a finite family
``L`` of representations, computed blockwise: a relation never mixes the
``(y, x)`` object pair of its terms, so each block is reduced on its own.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .groupoid import (FiniteGroupoid, GroupoidMorphism, NotTransitiveError, band_groupoid,
                       component_partition, is_isomorphism, isotropy_group, isotropy_groupoid,
                       isotropy_inclusion, validate_morphism)
from .hopf import (HopfAlgebroid, HopfMorphism, CommAlgebra, check_hopf_axioms, extended_hopf_algebroid,
                   point_block, validate_hopf_morphism)
from .linalg import FieldSpec, Matrix, _rref_rows, kernel_basis, rank, same_column_space
from .report import Report
from .representation import (Representation, dual_rep, intertwiner_space, restrict_along, spanning_family,
                             tensor_rep, trivial_rep)

DEFAULT_MAX_RANK = 16


# ------------------------------------------------------------- concrete model

def repfun_concrete(g: FiniteGroupoid, field: FieldSpec) -> HopfAlgebroid:
    """``k^{𝒢₁}`` with ``η_s(a) = a∘s``, ``η_t(a) = a∘t``, ``ε(F) = F∘ι``,
    ``S(F) = F∘inverse`` and ``Δ(F)(g, f) = F(g∘f)``."""
    o = field.one
    n, m = g.n_objects, g.n_arrows
    base = CommAlgebra.split(field, g.object_names)
    total = CommAlgebra.split(field, g.arrow_names)
    src_cols = [{a: o for a in g.arrows if g.src[a] == x} for x in g.objects]
    tgt_cols = [{a: o for a in g.arrows if g.tgt[a] == x} for x in g.objects]
    ident = {a: x for x, a in enumerate(g.identity)}
    counit_cols = [{ident[a]: o} if a in ident else {} for a in g.arrows]
    anti_cols = [{g.inverse[a]: o} for a in g.arrows]
    h = HopfAlgebroid(base, total,
                      Matrix.from_sparse_columns(field, m, src_cols),
                      Matrix.from_sparse_columns(field, m, tgt_cols),
                      Matrix.from_sparse_columns(field, n, counit_cols),
                      Matrix.zeros(field, 0, m), [],
                      Matrix.from_sparse_columns(field, m, anti_cols))
    pairs = h.balanced(2).keys
    pidx = {p: i for i, p in enumerate(pairs)}
    delta_cols = [dict() for _ in g.arrows]
    for (a, b), c in g.compose_table.items():
        delta_cols[c][pidx[(a, b)]] = o
    return h.replace(comult=Matrix.from_sparse_columns(field, len(pairs), delta_cols), comult_basis=pairs)


# ------------------------------------------------------------- coend model

def family_closure(g: FiniteGroupoid, field: FieldSpec, family: Sequence[Representation],
                   depth: int = 2, max_rank: int = DEFAULT_MAX_RANK) -> list[Representation]:
    """``𝓘``, the family, its duals and tensor products of up to ``depth`` members.

    Products whose rank exceeds ``max_rank`` are skipped; duplicates (equal
    matrices) are dropped.  The result is closed under duals.
    """
    out: list[Representation] = []

    def add(r):
        if r.rank <= max_rank and r not in out:
            out.append(r)

    add(trivial_rep(g, field))
    gens = []
    for r in family:
        for s in (r, dual_rep(r)):
            if s not in gens:
                gens.append(s)
            add(s)
    layer = list(gens)
    for _ in range(depth - 1):
        new = []
        for a in layer:
            for b in gens:
                if a.rank * b.rank <= max_rank:
                    p = tensor_rep(a, b)
                    if p not in out:
                        out.append(p)
                        new.append(p)
        layer = new
    for r in list(out):
        d = dual_rep(r)
        if d not in out:
            out.append(d)
    return out


@dataclass
class _Block:
    keys: list            # ambient keys (E, i, j) of the block
    rows: list            # reduced relation rows
    pivots: list
    free: list            # non-pivot ambient positions, in order

    def __post_init__(self):
        self.key_index = {k: i for i, k in enumerate(self.keys)}
        self.pivot_set = set(self.pivots)


class CoendModel:
    """Quotient of ``⊕_{E∈L} Γ(E)* ⊗ Γ(E)`` by ``φ⊗αs − φα⊗s``.

    Ambient keys are ``(E, y, i, x, j)``: member ``E``, the element
    ``e_y s_i* ⊗ e_x s_j``.  The basis consists of the ambient keys at non-pivot
    positions of each reduced block.
    """

    def __init__(self, g: FiniteGroupoid, family: Sequence[Representation]):
        if not family:
            raise ValueError("coend family must contain at least the unit representation")
        self.groupoid = g
        self.field = family[0].field
        self.family = tuple(family)
        self.member_index = {r: i for i, r in enumerate(self.family)}
        self._products: dict = {}
        self._duals: dict = {}
        self._max_member_rank = max(r.rank for r in self.family)
        f = self.field
        n = g.n_objects
        homs = {(a, b): intertwiner_space(self.family[a], self.family[b])
                for a in range(len(self.family)) for b in range(len(self.family))}
        self.intertwiner_count = sum(len(v) for v in homs.values())
        self.blocks: dict[tuple[int, int], _Block] = {}
        self.basis: list[tuple] = []
        for y in range(n):
            for x in range(n):
                keys = [(e, i, j) for e, r in enumerate(self.family)
                        for i in range(r.rank) for j in range(r.rank)]
                kidx = {k: p for p, k in enumerate(keys)}
                rows = []
                for (a, b), alphas in homs.items():
                    dX, dY = self.family[a].rank, self.family[b].rank
                    for alpha in alphas:
                        ax, ay = alpha.components[x], alpha.components[y]
                        for i in range(dY):
                            for j in range(dX):
                                row = [f.zero] * len(keys)
                                for l in range(dY):
                                    c = ax[l, j]
                                    if c:
                                        row[kidx[(b, i, l)]] += c
                                for mm in range(dX):
                                    c = ay[i, mm]
                                    if c:
                                        row[kidx[(a, mm, j)]] -= c
                                if any(row):
                                    rows.append(row)
                pivots = _rref_rows(f, rows, len(keys))
                rows = rows[:len(pivots)]
                pset = set(pivots)
                free = [p for p in range(len(keys)) if p not in pset]
                self.blocks[(y, x)] = _Block(keys, rows, pivots, free)
                for p in free:
                    e, i, j = keys[p]
                    self.basis.append((e, y, i, x, j))
        self.index = {k: i for i, k in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return sum(len(b.keys) for b in self.blocks.values())

    def relation_rank(self) -> int:
        return sum(len(b.pivots) for b in self.blocks.values())

    def normal_form(self, vec: dict) -> tuple:
        """Coordinates in the quotient basis of an ambient vector ``{key: c}``."""
        f = self.field
        out = [f.zero] * self.dim
        by_block: dict = {}
        for (e, y, i, x, j), c in vec.items():
            by_block.setdefault((y, x), {})[(e, i, j)] = c
        for (y, x), part in by_block.items():
            blk = self.blocks[(y, x)]
            v = [f.zero] * len(blk.keys)
            for k, c in part.items():
                v[blk.key_index[k]] += c
            for r, pc in enumerate(blk.pivots):
                c = v[pc]
                if c:
                    row = blk.rows[r]
                    for q, rv in enumerate(row):
                        if rv:
                            v[q] -= c * rv
            for p in blk.free:
                if v[p]:
                    e, i, j = blk.keys[p]
                    out[self.index[(e, y, i, x, j)]] = v[p]
        return tuple(out)

    def is_zero_class(self, vec: dict) -> bool:
        return not any(self.normal_form(vec))

    # ----- structure on representatives
    def member_of(self, r: Representation) -> int | None:
        return self.member_index.get(r)

    def product_member(self, e: int, e2: int) -> int | None:
        """Index of ``E⊗F`` in the family, ``None`` if absent; memoized."""
        key = (e, e2)
        if key not in self._products:
            a, b = self.family[e], self.family[e2]
            self._products[key] = (self.member_of(tensor_rep(a, b))
                                   if a.rank * b.rank <= self._max_member_rank else None)
        return self._products[key]

    def dual_member(self, e: int) -> int | None:
        if e not in self._duals:
            self._duals[e] = self.member_of(dual_rep(self.family[e]))
        return self._duals[e]

    def unit(self) -> dict:
        e = self.member_of(trivial_rep(self.groupoid, self.field))
        n = self.groupoid.n_objects
        return {(e, y, 0, x, 0): self.field.one for y in range(n) for x in range(n)}

    def product_key(self, a: tuple, b: tuple) -> tuple | None | bool:
        """Product of two ambient keys: a key, ``None`` for zero, ``False`` if ``E⊗F ∉ L``."""
        (e, y, i, x, j), (e2, y2, i2, x2, j2) = a, b
        if y != y2 or x != x2:
            return None
        prod = self.product_member(e, e2)
        if prod is None:
            return False
        d2 = self.family[e2].rank
        return (prod, y, i * d2 + i2, x, j * d2 + j2)

    def multiply(self, u: dict, v: dict) -> dict | None:
        out: dict = {}
        for a, c in u.items():
            for b, d in v.items():
                k = self.product_key(a, b)
                if k is False:
                    return None
                if k is not None:
                    out[k] = out.get(k, self.field.zero) + c * d
        return {k: c for k, c in out.items() if c}

    def antipode_key(self, key: tuple) -> tuple:
        e, y, i, x, j = key
        d = self.dual_member(e)
        if d is None:
            raise ValueError("family is not closed under duals")
        return (d, x, j, y, i)

    def counit_key(self, key: tuple) -> dict:
        e, y, i, x, j = key
        return {x: self.field.one} if (y == x and i == j) else {}

    def comult_key(self, key: tuple) -> list[tuple[tuple, tuple]]:
        e, y, i, x, j = key
        return [((e, y, i, z, l), (e, z, l, x, j))
                for z in range(self.groupoid.n_objects) for l in range(self.family[e].rank)]

    def zeta_key(self, key: tuple) -> tuple:
        """``ζ(e_y s_i* ⊗ e_x s_j)(g) = δ_{y,t g} δ_{x,s g} (ϱ_g)_ij``."""
        e, y, i, x, j = key
        g = self.groupoid
        r = self.family[e]
        z = self.field.zero
        return tuple(r[a][i, j] if (g.tgt[a] == y and g.src[a] == x) else z for a in g.arrows)

    def zeta_matrix(self) -> Matrix:
        if not self.basis:
            return Matrix.zeros(self.field, self.groupoid.n_arrows, 0)
        return Matrix.from_columns(self.field, [self.zeta_key(k) for k in self.basis], self.groupoid.n_arrows)


def coend_from_family(g: FiniteGroupoid, family: Sequence[Representation], depth: int = 2,
                      max_rank: int = DEFAULT_MAX_RANK) -> CoendModel:
    """Coend over the closure of ``family`` (always containing 𝓘)."""
    field = family[0].field if family else None
    if field is None:
        raise ValueError("empty family: pass at least one representation")
    return CoendModel(g, family_closure(g, field, family, depth, max_rank))


@dataclass
class RepFunElement:
    """An element of the coend model, by coordinates in its quotient basis."""

    model: CoendModel
    coords: tuple

    def function(self) -> tuple:
        return self.model.zeta_matrix().apply(self.coords)


# ------------------------------------------------------------- zeta

@dataclass
class ZetaReport:
    matrix: Matrix
    coend_dim: int
    image_dim: int
    kernel_dim: int
    report: Report
    checked_random: int = 0

    def to_dict(self) -> dict:
        return {"coend_dim": self.coend_dim, "image_dim": self.image_dim, "kernel_dim": self.kernel_dim,
                "checked_random": self.checked_random, **self.report.to_dict()}


def zeta(model: CoendModel, samples: int = 100, seed: int = 0) -> ZetaReport:
    """ζ as a matrix with its verified properties.

    Checks unit, B⊗B-linearity, multiplicativity (where ``E⊗F ∈ L``), the
    well-definedness of products on classes, and the three identities
    ``ι*∘ζ = ε``, ``ζ∘S = (inverse)*∘ζ`` and ``ζ(F)(g∘f) = Σ ζ(F₁)(g) ζ(F₂)(f)``,
    on every basis element and on ``samples`` seeded random combinations.
    """
    g, f = model.groupoid, model.field
    rep = Report()
    Z = model.zeta_matrix()
    dim = model.dim
    one = f.one

    if Z.apply(model.normal_form(model.unit())) != tuple(one for _ in g.arrows):
        rep.add("unit", (), "ζ(1) is not the constant function 1")
    # B⊗B-linearity: (e_y ⊗ e_x)·c only keeps the (y, x) block
    for k, key in enumerate(model.basis):
        col = model.zeta_key(key)
        _, y, _, x, _ = key
        for a in g.arrows:
            if col[a] and (g.tgt[a] != y or g.src[a] != x):
                rep.add("bimodule", (k, a), "ζ of a (y,x) element is supported off its block")
                break
    # multiplicativity on basis pairs and well-definedness on relation generators
    zcols = [model.zeta_key(k) for k in model.basis]
    for p, a in enumerate(model.basis):
        for q in range(p, dim):
            prod = model.multiply({a: one}, {model.basis[q]: one})
            if prod is None:
                continue
            lhs = Z.apply(model.normal_form(prod))
            rhs = tuple(u * v for u, v in zip(zcols[p], zcols[q]))
            if lhs != rhs:
                rep.add("multiplicative", (p, q), "ζ(ab) ≠ ζ(a)ζ(b)")
    for (y, x), blk in model.blocks.items():
        for row in blk.rows:
            rel = {}
            for pos, c in enumerate(row):
                if c:
                    e, i, j = blk.keys[pos]
                    rel[(e, y, i, x, j)] = c
            for b in model.basis:
                prod = model.multiply(rel, {b: one})
                if prod is not None and not model.is_zero_class(prod):
                    rep.add("product_well_defined", ((y, x), b), "relation times basis element is nonzero")
                    break
    # identity (1): ε through evaluation at identity arrows
    E = Matrix.from_columns(f, [tuple(model.counit_key(k).get(x, f.zero) for x in g.objects)
                                for k in model.basis], g.n_objects) if dim else Matrix.zeros(f, g.n_objects, 0)
    ident_rows = Z.submatrix(list(g.identity), list(range(dim)))
    if ident_rows != E:
        rep.add("identity_1", (), "ι*∘ζ ≠ ε")
    # identity (2): antipode through inversion
    S = Matrix.from_columns(f, [model.normal_form({model.antipode_key(k): one}) for k in model.basis], dim) \
        if dim else Matrix.zeros(f, 0, 0)
    inv_rows = Z.submatrix(list(g.inverse), list(range(dim)))
    if Z @ S != inv_rows:
        rep.add("identity_2", (), "ζ∘S ≠ ζ(-)∘inverse")
    # identity (3): comultiplication through composition
    pairs = g.composable_pairs()
    lhs_rows = Z.submatrix([g.compose(a, b) for a, b in pairs], list(range(dim)))
    rhs_cols = []
    for key in model.basis:
        col = [f.zero] * len(pairs)
        for k1, k2 in model.comult_key(key):
            z1, z2 = model.zeta_key(k1), model.zeta_key(k2)
            for r, (a, b) in enumerate(pairs):
                if z1[a] and z2[b]:
                    col[r] += z1[a] * z2[b]
        rhs_cols.append(col)
    rhs = Matrix.from_columns(f, rhs_cols, len(pairs)) if dim else Matrix.zeros(f, len(pairs), 0)
    if lhs_rows != rhs:
        rep.add("identity_3", (), "ζ(F)(g∘f) ≠ Σ ζ(F₁)(g) ζ(F₂)(f)")
    # random elements: the same identities as vector equalities
    rng = random.Random(seed)
    for t in range(samples if dim else 0):
        v = tuple(f.random(rng) for _ in range(dim))
        if ident_rows.apply(v) != E.apply(v):
            rep.add("identity_1", ("random", t))
            break
        if Z.apply(S.apply(v)) != inv_rows.apply(v):
            rep.add("identity_2", ("random", t))
            break
        if lhs_rows.apply(v) != rhs.apply(v):
            rep.add("identity_3", ("random", t))
            break
    rk = rank(Z)
    return ZetaReport(Z, dim, rk, dim - rk, rep, samples if dim else 0)


# ------------------------------------------------------------- bundle

@dataclass
class RepFunAlgebroid:
    groupoid: FiniteGroupoid
    field: FieldSpec
    concrete: HopfAlgebroid
    family: tuple
    coend: CoendModel | None = None
    zeta: ZetaReport | None = None


def build_repfun(g: FiniteGroupoid, field: FieldSpec, depth: int = 2, with_coend: bool = True,
                 samples: int = 100, seed: int = 0) -> RepFunAlgebroid:
    fam = tuple(spanning_family(g, field))
    out = RepFunAlgebroid(g, field, repfun_concrete(g, field), fam)
    if with_coend:
        out.coend = coend_from_family(g, fam, depth)
        out.zeta = zeta(out.coend, samples, seed)
    return out


# ------------------------------------------------------------- functoriality

def repfun_morphism_matrices(phi: GroupoidMorphism, field: FieldSpec) -> tuple[Matrix, Matrix]:
    """Precomposition with ``φ₀`` and ``φ₁`` in delta bases."""
    G, K = phi.domain, phi.codomain
    o = field.one
    base = Matrix.from_sparse_columns(field, G.n_objects,
                                      [{x: o for x in G.objects if phi.object_map[x] == y} for y in K.objects])
    total = Matrix.from_sparse_columns(field, G.n_arrows,
                                       [{a: o for a in G.arrows if phi.arrow_map[a] == h} for h in K.arrows])
    return base, total


@dataclass
class MorphismReport:
    morphism: HopfMorphism
    report: Report


def repfun_on_morphism(phi: GroupoidMorphism, field: FieldSpec, check_naturality: bool = True,
                       domain_hopf: HopfAlgebroid | None = None,
                       codomain_hopf: HopfAlgebroid | None = None) -> MorphismReport:
    """``ℛ(φ): ℛ(codomain) -> ℛ(domain)`` and its verification.

    The naturality square is checked on the coend model of the codomain
    (spanning family, depth 1), transported along ``φ`` into a coend model of
    the domain built from the restricted family.
    """
    G, K = phi.domain, phi.codomain
    rep = Report()
    vm = validate_morphism(phi)
    if not vm.ok:
        rep.violations.extend(vm.violations)
        raise ValueError(f"not a groupoid morphism: {vm}")
    hG = domain_hopf or repfun_concrete(G, field)
    hK = codomain_hopf or repfun_concrete(K, field)
    base, total = repfun_morphism_matrices(phi, field)
    alpha = HopfMorphism(hK, hG, base, total)
    for v in validate_hopf_morphism(alpha).violations:
        rep.add("hopf_morphism_" + v.axiom, v.witness, v.detail)
    if check_naturality:
        famK = spanning_family(K, field)
        mK = coend_from_family(K, famK, depth=1)
        mG = CoendModel(G, [restrict_along(phi, r) for r in mK.family])
        ZG, ZK = mG.zeta_matrix(), mK.zeta_matrix()
        one = field.one
        for k, (e, y, i, x, j) in enumerate(mK.basis):
            pulled = {(e, y2, i, x2, j): one for y2 in G.objects if phi.object_map[y2] == y
                      for x2 in G.objects if phi.object_map[x2] == x}
            lhs = ZG.apply(mG.normal_form(pulled))
            rhs = total.apply(ZK.column(k))
            if lhs != rhs:
                rep.add("zeta_naturality", (k,), "ζ_G∘ℛ(φ) ≠ M(φ₁)∘ζ_K")
                break
    return MorphismReport(alpha, rep)


# ------------------------------------------------------------- isotropy

@dataclass
class QuotientReport:
    subgroupoid: FiniteGroupoid
    morphism: HopfMorphism
    kernel_dim: int
    ideal_dim: int
    report: Report


def isotropy_quotient(g: FiniteGroupoid, field: FieldSpec) -> QuotientReport:
    """Restriction ``ℛ(𝒢) -> ℛ(𝒢ⁱ)`` to loops, with its kernel compared to the ideal
    generated by ``η_s(b) − η_t(b)``."""
    sub, inc = isotropy_groupoid(g)
    h = repfun_concrete(g, field)
    mr = repfun_on_morphism(inc, field, check_naturality=False, codomain_hopf=h)
    rep = mr.report
    alpha = mr.morphism
    ker = kernel_basis(alpha.total_map)
    # the ideal is spanned by (η_s(e_x) − η_t(e_x))·δ_a
    H = h.total
    gens = []
    for x in g.objects:
        diff = {a: c for a, c in h.eta_s(x).items()}
        for a, c in h.eta_t(x).items():
            diff[a] = diff.get(a, field.zero) - c
        for a in g.arrows:
            prod = H.mul(diff, H.basis(a))
            if prod:
                gens.append(tuple(prod.get(b, field.zero) for b in g.arrows))
    ideal = Matrix.from_columns(field, gens, g.n_arrows) if gens else Matrix.zeros(field, g.n_arrows, 0)
    if not same_column_space(ker, ideal):
        rep.add("kernel_is_ideal", (), "kernel of the quotient differs from the ideal")
    target = alpha.codomain
    for v in check_hopf_axioms(target).violations:
        rep.add("target_" + v.axiom, v.witness, v.detail)
    if target.source != target.target:
        rep.add("target_units", (), "η_s ≠ η_t on the isotropy algebroid")
    return QuotientReport(sub, alpha, ker.cols, rank(ideal), rep)


@dataclass
class IsotropyReport:
    block: HopfAlgebroid
    group_algebra: HopfAlgebroid
    comparison: HopfMorphism
    report: Report


def isotropy_hopf_algebra(g: FiniteGroupoid, x: int, field: FieldSpec,
                          hopf: HopfAlgebroid | None = None) -> IsotropyReport:
    """``k_x ⊗_B ℛ(𝒢) ⊗_B k_x`` against ``k^{G_x}`` through the map induced by ``G_x ↪ 𝒢``."""
    h = hopf or repfun_concrete(g, field)
    block, K = point_block(h, x)
    inc = isotropy_inclusion(g, x)
    Gx = inc.domain
    target = repfun_concrete(Gx, field)
    _, total = repfun_morphism_matrices(inc, field)
    comp = HopfMorphism(block, target, Matrix.identity(field, 1), total.submatrix(list(range(total.rows)), K))
    rep = Report()
    for v in validate_hopf_morphism(comp).violations:
        rep.add("comparison_" + v.axiom, v.witness, v.detail)
    if not comp.is_bijective():
        rep.add("comparison_bijective", (x,), f"block dim {len(K)} vs group order {Gx.n_arrows}")
    for v in check_hopf_axioms(block).violations:
        rep.add("block_" + v.axiom, v.witness, v.detail)
    return IsotropyReport(block, target, comp, rep)


# ------------------------------------------------------------- decomposition

@dataclass
class DecompositionReport:
    iso: HopfMorphism                 # B ⊗ k^{G_x} ⊗ B -> ℛ(𝒢)
    groupoid_iso: GroupoidMorphism    # φˣ: 𝒢 -> X × G_x × X
    band: FiniteGroupoid
    extended: HopfAlgebroid
    report: Report


def transitive_decomposition_iso(g: FiniteGroupoid, x: int, field: FieldSpec) -> DecompositionReport:
    """``ℛ(𝒢) ≅ B ⊗ k^{G_x} ⊗ B`` through ``φˣ(g) = (s g, τ_{t g} g τ_{s g}⁻¹, t g)``.

    ``τ_y`` is the smallest-id arrow ``y -> x`` (the identity at ``x``).

    Raises:
        NotTransitiveError: ``g`` has more than one component.
    """
    parts = component_partition(g)
    if len(parts) != 1:
        raise NotTransitiveError(parts)
    tau = {y: (g.identity[x] if y == x else min(g.hom(y, x))) for y in g.objects}
    Gx = isotropy_group(g, x)
    loops = g.loops(x)
    lpos = {a: i for i, a in enumerate(loops)}
    band = band_groupoid(g.n_objects, Gx)
    n, q = g.n_objects, len(loops)
    amap = []
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        h = g.compose(g.compose(tau[t], a), g.inverse[tau[s]])
        amap.append((s * q + lpos[h]) * n + t)
    phi = GroupoidMorphism(g, band, tuple(g.objects), tuple(amap))
    rep = Report()
    for v in validate_morphism(phi).violations:
        rep.add("phi_" + v.axiom, v.witness, v.detail)
    if not is_isomorphism(phi):
        rep.add("phi_bijective", (), "φˣ is not bijective")
    mr = repfun_on_morphism(phi, field, check_naturality=False)
    rep.violations.extend(mr.report.violations)
    hb = mr.morphism.domain
    ext = extended_hopf_algebroid(repfun_concrete(Gx, field), g.object_names)
    # basis (x, a, y) of the extended algebroid matches band arrow (x, a, y) position by position
    same = HopfMorphism(ext, hb, Matrix.identity(field, ext.base.dim), Matrix.identity(field, ext.total.dim))
    for v in validate_hopf_morphism(same).violations:
        rep.add("extended_" + v.axiom, v.witness, v.detail)
    for v in check_hopf_axioms(ext).violations:
        rep.add("extended_axioms_" + v.axiom, v.witness, v.detail)
    iso = HopfMorphism(ext, mr.morphism.codomain, mr.morphism.base_map, mr.morphism.total_map)
    for v in validate_hopf_morphism(iso).violations:
        rep.add("iso_" + v.axiom, v.witness, v.detail)
    if not iso.is_bijective():
        rep.add("iso_bijective", (), "transported map is not bijective")
    return DecompositionReport(iso, phi, band, ext, rep)


# ------------------------------------------------------------- GT

@dataclass
class GTReport:
    projective: bool
    faithfully_flat: bool
    empty_blocks: list
    block_sizes: dict
    justification: str = dc_field(default="")

    def to_dict(self) -> dict:
        return {"projective": self.projective, "faithfully_flat": self.faithfully_flat,
                "empty_blocks": [list(p) for p in self.empty_blocks],
                "block_sizes": {f"{s},{t}": v for (s, t), v in sorted(self.block_sizes.items())},
                "projective_justification": self.justification}


def gt_check(h: RepFunAlgebroid | HopfAlgebroid) -> GTReport:
    """Grade the total algebra over ``R⊗R`` by ``(s, t)`` and inspect the blocks.

    ``R⊗R`` is split, so every graded module is a direct sum of its blocks and
    each block is free over its factor ``k``: projectivity always holds.
    Faithful flatness holds iff no block is zero.  Empty blocks are listed as
    ``(source object, target object)``.
    """
    hopf = h.concrete if isinstance(h, RepFunAlgebroid) else h
    tg, sg = hopf.grading()
    n = hopf.base.dim
    sizes = {(s, t): 0 for s in range(n) for t in range(n)}
    for t, s in zip(tg, sg):
        sizes[(s, t)] += 1
    empty = [p for p, v in sorted(sizes.items()) if v == 0]
    return GTReport(True, not empty, empty, sizes,
                    "R⊗R is a product of copies of k; each graded block is a free module over its factor")
