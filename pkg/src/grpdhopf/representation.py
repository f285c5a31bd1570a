"""Representations of finite groupoids, intertwiners and global sections.

A representation is stored fully trivialized: every fiber is ``k^d`` and
only the matrices ``ϱ_g`` are kept, indexed by arrow id.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groupoid import (FiniteGroupoid, GroupoidMorphism, component_partition,
                       generating_arrows, spanning_arrows)
from .linalg import (FieldMismatchError, FieldSpec, Matrix, block_diag, column_space, inverse,
                     kernel_basis, kron, rank, rref, solve_linear)
from .report import Report


class RankMismatchError(ValueError):
    """A matrix table does not have one common square shape."""


class NonConstantRankError(ValueError):
    def __init__(self, ranks: dict[int, int]):
        super().__init__(f"fiberwise ranks are not constant: {ranks}")
        self.ranks = ranks


class Representation:
    def __init__(self, groupoid: FiniteGroupoid, field: FieldSpec, rank: int,
                 matrices: Sequence[Matrix]):
        self.groupoid = groupoid
        self.field = field
        self.rank = rank
        self.matrices = tuple(matrices)
        if len(self.matrices) != groupoid.n_arrows:
            raise RankMismatchError(f"{len(self.matrices)} matrices for {groupoid.n_arrows} arrows")
        for a, m in enumerate(self.matrices):
            if m.field != field:
                raise FieldMismatchError(f"arrow {a}: {m.field} vs {field}")
            if m.shape != (rank, rank):
                raise RankMismatchError(f"arrow {a} has shape {m.shape}, expected rank {rank}")

    def __getitem__(self, arrow: int) -> Matrix:
        return self.matrices[arrow]

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.groupoid == other.groupoid and self.field == other.field
                and self.rank == other.rank and self.matrices == other.matrices)

    def __hash__(self):
        return hash((self.rank, self.matrices))

    def __repr__(self):
        return f"Representation(rank={self.rank}, field={self.field}, {self.groupoid})"


def _same_home(e: Representation, f: Representation):
    if e.groupoid != f.groupoid:
        raise ValueError("representations live on different groupoids")
    if e.field != f.field:
        raise FieldMismatchError(f"{e.field} vs {f.field}")


def trivial_rep(g: FiniteGroupoid, field: FieldSpec, rank: int = 1) -> Representation:
    one = Matrix.identity(field, rank)
    return Representation(g, field, rank, [one] * g.n_arrows)


def zero_rep(g: FiniteGroupoid, field: FieldSpec) -> Representation:
    return trivial_rep(g, field, 0)


def validate_rep(r: Representation) -> Report:
    """Identity law, cocycle law and invertibility, with witnesses."""
    g = r.groupoid
    rep = Report()
    for x in g.objects:
        if not r[g.identity[x]].is_identity():
            rep.add("identity", (x,), "ϱ at the identity arrow is not I")
    for a in g.arrows:
        if rank(r[a]) != r.rank:
            rep.add("invertible", (a,), "singular matrix")
    for (h, f), c in g.compose_table.items():
        if r[c] != r[h] @ r[f]:
            rep.add("cocycle", (h, f))
            break
    return rep


def tensor_rep(e: Representation, f: Representation) -> Representation:
    _same_home(e, f)
    return Representation(e.groupoid, e.field, e.rank * f.rank,
                          [kron(a, b) for a, b in zip(e.matrices, f.matrices)])


def dual_rep(e: Representation) -> Representation:
    return Representation(e.groupoid, e.field, e.rank, [inverse(m).transpose() for m in e.matrices])


def direct_sum(e: Representation, f: Representation) -> Representation:
    _same_home(e, f)
    return Representation(e.groupoid, e.field, e.rank + f.rank,
                          [block_diag(e.field, [a, b]) for a, b in zip(e.matrices, f.matrices)])


def conjugate_rep(r: Representation, frames: Sequence[Matrix]) -> Representation:
    """Change of trivialization: ``ϱ'_g = P_t(g) ϱ_g P_s(g)⁻¹``."""
    g = r.groupoid
    invs = [inverse(p) for p in frames]
    return Representation(g, r.field, r.rank,
                          [frames[g.tgt[a]] @ r[a] @ invs[g.src[a]] for a in g.arrows])


def restrict_along(phi: GroupoidMorphism, r: Representation) -> Representation:
    if phi.codomain != r.groupoid:
        raise ValueError("representation does not live on the codomain")
    return Representation(phi.domain, r.field, r.rank, [r[phi.arrow_map[a]] for a in phi.domain.arrows])


# ------------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class RepMorphism:
    source: Representation
    target: Representation
    components: tuple[Matrix, ...]

    def __eq__(self, other):
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and \
            self.components == other.components

    def __hash__(self):
        return hash(self.components)


def identity_rep_morphism(r: Representation) -> RepMorphism:
    one = Matrix.identity(r.field, r.rank)
    return RepMorphism(r, r, tuple(one for _ in r.groupoid.objects))


def compose_rep_morphisms(b: RepMorphism, a: RepMorphism) -> RepMorphism:
    """``b ∘ a``."""
    if a.target != b.source:
        raise ValueError("morphisms are not composable")
    return RepMorphism(a.source, b.target, tuple(y @ x for x, y in zip(a.components, b.components)))


def validate_rep_morphism(m: RepMorphism) -> Report:
    e, f = m.source, m.target
    g = e.groupoid
    rep = Report()
    if len(m.components) != g.n_objects:
        rep.add("totality", (len(m.components),))
        return rep
    for x, c in enumerate(m.components):
        if c.shape != (f.rank, e.rank):
            rep.add("shape", (x,), f"{c.shape}")
    if not rep.ok:
        return rep
    for a in g.arrows:
        if m.components[g.tgt[a]] @ e[a] != f[a] @ m.components[g.src[a]]:
            rep.add("intertwining", (a,))
    return rep


def intertwiner_space(e: Representation, f: Representation) -> list[RepMorphism]:
    """A basis of ``Hom(e, f)``.

    Unknowns are the entries of every ``α_x``; the stacked system
    ``α_t(g) ϱᴱ_g = ϱᶠ_g α_s(g)`` is imposed on a generating set of arrows,
    which is enough because both sides are multiplicative in ``g``.  Each
    basis element is re-checked against every arrow.
    """
    _same_home(e, f)
    g = e.groupoid
    de, df = e.rank, f.rank
    size = de * df
    nvar = g.n_objects * size
    field = e.field

    def var(x, i, j):
        return x * size + i * de + j

    rows = []
    for a in generating_arrows(g):
        s, t = g.src[a], g.tgt[a]
        E, F = e[a], f[a]
        for i in range(df):
            for j in range(de):
                row = {}
                for k in range(de):
                    c = E[k, j]
                    if c:
                        v = var(t, i, k)
                        row[v] = row.get(v, field.zero) + c
                for k in range(df):
                    c = F[i, k]
                    if c:
                        v = var(s, k, j)
                        row[v] = row.get(v, field.zero) - c
                if any(row.values()):
                    dense = [field.zero] * nvar
                    for v, c in row.items():
                        dense[v] = c
                    rows.append(dense)
    system = Matrix(field, len(rows), nvar, rows) if rows else Matrix.zeros(field, 0, nvar)
    ker = kernel_basis(system)
    out = []
    for col in ker.columns():
        comps = tuple(Matrix(field, df, de, [col[x * size + i * de: x * size + (i + 1) * de]
                                             for i in range(df)]) for x in g.objects)
        m = RepMorphism(e, f, comps)
        assert validate_rep_morphism(m).ok, "intertwiner basis element failed to validate"
        out.append(m)
    return out


@dataclass(frozen=True)
class KernelCokernel:
    kernel: Representation
    inclusion: RepMorphism
    cokernel: Representation
    projection: RepMorphism
    image_rank: int


def kernel_cokernel(m: RepMorphism) -> KernelCokernel:
    """Fiberwise kernel and cokernel with their induced actions.

    Raises:
        NonConstantRankError: the ranks of the ``α_x`` differ across objects.
    """
    e, f = m.source, m.target
    g = e.groupoid
    field = e.field
    ranks = {x: rank(c) for x, c in enumerate(m.components)}
    if len(set(ranks.values())) > 1:
        raise NonConstantRankError(ranks)
    r = ranks[0] if ranks else 0
    K = [kernel_basis(c) for c in m.components]
    kmats = []
    for a in g.arrows:
        x = solve_linear(K[g.tgt[a]], e[a] @ K[g.src[a]])
        assert x is not None, "kernel is not stable under the action"
        kmats.append(x)
    kernel = Representation(g, field, e.rank - r, kmats)
    inclusion = RepMorphism(kernel, e, tuple(K))
    P, C = [], []
    for c in m.components:
        im = column_space(c)
        _, _, piv = rref(im.transpose())
        comp = [j for j in range(f.rank) if j not in piv]
        Cx = Matrix.from_columns(field, [[field.one if i == j else field.zero for i in range(f.rank)]
                                         for j in comp], f.rank) if comp else Matrix.zeros(field, f.rank, 0)
        basis = im.hstack(Cx)
        Px = inverse(basis).submatrix(range(im.cols, f.rank), range(f.rank))
        P.append(Px)
        C.append(Cx)
    cmats = [P[g.tgt[a]] @ f[a] @ C[g.src[a]] for a in g.arrows]
    cokernel = Representation(g, field, f.rank - r, cmats)
    projection = RepMorphism(f, cokernel, tuple(P))
    return KernelCokernel(kernel, inclusion, cokernel, projection, r)


# ------------------------------------------------------------- sections

@dataclass(frozen=True, eq=False)
class SectionsModule:
    """The free ``B``-module ``Γ(E) = B^d`` with its standard dual basis.

    A section is a tuple over objects of fiber vectors.  Its k-coordinates
    are ordered object-major: ``(x, i) -> x*d + i``.
    """

    rep: Representation

    @property
    def field(self) -> FieldSpec:
        return self.rep.field

    @property
    def n(self) -> int:
        return self.rep.groupoid.n_objects

    @property
    def rank(self) -> int:
        return self.rep.rank

    @property
    def k_dimension(self) -> int:
        return self.n * self.rank

    def basis_section(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        v = tuple(o if j == i else z for j in range(self.rank))
        return tuple(v for _ in range(self.n))

    def basis(self) -> list[tuple]:
        return [self.basis_section(i) for i in range(self.rank)]

    def dual(self, i: int, s: tuple) -> tuple:
        """``s_i^*(s)``, an element of ``B`` (a tuple over objects)."""
        return tuple(s[x][i] for x in range(self.n))

    def act(self, b: Sequence, s: tuple) -> tuple:
        return tuple(tuple(b[x] * v for v in s[x]) for x in range(self.n))

    def add(self, s: tuple, t: tuple) -> tuple:
        return tuple(tuple(a + c for a, c in zip(u, w)) for u, w in zip(s, t))

    def zero(self) -> tuple:
        return tuple(tuple(self.field.zero for _ in range(self.rank)) for _ in range(self.n))

    def reconstruct(self, s: tuple) -> tuple:
        """``Σ_i s_i^*(s)·s_i``."""
        out = self.zero()
        for i in range(self.rank):
            out = self.add(out, self.act(self.dual(i, s), self.basis_section(i)))
        return out

    def to_vector(self, s: tuple) -> tuple:
        return tuple(v for x in range(self.n) for v in s[x])

    def from_vector(self, v: Sequence) -> tuple:
        d = self.rank
        return tuple(tuple(v[x * d:(x + 1) * d]) for x in range(self.n))

    def k_basis(self) -> list[tuple]:
        z, o = self.field.zero, self.field.one
        n = self.k_dimension
        return [self.from_vector([o if j == k else z for j in range(n)]) for k in range(n)]

    def random(self, rng) -> tuple:
        return self.from_vector([self.field.random(rng) for _ in range(self.k_dimension)])


def global_sections(r: Representation) -> SectionsModule:
    return SectionsModule(r)


def sections_map(m: RepMorphism) -> Matrix:
    """The k-linear map ``Γ(E) -> Γ(F)`` induced by a morphism (block diagonal)."""
    return block_diag(m.source.field, m.components)


def pullback_section(s: tuple, phi: GroupoidMorphism) -> tuple:
    """Base change of a section along ``φ₀``: ``z -> s(φ₀(z))``."""
    return tuple(s[phi.object_map[z]] for z in phi.domain.objects)


@dataclass(frozen=True)
class SectionsTensorIso:
    """Mutually inverse maps ``Γ(E)⊗_B Γ(F) <-> Γ(E⊗F)``.

    The balanced tensor has k-basis ``e_x s_i ⊗ r_j`` indexed by ``(x, i, j)``;
    the other side uses the object-major basis of ``Γ(E⊗F)``.
    """

    forward: Matrix
    backward: Matrix
    balanced_basis: tuple[tuple[int, int, int], ...]

    @property
    def round_trip_ok(self) -> bool:
        return (self.forward @ self.backward).is_identity() and (self.backward @ self.forward).is_identity()


def psi(p: tuple, q: tuple) -> tuple:
    """``p ⊗ q -> [x -> p(x) ⊗ q(x)]``."""
    return tuple(tuple(a * b for a in px for b in qx) for px, qx in zip(p, q))


def sections_tensor_iso(e: Representation, f: Representation) -> SectionsTensorIso:
    _same_home(e, f)
    ge, gf, gef = global_sections(e), global_sections(f), global_sections(tensor_rep(e, f))
    n, de, df = ge.n, e.rank, f.rank
    field = e.field
    # graded balanced tensor: e_x s_i and e_y r_j pair nontrivially only when x == y
    basis = tuple((x, i, j) for x in range(n) for i in range(de) for j in range(df))
    idx = {b: k for k, b in enumerate(basis)}

    def delta_section(mod, x, i):
        z, o = field.zero, field.one
        return tuple(tuple(o if (y == x and j == i) else z for j in range(mod.rank)) for y in range(mod.n))

    fwd_cols = [gef.to_vector(psi(delta_section(ge, x, i), delta_section(gf, x, j))) for x, i, j in basis]
    forward = Matrix.from_columns(field, fwd_cols, len(basis)) if basis else Matrix.zeros(field, 0, 0)
    bwd_cols = []
    for k in range(gef.k_dimension):
        x, m = divmod(k, de * df)
        i, j = divmod(m, df)
        col = [field.zero] * len(basis)
        col[idx[(x, i, j)]] = field.one
        bwd_cols.append(col)
    backward = Matrix.from_columns(field, bwd_cols, len(basis)) if basis else Matrix.zeros(field, 0, 0)
    return SectionsTensorIso(forward, backward, basis)


def hom_base_change_injectivity(e: Representation, f: Representation) -> dict:
    """Rank of the canonical map ``Hom(E,F) ⊗_k B -> Hom_B(Γ(E), Γ(F))``.

    ``α ⊗ e_x`` is sent to the B-linear map acting by ``α_x`` on the x-part,
    vectorized over the k-basis ``(x, i, j)`` of ``⊕_x Hom(E_x, F_x)``.
    """
    basis = intertwiner_space(e, f)
    g = e.groupoid
    n, de, df = g.n_objects, e.rank, f.rank
    field = e.field
    cols = []
    for alpha in basis:
        for x in g.objects:
            col = [field.zero] * (n * df * de)
            c = alpha.components[x]
            for i in range(df):
                for j in range(de):
                    col[(x * df + i) * de + j] = c[i, j]
            cols.append(col)
    mat = Matrix.from_columns(field, cols, n * df * de) if cols else Matrix.zeros(field, n * df * de, 0)
    rk = rank(mat)
    return {"hom_dim": len(basis), "objects": n, "domain_dim": len(basis) * n,
            "codomain_dim": n * df * de, "rank": rk, "injective": rk == len(basis) * n}


# ------------------------------------------------------------- spanning family

def regular_permutation(group_arrows: Sequence[int], g: FiniteGroupoid, h: int, field: FieldSpec) -> Matrix:
    """Matrix of left multiplication by the loop ``h`` on the loops ``group_arrows``."""
    pos = {a: i for i, a in enumerate(group_arrows)}
    n = len(group_arrows)
    z, o = field.zero, field.one
    data = [[z] * n for _ in range(n)]
    for j, a in enumerate(group_arrows):
        data[pos[g.compose(h, a)]][j] = o
    return Matrix(field, n, n, data)


def spanning_family(g: FiniteGroupoid, field: FieldSpec) -> list[Representation]:
    """Per-component regular representations of the isotropy groups.

    On component ``c`` with base point ``x_c`` the arrow ``g`` acts by left
    multiplication by ``τ_t(g) g τ_s(g)⁻¹`` on ``k^{G_{x_c}}``; elsewhere by
    the identity.  All members are padded with identity blocks to the
    common rank ``max_c |G_{x_c}|``; equal members are emitted once.
    """
    tau = spanning_arrows(g)
    parts = component_partition(g)
    groups = [g.loops(objs[0]) for objs in parts]
    D = max(len(G) for G in groups)
    comp_of = {x: c for c, objs in enumerate(parts) for x in objs}
    out: list[Representation] = []
    for c, objs in enumerate(parts):
        G = groups[c]
        pad = Matrix.identity(field, D - len(G))
        mats = []
        for a in g.arrows:
            if comp_of[g.src[a]] != c:
                mats.append(Matrix.identity(field, D))
                continue
            h = g.compose(g.compose(tau[g.tgt[a]], a), g.inverse[tau[g.src[a]]])
            mats.append(block_diag(field, [regular_permutation(G, g, h, field), pad]))
        r = Representation(g, field, D, mats)
        if r not in out:
            out.append(r)
    return out


def coefficient_functions(r: Representation) -> list[tuple]:
    """The functions ``g -> λ(t g) μ(s g) (ϱ_g)_ij`` for delta functions λ, μ."""
    g = r.groupoid
    z = r.field.zero
    out = []
    for y in g.objects:
        for x in g.objects:
            for i in range(r.rank):
                for j in range(r.rank):
                    out.append(tuple(r[a][i, j] if (g.tgt[a] == y and g.src[a] == x) else z
                                     for a in g.arrows))
    return out


def coefficient_span_dimension(family: Sequence[Representation]) -> int:
    if not family:
        return 0
    g = family[0].groupoid
    cols = [c for r in family for c in coefficient_functions(r)]
    if not cols:
        return 0
    return rank(Matrix.from_columns(family[0].field, cols, g.n_arrows))
