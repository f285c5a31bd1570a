"""Unit Θ, counit Ω, the comodule functor 𝓕 and the duality checks.

Θ_𝒢: 𝒢 -> 𝒳(ℛ(𝒢)) evaluates at points and arrows.  Ω_(R,H): (R, H) ->
ℛ(𝒳(R, H)) sends ``h`` to ``g ↦ g(h)``.  Ω is built in that evaluation form
and re-derived independently through comodules, 𝓕 and matrix coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .groupoid import (FiniteGroupoid, GroupoidMorphism, compose_morphisms, enumerate_morphisms,
                       is_isomorphism, is_transitive, validate_groupoid, validate_morphism)
from .hopf import (CharacterGroupoid, Comodule, HopfAlgebroid, HopfMorphism, apply_X_on_morphism,
                   apply_functional, character_groupoid, compose_hopf_morphisms, validate_comodule,
                   validate_hopf_morphism, vdense, vsparse)
from .linalg import FieldSpec, Matrix, inverse, kernel_basis, solve_linear
from .report import Report
from .repfun import CoendModel, gt_check, repfun_concrete, repfun_on_morphism
from .representation import Representation, spanning_family, trivial_rep, validate_rep


# ------------------------------------------------------------- Θ

@dataclass
class ThetaResult:
    morphism: GroupoidMorphism
    hopf: HopfAlgebroid
    characters: CharacterGroupoid
    is_iso: bool
    report: Report


def theta(g: FiniteGroupoid, field: FieldSpec, hopf: HopfAlgebroid | None = None,
          coend: CoendModel | None = None) -> ThetaResult:
    """``Θ_𝒢``: ``x ↦ ev_x``, ``g ↦ (F ↦ F(g))``.

    With a coend model the arrow part is cross-checked through ζ: the
    functional ``c ↦ ζ(c)(g)`` transported along ζ must be evaluation at ``g``.
    """
    h = hopf or repfun_concrete(g, field)
    X = character_groupoid(h)
    z, o = field.zero, field.one
    omap = tuple(X.object_index[tuple(o if y == x else z for y in g.objects)] for x in g.objects)
    amap = tuple(X.arrow_index[tuple(o if b == a else z for b in g.arrows)] for a in g.arrows)
    phi = GroupoidMorphism(g, X, omap, amap)
    rep = Report()
    for v in validate_morphism(phi).violations:
        rep.add("functor_" + v.axiom, v.witness, v.detail)
    for v in validate_groupoid(X).violations:
        rep.add("character_groupoid_" + v.axiom, v.witness, v.detail)
    if coend is not None:
        Z = coend.zeta_matrix()
        if Z.rows == Z.cols:
            Zi = inverse(Z)
            for a in g.arrows:
                if (Matrix.from_rows(field, [Z.row(a)]) @ Zi).row(0) != X.arrow_characters[amap[a]]:
                    rep.add("zeta_cross_check", (a,), "evaluation through ζ differs")
                    break
        else:
            rep.add("zeta_cross_check", (), "ζ is not square on this coend model")
    iso = is_isomorphism(phi)
    if not iso:
        rep.add("isomorphism", (), "Θ is not bijective")
    return ThetaResult(phi, h, X, iso, rep)


# ------------------------------------------------------------- comodules and 𝓕

def comodule_from_rep(e: Representation, hopf: HopfAlgebroid | None = None) -> Comodule:
    """``Γ(E)`` with coaction ``s_j ↦ Σ_i s_i ⊗ [g ↦ (ϱ_g)_ij]``."""
    g = e.groupoid
    h = hopf or repfun_concrete(g, e.field)
    entries = [[tuple(e[a][i, j] for a in g.arrows) for j in range(e.rank)] for i in range(e.rank)]
    return Comodule(h, e.rank, entries)


def f_functor(c: Comodule, X: CharacterGroupoid | None = None) -> Representation:
    """Fibers ``P ⊗_R k_x``; ``ϱ_g`` has entries ``g(h_ij)``.

    Raises:
        ValueError: the comodule fails validation.
    """
    vr = validate_comodule(c)
    if not vr.ok:
        raise ValueError(f"invalid comodule: {vr}")
    X = X or character_groupoid(c.hopf)
    f = c.hopf.field
    d = c.rank
    mats = []
    for chi in X.arrow_characters:
        rows = [[apply_functional(chi, c.entry(i, j)) if c.entry(i, j) else f.zero for j in range(d)]
                for i in range(d)]
        mats.append(Matrix(f, d, d, rows))
    r = Representation(X, f, d, mats)
    rr = validate_rep(r)
    if not rr.ok:
        raise AssertionError(f"𝓕 produced an invalid representation: {rr}")
    return r


# ------------------------------------------------------------- Ω

@dataclass
class OmegaResult:
    morphism: HopfMorphism
    characters: CharacterGroupoid
    report: Report
    oracle: HopfMorphism | None = None


def omega(h: HopfAlgebroid, groupoid: FiniteGroupoid | None = None,
          X: CharacterGroupoid | None = None, target: HopfAlgebroid | None = None) -> OmegaResult:
    """Evaluation-form Ω, verified as a Hopf morphism.

    When ``groupoid`` is given and ``h`` is its concrete ℛ, Ω is rebuilt
    through the comodule route and compared entry by entry.
    """
    X = X or character_groupoid(h)
    f = h.field
    tgt = target or repfun_concrete(X.as_groupoid(), f)
    base = Matrix.from_rows(f, [list(c) for c in X.object_characters], h.base.dim)
    total = Matrix.from_rows(f, [list(c) for c in X.arrow_characters], h.total.dim)
    om = HopfMorphism(h, tgt, base, total)
    rep = Report()
    for v in validate_hopf_morphism(om).violations:
        rep.add("hopf_morphism_" + v.axiom, v.witness, v.detail)
    if vsparse(total.apply(vdense(h.total.unit, h.total.dim, f))) != tgt.total.unit:
        rep.add("unit", (), "Ω(1) ≠ 1")
    oracle = None
    if groupoid is not None:
        oracle = omega_coend_route(h, groupoid, X, tgt)
        if oracle.total_map != om.total_map:
            rep.add("oracle_total", (), "coend-route Ω differs from evaluation form")
        if oracle.base_map != om.base_map:
            rep.add("oracle_base", (), "coend-route Ω₀ differs from evaluation form")
    return OmegaResult(om, X, rep, oracle)


def omega_coend_route(h: HopfAlgebroid, g: FiniteGroupoid, X: CharacterGroupoid,
                      target: HopfAlgebroid) -> HopfMorphism:
    """Ω through 𝓛(𝓕): matrix coefficients of comodules pushed through 𝓕.

    The coefficients ``η_t(e_y) h_ij η_s(e_x)`` of the comodules coming from
    𝓘 and the spanning family span ``H``.  Each is sent to the ζ-image of
    the corresponding class for ``𝓕(P)``, ``γ ↦ t(γ)(e_y) s(γ)(e_x) 𝓕(P)_γ[i, j]``;
    Ω on a basis element is then read off by solving in the coefficients.
    """
    f = h.field
    H = h.total
    reps = [trivial_rep(g, f)] + spanning_family(g, f)
    cols, images = [], []
    for r in reps:
        c = comodule_from_rep(r, h)
        Fc = f_functor(c, X)
        for y in range(h.base.dim):
            for x in range(h.base.dim):
                for i in range(c.rank):
                    for j in range(c.rank):
                        coeff = H.mul(H.mul(h.eta_t(y), c.entry(i, j)), h.eta_s(x))
                        cols.append(vdense(coeff, H.dim, f))
                        images.append(tuple(
                            X.object_characters[X.tgt[a]][y] * X.object_characters[X.src[a]][x] * Fc[a][i, j]
                            for a in X.arrows))
    C = Matrix.from_columns(f, cols, H.dim)
    V = Matrix.from_columns(f, images, X.n_arrows)
    # the assignment must kill linear relations among the coefficients
    K = kernel_basis(C)
    if not (V @ K).is_zero():
        raise AssertionError("coend-route Ω is not well defined on coefficient relations")
    U = solve_linear(C, Matrix.identity(f, H.dim))
    if U is None:
        raise AssertionError("matrix coefficients do not span the total algebra")
    total = V @ U
    # Ω₀(e_r) = ε(Ω(η_s(e_r))): evaluate at identity arrows
    base = (total @ h.source).submatrix(list(X.identity), list(range(h.base.dim)))
    return HopfMorphism(h, target, base, total)


# ------------------------------------------------------------- triangles

@dataclass
class TriangleResult:
    passed: bool
    witness: tuple | None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"passed": self.passed, "witness": list(self.witness) if self.witness else None,
                "detail": self.detail}


def _first_difference(a: Matrix, b: Matrix):
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] != b[i, j]:
                return (i, j)
    return None


def triangle_one(g: FiniteGroupoid, field: FieldSpec) -> TriangleResult:
    """``ℛ(Θ_𝒢) ∘ Ω_{ℛ(𝒢)} = id`` on base and total."""
    th = theta(g, field)
    om = omega(th.hopf, X=th.characters)
    r_theta = repfun_on_morphism(th.morphism, field, check_naturality=False,
                                 domain_hopf=th.hopf, codomain_hopf=om.morphism.codomain).morphism
    comp = compose_hopf_morphisms(r_theta, om.morphism)
    for name, m in (("base", comp.base_map), ("total", comp.total_map)):
        w = _first_difference(m, Matrix.identity(field, m.rows))
        if w is not None:
            return TriangleResult(False, (name,) + w, f"composite differs from the identity on {name}")
    return TriangleResult(True, None)


def triangle_two(h: HopfAlgebroid) -> TriangleResult:
    """``𝒳(Ω_(R,H)) ∘ Θ_{𝒳(R,H)} = id`` on objects and arrows."""
    X = character_groupoid(h)
    om = omega(h, X=X)
    th = theta(X.as_groupoid(), h.field, hopf=om.morphism.codomain)
    x_om = apply_X_on_morphism(om.morphism, x_domain=X, x_codomain=th.characters)
    comp = compose_morphisms(x_om, th.morphism)
    for x in X.objects:
        if comp.object_map[x] != x:
            return TriangleResult(False, ("object", x), "composite moves an object")
    for a in X.arrows:
        if comp.arrow_map[a] != a:
            return TriangleResult(False, ("arrow", a), "composite moves an arrow")
    return TriangleResult(True, None)


# ------------------------------------------------------------- naturality

def theta_naturality(phi: GroupoidMorphism, field: FieldSpec) -> Report:
    """``𝒳(ℛ(φ)) ∘ Θ_𝒢 = Θ_ℋ ∘ φ`` as tables."""
    tG, tK = theta(phi.domain, field), theta(phi.codomain, field)
    r_phi = repfun_on_morphism(phi, field, check_naturality=False, domain_hopf=tG.hopf,
                               codomain_hopf=tK.hopf).morphism
    x_r = apply_X_on_morphism(r_phi, x_domain=tK.characters, x_codomain=tG.characters)
    lhs = compose_morphisms(x_r, tG.morphism)
    rhs = compose_morphisms(tK.morphism, phi)
    rep = Report()
    if lhs.object_map != rhs.object_map:
        rep.add("theta_naturality", ("objects",), "object maps differ")
    if lhs.arrow_map != rhs.arrow_map:
        a = next(i for i, (p, q) in enumerate(zip(lhs.arrow_map, rhs.arrow_map)) if p != q)
        rep.add("theta_naturality", ("arrow", a), "arrow maps differ")
    return rep


def omega_naturality(alpha: HopfMorphism) -> Report:
    """``ℛ(𝒳(α)) ∘ Ω_h = Ω_{h'} ∘ α`` as matrices."""
    h, h2 = alpha.domain, alpha.codomain
    o1, o2 = omega(h), omega(h2)
    x_alpha = apply_X_on_morphism(alpha, x_domain=o1.characters, x_codomain=o2.characters)
    f = h.field
    r_x = repfun_on_morphism(x_alpha, f, check_naturality=False, domain_hopf=o2.morphism.codomain,
                             codomain_hopf=o1.morphism.codomain).morphism
    lhs = compose_hopf_morphisms(r_x, o1.morphism)
    rhs = compose_hopf_morphisms(o2.morphism, alpha)
    rep = Report()
    if lhs.base_map != rhs.base_map:
        rep.add("omega_naturality", ("base",) + _first_difference(lhs.base_map, rhs.base_map))
    if lhs.total_map != rhs.total_map:
        rep.add("omega_naturality", ("total",) + _first_difference(lhs.total_map, rhs.total_map))
    return rep


# ------------------------------------------------------------- hom-set bijection

@dataclass
class BijectionReport:
    groupoid_morphisms: int
    hopf_morphisms_in_image: int
    phi_psi_identity: bool
    psi_phi_identity: bool
    psi_images_distinct: bool
    phi_images_distinct: bool
    report: Report = dc_field(default_factory=Report)

    @property
    def ok(self) -> bool:
        return (self.report.ok and self.phi_psi_identity and self.psi_phi_identity
                and self.psi_images_distinct and self.phi_images_distinct)

    def to_dict(self) -> dict:
        return {"groupoid_morphisms": self.groupoid_morphisms,
                "hopf_morphisms_in_image": self.hopf_morphisms_in_image,
                "phi_psi_identity": self.phi_psi_identity, "psi_phi_identity": self.psi_phi_identity,
                "psi_images_distinct": self.psi_images_distinct,
                "phi_images_distinct": self.phi_images_distinct, "ok": self.ok, **self.report.to_dict()}


def duality_bijection_check(h: HopfAlgebroid, g: FiniteGroupoid, guard: int = 10) -> BijectionReport:
    """``Hom(g, 𝒳(h)) ≅ Hom(h, ℛ(g))`` by complete enumeration of the left side.

    ``Ψ(φ) = ℛ(φ) ∘ Ω_h`` and ``Φ(α) = 𝒳(α) ∘ Θ_g``.

    Raises:
        GuardExceededError: ``g`` has more than ``guard`` arrows.
    """
    f = h.field
    om = omega(h)
    X = om.characters
    th = theta(g, f)
    rg = th.hopf
    morphs = enumerate_morphisms(g, X, guard)
    rep = Report()
    psis = []
    for phi in morphs:
        r_phi = repfun_on_morphism(phi, f, check_naturality=False, domain_hopf=rg,
                                   codomain_hopf=om.morphism.codomain).morphism
        psi = compose_hopf_morphisms(r_phi, om.morphism)
        for v in validate_hopf_morphism(psi).violations:
            rep.add("psi_" + v.axiom, v.witness, v.detail)
        psis.append(psi)

    def Phi(alpha: HopfMorphism) -> GroupoidMorphism:
        x_alpha = apply_X_on_morphism(alpha, x_domain=X, x_codomain=th.characters)
        return compose_morphisms(x_alpha, th.morphism)

    phis = [Phi(p) for p in psis]
    phi_psi = all(p.object_map == q.object_map and p.arrow_map == q.arrow_map for p, q in zip(phis, morphs))
    psi_phi = True
    for alpha, back in zip(psis, phis):
        again = compose_hopf_morphisms(
            repfun_on_morphism(back, f, check_naturality=False, domain_hopf=rg,
                               codomain_hopf=om.morphism.codomain).morphism, om.morphism)
        if again != alpha:
            psi_phi = False
    distinct_psi = len({(p.base_map, p.total_map) for p in psis}) == len(psis)
    distinct_phi = len({(p.object_map, p.arrow_map) for p in phis}) == len(phis)
    return BijectionReport(len(morphs), len(psis), phi_psi, psi_phi, distinct_psi, distinct_phi, rep)


# ------------------------------------------------------------- round trip

def round_trip(g: FiniteGroupoid, field: FieldSpec) -> dict:
    """Per-groupoid summary: Θ, Ω, both triangles, GT and dimensions."""
    h = repfun_concrete(g, field)
    th = theta(g, field, hopf=h)
    om = omega(h, groupoid=g, X=th.characters)
    t1 = triangle_one(g, field)
    t2 = triangle_two(h)
    gt = gt_check(h)
    out = {
        "transitive": is_transitive(g),
        "theta_iso": th.is_iso and th.report.ok,
        "omega_hopf_morphism": om.report.ok,
        "triangle_one": t1.to_dict(),
        "triangle_two": t2.to_dict(),
        "gt_check": gt.to_dict(),
        "dims": {"objects": g.n_objects, "arrows": g.n_arrows, "base": h.base.dim, "total": h.total.dim,
                 "tensor_over_base": len(h.comult_basis)},
    }
    if not out["transitive"]:
        out["caveat"] = "not geometrically transitive: duality outcomes are recorded, not claimed"
    return out


__all__ = ["ThetaResult", "theta", "comodule_from_rep", "f_functor", "OmegaResult", "omega",
           "omega_coend_route", "TriangleResult", "triangle_one", "triangle_two", "theta_naturality",
           "omega_naturality", "BijectionReport", "duality_bijection_check", "round_trip"]
