"""Finite commutative Hopf algebroids over split bases.

The base ``R = k^S`` is split.  The total algebra ``H`` is given by
structure constants on a basis that must be homogeneous for the
``(t, s)``-grading by pairs of idempotents of ``R``; this grading is what
makes ``H ⊗_R H`` computable as a graded vector space.  Elements are
handled internally as sparse dicts ``{basis index: scalar}``.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .groupoid import FiniteGroupoid, GroupoidMorphism, GuardExceededError
from .linalg import FieldSpec, Matrix, inverse, rank
from .report import Report


class GradingError(ValueError):
    """The total-algebra basis is not homogeneous for the (t, s) grading."""


class UnsupportedCharacterError(ValueError):
    """Characters cannot be computed exactly for this algebra and field."""


class CharacterGroupoidError(ValueError):
    """Dualized structure maps do not close up on the character sets."""


# ------------------------------------------------------------- sparse vectors

def vclean(u: dict) -> dict:
    return {k: v for k, v in u.items() if v}


def vadd(u: dict, v: dict, c=None) -> dict:
    out = dict(u)
    for k, x in v.items():
        y = x if c is None else c * x
        out[k] = out[k] + y if k in out else y
    return vclean(out)


def vscale(u: dict, c) -> dict:
    return vclean({k: c * x for k, x in u.items()})


def vdense(u: dict, n: int, field: FieldSpec) -> tuple:
    z = field.zero
    return tuple(u.get(i, z) for i in range(n))


def vsparse(u: Sequence) -> dict:
    return {i: x for i, x in enumerate(u) if x}


def apply_cols(cols: list[dict], u: dict) -> dict:
    """Apply a linear map given by sparse columns to a sparse vector."""
    out: dict = {}
    for j, c in u.items():
        for i, x in cols[j].items():
            y = c * x
            out[i] = out[i] + y if i in out else y
    return vclean(out)


def tensor(u: dict, v: dict) -> dict:
    """Elementary tensor of two sparse vectors, keyed by concatenated tuples."""
    out = {}
    for a, x in u.items():
        ka = a if isinstance(a, tuple) else (a,)
        for b, y in v.items():
            kb = b if isinstance(b, tuple) else (b,)
            out[ka + kb] = x * y
    return vclean(out)


# ------------------------------------------------------------- algebras

class CommAlgebra:
    """Finite-dimensional commutative algebra by structure constants.

    Args:
        field: ground field.
        labels: names of the basis elements.
        mult: ``(i, j) -> {k: c}``, the product ``b_i b_j = Σ c b_k``; missing pairs are 0.
        unit: the unit as a sparse vector.
        split_witness: optional matrix whose columns are orthogonal idempotents
            summing to 1 and spanning the algebra.
    """

    def __init__(self, field: FieldSpec, labels: Sequence[str], mult: dict, unit: dict,
                 split_witness: Matrix | None = None):
        self.field = field
        self.labels = tuple(labels)
        self.mult = {k: vclean(v) for k, v in mult.items() if vclean(v)}
        self.unit = vclean(dict(unit))
        self.split_witness = split_witness
        o = field.one
        # delta basis: products are pointwise, which allows a fast path
        self.pointwise = (self.mult == {(i, i): {i: o} for i in range(len(self.labels))}
                          and self.unit == {i: o for i in range(len(self.labels))})

    @classmethod
    def split(cls, field: FieldSpec, labels: Sequence[str]) -> "CommAlgebra":
        """``k^S`` in the delta basis."""
        n = len(labels)
        o = field.one
        return cls(field, labels, {(i, i): {i: o} for i in range(n)}, {i: o for i in range(n)},
                   Matrix.identity(field, n))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def mul(self, u: dict, v: dict) -> dict:
        if self.pointwise:
            return vclean({k: x * v[k] for k, x in u.items() if k in v})
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                prod = self.mult.get((i, j))
                if prod:
                    c = x * y
                    for k, z in prod.items():
                        w = c * z
                        out[k] = out[k] + w if k in out else w
        return vclean(out)

    def __eq__(self, other):
        if not isinstance(other, CommAlgebra):
            return NotImplemented
        return (self.field == other.field and self.labels == other.labels and self.mult == other.mult
                and self.unit == other.unit and self.split_witness == other.split_witness)

    def __hash__(self):
        return hash((self.field, self.labels))

    def check(self) -> Report:
        """Commutativity, associativity and the unit law on the basis."""
        rep = Report()
        n = self.dim
        for i in range(n):
            bi = self.basis(i)
            if self.mul(self.unit, bi) != bi:
                rep.add("unit", (i,))
            for j in range(i + 1, n):
                if self.mul(bi, self.basis(j)) != self.mul(self.basis(j), bi):
                    rep.add("commutativity", (i, j))
        for i, j, k in itertools.product(range(n), repeat=3):
            a, b, c = self.basis(i), self.basis(j), self.basis(k)
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                rep.add("associativity", (i, j, k))
                break
        return rep


SplitAlgebra = CommAlgebra.split


def is_character(a: CommAlgebra, chi: Sequence) -> bool:
    """Linear functional (values on the basis) that is unital and multiplicative."""
    def ev(u):
        return sum((x * chi[k] for k, x in u.items()), a.field.zero)
    if ev(a.unit) != 1:
        return False
    for i in range(a.dim):
        for j in range(i, a.dim):
            if ev(a.mul(a.basis(i), a.basis(j))) != chi[i] * chi[j]:
                return False
    return True


def characters(a: CommAlgebra, max_dim: int = 12, max_p: int = 5) -> list[tuple]:
    """All algebra maps ``a -> k``, each as its tuple of values on the basis.

    With a split witness these are the coordinate functions dual to the
    idempotents.  Without one, small prime fields fall back to an exhaustive
    search (``dim <= max_dim``, ``p <= max_p``).

    Raises:
        UnsupportedCharacterError: rationals without a split witness.
        GuardExceededError: the brute-force search is too large.
    """
    f = a.field
    if a.split_witness is not None:
        W = a.split_witness
        idem = [vsparse(c) for c in W.columns()]
        for i, u in enumerate(idem):
            for j, v in enumerate(idem):
                want = u if i == j else {}
                if a.mul(u, v) != want:
                    raise ValueError(f"split witness columns {i}, {j} are not orthogonal idempotents")
        total = {}
        for u in idem:
            total = vadd(total, u)
        if total != a.unit or rank(W) != a.dim:
            raise ValueError("split witness does not give a basis of idempotents summing to 1")
        chars = [tuple(r) for r in inverse(W).data]
        assert all(is_character(a, c) for c in chars)
        return chars
    if f.is_rational:
        raise UnsupportedCharacterError("characters over the rationals need a split witness")
    if a.dim > max_dim or f.p > max_p:
        raise GuardExceededError(f"brute-force characters limited to dim <= {max_dim}, p <= {max_p}")
    return _brute_force_characters(a)


def _brute_force_characters(a: CommAlgebra) -> list[tuple]:
    f = a.field
    n = a.dim
    elems = f.elements()
    prods = {(i, j): a.mul(a.basis(i), a.basis(j)) for i in range(n) for j in range(i, n)}
    # a product constraint can be tested once every index it mentions is assigned
    ready: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j), p in prods.items():
        ready[max([i, j] + list(p))].append((i, j))
    unit_last = max(a.unit) if a.unit else 0
    out = []
    chi = [None] * n

    def ev(u):
        return sum((x * chi[k] for k, x in u.items()), f.zero)

    def extend(k):
        if k == n:
            out.append(tuple(chi))
            return
        for v in elems:
            chi[k] = v
            if k == unit_last and ev(a.unit) != 1:
                continue
            if all(ev(prods[(i, j)]) == chi[i] * chi[j] for i, j in ready[k]):
                extend(k + 1)
        chi[k] = None

    extend(0)
    return out


def apply_functional(chi: Sequence, u: dict):
    it = iter(u.items())
    first = next(it, None)
    if first is None:
        return 0 * chi[0] if chi else None
    k, x = first
    acc = x * chi[k]
    for k, x in it:
        acc = acc + x * chi[k]
    return acc


# ------------------------------------------------------------- graded bimodules

class GradedBimodule:
    """A vector space over ``k`` graded by pairs ``(left, right)`` of base idempotents.

    ``keys`` are tuples of total-algebra basis indices; a plain algebra has
    keys ``(i,)``, a balanced tensor has concatenated keys.
    """

    def __init__(self, keys: Sequence[tuple], left: Sequence[int], right: Sequence[int], n_base: int):
        self.keys = tuple(keys)
        self.left = tuple(left)
        self.right = tuple(right)
        self.n_base = n_base
        self.index = {k: i for i, k in enumerate(self.keys)}

    @property
    def dim(self) -> int:
        return len(self.keys)

    def block(self, x: int, y: int) -> list[tuple]:
        return [k for k, l, r in zip(self.keys, self.left, self.right) if l == x and r == y]


def tensor_over_base(m: GradedBimodule, n: GradedBimodule) -> GradedBimodule:
    """``m ⊗_R n``: the ``(x, z)`` block is ``⊕_y m_(x,y) ⊗ n_(y,z)``.

    Raises:
        GradingError: the two bimodules are graded over different bases.
    """
    if m.n_base != n.n_base:
        raise GradingError(f"bases of size {m.n_base} and {n.n_base} differ")
    by_left: dict[int, list[int]] = {}
    for j, l in enumerate(n.left):
        by_left.setdefault(l, []).append(j)
    keys, left, right = [], [], []
    for i, km in enumerate(m.keys):
        for j in by_left.get(m.right[i], []):
            keys.append(km + n.keys[j])
            left.append(m.left[i])
            right.append(n.right[j])
    return GradedBimodule(keys, left, right, m.n_base)


# ------------------------------------------------------------- Hopf algebroids

class HopfAlgebroid:
    """Structure maps are matrices acting on column coordinate vectors.

    Args:
        base: split algebra ``R``.
        total: commutative algebra ``H``.
        source, target: ``dim H × dim R`` matrices of ``η_s``, ``η_t``.
        counit: ``dim R × dim H``.
        comult: ``len(comult_basis) × dim H``, rows indexed by ``comult_basis``.
        comult_basis: basis pairs ``(i, j)`` of ``H ⊗_R H``.
        antipode: ``dim H × dim H``.
    """

    def __init__(self, base: CommAlgebra, total: CommAlgebra, source: Matrix, target: Matrix,
                 counit: Matrix, comult: Matrix, comult_basis: Sequence[tuple[int, int]],
                 antipode: Matrix):
        self.base = base
        self.total = total
        self.source = source
        self.target = target
        self.counit = counit
        self.comult = comult
        self.comult_basis = tuple(tuple(p) for p in comult_basis)
        self.antipode = antipode
        f = self.field
        r, m = base.dim, total.dim
        expected = {"source": (m, r), "target": (m, r), "counit": (r, m),
                    "comult": (len(self.comult_basis), m), "antipode": (m, m)}
        for name, shape in expected.items():
            mat = getattr(self, name)
            if mat.shape != shape or mat.field != f:
                raise TypeError(f"{name} has shape {mat.shape} over {mat.field}, expected {shape} over {f}")
        if base.field != f or not base.pointwise:
            raise TypeError("base must be a split algebra over the same field")
        self._cache = {}

    @property
    def field(self) -> FieldSpec:
        return self.total.field

    def _cols(self, name: str) -> list[dict]:
        key = ("cols", name)
        if key not in self._cache:
            self._cache[key] = getattr(self, name).sparse_columns()
        return self._cache[key]

    def delta(self, k: int) -> dict:
        """``Δ(b_k)`` keyed by basis pairs."""
        key = ("delta",)
        if key not in self._cache:
            self._cache[key] = [{self.comult_basis[i]: c for i, c in col.items()}
                                for col in self._cols("comult")]
        return self._cache[key][k]

    def delta_of(self, u: dict) -> dict:
        out: dict = {}
        for k, c in u.items():
            out = vadd(out, self.delta(k), c)
        return out

    def eta_s(self, x: int) -> dict:
        return self._cols("source")[x]

    def eta_t(self, x: int) -> dict:
        return self._cols("target")[x]

    def apply(self, name: str, u: dict) -> dict:
        return apply_cols(self._cols(name), u)

    def grading(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Per basis element: (t-grade, s-grade).

        Raises:
            GradingError: some basis element is not homogeneous.
        """
        if "grading" in self._cache:
            return self._cache["grading"]
        H = self.total
        tg, sg = [], []
        for k in range(H.dim):
            b = H.basis(k)
            ts = [x for x in range(self.base.dim) if H.mul(self.eta_t(x), b) == b]
            ss = [x for x in range(self.base.dim) if H.mul(self.eta_s(x), b) == b]
            if len(ts) != 1 or len(ss) != 1:
                raise GradingError(f"basis element {H.labels[k]} is not homogeneous")
            tg.append(ts[0])
            sg.append(ss[0])
        self._cache["grading"] = (tuple(tg), tuple(sg))
        return self._cache["grading"]

    def bimodule(self) -> GradedBimodule:
        tg, sg = self.grading()
        return GradedBimodule([(k,) for k in range(self.total.dim)], tg, sg, self.base.dim)

    def balanced(self, factors: int = 2) -> GradedBimodule:
        key = ("balanced", factors)
        if key not in self._cache:
            m = self.bimodule()
            out = m
            for _ in range(factors - 1):
                out = tensor_over_base(out, m)
            self._cache[key] = out
        return self._cache[key]

    def project(self, u: dict, factors: int = 2) -> dict:
        """Image of a representative in ``H ⊗_k ... ⊗_k H`` in the balanced tensor."""
        tg, sg = self.grading()
        return {k: v for k, v in u.items()
                if all(sg[k[i]] == tg[k[i + 1]] for i in range(factors - 1))}

    def unit(self) -> dict:
        return self.total.unit

    def __eq__(self, other):
        if not isinstance(other, HopfAlgebroid):
            return NotImplemented
        return (self.base == other.base and self.total == other.total and self.source == other.source
                and self.target == other.target and self.counit == other.counit
                and self.comult == other.comult and self.comult_basis == other.comult_basis
                and self.antipode == other.antipode)

    def __hash__(self):
        return hash((self.base.labels, self.total.labels))

    def __repr__(self):
        return f"HopfAlgebroid(base={self.base.dim}, total={self.total.dim}, field={self.field})"

    def replace(self, **kw) -> "HopfAlgebroid":
        args = dict(base=self.base, total=self.total, source=self.source, target=self.target,
                    counit=self.counit, comult=self.comult, comult_basis=self.comult_basis,
                    antipode=self.antipode)
        args.update(kw)
        return HopfAlgebroid(**args)


CLAUSES = ("a_algebra_maps", "b_counit_units", "c_coassociativity", "d_counit_laws",
           "e_antipode_units", "f_antipode_laws")


def check_hopf_axioms(h: HopfAlgebroid) -> Report:
    """Check clauses (a)-(f); ``S² = id`` failures are warnings.

    Conventions: ``H ⊗_R H`` uses ``t`` on the left and ``s`` on the right;
    ``μ(S⊗id)Δ = η_s ε`` and ``μ(id⊗S)Δ = η_t ε``.  Twisted composites are
    evaluated on the basis pairs as representatives in ``H ⊗_k H`` and the
    result is checked to vanish on the balanced relations.
    """
    rep = Report()
    H, R = h.total, h.base
    m, n = H.dim, R.dim
    f = h.field
    one = f.one

    try:
        tg, sg = h.grading()
    except GradingError as exc:
        rep.add("a_algebra_maps", ("grading",), str(exc))
        return rep
    if set(h.comult_basis) != set(h.balanced(2).keys):
        rep.add("a_algebra_maps", ("comult_codomain",), "rows of Δ are not the balanced tensor basis")
        return rep

    def fail_once(clause, witness, detail):
        if not any(v.axiom == clause and v.detail == detail for v in rep.violations):
            rep.add(clause, witness, detail)

    # (a) algebra maps ------------------------------------------------
    for name, eta in (("η_s", h.eta_s), ("η_t", h.eta_t)):
        total = {}
        for x in range(n):
            total = vadd(total, eta(x))
            for y in range(n):
                want = eta(x) if x == y else {}
                if H.mul(eta(x), eta(y)) != want:
                    fail_once("a_algebra_maps", (name, x, y), f"{name} not multiplicative")
        if total != H.unit:
            fail_once("a_algebra_maps", (name,), f"{name} not unital")
    eps = lambda u: h.apply("counit", u)  # noqa: E731
    if eps(H.unit) != R.unit:
        fail_once("a_algebra_maps", ("ε",), "ε not unital")
    eps_b = [eps(H.basis(i)) for i in range(m)]
    delta_b = [h.delta(i) for i in range(m)]
    for i in range(m):
        for j in range(i, m):
            prod = H.mul(H.basis(i), H.basis(j))
            if eps(prod) != R.mul(eps_b[i], eps_b[j]):
                fail_once("a_algebra_maps", ("ε", i, j), "ε not multiplicative")
            lhs = h.delta_of(prod)
            rhs = _mul2(h, delta_b[i], delta_b[j])
            if lhs != rhs:
                fail_once("a_algebra_maps", ("Δ", i, j), "Δ not multiplicative")
    if h.delta_of(H.unit) != h.project(tensor(H.unit, H.unit)):
        fail_once("a_algebra_maps", ("Δ",), "Δ not unital")
    for x in range(n):
        if h.delta_of(h.eta_t(x)) != h.project(tensor(h.eta_t(x), H.unit)):
            fail_once("a_algebra_maps", ("Δη_t", x), "Δ is not left R-linear")
        if h.delta_of(h.eta_s(x)) != h.project(tensor(H.unit, h.eta_s(x))):
            fail_once("a_algebra_maps", ("Δη_s", x), "Δ is not right R-linear")

    # (b) counit on the units ----------------------------------------
    for name, mat in (("η_s", h.source), ("η_t", h.target)):
        prod = h.counit @ mat
        if not prod.is_identity():
            x = next(j for j in range(n) if vsparse(prod.column(j)) != {j: one})
            rep.add("b_counit_units", (name, x), f"ε∘{name} differs from id at e_{x}")

    def eta_of(which, r: dict) -> dict:
        out = {}
        for x, c in r.items():
            out = vadd(out, which(x), c)
        return out

    # (c) coassociativity ---------------------------------------------
    for k in range(m):
        left, right = {}, {}
        for (i, j), c in delta_b[k].items():
            left = vadd(left, tensor(delta_b[i], H.basis(j)), c)
            right = vadd(right, tensor(H.basis(i), delta_b[j]), c)
        if h.project(left, 3) != h.project(right, 3):
            rep.add("c_coassociativity", (k,), f"at basis element {H.labels[k]}")
            break

    # (d) counit laws -------------------------------------------------
    for k in range(m):
        left, right = {}, {}
        for (i, j), c in delta_b[k].items():
            left = vadd(left, H.mul(eta_of(h.eta_t, eps_b[i]), H.basis(j)), c)
            right = vadd(right, H.mul(H.basis(i), eta_of(h.eta_s, eps_b[j])), c)
        if left != H.basis(k):
            rep.add("d_counit_laws", ("ε⊗id", k), f"at basis element {H.labels[k]}")
            break
        if right != H.basis(k):
            rep.add("d_counit_laws", ("id⊗ε", k), f"at basis element {H.labels[k]}")
            break

    # (e) antipode on the units ---------------------------------------
    S = h.antipode
    if S @ h.source != h.target:
        rep.add("e_antipode_units", ("S∘η_s",), "S∘η_s ≠ η_t")
    if S @ h.target != h.source:
        rep.add("e_antipode_units", ("S∘η_t",), "S∘η_t ≠ η_s")
    if not (S @ S).is_identity():
        rep.warn("e_antipode_involution", ("S∘S",), "S∘S ≠ id")

    # (f) antipode laws on representatives ---------------------------
    Sx = lambda u: h.apply("antipode", u)  # noqa: E731
    S_b = [Sx(H.basis(i)) for i in range(m)]
    for k in range(m):
        left, right = {}, {}
        for (i, j), c in delta_b[k].items():
            left = vadd(left, H.mul(S_b[i], H.basis(j)), c)
            right = vadd(right, H.mul(H.basis(i), S_b[j]), c)
        if left != eta_of(h.eta_s, eps_b[k]):
            rep.add("f_antipode_laws", ("μ(S⊗id)Δ", k), f"≠ η_s∘ε at {H.labels[k]}")
            break
        if right != eta_of(h.eta_t, eps_b[k]):
            rep.add("f_antipode_laws", ("μ(id⊗S)Δ", k), f"≠ η_t∘ε at {H.labels[k]}")
            break
    # representative independence: both twisted products kill a η_s(e) ⊗ c − a ⊗ η_t(e) c
    done = False
    for a in range(m):
        for c in range(m):
            for x in range(n):
                a_s = H.mul(H.basis(a), h.eta_s(x))
                t_c = H.mul(h.eta_t(x), H.basis(c))
                r1 = vadd(H.mul(Sx(a_s), H.basis(c)), H.mul(S_b[a], t_c), -one)
                r2 = vadd(H.mul(a_s, S_b[c]), H.mul(H.basis(a), Sx(t_c)), -one)
                if r1 or r2:
                    rep.add("f_antipode_laws", ("representative", a, c, x),
                            "twisted product depends on the representative")
                    done = True
                    break
            if done:
                break
        if done:
            break
    return rep


def _mul2(h: HopfAlgebroid, u: dict, v: dict) -> dict:
    """Product in ``H ⊗_R H`` (componentwise), projected to the balanced tensor."""
    H = h.total
    out: dict = {}
    for (a, b), x in u.items():
        for (c, d), y in v.items():
            ac = H.mul(H.basis(a), H.basis(c))
            if not ac:
                continue
            bd = H.mul(H.basis(b), H.basis(d))
            if not bd:
                continue
            out = vadd(out, tensor(ac, bd), x * y)
    return h.project(out)


def clause_status(rep: Report) -> dict[str, bool]:
    failed = set(rep.axioms())
    return {c: c not in failed for c in CLAUSES}


# ------------------------------------------------------------- morphisms

class HopfMorphism:
    """``(α₀, α₁): (R, H) -> (R', H')`` as matrices on coordinates."""

    def __init__(self, domain: HopfAlgebroid, codomain: HopfAlgebroid, base_map: Matrix, total_map: Matrix):
        self.domain = domain
        self.codomain = codomain
        self.base_map = base_map
        self.total_map = total_map
        if base_map.shape != (codomain.base.dim, domain.base.dim):
            raise TypeError(f"base map has shape {base_map.shape}")
        if total_map.shape != (codomain.total.dim, domain.total.dim):
            raise TypeError(f"total map has shape {total_map.shape}")

    def __eq__(self, other):
        if not isinstance(other, HopfMorphism):
            return NotImplemented
        return self.base_map == other.base_map and self.total_map == other.total_map

    def __hash__(self):
        return hash((self.base_map, self.total_map))

    def is_bijective(self) -> bool:
        b, t = self.base_map, self.total_map
        return b.rows == b.cols and t.rows == t.cols and rank(b) == b.rows and rank(t) == t.rows


def identity_hopf_morphism(h: HopfAlgebroid) -> HopfMorphism:
    return HopfMorphism(h, h, Matrix.identity(h.field, h.base.dim), Matrix.identity(h.field, h.total.dim))


def compose_hopf_morphisms(beta: HopfMorphism, alpha: HopfMorphism) -> HopfMorphism:
    """``β ∘ α``."""
    return HopfMorphism(alpha.domain, beta.codomain, beta.base_map @ alpha.base_map,
                        beta.total_map @ alpha.total_map)


def validate_hopf_morphism(alpha: HopfMorphism) -> Report:
    h, k = alpha.domain, alpha.codomain
    rep = Report()
    a0, a1 = alpha.base_map, alpha.total_map
    c0, c1 = a0.sparse_columns(), a1.sparse_columns()
    R, H, R2, H2 = h.base, h.total, k.base, k.total
    for name, A, B, cols in (("α₀", R, R2, c0), ("α₁", H, H2, c1)):
        if apply_cols(cols, A.unit) != B.unit:
            rep.add("algebra_map", (name,), "not unital")
        for i in range(A.dim):
            for j in range(i, A.dim):
                lhs = apply_cols(cols, A.mul(A.basis(i), A.basis(j)))
                if lhs != B.mul(cols[i], cols[j]):
                    rep.add("algebra_map", (name, i, j), "not multiplicative")
                    break
    if a1 @ h.source != k.source @ a0:
        rep.add("source", (), "α₁∘η_s ≠ η_s∘α₀")
    if a1 @ h.target != k.target @ a0:
        rep.add("target", (), "α₁∘η_t ≠ η_t∘α₀")
    if k.counit @ a1 != a0 @ h.counit:
        rep.add("counit", (), "ε∘α₁ ≠ α₀∘ε")
    if k.antipode @ a1 != a1 @ h.antipode:
        rep.add("antipode", (), "S∘α₁ ≠ α₁∘S")
    for i in range(H.dim):
        lhs = k.delta_of(c1[i])
        rhs = {}
        for (p, q), c in h.delta(i).items():
            rhs = vadd(rhs, tensor(c1[p], c1[q]), c)
        if lhs != k.project(rhs):
            rep.add("comultiplication", (i,), f"Δ∘α₁ ≠ (α₁⊗α₁)∘Δ at {H.labels[i]}")
            break
    return rep


# ------------------------------------------------------------- characters

class CharacterGroupoid(FiniteGroupoid):
    """A character groupoid together with the characters it is built from."""

    def __init__(self, hopf: HopfAlgebroid, object_characters, arrow_characters, **tables):
        super().__init__(**tables)
        self.hopf = hopf
        self.object_characters = tuple(object_characters)
        self.arrow_characters = tuple(arrow_characters)
        self.object_index = {c: i for i, c in enumerate(self.object_characters)}
        self.arrow_index = {c: i for i, c in enumerate(self.arrow_characters)}

    def as_groupoid(self) -> FiniteGroupoid:
        return FiniteGroupoid(self.n_objects, self.src, self.tgt, self.compose_table, self.identity,
                              self.inverse, self.object_names, self.arrow_names)


def _precompose(chi: Sequence, mat: Matrix) -> tuple:
    """``χ ∘ M`` as a row vector."""
    z = mat.field.zero
    return tuple(sum((chi[i] * mat.data[i][j] for i in range(mat.rows) if mat.data[i][j]), z)
                 for j in range(mat.cols))


def character_groupoid(h: HopfAlgebroid) -> CharacterGroupoid:
    """Objects are characters of ``R``, arrows characters of ``H``.

    ``src(g) = g∘η_s``, ``tgt(g) = g∘η_t``, ``identity(x) = x∘ε``,
    ``inverse(g) = g∘S`` and ``compose(g, f) = (g⊗f)∘Δ``.

    Raises:
        CharacterGroupoidError: one of these lands outside the character sets.
    """
    ochars = characters(h.base)
    achars = characters(h.total)
    oidx = {c: i for i, c in enumerate(ochars)}
    aidx = {c: i for i, c in enumerate(achars)}

    def look(table, c, what):
        if c not in table:
            raise CharacterGroupoidError(f"{what} is not a character")
        return table[c]

    src = [look(oidx, _precompose(g, h.source), f"source of arrow {i}") for i, g in enumerate(achars)]
    tgt = [look(oidx, _precompose(g, h.target), f"target of arrow {i}") for i, g in enumerate(achars)]
    ident = [look(aidx, _precompose(x, h.counit), f"identity at {i}") for i, x in enumerate(ochars)]
    inv = [look(aidx, _precompose(g, h.antipode), f"inverse of {i}") for i, g in enumerate(achars)]
    comp = {}
    m = h.total.dim
    deltas = [h.delta(k) for k in range(m)]
    z = h.field.zero
    for gi, g in enumerate(achars):
        for fi, f in enumerate(achars):
            if src[gi] != tgt[fi]:
                continue
            val = tuple(sum((c * g[i] * f[j] for (i, j), c in deltas[k].items()), z) for k in range(m))
            comp[(gi, fi)] = look(aidx, val, f"composite of {(gi, fi)}")
    onames = _char_names(h.base, ochars)
    anames = _char_names(h.total, achars)
    return CharacterGroupoid(h, ochars, achars, n_objects=len(ochars), src=src, tgt=tgt, compose=comp,
                             identity=ident, inverse=inv, object_names=onames, arrow_names=anames)


def _char_names(a: CommAlgebra, chars) -> list[str]:
    if a.split_witness is not None and a.split_witness.is_identity():
        # projection onto a delta basis element: name it after that element
        names = []
        for c in chars:
            hot = [i for i, v in enumerate(c) if v]
            names.append(a.labels[hot[0]] if len(hot) == 1 else f"chi{len(names)}")
        return names
    return [f"chi{i}" for i in range(len(chars))]


def apply_X_on_morphism(alpha: HopfMorphism, x_domain: CharacterGroupoid | None = None,
                        x_codomain: CharacterGroupoid | None = None) -> GroupoidMorphism:
    """``𝒳(α): 𝒳(codomain) -> 𝒳(domain)`` by precomposition with ``α₀``, ``α₁``."""
    xd = x_domain if x_domain is not None else character_groupoid(alpha.domain)
    xc = x_codomain if x_codomain is not None else character_groupoid(alpha.codomain)
    omap = tuple(xd.object_index[_precompose(c, alpha.base_map)] for c in xc.object_characters)
    amap = tuple(xd.arrow_index[_precompose(c, alpha.total_map)] for c in xc.arrow_characters)
    return GroupoidMorphism(xc, xd, omap, amap)


# ------------------------------------------------------------- comodules

class Comodule:
    """Free ``R``-module ``R^d`` with coaction ``p_j -> Σ_i p_i ⊗ h_ij``.

    ``coaction[i][j]`` is ``h_ij`` as a dense coordinate tuple in ``H``.
    """

    def __init__(self, hopf: HopfAlgebroid, rank: int, coaction: Sequence[Sequence[Sequence]]):
        self.hopf = hopf
        self.rank = rank
        self.coaction = tuple(tuple(tuple(e) for e in row) for row in coaction)
        m = hopf.total.dim
        if len(self.coaction) != rank or any(len(r) != rank for r in self.coaction):
            raise TypeError(f"coaction must be {rank}x{rank}")
        if any(len(e) != m for r in self.coaction for e in r):
            raise TypeError(f"coaction entries must have length {m}")

    def entry(self, i: int, j: int) -> dict:
        return vsparse(self.coaction[i][j])


def trivial_comodule(h: HopfAlgebroid) -> Comodule:
    return Comodule(h, 1, [[vdense(h.total.unit, h.total.dim, h.field)]])


def validate_comodule(c: Comodule) -> Report:
    h = c.hopf
    rep = Report()
    d = c.rank
    R = h.base
    for i in range(d):
        for j in range(d):
            want = R.unit if i == j else {}
            if h.apply("counit", c.entry(i, j)) != want:
                rep.add("counit", (i, j), "(id⊗ε)δ ≠ id")
    for k in range(d):
        for j in range(d):
            lhs = h.delta_of(c.entry(k, j))
            rhs = {}
            for i in range(d):
                rhs = vadd(rhs, tensor(c.entry(k, i), c.entry(i, j)))
            if lhs != h.project(rhs):
                rep.add("coassociativity", (k, j), "(id⊗Δ)δ ≠ (δ⊗id)δ")
    return rep


# ------------------------------------------------------------- constructions

def extended_hopf_algebroid(a: HopfAlgebroid, object_labels: Sequence[str]) -> HopfAlgebroid:
    """``k^X ⊗ A ⊗ k^X`` for a Hopf algebra ``A`` (a Hopf algebroid over ``k``).

    Basis ``(x, a, y)`` is read as a function on arrows from ``x`` to ``y``:
    ``η_s`` uses the first factor, ``η_t`` the last.
    """
    if a.base.dim != 1:
        raise ValueError("extended_hopf_algebroid needs a Hopf algebra over k")
    f = a.field
    X = len(object_labels)
    A = a.total
    dA = A.dim
    keys = [(x, i, y) for x in range(X) for i in range(dA) for y in range(X)]
    idx = {k: n for n, k in enumerate(keys)}
    mult = {}
    for (x, i, y) in keys:
        for (x2, j, y2) in keys:
            if x == x2 and y == y2:
                prod = A.mul(A.basis(i), A.basis(j))
                if prod:
                    mult[(idx[(x, i, y)], idx[(x, j, y)])] = {idx[(x, k, y)]: c for k, c in prod.items()}
    unit = {idx[(x, i, y)]: c for x in range(X) for y in range(X) for i, c in A.unit.items()}
    witness = None
    if A.split_witness is not None:
        cols = []
        for x in range(X):
            for col in A.split_witness.columns():
                for y in range(X):
                    v = [f.zero] * len(keys)
                    for i, c in enumerate(col):
                        v[idx[(x, i, y)]] = c
                    cols.append(v)
        witness = Matrix.from_columns(f, cols, len(keys))
    labels = [f"{object_labels[x]}|{A.labels[i]}|{object_labels[y]}" for x, i, y in keys]
    total = CommAlgebra(f, labels, mult, unit, witness)
    base = CommAlgebra.split(f, object_labels)
    src_cols = [{idx[(x, i, y)]: c for y in range(X) for i, c in A.unit.items()} for x in range(X)]
    tgt_cols = [{idx[(x, i, y)]: c for x in range(X) for i, c in A.unit.items()} for y in range(X)]
    eps_a = a.counit.sparse_columns()
    counit_cols = [{x: c for _, c in eps_a[i].items()} if x == y else {} for (x, i, y) in keys]
    anti_a = a.antipode.sparse_columns()
    anti_cols = [{idx[(y, j, x)]: c for j, c in anti_a[i].items()} for (x, i, y) in keys]
    ext = HopfAlgebroid(base, total,
                        Matrix.from_sparse_columns(f, len(keys), src_cols),
                        Matrix.from_sparse_columns(f, len(keys), tgt_cols),
                        Matrix.from_sparse_columns(f, X, counit_cols),
                        Matrix.zeros(f, 0, len(keys)), [], Matrix.from_sparse_columns(f, len(keys), anti_cols))
    pairs = ext.balanced(2).keys
    pidx = {p: n for n, p in enumerate(pairs)}
    delta_cols = []
    for (x, i, z) in keys:
        col = {}
        for (p, q), c in a.delta(i).items():
            for y in range(X):
                key = (idx[(y, p, z)], idx[(x, q, y)])
                col[pidx[key]] = col.get(pidx[key], f.zero) + c
        delta_cols.append(vclean(col))
    return ext.replace(comult=Matrix.from_sparse_columns(f, len(pairs), delta_cols), comult_basis=pairs)


def point_block(h: HopfAlgebroid, x: int) -> tuple[HopfAlgebroid, list[int]]:
    """``k_x ⊗_R H ⊗_R k_x`` as the ``(x, x)`` graded block of ``H``.

    Returns the Hopf algebra over ``k`` and the indices of ``H``'s basis
    elements spanning the block.
    """
    tg, sg = h.grading()
    H = h.total
    f = h.field
    K = [k for k in range(H.dim) if tg[k] == x and sg[k] == x]
    pos = {k: i for i, k in enumerate(K)}

    def proj(u):
        return {pos[k]: c for k, c in u.items() if k in pos}

    mult = {}
    for i, a in enumerate(K):
        for j, b in enumerate(K):
            p = proj(H.mul(H.basis(a), H.basis(b)))
            if p:
                mult[(i, j)] = p
    unit = proj(H.unit)
    witness = None
    if H.split_witness is not None:
        cols = [proj(vsparse(c)) for c in H.split_witness.columns()]
        cols = [c for c in cols if c]
        witness = Matrix.from_sparse_columns(f, len(K), cols)
    total = CommAlgebra(f, [H.labels[k] for k in K], mult, unit, witness)
    base = CommAlgebra.split(f, [h.base.labels[x]])
    unit_col = [unit]
    counit_cols = [{0: c} for c in (h.apply("counit", H.basis(k)).get(x, f.zero) for k in K)]
    counit_cols = [vclean(c) for c in counit_cols]
    anti_cols = [proj(h.apply("antipode", H.basis(k))) for k in K]
    pairs = [(i, j) for i in range(len(K)) for j in range(len(K))]
    pidx = {p: n for n, p in enumerate(pairs)}
    delta_cols = []
    for k in K:
        col = {}
        for (p, q), c in h.delta(k).items():
            if p in pos and q in pos:
                col[pidx[(pos[p], pos[q])]] = c
        delta_cols.append(col)
    block = HopfAlgebroid(base, total,
                          Matrix.from_sparse_columns(f, len(K), unit_col),
                          Matrix.from_sparse_columns(f, len(K), unit_col),
                          Matrix.from_sparse_columns(f, 1, counit_cols),
                          Matrix.from_sparse_columns(f, len(pairs), delta_cols), pairs,
                          Matrix.from_sparse_columns(f, len(K), anti_cols))
    return block, K
