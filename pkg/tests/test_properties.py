"""Property tests for the invariants of each module."""
import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from grpdhopf.groupoid import (action_groupoid, band_groupoid, cyclic_group, disjoint_union, induced_groupoid,
                               is_transitive, isotropy_group, law_holds, pair_groupoid, symmetric_group,
                               tables_match_under, unit_groupoid, validate_groupoid)
from grpdhopf.hopf import character_groupoid, characters, check_hopf_axioms, CommAlgebra, is_character
from grpdhopf.linalg import Matrix, inverse, kernel_basis, kron, rank, rref, SingularMatrixError
from grpdhopf.repfun import gt_check, repfun_concrete
from grpdhopf.representation import (conjugate_rep, dual_rep, restrict_along, spanning_family, tensor_rep,
                                     trivial_rep, validate_rep)

from conftest import F5, FIELDS, mutate_entry

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

fields = st.sampled_from(FIELDS)
small_ints = st.integers(-4, 4)


@st.composite
def matrices(draw, field=None, rows=None, cols=None):
    f = field or draw(fields)
    r = rows or draw(st.integers(1, 4))
    c = cols or draw(st.integers(1, 4))
    if f.is_rational:
        entry = st.builds(Fraction, small_ints, st.integers(1, 3))
    else:
        entry = small_ints
    data = [[f(draw(entry)) for _ in range(c)] for _ in range(r)]
    return Matrix.from_rows(f, data)


GROUPS = {"z1": lambda: cyclic_group(1), "z2": lambda: cyclic_group(2), "z3": lambda: cyclic_group(3),
          "s3": lambda: symmetric_group(3)}


@st.composite
def groups(draw):
    return GROUPS[draw(st.sampled_from(sorted(GROUPS)))]()


@st.composite
def groupoids(draw, max_arrows=30):
    kind = draw(st.sampled_from(["unit", "pair", "band", "action", "union"]))
    if kind == "unit":
        g = unit_groupoid(draw(st.integers(1, 4)))
    elif kind == "pair":
        g = pair_groupoid(draw(st.integers(1, 4)))
    elif kind == "band":
        g = band_groupoid(draw(st.integers(1, 2)), draw(groups()))
    elif kind == "action":
        n = draw(st.integers(1, 4))
        shift = draw(st.integers(0, n - 1))
        z = cyclic_group(draw(st.sampled_from([1, 2, 3])))
        order = z.n_arrows
        # Z/k acting by rotation by `shift` steps, valid when k·shift ≡ 0 mod n
        if (order * shift) % n:
            shift = 0
        g = action_groupoid(z, lambda a, x: (x + a * shift) % n, n)
    else:
        g = disjoint_union(draw(groupoids(max_arrows=12)), draw(groupoids(max_arrows=12)))
    if g.n_arrows > max_arrows:
        g = pair_groupoid(2)
    return g


# ----- exact linear algebra


@SETTINGS
@given(matrices())
def test_rref_idempotent(m):
    r, _, _ = rref(m)
    assert rref(r)[0] == r


@SETTINGS
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@SETTINGS
@given(matrices())
def test_kernel_is_annihilated(m):
    k = kernel_basis(m)
    assert k.cols == m.cols - rank(m)
    assert (m @ k).is_zero()
    assert rank(k) == k.cols


@SETTINGS
@given(st.data())
def test_inverse_when_it_exists(data):
    f = data.draw(fields)
    n = data.draw(st.integers(1, 4))
    m = data.draw(matrices(field=f, rows=n, cols=n))
    try:
        mi = inverse(m)
    except SingularMatrixError:
        assert rank(m) < n
        return
    assert (mi @ m).is_identity() and (m @ mi).is_identity()


@SETTINGS
@given(st.data())
def test_kron_associative(data):
    f = data.draw(fields)
    a, b, c = (data.draw(matrices(field=f, rows=data.draw(st.integers(1, 2)), cols=data.draw(st.integers(1, 2))))
               for _ in range(3))
    assert kron(kron(a, b), c) == kron(a, kron(b, c))


# ----- groupoids


@SETTINGS
@given(groupoids())
def test_builders_valid(g):
    assert validate_groupoid(g).ok
    assert all(g.inverse[g.inverse[a]] == a for a in g.arrows)
    assert all(g.inverse[g.identity[x]] == g.identity[x] for x in g.objects)


@SETTINGS
@given(st.integers(1, 3), groups())
def test_band_invariants(n, h):
    g = band_groupoid(n, h)
    assert g.n_arrows == n * n * h.n_arrows and is_transitive(g)
    for x in g.objects:
        assert tables_match_under(isotropy_group(g, x), h, list(h.arrows))


@SETTINGS
@given(groupoids(), st.data())
def test_induced_point_is_isotropy(g, data):
    x = data.draw(st.integers(0, g.n_objects - 1))
    pt, _ = induced_groupoid(g, [x])
    iso = isotropy_group(g, x)
    assert pt.n_arrows == iso.n_arrows
    assert tables_match_under(pt, iso, list(iso.arrows))


@SETTINGS
@given(groupoids(), st.integers(0, 2 ** 32))
def test_single_mutation_is_caught(g, seed):
    if g.n_arrows < 2:
        return
    bad, _ = mutate_entry(g, random.Random(seed))
    rep = validate_groupoid(bad)
    assert not rep.ok
    assert all(not law_holds(bad, v.axiom, v.witness) for v in rep.violations)


# ----- representations


def random_frames(field, d, n, rng):
    out = []
    while len(out) < n:
        m = Matrix.from_rows(field, [[field(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)])
        if rank(m) == d:
            out.append(m)
    return out


@st.composite
def reps(draw, g, field):
    (r,) = spanning_family(g, field)[:1]
    rng = random.Random(draw(st.integers(0, 2 ** 16)))
    return conjugate_rep(r, random_frames(field, r.rank, g.n_objects, rng))


@SETTINGS
@given(groupoids(max_arrows=12), fields, st.data())
def test_monoidal_coherence(g, f, data):
    e, r = data.draw(reps(g, f)), data.draw(reps(g, f))
    one = trivial_rep(g, f)
    assert tensor_rep(tensor_rep(e, r), e) == tensor_rep(e, tensor_rep(r, e))
    assert tensor_rep(e, one) == e and tensor_rep(one, e) == e
    for x in (tensor_rep(e, r), dual_rep(e)):
        assert validate_rep(x).ok


@SETTINGS
@given(groupoids(max_arrows=12), fields, st.data())
def test_rigid_duality_pairing(g, f, data):
    e = data.draw(reps(g, f))
    d = dual_rep(e)
    assert all((d[a].transpose() @ e[a]).is_identity() for a in g.arrows)
    assert dual_rep(d) == e


@SETTINGS
@given(st.sampled_from([1, 2, 3]), st.data())
def test_restriction_is_monoidal(k, data):
    from grpdhopf.groupoid import GroupoidMorphism
    z = cyclic_group(k)
    act = action_groupoid(z, lambda a, x: (a + x) % k, k)
    pr = GroupoidMorphism(act, z, tuple(0 for _ in range(k)), tuple(a // k for a in act.arrows))
    e = data.draw(reps(z, F5))
    assert restrict_along(pr, tensor_rep(e, e)) == tensor_rep(restrict_along(pr, e), restrict_along(pr, e))


# ----- Hopf algebroids


@SETTINGS
@given(st.lists(st.text("abc", min_size=1, max_size=2), min_size=1, max_size=6, unique=True), fields)
def test_split_algebra_characters(labels, f):
    a = CommAlgebra.split(f, labels)
    chars = characters(a)
    assert len(chars) == len(labels)
    assert all(is_character(a, c) for c in chars)


@settings(max_examples=15, deadline=None)
@given(groupoids(max_arrows=24), fields)
def test_repfun_properties(g, f):
    h = repfun_concrete(g, f)
    assert h.total.dim == g.n_arrows
    assert check_hopf_axioms(h).ok
    assert validate_groupoid(character_groupoid(h)).ok
    assert gt_check(h).faithfully_flat == is_transitive(g)
