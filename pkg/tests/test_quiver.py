import pytest
from hypothesis import assume, given, strategies as st

import oracles
from strategies import invertible, morphisms, representations
from torsionlab.errors import StructuralError
from torsionlab.exactla import Field, Matrix, solve
from torsionlab.modcat import RepCategory, category, change_basis
from torsionlab.quiver import Quiver
from torsionlab.reps import (Representation, cokernel, direct_sum, ext_space, extension_classes,
                             extension_from_cochain, hom_basis, hom_dim, image, kernel, morphism_from_vector,
                             subobjects)

F2, F3, QQ = Field(2), Field(3), Field(0)
A3 = Quiver.linear_a(3)


def rep(cat, label):
    return cat.indec(cat.resolve(label))


# ------------------------------------------------------------------ quivers

def test_non_dynkin_and_cyclic_quivers_are_refused():
    with pytest.raises(StructuralError):
        Quiver(2, ((0, 1), (1, 0)))
    with pytest.raises(StructuralError):
        Quiver(5, ((1, 0), (2, 0), (3, 0), (4, 0)))
    with pytest.raises(StructuralError):
        Quiver(2, ((0, 1), (0, 1)))


@pytest.mark.parametrize("quiver,count", [(Quiver.linear_a(1), 1), (Quiver.linear_a(2), 3), (A3, 6),
                                          (Quiver.linear_a(4), 10), (Quiver.d4(), 12)])
@pytest.mark.parametrize("p", [2, 3, 0])
def test_indecomposable_counts(quiver, count, p):
    cat = category(quiver, Field(p))
    assert cat.size == count
    for i in range(cat.size):
        assert cat.hom_dims[i][i] == 1


def test_table_order_is_by_total_dim_then_lex(a3):
    keys = [(sum(x.dims), x.dims) for x in a3.indecs]
    assert keys == sorted(keys)
    assert list(a3.pretty) == ["3", "2", "1", "2/3", "1/2", "1/2/3"]


# ---------------------------------------------------------------- hom/ker/coker

def test_hom_examples(a3):
    m = rep(a3, "1/2/3")
    assert hom_dim(rep(a3, "2"), rep(a3, "3")) == 0
    assert hom_dim(rep(a3, "2/3"), rep(a3, "1/2")) == 1
    for x in [m, a3.sum_of([0, 3, 3])]:
        basis = hom_basis(x, x)
        cols = Matrix.from_columns(F2, [b.vector() for b in basis], len(basis[0].vector()))
        assert solve(cols, x.identity().vector()) is not None


@pytest.mark.parametrize("p", [2, 3])
def test_hom_dims_match_bruteforce(p):
    cat = category(A3, Field(p))
    for x in cat.indecs:
        for y in cat.indecs:
            assert oracles.hom_count(x, y, p) == p ** hom_dim(x, y)


def test_kernel_cokernel_examples(a3):
    m = rep(a3, "1/2/3")
    assert kernel(m.identity())[0].is_zero()
    assert cokernel(m.identity())[0].is_zero()
    n = rep(a3, "1/2")
    z = m.zero_to(n)
    assert kernel(z)[0].dims == m.dims and cokernel(z)[0].dims == n.dims
    (f,) = hom_basis(m, n)
    ker, _ = kernel(f)
    assert a3.decompose(ker) == (a3.resolve("3"),)
    (g,) = hom_basis(rep(a3, "3"), m)
    coker, _ = cokernel(g)
    assert a3.decompose(coker) == (a3.resolve("1/2"),)


@given(morphisms())
def test_hom_basis_commutes_and_rank_nullity(f):
    for b in hom_basis(f.source, f.target):
        assert b.commutes()
    k, _ = kernel(f)
    c, _ = cokernel(f)
    im = image(f)
    for v in range(3):
        assert f.source.dims[v] == k.dims[v] + im.dims[v]
        assert f.target.dims[v] == im.dims[v] + c.dims[v]


@given(morphisms(p=3))
def test_rank_nullity_f3(f):
    k, _ = kernel(f)
    c, _ = cokernel(f)
    for v in range(3):
        assert f.source.dims[v] - k.dims[v] == f.target.dims[v] - c.dims[v]


# ---------------------------------------------------------------- decompose

def test_decompose_examples(a3):
    assert a3.decompose(a3.zero()) == ()
    (xi,) = ext_space(rep(a3, "1"), rep(a3, "2/3")).basis
    ses = extension_from_cochain(rep(a3, "1"), rep(a3, "2/3"), xi)
    assert ses.is_exact()
    assert a3.decompose(ses.mono.target) == (a3.resolve("1/2/3"),)
    assert oracles.is_isomorphic_bruteforce(ses.mono.target, rep(a3, "1/2/3"), 2)


def test_isomorphism_examples(a3):
    m = rep(a3, "1/2/3")
    assert a3.is_isomorphic(m, m)
    s = a3.sum_of([a3.resolve("2/3"), a3.resolve("1")])
    assert s.dims == m.dims
    assert not a3.is_isomorphic(s, m)
    assert not oracles.is_isomorphic_bruteforce(s, m, 2)


@given(representations())
def test_decompose_is_a_partition(m):
    cat = category(A3, F2)
    parts = cat.decompose(m)
    total = [sum(cat.indec(i).dims[v] for i in parts) for v in range(3)]
    assert tuple(total) == m.dims
    assert cat.decompose(cat.sum_of(parts)) == parts
    assert cat.decompose(m, method="hom") == parts


@given(representations(p=3, max_dim=2))
def test_fitting_and_fingerprint_agree_f3(m):
    cat = category(A3, F3)
    assert cat.decompose(m) == cat.decompose(m, method="hom")


@given(representations(quiver=Quiver.d4(), max_dim=2))
def test_decompose_d4(m):
    cat = category(Quiver.d4(), F2)
    parts = cat.decompose(m)
    assert cat.decompose(m, method="hom") == parts
    assert cat.sum_of(parts).dims == m.dims


def test_decomposition_agrees_with_bruteforce_isomorphism(a3):
    # every A3 module with dims <= (1,1,1) against every sum with those dims
    from itertools import product
    for dims in product(range(2), repeat=3):
        shapes = [(dims[t], dims[s]) for s, t in A3.arrows]
        for entries in product(*[list(oracles.all_matrices(2, r, c)) for r, c in shapes]):
            m = Representation.from_lists(A3, F2, dims, entries)
            n = a3.sum_of(a3.decompose(m))
            assert oracles.is_isomorphic_bruteforce(m, n, 2)


# ---------------------------------------------------------------- subobjects

def test_subobject_examples(a3):
    assert len(subobjects(a3.zero())) == 1
    assert len(subobjects(rep(a3, "2"))) == 2
    subs = subobjects(rep(a3, "1/2/3"))
    assert sorted(a3.decompose(s.rep) for s in subs) == sorted(
        [(), (a3.resolve("3"),), (a3.resolve("2/3"),), (a3.resolve("1/2/3"),)])


@given(representations(max_dim=2))
def test_subobject_count_matches_bruteforce(m):
    assume(m.total_dim <= 4)
    assert len(subobjects(m)) == oracles.subrep_count(m, 2)


@given(representations(max_dim=2), st.data())
def test_subobject_count_is_basis_independent(m, data):
    cat = category(A3, F2)
    gs = [data.draw(invertible(F2, d)) for d in m.dims]
    n = change_basis(m, gs)
    assert cat.is_isomorphic(m, n)
    a = sorted(cat.decompose(s.rep) for s in subobjects(m))
    b = sorted(cat.decompose(s.rep) for s in subobjects(n))
    assert a == b


# ---------------------------------------------------------------- extensions

def test_ext_middle_term_examples(a3):
    one, two3, three = a3.resolve("1"), a3.resolve("2/3"), a3.resolve("3")
    assert a3.ext_middle_terms(one, two3) == {tuple(sorted((one, two3))), (a3.resolve("1/2/3"),)}
    assert a3.ext_middle_terms(three, one) == {tuple(sorted((three, one)))}
    for i in range(a3.size):
        assert a3.ext_middle_terms(i, i) == {(i, i)}


@pytest.mark.parametrize("p", [2, 3, 0])
def test_every_extension_is_a_verified_ses(p):
    cat = category(A3, Field(p))
    for c in cat.indecs:
        for a in cat.indecs:
            space = ext_space(c, a)
            for cochain in extension_classes(space):
                ses = extension_from_cochain(c, a, cochain)
                assert ses.mono.is_mono() and ses.epi.is_epi() and ses.is_exact()


def test_ext_dims_match_euler_form(a3):
    # dim Hom - dim Ext = Euler form on dimension vectors for hereditary algebras
    for i, x in enumerate(a3.indecs):
        for j, y in enumerate(a3.indecs):
            euler = sum(x.dims[v] * y.dims[v] for v in range(3)) - sum(x.dims[s] * y.dims[t] for s, t in A3.arrows)
            assert a3.hom_dims[i][j] - a3.ext_dim(i, j) == euler


def test_direct_sum_and_cache_table_roundtrip(a3):
    s = direct_sum([rep(a3, "2"), rep(a3, "1/2")])
    assert a3.decompose(s.rep) == tuple(sorted((a3.resolve("2"), a3.resolve("1/2"))))
    table = [Representation.from_lists(A3, F2, **r.to_lists()) for r in a3.indecs]
    assert RepCategory(A3, F2, table).hom_dims == a3.hom_dims


def test_morphism_vector_roundtrip(a3):
    m, n = rep(a3, "1/2/3"), rep(a3, "1/2")
    (f,) = hom_basis(m, n)
    assert morphism_from_vector(m, n, f.vector()).blocks == f.blocks
