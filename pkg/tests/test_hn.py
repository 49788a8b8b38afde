from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torsionlab import hn
from torsionlab.errors import ContractError
from torsionlab.exactla import Field
from torsionlab.hearts import all_twins, heart, star_c, trivial_twins
from torsionlab.modcat import category
from torsionlab.quiver import Quiver
from torsionlab.subcat import Context
from torsionlab.suites import two_hearts

F2 = Field(2)
A3 = Quiver.linear_a(3)
Fr = Fraction
GRID = 120


def A3cat():
    return category(A3, F2)


def example_chain(cat):
    amb = Context.full(cat)
    return hn.chain(amb, [(0, cat.everything), (Fr(1, 3), cat.resolve_set(["1"])), (Fr(2, 3), frozenset())])


class GridOracle:
    """Slices and windows of a chain straight from their definitions, on the grid 1/GRID."""

    def __init__(self, eta):
        self.eta = eta
        ctx = eta.ctx
        # values at the half-grid points see the open gaps between grid points
        vals = [eta.at(Fr(j, 2 * GRID)) for j in range(2 * GRID + 1)]
        self.slices = []
        for k in range(GRID + 1):
            below = ctx.members
            for v in vals[:2 * k]:
                below = below & v
            above = frozenset().union(*vals[2 * k + 1:])
            self.slices.append(below & ctx.perp_right(above))
        self._windows = {}

    def slice(self, r):
        k = r * GRID
        assert k.denominator == 1
        return self.slices[int(k)]

    def window(self, a, b):
        key = (a, b)
        if key not in self._windows:
            union = frozenset()
            for k in range(GRID + 1):
                if a <= Fr(k, GRID) <= b:
                    union |= self.slices[k]
            self._windows[key] = hn.filt_closure(self.eta.ctx, union)
        return self._windows[key]


def window_by_closure(eta, a, b):
    return GridOracle(eta).window(a, b)


def distance_by_grid(eta, eta2):
    """Smallest grid epsilon putting each nonzero slice of one chain in the other's window."""
    ox, oy = GridOracle(eta), GridOracle(eta2)

    def holds(x, y, eps):
        for k, s in enumerate(y.slices):
            r = Fr(k, GRID)
            if s and not s <= x.window(max(Fr(0), r - eps), min(Fr(1), r + eps)):
                return False
        return True

    for k in range(GRID + 1):
        eps = Fr(k, GRID)
        if holds(ox, oy, eps) and holds(oy, ox, eps):
            return eps


@st.composite
def chains(draw, ctx=None, max_steps=3, denominators=(2, 3, 4, 5, 6)):
    ctx = ctx or Context.full(A3cat())
    tors = sorted(ctx.torsion_classes(), key=lambda t: (len(t), sorted(t)))
    d = draw(st.sampled_from(denominators))
    k = draw(st.integers(1, min(max_steps, d, len(tors))))
    picked = [draw(st.sampled_from(tors))]
    while len(picked) < k:
        smaller = [t for t in tors if t < picked[-1]]
        if not smaller:
            break
        picked.append(draw(st.sampled_from(smaller)))
    bps = sorted(draw(st.lists(st.integers(1, d - 1), min_size=len(picked) - 1, max_size=len(picked) - 1,
                               unique=True)))
    return hn.Chain(ctx, (Fr(0),) + tuple(Fr(b, d) for b in bps) + (Fr(1),), tuple(picked))


# ------------------------------------------------------------- examples

def test_chain_validation(a3):
    amb = Context.full(a3)
    with pytest.raises(ContractError):
        hn.Chain(amb, (Fr(0), Fr(1, 2), Fr(1)), (frozenset(), a3.everything))
    with pytest.raises(ContractError):
        hn.Chain(amb, (Fr(0), Fr(1)), (a3.resolve_set(["2/3"]),))
    with pytest.raises(ContractError):
        hn.Chain(amb, (Fr(0), Fr(1, 2)), (a3.everything,))


def test_slice_examples(a3):
    amb = Context.full(a3)
    eta = hn.two_step(amb, frozenset())
    assert hn.slice_members(eta, Fr(1, 2)) == a3.everything
    eta = example_chain(a3)
    assert hn.slice_members(eta, Fr(2, 3)) == a3.resolve_set(["1"])
    assert hn.slice_members(eta, Fr(1, 3)) == amb.perp_right(a3.resolve_set(["1"]))
    assert hn.slice_members(eta, Fr(1, 3)) == a3.resolve_set(["3", "2", "2/3", "1/2", "1/2/3"])
    assert hn.slice_members(eta, Fr(1, 2)) == frozenset()
    assert hn.nonzero_slices(eta) == {Fr(1, 3): hn.slice_members(eta, Fr(1, 3)), Fr(2, 3): a3.resolve_set(["1"])}


def test_slices_match_definition(a3):
    eta = example_chain(a3)
    oracle = GridOracle(eta)
    for k in range(GRID + 1):
        r = Fr(k, GRID)
        assert hn.slice_members(eta, r) == oracle.slice(r)


def test_hn_examples(a3):
    eta = example_chain(a3)
    assert len(hn.hn_filtration(eta, a3.zero())) == 0
    one = a3.indec(a3.resolve("1"))
    f = hn.hn_filtration(eta, one)
    assert len(f) == 1 and f.labels == (Fr(2, 3),)
    f = hn.hn_filtration(eta, a3.indec(a3.resolve("1/2/3")))
    assert len(f) == 1 and f.labels == (Fr(1, 3),)
    assert f.factor_members(a3) == [a3.resolve_set(["1/2/3"])]
    assert Context.full(a3).trace(a3.resolve_set(["1"]), a3.indec(a3.resolve("1/2/3"))).is_zero()
    m = a3.sum_of([a3.resolve("1"), a3.resolve("2/3")])
    f = hn.hn_filtration(eta, m)
    assert f.labels == (Fr(2, 3), Fr(1, 3))
    assert f.factor_members(a3) == [a3.resolve_set(["1"]), a3.resolve_set(["2/3"])]


def test_hn_uniqueness_examples(a3):
    eta = example_chain(a3)
    assert hn.hn_unique_check(eta, a3.zero())
    assert hn.hn_unique_check(eta, a3.indec(a3.resolve("2")))
    amb = Context.full(a3)
    samples = [eta, hn.two_step(amb, a3.resolve_set(["1", "1/2", "1/2/3"])),
               hn.two_step(amb, amb.perp_left(a3.resolve_set(["3"])), Fr(1, 4))]
    for c in samples:
        for x in range(a3.size):
            assert hn.hn_unique_check(c, a3.indec(x))


def test_filt_closure_examples(a3):
    amb = Context.full(a3)
    assert hn.filt_closure(amb, ()) == frozenset()
    t = amb.perp_left(a3.resolve_set(["3"]))
    assert hn.filt_closure(amb, t) == t
    assert hn.filt_closure(amb, a3.resolve_set(["1", "2/3"])) == a3.resolve_set(["1", "2/3", "1/2/3"])


def test_interval_heart_examples(a3):
    eta = example_chain(a3)
    assert hn.interval_heart(eta, 0, 1) == a3.everything
    for r in (Fr(0), Fr(1, 3), Fr(1, 2), Fr(2, 3), Fr(1)):
        assert hn.interval_heart(eta, r, r) == hn.slice_members(eta, r)
    both = hn.interval_heart(eta, Fr(1, 3), Fr(2, 3))
    assert both == a3.everything
    assert both == window_by_closure(eta, Fr(1, 3), Fr(2, 3))


def test_distance_examples(a3):
    eta = example_chain(a3)
    assert hn.distance(eta, eta) == 0
    amb = Context.full(a3)
    other = hn.two_step(amb, a3.resolve_set(["1"]))
    d = hn.distance(eta, other)
    assert d == distance_by_grid(eta, other)


def test_two_embeddings_of_the_same_heart_are_at_distance_one(a3):
    first, second = two_hearts(a3)
    h1, h2 = heart(a3, first), heart(a3, second)
    assert h1.members == h2.members == a3.resolve_set(["1"])
    assert first.outer.torsionfree == a3.resolve_set(["3", "2", "2/3", "1/2", "1/2/3"])
    assert second.outer.torsionfree == a3.resolve_set(["2", "1/2"])
    for c1 in hn.heart_chains(h1, [Fr(1, 3), Fr(1, 2), Fr(2, 3)]):
        for c2 in hn.heart_chains(h2, [Fr(1, 4), Fr(1, 2)]):
            assert hn.distance(hn.phi_embed(first, c1), hn.phi_embed(second, c2)) == 1


def test_phi_embed_examples(a3):
    amb = Context.full(a3)
    tw = trivial_twins(a3)
    eta = hn.Chain(heart(a3, tw), example_chain(a3).breakpoints, example_chain(a3).classes)
    assert hn.phi_embed(tw, eta).classes == eta.classes
    _, second = two_hearts(a3)
    hctx = heart(a3, second)
    eta = hn.two_step(hctx, frozenset())
    big = hn.phi_embed(second, eta)
    c = second.inner.torsion
    for t, bt in zip(eta.classes, big.classes):
        assert bt == amb.star_members(c, t, method="oracle") == star_c(a3, second, t)
    assert big.classes == (a3.resolve_set(["1", "3"]), a3.resolve_set(["3"]))


def test_slicing_identities_examples(a3):
    tw = trivial_twins(a3)
    eta = hn.two_step(heart(a3, tw), frozenset())
    assert all(hn.slicing_identity_check(tw, eta).values())
    _, second = two_hearts(a3)
    eta = hn.two_step(heart(a3, second), frozenset())
    assert all(hn.slicing_identity_check(second, eta).values())


def test_closedness_examples(a3):
    _, second = two_hearts(a3)
    hctx = heart(a3, second)
    inside = hn.phi_embed(second, hn.two_step(hctx, frozenset()))
    rep = hn.closedness_check(second, inside)
    assert rep.ok and rep.in_image and rep.witnesses >= 1
    amb = Context.full(a3)
    # interior class add{1} does not contain C = add{3}
    outside = hn.two_step(amb, a3.resolve_set(["1"]))
    rep = hn.closedness_check(second, outside)
    assert rep.ok and not rep.in_image and rep.witnesses == 0
    for h in hn.heart_chains(hctx, [Fr(1, 4), Fr(1, 2), Fr(3, 4)]):
        assert hn.distance(outside, hn.phi_embed(second, h)) > 0


# ------------------------------------------------------------- properties

@given(chains())
def test_uniontors_and_stabilization(eta):
    assert hn.uniontors_check(eta) == []
    assert hn.stabilization_check(eta) == []


@given(chains(), st.lists(st.integers(0, 5), min_size=1, max_size=2))
def test_hn_filtration_properties(eta, ids):
    cat = A3cat()
    m = cat.sum_of(ids)
    f = hn.hn_filtration(eta, m)
    assert all(not x.is_zero() for x in f.factors)
    assert all(0 <= r <= 1 for r in f.labels)
    assert list(f.labels) == sorted(set(f.labels), reverse=True)
    for fac, r in zip(f.factors, f.labels):
        assert cat.members_of(fac) <= hn.slice_members(eta, r)
    assert f.steps[-1].is_everything()
    assert hn.hn_unique_check(eta, m)


@given(chains(), chains(), chains())
def test_pseudometric(a, b, c):
    dab, dbc, dac = hn.distance(a, b), hn.distance(b, c), hn.distance(a, c)
    assert hn.distance(a, a) == 0
    assert dab == hn.distance(b, a)
    assert 0 <= dab <= 1
    assert dac <= dab + dbc


@given(chains(denominators=(2, 3, 4)), chains(denominators=(2, 3, 4)))
def test_distance_matches_grid_oracle(a, b):
    assert hn.distance(a, b) == distance_by_grid(a, b)


@given(chains(), chains())
def test_zero_distance_means_equal_slices(a, b):
    if hn.distance(a, b) == 0:
        pts = set(a.breakpoints) | set(b.breakpoints)
        assert all(hn.slice_members(a, r) == hn.slice_members(b, r) for r in pts)


@given(chains(), st.integers(0, 12), st.integers(0, 12))
def test_interval_heart_is_closure_of_slices(eta, i, j):
    a, b = sorted((Fr(i, 12), Fr(j, 12)))
    fast = hn.interval_heart(eta, a, b, cross_check=False)
    assert fast == window_by_closure(eta, a, b)


@given(st.integers(0, 67), st.data())
def test_phi_embed_preserves_hn_filtrations(k, data):
    cat = A3cat()
    tw = all_twins(cat)[k]
    hctx = heart(cat, tw)
    if not hctx.members:
        return
    eta = data.draw(chains(ctx=hctx))
    big = hn.phi_embed(tw, eta)
    assert all(hn.slicing_identity_check(tw, eta).values())
    assert hn.uniontors_check(eta) == []
    ids = data.draw(st.lists(st.sampled_from(sorted(hctx.members)), min_size=1, max_size=2))
    m = cat.sum_of(ids)
    small, large = hn.hn_filtration(eta, m), hn.hn_filtration(big, m)
    assert small.labels == large.labels
    assert [s.key for s in small.steps] == [s.key for s in large.steps]
    assert all(hctx.contains(s.rep) for s in large.steps)
