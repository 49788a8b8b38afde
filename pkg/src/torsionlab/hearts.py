"""
Hearts of nested torsion pairs: kernels and cokernels in the heart with
universal-property certificates, the torsion-pair bijection between an
interval of ambient torsion classes and the torsion classes of the heart,
and the identities relating traces of the two pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ContractError, TheoremViolation
from .exactla import span_dim
from .modcat import RepCategory
from .reps import (
    Representation,
    RepMorphism,
    column_morphism,
    direct_sum,
    factor_through,
    hom_basis,
    image,
    kernel_subobject,
    row_morphism,
)
from .subcat import Context, TorsionPair, TwinPair, ambient_free_part, ambient_trace


def heart(cat: RepCategory, twins: TwinPair) -> Context:
    for pair in (twins.inner, twins.outer):
        if not Context.full(cat).is_torsion_pair(*pair):
            raise ContractError("twin data is not a pair of torsion pairs")
    return Context.heart(cat, twins)


def trivial_twins(cat: RepCategory) -> TwinPair:
    """[(0, everything), (everything, 0)]: the heart is the whole category."""
    return TwinPair(TorsionPair(frozenset(), cat.everything), TorsionPair(cat.everything, frozenset()))


def twins_from_classes(cat: RepCategory, c: frozenset, c_outer: frozenset) -> TwinPair:
    amb = Context.full(cat)
    return TwinPair(amb.pair_of(c), amb.pair_of(c_outer))


def all_twins(cat: RepCategory) -> list[TwinPair]:
    classes = Context.full(cat).enumerate_torsion_classes()
    return [TwinPair(a, b) for a in classes for b in classes if a.torsion <= b.torsion]


# ------------------------------------------------------------ certificates

def _vectors(maps) -> list[tuple]:
    return [m.vector() for m in maps]


def _annihilated_dim(basis: list[RepMorphism], compose) -> int:
    """dim of {u in span(basis) : compose(u) = 0} for a linear ``compose``."""
    if not basis:
        return 0
    images = _vectors([compose(b) for b in basis])
    n = len(images[0])
    return len(basis) - (span_dim(basis[0].source.field, n, images) if n else 0)


def certify_kernel(ctx: Context, f: RepMorphism, k: RepMorphism) -> None:
    """``k`` is a kernel of ``f`` in ``ctx``, tested against every context indecomposable."""
    cat = ctx.cat
    if not (k.is_mono() and (f @ k).is_zero() and ctx.contains(k.source)):
        raise TheoremViolation("kernel in the heart", "candidate is not a monic zero-composite in the heart")
    for z in sorted(ctx.members):
        zr = cat.indecs[z]
        killed = _annihilated_dim(hom_basis(zr, f.source), lambda u: f @ u)
        if killed != len(hom_basis(zr, k.source)):
            raise TheoremViolation("kernel in the heart", f"factorisation fails for test object {cat.pretty[z]}")


def certify_cokernel(ctx: Context, f: RepMorphism, c: RepMorphism) -> None:
    cat = ctx.cat
    if not (c.is_epi() and (c @ f).is_zero() and ctx.contains(c.target)):
        raise TheoremViolation("cokernel in the heart", "candidate is not an epic zero-composite in the heart")
    for z in sorted(ctx.members):
        zr = cat.indecs[z]
        killed = _annihilated_dim(hom_basis(f.target, zr), lambda v: v @ f)
        if killed != len(hom_basis(c.target, zr)):
            raise TheoremViolation("cokernel in the heart", f"factorisation fails for test object {cat.pretty[z]}")


def kernel_in_heart(ctx: Context, f: RepMorphism, certify: bool = True) -> tuple[Representation, RepMorphism]:
    """Trace of C' on the ambient kernel, with its inclusion into ``f.source``."""
    sub = ctx.kernel(f)
    k = sub.inclusion
    if certify:
        certify_kernel(ctx, f, k)
    return sub.rep, k


def cokernel_in_heart(ctx: Context, f: RepMorphism, certify: bool = True) -> tuple[Representation, RepMorphism]:
    """D-torsionfree part of the ambient cokernel, with the projection onto it."""
    q, c = ctx.cokernel(f)
    if certify:
        certify_cokernel(ctx, f, c)
    return q, c


@lru_cache(maxsize=4096)
def _source_side(ctx: Context, f: RepMorphism):
    # per-morphism data for the first map; sweeps reuse it across many pairs
    if not f.is_mono():
        return False, None, None, None
    _, q = ctx.cokernel(f)
    return True, image(f), q.target.dims, kernel_subobject(q)


@lru_cache(maxsize=4096)
def _target_side(ctx: Context, g: RepMorphism):
    return g.is_epi(), ctx.kernel(g), kernel_subobject(g)


def is_ses_in_heart(ctx: Context, f: RepMorphism, g: RepMorphism) -> bool:
    """Ambient exactness of (f, g), checked against the heart-intrinsic characterisation."""
    if f.target != g.source:
        return False
    ambient = intrinsic = False
    if (g @ f).is_zero():
        # same tests as is_exact_pair, sharing the composite
        counts = all(a + c == b for a, b, c in zip(f.source.dims, f.target.dims, g.target.dims))
        ambient = counts and f.is_mono() and g.is_epi()
        mono, im, qdims, qker = _source_side(ctx, f)
        if mono:
            epi, ksub, gker = _target_side(ctx, g)
            intrinsic = im == ksub and epi and g.target.dims == qdims and gker == qker
    if ambient != intrinsic:
        raise TheoremViolation("exact sequences in the heart are the ambient ones",
                               f"ambient={ambient} heart={intrinsic}")
    return ambient


# --------------------------------------------------------------- bijection

def _sandwich(twins: TwinPair, x: frozenset) -> bool:
    return twins.inner.torsion <= x <= twins.outer.torsion


def bij_forward(cat: RepCategory, twins: TwinPair, pair: TorsionPair) -> TorsionPair:
    """(X, Y) -> (X & D, Y & C')."""
    x, y = frozenset(pair[0]), frozenset(pair[1])
    if not _sandwich(twins, x):
        raise ContractError(f"{cat.show(x)} is not between C and C'")
    if not Context.full(cat).is_torsion_pair(x, y):
        raise ContractError("input is not an ambient torsion pair")
    out = TorsionPair(x & twins.inner.torsionfree, y & twins.outer.torsion)
    if not Context.heart(cat, twins).is_torsion_pair(*out):
        raise TheoremViolation("forward map lands in heart torsion pairs", cat.show(out.torsion))
    return out


def star_c(cat: RepCategory, twins: TwinPair, t: frozenset) -> frozenset:
    """C * T as a set of ambient indecomposables (Z_D in add T)."""
    c = twins.inner.torsion
    return frozenset(z for z in cat.everything
                     if cat.members_of(ambient_free_part(cat, c, cat.indecs[z])[0]) <= t)


def star_dprime(cat: RepCategory, twins: TwinPair, f: frozenset) -> frozenset:
    """F * D' as a set of ambient indecomposables (t_{C'} Z in add F)."""
    cp = twins.outer.torsion
    return frozenset(z for z in cat.everything
                     if cat.members_of(ambient_trace(cat, cp, cat.indecs[z]).rep) <= f)


def bij_backward(cat: RepCategory, twins: TwinPair, pair: TorsionPair) -> TorsionPair:
    """(T, F) -> (C * T, F * D')."""
    t, f = frozenset(pair[0]), frozenset(pair[1])
    if not Context.heart(cat, twins).is_torsion_pair(t, f):
        raise ContractError("input is not a torsion pair of the heart")
    out = TorsionPair(star_c(cat, twins, t), star_dprime(cat, twins, f))
    if not (Context.full(cat).is_torsion_pair(*out) and _sandwich(twins, out.torsion)):
        raise TheoremViolation("backward map lands in sandwiched torsion pairs", cat.show(out.torsion))
    return out


@dataclass
class IntervalIso:
    ambient: list          # sandwiched ambient torsion classes
    heart: list            # torsion classes of the heart
    forward: dict          # ambient class -> heart class
    ok: bool
    problems: list = field(default_factory=list)


def lattice_interval_iso(cat: RepCategory, twins: TwinPair) -> IntervalIso:
    """The bijection on torsion classes together with meet/join compatibility checks."""
    amb = Context.full(cat)
    hctx = Context.heart(cat, twins)
    interval = [p for p in amb.enumerate_torsion_classes() if _sandwich(twins, p.torsion)]
    hpairs = hctx.enumerate_torsion_classes()
    fwd = {p.torsion: bij_forward(cat, twins, p).torsion for p in interval}
    problems = []
    if sorted(map(sorted, fwd.values())) != sorted(map(sorted, (p.torsion for p in hpairs))):
        problems.append("forward map is not onto the heart torsion classes")
    for p in hpairs:
        back = bij_backward(cat, twins, p)
        if fwd.get(back.torsion) != p.torsion:
            problems.append(f"roundtrip fails at {cat.show(p.torsion)}")
    for a in interval:
        for b in interval:
            x1, x2 = a.torsion, b.torsion
            if (x1 <= x2) != (fwd[x1] <= fwd[x2]):
                problems.append("order not preserved")
            meet = x1 & x2
            join = amb.perp_left(amb.perp_right(x1 | x2))
            if fwd.get(meet) != fwd[x1] & fwd[x2]:
                problems.append("meets do not correspond")
            hjoin = hctx.perp_left(hctx.perp_right(fwd[x1] | fwd[x2]))
            if fwd.get(join) != hjoin:
                problems.append("joins do not correspond")
    return IntervalIso([p.torsion for p in interval], [p.torsion for p in hpairs], fwd, not problems, problems)


# ----------------------------------------------------------- radical switch

def radical_switch_check(cat: RepCategory, twins: TwinPair, m: Representation) -> dict[str, bool]:
    """The four trace/quotient identities for twins, each side computed separately."""
    c, cp = twins.inner.torsion, twins.outer.torsion

    def t(gens, x):
        return ambient_trace(cat, gens, x).rep

    def q(gens, x):
        return ambient_free_part(cat, gens, x)[0]

    iso = cat.is_isomorphic
    zero = cat.zero()
    return {
        "a": iso(q(c, t(cp, m)), t(cp, q(c, m))),
        "b": iso(t(c, q(cp, m)), zero) and iso(q(cp, t(c, m)), zero),
        "c": iso(t(c, t(cp, m)), t(c, m)) and iso(t(c, m), t(cp, t(c, m))),
        "d": iso(q(cp, q(c, m)), q(cp, m)) and iso(q(cp, m), q(c, q(cp, m))),
    }


def reflected_heart(cat: RepCategory, twins: TwinPair, inner: TorsionPair, outer: TorsionPair):
    """Both sides of T' & F = (C * T') & (F * D') for heart twins [(T, F), (T', F')]."""
    hctx = Context.heart(cat, twins)
    for pair in (inner, outer):
        if not hctx.is_torsion_pair(*pair):
            raise ContractError("heart twins are not torsion pairs of the heart")
    if not inner.torsion <= outer.torsion:
        raise ContractError("heart twins are not nested")
    lhs = frozenset(outer.torsion) & frozenset(inner.torsionfree)
    rhs = star_c(cat, twins, frozenset(outer.torsion)) & star_dprime(cat, twins, frozenset(inner.torsionfree))
    return lhs, rhs


# ---------------------------------------------------------- approximations

def left_approximation(cat: RepCategory, s: frozenset, m: Representation) -> RepMorphism:
    """Evaluation map M -> sum_i X_i^{dim Hom(M, X_i)}, certified by factorisation."""
    maps = [g for x in sorted(s) for g in hom_basis(m, cat.indecs[x])]
    if not maps:
        return m.zero_to(cat.zero())
    _, approx = column_morphism(m, maps)
    for x in sorted(s):
        for g in hom_basis(m, cat.indecs[x]):
            if factor_through(g, approx, "after") is None:
                raise TheoremViolation("left approximation", f"map to {cat.pretty[x]} does not factor")
    return approx


def right_approximation(cat: RepCategory, s: frozenset, m: Representation) -> RepMorphism:
    """Evaluation map sum_i X_i^{dim Hom(X_i, M)} -> M, certified by factorisation."""
    maps = [g for x in sorted(s) for g in hom_basis(cat.indecs[x], m)]
    if not maps:
        return cat.zero().zero_to(m)
    _, approx = row_morphism(maps, m)
    for x in sorted(s):
        for g in hom_basis(cat.indecs[x], m):
            if factor_through(g, approx, "before") is None:
                raise TheoremViolation("right approximation", f"map from {cat.pretty[x]} does not factor")
    return approx


# --------------------------------------------------- quasi-abelian checks

def pullback_in_heart(ctx: Context, c: RepMorphism, h: RepMorphism):
    """Pullback of ``c: Y -> Z`` along ``h: W -> Z``; returns (P, map to Y, map to W)."""
    _, diff = row_morphism([c, -h], c.target)
    p, k = kernel_in_heart(ctx, diff, certify=False)
    ds = direct_sum([c.source, h.source])
    return p, ds.projections[0] @ k, ds.projections[1] @ k


def pushout_in_heart(ctx: Context, k: RepMorphism, h: RepMorphism):
    """Pushout of ``k: X -> Y`` along ``h: X -> W``; returns (P, map from Y, map from W)."""
    _, diff = column_morphism(k.source, [k, -h])
    p, c = cokernel_in_heart(ctx, diff, certify=False)
    ds = direct_sum([k.target, h.target])
    return p, c @ ds.inclusions[0], c @ ds.inclusions[1]


def is_cokernel_in_heart(ctx: Context, c: RepMorphism) -> bool:
    """Whether ``c`` is the cokernel of its own kernel in the heart."""
    _, k = kernel_in_heart(ctx, c, certify=False)
    for z in sorted(ctx.members):
        zr = ctx.cat.indecs[z]
        out = hom_basis(c.target, zr)
        if _annihilated_dim(out, lambda v: v @ c):
            return False
        if len(out) != _annihilated_dim(hom_basis(c.source, zr), lambda u: u @ k):
            return False
    return True


def is_kernel_in_heart(ctx: Context, k: RepMorphism) -> bool:
    _, c = cokernel_in_heart(ctx, k, certify=False)
    for z in sorted(ctx.members):
        zr = ctx.cat.indecs[z]
        into = hom_basis(zr, k.source)
        if _annihilated_dim(into, lambda u: k @ u):
            return False
        if len(into) != _annihilated_dim(hom_basis(zr, k.target), lambda u: c @ u):
            return False
    return True


def basis_morphisms(ctx: Context):
    """Every basis morphism between heart indecomposables, in a fixed order."""
    cat = ctx.cat
    for a in sorted(ctx.members):
        for b in sorted(ctx.members):
            for f in hom_basis(cat.indecs[a], cat.indecs[b]):
                yield a, b, f


def quasi_abelian_check(ctx: Context) -> list[str]:
    """Stability of heart cokernels under pullback and heart kernels under pushout."""
    cat = ctx.cat
    problems = []
    for a, b, f in basis_morphisms(ctx):
        _, c = cokernel_in_heart(ctx, f, certify=False)
        if not c.target.is_zero():
            for w in sorted(ctx.members):
                for h in hom_basis(cat.indecs[w], c.target):
                    _, _, cw = pullback_in_heart(ctx, c, h)
                    if not is_cokernel_in_heart(ctx, cw):
                        problems.append(f"pullback of a cokernel is not a cokernel ({cat.pretty[a]}->{cat.pretty[b]})")
        _, k = kernel_in_heart(ctx, f, certify=False)
        if not k.source.is_zero():
            for w in sorted(ctx.members):
                for h in hom_basis(k.source, cat.indecs[w]):
                    _, _, kw = pushout_in_heart(ctx, k, h)
                    if not is_kernel_in_heart(ctx, kw):
                        problems.append(f"pushout of a kernel is not a kernel ({cat.pretty[a]}->{cat.pretty[b]})")
    return problems


def certify_subheart(ctx: Context, t: frozenset) -> None:
    """A torsion class T of a heart is itself a heart; certify its kernels and cokernels."""
    cat, tw = ctx.cat, ctx.twins
    sub_twins = TwinPair(tw.inner, TorsionPair(star_c(cat, tw, t), star_dprime(cat, tw, ctx.perp_right(t))))
    sub = Context.heart(cat, sub_twins)
    if sub.members != t:
        raise TheoremViolation("torsion class of a heart is a heart", cat.show(sub.members))
    for _, _, f in basis_morphisms(sub):
        kernel_in_heart(sub, f)
        cokernel_in_heart(sub, f)
