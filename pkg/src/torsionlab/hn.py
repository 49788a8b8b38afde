"""
Chains of torsion classes as finite step functions on [0, 1], their slices,
Harder-Narasimhan filtrations, the embedding of heart chains into ambient
chains and the pseudometric on chains.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import ContractError, SizeError, TheoremViolation
from .hearts import star_c
from .reps import (
    Representation,
    Subobject,
    cokernel,
    factor_through,
    full_subobject,
    preimage,
    subobjects,
    zero_subobject,
)
from .subcat import Context, TwinPair

log = logging.getLogger(__name__)

ZERO, ONE = Fraction(0), Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class Chain:
    """A step chain of torsion classes of ``ctx``.

    ``eta(0)`` is the whole context and ``eta(1) = 0``. ``classes[0]`` is the
    value on ``(b_0, b_1)`` and ``classes[k]`` for ``k >= 1`` the value on
    ``[b_k, b_{k+1})``.
    """

    ctx: Context
    breakpoints: tuple[Fraction, ...]
    classes: tuple[frozenset, ...]

    def __post_init__(self):
        bps = tuple(_frac(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "classes", tuple(frozenset(c) for c in self.classes))
        if len(bps) < 2 or bps[0] != ZERO or bps[-1] != ONE:
            raise ContractError("breakpoints must run from 0 to 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ContractError("breakpoints must increase strictly")
        if len(self.classes) != len(bps) - 1:
            raise ContractError("need one class per interval")
        for c in self.classes:
            if not self.ctx.is_torsion_class(c):
                raise ContractError(f"{self.ctx.cat.show(c)} is not a torsion class of the context")
        for a, b in zip(self.classes, self.classes[1:]):
            if not b < a:
                raise ContractError("classes must decrease strictly across interior breakpoints")

    def __eq__(self, other):
        return (isinstance(other, Chain) and self.ctx == other.ctx
                and self.breakpoints == other.breakpoints and self.classes == other.classes)

    def __hash__(self):
        return hash((self.breakpoints, self.classes))

    def __repr__(self):
        show = self.ctx.cat.show
        body = ", ".join(f"{b}: {show(c)}" for b, c in zip(self.breakpoints, self.classes))
        return f"Chain({body})"

    @property
    def everything(self) -> frozenset:
        return self.ctx.members

    def at(self, s) -> frozenset:
        s = _frac(s)
        if s <= ZERO:
            return self.everything
        if s >= ONE:
            return frozenset()
        k = max(i for i, b in enumerate(self.breakpoints[:-1]) if b <= s)
        return self.classes[k]

    def below(self, r) -> frozenset:
        """Intersection of ``eta(s)`` over ``s < r``."""
        r = _frac(r)
        if r <= ZERO:
            return self.everything
        k = max(i for i, b in enumerate(self.breakpoints[:-1]) if b < r)
        return self.classes[k]

    def above(self, r) -> frozenset:
        """Union of ``eta(s)`` over ``s > r``."""
        r = _frac(r)
        if r >= ONE:
            return frozenset()
        return self.classes[0] if r <= ZERO else self.at(r)

    def free_above(self, r) -> frozenset:
        return self.ctx.perp_right(self.above(r))

    def relevant_points(self) -> tuple[Fraction, ...]:
        return self.breakpoints


def chain(ctx: Context, steps: Sequence[tuple]) -> Chain:
    """Chain from ``[(b_0, T_0), (b_1, T_1), ...]``; equal neighbours are merged."""
    bps, cls = [], []
    for b, t in steps:
        t = frozenset(t)
        if cls and cls[-1] == t:
            continue
        bps.append(_frac(b))
        cls.append(t)
    return Chain(ctx, tuple(bps) + (ONE,), tuple(cls))


def two_step(ctx: Context, t: Iterable[int], b=Fraction(1, 2)) -> Chain:
    """``0 < T < whole`` with the jump at ``b``."""
    return chain(ctx, [(0, ctx.members), (b, t)]) if frozenset(t) != ctx.members else chain(ctx, [(0, t)])


# ---------------------------------------------------------------- slices

def slice_members(eta: Chain, r) -> frozenset:
    r = _frac(r)
    if not ZERO <= r <= ONE:
        return frozenset()
    if r == ZERO:
        return eta.free_above(ZERO)
    if r == ONE:
        return eta.below(ONE)
    return eta.below(r) & eta.free_above(r)


@dataclass(frozen=True)
class Slice:
    r: Fraction
    members: frozenset


def slice(eta: Chain, r) -> Slice:  # noqa: A001
    return Slice(_frac(r), slice_members(eta, r))


def nonzero_slices(eta: Chain) -> dict[Fraction, frozenset]:
    out = {}
    for b in eta.breakpoints:
        s = slice_members(eta, b)
        if s:
            out[b] = s
    return out


def uniontors_check(eta: Chain) -> list[str]:
    """The union/intersection pairs around every relevant r are torsion pairs."""
    ctx = eta.ctx
    problems = []
    pts = set(eta.breakpoints)
    pts |= {(a + b) / 2 for a, b in zip(eta.breakpoints, eta.breakpoints[1:])}
    intervals = list(zip(eta.breakpoints, eta.breakpoints[1:], eta.classes))
    for r in sorted(pts):
        # s > r: intervals meeting (r, 1), plus s = 1 with class 0
        ups = [c for lo, hi, c in intervals if hi > r]
        t_up = frozenset().union(*ups) if ups else frozenset()
        f_up = ctx.members
        for c in ups:
            f_up &= ctx.perp_right(c)
        # s < r: s = 0 with the whole context, plus intervals meeting (0, r)
        downs = [c for lo, hi, c in intervals if lo < r]
        t_down = ctx.members
        f_down = frozenset()
        if r > ZERO:
            for c in downs:
                t_down &= c
                f_down |= ctx.perp_right(c)
        if not ctx.is_torsion_pair(t_up, f_up):
            problems.append(f"union pair above {r} is not a torsion pair")
        if not ctx.is_torsion_pair(t_down, f_down):
            problems.append(f"intersection pair below {r} is not a torsion pair")
        if t_up != eta.above(r) or (r > ZERO and t_down != eta.below(r)):
            problems.append(f"interval lookup disagrees with the set computation at {r}")
    return problems


def stabilization_check(eta: Chain) -> list[str]:
    """Traces are constant on every interval (finiteness conditions hold)."""
    ctx, cat = eta.ctx, eta.ctx.cat
    problems = []
    for lo, hi, c in zip(eta.breakpoints, eta.breakpoints[1:], eta.classes):
        samples = [lo + (hi - lo) * Fraction(k, 4) for k in (1, 2, 3)]
        if lo > ZERO:
            samples.append(lo)
        for z in sorted(ctx.members):
            m = cat.indecs[z]
            keys = {ctx.trace(eta.at(s), m, check=False).key for s in samples}
            if len(keys) != 1:
                problems.append(f"trace of {cat.pretty[z]} varies on [{lo}, {hi})")
    return problems


# --------------------------------------------------------- HN filtrations

@dataclass(frozen=True)
class HNFiltration:
    module: Representation
    steps: tuple[Subobject, ...]          # M_1, ..., M_n (M_0 = 0 implicit)
    factors: tuple[Representation, ...]
    labels: tuple[Fraction, ...]

    def __len__(self):
        return len(self.steps)

    def factor_members(self, cat) -> list[frozenset]:
        return [cat.members_of(f) for f in self.factors]


def hn_filtration(eta: Chain, m: Representation, certify: bool = True) -> HNFiltration:
    """Greedy: peel off the trace of the highest class that sees the current quotient."""
    ctx = eta.ctx
    if not ctx.contains(m):
        raise ContractError("module is not in the context")
    steps, factors, labels = [], [], []
    proj = m.identity()          # M -> current quotient
    q = m
    bps = eta.breakpoints
    while not q.is_zero():
        chosen = None
        for k in range(len(bps) - 1, 0, -1):
            sub = ctx.trace(eta.below(bps[k]), q, check=False)
            if not sub.is_zero():
                chosen = (bps[k], sub)
                break
        if chosen is None:
            chosen = (ZERO, full_subobject(q))
        r, sub = chosen
        factors.append(sub.rep)
        labels.append(r)
        steps.append(preimage(proj, sub))
        nq, p = sub.quotient
        proj, q = p @ proj, nq
    out = HNFiltration(m, tuple(steps), tuple(factors), tuple(labels))
    if certify:
        certify_hn(eta, out)
    return out


def certify_hn(eta: Chain, filt: HNFiltration) -> None:
    cat = eta.ctx.cat
    prev = zero_subobject(filt.module)
    for step, fac, r in zip(filt.steps, filt.factors, filt.labels):
        if not (step.contains(prev) and step != prev):
            raise TheoremViolation("HN filtration", "steps do not increase strictly")
        if fac.is_zero() or not (ZERO <= r <= ONE):
            raise TheoremViolation("HN filtration", "zero factor or label outside [0, 1]")
        if tuple(a - b for a, b in zip(step.dims, prev.dims)) != fac.dims:
            raise TheoremViolation("HN filtration", "factor dimension mismatch")
        if not cat.members_of(fac) <= slice_members(eta, r):
            raise TheoremViolation("HN1", f"factor {cat.show(cat.members_of(fac))} not in the slice at {r}")
        if not eta.ctx.contains(step.rep):
            raise TheoremViolation("HN filtration", "step leaves the context")
        prev = step
    if filt.steps and not filt.steps[-1].is_everything():
        raise TheoremViolation("HN filtration", "last step is not the whole module")
    if any(a <= b for a, b in zip(filt.labels, filt.labels[1:])):
        raise TheoremViolation("HN2", "labels do not decrease strictly")


def _relative_factor(u: Subobject, v: Subobject) -> Representation:
    """``V / U`` for subobjects ``U <= V`` of the same module."""
    inc = factor_through(u.inclusion, v.inclusion, "before")
    return cokernel(inc)[0]


def all_hn_filtrations(eta: Chain, m: Representation) -> list[tuple[tuple[Subobject, ...], tuple[Fraction, ...]]]:
    """Every filtration by subobjects satisfying HN1 and HN2 (finite fields only)."""
    cat = eta.ctx.cat
    if not m.field.is_finite:
        raise SizeError("filtration enumeration needs a finite field")
    subs = subobjects(m)
    slices = {r: s for r, s in ((b, slice_members(eta, b)) for b in eta.breakpoints) if s}
    zero = next(s for s in subs if s.is_zero())
    top = next(s for s in subs if s.is_everything())
    label_cache: dict = {}

    def label(u, v):
        key = (u.key, v.key)
        if key not in label_cache:
            mem = cat.members_of(_relative_factor(u, v))
            label_cache[key] = next((r for r, s in slices.items() if mem <= s), None)
        return label_cache[key]

    out = []

    def rec(cur, path, labels):
        if cur == top:
            out.append((tuple(path), tuple(labels)))
            return
        for v in subs:
            if v == cur or not v.contains(cur):
                continue
            r = label(cur, v)
            if r is None or (labels and r >= labels[-1]):
                continue
            rec(v, path + [v], labels + [r])

    if m.is_zero():
        return [((), ())]
    rec(zero, [], [])
    return out


def hn_unique_check(eta: Chain, m: Representation) -> bool:
    """Exactly one HN filtration up to stepwise isomorphism, and it is the greedy one."""
    cat = eta.ctx.cat
    ours = hn_filtration(eta, m)
    found = all_hn_filtrations(eta, m)
    if not found:
        return False
    sig = (tuple(cat.decompose(s.rep) for s in ours.steps), ours.labels)
    hit = False
    for steps, labels in found:
        if (tuple(cat.decompose(s.rep) for s in steps), labels) != sig:
            return False
        hit = hit or steps == ours.steps
    if len(found) > 1:
        log.info("%d filtrations found, all stepwise isomorphic", len(found))
    return hit


# ------------------------------------------------------ interval hearts

def filt_closure(ctx: Context, s: Iterable[int]) -> frozenset:
    """Smallest extension-closed set containing ``s`` (summands of middle terms included)."""
    cur = frozenset(s)
    while True:
        new = set(cur)
        for c in cur:
            for a in cur:
                for ms in ctx.middle_sets([c], [a]):
                    new |= ms
        if new == cur:
            break
        cur = frozenset(new)
    if not ctx.is_extension_closed(cur, oracle=True):
        raise TheoremViolation("extension closure", f"{ctx.cat.show(cur)} is not extension closed")
    return cur


def interval_heart(eta: Chain, a, b, cross_check: bool = True) -> frozenset:
    """Objects with HN labels in ``[a, b]``."""
    a, b = _frac(a), _frac(b)
    if not ZERO <= a <= b <= ONE:
        raise ContractError("need 0 <= a <= b <= 1")
    fast = eta.below(a) & eta.free_above(b)
    if cross_check:
        union = frozenset()
        for r in set(eta.breakpoints) | {a, b}:
            if a <= r <= b:
                union |= slice_members(eta, r)
        slow = filt_closure(eta.ctx, union)
        if slow != fast:
            raise TheoremViolation("interval heart", f"fast {eta.ctx.cat.show(fast)} vs closure {eta.ctx.cat.show(slow)}")
    return fast


# ----------------------------------------------------------------- metric

def _window(eta: Chain, r: Fraction, eps: Fraction, memo: dict) -> frozenset:
    a, b = max(ZERO, r - eps), min(ONE, r + eps)
    key = (a, b)
    if key not in memo:
        memo[key] = interval_heart(eta, a, b, cross_check=False)
    return memo[key]


def _holds(eta: Chain, eta2: Chain, eps: Fraction, memo: dict) -> bool:
    """Every slice of ``eta2`` sits in the ``eps``-window of ``eta``."""
    for r, s in nonzero_slices(eta2).items():
        if not s <= _window(eta, r, eps, memo):
            return False
    return True


def directed_distance(eta: Chain, eta2: Chain) -> Fraction:
    pts = set(eta.breakpoints) | set(eta2.breakpoints)
    cands = sorted({ZERO, ONE} | {abs(x - y) for x in pts for y in pts})
    memo: dict = {}
    for eps in cands:
        if _holds(eta, eta2, eps, memo):
            return eps
    return ONE


def distance(eta: Chain, eta2: Chain, grid: int | None = 60) -> Fraction:
    """Symmetrised pseudometric; optionally cross-checked on a grid of step ``1/grid``."""
    if eta.ctx != eta2.ctx:
        raise ContractError("chains live in different contexts")
    d = max(directed_distance(eta, eta2), directed_distance(eta2, eta))
    if grid:
        memo1: dict = {}
        memo2: dict = {}
        g = next(Fraction(k, grid) for k in range(grid + 1)
                 if _holds(eta, eta2, Fraction(k, grid), memo1) and _holds(eta2, eta, Fraction(k, grid), memo2))
        if not (d <= g < d + Fraction(1, grid)):
            log.warning("grid infimum %s disagrees with candidate infimum %s", g, d)
    return d


# ------------------------------------------------------- heart embeddings

def phi_embed(twins: TwinPair, eta: Chain) -> Chain:
    """Ambient chain with interior classes C * T_i."""
    cat = eta.ctx.cat
    if eta.ctx.twins != twins:
        raise ContractError("chain does not live in the heart of these twins")
    classes = tuple(star_c(cat, twins, t) for t in eta.classes)
    return Chain(Context.full(cat), eta.breakpoints, classes)


def in_image(twins: TwinPair, eta: Chain) -> bool:
    """Interior classes sandwiched between C and C'."""
    c, cp = twins.inner.torsion, twins.outer.torsion
    return all(c <= x <= cp for x in eta.classes)


def slicing_identity_check(twins: TwinPair, eta: Chain) -> dict[str, bool]:
    """Slices of the embedded chain against the heart slices."""
    cat = eta.ctx.cat
    amb = Context.full(cat)
    big = phi_embed(twins, eta)
    dprime = twins.outer.torsionfree
    c = twins.inner.torsion
    interior = all(slice_members(big, r) == slice_members(eta, r)
                   for r in set(eta.breakpoints[1:-1]) | {(a + b) / 2 for a, b in zip(eta.breakpoints, eta.breakpoints[1:])})
    return {
        "r=0": slice_members(big, ZERO) == amb.star_members(slice_members(eta, ZERO), dprime),
        "interior": interior,
        "r=1": slice_members(big, ONE) == amb.star_members(c, slice_members(eta, ONE)),
    }


def heart_chains(ctx: Context, points: Sequence[Fraction], max_steps: int = 3) -> list[Chain]:
    """Every chain with at most ``max_steps`` intervals and interior breakpoints from ``points``."""
    tors = ctx.torsion_classes()
    interior = sorted({_frac(p) for p in points if ZERO < _frac(p) < ONE})
    out = []
    for m in range(1, max_steps + 1):
        for bps in combinations(interior, m - 1):
            for cls in product(tors, repeat=m):
                if all(b < a for a, b in zip(cls, cls[1:])):
                    out.append(Chain(ctx, (ZERO,) + bps + (ONE,), cls))
    return out


@dataclass
class ClosednessReport:
    witnesses: int
    in_image: bool
    ok: bool
    problems: list = field(default_factory=list)


def closedness_check(twins: TwinPair, eta: Chain, candidates: Sequence[Chain] | None = None) -> ClosednessReport:
    """Zero distance to some embedded heart chain forces equal slices and membership in the image."""
    cat = eta.ctx.cat
    hctx = Context.heart(cat, twins)
    if candidates is None:
        candidates = heart_chains(hctx, eta.breakpoints, max_steps=len(eta.classes))
    problems, wit = [], 0
    for h in candidates:
        img = phi_embed(twins, h)
        if distance(eta, img, grid=None) == ZERO:
            wit += 1
            pts = set(eta.breakpoints) | set(img.breakpoints)
            if any(slice_members(eta, r) != slice_members(img, r) for r in pts):
                problems.append("zero distance without equal slices")
            if not in_image(twins, eta):
                problems.append("zero distance to the image but not in it")
    return ClosednessReport(wit, in_image(twins, eta), not problems, problems)
