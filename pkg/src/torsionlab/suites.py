"""
Verification suites: each checks a family of structural statements on the
worked A_n / D_4 data and reports one line per finding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Callable

from . import hn
from . import monocat as mc
from .errors import TheoremViolation, TorsionLabError
from .exactla import Field
from .hearts import (
    all_twins,
    cokernel_in_heart,
    heart,
    is_ses_in_heart,
    kernel_in_heart,
    basis_morphisms,
    lattice_interval_iso,
    quasi_abelian_check,
    radical_switch_check,
    reflected_heart,
    trivial_twins,
    twins_from_classes,
)
from .modcat import RepCategory, category
from .quiver import Quiver
from .reps import Representation, hom_basis, hom_elements
from .subcat import Context, TwinPair, closure_oracle_classes


@dataclass
class SuiteResult:
    name: str
    ok: bool = True
    lines: list = field(default_factory=list)

    def check(self, cond: bool, what: str) -> bool:
        self.lines.append(f"{'ok  ' if cond else 'FAIL'} {what}")
        self.ok = self.ok and bool(cond)
        return cond

    def note(self, text: str) -> None:
        self.lines.append(f"     {text}")


@dataclass(frozen=True)
class SuiteConfig:
    field: Field = Field(2)
    exhaustive: bool = False


def a3(field: Field) -> RepCategory:
    return category(Quiver.linear_a(3), field)


def counterex_twins(cat: RepCategory) -> TwinPair:
    """Heart add{3, 2, 2/3, 1/2, 1/2/3} of [(add{1}, .), (everything, 0)]."""
    return twins_from_classes(cat, cat.resolve_set(["1"]), cat.everything)


def two_hearts(cat: RepCategory) -> tuple[TwinPair, TwinPair]:
    """Two different twin pairs with the same heart add{1}."""
    first = twins_from_classes(cat, frozenset(), cat.resolve_set(["1"]))
    second = twins_from_classes(cat, cat.resolve_set(["3"]), cat.resolve_set(["1", "3"]))
    return first, second


def small_sums(cat: RepCategory, ids, k: int = 2) -> list[Representation]:
    """Every indecomposable in ``ids`` and every direct sum of up to ``k`` of them."""
    ids = sorted(ids)
    out = []
    for n in range(1, k + 1):
        for combo in combinations_with_replacement(ids, n):
            out.append(cat.sum_of(combo))
    return out


def sample_homs(m: Representation, n: Representation, cap: int = 256) -> list:
    """Every morphism over a small finite field, else zero, basis and pair sums."""
    basis = hom_basis(m, n)
    if m.field.is_finite and m.field.p ** len(basis) <= cap:
        return hom_elements(m, n, cap)
    out = [m.zero_to(n)] + basis
    out += [a + b for a, b in combinations(basis, 2)]
    return out


# ------------------------------------------------------------------ suites

def suite_counterex1(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("counterex1")
    cat = a3(cfg.field)
    ctx = heart(cat, counterex_twins(cat))
    S = cat.resolve_set
    show = cat.show
    res.check(ctx.members == S(["3", "2", "2/3", "1/2", "1/2/3"]), f"context C = {show(ctx.members)}")
    t = S(["2", "2/3"])
    res.check(ctx.is_quotient_closed(t), f"T = {show(t)} is closed under quotients")
    res.check(ctx.is_extension_closed(t), "T is closed under extensions")
    res.check(cat.members_of(cat.sum_of(sorted(t) * 2)) <= t, "T is closed under finite direct sums")
    right = ctx.perp_right(t)
    res.check(right == S(["3"]), f"perp_right(T) = {show(right)}")
    left = ctx.perp_left(right)
    res.check(left == S(["2", "2/3", "1/2", "1/2/3"]), f"perp_left(perp_right(T)) = {show(left)}")
    res.check(left != t, "the double perp differs from T")
    res.check(not ctx.is_torsion_pair(t, right), "is_torsion_pair(T, add{3}) = false")
    return res


def suite_bijection(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("bijection")
    cat = a3(cfg.field)
    twins = all_twins(cat)
    bad = 0
    for tw in twins:
        iso = lattice_interval_iso(cat, tw)
        if not iso.ok or len(iso.ambient) != len(iso.heart):
            bad += 1
            res.note(f"{cat.show(tw.inner.torsion)} <= {cat.show(tw.outer.torsion)}: {iso.problems[:2]}")
    res.check(bad == 0, f"roundtrip, order, meets, joins and counts on {len(twins)} intervals")
    triv = lattice_interval_iso(cat, trivial_twins(cat))
    res.check(triv.ok and len(triv.heart) == 14, "trivial twins: heart classes = 14 ambient classes")
    return res


def suite_hearts(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("hearts")
    cat = a3(cfg.field)
    twins = all_twins(cat)
    morphisms = seqs = problems = 0
    for tw in twins:
        ctx = heart(cat, tw)
        try:
            for _, _, f in basis_morphisms(ctx):
                kernel_in_heart(ctx, f, certify=True)
                cokernel_in_heart(ctx, f, certify=True)
                morphisms += 1
            mids = small_sums(cat, ctx.members, 3 if cfg.exhaustive else 2)
            ends = small_sums(cat, ctx.members, 2)
            for y in mids:
                outs: dict = {}
                for x in ends:
                    zs = [z for z in ends if y.dims == tuple(a + b for a, b in zip(x.dims, z.dims))]
                    if not zs:
                        continue
                    fs = [f for f in sample_homs(x, y) if f.is_mono()]
                    for z in zs if fs else ():
                        if z not in outs:
                            outs[z] = sample_homs(y, z)
                        for g in outs[z]:
                            for f in fs:
                                is_ses_in_heart(ctx, f, g)
                                seqs += 1
            qa = quasi_abelian_check(ctx)
        except TheoremViolation as exc:
            problems += 1
            res.note(str(exc))
            continue
        problems += len(qa)
        for p in qa[:2]:
            res.note(p)
    res.check(problems == 0, f"{morphisms} kernels/cokernels certified, {seqs} sequences compared, "
                             f"quasi-abelian stability on {len(twins)} hearts")
    return res


def suite_radical_switch(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("radical-switch")
    cat = a3(cfg.field)
    objs = small_sums(cat, cat.everything, 3 if cfg.exhaustive else 2)
    twins = all_twins(cat)
    bad = 0
    for tw in twins:
        for m in objs:
            out = radical_switch_check(cat, tw, m)
            if not all(out.values()):
                bad += 1
                res.note(f"{cat.decompose(m)}: {out}")
    res.check(bad == 0, f"identities (a)-(d) for {len(twins)} twin pairs x {len(objs)} objects")
    refl = bad_refl = 0
    for tw in twins:
        hctx = Context.heart(cat, tw)
        pairs = hctx.enumerate_torsion_classes()
        for p in pairs:
            for q in pairs:
                if p.torsion <= q.torsion:
                    lhs, rhs = reflected_heart(cat, tw, p, q)
                    refl += 1
                    bad_refl += lhs != rhs
    res.check(bad_refl == 0, f"reflected hearts agree on {refl} nested heart pairs")
    return res


def _sample_chains(cat: RepCategory) -> list[hn.Chain]:
    amb = Context.full(cat)
    S = cat.resolve_set
    third = Fraction(1, 3)
    out = [
        hn.chain(amb, [(0, cat.everything), (third, S(["1"])), (2 * third, frozenset())]),
        hn.two_step(amb, S(["1", "1/2", "1/2/3"])),
        hn.chain(amb, [(0, amb.perp_left(S(["3"]))), (Fraction(1, 4), S(["1", "1/2", "1/2/3"])),
                       (Fraction(3, 4), S(["1"]))]),
    ]
    for tw in (counterex_twins(cat),) + two_hearts(cat):
        hctx = heart(cat, tw)
        for eta in hn.heart_chains(hctx, [third, 2 * third], 2):
            out.append(hn.phi_embed(tw, eta))
    seen, uniq = set(), []
    for c in out:
        if c not in seen:
            seen.add(c)
            uniq.append(c)
    return uniq


def suite_hn(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("hn")
    cat = a3(cfg.field)
    chains = _sample_chains(cat)
    mods = small_sums(cat, cat.everything, 2)
    bad = 0
    for eta in chains:
        for m in mods:
            try:
                if not hn.hn_unique_check(eta, m):
                    bad += 1
                    res.note(f"{eta} on {cat.decompose(m)}")
            except TheoremViolation as exc:
                bad += 1
                res.note(str(exc))
    res.check(bad == 0, f"HN1/HN2 and uniqueness for {len(chains)} chains x {len(mods)} modules")
    return res


def suite_slicings(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("slicings")
    cat = a3(cfg.field)
    pts = [Fraction(1, 3), Fraction(2, 3)]
    n = bad = 0
    for tw in all_twins(cat):
        hctx = heart(cat, tw)
        for eta in hn.heart_chains(hctx, pts, 3):
            n += 1
            big = hn.phi_embed(tw, eta)
            probs = []
            rep = hn.slicing_identity_check(tw, eta)
            probs += [f"slice identity {k}" for k, v in rep.items() if not v]
            probs += hn.uniontors_check(eta) + hn.uniontors_check(big)
            if cfg.exhaustive:
                probs += hn.stabilization_check(eta)
            for z in sorted(hctx.members):
                a = hn.hn_filtration(eta, cat.indecs[z])
                b = hn.hn_filtration(big, cat.indecs[z])
                if a.steps != b.steps or a.labels != b.labels:
                    probs.append(f"HN filtration of {cat.pretty[z]} changes under the embedding")
            for lo, hi in [(0, pts[0]), (pts[0], pts[1]), (pts[1], 1), (0, 1)]:
                try:
                    hn.interval_heart(eta, lo, hi)
                except TheoremViolation as exc:
                    probs.append(str(exc))
            if probs:
                bad += 1
                res.note(f"{eta}: {probs[:2]}")
    res.check(bad == 0, f"slice identities, union/intersection pairs, embedded HN and interval hearts on {n} (twin, chain) pairs")
    return res


def suite_distance_twoofhearts(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("distance-twoofhearts")
    cat = a3(cfg.field)
    first, second = two_hearts(cat)
    target = cat.resolve_set(["1"])
    for tw in (first, second):
        res.check(tw.heart_members == target,
                  f"[{cat.show(tw.inner.torsion)}, {cat.show(tw.outer.torsion)}] has heart {cat.show(tw.heart_members)}")
    pts = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    c1 = hn.heart_chains(heart(cat, first), pts)
    c2 = hn.heart_chains(heart(cat, second), pts)
    ds = sorted({hn.distance(hn.phi_embed(first, a), hn.phi_embed(second, b)) for a in c1 for b in c2})
    res.check(ds == [Fraction(1)], f"d = {', '.join(map(str, ds))} over {len(c1)} x {len(c2)} embedded chains")
    closed = all(hn.closedness_check(tw, hn.phi_embed(tw, e)).ok for tw, cs in ((first, c1), (second, c2)) for e in cs)
    res.check(closed, "embedded chains pass the closedness check")
    cross = [hn.closedness_check(first, hn.phi_embed(second, e)) for e in c2]
    res.check(all(r.witnesses == 0 and not r.in_image for r in cross),
              "chains of the second embedding are at positive distance from the first image")
    return res


def _metric_chains(cat: RepCategory) -> list[hn.Chain]:
    return hn.heart_chains(Context.full(cat), [Fraction(1, 3), Fraction(2, 3)], 3)


def suite_metric(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("metric")
    cat = category(Quiver.linear_a(2), cfg.field)
    chains = _metric_chains(cat)
    n = len(chains)
    d = [[hn.distance(a, b, grid=60 if cfg.exhaustive else None) for b in chains] for a in chains]
    res.check(all(d[i][i] == 0 for i in range(n)), f"d(eta, eta) = 0 on {n} chains of A2")
    res.check(all(d[i][j] == d[j][i] for i in range(n) for j in range(n)), "symmetry")
    res.check(all(0 <= d[i][j] <= 1 for i in range(n) for j in range(n)), "values in [0, 1]")
    tri = all(d[i][k] <= d[i][j] + d[j][k] for i in range(n) for j in range(n) for k in range(n))
    res.check(tri, "triangle inequality")
    zero_ok = True
    for i in range(n):
        for j in range(n):
            pts = set(chains[i].breakpoints) | set(chains[j].breakpoints)
            same = all(hn.slice_members(chains[i], r) == hn.slice_members(chains[j], r) for r in pts)
            zero_ok &= (d[i][j] == 0) == same
    res.check(zero_ok, "zero distance exactly when all slices agree")
    a3cat = a3(cfg.field)
    res.check(all(hn.distance(c, c) == 0 for c in _sample_chains(a3cat)), "d(eta, eta) = 0 on the A3 sample chains")
    return res


def suite_monocat(cfg: SuiteConfig, twins_list: list | None = None, cat: RepCategory | None = None) -> SuiteResult:
    res = SuiteResult("monocat")
    cat = cat or a3(cfg.field)
    twins_list = twins_list if twins_list is not None else all_twins(cat)
    squares = regular = bad = 0
    for tw in twins_list:
        ctx = heart(cat, tw)
        objs = mc.probe_objects(ctx, extended=True)
        try:
            if not mc.embed_is_full_and_faithful(ctx):
                bad += 1
                res.note("embedding is not full and faithful")
            for a in objs:
                if not mc.is_regular(ctx, a.identity()):
                    bad += 1
                for b in objs:
                    for s in mc.square_basis(a, b):
                        squares += 1
                        if cfg.field.is_finite and mc.is_null_homotopic(s) != mc.null_homotopic_bruteforce(s):
                            bad += 1
                            res.note("null-homotopy solver disagrees with the search")
                        kd = mc.kernel_mono(ctx, s, certify=False)
                        mc.certify_kernel_mono(ctx, s, kd, extended=cfg.exhaustive)
                        cd = mc.cokernel_mono(ctx, s, certify=False, kern=kd)
                        mc.certify_cokernel_mono(ctx, s, cd, extended=cfg.exhaustive)
                        r = mc.is_regular(ctx, s)
                        regular += r
                        if r != mc.is_exact_square(ctx, s):
                            bad += 1
                            res.note("regular and exact-square disagree")
                        mc.factorize(ctx, s)
        except (TheoremViolation, TorsionLabError) as exc:
            bad += 1
            res.note(str(exc))
    res.check(bad == 0, f"{squares} squares over {len(twins_list)} hearts ({regular} regular): "
                        "homotopy, kernels, cokernels, regular = exact square, factorisation")
    return res


def suite_tors_crosscheck(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("tors-crosscheck")
    quivers = [("A1", Quiver.linear_a(1)), ("A2", Quiver.linear_a(2)), ("A3", Quiver.linear_a(3)), ("D4", Quiver.d4())]
    for name, q in quivers:
        cat = category(q, cfg.field)
        ctx = Context.full(cat)
        perp = set(ctx.torsion_classes())
        closure = set(closure_oracle_classes(ctx))
        res.check(perp == closure, f"{name}: {len(perp)} torsion classes, double perp = closure oracle")
    return res


SUITES: dict[str, Callable[[SuiteConfig], SuiteResult]] = {
    "counterex1": suite_counterex1,
    "bijection": suite_bijection,
    "distance-twoofhearts": suite_distance_twoofhearts,
    "hearts": suite_hearts,
    "radical-switch": suite_radical_switch,
    "hn": suite_hn,
    "slicings": suite_slicings,
    "metric": suite_metric,
    "monocat": suite_monocat,
    "tors-crosscheck": suite_tors_crosscheck,
}


def run(name: str, cfg: SuiteConfig) -> list[SuiteResult]:
    if name == "all":
        return [fn(cfg) for fn in SUITES.values()]
    return [SUITES[name](cfg)]
