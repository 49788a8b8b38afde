#!/usr/bin/env python3
"""Walk through the worked A3 examples: the counterexample heart, its kernels and
cokernels, HN filtrations of a three-step chain, and the two hearts equal to add{1}
whose embedded slicings sit at distance 1."""

import argparse
from fractions import Fraction

from torsionlab import hn
from torsionlab.exactla import Field
from torsionlab.hearts import cokernel_in_heart, heart, kernel_in_heart
from torsionlab.reps import hom_basis
from torsionlab.subcat import Context, closure_oracle_classes
from torsionlab.suites import a3, counterex_twins, two_hearts


def section(title):
    print(f"\n== {title}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", type=int, default=2, help="prime p, or 0 for the rationals")
    args = ap.parse_args(argv)
    cat = a3(Field(args.field))
    ix = cat.resolve

    section("counterexample heart")
    tw = counterex_twins(cat)
    ctx = heart(cat, tw)
    print("heart:", cat.show(ctx.members))
    tors = ctx.torsion_classes()
    print(f"{len(tors)} torsion classes:", ", ".join(cat.show(t) for t in tors))
    extra = [s for s in closure_oracle_classes(ctx) if s not in tors]
    print("closed under extensions and heart quotients, yet not torsion:", ", ".join(cat.show(s) for s in extra))
    amb = Context.full(cat)
    t = cat.resolve_set(["2", "2/3"])
    print(f"{cat.show(t)} ambient torsion class: {amb.is_torsion_class(t)}; in the heart: {ctx.is_torsion_class(t)}")

    section("kernel and cokernel of 2/3 -> 1/2 in the heart")
    (f,) = hom_basis(cat.indec(ix("2/3")), cat.indec(ix("1/2")))
    k, _ = kernel_in_heart(ctx, f)
    c, _ = cokernel_in_heart(ctx, f)
    print("kernel:", cat.show(cat.members_of(k)) if not k.is_zero() else "0")
    print("cokernel:", cat.show(cat.members_of(c)) if not c.is_zero() else "0")

    section("HN filtrations for eta = (everything | 1/3 | add{1} | 2/3 | 0)")
    eta = hn.chain(amb, [(0, cat.everything), (Fraction(1, 3), cat.resolve_set(["1"])), (Fraction(2, 3), frozenset())])
    for ids in (["1"], ["1/2/3"], ["1", "2/3"], ["1/2", "3"]):
        m = cat.sum_of(ix(x) for x in ids)
        filt = hn.hn_filtration(eta, m)
        parts = [f"{cat.show(cat.members_of(q))}@{r}" for q, r in zip(filt.factors, filt.labels)]
        print(f"{' + '.join(ids):10} -> " + ", ".join(parts))
    print("nonzero slices:", {str(r): cat.show(s) for r, s in hn.nonzero_slices(eta).items()})

    section("two hearts equal to add{1}")
    first, second = two_hearts(cat)
    for name, tw in (("first", first), ("second", second)):
        print(f"{name}: [{cat.show(tw.inner.torsion)}, {cat.show(tw.outer.torsion)}] heart {cat.show(tw.heart_members)}")
    a = hn.phi_embed(first, hn.two_step(heart(cat, first), frozenset()))
    b = hn.phi_embed(second, hn.two_step(heart(cat, second), frozenset()))
    print("embedded classes:", [cat.show(x) for x in a.classes], [cat.show(x) for x in b.classes])
    print("distance:", hn.distance(a, b))


if __name__ == "__main__":
    main()
