"""
Additive subcategories as sets of indecomposable classes, perpendicular
categories, traces, canonical sequences, torsion pairs, closure checks and
the star operation.

A subcategory is a ``frozenset`` of IndecIds of the ambient
:class:`RepCategory`; all operations live on a :class:`Context`, which is either
the whole module category or the heart of a pair of nested torsion pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, NamedTuple

from .errors import ContractError, InternalInconsistency, TheoremViolation
from .modcat import RepCategory
from .reps import (
    SES,
    Representation,
    RepMorphism,
    Subobject,
    cokernel,
    hom_basis,
    image,
    kernel_subobject,
    preimage,
    subobjects,
    zero_subobject,
)

log = logging.getLogger(__name__)

Sub = frozenset


class TorsionPair(NamedTuple):
    torsion: frozenset
    torsionfree: frozenset


@dataclass(frozen=True)
class TwinPair:
    """Torsion pairs ``(C, D)`` (inner) and ``(C', D')`` (outer) of the ambient category with C in C'."""

    inner: TorsionPair
    outer: TorsionPair

    def __post_init__(self):
        object.__setattr__(self, "inner", TorsionPair(frozenset(self.inner[0]), frozenset(self.inner[1])))
        object.__setattr__(self, "outer", TorsionPair(frozenset(self.outer[0]), frozenset(self.outer[1])))
        if not self.inner.torsion <= self.outer.torsion:
            raise ContractError("inner torsion class is not contained in the outer one")

    @property
    def heart_members(self) -> frozenset:
        return self.outer.torsion & self.inner.torsionfree


# ------------------------------------------------------------ ambient traces

_TRACE_CACHE: dict = {}


def ambient_trace(cat: RepCategory, gens: frozenset, m: Representation) -> Subobject:
    """Smallest U in M with Hom(gens, M/U) = 0.

    Built by repeatedly adding the images of all maps from ``gens`` into the
    current quotient; stabilises after at most ``dim M`` rounds.  When
    ``gens`` is a torsion class this is the torsion subobject of M.
    """
    key = (gens, m)
    hit = _TRACE_CACHE.get(key)
    if hit is not None:
        return hit
    u = zero_subobject(m)
    for _ in range(m.total_dim + 1):
        q, proj = u.quotient
        maps = [f for g in sorted(gens) for f in hom_basis(cat.indecs[g], q)]
        grown = None
        for f in maps:
            im = image(f)
            grown = im if grown is None else grown + im
        if grown is None or grown.is_zero():
            break
        u = preimage(proj, grown)
    else:
        raise InternalInconsistency("trace did not stabilise within the length bound")
    if len(_TRACE_CACHE) > 100000:
        _TRACE_CACHE.clear()
    _TRACE_CACHE[key] = u
    return u


def ambient_free_part(cat: RepCategory, gens: frozenset, m: Representation) -> tuple[Representation, RepMorphism]:
    """M / t M and the projection onto it."""
    return ambient_trace(cat, gens, m).quotient


# ------------------------------------------------------------------ contexts

@dataclass(frozen=True, eq=False)
class Context:
    """The whole module category (``twins is None``) or the heart C' & D of twins."""

    cat: RepCategory
    twins: TwinPair | None = None

    @classmethod
    def full(cls, cat: RepCategory) -> "Context":
        return cls(cat, None)

    @classmethod
    def heart(cls, cat: RepCategory, twins: TwinPair) -> "Context":
        return cls(cat, twins)

    @property
    def kind(self) -> str:
        return "full-abelian" if self.twins is None else "heart-of-twins"

    @cached_property
    def members(self) -> frozenset:
        if self.twins is None:
            return self.cat.everything
        return self.twins.heart_members

    def __eq__(self, other):
        return isinstance(other, Context) and self.cat is other.cat and self.twins == other.twins

    def __hash__(self):
        return hash((id(self.cat), self.twins))

    def contains(self, m: Representation) -> bool:
        return self.cat.members_of(m) <= self.members

    def _check(self, s: Iterable[int]) -> frozenset:
        s = frozenset(s)
        if not s <= self.members:
            raise ContractError(f"{self.cat.show(s - self.members)} not in the context")
        return s

    # ----------------------------------------------------------- perps
    @cached_property
    def _out_masks(self) -> dict:
        h = self.cat.hom_dims
        return {i: frozenset(j for j in self.members if h[i][j]) for i in self.members}

    @cached_property
    def _in_masks(self) -> dict:
        h = self.cat.hom_dims
        return {j: frozenset(i for i in self.members if h[i][j]) for j in self.members}

    def perp_right(self, s: Iterable[int]) -> frozenset:
        s = self._check(s)
        hit = frozenset().union(*(self._out_masks[i] for i in s)) if s else frozenset()
        return self.members - hit

    def perp_left(self, s: Iterable[int]) -> frozenset:
        s = self._check(s)
        hit = frozenset().union(*(self._in_masks[j] for j in s)) if s else frozenset()
        return self.members - hit

    def is_torsion_pair(self, t: Iterable[int], f: Iterable[int]) -> bool:
        t, f = frozenset(t), frozenset(f)
        if not (t | f) <= self.members:
            return False
        return self.perp_left(f) == t and self.perp_right(t) == f

    def is_torsion_class(self, t: Iterable[int]) -> bool:
        t = self._check(t)
        return self.perp_left(self.perp_right(t)) == t

    def is_torsionfree_class(self, f: Iterable[int]) -> bool:
        f = self._check(f)
        return self.perp_right(self.perp_left(f)) == f

    def pair_of(self, t: Iterable[int]) -> TorsionPair:
        t = frozenset(t)
        if not self.is_torsion_class(t):
            raise ContractError(f"{self.cat.show(t)} is not a torsion class")
        return TorsionPair(t, self.perp_right(t))

    # ------------------------------------------------------ enumeration
    def enumerate_torsion_classes(self) -> list[TorsionPair]:
        """All torsion pairs, as double perps of every subset, sorted by (size, ids)."""
        mem = sorted(self.members)
        pos = {x: k for k, x in enumerate(mem)}
        n = len(mem)
        out_bits = [0] * n
        in_bits = [0] * n
        h = self.cat.hom_dims
        for a in mem:
            for b in mem:
                if h[a][b]:
                    out_bits[pos[a]] |= 1 << pos[b]
                    in_bits[pos[b]] |= 1 << pos[a]
        full = (1 << n) - 1
        found = set()
        for s in range(1 << n):
            hit = 0
            for k in range(n):
                if s >> k & 1:
                    hit |= out_bits[k]
            right = full & ~hit
            hit = 0
            for k in range(n):
                if right >> k & 1:
                    hit |= in_bits[k]
            found.add(full & ~hit)
        pairs = []
        for mask in found:
            t = frozenset(mem[k] for k in range(n) if mask >> k & 1)
            pairs.append(TorsionPair(t, self.perp_right(t)))
        pairs.sort(key=lambda p: (len(p.torsion), sorted(p.torsion)))
        return pairs

    def torsion_classes(self) -> list[frozenset]:
        return [p.torsion for p in self.enumerate_torsion_classes()]

    # ------------------------------------------------- ambient lifting
    def lift_torsion(self, t: frozenset) -> frozenset:
        """The ambient torsion class whose trace computes the trace of ``t`` here.

        In a heart this is C * T (membership: Z_D in add T).
        """
        if self.twins is None:
            return frozenset(t)
        c = self.twins.inner.torsion
        return frozenset(z for z in self.cat.everything
                         if self.cat.members_of(ambient_free_part(self.cat, c, self.cat.indecs[z])[0]) <= t)

    # ------------------------------------------------------------ traces
    def trace(self, t: Iterable[int], m: Representation, check: bool = True) -> Subobject:
        """Torsion subobject of M for the torsion class ``t`` of this context."""
        t = frozenset(t)
        if check and not self.is_torsion_class(t):
            raise ContractError(f"{self.cat.show(t)} is not a torsion class of the context")
        return ambient_trace(self.cat, self.lift_torsion(t), m)

    def canonical_ses(self, t: Iterable[int], m: Representation) -> SES:
        t = frozenset(t)
        sub = self.trace(t, m)
        q, proj = sub.quotient
        ses = SES(sub.inclusion, proj)
        f = self.perp_right(t)
        if not (ses.is_exact() and self.cat.members_of(sub.rep) <= t and self.cat.members_of(q) <= f):
            raise InternalInconsistency("canonical sequence failed verification")
        return ses

    # ------------------------------------------- kernels and cokernels
    def kernel(self, f: RepMorphism) -> Subobject:
        """Kernel in the context as a subobject of ``f.source``."""
        ker = kernel_subobject(f)
        if self.twins is None:
            return ker
        t = ambient_trace(self.cat, self.twins.outer.torsion, ker.rep)
        return Subobject(f.source, [b @ c for b, c in zip(ker.bases, t.bases)], check=False)

    def cokernel(self, f: RepMorphism) -> tuple[Representation, RepMorphism]:
        """Cokernel in the context and the projection onto it."""
        q, proj = cokernel(f)
        if self.twins is None:
            return q, proj
        qd, p2 = ambient_free_part(self.cat, self.twins.inner.torsion, q)
        return qd, p2 @ proj

    # ------------------------------------------------------- closures
    def quotient_sets(self, x: int) -> set[frozenset]:
        """Summand sets of all context quotients of the indecomposable ``x``."""
        m = self.cat.indecs[x]
        out = set()
        for u in subobjects(m):
            if not self.contains(u.rep):
                continue
            q, _ = self.cokernel(u.inclusion)
            out.add(self.cat.members_of(q))
        return out

    def sub_sets(self, x: int) -> set[frozenset]:
        """Summand sets of all context subobjects (kernels of context epis out of ``x``)."""
        m = self.cat.indecs[x]
        out = set()
        for u in subobjects(m):
            q, proj = u.quotient
            if not self.contains(q):
                continue
            out.add(self.cat.members_of(self.kernel(proj).rep))
        return out

    def middle_sets(self, c_ids, a_ids) -> set[frozenset]:
        """Summand sets of middle terms of extensions of sum(c_ids) by sum(a_ids) lying in the context."""
        out = set()
        for ms in self.cat.middle_terms_ids(c_ids, a_ids):
            if frozenset(ms) <= self.members:
                out.add(frozenset(ms))
        return out

    def is_quotient_closed(self, s: Iterable[int]) -> bool:
        s = self._check(s)
        return all(q <= s for x in s for q in self.quotient_sets(x))

    def is_sub_closed(self, s: Iterable[int]) -> bool:
        s = self._check(s)
        return all(q <= s for x in s for q in self.sub_sets(x))

    def is_extension_closed(self, s: Iterable[int], oracle: bool = True) -> bool:
        s = self._check(s)
        pairwise = all(b <= s for a in s for c in s for b in self.middle_sets([c], [a]))
        if not oracle:
            return pairwise
        bounded = pairwise
        if pairwise:
            ends = [list(e) for k in (1, 2) for e in combinations_with_replacement(sorted(s), k)]
            bounded = all(b <= s for a in ends for c in ends for b in self.middle_sets(c, a))
        if bounded != pairwise:
            log.warning("pairwise and bounded extension checks disagree on %s", self.cat.show(s))
        return bounded

    # ----------------------------------------------------------- star
    def star(self, x: Iterable[int], y: Iterable[int], m: Representation, method: str = "auto") -> bool:
        """Whether M has a subobject in add X with quotient in add Y."""
        x, y = frozenset(x), frozenset(y)
        if method == "auto":
            method = "oracle"
            if self.twins is None and self.is_torsion_class(x) and y <= self.perp_right(x):
                method = "torsion"
            elif self.twins is None and self.is_torsionfree_class(y) and x <= self.perp_left(y):
                method = "torsionfree"
        if method == "torsion":
            q, _ = ambient_free_part(self.cat, x, m)
            return self.cat.members_of(q) <= y
        if method == "torsionfree":
            t = ambient_trace(self.cat, self.perp_left(y), m)
            return self.cat.members_of(t.rep) <= x
        for u in subobjects(m):
            if self.cat.members_of(u.rep) <= x and self.cat.members_of(u.quotient[0]) <= y:
                return True
        return False

    def star_members(self, x: Iterable[int], y: Iterable[int], method: str = "auto") -> frozenset:
        return frozenset(z for z in self.members if self.star(x, y, self.cat.indecs[z], method))

    # ---------------------------------------------------- intersections
    def intersect_torsion_classes(self, t1: Iterable[int], t2: Iterable[int]) -> frozenset:
        t1, t2 = frozenset(t1), frozenset(t2)
        for t in (t1, t2):
            if not self.is_torsion_class(t):
                raise ContractError(f"{self.cat.show(t)} is not a torsion class")
        meet = t1 & t2
        if not self.is_torsion_class(meet):
            raise TheoremViolation("intersection of torsion classes is a torsion class", self.cat.show(meet))
        if self.twins is not None:
            from .hearts import certify_subheart
            certify_subheart(self, meet)
        return meet


def closure_oracle_classes(ctx: Context) -> list[frozenset]:
    """Torsion classes found as the quotient- and extension-closed subsets.

    Each closure condition is turned into implications "premise set in S
    implies conclusion set in S"; every subset is tested against them.
    """
    mem = sorted(ctx.members)
    pos = {x: k for k, x in enumerate(mem)}

    def bits(ids):
        v = 0
        for i in ids:
            v |= 1 << pos[i]
        return v

    rules = set()
    for x in mem:
        for q in ctx.quotient_sets(x):
            rules.add((bits([x]), bits(q)))
    ends = [e for k in (1, 2) for e in combinations_with_replacement(mem, k)]
    for a in ends:
        for c in ends:
            for b in ctx.middle_sets(list(c), list(a)):
                rules.add((bits(set(a) | set(c)), bits(b)))
    rules = [(p, c) for p, c in rules if c & ~p]
    out = []
    for s in range(1 << len(mem)):
        if all((s & p) != p or (c & ~s) == 0 for p, c in rules):
            out.append(frozenset(mem[k] for k in range(len(mem)) if s >> k & 1))
    out.sort(key=lambda t: (len(t), sorted(t)))
    return out
