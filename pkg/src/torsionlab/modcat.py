"""
The module category mod KQ of a Dynkin quiver: the canonical table of
indecomposables, decomposition into indecomposables, isomorphism tests and
extension middle terms.
"""

from __future__ import annotations

import logging
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import DecompositionError, ParseError
from .exactla import Field, Matrix, solve_matrix
from .quiver import Quiver
from .reps import (
    Representation,
    RepMorphism,
    direct_sum,
    extension_classes,
    extension_from_cochain,
    ext_space,
    hom_basis,
    hom_dim,
    image,
    kernel_subobject,
)

log = logging.getLogger(__name__)

Multiset = tuple[int, ...]


def _candidate_maps(quiver: Quiver, field: Field, dims: Sequence[int], values: Sequence):
    shapes = [(dims[t], dims[s]) for s, t in quiver.arrows]
    sizes = [r * c for r, c in shapes]
    for combo in product(values, repeat=sum(sizes)):
        mats, k = [], 0
        for (r, c), n in zip(shapes, sizes):
            mats.append(Matrix(field, r, c, [combo[k + i * c: k + (i + 1) * c] for i in range(r)]))
            k += n
        yield mats


def find_indecomposable(quiver: Quiver, field: Field, dims: Sequence[int]) -> Representation:
    """The indecomposable with dimension vector ``dims`` (a positive root).

    Candidates with 0/1 entries are tried first, ordered by total rank (high
    first) and then lexicographically; over F_p the remaining matrices follow.
    The first candidate whose endomorphism ring is one-dimensional is returned.
    """
    pools = [(0, 1)]
    if field.is_finite and field.p > 2:
        pools.append(tuple(range(field.p)))
    seen = set()
    for values in pools:
        cands = []
        for mats in _candidate_maps(quiver, field, dims, values):
            key = tuple(mats)
            if key in seen:
                continue
            seen.add(key)
            cands.append(mats)
        cands.sort(key=lambda ms: (-sum(m.rank for m in ms), tuple(-x for m in ms for x in m.entries)))
        for mats in cands:
            rep = Representation(quiver, field, dims, mats)
            if hom_dim(rep, rep) == 1:
                return rep
    raise DecompositionError(f"no indecomposable found for dimension vector {tuple(dims)}")


def dimvec_label(dims: Sequence[int]) -> str:
    if all(d < 10 for d in dims):
        return "".join(str(d) for d in dims)
    return ",".join(str(d) for d in dims)


def pretty_label(quiver: Quiver, dims: Sequence[int]) -> str:
    """Composition-factor notation (``1/2/3``) for thin modules, else the dimension vector."""
    if all(d <= 1 for d in dims):
        support = [v for v in quiver.topological_order if dims[v]]
        return "/".join(str(v + 1) for v in support)
    return dimvec_label(dims)


class RepCategory:
    """mod KQ for a Dynkin quiver Q over an exact field."""

    def __init__(self, quiver: Quiver, field: Field, table: Sequence[Representation] | None = None):
        self.quiver, self.field = quiver, field
        roots = quiver.positive_roots
        if table is None:
            table = [find_indecomposable(quiver, field, d) for d in roots]
        self.indecs: tuple[Representation, ...] = tuple(table)
        if tuple(r.dims for r in self.indecs) != roots:
            raise ValueError("indecomposable table does not match the positive roots")
        self.size = len(self.indecs)
        self.labels = tuple(dimvec_label(r.dims) for r in self.indecs)
        self.pretty = tuple(pretty_label(quiver, r.dims) for r in self.indecs)
        self._by_dims = {r.dims: i for i, r in enumerate(self.indecs)}
        self.hom_dims = tuple(tuple(hom_dim(x, y) for y in self.indecs) for x in self.indecs)
        # H m = fingerprint determines the multiplicities m; H is unimodular
        hom = Matrix(Field(0), self.size, self.size, self.hom_dims)
        inv = solve_matrix(hom, Matrix.identity(Field(0), self.size))
        if inv is None or any(x.denominator != 1 for x in inv.entries):
            raise DecompositionError("Hom-dimension matrix is not unimodular")
        self._hom_inv = tuple(tuple(int(x) for x in row) for row in inv.data)
        self.everything = frozenset(range(self.size))
        self._middle_cache: dict = {}

    # ----------------------------------------------------------- labels
    def resolve(self, label) -> int:
        """IndecId for a dimension-vector string (``"110"``), a pretty name (``"1/2"``) or an int."""
        if isinstance(label, int):
            if 0 <= label < self.size:
                return label
            raise ParseError(f"indecomposable index {label} out of range")
        text = str(label).strip()
        if text in self.labels:
            return self.labels.index(text)
        if text in self.pretty:
            return self.pretty.index(text)
        raise ParseError(f"unknown indecomposable label {label!r}")

    def resolve_set(self, labels: Iterable) -> frozenset[int]:
        return frozenset(self.resolve(x) for x in labels)

    def names(self, ids: Iterable[int], pretty=True) -> list[str]:
        table = self.pretty if pretty else self.labels
        return [table[i] for i in sorted(ids)]

    def show(self, ids: Iterable[int]) -> str:
        return "add{" + ", ".join(self.names(ids)) + "}"

    def indec(self, i: int) -> Representation:
        return self.indecs[i]

    def sum_of(self, ids: Iterable[int]) -> Representation:
        return direct_sum([self.indecs[i] for i in sorted(ids)], self.quiver, self.field).rep

    def zero(self) -> Representation:
        return Representation.zero(self.quiver, self.field)

    # --------------------------------------------------- decomposition
    def fingerprint(self, m: Representation) -> tuple[int, ...]:
        return tuple(hom_dim(x, m) for x in self.indecs)

    def classify(self, m: Representation) -> Multiset:
        """Multiset of summands read off the Hom-fingerprint ``dim Hom(X_i, M)``."""
        if m.is_zero():
            return ()
        fp = self.fingerprint(m)
        mult = [sum(a * b for a, b in zip(row, fp)) for row in self._hom_inv]
        if any(x < 0 for x in mult):
            raise DecompositionError("Hom fingerprint is not a nonnegative combination")
        out = []
        for i, k in enumerate(mult):
            out.extend([i] * k)
        return tuple(out)

    def decompose(self, m: Representation, method: str = "fitting") -> Multiset:
        """Sorted multiset of IndecIds of the summands of ``m``.

        ``method="fitting"`` splits along Fitting decompositions of
        endomorphisms; ``method="hom"`` reads the multiplicities off Hom
        dimensions.
        """
        if method == "hom":
            return self.classify(m)
        out: list[int] = []
        stack = [m]
        while stack:
            x = stack.pop()
            if x.is_zero():
                continue
            if hom_dim(x, x) == 1:
                out.append(self._by_dims[x.dims])
                continue
            parts = self._fitting_split(x) or self._pairing_split(x) or self._fitting_split(x, True)
            if parts is None:
                raise DecompositionError(f"could not split a module with dimension vector {x.dims}")
            stack.extend(parts)
        return tuple(sorted(out))

    def _fitting_candidates(self, m: Representation, exhaustive: bool):
        basis = hom_basis(m, m)
        if not exhaustive:
            ident = m.identity()
            shifts = self.field.elements() if self.field.is_finite else (0, 1, -1, 2)
            for b in basis:
                for lam in shifts:
                    yield b - ident.scale(lam) if lam else b
            for i in range(len(basis)):
                for j in range(i + 1, len(basis)):
                    yield basis[i] + basis[j]
        elif self.field.is_finite and self.field.p ** len(basis) <= 4096:
            for coeffs in product(self.field.elements(), repeat=len(basis)):
                e = basis[0].scale(coeffs[0])
                for f, c in zip(basis[1:], coeffs[1:]):
                    e = e + f.scale(c)
                yield e

    def _fitting_split(self, m: Representation, exhaustive: bool = False):
        for e in self._fitting_candidates(m, exhaustive):
            parts = _fitting_parts(e, m.total_dim)
            if parts:
                return parts
        return None

    def _pairing_split(self, m: Representation):
        """Split off an indecomposable X through maps i: X -> M, p: M -> X with p i != 0."""
        for x in self.indecs:
            ins = hom_basis(x, m)
            if not ins:
                continue
            outs = hom_basis(m, x)
            for a in ins:
                for b in outs:
                    comp = b @ a
                    if not comp.is_zero():
                        # comp is a nonzero scalar on a brick
                        v = next(v for v in range(len(x.dims)) if x.dims[v])
                        p = b.scale(self.field.inv(comp.blocks[v][0, 0]))
                        ker = kernel_subobject(p)
                        return [image(a).rep, ker.rep]
        return None

    def is_isomorphic(self, m: Representation, n: Representation) -> bool:
        m.same_category(n)
        if m.dims != n.dims:
            return False
        return self.decompose(m) == self.decompose(n)

    def members_of(self, m: Representation) -> frozenset[int]:
        """Set of indecomposable classes occurring as summands of ``m``."""
        return frozenset(self.classify(m))

    def in_add(self, m: Representation, ids: frozenset[int]) -> bool:
        return self.members_of(m) <= ids

    # ------------------------------------------------------ extensions
    @cached_property
    def ext_dims(self) -> tuple[tuple[int, ...], ...]:
        """``ext_dims[c][a] = dim Ext^1(X_c, X_a)``."""
        return tuple(tuple(ext_space(x, y).dim for y in self.indecs) for x in self.indecs)

    def ext_dim(self, c: int, a: int) -> int:
        return self.ext_dims[c][a]

    def middle_terms_ids(self, c_ids: Sequence[int], a_ids: Sequence[int]) -> set[Multiset]:
        """Middle terms for the ends sum(c_ids) and sum(a_ids), memoised."""
        key = (tuple(sorted(c_ids)), tuple(sorted(a_ids)))
        hit = self._middle_cache.get(key)
        if hit is None:
            if all(self.ext_dims[c][a] == 0 for c in key[0] for a in key[1]):
                hit = {tuple(sorted(key[0] + key[1]))}
            else:
                hit = self.middle_terms_of(self.sum_of(key[0]), self.sum_of(key[1]))
            self._middle_cache[key] = hit
        return set(hit)

    def ext_middle_terms(self, c: int, a: int) -> set[Multiset]:
        """Decompositions of the middle terms B of all 0 -> A -> B -> C -> 0."""
        return self.middle_terms_of(self.indecs[c], self.indecs[a])

    def middle_terms_of(self, c: Representation, a: Representation, cap: int = 4096) -> set[Multiset]:
        space = ext_space(c, a)
        out = {tuple(sorted(self.classify(a) + self.classify(c)))}
        for cochain in extension_classes(space, cap):
            ses = extension_from_cochain(c, a, cochain)
            if not ses.is_exact():
                raise DecompositionError("constructed extension is not exact")
            out.add(self.classify(ses.mono.target))
        return out


def _fitting_parts(e: RepMorphism, n: int):
    # e^k with k >= n, by repeated squaring
    power, k = e, 1
    while k < n:
        power, k = power @ power, 2 * k
    ker = kernel_subobject(power)
    if ker.is_zero() or ker.is_everything():
        return None
    im = image(power)
    return [ker.rep, im.rep]


@lru_cache(maxsize=32)
def category(quiver: Quiver, field: Field) -> RepCategory:
    """Shared, lazily built category for ``(quiver, field)``."""
    return RepCategory(quiver, field)


def change_basis(m: Representation, gs: Sequence[Matrix]) -> Representation:
    """The isomorphic representation with arrow maps ``g_t M_a g_s^{-1}``."""
    maps = []
    for ai, (s, t) in enumerate(m.quiver.arrows):
        inv = solve_matrix(gs[s], Matrix.identity(m.field, m.dims[s]))
        if inv is None:
            raise ValueError("change of basis is not invertible")
        maps.append(gs[t] @ m.maps[ai] @ inv)
    return Representation(m.quiver, m.field, m.dims, maps)
