"""
Representations of a quiver over an exact field, their morphisms,
kernels/cokernels/images, subobject enumeration and extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

from .errors import InternalInconsistency, SizeError, StructuralError
from .exactla import (
    SUBSPACE_DIM_BOUND,
    Field,
    Matrix,
    block_diag,
    column_space,
    enumerate_subspaces,
    hstack,
    is_injective,
    is_surjective,
    kernel_basis,
    left_kernel,
    solve_matrix,
    vstack,
)
from .quiver import Quiver


class Representation:
    """A finite-dimensional representation: a space per vertex, a matrix per arrow.

    ``maps[i]`` is the matrix of arrow ``i`` with shape
    ``dims[target] x dims[source]``.
    """

    __slots__ = ("quiver", "field", "dims", "maps", "_hash")

    def __init__(self, quiver: Quiver, field: Field, dims: Sequence[int], maps: Sequence[Matrix]):
        dims = tuple(int(d) for d in dims)
        maps = tuple(maps)
        if len(dims) != quiver.vertex_count:
            raise ValueError("dimension vector length differs from vertex count")
        if len(maps) != len(quiver.arrows):
            raise ValueError("one matrix per arrow is required")
        for (s, t), m in zip(quiver.arrows, maps):
            if m.field != field:
                raise StructuralError("arrow matrix over a different field")
            if m.shape != (dims[t], dims[s]):
                raise ValueError(f"arrow {s}->{t} needs shape {(dims[t], dims[s])}, got {m.shape}")
        self.quiver, self.field, self.dims, self.maps = quiver, field, dims, maps
        self._hash = None

    @classmethod
    def zero(cls, quiver: Quiver, field: Field) -> "Representation":
        return cls(quiver, field, [0] * quiver.vertex_count,
                   [Matrix.zeros(field, 0, 0) for _ in quiver.arrows])

    @classmethod
    def from_lists(cls, quiver: Quiver, field: Field, dims, maps) -> "Representation":
        mats = []
        for (s, t), m in zip(quiver.arrows, maps):
            mats.append(Matrix(field, dims[t], dims[s], m if dims[t] and dims[s] else ()))
        return cls(quiver, field, dims, mats)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.quiver == other.quiver and self.field == other.field
                and self.dims == other.dims and self.maps == other.maps)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.quiver, self.field, self.dims, self.maps))
        return self._hash

    def __repr__(self):
        return f"Representation(dims={self.dims})"

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def same_category(self, other: "Representation") -> None:
        if self.quiver != other.quiver or self.field != other.field:
            raise StructuralError("representations over different quivers or fields")

    def identity(self) -> "RepMorphism":
        return RepMorphism(self, self, [Matrix.identity(self.field, d) for d in self.dims], check=False)

    def zero_to(self, target: "Representation") -> "RepMorphism":
        return RepMorphism(self, target, [Matrix.zeros(self.field, target.dims[v], self.dims[v])
                                          for v in range(len(self.dims))], check=False)

    def to_lists(self) -> dict:
        return {"dims": list(self.dims),
                "maps": [[[_plain(x) for x in row] for row in m.data] for m in self.maps]}


def _plain(x):
    return x if isinstance(x, int) else str(x)


class RepMorphism:
    """A family of vertex matrices commuting with every arrow."""

    __slots__ = ("source", "target", "blocks", "_hash", "_mono", "_epi")

    def __init__(self, source: Representation, target: Representation, blocks: Sequence[Matrix], check=True):
        source.same_category(target)
        blocks = tuple(blocks)
        self.source, self.target, self.blocks = source, target, blocks
        self._hash = self._mono = self._epi = None
        if check:
            for v, b in enumerate(blocks):
                if b.shape != (target.dims[v], source.dims[v]):
                    raise ValueError(f"block at vertex {v} has shape {b.shape}")
            if not self.commutes():
                raise ValueError("blocks do not commute with the arrow maps")

    def commutes(self) -> bool:
        for i, (s, t) in enumerate(self.source.quiver.arrows):
            if self.blocks[t] @ self.source.maps[i] != self.target.maps[i] @ self.blocks[s]:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.blocks == other.blocks

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.blocks))
        return self._hash

    def __repr__(self):
        return f"RepMorphism({self.source.dims} -> {self.target.dims})"

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        """``g @ f`` is the composite ``g o f``."""
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        return RepMorphism(other.source, self.target,
                           [a @ b for a, b in zip(self.blocks, other.blocks)], check=False)

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("morphisms have different ends")
        return RepMorphism(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)], check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target, [b.scale(c) for b in self.blocks], check=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_mono(self) -> bool:
        if self._mono is None:
            self._mono = all(is_injective(b) for b in self.blocks)
        return self._mono

    def is_epi(self) -> bool:
        if self._epi is None:
            self._epi = all(is_surjective(b) for b in self.blocks)
        return self._epi

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_mono()

    def vector(self) -> tuple:
        return tuple(x for b in self.blocks for row in b.data for x in row)


def morphism_from_vector(source: Representation, target: Representation, vec: Sequence) -> RepMorphism:
    blocks, k = [], 0
    for v in range(len(source.dims)):
        r, c = target.dims[v], source.dims[v]
        rows = [vec[k + i * c: k + (i + 1) * c] for i in range(r)]
        blocks.append(Matrix(source.field, r, c, rows))
        k += r * c
    return RepMorphism(source, target, blocks, check=False)


def linear_combination(basis: Sequence[RepMorphism], coeffs: Sequence, source=None, target=None) -> RepMorphism:
    if not basis:
        return source.zero_to(target)
    out = basis[0].scale(coeffs[0])
    for f, c in zip(basis[1:], coeffs[1:]):
        if c:
            out = out + f.scale(c)
    return out


_HOM_CACHE: dict = {}


def hom_basis(m: Representation, n: Representation) -> list[RepMorphism]:
    """Basis of Hom(M, N): the null space of the stacked commuting-square system."""
    m.same_category(n)
    key = (m, n)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return list(hit)
    field, quiver = m.field, m.quiver
    offsets, k = [], 0
    for v in range(quiver.vertex_count):
        offsets.append(k)
        k += n.dims[v] * m.dims[v]
    nvars = k
    rows = []
    z = field.zero
    for ai, (s, t) in enumerate(quiver.arrows):
        ma, na = m.maps[ai], n.maps[ai]
        # (B_t M_a - N_a B_s)[i][j] = 0
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                row = [z] * nvars
                for kk in range(m.dims[t]):
                    c = ma.data[kk][j]
                    if c:
                        idx = offsets[t] + i * m.dims[t] + kk
                        row[idx] = field(row[idx] + c)
                for kk in range(n.dims[s]):
                    c = na.data[i][kk]
                    if c:
                        idx = offsets[s] + kk * m.dims[s] + j
                        row[idx] = field(row[idx] - c)
                rows.append(row)
    system = Matrix(field, len(rows), nvars, rows) if rows else Matrix.zeros(field, 0, nvars)
    basis = [morphism_from_vector(m, n, v) for v in kernel_basis(system)]
    if len(_HOM_CACHE) > 200000:
        _HOM_CACHE.clear()
    _HOM_CACHE[key] = tuple(basis)
    return basis


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_basis(m, n))


def hom_elements(m: Representation, n: Representation, cap: int = 4096) -> list[RepMorphism]:
    """Every element of Hom(M, N) over a finite field."""
    basis = hom_basis(m, n)
    field = m.field
    if field.p ** len(basis) > cap:
        raise SizeError(f"Hom space has {field.p}^{len(basis)} elements")
    if not basis:
        return [m.zero_to(n)]
    return [linear_combination(basis, c) for c in product(field.elements(), repeat=len(basis))]


def factor_through(g: RepMorphism, h: RepMorphism, side: str) -> RepMorphism | None:
    """Solve ``g = x o h`` (``side='after'``, x: target(h) -> target(g)) or
    ``g = h o x`` (``side='before'``, x: source(g) -> source(h))."""
    if side == "after":
        basis = hom_basis(h.target, g.target)
        images = [(x @ h).vector() for x in basis]
    else:
        basis = hom_basis(g.source, h.source)
        images = [(h @ x).vector() for x in basis]
    gv = g.vector()
    if not basis:
        return (h.target.zero_to(g.target) if side == "after" else g.source.zero_to(h.source)) if not any(gv) else None
    if not gv:
        return basis[0].scale(0)
    from .exactla import solve
    a = Matrix.from_columns(g.source.field, images, len(gv))
    c = solve(a, gv)
    if c is None:
        return None
    return linear_combination(basis, c)


# ----------------------------------------------------------------- subobjects

class Subobject:
    """A subrepresentation of ``ambient``, given by canonical column bases per vertex."""

    __slots__ = ("ambient", "bases", "__dict__")

    def __init__(self, ambient: Representation, bases: Sequence[Matrix], check=True):
        self.ambient = ambient
        self.bases = tuple(column_space(b) for b in bases)
        if check:
            for ai, (s, t) in enumerate(ambient.quiver.arrows):
                img = ambient.maps[ai] @ self.bases[s]
                if solve_matrix(self.bases[t], img) is None:
                    raise ValueError("subspaces are not closed under the arrows")

    @property
    def key(self):
        return self.bases

    def __eq__(self, other):
        return isinstance(other, Subobject) and self.ambient == other.ambient and self.bases == other.bases

    def __hash__(self):
        return hash((self.ambient, self.bases))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.cols for b in self.bases)

    @cached_property
    def rep(self) -> Representation:
        amb = self.ambient
        maps = []
        for ai, (s, t) in enumerate(amb.quiver.arrows):
            x = solve_matrix(self.bases[t], amb.maps[ai] @ self.bases[s])
            maps.append(x)
        return Representation(amb.quiver, amb.field, self.dims, maps)

    @cached_property
    def inclusion(self) -> RepMorphism:
        return RepMorphism(self.rep, self.ambient, self.bases, check=False)

    @cached_property
    def quotient(self) -> tuple[Representation, RepMorphism]:
        return cokernel(self.inclusion)

    def contains(self, other: "Subobject") -> bool:
        return all(solve_matrix(a, b) is not None for a, b in zip(self.bases, other.bases))

    def __add__(self, other: "Subobject") -> "Subobject":
        field = self.ambient.field
        return Subobject(self.ambient, [hstack(field, a.rows, [a, b]) for a, b in zip(self.bases, other.bases)],
                         check=False)

    def is_zero(self) -> bool:
        return all(b.cols == 0 for b in self.bases)

    def is_everything(self) -> bool:
        return self.dims == self.ambient.dims

    def __repr__(self):
        return f"Subobject({self.dims} of {self.ambient.dims})"


def zero_subobject(m: Representation) -> Subobject:
    return Subobject(m, [Matrix.zeros(m.field, d, 0) for d in m.dims], check=False)


def full_subobject(m: Representation) -> Subobject:
    return Subobject(m, [Matrix.identity(m.field, d) for d in m.dims], check=False)


def image(f: RepMorphism) -> Subobject:
    return Subobject(f.target, f.blocks, check=False)


def kernel_subobject(f: RepMorphism) -> Subobject:
    field = f.source.field
    bases = []
    for v, b in enumerate(f.blocks):
        vecs = kernel_basis(b)
        bases.append(Matrix.from_columns(field, vecs, f.source.dims[v]) if vecs
                     else Matrix.zeros(field, f.source.dims[v], 0))
    return Subobject(f.source, bases, check=False)


def kernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    """Vertexwise kernel with induced arrow maps, and its inclusion."""
    sub = kernel_subobject(f)
    return sub.rep, sub.inclusion


def cokernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    """Vertexwise quotient ``target / image`` and the projection onto it."""
    tgt, field = f.target, f.target.field
    projs = []
    for v, b in enumerate(f.blocks):
        projs.append(left_kernel(column_space(b)) if b.cols else Matrix.identity(field, tgt.dims[v]))
    dims = [p.rows for p in projs]
    maps = []
    for ai, (s, t) in enumerate(tgt.quiver.arrows):
        # X Q_s = Q_t N_a, solved through the transpose
        x = solve_matrix(projs[s].T, (projs[t] @ tgt.maps[ai]).T)
        if x is None:
            raise InternalInconsistency("image is not a subrepresentation")
        maps.append(x.T)
    cok = Representation(tgt.quiver, field, dims, maps)
    return cok, RepMorphism(tgt, cok, projs, check=False)


def preimage(epi: RepMorphism, sub: Subobject) -> Subobject:
    """``epi^{-1}(sub)`` as a subobject of ``epi.source``."""
    field = epi.source.field
    bases = []
    ker = kernel_subobject(epi)
    for v, b in enumerate(epi.blocks):
        lift = solve_matrix(b, sub.bases[v])
        if lift is None:
            raise ValueError("map is not surjective onto the subobject")
        bases.append(hstack(field, epi.source.dims[v], [ker.bases[v], lift]))
    return Subobject(epi.source, bases, check=False)


def pushforward(f: RepMorphism, sub: Subobject) -> Subobject:
    """``f(sub)`` as a subobject of ``f.target``."""
    return image(f @ sub.inclusion)


def subobjects(m: Representation, bound: int = SUBSPACE_DIM_BOUND) -> list[Subobject]:
    """Every subrepresentation of ``m`` (finite fields only)."""
    field, quiver = m.field, m.quiver
    if any(d > bound for d in m.dims):
        raise SizeError(f"vertex dimension above the subobject enumeration bound {bound}")
    options = {}
    for v in range(quiver.vertex_count):
        cands = []
        for rowbasis in enumerate_subspaces(m.dims[v], field, bound):
            basis = rowbasis.T
            proj = left_kernel(basis) if basis.cols else Matrix.identity(field, m.dims[v])
            cands.append((basis, proj))
        options[v] = cands
    incoming = {v: [] for v in range(quiver.vertex_count)}
    for ai, (s, t) in enumerate(quiver.arrows):
        incoming[t].append((ai, s))
    order = quiver.topological_order
    out: list[Subobject] = []
    chosen: dict[int, Matrix] = {}

    def rec(pos):
        if pos == len(order):
            out.append(Subobject(m, [chosen[v] for v in range(quiver.vertex_count)], check=False))
            return
        v = order[pos]
        for basis, proj in options[v]:
            ok = True
            for ai, s in incoming[v]:
                if proj.rows and not (proj @ (m.maps[ai] @ chosen[s])).is_zero():
                    ok = False
                    break
            if ok:
                chosen[v] = basis
                rec(pos + 1)
        chosen.pop(v, None)

    rec(0)
    return out


# -------------------------------------------------------------- direct sums

@dataclass(frozen=True)
class DirectSum:
    rep: Representation
    inclusions: tuple[RepMorphism, ...]
    projections: tuple[RepMorphism, ...]


def direct_sum(reps: Sequence[Representation], quiver: Quiver | None = None, field: Field | None = None) -> DirectSum:
    reps = list(reps)
    if not reps:
        z = Representation.zero(quiver, field)
        return DirectSum(z, (), ())
    q, fld = reps[0].quiver, reps[0].field
    for r in reps[1:]:
        reps[0].same_category(r)
    n = q.vertex_count
    dims = [sum(r.dims[v] for r in reps) for v in range(n)]
    maps = [block_diag(fld, [r.maps[ai] for r in reps]) for ai in range(len(q.arrows))]
    total = Representation(q, fld, dims, maps)
    incs, projs = [], []
    offsets = [0] * n
    for r in reps:
        ib, pb = [], []
        for v in range(n):
            i = [[fld.one if row == offsets[v] + col else fld.zero for col in range(r.dims[v])]
                 for row in range(dims[v])]
            mi = Matrix(fld, dims[v], r.dims[v], i)
            ib.append(mi)
            pb.append(mi.T)
        incs.append(RepMorphism(r, total, ib, check=False))
        projs.append(RepMorphism(total, r, pb, check=False))
        for v in range(n):
            offsets[v] += r.dims[v]
    return DirectSum(total, tuple(incs), tuple(projs))


def row_morphism(maps: Sequence[RepMorphism], target: Representation) -> tuple[DirectSum, RepMorphism]:
    """``(f_1, ..., f_k): X_1 + ... + X_k -> target``."""
    ds = direct_sum([f.source for f in maps], target.quiver, target.field)
    blocks = [hstack(target.field, target.dims[v], [f.blocks[v] for f in maps])
              for v in range(target.quiver.vertex_count)]
    return ds, RepMorphism(ds.rep, target, blocks, check=False)


def column_morphism(source: Representation, maps: Sequence[RepMorphism]) -> tuple[DirectSum, RepMorphism]:
    """``(f_1; ...; f_k): source -> Y_1 + ... + Y_k``."""
    ds = direct_sum([f.target for f in maps], source.quiver, source.field)
    blocks = [vstack(source.field, source.dims[v], [f.blocks[v] for f in maps])
              for v in range(source.quiver.vertex_count)]
    return ds, RepMorphism(source, ds.rep, blocks, check=False)


# ------------------------------------------------------------ sequences

@dataclass(frozen=True)
class SES:
    """``0 -> mono.source -> mono.target = epi.source -> epi.target -> 0``."""

    mono: RepMorphism
    epi: RepMorphism

    def is_exact(self) -> bool:
        return is_exact_pair(self.mono, self.epi)


def is_exact_pair(f: RepMorphism, g: RepMorphism) -> bool:
    if f.target != g.source:
        return False
    # cheap tests first: dimension count, then the composite, then ranks
    if any(f.source.dims[v] + g.target.dims[v] != f.target.dims[v] for v in range(len(f.target.dims))):
        return False
    return (g @ f).is_zero() and f.is_mono() and g.is_epi()


# ----------------------------------------------------------- extensions

@dataclass(frozen=True)
class ExtensionSpace:
    """Ext^1(C, A) as a complement of coboundaries inside the cochain space."""

    end: Representation      # C
    start: Representation    # A
    basis: tuple[tuple, ...]  # cochain vectors representing a basis of Ext^1

    @property
    def dim(self) -> int:
        return len(self.basis)


def _cochain_layout(c: Representation, a: Representation):
    layout, k = [], 0
    for s, t in c.quiver.arrows:
        layout.append((k, a.dims[t], c.dims[s]))
        k += a.dims[t] * c.dims[s]
    return layout, k


def ext_space(c: Representation, a: Representation) -> ExtensionSpace:
    """Ext^1(C, A) computed from the standard projective presentation of C.

    Hom(P_0, A) = sum_i Hom(C_i, A_i) maps to Hom(P_1, A) = sum_{a:s->t} Hom(C_s, A_t)
    by ``phi -> A_a phi_s - phi_t C_a``; Ext^1 is the cokernel.
    """
    c.same_category(a)
    field, quiver = c.field, c.quiver
    layout, ncochain = _cochain_layout(c, a)
    vert_offsets, k = [], 0
    for v in range(quiver.vertex_count):
        vert_offsets.append(k)
        k += a.dims[v] * c.dims[v]
    coboundaries = []
    for v in range(quiver.vertex_count):
        for i in range(a.dims[v]):
            for j in range(c.dims[v]):
                phi = [Matrix.zeros(field, a.dims[w], c.dims[w]) for w in range(quiver.vertex_count)]
                rows = [[field.zero] * c.dims[v] for _ in range(a.dims[v])]
                rows[i][j] = field.one
                phi[v] = Matrix(field, a.dims[v], c.dims[v], rows)
                vec = []
                for ai, (s, t) in enumerate(quiver.arrows):
                    d = a.maps[ai] @ phi[s] - phi[t] @ c.maps[ai]
                    vec.extend(x for row in d.data for x in row)
                coboundaries.append(tuple(vec))
    # complement of the coboundary span by greedy extension with unit cochains
    from .exactla import span_dim
    span = [v for v in coboundaries]
    base_rank = span_dim(field, ncochain, span)
    chosen = []
    for idx in range(ncochain):
        e = tuple(field.one if x == idx else field.zero for x in range(ncochain))
        r = span_dim(field, ncochain, span + [e])
        if r > base_rank:
            span.append(e)
            base_rank = r
            chosen.append(e)
    return ExtensionSpace(c, a, tuple(chosen))


def extension_from_cochain(c: Representation, a: Representation, cochain: Sequence) -> SES:
    """Middle term B with B_i = A_i + C_i and B_a = [[A_a, xi_a], [0, C_a]]."""
    field, quiver = c.field, c.quiver
    layout, _ = _cochain_layout(c, a)
    dims = [a.dims[v] + c.dims[v] for v in range(quiver.vertex_count)]
    maps = []
    for ai, (s, t) in enumerate(quiver.arrows):
        off, r, cc = layout[ai]
        xi = Matrix(field, r, cc, [cochain[off + i * cc: off + (i + 1) * cc] for i in range(r)])
        top = hstack(field, a.dims[t], [a.maps[ai], xi])
        bot = hstack(field, c.dims[t], [Matrix.zeros(field, c.dims[t], a.dims[s]), c.maps[ai]])
        maps.append(vstack(field, dims[s], [top, bot]))
    b = Representation(quiver, field, dims, maps)
    mono_blocks, epi_blocks = [], []
    for v in range(quiver.vertex_count):
        ident_a = Matrix.identity(field, a.dims[v])
        mono_blocks.append(vstack(field, a.dims[v], [ident_a, Matrix.zeros(field, c.dims[v], a.dims[v])]))
        epi_blocks.append(hstack(field, c.dims[v], [Matrix.zeros(field, c.dims[v], a.dims[v]),
                                                    Matrix.identity(field, c.dims[v])]))
    return SES(RepMorphism(a, b, mono_blocks, check=False), RepMorphism(b, c, epi_blocks, check=False))


def extension_classes(space: ExtensionSpace, cap: int = 4096) -> list[tuple]:
    """Cochain representatives of the classes to realise.

    Over F_p: every class (``p^dim`` of them).  Over Q: zero, each basis class
    and the sums of pairs of basis classes.
    """
    field = space.end.field
    _, n = _cochain_layout(space.end, space.start)
    zero = tuple(field.zero for _ in range(n))
    basis = space.basis
    if field.is_finite:
        if field.p ** len(basis) > cap:
            raise SizeError(f"Ext space has {field.p}^{len(basis)} classes")
        out = []
        for coeffs in product(field.elements(), repeat=len(basis)):
            vec = list(zero)
            for c, b in zip(coeffs, basis):
                if c:
                    vec = [field(x + c * y) for x, y in zip(vec, b)]
            out.append(tuple(vec))
        return out
    out = [zero] + list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            out.append(tuple(x + y for x, y in zip(basis[i], basis[j])))
    return out
