"""
The category of monomorphisms of a heart, with commutative squares as
morphisms taken modulo null-homotopy: kernels and cokernels through
pullbacks and pushouts, regular morphisms and the three-step factorisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import ContractError, TheoremViolation
from .exactla import Matrix, kernel_basis, preimage_dim, span_dim
from .hearts import cokernel_in_heart, is_ses_in_heart, kernel_in_heart
from .reps import (
    Representation,
    RepMorphism,
    column_morphism,
    direct_sum,
    factor_through,
    hom_basis,
    hom_elements,
    row_morphism,
)
from .subcat import Context


@dataclass(frozen=True)
class MonoObj:
    """A monomorphism ``f: X -> Y`` of the heart."""

    f: RepMorphism

    @property
    def x(self) -> Representation:
        return self.f.source

    @property
    def y(self) -> Representation:
        return self.f.target

    def is_zero(self) -> bool:
        """Iso-monos are the zero objects up to homotopy."""
        return self.f.is_iso()

    def identity(self) -> "SquareMor":
        return SquareMor(self, self, self.x.identity(), self.y.identity())


def mono(ctx: Context, f: RepMorphism) -> MonoObj:
    if not (ctx.contains(f.source) and ctx.contains(f.target)):
        raise ContractError("mono endpoints are not in the heart")
    k, _ = kernel_in_heart(ctx, f, certify=False)
    if not k.is_zero():
        raise ContractError("morphism is not a monomorphism of the heart")
    return MonoObj(f)


def embed(x: Representation) -> MonoObj:
    """``x |-> (0 -> x)``."""
    z = Representation.zero(x.quiver, x.field)
    return MonoObj(z.zero_to(x))


@dataclass(frozen=True)
class SquareMor:
    """``(alpha, beta): f -> f'`` with ``f' alpha = beta f``."""

    src: MonoObj
    tgt: MonoObj
    alpha: RepMorphism
    beta: RepMorphism

    def __post_init__(self):
        if self.tgt.f @ self.alpha != self.beta @ self.src.f:
            raise ValueError("square does not commute")

    def __matmul__(self, other: "SquareMor") -> "SquareMor":
        """``self @ other`` is ``self o other``."""
        return SquareMor(other.src, self.tgt, self.alpha @ other.alpha, self.beta @ other.beta)

    def __sub__(self, other: "SquareMor") -> "SquareMor":
        return SquareMor(self.src, self.tgt, self.alpha - other.alpha, self.beta - other.beta)

    def vector(self) -> tuple:
        return self.alpha.vector() + self.beta.vector()


def zero_square(a: MonoObj, b: MonoObj) -> SquareMor:
    return SquareMor(a, b, a.x.zero_to(b.x), a.y.zero_to(b.y))


def is_null_homotopic(m: SquareMor) -> bool:
    """Whether some ``h: Y -> X'`` has ``f' h = beta``."""
    return factor_through(m.beta, m.tgt.f, "before") is not None


def homotopic(a: SquareMor, b: SquareMor) -> bool:
    return is_null_homotopic(a - b)


def null_homotopic_bruteforce(m: SquareMor, cap: int = 4096) -> bool:
    """Independent check over a finite field: try every ``h``."""
    for h in hom_elements(m.src.y, m.tgt.x, cap):
        if m.tgt.f @ h == m.beta:
            return True
    return False


# ------------------------------------------------------------ square spaces

def square_basis(a: MonoObj, b: MonoObj) -> list[SquareMor]:
    """Basis of all commutative squares ``a -> b``."""
    alphas = hom_basis(a.x, b.x)
    betas = hom_basis(a.y, b.y)
    field = a.x.field
    if not alphas and not betas:
        return []
    cols = [(b.f @ al).vector() for al in alphas] + [(be @ a.f).scale(-1).vector() for be in betas]
    n = len(cols[0])
    out = []
    if n == 0:
        coeff_sets = [tuple(1 if i == j else 0 for i in range(len(cols))) for j in range(len(cols))]
    else:
        coeff_sets = kernel_basis(Matrix.from_columns(field, cols, n))
    for coeffs in coeff_sets:
        al = a.x.zero_to(b.x)
        be = a.y.zero_to(b.y)
        for c, g in zip(coeffs[: len(alphas)], alphas):
            if c:
                al = al + g.scale(c)
        for c, g in zip(coeffs[len(alphas):], betas):
            if c:
                be = be + g.scale(c)
        out.append(SquareMor(a, b, al, be))
    return out


def null_basis(a: MonoObj, b: MonoObj) -> list[SquareMor]:
    """Spanning set of the null-homotopic squares ``(h f, f' h)``."""
    return [SquareMor(a, b, h @ a.f, b.f @ h) for h in hom_basis(a.y, b.x)]


def hom_mod_homotopy_dim(a: MonoObj, b: MonoObj) -> int:
    sq = square_basis(a, b)
    if not sq:
        return 0
    n = len(sq[0].vector())
    return span_dim(a.x.field, n, [s.vector() for s in sq]) - span_dim(a.x.field, n, [s.vector() for s in null_basis(a, b)])


# ------------------------------------------------------ kernels, cokernels

@dataclass(frozen=True)
class KernelData:
    obj: MonoObj          # r: X -> A
    square: SquareMor     # (1_X, u): r -> f
    u: RepMorphism        # A -> Y
    v: RepMorphism        # A -> X'


@dataclass(frozen=True)
class CokernelData:
    obj: MonoObj          # s: B -> Y'
    square: SquareMor     # (p, 1_Y'): f' -> s
    p: RepMorphism        # X' -> B
    q: RepMorphism        # Y -> B


def kernel_mono(ctx: Context, m: SquareMor, certify: bool = True) -> KernelData:
    """Pullback A of (beta, f'), with r: X -> A induced by (f, alpha)."""
    f, fp = m.src.f, m.tgt.f
    _, diff = row_morphism([m.beta, -fp], fp.target)
    a, k = kernel_in_heart(ctx, diff, certify=False)
    ds = direct_sum([m.beta.source, fp.source])
    u, v = ds.projections[0] @ k, ds.projections[1] @ k
    _, fa = column_morphism(f.source, [f, m.alpha])
    r = factor_through(fa, k, "before")
    if r is None:
        raise TheoremViolation("kernel in the monomorphism category", "no induced map into the pullback")
    obj = MonoObj(r)
    data = KernelData(obj, SquareMor(obj, m.src, f.source.identity(), u), u, v)
    if certify:
        certify_kernel_mono(ctx, m, data)
    return data


def cokernel_mono(ctx: Context, m: SquareMor, certify: bool = True, kern: KernelData | None = None) -> CokernelData:
    """Pushout B of (u, v) from the kernel's pullback, with s: B -> Y' induced by (beta, f')."""
    kern = kern or kernel_mono(ctx, m, certify=False)
    fp = m.tgt.f
    _, diff = column_morphism(kern.u.source, [kern.u, -kern.v])
    b, c = cokernel_in_heart(ctx, diff, certify=False)
    ds = direct_sum([kern.u.target, kern.v.target])
    q, p = c @ ds.inclusions[0], c @ ds.inclusions[1]
    _, bf = row_morphism([m.beta, fp], fp.target)
    s = factor_through(bf, c, "after")
    if s is None:
        raise TheoremViolation("cokernel in the monomorphism category", "no induced map out of the pushout")
    obj = MonoObj(s)
    data = CokernelData(obj, SquareMor(m.tgt, obj, p, fp.target.identity()), p, q)
    if certify:
        certify_cokernel_mono(ctx, m, data)
    return data


def probe_objects(ctx: Context, extended: bool = False) -> list[MonoObj]:
    """(0 -> Z) and (Z = Z) for heart indecomposables Z; optionally every basis mono between them."""
    cat = ctx.cat
    out = []
    for z in sorted(ctx.members):
        zr = cat.indecs[z]
        out.append(embed(zr))
        out.append(MonoObj(zr.identity()))
    if extended:
        for a in sorted(ctx.members):
            for b in sorted(ctx.members):
                for f in hom_basis(cat.indecs[a], cat.indecs[b]):
                    k, _ = kernel_in_heart(ctx, f, certify=False)
                    if k.is_zero():
                        out.append(MonoObj(f))
    return out


def _exact_mod_null(field, left, mid, right, phi, psi) -> bool:
    """Exactness of ``0 -> S_l/N_l -> S_m/N_m -> S_r/N_r``.

    ``left``/``mid``/``right`` are (basis vectors, null vectors, ambient size);
    ``phi``/``psi`` hold the images of the left/middle basis vectors.
    """
    def dim(vs, n):
        return span_dim(field, n, vs) if vs and n else 0

    (bl, nl, n_l), (bm, nm, n_m), (_, nr, n_r) = left, mid, right
    img = dim(phi + nm, n_m)
    if img - dim(nm, n_m) != dim(bl, n_l) - dim(nl, n_l):
        return False
    if not bm:
        return True
    if n_r:
        a = Matrix.from_columns(field, psi, n_r)
        w = Matrix.from_columns(field, nr, n_r) if nr else Matrix.zeros(field, n_r, 0)
        pre = preimage_dim(a, w)
    else:
        pre = len(bm)
    return pre == img


def _certify(ctx: Context, m: SquareMor, obj: MonoObj, link: SquareMor, kind: str, extended: bool) -> None:
    field = m.src.x.field
    for t in probe_objects(ctx, extended):
        if kind == "kernel":
            seq = [(t, obj), (t, m.src), (t, m.tgt)]
        else:
            seq = [(obj, t), (m.tgt, t), (m.src, t)]
        bases = [square_basis(a, b) for a, b in seq]
        nulls = [null_basis(a, b) for a, b in seq]
        if kind == "kernel":
            phi = [(link @ s).vector() for s in bases[0]]
            psi = [(m @ s).vector() for s in bases[1]]
        else:
            phi = [(s @ link).vector() for s in bases[0]]
            psi = [(s @ m).vector() for s in bases[1]]
        def pack(i):
            vs = [x.vector() for x in bases[i]]
            ns = [x.vector() for x in nulls[i]]
            a, b = seq[i]
            n = sum(d1 * d2 for d1, d2 in zip(a.x.dims, b.x.dims)) + sum(d1 * d2 for d1, d2 in zip(a.y.dims, b.y.dims))
            return vs, ns, n
        ok = _exact_mod_null(field, pack(0), pack(1), pack(2), phi, psi)
        if not ok:
            raise TheoremViolation(f"{kind} in the monomorphism category", "Hom-exactness fails for a test object")


def certify_kernel_mono(ctx: Context, m: SquareMor, data: KernelData, extended: bool = False) -> None:
    if not is_null_homotopic(m @ data.square):
        raise TheoremViolation("kernel in the monomorphism category", "composite with the kernel is not null")
    _certify(ctx, m, data.obj, data.square, "kernel", extended)


def certify_cokernel_mono(ctx: Context, m: SquareMor, data: CokernelData, extended: bool = False) -> None:
    if not is_null_homotopic(data.square @ m):
        raise TheoremViolation("cokernel in the monomorphism category", "composite with the cokernel is not null")
    _certify(ctx, m, data.obj, data.square, "cokernel", extended)


# ------------------------------------------------------ regular morphisms

def is_regular(ctx: Context, m: SquareMor) -> bool:
    """Kernel and cokernel objects are both zero (their structure maps are isos)."""
    kern = kernel_mono(ctx, m, certify=False)
    cok = cokernel_mono(ctx, m, certify=False, kern=kern)
    return kern.obj.is_zero() and cok.obj.is_zero()


def is_exact_square(ctx: Context, m: SquareMor) -> bool:
    """0 -> X -(f, -alpha)-> Y + X' -(beta, f')-> Y' -> 0 is exact."""
    f, fp = m.src.f, m.tgt.f
    _, left = column_morphism(f.source, [f, -m.alpha])
    _, right = row_morphism([m.beta, fp], fp.target)
    return is_ses_in_heart(ctx, left, right)


@dataclass(frozen=True)
class Factorisation:
    cokernel_part: SquareMor   # (r, 1_Y): f -> u
    regular_part: SquareMor    # (v, q): u -> p
    kernel_part: SquareMor     # (1_X', s): p -> f'


def factorize(ctx: Context, m: SquareMor) -> Factorisation:
    kern = kernel_mono(ctx, m, certify=False)
    cok = cokernel_mono(ctx, m, certify=False, kern=kern)
    u_obj = MonoObj(kern.u)
    p_obj = MonoObj(cok.p)
    first = SquareMor(m.src, u_obj, kern.obj.f, m.src.y.identity())
    middle = SquareMor(u_obj, p_obj, kern.v, cok.q)
    last = SquareMor(p_obj, m.tgt, m.tgt.x.identity(), cok.obj.f)
    comp = last @ middle @ first
    if not homotopic(comp, m):
        raise TheoremViolation("three-step factorisation", "composite differs from the square")
    if not is_regular(ctx, middle):
        raise TheoremViolation("three-step factorisation", "middle part is not regular")
    return Factorisation(first, middle, last)


def embed_is_full_and_faithful(ctx: Context) -> bool:
    cat = ctx.cat
    for a in sorted(ctx.members):
        for b in sorted(ctx.members):
            x, y = cat.indecs[a], cat.indecs[b]
            if hom_mod_homotopy_dim(embed(x), embed(y)) != len(hom_basis(x, y)):
                return False
    return True
