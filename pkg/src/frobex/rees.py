"""Rees algebras of non-negatively filtered based algebras.

The Rees algebra collects the filtration pieces R_g along the positive cone:
basis indices are pairs (b, g) with b a base index, g a cone element and
deg(b) <= g, multiplied by (b, g) * (c, h) = sum of (t, g + h) over the base
product terms (every t stays admissible because the base filtration is
submultiplicative).  Setting the cone parameter to 0 recovers the associated
graded algebra; setting it to 1 recovers the base algebra.  Both reductions
are exposed as explicit quotient maps with exhaustive windowed checks.

Rees algebras are infinite; every verification here is performed degree by
degree inside a finite window and is labeled as a windowed verification,
not a proof.  Windowed enumeration and evaluation are implemented for
rank-one degree groups (all fixtures that exercise this module filter over
the integers); the algebra construction itself works for any Z^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .algcore import BasedAlgebra, Element, gr_of, multiply
from .errors import DomainError, UnsupportedStructure
from .frobenius import CentralFreeExtension, mapping_degree
from .grpdeg import GroupElement, in_positive_cone
from .qas import FreeDecomposition


@dataclass(frozen=True)
class ReesAlgebra:
    base: BasedAlgebra
    window: GroupElement
    algebra: BasedAlgebra

    @property
    def field(self):
        return self.base.field


def rees_of(A: BasedAlgebra, window: GroupElement) -> ReesAlgebra:
    """Build the Rees algebra of a non-negatively filtered based algebra.

    The window bounds the enumerations performed by the checking helpers;
    multiplication itself is exact and unwindowed.
    """
    if not in_positive_cone(window):
        raise DomainError(f"window {window} is not in the positive cone")
    fld = A.field
    dim = len(window)

    def mul(i, j):
        (b, g), (c, h) = i, j
        prod = A.mul_indices(b, c)
        gh = g + h
        return Element(fld, {(t, gh): coeff for t, coeff in prod.terms.items()})

    def index_str(idx):
        b, g = idx
        return f"({A.index_str(b)}, t^{g})"

    one = (A.one, GroupElement.zero(dim))
    gens = tuple((g, A.degree_of(g)) for g in A.generator_indices)
    names = A.generator_names
    if dim == 1:
        gens = gens + ((A.one, GroupElement((1,))),)
        names = names + ("t",)

    algebra = BasedAlgebra(
        field=fld,
        mode="graded",
        one=one,
        degree_of=lambda idx: idx[1],
        mul_indices=mul,
        index_str=index_str,
        generator_indices=gens,
        generator_names=names,
        name=f"rees({A.name})",
        index_key=lambda idx: (idx[1].coords, idx[0]),
    )
    return ReesAlgebra(base=A, window=window, algebra=algebra)


def enumerate_admissible(RA: ReesAlgebra, bound: GroupElement) -> Iterator[tuple]:
    """All admissible (b, g) with g <= bound, for rank-one degree groups."""
    if len(bound) != 1:
        raise UnsupportedStructure("windowed enumeration needs a rank-one degree group")
    if RA.base.enumerate_up_to is None:
        raise UnsupportedStructure(f"{RA.base.name} does not enumerate its indices")
    for g in range(bound.coords[0] + 1):
        ge = GroupElement((g,))
        for b in RA.base.enumerate_up_to(ge):
            yield (b, ge)


@dataclass(frozen=True)
class ConeReduction:
    """Quotient of the Rees algebra at a maximal ideal of the cone algebra.

    The cone parameter is sent to the given scalar: 0 recovers the
    associated graded algebra, 1 recovers the base algebra, and any other
    scalar gives a quotient isomorphic to the base with rescaled filtration
    pieces (the remaining maximal ideals of the cone line).  Scalars other
    than 0 and 1 need a rank-one degree group to exponentiate.
    """

    rees: ReesAlgebra
    scalar: int
    target: BasedAlgebra

    def map_term(self, idx) -> Optional[tuple]:
        """Image (target index, coefficient) of a Rees index, or None.

        Scalar 0 keeps only top symbols (the quotient by the cone's
        augmentation ideal); a nonzero scalar c evaluates the cone
        parameter, sending (b, g) to c^g * b.
        """
        b, g = idx
        if self.scalar == 0:
            excess = g - self.rees.base.degree_of(b)
            return (b, 1) if excess.is_zero() else None
        if self.scalar == 1:
            return (b, 1)
        if len(g) != 1:
            raise UnsupportedStructure(
                "cone scalars other than 0 and 1 need a rank-one degree group"
            )
        return (b, pow(self.scalar, g.coords[0], self.target.field.p))

    def map_element(self, el: Element) -> Element:
        out: dict = {}
        for idx, c in el.terms.items():
            mapped = self.map_term(idx)
            if mapped is None:
                continue
            tgt, coeff = mapped
            out[tgt] = out.get(tgt, 0) + c * coeff
        return Element(self.target.field, out)

    def map_monomial(self, idx) -> Element:
        mapped = self.map_term(idx)
        if mapped is None:
            return self.target.zero()
        return self.target.monomial(mapped[0], mapped[1])


def cone_reduction(RA: ReesAlgebra, scalar: int) -> ConeReduction:
    """Reduction at the point sending the cone parameter to the scalar."""
    scalar %= RA.base.field.p
    target = gr_of(RA.base) if scalar == 0 else RA.base
    return ConeReduction(rees=RA, scalar=scalar, target=target)


def reduce_canonical(RA: ReesAlgebra, which: str) -> ConeReduction:
    """The two canonical reductions: m0 kills the cone (leaving the
    associated graded algebra), m1 sets the cone parameter to 1 (leaving
    the base algebra)."""
    if which == "m0":
        return cone_reduction(RA, 0)
    if which == "m1":
        return cone_reduction(RA, 1)
    raise DomainError("reduction must be 'm0' or 'm1'")


def check_reduction_tables(RA: ReesAlgebra, which, window: Optional[GroupElement] = None) -> None:
    """Exhaustively verify within the window that a cone reduction is an
    algebra map whose structure constants match the target's table.

    Accepts 'm0', 'm1' or a ConeReduction."""
    window = window or RA.window
    red = which if isinstance(which, ConeReduction) else reduce_canonical(RA, which)
    RAlg = RA.algebra
    tgt = red.target
    if red.map_element(RAlg.one_element()) != tgt.one_element():
        raise DomainError(f"{red.scalar} reduction does not send unit to unit")
    indices = list(enumerate_admissible(RA, window))
    limit = window.coords[0]
    for u in indices:
        for v in indices:
            if u[1].coords[0] + v[1].coords[0] > limit:
                continue
            lhs = red.map_element(RAlg.mul_indices(u, v))
            rhs = multiply(tgt, red.map_monomial(u), red.map_monomial(v))
            if lhs != rhs:
                raise DomainError(
                    f"cone reduction at {red.scalar} is not multiplicative at {u}, {v}"
                )


def check_cone_freeness(RA: ReesAlgebra, window: Optional[GroupElement] = None) -> None:
    """Spot check that the degree-matched pairs (b, deg b) generate the Rees
    algebra freely over the cone: per degree, admissible indices are counted
    by base indices of degree at most g, and each factors exactly as
    (b, deg b) * (1, g - deg b)."""
    window = window or RA.window
    A = RA.base
    RAlg = RA.algebra
    for g in range(window.coords[0] + 1):
        ge = GroupElement((g,))
        slice_indices = [idx for idx in enumerate_admissible(RA, ge) if idx[1] == ge]
        below = [b for b in A.enumerate_up_to(ge)]
        if len(slice_indices) != len(below):
            raise DomainError(
                f"degree {g}: {len(slice_indices)} admissible pairs vs "
                f"{len(below)} base indices"
            )
        for b, _ in slice_indices:
            db = A.degree_of(b)
            prod = RAlg.mul_indices((b, db), (A.one, ge - db))
            if prod != RAlg.monomial((b, ge)):
                raise DomainError(f"({b}, {ge}) does not factor through the cone")


def rees_form(
    RA: ReesAlgebra, base_form: Callable[[Element], Element], d: GroupElement
) -> Callable[[Element], Element]:
    """Transport a filtered form of degree d to the Rees algebra by
    (r, g) -> (Phi(r), g + d); homogeneous of degree d by construction.

    If some value fails the admissibility bound deg Phi(r) <= g + d, the
    declared degree of the base form was wrong, and that is reported rather
    than truncated.
    """
    A = RA.base
    fld = A.field

    def phi(el: Element) -> Element:
        out: dict = {}
        for (b, g), c in el.terms.items():
            val = base_form(A.monomial(b))
            if val.is_zero():
                continue
            h = g + d
            for sidx, sc in val.terms.items():
                if not (A.degree_of(sidx) <= h) or not in_positive_cone(h):
                    raise DomainError(
                        f"form value escapes the Rees subring at ({b}, {g}): "
                        f"declared degree {d} is wrong"
                    )
                key = (sidx, h)
                out[key] = out.get(key, 0) + c * sc
        return Element(fld, out)

    return phi


class ReesEngine:
    """Free decomposition of Rees(R) over Rees(S), induced by the base engine.

    The distinguished basis is (b, deg b) for b in the base basis; the slot
    coefficient of (r, g) at (b, deg b) is the base coefficient shifted to
    cone position g - deg b.  Evaluation (for determinant tests) sends a
    subring index (s, g) to eval(s) * t^(g - deg s), which is a ring map
    Rees(S) -> F_p; rank-one degree groups only.
    """

    def __init__(self, RA: ReesAlgebra, base_engine):
        if len(RA.window) != 1:
            raise UnsupportedStructure("Rees extensions need a rank-one degree group")
        self.rees = RA
        self.algebra = RA.algebra
        self.base_engine = base_engine
        A = RA.base
        self.basis = tuple(
            sorted(((b, A.degree_of(b)) for b in base_engine.basis),
                   key=self.algebra.index_key)
        )
        self.subring_generators = tuple(
            (s, A.degree_of(s)) for s in base_engine.subring_generators
        ) + ((A.one, GroupElement((1,))),)
        self.point_len = base_engine.point_len + 1

    def subring_contains(self, idx) -> bool:
        return self.base_engine.subring_contains(idx[0])

    def complement(self, bidx):
        b, _ = bidx
        comp = self.base_engine.complement(b)
        return (comp, self.rees.base.degree_of(comp))

    def top_slot(self):
        top = self.base_engine.top_slot()
        return (top, self.rees.base.degree_of(top))

    def decompose(self, y: Element) -> FreeDecomposition:
        A = self.rees.base
        fld = A.field
        slots: dict = {}
        for (idx, g), c in y.terms.items():
            if not (A.degree_of(idx) <= g):
                raise DomainError(f"({idx}, {g}) is not admissible")
            base_dec = self.base_engine.decompose(A.monomial(idx, c))
            for r, z in base_dec.slots.items():
                key = (r, A.degree_of(r))
                shift = g - A.degree_of(r)
                acc = slots.setdefault(key, {})
                for sidx, sc in z.terms.items():
                    skey = (sidx, shift)
                    acc[skey] = (acc.get(skey, 0) + sc) % fld.p
        return FreeDecomposition(
            self.algebra, {k: Element(fld, v) for k, v in slots.items()}
        )

    def eval_index(self, idx, point) -> int:
        sidx, g = idx
        p = self.rees.base.field.p
        base_val = self.base_engine.eval_index(sidx, point[:-1])
        shift = (g - self.rees.base.degree_of(sidx)).coords[0]
        return base_val * pow(point[-1] % p, shift, p) % p

    def poly_degree(self, idx) -> int:
        sidx, g = idx
        shift = (g - self.rees.base.degree_of(sidx)).coords[0]
        return self.base_engine.poly_degree(sidx) + shift

    def random_index(self, rng) -> tuple:
        b = self.base_engine.random_index(rng)
        extra = rng.randrange(0, 2)
        return (b, self.rees.base.degree_of(b) + GroupElement((extra,)))


def rees_extension(
    E: CentralFreeExtension,
    window: Optional[GroupElement] = None,
    phi_degree: Optional[GroupElement] = None,
    validate: bool = True,
) -> tuple[ReesAlgebra, CentralFreeExtension]:
    """The induced extension Rees(S) inside Rees(R), with the transported form.

    Default window: three times the top basis degree of the extension under
    test, which covers every product the windowed checks look at.
    """
    A = E.ambient
    top = max((A.degree_of(b) for b in E.basis), key=lambda g: g.coords)
    if window is None:
        window = 3 * top
    RA = rees_of(A, window)
    if phi_degree is None:
        phi_degree = mapping_degree(E)
        if phi_degree is None:
            raise DomainError("base form vanishes on the basis")
    engine = ReesEngine(RA, E.engine)
    form = rees_form(RA, E.form, phi_degree)
    ext = CentralFreeExtension(
        RA.algebra, engine, form, name=f"rees({E.name})"
    )
    if validate:
        ext.validate()
    return RA, ext
