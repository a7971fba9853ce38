"""Quantum affine space at a root of unity and a filtered q-Weyl fixture.

Quantum affine space on generators x_1, ..., x_n satisfies
x_i x_j = q_{i,j} x_j x_i with q_{i,j} = zeta^{C[i][j]} for an antisymmetric
integer matrix C.  Monomials are written in normal order x_1^{a_1}...x_n^{a_n}
and indexed by their exponent vectors.  The subalgebra generated by the
ell-th powers of the generators is central; the restricted monomials (all
exponents below ell) form a free basis over it, and projection onto the top
restricted slot is the distinguished form whose Frobenius property the
``frobenius`` module certifies.

The q-Weyl algebra (x*y = q*y*x + 1, filtered by total degree) is the
package's genuinely filtered test bed: its associated graded algebra is the
quantum plane, and the centrality of x^ell and y^ell is verified by tests
against a word-rewriting oracle rather than assumed.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .algcore import BasedAlgebra, Element, RootField, default_prime
from .errors import DimensionMismatch, DomainError
from .grpdeg import GroupElement, in_positive_cone


def normal_order_exponent(cmatrix, a, b) -> int:
    """zeta-exponent picked up when normal-ordering x^a * x^b.

    Moving each letter x_j of the right factor leftward past the letters
    x_i (i > j) of the left factor performs a_i * b_j single swaps, each
    contributing C[i][j].  Tests validate this against a brute-force
    free-algebra rewriting oracle before anything downstream trusts it.
    """
    k = 0
    for i in range(1, len(a)):
        ai = a[i]
        if not ai:
            continue
        row = cmatrix[i]
        for j in range(i):
            if b[j]:
                k += row[j] * ai * b[j]
    return k


class QuantumAffineSpace:
    """k_q[x_1,...,x_n] at an ell-th root of unity, graded by Z^m."""

    def __init__(self, field: RootField, cmatrix, degrees):
        self.field = field
        self.n = len(cmatrix)
        self.cmatrix = tuple(tuple(int(c) for c in row) for row in cmatrix)
        self.degrees = tuple(degrees)
        self._validate()
        self._algebra = self._build_algebra()
        self._engine = None

    def _validate(self):
        n, C = self.n, self.cmatrix
        if any(len(row) != n for row in C):
            raise DimensionMismatch("commutation matrix is not square")
        for i in range(n):
            if C[i][i] != 0:
                raise DomainError("commutation matrix has nonzero diagonal")
            for j in range(n):
                if C[i][j] != -C[j][i]:
                    raise DomainError("commutation matrix is not antisymmetric")
        if len(self.degrees) != n:
            raise DimensionMismatch("need one degree vector per generator")
        dims = {len(d) for d in self.degrees}
        if len(dims) > 1:
            raise DimensionMismatch("degree vectors of mixed dimension")
        if not all(in_positive_cone(d) for d in self.degrees):
            raise DomainError("generator degrees must be non-negative")
        if all(d.is_zero() for d in self.degrees):
            raise DomainError("at least one generator degree must be nonzero")

    @property
    def degree_dim(self) -> int:
        return len(self.degrees[0])

    def monomial_degree(self, exps) -> GroupElement:
        g = GroupElement.zero(self.degree_dim)
        for e, d in zip(exps, self.degrees):
            if e:
                g = g + e * d
        return g

    def _build_algebra(self) -> BasedAlgebra:
        fld = self.field
        cmatrix = self.cmatrix
        names = tuple(f"x{i + 1}" for i in range(self.n))

        def mul(a, b):
            k, exps = monomial_product(self, a, b)
            return Element(fld, {exps: fld.zeta_pow(k)})

        def index_str(exps):
            if not any(exps):
                return "1"
            parts = []
            for nm, e in zip(names, exps):
                if e == 1:
                    parts.append(nm)
                elif e > 1:
                    parts.append(f"{nm}^{e}")
            return "*".join(parts)

        enumerate_up_to = None
        if self.degree_dim == 1 and all(d.coords[0] > 0 for d in self.degrees):
            weights = [d.coords[0] for d in self.degrees]

            def enumerate_up_to(bound: GroupElement) -> Iterator[tuple]:
                limit = bound.coords[0]

                def rec(i, remaining):
                    if i == len(weights):
                        yield ()
                        return
                    w = weights[i]
                    for e in range(remaining // w + 1):
                        for rest in rec(i + 1, remaining - e * w):
                            yield (e, *rest)

                yield from rec(0, limit)

        gens = tuple(
            tuple(1 if j == i else 0 for j in range(self.n)) for i in range(self.n)
        )
        return BasedAlgebra(
            field=fld,
            mode="graded",
            one=(0,) * self.n,
            degree_of=self.monomial_degree,
            mul_indices=mul,
            index_str=index_str,
            generator_indices=gens,
            generator_names=names,
            name=f"qas(n={self.n}, ell={fld.ell}, p={fld.p})",
            enumerate_up_to=enumerate_up_to,
        )

    def algebra(self) -> BasedAlgebra:
        return self._algebra

    def engine(self) -> "RestrictedBasisEngine":
        if self._engine is None:
            self._engine = RestrictedBasisEngine(self._algebra, self.field.ell)
        return self._engine

    def __repr__(self):
        return self._algebra.name


def monomial_product(A: QuantumAffineSpace, a, b) -> tuple[int, tuple]:
    """x^a * x^b = zeta^k * x^(a+b); returns (k mod ell, a+b)."""
    a = tuple(a)
    b = tuple(b)
    if len(a) != A.n or len(b) != A.n:
        raise DimensionMismatch("exponent vectors of wrong length")
    if any(e < 0 for e in a + b):
        raise DomainError("exponents must be non-negative")
    k = normal_order_exponent(A.cmatrix, a, b) % A.field.ell
    return k, tuple(x + y for x, y in zip(a, b))


class FreeDecomposition:
    """An element written as sum of central coefficients times basis slots.

    ``slots`` maps a restricted exponent vector r to the coefficient z_r,
    an Element supported on the central subring, such that the original
    element equals sum over r of z_r * x^r.
    """

    __slots__ = ("algebra", "slots")

    def __init__(self, algebra: BasedAlgebra, slots: dict):
        self.algebra = algebra
        self.slots = {r: z for r, z in slots.items() if not z.is_zero()}

    def slot(self, r) -> Element:
        return self.slots.get(r, Element(self.algebra.field, {}))

    def reassemble(self) -> Element:
        from .algcore import multiply

        total = self.algebra.zero()
        for r, z in self.slots.items():
            total = total + multiply(self.algebra, z, self.algebra.monomial(r))
        return total

    def __repr__(self):
        parts = [
            f"[{r}] <- {self.algebra.format_element(z)}"
            for r, z in sorted(self.slots.items())
        ]
        return "; ".join(parts) or "0"


class RestrictedBasisEngine:
    """Free decomposition of an exponent-indexed algebra over its ell-centre.

    Works for any based algebra whose indices are exponent tuples and whose
    ell-th generator powers are central with x^(ell*s) * x^r = x^(ell*s + r)
    up to the oracle's scalar.  Each monomial index e splits as e = r + ell*s
    with r componentwise in [0, ell); slot r receives the central monomial
    x^(ell*s) scaled so that reassembly is exact.
    """

    def __init__(self, algebra: BasedAlgebra, ell: int):
        self.algebra = algebra
        self.ell = ell
        self.width = len(algebra.one)
        self.basis = tuple(itertools.product(range(ell), repeat=self.width))
        # x_i^ell, listed in generator order
        self.subring_generators = tuple(
            tuple(ell if j == i else 0 for j in range(self.width))
            for i in range(self.width)
        )
        self.point_len = self.width

    def subring_contains(self, idx) -> bool:
        return all(e % self.ell == 0 for e in idx)

    def complement(self, b) -> tuple:
        return tuple(self.ell - 1 - e for e in b)

    def top_slot(self) -> tuple:
        return (self.ell - 1,) * self.width

    def decompose(self, y: Element) -> FreeDecomposition:
        A = self.algebra
        fld = A.field
        slots: dict = {}
        for idx, c in y.terms.items():
            r = tuple(e % self.ell for e in idx)
            s = tuple(e - e % self.ell for e in idx)
            prod = A.mul_indices(s, r)
            pidx, pc = prod.single_term()
            if pidx != idx:
                raise DomainError(
                    f"index {idx} does not split over the ell-centre in {A.name}"
                )
            z = c * fld.inv(pc)
            acc = slots.setdefault(r, {})
            acc[s] = (acc.get(s, 0) + z) % fld.p
        return FreeDecomposition(A, {r: Element(fld, acc) for r, acc in slots.items()})

    def eval_index(self, idx, point) -> int:
        """Evaluate the central monomial x^idx at x_i^ell -> point[i]."""
        p = self.algebra.field.p
        val = 1
        for e, lam in zip(idx, point):
            if e:
                val = val * pow(lam % p, e // self.ell, p) % p
        return val

    def poly_degree(self, idx) -> int:
        """Total degree of the central monomial in the evaluation variables."""
        return sum(e // self.ell for e in idx)

    def random_index(self, rng) -> tuple:
        return tuple(rng.randrange(0, 2 * self.ell) for _ in range(self.width))


def restricted_decompose(A: QuantumAffineSpace, y: Element) -> FreeDecomposition:
    """Unique decomposition y = sum of z_r * x^r over restricted monomials."""
    return A.engine().decompose(y)


def frobenius_form(A: QuantumAffineSpace, y: Element) -> Element:
    """Projection onto the slot of x^(ell-1, ..., ell-1); lands in the ell-centre."""
    return restricted_decompose(A, y).slot(A.engine().top_slot())


def standard_cmatrix(n: int) -> tuple[tuple[int, ...], ...]:
    """The default commutation data: x_i x_j = zeta * x_j x_i for i < j."""
    return tuple(
        tuple(1 if i < j else (-1 if i > j else 0) for j in range(n)) for i in range(n)
    )


def make_qas(
    n: int,
    ell: int,
    p: Optional[int] = None,
    cmatrix=None,
    degrees=None,
    seed: int = 0,
    zeta: Optional[int] = None,
) -> QuantumAffineSpace:
    """Convenience constructor with all-ones degrees in Z and default scalars."""
    fld = RootField(p if p is not None else default_prime(ell), ell, zeta=zeta, seed=seed)
    if cmatrix is None:
        cmatrix = standard_cmatrix(n)
    if degrees is None:
        degrees = tuple(GroupElement((1,)) for _ in range(n))
    return QuantumAffineSpace(fld, cmatrix, degrees)


def from_config(cfg, seed: int = 0) -> QuantumAffineSpace:
    """Build quantum affine space from a parsed algebra presentation."""
    fld = RootField(cfg.p, cfg.ell, seed=seed)
    cmatrix = cfg.cmatrix if cfg.cmatrix is not None else standard_cmatrix(len(cfg.names))
    return QuantumAffineSpace(fld, cmatrix, cfg.degrees)


def quantum_weyl(ell: int, p: Optional[int] = None, seed: int = 0) -> BasedAlgebra:
    """The q-Weyl algebra on normal-ordered monomials y^a x^b.

    Defining relation x*y = q*y*x + 1 with q = zeta.  Indices are pairs
    (a, b) meaning y^a x^b; the algebra is filtered by total degree a + b
    over Z.  Right multiplication by y is expanded through
    x^b y = q^b y x^b + [b]_q x^(b-1), which follows from the defining
    relation by induction and is cross-checked against a word-rewriting
    oracle in the tests.
    """
    if ell < 2:
        raise DomainError("the q-Weyl fixture needs ell >= 2")
    fld = RootField(p if p is not None else default_prime(ell), ell, seed=seed)
    qint_cache: dict = {}

    def qint(k: int) -> int:
        if k not in qint_cache:
            qint_cache[k] = fld.qint(k)
        return qint_cache[k]

    def rmul_y(terms: dict) -> dict:
        out: dict = {}
        for (a, b), c in terms.items():
            # (y^a x^b) * y = q^b y^(a+1) x^b + [b]_q y^a x^(b-1)
            top = c * fld.zeta_pow(b) % fld.p
            out[(a + 1, b)] = (out.get((a + 1, b), 0) + top) % fld.p
            if b:
                low = c * qint(b) % fld.p
                out[(a, b - 1)] = (out.get((a, b - 1), 0) + low) % fld.p
        return out

    def mul(i, j):
        (a1, b1), (a2, b2) = i, j
        terms = {(0, b1): 1}
        for _ in range(a2):
            terms = rmul_y(terms)
        shifted = {(a1 + a, b + b2): c for (a, b), c in terms.items()}
        return Element(fld, shifted)

    def index_str(idx):
        a, b = idx
        if a == 0 and b == 0:
            return "1"
        parts = []
        if a:
            parts.append("y" if a == 1 else f"y^{a}")
        if b:
            parts.append("x" if b == 1 else f"x^{b}")
        return "*".join(parts)

    def enumerate_up_to(bound: GroupElement) -> Iterator[tuple]:
        limit = bound.coords[0]
        for a in range(limit + 1):
            for b in range(limit - a + 1):
                yield (a, b)

    return BasedAlgebra(
        field=fld,
        mode="filtered",
        one=(0, 0),
        degree_of=lambda idx: GroupElement((idx[0] + idx[1],)),
        mul_indices=mul,
        index_str=index_str,
        generator_indices=((1, 0), (0, 1)),
        generator_names=("y", "x"),
        name=f"qweyl(ell={ell}, p={fld.p})",
        enumerate_up_to=enumerate_up_to,
    )


def quantum_plane_of_weyl(W: BasedAlgebra) -> QuantumAffineSpace:
    """The quantum plane matching gr of the q-Weyl fixture.

    Generators ordered (y, x) so that indices line up with the fixture's
    (a, b) pairs; the relation x*y = q*y*x forces C[2][1] = 1.
    """
    fld = W.field
    return QuantumAffineSpace(
        fld,
        cmatrix=((0, -1), (1, 0)),
        degrees=(GroupElement((1,)), GroupElement((1,))),
    )
