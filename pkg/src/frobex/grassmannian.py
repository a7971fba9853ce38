"""The graded quantum Grassmannian of 2-planes in 4-space at a root of unity.

Six generators x1..x6 (the images of the quantum Pluecker coordinates
[12], [13], [23], [14], [24], [34]) satisfy q-commutation relations
x_i x_j = zeta^(s(i,j)) x_j x_i together with one straightening relation
for the single incomparable pair,

    x3 * x4  =  zeta^t * x2 * x5.

Words rewrite to scalar multiples of standard monomials: sorted words never
containing both x3 and x4, indexed by exponent 6-tuples with k3 * k4 = 0.
Both rewrite rules strictly decrease a word in the (length-preserving)
lexicographic order on letter sequences, so the system terminates for any
scalar configuration; confluence additionally requires the critical-pair
closure condition

    s(a,3) + s(a,4)  ==  s(a,2) + s(a,5)   (mod ell)   for every a,

obtained by resolving the overlaps of the straightening rule with the
swaps.  It is enforced at construction; the concrete values of s and t are
configuration, not facts, and every conclusion drawn here (the census and
the non-Frobenius verdict) is independent of them.

The census grading puts x2, x4 in degree 1 and the other four generators in
degree 2; the distinguished free-module basis over the ell-centre consists
of the standard monomials with all exponents below ell that satisfy
k2 + ki < ell or ki + k5 < ell (ki the exponent of whichever of x3, x4 is
present).  Its degree multiset fails the symmetry obstruction for every
ell >= 2, which is the refutation this module certifies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .algcore import DEFAULT_STEP_BUDGET, BasedAlgebra, Element, RootField
from .errors import BudgetExceeded, DimensionMismatch, DomainError
from .grpdeg import DegreeMultiset, GroupElement, multiset_symmetry_witness

N_GENS = 6
CENSUS_DEGREES = (2, 1, 2, 1, 2, 2)
# 0-based positions of the straightening pattern x3 x4 -> zeta^t x2 x5
_LHS = (2, 3)
_RHS = (1, 4)


def _bilinear_s_matrix(f, g) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(f[i] * g[j] - f[j] * g[i] for j in range(N_GENS)) for i in range(N_GENS)
    )


def default_s_matrix() -> tuple[tuple[int, ...], ...]:
    """Default commutation exponents, built from the census weights and the
    generator positions; the bilinear shape satisfies the closure condition
    for every ell because both weight vectors balance the straightening
    relation (f3 + f4 == f2 + f5)."""
    return _bilinear_s_matrix(CENSUS_DEGREES, (1, 2, 3, 4, 5, 6))


def alternate_s_matrix() -> tuple[tuple[int, ...], ...]:
    """A second, inequivalent configuration used for scalar-independence
    checks."""
    return _bilinear_s_matrix((1, 1, 1, 1, 1, 1), (0, 1, 1, 2, 2, 3))


class GrGrassmannian:
    """Rewriting presentation of the graded quantum Grassmannian Gr(2,4)."""

    def __init__(self, fld: RootField, s_matrix=None, t_exp: int = 1):
        self.field = fld
        self.s = tuple(
            tuple(int(v) for v in row)
            for row in (s_matrix if s_matrix is not None else default_s_matrix())
        )
        self.t_exp = int(t_exp)
        self._validate()
        self._algebra = self._build_algebra()

    def _validate(self):
        if len(self.s) != N_GENS or any(len(r) != N_GENS for r in self.s):
            raise DimensionMismatch("commutation matrix must be 6x6")
        for i in range(N_GENS):
            if self.s[i][i] != 0:
                raise DomainError("commutation matrix has nonzero diagonal")
            for j in range(N_GENS):
                if self.s[i][j] != -self.s[j][i]:
                    raise DomainError("commutation matrix is not antisymmetric")
        # the straightening relation must be homogeneous for the census grading
        lhs_deg = CENSUS_DEGREES[_LHS[0]] + CENSUS_DEGREES[_LHS[1]]
        rhs_deg = CENSUS_DEGREES[_RHS[0]] + CENSUS_DEGREES[_RHS[1]]
        if lhs_deg != rhs_deg:
            raise DomainError("straightening relation is not degree-homogeneous")
        ell = self.field.ell
        for a in range(N_GENS):
            lhs = self.s[a][_LHS[0]] + self.s[a][_LHS[1]]
            rhs = self.s[a][_RHS[0]] + self.s[a][_RHS[1]]
            if (lhs - rhs) % ell != 0:
                raise DomainError(
                    f"commutation exponents break confluence at generator x{a + 1}: "
                    f"s({a + 1},3)+s({a + 1},4) != s({a + 1},2)+s({a + 1},5) mod {ell}"
                )

    def _build_algebra(self) -> BasedAlgebra:
        fld = self.field

        def mul(i, j):
            k, exps = normal_form_word(self, word_of(i) + word_of(j))
            return Element(fld, {exps: fld.zeta_pow(k)})

        names = tuple(f"x{i + 1}" for i in range(N_GENS))

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

        return BasedAlgebra(
            field=fld,
            mode="graded",
            one=(0,) * N_GENS,
            degree_of=lambda exps: GroupElement(
                (sum(e * w for e, w in zip(exps, CENSUS_DEGREES)),)
            ),
            mul_indices=mul,
            index_str=index_str,
            generator_indices=tuple(
                tuple(1 if j == i else 0 for j in range(N_GENS)) for i in range(N_GENS)
            ),
            generator_names=names,
            name=f"grGr24(ell={fld.ell}, p={fld.p})",
        )

    def algebra(self) -> BasedAlgebra:
        return self._algebra

    def __repr__(self):
        return self._algebra.name


def word_of(exps) -> tuple[int, ...]:
    """The sorted letter sequence of a monomial index (letters are 0-based)."""
    out = []
    for i, e in enumerate(exps):
        out.extend([i] * e)
    return tuple(out)


def exponents_of(word) -> tuple[int, ...]:
    exps = [0] * N_GENS
    for letter in word:
        exps[letter] += 1
    return tuple(exps)


def _redexes(w: list) -> list[tuple[int, str]]:
    out = []
    for i in range(len(w) - 1):
        if (w[i], w[i + 1]) == _LHS:
            out.append((i, "straighten"))
        elif w[i] > w[i + 1]:
            out.append((i, "swap"))
    return out


def normal_form_word(
    G: GrGrassmannian,
    word,
    rng: Optional[random.Random] = None,
    budget: int = DEFAULT_STEP_BUDGET,
) -> tuple[int, tuple[int, ...]]:
    """Rewrite a word to its standard monomial; returns (zeta exponent, index).

    Deterministic strategy: straightening redexes first, then the leftmost
    swap.  Passing an rng picks a uniformly random redex at every step,
    which the confluence tests use to show strategy independence.  Both
    rules strictly decrease the letter sequence lexicographically, so the
    loop terminates; the budget guards against presentation bugs rather
    than genuine divergence, and overrunning it is an error, never a
    silent truncation.
    """
    w = list(word)
    if any(not (0 <= letter < N_GENS) for letter in w):
        raise DomainError(f"letters must be in [0, {N_GENS})")
    zeta_exp = 0
    steps = 0
    while True:
        redexes = _redexes(w)
        if not redexes:
            return zeta_exp % G.field.ell, exponents_of(w)
        if steps >= budget:
            raise BudgetExceeded(
                f"no normal form after {budget} steps (word length {len(word)})"
            )
        if rng is not None:
            i, kind = redexes[rng.randrange(len(redexes))]
        else:
            i, kind = next(
                ((j, k) for j, k in redexes if k == "straighten"), redexes[0]
            )
        if kind == "straighten":
            zeta_exp += G.t_exp
            w[i], w[i + 1] = _RHS
        else:
            zeta_exp += G.s[w[i]][w[i + 1]]
            w[i], w[i + 1] = w[i + 1], w[i]
        steps += 1


def normal_form(
    G: GrGrassmannian,
    word,
    rng: Optional[random.Random] = None,
    budget: int = DEFAULT_STEP_BUDGET,
) -> Element:
    k, exps = normal_form_word(G, word, rng=rng, budget=budget)
    return Element(G.field, {exps: G.field.zeta_pow(k)})


def is_standard(exps) -> bool:
    return exps[_LHS[0]] == 0 or exps[_LHS[1]] == 0


def census_degree(exps) -> int:
    return sum(e * w for e, w in zip(exps, CENSUS_DEGREES))


def ell_centre_module_basis(ell: int) -> tuple[tuple[int, ...], ...]:
    """The distinguished free-module basis over the ell-centre.

    Standard monomials with all exponents in [0, ell) subject to
    k2 + ki < ell or ki + k5 < ell, where ki is the exponent of whichever
    of x3, x4 occurs; the two families overlap exactly when k3 = k4 = 0,
    which the set construction deduplicates.
    """
    if ell < 2:
        raise DomainError("the basis enumeration needs ell >= 2")
    out = set()
    for mid in _LHS:  # x3 or x4
        for k1 in range(ell):
            for k2 in range(ell):
                for ki in range(ell):
                    for k5 in range(ell):
                        if not (k2 + ki < ell or ki + k5 < ell):
                            continue
                        for k6 in range(ell):
                            exps = [k1, k2, 0, 0, k5, k6]
                            exps[mid] = ki
                            out.add(tuple(exps))
    return tuple(sorted(out))


def standard_monomials_by_degree(cutoff: int) -> dict[int, list[tuple[int, ...]]]:
    """All standard monomials of census degree at most cutoff, by degree."""
    buckets: dict[int, list] = {d: [] for d in range(cutoff + 1)}

    def rec(i: int, remaining: int, prefix: tuple):
        if i == N_GENS:
            exps = prefix
            if is_standard(exps):
                buckets[cutoff - remaining].append(exps)
            return
        w = CENSUS_DEGREES[i]
        for e in range(remaining // w + 1):
            rec(i + 1, remaining - e * w, prefix + (e,))

    rec(0, cutoff, ())
    for d in buckets:
        buckets[d].sort()
    return buckets


def central_standard_monomials(ell: int, cutoff: int) -> list[tuple[int, ...]]:
    """Standard monomials of the ell-centre (all exponents multiples of ell)
    with census degree at most cutoff."""
    out = []
    inner = standard_monomials_by_degree(cutoff // ell)
    for d, monos in inner.items():
        for m in monos:
            out.append(tuple(ell * e for e in m))
    return sorted(out)


@dataclass
class CensusReport:
    ell: int
    basis_size: int
    counts: dict  # census degree -> number of basis elements
    max_degree: int
    symmetry_d: Optional[int]
    verdict: str
    paper_agreement: dict
    s_matrix: tuple = ()
    t_exp: Optional[int] = None

    def format(self) -> str:
        lines = [
            f"ell: {self.ell}",
            f"basis_size: {self.basis_size}",
            f"max_degree: {self.max_degree}",
        ]
        for d in sorted(self.counts):
            lines.append(f"count[{d}]: {self.counts[d]}")
        lines.append(
            f"symmetry_d: {self.symmetry_d if self.symmetry_d is not None else 'none'}"
        )
        lines.append(f"verdict: {self.verdict}")
        for key in sorted(self.paper_agreement):
            lines.append(
                f"paper_agreement[{key}]: "
                f"{'agree' if self.paper_agreement[key] else 'DISAGREE'}"
            )
        return "\n".join(lines)


def degree_census(
    ell: int, s_matrix=None, t_exp: Optional[int] = None
) -> CensusReport:
    """Count the distinguished basis by census degree and test the symmetry
    obstruction.

    The basis set, hence the census and the verdict, does not involve the
    commutation scalars at all; the optional configuration is recorded for
    provenance so reports made under different scalars can be compared.
    The agreement flags compare three published counts against the
    enumeration: two elements in degree 1, top degree 8(ell-1), and an
    empty level just below the top.  The verdict rests only on the witness
    search over the full multiset, so a wrong published count is flagged
    without affecting the conclusion.
    """
    basis = ell_centre_module_basis(ell)
    counts: dict[int, int] = {}
    for exps in basis:
        d = census_degree(exps)
        counts[d] = counts.get(d, 0) + 1
    max_degree = max(counts)
    ms = DegreeMultiset.from_counts(
        {GroupElement((d,)): m for d, m in counts.items()}
    )
    witness = multiset_symmetry_witness(ms)
    verdict = "not-frobenius" if witness is None else "inconclusive"
    top = 8 * (ell - 1)
    agreement = {
        "degree_1_count_is_2": counts.get(1, 0) == 2,
        "max_degree_is_8(ell-1)": max_degree == top,
        "no_elements_of_degree_8(ell-1)-1": counts.get(top - 1, 0) == 0,
    }
    return CensusReport(
        ell=ell,
        basis_size=len(basis),
        counts=counts,
        max_degree=max_degree,
        symmetry_d=None if witness is None else witness.coords[0],
        verdict=verdict,
        paper_agreement=agreement,
        s_matrix=tuple(s_matrix) if s_matrix is not None else (),
        t_exp=t_exp,
    )


@dataclass
class FreenessReport:
    ok: bool
    cutoff: int
    mode: str
    per_degree: dict  # degree -> (pairs, standard monomials)
    counterexample: Optional[str] = None


def verify_freeness_window(
    G: GrGrassmannian, cutoff: int, mode: str = "match"
) -> FreenessReport:
    """Check degree by degree up to the cutoff that central standard
    monomials times basis elements sweep out all standard monomials.

    mode 'match' demands an explicit bijection (products are computed with
    the rewriting oracle and collisions are reported); mode 'count' only
    compares cardinalities per degree.
    """
    ell = G.field.ell
    basis = ell_centre_module_basis(ell)
    basis_by_deg: dict[int, list] = {}
    for b in basis:
        basis_by_deg.setdefault(census_degree(b), []).append(b)
    central = central_standard_monomials(ell, cutoff)
    central_by_deg: dict[int, list] = {}
    for z in central:
        central_by_deg.setdefault(census_degree(z), []).append(z)
    std = standard_monomials_by_degree(cutoff)

    per_degree = {}
    for d in range(cutoff + 1):
        pairs = []
        for dz, zs in central_by_deg.items():
            if dz > d:
                continue
            for b in basis_by_deg.get(d - dz, ()):
                for z in zs:
                    pairs.append((z, b))
        targets = std[d]
        per_degree[d] = (len(pairs), len(targets))
        if len(pairs) != len(targets):
            return FreenessReport(
                False, cutoff, mode, per_degree,
                f"degree {d}: {len(pairs)} products vs {len(targets)} standard monomials",
            )
        if mode == "match":
            seen: dict = {}
            for z, b in pairs:
                _, target = normal_form_word(G, word_of(z) + word_of(b))
                if target in seen:
                    return FreenessReport(
                        False, cutoff, mode, per_degree,
                        f"degree {d}: {seen[target]} and {(z, b)} both reduce to {target}",
                    )
                seen[target] = (z, b)
            if set(seen) != set(targets):
                missing = sorted(set(targets) - set(seen))[0]
                return FreenessReport(
                    False, cutoff, mode, per_degree,
                    f"degree {d}: standard monomial {missing} is not reached",
                )
    return FreenessReport(True, cutoff, mode, per_degree)
