"""Independent brute-force oracles used to pin expected values.

Everything here works on words in the free algebra and applies single
adjacent rewrite steps until a normal form is reached.  None of it shares
code with the package's closed-form normal-ordering rules; that is the
point.
"""

from frobex.algcore import Element, RootField


def sort_word_oracle(cmatrix, word):
    """Sort a q-commuting word by adjacent swaps.

    One step: ... x_a x_b ... with a > b rewrites to q_{a,b} ... x_b x_a ...
    where q_{a,b} = zeta^C[a][b].  Returns (zeta exponent, sorted word).
    """
    w = list(word)
    exponent = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                exponent += cmatrix[w[i]][w[i + 1]]
                w[i], w[i + 1] = w[i + 1], w[i]
                changed = True
                break
    return exponent, tuple(w)


def exps_to_word(exps):
    out = []
    for i, e in enumerate(exps):
        out.extend([i] * e)
    return tuple(out)


def word_to_exps(word, n):
    exps = [0] * n
    for letter in word:
        exps[letter] += 1
    return tuple(exps)


def qas_product_oracle(cmatrix, ell, a, b):
    """x^a * x^b via free-algebra sorting; returns (exponent mod ell, a + b)."""
    n = len(cmatrix)
    word = exps_to_word(a) + exps_to_word(b)
    exponent, sorted_word = sort_word_oracle(cmatrix, word)
    return exponent % ell, word_to_exps(sorted_word, n)


# letters for the q-Weyl oracle: 0 = y, 1 = x; normal order is all y first
def qweyl_word_oracle(fld: RootField, word) -> dict:
    """Expand a word in x, y using x*y -> q*y*x + 1, one redex at a time.

    Returns the normal-ordered dictionary {(a, b): coeff} meaning
    sum of coeff * y^a x^b.  Exponential in the number of inversions,
    fine at test sizes.
    """
    result: dict = {}
    stack = [(1, tuple(word))]
    while stack:
        coeff, w = stack.pop()
        pos = next((i for i in range(len(w) - 1) if w[i] == 1 and w[i + 1] == 0), None)
        if pos is None:
            a = sum(1 for letter in w if letter == 0)
            b = len(w) - a
            result[(a, b)] = (result.get((a, b), 0) + coeff) % fld.p
            continue
        swapped = w[:pos] + (0, 1) + w[pos + 2:]
        dropped = w[:pos] + w[pos + 2:]
        stack.append((coeff * fld.zeta % fld.p, swapped))
        stack.append((coeff, dropped))
    return {k: v for k, v in result.items() if v}


def qweyl_product_oracle(fld: RootField, i, j) -> Element:
    """Product of normal-ordered q-Weyl monomials via word rewriting."""
    (a1, b1), (a2, b2) = i, j
    word = (0,) * a1 + (1,) * b1 + (0,) * a2 + (1,) * b2
    return Element(fld, qweyl_word_oracle(fld, word))
