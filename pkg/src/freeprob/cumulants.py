"""Free cumulant calculus over non-crossing partitions.

Provides the moment <-> cumulant conversions, cumulants with products as
arguments (sums restricted by the interval-join condition), moments of
R-diagonal words from their determining cumulant sequence, and the symbolic
cumulant sequence of the shifted circular square modulus |lam - c|^2.

Scalars are exact: Fractions, or ring.Poly for symbolic identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import noncrossing as nc
from .ring import Poly

DEFAULT_ORDER_CAP = 8


class OrderCapError(ValueError):
    """A cumulant beyond the declared maximum order was requested."""


@dataclass(frozen=True)
class LinComb:
    """Formal linear combination of letters; cumulants extend multilinearly."""

    parts: tuple[tuple[str, object], ...]

    @staticmethod
    def of(mapping: Mapping[str, object]) -> "LinComb":
        return LinComb(tuple(sorted(mapping.items())))

    def items(self):
        return self.parts


def _letter_terms(letter):
    """Normalize a word entry to [(pure_letter, coefficient), ...]."""
    if isinstance(letter, LinComb):
        return list(letter.items())
    return [(letter, 1)]


class CumulantFunctional:
    """Multilinear free-cumulant functional given by a pure-word table.

    ``table`` maps tuples of pure letters to exact scalars; absent words have
    cumulant zero.  ``max_order`` caps the block sizes the functional is
    defined for.  Blocks whose size admits no non-zero table entry are pruned
    from partition sums.
    """

    def __init__(self, table: Mapping[tuple, object], max_order: int = DEFAULT_ORDER_CAP):
        self.table = dict(table)
        self.max_order = max_order
        self.nonzero_orders = sorted({len(w) for w, v in self.table.items() if v != 0})

    @classmethod
    def from_univariate(cls, letter: str, kappas: Sequence, max_order: int | None = None):
        """Single self-adjoint variable with cumulants kappa_1, kappa_2, ..."""
        max_order = max_order if max_order is not None else len(kappas)
        table = {
            (letter,) * (n + 1): kappas[n]
            for n in range(min(len(kappas), max_order))
        }
        return cls(table, max_order)

    @classmethod
    def circular(cls, max_order: int = DEFAULT_ORDER_CAP):
        """Standard circular letters c, c*: the only non-zero cumulants are
        kappa_2[c, c*] = kappa_2[c*, c] = 1."""
        return cls({("c", "c*"): Fraction(1), ("c*", "c"): Fraction(1)}, max_order)

    def block_cumulant(self, word: Sequence):
        """kappa_|word|[word], expanding linear-combination letters."""
        if len(word) > self.max_order:
            raise OrderCapError(
                f"cumulant order {len(word)} beyond declared maximum {self.max_order}"
            )
        total = 0
        stack = [((), 1)]
        for letter in word:
            new_stack = []
            for prefix, coeff in stack:
                for pure, c in _letter_terms(letter):
                    new_stack.append((prefix + (pure,), coeff * c))
            stack = new_stack
        for pure_word, coeff in stack:
            val = self.table.get(pure_word, 0)
            if val != 0:
                total = total + coeff * val
        return total


def kappa_pi(cf: CumulantFunctional, blocks, word: Sequence):
    """Product of block cumulants of ``word`` over the given blocks (1-based)."""
    prod = 1
    for block in blocks:
        val = cf.block_cumulant([word[i - 1] for i in block])
        if val == 0:
            return 0
        prod = prod * val
    return prod


def moment_from_cumulants(cf: CumulantFunctional, word: Sequence, bound: int = nc.ENUMERATION_BOUND):
    """Mixed moment as the sum of kappa_pi over all of NC(len(word))."""
    n = len(word)
    if n > bound:
        raise nc.EnumerationBoundError(f"word length {n} beyond enumeration bound {bound}")
    allowed = [s for s in cf.nonzero_orders if s <= n]
    total = 0
    for blocks in nc.enumerate_nc_blocks(range(1, n + 1), allowed):
        total = total + kappa_pi(cf, blocks, word)
    return total


def _gap_products(moments_with_unit, s, total):
    """Sum over compositions total = g_1+...+g_s (g_i >= 0) of prod m_{g_i}."""
    # moments_with_unit[0] = 1; dynamic program over the s gaps
    table = [0] * (total + 1)
    table[0] = 1
    for _ in range(s):
        new = [0] * (total + 1)
        for acc in range(total + 1):
            val = table[acc]
            if val == 0:
                continue
            for g in range(0, total - acc + 1):
                m = moments_with_unit[g]
                if m == 0:
                    continue
                new[acc + g] = new[acc + g] + val * m
        table = new
    return table[total]


def free_moments_from_cumulants(kappas: Sequence) -> list:
    """Moments m_1..m_K of a single variable with free cumulants kappa_1..kappa_K.

    Uses the first-block recursion m_n = sum_s kappa_s * sum over gap
    compositions of products of lower moments; exact in any ring.
    """
    K = len(kappas)
    m = [1]  # m_0
    for n in range(1, K + 1):
        total = 0
        for s in range(1, n + 1):
            k = kappas[s - 1]
            if k == 0:
                continue
            total = total + k * _gap_products(m, s, n - s)
        m.append(total)
    return m[1:]


def cumulants_from_moments(moments: Sequence) -> list:
    """Free cumulants kappa_1..kappa_K from moments m_1..m_K (triangular solve).

    Round-trips exactly with free_moments_from_cumulants.
    """
    K = len(moments)
    kappas: list = []
    m = [1] + list(moments)
    for n in range(1, K + 1):
        rest = 0
        for s in range(1, n):
            k = kappas[s - 1]
            if k == 0:
                continue
            rest = rest + k * _gap_products(m, s, n - s)
        kappas.append(moments[n - 1] - rest)
    return kappas


def product_cumulant(groups: nc.IntervalPartition, cf: CumulantFunctional, word: Sequence):
    """kappa_n of grouped products: the sum of kappa_pi over pi in NC(|word|)
    whose join with the interval partition is the full partition."""
    n = len(word)
    if groups.total != n:
        raise ValueError(f"interval sizes total {groups.total} != word length {n}")
    allowed = [s for s in cf.nonzero_orders if s <= n]
    total = 0
    for blocks in nc.enumerate_nc_blocks(range(1, n + 1), allowed):
        part = nc.SetPartition.of(n, blocks)
        if not nc.join_connects(part, groups):
            continue
        total = total + kappa_pi(cf, blocks, word)
    return total


# ---------------------------------------------------------------------------
# R-diagonal models
# ---------------------------------------------------------------------------


@dataclass
class OperatorModel:
    """An R-diagonal operator described by its determining cumulants.

    alpha[l-1] holds the order-2l alternating cumulant of the operator; the
    normalization fixes alpha_1 = 1.  Optionally carries the even free
    cumulants of the symmetrized modulus and a spectral measure for a a*.
    """

    name: str
    alpha: tuple[Fraction, ...]
    mu_even_cumulants: tuple[Fraction, ...] | None = None
    aa_star_measure: object | None = None
    r_mu_closed_form: bool = False  # True when R_mu(z) = z exactly (semicircle)

    def __post_init__(self):
        self.alpha = tuple(Fraction(a) for a in self.alpha)
        if not self.alpha or self.alpha[0] != 1:
            raise ValueError("normalization requires alpha_1 = 1")
        if self.mu_even_cumulants is not None:
            self.mu_even_cumulants = tuple(Fraction(k) for k in self.mu_even_cumulants)
            if self.mu_even_cumulants[0] != 1:
                raise ValueError("normalization requires kappa_2(mu) = 1")
            if len(self.alpha) >= 2 and len(self.mu_even_cumulants) >= 2:
                if self.mu_even_cumulants[1] != self.alpha[1]:
                    raise ValueError("kappa_4(mu) must equal alpha_2 (both are v - 1)")

    @property
    def order(self) -> int:
        return len(self.alpha)

    @property
    def v(self) -> Fraction:
        """Fourth-moment variance statistic: ||a||_4^4 - 1 = alpha_2 + 1."""
        if len(self.alpha) < 2:
            raise ValueError("model supplies no alpha_2")
        return self.alpha[1] + 1

    def alpha_at(self, ell: int) -> Fraction:
        if ell < 1 or ell > len(self.alpha):
            raise OrderCapError(f"alpha_{ell} not supplied (order {len(self.alpha)})")
        return self.alpha[ell - 1]

    def mu_cumulant(self, two_n: int) -> Fraction:
        """kappa_{2n} of the symmetrized modulus."""
        if self.mu_even_cumulants is None:
            raise ValueError("model supplies no modulus cumulants")
        idx = two_n // 2 - 1
        if two_n % 2 or idx < 0 or idx >= len(self.mu_even_cumulants):
            raise OrderCapError(f"kappa_{two_n}(mu) not supplied")
        return self.mu_even_cumulants[idx]

    def aa_star_moment(self, n: int) -> Fraction:
        """phi((a a*)^n) from the determining cumulants."""
        return rdiag_moment(self, nc.AlternationPattern.of((1, 1) * n))

    def check_measure_consistency(self, depth: int | None = None, tol: float = 1e-6):
        """Moments of the attached a a* measure must match the alpha route."""
        if self.aa_star_measure is None:
            return
        depth = depth if depth is not None else self.order
        for n in range(1, depth + 1):
            combinatorial = float(self.aa_star_moment(n))
            measured = self.aa_star_measure.moment(n)
            if abs(measured - combinatorial) > tol * max(1.0, abs(combinatorial)):
                raise ValueError(
                    f"{self.name}: phi((aa*)^{n}) mismatch "
                    f"measure={measured!r} cumulants={combinatorial!r}"
                )


def rdiag_moment(model: OperatorModel, pat: nc.AlternationPattern):
    """Moment of the R-diagonal word given by ``pat``: the sum over alternating
    non-crossing partitions of products of determining cumulants.

    Zero when the pattern is unbalanced; the empty pattern gives phi(1) = 1.
    """
    if not pat.is_balanced():
        return Fraction(0)
    total = Fraction(0)
    zero_orders = {2 * (ell + 1) for ell, a in enumerate(model.alpha) if a == 0}
    for part in nc.enumerate_alternating(pat):
        prod = Fraction(1)
        for block in part.blocks:
            size = len(block)
            if size in zero_orders:
                prod = Fraction(0)
                break
            prod *= model.alpha_at(size // 2)
        total += prod
    return total


def alpha_from_aa_star_moments(moments: Sequence[Fraction]) -> list[Fraction]:
    """Invert phi((a a*)^n) = sum over alternating NC of alpha products.

    Triangular: the full 2n-block contributes alpha_n once; everything else
    uses lower alphas.
    """
    alphas: list[Fraction] = []
    for n, target in enumerate(Fraction(m) for m in moments):
        n += 1
        pat = nc.AlternationPattern.of((1, 1) * n)
        partial = Fraction(0)
        for part in nc.enumerate_alternating(pat):
            sizes = part.block_sizes()
            if sizes == [2 * n]:
                continue  # the alpha_n term we are solving for
            prod = Fraction(1)
            for size in sizes:
                prod *= alphas[size // 2 - 1]
            partial += prod
        alphas.append(target - partial)
    return alphas


# ---------------------------------------------------------------------------
# The shifted circular square modulus, combinatorial route
# ---------------------------------------------------------------------------

LAM = Poly.var("lam")


def _shift_letters():
    """Letters of |lam - c|^2 = lam^2 + a1 + a2 with a1 = -lam(c + c*), a2 = c c*.

    Returns (word for a1, word for a2): a1 is a single combination letter,
    a2 expands to the two-letter product word (c, c*).
    """
    a1 = LinComb.of({"c": -LAM, "c*": -LAM})
    return (a1,), ("c", "c*")


def circular_shift_cumulants(max_n: int, bound: int = nc.ENUMERATION_BOUND) -> list[Poly]:
    """Exact cumulant sequence of |lam - c|^2 as polynomials in lam.

    kappa_n is assembled by expanding multilinearly over all choice strings in
    {1, 2}^n and summing interval-connected partition cumulants of the
    expanded c / c* word.  The known closed form is 1 + n lam^2 for n >= 2 and
    1 + lam^2 for n = 1; tests assert this, the function does not.
    """
    cf = CumulantFunctional.circular(max_order=2 * max_n)
    word1, word2 = _shift_letters()
    out: list[Poly] = []
    for n in range(1, max_n + 1):
        total = Poly()
        for bits in range(2**n):
            string = [(bits >> i) & 1 for i in range(n)]
            word: list = []
            sizes: list[int] = []
            for b in string:
                part = word2 if b else word1
                word.extend(part)
                sizes.append(len(part))
            if len(word) > bound:
                raise nc.EnumerationBoundError("expansion exceeds enumeration bound")
            val = product_cumulant(nc.IntervalPartition.of(sizes), cf, word)
            total = total + Poly.coerce(val)
        if n == 1:
            total = total + LAM * LAM  # the constant shift only moves the mean
        out.append(total)
    return out


def shift_string_cumulant(string: Sequence[int], bound: int = nc.ENUMERATION_BOUND) -> Poly:
    """Single choice-string contribution kappa_n[a_{i_1}, ..., a_{i_n}] in the
    circular-shift expansion; ``string`` entries are 1 or 2."""
    cf = CumulantFunctional.circular(max_order=2 * len(string))
    word1, word2 = _shift_letters()
    word: list = []
    sizes: list[int] = []
    for b in string:
        part = word2 if b == 2 else word1
        word.extend(part)
        sizes.append(len(part))
    if len(word) > bound:
        raise nc.EnumerationBoundError("expansion exceeds enumeration bound")
    return Poly.coerce(product_cumulant(nc.IntervalPartition.of(sizes), cf, word))
