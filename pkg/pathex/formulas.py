"""
Closed-form Turán numbers for paths and linear forests.

Two bracket functions underlie every value here. For ``m >= l >= 3`` write
``n = (m-1) + t(l-1) + r`` with ``0 <= r < l-1``; then

    [n, m, l] = C(m-1, 2) + t*C(l-1, 2) + C(r, 2)

and ``[n, m, l] = C(n, 2)`` when ``n <= m-1``. For ``n >= s >= 1``

    [n, s] = C(s-1, 2) + (s-1)(n-s+1)

counts the edges of ``K_{s-1}`` joined to an independent set of ``n-s+1`` vertices.
All arithmetic is exact integer arithmetic.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import CertificationError, DomainError

logger = logging.getLogger("pathex.formulas")

#: Label of the clique-sum branch of ex(n, 2P7)
BRACKET_2P7_LABEL = "[n,14,7]"
#: Label of the linear branch of ex(n, 2P7)
LINEAR_2P7_LABEL = "5n-14"


def binom2(a: int) -> int:
    """
    :returns: C(a, 2), with C(0, 2) = C(1, 2) = 0
    """
    if a < 0:
        raise DomainError(f"C({a}, 2) is undefined", "a >= 0")
    return a * (a - 1) // 2


@dataclass(frozen=True)
class PathForest:
    """
    The linear forest ``P_{k1} ∪ ... ∪ P_{km}``. Orders are vertex counts and are
    kept sorted non-increasing; duplicates are allowed.
    """

    orders: Tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(sorted(self.orders, reverse=True))
        if not orders:
            raise DomainError("a path forest needs at least one path", "m >= 1")
        if orders[-1] < 2:
            raise DomainError(f"path orders must be at least 2: {orders}", "k_i >= 2")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def of(cls, *orders: int) -> "PathForest":
        return cls(tuple(orders))

    @classmethod
    def parse(cls, text: str) -> "PathForest":
        """
        Parse the ``k1,k2,...`` flag syntax. Order does not matter.
        """
        try:
            orders = tuple(int(item) for item in text.split(",") if item.strip())
        except ValueError as err:
            raise DomainError(f"invalid forest {text!r}: {err}", "k1,k2,...") from err
        return cls(orders)

    @property
    def m(self) -> int:
        return len(self.orders)

    @property
    def total(self) -> int:
        """
        The number of vertices of the forest, ``Σ k_i``.
        """
        return sum(self.orders)

    @property
    def half_sum(self) -> int:
        """
        ``s = Σ floor(k_i / 2)``
        """
        return sum(k // 2 for k in self.orders)

    @property
    def odd_count(self) -> int:
        return sum(k % 2 for k in self.orders)

    @property
    def all_odd(self) -> bool:
        return self.odd_count == self.m

    def partial_sums(self) -> List[int]:
        sums = []
        running = 0
        for k in self.orders:
            running += k
            sums.append(running)
        return sums

    def flag(self) -> str:
        return ",".join(str(k) for k in self.orders)

    def __str__(self) -> str:
        parts = []
        for k in sorted(set(self.orders), reverse=True):
            count = self.orders.count(k)
            parts.append(f"{count}P{k}" if count > 1 else f"P{k}")
        return "+".join(parts)


@dataclass(frozen=True)
class BracketDecomposition:
    """
    The decomposition ``n = (m-1) + t(l-1) + r`` behind ``[n, m, l]``.
    """

    n: int
    m: int
    l: int  # noqa: E741
    t: int
    r: int
    small_case: bool

    @property
    def value(self) -> int:
        if self.small_case:
            return binom2(self.n)
        return binom2(self.m - 1) + self.t * binom2(self.l - 1) + binom2(self.r)


def _check_bracket_args(n: int, m: int, l: int) -> None:  # noqa: E741
    if l < 3:
        raise DomainError(f"[{n},{m},{l}] requires l >= 3", "l >= 3")
    if m < l:
        raise DomainError(f"[{n},{m},{l}] requires m >= l", "m >= l")
    if n < 0:
        raise DomainError(f"[{n},{m},{l}] requires n >= 0", "n >= 0")


def decompose_bracket(n: int, m: int, l: int) -> BracketDecomposition:  # noqa: E741
    _check_bracket_args(n, m, l)
    if n <= m - 1:
        return BracketDecomposition(n, m, l, 0, n, True)

    t, r = divmod(n - (m - 1), l - 1)
    return BracketDecomposition(n, m, l, t, r, False)


def bracket_nml(n: int, m: int, l: int) -> int:  # noqa: E741
    """
    :returns: ``[n, m, l]``
    :raises DomainError: if ``l < 3`` or ``m < l``
    """
    return decompose_bracket(n, m, l).value


def bracket_s(n: int, s: int) -> int:
    """
    :returns: ``[n, s] = C(s-1, 2) + (s-1)(n-s+1)``
    :raises DomainError: if ``n < s`` or ``s < 1``
    """
    if s < 1:
        raise DomainError(f"[{n},{s}] requires s >= 1", "s >= 1")
    if n < s:
        raise DomainError(f"[{n},{s}] requires n >= s", "n >= s")
    return binom2(s - 1) + (s - 1) * (n - s + 1)


def bracket_ns(n: int, forest: PathForest) -> int:
    """
    :returns: ``[n, s]`` with ``s = Σ floor(k_i / 2)``
    """
    return bracket_s(n, forest.half_sum)


class Term(NamedTuple):
    label: str
    value: int


@dataclass(frozen=True)
class TuranValue:
    """
    A Turán number together with the terms of the maximum it was taken over.
    """

    #: the extremal edge count
    value: int
    #: label of the first term attaining the maximum
    argmax: str
    #: at least two terms attain the maximum
    tie: bool
    terms: Tuple[Term, ...]
    #: the value is conjectural rather than proven
    conjectural: bool = False
    #: whether the value is known to apply at this n; None when the range of
    #: validity is only "n sufficiently large"
    valid: Optional[bool] = True

    @classmethod
    def from_terms(
        cls,
        terms: Sequence[Term],
        conjectural: bool = False,
        valid: Optional[bool] = True,
    ) -> "TuranValue":
        if not terms:
            raise CertificationError("a Turán value needs at least one term")

        best = max(term.value for term in terms)
        winners = [term.label for term in terms if term.value == best]
        return cls(
            value=best,
            argmax=winners[0],
            tie=len(winners) > 1,
            terms=tuple(terms),
            conjectural=conjectural,
            valid=valid,
        )

    @property
    def winners(self) -> List[str]:
        return [term.label for term in self.terms if term.value == self.value]


class ForestMode(Enum):
    #: proven evaluator for forests with at most one odd order (no additive constant)
    THEOREM7 = "theorem7"
    #: conjectured evaluator for general forests (adds c when every order is odd)
    CONJECTURE = "conjecture"


def corollary_path_value(n: int, k: int) -> int:
    """
    Closed form of ``ex(n, P_k)`` for ``k >= 3``:
    ``(n(k-2) + r(r-k+1)) / 2`` with ``r = n mod (k-1)``.
    """
    if k < 3:
        raise DomainError(f"closed form requires k >= 3, got {k}", "k >= 3")
    r = n % (k - 1)
    return (n * (k - 2) + r * (r - k + 1)) // 2


def ex_path(n: int, k: int) -> TuranValue:
    """
    :returns: ``ex(n, P_k) = [n, k, k]``; ``0`` when ``k = 2``
    :raises CertificationError: if the bracket and the closed form disagree
    """
    if k < 2:
        raise DomainError(f"path order must be at least 2, got {k}", "k >= 2")
    if n < 0:
        raise DomainError(f"vertex count must be non-negative, got {n}", "n >= 0")

    if k == 2:
        return TuranValue.from_terms([Term("edgeless", 0)])

    value = bracket_nml(n, k, k)
    closed = corollary_path_value(n, k)
    if value != closed:
        raise CertificationError(
            f"[{n},{k},{k}] = {value} disagrees with the closed form {closed}"
        )
    return TuranValue.from_terms([Term(f"[n,{k},{k}]", value)])


def ex_connected_path(n: int, k: int) -> TuranValue:
    """
    Connected Turán number of ``P_k``:
    ``max{C(k-2, 2) + (n-k+2), [n, floor(k/2)] + c}`` with ``c = k mod 2``.

    :raises DomainError: unless ``n >= k >= 4``
    """
    if k < 4:
        raise DomainError(f"connected path bound requires k >= 4, got {k}", "k >= 4")
    if n < k:
        raise DomainError(f"connected path bound requires n >= k, got n={n}", "n >= k")

    c = k % 2
    s = k // 2
    return TuranValue.from_terms(
        [
            Term("C(k-2,2)+(n-k+2)", binom2(k - 2) + n - k + 2),
            Term(f"[n,{s}]+{c}", bracket_s(n, s) + c),
        ]
    )


def kpl_threshold(k: int, l: int) -> int:  # noqa: E741
    """
    :returns: the vertex count from which the large-n value of ``ex(n, kP_l)`` is
        proven: ``2l + 2kl(ceil(l/2) + 1) C(l, floor(l/2))``
    """
    return 2 * l + 2 * k * l * ((l + 1) // 2 + 1) * comb(l, l // 2)


def ex_kpl_large_n(n: int, k: int, l: int) -> TuranValue:  # noqa: E741
    """
    Large-n value ``ex(n, kP_l) = [n, k floor(l/2)] + c`` with ``c = l mod 2``. The
    result is flagged valid only from :func:`kpl_threshold` on.
    Below ``n = k floor(l/2)`` the bracket is undefined and ``K_n`` itself is
    ``kP_l``-free, so the value is ``C(n, 2)``.
    """
    if k < 2:
        raise DomainError(f"kP_l requires k >= 2, got {k}", "k >= 2")
    if l < 4:
        raise DomainError(f"kP_l requires l >= 4, got {l}", "l >= 4")

    s = k * (l // 2)
    c = l % 2
    if n < s:
        return TuranValue.from_terms([Term("C(n,2)", binom2(n))], valid=False)
    return TuranValue.from_terms(
        [Term(f"[n,{s}]+{c}", bracket_s(n, s) + c)], valid=n >= kpl_threshold(k, l)
    )


def _forest_terms(n: int, forest: PathForest, c: int) -> List[Term]:
    terms = [
        Term(f"[n,{total},{k}]", bracket_nml(n, total, k))
        for total, k in zip(forest.partial_sums(), forest.orders)
    ]

    s = forest.half_sum
    if n >= s:
        label = f"[n,{s}]+{c}" if c else f"[n,{s}]"
        terms.append(Term(label, bracket_s(n, s) + c))
    else:
        logger.debug("[n,s] term skipped for %s at n=%d (n < s=%d)", forest, n, s)
    return terms


def ex_forest(n: int, forest: PathForest, mode: ForestMode) -> TuranValue:
    """
    Evaluate the forest formula: the maximum of ``[n, Σ_{i<=j} k_i, k_j]`` over
    ``j = 1..m`` and ``[n, s]``. In :attr:`ForestMode.THEOREM7` the forest may have at
    most one odd order and ``n >= Σ k_i``; in :attr:`ForestMode.CONJECTURE` the
    longest order must exceed 3, ``c = 1`` is added to ``[n, s]`` when every order is
    odd, and the result is marked conjectural.

    :raises DomainError: naming the violated precondition
    """
    if n < 0:
        raise DomainError(f"vertex count must be non-negative, got {n}", "n >= 0")
    if forest.orders[-1] < 3:
        raise DomainError(f"forest {forest} has a path shorter than 3", "k_i >= 3")

    if mode is ForestMode.THEOREM7:
        if forest.odd_count > 1:
            raise DomainError(
                f"forest {forest} has {forest.odd_count} odd orders",
                "at most one odd order",
            )
        if n < forest.total:
            raise DomainError(
                f"n={n} is below the forest order {forest.total}", "n >= Σ k_i"
            )
        return TuranValue.from_terms(_forest_terms(n, forest, 0))

    if forest.orders[0] <= 3:
        raise DomainError(f"forest {forest} has no path longer than 3", "k_1 > 3")
    c = 1 if forest.all_odd else 0
    return TuranValue.from_terms(_forest_terms(n, forest, c), conjectural=True)


def ex_forest_large_n(n: int, forest: PathForest) -> TuranValue:
    """
    Large-n value ``[n, s] + c`` for a linear forest with at least one order other
    than 3. It holds only for n sufficiently large, so ``valid`` is None.
    """
    if all(k == 3 for k in forest.orders):
        raise DomainError(f"forest {forest} has only P3 components", "some k_i != 3")

    s = forest.half_sum
    c = 1 if forest.all_odd else 0
    return TuranValue.from_terms(
        [Term(f"[n,{s}]+{c}", bracket_s(n, s) + c)], valid=None
    )


def ex_2p7(n: int) -> TuranValue:
    """
    :returns: ``ex(n, 2P_7) = max{[n, 14, 7], 5n - 14}``
    :raises DomainError: if ``n < 14``
    """
    if n < 14:
        raise DomainError(f"ex(n, 2P7) is stated for n >= 14, got {n}", "n >= 14")

    return TuranValue.from_terms(
        [
            Term(BRACKET_2P7_LABEL, bracket_nml(n, 14, 7)),
            Term(LINEAR_2P7_LABEL, 5 * n - 14),
        ]
    )


def bracket_14_7_closed_form(n: int) -> int:
    """
    ``[n, 14, 7] = (5n + 91 + r(r-6)) / 2`` with ``r = (n-13) mod 6``, for ``n >= 14``.
    """
    r = (n - 13) % 6
    return (5 * n + 91 + r * (r - 6)) // 2


#
# inequality lemmas
#


def lemma1_holds(n1: int, n2: int, k1: int, k2: int) -> bool:
    """
    ``[n1, k1+k2, k2] + [n2, k2, k2] <= [n1+n2, k1+k2, k2]`` for ``k1 >= k2 >= 3`` and
    ``n1 >= k1``.
    """
    if not k1 >= k2 >= 3:
        raise DomainError(f"need k1 >= k2 >= 3, got {k1}, {k2}", "k1 >= k2 >= 3")
    if n1 < k1:
        raise DomainError(f"need n1 >= k1, got n1={n1}", "n1 >= k1")

    m = k1 + k2
    return bracket_nml(n1, m, k2) + bracket_nml(n2, k2, k2) <= bracket_nml(
        n1 + n2, m, k2
    )


def lemma2_holds(n1: int, n2: int, k1: int, k2: int) -> bool:
    """
    ``[n1, s] + [n2, k2, k2] < [n1+n2, s]`` with ``s = floor(k1/2) + floor(k2/2)``, for
    ``k1 >= k2 >= 3``, ``n1 >= k1 + k2`` and ``n2 >= 1``.
    """
    if not k1 >= k2 >= 3:
        raise DomainError(f"need k1 >= k2 >= 3, got {k1}, {k2}", "k1 >= k2 >= 3")
    if n1 < k1 + k2:
        raise DomainError(f"need n1 >= k1 + k2, got n1={n1}", "n1 >= k1 + k2")
    if n2 < 1:
        raise DomainError(f"need n2 >= 1, got {n2}", "n2 >= 1")

    s = k1 // 2 + k2 // 2
    return bracket_s(n1, s) + bracket_nml(n2, k2, k2) < bracket_s(n1 + n2, s)


def lemma1_counterexamples(
    max_k: int = 8, max_n: int = 40
) -> List[Tuple[int, int, int, int]]:
    """
    :returns: every ``(n1, n2, k1, k2)`` on the grid ``3 <= k2 <= k1 <= max_k``,
        ``k1 <= n1 <= max_n``, ``0 <= n2 <= max_n`` where the first lemma fails
    """
    failures = []
    for k1 in range(3, max_k + 1):
        for k2 in range(3, k1 + 1):
            for n1 in range(k1, max_n + 1):
                for n2 in range(0, max_n + 1):
                    if not lemma1_holds(n1, n2, k1, k2):
                        failures.append((n1, n2, k1, k2))
    return failures


def lemma2_counterexamples(
    max_k: int = 8, max_total: int = 80
) -> List[Tuple[int, int, int, int]]:
    """
    :returns: every ``(n1, n2, k1, k2)`` on the grid ``3 <= k2 <= k1 <= max_k``,
        ``n1 >= k1 + k2``, ``n2 >= 1``, ``n1 + n2 <= max_total`` where the second lemma
        fails
    """
    failures = []
    for k1 in range(3, max_k + 1):
        for k2 in range(3, k1 + 1):
            for n1 in range(k1 + k2, max_total):
                for n2 in range(1, max_total - n1 + 1):
                    if not lemma2_holds(n1, n2, k1, k2):
                        failures.append((n1, n2, k1, k2))
    return failures


def spine_forcing_counterexamples(max_n: int = 200) -> List[int]:
    """
    :returns: every ``14 <= n <= max_n`` where ``ex(n, 2P_7)`` falls below the
        connected value ``ex_conn(n, P_13)``. A connected extremal graph with more edges
        than the latter contains a 13-vertex path.
    """
    return [
        n
        for n in range(14, max_n + 1)
        if ex_2p7(n).value < ex_connected_path(n, 13).value
    ]
