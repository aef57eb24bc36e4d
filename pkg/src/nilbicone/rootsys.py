"""Root-system combinatorics in the simple-root basis.

Roots are integer tuples of coordinates with respect to the simple roots.
Positive roots are generated from the Cartan matrix by closure under adding
simple roots (alpha + a_j is a root iff the a_j-string through alpha allows
it), which is exact in this basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

__all__ = [
    "RootDatum",
    "LeviShape",
    "SUPPORTED",
    "build_root_datum",
    "cartan_matrix",
    "levi_decompose",
    "component_lower_bound",
    "scan_highest_root_conditions",
    "POSITIVE_ROOT_COUNTS",
]

SUPPORTED = {
    "A": range(1, 6),
    "B": range(2, 5),
    "C": range(3, 5),
    "D": range(4, 7),
    "G": range(2, 3),
}

# Number of positive roots, from the classical formulas.
POSITIVE_ROOT_COUNTS = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "G": lambda r: 6,
}


@dataclass(frozen=True)
class RootDatum:
    type_label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def dimension(self) -> int:
        """Dimension of the simple Lie algebra with this root system."""
        return 2 * len(self.positive_roots) + self.rank

    def is_root(self, v: Iterable[int]) -> bool:
        v = tuple(v)
        neg = tuple(-c for c in v)
        return v in self._root_set or neg in self._root_set

    @property
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(int(j == i) for j in range(self.rank))


@dataclass(frozen=True)
class LeviShape:
    subset_of_simple_roots: frozenset[int]
    simple_factors: tuple[tuple[str, int], ...]


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``a_ij = 2(alpha_i, alpha_j) / (alpha_j, alpha_j)``.

    Bourbaki numbering: for B the last simple root is short, for C the last is
    long, and for G2 the first simple root is short.
    """
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    t = type_label
    if t in "ABC" or (t == "D" and n >= 2):
        chain = n - 1 if t != "D" else n - 2
        for i in range(chain):
            a[i][i + 1] = a[i + 1][i] = -1
    if t == "B" and n >= 2:
        a[n - 2][n - 1] = -2
    elif t == "C" and n >= 2:
        a[n - 1][n - 2] = -2
    elif t == "D":
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif t == "G":
        a = [[2, -1], [-3, 2]]
    return tuple(tuple(r) for r in a)


def _check_supported(type_label: str, rank: int):
    if type_label not in SUPPORTED or rank not in SUPPORTED[type_label]:
        raise ValueError(f"unsupported root datum {type_label}{rank}")


def _positive_roots(cartan) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for r in layer:
            for j in range(n):
                # p = how far the a_j-string extends below r
                p = 0
                s = list(r)
                while True:
                    s[j] -= 1
                    if tuple(s) in roots:
                        p += 1
                    else:
                        break
                # <r, a_j^vee> = sum_i r_i a_ij ; string length q = p - <r, a_j^vee>
                pairing = sum(r[i] * cartan[i][j] for i in range(n))
                if p - pairing > 0:
                    up = list(r)
                    up[j] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda v: (sum(v), v))


def build_root_datum(type_label: str, rank: int) -> RootDatum:
    """Cartan data for a supported simple type.

    Supported: A1-A5, B2-B4, C3-C4, D4-D6, G2.
    """
    return _build_root_datum(type_label.upper(), rank)


@lru_cache(maxsize=None)
def _build_root_datum(type_label: str, rank: int) -> RootDatum:
    _check_supported(type_label, rank)
    cm = cartan_matrix(type_label, rank)
    pos = _positive_roots(cm)
    highest = max(pos, key=sum)
    return RootDatum(type_label, rank, cm, tuple(pos), highest)


def _components(cartan, subset: Iterable[int]) -> list[list[int]]:
    subset = sorted(subset)
    seen: set[int] = set()
    comps = []
    for s in subset:
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in subset:
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _classify(cartan, comp: list[int]) -> tuple[str, int]:
    """Type and rank of a connected sub-diagram."""
    k = len(comp)
    sub = [[cartan[i][j] for j in comp] for i in comp]
    if k == 1:
        return ("A", 1)
    degrees = [sum(1 for j in range(k) if j != i and sub[i][j]) for i in range(k)]
    laced = {sub[i][j] * sub[j][i] for i in range(k) for j in range(k) if i != j and sub[i][j]}
    if 3 in laced:
        return ("G", 2)
    if 2 in laced:
        if k == 2:
            return ("B", 2)
        for i in range(k):
            for j in range(k):
                if i != j and sub[i][j] == -2:
                    # a_ij = -2 means alpha_j is the short end of the double bond
                    return ("B", k) if degrees[j] == 1 else ("C", k)
    if max(degrees) == 3:
        return ("D", k) if k >= 4 else ("A", k)
    return ("A", k)


def levi_decompose(datum: RootDatum, subset: Iterable[int]) -> LeviShape:
    """Simple factors of the Levi subalgebra spanned by ``subset`` of simple roots.

    Indices are 0-based positions in the simple-root list.
    """
    subset = frozenset(subset)
    if any(not 0 <= i < datum.rank for i in subset):
        raise ValueError("subset is not contained in the simple roots")
    factors = tuple(_classify(datum.cartan_matrix, c) for c in _components(datum.cartan_matrix, subset))
    return LeviShape(subset, factors)


def _factor_bound(factor: tuple[str, int]) -> int:
    # a 3-dimensional factor has no component outside proper parabolics
    return 0 if factor == ("A", 1) else 1


def component_lower_bound(datum: RootDatum) -> int:
    """Certified lower bound for the number of irreducible components.

    Evaluates ``N' + sum_{S} prod_{factors of S} N'(factor) + 1`` over proper
    nonempty subsets S of the simple roots, with every ``N'`` replaced by its
    lower bound (0 for a rank-one factor, 1 otherwise).
    """
    own = _factor_bound((datum.type_label, datum.rank))
    total = own + 1
    for k in range(1, datum.rank):
        for subset in combinations(range(datum.rank), k):
            prod = 1
            for f in levi_decompose(datum, subset).simple_factors:
                prod *= _factor_bound(f)
                if not prod:
                    break
            total += prod
    return total


def scan_highest_root_conditions(datum: RootDatum) -> list[int]:
    """Simple roots beta satisfying both highest-root conditions.

    (1) ``theta - alpha`` is not a root for every simple alpha other than beta;
    (2) ``theta - beta`` is a root and the coefficient of beta in theta is 1.
    Here theta is the highest root. Returns 0-based indices.
    """
    theta = datum.highest_root
    n = datum.rank
    found = []

    def minus(i):
        return tuple(c - int(j == i) for j, c in enumerate(theta))

    for beta in range(n):
        cond1 = all(not datum.is_root(minus(a)) for a in range(n) if a != beta)
        cond2 = datum.is_root(minus(beta)) and theta[beta] == 1
        if cond1 and cond2:
            found.append(beta)
    return found
