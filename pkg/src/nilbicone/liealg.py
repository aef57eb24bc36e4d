"""The Lie algebra sl_n over Q with exact structure constants.

Basis order: strictly upper matrix units ``E_ij`` (i < j, row-major), then the
Cartan elements ``H_i = E_ii - E_{i+1,i+1}``, then strictly lower units. The
invariant form is the trace form ``<x, y> = tr(xy)``.

Elements are tuples of :class:`~fractions.Fraction` coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import linalg

__all__ = ["LieAlgebra", "build_sl", "Element"]

Element = tuple  # tuple[Fraction, ...]


def _frac_tuple(v) -> Element:
    return tuple(Fraction(c) for c in v)


class LieAlgebra:
    """sl_n with its trace form, Borel data and principal sl2-triple."""

    def __init__(self, n: int):
        if not 2 <= n <= 6:
            raise ValueError("sl_n is supported for 2 <= n <= 6")
        self.n = n
        upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
        lower = [(j, i) for (i, j) in upper]
        self._units = upper + [None] * (n - 1) + lower
        self.basis_labels = (
            [f"E{i + 1}{j + 1}" for i, j in upper]
            + [f"H{i + 1}" for i in range(n - 1)]
            + [f"E{i + 1}{j + 1}" for i, j in lower]
        )
        self.dimension = n * n - 1
        self.rank = n - 1
        self.borel_dimension = (self.dimension + self.rank) // 2
        self._n_upper = len(upper)
        self.structure_constants = self._structure_constants()
        self.form_matrix = [
            [self._trace(self._basis_matrix(a), self._basis_matrix(b)) for b in range(self.dimension)]
            for a in range(self.dimension)
        ]

    def __repr__(self):
        return f"sl{self.n}"

    @property
    def name(self) -> str:
        return f"sl{self.n}"

    # -- matrices <-> coordinates --------------------------------------------------
    def _basis_matrix(self, a: int) -> list[list[Fraction]]:
        n = self.n
        m = [[Fraction(0)] * n for _ in range(n)]
        unit = self._units[a]
        if unit is None:
            k = a - self._n_upper
            m[k][k] = Fraction(1)
            m[k + 1][k + 1] = Fraction(-1)
        else:
            m[unit[0]][unit[1]] = Fraction(1)
        return m

    def to_matrix(self, x: Sequence) -> list[list[Fraction]]:
        self._check(x)
        n = self.n
        m = [[Fraction(0)] * n for _ in range(n)]
        for a, c in enumerate(x):
            if not c:
                continue
            unit = self._units[a]
            if unit is None:
                k = a - self._n_upper
                m[k][k] += c
                m[k + 1][k + 1] -= c
            else:
                m[unit[0]][unit[1]] += c
        return m

    def from_matrix(self, m: Sequence[Sequence]) -> Element:
        n = self.n
        if sum(Fraction(m[i][i]) for i in range(n)) != 0:
            raise ValueError("matrix is not traceless")
        coords = []
        for unit in self._units[: self._n_upper]:
            coords.append(Fraction(m[unit[0]][unit[1]]))
        running = Fraction(0)
        for k in range(n - 1):
            running += Fraction(m[k][k])
            coords.append(running)
        for unit in self._units[self._n_upper + n - 1:]:
            coords.append(Fraction(m[unit[0]][unit[1]]))
        return tuple(coords)

    @staticmethod
    def _matmul(a, b):
        n = len(a)
        return [[sum(a[i][k] * b[k][j] for k in range(n) if a[i][k]) for j in range(n)] for i in range(n)]

    @staticmethod
    def _trace(a, b) -> Fraction:
        n = len(a)
        return sum((a[i][k] * b[k][i] for i in range(n) for k in range(n)), Fraction(0))

    def _structure_constants(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        table = {}
        for a in range(self.dimension):
            ma = self._basis_matrix(a)
            for b in range(a + 1, self.dimension):
                mb = self._basis_matrix(b)
                ab, ba = self._matmul(ma, mb), self._matmul(mb, ma)
                comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
                coords = self.from_matrix(comm)
                entry = {k: c for k, c in enumerate(coords) if c}
                if entry:
                    table[(a, b)] = entry
                    table[(b, a)] = {k: -c for k, c in entry.items()}
        return table

    def _check(self, x):
        if len(x) != self.dimension:
            raise ValueError(f"element of length {len(x)} does not belong to {self.name}")

    # -- basic operations ------------------------------------------------------------
    def zero(self) -> Element:
        return (Fraction(0),) * self.dimension

    def basis_element(self, a: int | str) -> Element:
        if isinstance(a, str):
            a = self.basis_labels.index(a)
        return tuple(Fraction(int(i == a)) for i in range(self.dimension))

    def element(self, coords: Sequence) -> Element:
        x = _frac_tuple(coords)
        self._check(x)
        return x

    def bracket(self, x: Sequence, y: Sequence) -> Element:
        """Lie bracket via the structure constants, exact."""
        self._check(x)
        self._check(y)
        out = [Fraction(0)] * self.dimension
        nzx = [(a, c) for a, c in enumerate(x) if c]
        nzy = [(b, c) for b, c in enumerate(y) if c]
        table = self.structure_constants
        for a, ca in nzx:
            for b, cb in nzy:
                entry = table.get((a, b))
                if entry:
                    coef = ca * cb
                    for k, c in entry.items():
                        out[k] += coef * c
        return tuple(out)

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        self._check(x)
        self._check(y)
        return sum((x[a] * row[b] * y[b] for a, row in enumerate(self.form_matrix) if x[a]
                    for b in range(self.dimension) if row[b] and y[b]), Fraction(0))

    @cached_property
    def form_inverse(self) -> list[list[Fraction]]:
        return linalg.inverse(self.form_matrix)

    def ad_matrix(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of ad x acting on coordinate column vectors."""
        cols = [self.bracket(x, self.basis_element(b)) for b in range(self.dimension)]
        return linalg.transpose(cols)

    def centralizer(self, x: Sequence) -> list[Element]:
        return linalg.nullspace(self.ad_matrix(x))

    def centralizer_dimension(self, x: Sequence) -> int:
        return self.dimension - linalg.rank(self.ad_matrix(x))

    def is_regular(self, x: Sequence) -> bool:
        return self.centralizer_dimension(x) == self.rank

    def is_nilpotent(self, x: Sequence) -> bool:
        """x is ad-nilpotent iff it is a nilpotent matrix (x^n = 0)."""
        m = self.to_matrix(x)
        p = m
        for _ in range(self.n - 1):
            p = self._matmul(p, m)
        return not any(c for row in p for c in row)

    def add(self, *xs: Sequence) -> Element:
        return tuple(sum(cs, Fraction(0)) for cs in zip(*xs))

    def scale(self, c, x: Sequence) -> Element:
        c = Fraction(c)
        return tuple(c * v for v in x)

    def combine(self, a, x: Sequence, b, y: Sequence) -> Element:
        a, b = Fraction(a), Fraction(b)
        return tuple(a * u + b * v for u, v in zip(x, y))

    # -- Borel data and the principal triple ------------------------------------------
    @property
    def upper_indices(self) -> range:
        """Coordinates spanning the nilradical u of the standard Borel."""
        return range(self._n_upper)

    @property
    def cartan_indices(self) -> range:
        return range(self._n_upper, self._n_upper + self.rank)

    @property
    def lower_indices(self) -> range:
        return range(self._n_upper + self.rank, self.dimension)

    @cached_property
    def e(self) -> Element:
        return self.add(*[self.basis_element(f"E{i + 1}{i + 2}") for i in range(self.n - 1)])

    @cached_property
    def h(self) -> Element:
        n = self.n
        diag = [Fraction(n - 1 - 2 * i) for i in range(n)]
        return self.from_matrix([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @cached_property
    def f(self) -> Element:
        # solve [e, f] = h with f in g_{-2} = span of E_{i+1,i}
        cols = [self.basis_element(f"E{i + 2}{i + 1}") for i in range(self.n - 1)]
        images = [self.bracket(self.e, c) for c in cols]
        sol = linalg.solve(linalg.transpose(images), self.h)
        if sol is None:
            raise ArithmeticError("no f in g_-2 with [e, f] = h")
        f = self.zero()
        for c, col in zip(sol, cols):
            f = self.combine(1, f, c, col)
        return f

    @property
    def principal_triple(self) -> tuple[Element, Element, Element]:
        return self.e, self.h, self.f

    def w0_on_h(self) -> Element:
        """Image of h under the longest Weyl element, which is -h."""
        return self.scale(-1, self.h)

    def ad_h_grading(self) -> dict[int, list[Element]]:
        """Eigenspace decomposition of ad h (eigenvalue -> basis)."""
        # every basis vector is an ad h eigenvector
        out: dict[int, list[Element]] = {}
        for a in range(self.dimension):
            v = self.basis_element(a)
            img = self.bracket(self.h, v)
            lam = img[a]
            if any(c for i, c in enumerate(img) if i != a):
                raise ArithmeticError("basis is not ad h-homogeneous")
            out.setdefault(int(lam), []).append(v)
        return dict(sorted(out.items()))

    def lowest_weight_vector(self) -> Element:
        """Nonzero vector of the smallest ad h eigenvalue (E_{n1})."""
        return self.basis_element(f"E{self.n}1")


@lru_cache(maxsize=None)
def build_sl(n: int) -> LieAlgebra:
    return LieAlgebra(n)
