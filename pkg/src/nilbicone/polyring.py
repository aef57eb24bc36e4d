"""Exact multivariate polynomials over Q or a prime field F_p.

A :class:`Poly` is a sparse map ``exponent tuple -> nonzero coefficient``.
Coefficients are :class:`fractions.Fraction` over Q and plain ``int`` in
``[0, p)`` over F_p. The only monomial order is degrevlex with respect to the
declared variable order of the :class:`Ring`.

Plain-text ideal format (used for export and for cross-checking against an
external computer algebra system)::

    vars: x0,x1,x2
    2*x0^2 - x1*x2
    x0*x2 + 1/2*x1^2
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Ring",
    "Poly",
    "Ideal",
    "is_prime",
    "degrevlex_key",
    "differentiate",
    "gradient",
    "substitute",
    "collect_bidegree",
    "jet_expand",
    "jet_variable",
    "arc_order",
    "parse_poly",
]

MAX_VARIABLES = 64


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def degrevlex_key(exp: Sequence[int]) -> tuple:
    """Sort key such that larger key means larger monomial in degrevlex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over Q (``modulus=None``) or F_p with named variables."""

    variables: tuple[str, ...]
    modulus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        if len(self.variables) > MAX_VARIABLES:
            raise ValueError(f"at most {MAX_VARIABLES} variables are supported")
        if self.modulus is not None and not is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def field_name(self) -> str:
        return "q" if self.modulus is None else f"p:{self.modulus}"

    def index(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"unknown variable {var!r}") from None

    def coerce(self, c):
        """Normalise a scalar into the coefficient domain."""
        if self.modulus is None:
            return Fraction(c)
        p = self.modulus
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {c} vanishes mod {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        return int(c) % p

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.coerce(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, var: str) -> "Poly":
        exp = [0] * self.nvars
        exp[self.index(var)] = 1
        return Poly(self, {tuple(exp): self.coerce(1)})

    def gens(self) -> list["Poly"]:
        return [self.gen(v) for v in self.variables]

    def monomial(self, exp: Sequence[int], c=1) -> "Poly":
        c = self.coerce(c)
        return Poly(self, {tuple(exp): c} if c else {})

    def extend(self, names: Iterable[str]) -> "Ring":
        return Ring(self.variables + tuple(names), self.modulus)

    def drop(self, names: Iterable[str]) -> "Ring":
        names = set(names)
        return Ring(tuple(v for v in self.variables if v not in names), self.modulus)

    def with_modulus(self, modulus: int | None) -> "Ring":
        return Ring(self.variables, modulus)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


class Poly:
    """Immutable sparse polynomial; see module docstring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object] | None = None):
        self.ring = ring
        out = {}
        for k, v in (terms or {}).items():
            if len(k) != ring.nvars:
                raise ValueError(f"exponent {k} does not match {ring.nvars} variables")
            if ring.modulus is not None or type(v) is not Fraction:
                v = ring.coerce(v)
            if v:
                out[tuple(k)] = v
        self.terms = out

    # -- construction helpers -------------------------------------------------
    def _new(self, terms: dict) -> "Poly":
        p = Poly.__new__(Poly)
        p.ring = self.ring
        p.terms = terms
        return p

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        p = self.ring.modulus
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, 0) + v
            if p:
                c %= p
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = self.ring.modulus
        return self._new({k: (-v) % p if p else -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        p = self.ring.modulus
        out: dict = {}
        add = operator.add
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(map(add, ka, kb))
                c = out.get(k, 0) + va * vb
                out[k] = c % p if p else c
        return self._new({k: v for k, v in out.items() if v})

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def scale(self, c) -> "Poly":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero
        p = self.ring.modulus
        return self._new({k: (v * c) % p if p else v * c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if self.is_constant():
            return self.constant_coefficient() == self.ring.coerce(other)
        return False

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.coerce(0))

    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def degrees_in(self, variables: Iterable[str]) -> set[int]:
        """Set of partial degrees of the terms in the given variable block."""
        idx = [self.ring.index(v) for v in variables]
        return {sum(k[i] for i in idx) for k in self.terms}

    def support(self) -> set[str]:
        names = self.ring.variables
        return {names[i] for k in self.terms for i, e in enumerate(k) if e}

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in decreasing degrevlex order."""
        return sorted(self.terms.items(), key=lambda kv: degrevlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[tuple, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self.terms, key=degrevlex_key)
        return k, self.terms[k]

    def evaluate(self, point):
        """Evaluate at a point given as a sequence or a ``{name: value}`` map."""
        if isinstance(point, Mapping):
            point = [point[v] for v in self.ring.variables]
        if len(point) != self.ring.nvars:
            raise ValueError("point does not match ring arity")
        p = self.ring.modulus
        vals = [self.ring.coerce(v) for v in point]
        powers: dict[tuple[int, int], object] = {}
        total = self.ring.coerce(0)
        for k, c in self.terms.items():
            t = c
            for i, e in enumerate(k):
                if e:
                    key = (i, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = pow(vals[i], e, p) if p else vals[i] ** e
                        powers[key] = pw
                    t = t * pw
                    if p:
                        t %= p
            total += t
        return total % p if p else total

    __call__ = evaluate

    def to_ring(self, ring: Ring) -> "Poly":
        """Re-express in another ring, matching variables by name.

        Variables missing from ``ring`` are allowed if ``self`` does not use them.
        """
        names = self.ring.variables
        idx = [ring.variables.index(v) if v in ring.variables else None for v in names]
        out = {}
        for k, c in self.terms.items():
            e = [0] * ring.nvars
            for i, a in enumerate(k):
                if a:
                    if idx[i] is None:
                        raise KeyError(f"variable {names[i]!r} is not in the target ring")
                    e[idx[i]] = a
            c = ring.coerce(c)
            if c:
                out[tuple(e)] = c
        return Poly(ring, out)

    def monic(self) -> "Poly":
        _, lc = self.leading_term()
        p = self.ring.modulus
        inv = pow(lc, -1, p) if p else 1 / lc
        return self.scale(inv)

    # -- text -----------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.variables
        out = []
        for k, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e)
            neg = False
            if self.ring.modulus is None and c < 0:
                neg, c = True, -c
            cs = str(c)
            if mono:
                body = mono if c == 1 else f"{cs}*{mono}"
            else:
                body = cs
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"


_TERM_SPLIT = re.compile(r"(?=[+-])")


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse the flat ``c*x^a*y`` text format (no parentheses)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    out = ring.zero
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = -1 if chunk[0] == "-" else 1
        chunk = chunk.lstrip("+-")
        coeff = Fraction(sign)
        exp = [0] * ring.nvars
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                name, _, e = factor.partition("^")
                exp[ring.index(name)] += int(e) if e else 1
        out = out + ring.monomial(exp, coeff)
    return out


# -- calculus and substitution ------------------------------------------------

def differentiate(f: Poly, var: str) -> Poly:
    """Formal partial derivative."""
    i = f.ring.index(var)
    p = f.ring.modulus
    out = {}
    for k, c in f.terms.items():
        e = k[i]
        if e:
            kk = k[:i] + (e - 1,) + k[i + 1:]
            c = c * e
            if p:
                c %= p
            if c:
                out[kk] = c
    return Poly(f.ring, out)


def gradient(f: Poly, variables: Iterable[str] | None = None) -> list[Poly]:
    if variables is None:
        variables = f.ring.variables
    return [differentiate(f, v) for v in variables]


def substitute(f: Poly, assignment: Mapping[str, object], ring: Ring | None = None) -> Poly:
    """Replace every variable of ``f`` by a polynomial or scalar.

    All values that are polynomials must share one ring, which becomes the ring
    of the result (``ring`` overrides; with only scalars ``f.ring`` is used).
    Every variable appearing in ``f`` must be assigned.
    """
    if ring is None:
        rings = {v.ring for v in assignment.values() if isinstance(v, Poly)}
        if len(rings) > 1:
            raise ValueError("substituted values live in different rings")
        ring = rings.pop() if rings else f.ring
    missing = f.support() - set(assignment)
    if missing:
        raise KeyError(f"no assignment for {sorted(missing)}")
    names = f.ring.variables
    values = {}
    for i, n in enumerate(names):
        if n in assignment:
            v = assignment[n]
            values[i] = v if isinstance(v, Poly) else ring.const(v)
            if values[i].ring != ring:
                raise ValueError("ring mismatch in assignment")
    cache: dict[tuple[int, int], Poly] = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = values[i] if e == 1 else power(i, e - 1) * values[i]
        return cache[key]

    out = ring.zero
    for k, c in f.terms.items():
        t = ring.const(c)
        for i, e in enumerate(k):
            if e:
                t = t * power(i, e)
        out = out + t
    return out


def collect_bidegree(f: Poly, a_var: str, b_var: str) -> dict[tuple[int, int], Poly]:
    """Split ``f`` by its degree in ``(a_var, b_var)``.

    The coefficient polynomials live in ``f.ring`` with the two variables
    dropped, so ``sum(a^m b^n * coeff[(m, n)])`` reassembles ``f``.
    """
    ia, ib = f.ring.index(a_var), f.ring.index(b_var)
    sub = f.ring.drop((a_var, b_var))
    keep = [i for i in range(f.ring.nvars) if i not in (ia, ib)]
    out: dict[tuple[int, int], dict] = {}
    for k, c in f.terms.items():
        key = (k[ia], k[ib])
        out.setdefault(key, {})[tuple(k[i] for i in keep)] = c
    return {key: Poly(sub, terms) for key, terms in sorted(out.items(), reverse=True)}


# -- jets and arcs ---------------------------------------------------------------

def jet_variable(name: str, level: int) -> str:
    return f"{name}_lvl{level}"


def _series_mul(a: list[Poly], b: list[Poly], m: int, ring: Ring) -> list[Poly]:
    out = [ring.zero] * (m + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(m + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def jet_expand(system: Sequence[Poly], m: int, labels: Sequence[str] | None = None) -> "Ideal":
    """Equations of the m-th jet scheme of the zero set of ``system``.

    Each variable ``v`` is replaced by ``sum_k v_lvl{k} t^k``; the result
    collects the coefficients of ``t^0 .. t^m`` of every generator. Variables
    are ordered level by level.
    """
    if m < 0:
        raise ValueError("jet order must be nonnegative")
    if not system:
        raise ValueError("empty system")
    base = system[0].ring
    names = base.variables
    ring = Ring(tuple(jet_variable(v, k) for k in range(m + 1) for v in names), base.modulus)
    if labels is None:
        labels = [f"g{j}" for j in range(len(system))]
    series = {
        i: [ring.gen(jet_variable(v, k)) for k in range(m + 1)] for i, v in enumerate(names)
    }
    cache: dict[tuple[int, int], list[Poly]] = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = series[i] if e == 1 else _series_mul(power(i, e - 1), series[i], m, ring)
        return cache[key]

    gens, labs = [], []
    for f, lab in zip(system, labels):
        if f.ring != base:
            raise ValueError("ring mismatch in system")
        total = [ring.zero] * (m + 1)
        for k, c in f.terms.items():
            s = [ring.const(c)] + [ring.zero] * m
            for i, e in enumerate(k):
                if e:
                    s = _series_mul(s, power(i, e), m, ring)
            total = [x + y for x, y in zip(total, s)]
        for level, g in enumerate(total):
            gens.append(g)
            labs.append(f"{lab}@t^{level}")
    return Ideal(ring, gens, labs, allow_zero=True)


def _upoly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def arc_order(f: Poly, x: Sequence, y: Sequence):
    """Order in t of ``f(x + t y)``; ``math.inf`` when it vanishes identically."""
    ring = f.ring
    if len(x) != ring.nvars or len(y) != ring.nvars:
        raise ValueError("point does not match ring arity")
    p = ring.modulus
    xs = [ring.coerce(v) for v in x]
    ys = [ring.coerce(v) for v in y]
    cache: dict[tuple[int, int], list] = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            lin = [xs[i], ys[i]]
            cache[key] = lin if e == 1 else _upoly_mul(power(i, e - 1), lin)
        return cache[key]

    total = [0] * (f.total_degree() + 1)
    for k, c in f.terms.items():
        s = [c]
        for i, e in enumerate(k):
            if e:
                s = _upoly_mul(s, power(i, e))
        for j, v in enumerate(s):
            total[j] += v
    for j, v in enumerate(total):
        if (v % p if p else v) != 0:
            return j
    return math.inf


# -- ideals -----------------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    """Finite generating set with one provenance label per generator."""

    ring: Ring
    generators: tuple[Poly, ...]
    labels: tuple[str, ...] = field(default=())
    allow_zero: bool = field(default=False, repr=False, compare=False)

    def __init__(self, ring, generators, labels=None, allow_zero=False):
        generators = tuple(generators)
        if labels is None:
            labels = tuple(f"g{i}" for i in range(len(generators)))
        labels = tuple(labels)
        if len(labels) != len(generators):
            raise ValueError("one label per generator required")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator ring mismatch")
        if not allow_zero and any(g.is_zero() for g in generators):
            raise ValueError("zero generator")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "allow_zero", allow_zero)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def labeled(self) -> dict[str, Poly]:
        return dict(zip(self.labels, self.generators))

    def nonzero(self) -> "Ideal":
        pairs = [(g, l) for g, l in zip(self.generators, self.labels) if g]
        return Ideal(self.ring, [g for g, _ in pairs], [l for _, l in pairs])

    def extend(self, generators: Sequence[Poly], labels: Sequence[str]) -> "Ideal":
        return Ideal(self.ring, self.generators + tuple(generators),
                     self.labels + tuple(labels), self.allow_zero)

    def with_modulus(self, modulus: int | None) -> "Ideal":
        ring = self.ring.with_modulus(modulus)
        return Ideal(ring, [g.to_ring(ring) for g in self.generators], self.labels,
                     self.allow_zero)

    def to_text(self) -> str:
        """Deterministic text export: generators sorted by label."""
        lines = ["vars: " + ",".join(self.ring.variables)]
        for _, g in sorted(zip(self.labels, self.generators), key=lambda t: t[0]):
            lines.append(g.to_text())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, modulus: int | None = None) -> "Ideal":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("vars:"):
            raise ValueError("missing 'vars:' header")
        names = [v.strip() for v in lines[0][5:].split(",") if v.strip()]
        ring = Ring(tuple(names), modulus)
        gens = [parse_poly(ln, ring) for ln in lines[1:]]
        return cls(ring, gens, allow_zero=True)
