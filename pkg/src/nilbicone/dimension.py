"""Buchberger's algorithm in degrevlex, Krull dimension from leading terms,
and the tangent-rank computation for the nullcone.

Inside the engine a monomial is a single Python int ``K`` built so that integer
comparison *is* degrevlex comparison::

    K = (deg << n*w) + ALL - E

where ``E`` packs the exponents in ``w``-bit fields (variable ``i`` at bit
``w*i``, so the last variable is most significant) and ``ALL = 2**(n*w) - 1``.
Products are ``Ka + Kb - ALL``; divisibility uses one guard bit per field.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .polyring import Ideal, Poly, Ring

__all__ = [
    "BudgetExceeded",
    "Budget",
    "GroebnerBasis",
    "DimensionResult",
    "groebner",
    "krull_dimension",
    "dimension_of_ideal",
    "dimension_report",
    "tangent_rank_nullcone",
    "parse_field",
    "DEFAULT_BUDGET",
]

FIELD_WIDTH = 16


class BudgetExceeded(RuntimeError):
    """Raised when a Groebner computation runs past its budget."""

    def __init__(self, message, spairs=0, basis_size=0, elapsed=0.0):
        super().__init__(message)
        self.spairs = spairs
        self.basis_size = basis_size
        self.elapsed = elapsed


@dataclass(frozen=True)
class Budget:
    spairs: int = 10**6
    seconds: float = 60.0
    max_degree: int | None = None


DEFAULT_BUDGET = Budget()


def parse_field(text: str | int | None) -> int | None:
    """``"q"`` -> None (rationals); ``"p:65521"`` or ``65521`` -> modulus."""
    if text is None or text == "q":
        return None
    if isinstance(text, int):
        return text
    if text.startswith("p:"):
        return int(text[2:])
    raise ValueError(f"field must be 'q' or 'p:<prime>', got {text!r}")


class _Monomials:
    def __init__(self, nvars: int, width: int = FIELD_WIDTH):
        self.n = nvars
        self.w = width
        self.bits = nvars * width
        self.all = (1 << self.bits) - 1
        self.guard = sum(1 << (width * i + width - 1) for i in range(nvars))
        self.fmask = (1 << width) - 1
        self.limit = 1 << (width - 1)

    def encode(self, exp: Sequence[int]) -> int:
        e = 0
        for i, a in enumerate(exp):
            if a >= self.limit:
                raise OverflowError("exponent too large for packed monomials")
            e |= a << (self.w * i)
        return (sum(exp) << self.bits) + self.all - e

    def raw(self, k: int) -> int:
        return self.all - (k & self.all)

    def decode(self, k: int) -> tuple[int, ...]:
        e = self.raw(k)
        w, m = self.w, self.fmask
        return tuple((e >> (w * i)) & m for i in range(self.n))

    def degree(self, k: int) -> int:
        return k >> self.bits

    def divides_raw(self, ea: int, eb: int) -> bool:
        g = self.guard
        return ((eb | g) - ea) & g == g

    def lcm(self, ka: int, kb: int) -> int:
        a, b = self.decode(ka), self.decode(kb)
        return self.encode([max(x, y) for x, y in zip(a, b)])

    def support_mask(self, k: int) -> int:
        return sum(1 << i for i, a in enumerate(self.decode(k)) if a)


class _Engine:
    """Mutable Buchberger state over one ring."""

    def __init__(self, ring: Ring, budget: Budget):
        self.ring = ring
        self.p = ring.modulus
        self.mono = _Monomials(ring.nvars)
        self.budget = budget
        self.polys: list[tuple[int, int, list]] = []  # (lead K, lead raw E, tail)
        self.spairs = 0
        self.t0 = time.perf_counter()

    # -- conversion ---------------------------------------------------------------
    def to_internal(self, f: Poly) -> dict[int, object]:
        enc = self.mono.encode
        return {enc(k): c for k, c in f.terms.items()}

    def to_poly(self, terms: dict[int, object]) -> Poly:
        dec = self.mono.decode
        return Poly(self.ring, {dec(k): c for k, c in terms.items()})

    def make_monic(self, terms: dict) -> tuple[int, int, list]:
        lead = max(terms)
        lc = terms[lead]
        p = self.p
        if p:
            inv = pow(lc, -1, p)
            tail = sorted(((k, c * inv % p) for k, c in terms.items() if k != lead), reverse=True)
        else:
            tail = sorted(((k, c / lc) for k, c in terms.items() if k != lead), reverse=True)
        return lead, self.mono.raw(lead), tail

    # -- reduction ------------------------------------------------------------------
    def reduce(self, terms: dict, active: Sequence[int], full: bool = True) -> dict:
        """Normal form of ``terms`` by the polynomials with indices ``active``."""
        p = self.p
        g = self.mono.guard
        raw_all = self.mono.all
        divisors = [(self.polys[i][1], self.polys[i][0], self.polys[i][2]) for i in active]
        acc = dict(terms)
        heap = [-k for k in acc]
        heapq.heapify(heap)
        rem = {}
        while heap:
            k = -heapq.heappop(heap)
            c = acc.pop(k, None)
            if c is None:
                continue
            e = raw_all - (k & raw_all)
            eg = e | g
            for ea, ka, tail in divisors:
                if (eg - ea) & g == g:
                    shift = k - ka
                    for kt, ct in tail:
                        kk = kt + shift
                        old = acc.get(kk)
                        if old is None:
                            nv = (-c * ct) % p if p else -c * ct
                            if nv:
                                acc[kk] = nv
                                heapq.heappush(heap, -kk)
                        else:
                            nv = (old - c * ct) % p if p else old - c * ct
                            if nv:
                                acc[kk] = nv
                            else:
                                del acc[kk]
                    break
            else:
                rem[k] = c
                if not full:
                    rem.update(acc)
                    return rem
        return rem

    def spoly(self, i: int, j: int, lcm_k: int) -> dict:
        p = self.p
        out: dict = {}
        ka, _, ta = self.polys[i]
        kb, _, tb = self.polys[j]
        sa, sb = lcm_k - ka, lcm_k - kb
        for kt, ct in ta:
            out[kt + sa] = ct
        for kt, ct in tb:
            kk = kt + sb
            nv = out.get(kk, 0) - ct
            if p:
                nv %= p
            if nv:
                out[kk] = nv
            else:
                out.pop(kk, None)
        return out

    # -- Buchberger with the Gebauer-Moeller criteria ----------------------------------
    def _check_budget(self):
        el = time.perf_counter() - self.t0
        if self.spairs > self.budget.spairs or el > self.budget.seconds:
            raise BudgetExceeded(
                f"budget exceeded after {self.spairs} S-pairs and {el:.1f}s",
                self.spairs, len(self.polys), el)

    def run(self, generators: Sequence[dict]) -> list[int]:
        mono = self.mono
        active: list[int] = []
        pairs: list[tuple[int, int, int]] = []  # (lcm K, i, j)
        # seed with the generators in increasing leading-term order
        seeds = [self.make_monic(t) for t in generators if t]
        seeds.sort(key=lambda s: s[0])
        for s in seeds:
            self._check_budget()
            red = self.reduce({s[0]: 1 if self.p else Fraction(1), **dict(s[2])}, active)
            if red:
                self.polys.append(self.make_monic(red))
                active, pairs = self.update(active, pairs, len(self.polys) - 1)
        while pairs:
            self._check_budget()
            best = min(range(len(pairs)), key=lambda t: pairs[t])
            lcm_k, i, j = pairs.pop(best)
            if self.budget.max_degree is not None and mono.degree(lcm_k) > self.budget.max_degree:
                raise BudgetExceeded("degree bound exceeded", self.spairs, len(self.polys),
                                     time.perf_counter() - self.t0)
            self.spairs += 1
            red = self.reduce(self.spoly(i, j, lcm_k), active)
            if red:
                self.polys.append(self.make_monic(red))
                active, pairs = self.update(active, pairs, len(self.polys) - 1)
        return active

    def update(self, active: list[int], pairs: list, ih: int):
        mono = self.mono
        polys = self.polys
        kh, eh, _ = polys[ih]
        lcm = mono.lcm

        def coprime(ka, kb, kl):
            return ka + kb - mono.all == kl

        def divides(ka, kb):
            return mono.divides_raw(mono.raw(ka), mono.raw(kb))

        cand = [(ig, lcm(kh, polys[ig][0])) for ig in active]
        keep = []
        for pos, (ig, l_hg) in enumerate(cand):
            kg = polys[ig][0]
            if coprime(kh, kg, l_hg):
                keep.append((ig, l_hg, True))
                continue
            dominated = any(divides(l2, l_hg) for _, l2 in cand[pos + 1:]) or \
                any(divides(l2, l_hg) for _, l2, _ in keep)
            if not dominated:
                keep.append((ig, l_hg, False))
        new_pairs = [(l, ih, ig) for ig, l, cop in keep if not cop]
        filtered = []
        for l12, i1, i2 in pairs:
            k1, k2 = polys[i1][0], polys[i2][0]
            if not divides(kh, l12) or lcm(k1, kh) == l12 or lcm(k2, kh) == l12:
                filtered.append((l12, i1, i2))
        filtered.extend(new_pairs)
        new_active = [ig for ig in active if not mono.divides_raw(eh, polys[ig][1])]
        new_active.append(ih)
        return new_active, filtered

    def interreduce(self, active: list[int]) -> list[dict]:
        mono = self.mono
        leads = sorted(active, key=lambda i: self.polys[i][0])
        minimal = [i for i in leads
                   if not any(j != i and mono.divides_raw(self.polys[j][1], self.polys[i][1])
                              for j in leads)]
        out = []
        for i in minimal:
            others = [j for j in minimal if j != i]
            k, _, tail = self.polys[i]
            one = 1 if self.p else Fraction(1)
            head = {k: one}
            tail_red = self.reduce(dict(tail), others) if tail else {}
            head.update(tail_red)
            out.append(head)
        return out


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    reduced_basis: tuple[Poly, ...]
    order: str = "degrevlex"
    spairs: int = 0
    elapsed: float = 0.0

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [f.leading_term()[0] for f in self.reduced_basis]

    def is_unit(self) -> bool:
        return any(f.is_constant() and f for f in self.reduced_basis)

    def reduce(self, f: Poly) -> Poly:
        """Normal form of f modulo the basis."""
        eng = _Engine(self.ring, DEFAULT_BUDGET)
        for b in self.reduced_basis:
            eng.polys.append(eng.make_monic(eng.to_internal(b)))
        return eng.to_poly(eng.reduce(eng.to_internal(f.to_ring(self.ring)), range(len(eng.polys))))

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def verify(self) -> bool:
        """Every S-polynomial reduces to zero (coprime pairs skipped) and the
        basis is auto-reduced."""
        eng = _Engine(self.ring, DEFAULT_BUDGET)
        for b in self.reduced_basis:
            eng.polys.append(eng.make_monic(eng.to_internal(b)))
        idx = range(len(eng.polys))
        mono = eng.mono
        for i in idx:
            ki = eng.polys[i][0]
            for j in idx:
                if j == i:
                    continue
                # no leading monomial divides any term of another element
                for kt in [eng.polys[j][0]] + [t for t, _ in eng.polys[j][2]]:
                    if mono.divides_raw(eng.polys[i][1], mono.raw(kt)):
                        return False
                if j < i:
                    continue
                kj = eng.polys[j][0]
                l = mono.lcm(ki, kj)
                if ki + kj - mono.all == l:
                    continue
                if eng.reduce(eng.spoly(i, j, l), idx, full=False):
                    return False
        return True


def groebner(ideal: Ideal, field: int | str | None = None, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced degrevlex Groebner basis over Q (``field=None``/``"q"``) or F_p.

    Raises :class:`BudgetExceeded` when the S-pair or time budget runs out, and
    ``ZeroDivisionError`` if a rational coefficient cannot be reduced mod p.
    """
    modulus = parse_field(field) if field is not None else ideal.ring.modulus
    if modulus != ideal.ring.modulus:
        ideal = ideal.with_modulus(modulus)
    ring = ideal.ring
    eng = _Engine(ring, budget)
    active = eng.run([eng.to_internal(g) for g in ideal.generators if g])
    basis = [eng.to_poly(t) for t in eng.interreduce(active)]
    return GroebnerBasis(ring, tuple(basis), "degrevlex", eng.spairs, time.perf_counter() - eng.t0)


# -- dimension ------------------------------------------------------------------------

def _min_hitting_set(masks: list[int], allowed: int, bound: int) -> int | None:
    """Smallest number of allowed variables meeting every mask, or None if the
    minimum is >= bound (or impossible)."""
    if not masks:
        return 0 if bound > 0 else None
    if bound <= 0:
        return None
    # branch on the mask with the fewest allowed variables
    best = min(masks, key=lambda m: bin(m & allowed).count("1"))
    choices = best & allowed
    if not choices:
        return None
    result = None
    c = choices
    while c:
        v = c & -c
        c ^= v
        rest = [m for m in masks if not m & v]
        sub = _min_hitting_set(rest, allowed, (bound if result is None else result) - 1)
        if sub is not None and (result is None or sub + 1 < result):
            result = sub + 1
        # variables already branched on are excluded for later branches
        allowed &= ~v
    return result


def _minimal_masks(masks: list[int]) -> list[int]:
    masks = sorted(set(masks), key=lambda m: bin(m).count("1"))
    out = []
    for m in masks:
        if not any(o & m == o for o in out):
            out.append(m)
    return out


def _max_independent(masks: list[int], n: int, forced: int = 0) -> int:
    if any(m & ~forced == 0 for m in masks):
        return -1
    allowed = ((1 << n) - 1) & ~forced
    hs = _min_hitting_set(masks, allowed, n + 1)
    return -1 if hs is None else n - hs


@dataclass
class DimensionResult:
    """Krull dimension of R/I with an independent set witnessing it."""

    ideal_label: str
    field: str
    krull_dimension: int | None
    independent_variable_set: tuple[str, ...] = ()
    basis_size: int = 0
    elapsed: float = 0.0
    status: str = "complete"
    expected: int | None = None
    spairs: int = 0
    modular_heuristic: bool = False

    @property
    def matches(self) -> bool:
        return self.status == "complete" and self.krull_dimension == self.expected

    def to_report(self, claim_id: str | None = None, provenance: str = "PAPER"):
        from .report import BUDGET_EXCEEDED, FAIL, PASS, Report

        if self.status != "complete":
            status = BUDGET_EXCEEDED
        else:
            status = PASS if self.krull_dimension == self.expected else FAIL
        details = {
            "field": self.field,
            "independent_variable_set": list(self.independent_variable_set),
            "basis_size": self.basis_size,
            "spairs": self.spairs,
        }
        if self.modular_heuristic:
            details["caveat"] = "modular heuristic: dimension over F_p, not certified over Q"
        return Report(claim_id or f"dim-{self.ideal_label}", status, self.krull_dimension,
                      self.expected, provenance, self.elapsed * 1000, details)


def krull_dimension(gb: GroebnerBasis, label: str = "ideal") -> DimensionResult:
    """Dimension via the largest variable set containing no leading-monomial support.

    The witness is the lexicographically first maximum independent set.
    """
    ring = gb.ring
    n = ring.nvars
    if gb.is_unit():
        return DimensionResult(label, ring.field_name, -1, (), len(gb.reduced_basis), gb.elapsed,
                               spairs=gb.spairs, modular_heuristic=ring.modulus is not None)
    masks = _minimal_masks([sum(1 << i for i, a in enumerate(m) if a) for m in gb.leading_monomials()])
    dim = _max_independent(masks, n)
    forced = 0
    for v in range(n):
        trial = forced | (1 << v)
        if _max_independent(masks, n, trial) == dim:
            # still extendable to a maximum independent set
            if bin(trial).count("1") <= dim:
                forced = trial
    witness = tuple(ring.variables[i] for i in range(n) if forced >> i & 1)
    return DimensionResult(label, ring.field_name, dim, witness, len(gb.reduced_basis), gb.elapsed,
                           spairs=gb.spairs, modular_heuristic=ring.modulus is not None)


def dimension_of_ideal(ideal: Ideal, field=None, budget: Budget = DEFAULT_BUDGET,
                       label: str = "ideal", expected: int | None = None) -> DimensionResult:
    """Groebner basis plus Krull dimension under a budget; never raises on budget."""
    modulus = parse_field(field) if field is not None else ideal.ring.modulus
    t0 = time.perf_counter()
    if len(ideal.nonzero()) == 0:
        ring = ideal.ring.with_modulus(modulus)
        return DimensionResult(label, ring.field_name, ring.nvars, ring.variables, 0,
                               time.perf_counter() - t0, expected=expected,
                               modular_heuristic=modulus is not None)
    try:
        gb = groebner(ideal.nonzero(), modulus, budget)
    except BudgetExceeded as exc:
        return DimensionResult(label, "q" if modulus is None else f"p:{modulus}", None, (),
                               exc.basis_size, exc.elapsed, "budget-exceeded", expected,
                               exc.spairs, modulus is not None)
    res = krull_dimension(gb, label)
    res.expected = expected
    res.elapsed = time.perf_counter() - t0
    return res


def dimension_report(spec, field=None, budget: Budget = DEFAULT_BUDGET) -> DimensionResult:
    """Compute the dimension of a variety's ideal and compare it with the
    dimension the variety is expected to have."""
    label = f"{spec.kind.value}-{spec.algebra.name}"
    return dimension_of_ideal(spec.ideal, field, budget, label, spec.expected_dimension)


# -- tangent rank ------------------------------------------------------------------------

def tangent_rank_nullcone(g, x: Sequence, y: Sequence) -> int:
    """Rank of the differential of G x_B (u x u) -> g x g at (x, y) in u x u.

    Spans ``([v, x], [v, y])`` for v in a basis of g together with ``(m, 0)``
    and ``(0, m)`` for m in a basis of u.
    """
    u = list(g.upper_indices)
    for vec in (x, y):
        if any(c for a, c in enumerate(vec) if a not in u):
            raise ValueError("x and y must be strictly upper triangular")
    zero = g.zero()
    rows = []
    for b in range(g.dimension):
        v = g.basis_element(b)
        rows.append(g.bracket(v, x) + g.bracket(v, y))
    for a in u:
        m = g.basis_element(a)
        rows.append(m + zero)
        rows.append(zero + m)
    return linalg.rank(rows)
