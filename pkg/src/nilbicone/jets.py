"""Jet schemes of the nilpotent and principal cones, and bicones seen as arcs."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .dimension import DEFAULT_BUDGET, Budget, dimension_of_ideal
from .polyring import Ideal, arc_order, jet_expand
from .report import FAIL, PASS, Report
from .varieties import Kind, PairPoint, VarietySpec, build_variety, is_in_bicone
from .invariants import polarized_family

__all__ = ["JetIdeal", "build_jet_ideal", "check_mustata_dimension", "arc_criterion",
           "bicone_as_arcs_check", "truncate"]


@dataclass(frozen=True)
class JetIdeal:
    """Equations of J_m(X) for a cone X given by ``base``.

    ``variable_blocks[k]`` is the slice of ring variables at t-level k.
    """

    base_system_label: str
    order: int
    ideal: Ideal
    variable_blocks: tuple[slice, ...]
    base: VarietySpec

    @property
    def expected_dimension(self) -> int:
        return self.base.expected_dimension * (self.order + 1)

    def level(self, k: int) -> tuple[str, ...]:
        return self.ideal.ring.variables[self.variable_blocks[k]]


def build_jet_ideal(spec: VarietySpec, m: int) -> JetIdeal:
    """Jet ideal of order m of a cone; J_0 is the cone itself.

    Raises
    ------
    ValueError
        For bicone kinds or negative m.
    """
    if not spec.kind.is_cone:
        raise ValueError(f"jet ideals are built for cones only, not {spec.kind.value}")
    if m < 0:
        raise ValueError("jet order must be nonnegative")
    base = spec.ideal
    if len(base) == 0:
        raise ValueError(f"{spec.kind.value} of {spec.algebra.name} has no equations")
    ideal = jet_expand(list(base.generators), m, list(base.labels))
    N = base.ring.nvars
    blocks = tuple(slice(k * N, (k + 1) * N) for k in range(m + 1))
    return JetIdeal(f"{spec.kind.value}-{spec.algebra.name}", m, ideal, blocks, spec)


def truncate(jet: JetIdeal) -> Ideal:
    """Generators of J_m that only involve levels below m, i.e. those of J_{m-1}."""
    keep = [(lab, f) for lab, f in zip(jet.ideal.labels, jet.ideal.generators)
            if int(lab.rsplit("^", 1)[1]) < jet.order]
    ring = jet.ideal.ring.drop(jet.level(jet.order))
    return Ideal(ring, [f.to_ring(ring) for _, f in keep], [lab for lab, _ in keep], allow_zero=True)


def check_mustata_dimension(jet: JetIdeal, field=None, budget: Budget = DEFAULT_BUDGET) -> Report:
    """Compare dim J_m(X) with (m + 1) dim X. Irreducibility is not checked."""
    res = dimension_of_ideal(jet.ideal, field, budget, f"J{jet.order}-{jet.base_system_label}",
                             jet.expected_dimension)
    return res.to_report(f"jets-dim-{jet.base_system_label}-m{jet.order}", "PAPER")


def arc_criterion(p: PairPoint, cone: VarietySpec) -> bool:
    """The line t -> x + t y lies in the cone, i.e. every generator has infinite arc order."""
    return all(arc_order(f, p.x, p.y) == float("inf") for f in cone.ideal.generators)


_BASE_CONE = {Kind.NILPOTENT_BICONE: Kind.NILPOTENT_CONE, Kind.PRINCIPAL_BICONE: Kind.PRINCIPAL_CONE}


def bicone_as_arcs_check(spec: VarietySpec, samples: Sequence[PairPoint]) -> Report:
    """Bicone membership agrees with the arc criterion on every sample.

    The arc condition for all t already forces the span to lie in the cone,
    since the top t-coefficient of f(x + t y) is f(y).
    """
    if spec.kind not in _BASE_CONE:
        raise ValueError(f"{spec.kind.value} is not the bicone of a cone")
    t0 = time.perf_counter()
    cone = build_variety(_BASE_CONE[spec.kind], polarized_family(spec.algebra.n))
    mismatches, members = [], 0
    for idx, p in enumerate(samples):
        a, b = is_in_bicone(p, spec), arc_criterion(p, cone)
        members += a
        if a != b:
            mismatches.append(idx)
    return Report(f"arcs-{spec.kind.value}-{spec.algebra.name}", FAIL if mismatches else PASS,
                  len(samples) - len(mismatches), len(samples), "DERIVED",
                  (time.perf_counter() - t0) * 1000,
                  {"members": members, "mismatched_samples": mismatches})
