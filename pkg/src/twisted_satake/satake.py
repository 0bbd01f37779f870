"""Schubert combinatorics of the twisted affine Grassmannian.

Strata are dominant coinvariant classes graded by the pairing of the
average lift with 2*rho (an exact rational which the dimension theorem
forces to be a nonnegative integer); closures are computed by the
coroot-orbit dominance order; components by the Kottwitz class.  Cell
dimensions for the attractor intersections and their convolution analogues
are half-pairings, asserted integral exactly where the theory claims
integrality, so the assertion doubles as a defect detector.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .abelian import DimensionMismatch, InvariantViolation
from .coweights import (
    class_height,
    dominant_representative,
    enumerate_dominant_classes,
    is_dominant_class,
    leq,
    pair_with_character,
)
from .galois import (
    TwistedRootDatum,
    coinvariants,
    pi1_coinvariants_presentation,
    relative_simple_roots,
)
from .rootdatum import rho_data


class NonDominantError(ValueError):
    pass


def _require_dominant(t, cls):
    if is_dominant_class(t, cls) is None:
        raise NonDominantError(f"{cls} is not a dominant class")


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InvariantViolation(f"{what} is not an integer: {x}")
    return int(x)


@dataclass(frozen=True)
class SchubertStratum:
    label: tuple       # dominant coinvariant class
    dim: int           # <label, 2 rho>
    component: tuple   # class in pi_1(G)_I


def component_of(t: TwistedRootDatum, cls) -> tuple:
    """The Kottwitz component of a coinvariant class; additive."""
    c = coinvariants(t)
    pres = pi1_coinvariants_presentation(t)
    return pres.class_of(c.lift(cls))


def stratum(t: TwistedRootDatum, cls) -> SchubertStratum:
    """The stratum attached to a dominant class, with its exact dimension."""
    _require_dominant(t, cls)
    h = class_height(t, cls)
    dim = _integral(h, "stratum dimension")
    if dim < 0:
        raise InvariantViolation("negative stratum dimension")
    return SchubertStratum(label=cls, dim=dim, component=component_of(t, cls))


@dataclass(frozen=True)
class SchubertPoset:
    datum: TwistedRootDatum
    strata: tuple          # SchubertStratum, sorted by (dim, label)
    relations: tuple       # ((lower label, upper label, certificate coefficients), ...)

    @property
    def labels(self):
        return tuple(s.label for s in self.strata)

    def below(self, label):
        return tuple(lo for lo, up, _c in self.relations if up == label) + (label,)

    def covering_relations(self):
        """Hasse edges: lower < upper with nothing strictly between."""
        strict = {(lo, up) for lo, up, _c in self.relations if lo != up}
        covers = []
        for lo, up in sorted(strict):
            if not any((lo, mid) in strict and (mid, up) in strict
                       for mid in self.labels if mid not in (lo, up)):
                covers.append((lo, up))
        return tuple(covers)


def strata_below(t: TwistedRootDatum, cls):
    """The dominant classes mu <= cls: enumerate the coefficient cone over
    the coroot-orbit classes (each step drops the height by exactly 2)."""
    _require_dominant(t, cls)
    c = coinvariants(t)
    from .galois import orbit_coroot_classes

    basis = orbit_coroot_classes(t)
    h = _integral(class_height(t, cls), "stratum dimension")
    max_steps = h // 2
    out = set()
    for coeffs in itertools.product(range(max_steps + 1), repeat=len(basis)):
        if sum(coeffs) > max_steps:
            continue
        cur = cls
        for x, b in zip(coeffs, basis):
            cur = c.sub(cur, c.scale(x, b))
        if is_dominant_class(t, cur) is not None:
            out.add(cur)
    return sorted(out)


def closure_poset(t: TwistedRootDatum, cls=None, max_height=None, coord_bound=None) -> SchubertPoset:
    """The stratification of a Schubert closure (given its open label), or of
    the union of strata within a height bound."""
    if (cls is None) == (max_height is None):
        raise ValueError("pass exactly one of cls / max_height")
    if cls is not None:
        labels = strata_below(t, cls)
    else:
        labels = enumerate_dominant_classes(t, max_height, coord_bound)
    strata = tuple(sorted((stratum(t, l) for l in labels), key=lambda s: (s.dim, s.label)))
    relations = []
    for lo in labels:
        for up in labels:
            cert = leq(t, lo, up)
            if cert is not None:
                relations.append((lo, up, cert.coefficients))
    poset = SchubertPoset(datum=t, strata=strata, relations=tuple(sorted(relations)))
    _check_poset(t, poset)
    return poset


def _check_poset(t, poset):
    # Dimensions strictly increase along strict order relations within a
    # component (each certificate step has positive height).
    dims = {s.label: s.dim for s in poset.strata}
    comp = {s.label: s.component for s in poset.strata}
    for lo, up, coeffs in poset.relations:
        if lo == up:
            continue
        if comp[lo] != comp[up]:
            raise InvariantViolation("comparable strata in different components")
        if dims[lo] >= dims[up]:
            raise InvariantViolation("dimension does not increase along the order")


# ---------------------------------------------------------------------------
# Semi-infinite and convolution cells


@dataclass(frozen=True)
class MvCell:
    mu: tuple
    lam: tuple
    nonempty: bool
    dim: int | None


def mv_cell(t: TwistedRootDatum, mu, lam) -> MvCell:
    """The attractor-intersection cell: nonempty exactly when the dominant
    representative of mu lies below lam; then of dimension <mu + lam, rho>,
    an integer precisely in that case (asserted)."""
    _require_dominant(t, lam)
    rep, _w = dominant_representative(t, mu)
    nonempty = leq(t, rep.cls, lam) is not None
    if not nonempty:
        return MvCell(mu=mu, lam=lam, nonempty=False, dim=None)
    half = (class_height(t, mu) + class_height(t, lam)) / 2
    return MvCell(mu=mu, lam=lam, nonempty=True, dim=_integral(half, "cell half-pairing"))


@dataclass(frozen=True)
class ConvCell:
    mu: tuple
    mu2: tuple
    lam: tuple
    lam2: tuple
    nonempty: bool
    dim: int | None


def conv_cell(t: TwistedRootDatum, mu, mu2, lam, lam2) -> ConvCell:
    """Convolution analogue in the twisted labeling: both dominant
    representatives must sit below their closures; the dimension is the
    half-pairing of the total sum with 2*rho."""
    _require_dominant(t, lam)
    _require_dominant(t, lam2)
    rep1, _ = dominant_representative(t, mu)
    rep2, _ = dominant_representative(t, mu2)
    nonempty = (
        leq(t, rep1.cls, lam) is not None and leq(t, rep2.cls, lam2) is not None
    )
    if not nonempty:
        return ConvCell(mu=mu, mu2=mu2, lam=lam, lam2=lam2, nonempty=False, dim=None)
    total = (
        class_height(t, mu) + class_height(t, mu2)
        + class_height(t, lam) + class_height(t, lam2)
    ) / 2
    return ConvCell(
        mu=mu, mu2=mu2, lam=lam, lam2=lam2,
        nonempty=True, dim=_integral(total, "convolution half-pairing"),
    )


# ---------------------------------------------------------------------------
# corr and parity


def corr(t: TwistedRootDatum, levi_orbits, v) -> int:
    """<class of v, 2 rho - 2 rho_M> for the Levi attached to a union of
    simple-root orbits: the Z-linear normalization shift between constant
    term functors.  Vanishes on the Levi coroot classes and is I-invariant."""
    rel = relative_simple_roots(t)
    levi_orbits = tuple(sorted(set(levi_orbits)))
    if any(i < 0 or i >= rel.relative_rank for i in levi_orbits):
        raise DimensionMismatch("Levi orbit index out of range")
    subset = set()
    for i in levi_orbits:
        subset.update(rel.simple_orbit_list[i])
    rd = rho_data(t.base)
    shift = tuple(a - b for a, b in zip(rd.two_rho, rd.two_rho_levi(subset)))
    c = coinvariants(t)
    value = pair_with_character(t, c.class_of(tuple(v)), shift)
    return _integral(value, "corr value")


def parity_check(t: TwistedRootDatum, component, max_height=20, coord_bound=None):
    """The parity of <., 2 rho> across the bounded dominant classes of one
    Kottwitz component; inconsistency is an invariant violation, never a
    silent answer.  None when the bound sees no stratum in the component."""
    labels = enumerate_dominant_classes(t, max_height, coord_bound)
    parities = set()
    for cls in labels:
        if component_of(t, cls) != component:
            continue
        parities.add(stratum(t, cls).dim % 2)
    if not parities:
        return None
    if len(parities) != 1:
        raise InvariantViolation(
            f"parity is not constant on component {component}: {sorted(parities)}"
        )
    return parities.pop()


# ---------------------------------------------------------------------------
# Export


def format_class(cls) -> str:
    free, torsion = cls
    head = ",".join(str(x) for x in free)
    if torsion:
        head = head + ";" + ",".join(str(x) for x in torsion)
    return head or "0"


def poset_to_json(poset: SchubertPoset) -> str:
    nodes = [
        {"label": format_class(s.label), "dim": s.dim, "component": format_class(s.component)}
        for s in poset.strata
    ]
    edges = [
        {"lower": format_class(lo), "upper": format_class(up)}
        for lo, up in poset.covering_relations()
    ]
    return json.dumps({"nodes": nodes, "edges": edges}, sort_keys=True)


def poset_to_dot(poset: SchubertPoset) -> str:
    lines = ["digraph schubert {"]
    for s in poset.strata:
        lines.append(
            f'  "{format_class(s.label)}" [label="{format_class(s.label)} (dim {s.dim})"];'
        )
    for lo, up in poset.covering_relations():
        lines.append(f'  "{format_class(lo)}" -> "{format_class(up)}";')
    lines.append("}")
    return "\n".join(lines)
