"""Dominance on coinvariant classes: cones, orbits, order, projections.

A coinvariant class is dominant when its rational average pairs
nonnegatively with every absolute simple root; by invariance of the average
this agrees with the pairing against the relative simple roots.  The partial
order compares classes through the free basis of coroot-orbit classes, with
an explicit nonnegative-integer certificate.  Heights are measured by the
pairing of the average with 2*rho, an exact rational that the dimension
formulas force to be an integer on dominant classes.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .abelian import IntMatrix, InvariantViolation, solve_integer
from .galois import (
    TwistedRootDatum,
    average_map,
    coinvariants,
    relative_simple_roots,
)
from .rootdatum import (
    dominant_coweights_up_to_height,
    dot_frac,
    pairing_with_roots_matrix,
    rho_data,
)
from .weyl import relative_weyl


class NonDominantError(ValueError):
    pass


@dataclass(frozen=True)
class DominantClass:
    cls: tuple
    certificate: tuple  # <average, alpha_i> over the absolute simple roots


@dataclass(frozen=True)
class OrderCertificate:
    coefficients: tuple  # one nonnegative integer per simple-coroot orbit


def pair_with_character(t: TwistedRootDatum, cls, chi) -> Fraction:
    """<average lift of cls, chi>, exact."""
    return dot_frac(average_map(t, cls), chi)


@functools.lru_cache(maxsize=None)
def class_height(t: TwistedRootDatum, cls) -> Fraction:
    """<average lift, 2 rho>; integral on dominant classes (tested)."""
    return pair_with_character(t, cls, rho_data(t.base).two_rho)


def is_dominant_class(t: TwistedRootDatum, cls):
    """The DominantClass witness, or None."""
    pairings = tuple(
        pair_with_character(t, cls, alpha) for alpha in t.base.simple_roots
    )
    if all(p >= 0 for p in pairings):
        return DominantClass(cls=cls, certificate=pairings)
    return None


@functools.lru_cache(maxsize=None)
def dominant_representative(t: TwistedRootDatum, cls):
    """The unique dominant class in the W0-orbit, with a group element
    carrying the input onto it."""
    w0 = relative_weyl(t)
    hits = []
    for w in w0.elements:
        image = w0.act(w, cls)
        witness = is_dominant_class(t, image)
        if witness is not None:
            hits.append((witness, w))
    if not hits:
        raise InvariantViolation("W0-orbit contains no dominant class")
    distinct = {h[0].cls for h in hits}
    if len(distinct) != 1:
        raise InvariantViolation("W0-orbit contains several dominant classes")
    return hits[0]


@functools.lru_cache(maxsize=None)
def leq(t: TwistedRootDatum, lam, mu):
    """mu - lam as a nonnegative combination of coroot-orbit classes, or None."""
    c = coinvariants(t)
    rel = relative_simple_roots(t)
    diff = c.sub(mu, lam)
    reps = [orbit[0] for orbit in rel.simple_orbit_list]
    cols = [t.base.simple_coroots[i] for i in reps]
    # Solve lift(diff) = sum c_O coroot_O modulo the relation lattice; the
    # orbit part of a solution is unique by the verified injectivity of
    # (Z Phi^vee)_I -> X_*(T)_I.
    from .galois import one_minus_gamma_columns

    m = IntMatrix.from_columns(cols + one_minus_gamma_columns(t), nrows=t.rank)
    sol = solve_integer(m, c.lift(diff))
    if sol is None:
        return None
    coeffs = tuple(sol[: len(cols)])
    if any(x < 0 for x in coeffs):
        return None
    return OrderCertificate(coefficients=coeffs)


def project_dominant(t: TwistedRootDatum, v) -> DominantClass:
    """Class of a dominant absolute coweight; dominance is preserved."""
    if any(sum(a * b for a, b in zip(v, alpha)) < 0 for alpha in t.base.simple_roots):
        raise NonDominantError(f"{v} is not a dominant coweight")
    c = coinvariants(t)
    witness = is_dominant_class(t, c.class_of(v))
    if witness is None:
        raise InvariantViolation("projection of a dominant coweight must be dominant")
    return witness


# ---------------------------------------------------------------------------
# Bounded enumeration


def _torsion_combinations(c):
    factors = [d for _i, d in c.presentation.torsion_slots]
    return itertools.product(*[range(d) for d in factors])


@functools.lru_cache(maxsize=None)
def _free_to_average(t: TwistedRootDatum):
    """Average vectors of the free basis classes, as Fraction tuples."""
    c = coinvariants(t)
    r = c.free_rank
    out = []
    for j in range(r):
        basis_class = (tuple(1 if s == j else 0 for s in range(r)), (0,) * len(c.torsion))
        out.append(average_map(t, basis_class))
    return tuple(out)


def _has_invariant_central_direction(t: TwistedRootDatum) -> bool:
    """Does a nonzero rational free-coordinate direction pair to zero with
    every simple root?  Such directions make height slabs infinite."""
    from .abelian import rational_solve, DependentBasisError

    avgs = _free_to_average(t)
    if not avgs:
        return False
    k = t.base.num_simple
    # Columns of the pairing map free-coords -> (pairings with roots).
    cols = [
        tuple(dot_frac(avg, alpha) for alpha in t.base.simple_roots)
        for avg in avgs
    ]
    if k == 0:
        return True
    try:
        rational_solve(cols, (Fraction(0),) * k)
    except DependentBasisError:
        return True
    return False


def enumerate_dominant_classes(t: TwistedRootDatum, max_height, coord_bound=None):
    """All dominant classes with <average, 2 rho> <= max_height.

    The free-coordinate search box is derived exactly from the averaged
    fundamental-coweight cone; data with invariant central directions (tori,
    GL-like lattices) need an explicit coord_bound.
    """
    c = coinvariants(t)
    r = c.free_rank

    if _has_invariant_central_direction(t):
        if coord_bound is None:
            raise ValueError("datum has invariant central directions; pass coord_bound")
        ranges = [range(-coord_bound, coord_bound + 1)] * r
    else:
        ranges = [range(-b, b + 1) for b in _free_box(t, max_height)]

    out = []
    for free in itertools.product(*ranges):
        for torsion in _torsion_combinations(c):
            cls = (tuple(free), tuple(torsion))
            if class_height(t, cls) > max_height:
                continue
            if is_dominant_class(t, cls) is not None:
                out.append(cls)
    out.sort()
    return out


@functools.lru_cache(maxsize=None)
def _free_box(t: TwistedRootDatum, max_height):
    """Exact per-coordinate bounds covering every dominant class of height
    at most max_height: write the average over the averaged fundamental
    coweights (nonnegative coefficients, height-bounded) and push the cone
    vertices through the inverse of free-coords -> average."""
    from .abelian import rational_solve
    from .rootdatum import fundamental_coweights_rational

    c = coinvariants(t)
    r = c.free_rank
    if r == 0:
        return ()
    rel = relative_simple_roots(t)
    omegas = fundamental_coweights_rational(t.base)
    two_rho = rho_data(t.base).two_rho
    orbit_avgs = []
    for orbit in rel.simple_orbit_list:
        w = omegas[orbit[0]]
        elems_avg = average_vector_frac(t, w)
        orbit_avgs.append(elems_avg)
    heights = [dot_frac(v, two_rho) for v in orbit_avgs]
    if any(h <= 0 for h in heights):
        raise InvariantViolation("averaged fundamental coweight with nonpositive height")

    free_avgs = _free_to_average(t)
    # free coords as rational functions of the average: solve per orbit avg.
    bounds = []
    for i in range(r):
        total = Fraction(0)
        for v, h in zip(orbit_avgs, heights):
            coords = rational_solve([tuple(a) for a in free_avgs], tuple(v))
            if coords is None:
                raise InvariantViolation("orbit average outside the free span")
            total += abs(coords[i]) * Fraction(max_height) / h
        bounds.append(int(total))
    return tuple(bounds)


def average_vector_frac(t: TwistedRootDatum, v):
    """Average of a rational vector over the automorphism group."""
    from .galois import group_elements

    elems = group_elements(t)
    n = t.rank
    total = [Fraction(0)] * n
    for mat, _perm in elems:
        for i in range(n):
            total[i] += sum(Fraction(mat[i, j]) * v[j] for j in range(n))
    return tuple(x / len(elems) for x in total)


def dominant_image_monoid(t: TwistedRootDatum, max_height, coord_bound=None):
    """Classes of dominant absolute coweights, within the height bound.

    Projection preserves the 2*rho height, so this is the exact image of the
    bounded dominant cone upstairs in the bounded dominant cone downstairs.
    """
    sources = dominant_coweights_up_to_height(t.base, max_height, coord_bound)
    return sorted({project_dominant(t, v).cls for v in sources})


@dataclass(frozen=True)
class SurjectivityReport:
    center_is_torus: bool
    surjective_observed: bool
    height_bound: int
    image_size: int
    cone_size: int


def surjectivity_conditions(t: TwistedRootDatum, max_height=12, coord_bound=None) -> SurjectivityReport:
    """Condition (c) of the dominant-lifting criterion (X_*(T) -> X_*(T_ad)
    surjective) alongside the observed image within a bounded cone; the
    implication runs one way only, and both facts are reported as computed."""
    pairing = pairing_with_roots_matrix(t.base)
    from .abelian import smith_normal_form

    dec = smith_normal_form(pairing)
    k = t.base.num_simple
    center_is_torus = dec.rank == k and all(d == 1 for d in dec.diagonal[:k])
    image = dominant_image_monoid(t, max_height, coord_bound)
    cone = enumerate_dominant_classes(t, max_height, coord_bound)
    return SurjectivityReport(
        center_is_torus=center_is_torus,
        surjective_observed=set(image) == set(cone),
        height_bound=max_height,
        image_size=len(image),
        cone_size=len(cone),
    )
