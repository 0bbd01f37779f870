"""Based root data: validity, duality, root systems, rho, fundamental group.

A based root datum is modeled on Z^rank twice over: the character copy
carries the simple roots, the cocharacter copy the simple coroots, and the
pairing between them is the standard dot product.  Nonstandard pairings are
encoded by choosing coordinates, never by a pairing matrix, so every
downstream formula stays a dot product.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import (
    DimensionMismatch,
    FgAbelianGroup,
    IntMatrix,
    InvariantViolation,
    dot,
    quotient_group,
    rational_solve,
    vec_add,
    vec_scale,
    vec_sub,
)

ROOT_CLOSURE_CAP = 5000


class InvalidDatumError(ValueError):
    """An operation with precondition `datum valid` received an invalid one."""


@dataclass(frozen=True)
class BasedRootDatum:
    """Simple roots in the character copy of Z^rank, simple coroots in the
    cocharacter copy, paired by the dot product."""

    rank: int
    simple_roots: tuple
    simple_coroots: tuple
    name: str = field(default="", compare=False)

    @staticmethod
    def make(rank, simple_roots, simple_coroots, name=""):
        return BasedRootDatum(
            rank=rank,
            simple_roots=tuple(tuple(int(x) for x in r) for r in simple_roots),
            simple_coroots=tuple(tuple(int(x) for x in r) for r in simple_coroots),
            name=name,
        )

    @property
    def num_simple(self):
        return len(self.simple_roots)

    def cartan_entry(self, i, j):
        """<alpha_i^vee, alpha_j>."""
        return dot(self.simple_coroots[i], self.simple_roots[j])

    def cartan_matrix(self):
        k = self.num_simple
        return tuple(tuple(self.cartan_entry(i, j) for j in range(k)) for i in range(k))


@dataclass(frozen=True)
class ValidityReport:
    checks: tuple  # (name, ok, detail) triples, in evaluation order

    @property
    def valid(self):
        return all(ok for _n, ok, _d in self.checks)

    @property
    def first_violation(self):
        for name, ok, detail in self.checks:
            if not ok:
                return (name, detail)
        return None


def validate(d: BasedRootDatum) -> ValidityReport:
    """Check the based-root-datum axioms; report-only, never raises."""
    checks = []

    shapes_ok = (
        len(d.simple_roots) == len(d.simple_coroots)
        and all(len(r) == d.rank for r in d.simple_roots)
        and all(len(c) == d.rank for c in d.simple_coroots)
    )
    checks.append(("shape", shapes_ok, "roots/coroots must be paired vectors in Z^rank"))
    if not shapes_ok:
        return ValidityReport(tuple(checks))

    if d.num_simple:
        try:
            rational_solve(d.simple_roots, (0,) * d.rank)
            roots_indep = True
        except Exception:
            roots_indep = False
        try:
            rational_solve(d.simple_coroots, (0,) * d.rank)
            coroots_indep = True
        except Exception:
            coroots_indep = False
    else:
        roots_indep = coroots_indep = True
    checks.append(("independence", roots_indep and coroots_indep,
                   "simple roots and coroots must be linearly independent over Q"))

    diag_ok = all(d.cartan_entry(i, i) == 2 for i in range(d.num_simple))
    checks.append(("pairing-diagonal", diag_ok, "<alpha_i^vee, alpha_i> must equal 2"))

    off_ok = True
    for i in range(d.num_simple):
        for j in range(d.num_simple):
            if i == j:
                continue
            a, b = d.cartan_entry(i, j), d.cartan_entry(j, i)
            if a > 0 or (a == 0) != (b == 0):
                off_ok = False
    checks.append(("cartan-offdiagonal", off_ok,
                   "off-diagonal Cartan entries must be nonpositive and vanish symmetrically"))

    if diag_ok and off_ok and roots_indep and coroots_indep:
        try:
            system = _reflection_closure(d)
            checks.append(("finite-type", True, f"{len(system)} roots"))
        except InvariantViolation as e:
            checks.append(("finite-type", False, str(e)))
    else:
        checks.append(("finite-type", False, "skipped: earlier axiom failed"))

    return ValidityReport(tuple(checks))


def require_valid(d: BasedRootDatum):
    report = validate(d)
    if not report.valid:
        name, detail = report.first_violation
        raise InvalidDatumError(f"invalid root datum ({name}): {detail}")


@functools.lru_cache(maxsize=None)
def _reflection_closure(d: BasedRootDatum):
    """All (root, coroot) pairs generated from the simple ones by simple
    reflections; raises InvariantViolation when the closure exceeds the cap."""
    pairs = set(zip(d.simple_roots, d.simple_coroots))
    frontier = list(pairs)
    while frontier:
        new = []
        for beta, beta_v in frontier:
            for alpha, alpha_v in zip(d.simple_roots, d.simple_coroots):
                n = dot(alpha_v, beta)
                m = dot(beta_v, alpha)
                img = (vec_sub(beta, vec_scale(n, alpha)), vec_sub(beta_v, vec_scale(m, alpha_v)))
                if img not in pairs:
                    pairs.add(img)
                    new.append(img)
                    if len(pairs) > ROOT_CLOSURE_CAP:
                        raise InvariantViolation("reflection closure is not finite")
        frontier = new
    return frozenset(pairs)


@dataclass(frozen=True)
class RootSystem:
    """The full (absolute) root system of a datum, with positivity split."""

    datum: BasedRootDatum
    positive: tuple      # (root, coroot) pairs, deterministic order
    negative: tuple

    @property
    def all_pairs(self):
        return self.positive + self.negative

    @property
    def roots(self):
        return tuple(r for r, _c in self.all_pairs)

    def coroot_of(self, root):
        for r, c in self.all_pairs:
            if r == root:
                return c
        raise KeyError(root)

    def simple_coordinates(self, root):
        """Coordinates of a root over the simple roots (integers)."""
        sol = rational_solve(self.datum.simple_roots, root)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise InvariantViolation("root outside the integral simple-root span")
        return tuple(int(x) for x in sol)


@functools.lru_cache(maxsize=None)
def full_root_system(d: BasedRootDatum) -> RootSystem:
    """Reflection closure of the simple roots, split into positive and
    negative roots by simple-root coordinates."""
    require_valid(d)
    pairs = _reflection_closure(d)
    pos, neg = [], []
    for beta, beta_v in sorted(pairs):
        sol = rational_solve(d.simple_roots, beta) if d.num_simple else None
        if sol is None:
            raise InvariantViolation("closure left the simple-root span")
        if all(x >= 0 for x in sol):
            pos.append((beta, beta_v))
        elif all(x <= 0 for x in sol):
            neg.append((beta, beta_v))
        else:
            raise InvariantViolation(f"root {beta} has mixed-sign coordinates")
    if len(pos) != len(neg):
        raise InvariantViolation("positivity split is not symmetric")
    return RootSystem(datum=d, positive=tuple(pos), negative=tuple(neg))


def dualize(d: BasedRootDatum) -> BasedRootDatum:
    """Swap the character and cocharacter copies; an involution."""
    require_valid(d)
    name = d.name + "^" if d.name else ""
    return BasedRootDatum(
        rank=d.rank,
        simple_roots=d.simple_coroots,
        simple_coroots=d.simple_roots,
        name=name.rstrip("^") + "^" if d.name else "",
    )


@functools.lru_cache(maxsize=None)
def fundamental_group(d: BasedRootDatum) -> FgAbelianGroup:
    """X_*(T) modulo the coroot lattice."""
    require_valid(d)
    relations = IntMatrix.from_columns(list(d.simple_coroots), nrows=d.rank)
    return quotient_group(d.rank, relations).quotient


def coroot_lattice_presentation(d: BasedRootDatum):
    """Quotient presentation of X_*(T) by the coroot lattice (the
    fundamental group with its class map)."""
    require_valid(d)
    relations = IntMatrix.from_columns(list(d.simple_coroots), nrows=d.rank)
    return quotient_group(d.rank, relations)


@dataclass(frozen=True)
class RhoData:
    """2*rho and its Levi variants, as exact character vectors."""

    datum: BasedRootDatum
    two_rho: tuple

    def two_rho_levi(self, subset):
        """Sum of the positive roots supported on the given simple indices."""
        subset = frozenset(subset)
        if not subset <= set(range(self.datum.num_simple)):
            raise DimensionMismatch("Levi subset out of range")
        system = full_root_system(self.datum)
        total = (0,) * self.datum.rank
        for root, _coroot in system.positive:
            coords = system.simple_coordinates(root)
            if all(c == 0 or i in subset for i, c in enumerate(coords)):
                total = vec_add(total, root)
        return total


@functools.lru_cache(maxsize=None)
def rho_data(d: BasedRootDatum) -> RhoData:
    system = full_root_system(d)
    total = (0,) * d.rank
    for root, _coroot in system.positive:
        total = vec_add(total, root)
    for coroot in d.simple_coroots:
        if dot(coroot, total) != 2:
            raise InvariantViolation("<alpha^vee, 2rho> != 2")
    return RhoData(datum=d, two_rho=total)


def is_simply_connected(d: BasedRootDatum) -> bool:
    """Do the simple coroots form a Z-basis of the cocharacter lattice?"""
    if d.num_simple != d.rank:
        return False
    m = IntMatrix.from_columns(list(d.simple_coroots), nrows=d.rank)
    return m.is_unimodular()


def is_adjoint(d: BasedRootDatum) -> bool:
    """Do the fundamental coweights form a Z-basis of the cocharacter
    lattice?  Equivalently, is v -> (<v, alpha_j>)_j a bijection onto Z^k?"""
    if d.num_simple != d.rank:
        return False
    m = IntMatrix.from_rows(list(d.simple_roots))
    return m.is_unimodular()


def pairing_with_roots_matrix(d: BasedRootDatum) -> IntMatrix:
    """The map X_*(T) -> Z^{num_simple}, v -> (<v, alpha_j>)_j, as a matrix."""
    return IntMatrix.from_rows(list(d.simple_roots))


def fundamental_coweights_rational(d: BasedRootDatum):
    """Rational coweights omega_i^vee in the span of the coroots with
    <omega_i^vee, alpha_j> = delta_ij.  Exists for any valid datum."""
    require_valid(d)
    k = d.num_simple
    out = []
    for i in range(k):
        target = tuple(Fraction(int(i == j)) for j in range(k))
        # omega_i^vee = sum_m c_m alpha_m^vee with <., alpha_j> = delta_ij
        cols = [tuple(Fraction(d.cartan_entry(m, j)) for j in range(k)) for m in range(k)]
        sol = rational_solve(cols, target)
        if sol is None:
            raise InvariantViolation("Cartan matrix is singular on a valid datum")
        w = tuple(
            sum((sol[m] * d.simple_coroots[m][t] for m in range(k)), Fraction(0))
            for t in range(d.rank)
        )
        out.append(w)
    return tuple(out)


def dominant_coweights_up_to_height(d: BasedRootDatum, max_height, coord_bound=None):
    """All dominant cocharacters v with <v, 2rho> <= max_height.

    For semisimple data the search box is derived exactly from the
    fundamental-coweight cone; data with central directions need an explicit
    coord_bound since their dominant cone is infinite in every height slab.
    """
    require_valid(d)
    two_rho = rho_data(d).two_rho

    def is_dom(v):
        return all(dot(v, a) >= 0 for a in d.simple_roots)

    if d.num_simple == d.rank:
        omegas = fundamental_coweights_rational(d)
        heights = [dot_frac(w, two_rho) for w in omegas]
        if any(h <= 0 for h in heights):
            raise InvariantViolation("fundamental coweight with nonpositive height")
        # v = sum c_i omega_i^vee, c_i = <v, alpha_i> >= 0, sum c_i h_i <= H
        bounds = []
        for t in range(d.rank):
            b = sum(
                (abs(w[t]) * Fraction(max_height) / h for w, h in zip(omegas, heights)),
                Fraction(0),
            )
            bounds.append(int(b))
        ranges = [range(-b, b + 1) for b in bounds]
    else:
        if coord_bound is None:
            raise ValueError("datum has central directions; pass coord_bound")
        ranges = [range(-coord_bound, coord_bound + 1) for _ in range(d.rank)]

    out = []
    for v in _product(ranges):
        if is_dom(v) and dot(v, two_rho) <= max_height:
            out.append(v)
    out.sort()
    return out


def dot_frac(u, v):
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _product(ranges):
    import itertools

    return itertools.product(*ranges)
