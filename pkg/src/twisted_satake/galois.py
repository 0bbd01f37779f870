"""Finite pinned automorphism groups acting on root data, and coinvariants.

The inertia group is modeled by its finite image: a finite group of
pinning-preserving automorphisms, enumerated explicitly.  The quotient
X_*(T)_I of the cocharacter lattice by the sublattice generated by
(1 - gamma)v is presented via Smith normal form, with a canonical class map,
an exact section, and rational averaging back into the invariant subspace.
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
    induced_map_kernel,
    quotient_group,
)
from .rootdatum import (
    BasedRootDatum,
    InvalidDatumError,
    fundamental_coweights_rational,
    is_adjoint,
    require_valid,
)

GROUP_CLOSURE_CAP = 10000


class UnsupportedOrbitError(ValueError):
    """An orbit of simple roots is neither pairwise orthogonal nor an
    adjacent A2 pair; nothing in scope produces these."""


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A pinned automorphism: a unimodular map on X_*(T) together with the
    permutation it induces on the simple roots."""

    lattice_map: IntMatrix
    root_permutation: tuple
    order: int

    def __post_init__(self):
        if self.lattice_map.rows != self.lattice_map.cols:
            raise DimensionMismatch("lattice map must be square")

    @staticmethod
    def make(lattice_map, root_permutation, order=None):
        m = lattice_map if isinstance(lattice_map, IntMatrix) else IntMatrix.from_rows(lattice_map)
        perm = tuple(int(x) for x in root_permutation)
        if order is None:
            order = _matrix_order(m)
        return DiagramAutomorphism(lattice_map=m, root_permutation=perm, order=order)


def _matrix_order(m: IntMatrix, cap=64):
    acc = m
    ident = IntMatrix.identity(m.rows)
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = acc.mul(m)
    raise InvariantViolation("lattice map order exceeds cap; not a finite pinned action")


def check_pinned(base: BasedRootDatum, g: DiagramAutomorphism):
    """Verify the DiagramAutomorphism invariants against a base datum."""
    n = base.rank
    if g.lattice_map.rows != n:
        raise DimensionMismatch("lattice map size does not match datum rank")
    if not g.lattice_map.is_unimodular():
        raise InvalidDatumError("lattice map is not unimodular")
    if sorted(g.root_permutation) != list(range(base.num_simple)):
        raise InvalidDatumError("root_permutation is not a permutation of the simple indices")
    if _matrix_order(g.lattice_map) != g.order:
        raise InvalidDatumError("declared order does not match the lattice map")
    lt = g.lattice_map.transpose()
    for i, (root, coroot) in enumerate(zip(base.simple_roots, base.simple_coroots)):
        j = g.root_permutation[i]
        if g.lattice_map.apply(coroot) != base.simple_coroots[j]:
            raise InvalidDatumError(f"lattice map does not send coroot {i} to coroot {j}")
        # Contragredient action on characters: alpha_i -> alpha_j means
        # transpose pulls alpha_j back to alpha_i.
        if lt.apply(base.simple_roots[j]) != root:
            raise InvalidDatumError(f"contragredient does not send root {i} to root {j}")


@dataclass(frozen=True)
class TwistedRootDatum:
    """A based, pinned root datum with a finite group of diagram
    automorphisms (the inertia action)."""

    base: BasedRootDatum
    generators: tuple
    name: str = field(default="", compare=False)

    @staticmethod
    def make(base, generators, name=""):
        t = TwistedRootDatum(base=base, generators=tuple(generators), name=name or base.name)
        validate_twisted(t)
        return t

    @property
    def rank(self):
        return self.base.rank


def validate_twisted(t: TwistedRootDatum):
    require_valid(t.base)
    for g in t.generators:
        check_pinned(t.base, g)
    group_elements(t)


def split_twisted(base: BasedRootDatum, name="") -> TwistedRootDatum:
    """The split form: trivial inertia action."""
    return TwistedRootDatum.make(base, (), name=name or base.name)


@functools.lru_cache(maxsize=None)
def group_elements(t: TwistedRootDatum):
    """The enumerated closure of the generated automorphism group, as
    (lattice matrix, root permutation) pairs; deterministic order."""
    n = t.rank
    k = t.base.num_simple
    ident = (IntMatrix.identity(n), tuple(range(k)))
    elems = {ident}
    frontier = [ident]
    gens = [(g.lattice_map, g.root_permutation) for g in t.generators]
    while frontier:
        new = []
        for mat, perm in frontier:
            for gm, gp in gens:
                prod = (gm.mul(mat), tuple(gp[perm[i]] for i in range(k)))
                if prod not in elems:
                    elems.add(prod)
                    new.append(prod)
                    if len(elems) > GROUP_CLOSURE_CAP:
                        raise InvariantViolation("automorphism group is not small/finite")
        frontier = new
    return tuple(sorted(elems, key=lambda e: e[0].entries))


def group_order(t: TwistedRootDatum) -> int:
    return len(group_elements(t))


# ---------------------------------------------------------------------------
# Coinvariants


@dataclass(frozen=True)
class CoinvariantLattice:
    """X_*(T)_I presented by Smith normal form of the (1-gamma) columns."""

    datum: TwistedRootDatum
    presentation: object  # QuotientPresentation
    group: FgAbelianGroup

    @property
    def torsion(self):
        return self.group.invariant_factors

    @property
    def free_rank(self):
        return self.group.free_rank

    def class_of(self, v):
        return self.presentation.class_of(v)

    def lift(self, cls):
        return self.presentation.lift(cls)

    def zero(self):
        return self.presentation.zero_class()

    def add(self, a, b):
        return self.presentation.add(a, b)

    def sub(self, a, b):
        return self.presentation.sub(a, b)

    def neg(self, a):
        return self.presentation.neg(a)

    def scale(self, n, a):
        return self.presentation.scale(n, a)


def one_minus_gamma_columns(t: TwistedRootDatum):
    """Columns (1 - gamma) e_j over the generators; they span the full
    augmentation sublattice (1 - g)X_*(T) over the whole group."""
    n = t.rank
    cols = []
    for g in t.generators:
        m = g.lattice_map
        for j in range(n):
            col = tuple((1 if i == j else 0) - m[i, j] for i in range(n))
            cols.append(col)
    return cols


@functools.lru_cache(maxsize=None)
def coinvariants(t: TwistedRootDatum) -> CoinvariantLattice:
    validate_twisted(t)
    relations = IntMatrix.from_columns(one_minus_gamma_columns(t), nrows=t.rank)
    pres = quotient_group(t.rank, relations)
    return CoinvariantLattice(datum=t, presentation=pres, group=pres.quotient)


@functools.lru_cache(maxsize=None)
def average_map(t: TwistedRootDatum, cls):
    """The rational invariant cocharacter (1/|I|) sum_gamma gamma(lift)."""
    c = coinvariants(t)
    lift = c.lift(cls)
    return average_vector(t, lift)


def average_vector(t: TwistedRootDatum, v):
    elems = group_elements(t)
    n = t.rank
    total = [0] * n
    for mat, _perm in elems:
        img = mat.apply(v)
        for i in range(n):
            total[i] += img[i]
    size = len(elems)
    return tuple(Fraction(x, size) for x in total)


# ---------------------------------------------------------------------------
# Relative roots


@dataclass(frozen=True)
class RelativeRootData:
    """I-orbits of simple roots with their type and rational averages."""

    datum: TwistedRootDatum
    simple_orbit_list: tuple   # tuple of sorted index tuples
    orbit_type: tuple          # "orthogonal" | "adjacent-pair", per orbit
    averaged_simple_roots: tuple  # Fraction tuples, per orbit

    @property
    def relative_rank(self):
        return len(self.simple_orbit_list)


@functools.lru_cache(maxsize=None)
def relative_simple_roots(t: TwistedRootDatum) -> RelativeRootData:
    """Partition the simple roots into I-orbits; the fibers of the
    restriction to relative simple roots, classified by Cartan pairings."""
    validate_twisted(t)
    k = t.base.num_simple
    perms = [perm for _m, perm in group_elements(t)]
    seen = set()
    orbits = []
    for i in range(k):
        if i in seen:
            continue
        orbit = sorted({p[i] for p in perms})
        seen.update(orbit)
        orbits.append(tuple(orbit))
    types = []
    averages = []
    for orbit in orbits:
        pairings = [
            t.base.cartan_entry(i, j)
            for i in orbit
            for j in orbit
            if i != j
        ]
        if all(x == 0 for x in pairings):
            types.append("orthogonal")
        elif len(orbit) == 2 and all(x == -1 for x in pairings):
            types.append("adjacent-pair")
        else:
            raise UnsupportedOrbitError(
                f"orbit {orbit} is neither orthogonal nor an adjacent A2 pair"
            )
        size = len(orbit)
        avg = tuple(
            sum((Fraction(t.base.simple_roots[i][s]) for i in orbit), Fraction(0)) / size
            for s in range(t.rank)
        )
        averages.append(avg)
    return RelativeRootData(
        datum=t,
        simple_orbit_list=tuple(orbits),
        orbit_type=tuple(types),
        averaged_simple_roots=tuple(averages),
    )


def orbit_coroot_classes(t: TwistedRootDatum):
    """The classes of one simple coroot per orbit: the basis of the image of
    (Z Phi^vee)_I in X_*(T)_I used by the dominance order."""
    c = coinvariants(t)
    rel = relative_simple_roots(t)
    return tuple(c.class_of(t.base.simple_coroots[orbit[0]]) for orbit in rel.simple_orbit_list)


# ---------------------------------------------------------------------------
# The coroot-coinvariants exact sequence and Kottwitz components


@dataclass(frozen=True)
class ExactSequenceData:
    """(Z Phi^vee)_I -> X_*(T)_I -> pi_1(G)_I with the verification record."""

    datum: TwistedRootDatum
    coroot_coinvariants: FgAbelianGroup
    middle: FgAbelianGroup
    cokernel: FgAbelianGroup
    pi1_coinvariants: FgAbelianGroup
    injective: bool

    @property
    def verified(self):
        return self.injective and self.cokernel == self.pi1_coinvariants


@functools.lru_cache(maxsize=None)
def coroot_coinvariants_exact_sequence(t: TwistedRootDatum) -> ExactSequenceData:
    """Verify exactness of the coinvariant sequence by Smith-normal-form rank
    computations; an internal failure is a defect, not an input error."""
    c = coinvariants(t)
    rel = relative_simple_roots(t)
    k = t.base.num_simple

    # (Z Phi^vee)_I: coinvariants of the permutation module on simple coroots.
    perm_cols = []
    for g in t.generators:
        for i in range(k):
            col = [0] * k
            col[i] += 1
            col[g.root_permutation[i]] -= 1
            perm_cols.append(tuple(col))
    perm_pres = quotient_group(k, IntMatrix.from_columns(perm_cols, nrows=k))
    coroot_coinv = perm_pres.quotient
    if coroot_coinv.invariant_factors:
        raise InvariantViolation("(Z Phi^vee)_I must be free on the orbit basis")
    if coroot_coinv.free_rank != rel.relative_rank:
        raise InvariantViolation("(Z Phi^vee)_I rank must match the number of orbits")

    # Injectivity of the induced map into X_*(T)_I.
    orbit_reps = [orbit[0] for orbit in rel.simple_orbit_list]
    m = IntMatrix.from_columns(
        [t.base.simple_coroots[i] for i in orbit_reps], nrows=t.rank
    )
    kernel_gens = induced_map_kernel(m, c.presentation)
    injective = all(all(x == 0 for x in g) for g in kernel_gens)

    # Cokernel: X_*(T)_I modulo the orbit classes, against pi_1(G)_I.
    coker_cols = one_minus_gamma_columns(t) + [
        tuple(t.base.simple_coroots[i]) for i in orbit_reps
    ]
    coker = quotient_group(t.rank, IntMatrix.from_columns(coker_cols, nrows=t.rank)).quotient
    pi1 = kottwitz_components(t)
    data = ExactSequenceData(
        datum=t,
        coroot_coinvariants=coroot_coinv,
        middle=c.group,
        cokernel=coker,
        pi1_coinvariants=pi1,
        injective=injective,
    )
    if not data.verified:
        raise InvariantViolation("coroot-coinvariants sequence failed to verify")
    return data


@functools.lru_cache(maxsize=None)
def pi1_coinvariants_presentation(t: TwistedRootDatum):
    """Presentation of pi_1(G)_I = X_*(T) / (Z Phi^vee + (1-gamma)X_*(T)),
    with its class map (the Kottwitz component map)."""
    validate_twisted(t)
    cols = [tuple(cr) for cr in t.base.simple_coroots] + one_minus_gamma_columns(t)
    return quotient_group(t.rank, IntMatrix.from_columns(cols, nrows=t.rank))


def kottwitz_components(t: TwistedRootDatum) -> FgAbelianGroup:
    """pi_1(G)_I, the component group of the twisted affine Grassmannian."""
    return pi1_coinvariants_presentation(t).quotient


# ---------------------------------------------------------------------------
# Fundamental coweights on adjoint data


def fundamental_coweight_pairing(t: TwistedRootDatum, orbit, beta_index) -> Fraction:
    """<a_1(averaged fundamental coweight of the orbit), beta>, exactly.

    Requires an adjoint base, where the fundamental coweights are a Z-basis.
    """
    if not is_adjoint(t.base):
        raise InvalidDatumError("fundamental coweight pairing needs an adjoint base datum")
    rel = relative_simple_roots(t)
    orbit = tuple(sorted(orbit))
    if orbit not in rel.simple_orbit_list:
        raise DimensionMismatch(f"{orbit} is not an I-orbit of simple roots")
    omegas = fundamental_coweights_rational(t.base)
    rep = orbit[0]
    avg = _average_fraction_vector(t, omegas[rep])
    beta = t.base.simple_roots[beta_index]
    return sum((a * b for a, b in zip(avg, beta)), Fraction(0))


def _average_fraction_vector(t: TwistedRootDatum, v):
    elems = group_elements(t)
    n = t.rank
    total = [Fraction(0)] * n
    for mat, _perm in elems:
        for i in range(n):
            total[i] += sum(Fraction(mat[i, j]) * v[j] for j in range(n))
    return tuple(x / len(elems) for x in total)


def invariant_subspace_dimension(t: TwistedRootDatum) -> int:
    """Dimension over Q of the gamma-invariant subspace of X_*(T) tensor Q."""
    from .abelian import smith_normal_form

    cols = one_minus_gamma_columns(t)
    if not cols:
        return t.rank
    m = IntMatrix.from_columns(cols, nrows=t.rank)
    return t.rank - smith_normal_form(m).rank
