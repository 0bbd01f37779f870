"""Characteristic-zero character arithmetic on twisted data.

Irreducible characters are computed by the Freudenthal recursion with the
invariant form built from coroot pairings, all in exact rationals.  For a
twisted datum s regarded as the group being restricted, the restriction to
the fixed subgroup pushes the character along the class map of X^*(s)_I,
and the char-0 decomposition extracts folded irreducibles by repeated
highest-weight subtraction under the dominance order.  Positive
characteristic profiles return the restriction multiset but refuse
irreducible decomposition: that side of the theory is not semisimple, and a
silently truncated answer would be a defect, not a result.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import DimensionMismatch, InvariantViolation, dot, vec_sub
from .dual import CHAR0, CoefficientProfile, dual_twisted, fixed_group_descriptor
from .galois import TwistedRootDatum, coinvariants
from .rootdatum import BasedRootDatum, full_root_system, require_valid
from .coweights import project_dominant


class NonDominantWeightError(ValueError):
    pass


class UnsupportedDecompositionError(RuntimeError):
    """Decomposition refused (no folded data, or a modular profile); the
    restriction multiset, when already computed, rides along."""

    def __init__(self, message, restriction=None):
        super().__init__(message)
        self.restriction = restriction


class ResidualError(InvariantViolation):
    """Highest-weight extraction did not terminate cleanly: invalid folded
    data, never a recoverable state."""


@dataclass(frozen=True)
class WeightMultiset:
    """Finitely supported positive multiplicities on a weight lattice.

    Keys are character vectors for support "absolute", coinvariant normal
    forms for support "coinvariant".
    """

    support_lattice: str  # "absolute" | "coinvariant"
    entries: tuple        # sorted ((key, multiplicity), ...) pairs

    @staticmethod
    def make(support_lattice, mapping):
        items = tuple(sorted((k, int(m)) for k, m in mapping.items() if m != 0))
        if any(m <= 0 for _k, m in items):
            raise ValueError("multiplicities must be strictly positive")
        return WeightMultiset(support_lattice=support_lattice, entries=items)

    def as_dict(self):
        return dict(self.entries)

    @property
    def support(self):
        return tuple(k for k, _m in self.entries)

    def multiplicity(self, key):
        return self.as_dict().get(key, 0)

    @property
    def is_empty(self):
        return not self.entries


def total_dimension(w: WeightMultiset) -> int:
    """Total mass: the rank of the underlying module."""
    return sum(m for _k, m in w.entries)


# ---------------------------------------------------------------------------
# Freudenthal characters


def _invariant_form(system):
    """B(x, y) = sum over roots of <beta^vee, x><beta^vee, y>: an exact
    W-invariant form on the character space, positive on the root span."""
    coroots = [c for _r, c in system.positive]

    def form(x, y):
        total = Fraction(0)
        for c in coroots:
            total += Fraction(dot(c, x)) * dot(c, y)
        return 2 * total

    return form


def _weight_support(d: BasedRootDatum, lam):
    """The saturated weight set of the irreducible with highest weight lam,
    generated downward along simple-root strings."""
    support = {lam}
    frontier = [lam]
    while frontier:
        new = []
        for nu in frontier:
            for alpha, coroot in zip(d.simple_roots, d.simple_coroots):
                p = dot(coroot, nu)
                current = nu
                for _ in range(p):
                    current = vec_sub(current, alpha)
                    if current not in support:
                        support.add(current)
                        new.append(current)
        frontier = new
    return support


def is_dominant_character(d: BasedRootDatum, lam) -> bool:
    return all(dot(coroot, lam) >= 0 for coroot in d.simple_coroots)


@functools.lru_cache(maxsize=None)
def irreducible_character(d: BasedRootDatum, lam: tuple) -> WeightMultiset:
    """Weight multiplicities of the irreducible with highest weight lam,
    by the Freudenthal recursion; exact, with the multiset frozen."""
    require_valid(d)
    lam = tuple(int(x) for x in lam)
    if len(lam) != d.rank:
        raise DimensionMismatch("weight has wrong rank")
    if not is_dominant_character(d, lam):
        raise NonDominantWeightError(f"{lam} is not dominant")
    if d.num_simple == 0:
        return WeightMultiset.make("absolute", {lam: 1})

    system = full_root_system(d)
    form = _invariant_form(system)
    rho = tuple(Fraction(x, 2) for x in _two_rho(d))
    support = _weight_support(d, lam)

    def depth(nu):
        coords = system.simple_coordinates(vec_sub(lam, nu))
        return sum(coords)

    ordered = sorted(support, key=lambda nu: (depth(nu), nu))
    lam_rho = tuple(Fraction(x) + r for x, r in zip(lam, rho))
    norm_lam = form(lam_rho, lam_rho)
    mult = {lam: 1}
    for nu in ordered:
        if nu == lam:
            continue
        total = Fraction(0)
        for alpha, _coroot in system.positive:
            k = 1
            while True:
                shifted = tuple(x + k * a for x, a in zip(nu, alpha))
                m = mult.get(shifted)
                if m is None:
                    if shifted not in support:
                        break
                    m = 0
                if m:
                    total += m * form(shifted, alpha)
                k += 1
        nu_rho = tuple(Fraction(x) + r for x, r in zip(nu, rho))
        denom = norm_lam - form(nu_rho, nu_rho)
        if denom <= 0:
            raise InvariantViolation("Freudenthal denominator must be positive")
        value = 2 * total / denom
        if value.denominator != 1 or value < 0:
            raise InvariantViolation("Freudenthal produced a non-integer multiplicity")
        if value:
            mult[nu] = int(value)
    return WeightMultiset.make("absolute", mult)


def _two_rho(d: BasedRootDatum):
    system = full_root_system(d)
    total = (0,) * d.rank
    for root, _c in system.positive:
        total = tuple(a + b for a, b in zip(total, root))
    return total


def _two_rho_check(d: BasedRootDatum):
    """Sum of the positive coroots: the height functional on characters."""
    system = full_root_system(d)
    total = (0,) * d.rank
    for _root, coroot in system.positive:
        total = tuple(a + b for a, b in zip(total, coroot))
    return total


# ---------------------------------------------------------------------------
# Restriction to coinvariants


def restrict_to_coinvariants(t: TwistedRootDatum, w: WeightMultiset) -> WeightMultiset:
    """Push an absolute multiset on X_*(t) along the class map; total
    dimension is conserved (pushforward preserves mass)."""
    if w.support_lattice != "absolute":
        raise ValueError("input must be supported on the absolute lattice")
    c = coinvariants(t)
    out = {}
    for key, m in w.entries:
        cls = c.class_of(key)
        out[cls] = out.get(cls, 0) + m
    result = WeightMultiset.make("coinvariant", out)
    if total_dimension(result) != total_dimension(w):
        raise InvariantViolation("pushforward lost mass")
    return result


# ---------------------------------------------------------------------------
# Folded decomposition


@dataclass(frozen=True)
class DecompositionResult:
    summands: tuple            # sorted ((dominant class, multiplicity), ...)
    residual: WeightMultiset   # empty on success
    restriction: WeightMultiset = field(compare=False, default=None)

    def as_dict(self):
        return dict(self.summands)


def _folded_context(s: TwistedRootDatum, profile: CoefficientProfile, restriction=None):
    """The folded datum of the fixed group of s, or the documented refusal."""
    if not profile.is_char0:
        raise UnsupportedDecompositionError(
            f"profile {profile} is not semisimple; restriction only",
            restriction=restriction,
        )
    desc = fixed_group_descriptor(s, profile)
    if desc.folded_cartan is None:
        raise UnsupportedDecompositionError(
            "no verified folded root datum for this input", restriction=restriction
        )
    return desc


def _class_to_vector(cls):
    free, torsion = cls
    if any(torsion):
        raise UnsupportedDecompositionError("torsion class outside the folded lattice")
    return free


def _extract_irreducibles(folded: BasedRootDatum, mapping):
    """Greedy highest-weight extraction: subtract the irreducible character
    at a maximal-height dominant weight until nothing remains."""
    remaining = dict(mapping)
    height = _two_rho_check(folded)
    summands = {}
    while remaining:
        top = max(remaining, key=lambda v: (dot(height, v), v))
        m = remaining[top]
        if m < 0 or not is_dominant_character(folded, top):
            raise ResidualError(f"extraction stuck at {top} with multiplicity {m}")
        char = irreducible_character(folded, top)
        for key, mult in char.entries:
            new = remaining.get(key, 0) - m * mult
            if new < 0:
                raise ResidualError(f"negative multiplicity at {key}")
            if new:
                remaining[key] = new
            else:
                remaining.pop(key, None)
        summands[top] = summands.get(top, 0) + m
    return summands


def branch_to_fixed_group(
    s: TwistedRootDatum, lam, profile: CoefficientProfile = CHAR0
) -> DecompositionResult:
    """Restrict the irreducible of the datum s with highest weight lam (a
    dominant character of s) to the fixed-point group, and decompose.

    The summand at the projected class of lam always appears (the projected
    class is the folded highest weight of the restriction's top stratum).
    """
    lam = tuple(int(x) for x in lam)
    char = irreducible_character(s.base, lam)
    dual = dual_twisted(s)
    restricted = restrict_to_coinvariants(dual, char)
    desc = _folded_context(s, profile, restriction=restricted)
    folded = desc.folded_cartan.datum
    mapping = {_class_to_vector(cls): m for cls, m in restricted.entries}
    summands = _extract_irreducibles(folded, mapping)
    result = DecompositionResult(
        summands=tuple(sorted(((vec, ()), m) for vec, m in summands.items())),
        residual=WeightMultiset.make("coinvariant", {}),
        restriction=restricted,
    )
    _verify_branch(s, lam, result, restricted, folded)
    return result


def _verify_branch(s, lam, result, restricted, folded):
    rebuilt = {}
    for cls, m in result.summands:
        char = irreducible_character(folded, cls[0])
        for key, mult in char.entries:
            k = (key, ())
            rebuilt[k] = rebuilt.get(k, 0) + m * mult
    if rebuilt != restricted.as_dict():
        raise ResidualError("branch summands do not reconstruct the restriction")
    top = project_dominant(dual_twisted(s), lam).cls
    if result.as_dict().get(top, 0) < 1:
        raise InvariantViolation("projected highest class missing from the branch")


def decompose_tensor(
    s: TwistedRootDatum, lam_cls, mu_cls, profile: CoefficientProfile = CHAR0
) -> DecompositionResult:
    """Product of two folded irreducible characters, decomposed again; the
    unit object tensors trivially and dimensions multiply."""
    desc = _folded_context(s, profile)
    folded = desc.folded_cartan.datum
    a = _class_to_vector(lam_cls)
    b = _class_to_vector(mu_cls)
    char_a = irreducible_character(folded, a)
    char_b = irreducible_character(folded, b)
    product = {}
    for ka, ma in char_a.entries:
        for kb, mb in char_b.entries:
            key = tuple(x + y for x, y in zip(ka, kb))
            product[key] = product.get(key, 0) + ma * mb
    summands = _extract_irreducibles(folded, product)
    result = DecompositionResult(
        summands=tuple(sorted(((vec, ()), m) for vec, m in summands.items())),
        residual=WeightMultiset.make("coinvariant", {}),
    )
    dims = total_dimension(char_a) * total_dimension(char_b)
    rebuilt = sum(
        m * total_dimension(irreducible_character(folded, cls[0]))
        for cls, m in result.summands
    )
    if dims != rebuilt:
        raise ResidualError("tensor dimensions do not multiply")
    return result


def weight_rank(t: TwistedRootDatum, mu_cls, nu_cls, profile: CoefficientProfile = CHAR0) -> int:
    """The rank of the weight space attached to nu in the folded irreducible
    with highest class mu, both classes living in X_*(t)_I."""
    s = dual_twisted(t)
    desc = _folded_context(s, profile)
    folded = desc.folded_cartan.datum
    mu_vec = _class_to_vector(mu_cls)
    nu_vec = _class_to_vector(nu_cls)
    if not is_dominant_character(folded, mu_vec):
        raise NonDominantWeightError(f"{mu_cls} is not a dominant class")
    char = irreducible_character(folded, mu_vec)
    return char.multiplicity(nu_vec)


def folded_irreducible_character(
    t_or_s: TwistedRootDatum, cls, side: str = "dual", profile: CoefficientProfile = CHAR0
) -> WeightMultiset:
    """Character of a folded irreducible as a coinvariant multiset.

    side="dual": classes in X^*(s)_I of the given datum s (the branching
    side); side="original": classes in X_*(t)_I (the Schubert side).
    """
    s = t_or_s if side == "dual" else dual_twisted(t_or_s)
    desc = _folded_context(s, profile)
    folded = desc.folded_cartan.datum
    char = irreducible_character(folded, _class_to_vector(cls))
    return WeightMultiset.make("coinvariant", {(k, ()): m for k, m in char.entries})
