"""Topological invariants and component bookkeeping, in exact arithmetic.

Parabolic degrees, Toledo invariants, and the census of connected
components are computed with Fractions and integers throughout -- no
floating point enters.  The two model bundle families over a punctured
surface (an irreducible one built from a theta characteristic and a
product one) both have parabolic degree 2g - 2 + s, which is the maximal
value allowed by the Milnor-Wood bound; gluing one of each across s nodes
produces hybrid objects classified by the degree of a line subbundle, and
the strictly intermediate degrees label exceptional components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput

__all__ = [
    "ParabolicBundleData",
    "parabolic_degree",
    "MilnorWoodReport",
    "milnor_wood_check",
    "model_bundle_irreducible",
    "model_bundle_product",
    "connected_sum_degree",
    "ComponentClass",
    "classify_hybrid",
    "CensusReport",
    "component_census",
    "coverage_sweep",
]


@dataclass(frozen=True)
class ParabolicBundleData:
    """Parabolic structure: base degree plus weighted flags at punctures.

    ``weights`` holds one tuple per puncture, each a tuple of
    (weight, multiplicity) pairs with weights strictly increasing in
    [0, 1) and multiplicities summing to the rank.
    """

    genus: int
    punctures: int
    rank: int
    baseDegree: int
    weights: tuple

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0 or self.rank < 1:
            raise InvalidInput("genus, punctures must be >= 0 and rank >= 1")
        if len(self.weights) != self.punctures:
            raise InvalidInput(
                f"need one weight system per puncture: {len(self.weights)} != {self.punctures}"
            )
        for system in self.weights:
            prev = Fraction(-1)
            total = 0
            for w, mult in system:
                w = Fraction(w)
                if not (0 <= w < 1):
                    raise InvalidInput(f"weight {w} outside [0, 1)")
                if w <= prev:
                    raise InvalidInput("weights must be strictly increasing")
                if mult < 1:
                    raise InvalidInput("multiplicities must be positive")
                prev = w
                total += mult
            if total != self.rank:
                raise InvalidInput(
                    f"multiplicities at a puncture sum to {total}, rank is {self.rank}"
                )


def parabolic_degree(bundle):
    """Base degree plus the sum of all weights with multiplicity (exact)."""
    total = Fraction(bundle.baseDegree)
    for system in bundle.weights:
        for w, mult in system:
            total += Fraction(w) * mult
    return total


@dataclass(frozen=True)
class MilnorWoodReport:
    toledo: Fraction
    bound: Fraction
    satisfied: bool
    maximal: bool


def milnor_wood_check(toledo, genus, punctures):
    """Check |toledo| against 2g - 2 + s (s >= 1) or 2g - 2 (closed)."""
    if genus < 0 or punctures < 0:
        raise InvalidInput("genus and puncture count must be non-negative")
    toledo = Fraction(toledo)
    bound = Fraction(2 * genus - 2 + (punctures if punctures >= 1 else 0))
    return MilnorWoodReport(
        toledo=toledo,
        bound=bound,
        satisfied=abs(toledo) <= bound,
        maximal=abs(toledo) == bound,
    )


def model_bundle_irreducible(genus, punctures):
    """Rank-two parabolic bundle of the irreducible model family.

    Direct sum of a twisted theta-characteristic cube (base degree
    3g - 3 + s) and the dual of its twisted first power (base degree
    1 - g - s), each carrying the trivial flag of weight 1/2, so the
    parabolic degree is (2g - 2) + s.
    """
    if genus < 0 or punctures < 1:
        raise InvalidInput("irreducible model needs genus >= 0 and at least one puncture")
    base = (3 * genus - 3 + punctures) + (1 - genus - punctures)
    weights = tuple(((Fraction(1, 2), 2),) for _ in range(punctures))
    return ParabolicBundleData(
        genus=genus, punctures=punctures, rank=2, baseDegree=base, weights=weights
    )


def model_bundle_product(genus, punctures):
    """Rank-two parabolic bundle of the product model family.

    Two copies of a theta characteristic (base degree 2(g - 1)) with
    trivial flags of weight 1/2; parabolic degree again (2g - 2) + s.
    """
    if genus < 0 or punctures < 1:
        raise InvalidInput("product model needs genus >= 0 and at least one puncture")
    weights = tuple(((Fraction(1, 2), 2),) for _ in range(punctures))
    return ParabolicBundleData(
        genus=genus,
        punctures=punctures,
        rank=2,
        baseDegree=2 * (genus - 1),
        weights=weights,
    )


def connected_sum_degree(d1, d2):
    """Degree additivity across the connected sum."""
    return Fraction(d1) + Fraction(d2)


@dataclass(frozen=True)
class ComponentClass:
    """Classification data of a glued hybrid object."""

    genusTotal: int
    toledo: int
    degL: int
    exceptional: bool
    w1Zero: bool


def classify_hybrid(g1, g2, s):
    """Classify the hybrid glued from the two model families.

    The glued surface has genus g = g1 + g2 + s - 1; the object is maximal
    (Toledo 2g - 2), its orthogonal rank-two summand has vanishing first
    Stiefel-Whitney class, and the classifying line-bundle degree is
    degL = 2 g1 + s - 2, which always lies in [s, 2g - s - 2].  The hybrid
    lands in an exceptional component exactly when 0 < degL < 2g - 2.
    """
    if g1 < 1 or g2 < 1 or s < 1:
        raise InvalidInput("need g1 >= 1, g2 >= 1 and s >= 1")
    genus_total = g1 + g2 + s - 1
    deg_l = 2 * g1 + s - 2
    toledo = 2 * genus_total - 2
    assert s <= deg_l <= 2 * genus_total - s - 2
    return ComponentClass(
        genusTotal=genus_total,
        toledo=toledo,
        degL=deg_l,
        exceptional=0 < deg_l < 2 * genus_total - 2,
        w1Zero=True,
    )


@dataclass(frozen=True)
class CensusReport:
    genus: int
    total: int
    exceptional: int


def component_census(genus):
    """Connected-component count of the maximal-representation space.

    For a closed surface of genus g >= 2 there are 3 * 2^(2g) + 2g - 4
    components, of which 2g - 3 are the exceptional ones labeled by a
    line-bundle degree strictly between 0 and 2g - 2.
    """
    if genus < 2:
        raise InvalidInput(f"census requires genus >= 2, got {genus}")
    return CensusReport(
        genus=genus,
        total=3 * 2 ** (2 * genus) + 2 * genus - 4,
        exceptional=2 * genus - 3,
    )


def coverage_sweep(g_max):
    """Exceptional degrees attained by hybrid gluings, for each genus.

    Enumerates all (g1, g2, s) with g1, g2 >= 1, s >= 1 and
    g1 + g2 + s - 1 = g; returns per-genus dictionaries recording the
    attained set of degL values and whether it equals the full exceptional
    range {1, ..., 2g - 3}.
    """
    if g_max < 2:
        raise InvalidInput("coverage sweep needs g_max >= 2")
    report = {}
    for g in range(2, g_max + 1):
        attained = set()
        for s in range(1, g):
            for g1 in range(1, g - s + 1):
                g2 = g - g1 - s + 1
                if g2 < 1:
                    continue
                cls = classify_hybrid(g1, g2, s)
                assert cls.genusTotal == g
                attained.add(cls.degL)
        expected = set(range(1, 2 * g - 2))
        report[g] = {
            "attained": attained,
            "expected": expected,
            "complete": attained == expected,
        }
    return report
