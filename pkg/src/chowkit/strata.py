"""Codimension-1 boundary strata of the compactified trigonal space.

A codim-1 stratum splits the b = 2g+4 simple branch points into two sides
of sizes j and b-j (both >= 2), picks a ramification profile over the node
(a partition of 3), and a marked-curve configuration on each side: one
connected degree-3 cover, or a degree-2 cover plus a trivial degree-1
piece.  Genera are pinned by Riemann-Hurwitz on each component, all
branch points sit on the component of degree >= 2, and each side must be
a stable marked Hurwitz space (which works out to "carries at least two
branch points").

Descriptors are canonicalized with side 1 the larger-j side; at j = b-j
the mirror pair collapses to one stratum with sides sorted.  The gluing
quotient group is looked up from the configuration shapes.

enumerate_codim1 builds the list from the closed-form family rules;
oracle_enumerate rediscovers it by brute force (all degree shapes, all
profile-part distributions, all genera, connectivity by trying every
node-slot matching) for cross-checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

_NODE_PROFILES = ((3,), (2, 1), (1, 1, 1))
_QUOTIENTS = ("trivial", "Z2", "S3", "S3xZ2")
_ORACLE_GENUS_CAP = 30


def branch_count(g):
    """Simple branch points of a degree-3 genus-g cover of P^1."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return 2 * g + 4


def rh_genus(j, k, contribution):
    """Genus from 2g' - 2 = -2k + j + contribution, or None.

    j counts the simple branch points carried by the component, k is its
    degree, contribution the ramification it contributes over the node.
    """
    twice = -2 * k + j + contribution + 2
    if twice < 0 or twice % 2:
        return None
    return twice // 2


@dataclass(frozen=True)
class FactorSpace:
    """One side of a stratum: components with genera and node profiles."""

    degrees: tuple
    genera: tuple
    profiles: tuple

    def __post_init__(self):
        if self.degrees not in ((3,), (2, 1)):
            raise ValueError(f"degrees must be (3,) or (2,1), "
                             f"got {self.degrees}")
        if not (len(self.degrees) == len(self.genera) == len(self.profiles)):
            raise ValueError("degrees, genera, profiles must align")
        for k, gi, prof in zip(self.degrees, self.genera, self.profiles):
            if gi < 0:
                raise ValueError("negative genus")
            if tuple(sorted(prof, reverse=True)) != tuple(prof) \
                    or sum(prof) != k or any(p < 1 for p in prof):
                raise ValueError(f"profile {prof} is not a sorted "
                                 f"partition of {k}")
            if k == 1 and gi != 0:
                raise ValueError("a degree-1 component must have genus 0")

    @property
    def connected(self):
        return len(self.degrees) == 1

    @property
    def node_profile(self):
        merged = [p for prof in self.profiles for p in prof]
        return tuple(sorted(merged, reverse=True))

    @property
    def arithmetic_genus(self):
        return sum(self.genera) - (len(self.degrees) - 1)

    def branch_needs(self):
        """Per-component simple branch counts forced by Riemann-Hurwitz."""
        needs = []
        for k, gi, prof in zip(self.degrees, self.genera, self.profiles):
            needs.append(2 * gi - 2 + 2 * k - sum(p - 1 for p in prof))
        return tuple(needs)

    def sort_key(self):
        return (len(self.degrees), self.degrees, self.genera, self.profiles)


def stability_value(factor):
    """Left side of the stability inequality; admissible iff >= 2."""
    return sum(factor.branch_needs())


@dataclass(frozen=True)
class StratumDescriptor:
    genus_total: int
    j: int
    node_profile: tuple
    side1: FactorSpace
    side2: FactorSpace
    quotient_group: str

    def __post_init__(self):
        b = branch_count(self.genus_total)
        if not 2 <= b - self.j <= self.j:
            raise ValueError(f"side sizes ({self.j}, {b - self.j}) invalid")
        if self.quotient_group not in _QUOTIENTS:
            raise ValueError(f"unknown quotient {self.quotient_group!r}")
        for side, j_side in ((self.side1, self.j), (self.side2, b - self.j)):
            if side.node_profile != self.node_profile:
                raise ValueError("side profile does not match the node")
            needs = side.branch_needs()
            if any(n < 0 for n in needs) or sum(needs) != j_side:
                raise ValueError(
                    f"Riemann-Hurwitz mismatch: side needs {needs}, "
                    f"carries {j_side}")
        ell = len(self.node_profile)
        total = (self.side1.arithmetic_genus + self.side2.arithmetic_genus
                 + ell - 1)
        if total != self.genus_total:
            raise ValueError(f"genus consistency fails: {total} != "
                             f"{self.genus_total}")

    def sort_key(self):
        return (self.j, len(self.node_profile),
                self.side1.sort_key(), self.side2.sort_key())


def quotient_group(node_profile, side1, side2):
    """Automorphism quotient of the gluing map, from the shape table."""
    equal = side1 == side2
    conn1, conn2 = side1.connected, side2.connected
    if node_profile == (3,):
        return "Z2" if equal else "trivial"
    if node_profile == (2, 1):
        if conn1 and conn2:
            return "Z2" if equal else "trivial"
        return "trivial"
    if node_profile == (1, 1, 1):
        if conn1 and conn2:
            return "S3xZ2" if equal else "S3"
        if conn1 != conn2:
            return "Z2"
        return "Z2" if equal else "trivial"
    raise ValueError(f"unknown node profile {node_profile}")


def _contribution(profile):
    return sum(p - 1 for p in profile)


def _side_configs(profile, j_side):
    """Admissible FactorSpaces carrying j_side branch points, family rules."""
    out = []
    g_conn = rh_genus(j_side, 3, _contribution(profile))
    if g_conn is not None:
        out.append(FactorSpace((3,), (g_conn,), (tuple(profile),)))
    if profile == (2, 1):
        g_two = rh_genus(j_side, 2, 1)
        if g_two is not None:
            out.append(FactorSpace((2, 1), (g_two, 0), ((2,), (1,))))
    elif profile == (1, 1, 1):
        g_two = rh_genus(j_side, 2, 0)
        if g_two is not None:
            out.append(FactorSpace((2, 1), (g_two, 0), ((1, 1), (1,))))
    return [f for f in out if stability_value(f) >= 2]


def _glues_connected(profile, side1, side2):
    # a double-split (2,1) stratum pairs the degree-2 components with each
    # other and the degree-1 with each other: two separate curves
    if profile == (2, 1) and not side1.connected and not side2.connected:
        return False
    return True


def enumerate_codim1(g):
    """All codim-1 boundary strata for genus g, canonically ordered."""
    b = branch_count(g)
    found = []
    for j in range(b // 2 + 1, b - 1):  # larger side first; j > b-j
        found.extend(_strata_for_split(g, j, mirror=False))
    found.extend(_strata_for_split(g, b // 2, mirror=True))
    found.sort(key=StratumDescriptor.sort_key)
    return found


def _strata_for_split(g, j, mirror):
    b = branch_count(g)
    out = []
    for profile in _NODE_PROFILES:
        if (j + _contribution(profile)) % 2:
            continue
        for s1 in _side_configs(profile, j):
            for s2 in _side_configs(profile, b - j):
                if mirror and s1.sort_key() > s2.sort_key():
                    continue
                if not _glues_connected(profile, s1, s2):
                    continue
                out.append(StratumDescriptor(
                    genus_total=g, j=j, node_profile=profile,
                    side1=s1, side2=s2,
                    quotient_group=quotient_group(profile, s1, s2)))
    return out


# -- brute-force oracle --


def _oracle_side_configs(profile, j_side, g_cap):
    """Rediscover side configurations without the family formulas.

    Iterates every degree shape, every distribution of the profile parts
    onto components, and every genus tuple, keeping those whose forced
    branch counts are nonnegative and sum to j_side.  Degree shapes with
    no degree >= 2 component cannot appear (FactorSpace rejects them, and
    they carry no branch points anyway).
    """
    out = []
    for degrees in ((3,), (2, 1)):
        for split_parts in _part_distributions(profile, degrees):
            genus_ranges = [range(g_cap + 1) if k > 1 else (0,)
                            for k in degrees]
            for genera in itertools.product(*genus_ranges):
                try:
                    f = FactorSpace(degrees, tuple(genera), split_parts)
                except ValueError:
                    continue
                needs = f.branch_needs()
                if any(n < 0 for n in needs):
                    continue
                if sum(needs) != j_side:
                    continue
                if stability_value(f) < 2:
                    continue
                out.append(f)
    return out


def _part_distributions(profile, degrees):
    """Ways to hand the profile parts to components, as sorted profiles."""
    parts = list(profile)
    results = set()
    for assignment in itertools.product(range(len(degrees)),
                                        repeat=len(parts)):
        buckets = [[] for _ in degrees]
        for part, where in zip(parts, assignment):
            buckets[where].append(part)
        if any(sum(bucket) != k for bucket, k in zip(buckets, degrees)):
            continue
        results.add(tuple(tuple(sorted(b, reverse=True)) for b in buckets))
    return sorted(results)


def _connectable(side1, side2):
    """Whether some node matching makes the glued curve connected."""
    slots1 = [(ci, p) for ci, prof in enumerate(side1.profiles)
              for p in prof]
    slots2 = [(ci, p) for ci, prof in enumerate(side2.profiles)
              for p in prof]
    n1, n2 = len(side1.degrees), len(side2.degrees)
    for perm in itertools.permutations(range(len(slots2))):
        if any(slots1[i][1] != slots2[perm[i]][1]
               for i in range(len(slots1))):
            continue
        # union-find over components of both sides
        parent = list(range(n1 + n2))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(len(slots1)):
            a = find(slots1[i][0])
            c = find(n1 + slots2[perm[i]][0])
            parent[a] = c
        if len({find(x) for x in range(n1 + n2)}) == 1:
            return True
    return False


def oracle_enumerate(g):
    """Brute-force reconstruction of enumerate_codim1 for cross-checks."""
    if g > _ORACLE_GENUS_CAP:
        raise ValueError(f"oracle capped at genus {_ORACLE_GENUS_CAP}")
    b = branch_count(g)
    found = {}
    for j in range(2, b - 1):
        if j < b - j:
            continue
        for profile in _NODE_PROFILES:
            for s1 in _oracle_side_configs(profile, j, g):
                for s2 in _oracle_side_configs(profile, b - j, g):
                    if j == b - j and s1.sort_key() > s2.sort_key():
                        continue
                    if not _connectable(s1, s2):
                        continue
                    desc = StratumDescriptor(
                        genus_total=g, j=j, node_profile=profile,
                        side1=s1, side2=s2,
                        quotient_group=quotient_group(profile, s1, s2))
                    key = (j, profile, s1, s2)
                    assert key not in found, "oracle produced a duplicate"
                    found[key] = desc
    return sorted(found.values(), key=StratumDescriptor.sort_key)


# -- the five factor families, with their genus bounds --

#: (label, lower genus bound) keyed by (connected, profile of the big
#: component); every admissible factor space matches exactly one entry
FACTOR_FAMILIES = {
    (True, (3,)): ("connected, triple point", 0),
    (True, (2, 1)): ("connected, simple node point", 0),
    (True, (1, 1, 1)): ("connected, unramified point", 0),
    (False, (2,)): ("split, ramified double cover", 1),
    (False, (1, 1)): ("split, unramified double cover", 0),
}


def classify_factor(factor, genus_total):
    """(family label, principal genus) with the family's bounds enforced."""
    key = (factor.connected, factor.profiles[0])
    if key not in FACTOR_FAMILIES:
        raise ValueError(f"factor {factor} matches no family")
    label, lower = FACTOR_FAMILIES[key]
    principal = factor.genera[0]
    if not lower <= principal <= genus_total:
        raise ValueError(f"genus {principal} outside [{lower}, "
                         f"{genus_total}] for family {label!r}")
    return label, principal


# -- formatting --


def format_factor(factor):
    degrees = ",".join(str(k) for k in factor.degrees)
    genera = ",".join(str(gi) for gi in factor.genera)
    profiles = ",".join("(" + ",".join(str(p) for p in prof) + ")"
                        for prof in factor.profiles)
    return f"H({degrees};{genera};{profiles})"


def format_stratum(stratum):
    profile = ",".join(str(p) for p in stratum.node_profile)
    return (f"D{stratum.j} ({profile}): {format_factor(stratum.side1)}"
            f" x {format_factor(stratum.side2)}"
            f" [{stratum.quotient_group}]")
