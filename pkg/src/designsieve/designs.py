"""Incidence structures, 2-design parameter arithmetic, and verification.

Parameter feasibility is pure integer arithmetic (replication identity,
block-count identity, Fisher bounds).  Structure verification counts point
pairs exactly; flag-transitivity is certified through the equivalence with
block-transitivity plus block-stabilizer transitivity on a block.  No
floating point appears anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .actions import DEFAULT_LIMITS, SubsetsAction, orbit_in_space
from .errors import (
    DegreeMismatchError,
    FormatError,
    IntegrityError,
    NotAutomorphismError,
)
from .perm import Permutation, StabilizerChain


@dataclass(frozen=True)
class DesignParams:
    """The parameter quintuple (v, b, r, k, lam) of a 2-design.

    Construction enforces the standard identities and bounds:
    r(k-1) = lam(v-1), vr = bk, v <= b, k <= r, and lam*v < r^2.
    """

    v: int
    b: int
    r: int
    k: int
    lam: int

    def __post_init__(self):
        for name in ("v", "b", "r", "k", "lam"):
            x = getattr(self, name)
            if not isinstance(x, int) or x < 1:
                raise ValueError(f"{name} must be a positive integer, got {x!r}")
        if self.r * (self.k - 1) != self.lam * (self.v - 1):
            raise ValueError("replication identity r(k-1) = lam(v-1) fails")
        if self.v * self.r != self.b * self.k:
            raise ValueError("counting identity vr = bk fails")
        if self.v > self.b or self.k > self.r:
            raise ValueError("Fisher bounds v <= b, k <= r fail")
        if self.lam * self.v >= self.r * self.r:
            raise ValueError("pair bound lam*v < r^2 fails")

    @property
    def nontrivial(self):
        return 2 < self.k < self.v - 1

    def as_tuple(self):
        return (self.v, self.b, self.r, self.k, self.lam)


@dataclass(frozen=True)
class InfeasibilityReport:
    """First violated feasibility condition for a (v, k, lam) triple."""

    v: int
    k: int
    lam: int
    reason: str
    detail: str

    def __bool__(self):
        return False


def derive_params(v, k, lam):
    """Derive (r, b) from (v, k, lam), or report the first violated condition.

    Checks run in a fixed order: r integral, k <= r, b integral, v <= b,
    then the pair bound lam*v < r^2.
    """
    if not (v > k >= 2) or lam < 1:
        raise ValueError(f"need v > k >= 2 and lam >= 1, got ({v}, {k}, {lam})")
    num_r = lam * (v - 1)
    if num_r % (k - 1):
        return InfeasibilityReport(
            v, k, lam, "r-divisibility", f"(k-1) = {k - 1} does not divide lam(v-1) = {num_r}"
        )
    r = num_r // (k - 1)
    if r < k:
        return InfeasibilityReport(v, k, lam, "fisher-r", f"r = {r} < k = {k}")
    num_b = v * r
    if num_b % k:
        return InfeasibilityReport(
            v, k, lam, "b-divisibility", f"k = {k} does not divide vr = {num_b}"
        )
    b = num_b // k
    if b < v:
        return InfeasibilityReport(v, k, lam, "fisher-b", f"b = {b} < v = {v}")
    if lam * v >= r * r:
        return InfeasibilityReport(v, k, lam, "pair-bound", f"lam*v = {lam * v} >= r^2 = {r * r}")
    return DesignParams(v, b, r, k, lam)


class IncidenceStructure:
    """An explicit point set 0..v-1 and a canonical list of k-blocks.

    Blocks are stored sorted lexicographically; repeated blocks are refused
    (the orbit construction cannot produce them and the file format stays
    canonical without them).
    """

    __slots__ = ("v", "k", "blocks")

    def __init__(self, v, blocks):
        blocks = sorted(tuple(b) for b in blocks)
        if v < 1:
            raise ValueError("need at least one point")
        if not blocks:
            raise ValueError("need at least one block")
        k = len(blocks[0])
        for blk in blocks:
            if len(blk) != k:
                raise ValueError("blocks must all have the same size")
            prev = -1
            for p in blk:
                if not prev < p < v:
                    raise ValueError(f"block {blk!r} is not a sorted subset of 0..{v - 1}")
                prev = p
        for a, b in zip(blocks, blocks[1:]):
            if a == b:
                raise ValueError(f"repeated block {a!r}")
        self.v = v
        self.k = k
        self.blocks = tuple(blocks)

    @property
    def b(self):
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, IncidenceStructure)
            and self.v == other.v
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.v, self.blocks))

    def __repr__(self):
        return f"IncidenceStructure(v={self.v}, b={self.b}, k={self.k})"

    def counted_params(self, lam):
        """Pack the counted parameters through the DesignParams invariants."""
        r = self.b * self.k // self.v
        return DesignParams(self.v, self.b, r, self.k, lam)


@dataclass(frozen=True)
class UnequalPairCounts:
    """Witness that two point pairs lie in different numbers of blocks."""

    pair_a: tuple
    count_a: int
    pair_b: tuple
    count_b: int

    def __bool__(self):
        return False


def verify_2design(structure):
    """Count blocks through every point pair; the common count, or a witness.

    O(b * k^2) incremental counting over colex pair ranks.
    """
    v = structure.v
    if v < 2:
        raise ValueError("pair counting needs at least two points")
    counts = [0] * (v * (v - 1) // 2)
    for blk in structure.blocks:
        for j in range(1, len(blk)):
            pb = blk[j]
            base = pb * (pb - 1) // 2
            for i in range(j):
                counts[base + blk[i]] += 1
    first = counts[0]
    for rank, c in enumerate(counts):
        if c != first:
            b0 = (1 + isqrt(1 + 8 * rank)) // 2
            while b0 * (b0 - 1) // 2 > rank:
                b0 -= 1
            while (b0 + 1) * b0 // 2 <= rank:
                b0 += 1
            a0 = rank - b0 * (b0 - 1) // 2
            return UnequalPairCounts((0, 1), first, (a0, b0), c)
    return first


@dataclass(frozen=True)
class FlagTransitivityCertificate:
    """Outcome of the flag-transitivity test with its supporting numbers.

    Uses the equivalence: flag-transitive iff the blocks form one orbit and
    the setwise stabilizer of one block is transitive on that block.
    """

    flag_transitive: bool
    block_orbit_size: int
    block_stabilizer_order: int | None
    block_stabilizer_transitive: bool | None
    detail: str = ""

    def __bool__(self):
        return self.flag_transitive


def verify_flag_transitive(group, structure, limits=DEFAULT_LIMITS):
    """Certify flag-transitivity of ``group`` on ``structure``.

    Raises NotAutomorphismError if some generator fails to map blocks to
    blocks.  Otherwise returns a certificate recording the block-orbit size
    and the block-stabilizer order (obtained by the orbit-stabilizer
    identity, with the stabilizer itself generated from Schreier elements
    until that order is reached).
    """
    if group.degree != structure.v:
        raise DegreeMismatchError(
            f"group degree {group.degree} differs from point count {structure.v}"
        )
    block_set = set(structure.blocks)
    for g in group.generators:
        im = g.images
        for blk in structure.blocks:
            if tuple(sorted(im[p] for p in blk)) not in block_set:
                raise NotAutomorphismError(
                    f"generator {g!r} maps block {blk!r} outside the block set"
                )

    space = SubsetsAction(structure.v, structure.k)
    rec = orbit_in_space(group, space, structure.blocks[0], limits=limits)
    if len(rec) != structure.b:
        return FlagTransitivityCertificate(
            False,
            len(rec),
            None,
            None,
            f"blocks are not a single orbit: orbit of first block has size {len(rec)}",
        )

    total = group.order()
    if total % structure.b:
        raise IntegrityError("block count does not divide the group order")
    stab_order = total // structure.b

    base = structure.blocks[0]
    if stab_order == 1:
        transitive = structure.k == 1
        return FlagTransitivityCertificate(
            transitive, structure.b, 1, transitive,
            "" if transitive else "trivial block stabilizer on a block of size > 1",
        )

    # Schreier generators of the setwise block stabilizer, in discovery order,
    # fed into a chain until the known stabilizer order is reached.
    gens = group.generators
    identity = Permutation.identity(group.degree)

    def coset_rep(member):
        word = rec.word_for(member)
        u = identity
        for gi in word:
            u = u * gens[gi]
        return u

    chain = StabilizerChain(group.degree)
    stab_gens = []
    reps = {rec.representative: identity}
    imgs = [g.images for g in gens]
    for member in rec.members:
        if chain.order() == stab_order:
            break
        u_m = reps.get(member)
        if u_m is None:
            u_m = reps[member] = coset_rep(member)
        for gi, g in enumerate(gens):
            if chain.order() == stab_order:
                break
            target_rank = space.rank(space.apply(imgs[gi], space.unrank(member)))
            u_t = reps.get(target_rank)
            if u_t is None:
                u_t = reps[target_rank] = coset_rep(target_rank)
            sigma = (u_m * g) * u_t.inverse()
            if sigma.is_identity():
                continue
            if chain.extend(sigma, stab_order):
                stab_gens.append(sigma)
    if chain.order() != stab_order:
        raise IntegrityError(
            f"block stabilizer closed at order {chain.order()}, expected {stab_order}"
        )

    reached = {base[0]}
    frontier = [base[0]]
    while frontier:
        a = frontier.pop()
        for s in stab_gens:
            bpt = s.images[a]
            if bpt not in reached:
                reached.add(bpt)
                frontier.append(bpt)
    transitive = reached == set(base)
    return FlagTransitivityCertificate(
        transitive,
        structure.b,
        stab_order,
        transitive,
        "" if transitive else "block stabilizer is intransitive on its block",
    )


def block_orbit_design(group, base_block, limits=DEFAULT_LIMITS):
    """The orbit of a base block under the group, as an incidence structure."""
    base_block = tuple(sorted(base_block))
    space = SubsetsAction(group.degree, len(base_block))
    rec = orbit_in_space(group, space, base_block, limits=limits, want_objects=True)
    return IncidenceStructure(group.degree, rec.objects.values())


@dataclass(frozen=True)
class PairOrbitClass:
    """One orbit of point pairs: length, in-block count, and multiplicity."""

    representative: tuple
    length: int
    pairs_in_block: int
    multiplicity: Fraction


@dataclass(frozen=True)
class BalanceProfile:
    """Per pair-orbit multiplicities of an orbit design.

    The orbit design is a 2-design exactly when all multiplicities agree
    (each is then the integer number of blocks through any pair of that
    orbit).
    """

    v: int
    k: int
    block_orbit_size: int
    classes: tuple

    def __post_init__(self):
        if sum(c.pairs_in_block for c in self.classes) != comb(self.k, 2):
            raise IntegrityError("in-block pair counts do not sum to C(k,2)")
        if sum(c.length for c in self.classes) != comb(self.v, 2):
            raise IntegrityError("pair-orbit lengths do not sum to C(v,2)")

    def common_multiplicity(self):
        values = {c.multiplicity for c in self.classes}
        if len(values) == 1:
            return next(iter(values))
        return None

    def is_two_design(self):
        m = self.common_multiplicity()
        return m is not None and m.denominator == 1 and m > 0


def balance_profile(group, base_block, limits=DEFAULT_LIMITS):
    """Balance profile of the orbit design generated by ``base_block``."""
    from .errors import IntransitiveError

    orbs = group.orbits()
    if len(orbs) > 1:
        raise IntransitiveError("balance profile requires a transitive group", orbs)
    base_block = tuple(sorted(base_block))
    pair_orbits = group.orbits_on_unordered_pairs()
    n = group.degree
    label = [0] * (n * (n - 1) // 2)
    for idx, ((a, b), _) in enumerate(pair_orbits):
        # re-walk each orbit to label every pair it contains
        queue = [(a, b)]
        seen = {(a, b)}
        imgs = [g.images for g in group.generators]
        while queue:
            pa, pb = queue.pop()
            label[pb * (pb - 1) // 2 + pa] = idx
            for im in imgs:
                qa, qb = im[pa], im[pb]
                if qa > qb:
                    qa, qb = qb, qa
                if (qa, qb) not in seen:
                    seen.add((qa, qb))
                    queue.append((qa, qb))
    space = SubsetsAction(group.degree, len(base_block))
    rec = orbit_in_space(group, space, base_block, limits=limits)
    b = len(rec)
    in_block = [0] * len(pair_orbits)
    for j in range(1, len(base_block)):
        pb = base_block[j]
        for i in range(j):
            in_block[label[pb * (pb - 1) // 2 + base_block[i]]] += 1
    classes = tuple(
        PairOrbitClass(repr_pair, length, in_block[idx], Fraction(b * in_block[idx], length))
        for idx, (repr_pair, length) in enumerate(pair_orbits)
    )
    return BalanceProfile(group.degree, len(base_block), b, classes)


def pair_orbit_integrality(orbit_lengths, b, lam):
    """The values lam * |orbit| / b for a hypothetical (b, lam) candidate.

    Each value is the would-be number of in-block pairs from that orbit, so
    every one of them must be a positive integer for a design to exist.
    """
    return tuple(Fraction(lam * length, b) for length in orbit_lengths)


def feasibility_filters(params, stab_order, subdegrees):
    """Divisibility filters for flag-transitive parameters.

    True iff r divides the point-stabilizer order and r divides lam*d for
    every nontrivial subdegree d.
    """
    r, lam = params.r, params.lam
    if stab_order % r:
        return False
    for d in subdegrees:
        if d == 1:
            continue
        if (lam * d) % r:
            return False
    return True


# -------------------------------------------------------------------- file IO
#
# ".design" format: line 1 "D <v> <b> <k>", then b lines of k space-separated
# 0-based sorted point indices.  Lines starting with "#" are ignored.
# Writers emit blocks in canonical (lexicographic) order; readers accept any
# order but re-canonicalize.


def dumps_design(structure):
    lines = [f"D {structure.v} {structure.b} {structure.k}"]
    for blk in structure.blocks:
        lines.append(" ".join(map(str, blk)))
    return "\n".join(lines) + "\n"


def loads_design(text):
    header = None
    blocks = []
    for ln, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "D":
                raise FormatError("expected header 'D <v> <b> <k>'", ln)
            try:
                header = (int(parts[1]), int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError("non-integer header field", ln) from None
            continue
        try:
            blk = tuple(int(t) for t in line.split())
        except ValueError:
            raise FormatError("non-integer point index", ln) from None
        if len(blk) != header[2]:
            raise FormatError(f"block has {len(blk)} points, expected {header[2]}", ln)
        blocks.append(tuple(sorted(blk)))
    if header is None:
        raise FormatError("empty design file")
    if len(blocks) != header[1]:
        raise FormatError(f"expected {header[1]} blocks, found {len(blocks)}")
    try:
        return IncidenceStructure(header[0], blocks)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_design(structure, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_design(structure))


def load_design(path):
    with open(path, "r", encoding="ascii") as fh:
        return loads_design(fh.read())
