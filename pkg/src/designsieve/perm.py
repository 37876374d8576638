"""Exact permutation-group engine.

Permutations on an indexed finite domain, groups given by generators,
orbits with transversal words, deterministic Schreier-Sims stabilizer
chains, point stabilizers, subdegrees, and transitivity/primitivity tests.

Everything is exact integer arithmetic; no randomization is used anywhere,
so repeated runs produce identical output.  All values are immutable after
construction (caches aside) and safe to share between concurrent callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegreeMismatchError,
    FormatError,
    IntegrityError,
    IntransitiveError,
)


class Permutation:
    """A bijection of {0, ..., n-1}, stored as its tuple of images.

    ``p(i)`` is the image of i.  ``p * q`` applies p first, then q.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if n < 1:
            raise ValueError("degree must be at least 1")
        seen = [False] * n
        for i in images:
            if not isinstance(i, int) or not 0 <= i < n or seen[i]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {images!r}")
            seen[i] = True
        self.images = images

    @classmethod
    def _raw(cls, images):
        # internal fast path: images is a tuple already known to be a bijection
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n, *cycles):
        """Build a permutation of degree n from disjoint cycles."""
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other.images) != len(self.images):
            raise DegreeMismatchError(
                f"cannot compose degree {len(self.images)} with degree {len(other.images)}"
            )
        o = other.images
        return Permutation._raw(tuple(o[i] for i in self.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, each starting at its minimum, sorted by minimum."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            seen[i] = True
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return f"Permutation.identity({len(self.images)})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"<{body} deg={len(self.images)}>"


def compose(p, q):
    """Composition applying p first, then q."""
    return p * q


class OrbitRecord:
    """Orbit of a seed together with transversal words.

    ``members`` is sorted ascending.  A transversal word is a tuple of
    generator indices; applying those generators to the representative,
    left to right, yields the member.  ``permutations`` (optional, a
    speed/memory switch) maps members to full transversal permutations;
    ``objects`` (optional) maps members to the combinatorial objects they
    index when the orbit lives in an action space.
    """

    __slots__ = ("representative", "members", "_parent", "_via", "permutations", "objects")

    def __init__(self, representative, members, parent, via, permutations=None, objects=None):
        self.representative = representative
        self.members = members
        self._parent = parent
        self._via = via
        self.permutations = permutations
        self.objects = objects

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self._parent

    def word_for(self, member):
        """Generator-index word mapping the representative to ``member``."""
        word = []
        while member != self.representative:
            word.append(self._via[member])
            member = self._parent[member]
        word.reverse()
        return tuple(word)

    @property
    def transversal(self):
        return {m: self.word_for(m) for m in self.members}


@dataclass(frozen=True)
class PrimitivityResult:
    """Primitivity verdict; ``block_system`` is a nontrivial witness if not."""

    primitive: bool
    block_system: tuple | None

    def __bool__(self):
        return self.primitive


class _TargetReached(Exception):
    pass


class _ChainNode:
    """One level of a stabilizer chain.

    ``gens`` holds the strong generators placed at this node: they fix every
    basepoint above and move this node's basepoint.  The orbit of the
    basepoint is computed under the node's *effective* generators, i.e. its
    own plus everything placed deeper (those fix more initial basepoints and
    therefore belong to this stabilizer as well).
    """

    __slots__ = ("degree", "basepoint", "gens", "transversal", "stab")

    def __init__(self, degree):
        self.degree = degree
        self.basepoint = None
        self.gens = []
        self.transversal = None
        self.stab = None

    def order(self):
        if self.basepoint is None:
            return 1
        return len(self.transversal) * self.stab.order()

    def effective_gens(self):
        out = list(self.gens)
        node = self.stab
        while node is not None and node.basepoint is not None:
            out.extend(node.gens)
            node = node.stab
        return out

    def sift_to_node(self, p):
        """Divide out coset reps; returns (residue, node where it stuck)."""
        node = self
        while node.basepoint is not None:
            a = p.images[node.basepoint]
            u = node.transversal.get(a)
            if u is None:
                return p, node
            p = p * u.inverse()
            node = node.stab
        return p, node

    def install(self, g):
        """Place a new strong generator at this node (g must move its basepoint,
        or the node must still be trivial)."""
        if self.basepoint is None:
            self.basepoint = min(i for i, j in enumerate(g.images) if i != j)
            self.transversal = {self.basepoint: Permutation.identity(self.degree)}
            self.stab = _ChainNode(self.degree)
        self.gens.append(g)

    def complete(self, check):
        """Close this node and its subtree under Schreier generation.

        Runs to a fixpoint: extend the basepoint orbit under the effective
        generators, sift every Schreier generator through the subtree, and
        restart whenever the subtree grows.  ``check`` may raise
        _TargetReached once the whole chain hits a known target order.
        """
        if self.basepoint is None:
            return
        while True:
            self._extend_orbit()
            check()
            eff = self.effective_gens()
            dirty = False
            for a in list(self.transversal):
                u_a = self.transversal[a]
                for s in eff:
                    sigma = (u_a * s) * self.transversal[s.images[a]].inverse()
                    if sigma.is_identity():
                        continue
                    residue, node = self.stab.sift_to_node(sigma)
                    if residue.is_identity():
                        continue
                    node.install(residue)
                    check()
                    self.stab.complete(check)
                    dirty = True
                    break
                if dirty:
                    break
            if not dirty:
                return

    def _extend_orbit(self):
        eff = self.effective_gens()
        queue = list(self.transversal)
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            u_a = self.transversal[a]
            for s in eff:
                b = s.images[a]
                if b not in self.transversal:
                    self.transversal[b] = u_a * s
                    queue.append(b)


class StabilizerChain:
    """Deterministic Schreier-Sims stabilizer chain.

    Basepoints are the smallest moved point at each level (deep-base order
    0, 1, 2, ...).  Every Schreier generator is sifted through the current
    chain and discarded when the sift is trivial.  If ``target_order`` is
    given, construction stops as soon as the chain reaches it; this is sound
    whenever the target is the true order of the generated group, and the
    stopped chain is then a complete base and strong generating set.
    """

    def __init__(self, degree, generators=(), target_order=None):
        self.degree = degree
        self.root = _ChainNode(degree)
        for g in generators:
            self.extend(g, target_order)
        if target_order is not None and self.order() != target_order:
            raise IntegrityError(
                f"stabilizer chain closed at order {self.order()}, expected {target_order}"
            )

    def order(self):
        return self.root.order()

    def base(self):
        out = []
        node = self.root
        while node is not None and node.basepoint is not None:
            out.append(node.basepoint)
            node = node.stab
        return tuple(out)

    def strong_generators(self):
        out = []
        node = self.root
        while node is not None and node.basepoint is not None:
            out.extend(node.gens)
            node = node.stab
        return out

    def sift(self, p):
        residue, _ = self.root.sift_to_node(p)
        return residue

    def contains(self, p):
        return self.sift(p).is_identity()

    def extend(self, g, target_order=None):
        """Sift one element into the chain; True if the chain grew."""
        if target_order is not None and self.order() >= target_order:
            return False
        residue, node = self.root.sift_to_node(g)
        if residue.is_identity():
            return False

        if target_order is None:
            def check():
                pass
        else:
            def check():
                if self.order() >= target_order:
                    raise _TargetReached

        node.install(residue)
        try:
            check()
            self.root.complete(check)
        except _TargetReached:
            pass
        return True


class PermGroup:
    """A permutation group given by generators, with an optional known order.

    ``known_order`` is a trusted promise: ``order()`` returns it without
    recomputation, and ``recomputed_order()`` re-derives the order by a full
    Schreier-Sims closure and raises :class:`IntegrityError` on disagreement.
    """

    __slots__ = ("degree", "generators", "known_order", "_chain")

    def __init__(self, generators, known_order=None):
        generators = tuple(generators)
        if not generators:
            raise ValueError("generator sequence must be non-empty")
        degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatchError("generators have mixed degrees")
        if known_order is not None and (not isinstance(known_order, int) or known_order < 1):
            raise ValueError("known_order must be a positive integer")
        self.degree = degree
        self.generators = generators
        self.known_order = known_order
        self._chain = None

    def __repr__(self):
        return (
            f"PermGroup(degree={self.degree}, ngens={len(self.generators)}, "
            f"known_order={self.known_order})"
        )

    # ------------------------------------------------------------------ order

    def chain(self):
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators, self.known_order)
        return self._chain

    def order(self):
        if self.known_order is not None:
            return self.known_order
        return self.chain().order()

    def recomputed_order(self):
        """Order by full chain closure, checked against known_order on demand."""
        chain = StabilizerChain(self.degree, self.generators, target_order=None)
        if self.known_order is not None and chain.order() != self.known_order:
            raise IntegrityError(
                f"declared order {self.known_order} but stabilizer chain gives {chain.order()}"
            )
        self._chain = chain
        return chain.order()

    def contains(self, p):
        if p.degree != self.degree:
            raise DegreeMismatchError("degree mismatch in membership test")
        return self.chain().contains(p)

    # ----------------------------------------------------------------- orbits

    def orbit(self, seed, store_perms=False):
        """Orbit of a domain point; members sorted, transversal words valid."""
        if not 0 <= seed < self.degree:
            raise ValueError(f"seed {seed} outside domain of size {self.degree}")
        imgs = [g.images for g in self.generators]
        parent = {seed: None}
        via = {seed: None}
        perms = {seed: Permutation.identity(self.degree)} if store_perms else None
        queue = [seed]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            for gi, im in enumerate(imgs):
                b = im[a]
                if b not in parent:
                    parent[b] = a
                    via[b] = gi
                    if store_perms:
                        perms[b] = perms[a] * self.generators[gi]
                    queue.append(b)
        return OrbitRecord(seed, tuple(sorted(parent)), parent, via, perms)

    def orbits(self):
        """Orbit partition of the domain, each orbit sorted, ordered by minimum."""
        seen = [False] * self.degree
        out = []
        for x in range(self.degree):
            if seen[x]:
                continue
            rec = self.orbit(x)
            for m in rec.members:
                seen[m] = True
            out.append(rec.members)
        return tuple(out)

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree

    # ------------------------------------------------------------ stabilizers

    def point_stabilizer(self, x):
        """Stabilizer of a point, generated by sift-reduced Schreier generators.

        Its order is pinned to order() / |orbit(x)| ahead of time, which lets
        the Schreier enumeration stop as soon as the chain is complete.
        """
        rec = self.orbit(x, store_perms=True)
        total = self.order()
        if total % len(rec):
            raise IntegrityError("orbit size does not divide the group order")
        target = total // len(rec)
        if target == 1:
            return PermGroup((Permutation.identity(self.degree),), known_order=1)
        perms = rec.permutations
        chain = StabilizerChain(self.degree)
        kept = []
        done = False
        for a in rec.members:
            for s in self.generators:
                if chain.order() == target:
                    done = True
                    break
                sigma = (perms[a] * s) * perms[s.images[a]].inverse()
                if sigma.is_identity():
                    continue
                if chain.extend(sigma, target):
                    kept.append(sigma)
            if done or chain.order() == target:
                break
        if chain.order() != target:
            raise IntegrityError(
                f"point stabilizer closed at order {chain.order()}, expected {target}"
            )
        return PermGroup(tuple(kept), known_order=target)

    def subdegrees(self, x=0):
        """Sorted orbit lengths of the stabilizer of x on the whole domain.

        Computed directly from the (unreduced) Schreier generators of the
        stabilizer via union-find, which avoids building a second chain.
        """
        orbs = self.orbits()
        if len(orbs) > 1:
            raise IntransitiveError("subdegrees require a transitive group", orbs)
        rec = self.orbit(x, store_perms=True)
        perms = rec.permutations
        n = self.degree
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a in rec.members:
            u_a = perms[a]
            for s in self.generators:
                sigma = (u_a * s) * perms[s.images[a]].inverse()
                if sigma.is_identity():
                    continue
                for i, j in enumerate(sigma.images):
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[rj] = ri
        sizes = {}
        for i in range(n):
            r = find(i)
            sizes[r] = sizes.get(r, 0) + 1
        return tuple(sorted(sizes.values()))

    # ------------------------------------------------------------ primitivity

    def is_primitive(self):
        """Primitivity verdict with a nontrivial block system as witness.

        Seeds a union-find with each pair (0, y) and closes it under the
        generators; the group is primitive iff every seeded closure collapses
        the whole domain.
        """
        orbs = self.orbits()
        if len(orbs) > 1:
            raise IntransitiveError("primitivity requires a transitive group", orbs)
        n = self.degree
        if n <= 2:
            return PrimitivityResult(True, None)
        imgs = [g.images for g in self.generators]
        for y in range(1, n):
            blocks = self._seeded_blocks(0, y, imgs)
            if blocks is not None:
                return PrimitivityResult(False, blocks)
        return PrimitivityResult(True, None)

    def _seeded_blocks(self, x, y, imgs):
        n = self.degree
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[rb] = ra
            return True

        pending = [(x, y)]
        union(x, y)
        while pending:
            a, b = pending.pop()
            for im in imgs:
                ia, ib = im[a], im[b]
                if union(ia, ib):
                    pending.append((ia, ib))
        classes = {}
        for i in range(n):
            classes.setdefault(find(i), []).append(i)
        if len(classes) == 1:
            return None
        blocks = sorted((tuple(c) for c in classes.values()), key=lambda c: c[0])
        return tuple(blocks)

    # ------------------------------------------------------------- pair orbits

    def orbits_on_unordered_pairs(self):
        """Orbit partition of all unordered domain pairs.

        Returns (representative pair, orbit length) entries ordered by the
        colex rank of the representative; lengths sum to C(n, 2).
        """
        n = self.degree
        if n < 2:
            raise ValueError("degree must be at least 2")
        imgs = [g.images for g in self.generators]
        seen = bytearray(n * (n - 1) // 2)
        out = []
        for b in range(1, n):
            base = b * (b - 1) // 2
            for a in range(b):
                if seen[base + a]:
                    continue
                seen[base + a] = 1
                queue = [(a, b)]
                qi = 0
                while qi < len(queue):
                    pa, pb = queue[qi]
                    qi += 1
                    for im in imgs:
                        qa, qb = im[pa], im[pb]
                        if qa > qb:
                            qa, qb = qb, qa
                        r = qb * (qb - 1) // 2 + qa
                        if not seen[r]:
                            seen[r] = 1
                            queue.append((qa, qb))
                out.append(((a, b), len(queue)))
        return out


# ------------------------------------------------------------------ families


def symmetric_group(c):
    """Symmetric group on c letters with its standard two generators."""
    if c < 1:
        raise ValueError("symmetric group needs c >= 1")
    if c == 1:
        gens = [Permutation.identity(1)]
    elif c == 2:
        gens = [Permutation.from_cycles(2, (0, 1))]
    else:
        gens = [
            Permutation.from_cycles(c, (0, 1)),
            Permutation.from_cycles(c, tuple(range(c))),
        ]
    return PermGroup(gens, known_order=math.factorial(c))


def alternating_group(c):
    """Alternating group on c letters (c >= 3) with standard generators."""
    if c < 3:
        raise ValueError("alternating generators need c >= 3")
    if c == 3:
        gens = [Permutation.from_cycles(3, (0, 1, 2))]
    elif c % 2 == 1:
        gens = [
            Permutation.from_cycles(c, (0, 1, 2)),
            Permutation.from_cycles(c, tuple(range(c))),
        ]
    else:
        gens = [
            Permutation.from_cycles(c, (0, 1, 2)),
            Permutation.from_cycles(c, tuple(range(1, c))),
        ]
    return PermGroup(gens, known_order=math.factorial(c) // 2)


# -------------------------------------------------------------------- file IO
#
# ".group" format: line 1 "G <degree> <num_generators>", an optional line
# "order <decimal>", then one generator per line as space-separated image
# lists (0-based).  Lines starting with "#" are ignored.


def dumps_group(group):
    lines = [f"G {group.degree} {len(group.generators)}"]
    if group.known_order is not None:
        lines.append(f"order {group.known_order}")
    for g in group.generators:
        lines.append(" ".join(map(str, g.images)))
    return "\n".join(lines) + "\n"


def loads_group(text):
    header = None
    order = None
    gens = []
    for ln, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "G":
                raise FormatError("expected header 'G <degree> <num_generators>'", ln)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise FormatError("non-integer header field", ln) from None
            continue
        if line.startswith("order"):
            parts = line.split()
            if order is not None or gens or len(parts) != 2:
                raise FormatError("misplaced or malformed order line", ln)
            try:
                order = int(parts[1])
            except ValueError:
                raise FormatError("non-integer order", ln) from None
            continue
        try:
            images = [int(t) for t in line.split()]
        except ValueError:
            raise FormatError("non-integer image entry", ln) from None
        if len(images) != header[0]:
            raise FormatError(f"generator has {len(images)} images, expected {header[0]}", ln)
        try:
            gens.append(Permutation(images))
        except ValueError as exc:
            raise FormatError(str(exc), ln) from None
    if header is None:
        raise FormatError("empty group file")
    if len(gens) != header[1]:
        raise FormatError(f"expected {header[1]} generators, found {len(gens)}")
    return PermGroup(gens, known_order=order)


def dump_group(group, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_group(group))


def load_group(path):
    with open(path, "r", encoding="ascii") as fh:
        return loads_group(fh.read())
