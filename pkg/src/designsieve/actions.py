"""Action spaces: bijections between combinatorial objects and indices.

Each space gives a total rank/unrank bijection between canonical objects
(points, k-subsets, unordered pairs, uniform partitions) and 0..size-1,
plus the induced point action.  Orbits can be expanded inside a space
without materializing it, so a single orbit may live in an astronomically
large domain (for instance 7-subsets of 55 points).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import CapacityError, DegreeMismatchError
from .perm import OrbitRecord, PermGroup, Permutation


@dataclass(frozen=True)
class Limits:
    """Hard capacity caps.  Exceeding one raises CapacityError, never truncates."""

    max_subset_action: int = 10_000_000
    max_partition_action: int = 1_000_000
    max_orbit: int = 10_000_000
    max_search_nodes: int = 5_000_000


DEFAULT_LIMITS = Limits()


class ActionSpace:
    """Base class: a bijection objects <-> 0..size-1 and the point action."""

    kind = "abstract"

    def __init__(self, base_degree, size):
        self.base_degree = base_degree
        self.size = size

    def rank(self, obj):
        raise NotImplementedError

    def unrank(self, index):
        raise NotImplementedError

    def apply(self, images, obj):
        """Image of a canonical object under a point permutation (as images tuple)."""
        raise NotImplementedError

    def iter_objects(self):
        """All objects in rank order."""
        return (self.unrank(i) for i in range(self.size))

    def _check_index(self, index):
        if not 0 <= index < self.size:
            raise ValueError(f"index {index} outside 0..{self.size - 1}")

    def __repr__(self):
        return f"{type(self).__name__}(base_degree={self.base_degree}, size={self.size})"


class PointsAction(ActionSpace):
    """The natural action: objects are the domain points themselves."""

    kind = "points"

    def __init__(self, degree):
        super().__init__(degree, degree)

    def rank(self, obj):
        self._check_index(obj)
        return obj

    def unrank(self, index):
        self._check_index(index)
        return index

    def apply(self, images, obj):
        return images[obj]


class SubsetsAction(ActionSpace):
    """k-subsets of {0..c-1} under colexicographic ranking.

    rank(S) = sum of C(s_i, i+1) over the sorted elements, so unranking is a
    greedy scan from the top.
    """

    def __init__(self, base_degree, k):
        if not 1 <= k <= base_degree:
            raise ValueError(f"need 1 <= k <= {base_degree}, got k={k}")
        self.k = k
        self.kind = f"{k}-subsets"
        super().__init__(base_degree, comb(base_degree, k))

    def rank(self, obj):
        prev = -1
        r = 0
        if len(obj) != self.k:
            raise ValueError(f"expected a {self.k}-subset, got {obj!r}")
        for i, s in enumerate(obj):
            if not prev < s < self.base_degree:
                raise ValueError(f"not a sorted subset of 0..{self.base_degree - 1}: {obj!r}")
            prev = s
            r += comb(s, i + 1)
        return r

    def unrank(self, index):
        self._check_index(index)
        out = []
        m = self.base_degree - 1
        for i in range(self.k, 0, -1):
            while comb(m, i) > index:
                m -= 1
            out.append(m)
            index -= comb(m, i)
            m -= 1
        out.reverse()
        return tuple(out)

    def apply(self, images, obj):
        return tuple(sorted(images[p] for p in obj))


class PairsAction(SubsetsAction):
    """Unordered point pairs; same colex ranking as 2-subsets."""

    kind = "unordered-pairs"

    def __init__(self, base_degree):
        if base_degree < 2:
            raise ValueError("pairs need at least 2 points")
        super().__init__(base_degree, 2)
        self.kind = "unordered-pairs"


def _comb_lex_rank(positions, n, k):
    """Lexicographic rank of a sorted k-tuple of positions out of 0..n-1."""
    r = 0
    prev = -1
    for i, p in enumerate(positions):
        for v in range(prev + 1, p):
            r += comb(n - 1 - v, k - 1 - i)
        prev = p
    return r


def _comb_lex_unrank(r, n, k):
    out = []
    v = 0
    for i in range(k):
        while True:
            c = comb(n - 1 - v, k - 1 - i)
            if r < c:
                break
            r -= c
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


class PartitionsAction(ActionSpace):
    """Partitions of {0..st-1} into t classes of size s.

    Canonical form: every class internally ascending, classes ordered by
    their minimum.  Enumeration order (= rank order) is mixed-radix: at each
    step the smallest unused element anchors the next class and its s-1
    companions are chosen in lexicographic order from the remaining
    elements.  The total count is the product of C(is-1, s-1) for
    i = t, t-1, ..., 2.
    """

    def __init__(self, class_size, class_count):
        if class_size < 1 or class_count < 1:
            raise ValueError("class size and count must be positive")
        self.class_size = class_size
        self.class_count = class_count
        self.kind = f"uniform-partitions({class_size},{class_count})"
        c = class_size * class_count
        size = 1
        self._step_counts = []
        for j in range(class_count):
            remaining = c - j * class_size
            n_choices = comb(remaining - 1, class_size - 1)
            self._step_counts.append(n_choices)
            size *= n_choices
        self._suffix = [1] * (class_count + 1)
        for j in range(class_count - 1, -1, -1):
            self._suffix[j] = self._step_counts[j] * self._suffix[j + 1]
        super().__init__(c, size)

    def rank(self, obj):
        s, t = self.class_size, self.class_count
        if len(obj) != t or any(len(cl) != s for cl in obj):
            raise ValueError(f"expected {t} classes of size {s}: {obj!r}")
        flat = [p for cl in obj for p in cl]
        if sorted(flat) != list(range(self.base_degree)):
            raise ValueError(f"classes must partition 0..{self.base_degree - 1}: {obj!r}")
        remaining = list(range(self.base_degree))
        r = 0
        for j, cl in enumerate(obj):
            if list(cl) != sorted(cl) or cl[0] != remaining[0]:
                raise ValueError(f"not in canonical class order: {obj!r}")
            pool = remaining[1:]
            idx = {p: i for i, p in enumerate(pool)}
            positions = tuple(idx[p] for p in cl[1:])
            r += _comb_lex_rank(positions, len(pool), s - 1) * self._suffix[j + 1]
            remaining = [p for p in remaining if p not in set(cl)]
        return r

    def unrank(self, index):
        self._check_index(index)
        s = self.class_size
        remaining = list(range(self.base_degree))
        classes = []
        for j in range(self.class_count):
            step, index = divmod(index, self._suffix[j + 1])
            anchor = remaining[0]
            pool = remaining[1:]
            positions = _comb_lex_unrank(step, len(pool), s - 1)
            cl = (anchor,) + tuple(pool[p] for p in positions)
            classes.append(cl)
            chosen = set(cl)
            remaining = [p for p in remaining if p not in chosen]
        return tuple(classes)

    def apply(self, images, obj):
        classes = [tuple(sorted(images[p] for p in cl)) for cl in obj]
        classes.sort(key=lambda cl: cl[0])
        return tuple(classes)


# ------------------------------------------------------------- induced action


def induced_action(group, space, limits=DEFAULT_LIMITS):
    """Permutation group induced on an action space.

    The generators are the images of the group's generators; known_order is
    carried over (the induced action is faithful for every space used here).
    """
    if space.base_degree != group.degree:
        raise DegreeMismatchError(
            f"space over {space.base_degree} letters, group of degree {group.degree}"
        )
    cap = (
        limits.max_partition_action
        if isinstance(space, PartitionsAction)
        else limits.max_subset_action
    )
    if space.size > cap:
        raise CapacityError(
            f"action of size {space.size} exceeds the configured cap {cap}"
        )
    new_gens = []
    for g in group.generators:
        img = [0] * space.size
        for i, obj in enumerate(space.iter_objects()):
            img[i] = space.rank(space.apply(g.images, obj))
        new_gens.append(Permutation._raw(tuple(img)))
    return PermGroup(tuple(new_gens), known_order=group.known_order)


def orbit_in_space(group, space, seed, limits=DEFAULT_LIMITS, want_objects=False):
    """Orbit of one object under the point group, expanded inside the space.

    ``seed`` is an index or a canonical object.  Only reached elements are
    materialized, so this works in spaces far beyond the induced-action caps.
    Members are the sorted ranks; transversal words are generator indices.
    """
    if space.base_degree != group.degree:
        raise DegreeMismatchError(
            f"space over {space.base_degree} letters, group of degree {group.degree}"
        )
    if isinstance(seed, int):
        seed_obj = space.unrank(seed)
        seed_rank = seed
    else:
        seed_rank = space.rank(seed)
        seed_obj = space.unrank(seed_rank)
    imgs = [g.images for g in group.generators]
    parent = {seed_rank: None}
    via = {seed_rank: None}
    objects = {seed_rank: seed_obj}
    queue = [(seed_rank, seed_obj)]
    qi = 0
    while qi < len(queue):
        r, obj = queue[qi]
        qi += 1
        for gi, im in enumerate(imgs):
            obj2 = space.apply(im, obj)
            r2 = space.rank(obj2)
            if r2 not in parent:
                if len(parent) >= limits.max_orbit:
                    raise CapacityError(
                        f"orbit exceeds the configured cap {limits.max_orbit}",
                        resume=(seed_rank, len(parent)),
                    )
                parent[r2] = r
                via[r2] = gi
                objects[r2] = obj2
                queue.append((r2, obj2))
    members = tuple(sorted(parent))
    return OrbitRecord(
        seed_rank,
        members,
        parent,
        via,
        None,
        objects if want_objects else None,
    )
