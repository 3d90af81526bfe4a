"""Plane trees, non-crossing partitions and their Lukasiewicz coding.

Trees are stored as outdegree sequences in depth-first (lexicographic)
order of the vertices; this makes the walk coding a cumulative sum and
keeps exhaustive enumeration cheap. Ground-set elements are 1-based, walk
indices 0-based. All values are immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BallotViolation, Crossing, InvalidWalk, NotAPartition, SumMismatch


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PlaneTree:
    """Rooted ordered tree on ``size`` vertices, as a lex-order outdegree sequence."""

    degrees: np.ndarray

    @property
    def size(self) -> int:
        """Number of vertices."""
        return int(self.degrees.shape[0])

    @property
    def n(self) -> int:
        """Number of edges (= size - 1); also the ground-set size it encodes."""
        return self.size - 1

    def __eq__(self, other):
        if not isinstance(other, PlaneTree):
            return NotImplemented
        return np.array_equal(self.degrees, other.degrees)

    def __hash__(self):
        return hash(self.degrees.tobytes())

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.degrees)

    def parents(self) -> np.ndarray:
        """Parent lex index of each vertex (-1 for the root)."""
        return _kernels.parents_lastflags(self.degrees)[0]

    def leaf_count(self) -> int:
        return int(np.count_nonzero(self.degrees == 0))

    def to_json(self) -> str:
        return json.dumps({"degrees": self.as_tuple()})

    @classmethod
    def from_json(cls, text: str) -> "PlaneTree":
        return make_tree(json.loads(text)["degrees"])

    def __repr__(self):
        if self.size <= 16:
            return f"PlaneTree({list(self.as_tuple())})"
        return f"PlaneTree(<{self.size} vertices>)"


@dataclass(frozen=True, eq=False)
class LukaWalk:
    """Integer path W_0..W_{n+1}: starts at 0, steps >= -1, nonnegative until the final step to -1."""

    values: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.shape[0]) - 2

    def __eq__(self, other):
        if not isinstance(other, LukaWalk):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.values)

    def __repr__(self):
        if self.values.shape[0] <= 18:
            return f"LukaWalk({list(self.as_tuple())})"
        return f"LukaWalk(<length {self.values.shape[0]}>)"


@dataclass(frozen=True, eq=False)
class NCPartition:
    """Non-crossing partition of {1, ..., n}.

    ``blocks`` is canonical: each block ascending, blocks ordered by their
    smallest element.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if not isinstance(other, NCPartition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.n, self.blocks))

    def block_count(self) -> int:
        return len(self.blocks)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_containing(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "blocks": [list(b) for b in self.blocks]})

    @classmethod
    def from_json(cls, text: str) -> "NCPartition":
        d = json.loads(text)
        return validate_partition(d["blocks"], d["n"])

    @classmethod
    def _from_csr(cls, n: int, elems: np.ndarray, offsets: np.ndarray) -> "NCPartition":
        # trusted constructor for internally generated (already non-crossing) data
        blocks = tuple(
            tuple(int(x) for x in elems[offsets[i]:offsets[i + 1]])
            for i in range(offsets.shape[0] - 1)
        )
        return cls(n=n, blocks=blocks)

    def __repr__(self):
        if self.n <= 20:
            return f"NCPartition(n={self.n}, blocks={[list(b) for b in self.blocks]})"
        return f"NCPartition(n={self.n}, <{len(self.blocks)} blocks>)"


@dataclass(frozen=True, eq=False)
class TwoTypeTree:
    """Plane tree with the bipartite-by-generation coloring made explicit.

    Vertices at even generation take one color, odd generation the other;
    the root is even. ``block_ids`` (optional) marks, per lex index, which
    block of the originating partition the vertex represents (-1 for face
    vertices); ``blocks`` lists those blocks.
    """

    tree: PlaneTree
    block_ids: tuple[int, ...] | None = None
    blocks: tuple[tuple[int, ...], ...] | None = None

    @property
    def size(self) -> int:
        return self.tree.size

    def depths(self) -> np.ndarray:
        par = self.tree.parents()
        d = np.zeros(par.shape[0], dtype=np.int64)
        for v in range(1, par.shape[0]):
            d[v] = d[par[v]] + 1
        return d

    def colors(self) -> np.ndarray:
        """0 for even generation, 1 for odd."""
        return (self.depths() & 1).astype(np.int8)

    def __eq__(self, other):
        if not isinstance(other, TwoTypeTree):
            return NotImplemented
        return self.tree == other.tree


# --- constructors / conversions ---

def make_tree(degrees) -> PlaneTree:
    """Validate an outdegree sequence and wrap it as a PlaneTree."""
    deg = np.ascontiguousarray(degrees, dtype=np.int64)
    if deg.ndim != 1 or deg.shape[0] == 0:
        raise SumMismatch("degree sequence must be a nonempty 1-d sequence")
    if np.any(deg < 0):
        raise SumMismatch("outdegrees must be nonnegative")
    n = deg.shape[0] - 1
    total = int(deg.sum())
    if total != n:
        raise SumMismatch(f"degrees sum to {total}, expected {n} for {n + 1} vertices")
    # strict prefixes of (k - 1) must have nonnegative partial sums
    prefix = np.cumsum(deg - 1)
    if n > 0 and int(prefix[:-1].min()) < 0:
        j = int(np.argmax(prefix[:-1] < 0))
        raise BallotViolation(f"prefix sum drops below 0 after position {j}")
    return PlaneTree(degrees=_frozen(deg))


def lukasiewicz_path(tree: PlaneTree) -> LukaWalk:
    """Walk with increments (outdegree - 1) over the vertices in lex order."""
    vals = np.empty(tree.size + 1, dtype=np.int64)
    vals[0] = 0
    np.cumsum(tree.degrees - 1, out=vals[1:])
    return LukaWalk(values=_frozen(vals))


def make_walk(values) -> LukaWalk:
    """Validate walk values W_0..W_{n+1}."""
    vals = np.ascontiguousarray(values, dtype=np.int64)
    if vals.ndim != 1 or vals.shape[0] < 2:
        raise InvalidWalk("walk needs at least two values")
    if vals[0] != 0:
        raise InvalidWalk("walk must start at 0")
    steps = np.diff(vals)
    if int(steps.min()) < -1:
        raise InvalidWalk("steps below -1 are not allowed")
    if vals[-1] != -1 or (vals.shape[0] > 2 and int(vals[1:-1].min()) < 0):
        raise InvalidWalk("walk must stay nonnegative and end at -1")
    return LukaWalk(values=_frozen(vals))


def tree_from_walk(walk: LukaWalk | np.ndarray) -> PlaneTree:
    """Inverse of :func:`lukasiewicz_path`."""
    if not isinstance(walk, LukaWalk):
        walk = make_walk(walk)
    deg = np.diff(walk.values) + 1
    return PlaneTree(degrees=_frozen(np.ascontiguousarray(deg)))


def validate_partition(blocks, n: int) -> NCPartition:
    """Check that ``blocks`` is a non-crossing partition of {1..n}.

    The crossing test is a single left-to-right sweep over the chords that
    join consecutive elements of each block; on failure the witnessing
    quadruple a < b < c < d is reported.
    """
    if n < 0:
        raise NotAPartition("n must be nonnegative")
    canon = []
    seen = np.zeros(n + 1, dtype=bool)
    for b in blocks:
        bb = sorted(int(x) for x in b)
        if not bb:
            raise NotAPartition("empty block")
        if len(set(bb)) != len(bb):
            raise NotAPartition(f"repeated element in block {bb}")
        for x in bb:
            if not 1 <= x <= n:
                raise NotAPartition(f"element {x} outside 1..{n}")
            if seen[x]:
                raise NotAPartition(f"element {x} appears in two blocks")
            seen[x] = True
        canon.append(tuple(bb))
    if int(seen[1:].sum()) != n:
        missing = int(np.flatnonzero(~seen[1:])[0]) + 1
        raise NotAPartition(f"element {missing} is not covered")
    canon.sort(key=lambda b: b[0])

    # consecutive-element arcs; pred[x] = previous element of x's block
    pred = np.zeros(n + 1, dtype=np.int64)
    succ = np.zeros(n + 1, dtype=np.int64)
    for b in canon:
        for i in range(1, len(b)):
            pred[b[i]] = b[i - 1]
            succ[b[i - 1]] = b[i]
    stack: list[tuple[int, int]] = []
    for x in range(1, n + 1):
        p = int(pred[x])
        if p:
            top = stack[-1]
            if top != (p, x):
                # the still-open top arc straddles x's arc
                raise Crossing((p, top[0], x, top[1]))
            stack.pop()
        s = int(succ[x])
        if s:
            stack.append((x, s))
    return NCPartition(n=n, blocks=tuple(canon))


def crossing_quadruple_bruteforce(blocks) -> tuple[int, int, int, int] | None:
    """Quadratic oracle: first a<b<c<d with {a,c} and {b,d} in distinct blocks.

    Test-suite reference for the sweep in :func:`validate_partition`.
    """
    bl = [sorted(b) for b in blocks]
    for i in range(len(bl)):
        for j in range(len(bl)):
            if i == j:
                continue
            for a_idx in range(len(bl[i]) - 1):
                a, c = bl[i][a_idx], bl[i][a_idx + 1]
                for b_idx in range(len(bl[j]) - 1):
                    b, d = bl[j][b_idx], bl[j][b_idx + 1]
                    if a < b < c < d:
                        return (a, b, c, d)
    return None
