"""Maps between non-crossing partitions, dual two-type trees and plane trees.

The dual tree of a partition has one vertex per block and one per face of
the hull dissection of the disk; the two rootings differ only in the
distinguished corner. Flattening a rooted two-type tree to a one-type tree
sends every even-generation vertex to a leaf and every odd-generation
vertex with k children to a vertex with k+1 children. All maps work on the
degree-sequence representation; no planar embedding is materialised.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import (
    LukaWalk,
    NCPartition,
    PlaneTree,
    TwoTypeTree,
    _frozen,
    make_walk,
    tree_from_walk,
)


def p_circ(t: PlaneTree) -> NCPartition:
    """Partition of [n] grouping lex indices of vertices that share a parent."""
    if t.size == 1:
        return NCPartition(n=0, blocks=())
    elems, offsets = _kernels.blocks_csr(t.degrees)
    return NCPartition._from_csr(t.n, elems, offsets)


def p_bullet(t: PlaneTree) -> NCPartition:
    """Partition of [n] grouping lex indices that lie on a common maximal twig.

    A twig is a descending path whose vertices below its top are each the
    last child of their parent; the block through the root drops the root
    index.
    """
    if t.size == 1:
        return NCPartition(n=0, blocks=())
    par, last = _kernels.parents_lastflags(t.degrees)
    head = _kernels.twig_heads(par, last)
    order = np.argsort(head, kind="stable")
    heads_sorted = head[order]
    cuts = np.flatnonzero(np.diff(heads_sorted)) + 1
    blocks = []
    for g in np.split(order, cuts):
        if g[0] == 0:
            g = g[1:]          # the root is not a ground-set element
        if g.shape[0]:
            blocks.append(tuple(int(x) for x in g))
    blocks.sort(key=lambda b: b[0])
    return NCPartition(n=t.n, blocks=tuple(blocks))


def _sibling_links(par: np.ndarray):
    """Previous/next sibling pointers (-1 where absent), from a parent array."""
    n1 = par.shape[0]
    prev_sib = np.full(n1, -1, dtype=np.int64)
    next_sib = np.full(n1, -1, dtype=np.int64)
    if n1 > 1:
        order = np.argsort(par[1:], kind="stable") + 1
        same = par[order[1:]] == par[order[:-1]]
        prev_sib[order[1:][same]] = order[:-1][same]
        next_sib[order[:-1][same]] = order[1:][same]
    return prev_sib, next_sib


def b_transform(t: PlaneTree) -> PlaneTree:
    """Tree on the same vertex set linking consecutive siblings and closing twigs.

    Every right sibling becomes a child of its left neighbour; every first
    child hangs from the top of the maximal last-child chain through its
    parent. The map preserves the lexicographic order of the vertices, so
    the image degree sequence is indexed by the original lex indices.
    """
    if t.size == 1:
        return t
    par, last = _kernels.parents_lastflags(t.degrees)
    head = _kernels.twig_heads(par, last)
    prev_sib, _ = _sibling_links(par)
    n1 = t.size
    v = np.arange(1, n1)
    first = par[1:] == v - 1
    new_par = np.where(first, head[par[1:]], prev_sib[1:])
    deg = np.bincount(new_par, minlength=n1).astype(np.int64)
    return PlaneTree(degrees=_frozen(deg))


# --- dual two-type trees ---

def _dissection(p: NCPartition):
    """Face/block incidence of the hull dissection of the disk.

    Faces are the regions outside all hulls. Face 0 touches the boundary
    arc between n and 1; every other face sits under one chord joining two
    consecutive elements of a block, and is created when the chord opens
    in a left-to-right sweep. Returns ``(face_children, block_faces)``:
    blocks directly inside each face (by increasing smallest element), and
    the chord faces of each block (by chord order).
    """
    n = p.n
    nblocks = len(p.blocks)
    bid = {}
    succ = {}
    for bi, b in enumerate(p.blocks):
        for i, x in enumerate(b):
            bid[x] = bi
            if i + 1 < len(b):
                succ[x] = b[i + 1]
    nfaces = 1 + (n - nblocks)
    face_children: list[list[int]] = [[] for _ in range(nfaces)]
    block_faces: list[list[int]] = [[] for _ in range(nblocks)]
    stack = [0]
    next_face = 1
    is_min = {b[0] for b in p.blocks}
    for x in range(1, n + 1):
        bi = bid[x]
        if x in is_min:
            face_children[stack[-1]].append(bi)
        else:
            stack.pop()                      # face under the chord (pred, x) closes
        if x in succ:
            block_faces[bi].append(next_face)
            stack.append(next_face)
            next_face += 1
    if next_face != nfaces or len(stack) != 1:
        raise AssertionError("dissection sweep out of balance")
    return face_children, block_faces


def _single_vertex_two_type() -> TwoTypeTree:
    return TwoTypeTree(
        tree=PlaneTree(degrees=_frozen(np.zeros(1, dtype=np.int64))),
        block_ids=(-1,),
        blocks=(),
    )


def dual_tree_circ(p: NCPartition) -> TwoTypeTree:
    """Dual tree rooted at the boundary face between n and 1.

    Face vertices sit at even generations. A block vertex has one face
    child per chord between consecutive elements, so its graph degree
    equals the block size; the block containing 1 is the root's first
    child.
    """
    if p.n == 0:
        return _single_vertex_two_type()
    face_children, block_faces = _dissection(p)
    degrees = []
    block_ids = []
    stack: list[tuple[int, int]] = [(0, 0)]  # (kind, id); kind 0 = face, 1 = block
    while stack:
        kind, i = stack.pop()
        if kind == 0:
            degrees.append(len(face_children[i]))
            block_ids.append(-1)
            for b in reversed(face_children[i]):
                stack.append((1, b))
        else:
            degrees.append(len(block_faces[i]))
            block_ids.append(i)
            for f in reversed(block_faces[i]):
                stack.append((0, f))
    return TwoTypeTree(
        tree=PlaneTree(degrees=_frozen(np.asarray(degrees, dtype=np.int64))),
        block_ids=tuple(block_ids),
        blocks=p.blocks,
    )


def dual_tree_bullet(p: NCPartition) -> TwoTypeTree:
    """Dual tree rooted at the block containing n, boundary face first.

    Same unrooted tree as :func:`dual_tree_circ` with one edge orientation
    flipped: the block containing n (always adjacent to the boundary face)
    becomes the root and the boundary face its first child.
    """
    if p.n == 0:
        return _single_vertex_two_type()
    face_children, block_faces = _dissection(p)
    bn = face_children[0][-1]
    if p.n not in p.blocks[bn]:
        raise AssertionError("last top-level block must contain n")
    degrees = []
    block_ids = []
    # (kind, id, special): special marks the root block and the re-rooted face 0
    stack: list[tuple[int, int, bool]] = [(1, bn, True)]
    while stack:
        kind, i, special = stack.pop()
        if kind == 1:
            fkids = block_faces[i]
            degrees.append(len(fkids) + (1 if special else 0))
            block_ids.append(i)
            for f in reversed(fkids):
                stack.append((0, f, False))
            if special:
                stack.append((0, 0, True))
        else:
            bkids = face_children[i][:-1] if special else face_children[i]
            degrees.append(len(bkids))
            block_ids.append(-1)
            for b in reversed(bkids):
                stack.append((1, b, False))
    return TwoTypeTree(
        tree=PlaneTree(degrees=_frozen(np.asarray(degrees, dtype=np.int64))),
        block_ids=tuple(block_ids),
        blocks=p.blocks,
    )


def js_forward(tt: TwoTypeTree) -> PlaneTree:
    """Flatten a two-type tree to a one-type tree on the same vertex set.

    For every odd-generation vertex v the image children are: for each
    child w of v, w itself when w is a leaf and otherwise w's first child;
    then, last, v's next sibling (or v's parent when v is a last child).
    Even-generation vertices become leaves. The new root is the first
    child of the old root.
    """
    t = tt.tree
    n1 = t.size
    if n1 == 1:
        return t
    deg = t.degrees
    par, last = _kernels.parents_lastflags(deg)
    _, next_sib = _sibling_links(par)
    parity = np.zeros(n1, dtype=np.int8)
    for v in range(1, n1):
        parity[v] = parity[par[v]] ^ 1

    order = np.argsort(par[1:], kind="stable") + 1
    sorted_par = par[order]
    starts = np.searchsorted(sorted_par, np.arange(n1))
    ends = np.searchsorted(sorted_par, np.arange(n1), side="right")

    new_children: list[list[int]] = [[] for _ in range(n1)]
    for v in range(1, n1):
        if parity[v] == 0:
            continue
        kids = [int(w) if deg[w] == 0 else int(w) + 1 for w in order[starts[v]:ends[v]]]
        kids.append(int(next_sib[v]) if not last[v] else int(par[v]))
        new_children[v] = kids

    out = np.empty(n1, dtype=np.int64)
    pos = 0
    stack = [1]  # first child of the old root
    while stack:
        v = stack.pop()
        kids = new_children[v]
        out[pos] = len(kids)
        pos += 1
        for w in reversed(kids):
            stack.append(w)
    if pos != n1:
        raise AssertionError("flattening did not reach every vertex")
    return PlaneTree(degrees=_frozen(out))


def t_circ(p: NCPartition) -> PlaneTree:
    """One-type tree image of the partition via the boundary-face rooting."""
    return js_forward(dual_tree_circ(p))


def t_bullet(p: NCPartition) -> PlaneTree:
    """One-type tree image of the partition via the last-block rooting."""
    return js_forward(dual_tree_bullet(p))


def kreweras(p: NCPartition) -> NCPartition:
    """Kreweras complement, realised as the twig reading of t_circ."""
    return p_bullet(t_circ(p))


def partition_from_walk(w: LukaWalk | np.ndarray) -> NCPartition:
    """Partition read off a Lukasiewicz walk: blocks are the children index sets."""
    if not isinstance(w, LukaWalk):
        w = make_walk(w)
    return p_circ(tree_from_walk(w))
