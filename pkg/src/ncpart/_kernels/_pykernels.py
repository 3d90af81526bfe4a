"""Pure-Python / numpy implementations of the hot kernels.

Same contracts as the compiled versions in ``_ckernels.pyx``; selected at
import time when the extension is unavailable (or NCPART_PURE_PYTHON=1).
The sequential stack scans are plain Python loops; the conditioned-sampling
sweep is vectorised across replicas so the fallback stays usable for
moderate Monte Carlo runs.
"""

import numpy as np

BACKEND = "python"


def parents_lastflags(degrees):
    """Parent index and last-child flag for each vertex of a degree sequence.

    ``degrees`` lists outdegrees in depth-first order. Returns
    ``(parent, is_last)`` with ``parent[0] = -1``; ``is_last[v]`` is 1 when
    v is the last child of its parent (``is_last[0] = 0``).
    """
    deg = np.asarray(degrees, dtype=np.int64)
    n1 = deg.shape[0]
    parent = np.empty(n1, dtype=np.int64)
    is_last = np.zeros(n1, dtype=np.uint8)
    parent[0] = -1
    # stack holds (vertex, remaining children to attach)
    stack_v = [0]
    stack_r = [int(deg[0])]
    for m in range(1, n1):
        v = stack_v[-1]
        parent[m] = v
        stack_r[-1] -= 1
        if stack_r[-1] == 0:
            is_last[m] = 1
            stack_v.pop()
            stack_r.pop()
        d = int(deg[m])
        if d > 0:
            stack_v.append(m)
            stack_r.append(d)
    return parent, is_last


def blocks_csr(degrees):
    """Sibling groups of a degree sequence, as a CSR pair.

    Children of vertex j form one group of size ``degrees[j]``; groups are
    listed by parent in depth-first order, which is also increasing order
    of their smallest element. Returns ``(elems, offsets)``.
    """
    deg = np.asarray(degrees, dtype=np.int64)
    n1 = deg.shape[0]
    n = n1 - 1
    sizes = deg[deg > 0]
    offsets = np.zeros(sizes.shape[0] + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    elems = np.empty(n, dtype=np.int64)
    fill = offsets[:-1].copy()
    next_bid = 0
    stack_b = []
    stack_r = []
    if deg[0] > 0:
        stack_b.append(0)
        stack_r.append(int(deg[0]))
        next_bid = 1
    for m in range(1, n1):
        b = stack_b[-1]
        elems[fill[b]] = m
        fill[b] += 1
        stack_r[-1] -= 1
        if stack_r[-1] == 0:
            stack_b.pop()
            stack_r.pop()
        d = int(deg[m])
        if d > 0:
            stack_b.append(next_bid)
            stack_r.append(d)
            next_bid += 1
    return elems, offsets


def twig_heads(parent, is_last):
    """Topmost vertex of the maximal last-child chain through each vertex."""
    n1 = parent.shape[0]
    head = np.empty(n1, dtype=np.int64)
    head[0] = 0
    for v in range(1, n1):
        head[v] = head[parent[v]] if is_last[v] else v
    return head


def cond_sample_block(rows, cvals, supp, psupp, s, u, out):
    """Advance conditioned degree sampling by one row block, all replicas.

    ``rows[t]`` is the max-normalised distribution of the sum of
    ``m_top - t`` draws; ``cvals[t]`` the normaliser ratio consumed when row
    ``m_top - t`` was built, so that the conditional normaliser at state
    (m, s) is ``cvals[t] * rows[t][s]``. ``supp``/``psupp`` give the pmf on
    its support, ascending. ``s`` (in/out) holds per-replica remaining sums,
    ``u`` the uniforms, ``out`` the sampled degrees. Returns 0, or -1 on an
    infeasible state.
    """
    nsteps = u.shape[1]
    nrep = u.shape[0]
    for t in range(nsteps):
        rm = rows[t]
        rm1 = rows[t + 1]
        z = cvals[t] * rm[s]
        if not np.all(z > 0.0):
            return -1
        target = u[:, t] * z
        acc = np.zeros(nrep)
        dsel = np.full(nrep, -1, dtype=np.int64)
        last_ok = np.full(nrep, -1, dtype=np.int64)
        active = np.arange(nrep)
        for i in range(supp.shape[0]):
            if active.size == 0:
                break
            dv = supp[i]
            fits = s[active] >= dv
            active = active[fits]          # larger dv will not fit either
            if active.size == 0:
                break
            term = psupp[i] * rm1[s[active] - dv]
            pos = term > 0.0
            last_ok[active[pos]] = dv
            acc[active] += term
            done = acc[active] >= target[active]
            dsel[active[done]] = dv
            active = active[~done]
        undecided = dsel < 0
        if np.any(undecided):
            # float shortfall at the upper end: take the largest feasible
            # degree that had positive mass
            if np.any(last_ok[undecided] < 0):
                return -1
            dsel[undecided] = last_ok[undecided]
        out[:, t] = dsel
        s -= dsel
    return 0
