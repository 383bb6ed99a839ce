"""Floating-point incidence oracle for the cellular boundary.

The oracle never looks at the combinatorial face rules.  Given a cell C and a
candidate face F it samples random configurations in the open face, pushes
them a distance ``t`` back into the interior along the degeneration that F
describes, checks that the resulting planar configuration really lies in C,
and compares orientation frames with floating-point determinants.

Configurations are dicts ``{point: (x, y)}``.  A corolla's coordinates are
ordered by the same rule as everywhere else: line abscissae left to right,
then per block the ordinates from top to bottom.
"""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence

import numpy as np

from .cells import Cell, _leafset, _reorder_sign, is_leaf, v_dim, v_items
from .core import InvalidArgument


class Inconclusive(RuntimeError):
    pass


def cell_of_configuration(cfg: Dict, tol: float = 1e-12) -> Optional[List[list]]:
    """Blocks of the Fox-Neuwirth cell containing a configuration, or None if degenerate."""
    pts = sorted(cfg, key=lambda p: cfg[p][0])
    lines: List[list] = []
    for p in pts:
        if lines and abs(cfg[p][0] - cfg[lines[-1][0]][0]) <= tol:
            lines[-1].append(p)
        else:
            lines.append([p])
    out = []
    for ln in lines:
        ln.sort(key=lambda p: cfg[p][1])
        ys = [cfg[p][1] for p in ln]
        if any(b - a <= tol for a, b in zip(ys, ys[1:])):
            return None
        out.append(ln)
    return out


def _coords(blocks) -> list:
    keys = [("X", j) for j in range(len(blocks))]
    for b in blocks:
        for p in reversed(b):
            keys.append(("y", p))
    return keys


def _vector(blocks, cfg) -> np.ndarray:
    vals = []
    for k in _coords(blocks):
        if k[0] == "X":
            vals.append(cfg[blocks[k[1]][0]][0])
        else:
            vals.append(cfg[k[1]][1])
    return np.array(vals, dtype=float)


def _xi(blocks, z) -> np.ndarray:
    keys = _coords(blocks)
    tx = np.array([1.0 if k[0] == "X" else 0.0 for k in keys])
    ty = np.array([0.0 if k[0] == "X" else 1.0 for k in keys])
    return np.vstack([tx, ty, z])


def _config(blocks, z) -> Dict:
    keys = _coords(blocks)
    X = {}
    y = {}
    for k, v in zip(keys, z):
        if k[0] == "X":
            X[k[1]] = v
        else:
            y[k[1]] = v
    return {p: (X[j], y[p]) for j, b in enumerate(blocks) for p in b}


def _random_config(blocks, rng: random.Random, xs=None) -> Dict:
    k = len(blocks)
    if xs is None:
        xs = sorted(rng.uniform(0, 1) for _ in range(k))
        xs = [x + 0.3 * j for j, x in enumerate(xs)]
    cfg = {}
    for j, b in enumerate(blocks):
        ys = sorted(rng.uniform(0, 1) for _ in b)
        ys = [y + 0.3 * i for i, y in enumerate(ys)]
        for p, y in zip(b, ys):
            cfg[p] = (xs[j], y)
    return cfg


def _unit(v):
    n = np.linalg.norm(v)
    return v / n if n else v


def _oriented(blocks, z, frame: np.ndarray) -> float:
    M = np.vstack([_unit(r) for r in _xi(blocks, z)] + [_unit(r) for r in frame])
    return np.linalg.det(M)


def local_incidence(C: Sequence[Sequence], outer: Sequence[Sequence], clusters: Sequence[Sequence[Sequence]],
                    samples: int = 8, t: float = 1e-5, seed: int = 0, det_tol: float = 1e-6):
    """Incidence of a corolla face on a corolla, by sampling.

    ``C`` is a list of blocks of opaque points.  The candidate face is the
    ``outer`` corolla whose blocks may contain markers ``("P", i)`` standing
    for the collapsed ``clusters[i]`` (each a list of blocks).  Without
    clusters the face is a plain corolla.  The face is oriented as outer cell
    followed by the cluster cells in the given order.  Returns +1 or -1, or
    None when F is not a codimension-one face of C.
    """
    rng = random.Random(seed)
    C = [list(b) for b in C]
    line_of = {p: j for j, b in enumerate(C) for p in b}
    owner = {p: i for i, cl in enumerate(clusters) for b in cl for p in b}
    oline = {}
    for a, b in enumerate(outer):
        for p in b:
            oline[p] = a
    if set(line_of) != set(owner) | {p for p in oline if not _is_marker(p)}:
        return None
    # each line of C lands on a single line of the outer configuration
    target = {}
    for j, b in enumerate(C):
        ls = {oline[("P", owner[p])] if p in owner else oline[p] for p in b}
        if len(ls) != 1:
            return None
        target[j] = ls.pop()
    runs: Dict[int, list] = {}
    for j in range(len(C)):
        runs.setdefault(target[j], []).append(j)
    run_lines = [j for js in runs.values() if len(js) > 1 for j in js]
    if not clusters and not run_lines:
        return None
    cl_lines = {line_of[p] for p in owner}
    for js in runs.values():
        if cl_lines & set(js) and not set(js) <= cl_lines:
            return None  # an empty line inside a collapsing cluster
    # every cluster block sits on one line of C
    for cl in clusters:
        for b in cl:
            if len({line_of[p] for p in b}) != 1:
                return None
    signs = set()
    for _ in range(samples):
        cfgO = _random_config(outer, rng)
        shared = {}
        for a, js in runs.items():
            if len(js) == 1 and js[0] not in cl_lines:
                continue
            xs = sorted(rng.uniform(0, 1) for _ in js)
            for j, x in zip(js, xs):
                shared[j] = x + 0.5 * js.index(j)
        cfgI = []
        for cl in clusters:
            xs = [shared.get(line_of[b[0]]) for b in cl]
            if any(x is None for x in xs):
                return None
            cfg = _random_config(cl, rng, xs=xs)
            got = cell_of_configuration(cfg)
            if got != [list(b) for b in cl]:
                return None
            cfgI.append(cfg)
        multi = len(clusters) > 1

        def _xoff(j, cIs):
            for i, cl in enumerate(clusters):
                for b in cl:
                    if line_of[b[0]] == j:
                        return cIs[i][b[0]][0]
            return shared[j]

        def lift(cO, cIs, tt):
            cfg = {}
            for j, b in enumerate(C):
                a = target[j]
                X0 = cO[outer[a][0]][0]
                X = X0 + tt * _xoff(j, cIs) if j in shared else X0
                for p in b:
                    if p in owner:
                        i = owner[p]
                        y = cO[("P", i)][1] + tt * cIs[i][p][1]
                    else:
                        y = cO[p][1]
                    cfg[p] = (X, y)
            return cfg
        cfgC = lift(cfgO, cfgI, t)
        got = cell_of_configuration(cfgC)
        if got != C:
            return None
        zC = _vector(C, cfgC)
        zdt = (_vector(C, lift(cfgO, cfgI, 2 * t)) - _vector(C, lift(cfgO, cfgI, 0.0))) / (2 * t)
        rows = [-zdt]
        sign = 1.0
        # outer frame
        zO = _vector(outer, cfgO)
        dO = len(zO) - 3
        WO = np.array([[rng.gauss(0, 1) for _ in zO] for _ in range(dO)]).reshape(dO, len(zO))
        s = _oriented(outer, zO, WO)
        if abs(s) < det_tol:
            raise Inconclusive("degenerate outer frame")
        sign *= np.sign(s)
        for w in WO:
            moved = _config(outer, zO + w)
            rows.append(_vector(C, lift(moved, cfgI, t)) - zC)
        # cluster frames
        for i, cl in enumerate(clusters):
            zI = _vector(cl, cfgI[i])
            keys = _coords(cl)
            dI = len(zI) - 3
            W = []
            for _ in range(dI):
                w = np.array([rng.gauss(0, 1) for _ in zI])
                if multi:
                    w = w * np.array([0.0 if k[0] == "X" else 1.0 for k in keys])
                W.append(w)
            W = np.array(W).reshape(dI, len(zI))
            s = _oriented(cl, zI, W)
            if abs(s) < det_tol:
                raise Inconclusive("degenerate cluster frame")
            sign *= np.sign(s)
            for w in W:
                cIs = list(cfgI)
                cIs[i] = _config(cl, zI + w)
                rows.append((_vector(C, lift(cfgO, cIs, t)) - zC) / t)
        det = _oriented(C, zC, np.array(rows))
        if abs(det) < det_tol:
            raise Inconclusive(f"orientation determinant {det:.2e} below tolerance")
        signs.add(int(np.sign(det) * sign))
    if len(signs) != 1:
        raise Inconclusive("samples disagree on the orientation")
    return signs.pop()


def _is_marker(p) -> bool:
    return isinstance(p, tuple) and p[0] == "P"


def _local(v) -> List[list]:
    return [[x if is_leaf(x) else ("V", _leafset(x)) for x in b] for b in v]


def incidence_oracle(cell: Cell, face: Cell, samples: int = 8, seed: int = 0):
    """Incidence coefficient of ``face`` in the boundary of ``cell``: +1, -1 or None."""
    if face.dim != cell.dim - 1 or face.arity != cell.arity:
        raise InvalidArgument("candidate face must have the same arity and one dimension less")
    cv = {_leafset(w): w for w in cell.vertices}
    fv = {_leafset(w): w for w in face.vertices}
    if not set(cv) <= set(fv):
        return None
    changed = [s for s in cv if _local(cv[s]) != _local(fv[s])]
    new = [s for s in fv if s not in cv]
    if len(changed) != 1:
        return None
    L = changed[0]
    v = cv[L]
    outer_v = fv[L]
    items = v_items(v)
    key = {(x if is_leaf(x) else ("V", _leafset(x))) for x in items}
    # new vertices must be children of the changed vertex, built from its inputs
    clusters = []
    marker = {}
    for x in v_items(outer_v):
        if not is_leaf(x) and _leafset(x) in new:
            marker[_leafset(x)] = ("P", len(clusters))
            clusters.append(_local(x))
    if set(marker) != set(new):
        return None
    for cl in clusters:
        for b in cl:
            if not set(b) <= key:
                return None
    outer = [[marker.get(x[1], x) if isinstance(x, tuple) else x for x in b] for b in _local(outer_v)]
    s = local_incidence(_local(v), outer, clusters, samples=samples, seed=seed)
    if s is None:
        return None
    order = [_leafset(w) for w in cell.vertices]
    a = order.index(L)
    before = sum(v_dim(w) for w in cell.vertices[:a])
    cl_sets = [s_ for s_ in sorted(marker, key=lambda q: marker[q][1])]
    intended = order[:a + 1] + cl_sets + order[a + 1:]
    return s * (-1) ** before * _reorder_sign(intended, face)


def oracle_boundary(cell: Cell, samples: int = 8, seed: int = 0):
    """The boundary of ``cell`` assembled face by face from :func:`incidence_oracle`."""
    from .cells import Chain, enumerate_cells
    out = Chain(cell.arity, cell.dim - 1)
    if cell.dim == 0:
        return out
    for face in enumerate_cells(cell.arity, cell.dim - 1):
        s = incidence_oracle(cell, face, samples=samples, seed=seed)
        if s is not None:
            out.add_term(face, s)
    return out
