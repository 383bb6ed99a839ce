"""Structure maps from cells to operators and the G-infinity checks.

A :class:`StructureMap` assigns an operator to every corolla shape (cells
whose leaves are numbered 1..n in reading order).  The operator of any other
cell is then forced: a relabelled corolla gets the permuted operator (with
the Koszul sign of the inputs), and a composite cell is split at a child
vertex and mapped to the operadic composition of the pieces, carrying the
orientation sign of the chain-level composition.

Besides the cell assignment a map carries *named* operations (dot, circle,
the two-argument braces, M3, ...).  The printed low-degree identities are
written in terms of these names.  By default the names are just the
operators of the corresponding corollas; :func:`register_two_kinds` lets the
two differ by the decalage sign, which is what makes the cell relation
``mu(boundary C) = D(mu(C))`` hold for the Hochschild braces.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .cells import (Cell, Chain, act as act_cell, boundary, compose, compose_cells, enumerate_cells,
                    is_leaf, parse_cell, v_items, v_leaves, v_relabel, v_replace, v_sizes)
from .core import (ComposedOp, DifferentialOp, GradedSpace, InvalidArgument, LinearCombination,
                   MultiOp, Operator, PermutedOp, Vector, ZeroOp, canonical, koszul_sign, pm, vadd,
                   vscale)
from .report import Entry, Report, entry


class IncompleteStructure(InvalidArgument):
    """An identity or check needs an operator that was never registered."""


STANDARD_CELLS = {
    "dot": "d2;12",
    "circle": "d2;1|2",
    "brace_1_23": "d3;1|23",
    "brace_12_3": "d3;12|3",
    "M3": "d3;123",
    "brace_1_2_3": "d3;1|2|3",
}

IDENTITIES = ("hcomm", "dderiv", "distr", "left", "right", "hass", "deriv", "jacobi")


def _standard(sizes: Sequence[int]) -> Cell:
    blocks, k = [], 1
    for s in sizes:
        blocks.append(list(range(k, k + s)))
        k += s
    return Cell.corolla(blocks)


class DecalageOp(Operator):
    """F twisted by (-1)^{sum_i (n - i)|v_i|}."""

    def __init__(self, F: Operator):
        self.F = F
        self.arity, self.degree, self.space = F.arity, F.degree, F.space

    def apply(self, idx):
        n = len(idx)
        e = sum((n - 1 - i) * self.space.degrees[k] for i, k in enumerate(idx))
        return vscale(self.F.apply(idx), pm(e))


class StructureMap:
    def __init__(self, space: GradedSpace, default_zero: bool = False):
        self.space = space
        self.default_zero = default_zero
        self.corollas: Dict[Tuple[int, ...], Operator] = {}
        self.named: Dict[str, Operator] = {}
        self._cache: Dict[Cell, Operator] = {}

    # -- registration

    def register(self, cell, op: Operator) -> None:
        """Assign ``op`` to a corolla numbered 1..n in reading order."""
        if isinstance(cell, str):
            cell = parse_cell(cell)
        if not cell.is_corolla or v_items(cell.root) != list(range(1, cell.arity + 1)):
            raise InvalidArgument(f"register expects a corolla labelled 1..n in reading order, got {cell}")
        if op.arity != cell.arity:
            raise InvalidArgument(f"operator of arity {op.arity} for a cell of arity {cell.arity}")
        if op.degree != -cell.dim:
            raise InvalidArgument(
                f"operator of degree {op.degree} for the cell {cell} of dimension {cell.dim}; expected {-cell.dim}")
        self.corollas[v_sizes(cell.root)] = op
        self._cache.clear()

    def name(self, name: str, op: Operator) -> None:
        if name not in STANDARD_CELLS and name != "bracket":
            raise InvalidArgument(f"unknown operation name {name!r}")
        self.named[name] = op

    # -- evaluation

    def op(self, cell: Cell) -> Operator:
        if cell not in self._cache:
            self._cache[cell] = self._op(cell)
        return self._cache[cell]

    def _zero(self, cell: Cell) -> Operator:
        return ZeroOp(cell.arity, -cell.dim, self.space)

    def _op(self, cell: Cell) -> Operator:
        if cell.is_corolla:
            sizes = v_sizes(cell.root)
            F = self.corollas.get(sizes)
            if F is None:
                if self.default_zero:
                    return self._zero(cell)
                raise IncompleteStructure(f"no operator registered for the cell {_standard(sizes)}")
            if isinstance(F, ZeroOp):
                return self._zero(cell)
            labels = v_items(cell.root)
            if labels == sorted(labels):
                return F
            return PermutedOp(labels, F)
        return self._split(cell)

    def _split(self, cell: Cell) -> Operator:
        """cell = sign * perm . (C1 o_1 C2) with C2 the first child subtree of the root."""
        root = cell.root
        w = next(x for x in v_items(root) if not is_leaf(x))
        L = sorted(v_leaves(w))
        rank2 = {j: r + 1 for r, j in enumerate(L)}
        C2 = Cell(v_relabel(w, lambda j: rank2[j]))
        PH = -1  # placeholder leaf for the collapsed subtree
        outer = v_replace(root, w, PH)
        rest = sorted(j for j in v_leaves(outer) if j != PH)
        rank1 = {PH: 1}
        rank1.update({j: r + 2 for r, j in enumerate(rest)})
        C1 = Cell(v_relabel(outer, lambda j: rank1[j]))
        m2 = len(L)
        # labels of X = C1 o_1 C2: C2's leaves are 1..m2, C1's other leaves shift by m2 - 1
        orig = {}
        for r, j in enumerate(L):
            orig[r + 1] = j
        for r, j in enumerate(rest):
            orig[r + 2 + m2 - 1] = j
        perm = [orig[k] for k in range(1, cell.arity + 1)]
        X = compose(C1, 1, C2)
        (xc, sign), = X.terms.items()
        if act_cell(perm, xc) != cell:
            raise AssertionError(f"decomposition of {cell} went wrong")
        F1, F2 = self.op(C1), self.op(C2)
        if isinstance(F1, ZeroOp) or isinstance(F2, ZeroOp):
            return self._zero(cell)
        G: Operator = ComposedOp(F1, 1, F2)
        if perm != sorted(perm):
            G = PermutedOp(perm, G)
        if sign != 1:
            G = LinearCombination([(sign, G)])
        return G

    def chain_op(self, chain: Chain) -> Operator:
        terms = [(c, self.op(cell)) for cell, c in chain.items()]
        terms = [(c, F) for c, F in terms if not isinstance(F, ZeroOp)]
        if not terms:
            return ZeroOp(chain.arity, -chain.dim, self.space)
        return LinearCombination(terms)

    def named_op(self, name: str) -> Operator:
        if name in self.named:
            return self.named[name]
        if name not in STANDARD_CELLS:
            raise IncompleteStructure(f"no operation named {name!r}")
        return self.op(parse_cell(STANDARD_CELLS[name]))


def register_two_kinds(space: GradedSpace, dot: Operator, braces_family: Sequence[Optional[Operator]],
                       twist: bool = False) -> StructureMap:
    """Dot on (d2;12), braces on the cells (d_n; 1|2..n), zero on every other cell.

    ``braces_family[n]`` is the brace with n arguments (arity n + 1); entry 0
    is ignored.  The given operators become the named operations.  With
    ``twist`` the operator put on the cell (d_n; 1|2..n) is the brace times the
    decalage sign (-1)^{sum_i (n - i)|v_i|}.
    """
    if dot.arity != 2 or dot.degree != 0:
        raise InvalidArgument(f"dot must have arity 2 and degree 0, got arity {dot.arity}, degree {dot.degree}")
    smap = StructureMap(space, default_zero=True)
    smap.register("d2;12", dot)
    smap.name("dot", dot)
    for n, B in enumerate(braces_family):
        if n == 0 or B is None:
            continue
        if B.arity != n + 1 or B.degree != -n:
            raise InvalidArgument(f"brace with {n} arguments must have arity {n + 1} and degree {-n}")
        cell = Cell.corolla([[1], list(range(2, n + 2))])
        smap.register(cell, DecalageOp(B) if twist else B)
        if n == 1:
            smap.name("circle", B)
        elif n == 2:
            smap.name("brace_1_23", B)
    return smap


def hochschild_structure_map(A, N: int = 5, twist: bool = True) -> StructureMap:
    """The two-kinds structure map on C^{<=N}(A, A): dot, circle and {x}{y, z}."""
    from . import hochschild as hh
    H = hh.HochschildComplex(A, N)
    dot = H.operator(hh.dot, 2, 0, "dot")
    circ = H.operator(hh.circle, 2, -1, "circle")
    b2 = H.operator(lambda x, y, z: hh.braces(x, [y, z]), 3, -2, "brace_1_23")
    smap = register_two_kinds(H.space, dot, [None, circ, b2], twist=twist)
    smap.complex = H
    return smap


# ---------------------------------------------------------------- evaluation helpers

def _tuples(space: GradedSpace, arity: int, max_degree: Optional[int], max_total: Optional[int]):
    idx = [i for i in range(space.dim) if max_degree is None or space.degrees[i] <= max_degree]
    for t in product(idx, repeat=arity):
        if max_total is None or sum(space.degrees[i] for i in t) <= max_total:
            yield t


def _first_mismatch(F: Operator, G: Operator, tuples) -> Optional[list]:
    for t in tuples:
        if canonical(F.apply(t)) != canonical(G.apply(t)):
            return list(t)
    return None


def _lin(*terms) -> Vector:
    out: Vector = {}
    for c, v in terms:
        if c and v:
            vadd(out, v, c)
    return out


def _identity_sides(smap: StructureMap, identity: str):
    """Return (arity, needed names, function of basis vectors -> (lhs, rhs))."""
    sp = smap.space
    d = sp.d

    def deg(v):
        return sp.vdeg(v)

    if identity == "hcomm":
        def f(v1, v2):
            c, m = smap.named_op("circle"), smap.named_op("dot")
            a, b = deg(v1), deg(v2)
            lhs = _lin((1, d(c(v1, v2))), (-1, c(d(v1), v2)), (-pm(a - 1), c(v1, d(v2))))
            rhs = _lin((1, m(v1, v2)), (-pm(a * b), m(v2, v1)))
            return lhs, rhs
        return 2, ("circle", "dot"), f
    if identity == "dderiv":
        def f(v1, v2):
            m = smap.named_op("dot")
            a = deg(v1)
            lhs = _lin((1, d(m(v1, v2))), (-1, m(d(v1), v2)), (-pm(a), m(v1, d(v2))))
            return lhs, {}
        return 2, ("dot",), f
    if identity == "distr":
        def f(v1, v2, v3):
            B3 = smap.named_op("brace_1_2_3")
            L, R = smap.named_op("brace_1_23"), smap.named_op("brace_12_3")
            c = smap.named_op("circle")
            a, b, e = deg(v1), deg(v2), deg(v3)
            lhs = _lin((1, d(B3(v1, v2, v3))), (-1, B3(d(v1), v2, v3)), (-pm(a - 1), B3(v1, d(v2), v3)),
                       (-pm(a + b), B3(v1, v2, d(v3))))
            rhs = _lin((-1, L(v1, v2, v3)), (pm((b - 1) * (e - 1)), L(v1, v3, v2)),
                       (1, R(v1, v2, v3)), (-pm((a - 1) * (b - 1)), R(v2, v1, v3)),
                       (1, c(c(v1, v2), v3)), (-1, c(v1, c(v2, v3))))
            return lhs, rhs
        return 3, ("brace_1_2_3", "brace_1_23", "brace_12_3", "circle"), f
    if identity == "left":
        def f(v1, v2, v3):
            L, M, c, m = (smap.named_op(n) for n in ("brace_1_23", "M3", "circle", "dot"))
            a, b, e = deg(v1), deg(v2), deg(v3)
            lhs = _lin((1, d(L(v1, v2, v3))), (-1, L(d(v1), v2, v3)), (-pm(a - 1), L(v1, d(v2), v3)),
                       (-pm(a + b), L(v1, v2, d(v3))))
            rhs = _lin((-1, M(v1, v2, v3)), (pm(a * b), M(v2, v1, v3)), (-pm(a * (b + e)), M(v2, v3, v1)),
                       (1, c(v1, m(v2, v3))), (-pm((a - 1) * b), m(v2, c(v1, v3))), (-1, m(c(v1, v2), v3)))
            return lhs, rhs
        return 3, ("brace_1_23", "M3", "circle", "dot"), f
    if identity == "right":
        def f(v1, v2, v3):
            R, M, c, m = (smap.named_op(n) for n in ("brace_12_3", "M3", "circle", "dot"))
            a, b, e = deg(v1), deg(v2), deg(v3)
            lhs = _lin((1, d(R(v1, v2, v3))), (-1, R(d(v1), v2, v3)), (-pm(a - 1), R(v1, d(v2), v3)),
                       (-pm(a + b), R(v1, v2, d(v3))))
            rhs = _lin((-1, M(v1, v2, v3)), (pm(b * e), M(v1, v3, v2)), (-pm(e * (a + b)), M(v3, v1, v2)),
                       (-1, c(m(v1, v2), v3)), (1, m(v1, c(v2, v3))), (pm((e - 1) * b), m(c(v1, v3), v2)))
            return lhs, rhs
        return 3, ("brace_12_3", "M3", "circle", "dot"), f
    if identity == "hass":
        def f(v1, v2, v3):
            M, m = smap.named_op("M3"), smap.named_op("dot")
            a, b = deg(v1), deg(v2)
            lhs = _lin((1, d(M(v1, v2, v3))), (-1, M(d(v1), v2, v3)), (-pm(a), M(v1, d(v2), v3)),
                       (-pm(a + b), M(v1, v2, d(v3))))
            rhs = _lin((1, m(m(v1, v2), v3)), (-1, m(v1, m(v2, v3))))
            return lhs, rhs
        return 3, ("M3", "dot"), f
    if identity == "deriv":
        def f(v1, v2, v3):
            L, R, m = (smap.named_op(n) for n in ("brace_1_23", "brace_12_3", "dot"))
            br = _bracket(smap)
            a, b, e = deg(v1), deg(v2), deg(v3)
            lhs = _lin((1, br(v1, m(v2, v3))), (-1, m(br(v1, v2), v3)), (-pm((a - 1) * b), m(v2, br(v1, v3))))
            inner = _lin((1, d(R(v2, v3, v1))), (-pm(b + e), R(v2, v3, d(v1))), (-1, R(d(v2), v3, v1)),
                         (-pm(b - 1), R(v2, d(v3), v1)))
            rhs = _lin((-1, d(L(v1, v2, v3))), (1, L(d(v1), v2, v3)), (pm(a - 1), L(v1, d(v2), v3)),
                       (pm(a + b), L(v1, v2, d(v3))), (pm(a * (b + e)), inner))
            return lhs, rhs
        return 3, ("brace_1_23", "brace_12_3", "dot", "circle"), f
    if identity == "jacobi":
        def f(v1, v2, v3):
            br = _bracket(smap)
            a, b, e = deg(v1), deg(v2), deg(v3)
            lhs = _lin((1, br(br(v1, v2), v3)), (pm((a - 1) * (b + e)), br(br(v2, v3), v1)),
                       (pm((e - 1) * (a + b)), br(br(v3, v1), v2)))
            rhs = DifferentialOp(_symmetrized(smap.named_op("brace_1_2_3"), shift=1), sp)(v1, v2, v3)
            return lhs, rhs
        return 3, ("circle", "brace_1_2_3"), f
    raise InvalidArgument(f"unknown identity {identity!r}; expected one of {IDENTITIES}")


def _bracket(smap: StructureMap):
    if "bracket" in smap.named:
        return smap.named["bracket"]
    c = smap.named_op("circle")
    sp = smap.space

    def br(x, y):
        if not x or not y:
            return {}
        a, b = sp.vdeg(x), sp.vdeg(y)
        return _lin((1, c(x, y)), (-pm((a - 1) * (b - 1)), c(y, x)))
    return br


def _symmetrized(F: Operator, shift: int = 0) -> Operator:
    """sum over sigma of the Koszul-signed sigma.F, degrees shifted by ``shift``."""
    if isinstance(F, ZeroOp):
        return F
    sp = F.space
    n = F.arity

    class _Sym(Operator):
        def __init__(self):
            self.arity, self.degree, self.space = n, F.degree, sp

        def apply(self, idx):
            out: Vector = {}
            degs = [sp.degrees[i] for i in idx]
            for perm in permutations(range(1, n + 1)):
                s = koszul_sign(perm, degs, shift)
                vadd(out, F.apply(tuple(idx[p - 1] for p in perm)), s)
            return out
    return _Sym()


def check_identity(smap: StructureMap, identity: str, max_degree: Optional[int] = None,
                   max_total: Optional[int] = None) -> Entry:
    """Evaluate both sides of a printed identity on every admissible basis tuple."""
    arity, needed, f = _identity_sides(smap, identity)
    for name in needed:
        smap.named_op(name)  # raises IncompleteStructure when missing
    sp = smap.space
    bound = {"max_degree": max_degree, "max_total": max_total}
    bad = None
    for t in _tuples(sp, arity, max_degree, max_total):
        lhs, rhs = f(*[{i: Fraction(1)} for i in t])
        if canonical(lhs) != canonical(rhs):
            bad = [sp.names[i] for i in t]
            break
    return entry(identity, bound, bad)


def check_intertwining(smap: StructureMap, cell, max_degree: Optional[int] = None,
                       max_total: Optional[int] = None) -> Entry:
    """mu(boundary C) == D(mu(C)) on every admissible basis tuple."""
    if isinstance(cell, str):
        cell = parse_cell(cell)
    lhs = smap.chain_op(boundary(cell))
    rhs = DifferentialOp(smap.op(cell), smap.space)
    bad = _first_mismatch(lhs, rhs, _tuples(smap.space, cell.arity, max_degree, max_total))
    if bad is not None:
        bad = [smap.space.names[i] for i in bad]
    return entry(f"intertwining {cell}", {"max_degree": max_degree, "max_total": max_total}, bad)


def check_all_intertwining(smap: StructureMap, max_arity: int = 3, max_dim: int = 2,
                           max_degree: Optional[int] = None, max_total: Optional[int] = None) -> Report:
    report = Report()
    for n in range(2, max_arity + 1):
        for cell in enumerate_cells(n):
            if cell.dim <= max_dim:
                report.add(check_intertwining(smap, cell, max_degree, max_total))
    return report


def check_all_identities(smap: StructureMap, max_degree: Optional[int] = None,
                         max_total: Optional[int] = None) -> Report:
    return Report([check_identity(smap, i, max_degree, max_total) for i in IDENTITIES])


# ---------------------------------------------------------------- A-infinity and L-infinity

def check_a_infinity(space: GradedSpace, products: Dict[int, Operator], N: Optional[int] = None,
                     max_degree: Optional[int] = None, max_total: Optional[int] = None,
                     convention: str = "stasheff") -> Report:
    """The A-infinity relations up to arity N; missing products are zero.

    ``convention="stasheff"`` (the default) checks
    sum (-1)^{r + st} M_{r+1+t} o_{r+1} M_s = 0 with M_1 = d, where the
    composition carries the Koszul sign of M_s passing v_1..v_r.

    ``convention="printed"`` checks the form
    d M_n + sum_i eps(i) M_n(.., dv_i, ..) = sum eps(k, i) M_l(v_1..v_i, M_k(..), ..)
    with eps(k, i) = (-1)^{k(|v_1| + .. + |v_i|)}.  Even a strict associative
    algebra fails it in arity 3, so it is kept only for comparison.
    """
    if convention not in ("stasheff", "printed"):
        raise InvalidArgument(f"unknown convention {convention!r}")
    for n, M in products.items():
        if n < 2 or M.arity != n or M.degree != 2 - n:
            raise InvalidArgument(f"M_{n} must have arity {n} and degree {2 - n}")
    N = N or max(products, default=2)
    ops: Dict[int, Operator] = {1: space.differential_op()}
    for n in range(2, N + 1):
        ops[n] = products.get(n, ZeroOp(n, 2 - n, space))
    report = Report()
    for n in range(1 if convention == "stasheff" else 2, N + 1):
        if convention == "stasheff":
            terms = []
            for s in range(1, n + 1):
                for r in range(0, n - s + 1):
                    t = n - s - r
                    outer, inner = ops[r + 1 + t], ops[s]
                    if isinstance(outer, ZeroOp) or isinstance(inner, ZeroOp):
                        continue
                    terms.append((pm(r + s * t), ComposedOp(outer, r + 1, inner)))
            total = LinearCombination(terms, n, 3 - n, space) if terms else ZeroOp(n, 3 - n, space)
            check = lambda t_: total.apply(t_)
        else:
            check = lambda t_, n=n: vadd(_dlhs(space, ops[n], t_), _printed_a_rhs(space, ops, n, t_), -1)
        bad = None
        for t_ in _tuples(space, n, max_degree, max_total):
            if canonical(check(t_)):
                bad = [space.names[i] for i in t_]
                break
        report.add(entry(f"A_infinity n={n}", {"N": N, "max_degree": max_degree, "max_total": max_total,
                                               "convention": convention}, bad))
    return report


def _printed_a_rhs(space: GradedSpace, ops: Dict[int, Operator], n: int, idx) -> Vector:
    out: Vector = {}
    vecs = [{i: Fraction(1)} for i in idx]
    degs = [space.degrees[i] for i in idx]
    for k in range(2, n):
        L = n + 1 - k
        inner, outer = ops[k], ops[L]
        if isinstance(inner, ZeroOp) or isinstance(outer, ZeroOp):
            continue
        for i in range(0, L):
            x = inner(*vecs[i:i + k])
            if x:
                vadd(out, outer(*vecs[:i], x, *vecs[i + k:]), pm(k * sum(degs[:i])))
    return out


def _unshuffles(n: int, k: int):
    for I in combinations(range(1, n + 1), k):
        J = [j for j in range(1, n + 1) if j not in I]
        yield list(I), J


def check_l_infinity(space: GradedSpace, brackets: Dict[int, Operator], N: Optional[int] = None,
                     max_degree: Optional[int] = None, max_total: Optional[int] = None) -> Report:
    """d l_n + sum eps(i) l_n(.., dv_i, ..) = sum over unshuffles eps(sigma) l_l(l_k(v_I), v_J).

    Brackets of arity n have degree 3 - 2n and are graded symmetric with the
    Koszul sign of the unshifted degrees; both are checked before anything else.
    """
    for n, l in brackets.items():
        if n < 2 or l.arity != n or l.degree != 3 - 2 * n:
            raise InvalidArgument(f"l_{n} must have arity {n} and degree {3 - 2 * n}")
        for t in _tuples(space, n, max_degree, max_total):
            v = canonical(l.apply(t))
            for i in range(n - 1):
                s = list(t)
                s[i], s[i + 1] = s[i + 1], s[i]
                w = canonical(l.apply(tuple(s)))
                sign = pm(space.degrees[t[i]] * space.degrees[t[i + 1]])
                if v != canonical(vscale(w, sign)):
                    raise InvalidArgument(f"l_{n} is not graded symmetric at {[space.names[j] for j in t]}")
    N = N or max(brackets, default=2)
    ops = {n: brackets.get(n, ZeroOp(n, 3 - 2 * n, space)) for n in range(2, N + 1)}
    report = Report()
    for n in range(2, N + 1):
        l = ops[n]

        def lhs(idx, l=l):
            return DifferentialOp(l, space).apply(idx) if not isinstance(l, ZeroOp) else {}

        def rhs(idx, n=n):
            out: Vector = {}
            degs = [space.degrees[i] for i in idx]
            for k in range(2, n):
                L = n + 1 - k
                inner, outer = ops[k], ops[L]
                if isinstance(inner, ZeroOp) or isinstance(outer, ZeroOp):
                    continue
                for I, J in _unshuffles(n, k):
                    s = koszul_sign(I + J, degs)
                    x = inner.apply(tuple(idx[i - 1] for i in I))
                    if x:
                        vadd(out, outer(x, *[{idx[j - 1]: Fraction(1)} for j in J]), s)
            return out

        bad = None
        for t in _tuples(space, n, max_degree, max_total):
            if canonical(_dlhs(space, l, t)) != canonical(rhs(t)):
                bad = [space.names[i] for i in t]
                break
        report.add(entry(f"L_infinity n={n}", {"N": N, "max_degree": max_degree, "max_total": max_total}, bad))
    return report


def _dlhs(space: GradedSpace, l: Operator, idx) -> Vector:
    """d l(v) + sum_i (-1)^{|v_1|+..+|v_{i-1}|} l(.., dv_i, ..)."""
    if isinstance(l, ZeroOp):
        return {}
    vecs = [{i: Fraction(1)} for i in idx]
    out = space.d(l(*vecs))
    run = 0
    for i, v in enumerate(vecs):
        dv = space.d(v)
        if dv:
            args = list(vecs)
            args[i] = dv
            vadd(out, l(*args), pm(run))
        run += space.degrees[idx[i]]
    return out


def symmetrized_brackets(smap: StructureMap, max_arity: int = 3) -> Dict[int, Operator]:
    """l_n = mu of the S_n-orbit sum of the top cell (d_n; 1|2|..|n)."""
    out = {}
    for n in range(2, max_arity + 1):
        top = Cell.corolla([[j] for j in range(1, n + 1)])
        chain = Chain(n, top.dim)
        for perm in permutations(range(1, n + 1)):
            chain.add_term(act_cell(perm, top), 1)
        out[n] = smap.chain_op(chain)
    return out
