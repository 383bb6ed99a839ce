"""Fox-Neuwirth cells, their operad structure and the cellular boundary.

A cell is a rooted tree whose internal vertices carry an ordered partition of
their inputs.  A vertex is stored as a tuple of blocks (left to right), each
block a tuple of inputs read bottom to top; an input is either a leaf label
(an ``int``) or a child vertex (again a tuple of blocks).

Orientation.  A corolla with blocks B_1..B_k has coordinates, in this order:
the abscissae of the k vertical lines from left to right, then for each block
the ordinates of its points from top to bottom.  The cell is the quotient by
horizontal and vertical translation and by dilation, oriented so that a frame
w is positive when (t_x, t_y, dilation, w) is positive.  A composite cell is
oriented as the product of its vertex cells taken in the canonical vertex
order: the root first, then the subtrees hanging off it from the last input to
the first.  That is exactly the order in which the printed expression
``(... (root oI E_k) ... oJ E_1)`` composes the pieces, so the printed form of a
composite cell always denotes the canonically oriented cell.

The symmetric group acts by relabelling leaves, with no sign.  Boundaries use
the outward normal first.  The local incidence signs at a single vertex are
computed exactly from coordinate frames (see :func:`local_faces`) and depend
only on the block sizes, so they are tabulated once per shape.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from .core import InvalidArgument, Unsupported, koszul_sign, pm

MAX_ARITY = 4

Item = Union[int, tuple]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class UnsupportedArity(Unsupported):
    pass


# ---------------------------------------------------------------- vertex helpers

def is_leaf(x: Item) -> bool:
    return isinstance(x, int)


def v_items(v: tuple) -> List[Item]:
    return [x for b in v for x in b]


def v_sizes(v: tuple) -> Tuple[int, ...]:
    return tuple(len(b) for b in v)


def v_dim(v: tuple) -> int:
    return len(v_items(v)) + len(v) - 3


def v_leaves(v: tuple) -> List[int]:
    out = []
    for x in v_items(v):
        if is_leaf(x):
            out.append(x)
        else:
            out.extend(v_leaves(x))
    return out


def v_order(v: tuple) -> List[tuple]:
    """Canonical vertex order: v, then its subtrees from the last input to the first."""
    out = [v]
    for x in reversed(v_items(v)):
        if not is_leaf(x):
            out.extend(v_order(x))
    return out


def v_relabel(v: tuple, f) -> tuple:
    return tuple(tuple(f(x) if is_leaf(x) else v_relabel(x, f) for x in b) for b in v)


def v_replace(v: tuple, old: tuple, new: Item) -> tuple:
    if v == old:
        return new
    return tuple(tuple(x if is_leaf(x) else v_replace(x, old, new) for x in b) for b in v)


# ---------------------------------------------------------------- cells

class Cell:
    """A Fox-Neuwirth cell; immutable and hashable."""

    __slots__ = ("root", "arity", "_key", "_text")

    def __init__(self, root: tuple, check: bool = True):
        self.root = root
        leaves = v_leaves(root)
        self.arity = len(leaves)
        self._key = None
        self._text = None
        if check:
            if sorted(leaves) != list(range(1, self.arity + 1)):
                raise InvalidArgument(f"leaf labels {leaves} are not 1..n")
            for w in v_order(root):
                if len(v_items(w)) < 2:
                    raise InvalidArgument("vertex with fewer than two inputs")
                if any(len(b) == 0 for b in w):
                    raise InvalidArgument("empty block")

    @staticmethod
    def corolla(blocks: Sequence[Sequence[int]]) -> "Cell":
        return Cell(tuple(tuple(b) for b in blocks))

    @property
    def vertices(self) -> List[tuple]:
        return v_order(self.root)

    @property
    def dim(self) -> int:
        return sum(v_dim(w) for w in self.vertices)

    @property
    def is_corolla(self) -> bool:
        return all(is_leaf(x) for x in v_items(self.root))

    def __eq__(self, other):
        return isinstance(other, Cell) and self.root == other.root

    def __hash__(self):
        return hash(self.root)

    def sort_key(self):
        if self._key is None:
            self._key = (len(self.vertices), self.shape_key(), str(self))
        return self._key

    def shape_key(self):
        def shp(v):
            return tuple(tuple(0 if is_leaf(x) else shp(x) for x in b) for b in v)
        return repr(shp(self.root))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self._text is None:
            self._text = print_cell(self)
        return self._text

    def __repr__(self):
        return f"Cell({str(self)!r})"


def dimension(cell: Cell) -> int:
    return cell.dim


def _leafset(v: tuple) -> frozenset:
    return frozenset(v_leaves(v))


def _reorder_sign(intended: Sequence[frozenset], cell: Cell) -> int:
    """Koszul sign (vertex dimensions as degrees) taking ``intended`` to canonical order."""
    verts = cell.vertices
    by_set = {_leafset(w): w for w in verts}
    canon = [_leafset(w) for w in verts]
    pos = {s: a for a, s in enumerate(intended)}
    perm = [pos[s] + 1 for s in canon]
    degs = [v_dim(by_set[s]) for s in intended]
    return koszul_sign(perm, degs)


# ---------------------------------------------------------------- chains

class Chain:
    """Formal rational combination of cells of one arity and dimension."""

    def __init__(self, arity: int, dim: int, terms: Optional[Dict[Cell, Fraction]] = None):
        self.arity = arity
        self.dim = dim
        self.terms: Dict[Cell, Fraction] = {}
        for c, x in (terms or {}).items():
            self.add_term(c, x)

    def add_term(self, cell: Cell, coeff) -> None:
        if not coeff:
            return
        if cell.arity != self.arity or cell.dim != self.dim:
            raise InvalidArgument(f"cell {cell} does not fit chain of arity {self.arity}, dim {self.dim}")
        y = self.terms.get(cell, 0) + Fraction(coeff)
        if y:
            self.terms[cell] = y
        else:
            del self.terms[cell]

    def add(self, other: "Chain", coeff=1) -> "Chain":
        if other.arity != self.arity or (other.terms and other.dim != self.dim):
            raise InvalidArgument("chains of different arity or dimension")
        for c, x in other.terms.items():
            self.add_term(c, coeff * x)
        return self

    def __add__(self, other):
        return Chain(self.arity, self.dim, dict(self.terms)).add(other)

    def __sub__(self, other):
        return Chain(self.arity, self.dim, dict(self.terms)).add(other, -1)

    def __neg__(self):
        return Chain(self.arity, self.dim, {c: -x for c, x in self.terms.items()})

    def scale(self, k) -> "Chain":
        return Chain(self.arity, self.dim, {c: k * x for c, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.arity == other.arity
        return (self.arity, self.dim, self.terms) == (other.arity, other.dim, other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for c, x in self.items():
            sign = "+" if x > 0 else "-"
            out.append(f"{sign}{abs(x)}*({c})")
        return " ".join(out)

    def __repr__(self):
        return f"Chain({str(self)!r})"

    @staticmethod
    def of(cell: Cell, coeff=1) -> "Chain":
        return Chain(cell.arity, cell.dim, {cell: Fraction(coeff)})


# ---------------------------------------------------------------- operad structure

def act(perm: Sequence[int], cell: Cell) -> Cell:
    """Relabel leaf j as perm[j-1]."""
    if len(perm) != cell.arity or sorted(perm) != list(range(1, cell.arity + 1)):
        raise InvalidArgument(f"permutation {list(perm)} does not match arity {cell.arity}")
    return Cell(v_relabel(cell.root, lambda j: perm[j - 1]), check=False)


def act_chain(perm: Sequence[int], chain: Chain) -> Chain:
    out = Chain(chain.arity, chain.dim)
    for c, x in chain.terms.items():
        out.add_term(act(perm, c), x)
    return out


def v_replace_leaf(v: tuple, label: int, new: tuple) -> tuple:
    return tuple(tuple((new if x == label else x) if is_leaf(x) else v_replace_leaf(x, label, new)
                       for x in b) for b in v)


def compose_cells(c1: Cell, i: int, c2: Cell) -> Cell:
    """Graft c2 onto leaf i of c1 with the standard o_i relabelling."""
    if not 1 <= i <= c1.arity:
        raise InvalidArgument(f"slot {i} out of range for arity {c1.arity}")
    m2 = c2.arity
    inner = v_relabel(c2.root, lambda j: j + i - 1)
    outer = v_relabel(c1.root, lambda j: j if j <= i else j + m2 - 1)
    return Cell(v_replace_leaf(outer, i, inner), check=False)


def compose_sign(c1: Cell, i: int, c2: Cell) -> int:
    """Sign relating (orientation of c1) x (orientation of c2) to the canonical one."""
    cell = compose_cells(c1, i, c2)
    m2 = c2.arity
    f1 = {j: (j if j < i else j + m2 - 1) for j in range(1, c1.arity + 1)}
    intended = []
    for w in c1.vertices:
        s = set()
        for j in v_leaves(w):
            if j == i:
                s.update(range(i, i + m2))
            else:
                s.add(f1[j])
        intended.append(frozenset(s))
    for w in c2.vertices:
        intended.append(frozenset(j + i - 1 for j in v_leaves(w)))
    return _reorder_sign(intended, cell)


def compose(c1: Cell, i: int, c2: Cell) -> Chain:
    """Chain-level operadic composition (carries the orientation sign)."""
    return Chain.of(compose_cells(c1, i, c2), compose_sign(c1, i, c2))


def compose_chains(a: Chain, i: int, b: Chain) -> Chain:
    out = Chain(a.arity + b.arity - 1, a.dim + b.dim)
    for c1, x in a.terms.items():
        for c2, y in b.terms.items():
            out.add(compose(c1, i, c2), x * y)
    return out


# ---------------------------------------------------------------- printing

def _cycle_transpositions(perm: Sequence[int]) -> List[Tuple[int, int]]:
    """Transpositions t_1..t_r with perm = t_1 o t_2 o ... o t_r."""
    seen = set()
    out = []
    for a in range(1, len(perm) + 1):
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        b = perm[a - 1]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = perm[b - 1]
        # (a1 a2 .. ak) = (a1 ak)(a1 a_{k-1}) ... (a1 a2)
        for c in reversed(cyc[1:]):
            out.append((min(cyc[0], c), max(cyc[0], c)))
    return out


def _expr(v: tuple):
    """Expression tree for a vertex whose leaves are read in order as 1..m."""
    items = v_items(v)
    pos = {}
    blocks = []
    p = 0
    for b in v:
        blk = []
        for x in b:
            p += 1
            blk.append(p)
        blocks.append(tuple(blk))
    e = ("c", tuple(blocks))
    for p in range(len(items), 0, -1):
        x = items[p - 1]
        if not is_leaf(x):
            e = ("o", e, p, _expr(x))
    return e


def _tree_text(e) -> str:
    if e[0] == "c":
        return f"d{sum(len(b) for b in e[1])}"
    return f"({_tree_text(e[1])} o{e[2]} {_tree_text(e[3])})"


def _part_text(e) -> str:
    if e[0] == "c":
        return "|".join("".join(str(x) for x in b) for b in e[1])
    return f"({_part_text(e[1])})o{e[2]}({_part_text(e[3])})"


def print_cell(cell: Cell) -> str:
    if cell.is_corolla:
        return f"d{cell.arity};{_part_text(('c', cell.root))}"
    leaves = v_leaves(cell.root)
    e = _expr(cell.root)
    taus = "".join(f"tau({a},{b})" for a, b in _cycle_transpositions(leaves))
    return taus + f"{_tree_text(e)};{_part_text(e)}"


# ---------------------------------------------------------------- parsing

class _Scanner:
    def __init__(self, text: str, offset: int = 0):
        self.s = text
        self.i = 0
        self.off = offset

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch: str):
        self.ws()
        if not self.s.startswith(ch, self.i):
            raise ParseError(f"expected {ch!r}", self.i + self.off)
        self.i += len(ch)

    def int(self) -> int:
        self.ws()
        m = re.match(r"\d+", self.s[self.i:])
        if not m:
            raise ParseError("expected a number", self.i + self.off)
        self.i += m.end()
        return int(m.group())

    def done(self) -> bool:
        self.ws()
        return self.i >= len(self.s)


def _parse_tree(sc: _Scanner):
    def atom():
        if sc.peek() == "(":
            sc.eat("(")
            t = chain()
            sc.eat(")")
            return t
        sc.eat("d")
        return ("c", sc.int())

    def chain():
        t = atom()
        while sc.peek() == "o":
            sc.eat("o")
            i = sc.int()
            t = ("o", t, i, atom())
        return t
    return chain()


def _parse_part(sc: _Scanner):
    def blocks():
        out = [[]]
        start = sc.i
        while True:
            sc.ws()
            ch = sc.s[sc.i] if sc.i < len(sc.s) else ""
            if ch.isdigit():
                out[-1].append(int(ch))
                sc.i += 1
            elif ch == "|":
                if not out[-1]:
                    raise ParseError("empty block", sc.i + sc.off)
                out.append([])
                sc.i += 1
            else:
                break
        if not out[-1]:
            raise ParseError("empty block", sc.i + sc.off)
        return ("c", tuple(tuple(b) for b in out)), start

    def atom():
        if sc.peek() == "(":
            sc.eat("(")
            p = chain()
            sc.eat(")")
            return p
        return blocks()[0]

    def chain():
        p = atom()
        while sc.peek() == "o":
            sc.eat("o")
            i = sc.int()
            p = ("o", p, i, atom())
        return p
    return chain()


def _matching(s: str, i: int) -> int:
    depth = 0
    for k in range(i, len(s)):
        if s[k] == "(":
            depth += 1
        elif s[k] == ")":
            depth -= 1
            if depth == 0:
                return k
    return -1


def _eval(tree, part, pos: int) -> Chain:
    if tree[0] == "c" and part[0] == "c":
        n = tree[1]
        labels = [x for b in part[1] for x in b]
        if len(set(labels)) != len(labels):
            raise ParseError("repeated label", pos)
        if sorted(labels) != list(range(1, n + 1)):
            raise ParseError(f"labels {labels} do not match d{n}", pos)
        if n < 2:
            raise ParseError("a vertex needs at least two inputs", pos)
        return Chain.of(Cell.corolla(part[1]))
    if tree[0] == "o" and part[0] == "o":
        if tree[2] != part[2]:
            raise ParseError("tree and partition use different slots", pos)
        a = _eval(tree[1], part[1], pos)
        b = _eval(tree[3], part[3], pos)
        if not 1 <= tree[2] <= a.arity:
            raise ParseError(f"slot {tree[2]} out of range", pos)
        return compose_chains(a, tree[2], b)
    raise ParseError("tree and partition have different shapes", pos)


def parse_chain_term(text: str) -> Chain:
    """Parse a cell expression into the signed one-term chain it denotes."""
    s = text
    off = 0
    perms: List[Tuple[int, int]] = []
    while True:
        stripped = s.lstrip()
        off += len(s) - len(stripped)
        s = stripped.rstrip()
        if s.startswith("tau("):
            sc = _Scanner(s, off)
            sc.eat("tau(")
            a = sc.int()
            sc.eat(",")
            b = sc.int()
            sc.eat(")")
            perms.append((a, b))
            off += sc.i
            s = s[sc.i:]
            continue
        if s.startswith("(") and _matching(s, 0) == len(s) - 1:
            s = s[1:-1]
            off += 1
            continue
        break
    if ";" not in s:
        raise ParseError("missing ';'", off + len(s))
    k = s.index(";")
    sc = _Scanner(s[:k], off)
    tree = _parse_tree(sc)
    if not sc.done():
        raise ParseError("unexpected text in tree", sc.i + off)
    sc2 = _Scanner(s[k + 1:], off + k + 1)
    part = _parse_part(sc2)
    if not sc2.done():
        raise ParseError("unexpected text in partition", sc2.i + sc2.off)
    ch = _eval(tree, part, off)
    for a, b in reversed(perms):
        n = ch.arity
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise ParseError(f"bad transposition tau({a},{b})", 0)
        p = list(range(1, n + 1))
        p[a - 1], p[b - 1] = b, a
        ch = act_chain(p, ch)
    return ch


def parse_cell(text: str) -> Cell:
    (cell,) = parse_chain_term(text).terms
    return cell


def parse_signed_cell(text: str) -> Tuple[int, Cell]:
    ((cell, x),) = parse_chain_term(text).terms.items()
    return int(x), cell


_TERM = re.compile(r"\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*")


def parse_chain(text: str) -> Chain:
    """Parse the printed form ``+1*(cell) -1*(cell) ...`` (or ``0``)."""
    text = text.strip()
    if text == "0":
        return None  # arity unknown; callers compare with is_zero
    out = None
    i = 0
    while i < len(text):
        m = _TERM.match(text, i)
        if not m:
            raise ParseError("expected a signed coefficient", i)
        coeff = Fraction(m.group(2)) * (1 if m.group(1) == "+" else -1)
        j = m.end()
        if j >= len(text) or text[j] != "(":
            raise ParseError("expected '('", j)
        k = _matching(text, j)
        if k < 0:
            raise ParseError("unbalanced parentheses", j)
        term = parse_chain_term(text[j:k + 1])
        if out is None:
            out = Chain(term.arity, term.dim)
        out.add(term, coeff)
        i = k + 1
        while i < len(text) and text[i].isspace():
            i += 1
    return out


# ---------------------------------------------------------------- local incidence signs

def _det_sign(rows) -> int:
    d = sympy.Matrix(rows).det(method="bareiss")
    if d == 0:
        raise ArithmeticError("degenerate orientation frame")
    return 1 if d > 0 else -1


def _coords(blocks) -> list:
    keys = [("X", j) for j in range(len(blocks))]
    for b in blocks:
        for p in reversed(b):
            keys.append(("y", p))
    return keys


def _realize(blocks) -> dict:
    cfg = {}
    for j, b in enumerate(blocks):
        for i, p in enumerate(b):
            cfg[p] = (10 * (j + 1), i + 1 + 7 * j)
    return cfg


def _xi(blocks, cfg):
    keys = _coords(blocks)
    X = {j: cfg[b[0]][0] for j, b in enumerate(blocks)}
    tx = [1 if k[0] == "X" else 0 for k in keys]
    ty = [0 if k[0] == "X" else 1 for k in keys]
    dil = [X[k[1]] if k[0] == "X" else cfg[k[1]][1] for k in keys]
    return [tx, ty, dil]


def _frame(blocks, cfg):
    """Coordinate vectors spanning a complement of the symmetry directions.

    Returns the chosen coordinate keys (in rule order) and the sign that makes
    them an oriented frame of the cell.
    """
    keys = _coords(blocks)
    n = len(keys)
    xi = _xi(blocks, cfg)
    for excl in combinations(range(n), 3):
        used = [i for i in range(n) if i not in excl]
        rows = list(xi)
        for i in used:
            r = [0] * n
            r[i] = 1
            rows.append(r)
        d = sympy.Matrix(rows).det(method="bareiss")
        if d != 0:
            return [keys[i] for i in used], (1 if d > 0 else -1)
    raise ArithmeticError("no frame")


def _sign_A(blocks, j, merged) -> int:
    F = blocks[:j] + [merged] + blocks[j + 2:]
    cfgF = _realize(F)
    keys = _coords(blocks)
    idx = {k: a for a, k in enumerate(keys)}

    def vec(d):
        r = [0] * len(keys)
        for k, v in d.items():
            r[idx[k]] += v
        return r

    def fline(m):
        return m if m <= j else m - 1
    XC = {m: cfgF[F[fline(m)][0]][0] for m in range(len(blocks))}
    pts = [p for b in blocks for p in b]
    tx = vec({("X", m): 1 for m in range(len(blocks))})
    ty = vec({("y", p): 1 for p in pts})
    dil = vec({**{("X", m): XC[m] for m in range(len(blocks))},
               **{("y", p): cfgF[p][1] for p in pts}})
    normal = vec({("X", j + 1): -1})
    fkeys, sF = _frame(F, cfgF)
    rows = [tx, ty, dil, normal]
    for k in fkeys:
        if k[0] == "X":
            rows.append(vec({("X", m): 1 for m in range(len(blocks)) if fline(m) == k[1]}))
        else:
            rows.append(vec({k: 1}))
    return _det_sign(rows) * sF


def _sign_B(blocks, j, jj, clusters, outer) -> int:
    """Incidence sign for clusters collapsing onto the merged lines j..jj.

    ``clusters`` lists, for each collapsing cluster, its points as blocks on
    the lines it meets (bottom to top), and ``outer`` contains the markers
    ``("P", c)``.  With several clusters every cluster meets all merged lines,
    so they share the same inner abscissae.  The face is oriented as the outer
    cell followed by the inner cells in cluster order.
    """
    cfgO = _realize(outer)
    cfgI = [_realize(runs) for runs in clusters]
    keys = _coords(blocks)
    idx = {k: a for a, k in enumerate(keys)}

    def vec(d):
        r = [0] * len(keys)
        for k, v in d.items():
            r[idx[k]] += v
        return r
    owner = {p: c for c, runs in enumerate(clusters) for b in runs for p in b}
    pline = next(a for a, b in enumerate(outer) if ("P", 0) in b)

    def oline(m):
        if m < j:
            return m
        if m <= jj:
            return pline
        return m - (jj - j)
    XO = {a: cfgO[b[0]][0] for a, b in enumerate(outer)}
    pts = [p for b in blocks for p in b]
    yC = {p: (cfgO[("P", owner[p])][1] if p in owner else cfgO[p][1]) for p in pts}
    tx = vec({("X", m): 1 for m in range(len(blocks))})
    ty = vec({("y", p): 1 for p in pts})
    dil = vec({**{("X", m): XO[oline(m)] for m in range(len(blocks))},
               **{("y", p): yC[p] for p in pts}})
    XI = {a: cfgI[0][b[0]][0] for a, b in enumerate(clusters[0])}
    dt = {("X", m): XI[m - j] for m in range(j, jj + 1)}
    for p, c in owner.items():
        dt[("y", p)] = cfgI[c][p][1]
    normal = vec({k: -v for k, v in dt.items()})
    okeys, sign = _frame(outer, cfgO)
    rows = [tx, ty, dil, normal]
    for k in okeys:
        if k[0] == "X":
            rows.append(vec({("X", m): 1 for m in range(len(blocks)) if oline(m) == k[1]}))
        elif isinstance(k[1], tuple):
            rows.append(vec({("y", p): 1 for p, c in owner.items() if c == k[1][1]}))
        else:
            rows.append(vec({k: 1}))
    for c, runs in enumerate(clusters):
        ikeys, sI = _frame(runs, cfgI[c])
        sign *= sI
        for k in ikeys:
            if k[0] == "X":
                if len(clusters) > 1:
                    raise ArithmeticError("shared abscissae in a multi-cluster frame")
                rows.append(vec({("X", j + k[1]): 1}))
            else:
                rows.append(vec({k: 1}))
    return _det_sign(rows) * sign


def shuffles(*seqs) -> List[list]:
    """All interleavings of the sequences preserving each one's order."""
    seqs = [list(s) for s in seqs if s]
    if not seqs:
        return [[]]
    out = []
    for a, s in enumerate(seqs):
        rest = seqs[:a] + [s[1:]] + seqs[a + 1:]
        for tail in shuffles(*rest):
            out.append([s[0]] + tail)
    return out


@lru_cache(maxsize=None)
def local_faces(sizes: Tuple[int, ...]):
    """Codimension-one faces of a corolla with the given block sizes.

    Inputs are named by their reading position 0..m-1.  Returns a tuple of
    entries ``(sign, "A", blocks)`` for two adjacent lines merging and
    ``(sign, "B", (outer_blocks, clusters))`` for clusters of points
    collapsing; the outer blocks contain markers ``("P", c)`` where the inner
    vertex sits.
    """
    blocks = []
    p = 0
    for s in sizes:
        blocks.append(list(range(p, p + s)))
        p += s
    m = p
    k = len(blocks)
    faces = []
    for j in range(k - 1):
        for merged in shuffles(blocks[j], blocks[j + 1]):
            new = blocks[:j] + [merged] + blocks[j + 2:]
            faces.append((_sign_A(blocks, j, merged), "A", tuple(tuple(b) for b in new)))
    for j in range(k):
        for jj in range(j, k):
            run_choices = []
            for b in blocks[j:jj + 1]:
                run_choices.append([(a, c) for a in range(len(b)) for c in range(a + 1, len(b) + 1)])
            for choice in _product(run_choices):
                runs = [blocks[j + t][a:c] for t, (a, c) in enumerate(choice)]
                size = sum(len(r) for r in runs)
                if size < 2 or size > m - 1:
                    continue
                below = [blocks[j + t][:a] for t, (a, c) in enumerate(choice)]
                above = [blocks[j + t][c:] for t, (a, c) in enumerate(choice)]
                for lo in shuffles(*below):
                    for hi in shuffles(*above):
                        outer = blocks[:j] + [lo + [("P", 0)] + hi] + blocks[jj + 1:]
                        faces.append(_cluster_face(blocks, j, jj, [runs], outer))
    # several clusters collapsing at once onto two merging lines
    for j in range(k - 1):
        B1, B2 = blocks[j], blocks[j + 1]
        for r in range(2, min(len(B1), len(B2)) + 1):
            for cut1 in _cluster_cuts(len(B1), r):
                for cut2 in _cluster_cuts(len(B2), r):
                    clusters = [[B1[a1:c1], B2[a2:c2]] for (a1, c1), (a2, c2) in zip(cut1, cut2)]
                    gaps1 = _gaps(B1, cut1)
                    gaps2 = _gaps(B2, cut2)
                    for merged in _merged_lines(gaps1, gaps2, r):
                        outer = blocks[:j] + [merged] + blocks[j + 2:]
                        faces.append(_cluster_face(blocks, j, j + 1, clusters, outer))
    return tuple(faces)


def _cluster_face(blocks, j, jj, clusters, outer):
    sgn = _sign_B(blocks, j, jj, clusters, outer)
    return (sgn, "B", (tuple(tuple(b) for b in outer),
                       tuple(tuple(tuple(r) for r in runs) for runs in clusters)))


def _cluster_cuts(n: int, r: int):
    """r disjoint nonempty consecutive runs in 0..n-1, listed bottom to top."""
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for a in range(start, n):
            for c in range(a + 1, n + 1):
                for rest in rec(c, left - 1):
                    yield ((a, c),) + rest
    return list(rec(0, r))


def _gaps(block, cuts):
    out = []
    prev = 0
    for a, c in cuts:
        out.append(block[prev:a])
        prev = c
    out.append(block[prev:])
    return out


def _merged_lines(g1, g2, r):
    pieces = [shuffles(g1[g], g2[g]) for g in range(r + 1)]
    for combo in _product(pieces):
        line = []
        for g, seg in enumerate(combo):
            line.extend(seg)
            if g < r:
                line.append(("P", g))
        yield line


def _product(lists):
    if not lists:
        yield ()
        return
    for x in lists[0]:
        for rest in _product(lists[1:]):
            yield (x,) + rest


# ---------------------------------------------------------------- boundary

def _check_arity(cell: Cell) -> None:
    if cell.arity > MAX_ARITY:
        raise UnsupportedArity(f"arity {cell.arity} exceeds the supported bound {MAX_ARITY}")


@lru_cache(maxsize=None)
def _boundary(cell: Cell) -> Chain:
    out = Chain(cell.arity, cell.dim - 1)
    verts = cell.vertices
    sets = [_leafset(w) for w in verts]
    before = 0
    for a, v in enumerate(verts):
        items = v_items(v)
        pre = pm(before)
        for sgn, kind, data in local_faces(v_sizes(v)):
            if kind == "A":
                new_v = tuple(tuple(items[p] for p in b) for b in data)
                face = Cell(v_replace(cell.root, v, new_v), check=False)
                intended = sets
            else:
                outer, clusters = data
                inners = [tuple(tuple(items[p] for p in r) for r in runs) for runs in clusters]
                new_v = tuple(tuple(inners[p[1]] if isinstance(p, tuple) else items[p] for p in b)
                              for b in outer)
                face = Cell(v_replace(cell.root, v, new_v), check=False)
                intended = sets[:a + 1] + [_leafset(w) for w in inners] + sets[a + 1:]
            out.add_term(face, pre * sgn * _reorder_sign(intended, face))
        before += v_dim(v)
    return out


def boundary(cell: Cell) -> Chain:
    """Cellular boundary; the zero chain on 0-cells."""
    _check_arity(cell)
    if cell.dim == 0:
        return Chain(cell.arity, -1)
    return _boundary(cell)


def boundary_chain(chain: Chain) -> Chain:
    out = Chain(chain.arity, chain.dim - 1)
    for c, x in chain.terms.items():
        if c.dim > 0:
            out.add(boundary(c), x)
    return out


# ---------------------------------------------------------------- enumeration

def _set_partitions(items: List[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for a in range(len(part)):
            yield part[:a] + [[first] + part[a]] + part[a + 1:]
        yield [[first]] + part


def _ordered_partitions(inputs: list):
    m = len(inputs)
    for perm in permutations(inputs):
        for cuts in _product([(0, 1)] * (m - 1)):
            blocks = [[perm[0]]]
            for x, c in zip(perm[1:], cuts):
                if c:
                    blocks.append([x])
                else:
                    blocks[-1].append(x)
            yield tuple(tuple(b) for b in blocks)


def _vertices_on(leaves: Tuple[int, ...]):
    out = []
    for part in _set_partitions(list(leaves)):
        if len(part) < 2:
            continue
        options = []
        for p in part:
            if len(p) == 1:
                options.append([p[0]])
            else:
                options.append(_vertices_on(tuple(sorted(p))))
        for inputs in _product(options):
            out.extend(_ordered_partitions(list(inputs)))
    return out


@lru_cache(maxsize=None)
def _all_cells(arity: int) -> Tuple[Cell, ...]:
    cells = [Cell(v, check=False) for v in _vertices_on(tuple(range(1, arity + 1)))]
    return tuple(sorted(cells, key=Cell.sort_key))


def enumerate_cells(arity: int, dim: Optional[int] = None) -> List[Cell]:
    if arity < 2:
        raise InvalidArgument("arity must be at least 2")
    if arity > MAX_ARITY:
        raise UnsupportedArity(f"arity {arity} exceeds the supported bound {MAX_ARITY}")
    cells = _all_cells(arity)
    if dim is None:
        return list(cells)
    return [c for c in cells if c.dim == dim]


# ---------------------------------------------------------------- sweeps

def check_d_squared(max_arity: int = MAX_ARITY) -> "Report":
    """One report entry per arity: boundary(boundary(C)) == 0 for every cell."""
    from .report import Report, entry
    rep = Report()
    for n in range(2, max_arity + 1):
        bad = next((str(c) for c in enumerate_cells(n) if not boundary_chain(boundary(c)).is_zero()), None)
        rep.add(entry(f"cells.d_squared arity={n}", {"arity": n}, [bad] if bad else None))
    return rep


def check_equivariance(max_arity: int = MAX_ARITY) -> "Report":
    """boundary(pi.C) == pi.boundary(C) for every cell and permutation."""
    from .report import Report, entry
    rep = Report()
    for n in range(2, max_arity + 1):
        bad = None
        for c in enumerate_cells(n):
            for p in permutations(range(1, n + 1)):
                if boundary(act(p, c)) != act_chain(p, boundary(c)):
                    bad = [str(c), list(p)]
                    break
            if bad:
                break
        rep.add(entry(f"cells.equivariance arity={n}", {"arity": n}, bad))
    return rep


def check_leibniz(max_arity: int = MAX_ARITY) -> "Report":
    """boundary(C o_i C') == boundary(C) o_i C' + (-1)^{dim C} C o_i boundary(C')."""
    from .report import Report, entry
    rep = Report()
    for n in range(3, max_arity + 1):
        bad = None
        for n1 in range(2, n):
            n2 = n + 1 - n1
            for c1 in enumerate_cells(n1):
                for c2 in enumerate_cells(n2):
                    for i in range(1, n1 + 1):
                        lhs = boundary_chain(compose(c1, i, c2))
                        rhs = compose_chains(boundary(c1), i, Chain.of(c2)).add(
                            compose_chains(Chain.of(c1), i, boundary(c2)), pm(c1.dim))
                        if lhs != rhs:
                            bad = [str(c1), i, str(c2)]
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        rep.add(entry(f"cells.leibniz arity={n}", {"arity": n}, bad))
    return rep
