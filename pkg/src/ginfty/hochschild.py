"""Hochschild cochains of a finite-dimensional associative algebra.

A k-cochain is a k-linear map A x ... x A -> A, stored as a :class:`MultiOp`
over the basis of A, and its degree is k.  On cochains we have

* the dot product  (x.y)(a_1..a_{k+l}) = (-1)^{kl} x(a_1..a_k) y(a_{k+1}..a_{k+l}),
* the braces {x}{x_1,..,x_n}, a signed sum over order-preserving insertions
  of the x_p into the slots of x, with sign (-1)^{sum_p (deg x_p - 1) i_p}
  where i_p is the number of algebra arguments standing before x_p,
* the differential
  (dx)(a_1..a_{n+1}) = (-1)^n [a_1 x(a_2..) + sum_i (-1)^i x(.., a_i a_{i+1}, ..)]
                       - x(a_1..a_n) a_{n+1},
* the circle product x o y = {x}{y} and the bracket
  [x, y] = x o y - (-1)^{(deg x - 1)(deg y - 1)} y o x.

With these conventions d = -[m, -], where m is the multiplication 2-cochain.

Cochains of negative arity can arise formally (for instance {x}{y} with both
x and y in C^0); they are always zero and are represented with ``op = None``.
"""
from __future__ import annotations

import json
import random
from pathlib import Path
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .core import (GradedSpace, InvalidArgument, MultiOp, Unsupported, Vector,
                   canonical, pm, scalar, vadd, vscale)
from .report import Report, entry


class InvalidPresentation(InvalidArgument):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


# ---------------------------------------------------------------- algebras

class AlgebraPresentation:
    """Structure constants e_i e_j = sum_k c[i][j][k] e_k and a unit vector."""

    def __init__(self, basis: Sequence[str], c, unit, name: str = "", check: bool = True):
        self.names = [str(b) for b in basis]
        self.dim = len(self.names)
        self.name = name
        if len(c) != self.dim or any(len(row) != self.dim for row in c):
            raise InvalidPresentation("structure constants do not match the basis size")
        self.table: Dict[Tuple[int, int], Vector] = {}
        for i in range(self.dim):
            for j in range(self.dim):
                if len(c[i][j]) != self.dim:
                    raise InvalidPresentation(f"c[{i}][{j}] has the wrong length")
                v = {k: scalar(x) for k, x in enumerate(c[i][j]) if scalar(x)}
                self.table[(i, j)] = v
        if len(unit) != self.dim:
            raise InvalidPresentation("unit vector has the wrong length")
        self.unit: Vector = {k: scalar(x) for k, x in enumerate(unit) if scalar(x)}
        self.space = GradedSpace([(n, 0) for n in self.names])
        if check:
            self.check()

    # -- data

    def mul(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                vadd(out, self.table[(i, j)], a * b)
        return out

    def e(self, i: int) -> Vector:
        return {i: Fraction(1)}

    def check(self) -> None:
        E = [self.e(i) for i in range(self.dim)]
        for i, j, k in product(range(self.dim), repeat=3):
            lhs = self.mul(self.mul(E[i], E[j]), E[k])
            rhs = self.mul(E[i], self.mul(E[j], E[k]))
            if lhs != rhs:
                t = (self.names[i], self.names[j], self.names[k])
                raise InvalidPresentation(f"not associative on the triple {t}", t)
        for i in range(self.dim):
            if self.mul(self.unit, E[i]) != E[i] or self.mul(E[i], self.unit) != E[i]:
                raise InvalidPresentation(f"unit law fails on {self.names[i]}", (self.names[i],))

    def is_commutative(self) -> bool:
        return all(self.table[(i, j)] == self.table[(j, i)]
                   for i in range(self.dim) for j in range(self.dim))

    def multiplication(self) -> "Cochain":
        return Cochain(self, 2, {(i, j): v for (i, j), v in self.table.items()})

    # -- serialisation

    @classmethod
    def from_dict(cls, d: dict, name: str = "") -> "AlgebraPresentation":
        try:
            dim = int(d["dim"])
            basis, unit, c = d["basis"], d["unit"], d["c"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidPresentation(f"malformed algebra description: {exc}") from exc
        if len(basis) != dim:
            raise InvalidPresentation("dim does not match the number of basis names")
        return cls(basis, c, unit, name=name or d.get("name", ""))

    @classmethod
    def load(cls, path) -> "AlgebraPresentation":
        with open(path) as fh:
            d = json.load(fh)
        return cls.from_dict(d, name=Path(path).stem)

    def to_dict(self) -> dict:
        def s(x):
            return str(Fraction(x))
        return {"dim": self.dim, "basis": list(self.names),
                "unit": [s(self.unit.get(k, 0)) for k in range(self.dim)],
                "c": [[[s(self.table[(i, j)].get(k, 0)) for k in range(self.dim)]
                       for j in range(self.dim)] for i in range(self.dim)]}

    def __repr__(self):
        return f"AlgebraPresentation({self.name or self.names})"


# ---------------------------------------------------------------- cochains

class Cochain:
    """A Hochschild cochain; immutable."""

    __slots__ = ("algebra", "arity", "op")

    def __init__(self, A: AlgebraPresentation, arity: int, entries=None):
        self.algebra = A
        self.arity = arity
        if arity < 0:
            if entries and any(entries.values()):
                raise InvalidArgument("a cochain of negative arity must vanish")
            self.op = None
        else:
            self.op = MultiOp(arity, 0, entries or {})

    @property
    def deg(self) -> int:
        return self.arity

    @property
    def entries(self) -> Dict[Tuple[int, ...], Vector]:
        return self.op.entries if self.op is not None else {}

    def __call__(self, *args: Vector) -> Vector:
        if self.op is None:
            raise InvalidArgument("cannot evaluate a cochain of negative arity")
        return self.op(*args)

    def at(self, idx: Tuple[int, ...]) -> Vector:
        return self.entries.get(tuple(idx), {})

    def is_zero(self) -> bool:
        return not self.entries

    def _combine(self, other: "Cochain", c) -> "Cochain":
        if not isinstance(other, Cochain) or other.algebra is not self.algebra:
            raise InvalidArgument("cochains over different algebras")
        if other.arity != self.arity:
            raise InvalidArgument(f"adding cochains of arity {self.arity} and {other.arity}")
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            vadd(out.setdefault(k, {}), v, c)
        return Cochain(self.algebra, self.arity, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        c = scalar(c)
        return Cochain(self.algebra, self.arity, {k: vscale(v, c) for k, v in self.entries.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.algebra is other.algebra and self.arity == other.arity
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.arity, tuple((k, tuple(v.items())) for k, v in self.entries.items())))

    def __repr__(self):
        return f"Cochain(arity={self.arity}, nnz={len(self.entries)})"

    # -- constructors

    @staticmethod
    def zero(A: AlgebraPresentation, arity: int) -> "Cochain":
        return Cochain(A, arity, {})

    @staticmethod
    def element(A: AlgebraPresentation, v: Vector) -> "Cochain":
        return Cochain(A, 0, {(): v})

    @staticmethod
    def from_function(A: AlgebraPresentation, arity: int, fn) -> "Cochain":
        if arity < 0:
            return Cochain.zero(A, arity)
        return Cochain(A, arity, {t: fn(t) for t in product(range(A.dim), repeat=arity)})

    @staticmethod
    def elementary(A: AlgebraPresentation, idx: Tuple[int, ...], k: int) -> "Cochain":
        return Cochain(A, len(idx), {tuple(idx): {k: Fraction(1)}})

    @staticmethod
    def basis(A: AlgebraPresentation, arity: int) -> List["Cochain"]:
        return [Cochain.elementary(A, t, k)
                for t in product(range(A.dim), repeat=arity) for k in range(A.dim)]

    @staticmethod
    def random(A: AlgebraPresentation, arity: int, rng: random.Random, lo: int = -3, hi: int = 3) -> "Cochain":
        return Cochain.from_function(
            A, arity, lambda t: {k: Fraction(rng.randint(lo, hi)) for k in range(A.dim)})


def _same_algebra(*xs: Cochain) -> AlgebraPresentation:
    A = xs[0].algebra
    for x in xs[1:]:
        if x.algebra is not A:
            raise InvalidArgument("cochains over different algebras")
    return A


def _e(k: int) -> Vector:
    return {k: Fraction(1)}


# ---------------------------------------------------------------- operations

def dot(x: Cochain, y: Cochain) -> Cochain:
    A = _same_algebra(x, y)
    k, l = x.arity, y.arity
    if x.is_zero() or y.is_zero():
        return Cochain.zero(A, k + l)
    s = pm(k * l)
    out = {}
    for t in product(range(A.dim), repeat=k + l):
        u, v = x.at(t[:k]), y.at(t[k:])
        if u and v:
            out[t] = vscale(A.mul(u, v), s)
    return Cochain(A, k + l, out)


def braces(x: Cochain, args: Sequence[Cochain]) -> Cochain:
    """{x}{x_1, .., x_n}; with no arguments this is x itself."""
    args = list(args)
    if not args:
        return x
    A = _same_algebra(x, *args)
    n = len(args)
    m = x.arity + sum(y.arity for y in args) - n
    if x.arity < n or x.is_zero() or any(y.is_zero() for y in args):
        return Cochain.zero(A, m)
    out = {}
    slots = list(combinations(range(x.arity), n))
    for t in product(range(A.dim), repeat=m):
        acc: Vector = {}
        for pos in slots:
            vals, ai, eps, p = [], 0, 0, 0
            for slot in range(x.arity):
                if p < n and pos[p] == slot:
                    y = args[p]
                    eps += (y.arity - 1) * ai
                    vals.append(y(*[_e(i) for i in t[ai:ai + y.arity]]))
                    ai += y.arity
                    p += 1
                else:
                    vals.append(_e(t[ai]))
                    ai += 1
            if all(vals):
                vadd(acc, x(*vals), pm(eps))
        if acc:
            out[t] = acc
    return Cochain(A, m, out)


def hochschild_d(x: Cochain) -> Cochain:
    A = x.algebra
    n = x.arity
    if x.is_zero():
        return Cochain.zero(A, n + 1)
    s = pm(n)
    out = {}
    for t in product(range(A.dim), repeat=n + 1):
        a = [_e(i) for i in t]
        acc: Vector = {}
        vadd(acc, A.mul(a[0], x.at(t[1:])), s)
        for i in range(1, n + 1):
            merged = A.mul(a[i - 1], a[i])
            if merged:
                vadd(acc, x(*a[:i - 1], merged, *a[i + 1:]), s * pm(i))
        vadd(acc, A.mul(x.at(t[:n]), a[n]), -1)
        if acc:
            out[t] = acc
    return Cochain(A, n + 1, out)


def circle(x: Cochain, y: Cochain) -> Cochain:
    return braces(x, [y])


def gerst_bracket(x: Cochain, y: Cochain) -> Cochain:
    return circle(x, y) - circle(y, x).scale(pm((x.deg - 1) * (y.deg - 1)))


def lin(terms: Iterable[Tuple[int, Cochain]], A: AlgebraPresentation, arity: int) -> Cochain:
    """sum of c * x over the terms; an empty sum is the zero cochain of the given arity."""
    out = Cochain.zero(A, arity)
    for c, x in terms:
        if c:
            out = out + x.scale(c)
    return out


# ---------------------------------------------------------------- coderivation oracle

def _coderivation(f: Cochain, words: Dict[tuple, Fraction], max_length: int) -> Dict[tuple, Fraction]:
    """Apply the coderivation of T(A) extending f to a combination of words."""
    out: Dict[tuple, Fraction] = {}
    n = f.arity
    for w, c in words.items():
        if len(w) - n + 1 > max_length:
            raise InvalidArgument(f"tensor length exceeds the truncation {max_length}")
        for i in range(len(w) - n + 1):
            val = f.at(w[i:i + n])
            s = pm((n - 1) * i)
            for k, a in val.items():
                key = w[:i] + (k,) + w[i + n:]
                y = out.get(key, 0) + s * c * a
                if y:
                    out[key] = y
                else:
                    out.pop(key, None)
    return out


def coderivation_bracket_oracle(x: Cochain, y: Cochain, max_length: int = 6) -> Cochain:
    """Bracket read off from the graded commutator of coderivations of T(A).

    Cochains are lifted to coderivations of the tensor coalgebra (words of
    length at most ``max_length``), composed both ways, and the component
    landing in A is returned.  Words are tuples of basis indices.
    """
    A = _same_algebra(x, y)
    m = x.arity + y.arity - 1
    if max(x.arity, y.arity, m) > max_length:
        raise InvalidArgument(f"arities {x.arity}, {y.arity} need words longer than {max_length}")
    if m < 0:
        return Cochain.zero(A, m)
    s = pm((x.deg - 1) * (y.deg - 1))
    out = {}
    for t in product(range(A.dim), repeat=m):
        w = {tuple(t): Fraction(1)}
        xy = _coderivation(x, _coderivation(y, w, max_length), max_length)
        yx = _coderivation(y, _coderivation(x, w, max_length), max_length)
        val: Vector = {}
        for word, c in xy.items():
            if len(word) == 1:
                vadd(val, {word[0]: c})
        for word, c in yx.items():
            if len(word) == 1:
                vadd(val, {word[0]: c}, -s)
        if val:
            out[t] = val
    return Cochain(A, m, out)


# sign relating the module's bracket to the coderivation commutator, and d to [m, -]
ORACLE_SIGN = 1
D_BRACKET_SIGN = -1


# ---------------------------------------------------------------- brace identities

def higher_brace_lhs(x: Cochain, xs: Sequence[Cochain], ys: Sequence[Cochain]) -> Cochain:
    return braces(braces(x, xs), ys)


def higher_brace_rhs(x: Cochain, xs: Sequence[Cochain], ys: Sequence[Cochain]) -> Cochain:
    """Sum over insertions of the blocks {x_p}{y_{i_p+1}, ..., y_{j_p}} among the y's."""
    A = _same_algebra(x, *xs, *ys)
    m, n = len(xs), len(ys)
    arity = x.arity + sum(c.arity for c in xs) - m + sum(c.arity for c in ys) - n
    out = Cochain.zero(A, arity)

    def rec(p, start, args, eps):
        nonlocal out
        if p == m:
            out = out + braces(x, args + list(ys[start:])).scale(pm(eps))
            return
        for i in range(start, n + 1):
            e = eps + (xs[p].deg - 1) * sum(ys[q].deg - 1 for q in range(i))
            for j in range(i, n + 1):
                rec(p + 1, j, args + list(ys[start:i]) + [braces(xs[p], ys[i:j])], e)

    rec(0, 0, [], 0)
    return out


def distributivity_lhs(x1: Cochain, x2: Cochain, ys: Sequence[Cochain]) -> Cochain:
    return braces(dot(x1, x2), ys)


def distributivity_rhs(x1: Cochain, x2: Cochain, ys: Sequence[Cochain]) -> Cochain:
    A = _same_algebra(x1, x2, *ys)
    n = len(ys)
    arity = x1.arity + x2.arity + sum(y.arity for y in ys) - n
    terms = []
    for k in range(n + 1):
        eps = x2.deg * sum(ys[p].deg - 1 for p in range(k))
        terms.append((pm(eps), dot(braces(x1, ys[:k]), braces(x2, ys[k:]))))
    return lin(terms, A, arity)


def d_braces_lhs(x: Cochain, xs: Sequence[Cochain]) -> Cochain:
    """Left side of the relation between d, braces and the dot product (n+1 = len(xs))."""
    A = _same_algebra(x, *xs)
    N = len(xs)
    arity = x.arity + sum(y.arity for y in xs) - N + 1
    terms = [(1, hochschild_d(braces(x, xs))), (-1, braces(hochschild_d(x), xs))]
    for i in range(1, N + 1):
        e = (x.deg - 1) + sum(xs[q].deg for q in range(i - 1)) - i - 1
        args = list(xs)
        args[i - 1] = hochschild_d(xs[i - 1])
        terms.append((-pm(e), braces(x, args)))
    return lin(terms, A, arity)


def d_braces_rhs(x: Cochain, xs: Sequence[Cochain]) -> Cochain:
    A = _same_algebra(x, *xs)
    N = len(xs)
    n = N - 1
    arity = x.arity + sum(y.arity for y in xs) - N + 1
    terms = [(-pm(x.deg * (xs[0].deg - 1)), dot(xs[0], braces(x, xs[1:])))]
    for i in range(1, n + 1):
        e = x.deg + sum(xs[q].deg for q in range(i)) - i
        args = list(xs[:i - 1]) + [dot(xs[i - 1], xs[i])] + list(xs[i + 1:])
        terms.append((-pm(e), braces(x, args)))
    e = x.deg + sum(xs[q].deg for q in range(n)) - n
    terms.append((pm(e), dot(braces(x, xs[:n]), xs[n])))
    return lin(terms, A, arity)


def _first_difference(a: Cochain, b: Cochain):
    if a.arity != b.arity:
        return ("arity", a.arity, b.arity)
    for k in sorted(set(a.entries) | set(b.entries)):
        if a.at(k) != b.at(k):
            return list(k)
    return None


def _patterns(count: int, max_arity: int):
    return product(range(max_arity + 1), repeat=count)


def verify_braces_identities(A: AlgebraPresentation, max_arity: int = 2, max_inputs: int = 5,
                             max_args: int = 2, samples: int = 1, seed: int = 0,
                             which: Sequence[str] = ("higher", "distributivity", "d_braces")) -> Report:
    """Check the three brace identities on random cochains for every arity pattern.

    Every cochain has arity at most ``max_arity``, brace argument lists have at
    most ``max_args`` entries and the evaluated cochains take at most
    ``max_inputs`` algebra arguments.  The identities are multilinear, so
    random dense integer cochains (``samples`` draws per pattern, seeded) catch
    any sign or combinatorial error with overwhelming probability.
    """
    rng = random.Random(seed)
    report = Report()
    bound = {"algebra": A.name or A.names, "max_arity": max_arity, "max_inputs": max_inputs,
             "max_args": max_args, "samples": samples}

    def draw(arities):
        return [Cochain.random(A, a, rng) for a in arities]

    if "higher" in which:
        bad = None
        for m in range(1, max_args + 1):
            for n in range(0, max_args + 1):
                for pat in _patterns(1 + m + n, max_arity):
                    if pat[0] < m:
                        continue
                    out = sum(pat) - m - n
                    if out < 0 or out > max_inputs or bad:
                        continue
                    # every intermediate brace must also stay within max_inputs
                    if pat[0] + sum(pat[1:1 + m]) - m > max_inputs:
                        continue
                    for s in range(samples):
                        cs = draw(pat)
                        x, xs, ys = cs[0], cs[1:1 + m], cs[1 + m:]
                        diff = _first_difference(higher_brace_lhs(x, xs, ys), higher_brace_rhs(x, xs, ys))
                        if diff is not None:
                            bad = [{"m": m, "n": n, "arities": list(pat), "sample": s, "input": diff}]
                            break
        report.add(entry("braces.higher", bound, bad))

    if "distributivity" in which:
        bad = None
        for n in range(0, max_args + 1):
            for pat in _patterns(2 + n, max_arity):
                out = sum(pat) - n
                if out < 0 or out > max_inputs or bad:
                    continue
                for s in range(samples):
                    cs = draw(pat)
                    diff = _first_difference(distributivity_lhs(cs[0], cs[1], cs[2:]),
                                             distributivity_rhs(cs[0], cs[1], cs[2:]))
                    if diff is not None:
                        bad = [{"n": n, "arities": list(pat), "sample": s, "input": diff}]
                        break
        report.add(entry("braces.distributivity", bound, bad))

    if "d_braces" in which:
        bad = None
        for N in range(1, max_args + 1):
            for pat in _patterns(1 + N, max_arity):
                out = sum(pat) - N + 1
                if pat[0] < N - 1 or out < 0 or out > max_inputs or bad:
                    continue
                for s in range(samples):
                    cs = draw(pat)
                    diff = _first_difference(d_braces_lhs(cs[0], cs[1:]), d_braces_rhs(cs[0], cs[1:]))
                    if diff is not None:
                        bad = [{"n": N - 1, "arities": list(pat), "sample": s, "input": diff}]
                        break
        report.add(entry("braces.d_braces", bound, bad))
    return report


# ---------------------------------------------------------------- cohomology

MAX_HH_DEGREE = 4
MAX_HH_DIM = 3


def _qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class _Echelon:
    """Row-reduced spanning set; answers membership and reduction queries exactly."""

    def __init__(self, rows: List[List[Fraction]], ncols: int):
        self.ncols = ncols
        self.rows: List[Tuple[int, List[Fraction]]] = []
        if rows:
            M = DomainMatrix([[_qq(x) for x in r] for r in rows], (len(rows), ncols), QQ)
            R, pivots = M.rref()
            lst = R.to_list()
            for r, p in enumerate(pivots):
                self.rows.append((p, [_frac(x) for x in lst[r]]))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: List[Fraction]) -> List[Fraction]:
        v = list(v)
        for p, row in self.rows:
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, v: List[Fraction]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: List[Fraction]) -> bool:
        """Add v to the span; return False if it was already there."""
        r = self.reduce(v)
        nz = [i for i, x in enumerate(r) if x]
        if not nz:
            return False
        p = nz[0]
        r = [x / r[p] for x in r]
        self.rows = [(q, [a - row[p] * b for a, b in zip(row, r)]) for q, row in self.rows]
        self.rows.append((p, r))
        return True


class HH:
    """Hochschild cohomology of A in degrees 0..bound with chosen representatives."""

    def __init__(self, A: AlgebraPresentation, bound: int):
        self.algebra = A
        self.bound = bound
        self.cocycles: Dict[int, List[Cochain]] = {}
        self.coboundaries: Dict[int, _Echelon] = {}
        self.reps: Dict[int, List[Cochain]] = {}

    def dims(self) -> List[int]:
        return [len(self.reps[n]) for n in range(self.bound + 1)]

    def coords(self, x: Cochain) -> List[Fraction]:
        return cochain_coords(x)

    def is_cocycle(self, x: Cochain) -> bool:
        return hochschild_d(x).is_zero()

    def is_coboundary(self, x: Cochain) -> bool:
        if x.arity < 0 or x.is_zero():
            return True
        if x.arity == 0:
            return False
        if x.arity not in self.coboundaries:
            raise Unsupported(f"degree {x.arity} is beyond the computed range")
        return self.coboundaries[x.arity].contains(cochain_coords(x))


def cochain_coords(x: Cochain) -> List[Fraction]:
    A = x.algebra
    out = []
    for t in product(range(A.dim), repeat=x.arity):
        v = x.at(t)
        out.extend(v.get(k, Fraction(0)) for k in range(A.dim))
    return out


def cochain_from_coords(A: AlgebraPresentation, arity: int, coords: Sequence[Fraction]) -> Cochain:
    out = {}
    for a, t in enumerate(product(range(A.dim), repeat=arity)):
        v = {k: Fraction(coords[a * A.dim + k]) for k in range(A.dim) if coords[a * A.dim + k]}
        if v:
            out[t] = v
    return Cochain(A, arity, out)


def d_matrix(A: AlgebraPresentation, n: int) -> List[List[Fraction]]:
    """Columns are the coordinates of d applied to the basis cochains of C^n."""
    cols = [cochain_coords(hochschild_d(b)) for b in Cochain.basis(A, n)]
    return [list(r) for r in zip(*cols)] if cols else []


def hh_cohomology(A: AlgebraPresentation, degree_bound: int) -> HH:
    """Exact kernel/image computation in degrees 0..degree_bound (one more for the top image)."""
    if degree_bound > MAX_HH_DEGREE or degree_bound < 0:
        raise Unsupported(f"degree bound {degree_bound} outside 0..{MAX_HH_DEGREE}")
    if A.dim > MAX_HH_DIM:
        raise Unsupported(f"algebra dimension {A.dim} exceeds {MAX_HH_DIM}")
    H = HH(A, degree_bound)
    prev: List[List[Fraction]] = []
    for n in range(degree_bound + 1):
        basis = Cochain.basis(A, n)
        ncols = len(basis)
        images = [cochain_coords(hochschild_d(b)) for b in basis]
        if n > 0:
            H.coboundaries[n] = _Echelon(prev, ncols)
        nrows = A.dim ** (n + 2)
        M = DomainMatrix([[_qq(images[j][i]) for j in range(ncols)] for i in range(nrows)],
                         (nrows, ncols), QQ)
        kernel = [[_frac(x) for x in row] for row in M.nullspace().to_list()]
        H.cocycles[n] = [cochain_from_coords(A, n, v) for v in kernel]
        span = _Echelon([r for _, r in H.coboundaries[n].rows] if n > 0 else [], ncols)
        H.reps[n] = [cochain_from_coords(A, n, v) for v in kernel if span.add(v)]
        prev = images
    H.coboundaries[degree_bound + 1] = _Echelon(prev, A.dim ** (degree_bound + 2))
    return H


def induced_structure_on_hh(A: AlgebraPresentation, bound: int, H: Optional[HH] = None) -> Report:
    """Well-definedness of dot and bracket on HH and the G-algebra axioms modulo coboundaries.

    Products whose degree exceeds ``bound`` are skipped, as are triples whose
    results would leave the computed range.
    """
    H = H or hh_cohomology(A, bound)
    report = Report()
    b = {"algebra": A.name or A.names, "degree_bound": bound}
    reps = [(n, z) for n in range(bound + 1) for z in H.reps[n]]
    cob = {n: [cochain_from_coords(A, n, r) for _, r in H.coboundaries[n].rows]
           for n in range(1, bound + 1)}

    def d2():
        for n in range(bound + 1):
            for x in Cochain.basis(A, n):
                if not hochschild_d(hochschild_d(x)).is_zero():
                    return [n, list(x.entries)[0]]
        return None
    report.add(entry("hh.d_squared", b, d2()))

    def closed():
        for (k, x), (l, y) in product(reps, repeat=2):
            if k + l <= bound and not H.is_cocycle(dot(x, y)):
                return ["dot", k, l]
            if 0 <= k + l - 1 <= bound and not H.is_cocycle(gerst_bracket(x, y)):
                return ["bracket", k, l]
        return None
    report.add(entry("hh.products_of_cocycles_are_cocycles", b, closed()))

    def exact():
        for (k, x) in reps:
            for l in range(1, bound + 1):
                for y in cob[l]:
                    if k + l <= bound:
                        if not H.is_coboundary(dot(x, y)) or not H.is_coboundary(dot(y, x)):
                            return ["dot", k, l]
                    if 1 <= k + l - 1 <= bound and not H.is_coboundary(gerst_bracket(x, y)):
                        return ["bracket", k, l]
        return None
    report.add(entry("hh.products_with_coboundaries_are_coboundaries", b, exact()))

    def commutative():
        for (k, x), (l, y) in product(reps, repeat=2):
            if k + l <= bound and not H.is_coboundary(dot(x, y) - dot(y, x).scale(pm(k * l))):
                return [k, l]
        return None
    report.add(entry("hh.dot_graded_commutative", b, commutative()))

    def associative():
        for (k, x), (l, y), (p, z) in product(reps, repeat=3):
            if k + l + p <= bound and not H.is_coboundary(dot(dot(x, y), z) - dot(x, dot(y, z))):
                return [k, l, p]
        return None
    report.add(entry("hh.dot_associative", b, associative()))

    def antisymmetric():
        for (k, x), (l, y) in product(reps, repeat=2):
            if k + l - 1 <= bound:
                s = gerst_bracket(x, y) + gerst_bracket(y, x).scale(pm((k - 1) * (l - 1)))
                if not H.is_coboundary(s):
                    return [k, l]
        return None
    report.add(entry("hh.bracket_antisymmetric", b, antisymmetric()))

    def jacobi():
        for (k, x), (l, y), (p, z) in product(reps, repeat=3):
            if k + l + p - 2 > bound:
                continue
            s = (gerst_bracket(x, gerst_bracket(y, z))
                 - gerst_bracket(gerst_bracket(x, y), z)
                 - gerst_bracket(y, gerst_bracket(x, z)).scale(pm((k - 1) * (l - 1))))
            if not H.is_coboundary(s):
                return [k, l, p]
        return None
    report.add(entry("hh.bracket_jacobi", b, jacobi()))

    def leibniz():
        for (k, x), (l, y), (p, z) in product(reps, repeat=3):
            if k + l + p - 1 > bound:
                continue
            s = (gerst_bracket(x, dot(y, z)) - dot(gerst_bracket(x, y), z)
                 - dot(y, gerst_bracket(x, z)).scale(pm((k - 1) * l)))
            if not H.is_coboundary(s):
                return [k, l, p]
        return None
    report.add(entry("hh.leibniz", b, leibniz()))
    return report


# ---------------------------------------------------------------- the complex as a graded space

class HochschildComplex:
    """C^0 + ... + C^N as a :class:`GradedSpace` whose basis is the elementary cochains.

    The differential on the top piece C^N is dropped, so anything evaluated
    on inputs of total degree at most N - 1 by operators of degree <= 0 (and
    their differentials) is computed exactly.
    """

    def __init__(self, A: AlgebraPresentation, N: int):
        if N < 1:
            raise InvalidArgument("truncation must be at least 1")
        self.algebra = A
        self.N = N
        self.keys: List[Tuple[int, Tuple[int, ...], int]] = []
        for n in range(N + 1):
            for t in product(range(A.dim), repeat=n):
                for k in range(A.dim):
                    self.keys.append((n, t, k))
        self.index = {key: i for i, key in enumerate(self.keys)}
        names = []
        for n, t, k in self.keys:
            args = ",".join(A.names[i] for i in t)
            names.append((f"C{n}({args})->{A.names[k]}", n))
        diff = {}
        for i, (n, t, k) in enumerate(self.keys):
            if n < N:
                v = self.to_vector(hochschild_d(Cochain.elementary(A, t, k)))
                if v:
                    diff[i] = v
        self.space = GradedSpace(names, diff)

    def cochain(self, i: int) -> Cochain:
        n, t, k = self.keys[i]
        return Cochain.elementary(self.algebra, t, k)

    def to_vector(self, x: Cochain) -> Vector:
        if x.arity > self.N:
            if x.is_zero():
                return {}
            raise Unsupported(f"cochain of arity {x.arity} exceeds the truncation {self.N}")
        out: Vector = {}
        for t, v in x.entries.items():
            for k, c in v.items():
                out[self.index[(x.arity, t, k)]] = c
        return out

    def to_cochain(self, v: Vector) -> Cochain:
        """Homogeneous vector to cochain."""
        n = self.space.vdeg(v)
        if n is None:
            raise InvalidArgument("zero vector has no arity")
        entries: Dict[Tuple[int, ...], Vector] = {}
        for i, c in v.items():
            _, t, k = self.keys[i]
            entries.setdefault(t, {})[k] = c
        return Cochain(self.algebra, n, entries)

    def operator(self, fn, arity: int, degree: int, name: str = ""):
        """Lift a function of cochains to a lazy operator on the space."""
        from .core import FunctionOp

        def on_basis(idx):
            return self.to_vector(fn(*[self.cochain(i) for i in idx]))
        return FunctionOp(arity, degree, self.space, on_basis, name)
