"""Exact scalars, graded spaces, multilinear operators and Koszul signs.

Vectors are plain dicts ``{basis index: Fraction}`` with no zero entries.
Operators are homogeneous multilinear maps on a :class:`GradedSpace`.  A
:class:`MultiOp` stores its structure constants explicitly; the other
:class:`Operator` subclasses are built lazily from simpler operators
(composition, permutation, the differential, linear combinations) and are
evaluated on demand.  Any operator can be turned into a :class:`MultiOp` with
:func:`materialize`.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Scalar = Fraction
Vector = Dict[int, Fraction]


class InvalidArgument(ValueError):
    pass


class Unsupported(ValueError):
    """A request beyond the supported scale (arity, degree, truncation)."""


def scalar(x) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"bad scalar {x!r}") from exc
    raise InvalidArgument(f"bad scalar {x!r}")


# ---------------------------------------------------------------- vectors

def vadd(acc: Vector, v: Mapping[int, Fraction], c=1) -> Vector:
    """acc += c*v, in place, keeping the sparse form canonical."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(v: Mapping[int, Fraction], c) -> Vector:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def canonical(v: Mapping[int, Fraction]) -> Vector:
    return {k: Fraction(v[k]) for k in sorted(v) if v[k]}


# ---------------------------------------------------------------- signs

def _check_perm(perm: Sequence[int]) -> None:
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise InvalidArgument(f"not a permutation of 1..{len(perm)}: {list(perm)}")


def perm_sign(perm: Sequence[int]) -> int:
    _check_perm(perm)
    s = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                s = -s
    return s


def koszul_sign(perm: Sequence[int], degrees: Sequence[int], shift: int = 0) -> int:
    """Sign of rearranging x_1..x_n into x_{perm[0]}, ..., x_{perm[n-1]}.

    ``perm`` is 1-based.  Element x_i has effective degree ``degrees[i-1] - shift``;
    every pair that gets swapped contributes the product of the two effective
    degrees to the exponent.
    """
    _check_perm(perm)
    if len(degrees) != len(perm):
        raise InvalidArgument("degrees and permutation have different lengths")
    e = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                e += (degrees[perm[a] - 1] - shift) * (degrees[perm[b] - 1] - shift)
    return -1 if e % 2 else 1


def pm(e: int) -> int:
    """(-1)**e for any integer e."""
    return -1 if e % 2 else 1


# ---------------------------------------------------------------- spaces

class GradedSpace:
    """Finite-dimensional graded space with a named basis and a differential.

    ``differential`` maps a basis index to the vector d(e_i); missing keys mean
    d(e_i) = 0.  d has degree +1 and must square to zero.
    """

    def __init__(self, basis: Sequence[Tuple[str, int]],
                 differential: Optional[Mapping[int, Mapping[int, object]]] = None,
                 check: bool = True):
        names = [str(n) for n, _ in basis]
        if len(set(names)) != len(names):
            raise InvalidArgument("basis names are not unique")
        self.names: List[str] = names
        self.degrees: List[int] = [int(d) for _, d in basis]
        self.index = {n: i for i, n in enumerate(names)}
        self.dim = len(names)
        self._d: Dict[int, Vector] = {}
        for i, v in (differential or {}).items():
            v = {int(k): scalar(c) for k, c in v.items() if scalar(c)}
            if v:
                self._d[int(i)] = v
        if check:
            self._check_differential()

    def _check_differential(self) -> None:
        for i, v in self._d.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + 1:
                    raise InvalidArgument(
                        f"differential is not of degree +1 on {self.names[i]}")
        for i in range(self.dim):
            if self.d(self.d({i: Fraction(1)})):
                raise InvalidArgument(f"d^2 != 0 on {self.names[i]}")

    def deg(self, i: int) -> int:
        return self.degrees[i]

    def vdeg(self, v: Mapping[int, Fraction]) -> Optional[int]:
        """Degree of a homogeneous nonzero vector, None for the zero vector."""
        if not v:
            return None
        degs = {self.degrees[k] for k in v}
        if len(degs) != 1:
            raise InvalidArgument("vector is not homogeneous")
        return degs.pop()

    def d(self, v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, c in v.items():
            dv = self._d.get(i)
            if dv:
                vadd(out, dv, c)
        return out

    @property
    def has_differential(self) -> bool:
        return bool(self._d)

    def differential_op(self) -> "MultiOp":
        return MultiOp(1, 1, {(i,): v for i, v in self._d.items()}, self)

    def basis_vector(self, i: int) -> Vector:
        return {i: Fraction(1)}

    def tuples(self, arity: int, max_total_degree: Optional[int] = None,
               indices: Optional[Sequence[int]] = None) -> Iterable[Tuple[int, ...]]:
        idx = range(self.dim) if indices is None else indices
        for t in product(idx, repeat=arity):
            if max_total_degree is None or sum(self.degrees[i] for i in t) <= max_total_degree:
                yield t

    def __repr__(self) -> str:
        return f"GradedSpace(dim={self.dim})"


# ---------------------------------------------------------------- operators

class Operator:
    """A homogeneous multilinear operator of fixed arity and degree."""

    arity: int
    degree: int
    space: GradedSpace

    def apply(self, idx: Tuple[int, ...]) -> Vector:
        raise NotImplementedError

    def __call__(self, *vecs: Mapping[int, Fraction]) -> Vector:
        """Evaluate on vectors by multilinear expansion over basis tuples."""
        if len(vecs) != self.arity:
            raise InvalidArgument(f"expected {self.arity} arguments, got {len(vecs)}")
        out: Vector = {}
        if any(not v for v in vecs):
            return out
        for combo in product(*[list(v.items()) for v in vecs]):
            c = Fraction(1)
            for _, x in combo:
                c *= x
            vadd(out, self.apply(tuple(k for k, _ in combo)), c)
        return out

    def on_vectors(self, vecs: Sequence[Mapping[int, Fraction]]) -> Vector:
        return self(*vecs)


class MultiOp(Operator):
    """Sparse structure-constant tensor ``{input tuple: {output: coefficient}}``."""

    def __init__(self, arity: int, degree: int,
                 entries: Mapping[Tuple[int, ...], Mapping[int, object]],
                 space: Optional[GradedSpace] = None):
        if arity < 0:
            raise InvalidArgument("negative arity")
        self.arity = arity
        self.degree = degree
        self.space = space
        clean = {}
        for key in sorted(entries):
            if len(key) != arity:
                raise InvalidArgument(f"entry {key} has wrong arity")
            v = {k: scalar(c) for k, c in sorted(entries[key].items()) if scalar(c)}
            if v:
                clean[tuple(key)] = v
        self.entries: Dict[Tuple[int, ...], Vector] = clean
        if space is not None:
            self.check_homogeneous(space)

    def check_homogeneous(self, space: GradedSpace) -> None:
        for key, v in self.entries.items():
            for i in key + tuple(v):
                if not 0 <= i < space.dim:
                    raise InvalidArgument(f"index {i} out of range")
            want = sum(space.degrees[i] for i in key) + self.degree
            for k in v:
                if space.degrees[k] != want:
                    raise InvalidArgument(
                        f"entry {key} -> {space.names[k]} breaks homogeneity")

    def apply(self, idx):
        return self.entries.get(tuple(idx), {})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiOp):
            return NotImplemented
        return (self.arity, self.degree, self.entries) == (other.arity, other.degree, other.entries)

    def __hash__(self):
        return hash((self.arity, self.degree, tuple(
            (k, tuple(v.items())) for k, v in self.entries.items())))

    def __repr__(self) -> str:
        return f"MultiOp(arity={self.arity}, degree={self.degree}, nnz={len(self.entries)})"

    @staticmethod
    def identity(space: GradedSpace) -> "MultiOp":
        return MultiOp(1, 0, {(i,): {i: 1} for i in range(space.dim)}, space)

    @staticmethod
    def zero(arity: int, degree: int, space: Optional[GradedSpace] = None) -> "MultiOp":
        return MultiOp(arity, degree, {}, space)


class FunctionOp(Operator):
    """Operator given by a function on basis tuples, memoized."""

    def __init__(self, arity: int, degree: int, space: GradedSpace, fn, name: str = ""):
        self.arity, self.degree, self.space = arity, degree, space
        self.fn = fn
        self.name = name
        self._memo: Dict[Tuple[int, ...], Vector] = {}

    def apply(self, idx):
        idx = tuple(idx)
        r = self._memo.get(idx)
        if r is None:
            r = self._memo[idx] = canonical(self.fn(idx))
        return r


class ZeroOp(Operator):
    def __init__(self, arity: int, degree: int, space: GradedSpace):
        self.arity, self.degree, self.space = arity, degree, space

    def apply(self, idx):
        return {}

    def __call__(self, *vecs):
        return {}


def _degs(space: GradedSpace, vecs) -> List[Optional[int]]:
    return [space.vdeg(v) for v in vecs]


class ComposedOp(Operator):
    """F o_i G: (F o_i G)(v) = (-1)^{|G|(|v_1|+...+|v_{i-1}|)} F(v_1, .., G(v_i, ..), ..)."""

    def __init__(self, F: Operator, i: int, G: Operator):
        if not 1 <= i <= F.arity:
            raise InvalidArgument(f"slot {i} out of range for arity {F.arity}")
        self.F, self.i, self.G = F, i, G
        self.space = F.space if F.space is not None else G.space
        self.arity = F.arity + G.arity - 1
        self.degree = F.degree + G.degree

    def __call__(self, *vecs):
        if any(not v for v in vecs):
            return {}
        i, m = self.i, self.G.arity
        before = vecs[:i - 1]
        inner = self.G(*vecs[i - 1:i - 1 + m])
        if not inner:
            return {}
        e = self.G.degree * sum(_degs(self.space, before))
        return vscale(self.F(*before, inner, *vecs[i - 1 + m:]), pm(e))

    def apply(self, idx):
        return self(*[{k: Fraction(1)} for k in idx])


class PermutedOp(Operator):
    """sigma.F with (sigma.F)(v_1..v_n) = eps * F(v_{sigma(1)}, .., v_{sigma(n)}).

    eps is the Koszul sign of moving (v_1..v_n) into the order
    (v_{sigma(1)}..v_{sigma(n)}).  ``perm`` is 1-based: perm[j-1] = sigma(j).
    """

    def __init__(self, perm: Sequence[int], F: Operator):
        _check_perm(perm)
        if len(perm) != F.arity:
            raise InvalidArgument("permutation size does not match arity")
        self.perm = tuple(perm)
        self.F = F
        self.arity, self.degree, self.space = F.arity, F.degree, F.space

    def __call__(self, *vecs):
        if any(not v for v in vecs):
            return {}
        degs = _degs(self.space, vecs)
        s = koszul_sign(self.perm, degs)
        return vscale(self.F(*[vecs[p - 1] for p in self.perm]), s)

    def apply(self, idx):
        return self(*[{k: Fraction(1)} for k in idx])


class DifferentialOp(Operator):
    """D(F) = d o F - (-1)^{|F|} sum_i (-1)^{|v_1|+..+|v_{i-1}|} F(.., d v_i, ..)."""

    def __init__(self, F: Operator, space: Optional[GradedSpace] = None):
        self.F = F
        self.space = space if space is not None else F.space
        if self.space is None:
            raise InvalidArgument("differential needs a space")
        self.arity, self.degree = F.arity, F.degree + 1

    def __call__(self, *vecs):
        if any(not v for v in vecs):
            return {}
        sp = self.space
        out = sp.d(self.F(*vecs))
        degs = _degs(sp, vecs)
        sF = pm(self.F.degree)
        for i, v in enumerate(vecs):
            dv = sp.d(v)
            if not dv:
                continue
            args = list(vecs)
            args[i] = dv
            vadd(out, self.F(*args), -sF * pm(sum(degs[:i])))
        return out

    def apply(self, idx):
        return self(*[{k: Fraction(1)} for k in idx])


class LinearCombination(Operator):
    """sum_k c_k F_k, all terms of equal arity and degree."""

    def __init__(self, terms: Sequence[Tuple[object, Operator]], arity=None, degree=None, space=None):
        terms = [(scalar(c), F) for c, F in terms if scalar(c)]
        if terms:
            arity = terms[0][1].arity
            degree = terms[0][1].degree
            space = space or terms[0][1].space
        for _, F in terms:
            if F.arity != arity or F.degree != degree:
                raise InvalidArgument("linear combination of mismatched operators")
        self.terms = terms
        self.arity, self.degree, self.space = arity, degree, space

    def __call__(self, *vecs):
        out: Vector = {}
        for c, F in self.terms:
            vadd(out, F(*vecs), c)
        return out

    def apply(self, idx):
        return self(*[{k: Fraction(1)} for k in idx])


# ---------------------------------------------------------------- eager API

def materialize(F: Operator, space: Optional[GradedSpace] = None,
                tuples: Optional[Iterable[Tuple[int, ...]]] = None) -> MultiOp:
    """Tabulate F on all basis tuples (or on the given ones)."""
    space = space or F.space
    if tuples is None:
        tuples = space.tuples(F.arity)
    entries = {}
    for t in tuples:
        v = F.apply(t)
        if v:
            entries[t] = v
    return MultiOp(F.arity, F.degree, entries, space)


def _require_space(F: Operator, space: GradedSpace) -> None:
    if isinstance(F, MultiOp):
        for key, v in F.entries.items():
            for i in key + tuple(v):
                if not 0 <= i < space.dim:
                    raise InvalidArgument("operator does not act on this space")


def hom_differential(F: Operator, space: GradedSpace) -> MultiOp:
    """The differential of Hom(V^{\\otimes n}, V) applied to F."""
    _require_space(F, space)
    return materialize(DifferentialOp(F, space), space)


def compose_at(F: Operator, i: int, G: Operator, space: GradedSpace) -> MultiOp:
    """Operadic substitution of G into slot i of F, with Koszul sign."""
    if not 1 <= i <= F.arity:
        raise InvalidArgument(f"slot {i} out of range for arity {F.arity}")
    _require_space(F, space)
    _require_space(G, space)
    return materialize(ComposedOp(_with_space(F, space), i, _with_space(G, space)), space)


def act(perm: Sequence[int], F: Operator, space: GradedSpace) -> MultiOp:
    return materialize(PermutedOp(perm, _with_space(F, space)), space)


def _with_space(F: Operator, space: GradedSpace) -> Operator:
    if F.space is None and isinstance(F, MultiOp):
        return MultiOp(F.arity, F.degree, F.entries, space)
    return F


def operators_agree(F: Operator, G: Operator, tuples: Iterable[Tuple[int, ...]]):
    """Return None if F and G agree on every tuple, else the first bad tuple."""
    for t in tuples:
        if canonical(F.apply(t)) != canonical(G.apply(t)):
            return t
    return None
