"""Free magma monomials, multidegrees, polynomials, one-hole contexts.

A monomial is a full binary tree whose leaves carry generator indices.
The canonical order on monomials compares (total degree, multidegree
lexicographically, preorder shape word, leaf word); it is strict and
total, and every enumeration below returns its results in that order, so
witnesses and cache contents never depend on construction history.

Generator index ``HOLE`` (-1) is reserved for the distinguished leaf of a
one-hole context. Identity templates reuse the same trees with variable
indices in place of generator indices; one substitution engine serves
both.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .errors import InputError
from .linalg import Field, Scalar

HOLE = -1


class Monomial:
    """A full binary tree with generator indices at the leaves.

    Immutable; ``leaves`` is the left-to-right leaf word and ``shape`` the
    preorder walk with 0 for an internal node and 1 for a leaf. Sorting
    keys and hashes are cached on the instance.
    """

    __slots__ = ("gen", "left", "right", "degree", "leaves", "shape", "_hash")

    def __init__(self, gen: int = None, left: "Monomial" = None, right: "Monomial" = None):
        if gen is not None:
            self.gen = gen
            self.left = None
            self.right = None
            self.degree = 1
            self.leaves = (gen,)
            self.shape = (1,)
        else:
            self.gen = None
            self.left = left
            self.right = right
            self.degree = left.degree + right.degree
            self.leaves = left.leaves + right.leaves
            self.shape = (0,) + left.shape + right.shape
        self._hash = hash((self.shape, self.leaves))

    @property
    def is_leaf(self) -> bool:
        return self.gen is not None

    def __eq__(self, other) -> bool:
        return (
            self is other
            or (
                isinstance(other, Monomial)
                and self.shape == other.shape
                and self.leaves == other.leaves
            )
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({render_monomial(self)})"

    def sort_key(self, k: int) -> tuple:
        return (self.degree, multidegree(self, k), self.shape, self.leaves)


def leaf(gen: int) -> Monomial:
    return Monomial(gen=gen)


def node(left: Monomial, right: Monomial) -> Monomial:
    return Monomial(left=left, right=right)


def multidegree(m: Monomial, k: int) -> tuple[int, ...]:
    """Occurrence counts of generators 0..k-1 in the leaf word."""
    counts = [0] * k
    for g in m.leaves:
        if g < 0 or g >= k:
            raise InputError(f"generator index {g} outside alphabet of size {k}")
        counts[g] += 1
    return tuple(counts)


def mdeg_total(mu: tuple[int, ...]) -> int:
    return sum(mu)


def mdeg_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def mdeg_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        raise InputError(f"multidegree {b} does not fit inside {a}")
    return out


def mdeg_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def format_multidegree(mu: tuple[int, ...]) -> str:
    """Report key for a multidegree, e.g. (2,1); stable across k=1."""
    return "(" + ",".join(str(c) for c in mu) + ")"


def expected_count(mu: tuple[int, ...]) -> int:
    """Catalan(n-1) * n! / prod(counts!) for total degree n."""
    n = mdeg_total(mu)
    catalan = math.comb(2 * (n - 1), n - 1) // n
    multinomial = math.factorial(n)
    for c in mu:
        multinomial //= math.factorial(c)
    return catalan * multinomial


@lru_cache(maxsize=None)
def enumerate_monomials(k: int, mu: tuple[int, ...]) -> tuple[Monomial, ...]:
    """All monomials over generators 0..k-1 with multidegree mu, in
    canonical order."""
    if len(mu) != k:
        raise InputError(f"multidegree {mu} has wrong length for {k} generators")
    n = mdeg_total(mu)
    if n < 1:
        raise InputError("a monomial needs total degree at least 1")
    if n == 1:
        return (leaf(mu.index(1)),)
    out = []
    for a in _proper_submultidegrees(mu):
        b = mdeg_sub(mu, a)
        for l in enumerate_monomials(k, a):
            for r in enumerate_monomials(k, b):
                out.append(node(l, r))
    out.sort(key=lambda m: (m.shape, m.leaves))
    return tuple(out)


def _proper_submultidegrees(mu: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All a with 0 < a < mu componentwise-partially (a != 0, a != mu)."""
    ranges = [range(c + 1) for c in mu]
    out = []

    def rec(i, acc):
        if i == len(mu):
            t = tuple(acc)
            if any(t) and t != mu:
                out.append(t)
            return
        for v in ranges[i]:
            acc.append(v)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Finite linear combination of monomials with exact coefficients.

    The term map never stores zeros. Instances are treated as immutable;
    all arithmetic returns fresh objects.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict[Monomial, Scalar] = None):
        self.field = field
        self.terms: dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls(field)

    @classmethod
    def of(cls, field: Field, m: Monomial, c: Scalar = None) -> "Polynomial":
        return cls(field, {m: field.one if c is None else c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.field, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({render_polynomial(self)})"

    def _require_same_field(self, other: "Polynomial"):
        if self.field != other.field:
            raise InputError("polynomials live over different fields")

    def add(self, other: "Polynomial") -> "Polynomial":
        self._require_same_field(other)
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            w = f.add(out.get(m, 0), c)
            if w:
                out[m] = w
            elif m in out:
                del out[m]
        p = Polynomial(f)
        p.terms = out
        return p

    def sub(self, other: "Polynomial") -> "Polynomial":
        return self.add(other.scaled(self.field.neg(self.field.one)))

    def scaled(self, c: Scalar) -> "Polynomial":
        f = self.field
        if not c:
            return Polynomial(f)
        return Polynomial(f, {m: f.mul(v, c) for m, v in self.terms.items()})

    def monomials(self) -> list[Monomial]:
        return list(self.terms)


def multiply(p: Polynomial, q: Polynomial, cap: Optional[int] = None) -> Polynomial:
    """Bilinear extension of the tree join.

    Products whose total degree exceeds ``cap`` are dropped; that is sound
    for all ideal computations because the span of components above the
    cap is itself an ideal.
    """
    p._require_same_field(q)
    f = p.field
    out: dict[Monomial, Scalar] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            if cap is not None and m1.degree + m2.degree > cap:
                continue
            m = node(m1, m2)
            w = f.add(out.get(m, 0), f.mul(c1, c2))
            if w:
                out[m] = w
            elif m in out:
                del out[m]
    r = Polynomial(f)
    r.terms = out
    return r


def commutator(p: Polynomial, q: Polynomial, cap: Optional[int] = None) -> Polynomial:
    return multiply(p, q, cap).sub(multiply(q, p, cap))


def associator(p: Polynomial, q: Polynomial, r: Polynomial, cap: Optional[int] = None) -> Polynomial:
    return multiply(multiply(p, q, cap), r, cap).sub(multiply(p, multiply(q, r, cap), cap))


def jordan(p: Polynomial, q: Polynomial, cap: Optional[int] = None) -> Polynomial:
    return multiply(p, q, cap).add(multiply(q, p, cap))


# ---------------------------------------------------------------------------
# substitution and contexts


def substitute(template: Polynomial, assignment: dict[int, Monomial]) -> Polynomial:
    """Replace each leaf index of the template through ``assignment``.

    The template's leaf indices are variable numbers; every one of them
    must be assigned. Homomorphic: images of products are products of
    images.
    """
    f = template.field
    out: dict[Monomial, Scalar] = {}
    for m, c in template.terms.items():
        img = _substitute_mono(m, assignment)
        w = f.add(out.get(img, 0), c)
        if w:
            out[img] = w
        elif img in out:
            del out[img]
    p = Polynomial(f)
    p.terms = out
    return p


def _substitute_mono(m: Monomial, assignment: dict[int, Monomial]) -> Monomial:
    if m.is_leaf:
        try:
            return assignment[m.gen]
        except KeyError:
            raise InputError(f"variable {m.gen} has no assignment") from None
    return node(
        _substitute_mono(m.left, assignment),
        _substitute_mono(m.right, assignment),
    )


class Context:
    """A monomial with exactly one hole leaf."""

    __slots__ = ("tree",)

    def __init__(self, tree: Monomial):
        if tree.leaves.count(HOLE) != 1:
            raise InputError("a context must have exactly one hole")
        self.tree = tree

    def __eq__(self, other) -> bool:
        return isinstance(other, Context) and self.tree == other.tree

    def __hash__(self) -> int:
        return hash(("Context", self.tree))

    def __repr__(self) -> str:
        return f"Context({render_monomial(self.tree, lambda g: 'HOLE' if g == HOLE else f'x{g + 1}')})"

    @property
    def is_bare_hole(self) -> bool:
        return self.tree.is_leaf


def plug_monomial(c: Context, m: Monomial) -> Monomial:
    return _plug(c.tree, m)


def _plug(tree: Monomial, m: Monomial) -> Monomial:
    if tree.is_leaf:
        return m if tree.gen == HOLE else tree
    if HOLE in tree.left.leaves:
        return node(_plug(tree.left, m), tree.right)
    return node(tree.left, _plug(tree.right, m))


def plug(c: Context, p: Polynomial) -> Polynomial:
    """Linear extension of hole filling."""
    f = p.field
    out: dict[Monomial, Scalar] = {}
    for m, coeff in p.terms.items():
        img = plug_monomial(c, m)
        w = f.add(out.get(img, 0), coeff)
        if w:
            out[img] = w
        elif img in out:
            del out[img]
    q = Polynomial(f)
    q.terms = out
    return q


@lru_cache(maxsize=None)
def enumerate_contexts(
    k: int, hole_mu: tuple[int, ...], total_mu: tuple[int, ...]
) -> tuple[Context, ...]:
    """All one-hole contexts over generators 0..k-1 whose hole, filled
    with a monomial of multidegree ``hole_mu``, yields ``total_mu``.

    Implemented by enumerating monomials over the alphabet extended with
    the hole as an extra generator carrying count 1, so the context list
    inherits the canonical monomial order.
    """
    if not mdeg_leq(hole_mu, total_mu):
        raise InputError(f"hole multidegree {hole_mu} exceeds total {total_mu}")
    if mdeg_total(hole_mu) < 1:
        raise InputError("the hole must absorb positive degree")
    rest = mdeg_sub(total_mu, hole_mu)
    extended = rest + (1,)
    out = []
    for m in enumerate_monomials(k + 1, extended):
        out.append(Context(_relabel_hole(m, k)))
    return tuple(out)


def _relabel_hole(m: Monomial, k: int) -> Monomial:
    if m.is_leaf:
        return leaf(HOLE) if m.gen == k else m
    return node(_relabel_hole(m.left, k), _relabel_hole(m.right, k))


# ---------------------------------------------------------------------------
# rendering


def generator_name(g: int) -> str:
    return f"x{g + 1}"


def render_monomial(m: Monomial, namer: Callable[[int], str] = generator_name) -> str:
    """Fully parenthesized text, e.g. ((x1*x2)*x1); parses back through
    the expression grammar."""
    if m.is_leaf:
        return namer(m.gen)
    return f"({render_monomial(m.left, namer)}*{render_monomial(m.right, namer)})"


def render_polynomial(
    p: Polynomial,
    namer: Callable[[int], str] = generator_name,
    key_gens: Optional[int] = None,
) -> str:
    """Canonical text of a polynomial, terms in canonical monomial order."""
    if not p.terms:
        return "0"
    k = key_gens
    if k is None:
        k = max((max(m.leaves) for m in p.terms), default=0) + 1
    items = sorted(p.terms.items(), key=lambda mc: mc[0].sort_key(k))
    field = p.field
    parts = []
    for i, (m, c) in enumerate(items):
        text = render_monomial(m, namer)
        neg = field.char == 0 and c < 0
        mag = -c if neg else c
        coeff = field.render(mag)
        body = text if coeff == "1" else f"{coeff}*{text}"
        if i == 0:
            parts.append(f"-{coeff}*{text}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)
