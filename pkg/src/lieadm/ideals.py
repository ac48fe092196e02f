"""Graded-subspace calculus inside a degree-capped relatively free algebra.

An AlgebraSlice holds every multidegree component up to a total-degree
cap D and multiplies quotient classes through normal forms. Products
whose total degree exceeds D are zero by truncation; this is sound
because the span of all components of degree > D is an ideal, so every
inclusion verified here is a genuine statement about degrees <= D.

On top of the slice sit graded subspaces (one echelon basis per
multidegree), the usual span operations (brackets, products,
associators, powers, ideal closure), the two canonical chains, and a
dispatch table of named structural checks with witness reporting.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

from .errors import InputError
from .linalg import EchelonBasis, Field, SparseVector, identity_basis, member, rref
from .linalg import sum_bases as _sum_bases
from .terms import format_multidegree, mdeg_add, mdeg_total, node, Polynomial
from .variety import FreeAlgebraComponent, VarietySpec, component_basis


def _mu_order(mu: tuple[int, ...]) -> tuple:
    return (sum(mu), mu)


def _accumulate(field: Field, acc: dict, vec: SparseVector, coeff) -> None:
    add, mul = field.add, field.mul
    for i, c in vec.entries:
        u = add(acc.get(i, 0), mul(coeff, c))
        if u:
            acc[i] = u
        elif i in acc:
            del acc[i]


class GradedSubspace:
    """A subspace with one echelon basis per multidegree component.

    Missing multidegrees mean zero there. Parts are kept in canonical
    order (ascending total degree, then lexicographic) so iteration and
    witness selection are deterministic.
    """

    __slots__ = ("slice", "parts")

    def __init__(self, slice_: "AlgebraSlice", parts: dict):
        self.slice = slice_
        self.parts = {
            mu: basis
            for mu, basis in sorted(parts.items(), key=lambda kv: _mu_order(kv[0]))
            if basis.rank
        }

    def dims(self) -> list[tuple[str, int]]:
        """Per-multidegree ranks in canonical order (report-friendly)."""
        return [(format_multidegree(mu), b.rank) for mu, b in self.parts.items()]

    def total_dim(self) -> int:
        return sum(b.rank for b in self.parts.values())

    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return self.slice is other.slice and self.parts == other.parts

    def __hash__(self):
        raise TypeError("graded subspaces are not hashable")

    def __repr__(self) -> str:
        return f"GradedSubspace(dim={self.total_dim()}, parts={len(self.parts)})"


class InclusionVerdict:
    """Outcome of one containment claim, with a canonical witness."""

    __slots__ = ("label", "holds", "witness")

    def __init__(self, label: str, holds: bool, witness: Optional[dict]):
        self.label = label
        self.holds = holds
        self.witness = witness

    def to_doc(self) -> dict:
        return {
            "claim": self.label,
            "verdict": "verified" if self.holds else "violated",
            "witness": self.witness,
        }


class AlgebraSlice:
    """All components of one relatively free algebra up to total degree D."""

    __slots__ = (
        "variety",
        "field",
        "k",
        "degree_cap",
        "max_monomials",
        "components",
        "_mul",
        "_full",
        "_h",
        "_a",
        "_a_closed",
    )

    def __init__(
        self,
        variety: VarietySpec,
        field: Field,
        k: int,
        degree_cap: int,
        jobs: int = 1,
        max_monomials: Optional[int] = None,
    ):
        if k < 1:
            raise InputError("need at least one generator")
        if degree_cap < 1:
            raise InputError("degree cap must be at least 1")
        self.variety = variety
        self.field = field
        self.k = k
        self.degree_cap = degree_cap
        self.max_monomials = max_monomials
        mus = [
            mu
            for total in range(1, degree_cap + 1)
            for mu in itertools.product(range(total + 1), repeat=k)
            if sum(mu) == total
        ]

        def build(mu):
            return component_basis(variety, field, k, mu, max_monomials)

        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                comps = list(pool.map(build, mus))
        else:
            comps = [build(mu) for mu in mus]
        self.components = dict(zip(mus, comps))
        self._mul: dict[tuple, SparseVector] = {}
        self._full: Optional[GradedSubspace] = None
        self._h: list = [None]
        self._a: list = [None]
        self._a_closed: dict[int, GradedSubspace] = {}

    def component(self, mu: tuple[int, ...]) -> FreeAlgebraComponent:
        comp = self.components.get(mu)
        if comp is None:
            raise InputError(
                f"multidegree {format_multidegree(mu)} outside the slice cap {self.degree_cap}"
            )
        return comp

    def _same(self, space: GradedSubspace) -> None:
        if space.slice is not self:
            raise InputError("graded subspaces belong to different slices")

    # -- spanning sets --------------------------------------------------------

    def full(self) -> GradedSubspace:
        if self._full is None:
            parts = {
                mu: identity_basis(self.field, comp.quotient_dim)
                for mu, comp in self.components.items()
                if comp.quotient_dim
            }
            self._full = GradedSubspace(self, parts)
        return self._full

    def zero(self) -> GradedSubspace:
        return GradedSubspace(self, {})

    def span(self, rows_by_mu: dict) -> GradedSubspace:
        parts = {}
        for mu, rows in rows_by_mu.items():
            basis = rref(self.field, self.component(mu).quotient_dim, rows)
            if basis.rank:
                parts[mu] = basis
        return GradedSubspace(self, parts)

    # -- multiplication through normal forms ----------------------------------

    def multiply_classes(
        self, mu1: tuple[int, ...], q1: int, mu2: tuple[int, ...], q2: int
    ) -> Optional[SparseVector]:
        """Product of two quotient basis classes, or None beyond the cap."""
        mu = mdeg_add(mu1, mu2)
        if mdeg_total(mu) > self.degree_cap:
            return None
        key = (mu1, q1, mu2, q2)
        got = self._mul.get(key)
        if got is None:
            m1 = self.component(mu1).quotient_monomials[q1]
            m2 = self.component(mu2).quotient_monomials[q2]
            target = self.component(mu)
            got = target.normal_forms[target.index[node(m1, m2)]]
            self._mul[key] = got
        return got

    def multiply_vectors(
        self, mu1, v1: SparseVector, mu2, v2: SparseVector
    ) -> SparseVector:
        f = self.field
        acc: dict[int, object] = {}
        for q1, c1 in v1.entries:
            for q2, c2 in v2.entries:
                w = self.multiply_classes(mu1, q1, mu2, q2)
                if w:
                    _accumulate(f, acc, w, f.mul(c1, c2))
        return SparseVector.from_dict(acc)

    def bracket_vectors(self, mu1, v1, mu2, v2) -> SparseVector:
        f = self.field
        acc: dict[int, object] = {}
        for q1, c1 in v1.entries:
            for q2, c2 in v2.entries:
                c = f.mul(c1, c2)
                w = self.multiply_classes(mu1, q1, mu2, q2)
                if w:
                    _accumulate(f, acc, w, c)
                w = self.multiply_classes(mu2, q2, mu1, q1)
                if w:
                    _accumulate(f, acc, w, f.neg(c))
        return SparseVector.from_dict(acc)

    def associator_vectors(self, mu1, v1, mu2, v2, mu3, v3) -> SparseVector:
        mu12 = mdeg_add(mu1, mu2)
        mu23 = mdeg_add(mu2, mu3)
        left = self.multiply_vectors(mu12, self.multiply_vectors(mu1, v1, mu2, v2), mu3, v3)
        right = self.multiply_vectors(mu1, v1, mu23, self.multiply_vectors(mu2, v2, mu3, v3))
        f = self.field
        acc = dict(left.entries)
        _accumulate(f, acc, right, f.neg(f.one))
        return SparseVector.from_dict(acc)

    # -- span operations -------------------------------------------------------

    def product_space(self, U: GradedSubspace, V: GradedSubspace) -> GradedSubspace:
        self._same(U)
        self._same(V)
        rows: dict[tuple, list] = {}
        for mu1, b1 in U.parts.items():
            for mu2, b2 in V.parts.items():
                mu = mdeg_add(mu1, mu2)
                if mdeg_total(mu) > self.degree_cap:
                    continue
                bucket = rows.setdefault(mu, [])
                for v1 in b1.rows:
                    for v2 in b2.rows:
                        w = self.multiply_vectors(mu1, v1, mu2, v2)
                        if w:
                            bucket.append(w)
        return self.span(rows)

    def bracket_space(self, U: GradedSubspace, V: GradedSubspace) -> GradedSubspace:
        self._same(U)
        self._same(V)
        rows: dict[tuple, list] = {}
        for mu1, b1 in U.parts.items():
            for mu2, b2 in V.parts.items():
                mu = mdeg_add(mu1, mu2)
                if mdeg_total(mu) > self.degree_cap:
                    continue
                bucket = rows.setdefault(mu, [])
                for v1 in b1.rows:
                    for v2 in b2.rows:
                        w = self.bracket_vectors(mu1, v1, mu2, v2)
                        if w:
                            bucket.append(w)
        return self.span(rows)

    def associator_space(
        self, U: GradedSubspace, V: GradedSubspace, W: GradedSubspace
    ) -> GradedSubspace:
        self._same(U)
        self._same(V)
        self._same(W)
        rows: dict[tuple, list] = {}
        for mu1, b1 in U.parts.items():
            for mu2, b2 in V.parts.items():
                if mdeg_total(mu1) + mdeg_total(mu2) >= self.degree_cap:
                    continue
                for mu3, b3 in W.parts.items():
                    mu = mdeg_add(mdeg_add(mu1, mu2), mu3)
                    if mdeg_total(mu) > self.degree_cap:
                        continue
                    bucket = rows.setdefault(mu, [])
                    for v1 in b1.rows:
                        for v2 in b2.rows:
                            for v3 in b3.rows:
                                w = self.associator_vectors(mu1, v1, mu2, v2, mu3, v3)
                                if w:
                                    bucket.append(w)
        return self.span(rows)

    def sum(self, U: GradedSubspace, V: GradedSubspace) -> GradedSubspace:
        self._same(U)
        self._same(V)
        parts = {}
        for mu in sorted(set(U.parts) | set(V.parts), key=_mu_order):
            a, b = U.parts.get(mu), V.parts.get(mu)
            if a is None:
                parts[mu] = b
            elif b is None:
                parts[mu] = a
            else:
                parts[mu] = _sum_bases(a, b)
        return GradedSubspace(self, parts)

    def power(self, U: GradedSubspace, m: int) -> GradedSubspace:
        """U^m = sum of U^i * U^(m-i); products of m factors, all bracketings."""
        self._same(U)
        if m < 1:
            raise InputError("power exponent must be at least 1")
        powers = [None, U]
        for n in range(2, m + 1):
            acc = self.zero()
            for i in range(1, n):
                acc = self.sum(acc, self.product_space(powers[i], powers[n - i]))
            powers.append(acc)
        return powers[m]

    def ideal_closure(self, U: GradedSubspace) -> GradedSubspace:
        """Least fixed point of W -> W + full*W + W*full.

        Multiplies by every basis class of every degree, not only by
        generators; one-sided closures are not enough without
        associativity. Terminates because graded dimensions are finite
        and monotone under the cap.
        """
        self._same(U)
        full = self.full()
        cur = U
        while True:
            grown = self.sum(
                cur, self.sum(self.product_space(full, cur), self.product_space(cur, full))
            )
            if grown == cur:
                return cur
            cur = grown

    def commutator_ideal(self, U: GradedSubspace, V: GradedSubspace) -> GradedSubspace:
        return self.ideal_closure(self.bracket_space(U, V))

    # -- canonical chains ------------------------------------------------------

    def h_term(self, i: int) -> GradedSubspace:
        """Lower central chain: H_1 = full, H_{i+1} = <[H_i, full]>."""
        if i < 1:
            raise InputError("chain index must be at least 1")
        while len(self._h) <= i:
            n = len(self._h)
            if n == 1:
                term = self.full()
            else:
                term = self.ideal_closure(self.bracket_space(self._h[n - 1], self.full()))
            self._h.append(term)
        return self._h[i]

    def a_term(self, i: int) -> GradedSubspace:
        """Lie powers: A_[1] = full, A_[i+1] = [full, A_[i]] (not ideals)."""
        if i < 1:
            raise InputError("chain index must be at least 1")
        while len(self._a) <= i:
            n = len(self._a)
            if n == 1:
                term = self.full()
            else:
                term = self.bracket_space(self.full(), self._a[n - 1])
            self._a.append(term)
        return self._a[i]

    def a_closed(self, i: int) -> GradedSubspace:
        """Ideal closure of the i-th Lie power, memoized."""
        got = self._a_closed.get(i)
        if got is None:
            got = self.ideal_closure(self.a_term(i))
            self._a_closed[i] = got
        return got

    # -- inclusion checking ------------------------------------------------------

    def check_inclusion(
        self, U: GradedSubspace, V: GradedSubspace, label: str
    ) -> InclusionVerdict:
        """Containment per multidegree; on failure reports the first
        violating multidegree and basis vector in canonical order."""
        self._same(U)
        self._same(V)
        for mu, basis in U.parts.items():
            target = V.parts.get(mu)
            for row in basis.rows:
                if target is None:
                    inside, residual = False, row
                else:
                    got = member(target, row)
                    inside, residual = got.inside, got.residual
                if not inside:
                    comp = self.component(mu)
                    witness = {
                        "multidegree": format_multidegree(mu),
                        "element": comp.render_coords(row),
                        "residual": comp.render_coords(residual),
                    }
                    return InclusionVerdict(label, False, witness)
        return InclusionVerdict(label, True, None)

    def check_equality(
        self, U: GradedSubspace, V: GradedSubspace, left: str, right: str
    ) -> list[InclusionVerdict]:
        return [
            self.check_inclusion(U, V, f"{left} <= {right}"),
            self.check_inclusion(V, U, f"{right} <= {left}"),
        ]

    def __repr__(self) -> str:
        return (
            f"AlgebraSlice({self.variety.name}/{self.field.name}, "
            f"k={self.k}, D={self.degree_cap})"
        )


# ---------------------------------------------------------------------------
# chain reports


class ChainReport:
    """A computed chain with its dimension table and class data."""

    __slots__ = ("slice", "kind", "terms")

    def __init__(self, slice_: AlgebraSlice, kind: str, terms: list[GradedSubspace]):
        self.slice = slice_
        self.kind = kind
        self.terms = terms

    def vanishing_index(self) -> Optional[int]:
        for i, t in enumerate(self.terms, start=1):
            if t.is_zero():
                return i
        return None

    def stabilized_at(self) -> Optional[int]:
        for i in range(1, len(self.terms)):
            if self.terms[i - 1] == self.terms[i]:
                return i
        return None

    def raw_descent(self) -> list[InclusionVerdict]:
        s = self.slice
        return [
            s.check_inclusion(self.terms[i], self.terms[i - 1], f"term_{i + 1} <= term_{i}")
            for i in range(1, len(self.terms))
        ]

    def closed_descent(self) -> list[InclusionVerdict]:
        s = self.slice
        closed = [s.ideal_closure(t) for t in self.terms]
        return [
            s.check_inclusion(
                closed[i], closed[i - 1], f"<term_{i + 1}> <= <term_{i}>"
            )
            for i in range(1, len(closed))
        ]

    def to_doc(self) -> dict:
        s = self.slice
        vanish = self.vanishing_index()
        return {
            "chain": self.kind,
            "variety": s.variety.name,
            "field": s.field.name,
            "generators": s.k,
            "degree_cap": s.degree_cap,
            "terms": [
                {
                    "index": i,
                    "total_dim": t.total_dim(),
                    "dims": [{"multidegree": m, "dim": d} for m, d in t.dims()],
                }
                for i, t in enumerate(self.terms, start=1)
            ],
            "vanishing_index": vanish,
            "class": vanish - 1 if vanish is not None else None,
            "stabilized_at": self.stabilized_at(),
        }


def lower_central_chain(slice_: AlgebraSlice, n: int) -> ChainReport:
    if n < 1:
        raise InputError("chain length must be at least 1")
    return ChainReport(slice_, "lower-central", [slice_.h_term(i) for i in range(1, n + 1)])


def lie_power_series(slice_: AlgebraSlice, n: int) -> ChainReport:
    if n < 1:
        raise InputError("chain length must be at least 1")
    return ChainReport(slice_, "lie-powers", [slice_.a_term(i) for i in range(1, n + 1)])


# ---------------------------------------------------------------------------
# named structural checks


class TheoremReport:
    __slots__ = ("slice", "theorem", "params", "claims", "status", "note")

    def __init__(self, slice_, theorem, params, claims, status, note=None):
        self.slice = slice_
        self.theorem = theorem
        self.params = params
        self.claims = claims
        self.status = status
        self.note = note

    def to_doc(self) -> dict:
        s = self.slice
        return {
            "theorem": self.theorem,
            "variety": s.variety.name,
            "field": s.field.name,
            "generators": s.k,
            "degree_cap": s.degree_cap,
            "params": self.params,
            "claims": self.claims,
            "status": self.status,
            "note": self.note,
        }


def _status_of(claims: list[dict]) -> str:
    return "verified" if all(c["verdict"] == "verified" for c in claims) else "violated"


def _need(params: dict, *names: str) -> list[int]:
    vals = []
    for n in names:
        v = params.get(n)
        if v is None:
            raise InputError(f"check needs parameter {n!r}")
        vals.append(v)
    return vals


def _index_in_cap(s: AlgebraSlice, **named: int) -> None:
    for name, idx in named.items():
        if idx < 1:
            raise InputError(f"parameter {name}={idx} must be at least 1")
        if idx > s.degree_cap:
            raise InputError(
                f"parameter {name}={idx} references chain index beyond degree cap {s.degree_cap}"
            )


def _check_com_id(s: AlgebraSlice, params: dict) -> tuple[list[dict], str, Optional[str]]:
    cases = [("full", s.full())]
    i = params.get("i")
    if i is not None:
        _index_in_cap(s, i=i)
        _index_in_cap(s, **{"i+1": i + 1})
        cases.append((f"A[{i}]", s.a_term(i)))
    claims = []
    for blabel, B in cases:
        br = s.bracket_space(s.full(), B)
        lhs = s.ideal_closure(br)
        rhs = s.sum(br, s.product_space(s.full(), br))
        g = f"[full,{blabel}]"
        claims += [
            v.to_doc() for v in s.check_equality(lhs, rhs, f"<{g}>", f"{g} + full*{g}")
        ]
    return claims, _status_of(claims), None


def _check_circ_pro(s, params):
    p, q = _need(params, "p", "q")
    _index_in_cap(s, p=p, q=q, **{"p+q": p + q})
    verdict = s.check_inclusion(
        s.commutator_ideal(s.h_term(p), s.h_term(q)),
        s.h_term(p + q),
        f"H_{p} o H_{q} <= H_{p + q}",
    )
    claims = [verdict.to_doc()]
    return claims, _status_of(claims), None


def _check_th_pro(s, params):
    claims = []
    p, q, m = params.get("p"), params.get("q"), params.get("m")
    if p is None and q is None and m is None:
        raise InputError("check needs p and q, or m")
    if (p is None) != (q is None):
        raise InputError("parameters p and q come together")
    if p is not None:
        _index_in_cap(s, p=p, q=q, **{"p+q-1": p + q - 1})
        claims.append(
            s.check_inclusion(
                s.product_space(s.h_term(p), s.h_term(q)),
                s.h_term(p + q - 1),
                f"H_{p}*H_{q} <= H_{p + q - 1}",
            ).to_doc()
        )
    if m is not None:
        _index_in_cap(s, m=m, **{"m+1": m + 1})
        claims.append(
            s.check_inclusion(
                s.power(s.h_term(2), m),
                s.h_term(m + 1),
                f"power(H_2,{m}) <= H_{m + 1}",
            ).to_doc()
        )
    return claims, _status_of(claims), None


def _check_lem_mni1(s, params):
    (i,) = _need(params, "i")
    _index_in_cap(s, i=i, **{"i+1": i + 1})
    verdict = s.check_inclusion(
        s.product_space(s.a_term(2), s.a_term(i)),
        s.a_closed(i + 1),
        f"A[2]*A[{i}] <= <A[{i + 1}]>",
    )
    claims = [verdict.to_doc()]
    return claims, _status_of(claims), None


def _check_prod_com_id(s, params):
    (i,) = _need(params, "i")
    _index_in_cap(s, i=i)
    claims = [
        v.to_doc()
        for v in s.check_equality(s.a_closed(i), s.h_term(i), f"<A[{i}]>", f"H_{i}")
    ]
    return claims, _status_of(claims), None


def _check_lem_ideal(s, params):
    _index_in_cap(s, **{"2": 2})
    full = s.full()
    claims = []
    for blabel, B in (("full", full), ("A[2]", s.a_term(2))):
        br = s.bracket_space(B, full)
        rhs = s.sum(s.product_space(full, br), br)
        claims.append(
            s.check_inclusion(
                s.associator_space(full, B, full),
                rhs,
                f"(full,{blabel},full) <= full*[{blabel},full] + [{blabel},full]",
            ).to_doc()
        )
    for blabel, B in (("full", full), ("A[2]", s.a_term(2))):
        br = s.bracket_space(full, B)
        closed = s.ideal_closure(br)
        g = f"[full,{blabel}]"
        left = s.sum(br, s.product_space(full, br))
        right = s.sum(br, s.product_space(br, full))
        claims += [v.to_doc() for v in s.check_equality(closed, left, f"<{g}>", f"{g} + full*{g}")]
        claims += [v.to_doc() for v in s.check_equality(closed, right, f"<{g}>", f"{g} + {g}*full")]
    return claims, _status_of(claims), None


def _check_lem_ass_ap(s, params):
    p, q = _need(params, "p", "q")
    _index_in_cap(s, p=p, q=q, **{"p+q": p + q})
    hp, hq = s.h_term(p), s.h_term(q)
    target = s.h_term(p + q)
    claims = [
        s.check_inclusion(
            s.product_space(hp, hq), s.h_term(p + q - 1), f"H_{p}*H_{q} <= H_{p + q - 1}"
        ).to_doc(),
        s.check_inclusion(
            s.bracket_space(hp, hq), target, f"[H_{p},H_{q}] <= H_{p + q}"
        ).to_doc(),
        s.check_inclusion(
            s.associator_space(hp, hq, s.full()),
            target,
            f"(H_{p},H_{q},full) <= H_{p + q}",
        ).to_doc(),
    ]
    return claims, _status_of(claims), None


def _check_lem_46(s, params):
    (j,) = _need(params, "j")
    if j % 2 == 0:
        raise InputError("this check is stated for odd j only")
    if s.field.char in (2, 3):
        raise InputError("this check assumes characteristic not 2 or 3")
    _index_in_cap(s, j=j, **{"j+1": j + 1})
    verdict = s.check_inclusion(
        s.bracket_space(s.a_closed(j), s.full()),
        s.a_term(j + 1),
        f"[<A[{j}]>,full] <= A[{j + 1}]",
    )
    claims = [verdict.to_doc()]
    return claims, _status_of(claims), None


def _check_cp_ass(s, params):
    i, j = _need(params, "i", "j")
    if i % 2 == 0 and j % 2 == 0:
        raise InputError("this check is stated for i or j odd")
    if s.field.char in (2, 3):
        raise InputError("this check assumes characteristic not 2 or 3")
    _index_in_cap(s, i=i, j=j, **{"i+j-1": i + j - 1})
    verdict = s.check_inclusion(
        s.product_space(s.a_closed(i), s.a_closed(j)),
        s.a_closed(i + j - 1),
        f"<A[{i}]>*<A[{j}]> <= <A[{i + j - 1}]>",
    )
    claims = [verdict.to_doc()]
    return claims, _status_of(claims), None


def _check_bicom_metabelian(s, params):
    b2 = s.bracket_space(s.full(), s.full())
    verdict = s.check_inclusion(
        s.bracket_space(b2, b2), s.zero(), "[[full,full],[full,full]] == 0"
    )
    claims = [verdict.to_doc()]
    return claims, _status_of(claims), None


def _check_bicom_right_nilpotency(s, params):
    claims = []
    term = s.h_term(2)
    step = 1
    while 1 + step <= s.degree_cap:
        doc = {
            "claim": f"right_power_{step}(H_2) != 0",
            "verdict": "verified" if not term.is_zero() else "violated",
            "witness": None,
            "total_dim": term.total_dim(),
        }
        claims.append(doc)
        step += 1
        if 1 + step > s.degree_cap:
            break
        term = s.product_space(term, s.full())
    note = (
        "nonzero right powers up to the cap rule out right nilpotency "
        "at this cap only; no statement beyond the cap"
    )
    return claims, _status_of(claims), note


def _check_assoc_even_even(s, params):
    _index_in_cap(s, **{"3": 3})
    verdict = s.check_inclusion(
        s.product_space(s.a_closed(2), s.a_closed(2)),
        s.a_closed(3),
        "<A[2]>*<A[2]> <= <A[3]>",
    )
    claims = [verdict.to_doc()]
    if verdict.holds:
        status = "inconclusive"
        note = (
            "no violation up to the cap; exploratory search only, "
            "not a verification of the inclusion"
        )
    else:
        status = "violated"
        note = "explicit violation of the even-even inclusion at this cap"
    return claims, status, note


_THEOREMS: dict[str, Callable] = {
    "com_id": _check_com_id,
    "circ_pro": _check_circ_pro,
    "th_pro": _check_th_pro,
    "lem_mni1": _check_lem_mni1,
    "prod_com_id": _check_prod_com_id,
    "lem_ideal": _check_lem_ideal,
    "lem_ass_ap": _check_lem_ass_ap,
    "lem_46": _check_lem_46,
    "cp_ass": _check_cp_ass,
    "bicom_metabelian": _check_bicom_metabelian,
    "bicom_not_right_nilpotent": _check_bicom_right_nilpotency,
    "assoc_even_even": _check_assoc_even_even,
}

_ALLOWED_PARAMS = {"p", "q", "i", "j", "m"}


def theorem_names() -> tuple[str, ...]:
    return tuple(sorted(_THEOREMS))


def check_theorem(
    slice_: AlgebraSlice, name: str, params: Optional[dict] = None
) -> TheoremReport:
    handler = _THEOREMS.get(name)
    if handler is None:
        raise InputError(
            f"unknown check {name!r}; known: {', '.join(theorem_names())}"
        )
    params = dict(params or {})
    stray = set(params) - _ALLOWED_PARAMS
    if stray:
        raise InputError(f"unknown parameters: {', '.join(sorted(stray))}")
    claims, status, note = handler(slice_, params)
    return TheoremReport(slice_, name, params, claims, status, note)
