"""Relatively free algebras, one multidegree component at a time.

A variety is a finite list of multilinear defining identities. The
relation space of the variety at a multidegree is the span of every
consequence plug(C, substitute(I, t1..tm)): identity I, monomials t_i,
one-hole context C, such that the result lands in that multidegree. The
component quotients the span out of the free magma component; non-pivot
monomials of the reduced relation basis serve as the quotient basis, so
normal forms read off directly.

Components are memoized per (variety, field, generators, multidegree) and
immutable once built; distinct components may be built concurrently.
"""

from __future__ import annotations

import itertools
import threading
from typing import Iterable, Optional

from .errors import InputError, ResourceError, UnsupportedVarietyError
from .exprs import Identity, builtin
from .linalg import EchelonBasis, Field, SparseVector, rref
from .terms import (
    Monomial,
    Polynomial,
    enumerate_contexts,
    enumerate_monomials,
    expected_count,
    format_multidegree,
    mdeg_total,
    multidegree,
    plug,
    render_polynomial,
    substitute,
)


class VarietySpec:
    """A named variety given by multilinear defining identities."""

    __slots__ = ("name", "identities")

    def __init__(self, name: str, identities: Iterable[Identity]):
        self.name = name
        self.identities = tuple(identities)

    def key(self) -> tuple:
        return (self.name,) + tuple(i.source for i in self.identities)

    def __repr__(self) -> str:
        return f"VarietySpec({self.name})"


_BUILTIN_VARIETIES = {
    "magma": (),
    "associative": ("assoc",),
    "novikov": ("rightcom", "leftsym"),
    "bicommutative": ("leftcom", "rightcom"),
    "assosymmetric": ("leftsym", "rightsym"),
}


def builtin_variety(name: str) -> VarietySpec:
    try:
        idents = _BUILTIN_VARIETIES[name]
    except KeyError:
        raise InputError(
            f"unknown variety {name!r}; known: {', '.join(sorted(_BUILTIN_VARIETIES))}"
        ) from None
    return VarietySpec(name, tuple(builtin(n) for n in idents))


def variety_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTIN_VARIETIES))


def custom_variety(sources: Iterable[str], name: str = "custom") -> VarietySpec:
    idents = tuple(Identity(f"{name}_{i + 1}", s) for i, s in enumerate(sources))
    return VarietySpec(name, idents)


# ---------------------------------------------------------------------------
# consequence enumeration


def _compositions(mu: tuple[int, ...], m: int) -> list[tuple[tuple[int, ...], ...]]:
    """Ordered m-tuples of nonzero multidegrees summing to mu."""
    out = []

    def rec(rest, parts):
        slots = m - len(parts)
        if slots == 0:
            if not any(rest):
                out.append(tuple(parts))
            return
        if mdeg_total(rest) < slots:
            return
        for a in _nonzero_submultidegrees(rest):
            if mdeg_total(rest) - mdeg_total(a) >= slots - 1:
                parts.append(a)
                rec(tuple(x - y for x, y in zip(rest, a)), parts)
                parts.pop()

    rec(mu, [])
    return out


def _nonzero_submultidegrees(mu: tuple[int, ...]) -> list[tuple[int, ...]]:
    axes = [range(c + 1) for c in mu]
    return [t for t in itertools.product(*axes) if any(t)]


def relation_rows(
    variety: VarietySpec, field: Field, k: int, mu: tuple[int, ...]
) -> list[dict[int, object]]:
    """Deduplicated relation rows at mu, as index->coefficient dicts over
    the canonical monomial list of the component."""
    monos = enumerate_monomials(k, mu)
    index = {m: i for i, m in enumerate(monos)}
    inv = field.inv
    mul = field.mul

    seen = set()
    rows: list[dict[int, object]] = []
    for ident in variety.identities:
        template = ident.template(field)
        if not ident.multilinear(field):
            raise UnsupportedVarietyError(
                f"identity {ident.name!r} is not multilinear; "
                "only multilinear defining identities are supported"
            )
        if not template.terms:
            continue
        m = len(ident.variables)
        for hole_mu in _nonzero_submultidegrees(mu):
            if mdeg_total(hole_mu) < m:
                continue
            contexts = enumerate_contexts(k, hole_mu, mu)
            for parts in _compositions(hole_mu, m):
                pools = [enumerate_monomials(k, p) for p in parts]
                for ts in itertools.product(*pools):
                    assignment = dict(enumerate(ts))
                    s = substitute(template, assignment)
                    if not s.terms:
                        continue
                    for ctx in contexts:
                        plugged = plug(ctx, s)
                        if not plugged.terms:
                            continue
                        row = {index[mono]: c for mono, c in plugged.terms.items()}
                        lead = min(row)
                        ic = inv(row[lead])
                        if ic != field.one:
                            row = {j: mul(c, ic) for j, c in row.items()}
                        fingerprint = tuple(sorted(row.items()))
                        if fingerprint not in seen:
                            seen.add(fingerprint)
                            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# components


class FreeAlgebraComponent:
    """One multidegree slice of the relatively free algebra."""

    __slots__ = (
        "variety",
        "field",
        "k",
        "mu",
        "monomials",
        "index",
        "relations",
        "quotient_monomials",
        "quotient_dim",
        "normal_forms",
    )

    def __init__(self, variety: VarietySpec, field: Field, k: int, mu: tuple[int, ...]):
        self.variety = variety
        self.field = field
        self.k = k
        self.mu = mu
        self.monomials = enumerate_monomials(k, mu)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        rows = relation_rows(variety, field, k, mu)
        self.relations = rref(field, len(self.monomials), rows)

        pivots = set(self.relations.pivots)
        quotient_ids = [i for i in range(len(self.monomials)) if i not in pivots]
        self.quotient_monomials = tuple(self.monomials[i] for i in quotient_ids)
        self.quotient_dim = len(quotient_ids)
        qpos = {mono_id: q for q, mono_id in enumerate(quotient_ids)}

        nf: list[SparseVector] = [None] * len(self.monomials)
        for mono_id in quotient_ids:
            nf[mono_id] = SparseVector(((qpos[mono_id], field.one),))
        neg = field.neg
        for pivot, row in zip(self.relations.pivots, self.relations.rows):
            nf[pivot] = SparseVector(
                (qpos[j], neg(c)) for j, c in row.entries if j != pivot
            )
        self.normal_forms = tuple(nf)

    # -- quotient arithmetic -------------------------------------------------

    def normal_form(self, p: Polynomial) -> SparseVector:
        """Quotient coordinates of p; the zero vector iff p lies in the
        relation space."""
        if p.field != self.field:
            raise InputError("polynomial field does not match component field")
        f = self.field
        acc: dict[int, object] = {}
        for mono, c in p.terms.items():
            mono_id = self.index.get(mono)
            if mono_id is None:
                raise InputError(
                    f"monomial of multidegree {multidegree(mono, self.k) if max(mono.leaves) < self.k else '?'} "
                    f"does not belong to component {self.mu}"
                )
            for q, w in self.normal_forms[mono_id].entries:
                u = f.add(acc.get(q, 0), f.mul(c, w))
                if u:
                    acc[q] = u
                elif q in acc:
                    del acc[q]
        return SparseVector.from_dict(acc)

    def coords_to_polynomial(self, vec: SparseVector) -> Polynomial:
        """The canonical representative with the given quotient coordinates."""
        return Polynomial(
            self.field, {self.quotient_monomials[q]: c for q, c in vec.entries}
        )

    def render_coords(self, vec: SparseVector) -> str:
        return render_polynomial(self.coords_to_polynomial(vec), key_gens=self.k)

    def __repr__(self) -> str:
        return (
            f"FreeAlgebraComponent({self.variety.name}/{self.field.name}, k={self.k}, "
            f"mu={self.mu}, dim={self.quotient_dim}/{len(self.monomials)})"
        )


_component_cache: dict[tuple, FreeAlgebraComponent] = {}
_cache_lock = threading.Lock()


def component_basis(
    variety: VarietySpec,
    field: Field,
    k: int,
    mu: tuple[int, ...],
    max_monomials: Optional[int] = None,
) -> FreeAlgebraComponent:
    """Memoized component construction."""
    key = (variety.key(), field.char, k, mu)
    comp = _component_cache.get(key)
    if comp is not None:
        return comp
    if max_monomials is not None:
        count = expected_count(mu)
        if count > max_monomials:
            raise ResourceError(
                f"component at {mu} has {count} monomials, over the guard of {max_monomials}"
            )
    comp = FreeAlgebraComponent(variety, field, k, mu)
    with _cache_lock:
        return _component_cache.setdefault(key, comp)


def clear_caches():
    """Drop memoized components (used by determinism tests)."""
    with _cache_lock:
        _component_cache.clear()


def relation_space(
    variety: VarietySpec, field: Field, k: int, mu: tuple[int, ...]
) -> EchelonBasis:
    return component_basis(variety, field, k, mu).relations


# ---------------------------------------------------------------------------
# identity verification


class VerifyVerdict:
    """Outcome of checking one identity against one variety."""

    __slots__ = ("holds", "identity", "variety", "field", "multilinear", "witness")

    def __init__(self, holds, identity, variety, field, multilinear, witness=None):
        self.holds = holds
        self.identity = identity
        self.variety = variety
        self.field = field
        self.multilinear = multilinear
        self.witness = witness

    def to_doc(self) -> dict:
        doc = {
            "identity": self.identity,
            "variety": self.variety,
            "field": self.field,
            "multilinear": self.multilinear,
            "verdict": "holds" if self.holds else "fails",
        }
        doc["witness"] = self.witness
        return doc


def verify_identity(
    variety: VarietySpec,
    field: Field,
    identity: Identity,
    cap: int = 3,
    max_monomials: Optional[int] = None,
    max_substitutions: int = 20000,
) -> VerifyVerdict:
    """Check whether the identity holds in the variety.

    Multilinear identities are decided at their own multidegree: the
    template vanishes in the relatively free algebra iff it lies in the
    relation space at (1,...,1). Anything else is tested by substituting
    every tuple of monomials of degree <= cap, in canonical order, and
    reducing every homogeneous piece of the result.
    """
    template = identity.template(field)
    nvars = len(identity.variables)
    if not template.terms:
        return VerifyVerdict(True, identity.name, variety.name, field.name, True)

    if identity.multilinear(field):
        mu = (1,) * nvars
        comp = component_basis(variety, field, nvars, mu, max_monomials)
        residual = comp.normal_form(template)
        if not residual:
            return VerifyVerdict(True, identity.name, variety.name, field.name, True)
        witness = {
            "assignment": {
                name: f"x{i + 1}" for i, name in enumerate(identity.variables)
            },
            "multidegree": format_multidegree(mu),
            "residual": comp.render_coords(residual),
        }
        return VerifyVerdict(False, identity.name, variety.name, field.name, True, witness)

    # Substitution search for non-multilinear input.
    pool: list[Monomial] = []
    for total in range(1, cap + 1):
        for mu in sorted(itertools.product(range(total + 1), repeat=nvars)):
            if sum(mu) == total:
                pool.extend(enumerate_monomials(nvars, mu))
    pool.sort(key=lambda m: m.sort_key(nvars))
    if len(pool) ** nvars > max_substitutions:
        raise ResourceError(
            f"substitution search needs {len(pool) ** nvars} tuples, "
            f"over the guard of {max_substitutions}; lower the cap"
        )
    for ts in itertools.product(pool, repeat=nvars):
        assignment = dict(enumerate(ts))
        value = substitute(template, assignment)
        by_mu: dict[tuple[int, ...], Polynomial] = {}
        for mono, c in value.terms.items():
            mu = multidegree(mono, nvars)
            piece = by_mu.setdefault(mu, Polynomial(field))
            piece.terms[mono] = c
        for mu in sorted(by_mu, key=lambda t: (mdeg_total(t), t)):
            comp = component_basis(variety, field, nvars, mu, max_monomials)
            residual = comp.normal_form(by_mu[mu])
            if residual:
                witness = {
                    "assignment": {
                        name: render_polynomial(
                            Polynomial.of(field, ts[i]), key_gens=nvars
                        )
                        for i, name in enumerate(identity.variables)
                    },
                    "multidegree": format_multidegree(mu),
                    "residual": comp.render_coords(residual),
                }
                return VerifyVerdict(
                    False, identity.name, variety.name, field.name, False, witness
                )
    return VerifyVerdict(True, identity.name, variety.name, field.name, False)
