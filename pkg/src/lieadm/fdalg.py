"""Finite-dimensional algebras given by structure constants.

The file format is a JSON document:

    { "field": "Q" | {"p": prime},
      "dim": n,
      "products": [ [i, j, k, "num/den"], ... ] }

with 1-based basis indices, e_i * e_j = sum_k c * e_k over the listed
entries, everything omitted being zero, and coefficients written as
integer or fraction text. The audit computes variety memberships with
witnesses, both canonical chains, and the nilpotency index of the
commutator ideal, then cross-checks the structural facts the chains are
expected to satisfy for members of the covered varieties.
"""

from __future__ import annotations

import itertools
import json
from typing import Optional

from .errors import FieldError, SchemaError
from .linalg import EchelonBasis, Field, GF, QQ, identity_basis, member, rref, sum_bases
from .terms import Monomial
from .variety import VarietySpec, builtin_variety, variety_names

_COVERED = ("assosymmetric", "bicommutative", "novikov")
_EQUIVALENCE = ("bicommutative", "novikov")


def _render_fd(field: Field, entries) -> str:
    """Linear combination of basis vectors as text, e.g. 2*e3 - e1."""
    chunks = []
    for k, c in sorted(entries):
        text = field.render(c)
        negative = text.startswith("-")
        mag = text[1:] if negative else text
        body = f"e{k + 1}" if mag == "1" else f"{mag}*e{k + 1}"
        if not chunks:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f" - {body}" if negative else f" + {body}")
    return "".join(chunks) if chunks else "0"


class FiniteDimAlgebra:
    """Structure constants over an exact field, stored sparsely."""

    __slots__ = ("field", "dim", "products")

    def __init__(self, field: Field, dim: int, products: dict):
        self.field = field
        self.dim = dim
        # products: (i, j) 0-based -> tuple of (k, coefficient), k sorted
        self.products = products

    # -- schema ----------------------------------------------------------------

    @classmethod
    def from_doc(cls, doc) -> "FiniteDimAlgebra":
        if not isinstance(doc, dict):
            raise SchemaError("algebra document must be a JSON object")
        unknown = set(doc) - {"field", "dim", "products"}
        if unknown:
            raise SchemaError(f"unknown keys: {', '.join(sorted(unknown))}")
        for key in ("field", "dim", "products"):
            if key not in doc:
                raise SchemaError(f"missing key {key!r}")

        fspec = doc["field"]
        if fspec == "Q":
            field = QQ
        elif isinstance(fspec, dict) and set(fspec) == {"p"} and isinstance(fspec["p"], int):
            try:
                field = GF(fspec["p"])
            except FieldError as err:
                raise SchemaError(str(err)) from None
        else:
            raise SchemaError('field must be "Q" or {"p": prime}')

        n = doc["dim"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError("dim must be a positive integer")

        rows = doc["products"]
        if not isinstance(rows, list):
            raise SchemaError("products must be a list")
        table: dict = {}
        seen = set()
        for pos, entry in enumerate(rows):
            if not isinstance(entry, list) or len(entry) != 4:
                raise SchemaError(f"products[{pos}] must be [i, j, k, coefficient]")
            i, j, k, text = entry
            for label, idx in (("i", i), ("j", j), ("k", k)):
                if not isinstance(idx, int) or isinstance(idx, bool) or not 1 <= idx <= n:
                    raise SchemaError(
                        f"products[{pos}]: index {label}={idx!r} outside 1..{n}"
                    )
            if (i, j, k) in seen:
                raise SchemaError(f"products[{pos}]: duplicate entry for ({i},{j},{k})")
            seen.add((i, j, k))
            if isinstance(text, int) and not isinstance(text, bool):
                text = str(text)
            if not isinstance(text, str):
                raise SchemaError(f"products[{pos}]: coefficient must be text")
            try:
                c = field.parse(text)
            except Exception as err:
                raise SchemaError(f"products[{pos}]: bad coefficient {text!r}: {err}") from None
            if c:
                table.setdefault((i - 1, j - 1), []).append((k - 1, c))
        products = {
            key: tuple(sorted(vals)) for key, vals in table.items()
        }
        return cls(field, n, products)

    @classmethod
    def load(cls, path) -> "FiniteDimAlgebra":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as err:
            raise SchemaError(f"cannot read {path}: {err}") from None
        except json.JSONDecodeError as err:
            raise SchemaError(f"{path} is not valid JSON: {err}") from None
        return cls.from_doc(doc)

    def to_doc(self) -> dict:
        fspec = "Q" if self.field.char == 0 else {"p": self.field.char}
        rows = []
        for (i, j), vals in self.products.items():
            for k, c in vals:
                rows.append([i + 1, j + 1, k + 1, self.field.render(c)])
        rows.sort(key=lambda r: (r[0], r[1], r[2]))
        return {"field": fspec, "dim": self.dim, "products": rows}

    # -- arithmetic on sparse e-coordinate dicts ---------------------------------

    def multiply(self, u: dict, v: dict) -> dict:
        f = self.field
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = self.products.get((i, j))
                if not prod:
                    continue
                ab = f.mul(a, b)
                for k, c in prod:
                    t = f.add(out.get(k, 0), f.mul(ab, c))
                    if t:
                        out[k] = t
                    elif k in out:
                        del out[k]
        return out

    def bracket(self, u: dict, v: dict) -> dict:
        f = self.field
        out = self.multiply(u, v)
        for k, c in self.multiply(v, u).items():
            t = f.sub(out.get(k, 0), c)
            if t:
                out[k] = t
            elif k in out:
                del out[k]
        return out

    def eval_monomial(self, m: Monomial, args: tuple[int, ...]) -> dict:
        if m.gen is not None:
            return {args[m.gen]: self.field.one}
        return self.multiply(
            self.eval_monomial(m.left, args), self.eval_monomial(m.right, args)
        )

    def relabeled(self, perm: tuple[int, ...]) -> "FiniteDimAlgebra":
        """Same algebra with basis vector i renamed to perm[i] (0-based)."""
        products = {}
        for (i, j), vals in self.products.items():
            products[(perm[i], perm[j])] = tuple(
                sorted((perm[k], c) for k, c in vals)
            )
        return FiniteDimAlgebra(self.field, self.dim, products)

    def __repr__(self) -> str:
        return f"FiniteDimAlgebra({self.field.name}, dim={self.dim})"


# ---------------------------------------------------------------------------
# membership


class MembershipVerdict:
    __slots__ = ("member", "variety", "witness")

    def __init__(self, member: bool, variety: str, witness: Optional[dict]):
        self.member = member
        self.variety = variety
        self.witness = witness

    def to_doc(self) -> dict:
        return {"member": self.member, "witness": self.witness}


def check_membership(alg: FiniteDimAlgebra, variety: VarietySpec) -> MembershipVerdict:
    """Evaluate every defining identity on every basis tuple.

    Multilinearity makes basis tuples sufficient; the first failing
    (identity, tuple) in order is the witness.
    """
    f = alg.field
    for ident in variety.identities:
        template = ident.template(f)
        nvars = len(ident.variables)
        for combo in itertools.product(range(alg.dim), repeat=nvars):
            acc: dict = {}
            for mono, coeff in template.terms.items():
                for k, c in alg.eval_monomial(mono, combo).items():
                    t = f.add(acc.get(k, 0), f.mul(coeff, c))
                    if t:
                        acc[k] = t
                    elif k in acc:
                        del acc[k]
            if acc:
                witness = {
                    "identity": ident.name,
                    "arguments": {
                        name: f"e{combo[pos] + 1}"
                        for pos, name in enumerate(ident.variables)
                    },
                    "residual": _render_fd(f, acc.items()),
                }
                return MembershipVerdict(False, variety.name, witness)
    return MembershipVerdict(True, variety.name, None)


# ---------------------------------------------------------------------------
# chains in e-coordinates


def _span(field: Field, n: int, vectors: list[dict]) -> EchelonBasis:
    return rref(field, n, vectors)


def _basis_dicts(basis: EchelonBasis) -> list[dict]:
    return [dict(row.entries) for row in basis.rows]


def _unit(field: Field, r: int) -> dict:
    return {r: field.one}


def ideal_closure_fd(alg: FiniteDimAlgebra, basis: EchelonBasis) -> EchelonBasis:
    """Least subspace containing basis and closed under multiplication by
    the whole algebra on both sides."""
    cur = basis
    while True:
        rows = []
        for w in _basis_dicts(cur):
            for r in range(alg.dim):
                e = _unit(alg.field, r)
                rows.append(alg.multiply(w, e))
                rows.append(alg.multiply(e, w))
        grown = sum_bases(cur, _span(alg.field, alg.dim, rows))
        if grown == cur:
            return cur
        cur = grown


class FdChainReport:
    __slots__ = ("kind", "terms", "truncated")

    def __init__(self, kind: str, terms: list[EchelonBasis], truncated: bool):
        self.kind = kind
        self.terms = terms
        self.truncated = truncated

    def dims(self) -> list[int]:
        return [t.rank for t in self.terms]

    def vanishing_index(self) -> Optional[int]:
        for i, t in enumerate(self.terms, start=1):
            if t.rank == 0:
                return i
        return None

    def reaches_zero(self) -> bool:
        return self.vanishing_index() is not None

    def class_index(self) -> Optional[int]:
        v = self.vanishing_index()
        return v - 1 if v is not None else None

    def to_doc(self) -> dict:
        return {
            "chain": self.kind,
            "dims": self.dims(),
            "vanishing_index": self.vanishing_index(),
            "class": self.class_index(),
            "truncated": self.truncated,
        }


def _iterate_chain(alg: FiniteDimAlgebra, kind: str, step) -> FdChainReport:
    """Shared driver: descend until zero, stabilization, or dim+1 terms.

    Each term is a function of the one before, so stabilization is
    permanent and both stopping rules give determinate answers.
    """
    terms = [identity_basis(alg.field, alg.dim)]
    truncated = False
    while True:
        if terms[-1].rank == 0:
            break
        if len(terms) >= alg.dim + 1:
            truncated = True
            break
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return FdChainReport(kind, terms, truncated)


def lie_series_fd(alg: FiniteDimAlgebra) -> FdChainReport:
    def step(cur: EchelonBasis) -> EchelonBasis:
        rows = []
        for r in range(alg.dim):
            e = _unit(alg.field, r)
            for w in _basis_dicts(cur):
                rows.append(alg.bracket(e, w))
        return _span(alg.field, alg.dim, rows)

    return _iterate_chain(alg, "lie-powers", step)


def lower_central_fd(alg: FiniteDimAlgebra) -> FdChainReport:
    def step(cur: EchelonBasis) -> EchelonBasis:
        rows = []
        for w in _basis_dicts(cur):
            for r in range(alg.dim):
                rows.append(alg.bracket(w, _unit(alg.field, r)))
        return ideal_closure_fd(alg, _span(alg.field, alg.dim, rows))

    return _iterate_chain(alg, "lower-central", step)


def commutator_ideal_nilpotency(alg: FiniteDimAlgebra) -> Optional[int]:
    """Smallest m with (A o A)^m = 0, or None within dim+1 powers."""
    rows = []
    for r in range(alg.dim):
        for t in range(alg.dim):
            rows.append(alg.bracket(_unit(alg.field, r), _unit(alg.field, t)))
    c = ideal_closure_fd(alg, _span(alg.field, alg.dim, rows))
    powers = [None, c]
    for m in range(1, alg.dim + 2):
        if powers[m].rank == 0:
            return m
        rows = []
        for i in range(1, m + 1):
            for u in _basis_dicts(powers[i]):
                for v in _basis_dicts(powers[m + 1 - i]):
                    rows.append(alg.multiply(u, v))
        powers.append(_span(alg.field, alg.dim, rows))
    return None


# ---------------------------------------------------------------------------
# audit


class AuditReport:
    __slots__ = (
        "alg",
        "memberships",
        "lie",
        "lower",
        "commutator_index",
        "checks",
        "status",
    )

    def __init__(self, alg, memberships, lie, lower, commutator_index, checks):
        self.alg = alg
        self.memberships = memberships
        self.lie = lie
        self.lower = lower
        self.commutator_index = commutator_index
        self.checks = checks
        self.status = "PASS" if all(c["status"] != "FAIL" for c in checks) else "FAIL"

    def to_doc(self) -> dict:
        return {
            "field": self.alg.field.name,
            "dim": self.alg.dim,
            "memberships": {
                name: v.to_doc() for name, v in self.memberships.items()
            },
            "lie_powers": self.lie.to_doc(),
            "lower_central": self.lower.to_doc(),
            "commutator_ideal_index": self.commutator_index,
            "checks": self.checks,
            "status": self.status,
        }


def audit(alg: FiniteDimAlgebra) -> AuditReport:
    memberships = {
        name: check_membership(alg, builtin_variety(name)) for name in variety_names()
    }
    lie = lie_series_fd(alg)
    lower = lower_central_fd(alg)
    index = commutator_ideal_nilpotency(alg)

    checks = []

    in_equiv = [n for n in _EQUIVALENCE if memberships[n].member]
    if in_equiv:
        ok = lie.reaches_zero() == lower.reaches_zero()
        checks.append(
            {
                "name": "lie-nilpotent-iff-finite-class",
                "status": "PASS" if ok else "FAIL",
                "detail": (
                    f"member of {'/'.join(in_equiv)}: lie nilpotent = "
                    f"{lie.reaches_zero()}, finite class = {lower.reaches_zero()}"
                ),
            }
        )
    else:
        checks.append(
            {
                "name": "lie-nilpotent-iff-finite-class",
                "status": "not-asserted",
                "detail": "not a member of a variety with the equivalence",
            }
        )

    covered = [n for n in _COVERED if memberships[n].member]
    cls = lower.class_index()
    if covered and cls is not None:
        ok = index is not None and index <= cls
        checks.append(
            {
                "name": "commutator-ideal-index-at-most-class",
                "status": "PASS" if ok else "FAIL",
                "detail": f"index = {index}, class = {cls}",
            }
        )
    else:
        checks.append(
            {
                "name": "commutator-ideal-index-at-most-class",
                "status": "not-asserted",
                "detail": (
                    "class not finite within the cutoff"
                    if covered
                    else "not a member of a covered variety"
                ),
            }
        )

    return AuditReport(alg, memberships, lie, lower, index, checks)


# ---------------------------------------------------------------------------
# corpus generation

_PATTERNS = (
    # (weights,) tuples; a product slot (i, j) -> k exists when w_k = w_i + w_j
    (1, 1, 2),
    (1, 1, 2, 2),
    (1, 1, 2, 3),
    (1, 1, 2, 2, 3),
    (1, 1, 1, 2),
)

_COEFF_POOL = (0, 0, 0, 1, -1, 2, -2)


def _pattern_slots(weights: tuple[int, ...]) -> list[tuple[int, int, int]]:
    n = len(weights)
    return [
        (i, j, k)
        for i in range(n)
        for j in range(n)
        for k in range(n)
        if weights[k] == weights[i] + weights[j]
    ]


def _random_weighted(rng, weights: tuple[int, ...], top_weight_zero: bool) -> FiniteDimAlgebra:
    table: dict = {}
    top = max(weights)
    for i, j, k in _pattern_slots(weights):
        if top_weight_zero and weights[k] == top and top > 2:
            continue
        c = rng.choice(_COEFF_POOL)
        if c:
            table.setdefault((i, j), []).append((k, QQ.from_int(c)))
    products = {key: tuple(sorted(vals)) for key, vals in table.items()}
    return FiniteDimAlgebra(QQ, len(weights), products)


def generate_nilpotent_corpus(seed: int, per_variety: int = 25) -> dict:
    """Rejection-sample weight-graded algebras until the quota of members
    is met for each target variety. Weights make every instance nilpotent
    (products strictly increase weight), so the audit facts are all
    decidable; the seed makes the corpus reproducible."""
    import random

    rng = random.Random(seed)
    out = []
    for target in ("novikov", "bicommutative"):
        spec = builtin_variety(target)
        found = 0
        pattern_cycle = itertools.cycle(_PATTERNS)
        while found < per_variety:
            weights = next(pattern_cycle)
            alg = None
            for attempt in range(400):
                cand = _random_weighted(rng, weights, top_weight_zero=False)
                if cand.products and check_membership(cand, spec).member:
                    alg = cand
                    break
            if alg is None:
                # guaranteed member: all triple products vanish
                while True:
                    cand = _random_weighted(rng, weights, top_weight_zero=True)
                    if cand.products:
                        alg = cand
                        break
            out.append({"variety": target, "algebra": alg.to_doc()})
            found += 1
    return {"schema": 1, "seed": seed, "algebras": out}
