"""Milnor K-theory over explicit fields and its bridge to 0-cycles.

Symbols are formal: no canonicalization is applied beyond rewrites that are
valid in every Milnor K-group (dropping an entry equal to 1, sign-tracked
sorting by anticommutativity, and the K_1 product rule).  Over finite fields,
symbols of length >= 2 vanish; callers may take that on the theorem or ask
the K_2 presentation oracle for a constructive confirmation.

The tame symbol at a place pi follows the standard convention: for units u_i,
d{u_1, ..., u_{n-1}, pi} = {ubar_1, ..., ubar_{n-1}} and d kills unit symbols.
The place at infinity uses 1/t as uniformizer, so residues of units are
leading-coefficient ratios.

Conventions interact with the cubical boundary through a dimension-dependent
sign: with the ORIGINAL-model boundary, a graph curve C over the parameter
line satisfies  phi(dC) = (-1)^n * delta(theta(C))  componentwise at finite
places, and the bounded realization of residues satisfies the matching
d(xi) = (-1)^n * psi_tilde(delta([f])).  The verifiers check against the
constant :data:`GRAPH_BOUNDARY_SIGN` exponent convention and report it.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .fields import (
    FieldElement,
    FieldSpec,
    UniPoly,
    WrongField,
    ZeroElement,
    factor_univariate,
    make_field,
    norm_k1_finite,
    standard_extension,
)
from .polyring import INFINITY, RatFunc
from .cycles import (
    ClosedPoint,
    CoordModel,
    DegenerateCurve,
    ParamCurve,
    UnfactorableEntry,
    ZeroCycle,
    curve_boundary,
)

# d(graph boundary) vs tame-symbol total residue differ by (-1)^n, n the
# residue symbol length; see the module docstring.
GRAPH_BOUNDARY_SIGN = -1  # the base case n = 1


class MilnorError(Exception):
    pass


class NotPrimePower(MilnorError):
    pass


class OracleTooLarge(MilnorError):
    pass


class NormNotImplemented(MilnorError):
    pass


class SteinbergPrecondition(MilnorError):
    pass


class IndistinctEntries(MilnorError):
    pass


class FunctionField:
    """The rational function field k(t) over an exact base field."""

    __slots__ = ("base", "var")

    def __init__(self, base: FieldSpec, var: str = "t"):
        self.base = base
        self.var = var

    def __eq__(self, other):
        return isinstance(other, FunctionField) and (self.base, self.var) == (other.base, other.var)

    def __hash__(self):
        return hash(("funfield", self.base, self.var))

    def __repr__(self):
        return f"FunctionField({self.base.to_text()}({self.var}))"

    def to_text(self):
        return f"{self.base.to_text()}({self.var})"


def _entry_text(e) -> str:
    return e.to_text() if isinstance(e, FieldElement) else e.to_text()


def _entry_is_one(e) -> bool:
    if isinstance(e, FieldElement):
        return e == e.spec.one
    return e.num.degree == 0 and e.den.degree == 0 and e.num.coeff(0) == e.spec.one


class MilnorSymbol:
    """{f_1, ..., f_n} with nonzero entries over a field or function field."""

    __slots__ = ("field", "entries")

    def __init__(self, field, entries: Sequence):
        self.field = field
        es = []
        for e in entries:
            if isinstance(field, FunctionField):
                if not isinstance(e, RatFunc) or e.spec != field.base:
                    raise WrongField("entry is not a rational function over the base")
                if not e.num:
                    raise ZeroElement("symbol entries must be nonzero")
            else:
                e = field.element(e)
                if not e:
                    raise ZeroElement("symbol entries must be nonzero")
            es.append(e)
        self.entries = tuple(es)

    @property
    def length(self) -> int:
        return len(self.entries)

    @property
    def has_one_entry(self) -> bool:
        return any(_entry_is_one(e) for e in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, MilnorSymbol)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field if isinstance(self.field, FunctionField) else self.field,
                     self.entries))

    def __repr__(self):
        return "{" + ", ".join(_entry_text(e) for e in self.entries) + "}"


class MilnorElement:
    """Formal Z-combination of symbols; symbols containing an entry 1 vanish."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: Iterable[tuple[int, MilnorSymbol]] | Mapping[MilnorSymbol, int] = ()):
        self.field = field
        acc: dict[MilnorSymbol, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((s, m) for m, s in terms)
        for sym, mult in items:
            if sym.field != field:
                raise WrongField("symbol over the wrong field")
            if sym.has_one_entry:
                continue
            acc[sym] = acc.get(sym, 0) + mult
        self.terms = {s: m for s, m in acc.items() if m}

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def of(cls, field, *entries, mult: int = 1):
        return cls(field, [(mult, MilnorSymbol(field, entries))])

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MilnorElement)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __add__(self, other):
        if self.field != other.field:
            raise WrongField("elements over different fields")
        out = dict(self.terms)
        for s, m in other.terms.items():
            out[s] = out.get(s, 0) + m
        return MilnorElement(self.field, out)

    def __neg__(self):
        return MilnorElement(self.field, {s: -m for s, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "MilnorElement":
        return MilnorElement(self.field, {s: c * m for s, m in self.terms.items()})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: repr(kv[0]))

    def __repr__(self):
        if not self.terms:
            return "MilnorElement(0)"
        return "MilnorElement(" + " + ".join(f"{m}*{s!r}" for s, m in self.items()) + ")"


def k1_value(e: MilnorElement) -> FieldElement:
    """Collapse a K_1 element to the field unit it represents."""
    spec = e.field if isinstance(e.field, FieldSpec) else None
    if spec is None:
        raise MilnorError("K_1 collapse is for symbols over a field")
    acc = spec.one
    for sym, m in e.items():
        if sym.length != 1:
            raise MilnorError("not a K_1 element")
        acc = acc * sym.entries[0] ** m
    return acc


# ---------------------------------------------------------------------------
# Safe symbol reduction
# ---------------------------------------------------------------------------


class SymbolReduction:
    __slots__ = ("result", "theorem_backed", "oracle")

    def __init__(self, result: MilnorElement, theorem_backed: bool = False, oracle=None):
        self.result = result
        self.theorem_backed = theorem_backed
        self.oracle = oracle

    def __repr__(self):
        tag = ", theorem-backed (Steinberg)" if self.theorem_backed else ""
        return f"SymbolReduction({self.result!r}{tag})"


def _sorted_with_sign(entries: tuple) -> tuple[tuple, int]:
    keyed = [( _entry_text(e), i, e) for i, e in enumerate(entries)]
    ordered = sorted(keyed, key=lambda t: (t[0], t[1]))
    perm = [t[1] for t in ordered]
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return tuple(t[2] for t in ordered), (-1) ** inversions


def symbol_reduce(e: MilnorElement, certificate_mode: bool = False) -> SymbolReduction:
    """Apply only universally valid rewrites.

    Entries equal to 1 vanish (construction already drops them); entries are
    sorted with anticommutativity signs so opposite orderings cancel; K_1
    sums collapse to the product.  Over a finite field, symbols of length
    >= 2 are zero: theorem-backed by default, confirmed by the K_2 oracle in
    certificate mode (K_n for n > 2 is spanned by products through K_2).
    """
    field = e.field
    finite = isinstance(field, FieldSpec) and field.is_finite
    out = MilnorElement.zero(field)
    theorem_used = False
    oracle_result = None
    max_len = max((s.length for s in e.terms), default=0)
    if finite and max_len >= 2:
        if certificate_mode:
            oracle_result = k2_presentation_oracle(field.order)
            if not oracle_result.trivial:
                raise MilnorError("oracle found a nontrivial K_2; field table is corrupt")
        else:
            theorem_used = any(s.length >= 2 for s in e.terms)
    ones_collapsed = field.one if isinstance(field, FieldSpec) else None
    k1_acc = ones_collapsed
    k1_seen = False
    for sym, m in e.items():
        if finite and sym.length >= 2:
            continue  # vanishes (Steinberg)
        if sym.length == 1 and isinstance(field, FieldSpec):
            k1_acc = k1_acc * sym.entries[0] ** m
            k1_seen = True
            continue
        sorted_entries, sign = _sorted_with_sign(sym.entries)
        out = out + MilnorElement(field, [(sign * m, MilnorSymbol(field, sorted_entries))])
    if k1_seen and k1_acc != ones_collapsed:
        out = out + MilnorElement.of(field, k1_acc)
    return SymbolReduction(out, theorem_backed=theorem_used, oracle=oracle_result)


# ---------------------------------------------------------------------------
# Valuations, tame symbols, total residue
# ---------------------------------------------------------------------------


class Valuation:
    """A place of k(t): a monic irreducible pi in k[t], or infinity (pi=None)."""

    __slots__ = ("field", "pi")

    def __init__(self, field: FunctionField, pi: UniPoly | None):
        self.field = field
        if pi is not None:
            if pi.spec != field.base:
                raise WrongField("place over the wrong base field")
            if pi.degree < 1 or pi.leading != field.base.one:
                raise ValueError("place must be monic of positive degree")
        self.pi = pi

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    def __eq__(self, other):
        return isinstance(other, Valuation) and self.field == other.field and self.pi == other.pi

    def __hash__(self):
        return hash((self.field, self.pi))

    def __repr__(self):
        return "Valuation(infinity)" if self.pi is None else f"Valuation({self.pi.to_text()})"

    def residue_spec(self) -> FieldSpec:
        base = self.field.base
        if self.pi is None or self.pi.degree == 1:
            return base
        if base.is_extension:
            raise UnfactorableEntry("residue fields over an extension base are not supported")
        return make_field(base.char, [c.value for c in self.pi.coeffs])

    def parameter_class(self) -> FieldElement:
        """The image of t in the residue field."""
        if self.pi is None:
            raise MilnorError("the infinite place has no finite parameter class")
        if self.pi.degree == 1:
            return -self.pi.coeff(0)
        return self.residue_spec().gen_u

    def order_of(self, f: RatFunc) -> int:
        if self.pi is None:
            return f.ord_at_infinity()
        return f.ord_at(self.pi)

    def residue_unit(self, f: RatFunc) -> FieldElement:
        """Residue of the unit part f * uniformizer^(-ord f)."""
        if self.pi is None:
            return f.num.leading / f.den.leading
        m = self.order_of(f)
        num, den = f.num, f.den
        if m > 0:
            num = num // self.pi**m
        elif m < 0:
            den = den // self.pi ** (-m)
        x = self.parameter_class()
        return num.eval(x) / den.eval(x)

    def base_point(self) -> ClosedPoint:
        """The closed point of the affine parameter line at this place."""
        return ClosedPoint(self.residue_spec(), (self.parameter_class(),), ())


def tame_symbol(v: Valuation, s: MilnorElement) -> MilnorElement:
    """The tame residue at v, Z-linearly extended.

    Each entry splits as unit * pi^m; multilinear expansion leaves terms with
    pi in a set S of slots.  All pi's but the last rewrite to -1 (from
    {pi, pi} = {-1, pi}), the surviving pi anticommutes to the last slot, and
    the residue map applies, giving the closed formula
    sum over nonempty S of (prod_{i in S} m_i) * (-1)^(n - max S) *
    {residues with -1 in S minus its maximum, slot max S omitted}.
    """
    field = s.field
    if not isinstance(field, FunctionField):
        raise WrongField("tame symbols act on function-field elements")
    ell = v.residue_spec()
    out = MilnorElement.zero(ell)
    from itertools import combinations

    for sym, mult in s.items():
        n = sym.length
        orders = [v.order_of(f) for f in sym.entries]
        residues = [None] * n
        hot = [i for i in range(n) if orders[i]]
        for i in range(n):
            residues[i] = v.residue_unit(sym.entries[i])
        minus_one = -ell.one
        for size in range(1, len(hot) + 1):
            for S in combinations(hot, size):
                coeff = 1
                for i in S:
                    coeff *= orders[i]
                last = S[-1]
                sign = (-1) ** (n - 1 - last)  # slots 0-indexed; move pi to the end
                entries = []
                for i in range(n):
                    if i == last:
                        continue
                    entries.append(minus_one if i in S else residues[i])
                out = out + MilnorElement(ell, [(mult * coeff * sign, MilnorSymbol(ell, entries))])
    return out


def _entry_places(f: RatFunc) -> list[UniPoly]:
    places = []
    for poly in (f.num, f.den):
        if poly.degree < 1:
            continue
        fac = factor_univariate(poly)
        for part in fac.parts:
            if not part.irreducible:
                raise UnfactorableEntry(
                    f"cannot enumerate places of {poly.to_text()}: "
                    f"unfactored cofactor {part.poly.to_text()}"
                )
            places.append(part.poly)
    return places


def total_delta(s: MilnorElement, include_infinity: bool = True) -> dict[Valuation, MilnorElement]:
    """Tame symbol at every place supporting some entry (plus infinity).

    Places not in the returned map carry residue 0.  Raises UnfactorableEntry
    over Q when an entry has an uncertified high-degree factor.
    """
    field = s.field
    if not isinstance(field, FunctionField):
        raise WrongField("total residue acts on function-field elements")
    seen: dict[tuple, UniPoly] = {}
    for sym in s.terms:
        for f in sym.entries:
            for pi in _entry_places(f):
                seen[(pi.degree, pi.to_text())] = pi
    out: dict[Valuation, MilnorElement] = {}
    for key in sorted(seen):
        v = Valuation(field, seen[key])
        val = tame_symbol(v, s)
        if val:
            out[v] = val
    if include_infinity:
        v = Valuation(field, None)
        val = tame_symbol(v, s)
        if val:
            out[v] = val
    return out


# ---------------------------------------------------------------------------
# K_2 presentation oracle via integer Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (zeros dropped)."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    diag = []
    top = 0
    while top < min(nrows, ncols):
        # find a nonzero pivot
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if not pivot:
            break
        i, j = pivot
        m[top], m[i] = m[i], m[top]
        for r in m:
            r[top], r[j] = r[j], r[top]
        # clear row and column, iterating because remainders reappear
        while True:
            moved = False
            for i in range(top + 1, nrows):
                if m[i][top]:
                    q = m[i][top] // m[top][top]
                    for j in range(top, ncols):
                        m[i][j] -= q * m[top][j]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
                        moved = True
            for j in range(top + 1, ncols):
                if m[top][j]:
                    q = m[top][j] // m[top][top]
                    for i in range(top, nrows):
                        m[i][j] -= q * m[i][top]
                    if m[top][j]:
                        for i in range(top, nrows):
                            m[i][top], m[i][j] = m[i][j], m[i][top]
                        moved = True
            if not moved:
                break
        # divisibility fixup: pivot must divide the rest of the block
        fix = None
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if m[i][j] % m[top][top]:
                    fix = i
                    break
            if fix:
                break
        if fix is not None:
            for j in range(top, ncols):
                m[top][j] += m[fix][j]
            continue
        diag.append(abs(m[top][top]))
        top += 1
    return [d for d in diag if d]


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            d = 0
            while q % p == 0:
                q //= p
                d += 1
            if q != 1:
                raise NotPrimePower("not a prime power")
            return p, d
    raise NotPrimePower("not a prime power")


class K2Presentation:
    __slots__ = ("q", "relation_count", "elementary_divisors")

    def __init__(self, q: int, relation_count: int, elementary_divisors: list[int]):
        self.q = q
        self.relation_count = relation_count
        self.elementary_divisors = elementary_divisors

    @property
    def trivial(self) -> bool:
        return all(d == 1 for d in self.elementary_divisors)

    def __repr__(self):
        inv = self.elementary_divisors or ["free"]
        return f"K2Presentation(q={self.q}, divisors={self.elementary_divisors}, trivial={self.trivial})"

    def to_json(self):
        return {
            "q": self.q,
            "relations": self.relation_count,
            "elementary_divisors": self.elementary_divisors,
            "trivial": self.trivial,
        }


def k2_presentation_oracle(q: int) -> K2Presentation:
    """Brute-force presentation of K_2 of the field with q elements.

    With discrete logs to the stored generator g, bilinearity identifies the
    symbol group with Z/(q-1) generated by {g, g}, and each a outside {0, 1}
    contributes the relation dlog(a) * dlog(1-a).  The Smith normal form of
    the relation column yields the elementary divisors of the quotient.
    """
    if q < 2:
        raise NotPrimePower("q must be at least 2")
    p, d = _prime_power(q)
    if q > 64:
        raise OracleTooLarge("the oracle enumerates units; q is capped at 64")
    spec = make_field(p) if d == 1 else standard_extension(p, d)
    one = spec.one
    rows = [[q - 1]]  # the order of the cyclic carrier
    for a in spec.elements():
        if not a or a == one:
            continue
        rows.append([spec.dlog(a) * spec.dlog(one - a)])
    invariants = smith_normal_form(rows)
    return K2Presentation(q, len(rows) - 1, invariants)


# ---------------------------------------------------------------------------
# The maps between 0-cycles and symbols
# ---------------------------------------------------------------------------


def phi_map(z: ZeroCycle) -> dict[ClosedPoint, MilnorElement]:
    """Send each point to the symbol of its cube coordinates at its base point.

    Points whose coordinates generate an extension of the field of the base
    point are normed down: by the K_1 norm for length 1 over finite fields,
    by the vanishing theorem for longer symbols over finite fields; anything
    else is a typed error.
    """
    out: dict[ClosedPoint, MilnorElement] = {}
    for pt, mult in z.items():
        ell = pt.residue_spec
        coords_in_base = ell.is_extension and all(c.in_base for c in pt.t_coords)
        if coords_in_base:
            base = ell.base
            base_pt = ClosedPoint(base, [c.to_base() for c in pt.t_coords], ())
            if any(not c for c in pt.y_coords):
                raise ZeroElement("cube coordinate 0 cannot enter a symbol")
            sym = MilnorSymbol(ell, pt.y_coords)
            if sym.has_one_entry:
                contrib = MilnorElement.zero(base)
            elif z.n == 0:
                contrib = MilnorElement(base, [(mult * ell.degree, MilnorSymbol(base, ()))])
                out[base_pt] = out.get(base_pt, MilnorElement.zero(base)) + contrib
                continue
            elif z.n == 1:
                contrib = MilnorElement.of(base, norm_k1_finite(pt.y_coords[0]), mult=mult)
            elif ell.is_finite:
                contrib = MilnorElement.zero(base)  # length >= 2 over a finite field
            else:
                raise NormNotImplemented(
                    "norms of symbols of length >= 2 over infinite bases are not implemented"
                )
            out[base_pt] = out.get(base_pt, MilnorElement.zero(base)) + contrib
        else:
            base_pt = pt.base_point()
            contrib = MilnorElement(ell, [(mult, MilnorSymbol(ell, pt.y_coords))])
            out[base_pt] = out.get(base_pt, MilnorElement.zero(ell)) + contrib
    return {k: v for k, v in out.items() if v}


def psi_map(sym: MilnorSymbol, t_coords: Sequence[FieldElement] = (),
            model: CoordModel = CoordModel.ORIGINAL) -> ZeroCycle:
    """The graph point (x; f_1, ..., f_n), or the empty cycle when some f_i = 1."""
    if isinstance(sym.field, FunctionField):
        raise WrongField("psi places field symbols, not function-field ones")
    ell = sym.field
    coords = [ell.embed(c) if c.spec != ell else c for c in t_coords]
    z = ZeroCycle.empty(ell, model, len(coords), sym.length)
    if sym.has_one_entry:
        return z
    return z + ZeroCycle(ell, model, len(coords), sym.length,
                         [(1, ClosedPoint(ell, coords, sym.entries))])


def psi_tilde(e: MilnorElement, model: CoordModel = CoordModel.ORIGINAL,
              t_coords: Sequence[FieldElement] = (), n: int | None = None) -> ZeroCycle:
    """Z-linear extension of psi_map over an element (fixed symbol length)."""
    if isinstance(e.field, FunctionField):
        raise WrongField("psi places field symbols")
    lengths = {s.length for s in e.terms}
    if len(lengths) > 1:
        raise MilnorError("mixed symbol lengths")
    size = lengths.pop() if lengths else (n if n is not None else 0)
    out = ZeroCycle.empty(e.field, model, len(t_coords), size)
    for sym, m in e.items():
        out = out + psi_map(sym, t_coords, model).scale(m)
    return out


def theta_map(C: ParamCurve) -> MilnorElement:
    """The symbol of the component functions of a graph over the parameter
    line; curves over a fixed base point map to 0."""
    ff = FunctionField(C.spec)
    if not C.graph_over_base:
        return MilnorElement.zero(ff)
    return MilnorElement(ff, [(1, MilnorSymbol(ff, C.components))])


# ---------------------------------------------------------------------------
# Witness curves
# ---------------------------------------------------------------------------


def totaro_steinberg_curve(f1: FieldElement, extra: Sequence[FieldElement] = (),
                           base_t_coords: Sequence[FieldElement] = ()) -> ParamCurve:
    """The rational curve whose boundary is the single point
    (f1, 1 - f1, f_3, ..., f_n), realizing the Steinberg relation.

    Components: (t, 1 - t, (f1 - t)/(1 - t), f_3, ..., f_n) in the ORIGINAL
    model.  The third component has its only zero at t = f1, value 1 at
    infinity, and its pole at the puncture t = 1, so every other candidate
    boundary point lands outside the cube.
    """
    spec = f1.spec
    if not f1:
        raise SteinbergPrecondition("f1 must be a unit")
    if f1 == spec.one:
        raise SteinbergPrecondition("f1 = 1 is excluded by the Steinberg relation")
    for c in extra:
        if not c:
            raise ZeroElement("extra entries must be units")
    t = RatFunc.param(spec)
    one = RatFunc.const(spec, 1)
    third = (RatFunc.const(spec, f1) - t) / (one - t)
    comps = [t, one - t, third] + [RatFunc.const(spec, c) for c in extra]
    return ParamCurve(spec, CoordModel.ORIGINAL, comps, base_t_coords)


def totaro_mult_curve(f: FieldElement, g: FieldElement,
                      base_t_coords: Sequence[FieldElement] = ()) -> ParamCurve:
    """The rational curve whose boundary realizes psi(f) + psi(g) - psi(fg).

    Components: (t, f(t - g)/(t - fg)) in the ORIGINAL model.  Requires
    f != 1 (the second component would be constant)."""
    spec = f.spec
    if not f or not g:
        raise ZeroElement("f and g must be units")
    if f == spec.one:
        raise DegenerateCurve("f = 1 makes the second component constant")
    t = RatFunc.param(spec)
    h = (RatFunc.const(spec, f) * t - RatFunc.const(spec, f * g)) / (t - RatFunc.const(spec, f * g))
    return ParamCurve(spec, CoordModel.ORIGINAL, [t, h], base_t_coords)


def xi_curve(fs: Sequence[RatFunc], u: RatFunc, pi: UniPoly, r: int) -> ParamCurve:
    """The graph curve of (f_1, ..., f_n, u * pi^r) over the parameter line.

    Entries must be pairwise distinct rational functions and the f_i and u
    units at pi; its boundary realizes the total residue of the symbol."""
    if not fs and r == 0:
        raise ValueError("nothing to bound")
    spec = pi.spec
    for f in fs:
        if f.ord_at(pi):
            raise SteinbergPrecondition("f entries must be units at pi")
    if u.ord_at(pi):
        raise SteinbergPrecondition("u must be a unit at pi")
    last = u * RatFunc.from_poly(pi) ** r
    comps = list(fs) + [last]
    texts = [c.to_text() for c in comps]
    if len(set(texts)) != len(texts):
        raise IndistinctEntries("the defining rational functions must be distinct")
    return ParamCurve(spec, CoordModel.ORIGINAL, comps, graph_over_base=True)


# ---------------------------------------------------------------------------
# Verifiers for the curve identities
# ---------------------------------------------------------------------------


class CurveIdentity:
    """Outcome of checking a curve boundary against its predicted 0-cycle."""

    __slots__ = ("ok", "actual", "expected", "sign")

    def __init__(self, ok: bool, actual: ZeroCycle, expected: ZeroCycle, sign: int):
        self.ok = ok
        self.actual = actual
        self.expected = expected
        self.sign = sign

    def __repr__(self):
        return f"CurveIdentity(ok={self.ok}, sign={self.sign})"


def verify_steinberg_curve(curve: ParamCurve, f1: FieldElement,
                           extra: Sequence[FieldElement] = ()) -> CurveIdentity:
    """Boundary supported on the single point (f1, 1 - f1, extra...), with
    multiplicity +1 in the ORIGINAL convention."""
    spec = f1.spec
    b = curve_boundary(curve)
    pt = ClosedPoint(spec, curve.base_t_coords, [f1, spec.one - f1, *extra])
    expected = ZeroCycle(spec, curve.model, len(curve.base_t_coords), curve.n - 1, [(1, pt)])
    return CurveIdentity(b == expected, b, expected, 1)


def verify_mult_curve(curve: ParamCurve, f: FieldElement, g: FieldElement) -> CurveIdentity:
    """Boundary realizes -(psi(f) + psi(g) - psi(fg)) pointwise."""
    spec = f.spec
    b = curve_boundary(curve)
    base = curve.base_t_coords
    expected = ZeroCycle.empty(spec, curve.model, len(base), 1)
    for val, mult in ((f, -1), (g, -1), (f * g, 1)):
        expected = expected + psi_map(MilnorSymbol(spec, [val]), base, curve.model).scale(mult)
    return CurveIdentity(b == expected, b, expected, -1)


def verify_xi_curve(curve: ParamCurve, symbol: MilnorElement) -> CurveIdentity:
    """d(xi) = (-1)^n psi_tilde(delta(symbol)) over the finite places."""
    n = curve.n - 1
    sign = (-1) ** n
    b = curve_boundary(curve)
    spec = curve.spec
    expected = ZeroCycle.empty(spec, curve.model, 1, n)
    for v, res in total_delta(symbol, include_infinity=False).items():
        base = v.base_point()
        ell = base.residue_spec
        for sym, m in res.items():
            pt = ClosedPoint(ell, base.t_coords, sym.entries)
            expected = expected + ZeroCycle(spec, curve.model, 1, n, [(sign * m, pt)])
    return CurveIdentity(b == expected, b, expected, sign)


def verify_graph_square(curve: ParamCurve) -> tuple[bool, int]:
    """The commuting square for a graph curve: phi(dC) against delta(theta C)
    at the finite places, equal up to the documented sign (-1)^n."""
    n = curve.n - 1
    sign = (-1) ** n
    b = curve_boundary(curve)
    lhs = phi_map(b)
    rhs: dict[ClosedPoint, MilnorElement] = {}
    for v, res in total_delta(theta_map(curve), include_infinity=False).items():
        if res:
            rhs[v.base_point()] = res.scale(sign)
    ok = set(lhs) == set(rhs) and all(lhs[k] == rhs[k] for k in lhs)
    return ok, sign


# spec-facing alias: the parametric-curve boundary lives with the cycle
# calculus but is part of this module's surface
param_curve_boundary = curve_boundary
