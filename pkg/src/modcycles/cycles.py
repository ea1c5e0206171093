"""The cubical cycle complex with modulus at desk scale.

Two coordinate models of the cube are supported and never mixed:

* ``ORIGINAL``  --  the cube is P^1 minus {1}; faces sit at 0 and infinity,
  the modulus locus is y = 1, and the boundary is
  sum_i (-1)^i (d_i^inf - d_i^0).
* ``PSI``       --  the cube is the affine line; faces sit at 0 and 1, the
  modulus locus is y = infinity, and the boundary is
  sum_i (-1)^i (d_i^0 - d_i^1).

The models correspond under y -> 1/(1-y), which sends 0 -> 1, inf -> 0 and
1 -> inf; :func:`psi_convert` applies that substitution and the induced face
relabeling, so boundaries commute with conversion.

Hypersurface cycles are formal Z-combinations of polynomial components, each
taken up to scalar: components are normalized to constant term 1 when the
constant term is nonzero, else to leading coefficient 1.  Restriction to a
face at infinity is leading-coefficient extraction in that variable;
restriction of a composite face extracts the joint corner coefficient, which
differs from iterated extraction exactly on improper intersections.
"""

from __future__ import annotations

import itertools
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .fields import (
    ExtensionNotSupported,
    FieldElement,
    FieldSpec,
    UniPoly,
    WrongField,
    factor_univariate,
    make_field,
    poly_gcd,
)
from .polyring import INFINITY, MultiPoly, RatFunc, VarSet


class CycleError(Exception):
    pass


class ImproperFaceIntersection(CycleError):
    pass


class ConstantTermZero(CycleError):
    pass


class WrongModel(CycleError):
    pass


class UndefinedAtPole(CycleError):
    pass


class ModulusNotAvoided(CycleError):
    pass


class UnfactorableEntry(CycleError):
    pass


class IndeterminateCoordinate(CycleError):
    pass


class ImproperBoundary(CycleError):
    pass


class DegenerateCurve(CycleError):
    pass


class CoordModel(Enum):
    ORIGINAL = "ORIGINAL"
    PSI = "PSI"

    @property
    def faces(self):
        """Face values; INFINITY stands for the face at infinity."""
        return (0, INFINITY) if self is CoordModel.ORIGINAL else (0, 1)

    @property
    def boundary_pair(self):
        """(positive face, negative face) in the boundary convention."""
        return (INFINITY, 0) if self is CoordModel.ORIGINAL else (0, 1)

    @property
    def excluded_value(self):
        """The puncture of the cube: 1 in ORIGINAL, infinity in PSI."""
        return 1 if self is CoordModel.ORIGINAL else INFINITY

    @property
    def other(self):
        return CoordModel.PSI if self is CoordModel.ORIGINAL else CoordModel.ORIGINAL


def _face_text(face) -> str:
    return "inf" if face is INFINITY else str(face)


class ModulusDatum:
    """A principal effective divisor on A^r cut out by a polynomial in the
    t-variables; the monomial case t1^m1 ... tr^mr carries its exponents."""

    __slots__ = ("r", "divisor_poly", "monomial_exponents")

    def __init__(self, divisor_poly: MultiPoly, monomial_exponents: tuple | None = None):
        if divisor_poly.vars.n != 0:
            raise ValueError("modulus divisor must involve only t-variables")
        if not divisor_poly or divisor_poly.is_constant:
            raise ValueError("modulus divisor must be a nonzero nonunit")
        self.r = divisor_poly.vars.r
        self.divisor_poly = divisor_poly
        if monomial_exponents is not None:
            monomial_exponents = tuple(monomial_exponents)
            if any(m < 1 for m in monomial_exponents):
                raise ValueError("monomial exponents must be >= 1")
            expected = {tuple(monomial_exponents): divisor_poly.spec.one}
            if MultiPoly(divisor_poly.spec, divisor_poly.vars, expected) != divisor_poly:
                raise ValueError("monomial exponents do not match the divisor polynomial")
        self.monomial_exponents = monomial_exponents

    @classmethod
    def monomial(cls, spec: FieldSpec, exponents: Sequence[int]) -> "ModulusDatum":
        exps = tuple(int(m) for m in exponents)
        vars = VarSet(len(exps), 0)
        poly = MultiPoly(spec, vars, {exps: spec.one})
        return cls(poly, exps)

    @property
    def spec(self) -> FieldSpec:
        return self.divisor_poly.spec

    @property
    def is_monomial(self) -> bool:
        return self.monomial_exponents is not None

    def radical_poly(self) -> MultiPoly:
        """t_i product over the support (monomial data only)."""
        exps = tuple(1 if m else 0 for m in self.monomial_exponents)
        return MultiPoly(self.spec, self.divisor_poly.vars, {exps: self.spec.one})

    def __eq__(self, other):
        return isinstance(other, ModulusDatum) and self.divisor_poly == other.divisor_poly

    def __repr__(self):
        return f"ModulusDatum({self.divisor_poly.to_text()})"


def normalize_component(p: MultiPoly) -> MultiPoly:
    """Scale so the constant term is 1 when nonzero, else the leading coefficient."""
    if not p:
        raise ValueError("zero polynomial is not a hypersurface component")
    c0 = p.constant_term
    if c0:
        return p * c0.inverse()
    return p * p.leading_term()[1].inverse()


def _strip_excluded_factors(p: MultiPoly, model: CoordModel) -> MultiPoly:
    """Remove factors supported on the cube's puncture.

    In the ORIGINAL model an irreducible polynomial whose zero set lies in
    {y_j = 1} is y_j - 1 up to scalar, so dividing out 1 - y_j powers makes
    the component an honest cycle representative; face restrictions would
    otherwise accumulate such empty factors.  PSI components are polynomials,
    which never vanish only at infinity."""
    if model is not CoordModel.ORIGINAL or p.vars.n == 0 or p.is_constant:
        return p
    from .polyring import InexactDivision

    one = MultiPoly.const(p.spec, p.vars, 1)
    for j in range(1, p.vars.n + 1):
        factor = one - MultiPoly.variable(p.spec, p.vars, f"y{j}")
        while not p.is_constant:
            try:
                p = p.exact_div(factor)
            except InexactDivision:
                break
    return p


class HypersurfaceCycle:
    """Formal Z-combination of codimension-1 components on A^r x cube^n."""

    __slots__ = ("spec", "vars", "model", "terms")

    def __init__(self, spec: FieldSpec, vars: VarSet, model: CoordModel,
                 terms: Iterable[tuple[int, MultiPoly]] | Mapping[MultiPoly, int] = ()):
        self.spec = spec
        self.vars = vars
        self.model = model
        acc: dict[MultiPoly, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((p, m) for m, p in terms)
        for poly, mult in items:
            if poly.spec != spec or poly.vars != vars:
                raise WrongField("component in the wrong ring")
            if not poly:
                raise ValueError("zero polynomial is not a component")
            if poly.is_constant:
                continue  # a unit cuts out the empty cycle
            poly = _strip_excluded_factors(poly, model)
            if poly.is_constant:
                continue  # the component was supported on the puncture
            key = normalize_component(poly)
            acc[key] = acc.get(key, 0) + mult
        self.terms = {p: m for p, m in acc.items() if m}

    @classmethod
    def from_poly(cls, poly: MultiPoly, model: CoordModel, mult: int = 1) -> "HypersurfaceCycle":
        return cls(poly.spec, poly.vars, model, [(mult, poly)])

    @classmethod
    def empty(cls, spec, vars, model) -> "HypersurfaceCycle":
        return cls(spec, vars, model, ())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, HypersurfaceCycle)
            and self.spec == other.spec
            and self.vars == other.vars
            and self.model == other.model
            and self.terms == other.terms
        )

    def __add__(self, other):
        if (self.spec, self.vars, self.model) != (other.spec, other.vars, other.model):
            raise WrongModel("cycles live in different ambients or models")
        out = dict(self.terms)
        for p, m in other.terms.items():
            out[p] = out.get(p, 0) + m
        return HypersurfaceCycle(self.spec, self.vars, self.model, out)

    def __neg__(self):
        return HypersurfaceCycle(
            self.spec, self.vars, self.model, {p: -m for p, m in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "HypersurfaceCycle":
        return HypersurfaceCycle(
            self.spec, self.vars, self.model, {p: c * m for p, m in self.terms.items()}
        )

    def components(self) -> list[tuple[int, MultiPoly]]:
        return sorted(((m, p) for p, m in self.terms.items()), key=lambda t: t[1].to_text())

    def __repr__(self):
        if not self.terms:
            return "HypersurfaceCycle(0)"
        body = " + ".join(f"{m}*V({p.to_text()})" for m, p in self.components())
        return f"HypersurfaceCycle({body})"


class ClosedPoint:
    """A closed point of A^r x cube^n: residue field plus exact coordinates."""

    __slots__ = ("residue_spec", "t_coords", "y_coords")

    def __init__(self, residue_spec: FieldSpec, t_coords: Sequence[FieldElement],
                 y_coords: Sequence[FieldElement]):
        self.residue_spec = residue_spec
        self.t_coords = tuple(residue_spec.element(c) for c in t_coords)
        self.y_coords = tuple(residue_spec.element(c) for c in y_coords)

    def __eq__(self, other):
        return (
            isinstance(other, ClosedPoint)
            and self.residue_spec == other.residue_spec
            and self.t_coords == other.t_coords
            and self.y_coords == other.y_coords
        )

    def __hash__(self):
        return hash((self.residue_spec, self.t_coords, self.y_coords))

    def __repr__(self):
        t = ",".join(c.to_text() for c in self.t_coords)
        y = ",".join(c.to_text() for c in self.y_coords)
        return f"Pt[{self.residue_spec.to_text()}]({t}; {y})"

    def base_point(self) -> "ClosedPoint":
        """The image under projection to A^r."""
        return ClosedPoint(self.residue_spec, self.t_coords, ())


class ZeroCycle:
    """Formal Z-combination of closed points, canonically merged."""

    __slots__ = ("spec", "model", "r", "n", "points")

    def __init__(self, spec: FieldSpec, model: CoordModel, r: int, n: int,
                 points: Iterable[tuple[int, ClosedPoint]] | Mapping[ClosedPoint, int] = ()):
        self.spec = spec
        self.model = model
        self.r = r
        self.n = n
        acc: dict[ClosedPoint, int] = {}
        items = points.items() if isinstance(points, Mapping) else ((p, m) for m, p in points)
        for pt, mult in items:
            if len(pt.t_coords) != r or len(pt.y_coords) != n:
                raise ValueError("point dimensions do not match the cycle")
            acc[pt] = acc.get(pt, 0) + mult
        self.points = {p: m for p, m in acc.items() if m}

    @classmethod
    def empty(cls, spec, model, r, n):
        return cls(spec, model, r, n, ())

    def __bool__(self):
        return bool(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, ZeroCycle)
            and (self.spec, self.model, self.r, self.n) == (other.spec, other.model, other.r, other.n)
            and self.points == other.points
        )

    def __add__(self, other):
        if (self.spec, self.model, self.r, self.n) != (other.spec, other.model, other.r, other.n):
            raise WrongModel("zero-cycles live in different ambients")
        out = dict(self.points)
        for p, m in other.points.items():
            out[p] = out.get(p, 0) + m
        return ZeroCycle(self.spec, self.model, self.r, self.n, out)

    def __neg__(self):
        return ZeroCycle(self.spec, self.model, self.r, self.n,
                         {p: -m for p, m in self.points.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "ZeroCycle":
        return ZeroCycle(self.spec, self.model, self.r, self.n,
                         {p: c * m for p, m in self.points.items()})

    def items(self):
        return sorted(self.points.items(), key=lambda kv: repr(kv[0]))

    def __repr__(self):
        if not self.points:
            return "ZeroCycle(0)"
        return "ZeroCycle(" + " + ".join(f"{m}*{p!r}" for p, m in self.items()) + ")"


class ParamCurve:
    """A rational parametric curve in (base) x cube^n.

    The base is either a fixed point of A^r (``base_t_coords``) or, when
    ``graph_over_base`` is set, the parameter line itself, so the curve is the
    graph of its component functions over A^1.
    """

    __slots__ = ("spec", "model", "base_t_coords", "components", "graph_over_base")

    def __init__(self, spec: FieldSpec, model: CoordModel,
                 components: Sequence[RatFunc],
                 base_t_coords: Sequence[FieldElement] = (),
                 graph_over_base: bool = False):
        if graph_over_base and base_t_coords:
            raise ValueError("a graph over the base carries no fixed base point")
        self.spec = spec
        self.model = model
        self.base_t_coords = tuple(spec.element(c) for c in base_t_coords)
        self.graph_over_base = graph_over_base
        comps = []
        for g in components:
            if g.spec != spec:
                raise WrongField("component over the wrong field")
            if not g.num:
                raise DegenerateCurve("component identically a face value (0)")
            if g.is_constant:
                v = g.constant_value()
                if v == spec.zero or (model is CoordModel.PSI and v == spec.one):
                    raise DegenerateCurve("component identically a face value")
                if model is CoordModel.ORIGINAL and v == spec.one:
                    raise DegenerateCurve("component identically the excluded value 1")
            comps.append(g)
        self.components = tuple(comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def __repr__(self):
        base = "graph" if self.graph_over_base else \
            "(" + ",".join(c.to_text() for c in self.base_t_coords) + ")"
        comps = ", ".join(c.to_text() for c in self.components)
        return f"ParamCurve[{self.model.value}]{base} x ({comps})"


# ---------------------------------------------------------------------------
# Faces, degeneracy, boundary
# ---------------------------------------------------------------------------


def _restrict_poly(p: MultiPoly, y_name: str, face) -> MultiPoly:
    """Single-face restriction; INFINITY means leading-coefficient extraction."""
    if face is INFINITY:
        d = p.degree_in(y_name) if p else 0
        return p.coefficient_of(y_name, d).drop_var(y_name)
    val = p.spec.element(face)
    return p.substitute({y_name: val}, drop=True)


def face_restrict(Z: HypersurfaceCycle, i: int, face) -> HypersurfaceCycle:
    """Restrict to the face y_i = face value, reindexing the remaining y's.

    Components restricting to a nonzero constant disappear; an identically
    zero restriction is an improper intersection and raises.
    """
    n = Z.vars.n
    if not 1 <= i <= n:
        raise ValueError(f"face index {i} out of range 1..{n}")
    if face not in Z.model.faces:
        raise ValueError(f"{_face_text(face)} is not a face value of {Z.model.value}")
    name = f"y{i}"
    out = []
    for mult, p in Z.components():
        g = _restrict_poly(p, name, face)
        if not g:
            raise ImproperFaceIntersection(
                f"V({p.to_text()}) contains the face y{i}={_face_text(face)}"
            )
        if g.is_constant:
            continue
        out.append((mult, g))
    return HypersurfaceCycle(Z.spec, VarSet(Z.vars.r, n - 1), Z.model, out)


def is_degenerate(p: MultiPoly) -> bool:
    """True when the component is pulled back from a coordinate projection,
    i.e. some y-variable does not occur.  Requires n >= 1."""
    n = p.vars.n
    if n < 1:
        raise ValueError("degeneracy is defined for n >= 1")
    if not p:
        raise ValueError("zero polynomial is not a component")
    return any(p.degree_in(f"y{i+1}") == 0 for i in range(n))


def is_level0_dropped(p: MultiPoly) -> bool:
    """Level-0 convention: a two-term component 1 - c*t^e is treated as
    degenerate when the configuration flag is on (see :func:`boundary`)."""
    if p.vars.n != 0:
        return False
    terms = p.terms
    if len(terms) != 2:
        return False
    zero_exp = (0,) * p.vars.count
    return zero_exp in terms and terms[zero_exp] == p.spec.one


def prune_degenerate(Z: HypersurfaceCycle, level0_flag: bool = True) -> HypersurfaceCycle:
    """Drop components the nondegenerate quotient kills at this level."""
    out = {}
    for p, m in Z.terms.items():
        if Z.vars.n >= 1 and is_degenerate(p):
            continue
        if Z.vars.n == 0 and level0_flag and is_level0_dropped(p):
            continue
        out[p] = m
    return HypersurfaceCycle(Z.spec, Z.vars, Z.model, out)


def boundary(Z: HypersurfaceCycle, *, flip_inner: bool = False,
             level0_flag: bool = True) -> HypersurfaceCycle:
    """The cubical boundary, signed per the model's convention.

    ``flip_inner`` negates the inner face difference (the opposite sign
    convention); identities asserted by the test suite hold either way.
    ``level0_flag`` applies the level-0 degeneracy convention to the output.
    """
    n = Z.vars.n
    if n < 1:
        raise ValueError("boundary requires n >= 1")
    pos, neg = Z.model.boundary_pair
    total = HypersurfaceCycle.empty(Z.spec, VarSet(Z.vars.r, n - 1), Z.model)
    for i in range(1, n + 1):
        sign = (-1) ** i
        if flip_inner:
            sign = -sign
        part = face_restrict(Z, i, pos) - face_restrict(Z, i, neg)
        total = total + part.scale(sign)
    return prune_degenerate(total, level0_flag=level0_flag)


# ---------------------------------------------------------------------------
# Admissibility checks
# ---------------------------------------------------------------------------


class FaceViolation:
    __slots__ = ("component", "face", "kind")

    def __init__(self, component: str, face: tuple, kind: str):
        self.component = component
        self.face = face  # tuple of (var name, face text)
        self.kind = kind  # "improper" or "excluded"

    def __repr__(self):
        f = ", ".join(f"{v}={e}" for v, e in self.face)
        return f"FaceViolation({self.component} at {{{f}}}: {self.kind})"

    def to_json(self):
        return {
            "component": self.component,
            "face": {v: e for v, e in self.face},
            "kind": self.kind,
        }


class FaceReport:
    __slots__ = ("passed", "violations")

    def __init__(self, violations: Sequence[FaceViolation]):
        self.violations = tuple(violations)
        self.passed = not self.violations

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"FaceReport(passed={self.passed}, violations={list(self.violations)})"

    def to_json(self):
        return {
            "passed": self.passed,
            "violations": [v.to_json() for v in self.violations],
        }


def _corner_restrict(p: MultiPoly, assignment: Sequence[tuple[str, object]]) -> MultiPoly:
    """Composite-face restriction: finite substitutions first, then the joint
    corner coefficient for the variables sent to infinity.  The ambient ring
    is kept, since callers only test the result against zero."""
    finite = {name: p.spec.element(v) for name, v in assignment if v is not INFINITY}
    inf_vars = [name for name, v in assignment if v is INFINITY]
    g = p.substitute(finite) if finite else p
    if not g:
        return g
    # joint top multidegree, all computed before extraction
    degs = [(name, g.degree_in(name)) for name in inf_vars]
    for name, d in degs:
        g = g.coefficient_of(name, d)
        if not g:
            return g
    return g


def _face_assignments(n: int, faces) -> Iterable[tuple]:
    """All nonempty composite faces, in a fixed deterministic order:
    by subset size, then variable indices, then face-value pattern."""
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            for values in itertools.product(faces, repeat=size):
                yield tuple((f"y{i}", v) for i, v in zip(subset, values))


def check_face_condition(Z) -> FaceReport:
    """Proper intersection with every composite face.

    Hypersurfaces: no face restriction is identically zero.  Zero-cycles: no
    y-coordinate sits on a face value (a coordinate equal to the model's
    excluded value is reported separately).
    """
    violations = []
    if isinstance(Z, HypersurfaceCycle):
        faces = Z.model.faces
        for _, p in Z.components():
            text = p.to_text()
            for assignment in _face_assignments(Z.vars.n, faces):
                g = _corner_restrict(p, assignment)
                if not g:
                    violations.append(FaceViolation(
                        text,
                        tuple((v, _face_text(f)) for v, f in assignment),
                        "improper",
                    ))
        return FaceReport(violations)
    if isinstance(Z, ZeroCycle):
        face_vals = [Z.spec.element(f) for f in Z.model.faces if f is not INFINITY]
        excl = Z.model.excluded_value
        for pt, _ in Z.items():
            here = pt.residue_spec
            bad_vals = [here.embed(v) for v in face_vals]
            ex_val = None if excl is INFINITY else here.embed(Z.spec.element(excl))
            for j, y in enumerate(pt.y_coords):
                face = ((f"y{j+1}", y.to_text()),)
                if y in bad_vals:
                    violations.append(FaceViolation(repr(pt), face, "improper"))
                elif ex_val is not None and y == ex_val:
                    violations.append(FaceViolation(repr(pt), face, "excluded"))
        return FaceReport(violations)
    raise TypeError(f"cannot face-check {type(Z).__name__}")


class ModulusVerdict(Enum):
    CERTIFIED = "Certified"
    VIOLATES = "ViolatesNecessary"
    UNKNOWN = "Unknown"


class ModulusReport:
    __slots__ = ("verdict", "per_component")

    def __init__(self, per_component: Sequence[tuple[str, ModulusVerdict, str]]):
        self.per_component = tuple(per_component)
        verdicts = [v for _, v, _ in per_component]
        if any(v is ModulusVerdict.VIOLATES for v in verdicts):
            self.verdict = ModulusVerdict.VIOLATES
        elif all(v is ModulusVerdict.CERTIFIED for v in verdicts):
            self.verdict = ModulusVerdict.CERTIFIED
        else:
            self.verdict = ModulusVerdict.UNKNOWN

    def __repr__(self):
        return f"ModulusReport({self.verdict.value})"

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "components": [
                {"poly": t, "verdict": v.value, "reason": r}
                for t, v, r in self.per_component
            ],
        }


def _t_product(spec: FieldSpec, vars: VarSet) -> MultiPoly:
    exp = tuple([1] * vars.r + [0] * vars.n)
    return MultiPoly(spec, vars, {exp: spec.one})


def _lift_divisor(D: ModulusDatum, vars: VarSet) -> MultiPoly:
    """The divisor polynomial viewed in the full t,y ring."""
    out = {e + (0,) * vars.n: c for e, c in D.divisor_poly.terms.items()}
    return MultiPoly(D.spec, vars, out)


def _divides(d: MultiPoly, f: MultiPoly) -> bool:
    from .polyring import InexactDivision

    try:
        f.exact_div(d)
        return True
    except InexactDivision:
        return False


def check_modulus_codim1(Z: HypersurfaceCycle, D: ModulusDatum) -> ModulusReport:
    """Three-valued modulus certificate for hypersurface cycles (PSI model).

    Certified: the divisor polynomial divides f - 1 and every y-degree is at
    most 1, which yields the homogenized closure identity bounding the divisor
    pullback by the faces at infinity.  ViolatesNecessary: some y-degree is 2
    or more (monomial data), or the exponents are all 1 and the radical does
    not divide f - 1.  At level 0 the monomial case is an exact dichotomy
    (disjointness from the support).  Everything else is Unknown.
    """
    if Z.model is not CoordModel.PSI:
        raise WrongModel("modulus certificates are computed in the PSI model")
    if D.r != Z.vars.r:
        raise ValueError("modulus datum has the wrong number of t-variables")
    results = []
    n = Z.vars.n
    lifted = _lift_divisor(D, Z.vars)
    for _, p in Z.components():
        text = p.to_text()
        if p.constant_term != Z.spec.one:
            raise ConstantTermZero(
                f"component {text} has constant term 0; it meets the t-axes"
            )
        f1 = p - MultiPoly.const(Z.spec, Z.vars, 1)
        if n == 0:
            if D.is_monomial:
                rad = _lift_divisor(ModulusDatum(D.radical_poly(), None), Z.vars) \
                    if D.monomial_exponents != tuple(1 for _ in range(D.r)) else lifted
                if _divides(rad, f1):
                    results.append((text, ModulusVerdict.CERTIFIED,
                                    "support disjointness: radical divides f - 1"))
                else:
                    results.append((text, ModulusVerdict.VIOLATES,
                                    "component meets the divisor support"))
            else:
                if _divides(lifted, f1):
                    results.append((text, ModulusVerdict.CERTIFIED,
                                    "divisor polynomial divides f - 1"))
                else:
                    results.append((text, ModulusVerdict.UNKNOWN,
                                    "no certificate for a non-monomial divisor"))
            continue
        degs = [p.degree_in(f"y{i+1}") for i in range(n)]
        if D.is_monomial and any(d >= 2 for d in degs):
            results.append((text, ModulusVerdict.VIOLATES,
                            f"y-degrees {degs} exceed 1"))
            continue
        if _divides(lifted, f1) and all(d <= 1 for d in degs):
            results.append((text, ModulusVerdict.CERTIFIED,
                            "divisor divides f - 1 and y-degrees are at most 1"))
            continue
        ones = D.monomial_exponents == tuple(1 for _ in range(D.r))
        if ones and not _divides(lifted, f1):
            results.append((text, ModulusVerdict.VIOLATES,
                            "t1...tr does not divide f - 1"))
            continue
        results.append((text, ModulusVerdict.UNKNOWN, "no applicable criterion"))
    if not results:
        results.append(("0", ModulusVerdict.CERTIFIED, "empty cycle"))
    return ModulusReport(results)


def check_modulus_zerocycle(Z: ZeroCycle, D: ModulusDatum) -> bool:
    """A 0-cycle has modulus D exactly when it avoids the divisor."""
    for pt, _ in Z.items():
        vals = list(pt.t_coords)
        if D.divisor_poly.eval(vals) == pt.residue_spec.zero:
            return False
    return True


# ---------------------------------------------------------------------------
# Model conversion
# ---------------------------------------------------------------------------


def _convert_poly(p: MultiPoly, to_model: CoordModel) -> MultiPoly:
    """Substitute y -> psi(y) per variable and clear denominators."""
    spec, vars = p.spec, p.vars
    out = p
    one = MultiPoly.const(spec, vars, 1)
    for i in range(vars.n):
        name = f"y{i+1}"
        yv = MultiPoly.variable(spec, vars, name)
        d = out.degree_in(name) if out else 0
        if d == 0:
            continue
        if to_model is CoordModel.PSI:
            # original coordinate y = (w - 1)/w in the new coordinate w
            num, den = yv - one, yv
        else:
            # psi coordinate w = 1/(1 - y) in the new coordinate y
            num, den = one, one - yv
        acc = MultiPoly.zero(spec, vars)
        for e in range(d + 1):
            ce = out.coefficient_of(name, e)
            acc = acc + ce * num**e * den ** (d - e)
        out = acc
    return out


def psi_convert(obj, to_model: CoordModel):
    """Convert a cycle, point, 0-cycle, or curve to the other coordinate model.

    ORIGINAL faces {0, inf} map to PSI faces {1, 0}; boundaries commute with
    the conversion.  Points landing on the target's puncture raise.
    """
    if isinstance(obj, HypersurfaceCycle):
        if obj.model is to_model:
            raise WrongModel("cycle already lives in the target model")
        out = []
        for m, p in obj.components():
            q = _convert_poly(p, to_model)
            if not q or q.is_constant:
                continue
            out.append((m, q))
        return HypersurfaceCycle(obj.spec, obj.vars, to_model, out)
    if isinstance(obj, ClosedPoint):
        here = obj.residue_spec
        one = here.one
        new = []
        for y in obj.y_coords:
            if to_model is CoordModel.PSI:
                if y == one:
                    raise UndefinedAtPole("y = 1 maps to infinity in the PSI model")
                new.append(one / (one - y))
            else:
                if not y:
                    raise UndefinedAtPole("y = 0 maps to infinity in the ORIGINAL model")
                new.append((y - one) / y)
        return ClosedPoint(here, obj.t_coords, new)
    if isinstance(obj, ZeroCycle):
        if obj.model is to_model:
            raise WrongModel("cycle already lives in the target model")
        pts = [(m, psi_convert(p, to_model)) for p, m in obj.items()]
        return ZeroCycle(obj.spec, to_model, obj.r, obj.n, pts)
    if isinstance(obj, ParamCurve):
        if obj.model is to_model:
            raise WrongModel("curve already lives in the target model")
        one = RatFunc.const(obj.spec, 1)
        comps = []
        for g in obj.components:
            if to_model is CoordModel.PSI:
                h = one - g
                if not h.num:
                    raise UndefinedAtPole("component identically 1 has no PSI image")
                comps.append(one / h)
            else:
                if not g.num:
                    raise UndefinedAtPole("component identically 0 has no ORIGINAL image")
                comps.append((g - one) / g)
        return ParamCurve(obj.spec, to_model, comps, obj.base_t_coords, obj.graph_over_base)
    raise TypeError(f"cannot convert {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Parametric curve boundary and push-forward along closed immersions
# ---------------------------------------------------------------------------


def _place_field(spec: FieldSpec, pi: UniPoly) -> tuple[FieldSpec, FieldElement]:
    """Residue field of a monic irreducible place and the class of the parameter."""
    if pi.degree == 1:
        return spec, -pi.coeff(0)
    if spec.is_extension:
        raise UnfactorableEntry(
            "places of degree >= 2 over an extension base are not supported"
        )
    try:
        ell = make_field(spec.char, [c.value for c in pi.coeffs])
    except ExtensionNotSupported as exc:
        raise UnfactorableEntry(str(exc)) from None
    return ell, ell.gen_u


def _zero_places(h: RatFunc) -> list[tuple[UniPoly, int]]:
    """Monic irreducible zeros of h with multiplicities (finite places only)."""
    if not h.num:
        raise ValueError("identically zero")
    out = []
    if h.num.degree > 0:
        fac = factor_univariate(h.num)
        for part in fac.parts:
            if not part.irreducible:
                raise UnfactorableEntry(
                    f"cannot enumerate zeros of {h.num.to_text()}: "
                    f"unfactored cofactor {part.poly.to_text()}"
                )
            out.append((part.poly, part.multiplicity))
    return out


def _value_or_inf(g: RatFunc, at_infinity: bool, x: FieldElement | None):
    if at_infinity:
        return g.value_at_infinity()
    return g.eval(x)


def curve_boundary(curve: ParamCurve, *, embedding: Sequence[RatFunc] | None = None,
                   domain_poles: Sequence[UniPoly] = (),
                   flip_inner: bool = False) -> ZeroCycle:
    """Cubical boundary of a parametric curve as a 0-cycle one level down.

    Candidate points are the parameter values (closed points of the parameter
    line, plus the point at infinity for constant-base curves) where some
    component meets a face, with multiplicity the order of vanishing.  Points
    whose remaining coordinates hit the model's puncture are outside the cube
    and are discarded; hitting another face is an improper boundary.  Graph
    curves and embedded curves discard the parameter at infinity and at poles
    of the embedding, which lie outside the affine base.
    """
    spec, model = curve.spec, curve.model
    faces = model.faces
    pos_face, neg_face = model.boundary_pair
    excluded = model.excluded_value
    n = curve.n
    if embedding is not None:
        r_out = len(embedding)
    elif curve.graph_over_base:
        r_out = 1
    else:
        r_out = len(curve.base_t_coords)
    result = ZeroCycle.empty(spec, model, r_out, n - 1)
    affine_base = curve.graph_over_base or embedding is not None

    # gather candidates: (place | INFINITY marker, component index, face, mult)
    candidates: list[tuple] = []
    for idx, g in enumerate(curve.components):
        for face in faces:
            if face is INFINITY:
                targets = _zero_places(g.inverse()) if g.num.degree > 0 or g.den.degree > 0 else []
                # poles of g: zeros of 1/g
                for pi, m in targets:
                    candidates.append((pi, idx, face, m))
                if not affine_base:
                    o = g.ord_at_infinity()
                    if o < 0:
                        candidates.append((None, idx, face, -o))
            else:
                diff = g - RatFunc.const(spec, face)
                if not diff.num:
                    raise DegenerateCurve("component identically a face value")
                for pi, m in _zero_places(diff):
                    candidates.append((pi, idx, face, m))
                if not affine_base:
                    o = diff.ord_at_infinity()
                    if o > 0:
                        candidates.append((None, idx, face, o))

    for place, idx, face, mult in candidates:
        at_inf = place is None
        if not at_inf:
            if any(dp.degree > 0 and not (dp % place) for dp in domain_poles):
                continue
            if embedding is not None and any(
                e.den.degree > 0 and not (e.den % place) for e in embedding
            ):
                continue  # the embedding has a pole here: outside the source curve
            ell, root = _place_field(spec, place)
        else:
            ell, root = spec, None

        ex_val = None if excluded is INFINITY else ell.embed(spec.element(excluded))
        face_vals = [ell.embed(spec.element(f)) for f in faces if f is not INFINITY]

        # remaining cube coordinates: a coordinate on the puncture means the
        # point is outside the cube entirely, which takes precedence over any
        # face hit, so evaluate everything before classifying
        y_vals = [
            _value_or_inf(g, at_inf, root)
            for j, g in enumerate(curve.components)
            if j != idx
        ]
        on_puncture = any(
            (v is INFINITY) if excluded is INFINITY else (v is not INFINITY and v == ex_val)
            for v in y_vals
        )
        if on_puncture:
            continue
        for v in y_vals:
            if v is INFINITY or v in face_vals:
                raise ImproperBoundary(
                    f"a remaining component hits a face on the boundary point at "
                    f"{'infinity' if at_inf else place.to_text()}"
                )

        # base coordinates
        if embedding is not None:
            t_vals = []
            for e in embedding:
                v = _value_or_inf(e, at_inf, root)
                if v is INFINITY:
                    t_vals = None  # closure point lies over infinity of A^r
                    break
                t_vals.append(v)
            if t_vals is None:
                continue
        elif curve.graph_over_base:
            t_vals = [root]
        else:
            t_vals = [ell.embed(c) if ell != spec else c for c in curve.base_t_coords]

        sign = (-1) ** (idx + 1)  # components are 1-indexed in the convention
        if face == neg_face:
            sign = -sign
        if flip_inner:
            sign = -sign
        point = ClosedPoint(ell, t_vals, y_vals)
        result = result + ZeroCycle(spec, model, r_out, n - 1, [(sign * mult, point)])
    return result


def pushforward_closed_immersion(obj, embedding: Sequence[RatFunc],
                                 D: ModulusDatum | None = None):
    """Push a 0-cycle (on a parametrized curve) or a curve forward along a
    closed immersion given by coordinate functions of the parameter.

    Points map by coordinate composition with multiplicity 1.  When a modulus
    datum is attached, every image point must avoid the divisor.
    """
    if isinstance(obj, ZeroCycle):
        if obj.r != 1:
            raise ValueError("source points must carry a single parameter coordinate")
        out = []
        for pt, m in obj.items():
            s0 = pt.t_coords[0]
            t_vals = []
            for e in embedding:
                v = e.eval(s0)
                if v is INFINITY:
                    raise IndeterminateCoordinate(
                        f"embedding has a pole at parameter {s0.to_text()}"
                    )
                t_vals.append(v)
            image = ClosedPoint(pt.residue_spec, t_vals, pt.y_coords)
            if D is not None:
                if D.divisor_poly.eval(list(image.t_coords)) == pt.residue_spec.zero:
                    raise ModulusNotAvoided(f"image point {image!r} lies on the divisor")
            out.append((m, image))
        return ZeroCycle(obj.spec, obj.model, len(embedding), obj.n, out)
    if isinstance(obj, ParamCurve):
        if not obj.graph_over_base:
            raise ValueError("only curves over the parameter line can be pushed forward")
        if D is not None and not curve_avoids_divisor(embedding, D):
            raise ModulusNotAvoided("the image curve meets the divisor")
        return EmbeddedCurve(obj, tuple(embedding))
    raise TypeError(f"cannot push forward {type(obj).__name__}")


class EmbeddedCurve:
    """A parametric curve together with a closed immersion of its base into A^r."""

    __slots__ = ("curve", "embedding")

    def __init__(self, curve: ParamCurve, embedding: tuple[RatFunc, ...]):
        self.curve = curve
        self.embedding = embedding

    def boundary(self, flip_inner: bool = False) -> ZeroCycle:
        return curve_boundary(self.curve, embedding=self.embedding, flip_inner=flip_inner)


def curve_avoids_divisor(embedding: Sequence[RatFunc], D: ModulusDatum) -> bool:
    """Whether the image of the parametrized curve is disjoint from the divisor.

    Substitutes the coordinate functions into the divisor polynomial; the
    image avoids the divisor exactly when every zero of the numerator is a
    pole of the embedding (i.e. outside the source curve).
    """
    spec = embedding[0].spec
    acc = RatFunc.const(spec, 0)
    for e, c in D.divisor_poly.terms.items():
        term = RatFunc.const(spec, c)
        for coord, k in zip(embedding, e):
            if k:
                term = term * coord**k
        acc = acc + term
    if not acc.num:
        return False  # identically zero on the curve
    h = acc.num
    pole_prod = UniPoly.const(spec, 1)
    for e in embedding:
        pole_prod = pole_prod * e.den
    while h.degree > 0:
        g = poly_gcd(h, pole_prod)
        if g.degree == 0:
            return False
        h = h // g
    return True
