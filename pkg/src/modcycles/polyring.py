"""Sparse multivariate polynomials in t1..tr, y1..yn over an exact field,
plus univariate rational functions for curve parametrizations.

Terms are stored as a map from exponent vectors (t-block then y-block) to
nonzero coefficients.  The display order is descending lexicographic on the
exponent vector, which together with canonical coefficient text makes
``to_text`` a bijection onto its image: ``parse_poly`` inverts it bit-exactly.

Grammar (whitespace insignificant, implicit multiplication rejected)::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := literal | var | '(' expr ')'
    var    := 't'uint | 'y'uint | 'u'
    literal:= uint | uint '/' uint

``u`` denotes the extension generator when the coefficient field has one.
Rational-function parsing (:func:`parse_ratfunc`) additionally allows '/'
between arbitrary factors and a single free variable name.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .fields import (
    FieldElement,
    FieldSpec,
    UniPoly,
    WrongField,
    ZeroPolynomial,
    poly_gcd,
)


class PolyError(Exception):
    pass


class ParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(PolyError):
    pass


class InexactDivision(PolyError):
    pass


class ZeroDivisor(PolyError):
    pass


class VarSet:
    """Ambient variables: r parameters t1..tr and n cube coordinates y1..yn."""

    __slots__ = ("r", "n")

    def __init__(self, r: int, n: int):
        if r < 0 or n < 0:
            raise ValueError("variable counts must be nonnegative")
        self.r = r
        self.n = n

    def __eq__(self, other):
        return isinstance(other, VarSet) and (self.r, self.n) == (other.r, other.n)

    def __hash__(self):
        return hash((self.r, self.n))

    def __repr__(self):
        return f"VarSet(r={self.r}, n={self.n})"

    @property
    def count(self) -> int:
        return self.r + self.n

    def names(self) -> list[str]:
        return [f"t{i+1}" for i in range(self.r)] + [f"y{i+1}" for i in range(self.n)]

    def index(self, name: str) -> int:
        if len(name) >= 2 and name[0] in "ty" and name[1:].isdigit():
            k = int(name[1:])
            if name[0] == "t" and 1 <= k <= self.r:
                return k - 1
            if name[0] == "y" and 1 <= k <= self.n:
                return self.r + k - 1
        raise UnknownVariable(f"{name} is not a variable of {self!r}")

    def drop(self, name: str) -> "VarSet":
        i = self.index(name)
        return VarSet(self.r - 1, self.n) if i < self.r else VarSet(self.r, self.n - 1)


class MultiPoly:
    """Immutable sparse polynomial over a :class:`FieldSpec` in a :class:`VarSet`."""

    __slots__ = ("spec", "vars", "terms", "_key")

    def __init__(self, spec: FieldSpec, vars: VarSet, terms: Mapping[tuple, FieldElement]):
        self.spec = spec
        self.vars = vars
        clean = {}
        for exp, c in terms.items():
            if len(exp) != vars.count:
                raise ValueError("exponent vector length mismatch")
            c = spec.element(c)
            if c:
                clean[tuple(exp)] = c
        self.terms = clean
        self._key = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec, vars):
        return cls(spec, vars, {})

    @classmethod
    def const(cls, spec, vars, c):
        return cls(spec, vars, {(0,) * vars.count: spec.element(c)})

    @classmethod
    def variable(cls, spec, vars, name):
        exp = [0] * vars.count
        exp[vars.index(name)] = 1
        return cls(spec, vars, {tuple(exp): spec.one})

    # -- canonical identity ----------------------------------------------------

    def _sorted_items(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True))
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.spec == other.spec
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, self.vars, self._sorted_items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.spec != other.spec or self.vars != other.vars:
            raise WrongField("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.spec, self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, self.spec.zero) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.spec, self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.spec, self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)) and not isinstance(other, MultiPoly):
            c = self.spec.element(other)
            return MultiPoly(self.spec, self.vars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple, FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, self.spec.zero) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.spec, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        acc = MultiPoly.const(self.spec, self.vars, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def scale(self, c: FieldElement) -> "MultiPoly":
        return self * c

    # -- structure ---------------------------------------------------------

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    @property
    def constant_term(self) -> FieldElement:
        return self.terms.get((0,) * self.vars.count, self.spec.zero)

    def leading_term(self) -> tuple[tuple, FieldElement]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def degree_in(self, var: str) -> int:
        """Maximal exponent of var; errors on the zero polynomial."""
        if not self.terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coefficient_of(self, var: str, exponent: int) -> "MultiPoly":
        """The coefficient of var**exponent, as a polynomial with var absent."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == exponent:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return MultiPoly(self.spec, self.vars, out)

    def substitute(self, assignments: Mapping[str, FieldElement], drop: bool = False) -> "MultiPoly":
        """Evaluate some variables exactly; optionally remove them from the ring."""
        idx = {self.vars.index(name): self.spec.element(v) for name, v in assignments.items()}
        out: dict[tuple, FieldElement] = {}
        for e, c in self.terms.items():
            coeff = c
            e2 = list(e)
            for i, val in idx.items():
                if e[i]:
                    coeff = coeff * val ** e[i]
                e2[i] = 0
            if not coeff:
                continue
            key = tuple(e2)
            s = out.get(key, self.spec.zero) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        result = MultiPoly(self.spec, self.vars, out)
        if drop:
            for name in sorted(assignments, reverse=True):
                result = result.drop_var(name)
        return result

    def drop_var(self, name: str) -> "MultiPoly":
        """Remove a variable not occurring in any term, reindexing the rest."""
        i = self.vars.index(name)
        if any(e[i] for e in self.terms):
            raise PolyError(f"{name} still occurs; substitute it first")
        out = {e[:i] + e[i + 1 :]: c for e, c in self.terms.items()}
        return MultiPoly(self.spec, self.vars.drop(name), out)

    def eval(self, values: Sequence[FieldElement]) -> FieldElement:
        """Full evaluation; values may live in an extension of the coefficient field."""
        if len(values) != self.vars.count:
            raise ValueError("need one value per variable")
        target = values[0].spec if values else self.spec
        acc = target.zero
        for e, c in self.terms.items():
            term = c if c.spec == target else target.embed(c)
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            acc = acc + term
        return acc

    def exact_div(self, g: "MultiPoly") -> "MultiPoly":
        """Return q with self == q*g, or raise InexactDivision."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisor("division by the zero polynomial")
        rem = self
        out: dict[tuple, FieldElement] = {}
        eg, cg = g.leading_term()
        cg_inv = cg.inverse()
        while rem:
            ef, cf = rem.leading_term()
            eq = tuple(a - b for a, b in zip(ef, eg))
            if any(k < 0 for k in eq):
                raise InexactDivision(f"{g.to_text()} does not divide {self.to_text()}")
            cq = cf * cg_inv
            out[eq] = cq
            rem = rem - MultiPoly(self.spec, self.vars, {eq: cq}) * g
        return MultiPoly(self.spec, self.vars, out)

    # -- text ----------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.vars.names()
        parts = []
        for e, c in self._sorted_items():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(e)
                if k
            )
            ct = c.to_text()
            neg = ct.startswith("-") and " " not in ct
            if neg:
                ct = ct[1:]
            composite = ("+" in ct) or (" - " in ct)
            if composite and mono:
                ct = f"({ct})"
            if mono:
                body = mono if ct == "1" else f"{ct}*{mono}"
            else:
                body = ct if not composite else ct
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.i = 0

    def _scan(self):
        t, n = self.text, len(self.text)
        i = 0
        while i < n:
            ch = t[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and t[j].isdigit():
                    j += 1
                self.tokens.append(("num", t[i:j], i))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < n and (t[j].isalnum()):
                    j += 1
                self.tokens.append(("name", t[i:j], i))
                i = j
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok


class _Parser:
    """Recursive-descent parser shared by polynomial and rational-function modes.

    atoms: callbacks building semantic values (const, var); allow_div: '/'
    as a general binary operator (rational mode) versus fraction literals only.
    """

    def __init__(self, text, make_const, make_var, allow_div):
        self.toks = _Tokenizer(text)
        self.make_const = make_const
        self.make_var = make_var
        self.allow_div = allow_div

    def parse(self):
        v = self.expr()
        kind, text, pos = self.toks.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", pos)
        return v

    def expr(self):
        kind, _, _ = self.toks.peek()
        negate = False
        if kind in "+-":
            self.toks.next()
            negate = kind == "-"
        v = self.term()
        if negate:
            v = -v
        while True:
            kind, _, _ = self.toks.peek()
            if kind == "+":
                self.toks.next()
                v = v + self.term()
            elif kind == "-":
                self.toks.next()
                v = v - self.term()
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            kind, _, pos = self.toks.peek()
            if kind == "*":
                self.toks.next()
                v = v * self.factor()
            elif kind == "/" and self.allow_div:
                self.toks.next()
                v = v / self.factor()
            elif kind == "/":
                raise ParseError("division is only allowed in numeric literals", pos)
            else:
                return v

    def factor(self):
        v = self.base()
        kind, _, pos = self.toks.peek()
        if kind == "^":
            self.toks.next()
            k2, text, p2 = self.toks.next()
            if k2 != "num":
                raise ParseError("exponent must be a nonnegative integer", p2)
            v = v ** int(text)
        return v

    def base(self):
        kind, text, pos = self.toks.next()
        if kind == "num":
            # fraction literal: uint '/' uint (polynomial mode only)
            k2, t2, _ = self.toks.peek()
            if k2 == "/" and not self.allow_div:
                save = self.toks.i
                self.toks.next()
                k3, t3, p3 = self.toks.next()
                if k3 != "num":
                    raise ParseError("expected denominator digits", p3)
                return self.make_const(int(text), int(t3), pos)
            return self.make_const(int(text), 1, pos)
        if kind == "name":
            return self.make_var(text, pos)
        if kind == "(":
            v = self.expr()
            k2, _, p2 = self.toks.next()
            if k2 != ")":
                raise ParseError("expected ')'", p2)
            return v
        raise ParseError(f"unexpected {text!r}", pos)


def parse_poly(text: str, spec: FieldSpec, vars: VarSet) -> MultiPoly:
    """Parse polynomial text over ``spec`` in ``vars``; inverse of ``to_text``."""
    from fractions import Fraction

    def const(num, den, pos):
        if den == 1:
            return MultiPoly.const(spec, vars, num)
        try:
            return MultiPoly.const(spec, vars, Fraction(num, den))
        except WrongField:
            raise
        except ZeroDivisionError:
            raise ParseError("zero denominator", pos) from None

    def var(name, pos):
        if name == "u":
            if not spec.is_extension:
                raise UnknownVariable("u requires an extension coefficient field")
            return MultiPoly.const(spec, vars, spec.gen_u)
        try:
            return MultiPoly.variable(spec, vars, name)
        except UnknownVariable:
            raise UnknownVariable(f"{name} is not among {vars.names()}") from None

    return _Parser(text, const, var, allow_div=False).parse()


class RatFunc:
    """A reduced rational function num/den in one parameter: monic denominator,
    gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num.spec != den.spec:
            raise WrongField("numerator and denominator over different fields")
        if not num:
            den = UniPoly.const(num.spec, 1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead_inv = den.leading.inverse()
            if den.leading != den.spec.one:
                num = num * lead_inv
                den = den * lead_inv
        self.num = num
        self.den = den

    @classmethod
    def const(cls, spec: FieldSpec, c) -> "RatFunc":
        return cls(UniPoly.const(spec, c), UniPoly.const(spec, 1))

    @classmethod
    def param(cls, spec: FieldSpec) -> "RatFunc":
        return cls(UniPoly.x(spec), UniPoly.const(spec, 1))

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatFunc":
        return cls(p, UniPoly.const(p.spec, 1))

    @property
    def spec(self) -> FieldSpec:
        return self.num.spec

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> FieldElement:
        if not self.is_constant:
            raise PolyError("not a constant")
        return self.num.coeff(0)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.to_text()})"

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc.from_poly(other)
        return RatFunc.const(self.spec, other)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def compose(self, inner: "RatFunc") -> "RatFunc":
        """self(inner(s)) by Horner in RatFunc arithmetic."""
        acc_n = RatFunc.const(self.spec, 0)
        for c in reversed(self.num.coeffs):
            acc_n = acc_n * inner + RatFunc.const(self.spec, c)
        acc_d = RatFunc.const(self.spec, 0)
        for c in reversed(self.den.coeffs):
            acc_d = acc_d * inner + RatFunc.const(self.spec, c)
        return acc_n / acc_d

    # -- values and orders ----------------------------------------------------

    def eval(self, x: FieldElement):
        """Value at x, or INFINITY at a pole (gcd 1 rules out 0/0)."""
        d = self.den.eval(x)
        if not d:
            return INFINITY
        return self.num.eval(x) / d

    def value_at_infinity(self):
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return INFINITY
        if dn < dd:
            return self.spec.zero
        return self.num.leading / self.den.leading

    def ord_at(self, pi: UniPoly) -> int:
        if not self.num:
            raise ZeroPolynomial("order of the zero function")
        return self.num.ord_at(pi) - self.den.ord_at(pi)

    def ord_at_infinity(self) -> int:
        if not self.num:
            raise ZeroPolynomial("order of the zero function")
        return self.den.degree - self.num.degree

    def to_text(self, var: str = "t") -> str:
        if self.den.degree == 0 and self.den.coeff(0) == self.spec.one:
            return self.num.to_text(var)
        return f"({self.num.to_text(var)})/({self.den.to_text(var)})"


INFINITY = type("_Infinity", (), {
    "__repr__": lambda self: "INFINITY",
    "__bool__": lambda self: True,
})()


def parse_ratfunc(text: str, spec: FieldSpec, var: str = "t") -> RatFunc:
    """Parse a rational expression in one variable with full field operations."""
    from fractions import Fraction

    def const(num, den, pos):
        return RatFunc.const(spec, Fraction(num, den) if spec.char == 0 else num) \
            if den != 1 else RatFunc.const(spec, num)

    def mkvar(name, pos):
        if name == var:
            return RatFunc.param(spec)
        if name == "u" and spec.is_extension:
            return RatFunc.const(spec, spec.gen_u)
        raise UnknownVariable(f"{name} is not the parameter {var!r}")

    return _Parser(text, const, mkvar, allow_div=True).parse()


def parse_unipoly(text: str, spec: FieldSpec, var: str = "t") -> UniPoly:
    """Parse polynomial text in a single variable."""
    f = parse_ratfunc(text, spec, var)
    if f.den.degree != 0 or f.den.coeff(0) != spec.one:
        raise ParseError("expected a polynomial, got a proper rational function", 0)
    return f.num
