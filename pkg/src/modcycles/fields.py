"""Exact field arithmetic: Q, prime fields F_p, and simple extensions k[u]/(mu).

Canonical element forms are unique: reduced Fraction over Q, least nonnegative
residue over F_p, coefficient tuple of degree < deg(mu) over extensions.  All
values are immutable and hashable, and arithmetic never leaves canonical form,
so equality of representations is equality of field elements.

Finite fields store a generator of the multiplicative group, found by
exhaustive order testing in the canonical element enumeration (0, 1, ...,
p-1 for prime fields; coefficient tuples read as base-p numerals with the
constant coefficient least significant for extensions).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence, Union

Scalar = Union[int, Fraction, "FieldElement"]


class FieldError(Exception):
    """Base class for exact-arithmetic errors."""


class NonPrimeCharacteristic(FieldError):
    pass


class ReducibleExtensionPolynomial(FieldError):
    pass


class ExtensionNotSupported(FieldError):
    """Extension whose irreducibility cannot be certified at desk scale."""


class ZeroElement(FieldError):
    pass


class NotFiniteExtension(FieldError):
    pass


class ZeroPolynomial(FieldError):
    pass


class WrongField(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Raw coefficient-vector arithmetic over the base field.
#
# Base values are ints (mod p) or Fractions; extension values are tuples of
# base values of fixed length d.  These helpers never see FieldElement.
# ---------------------------------------------------------------------------


def _base_add(char, a, b):
    return (a + b) % char if char else a + b


def _base_mul(char, a, b):
    return (a * b) % char if char else a * b


def _base_neg(char, a):
    return (-a) % char if char else -a


def _base_inv(char, a):
    if char:
        return pow(a, -1, char)
    return Fraction(1) / a


def _vec_trim(v):
    while v and not v[-1]:
        v.pop()
    return v


def _vec_add(char, a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = _base_add(char, x, y)
    return _vec_trim(out)


def _vec_scale(char, a, c):
    return _vec_trim([_base_mul(char, x, c) for x in a])


def _vec_mul(char, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = _base_add(char, out[i + j], _base_mul(char, x, y))
    return _vec_trim(out)


def _vec_divmod(char, a, b):
    # b nonzero; returns (q, r) with a = q*b + r, deg r < deg b
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = _base_inv(char, b[-1])
    while len(a) >= len(b):
        c = _base_mul(char, a[-1], inv_lead)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = _base_add(char, a[k + i], _base_neg(char, _base_mul(char, y, c)))
        _vec_trim(a)
        if not a:
            break
    return _vec_trim(q), a


def _vec_mod_inv(char, a, mu):
    # extended Euclid: s*a + t*mu = g; a invertible mod mu when deg g == 0
    r0, r1 = list(mu), list(a)
    s0, s1 = [], [1]
    while r1:
        q, r = _vec_divmod(char, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _vec_add(char, s0, _vec_scale(char, _vec_mul(char, q, s1), _base_neg(char, 1)))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    return _vec_divmod(char, _vec_scale(char, s0, _base_inv(char, r0[0])), mu)[1]


# ---------------------------------------------------------------------------
# Field specifications and elements
# ---------------------------------------------------------------------------


class FieldSpec:
    """A field: Q (char 0), F_p, or k[u]/(mu) for monic irreducible mu.

    ``ext`` stores the coefficients of mu low-degree-first including the
    leading 1; ``None`` means the base field itself.
    """

    __slots__ = ("char", "ext", "__dict__")

    def __init__(self, char: int, ext: tuple | None):
        self.char = char
        self.ext = ext

    def __repr__(self):
        return f"FieldSpec({self.to_text()})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.char == other.char
            and self.ext == other.ext
        )

    def __hash__(self):
        return hash((self.char, self.ext))

    # -- structure ---------------------------------------------------------

    @property
    def is_extension(self) -> bool:
        return self.ext is not None

    @property
    def is_finite(self) -> bool:
        return self.char != 0

    @property
    def degree(self) -> int:
        return len(self.ext) - 1 if self.ext else 1

    @cached_property
    def order(self) -> int | None:
        return self.char ** self.degree if self.char else None

    @cached_property
    def base(self) -> "FieldSpec":
        return make_field(self.char) if self.ext else self

    def to_text(self) -> str:
        if self.char == 0 and not self.ext:
            return "Q"
        if not self.ext:
            return f"F{self.char}"
        mu = _mu_text(self.char, self.ext)
        base = "Q" if self.char == 0 else f"F{self.char}"
        return f"{base}[u]/({mu})"

    # -- element construction ----------------------------------------------

    def _base_value(self, x):
        if isinstance(x, FieldElement):
            if x.spec != self.base:
                raise WrongField(f"element of {x.spec.to_text()} used in {self.to_text()}")
            return x.value
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise WrongField(f"denominator {x.denominator} not invertible mod {self.char}")
            return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
        return x % self.char

    def element(self, x: Scalar | Sequence) -> "FieldElement":
        """Coerce an int, Fraction, coefficient sequence, or element into this field."""
        if isinstance(x, FieldElement) and x.spec == self:
            return x
        if not self.ext:
            return FieldElement(self, self._base_value(x))
        if isinstance(x, (list, tuple)):
            coeffs = [self.base._base_value(c) for c in x]
            coeffs, _ = (coeffs, None) if len(coeffs) < len(self.ext) else _vec_divmod(self.char, coeffs, list(self.ext))
            vec = _vec_trim(list(coeffs))
            return FieldElement(self, self._pad(vec))
        # base scalar embedded as a constant
        v = self.base._base_value(x)
        return FieldElement(self, self._pad([v] if v else []))

    def _pad(self, vec) -> tuple:
        d = self.degree
        return tuple(list(vec) + [0 if self.char else Fraction(0)] * (d - len(vec)))

    @cached_property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self.element(1)

    @cached_property
    def gen_u(self) -> "FieldElement":
        """The class of u in an extension field."""
        if not self.ext:
            raise NotFiniteExtension("base field has no extension generator")
        return self.element([0, 1])

    def embed(self, e: "FieldElement") -> "FieldElement":
        """Embed a base-field element into this (extension) field."""
        if e.spec == self:
            return e
        if e.spec != self.base:
            raise WrongField(f"cannot embed {e.spec.to_text()} into {self.to_text()}")
        return self.element(e.value)

    # -- finite-field enumeration ------------------------------------------

    def elements(self) -> Iterator["FieldElement"]:
        if not self.is_finite:
            raise NotFiniteExtension("cannot enumerate an infinite field")
        p, d = self.char, self.degree
        for idx in range(p**d):
            digits = [(idx // p**i) % p for i in range(d)]
            if self.ext:
                yield FieldElement(self, tuple(digits))
            else:
                yield FieldElement(self, digits[0])

    @cached_property
    def generator(self) -> "FieldElement":
        """A multiplicative generator, the first in enumeration order."""
        if not self.is_finite:
            raise NotFiniteExtension("generator requires a finite field")
        q = self.order
        for e in self.elements():
            if not e:
                continue
            power, k = e, 1
            while power != self.one:
                power = power * e
                k += 1
            if k == q - 1:
                return e
        raise FieldError("no generator found")  # unreachable for valid specs

    @cached_property
    def _dlog_table(self) -> dict:
        table, acc = {}, self.one
        for k in range(self.order - 1):
            table[acc.value] = k
            acc = acc * self.generator
        return table

    def dlog(self, e: "FieldElement") -> int:
        """Discrete log to the stored generator (finite fields only)."""
        if not e:
            raise ZeroElement("dlog of zero")
        return self._dlog_table[e.value]


class FieldElement:
    """A field element in canonical form, immutable and hashable."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value):
        self.spec = spec
        self.value = value

    def __repr__(self):
        return f"<{self.to_text()} in {self.spec.to_text()}>"

    def __bool__(self):
        if isinstance(self.value, tuple):
            return any(self.value)
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.spec.element(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.char, self.spec.ext, self.value))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise WrongField(
                    f"mixed fields {self.spec.to_text()} and {other.spec.to_text()}"
                )
            return other
        return self.spec.element(other)

    def __add__(self, other):
        o = self._coerce(other)
        s = self.spec
        if isinstance(self.value, tuple):
            return FieldElement(s, s._pad(_vec_add(s.char, list(self.value), list(o.value))))
        return FieldElement(s, _base_add(s.char, self.value, o.value))

    __radd__ = __add__

    def __neg__(self):
        s = self.spec
        if isinstance(self.value, tuple):
            return FieldElement(s, tuple(_base_neg(s.char, c) for c in self.value))
        return FieldElement(s, _base_neg(s.char, self.value))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        s = self.spec
        if isinstance(self.value, tuple):
            prod = _vec_mul(s.char, list(self.value), list(o.value))
            _, rem = _vec_divmod(s.char, prod, list(s.ext)) if prod else ([], [])
            return FieldElement(s, s._pad(rem))
        return FieldElement(s, _base_mul(s.char, self.value, o.value))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        s = self.spec
        if isinstance(self.value, tuple):
            vec = _vec_trim(list(self.value))
            return FieldElement(s, s._pad(_vec_mod_inv(s.char, vec, list(s.ext))))
        return FieldElement(s, _base_inv(s.char, self.value))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc, base = self.spec.one, self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    @property
    def in_base(self) -> bool:
        """True when an extension element lies in the base subfield."""
        if not isinstance(self.value, tuple):
            return True
        return not any(self.value[1:])

    def to_base(self) -> "FieldElement":
        if not isinstance(self.value, tuple):
            return self
        if not self.in_base:
            raise WrongField("element does not lie in the base field")
        v = self.value[0] if self.value else (Fraction(0) if self.spec.char == 0 else 0)
        return FieldElement(self.spec.base, v)

    def to_text(self) -> str:
        """Canonical text: decimal integers, 'a/b' fractions, u-polynomials."""
        if not isinstance(self.value, tuple):
            return str(self.value)
        parts = []
        for e in range(len(self.value) - 1, -1, -1):
            c = self.value[e]
            if not c:
                continue
            mono = "" if e == 0 else ("u" if e == 1 else f"u^{e}")
            parts.append((c, mono))
        if not parts:
            return "0"
        out = []
        for i, (c, mono) in enumerate(parts):
            neg = isinstance(c, (int, Fraction)) and c < 0
            mag = -c if neg else c
            body = str(mag) if not mono else (mono if mag == 1 else f"{str(mag)}*{mono}")
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)


# ---------------------------------------------------------------------------
# Univariate polynomials over a FieldSpec
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial, coefficients low-degree-first, no trailing zeros."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Sequence[Scalar]):
        self.spec = spec
        cs = [spec.element(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, spec):
        return cls(spec, [])

    @classmethod
    def const(cls, spec, c):
        return cls(spec, [c])

    @classmethod
    def x(cls, spec):
        return cls(spec, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.to_text()})"

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.spec.zero

    @property
    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.spec, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return UniPoly(self.spec, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(self.spec, other)

    def __mul__(self, other):
        other = self._coerce(other)
        if not self or not other:
            return UniPoly.zero(self.spec)
        out = [self.spec.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        acc, base = UniPoly.const(self.spec, 1), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [self.spec.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = other.leading.inverse()
        while len(rem) >= len(other.coeffs):
            c = rem[-1] * inv_lead
            k = len(rem) - len(other.coeffs)
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - b * c
            while rem and not rem[-1]:
                rem.pop()
            if not rem:
                break
        return UniPoly(self.spec, q), UniPoly(self.spec, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if not self:
            raise ZeroPolynomial("cannot make the zero polynomial monic")
        inv = self.leading.inverse()
        return UniPoly(self.spec, [c * inv for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        return UniPoly(self.spec, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def eval(self, x: FieldElement) -> FieldElement:
        """Evaluate at x; coefficients embed into x's field when it extends ours."""
        target = x.spec
        acc = target.zero
        for c in reversed(self.coeffs):
            cc = c if c.spec == target else target.embed(c)
            acc = acc * x + cc
        return acc

    def powmod(self, n: int, modulus: "UniPoly") -> "UniPoly":
        acc, base = UniPoly.const(self.spec, 1) % modulus, self % modulus
        while n:
            if n & 1:
                acc = (acc * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return acc

    def ord_at(self, pi: "UniPoly") -> int:
        """Multiplicity of the monic irreducible pi in self (self nonzero)."""
        if not self:
            raise ZeroPolynomial("order of zero polynomial")
        k, f = 0, self
        while True:
            q, r = divmod(f, pi)
            if r:
                return k
            k, f = k + 1, q

    def shift_compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner(x)), by Horner."""
        acc = UniPoly.zero(self.spec)
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.const(self.spec, c)
        return acc

    def to_text(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            ct = c.to_text()
            neg = ct.startswith("-") and "+" not in ct and " - " not in ct[1:]
            if neg:
                ct = ct[1:]
            composite = ("+" in ct) or (" - " in ct)
            if composite:
                ct = f"({ct})"
            if mono:
                body = mono if ct == "1" else f"{ct}*{mono}"
            else:
                body = ct
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


# ---------------------------------------------------------------------------
# Field construction
# ---------------------------------------------------------------------------


def _mu_text(char, ext):
    spec = make_field(char)
    return UniPoly(spec, list(ext)).to_text(var="u")


def _freeze_mu(char: int, mu) -> tuple:
    base = make_field(char)
    if isinstance(mu, UniPoly):
        coeffs = [c if isinstance(c, FieldElement) else base.element(c) for c in mu.coeffs]
    else:
        coeffs = [base.element(c) for c in mu]
    vals = [c.value for c in coeffs]
    while vals and not vals[-1]:
        vals.pop()
    return tuple(vals)


@lru_cache(maxsize=None)
def _make_field_cached(char: int, ext: tuple | None) -> FieldSpec:
    return FieldSpec(char, ext)


def make_field(characteristic: int, mu=None) -> FieldSpec:
    """Build a validated field: Q, F_p, or an extension by monic irreducible mu.

    mu may be a UniPoly over the base or a low-degree-first coefficient
    sequence.  Irreducibility is checked by trial factorization over finite
    fields and by rational-root extraction (degree <= 3) over Q.
    """
    if characteristic != 0 and not is_prime(characteristic):
        raise NonPrimeCharacteristic(f"{characteristic} is not 0 or prime")
    if mu is None:
        return _make_field_cached(characteristic, None)
    base = make_field(characteristic)
    ext = _freeze_mu(characteristic, mu)
    if len(ext) < 3:
        raise ReducibleExtensionPolynomial("extension degree must be at least 2")
    if ext[-1] != (1 if characteristic else Fraction(1)):
        raise ReducibleExtensionPolynomial("extension polynomial must be monic")
    poly = UniPoly(base, list(ext))
    if characteristic == 0 and poly.degree > 3:
        raise ExtensionNotSupported(
            "irreducibility over Q is certified only up to degree 3"
        )
    if not is_irreducible(poly):
        raise ReducibleExtensionPolynomial(f"{poly.to_text('u')} factors over {base.to_text()}")
    spec = _make_field_cached(characteristic, ext)
    if spec.is_finite:
        _ = spec.generator  # found and cached at construction
    return spec


# Fixed moduli for the usual small extensions, so canonical forms are
# reproducible across runs.  Each entry is validated by make_field.
EXTENSION_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


def standard_extension(p: int, d: int) -> FieldSpec:
    """F_{p^d} with the documented default modulus."""
    if d == 1:
        return make_field(p)
    try:
        mu = EXTENSION_MODULI[(p, d)]
    except KeyError:
        raise ExtensionNotSupported(f"no stored modulus for F_{p}^{d}") from None
    return make_field(p, mu)


# ---------------------------------------------------------------------------
# Univariate factorization
# ---------------------------------------------------------------------------


class FactorPart:
    """One factor of a factorization: monic polynomial, multiplicity, and
    whether irreducibility is certified (over Q high-degree cofactors are not)."""

    __slots__ = ("poly", "multiplicity", "irreducible")

    def __init__(self, poly: UniPoly, multiplicity: int, irreducible: bool):
        self.poly = poly
        self.multiplicity = multiplicity
        self.irreducible = irreducible

    def __repr__(self):
        tag = "" if self.irreducible else ", unfactored"
        return f"({self.poly.to_text()})^{self.multiplicity}{tag}"

    def __eq__(self, other):
        return (
            isinstance(other, FactorPart)
            and self.poly == other.poly
            and self.multiplicity == other.multiplicity
            and self.irreducible == other.irreducible
        )


class Factorization:
    __slots__ = ("unit", "parts")

    def __init__(self, unit: FieldElement, parts: Sequence[FactorPart]):
        self.unit = unit
        self.parts = tuple(
            sorted(parts, key=lambda p: (p.poly.degree, p.poly.to_text()))
        )

    def expand(self) -> UniPoly:
        acc = UniPoly.const(self.unit.spec, self.unit)
        for part in self.parts:
            acc = acc * part.poly**part.multiplicity
        return acc

    @property
    def fully_factored(self) -> bool:
        return all(p.irreducible for p in self.parts)

    def __repr__(self):
        return f"Factorization({self.unit.to_text()}; {list(self.parts)})"


def _pth_root(f: UniPoly) -> UniPoly:
    # f = g(x^p); over F_{p^d} the coefficients need the inverse Frobenius
    p = f.spec.char
    d = f.spec.degree
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(f.coeffs[i] ** (p ** (d - 1)))
    return UniPoly(f.spec, out)


def _squarefree_parts(f: UniPoly) -> list[tuple[UniPoly, int]]:
    # monic f over a finite field -> [(g_i, m_i)] with f = prod g_i^{m_i}
    if f.degree <= 0:
        return []
    p = f.spec.char
    df = f.derivative()
    if not df:
        return [(g, m * p) for g, m in _squarefree_parts(_pth_root(f))]
    out = []
    c = poly_gcd(f, df)
    w = (f // c).monic()
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = (w // y).monic()
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _squarefree_parts(_pth_root(c)))
    return out


def _frobenius_kernel(f: UniPoly) -> list[UniPoly]:
    # null space of (Q - I) where Q is the matrix of h -> h^q mod f
    spec = f.spec
    q = spec.order
    n = f.degree
    xq = UniPoly.x(spec).powmod(q, f)
    rows = [UniPoly.const(spec, 1)]
    for _ in range(1, n):
        rows.append((rows[-1] * xq) % f)
    # columns of M: images minus identity, transposed for elimination
    m = [[rows[i].coeff(j) - (spec.one if i == j else spec.zero) for i in range(n)] for j in range(n)]
    # Gaussian elimination over the field
    pivots = []
    row = 0
    for col in range(n):
        sel = next((r for r in range(row, n) if m[r][col]), None)
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = m[row][col].inverse()
        m[row] = [x * inv for x in m[row]]
        for r in range(n):
            if r != row and m[r][col]:
                c = m[r][col]
                m[r] = [a - c * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        vec = [spec.zero] * n
        vec[fc] = spec.one
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(UniPoly(spec, vec))
    return basis


def _berlekamp_factor(f: UniPoly) -> list[UniPoly]:
    # complete factorization of a monic squarefree f over a finite field
    if f.degree <= 1:
        return [f]
    kernel = _frobenius_kernel(f)
    k = len(kernel)
    if k == 1:
        return [f]
    factors = [f]
    elems = list(f.spec.elements())
    for h in kernel:
        if h.degree < 1:
            continue
        next_factors = []
        for g in factors:
            if g.degree == 1:
                next_factors.append(g)
                continue
            pieces = []
            for c in elems:
                d = poly_gcd(g, h - UniPoly.const(f.spec, c))
                if d.degree > 0:
                    pieces.append(d)
            next_factors.extend(pieces if len(pieces) > 1 else [g])
        factors = next_factors
        if len(factors) == k:
            break
    return factors


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _rational_factor(f: UniPoly) -> Factorization:
    spec = f.spec
    unit = f.leading
    g = f.monic()
    parts: list[FactorPart] = []
    # strip roots at zero
    k = 0
    while g.degree > 0 and not g.coeff(0):
        g = g // UniPoly.x(spec)
        k += 1
    if k:
        parts.append(FactorPart(UniPoly.x(spec), k, True))
    # integerize for the rational root theorem
    while g.degree > 0:
        denom_lcm = 1
        for c in g.coeffs:
            denom_lcm = denom_lcm * c.value.denominator // __import__("math").gcd(denom_lcm, c.value.denominator)
        ints = [int(c.value * denom_lcm) for c in g.coeffs]
        a0, aN = ints[0], ints[-1]
        root = None
        for num in _divisors(a0):
            for den in _divisors(aN):
                for s in (1, -1):
                    cand = Fraction(s * num, den)
                    if g.eval(spec.element(cand)) == spec.zero:
                        root = cand
                        break
                if root is not None:
                    break
            if root is not None:
                break
        if root is None:
            break
        lin = UniPoly(spec, [-root, 1])
        mult = 0
        while True:
            q, r = divmod(g, lin)
            if r:
                break
            g, mult = q, mult + 1
        parts.append(FactorPart(lin, mult, True))
    if g.degree > 0:
        # no rational roots remain; degree 2-3 cofactors are certified irreducible
        parts.append(FactorPart(g, 1, g.degree <= 3))
    return Factorization(unit, parts)


def factor_univariate(f: UniPoly) -> Factorization:
    """Factor a nonzero univariate polynomial.

    Complete factorization over finite fields (squarefree decomposition
    followed by deterministic Berlekamp splitting).  Over Q only rational
    roots are extracted; a rootless cofactor of degree 2 or 3 is certified
    irreducible and anything larger is returned unfactored.
    """
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.spec.char == 0:
        if f.spec.is_extension:
            raise ExtensionNotSupported("factorization over extensions of Q is not supported")
        return _rational_factor(f)
    unit = f.leading
    parts = []
    for g, m in _squarefree_parts(f.monic()):
        for irr in _berlekamp_factor(g):
            parts.append(FactorPart(irr.monic(), m, True))
    return Factorization(unit, parts)


def is_irreducible(f: UniPoly) -> bool:
    """Irreducibility test; over Q certified only up to degree 3."""
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    if f.spec.char == 0:
        fac = _rational_factor(f)
        return len(fac.parts) == 1 and fac.parts[0].multiplicity == 1 and f.degree <= 3
    sq = _squarefree_parts(f.monic())
    if len(sq) != 1 or sq[0][1] != 1:
        return False
    return len(_frobenius_kernel(f.monic())) == 1


# ---------------------------------------------------------------------------
# The K_1 norm for finite extensions
# ---------------------------------------------------------------------------


def norm_k1_finite(alpha: FieldElement) -> FieldElement:
    """Norm F_{q^d} -> F_q of a nonzero element: alpha^((q^d-1)/(q-1))."""
    spec = alpha.spec
    if not spec.is_finite or not spec.is_extension:
        raise NotFiniteExtension(f"{spec.to_text()} is not a finite extension")
    if not alpha:
        raise ZeroElement("norm of zero")
    q = spec.base.order
    e = (spec.order - 1) // (q - 1)
    result = alpha**e
    return result.to_base()
