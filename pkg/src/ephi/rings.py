"""Exact commutative rings: Z, Q, Z/m, polynomial rings and localizations.

A ring object knows how to do arithmetic on *payloads*, the raw canonical
values of its elements:

* ``Integers``        -- Python ``int``
* ``Rationals``       -- ``fractions.Fraction``
* ``IntegersMod(m)``  -- ``int`` in ``[0, m)``
* ``PolynomialRing``  -- ``dict`` mapping exponent tuples to base payloads,
  never holding a zero coefficient.  Treated as immutable.
* ``LocalizedRing``   -- ``(numerator, exponent)`` meaning
  ``numerator / a**exponent``.

Matrices store payloads directly for speed; :class:`RingElement` wraps a
payload together with its ring for user-facing code.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Sequence

from .errors import (
    ArityMismatch,
    DescriptorMismatch,
    LocalizationBoundExceeded,
    NotInvertible,
    ParseError,
    UnitTestUnsupported,
)

K_MAX = 64
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Ring:
    """Abstract commutative ring acting on payloads."""

    is_domain = False
    # True when equal elements always have identical payloads.
    canonical_unique = True
    # True when ``exact_div`` is available and Bareiss elimination is sound.
    bareiss_ok = False

    # -- identity -----------------------------------------------------
    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.name()

    def name(self) -> str:
        raise NotImplementedError

    # -- arithmetic on payloads ---------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def pow(self, x, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.one()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def eq(self, x, y) -> bool:
        if self.canonical_unique:
            return x == y
        return self.is_zero(self.sub(x, y))

    def normalize(self, x):
        return x

    def elem_key(self, x):
        """Hashable stand-in for a payload."""
        return x

    def unit_inverse(self, x):
        """Inverse payload if ``x`` is a unit, else ``None``."""
        raise UnitTestUnsupported(f"unit test not implemented for {self.name()}")

    def exact_div(self, x, y):
        """Return ``q`` with ``q*y == x`` or ``None``; domains only."""
        raise NotImplementedError(f"exact division not implemented for {self.name()}")

    def is_nilpotent(self, x) -> bool:
        if self.is_domain:
            return self.is_zero(x)
        raise UnitTestUnsupported(f"nilpotence test not implemented for {self.name()}")

    def is_reduced(self) -> bool:
        return self.is_domain

    def coerce(self, x, source: "Ring"):
        """Map payload ``x`` of ``source`` into this ring along the natural map."""
        if source == self:
            return x
        if isinstance(source, Integers):
            return self.from_int(x)
        raise DescriptorMismatch(f"no natural map {source.name()} -> {self.name()}")

    def resolve_symbol(self, name: str):
        """Payload for a named generator, or ``None``."""
        return None

    def to_str(self, x) -> str:
        raise NotImplementedError

    def is_atomic_str(self, x) -> bool:
        """Whether ``to_str(x)`` needs no parentheses inside a product."""
        return True

    # -- user-facing helpers ------------------------------------------
    def parse(self, text: str):
        return _Parser(self, text).parse()

    def __call__(self, value: Any) -> "RingElement":
        return RingElement(self, self.convert(value))

    def convert(self, value: Any):
        """Payload from an int, string, or RingElement."""
        if isinstance(value, RingElement):
            return self.coerce(value.value, value.ring)
        if isinstance(value, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.parse(str(value))
        raise TypeError(f"cannot convert {value!r} into {self.name()}")

    def gens(self) -> tuple["RingElement", ...]:
        return ()

    def to_json(self) -> dict:
        raise NotImplementedError


class Integers(Ring):
    is_domain = True
    bareiss_ok = True

    def key(self):
        return ("ZZ",)

    def name(self):
        return "ZZ"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def pow(self, x, e):
        return x ** e

    def is_zero(self, x):
        return x == 0

    def unit_inverse(self, x):
        return x if x in (1, -1) else None

    def exact_div(self, x, y):
        if y == 0:
            return None
        q, r = divmod(x, y)
        return q if r == 0 else None

    def to_str(self, x):
        return str(x)

    def is_atomic_str(self, x):
        return x >= 0

    def to_json(self):
        return {"kind": "integers"}


class Rationals(Ring):
    is_domain = True
    bareiss_ok = True

    def key(self):
        return ("QQ",)

    def name(self):
        return "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_zero(self, x):
        return x == 0

    def unit_inverse(self, x):
        return None if x == 0 else 1 / x

    def exact_div(self, x, y):
        return None if y == 0 else x / y

    def to_str(self, x):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def is_atomic_str(self, x):
        # "p/q" binds left-to-right, so it can lead a product unparenthesized
        return x >= 0

    def to_json(self):
        return {"kind": "rationals"}


class IntegersMod(Ring):
    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or modulus < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {modulus!r}")
        self.modulus = modulus

    @cached_property
    def is_domain(self):
        from sympy import isprime

        return bool(isprime(self.modulus))

    @property
    def bareiss_ok(self):
        return self.is_domain

    def key(self):
        return ("ZZmod", self.modulus)

    def name(self):
        return f"ZZ/{self.modulus}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n) % self.modulus

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def mul(self, x, y):
        return x * y % self.modulus

    def pow(self, x, e):
        return pow(x, e, self.modulus)

    def is_zero(self, x):
        return x == 0

    def unit_inverse(self, x):
        if math.gcd(x, self.modulus) != 1:
            return None
        return pow(x, -1, self.modulus)

    def exact_div(self, x, y):
        if not self.is_domain:
            raise NotImplementedError("exact division needs a prime modulus")
        if y == 0:
            return None
        return x * pow(y, -1, self.modulus) % self.modulus

    def is_nilpotent(self, x):
        return pow(x, max(1, self.modulus.bit_length()), self.modulus) == 0

    def is_reduced(self):
        from sympy import factorint

        return all(e == 1 for e in factorint(self.modulus).values())

    def coerce(self, x, source):
        if isinstance(source, IntegersMod) and self.modulus != source.modulus:
            if source.modulus % self.modulus == 0:
                return x % self.modulus
        return super().coerce(x, source)

    def to_str(self, x):
        return str(x)

    def to_json(self):
        return {"kind": "integers_mod", "modulus": self.modulus}


class PolynomialRing(Ring):
    """``base[x1, ..., xt]`` with sparse dict payloads."""

    def __init__(self, base: Ring, variables: Sequence[str]):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        for v in variables:
            if not isinstance(v, str) or not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError(f"variable names must be distinct: {variables}")
        self.base = base
        self.variables = variables
        self.nvars = len(variables)
        self._zexp = (0,) * self.nvars
        self._native = isinstance(base, (Integers, Rationals))
        self._modulus = base.modulus if isinstance(base, IntegersMod) else None

    @property
    def is_domain(self):
        return self.base.is_domain

    @property
    def canonical_unique(self):
        return self.base.canonical_unique

    @property
    def bareiss_ok(self):
        return self.base.bareiss_ok

    def key(self):
        return ("poly", self.base.key(), self.variables)

    def name(self):
        return f"{self.base.name()}[{','.join(self.variables)}]"

    def zero(self):
        return {}

    def one(self):
        return {self._zexp: self.base.one()}

    def constant(self, c):
        return {} if self.base.is_zero(c) else {self._zexp: c}

    def from_int(self, n):
        return self.constant(self.base.from_int(n))

    def var(self, name_or_index):
        idx = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        e = [0] * self.nvars
        e[idx] = 1
        return {tuple(e): self.base.one()}

    def gens(self):
        return tuple(RingElement(self, self.var(i)) for i in range(self.nvars))

    def monomial(self, exps, c):
        return {} if self.base.is_zero(c) else {tuple(exps): c}

    def add(self, x, y):
        if len(x) < len(y):
            x, y = y, x
        r = dict(x)
        if self._native:
            for e, c in y.items():
                s = r.get(e, 0) + c
                if s:
                    r[e] = s
                else:
                    r.pop(e, None)
            return r
        if self._modulus is not None:
            m = self._modulus
            for e, c in y.items():
                s = (r.get(e, 0) + c) % m
                if s:
                    r[e] = s
                else:
                    r.pop(e, None)
            return r
        base = self.base
        for e, c in y.items():
            if e in r:
                s = base.add(r[e], c)
                if base.is_zero(s):
                    del r[e]
                else:
                    r[e] = s
            else:
                r[e] = c
        return r

    def neg(self, x):
        if self._native:
            return {e: -c for e, c in x.items()}
        neg = self.base.neg
        return {e: neg(c) for e, c in x.items()}

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if not x or not y:
            return {}
        r: dict = {}
        if self._native or self._modulus is not None:
            for e1, c1 in x.items():
                for e2, c2 in y.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    r[e] = r.get(e, 0) + c1 * c2
            if self._modulus is not None:
                m = self._modulus
                return {e: c % m for e, c in r.items() if c % m}
            return {e: c for e, c in r.items() if c}
        base = self.base
        for e1, c1 in x.items():
            for e2, c2 in y.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = base.mul(c1, c2)
                r[e] = base.add(r[e], p) if e in r else p
        return {e: c for e, c in r.items() if not base.is_zero(c)}

    def scale(self, c, x):
        """Multiply polynomial ``x`` by base payload ``c``."""
        base = self.base
        out = {}
        for e, v in x.items():
            p = base.mul(c, v)
            if not base.is_zero(p):
                out[e] = p
        return out

    def is_zero(self, x):
        if self.base.canonical_unique:
            return not x
        return all(self.base.is_zero(c) for c in x.values())

    def elem_key(self, x):
        bk = self.base.elem_key
        return tuple(sorted((e, bk(c)) for e, c in x.items()))

    def degree(self, x) -> int:
        """Total degree; ``-1`` for zero."""
        return max((sum(e) for e in x), default=-1)

    def constant_term(self, x):
        return x.get(self._zexp, self.base.zero())

    def is_constant(self, x) -> bool:
        return all(e == self._zexp for e in x)

    def unit_inverse(self, x):
        if not self.base.is_reduced():
            raise UnitTestUnsupported(
                f"unit test in {self.name()} needs a reduced coefficient ring"
            )
        if not self.is_constant(x):
            return None
        inv = self.base.unit_inverse(self.constant_term(x))
        return None if inv is None else self.constant(inv)

    def exact_div(self, x, y):
        if not self.is_domain:
            raise NotImplementedError("exact division needs a domain")
        if not y:
            return None
        base = self.base
        ly = max(y)
        cy = y[ly]
        q: dict = {}
        r = x
        while r:
            lr = max(r)
            if any(a < b for a, b in zip(lr, ly)):
                return None
            c = base.exact_div(r[lr], cy)
            if c is None:
                return None
            t = {tuple(a - b for a, b in zip(lr, ly)): c}
            q = self.add(q, t)
            r = self.sub(r, self.mul(t, y))
        return q

    def is_nilpotent(self, x):
        return all(self.base.is_nilpotent(c) for c in x.values())

    def is_reduced(self):
        return self.base.is_reduced()

    def coerce(self, x, source):
        if source == self:
            return x
        if isinstance(source, PolynomialRing) and set(source.variables) <= set(self.variables):
            try:
                idx = [self.variables.index(v) for v in source.variables]
                out = {}
                for e, c in x.items():
                    ne = [0] * self.nvars
                    for k, p in zip(idx, e):
                        ne[k] = p
                    cc = self.base.coerce(c, source.base)
                    if not self.base.is_zero(cc):
                        out[tuple(ne)] = cc
                return out
            except DescriptorMismatch:
                pass
        return self.constant(self.base.coerce(x, source))

    def resolve_symbol(self, name):
        if name in self.variables:
            return self.var(name)
        inner = self.base.resolve_symbol(name)
        return None if inner is None else self.constant(inner)

    def sorted_terms(self, x):
        return sorted(x.items(), key=lambda t: (-sum(t[0]), [-a for a in t[0]]))

    def to_str(self, x):
        if not x:
            return "0"
        parts = []
        for e, c in self.sorted_terms(x):
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(self.variables, e) if p
            )
            cs = self.base.to_str(c)
            negative = False
            if cs.startswith("-") and self.base.is_atomic_str(self.base.neg(c)):
                negative, cs = True, cs[1:]
            elif not self.base.is_atomic_str(c):
                cs = f"({cs})"
            if mono:
                term = mono if cs == "1" else f"{cs}*{mono}"
            else:
                term = cs
            if not parts:
                parts.append(f"-{term}" if negative else term)
            else:
                parts.append(f"- {term}" if negative else f"+ {term}")
        return " ".join(parts)

    def is_atomic_str(self, x):
        if len(x) != 1:
            return False
        (c,) = x.values()
        return self.base.is_atomic_str(c)

    def to_json(self):
        return {"kind": "polynomial", "base": self.base.to_json(), "variables": list(self.variables)}


class LocalizedRing(Ring):
    """``base`` localized at the powers of one non-nilpotent element ``a``."""

    def __init__(self, base: Ring, denominator: Any, symbol: str = "a"):
        if isinstance(base, LocalizedRing):
            raise ValueError("iterated localization is not supported")
        if not _IDENT.match(symbol):
            raise ValueError(f"invalid denominator symbol {symbol!r}")
        if isinstance(base, PolynomialRing) and symbol in base.variables:
            raise ValueError(f"symbol {symbol!r} clashes with a variable")
        self.base = base
        self.symbol = symbol
        self.a = base.convert(denominator)
        if base.is_zero(self.a):
            raise ValueError("denominator base must be nonzero")
        try:
            nil = base.is_nilpotent(self.a)
        except UnitTestUnsupported:
            nil = False
        if nil:
            raise ValueError(f"denominator {base.to_str(self.a)} is nilpotent")

    @property
    def is_domain(self):
        return self.base.is_domain

    @property
    def canonical_unique(self):
        return self.base.is_domain

    def key(self):
        return ("loc", self.base.key(), self.base.elem_key(self.a), self.symbol)

    def name(self):
        return f"{self.base.name()}_{{{self.base.to_str(self.a)}}}"

    def zero(self):
        return (self.base.zero(), 0)

    def one(self):
        return (self.base.one(), 0)

    def from_int(self, n):
        return (self.base.from_int(n), 0)

    def normalize(self, x):
        n, k = x
        base = self.base
        if base.is_zero(n):
            return self.zero()
        if base.is_domain:
            while k > 0:
                q = base.exact_div(n, self.a)
                if q is None:
                    break
                n, k = q, k - 1
        return (n, k)

    def _lift(self, x, k):
        n, e = x
        return n if e == k else self.base.mul(n, self.base.pow(self.a, k - e))

    def add(self, x, y):
        k = max(x[1], y[1])
        return self.normalize((self.base.add(self._lift(x, k), self._lift(y, k)), k))

    def neg(self, x):
        return (self.base.neg(x[0]), x[1])

    def sub(self, x, y):
        k = max(x[1], y[1])
        return self.normalize((self.base.sub(self._lift(x, k), self._lift(y, k)), k))

    def mul(self, x, y):
        return self.normalize((self.base.mul(x[0], y[0]), x[1] + y[1]))

    def is_zero(self, x):
        n, _ = x
        base = self.base
        if base.is_zero(n):
            return True
        if base.is_domain:
            return False
        bound = K_MAX
        if isinstance(base, IntegersMod) and base.modulus.bit_length() > K_MAX:
            raise LocalizationBoundExceeded(
                f"annihilation exponent may exceed K_max={K_MAX} for modulus {base.modulus}"
            )
        p = n
        for _ in range(bound):
            p = base.mul(p, self.a)
            if base.is_zero(p):
                return True
        return False

    def eq(self, x, y):
        if self.canonical_unique:
            return x == y
        return self.is_zero(self.sub(x, y))

    def elem_key(self, x):
        if not self.canonical_unique:
            raise TypeError(f"elements of {self.name()} have no canonical key")
        return (self.base.elem_key(x[0]), x[1])

    def localize(self, x):
        """Image of base payload ``x`` under the localization map."""
        return self.normalize((x, 0))

    def unit_inverse(self, x):
        n, k = x
        base = self.base
        if isinstance(base, Integers):
            if n == 0:
                return None
            m, g = n, math.gcd(n, self.a)
            while g > 1:
                m //= g
                g = math.gcd(m, self.a)
            if abs(m) != 1:
                return None
            j, aj = 0, 1
            while aj % n:
                j, aj = j + 1, aj * self.a
            return self.normalize((aj // n * self.a ** k, j))
        if isinstance(base, Rationals):
            if n == 0:
                return None
            return self.normalize((self.a ** k / n, 0))
        if isinstance(base, IntegersMod):
            m = base.modulus
            good, g = m, math.gcd(m, self.a)
            while g > 1:
                good //= g
                g = math.gcd(good, self.a)
            if math.gcd(n, good) != 1:
                return None
            bad = m // good
            if good == 1:
                return self.zero()
            t = pow(n, -1, good) * pow(self.a, k, good) * pow(bad, -1, good) % good
            return self.normalize((bad * t % m, 0))
        if base.is_domain:
            q, j = n, 0
            while True:
                nxt = base.exact_div(q, self.a)
                if nxt is None:
                    break
                q, j = nxt, j + 1
            inv = base.unit_inverse(q)
            if inv is not None:
                return self.normalize((base.mul(inv, base.pow(self.a, k)), j))
        raise UnitTestUnsupported(f"unit test not implemented for {self.name()}")

    def exact_div(self, x, y):
        inv = self.unit_inverse(y)
        return None if inv is None else self.mul(x, inv)

    def is_reduced(self):
        return self.base.is_reduced()

    def is_nilpotent(self, x):
        return self.base.is_nilpotent(x[0])

    def coerce(self, x, source):
        if source == self:
            return x
        return self.localize(self.base.coerce(x, source))

    def resolve_symbol(self, name):
        if name == self.symbol:
            return self.localize(self.a)
        inner = self.base.resolve_symbol(name)
        return None if inner is None else self.localize(inner)

    def to_str(self, x):
        n, k = x
        ns = self.base.to_str(n)
        if k == 0:
            return ns
        if not self.base.is_atomic_str(n):
            ns = f"({ns})"
        return f"{ns} / {self.symbol}" if k == 1 else f"{ns} / {self.symbol}^{k}"

    def is_atomic_str(self, x):
        return x[1] == 0 and self.base.is_atomic_str(x[0])

    def to_json(self):
        return {
            "kind": "localized",
            "base": self.base.to_json(),
            "denominator": self.base.to_str(self.a),
            "symbol": self.symbol,
        }


def ring_from_json(doc: dict) -> Ring:
    kind = doc.get("kind")
    if kind == "integers":
        return ZZ
    if kind == "rationals":
        return QQ
    if kind == "integers_mod":
        return IntegersMod(int(doc["modulus"]))
    if kind == "polynomial":
        return PolynomialRing(ring_from_json(doc["base"]), doc["variables"])
    if kind == "localized":
        return LocalizedRing(ring_from_json(doc["base"]), doc["denominator"], doc.get("symbol", "a"))
    raise ParseError(f"unknown ring kind {kind!r}")


ZZ = Integers()
QQ = Rationals()


class RingElement:
    """An immutable ring element: a payload tagged with its ring."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise DescriptorMismatch(f"{self.ring.name()} vs {other.ring.name()}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.pow(self.value, e))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        inv = self.ring.unit_inverse(o)
        if inv is None:
            raise NotInvertible(f"{self.ring.to_str(o)} is not a unit in {self.ring.name()}")
        return RingElement(self.ring, self.ring.mul(self.value, inv))

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.ring.eq(self.value, o)

    def __hash__(self):
        return hash((self.ring, self.ring.elem_key(self.value)))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.ring.unit_inverse(self.value) is not None

    def inverse(self) -> "RingElement":
        inv = self.ring.unit_inverse(self.value)
        if inv is None:
            raise NotInvertible(f"{self} is not a unit in {self.ring.name()}")
        return RingElement(self.ring, inv)

    def __str__(self):
        return self.ring.to_str(self.value)

    def __repr__(self):
        return f"RingElement({self.ring.name()}, {self})"


def ring_arithmetic(x: RingElement, y: RingElement, op: str) -> RingElement:
    """Apply ``op`` in ``{"add", "sub", "mul", "neg"}``; ``neg`` ignores ``y``."""
    if x.ring != y.ring:
        raise DescriptorMismatch(f"{x.ring.name()} vs {y.ring.name()}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError(f"unknown operation {op!r}")


def is_unit(x: RingElement) -> tuple[bool, RingElement | None]:
    """Decide whether ``x`` is a unit, returning the inverse as witness."""
    inv = x.ring.unit_inverse(x.value)
    if inv is None:
        return False, None
    return True, RingElement(x.ring, inv)


def poly_substitute(p: RingElement, images: Sequence[RingElement], target: Ring | None = None) -> RingElement:
    """Evaluate polynomial ``p`` at ``images``.

    Coefficients travel along the natural map from the coefficient ring of
    ``p`` into ``target`` (by default the ring of the images).
    """
    ring = p.ring
    if not isinstance(ring, PolynomialRing):
        raise DescriptorMismatch(f"{ring.name()} is not a polynomial ring")
    if len(images) != ring.nvars:
        raise ArityMismatch(f"expected {ring.nvars} images, got {len(images)}")
    if target is None:
        if not images:
            raise ArityMismatch("target ring needed")
        target = images[0].ring
    vals = [target.convert(im) for im in images]
    return RingElement(target, substitute_payload(ring, p.value, vals, target))


def substitute_payload(ring: PolynomialRing, x, images: Sequence, target: Ring):
    """Payload-level substitution used by matrix code."""
    powers: list[dict[int, Any]] = [{0: target.one(), 1: im} for im in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = target.pow(images[i], e)
        return cache[e]

    acc = target.zero()
    base = ring.base
    for e, c in x.items():
        term = target.coerce(c, base)
        for i, k in enumerate(e):
            if k:
                term = target.mul(term, power(i, k))
        acc = target.add(acc, term)
    return acc


def localize_map(x: RingElement, target: LocalizedRing) -> RingElement:
    """The localization map ``R -> R_a``."""
    if not isinstance(target, LocalizedRing) or target.base != x.ring:
        raise DescriptorMismatch(f"{x.ring.name()} does not localize into {target.name()}")
    return RingElement(target, target.localize(x.value))


def localized_eq(x: RingElement, y: RingElement) -> bool:
    """Equality in ``R_a``: ``a^k (n_x a^{e_y} - n_y a^{e_x}) = 0`` for some ``k <= K_MAX``."""
    if x.ring != y.ring or not isinstance(x.ring, LocalizedRing):
        raise DescriptorMismatch("localized_eq needs two elements of one localized ring")
    ring = x.ring
    base = ring.base
    (nx, ex), (ny, ey) = x.value, y.value
    diff = base.sub(base.mul(nx, base.pow(ring.a, ey)), base.mul(ny, base.pow(ring.a, ex)))
    return ring.is_zero((diff, 0))


def polynomial_ring(base: Ring, *variables: str) -> tuple[PolynomialRing, tuple[RingElement, ...]]:
    """Convenience: build ``base[variables]`` and return it with its generators."""
    R = PolynomialRing(base, variables)
    return R, R.gens()


# -- text grammar ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        text = text.strip()
        if isinstance(self.ring, IntegersMod):
            m = re.fullmatch(r"(.*?)\s+mod\s+(\d+)", text)
            if m:
                if int(m.group(2)) != self.ring.modulus:
                    raise ParseError(f"modulus {m.group(2)} does not match {self.ring.name()}")
                text = m.group(1)
        out = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            pos = m.end()
            if m.group(1) is not None:
                out.append(("int", int(m.group(1))))
            elif m.group(2) is not None:
                out.append(("name", m.group(2)))
            else:
                out.append(("op", m.group(3)))
        if text[pos:].strip():
            raise ParseError(f"cannot tokenize {text!r}")
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, why):
        raise ParseError(f"{why} in {self.text!r} for ring {self.ring.name()}")

    def parse(self):
        if not self.tokens:
            self.fail("empty expression")
        v = self.expr()
        if self.pos != len(self.tokens):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return v

    def expr(self):
        r = self.ring
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = r.add(v, w) if op == "+" else r.sub(v, w)
        return v

    def term(self):
        r = self.ring
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            if op == "*":
                v = r.mul(v, w)
            else:
                v = self.divide(v, w)
        return v

    def divide(self, v, w):
        r = self.ring
        try:
            inv = r.unit_inverse(w)
        except UnitTestUnsupported:
            inv = None
        if inv is not None:
            return r.mul(v, inv)
        try:
            q = r.exact_div(v, w)
        except NotImplementedError:
            q = None
        if q is None:
            self.fail(f"cannot divide by {r.to_str(w)}")
        return q

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return self.ring.neg(self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "int":
                self.fail("exponent must be a nonnegative integer")
            v = self.ring.pow(v, e)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.ring.from_int(val)
        if kind == "name":
            p = self.ring.resolve_symbol(val)
            if p is None:
                self.fail(f"unknown symbol {val!r}")
            return p
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return v
        self.fail(f"unexpected token {val!r}")


def elements(ring: Ring, values: Iterable[Any]) -> list[RingElement]:
    return [ring(v) for v in values]
