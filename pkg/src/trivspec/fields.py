"""Exact field backends.

Three carriers are shipped: prime fields F_p (payload: int in [0, p)), the
rationals (payload: fractions.Fraction) and univariate rational function
fields F_p(s) (payload: RatFunc).  A field object is an arithmetic *context*:
all operations go through its methods, so matrix and algebra code stays
backend-agnostic.  All arithmetic is exact; there is no floating point
anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import unipoly
from .errors import InputError


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p for a prime p; elements are ints reduced mod p."""

    variant = "prime"

    def __init__(self, p):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime", p=p)
        self.p = p
        self.characteristic = p
        self.cardinality = p
        self.zero = 0
        self.one = 1

    def from_int(self, k):
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def sort_key(self, a):
        return a % self.p

    def to_str(self, a):
        return str(a % self.p)

    def from_str(self, s):
        try:
            return int(s, 10) % self.p
        except ValueError:
            raise InputError(f"not an integer scalar: {s!r}", scalar=s)

    def describe(self):
        return {"variant": "prime", "characteristic": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalField:
    """The rationals; elements are fractions.Fraction values."""

    variant = "rationals"

    def __init__(self):
        self.characteristic = 0
        self.cardinality = None
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def elements(self):
        raise InputError("the rationals are infinite; no element enumeration")

    def random(self, rng):
        return Fraction(rng.randint(-20, 20), rng.randint(1, 12))

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return str(a)

    def from_str(self, s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational scalar: {s!r}", scalar=s)

    def describe(self):
        return {"variant": "rationals", "characteristic": 0}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "Q"


@dataclass(frozen=True)
class RatFunc:
    """A reduced fraction of F_p[s] polynomials with a monic denominator."""

    num: tuple
    den: tuple


class RationalFunctionField:
    """F_p(s): rational functions in one variable over a prime field."""

    variant = "rational_function"

    def __init__(self, p, variable="s"):
        self.base = PrimeField(p)
        self.p = p
        self.variable = variable
        self.characteristic = p
        self.cardinality = None
        self.zero = RatFunc((), (1,))
        self.one = RatFunc((1,), (1,))

    # -- normalization ------------------------------------------------------

    def _make(self, num, den):
        base = self.base
        num = unipoly.trim(num, base)
        den = unipoly.trim(den, base)
        if not den:
            raise ZeroDivisionError("zero denominator in rational function")
        if not num:
            return self.zero
        g = unipoly.gcd(num, den, base)
        if unipoly.deg(g) > 0:
            num = unipoly.divmod_poly(num, g, base)[0]
            den = unipoly.divmod_poly(den, g, base)[0]
        lead_inv = base.inv(den[-1])
        num = unipoly.scale(num, lead_inv, base)
        den = unipoly.scale(den, lead_inv, base)
        return RatFunc(num, den)

    def from_poly(self, coeffs):
        return self._make(tuple(c % self.p for c in coeffs), (1,))

    def variable_element(self):
        return self.from_poly((0, 1))

    def from_int(self, k):
        return self.from_poly((k,))

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        base = self.base
        num = unipoly.add(unipoly.mul(a.num, b.den, base), unipoly.mul(b.num, a.den, base), base)
        return self._make(num, unipoly.mul(a.den, b.den, base))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return RatFunc(unipoly.neg(a.num, self.base), a.den)

    def mul(self, a, b):
        base = self.base
        return self._make(unipoly.mul(a.num, b.num, base), unipoly.mul(a.den, b.den, base))

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return self._make(a.den, a.num)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return not a.num

    def eq(self, a, b):
        return a.num == b.num and a.den == b.den

    def elements(self):
        raise InputError("rational function fields are infinite; no enumeration")

    def random(self, rng, max_deg=2):
        base = self.base
        num = tuple(rng.randrange(self.p) for _ in range(rng.randint(1, max_deg + 1)))
        den = ()
        while not den:
            den = unipoly.trim(
                tuple(rng.randrange(self.p) for _ in range(rng.randint(1, max_deg + 1))), base
            )
        return self._make(num, den)

    def sort_key(self, a):
        return (len(a.num), a.num, len(a.den), a.den)

    # -- text form ------------------------------------------------------------

    def to_str(self, a):
        if not a.num:
            return "0"
        num = unipoly.to_str(a.num, self.base, self.variable)
        if a.den == (1,):
            return num
        den = unipoly.to_str(a.den, self.base, self.variable)
        return f"({num})/({den})"

    def _parse_poly(self, s):
        s = s.strip()
        if s in ("", "0"):
            return ()
        coeffs = {}
        for term in s.split("+"):
            term = term.strip()
            if not term:
                raise InputError(f"bad polynomial text: {s!r}", text=s)
            if self.variable in term:
                head, _, tail = term.partition(self.variable)
                coeff = head.rstrip("*").strip()
                c = int(coeff, 10) if coeff else 1
                if tail.startswith("^"):
                    k = int(tail[1:], 10)
                elif tail == "":
                    k = 1
                else:
                    raise InputError(f"bad polynomial term: {term!r}", text=s)
            else:
                c = int(term, 10)
                k = 0
            coeffs[k] = (coeffs.get(k, 0) + c) % self.p
        out = [0] * (max(coeffs) + 1)
        for k, c in coeffs.items():
            out[k] = c
        return unipoly.trim(out, self.base)

    def from_str(self, s):
        s = s.strip()
        if "/" in s:
            num_s, _, den_s = s.partition("/")
            num = self._parse_poly(num_s.strip().strip("()"))
            den = self._parse_poly(den_s.strip().strip("()"))
        else:
            num = self._parse_poly(s.strip("()"))
            den = (1,)
        return self._make(num, den)

    def describe(self):
        return {
            "variant": "rational_function",
            "characteristic": self.p,
            "variable": self.variable,
        }

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.p == self.p
            and other.variable == self.variable
        )

    def __hash__(self):
        return hash(("RationalFunctionField", self.p, self.variable))

    def __repr__(self):
        return f"F{self.p}({self.variable})"


def field_from_json(obj):
    if not isinstance(obj, dict) or "variant" not in obj:
        raise InputError("field descriptor must be an object with a 'variant'", at="field")
    variant = obj["variant"]
    if variant == "prime":
        return PrimeField(int(obj["characteristic"]))
    if variant == "rationals":
        return RationalField()
    if variant == "rational_function":
        return RationalFunctionField(int(obj["characteristic"]), obj.get("variable", "s"))
    raise InputError(f"unknown field variant {variant!r}", at="field.variant")
