"""
Exact arithmetic in G = Z^2 (written multiplicatively as u^m v^n), its
endomorphisms and the integral group ring ZG.

Everything here is immutable; exponents and coefficients are Python ints.
"""
from dataclasses import dataclass
from sympy import Poly, ZZ, symbols

_U_SYMBOL, _V_SYMBOL = symbols('u v')


@dataclass(frozen=True, order=True)
class GroupElement:
    """u^m v^n, ordered lexicographically by (m, n)."""
    m: int = 0
    n: int = 0

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return GroupElement(self.m + other.m, self.n + other.n)

    def __pow__(self, k):
        return GroupElement(self.m * k, self.n * k)

    def inverse(self):
        return GroupElement(-self.m, -self.n)

    def theta(self):
        return (self.m, self.n)

    def is_identity(self):
        return self.m == 0 and self.n == 0

    def max_exponent(self):
        return max(abs(self.m), abs(self.n))

    @classmethod
    def from_pair(cls, pair):
        m, n = pair
        return cls(int(m), int(n))

    def __str__(self):
        if self.is_identity():
            return "1"
        parts = []
        for name, exponent in (("u", self.m), ("v", self.n)):
            if exponent == 1:
                parts.append(name)
            elif exponent:
                parts.append(f"{name}^{exponent}")
        return "".join(parts)


ONE = GroupElement(0, 0)
U = GroupElement(1, 0)
V = GroupElement(0, 1)


@dataclass(frozen=True)
class Endomorphism:
    """
    Endomorphism of Z^2 given by the matrix [[b1, b3], [b2, b4]]:
    phi(u^m v^n) = u^(m*b1 + n*b3) v^(m*b2 + n*b4).
    """
    b1: int
    b2: int
    b3: int
    b4: int

    @classmethod
    def from_rows(cls, rows):
        (b1, b3), (b2, b4) = rows
        return cls(int(b1), int(b2), int(b3), int(b4))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def rows(self):
        return [[self.b1, self.b3], [self.b2, self.b4]]

    def apply(self, g):
        return GroupElement(g.m * self.b1 + g.n * self.b3, g.m * self.b2 + g.n * self.b4)

    def compose(self, other):
        """Matrix product self * other, i.e. apply other first."""
        return Endomorphism(
            self.b1 * other.b1 + self.b3 * other.b2,
            self.b2 * other.b1 + self.b4 * other.b2,
            self.b1 * other.b3 + self.b3 * other.b4,
            self.b2 * other.b3 + self.b4 * other.b4,
        )

    def is_identity(self):
        return (self.b1, self.b2, self.b3, self.b4) == (1, 0, 0, 1)

    def fixes_u(self):
        return self.b1 == 1 and self.b2 == 0

    def fixes_v(self):
        return self.b3 == 0 and self.b4 == 1

    def __str__(self):
        return str(self.rows())


class FormalSum:
    """
    Finite Z-linear combination of orderable keys in canonical sparse form:
    zero coefficients are never stored and terms are kept sorted.
    """
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        collected = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coeff in items:
                key = self._coerce_key(key)
                collected[key] = collected.get(key, 0) + int(coeff)
        self._terms = {key: coeff for key, coeff in sorted(collected.items()) if coeff}
        self._hash = None

    @staticmethod
    def _coerce_key(key):
        return key

    @classmethod
    def zero(cls):
        return cls()

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coefficient(self, key):
        return self._terms.get(self._coerce_key(key), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, tuple(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return type(self)(merged)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return type(self)({key: -coeff for key, coeff in self._terms.items()})

    def scale(self, k):
        return type(self)({key: k * coeff for key, coeff in self._terms.items()})

    def __rmul__(self, k):
        if isinstance(k, int):
            return self.scale(k)
        return NotImplemented

    def filter(self, predicate):
        """Sub-sum of the terms whose key satisfies predicate."""
        return type(self)({key: coeff for key, coeff in self._terms.items() if predicate(key)})

    def _format_key(self, key):
        return str(key)

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for key, coeff in self._terms.items():
            body = self._format_key(key)
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            text = body if magnitude == 1 else f"{magnitude}*{body}"
            pieces.append((sign, text))
        first_sign, first_text = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class RingElement(FormalSum):
    """An element of ZG: mapping GroupElement -> nonzero int."""
    __slots__ = ()

    @staticmethod
    def _coerce_key(key):
        if isinstance(key, GroupElement):
            return key
        return GroupElement.from_pair(key)

    @classmethod
    def monomial(cls, g, coeff=1):
        return cls({g: coeff})

    @classmethod
    def constant(cls, coeff=1):
        return cls({ONE: coeff})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, GroupElement):
            return RingElement({g * other: c for g, c in self.items()})
        if isinstance(other, RingElement):
            return ring_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, GroupElement)):
            return self.__mul__(other)
        return NotImplemented

    def max_exponent(self):
        return max((g.max_exponent() for g in self.keys()), default=0)


def apply_phi(phi, x):
    """Replace every group element g of x by phi(g); coefficients unchanged."""
    if isinstance(x, GroupElement):
        return phi.apply(x)
    return RingElement((phi.apply(g), c) for g, c in x.items())


def ring_mul(x, y):
    """Product in ZG: (a*g)(b*h) = ab*(gh), extended bilinearly."""
    product = {}
    for g, a in x.items():
        for h, b in y.items():
            key = g * h
            product[key] = product.get(key, 0) + a * b
    return RingElement(product)


def power_sum(g, k):
    """
    Fox-derivative helper: 1 + g + ... + g^(k-1) for k > 0,
    -(g^-1 + ... + g^k) for k < 0 and 0 for k == 0.
    """
    if k > 0:
        return RingElement((g ** i, 1) for i in range(k))
    if k < 0:
        return RingElement((g ** i, -1) for i in range(k, 0))
    return RingElement()


def _lower_corner(x):
    return (min(g.m for g in x.keys()), min(g.n for g in x.keys()))


def _to_poly(x, corner):
    cm, cn = corner
    return Poly.from_dict({(g.m - cm, g.n - cn): c for g, c in x.items()}, _U_SYMBOL, _V_SYMBOL, domain=ZZ)


def exact_divide(p, q):
    """
    Exact quotient p / q in the Laurent ring ZG, or None when q does not
    divide p. Both are shifted to honest polynomials first; the shifted q is
    divisible by neither u nor v, so polynomial divisibility decides it.
    """
    if not q:
        raise ZeroDivisionError("division by the zero ring element")
    if not p:
        return RingElement()
    p_corner, q_corner = _lower_corner(p), _lower_corner(q)
    quotient, remainder = _to_poly(p, p_corner).div(_to_poly(q, q_corner))
    if not remainder.is_zero:
        return None
    shift = GroupElement(p_corner[0] - q_corner[0], p_corner[1] - q_corner[1])
    terms = {}
    for (i, j), coeff in quotient.terms():
        if not coeff.is_integer:
            return None
        terms[GroupElement(i, j) * shift] = int(coeff)
    result = RingElement(terms)
    if ring_mul(result, q) != p:
        return None
    return result
