"""
Twisted Hochschild complex HH_*(ZG, (ZG)^phi) for G = Z^2 in degrees 0-2.

    d1(a (x) b)       = b phi(a) - a b
    d2(a (x) b (x) c) = b (x) c phi(a) - ab (x) c + a (x) bc

The component of a (x) b is the semiconjugacy class of a*b; both terms of
d1 and all three terms of d2 stay inside one component.
"""
import time
from dataclasses import dataclass
from algebra.group_algebra import (
    FormalSum,
    GroupElement,
    ONE,
    RingElement,
    U,
    V,
    apply_phi,
    exact_divide,
    ring_mul,
)
from processors.semiconjugacy import class_id
from config.config import is_certificate_check_enabled
from utils.logging_utils import log_message


class HochschildError(ValueError):
    pass


class CertificateError(RuntimeError):
    pass


def _element(key):
    return key if isinstance(key, GroupElement) else GroupElement.from_pair(key)


class TensorChain1(FormalSum):
    """Hochschild 1-chain: mapping (a, b) -> nonzero int for a (x) b."""
    __slots__ = ()

    @staticmethod
    def _coerce_key(key):
        a, b = key
        return (_element(a), _element(b))

    def _format_key(self, key):
        return f"{key[0]}(x){key[1]}"

    def max_exponent(self):
        return max((g.max_exponent() for key in self.keys() for g in key), default=0)


class TensorChain2(FormalSum):
    """Hochschild 2-chain: mapping (a, b, c) -> nonzero int for a (x) b (x) c."""
    __slots__ = ()

    @staticmethod
    def _coerce_key(key):
        a, b, c = key
        return (_element(a), _element(b), _element(c))

    def _format_key(self, key):
        return "(x)".join(str(g) for g in key)

    def max_exponent(self):
        return max((g.max_exponent() for key in self.keys() for g in key), default=0)


def tensor(a, b, coeff=1):
    return TensorChain1({(a, b): coeff})


def tensor2(a, b, c, coeff=1):
    return TensorChain2({(a, b, c): coeff})


def tensor_product(x, y):
    """x (x) y for ring elements, expanded bilinearly."""
    return TensorChain1(((g, h), a * b) for g, a in x.items() for h, b in y.items())


@dataclass(frozen=True)
class Trivial:
    certificate: TensorChain2
    kind = "Trivial"


@dataclass(frozen=True)
class Nontrivial:
    invariant: tuple
    kind = "Nontrivial"


@dataclass(frozen=True)
class Unknown:
    support_bound: int
    kind = "Unknown"


def d1(phi, x):
    out = {}
    for (a, b), c in x.items():
        twisted = b * phi.apply(a)
        plain = a * b
        if twisted == plain:
            continue
        out[twisted] = out.get(twisted, 0) + c
        out[plain] = out.get(plain, 0) - c
    return RingElement(out)


def d2(phi, y):
    out = {}
    for (a, b, c), k in y.items():
        for key, sign in (((b, c * phi.apply(a)), 1), ((a * b, c), -1), ((a, b * c), 1)):
            out[key] = out.get(key, 0) + sign * k
    return TensorChain1(out)


def is_cycle(phi, x):
    return not d1(phi, x)


def decompose_components(phi, x):
    """Split x by class_id(phi, a*b); returns a dict ordered by ClassId."""
    buckets = {}
    for (a, b), c in x.items():
        buckets.setdefault(class_id(phi, a * b), {})[(a, b)] = c
    return {cid: TensorChain1(buckets[cid]) for cid in sorted(buckets)}


def left_abelianization(x):
    """Sum of coeff * theta(a) over the terms a (x) b."""
    m = sum(c * a.m for (a, _), c in x.items())
    n = sum(c * a.n for (a, _), c in x.items())
    return (m, n)


def homology_invariant(phi, x):
    """Left-factor abelianization of a cycle; vanishes on every d2 image."""
    if not is_cycle(phi, x):
        raise HochschildError("homology_invariant expects a d1-cycle")
    return left_abelianization(x)


def verify_certificate(phi, certificate, target, label="certificate"):
    if is_certificate_check_enabled() and d2(phi, certificate) != target:
        raise CertificateError(f"{label} failed d2 re-verification")
    return certificate


def _add(bucket, key, coeff):
    bucket[key] = bucket.get(key, 0) + coeff


def _reduce_power(phi, generator, k, h, coeff, chain, cert):
    """
    Rewrite coeff * generator^k (x) h as coeff * generator (x) chain-part
    plus d2 of certificate terms. chain and cert are dicts updated in place.

    Uses generator^(s+1) (x) h = generator (x) h phi(generator)^s
    + generator^s (x) generator h - d2(generator^s (x) generator (x) h).
    """
    image = phi.apply(generator)
    if k > 0:
        while k > 1:
            _add(chain, h * image ** (k - 1), coeff)
            _add(cert, (generator ** (k - 1), generator, h), -coeff)
            h = generator * h
            k -= 1
        _add(chain, h, coeff)
        return
    while k < 0:
        shifted = generator.inverse() * h
        _add(chain, shifted * image ** k, -coeff)
        _add(cert, (generator ** k, generator, shifted), coeff)
        h = shifted
        k += 1
    _add(cert, (ONE, ONE, h), coeff)


def reduce_u_power(phi, k, m, n):
    """
    Telescoping reduction u^k (x) u^m v^n ~ k * (u (x) u^(m+k-1) v^n).
    Returns (reduced, certificate) with u^k (x) u^m v^n - reduced = d2(certificate).
    Only valid when phi(u) = u, i.e. b1 = 1 and b2 = 0.
    """
    if not phi.fixes_u():
        raise HochschildError(f"reduce_u_power needs b1=1 and b2=0, got phi={phi.rows()}")
    g = GroupElement(m, n)
    chain, cert = {}, {}
    if k != 1:
        _reduce_power(phi, U, k, g, 1, chain, cert)
        reduced = TensorChain1({(U, h): c for h, c in chain.items()})
    else:
        reduced = tensor(U, g)
    certificate = TensorChain2(cert)
    expected = TensorChain1({(U, U ** (m + k - 1) * GroupElement(0, n)): k})
    if reduced != expected:
        raise CertificateError(f"u-power reduction produced {reduced}, expected {expected}")
    original = tensor(U ** k, g)
    verify_certificate(phi, certificate, original - reduced, label="u-power certificate")
    return reduced, certificate


def reduce_to_generators(phi, x):
    """
    Rewrite any 1-chain as u (x) p + v (x) q plus a boundary.
    Returns (p, q, certificate) with x = u (x) p + v (x) q + d2(certificate).

    A left factor u^k v^l is split with
    u^k v^l (x) b = v^l (x) b phi(u^k) + u^k (x) v^l b - d2(u^k (x) v^l (x) b),
    then each pure power is telescoped down to the generator.
    """
    p, q, cert = {}, {}, {}
    for (a, b), c in x.items():
        k, l = a.m, a.n
        if k == 0 and l == 0:
            _add(cert, (ONE, ONE, b), c)
            continue
        if k and l:
            u_part, v_part = U ** k, V ** l
            _add(cert, (u_part, v_part, b), -c)
            _reduce_power(phi, U, k, v_part * b, c, p, cert)
            _reduce_power(phi, V, l, b * phi.apply(u_part), c, q, cert)
        elif l == 0:
            _reduce_power(phi, U, k, b, c, p, cert)
        else:
            _reduce_power(phi, V, l, b, c, q, cert)
    return RingElement(p), RingElement(q), TensorChain2(cert)


def _commutator_multiplier(phi, p, q):
    """c with c (v - phi(v)) = p and c (phi(u) - u) = q, or None."""
    left = RingElement.monomial(V) - apply_phi(phi, RingElement.monomial(V))
    right = apply_phi(phi, RingElement.monomial(U)) - RingElement.monomial(U)
    if left:
        c = exact_divide(p, left)
        if c is None or ring_mul(c, right) != q:
            return None
        return c
    if right:
        if p:
            return None
        return exact_divide(q, right)
    if p or q:
        return None
    return RingElement()


def boundary_certificate(phi, x):
    """
    Exact decision of x in im(d2): a 2-chain y with d2(y) = x, or None.

    After reduce_to_generators, x is a boundary iff u (x) p + v (x) q is the
    boundary of a sum of commutator chains u (x) v (x) h - v (x) u (x) h,
    whose boundary is u (x) h(v - phi(v)) + v (x) h(phi(u) - u).
    """
    start = time.time()
    p, q, cert = reduce_to_generators(phi, x)
    c = _commutator_multiplier(phi, p, q)
    if c is None:
        log_message(f"No boundary certificate: generator form u(x)[{p}] + v(x)[{q}] is not a commutator boundary.", level="DEBUG")
        return None
    commutators = TensorChain2(
        [((U, V, h), k) for h, k in c.items()] + [((V, U, h), -k) for h, k in c.items()]
    )
    certificate = cert + commutators
    verify_certificate(phi, certificate, x)
    log_message(f"Boundary certificate with {len(certificate)} terms found in {time.time() - start:.4f} seconds.", level="DEBUG")
    return certificate


def is_trivial(phi, component, support_bound):
    """
    Nontrivial(invariant) when the invariant is nonzero, Trivial(certificate)
    when a certificate reaching at most support_bound beyond the component's
    exponents exists, Unknown(support_bound) otherwise.
    """
    if not is_cycle(phi, component):
        raise HochschildError("is_trivial expects a d1-cycle")
    if len(decompose_components(phi, component)) > 1:
        raise HochschildError("is_trivial expects a chain supported in a single semiconjugacy class")
    if not component:
        return Trivial(TensorChain2())
    invariant = left_abelianization(component)
    if invariant != (0, 0):
        return Nontrivial(invariant)
    certificate = boundary_certificate(phi, component)
    if certificate is None:
        log_message(f"Zero invariant but no certificate for component {component}.", level="WARNING")
        return Unknown(support_bound)
    reach = certificate.max_exponent() - component.max_exponent()
    if reach > support_bound:
        log_message(f"Certificate reaches {reach} beyond the component, above the support bound {support_bound}.", level="WARNING")
        return Unknown(support_bound)
    return Trivial(certificate)
