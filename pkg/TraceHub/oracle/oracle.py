"""
Brute-force verifiers independent of the normal-form machinery: conjugator
enumeration, windowed boundary-certificate search solved as an exact integer
system, and seeded generators of valid cellular data.
"""
import random
import time
from dataclasses import dataclass
from functools import lru_cache
from algebra.group_algebra import GroupElement, RingElement
from algebra.integer_lattice import solve_sparse_system
from processors.semiconjugacy import class_id, semicentralizer, twisted_matrix
from processors.hochschild import (
    CertificateError,
    HochschildError,
    TensorChain2,
    d2,
    is_cycle,
    reduce_to_generators,
    tensor_product,
)
from processors.trace_engine import (
    complete_cellular_data,
    cycle_obstruction_classes,
    validate_cellular,
)
from config.config import get_oracle_max_terms, get_oracle_window
from utils.logging_utils import log_message

MAX_CIRCLES = 3
NOISE_TERMS = 3


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    exponent_bound: int = None
    max_terms: int = None

    def __post_init__(self):
        if self.exponent_bound is None:
            object.__setattr__(self, 'exponent_bound', get_oracle_window())
        if self.max_terms is None:
            object.__setattr__(self, 'max_terms', get_oracle_max_terms())
        if self.exponent_bound < 0 or self.max_terms < 1:
            raise ValueError(f"invalid search budget: window={self.exponent_bound}, max_terms={self.max_terms}")


@lru_cache(maxsize=None)
def _window(bound):
    """All z in [-B, B]^2 ordered by max-norm, then lexicographically."""
    points = [(x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)]
    return tuple(sorted(points, key=lambda z: (max(abs(z[0]), abs(z[1])), z[0], z[1])))


@lru_cache(maxsize=64)
def _window_table(phi, bound):
    """Image ([phi]-I) z -> first z in canonical order."""
    M = twisted_matrix(phi)
    table = {}
    for z in _window(bound):
        table.setdefault(M.apply(z), z)
    return table


def brute_same_class(phi, g1, g2, budget):
    """First z in the window with ([phi]-I) z = theta(g2 g1^-1), or None."""
    return _window_table(phi, budget.exponent_bound).get((g2 * g1.inverse()).theta())


def _in_window(triple, bound):
    return all(g.max_exponent() <= bound for g in triple)


def _candidate_tensors(phi, cycle, budget):
    """
    2-tensors whose d2 touches a support tensor x (x) y, with the free
    factor ranging over the window:
    (a, x, y phi(a)^-1), (a, a^-1 x, y) and (x, b, b^-1 y).
    """
    bound = budget.exponent_bound
    seen = {}
    for (x, y) in cycle.keys():
        for f in _window(bound):
            g = GroupElement(*f)
            for triple in (
                (g, x, y * phi.apply(g).inverse()),
                (g, g.inverse() * x, y),
                (x, g, g.inverse() * y),
            ):
                if triple not in seen and _in_window(triple, bound):
                    seen[triple] = None
                    if len(seen) >= budget.max_terms:
                        return list(seen)
    return list(seen)


def brute_certificate(phi, cycle, budget):
    """Solve d2(y) = cycle exactly over the windowed candidate 2-tensors."""
    if not is_cycle(phi, cycle):
        raise HochschildError("brute_certificate expects a d1-cycle")
    if not cycle:
        return TensorChain2()
    start = time.time()
    candidates = _candidate_tensors(phi, cycle, budget)
    columns = [dict(d2(phi, TensorChain2({triple: 1})).items()) for triple in candidates]
    solution = solve_sparse_system(columns, dict(cycle.items()))
    log_message(f"Oracle searched {len(candidates)} candidate tensors in {time.time() - start:.2f} seconds.", level="DEBUG")
    if solution is None:
        return None
    certificate = TensorChain2((candidates[j], c) for j, c in solution.items())
    if d2(phi, certificate) != cycle:
        raise CertificateError("oracle solution failed d2 re-verification")
    return certificate


def _random_element(rng, bound):
    return GroupElement(rng.randint(-bound, bound), rng.randint(-bound, bound))


def _random_ring(rng, bound, terms):
    return RingElement((_random_element(rng, bound), rng.choice((-1, 1))) for _ in range(terms))


def _circles(phi, rng, generator, bound):
    """Sum of h_j whose products generator*h_j lie in pairwise distinct classes."""
    wanted = rng.randint(1, MAX_CIRCLES)
    chosen, used = [], set()
    for _ in range(20 * wanted):
        if len(chosen) == wanted:
            break
        h = _random_element(rng, bound)
        cid = class_id(phi, generator * h)
        if cid not in used:
            used.add(cid)
            chosen.append(h)
    return RingElement((h, 1) for h in chosen)


def _kernel_circles(phi, rng, bound):
    """
    (p, q) such that u (x) p + v (x) q is homologous to a sum of circles
    g (x) h_j along the kernel generator g, one per class.
    """
    generator = GroupElement(*semicentralizer(phi).generator())
    circles = tensor_product(RingElement.monomial(generator), _circles(phi, rng, generator, bound))
    p, q, _ = reduce_to_generators(phi, circles)
    return p, q


def generate_valid_data(phi, budget, seed, boundary_arcs=True):
    """
    Deterministic valid cellular data for phi.

    With noise x1, x2 the homotopy D0 = (x1, x2), D1 = (b - x2, a + x1) has
    trace (u - 1) (x) a - (v - 1) (x) b. When ker([phi]-I) has rank 1, a and
    b carry transverse circles along its generator, all of one sign, and
    boundary arcs go on a direction phi does not fix. For det([phi]-I) != 0
    both carry arcs. Non-cycle classes are excluded. Without boundary_arcs
    no arcs are drawn and the exclusion set stays empty.
    """
    rng = random.Random(seed)
    bound = max(1, min(budget.exponent_bound, 3))
    x1 = _random_ring(rng, bound, rng.randint(0, NOISE_TERMS))
    x2 = _random_ring(rng, bound, rng.randint(0, NOISE_TERMS))
    sign = rng.choice((1, -1))
    a, b = RingElement(), RingElement()
    kernel_rank = semicentralizer(phi).rank
    if kernel_rank == 1:
        p, q = _kernel_circles(phi, rng, bound)
        a, b = p.scale(sign), q.scale(-sign)
        if boundary_arcs:
            arcs = _random_ring(rng, bound, rng.randint(0, NOISE_TERMS))
            if phi.fixes_v():
                a = a + arcs
            else:
                b = b + arcs
    elif kernel_rank == 0 and boundary_arcs:
        a = _random_ring(rng, bound, rng.randint(1, NOISE_TERMS))
        b = _random_ring(rng, bound, rng.randint(0, NOISE_TERMS))
    D0 = (x1, x2)
    D1 = (b - x2, a + x1)
    data = complete_cellular_data(phi, D0, D1)
    if boundary_arcs:
        data = complete_cellular_data(phi, D0, D1, data.F0, cycle_obstruction_classes(phi, data))
    violations = validate_cellular(phi, data)
    if violations:
        raise OracleError(f"generated data for phi={phi.rows()}, seed={seed} is invalid: {violations}")
    log_message(f"Generated cellular data for phi={phi.rows()} (seed {seed}) with {len(data.excluded_classes)} excluded classes.", level="DEBUG")
    return data
