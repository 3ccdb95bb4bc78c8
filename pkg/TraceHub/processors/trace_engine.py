"""
One-parameter trace R(F) over the standard CW torus (one 0-cell w, 1-cells
u, v, one 2-cell E) and the invariants N(F), L(F) built from it.

Cellular chains are right ZG-modules and cellular maps are phi-twisted,
F(x g) = F(x) phi(g). Matrices are indexed [source cell][target cell], so
the matrix of the composite dF is [F][d] and that of Fd is phi([d])[F].

    [d1] = [[u - 1], [v - 1]]      rows u~, v~
    [d2] = [[1 - v, u - 1]]        row E~
"""
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from algebra.group_algebra import (
    Endomorphism,
    RingElement,
    U,
    V,
    apply_phi,
    exact_divide,
    power_sum,
)
from processors.semiconjugacy import class_count, class_id, semicentralizer, twisted_matrix
from processors.hochschild import (
    HochschildError,
    Nontrivial,
    TensorChain1,
    Unknown,
    d1,
    decompose_components,
    is_cycle,
    is_trivial,
    tensor_product,
)
from config.config import get_max_workers, get_support_bound, get_trace_sign
from utils.logging_utils import log_message

ONE_RING = RingElement.constant(1)
U_RING = RingElement.monomial(U)
V_RING = RingElement.monomial(V)

BOUNDARY_1 = (U_RING - ONE_RING, V_RING - ONE_RING)
BOUNDARY_2 = (ONE_RING - V_RING, U_RING - ONE_RING)

ALPHA_GENERATOR = "generator"
ALPHA_NONE = "none"
ALPHA_ANY_PRIMITIVE = "any-primitive"
INCONCLUSIVE = "inconclusive"


class InvalidCellularDataError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid cellular data")


@dataclass(frozen=True)
class ChainMapMatrices:
    """Matrices of a cellular chain map in degrees 0, 1, 2 (1x1, 2x2, 1x1)."""
    degree0: RingElement
    degree1: tuple
    degree2: RingElement

    def __sub__(self, other):
        return ChainMapMatrices(
            self.degree0 - other.degree0,
            tuple(tuple(x - y for x, y in zip(row, other_row)) for row, other_row in zip(self.degree1, other.degree1)),
            self.degree2 - other.degree2,
        )

    def __add__(self, other):
        return ChainMapMatrices(
            self.degree0 + other.degree0,
            tuple(tuple(x + y for x, y in zip(row, other_row)) for row, other_row in zip(self.degree1, other.degree1)),
            self.degree2 + other.degree2,
        )


@dataclass(frozen=True)
class CellularHomotopyData:
    D0: tuple
    D1: tuple
    F0: ChainMapMatrices
    F1: ChainMapMatrices
    excluded_classes: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class TraceReport:
    R: TensorChain1
    components: dict
    N: int
    L: tuple
    alpha: tuple
    alpha_mode: str
    theorem_holds: object
    det_slice: int
    class_count: object


def det_slice(phi):
    """det([phi] - I), the Lefschetz number of each time slice."""
    return twisted_matrix(phi).det()


def standard_chain_map(phi):
    """
    Cellular chain map of the linear torus map with matrix [phi], by Fox
    calculus: the row of a generator e with phi(e) = u^a v^b is
    (d/du, d/dv) of u^a v^b.
    """
    rows = []
    for generator in (U, V):
        image = phi.apply(generator)
        rows.append((power_sum(U, image.m), RingElement.monomial(U ** image.m) * power_sum(V, image.n)))
    degree1 = tuple(rows)
    numerator = apply_phi(phi, BOUNDARY_2[0]) * degree1[0][0] + apply_phi(phi, BOUNDARY_2[1]) * degree1[1][0]
    degree2 = exact_divide(numerator, BOUNDARY_2[0])
    if degree2 is None:
        raise InvalidCellularDataError([f"no degree-2 chain map for phi={phi.rows()}"])
    return ChainMapMatrices(ONE_RING, degree1, degree2)


def homotopy_difference(phi, D0, D1):
    """The chain map dD + Dd determined by a homotopy (D0, D1)."""
    degree0 = D0[0] * BOUNDARY_1[0] + D0[1] * BOUNDARY_1[1]
    degree1 = tuple(
        tuple(D1[i] * BOUNDARY_2[j] + apply_phi(phi, BOUNDARY_1[i]) * D0[j] for j in range(2))
        for i in range(2)
    )
    degree2 = apply_phi(phi, BOUNDARY_2[0]) * D1[0] + apply_phi(phi, BOUNDARY_2[1]) * D1[1]
    return ChainMapMatrices(degree0, degree1, degree2)


def complete_cellular_data(phi, D0, D1, F0=None, excluded_classes=()):
    """Data with F1 = F0 + (dD + Dd); valid by construction."""
    F0 = F0 if F0 is not None else standard_chain_map(phi)
    F1 = F0 + homotopy_difference(phi, D0, D1)
    return CellularHomotopyData(tuple(D0), tuple(D1), F0, F1, frozenset(excluded_classes))


def _chain_map_violations(phi, F, label):
    violations = []
    for i in range(2):
        twisted = apply_phi(phi, BOUNDARY_1[i]) * F.degree0
        composed = F.degree1[i][0] * BOUNDARY_1[0] + F.degree1[i][1] * BOUNDARY_1[1]
        if composed != twisted:
            violations.append(f"{label} is not a chain map in degree 1 (row {'uv'[i]})")
    for j in range(2):
        twisted = apply_phi(phi, BOUNDARY_2[0]) * F.degree1[0][j] + apply_phi(phi, BOUNDARY_2[1]) * F.degree1[1][j]
        if F.degree2 * BOUNDARY_2[j] != twisted:
            violations.append(f"{label} is not a chain map in degree 2 (column {'uv'[j]})")
    return violations


def validate_cellular(phi, data):
    """List of violated chain-map / chain-homotopy identities; empty when valid."""
    violations = _chain_map_violations(phi, data.F0, "F0") + _chain_map_violations(phi, data.F1, "F1")
    delta = data.F1 - data.F0
    expected = homotopy_difference(phi, data.D0, data.D1)
    if delta.degree0 != expected.degree0:
        violations.append("homotopy identity fails in degree 0: dD0 != F1 - F0")
    for i in range(2):
        for j in range(2):
            if delta.degree1[i][j] != expected.degree1[i][j]:
                violations.append(f"homotopy identity fails in degree 1 at ({'uv'[i]},{'uv'[j]}): dD1 + D0d != F1 - F0")
    return violations


def _raw_trace(data):
    """tr(-[d1] (x) [D0]) + tr([d2] (x) [D1]) before exclusions."""
    R = TensorChain1()
    for i in range(2):
        R = R - tensor_product(BOUNDARY_1[i], data.D0[i])
        R = R + tensor_product(BOUNDARY_2[i], data.D1[i])
    return R


def cycle_obstruction_classes(phi, data):
    """Classes on which the unexcluded trace is not a d1-cycle."""
    boundary = d1(phi, _raw_trace(data))
    return sorted({class_id(phi, g) for g in boundary.keys()})


def canonical_exclusions(phi, data):
    """Excluded classes with every representative reduced to its ClassId."""
    return frozenset(class_id(phi, cid.rep) for cid in data.excluded_classes)


def one_parameter_trace(phi, data, sign=None):
    violations = validate_cellular(phi, data)
    if violations:
        raise InvalidCellularDataError(violations)
    R = _raw_trace(data)
    if (sign or get_trace_sign()) == "left":
        R = -R
    excluded = canonical_exclusions(phi, data)
    return R.filter(lambda key: class_id(phi, key[0] * key[1]) not in excluded)


def _alpha(phi):
    kernel = semicentralizer(phi)
    if kernel.rank == 1:
        return kernel.generator(), ALPHA_GENERATOR
    if kernel.rank == 0:
        return None, ALPHA_NONE
    return None, ALPHA_ANY_PRIMITIVE


def _theorem_holds(verdicts, N, L, alpha, alpha_mode):
    if any(isinstance(v, Unknown) for v in verdicts):
        return INCONCLUSIVE
    if alpha_mode == ALPHA_GENERATOR:
        scaled = (N * alpha[0], N * alpha[1])
        return L == scaled or L == (-scaled[0], -scaled[1])
    return L == (0, 0) and N == 0


def analyze(phi, R, support_bound=None, max_workers=None):
    """Per-class verdicts for a trace cycle and the resulting N, L, alpha."""
    if not is_cycle(phi, R):
        raise HochschildError("analyze expects a d1-cycle; exclude the boundary classes first")
    bound = support_bound if support_bound is not None else get_support_bound()
    start_time = time.time()
    components = decompose_components(phi, R)
    verdicts = {}
    with ThreadPoolExecutor(max_workers=max_workers or get_max_workers()) as executor:
        futures = {executor.submit(is_trivial, phi, chain, bound): cid for cid, chain in components.items()}
        for future in as_completed(futures):
            verdicts[futures[future]] = future.result()
    ordered = {cid: verdicts[cid] for cid in sorted(verdicts)}

    nontrivial = [v for v in ordered.values() if isinstance(v, Nontrivial)]
    N = len(nontrivial)
    L = (sum(v.invariant[0] for v in nontrivial), sum(v.invariant[1] for v in nontrivial))
    alpha, alpha_mode = _alpha(phi)
    holds = _theorem_holds(ordered.values(), N, L, alpha, alpha_mode)
    log_message(f"Analyzed {len(ordered)} components in {time.time() - start_time:.2f} seconds: N={N}, L={L}, theorem_holds={holds}", level="INFO")
    if holds is False:
        log_message(f"L={L} is not +-{N}*alpha for phi={phi.rows()}", level="WARNING")
    return TraceReport(R, ordered, N, L, alpha, alpha_mode, holds, det_slice(phi), class_count(phi))


def verify_theorem(phi, R, support_bound=None):
    """analyze plus the exit status the command line reports for it."""
    report = analyze(phi, R, support_bound)
    if report.theorem_holds is True:
        return report, 0
    if report.theorem_holds is False:
        return report, 3
    return report, 4


def fixed_point_free_example():
    """phi = I with the constant homotopy: R = 0, hence N = L = 0."""
    phi = Endomorphism.identity()
    zero = (RingElement(), RingElement())
    return phi, complete_cellular_data(phi, zero, zero)
