import json
import sys
from algebra.group_algebra import Endomorphism, GroupElement, RingElement
from algebra.integer_lattice import IntMatrix2
from processors.semiconjugacy import ClassId
from processors.hochschild import Nontrivial, TensorChain1, TensorChain2, Trivial
from processors.trace_engine import CellularHomotopyData, ChainMapMatrices


class InputError(ValueError):
    pass


def canonical_dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_document(path):
    try:
        if path == '-':
            return json.load(sys.stdin)
        with open(path, 'r') as handle:
            return json.load(handle)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")


def write_document(text, path=None):
    if path is None or path == '-':
        sys.stdout.write(text)
        return
    with open(path, 'w') as handle:
        handle.write(text)


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


def _pair(value, what):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise InputError(f"{what} must be a pair [m, n], got {value!r}")
    return (_int(value[0], what), _int(value[1], what))


def parse_pair(text):
    """'m,n' or '[m,n]' -> (m, n). The bracketed form lets a pair start with a minus sign."""
    body = text.strip()
    if body.startswith('[') and body.endswith(']'):
        body = body[1:-1]
    try:
        m, n = (int(part) for part in body.split(','))
    except ValueError:
        raise InputError(f"expected 'm,n', got {text!r}")
    return (m, n)


def parse_matrix(value):
    """JSON text or nested list -> [[a, b], [c, d]] of ints."""
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as e:
            raise InputError(f"matrix is not valid JSON: {e}")
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"matrix must be [[a, b], [c, d]], got {value!r}")
    return [list(_pair(row, "matrix row")) for row in value]


def parse_phi(value):
    return Endomorphism.from_rows(parse_matrix(value))


def parse_int_matrix(value):
    return IntMatrix2.from_rows(parse_matrix(value))


def element_to_json(g):
    return [g.m, g.n]


def element_from_json(value, what="group element"):
    return GroupElement(*_pair(value, what))


def ring_to_json(x):
    return [[c, g.m, g.n] for g, c in x.items()]


def ring_from_json(value):
    if not isinstance(value, list):
        raise InputError(f"ring element must be a list of [c, m, n], got {value!r}")
    terms = []
    for term in value:
        if not isinstance(term, list) or len(term) != 3:
            raise InputError(f"ring term must be [c, m, n], got {term!r}")
        c, m, n = (_int(t, "ring term") for t in term)
        terms.append((GroupElement(m, n), c))
    return RingElement(terms)


def chain1_to_json(x):
    return [{"c": c, "a": element_to_json(a), "b": element_to_json(b)} for (a, b), c in x.items()]


def chain2_to_json(y):
    return [{"c": c, "a": element_to_json(a), "b": element_to_json(b), "t": element_to_json(t)} for (a, b, t), c in y.items()]


def _records(value, fields):
    if not isinstance(value, list):
        raise InputError(f"chain must be a list of records, got {value!r}")
    out = []
    for record in value:
        if not isinstance(record, dict) or set(fields + ("c",)) - set(record):
            raise InputError(f"chain record needs keys c, {', '.join(fields)}: {record!r}")
        key = tuple(element_from_json(record[f], f"chain field {f}") for f in fields)
        out.append((key, _int(record["c"], "chain coefficient")))
    return out


def chain1_from_json(value):
    return TensorChain1(_records(value, ("a", "b")))


def chain2_from_json(value):
    return TensorChain2(_records(value, ("a", "b", "t")))


def class_to_json(cid):
    return cid.to_pair()


def ring_matrix_to_json(rows):
    return [[ring_to_json(x) for x in row] for row in rows]


def chain_map_to_json(F):
    return {
        "0": [[ring_to_json(F.degree0)]],
        "1": ring_matrix_to_json(F.degree1),
        "2": [[ring_to_json(F.degree2)]],
    }


def _square(value, size, what):
    if not isinstance(value, list) or len(value) != size or any(not isinstance(row, list) or len(row) != size for row in value):
        raise InputError(f"{what} must be a {size}x{size} matrix of ring elements")
    return [[ring_from_json(x) for x in row] for row in value]


def chain_map_from_json(value, what):
    if not isinstance(value, dict) or {"0", "1", "2"} - set(value):
        raise InputError(f"{what} must have matrices for degrees \"0\", \"1\" and \"2\"")
    degree0 = _square(value["0"], 1, f"{what} degree 0")[0][0]
    degree1 = tuple(tuple(row) for row in _square(value["1"], 2, f"{what} degree 1"))
    degree2 = _square(value["2"], 1, f"{what} degree 2")[0][0]
    return ChainMapMatrices(degree0, degree1, degree2)


def ring_pair_from_json(value, what):
    if not isinstance(value, dict) or {"u", "v"} - set(value):
        raise InputError(f"{what} must be {{\"u\": ZG, \"v\": ZG}}")
    return (ring_from_json(value["u"]), ring_from_json(value["v"]))


def cellular_to_json(phi, data):
    return {
        "phi": phi.rows(),
        "cellular": {
            "D0": {"u": ring_to_json(data.D0[0]), "v": ring_to_json(data.D0[1])},
            "D1": {"u": ring_to_json(data.D1[0]), "v": ring_to_json(data.D1[1])},
            "F0": chain_map_to_json(data.F0),
            "F1": chain_map_to_json(data.F1),
            "excluded_classes": [class_to_json(cid) for cid in sorted(data.excluded_classes)],
        },
    }


def cellular_from_json(doc):
    """Cellular document -> (phi or None, CellularHomotopyData)."""
    if not isinstance(doc, dict) or "cellular" not in doc:
        raise InputError("document has no \"cellular\" section")
    cell = doc["cellular"]
    if not isinstance(cell, dict):
        raise InputError("\"cellular\" must be an object")
    for key in ("D0", "D1", "F0", "F1"):
        if key not in cell:
            raise InputError(f"cellular data is missing {key}")
    excluded = frozenset(ClassId(element_from_json(c, "excluded class")) for c in cell.get("excluded_classes", []))
    data = CellularHomotopyData(
        ring_pair_from_json(cell["D0"], "D0"),
        ring_pair_from_json(cell["D1"], "D1"),
        chain_map_from_json(cell["F0"], "F0"),
        chain_map_from_json(cell["F1"], "F1"),
        excluded,
    )
    phi = parse_phi(doc["phi"]) if "phi" in doc else None
    return phi, data


def verdict_to_json(cid, verdict):
    record = {"class": class_to_json(cid), "verdict": verdict.kind}
    if isinstance(verdict, Nontrivial):
        record["invariant"] = list(verdict.invariant)
    elif isinstance(verdict, Trivial):
        record["certificate"] = chain2_to_json(verdict.certificate)
    else:
        record["support_bound"] = verdict.support_bound
    return record


def report_to_json(report):
    return {
        "R": chain1_to_json(report.R),
        "components": [verdict_to_json(cid, v) for cid, v in report.components.items()],
        "N": report.N,
        "L": list(report.L),
        "alpha": list(report.alpha) if report.alpha is not None else None,
        "alpha_mode": report.alpha_mode,
        "theorem_holds": report.theorem_holds,
        "det_slice": report.det_slice,
        "class_count": report.class_count,
    }


def format_text(doc, indent=0):
    """Human-readable projection of a result document; never parsed back."""
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            value = doc[key]
            nested = isinstance(value, dict) or (isinstance(value, list) and any(isinstance(item, dict) for item in value))
            if nested and value:
                lines.append(f"{pad}{key}:")
                lines.append(format_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value)}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={json.dumps(item[k])}" for k in sorted(item)))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{json.dumps(doc)}")
    return "\n".join(lines)
