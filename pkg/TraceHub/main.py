import argparse
import os
import sys
import traceback
from config.config import *
from utils.logging_utils import log_message, print_color
from utils.json_utils import *
from algebra.group_algebra import GroupElement, apply_phi, ring_mul
from algebra.integer_lattice import INFINITE, cokernel_reps, invariant_factors, smith_normal_form, solve_affine
from processors.semiconjugacy import (
    class_count,
    class_id,
    class_representatives,
    same_class,
    semicentralizer,
    twisted_matrix,
)
from processors.hochschild import (
    HochschildError,
    boundary_certificate,
    d1,
    d2,
    decompose_components,
    homology_invariant,
    is_cycle,
    is_trivial,
    reduce_to_generators,
    reduce_u_power,
)
from processors.trace_engine import (
    InvalidCellularDataError,
    analyze,
    canonical_exclusions,
    complete_cellular_data,
    cycle_obstruction_classes,
    det_slice,
    one_parameter_trace,
    standard_chain_map,
    validate_cellular,
    verify_theorem,
)
from processors.corpus import example_corpus
from oracle.oracle import OracleError, SearchBudget, brute_certificate, brute_same_class, generate_valid_data

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_FAILED = 3
EXIT_INCONCLUSIVE = 4


class UsageError(Exception):
    pass


class TraceArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _require_phi(args, doc=None):
    if args.phi is not None:
        return parse_phi(args.phi)
    if isinstance(doc, dict) and "phi" in doc:
        return parse_phi(doc["phi"])
    raise UsageError("--phi is required (or a \"phi\" entry in the input document)")


def _require(args, name, flag):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{flag} is required for '{args.command}'")
    return value


def _input(args):
    return load_document(_require(args, "input", "--in"))


def _chain1_doc(doc):
    if isinstance(doc, dict):
        for key in ("chain", "R"):
            if key in doc:
                return chain1_from_json(doc[key])
        raise InputError("input document needs a \"chain\" or \"R\" entry")
    return chain1_from_json(doc)


def _element(text):
    return GroupElement(*parse_pair(text))


def _budget(args):
    return SearchBudget(args.window, args.max_terms)


def _trace_input(args):
    """(phi, R) from a cellular document or a chain document."""
    doc = _input(args)
    if isinstance(doc, dict) and "cellular" in doc:
        doc_phi, data = cellular_from_json(doc)
        phi = parse_phi(args.phi) if args.phi is not None else doc_phi
        if phi is None:
            raise UsageError("--phi is required (or a \"phi\" entry in the input document)")
        return phi, one_parameter_trace(phi, data, args.sign)
    return _require_phi(args, doc), _chain1_doc(doc)


def _cellular_input(args):
    doc = _input(args)
    doc_phi, data = cellular_from_json(doc)
    phi = parse_phi(args.phi) if args.phi is not None else doc_phi
    if phi is None:
        raise UsageError("--phi is required (or a \"phi\" entry in the input document)")
    return phi, data


def cmd_classes(args):
    phi = _require_phi(args)
    reps = class_representatives(phi)
    return {
        "phi": phi.rows(),
        "count": class_count(phi),
        "representatives": [cid.to_pair() for cid in reps] if reps is not None else INFINITE,
        "invariant_factors": list(invariant_factors(twisted_matrix(phi))),
    }, EXIT_OK


def cmd_same_class(args):
    phi = _require_phi(args)
    witness = same_class(phi, _element(_require(args, "g1", "--g1")), _element(_require(args, "g2", "--g2")))
    return {
        "same_class": witness is not None,
        "result": "same class" if witness is not None else "different classes",
        "witness": list(witness) if witness is not None else None,
    }, EXIT_OK


def cmd_class_id(args):
    phi = _require_phi(args)
    return {"class": class_id(phi, _element(_require(args, "g", "--g"))).to_pair()}, EXIT_OK


def cmd_kernel(args):
    lattice = semicentralizer(_require_phi(args))
    return {"rank": lattice.rank, "basis": [list(b) for b in lattice.basis]}, EXIT_OK


def cmd_cycle_check(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    return {"is_cycle": is_cycle(phi, _chain1_doc(doc))}, EXIT_OK


def cmd_d1(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    return {"d1": ring_to_json(d1(phi, _chain1_doc(doc)))}, EXIT_OK


def cmd_d2(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    chain = chain2_from_json(doc["chain"] if isinstance(doc, dict) and "chain" in doc else doc)
    return {"d2": chain1_to_json(d2(phi, chain))}, EXIT_OK


def cmd_components(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    parts = decompose_components(phi, _chain1_doc(doc))
    return {"components": [{"class": cid.to_pair(), "chain": chain1_to_json(c)} for cid, c in parts.items()]}, EXIT_OK


def cmd_reduce(args):
    phi = _require_phi(args)
    reduced, certificate = reduce_u_power(phi, _require(args, "k", "--k"), args.m, args.n)
    return {"reduced": chain1_to_json(reduced), "certificate": chain2_to_json(certificate)}, EXIT_OK


def cmd_reduce_generators(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    p, q, certificate = reduce_to_generators(phi, _chain1_doc(doc))
    return {"p": ring_to_json(p), "q": ring_to_json(q), "certificate": chain2_to_json(certificate)}, EXIT_OK


def cmd_invariant(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    return {"invariant": list(homology_invariant(phi, _chain1_doc(doc)))}, EXIT_OK


def cmd_certify(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    certificate = boundary_certificate(phi, _chain1_doc(doc))
    return {"certificate": chain2_to_json(certificate) if certificate is not None else None}, EXIT_OK


def cmd_trivial(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    chain = _chain1_doc(doc)
    bound = args.support_bound if args.support_bound is not None else get_support_bound()
    verdict = is_trivial(phi, chain, bound)
    parts = decompose_components(phi, chain)
    if not parts:
        return {"class": None, "verdict": verdict.kind, "certificate": []}, EXIT_OK
    return verdict_to_json(next(iter(parts)), verdict), EXIT_OK


def cmd_trace(args):
    phi, data = _cellular_input(args)
    R = one_parameter_trace(phi, data, args.sign)
    return {"R": chain1_to_json(R), "excluded_classes": [c.to_pair() for c in sorted(canonical_exclusions(phi, data))]}, EXIT_OK


def cmd_validate(args):
    phi, data = _cellular_input(args)
    violations = validate_cellular(phi, data)
    return {"valid": not violations, "violations": violations}, EXIT_INVALID if violations else EXIT_OK


def cmd_det(args):
    return {"det_slice": det_slice(_require_phi(args))}, EXIT_OK


def cmd_chain_map(args):
    return {"F": chain_map_to_json(standard_chain_map(_require_phi(args)))}, EXIT_OK


def cmd_complete(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    if not isinstance(doc, dict) or "D0" not in doc or "D1" not in doc:
        raise InputError("input document needs \"D0\" and \"D1\" entries")
    D0 = ring_pair_from_json(doc["D0"], "D0")
    D1 = ring_pair_from_json(doc["D1"], "D1")
    data = complete_cellular_data(phi, D0, D1)
    if doc.get("exclude_obstructions", True):
        data = complete_cellular_data(phi, D0, D1, data.F0, cycle_obstruction_classes(phi, data))
    return cellular_to_json(phi, data), EXIT_OK


def cmd_obstructions(args):
    phi, data = _cellular_input(args)
    return {"classes": [c.to_pair() for c in cycle_obstruction_classes(phi, data)]}, EXIT_OK


def cmd_analyze(args):
    phi, R = _trace_input(args)
    report = analyze(phi, R, args.support_bound)
    return report_to_json(report), EXIT_FAILED if report.theorem_holds is False else EXIT_OK


def cmd_verify(args):
    phi, R = _trace_input(args)
    report, status = verify_theorem(phi, R, args.support_bound)
    summary = {
        "N": report.N,
        "L": list(report.L),
        "alpha": list(report.alpha) if report.alpha is not None else None,
        "theorem_holds": report.theorem_holds,
    }
    return summary, status


def cmd_examples(args):
    directory = args.directory
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, (phi, data) in example_corpus().items():
        path = os.path.join(directory, f"{name}.json")
        write_document(canonical_dumps(cellular_to_json(phi, data)), path)
        log_message(f"Wrote example {name} to {path}", level="INFO")
        written.append(f"{name}.json")
    return {"written": written}, EXIT_OK


def cmd_oracle_certify(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    certificate = brute_certificate(phi, _chain1_doc(doc), _budget(args))
    return {"certificate": chain2_to_json(certificate) if certificate is not None else None}, EXIT_OK


def cmd_oracle_class(args):
    phi = _require_phi(args)
    witness = brute_same_class(phi, _element(_require(args, "g1", "--g1")), _element(_require(args, "g2", "--g2")), _budget(args))
    return {"witness": list(witness) if witness is not None else None}, EXIT_OK


def cmd_oracle_generate(args):
    phi = _require_phi(args)
    data = generate_valid_data(phi, _budget(args), args.seed)
    return cellular_to_json(phi, data), EXIT_OK


def cmd_snf(args):
    U, S, V = smith_normal_form(parse_int_matrix(_require(args, "matrix", "--matrix")))
    return {"U": U.rows(), "S": S.rows(), "V": V.rows()}, EXIT_OK


def cmd_solve(args):
    M = parse_int_matrix(_require(args, "matrix", "--matrix"))
    solution = solve_affine(M, parse_pair(_require(args, "w", "--w")))
    if solution is None:
        return {"solvable": False, "z0": None, "kernel": None}, EXIT_OK
    kernel = {"rank": solution.kernel.rank, "basis": [list(b) for b in solution.kernel.basis]}
    return {"solvable": True, "z0": list(solution.z0), "kernel": kernel}, EXIT_OK


def cmd_cokernel(args):
    cokernel = cokernel_reps(parse_int_matrix(_require(args, "matrix", "--matrix")))
    return {
        "count": cokernel.count,
        "representatives": [list(r) for r in cokernel.reps] if cokernel.reps is not None else INFINITE,
        "invariant_factors": list(cokernel.invariant_factors),
    }, EXIT_OK


def cmd_apply_phi(args):
    doc = _input(args)
    phi = _require_phi(args, doc)
    if isinstance(doc, dict):
        if "x" not in doc:
            raise InputError("input document needs an \"x\" ring element")
        doc = doc["x"]
    x = ring_from_json(doc)
    return {"result": ring_to_json(apply_phi(phi, x))}, EXIT_OK


def cmd_ring_mul(args):
    doc = _input(args)
    if not isinstance(doc, dict) or "x" not in doc or "y" not in doc:
        raise InputError("input document needs \"x\" and \"y\" ring elements")
    return {"result": ring_to_json(ring_mul(ring_from_json(doc["x"]), ring_from_json(doc["y"])))}, EXIT_OK


# command -> (handler, library operation, help)
COMMANDS = {
    "classes": (cmd_classes, class_count, "count semiconjugacy classes and list representatives"),
    "same-class": (cmd_same_class, same_class, "decide semiconjugacy of --g1 and --g2"),
    "class-id": (cmd_class_id, class_id, "canonical class of --g"),
    "kernel": (cmd_kernel, semicentralizer, "semicentralizer ker([phi]-I)"),
    "cycle-check": (cmd_cycle_check, is_cycle, "test whether a 1-chain is a d1-cycle"),
    "d1": (cmd_d1, d1, "boundary of a 1-chain"),
    "d2": (cmd_d2, d2, "boundary of a 2-chain"),
    "components": (cmd_components, decompose_components, "split a 1-chain by semiconjugacy class"),
    "reduce": (cmd_reduce, reduce_u_power, "u-power reduction with certificate"),
    "reduce-generators": (cmd_reduce_generators, reduce_to_generators, "rewrite a 1-chain as u(x)p + v(x)q"),
    "invariant": (cmd_invariant, homology_invariant, "homology invariant of a cycle"),
    "certify": (cmd_certify, boundary_certificate, "exact boundary certificate of a 1-chain"),
    "trivial": (cmd_trivial, is_trivial, "triviality verdict of a single-class cycle"),
    "trace": (cmd_trace, one_parameter_trace, "one-parameter trace of cellular data"),
    "validate": (cmd_validate, validate_cellular, "check chain-map and chain-homotopy identities"),
    "det": (cmd_det, det_slice, "det([phi]-I)"),
    "chain-map": (cmd_chain_map, standard_chain_map, "standard cellular chain map of phi"),
    "complete": (cmd_complete, complete_cellular_data, "complete D0, D1 to valid cellular data"),
    "obstructions": (cmd_obstructions, cycle_obstruction_classes, "classes where the raw trace is not a cycle"),
    "analyze": (cmd_analyze, analyze, "full trace report: components, N, L, alpha"),
    "verify": (cmd_verify, verify_theorem, "check L = +-N alpha; exit 3 if false, 4 if inconclusive"),
    "examples": (cmd_examples, example_corpus, "write the shipped examples to a directory"),
    "oracle-certify": (cmd_oracle_certify, brute_certificate, "brute-force boundary certificate search"),
    "oracle-class": (cmd_oracle_class, brute_same_class, "brute-force conjugator search"),
    "oracle-generate": (cmd_oracle_generate, generate_valid_data, "seeded valid cellular data"),
    "snf": (cmd_snf, smith_normal_form, "Smith normal form of --matrix"),
    "solve": (cmd_solve, solve_affine, "solve --matrix z = --w over Z"),
    "cokernel": (cmd_cokernel, cokernel_reps, "representatives of Z^2 / --matrix Z^2"),
    "apply-phi": (cmd_apply_phi, apply_phi, "apply phi to a ring element"),
    "ring-mul": (cmd_ring_mul, ring_mul, "product of ring elements x and y"),
}


def build_parser():
    common = TraceArgumentParser(add_help=False)
    common.add_argument("--phi", help="endomorphism matrix, e.g. '[[1,1],[0,1]]'")
    common.add_argument("--in", dest="input", help="input JSON document ('-' for stdin)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="output format")
    common.add_argument("--support-bound", type=int, default=None, help="certificate support bound")
    common.add_argument("--sign", choices=TRACE_SIGNS, default=None, help="covering action convention")
    common.add_argument("--g", help="group element 'm,n' or '[m,n]'")
    common.add_argument("--g1", help="group element 'm,n' or '[m,n]'")
    common.add_argument("--g2", help="group element 'm,n' or '[m,n]'")
    common.add_argument("--k", type=int, help="u exponent for reduce")
    common.add_argument("--m", type=int, default=0, help="u exponent of the right factor for reduce")
    common.add_argument("--n", type=int, default=0, help="v exponent of the right factor for reduce")
    common.add_argument("--window", type=int, default=None, help="oracle exponent window")
    common.add_argument("--max-terms", type=int, default=None, help="oracle candidate cap")
    common.add_argument("--seed", type=int, default=0, help="generator seed")
    common.add_argument("--matrix", help="integer matrix '[[a,b],[c,d]]'")
    common.add_argument("--w", help="right-hand side 'x,y' for solve")

    parser = TraceArgumentParser(prog="TorusTrace", description="One-parameter fixed point invariants of torus homotopies.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        if name == "examples":
            sub.add_argument("directory", help="directory to write the example documents into")
    return parser


def dispatch(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print_color(f"Usage error: {e}", "red")
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    handler = COMMANDS[args.command][0]
    try:
        doc, status = handler(args)
    except UsageError as e:
        print_color(f"Usage error: {e}", "red")
        return EXIT_USAGE
    except InvalidCellularDataError as e:
        for violation in e.violations:
            log_message(f"Invalid cellular data: {violation}", level="ERROR")
        return EXIT_INVALID
    except (InputError, HochschildError, OracleError, ValueError) as e:
        log_message(f"Invalid input for '{args.command}': {e}", level="ERROR")
        return EXIT_INVALID
    except Exception as e:
        log_message(f"'{args.command}' failed with exception: {e}\n{traceback.format_exc()}", level="ERROR")
        return EXIT_USAGE

    output_format = args.format or get_output_format()
    text = canonical_dumps(doc) if output_format == "json" else format_text(doc) + "\n"
    write_document(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(dispatch())
