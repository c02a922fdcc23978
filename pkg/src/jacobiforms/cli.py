"""Command-line front end.

Subcommands: info, eisenstein, poincare, rep, verify.  Exit codes: 0 success,
1 verification failure, 2 validation error, 3 computation-domain error.
Output files are written atomically (temp file + rename); domain errors emit
machine-readable JSON on stderr.
"""

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from .eisenstein import EisensteinSpec, eisenstein_expansion
from .errors import ComputationDomainError, ValidationError
from .lattice import isotropy_set, load_lattice_json
from .poincare import PoincareSpec, poincare_expansion
from .rationals import format_rational, parse_rational
from .verify import run_suites
from .weilrep import averaging_matrix, rho_word, schrodinger_matrix

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3


def _parse_coords(text):
    text = text.strip()
    return tuple(int(part) for part in text.split(",")) if text else ()


def _element(group, text):
    coords = _parse_coords(text)
    if coords == (0,) and len(group.orders) != 1:
        coords = (0,) * len(group.orders)  # "-r 0" shorthand for the zero class
    if len(coords) != len(group.orders):
        raise ValidationError(
            f"expected {len(group.orders)} coordinates for this lattice, got {len(coords)}"
        )
    return group.element(coords)


def _write_output(doc, path, fmt):
    text = _render(doc, fmt)
    if path is None:
        sys.stdout.write(text + "\n")
        return
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".jacobiforms-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _render(doc, fmt):
    if fmt == "json":
        return json.dumps(doc, indent=2)
    # table: n, x, coefficient sorted by q-exponent (entries are pre-sorted)
    lines = [f"# lattice={doc.get('lattice')} weight={doc.get('weight')} mode={doc.get('mode')}"]
    lines.append(f"{'n':>10}  {'x':<12} value")
    for entry in doc["entries"]:
        val = entry["value"]
        shown = val if isinstance(val, str) else f"{val['re']:.12g}{val['im']:+.12g}i"
        lines.append(f"{entry['n']:>10}  {str(entry['x']):<12} {shown}")
    return "\n".join(lines)


def _cmd_info(args):
    name, lattice = load_lattice_json(args.lattice)
    group = lattice.disc_group
    print(f"lattice {name}")
    print(f"  rank  {lattice.rank}")
    print(f"  det   {lattice.det}")
    print(f"  level {lattice.level}")
    print(f"  Delta {lattice.delta}")
    print(f"  discriminant group {' x '.join(f'Z_{d}' for d in group.orders) or 'trivial'}")
    iso = isotropy_set(lattice)
    print(f"  isotropy set ({len(iso)} classes):")
    for x in iso:
        print(f"    {x}  order {x.order}  beta {format_rational(x.beta_mod1)}")
    return EXIT_OK


def _cmd_eisenstein(args):
    name, lattice = load_lattice_json(args.lattice)
    group = lattice.disc_group
    spec = EisensteinSpec(lattice=lattice, k=args.k, r=_element(group, args.r))
    expansion = eisenstein_expansion(
        spec, parse_rational(args.n_max), args.mode, c_max=args.c_max, B=args.B
    )
    expansion.lattice_name = name
    _write_output(expansion.to_json_dict(), args.output, args.format)
    return EXIT_OK


def _cmd_poincare(args):
    name, lattice = load_lattice_json(args.lattice)
    group = lattice.disc_group
    spec = PoincareSpec(
        lattice=lattice, k=args.k, D=parse_rational(args.D), r=_element(group, args.r)
    )
    expansion = poincare_expansion(spec, parse_rational(args.n_max), args.c_max)
    expansion.lattice_name = name
    _write_output(expansion.to_json_dict(), args.output, args.format)
    return EXIT_OK


def _matrix_doc(label, matrix, group):
    return {
        "label": label,
        "index": [list(x.coords) for x in group],
        "matrix": [[{"re": z.real, "im": z.imag} for z in row] for row in np.asarray(matrix)],
    }


def _cmd_rep(args):
    name, lattice = load_lattice_json(args.lattice)
    group = lattice.disc_group
    docs = []
    if args.word:
        tokens = [t.strip() for t in args.word.split(",") if t.strip()]
        rep = rho_word(lattice, tokens)
        docs.append(_matrix_doc(rep.label, rep.matrix, group))
    if args.schrodinger:
        coord_text, triple_text = args.schrodinger.split(";")
        x = _element(group, coord_text)
        lam, mu, t = (int(v) for v in triple_text.split(","))
        rep = schrodinger_matrix(lattice, x, lam, mu, t)
        docs.append(_matrix_doc(rep.label, rep.matrix, group))
    if args.avg:
        x = _element(group, args.avg)
        rep = averaging_matrix(lattice, x)
        docs.append(_matrix_doc(rep.label, rep.matrix, group))
    if not docs:
        for g in ("T", "S"):
            rep = rho_word(lattice, [g])
            docs.append(_matrix_doc(rep.label, rep.matrix, group))
    # matrices are always JSON; --format table has no meaning here
    _write_output({"lattice": name, "matrices": docs}, args.output, "json")
    return EXIT_OK


def _cmd_verify(args):
    report, ok = run_suites(args.suite)
    print(report)
    return EXIT_OK if ok else EXIT_VERIFY


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="jacobiforms",
        description="Fourier expansions of Jacobi Eisenstein and Poincare series",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, needs_lattice=True):
        if needs_lattice:
            p.add_argument("--lattice", required=True, help="path to a lattice JSON file")
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "table"), default="json")

    p_info = sub.add_parser("info", help="print lattice invariants")
    p_info.add_argument("--lattice", required=True)
    p_info.set_defaults(func=_cmd_info)

    p_eis = sub.add_parser("eisenstein", help="Eisenstein series expansion")
    add_common(p_eis)
    p_eis.add_argument("-k", type=int, required=True, help="weight")
    p_eis.add_argument("-r", default="0", help="isotropic class coordinates 'a,b,...'")
    p_eis.add_argument("--n-max", default="3", help="q-exponent truncation (rational)")
    p_eis.add_argument("--c-max", type=int, default=1000)
    p_eis.add_argument("-B", type=int, default=5000)
    p_eis.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    p_eis.set_defaults(func=_cmd_eisenstein)

    p_poi = sub.add_parser("poincare", help="Poincare series expansion")
    add_common(p_poi)
    p_poi.add_argument("-k", type=int, required=True, help="weight")
    p_poi.add_argument("-D", required=True, help="negative rational index 'p/q'")
    p_poi.add_argument("-r", required=True, help="class coordinates 'a,b,...'")
    p_poi.add_argument("--n-max", default="3")
    p_poi.add_argument("--c-max", type=int, default=1000)
    p_poi.set_defaults(func=_cmd_poincare)

    p_rep = sub.add_parser("rep", help="representation matrices as JSON")
    add_common(p_rep)
    p_rep.add_argument("--word", default=None, help="comma-separated word over T,S,T^-1,S^-1")
    p_rep.add_argument("--schrodinger", default=None, help="'x-coords;lam,mu,t'")
    p_rep.add_argument("--avg", default=None, help="averaging operator at the given class")
    p_rep.set_defaults(func=_cmd_rep)

    p_ver = sub.add_parser("verify", help="run self-check suites")
    p_ver.add_argument("suite", choices=("all", "exp_sums", "eisenstein", "poincare", "weil"))
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ComputationDomainError as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_DOMAIN
    except (ValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
