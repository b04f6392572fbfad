"""Command line interface.

Subcommands: ``check``, ``construct``, ``analyze``, ``catalog``.  Exit codes:
0 success / all requested checks passed, 1 a requested check or mathematical
precondition failed, 2 input or usage error.  ``--json`` switches to a
machine-readable report {command, checks, outputs, result}.  Basis indices in
reports are one-based to match the conventional x1..xn naming; files stay
zero-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analyze as an
from . import build as bd
from . import catalog as cat
from . import serialize as ser
from .errors import HomLieError, PreconditionFailed
from .exactlin import Matrix
from .homalg import (
    BilinearForm,
    QuadraticHomAlgebra,
    check_hom_lie,
    check_quadratic,
    multiplicativity_witness,
)


def _wit(t) -> str:
    if t is None:
        return "()"
    return "(" + ",".join(str(i + 1) for i in t) + ")"


def _lincomb(coeffs, names) -> str:
    terms = []
    for c, name in zip(coeffs, names):
        c = Fraction(c)
        if c == 0:
            continue
        if c == 1:
            terms.append(("+", name))
        elif c == -1:
            terms.append(("-", name))
        elif c > 0:
            terms.append(("+", f"{c}*{name}"))
        else:
            terms.append(("-", f"{-c}*{name}"))
    if not terms:
        return "0"
    sign, first = terms[0]
    out = ("-" if sign == "-" else "") + first
    for sign, term in terms[1:]:
        out += f" {sign} {term}"
    return out


class Reporter:
    def __init__(self, command: str, as_json: bool):
        self.command = command
        self.as_json = as_json
        self.checks = []
        self.outputs = []
        self.result = {}
        self.lines = []

    def check(self, name: str, passed: bool, witness=None, residual=None, names=None):
        entry = {
            "name": name,
            "passed": passed,
            "witness": None if witness is None else [i + 1 for i in witness],
        }
        if residual is not None:
            entry["residual"] = [ser.format_rational(x) for x in residual]
        self.checks.append(entry)
        if passed:
            self.lines.append(f"{name}: PASS")
        else:
            line = f"{name}: FAIL witness={_wit(witness)}"
            if residual is not None and names is not None:
                line += f" residual={_lincomb(residual, names)}"
            self.lines.append(line)

    def text(self, line: str):
        self.lines.append(line)

    def wrote(self, path: str):
        self.outputs.append(str(path))
        self.lines.append(f"wrote {path}")

    def emit(self) -> int:
        if self.as_json:
            payload = {
                "command": self.command,
                "checks": self.checks,
                "outputs": self.outputs,
            }
            if self.result:
                payload["result"] = self.result
            print(json.dumps(payload, indent=2))
        else:
            for line in self.lines:
                print(line)
        return 0 if all(c["passed"] for c in self.checks) else 1


def _load(path) -> ser.ParsedFile:
    return ser.load_path(path)


def _need_algebra(parsed: ser.ParsedFile):
    if parsed.algebra is None:
        raise ser.ParseError("expected a Hom-Lie algebra file, found an associative one")
    return parsed.algebra


def _cmd_check(args) -> int:
    parsed = _load(args.file)
    g = _need_algebra(parsed)
    names = parsed.names()
    rep = Reporter("check", args.json)
    hl = check_hom_lie(g)
    rep.check("skew", hl.skew, hl.skew_witness)
    rep.check("hom_jacobi", hl.hom_jacobi, hl.jacobi_witness, hl.jacobi_residual, names)
    if args.quadratic:
        if parsed.form is None:
            print("error: --quadratic needs a form in the file", file=sys.stderr)
            return 2
        q = check_quadratic(g, parsed.form)
        rep.check("symmetric", q.symmetric, q.symmetric_witness)
        rep.check(
            "nondegenerate",
            q.nondegenerate,
            None,
            q.degenerate_witness,
            names,
        )
        rep.check("invariant", q.invariant, q.invariant_witness)
        rep.check("alpha_symmetric", q.alpha_symmetric, q.alpha_witness)
    if args.multiplicative:
        w = multiplicativity_witness(g)
        rep.check("multiplicative", w is None, w)
    if args.involutive:
        rep.check("involutive", g.alpha.power(2).is_identity())
    return rep.emit()


def _subspace_lines(rep: Reporter, label, sub, names):
    rep.text(f"{label}: dim {sub.dim}")
    for row in sub.vectors():
        rep.text(f"  {_lincomb(row, names)}")
    rep.result[label.replace(" ", "_")] = {
        "dim": sub.dim,
        "basis": [[ser.format_rational(x) for x in row] for row in sub.vectors()],
    }


def _cmd_analyze(args) -> int:
    parsed = _load(args.file)
    g = _need_algebra(parsed)
    names = parsed.names()
    rep = Reporter("analyze", args.json)
    op = args.operation
    if op == "center":
        _subspace_lines(rep, "center", an.center(g), names)
    elif op == "centroid":
        sub = an.centroid(g)
        rep.text(f"centroid: dim {sub.dim}")
        rep.result["centroid"] = {
            "dim": sub.dim,
            "basis": [[ser.format_rational(x) for x in row] for row in sub.vectors()],
        }
    elif op == "radical":
        _subspace_lines(rep, "radical", an.radical_involutive(g), names)
    elif op == "trace-form":
        tf = an.trace_form(g)
        rep.text("trace form gram:")
        for row in tf.gram.data:
            rep.text("  [" + ", ".join(ser.format_rational(x) for x in row) + "]")
        rep.result["gram"] = [[ser.format_rational(x) for x in r] for r in tf.gram.data]
    elif op == "simple":
        verdict = an.simplicity_verdict(g)
        rep.text(f"simplicity: {verdict.tag}")
        rep.result["simplicity"] = verdict.tag
        if verdict.witness is not None:
            rep.result["witness"] = [
                [ser.format_rational(x) for x in row] for row in verdict.witness.vectors()
            ]
            for row in verdict.witness.vectors():
                rep.text(f"  {_lincomb(row, names)}")
    elif op in ("fitting", "decompose", "recognize-dext"):
        if parsed.form is None:
            print(f"error: {op} needs a form in the file", file=sys.stderr)
            return 2
        q = QuadraticHomAlgebra(g, parsed.form)
        if op == "fitting":
            fs = an.fitting_decomposition(q)
            rep.text(f"fitting: stable power {fs.n}")
            _subspace_lines(rep, "nilpotent part", fs.i_part, names)
            _subspace_lines(rep, "invertible part", fs.j_part, names)
            rep.result["stable_power"] = fs.n
        elif op == "decompose":
            parts = an.decompose_irreducible(q, with_bases=True)
            rep.text(f"decompose: {len(parts)} summand(s)")
            rep.result["summands"] = []
            for idx, (sub, piece) in enumerate(parts, start=1):
                _subspace_lines(rep, f"summand {idx}", sub, names)
                rep.result["summands"].append({"dim": piece.dim})
        else:
            w = an.recognize_double_extension(q)
            rep.text(
                f"double extension: lambda={ser.format_rational(w.data.lam)}"
                f" lambda0={ser.format_rational(w.data.lam0)}"
            )
            rep.text(f"  e = {_lincomb(w.e_vec, names)}")
            rep.text(f"  b = {_lincomb(w.b_vec, names)}")
            rep.text(f"  base dim {w.base.dim}")
            rep.result["lambda"] = ser.format_rational(w.data.lam)
            rep.result["lambda0"] = ser.format_rational(w.data.lam0)
            rep.result["e"] = [ser.format_rational(x) for x in w.e_vec]
            rep.result["b"] = [ser.format_rational(x) for x in w.b_vec]
            rep.result["base_dim"] = w.base.dim
    else:
        print(f"error: unknown analyze operation {op!r}", file=sys.stderr)
        return 2
    return rep.emit()


def _write_algebra(rep, path, alg, form=None, basis_names=None):
    ser.save_path(path, ser.algebra_to_dict(alg, form, basis_names))
    rep.wrote(path)


def _cmd_construct(args) -> int:
    rep = Reporter("construct", args.json)
    op = args.operation
    parsed = _load(args.file)
    g = _need_algebra(parsed)
    if op == "twist":
        out = bd.yau_twist(g.with_alpha(Matrix.identity(g.dim)), g.alpha)
        _write_algebra(rep, args.out, out)
    elif op == "derived":
        if parsed.form is not None:
            q = bd.quadratic_derived(QuadraticHomAlgebra(g, parsed.form), args.n)
            _write_algebra(rep, args.out, q.algebra, q.form)
        else:
            _write_algebra(rep, args.out, bd.derived_hom_algebra(g, args.n))
    elif op == "tstar":
        q = bd.tstar_extension(g.with_alpha(Matrix.identity(g.dim)))
        _write_algebra(rep, args.out, q.algebra, q.form)
    elif op == "omega-ext":
        q = bd.omega_extension(g)
        _write_algebra(rep, args.out, q.algebra, q.form)
    elif op == "double-ext":
        if parsed.form is None:
            print("error: double-ext needs a form in the base file", file=sys.stderr)
            return 2
        data = ser.parse_extension_data(_load_json(args.data), g.dim)
        q = bd.double_extension_1d(QuadraticHomAlgebra(g, parsed.form), data)
        _write_algebra(rep, args.out, q.algebra, q.form)
    elif op == "inv-double-ext":
        if parsed.form is None:
            print("error: inv-double-ext needs a form in the base file", file=sys.stderr)
            return 2
        other = _need_algebra(_load(args.algebra))
        data = ser.parse_inv_extension_data(_load_json(args.data), g.dim, other.dim)
        q = bd.involutive_double_extension(
            QuadraticHomAlgebra(g, parsed.form), other, data
        )
        _write_algebra(rep, args.out, q.algebra, q.form)
    elif op == "tensor-current":
        aparsed = _load(args.algebra)
        if aparsed.assoc is None:
            print("error: tensor-current needs an associative algebra file", file=sys.stderr)
            return 2
        lie, theta = bd.tensor_current(
            g.with_alpha(Matrix.identity(g.dim)), aparsed.assoc, aparsed.assoc.alpha
        )
        _write_algebra(rep, args.out, lie.with_alpha(theta))
    elif op == "untwist":
        out = bd.untwist_regular(g)
        form = None
        if (
            parsed.form is not None
            and g.alpha.power(2).is_identity()
            and check_quadratic(g, parsed.form).ok
        ):
            form = BilinearForm(g.dim, g.alpha.transpose() @ parsed.form.gram)
        _write_algebra(rep, args.out, out, form)
    else:
        print(f"error: unknown construction {op!r}", file=sys.stderr)
        return 2
    return rep.emit()


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ser.ParseError(f"cannot read {path}: {exc}") from exc


def _cmd_catalog(args) -> int:
    rep = Reporter("catalog", args.json)
    if args.operation == "list":
        for name, sig in cat.fixture_names():
            rep.text(f"{name} {sig}".rstrip())
        rep.result["fixtures"] = [name for name, _ in cat.fixture_names()]
        return rep.emit()
    params = [ser.parse_rational(p) for p in args.params]
    obj = cat.emit(args.name, *params)
    names = cat.basis_names(args.name, *params)
    if isinstance(obj, QuadraticHomAlgebra):
        payload = ser.algebra_to_dict(obj.algebra, obj.form, names)
    elif hasattr(obj, "product"):
        payload = ser.assoc_to_dict(obj, names)
    else:
        payload = ser.algebra_to_dict(obj, None, names)
    ser.save_path(args.out, payload)
    rep.wrote(args.out)
    return rep.emit()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="homlie",
        description="Exact computer algebra for Hom-Lie algebras with invariant forms.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify axioms of an algebra file")
    c.add_argument("file")
    c.add_argument("--quadratic", action="store_true")
    c.add_argument("--multiplicative", action="store_true")
    c.add_argument("--involutive", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_check)

    a = sub.add_parser("analyze", help="structural analysis of an algebra file")
    a.add_argument(
        "operation",
        choices=[
            "center",
            "centroid",
            "fitting",
            "radical",
            "decompose",
            "simple",
            "trace-form",
            "recognize-dext",
        ],
    )
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=_cmd_analyze)

    b = sub.add_parser("construct", help="build a new algebra from files")
    bsub = b.add_subparsers(dest="operation", required=True)
    for name in ("twist", "tstar", "omega-ext", "untwist"):
        sp = bsub.add_parser(name)
        sp.add_argument("file")
        sp.add_argument("--out", required=True)
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=_cmd_construct)
    sp = bsub.add_parser("derived")
    sp.add_argument("n", type=int)
    sp.add_argument("file")
    sp.add_argument("--out", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_construct)
    sp = bsub.add_parser("double-ext")
    sp.add_argument("file")
    sp.add_argument("data")
    sp.add_argument("--out", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_construct)
    sp = bsub.add_parser("inv-double-ext")
    sp.add_argument("file", help="base quadratic algebra file")
    sp.add_argument("algebra", help="extending algebra file")
    sp.add_argument("data")
    sp.add_argument("--out", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_construct)
    sp = bsub.add_parser("tensor-current")
    sp.add_argument("file", help="Lie algebra file")
    sp.add_argument("algebra", help="commutative associative algebra file")
    sp.add_argument("--out", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_construct)

    k = sub.add_parser("catalog", help="list or emit named fixtures")
    ksub = k.add_subparsers(dest="operation", required=True)
    kl = ksub.add_parser("list")
    kl.add_argument("--json", action="store_true")
    kl.set_defaults(func=_cmd_catalog)
    ke = ksub.add_parser("emit")
    ke.add_argument("name")
    ke.add_argument("params", nargs="*")
    ke.add_argument("--out", required=True)
    ke.add_argument("--json", action="store_true")
    ke.set_defaults(func=_cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PreconditionFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except HomLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
