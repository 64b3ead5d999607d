"""Command-line front end.

Every subcommand produces a table (header plus string cells) written as CSV
or JSON with identical content.  Audits of published formulas go to a
``<out>.audit.json`` sidecar so the primary output stays a stable
regression baseline.  Output files are written atomically.

Exit codes: 0 ok, 1 oracle mismatch, 2 invalid input, 3 resource limit,
4 numerical guard (pole proximity, regularization, certification).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path


def _apply_thread_cap():
    n = os.environ.get("LAAKSO_THREADS", "0").strip()
    if n and n != "0":
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, n)


_apply_thread_cap()

from .errors import (LaaksoError, NumericalGuardError, ResourceError,  # noqa: E402
                     ValidationError)
from .sequence import PlateConfig, as_fraction, fraction_str, make_sequence  # noqa: E402

EXIT_OK, EXIT_MISMATCH, EXIT_VALIDATION, EXIT_RESOURCE, EXIT_GUARD = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


# ----------------------------------------------------------------------
# parsing helpers


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise ValidationError(f"cannot parse complex number {text!r} (use a+bi)") from exc


def parse_range(text: str) -> tuple[float, float, float | None]:
    """'lo:hi' or 'lo:hi:step'."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ValidationError(f"range {text!r} must be lo:hi or lo:hi:step")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ValidationError(f"range {text!r} has non-numeric bounds") from exc
    lo, hi = vals[0], vals[1]
    if lo > hi:
        raise ValidationError(f"range {text!r} is reversed")
    step = vals[2] if len(vals) == 3 else None
    if step is not None and step <= 0:
        raise ValidationError("range step must be positive")
    return lo, hi, step


def parse_int_range(text: str) -> range:
    lo, hi, step = parse_range(text)
    if lo != int(lo) or hi != int(hi) or (step is not None and step != int(step)):
        raise ValidationError(f"integer range expected, got {text!r}")
    return range(int(lo), int(hi) + 1, int(step or 1))


def grid(lo: float, hi: float, step: float | None) -> list[float]:
    if step is None:
        return [lo] if lo == hi else [lo, hi]
    n = int(round((hi - lo) / step))
    return [lo + i * step for i in range(n + 1) if lo + i * step <= hi + 1e-12]


def parse_seq(args):
    if args.j is None:
        raise ValidationError("--j is required")
    try:
        entries = [int(x) for x in args.j.split(",") if x.strip()]
    except ValueError as exc:
        raise ValidationError(f"--j expects a comma list of integers, got {args.j!r}") from exc
    period = getattr(args, "period", None)
    if period is not None and period != len(entries):
        raise ValidationError(f"--period {period} does not match {len(entries)} entries")
    return make_sequence(entries)


def parse_level(text):
    if text is None:
        return None
    if str(text).lower() in ("inf", "infinite"):
        return "infinite"
    try:
        m = int(text)
    except ValueError as exc:
        raise ValidationError(f"--level expects an integer or 'inf', got {text!r}") from exc
    if m < 0:
        raise ValidationError("--level must be >= 0")
    return m


def plate_from(args, seq) -> PlateConfig:
    if args.Z is None:
        raise ValidationError("plated configurations need --Z")
    if not seq.is_constant:
        raise ValidationError("plated configurations need a constant sequence")
    return PlateConfig(seq.entries[0], args.Z, None if args.X0 is None else as_fraction(args.X0))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# ----------------------------------------------------------------------
# output


class Table:
    def __init__(self, columns, rows=None, audit=None):
        self.columns = list(columns)
        self.rows = rows or []
        self.audit = audit

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"columns": self.columns,
                               "rows": [dict(zip(self.columns, map(str, r))) for r in self.rows]},
                              indent=1) + "\n"
        import csv
        import io
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()


def atomic_write(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def audit_path(out: Path) -> Path:
    out = Path(out)
    return out.with_name(out.stem + ".audit.json")


def emit(table: Table, args):
    text = table.render(args.format)
    if args.out:
        atomic_write(args.out, text)
        if table.audit is not None:
            atomic_write(audit_path(args.out),
                         json.dumps(table.audit, indent=1, sort_keys=True, default=str) + "\n")
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# subcommands


def cmd_spectrum(args) -> int:
    from .spectrum import (dirichlet_spectrum, finite_spectrum, free_spectrum,
                           plated_spectrum)
    seq = parse_seq(args)
    if args.cutoff is None or args.cutoff <= 0:
        raise ValidationError("--cutoff must be positive")
    level = parse_level(args.level)
    if level == "infinite":
        level = None
    if args.variant == "free":
        spec = free_spectrum(seq, args.cutoff)
    elif args.variant == "finite":
        if level is None:
            raise ValidationError("--variant finite needs --level")
        spec = finite_spectrum(seq, level, args.cutoff)
    elif args.variant == "dirichlet":
        spec = dirichlet_spectrum(seq, args.cutoff, level)
    else:
        spec = plated_spectrum(plate_from(args, seq), args.cutoff, level)
    rows = [[_fmt(e.lam), e.multiplicity, e.symbolic] for e in spec.entries]
    emit(Table(["lambda", "multiplicity", "symbolic"], rows), args)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .graph import DIRICHLET, build_graph
    from .oracle import MAX_LEVEL, oracle_eigenvalues, verify_spectrum
    from .spectrum import finite_spectrum, plated_spectrum
    seq = parse_seq(args)
    level = parse_level(args.level)
    if level is None or level == "infinite":
        raise ValidationError("oracle needs a finite --level")
    if args.cutoff is None or args.cutoff <= 0:
        raise ValidationError("--cutoff must be positive")
    if level > MAX_LEVEL:
        raise ResourceError(f"oracle is limited to level <= {MAX_LEVEL}")
    g = build_graph(seq, level)
    if args.dirichlet_plates:
        cfg = plate_from(args, seq)
        if not cfg.on_wormholes:
            raise ValidationError(
                f"plates at {[fraction_str(p) for p in cfg.plates]} are not wormholes "
                f"(j - Z must be even)")
        g = g.with_tags(cfg.plates, DIRICHLET)
        closed = plated_spectrum(cfg, args.cutoff, level)
    else:
        closed = finite_spectrum(seq, level, args.cutoff)
    values = oracle_eigenvalues(g, args.cutoff, args.mesh)
    report = verify_spectrum(closed, values, args.tol)
    rows = [[_fmt(r.lam), r.closed_mult, r.oracle_mult,
             "nan" if r.rel_err != r.rel_err else _fmt(r.rel_err), r.status]
            for r in report.rows]
    emit(Table(["lambda", "closed_mult", "oracle_mult", "rel_err", "status"], rows,
               audit={"ok": report.ok, "mesh": args.mesh, "tol_rel": args.tol,
                      "max_rel_err": report.max_rel_err}), args)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_zeta(args) -> int:
    from . import printed, zeta
    seq = parse_seq(args)
    level = parse_level(args.level)
    if args.variant == "free":
        f = lambda s: zeta.zeta_laakso_closed(seq, s)  # noqa: E731
    elif args.variant == "finite":
        if level is None or level == "infinite":
            raise ValidationError("--variant finite needs a finite --level")
        f = lambda s: zeta.zeta_finite(seq, level, s)  # noqa: E731
    elif args.variant == "dirichlet":
        lv = None if level in (None, "infinite") else level
        f = lambda s: zeta.zeta_dirichlet(seq, s, lv)  # noqa: E731
    else:
        cfg = plate_from(args, seq)
        f = lambda s: zeta.zeta_plated(cfg, s)  # noqa: E731
    if args.s is not None:
        points = [parse_complex(args.s)]
    else:
        if args.re is None:
            raise ValidationError("give --s or a --re/--im grid")
        re = grid(*parse_range(args.re))
        im = grid(*parse_range(args.im)) if args.im else [0.0]
        points = [complex(a, b) for a in re for b in im]
    rows = []
    audit_rows = []
    for s in points:
        v = f(s)
        rows.append([_fmt(s.real), _fmt(s.imag), _fmt(v.real), _fmt(v.imag)])
        if seq.is_constant and args.variant in ("free", "finite"):
            j = seq.entries[0]
            try:
                if args.variant == "finite":
                    p = printed.zeta_m(j, level, s)
                elif j == 2:
                    p = printed.zeta_laakso_j2(s)
                else:
                    continue
            except (ZeroDivisionError, NumericalGuardError):
                continue
            audit_rows.append({"s": str(s), "canonical": str(v), "printed": str(p),
                               "rel_diff": abs(p - v) / abs(v) if v else None})
    emit(Table(["re_s", "im_s", "re_val", "im_val"], rows,
               audit={"printed_form": audit_rows} if audit_rows else None), args)
    return EXIT_OK


def cmd_poles(args) -> int:
    from .poles import Region, find_poles
    seq = parse_seq(args)
    m = parse_level(args.level)
    if m is None:
        raise ValidationError("poles needs --level (integer or inf)")
    if args.re is None or args.im is None:
        raise ValidationError("poles needs --re lo:hi and --im lo:hi")
    re_lo, re_hi, _ = parse_range(args.re)
    im_lo, im_hi, _ = parse_range(args.im)
    region = Region(re_lo, re_hi, im_lo, im_hi)
    scan = find_poles(seq, m, region, form=args.form)
    rows = [[_fmt(p.location.real), _fmt(p.location.imag), p.order, p.tower, p.k]
            for p in scan.poles]
    audit = {"form": args.form,
             "slopes": [{"re": k[0], "im": k[1], "slope": v} for k, v in scan.slopes.items()],
             "rejected": [{"re": c.location.real, "im": c.location.imag, "tower": c.tower,
                           "k": c.k, "slope": sl} for c, sl in scan.rejected]}
    if args.form == "canonical" and seq.is_constant and (m != "infinite" or seq.entries[0] == 2):
        other = find_poles(seq, m, region, form="printed")
        audit["printed_form_poles"] = other.to_rows()
    emit(Table(["re", "im", "order", "tower", "k"], rows, audit=audit), args)
    return EXIT_OK


def cmd_casimir(args) -> int:
    from . import casimir
    kind = args.kind
    if kind == "cross":
        rep = casimir.cross_proposition_report()
        rows = [[r["j"], r["constant"], r["periodic_canonical"], r["periodic_printed"],
                 r["canonical_match"], r["printed_match"]] for r in rep["rows"]]
        emit(Table(["j", "constant", "periodic_canonical", "periodic_printed",
                    "canonical_match", "printed_match"], rows, audit=rep), args)
        return EXIT_OK
    seq = parse_seq(args)
    if kind in ("pressure", "pressure-periodic", "energy3d"):
        d = 1.0 if args.d is None else args.d
        if kind == "pressure":
            if not seq.is_constant:
                raise ValidationError("pressure needs a constant sequence; "
                                      "use pressure-periodic")
            res = casimir.pressure_3d_constant(seq.entries[0], d)
        elif kind == "pressure-periodic":
            res = casimir.pressure_3d_periodic(seq, d)
        else:
            res = casimir.energy_3d_periodic(seq, d)
        col = "energy" if kind == "energy3d" else "pressure"
        rows = [[seq.label(), _fmt(d), _fmt(res.value), res.units, fraction_str(res.exact)]]
        emit(Table(["j_or_seq", "d", col, "units", "exact"], rows, audit=res.audit), args)
        return EXIT_OK
    cfg = plate_from(args, seq)
    if kind == "energy":
        res = casimir.energy_1d(cfg)
        rows = [[cfg.j, cfg.Z, fraction_str(cfg.X0), _fmt(res.value), res.units,
                 fraction_str(res.exact)]]
        emit(Table(["j", "Z", "X0", "energy", "units", "exact"], rows, audit=res.audit), args)
    elif kind == "force":
        res = casimir.force_1d_closed(cfg.j, cfg.Z, cfg.X0)
        rows = [[cfg.j, cfg.Z, fraction_str(cfg.X0), _fmt(res.value), res.units,
                 fraction_str(res.exact)]]
        emit(Table(["j", "Z", "X0", "force", "units", "exact"], rows, audit=res.audit), args)
    elif kind == "force-numeric":
        res = casimir.force_1d_numeric(cfg.j, cfg.Z, cfg.X0, args.h)
        rows = [[cfg.j, cfg.Z, fraction_str(cfg.X0), _fmt(res.value)]]
        emit(Table(["j", "Z", "X0", "force"], rows, audit=res.audit), args)
    else:
        raise ValidationError(f"unknown casimir quantity {kind!r}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    from . import casimir
    seq = parse_seq(args)
    if not seq.is_constant:
        raise ValidationError("sweep needs a constant sequence")
    if args.Z is None:
        raise ValidationError("sweep needs --Z lo:hi")
    zr = parse_int_range(args.Z)
    rows = casimir.sweep_force(seq.entries[0], zr)
    table_rows = [[r.Z, fraction_str(r.X0), _fmt(r.force)] for r in rows]
    audit = {"crossovers": casimir.regime_crossovers(rows),
             "terms": [{"Z": r.Z, "plate_term": r.plate_term, "boundary_term": r.boundary_term}
                       for r in rows]}
    emit(Table(["Z", "X0", "force"], table_rows, audit=audit), args)
    return EXIT_OK


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="laakso", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="flat key=value file mirroring the flags")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--j", help="comma list of sequence entries, one period")
        sp.add_argument("--period", type=int)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", type=Path)
        sp.add_argument("--config", help=argparse.SUPPRESS)

    sp = sub.add_parser("spectrum", help="closed-form spectrum with multiplicities")
    common(sp)
    sp.add_argument("--variant", choices=("free", "finite", "plated", "dirichlet"), default="free")
    sp.add_argument("--level")
    sp.add_argument("--cutoff", type=float)
    sp.add_argument("--Z", type=int)
    sp.add_argument("--X0")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("oracle", help="finite-difference check of a closed-form spectrum")
    common(sp)
    sp.add_argument("--level")
    sp.add_argument("--mesh", type=int, default=512)
    sp.add_argument("--cutoff", type=float, default=400.0)
    sp.add_argument("--tol", type=float, default=1e-3)
    sp.add_argument("--dirichlet-plates", action="store_true")
    sp.add_argument("--Z", type=int)
    sp.add_argument("--X0")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("zeta", help="evaluate a spectral zeta function")
    common(sp)
    sp.add_argument("--variant", choices=("free", "finite", "plated", "dirichlet"), default="free")
    sp.add_argument("--level")
    sp.add_argument("--Z", type=int)
    sp.add_argument("--X0")
    sp.add_argument("--s")
    sp.add_argument("--re")
    sp.add_argument("--im")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("poles", help="confirm pole candidates in a rectangle")
    common(sp)
    sp.add_argument("--level")
    sp.add_argument("--re")
    sp.add_argument("--im")
    sp.add_argument("--form", choices=("canonical", "printed"), default="canonical")
    sp.set_defaults(func=cmd_poles)

    sp = sub.add_parser("casimir", help="Casimir energies, forces and pressures")
    common(sp)
    sp.add_argument("kind", choices=("energy", "force", "force-numeric", "pressure",
                                     "pressure-periodic", "energy3d", "cross"))
    sp.add_argument("--Z", type=int)
    sp.add_argument("--X0")
    sp.add_argument("--d", type=float)
    sp.add_argument("--h", type=float, default=1e-5)
    sp.set_defaults(func=cmd_casimir)

    sp = sub.add_parser("sweep", help="1D force over a range of Z at nominal X0")
    common(sp)
    sp.add_argument("--Z")
    sp.set_defaults(func=cmd_sweep)
    return p


def _config_args(argv: list[str]) -> list[str]:
    """Splice flags from --config in after the subcommand so explicit flags win."""
    path = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif a.startswith("--config="):
            path = a.split("=", 1)[1]
    if path is None:
        return argv
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    extra = []
    for ln in lines:
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        if "=" not in ln:
            raise ValidationError(f"config line {ln!r} is not key=value")
        k, v = (x.strip() for x in ln.split("=", 1))
        flag = "--" + k.replace("_", "-") if k not in ("Z", "X0") else "--" + k
        if v.lower() in ("true", "yes", "on"):
            extra.append(flag)
        elif v.lower() in ("false", "no", "off"):
            continue
        else:
            extra += [flag, v]
    cmds = {"spectrum", "oracle", "zeta", "poles", "casimir", "sweep"}
    pos = next((i for i, a in enumerate(argv) if a in cmds), None)
    if pos is None:
        return argv
    return argv[:pos + 1] + extra + argv[pos + 1:]


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _config_args(argv)
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ResourceError, OverflowError, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NumericalGuardError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except LaaksoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
