"""Command-line interface: compute, expand, protocol, figure and verify.

Inputs are matrix JSON files (``{"re": [[...]], "im": [[...]]}``), ensemble
JSON files, or inline specifications:

``builtin:two-state-source``
    ensemble {1/2 |0>, 1/2 |+>} with average rho = 1/2 |0><0| + 1/2 |+><+|.
``builtin:phi+:M``
    maximally entangled state of Schmidt rank M.
``schmidt:0.7,0.3``
    bipartite pure state with the given Schmidt coefficients.
``diag:0.75,0.25``
    diagonal matrix.
``maxmixed:d``
    1/d.

Exit codes: 0 success, 1 property violation, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import __version__
from . import classical as cl
from . import divergences as dv
from . import herm as hm
from . import protocols as pt
from . import second_order as so
from . import verify as vf

SCHEMA_VERSION = 1
SIG_DIGITS = 12
CSV_COLUMNS = ("n", "value", "a", "b", "remainder_tag")
TOLERANCES = {
    "hermiticity": hm.HERM_REJECT_TOL,
    "psd": hm.PSD_TOL,
    "ties": hm.TIE_TOL,
    "trace": hm.TRACE_TOL,
    "bisection_width": 1e-12,
}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# formatting


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, f".{SIG_DIGITS}g")


def _jsonable(obj):
    """Round floats to 12 significant digits; +/-inf and nan become strings."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": _jsonable(np.real(obj).tolist()), "im": _jsonable(np.imag(obj).tolist())}
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return fmt(x)
        return float(format(x, f".{SIG_DIGITS}g"))
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, pt.MajorizationCertificate):
        return {"valid": obj.valid, "partial_sums_ok": obj.partial_sums_ok.tolist()}
    return str(obj)


def record(kind: str, payload: dict) -> dict:
    base = {"schema_version": SCHEMA_VERSION, "record": kind, "package_version": __version__,
            "tolerances": TOLERANCES}
    base.update(payload)
    return _jsonable(base)


def dumps(rec: dict) -> str:
    return json.dumps(rec, indent=2, sort_keys=True) + "\n"


def csv_text(rows, columns=CSV_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([r[c] if isinstance(r[c], str) else fmt(r[c]) for c in columns])
    return buf.getvalue()


# --------------------------------------------------------------------------
# input parsing


def two_state_source() -> hm.PureStateEnsemble:
    """Ensemble {1/2 |0>, 1/2 |+>}; commands needing a matrix use its average."""
    plus = np.array([1.0, 1.0]) / math.sqrt(2)
    return hm.PureStateEnsemble(np.array([0.5, 0.5]), (np.array([1.0, 0.0]), plus))


def load_object(spec: str):
    """Parse an input spec; returns a matrix, a BipartitePureState or a PureStateEnsemble."""
    try:
        if spec.startswith("builtin:"):
            name = spec[len("builtin:"):]
            if name == "two-state-source":
                return two_state_source()
            if name.startswith("phi+:"):
                return hm.max_entangled(int(name.split(":")[1]))
            raise UsageError(f"unknown builtin {name!r}")
        if spec.startswith("schmidt:"):
            lam = [float(x) for x in spec[len("schmidt:"):].split(",")]
            return hm.BipartitePureState.from_schmidt(lam)
        if spec.startswith("diag:"):
            return np.diag([float(x) for x in spec[len("diag:"):].split(",")]).astype(complex)
        if spec.startswith("maxmixed:"):
            return hm.maximally_mixed(int(spec.split(":")[1]))
        with open(spec, encoding="utf-8") as fh:
            obj = json.load(fh)
    except UsageError:
        raise
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read input {spec!r}: {exc}") from exc
    try:
        if isinstance(obj, dict) and "probs" in obj:
            return hm.ensemble_from_json(obj)
        if isinstance(obj, dict) and "schmidt" in obj:
            return hm.BipartitePureState.from_schmidt(obj["schmidt"])
        if isinstance(obj, dict) and "outputs" in obj:
            return so.CqChannel(tuple(hm.matrix_from_json(o) for o in obj["outputs"]))
        return hm.matrix_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"input {spec!r} does not match the matrix schema: {exc}") from exc


def as_state_matrix(obj) -> np.ndarray:
    if isinstance(obj, hm.BipartitePureState):
        return obj.matrix
    if isinstance(obj, hm.PureStateEnsemble):
        return obj.average
    if isinstance(obj, so.CqChannel):
        raise UsageError("expected a matrix, got a cq channel")
    return hm.as_matrix(obj)


def as_pure(obj) -> hm.BipartitePureState:
    if isinstance(obj, hm.BipartitePureState):
        return obj
    raise UsageError("expected a bipartite pure state (schmidt:... or builtin:phi+:M)")


def parse_floats(text: str | None, name: str):
    if text is None:
        return None
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--{name} expects comma separated numbers") from exc


def parse_ints(text: str | None, name: str):
    vals = parse_floats(text, name)
    if vals is None:
        return None
    if any(v != int(v) for v in vals):
        raise UsageError(f"--{name} expects integers")
    return [int(v) for v in vals]


def read_config(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for ln, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{ln}: expected key=value")
                k, v = line.split("=", 1)
                out[k.strip().replace("-", "_")] = v.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    return out


# --------------------------------------------------------------------------
# compute


QUANTITIES = (
    "underline-Ds", "overline-Ds", "Ds-th", "DH", "dmax0", "dmax", "relent",
    "H-underline", "H-overline", "Hcond-underline", "Hcond-overline", "I-underline", "I-overline",
    "classical-Ds",
)


def _single_eps(args, default=None) -> float:
    eps = parse_floats(args.eps, "eps")
    if not eps:
        if default is None:
            raise UsageError("--eps is required")
        return default
    if len(eps) != 1:
        raise UsageError("this command takes a single --eps value")
    return eps[0]


def _dims(args, required=True):
    d = parse_ints(args.dims, "dims")
    if d is None and required:
        raise UsageError("--dims dA,dB is required")
    return d


def cmd_compute(args) -> tuple[int, str]:
    q = args.quantity
    objs = [load_object(s) for s in args.inputs]
    payload = {"quantity": q, "inputs": list(args.inputs)}
    conventions = {"log_base": 2}
    if q in ("underline-Ds", "overline-Ds", "Ds-th", "DH", "dmax0", "dmax", "relent", "classical-Ds"):
        if len(objs) != 2:
            raise UsageError(f"{q} needs two inputs (rho, sigma)")
        rho, sig = (as_state_matrix(o) for o in objs)
        if q in ("underline-Ds", "overline-Ds"):
            e = _single_eps(args)
            r = dv.info_spectrum_divergence(rho, sig, e, q.split("-")[0])
            payload.update(value=r.gamma, epsilon=e, achieved_gap=r.achieved_gap, target=r.target,
                           bracket=list(r.bracket), solver_tol=r.tol, note=r.note)
        elif q == "Ds-th":
            e = _single_eps(args)
            payload.update(value=dv.ds_tomamichel_hayashi(rho, sig, e), epsilon=e)
            conventions["left_limit"] = True
        elif q == "DH":
            e = _single_eps(args)
            h = dv.hypothesis_testing_divergence(rho, sig, e)
            payload.update(value=h.value, epsilon=e, type1=h.type1, type2=h.type2, dual=h.dual)
        elif q == "dmax0":
            payload.update(value=dv.max_divergence_unsmoothed(rho, sig))
        elif q == "dmax":
            e = _single_eps(args)
            m = dv.max_divergence(rho, sig, e)
            payload.update(lower=m.lower, upper=m.upper, value=m.upper, epsilon=e,
                           purified_distance=m.purified_distance)
        elif q == "relent":
            st = dv.relative_entropy_stats(rho, sig)
            payload.update(value=st.D, D=st.D, V=st.V, s=st.s, finite=st.finite)
        else:
            e = _single_eps(args)
            fv = cl.classical_info_spectrum(cl.nussbaum_szkola(rho, sig), e, "th")
            payload.update(value=float(fv), epsilon=e)
            conventions["left_limit"] = bool(fv.left_limit)
    elif q in ("H-underline", "H-overline"):
        e = _single_eps(args)
        payload.update(value=dv.entropy_spectrum(as_state_matrix(objs[0]), e, q.split("-")[1]), epsilon=e)
    elif q in ("Hcond-underline", "Hcond-overline"):
        e = _single_eps(args)
        dims = _dims(args, required=not isinstance(objs[0], hm.BipartitePureState))
        dims = dims or list(objs[0].dims)
        payload.update(value=dv.conditional_spectrum(as_state_matrix(objs[0]), dims, e, q.split("-")[1]),
                       epsilon=e)
    elif q in ("I-underline", "I-overline"):
        e = _single_eps(args)
        dims = _dims(args, required=not isinstance(objs[0], hm.BipartitePureState))
        dims = dims or list(objs[0].dims)
        r = dv.mutual_info_spectrum(as_state_matrix(objs[0]), dims, e, q.split("-")[1], seed=args.seed)
        payload.update(value=r.value, epsilon=e, anchor_value=r.anchor_value, upper_envelope=r.upper_envelope)
    else:
        raise UsageError(f"unknown quantity {q!r}")
    payload["conventions"] = conventions
    rec = record("compute", payload)
    return 0, _emit(args, rec, f"{q} = {fmt(payload['value'])}  (tol {fmt(TOLERANCES['bisection_width'])})")


# --------------------------------------------------------------------------
# expand


TASKS = ("divergence", "source_visible", "source_blind", "dense_coding", "distill", "dilute", "cq")


def _exp_dict(ex: so.ExpansionCoefficients) -> dict:
    return {"task": ex.task, "a": ex.a, "b": ex.b, "remainder_tag": ex.remainder_tag, "epsilon": ex.eps,
            "dispersion": ex.dispersion, "meta": ex.meta}


def cmd_expand(args) -> tuple[int, str]:
    e = _single_eps(args)
    objs = [load_object(s) for s in args.inputs]
    t = args.task
    if t == "divergence":
        if len(objs) != 2:
            raise UsageError("divergence needs rho and sigma")
        exps = [so.divergence_expansion(as_state_matrix(objs[0]), as_state_matrix(objs[1]), e)]
    elif t == "source_visible":
        exps = [so.source_coding_expansion(as_state_matrix(objs[0]), e, "visible")]
    elif t == "source_blind":
        exps = list(so.source_coding_expansion(as_state_matrix(objs[0]), e, "blind"))
    elif t in ("distill", "dilute"):
        exps = [so.entanglement_expansion(as_pure(objs[0]), e, t)]
    elif t == "dense_coding":
        dims = _dims(args, required=not isinstance(objs[0], hm.BipartitePureState))
        dims = dims or list(objs[0].dims)
        mode = args.channel or "identity"
        exps = [so.dense_coding_expansion(as_state_matrix(objs[0]), dims, e, mode, seed=args.seed).coefficients]
    elif t == "cq":
        if not isinstance(objs[0], so.CqChannel):
            raise UsageError("cq needs a channel file with an 'outputs' list")
        exps = [so.cq_expansion(objs[0], e)]
    else:
        raise UsageError(f"unknown task {t!r}")
    rec = record("expand", {"task": t, "inputs": list(args.inputs), "expansions": [_exp_dict(x) for x in exps]})
    text = "\n".join(f"{x.task}: a = {fmt(x.a)}, b = {fmt(x.b)}, remainder {x.remainder_tag}" for x in exps)
    return 0, _emit(args, rec, text)


# --------------------------------------------------------------------------
# protocol


def _slacks(args, e) -> dv.EpsilonSpec:
    eta = parse_floats(args.eta, "eta")
    delta = parse_floats(args.delta, "delta")
    c = parse_floats(getattr(args, "c", None), "c")
    return dv.EpsilonSpec(e, eta=eta[0] if eta else None, delta=delta[0] if delta else None,
                          c=c[0] if c else None)


def _code_dict(rec: pt.CodeRecord) -> dict:
    return {"M": rec.M, "log_M": rec.log_m, "gamma": rec.gamma, "figure_of_merit": rec.figure_of_merit,
            "value": rec.value, "decoder": rec.decoder, "certificates": rec.certificates, "flags": rec.flags}


def cmd_protocol(args) -> tuple[int, str]:
    e = _single_eps(args)
    obj = load_object(args.input)
    p = args.name
    sl = _slacks(args, e)
    if p == "visible":
        if not isinstance(obj, hm.PureStateEnsemble):
            raise UsageError("visible coding needs an ensemble file")
        out = _code_dict(pt.visible_code(obj, e))
    elif p == "blind":
        out = _code_dict(pt.blind_code(as_state_matrix(obj), e))
    elif p == "concentrate":
        if sl.eta is None:
            raise UsageError("concentration needs --eta")
        try:
            out = _code_dict(pt.concentrate(as_pure(obj), e, sl.eta))
        except pt.ProtocolFailure as exc:
            rec = record("protocol", {"protocol": p, "input": args.input, "epsilon": e, "success": False,
                                      "diagnostics": str(exc)})
            return 1, _emit(args, rec, f"concentration failed: {exc}")
    elif p == "dilute":
        out = _code_dict(pt.dilute_at(as_pure(obj), e))
    elif p.startswith("bounds-"):
        task = p[len("bounds-"):]
        if task == "dense_coding":
            dims = _dims(args, required=not isinstance(obj, hm.BipartitePureState))
            dims = dims or list(obj.dims)
            inputs = (as_state_matrix(obj), dims)
        elif task in ("distill", "dilute"):
            inputs = as_pure(obj)
        elif task == "cq":
            inputs = obj
        else:
            inputs = obj if isinstance(obj, hm.PureStateEnsemble) else as_state_matrix(obj)
        br = pt.one_shot_bounds(task, inputs, e, sl, seed=args.seed)
        out = {"lower": br.lower, "upper": br.upper, "task": br.task, "meta": br.meta}
    else:
        raise UsageError(f"unknown protocol {p!r}")
    out.update(protocol=p, input=args.input, epsilon=e, success=True)
    rec = record("protocol", out)
    if "M" in out:
        text = f"{p}: M = {out['M']}, {out['figure_of_merit']} = {fmt(out['value'])}"
    else:
        text = f"{p}: [{fmt(out['lower'])}, {fmt(out['upper'])}]"
    return 0, _emit(args, rec, text)


# --------------------------------------------------------------------------
# figure


DEFAULT_N_GRID = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000)


def figure_rows(kind: str, obj, eps: float, delta: float | None, n_grid) -> list[dict]:
    n_grid = list(n_grid)
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])) or not n_grid or n_grid[0] < 1:
        raise UsageError("--n-grid must be positive and strictly increasing")
    if kind in ("rate_curve", "below_entropy"):
        rho = as_state_matrix(obj)
        ex = so.source_coding_expansion(rho, eps, "visible")
        rows = [{"n": n, "value": float(ex.rate(n)), "a": ex.a, "b": ex.b, "remainder_tag": ex.remainder_tag}
                for n in n_grid]
        if kind == "below_entropy":
            s = hm.von_neumann_entropy(rho)
            rows.append({"n": "S", "value": s, "a": s, "b": 0.0, "remainder_tag": "constant"})
        return rows
    if kind == "irreversibility":
        if delta is None:
            raise UsageError("irreversibility needs --delta")
        psi = as_pure(obj)
        g = so.irreversibility_gap(psi, eps, delta, n_grid)
        coef = -math.sqrt(g.variance) * (cl.normal_quantile(delta) + cl.normal_quantile(eps))
        rows = [{"n": n, "value": float(v), "a": 0.0, "b": coef, "remainder_tag": "O(log n)"}
                for n, v in zip(n_grid, g.gap_bits)]
        cross = "none" if g.crossover_n is None else g.crossover_n
        rows.append({"n": "crossover_n", "value": cross if isinstance(cross, str) else float(cross),
                     "a": 0.0, "b": coef, "remainder_tag": "degenerate" if g.degenerate else "O(log n)"})
        return rows
    raise UsageError(f"unknown figure {kind!r}")


def cmd_figure(args) -> tuple[int, str]:
    e = _single_eps(args, 0.1)
    delta = parse_floats(args.delta, "delta")
    grid = parse_ints(args.n_grid, "n-grid") or list(DEFAULT_N_GRID)
    rows = figure_rows(args.figure, load_object(args.input), e, delta[0] if delta else None, grid)
    if (args.format or "csv") == "json":
        text = dumps(record("figure", {"figure": args.figure, "input": args.input, "epsilon": e, "rows": rows}))
    else:
        text = csv_text(rows)
    _write(args.out, text)
    return 0, text


# --------------------------------------------------------------------------
# verify


def verify_report(suites, cfg: vf.SuiteConfig, strict: bool = False) -> dict:
    res = vf.run_suites(suites, cfg, strict)
    total = sum(r["failures"] for r in res.values())
    return record("verification_report", {
        "config": {"seed": cfg.seed, "trials": cfg.trials, "dims": list(cfg.dims), "eps_grid": list(cfg.eps_grid)},
        "suites": res,
        "total_failures": total,
    })


def _report_csv(rep: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("suite", "property", "trials", "failures", "worst_violation", "tolerance", "failed_seeds"))
    for s, r in rep["suites"].items():
        for p, t in r["properties"].items():
            w.writerow((s, p, t["trials"], t["failures"], fmt(t["worst_violation"]) if not isinstance(
                t["worst_violation"], str) else t["worst_violation"], fmt(t["tolerance"]),
                        " ".join(map(str, t["failed_seeds"]))))
    return buf.getvalue()


def cmd_verify(args) -> tuple[int, str]:
    suites = list(vf.SUITES) if args.suite == "all" else [args.suite]
    kw = {"seed": int(args.seed) & (2**64 - 1)}
    if args.trials is not None:
        if int(args.trials) < 1:
            raise UsageError("--trials must be >= 1")
        kw["trials"] = int(args.trials)
    dims = parse_ints(args.dims, "dims")
    if dims:
        kw["dims"] = tuple(dims)
    eps = parse_floats(args.eps, "eps")
    if eps:
        if any(not 0 < x < 1 for x in eps):
            raise UsageError("--eps values must lie in (0, 1)")
        kw["eps_grid"] = tuple(eps)
    cfg = vf.SuiteConfig(**kw)
    t0 = time.perf_counter()
    try:
        rep = verify_report(suites, cfg, strict=args.strict)
    except vf.StrictFailure as exc:
        print(f"strict mode: {exc}", file=sys.stderr)
        return 1, ""
    print(f"verify {args.suite}: {rep['total_failures']} failures in {time.perf_counter() - t0:.1f}s",
          file=sys.stderr)
    text = _report_csv(rep) if args.format == "csv" else dumps(rep)
    _write(args.out, text)
    return (1 if rep["total_failures"] else 0), text


# --------------------------------------------------------------------------
# plumbing


def _write(path, text):
    if path:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {path!r}: {exc}") from exc


def _emit(args, rec: dict, human: str) -> str:
    text = dumps(rec)
    _write(args.out, text)
    return text if args.format == "json" else human + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--eps", default=None, help="epsilon (comma separated grid for verify)")
    common.add_argument("--eta", default=None)
    common.add_argument("--delta", default=None)
    common.add_argument("--c", default=None, help="Hayashi-Nagaoka constant for dense coding and cq bounds")
    common.add_argument("--dims", default=None, help="comma separated dimensions")
    common.add_argument("--n-grid", dest="n_grid", default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--strict", action="store_true")
    common.add_argument("--config", default=None, help="key=value file mirroring the flags")

    p = argparse.ArgumentParser(prog="infospec", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="evaluate a divergence or entropy")
    c.add_argument("quantity", choices=QUANTITIES)
    c.add_argument("inputs", nargs="+")
    c.set_defaults(func=cmd_compute)

    e = sub.add_parser("expand", parents=[common], help="second-order coefficients for a task")
    e.add_argument("task", choices=TASKS)
    e.add_argument("inputs", nargs="+")
    e.add_argument("--channel", choices=("identity", "optimize"), default=None)
    e.set_defaults(func=cmd_expand)

    pr = sub.add_parser("protocol", parents=[common], help="run a protocol or evaluate one-shot bounds")
    pr.add_argument("name", choices=("visible", "blind", "concentrate", "dilute",
                                     *(f"bounds-{t}" for t in ("source_visible", "source_blind", "dense_coding",
                                                              "distill", "dilute", "cq"))))
    pr.add_argument("input")
    pr.set_defaults(func=cmd_protocol)

    f = sub.add_parser("figure", parents=[common], help="emit formula values per n as CSV")
    f.add_argument("figure", choices=("rate_curve", "below_entropy", "irreversibility"))
    f.add_argument("input")
    f.set_defaults(func=cmd_figure)

    v = sub.add_parser("verify", parents=[common], help="run randomized property suites")
    v.add_argument("suite", choices=(*vf.SUITES, "all"))
    v.set_defaults(func=cmd_verify)
    return p


def _apply_config(args, parser):
    if not args.config:
        return
    conf = read_config(args.config)
    defaults = parser.parse_args([args.command, *_positional(args)])
    for k, v in conf.items():
        if not hasattr(args, k):
            raise UsageError(f"unknown config key {k!r}")
        # flags win: only fill values still at their defaults
        if getattr(args, k) == getattr(defaults, k):
            cur = getattr(defaults, k)
            if isinstance(cur, bool):
                v = v.lower() in ("1", "true", "yes")
            elif k in ("seed", "trials"):
                v = int(v)
            setattr(args, k, v)


def _positional(args):
    out = []
    for k in ("quantity", "task", "name", "figure", "suite"):
        if hasattr(args, k):
            out.append(getattr(args, k))
    if hasattr(args, "inputs"):
        out.extend(args.inputs)
    if hasattr(args, "input"):
        out.append(args.input)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        _apply_config(args, parser)
        code, text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if text and not (args.command in ("figure", "verify") and args.out):
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
