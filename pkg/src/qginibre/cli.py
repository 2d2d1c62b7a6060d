"""``qginibre`` command line: spectra, log-gas chains, potential tables, classes, verify."""

import argparse
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import experiments, io, loggas, potential_theory as pt, spectral_stats as ss
from .loggas import Potential
from .quaternion import canonical_form_array
from .rng import RandomStream

log = logging.getLogger("qginibre")

MEASURES = {
    "disk": (pt.potential_uniform_disk, lambda x, tol: pt.quad_potential_disk(x, tol=tol)),
    "nu": (pt.potential_nu, lambda x, tol: pt.quad_potential(pt.NU, x, tol=tol)),
    "haar": (pt.potential_haar_circle, lambda x, tol: pt.quad_potential(pt.HAAR, x, tol=tol)),
}


def resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("QG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"QG_SEED must be an integer, got {env!r}")
    return experiments.DEFAULT_SEED


def positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return v


def potential_arg(text):
    try:
        return Potential.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _out_dir(args, default):
    out = Path(args.out or default)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_spectrum(args):
    out = _out_dir(args, "spectrum_out")
    v = args.potential
    spectra = experiments.replicate_spectra(args.n, args.replicas, args.seed, args.jobs)
    rows, energies, failures = [], [], []
    for r, sp in enumerate(spectra):
        if isinstance(sp, Exception):
            failures.append({"replica": r, "error": str(sp)})
            energies.append(None)
            continue
        rows.extend((r, k, z.real, z.imag) for k, z in enumerate(sp.all_eigs))
        energies.append(loggas.empirical_energy(sp, v))
    io.write_csv(out / "eigenvalues.csv", io.EIGS_HEADER, rows)
    ok = [e for e in energies if e is not None]
    io.write_json(out / "summary.json", {
        "n": args.n,
        "replicas": args.replicas,
        "seed": args.seed,
        "V": v.spec(),
        "empirical_energy": energies,
        "mean_energy": float(np.mean(ok)) if ok else None,
        "failures": failures,
    })
    for f in failures:
        print(f"replica {f['replica']} failed: {f['error']}", file=sys.stderr)
    return 1 if len(failures) == args.replicas else 0


def cmd_mcmc(args):
    out = _out_dir(args, "mcmc_out")
    v = args.potential
    if not v.check_admissible():
        print(f"warning: potential {v.spec()} fails the admissibility check", file=sys.stderr)
    res = loggas.mcmc_run(args.n, v, args.steps, proposal_scale=args.proposal_scale,
                          rng=RandomStream(args.seed), burnin=args.burnin, thin=args.thin,
                          record_trace=True)
    tr = res.trace
    io.write_csv(out / "trace.csv", io.TRACE_HEADER,
                 ((args.burnin + s, i, z.real, z.imag, a)
                  for s, (i, z, a) in enumerate(zip(tr["point_index"], tr["point"], tr["accepted"]))))
    io.write_json(out / "summary.json", res.summary(v))
    return 0


def potential_grid(g, extent):
    xs = np.linspace(-extent, extent, g)
    return (xs[None, :] + 1j * xs[:, None]).ravel()


def cmd_potential_table(args):
    out = _out_dir(args, "potential_out")
    closed, quad = MEASURES[args.measure]
    rows = []
    for x in potential_grid(args.grid, args.extent):
        on_circle = abs(abs(x) - 1.0) <= pt.ON_CIRCLE
        uc = float(closed(x))
        uq = float(quad(x, 1e-6 if on_circle else args.tol))
        rows.append((x.real, x.imag, uc, uq, abs(uc - uq)))
    io.write_csv(out / f"potential_{args.measure}.csv", io.POTENTIAL_HEADER, rows)
    return 0


def cmd_classes(args):
    out = _out_dir(args, "classes_out")
    spectra = experiments.replicate_spectra(args.n, args.replicas, args.seed, args.jobs)
    rows = []
    for r, sp in enumerate(spectra):
        if isinstance(sp, Exception):
            print(f"replica {r} failed: {sp}", file=sys.stderr)
            return 1
        cs = ss.sample_classes(sp, experiments.replica_stream(args.seed, r).child(1))
        mass = 4.0 * math.pi * cs.radii ** 2
        total = mass.sum()
        w = mass / total if total > 0 else np.full(mass.size, 1.0 / mass.size)
        canon = canonical_form_array(cs.classes)
        rows.extend((z.real, z.imag, *c, k.real, k.imag, wt / args.replicas)
                    for z, c, k, wt in zip(cs.reps, cs.classes, canon, w))
    io.write_csv(out / "classes.csv", io.CLASSES_HEADER, rows)
    return 0


def cmd_verify(args):
    out = _out_dir(args, "verify_out")
    only = [g.strip() for g in args.only.split(",")] if args.only else None
    ctx = experiments.Context(seed=args.seed, n=args.n or 300, replicas=args.replicas or 20,
                              jobs=args.jobs)
    try:
        checks = experiments.run_checks(only, ctx=ctx, echo=print)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    io.write_json(out / "report.json", [c.to_dict() for c in checks])
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 0 if not failed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="qginibre", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default, replicas=True):
        sp.add_argument("--n", type=positive_int, default=n_default)
        if replicas:
            sp.add_argument("--replicas", type=positive_int, default=20 if n_default else None)
        sp.add_argument("--seed", type=int, default=None, help="falls back to $QG_SEED, then 7")
        sp.add_argument("--out", default=None, help="output directory")
        sp.add_argument("--jobs", type=positive_int, default=1)

    sp = sub.add_parser("spectrum", help="right spectra of X(n) replicas")
    common(sp, 300)
    sp.add_argument("--potential", type=potential_arg, default=Potential.canonical())
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("mcmc", help="Metropolis chain for the log-gas")
    common(sp, 16, replicas=False)
    sp.add_argument("--potential", type=potential_arg, default=Potential.canonical())
    sp.add_argument("--steps", type=positive_int, default=200_000)
    sp.add_argument("--burnin", type=int, default=loggas.DEFAULT_BURNIN)
    sp.add_argument("--thin", type=positive_int, default=100)
    sp.add_argument("--proposal-scale", type=float, default=None)
    sp.set_defaults(func=cmd_mcmc)

    sp = sub.add_parser("potential-table", help="closed-form vs quadrature potentials on a grid")
    sp.add_argument("--measure", choices=sorted(MEASURES), default="nu")
    sp.add_argument("--grid", type=positive_int, default=64)
    sp.add_argument("--extent", type=float, default=2.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_potential_table)

    sp = sub.add_parser("classes", help="uniform elements of the eigenvalue similarity classes")
    common(sp, 300)
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    common(sp, None)
    sp.add_argument("--only", default=None,
                    help="comma-separated groups: " + ",".join(experiments.CHECKS))
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    args.seed = resolve_seed(args.seed)
    if args.command in ("mcmc",) and args.burnin < 0:
        print("error: --burnin must be >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except Exception as exc:  # module failures surface as a nonzero exit
        log.debug("failure", exc_info=True)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
