"""Command-line interface: spectrum, verify, lift, examples, generate.

Reports go to stdout as human-readable text; ``--output`` additionally
writes the structured JSON form.  Reports are deterministic (no
timestamps) and identify the instance by name and content hash, so
repeated runs on the same input are byte-identical.

Exit codes: 0 all checks passed, 1 a check failed or a numerical
contract broke, 2 invalid input (file, flags, or domain errors).
The environment variable ``QWALK_TOL`` overrides the default comparison
tolerance (1e-8); ``--tol`` overrides both.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .errors import QWalkError, ValidationError
from .graph import Graph
from .instances import (
    Instance,
    bundled_names,
    load_bundled,
    parse_graph_spec,
    random_instance_dict,
    resolve_instance,
)
from .qmatrix import (
    QMatrix,
    h_linear_independent,
    minimal_polynomial,
    psi,
    qvec,
    right_eigenbasis,
    right_eigenvalues,
    right_eigenvector,
    root_subspaces,
)
from .quaternion import I as QI
from .quaternion import J as QJ
from .quaternion import K as QK
from .quaternion import Quaternion, format_quaternion
from .szegedy import (
    build_walk,
    check_unitary_condition,
    full_spectrum,
    lift_eigenvector,
    match_multisets,
    random_instance,
    spectral_map,
    verify_structure,
)
from .zeta import (
    default_samples,
    ihara_identity,
    quaternionic_identity,
    second_weighted_identity,
    sylvester_det_property,
)
from . import _schur
from .szegedy import _base_spectrum, _walk_residual

DEFAULT_TOL = 1e-8
#: Loose matching window for user-supplied --mu values (CLI inputs are
#: usually typed with a handful of digits).
MU_MATCH_TOL = 5e-3


def _fmt(value: float) -> str:
    # Walk quantities live on an O(1) scale; hide pure rounding noise.
    if abs(value) <= 1e-12:
        value = 0.0
    return f"{value:.12g}"


def _fmt_c(z: complex) -> str:
    snap = 1e-12 * max(1.0, abs(z))
    return format_quaternion(
        Quaternion(
            0.0 if abs(z.real) <= snap else z.real,
            0.0 if abs(z.imag) <= snap else z.imag,
        )
    )


def _fmt_q(q: Quaternion) -> str:
    return format_quaternion(q)


def _resolve_tol(args) -> float:
    if getattr(args, "tol", None) is not None:
        return float(args.tol)
    env = os.environ.get("QWALK_TOL")
    if env is not None:
        try:
            return float(env)
        except ValueError:
            raise ValidationError(
                f"QWALK_TOL={env!r} is not a number"
            ) from None
    return DEFAULT_TOL


def _header(command: str, tol: float, instance: Instance | None = None,
            seeds=()) -> tuple[dict, list[str]]:
    report = {
        "tool": "qszegedy",
        "version": __version__,
        "command": command,
        "tolerance": tol,
        "seeds": list(seeds),
    }
    lines = [f"qszegedy {__version__} :: {command}"]
    if instance is not None:
        report["instance"] = {"name": instance.name, "sha256": instance.sha256}
        lines.append(f"instance: {instance.name} (sha256 {instance.sha256[:12]})")
    if seeds:
        lines.append("seeds: " + ", ".join(str(s) for s in seeds))
    lines.append(f"tolerance: {tol:g}")
    return report, lines


def _json_native(value):
    # Reports may carry numpy scalars from residual arithmetic.
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    raise TypeError(f"cannot serialize {type(value).__name__} in a report")


def _emit(report: dict, lines: list[str], output: str | None) -> int:
    sys.stdout.write("\n".join(lines) + "\n")
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            json.dump(report, handle, indent=2, default=_json_native)
            handle.write("\n")
    return 0 if report.get("passed", False) else 1


def _unitarity_lines(unitarity) -> list[str]:
    lines = [
        f"unitarity condition (tol {unitarity.tol:g}): "
        + ("PASS" if unitarity.passed else "FAIL")
    ]
    for row in unitarity.vertices:
        mark = "ok" if row.ok else "FAIL"
        lines.append(
            f"  vertex {row.vertex + 1}: sum {_fmt(row.total)} "
            f"(deviation {row.deviation:.3g}) {mark}"
        )
    if not unitarity.passed:
        failing = ", ".join(str(v + 1) for v in unitarity.failing_vertices())
        lines.append(f"  offending vertices: {failing}")
    return lines


def _grouped(values, tol: float = 1e-8):
    """Cluster a sorted sequence of floats into (value, count) pairs."""
    groups: list[list[float]] = []
    for value in values:
        if groups and abs(value - groups[-1][0]) <= tol * max(1.0, abs(value)):
            groups[-1].append(value)
        else:
            groups.append([value])
    return [(sum(g) / len(g), len(g)) for g in groups]


def _graph_line(graph: Graph) -> str:
    return (
        f"graph: {graph.n} vertices, {graph.m0} edges, {graph.m1} loops, "
        f"{graph.m_prime} arcs"
    )


def _arc_label(graph: Graph, index: int) -> str:
    arc = graph.arc(index)
    return f"{arc.origin + 1}->{arc.terminus + 1}"


def _vector_lines(graph: Graph, vec: QMatrix, indent: str = "    ") -> list[str]:
    lines = []
    vertexwise = vec.rows == graph.n
    for r in range(vec.rows):
        label = f"v{r + 1}" if vertexwise else _arc_label(graph, r)
        lines.append(f"{indent}{label}: {_fmt_q(vec.entry(r, 0))}")
    return lines


# ---------------------------------------------------------------- spectrum


def cmd_spectrum(args) -> int:
    tol = _resolve_tol(args)
    instance = resolve_instance(args.instance)
    seeds = [instance.seed] if instance.seed is not None else []
    report, lines = _header("spectrum", tol, instance, seeds)
    unitarity = check_unitary_condition(instance.graph, instance.weights)
    report["unitarity"] = unitarity.to_dict()
    lines.append(_graph_line(instance.graph))
    lines.extend(_unitarity_lines(unitarity))

    if not unitarity.passed and not args.force:
        lines.append("result: FAIL (weights are not unitary; rerun with "
                      "--force for a direct-diagonalization report)")
        report["passed"] = False
        return _emit(report, lines, args.output)

    if unitarity.passed:
        spectrum = full_spectrum(
            instance.graph,
            instance.weights,
            want_oracle=args.oracle,
            want_eigenvectors=args.eigenvectors,
            tol=tol,
        )
        report["spectrum"] = spectrum.to_dict()
        lines.append(f"tree case: {spectrum.tree_case}")
        lines.append(
            f"base spectrum of the doubly weighted matrix "
            f"({len(spectrum.mu_spectrum)} values):"
        )
        for value, count in _grouped(spectrum.mu_spectrum):
            lines.append(f"  {_fmt(value)} x{count}")
        lines.append(
            f"right spectrum ({len(spectrum.classes)} conjugacy classes, "
            "quaternionic multiplicities):"
        )
        for cls in spectrum.classes:
            sources = ",".join(cls.sources)
            lines.append(
                f"  {_fmt_c(cls.rep):<24} multiplicity {cls.multiplicity}"
                f"  [{sources}]"
            )
        passed = True
        if spectrum.oracle is not None:
            diff = "empty" if spectrum.oracle.matched else "NONEMPTY"
            lines.append(
                "oracle comparison against direct diagonalization of psi(U): "
                f"{len(spectrum.psi_u_spectrum)} eigenvalues, diff {diff} "
                f"(max pair distance {spectrum.oracle.max_distance:.3g})"
            )
            passed = passed and spectrum.oracle.matched
        if spectrum.eigenvectors is not None:
            lines.append(f"eigenvectors ({len(spectrum.eigenvectors)}):")
            for item in spectrum.eigenvectors:
                mu_note = "" if item.mu is None else f" from mu {_fmt(item.mu)}"
                lines.append(
                    f"  lambda {_fmt_c(item.lam)} [{item.origin}]{mu_note} "
                    f"residual {item.residual:.3g}"
                )
                lines.extend(_vector_lines(instance.graph, item.vector))
                passed = passed and item.residual <= tol
    else:
        # --force on a non-unitary instance: direct path only.
        ops = build_walk(instance.graph, instance.weights)
        classes = right_eigenvalues(ops.U)
        report["spectrum"] = {
            "tree_case": "direct-only",
            "classes": [
                {
                    "rep": [cls.rep.real, cls.rep.imag],
                    "multiplicity": mult,
                    "sources": ["direct"],
                }
                for cls, mult in classes
            ],
        }
        lines.append("tree case: direct-only (spectral mapping skipped; "
                      "the unitarity condition fails)")
        lines.append("right spectrum via direct diagonalization:")
        for cls, mult in classes:
            lines.append(f"  {_fmt_c(cls.rep):<24} multiplicity {mult}")
        passed = False

    report["passed"] = bool(passed)
    lines.append(f"result: {'PASS' if passed else 'FAIL'}")
    return _emit(report, lines, args.output)


# -------------------------------------------------------------------- lift


def cmd_lift(args) -> int:
    tol = _resolve_tol(args)
    if args.mu is None and not args.all:
        raise ValidationError("lift needs --mu VALUE or --all")
    if args.mu is not None and args.all:
        raise ValidationError("--mu and --all are mutually exclusive")
    instance = resolve_instance(args.instance)
    report, lines = _header("lift", tol, instance)
    unitarity = check_unitary_condition(instance.graph, instance.weights)
    if not unitarity.passed:
        raise ValidationError(
            "weights violate the unitarity condition at vertices "
            f"{[v + 1 for v in unitarity.failing_vertices()]}"
        )
    ops = build_walk(instance.graph, instance.weights)
    mus = _base_spectrum(ops.W)
    distinct = _grouped(mus)

    if args.all:
        targets = [value for value, _count in distinct]
    else:
        requested = float(args.mu)
        nearest = min(distinct, key=lambda item: abs(item[0] - requested))
        if abs(nearest[0] - requested) > MU_MATCH_TOL * max(1.0, abs(requested)):
            available = ", ".join(_fmt(v) for v, _ in distinct)
            raise ValidationError(
                f"no base eigenvalue near {requested}; available: {available}"
            )
        targets = [nearest[0]]

    passed = True
    entries = []
    boundary_needed = set()
    for mu in targets:
        if abs(abs(mu) - 2.0) <= tol:
            boundary_needed.add(1.0 if mu > 0 else -1.0)
            continue
        lam_p, _ = spectral_map(mu)
        count = next(c for v, c in distinct if v == mu)
        lines.append(
            f"base eigenvalue mu = {_fmt(mu)} (psi multiplicity {count}), "
            f"lambda = {_fmt_c(lam_p)}"
        )
        basis = right_eigenbasis(ops.W, complex(mu))
        lifted_group = []
        for bidx, v in enumerate(basis):
            lines.append(f"  base eigenvector {bidx + 1}:")
            lines.extend(_vector_lines(instance.graph, v))
            for vec, origin in ((v, "lift"), (v.right_scalar(QJ), "lift-companion")):
                lifted = lift_eigenvector(ops, vec, lam_p)
                residual = _walk_residual(ops, lifted, lam_p)
                rel = residual / max(lifted.fro_norm(), 1e-300)
                passed = passed and rel <= tol
                lifted_group.append(lifted)
                lines.append(f"  {origin} (relative residual {rel:.3g}):")
                lines.extend(_vector_lines(instance.graph, lifted))
                entries.append(
                    {
                        "mu": mu,
                        "lambda": [lam_p.real, lam_p.imag],
                        "origin": origin,
                        "residual": rel,
                        "vector": [
                            list(lifted.entry(r, 0).components)
                            for r in range(lifted.rows)
                        ],
                    }
                )
        independent = h_linear_independent(lifted_group)
        passed = passed and independent
        lines.append(
            f"  independence: the {len(lifted_group)} lifted vectors are "
            + ("H-linearly independent" if independent else "DEPENDENT")
        )

    if args.all:
        boundary_needed.update((1.0, -1.0))
    for target in sorted(boundary_needed, reverse=True):
        try:
            basis = right_eigenbasis(ops.U, complex(target))
        except ValidationError:
            continue  # this boundary value is absent from the spectrum
        lines.append(
            f"lambda = {_fmt(target)} eigenvectors (direct extraction, "
            f"{len(basis)} found):"
        )
        for bidx, v in enumerate(basis):
            residual = _walk_residual(ops, v, complex(target))
            rel = residual / max(v.fro_norm(), 1e-300)
            passed = passed and rel <= tol
            lines.append(f"  vector {bidx + 1} (relative residual {rel:.3g}):")
            lines.extend(_vector_lines(instance.graph, v))
            entries.append(
                {
                    "mu": None,
                    "lambda": [target, 0.0],
                    "origin": "direct",
                    "residual": rel,
                    "vector": [
                        list(v.entry(r, 0).components) for r in range(v.rows)
                    ],
                }
            )

    report["eigenvectors"] = entries
    report["passed"] = bool(passed)
    lines.append(f"result: {'PASS' if passed else 'FAIL'}")
    return _emit(report, lines, args.output)


# ------------------------------------------------------------------ verify


def _verify_one(graph: Graph, weights, tol: float, sample_count: int,
                w_seed: int) -> tuple[dict, list[str], bool]:
    """Run the full identity battery on one weighted graph."""
    section: dict = {}
    lines: list[str] = []
    passed = True

    unitarity = check_unitary_condition(graph, weights)
    section["unitarity"] = unitarity.to_dict()
    lines.extend(_unitarity_lines(unitarity))
    passed = passed and unitarity.passed

    ops = build_walk(graph, weights)
    structure = verify_structure(ops)
    section["structure"] = structure.to_dict()
    lines.append("structure identities:")
    for check in structure.checks:
        mark = "ok" if check.ok else "FAIL"
        lines.append(
            f"  {check.name:<14} residual {check.residual:.3g} "
            f"(tol {check.tol:g}) {mark}"
        )
    passed = passed and structure.passed

    samples = default_samples(sample_count)
    identities = []
    a = [value * math.sqrt(2.0) for value in ops.q]
    b = [ops.q[graph.inverse_index(i)] * math.sqrt(2.0)
         for i in range(graph.m_prime)]
    identities.append(quaternionic_identity(graph, a, b, samples, tol))

    if graph.m1 == 0 and graph.is_connected():
        identities.append(ihara_identity(graph, samples, tol))
        rng = np.random.default_rng(w_seed)
        w = np.where(
            graph.arc_mask(),
            rng.standard_normal((graph.n, graph.n))
            + 1j * rng.standard_normal((graph.n, graph.n)),
            0.0,
        )
        identities.append(second_weighted_identity(graph, w, samples, tol))
        skipped = None
    else:
        skipped = "ihara/second-weighted skipped: graph has loops"

    alphas = [complex(2.0)] + default_samples(sample_count, radius=1.0)
    syl_worst = 0.0
    for alpha in alphas:
        outcome = sylvester_det_property(psi(ops.K), psi(ops.L).conj().T, alpha)
        syl_worst = max(syl_worst, outcome.max_rel_error)
    syl_ok = syl_worst <= 1e-10

    lines.append(f"determinant identities ({len(samples)} sample points):")
    section["identities"] = []
    for check in identities:
        mark = "ok" if check.passed else "FAIL"
        lines.append(
            f"  {check.name:<16} max rel error {check.max_rel_error:.3g} {mark}"
        )
        section["identities"].append(check.to_dict())
        passed = passed and check.passed
    if skipped:
        lines.append(f"  {skipped}")
    lines.append(
        f"  {'sylvester':<16} max rel error {syl_worst:.3g} "
        f"({len(alphas)} alpha samples) " + ("ok" if syl_ok else "FAIL")
    )
    section["sylvester"] = {"max_rel_error": syl_worst, "passed": syl_ok}
    passed = passed and syl_ok
    return section, lines, passed


def cmd_verify(args) -> int:
    tol = _resolve_tol(args)
    if args.instance is None and args.random is None:
        raise ValidationError("verify needs an INSTANCE or --random SPEC")
    if args.instance is not None and args.random is not None:
        raise ValidationError("give either an INSTANCE or --random, not both")

    if args.instance is not None:
        instance = resolve_instance(args.instance)
        w_seed = (
            instance.seed
            if instance.seed is not None
            else int(instance.sha256[:8], 16)
        )
        report, lines = _header("verify", tol, instance, seeds=[w_seed])
        lines.append(_graph_line(instance.graph))
        section, sub_lines, passed = _verify_one(
            instance.graph, instance.weights, tol, args.samples, w_seed
        )
        report.update(section)
        lines.extend(sub_lines)
    else:
        graph = parse_graph_spec(args.random)
        seeds = [args.seed + i for i in range(args.count)]
        report, lines = _header("verify", tol, seeds=seeds)
        report["random"] = {"spec": args.random, "count": args.count}
        lines.append(f"random weightings of {args.random}: {args.count} "
                      f"instance(s) from seed {args.seed}")
        lines.append(_graph_line(graph))
        report["runs"] = []
        passed = True
        for seed in seeds:
            weights = random_instance(graph, seed)
            section, sub_lines, ok = _verify_one(
                graph, weights, tol, args.samples, seed
            )
            report["runs"].append({"seed": seed, **section})
            lines.append(f"--- seed {seed} ---")
            lines.extend(sub_lines)
            passed = passed and ok

    report["passed"] = bool(passed)
    lines.append(f"result: {'PASS' if passed else 'FAIL'}")
    return _emit(report, lines, args.output)


# ---------------------------------------------------------------- examples


def _golden_suite(tol: float):
    """Worked examples with frozen expected values.

    Yields (description, ok, detail) triples; every mismatch carries the
    observed value so failures are diagnosable from the output alone.
    """
    sq2 = math.sqrt(2.0)
    sq5 = math.sqrt(5.0)
    checks: list[tuple[str, bool, str]] = []

    def add(description: str, ok: bool, detail: str = ""):
        checks.append((description, bool(ok), detail))

    # Quaternion algebra.
    add("i*j = k and j*i = -k",
        (QI * QJ - QK).is_zero() and (QJ * QI + QK).is_zero())
    x = Quaternion(1.0, 2.0, -3.0, 0.5)
    add("x * x^-1 = 1", abs(x * x.inverse() - Quaternion(1.0)) <= 1e-15)

    # Example A: diag(1, k).
    m1 = QMatrix.diag([Quaternion(1.0), QK])
    classes = right_eigenvalues(m1)
    ok = (
        len(classes) == 2
        and abs(classes[0][0].rep - 1j) <= tol and classes[0][1] == 1
        and abs(classes[1][0].rep - 1.0) <= tol and classes[1][1] == 1
    )
    add("diag(1,k): classes {class of i, class of 1}", ok,
        "got " + "; ".join(f"{c.rep:.6g} x{m}" for c, m in classes))
    mp = minimal_polynomial(m1)
    ok = (
        len(mp.factors) == 2
        and mp.factors[0].exponent == 1 and mp.factors[1].exponent == 1
        and np.allclose(mp.factors[0].coefficients, (1.0, 0.0, 1.0), atol=tol)
        and np.allclose(mp.factors[1].coefficients, (1.0, -1.0), atol=tol)
    )
    add("diag(1,k): minimal polynomial (y^2+1)(y-1)", ok,
        f"got {[f.coefficients for f in mp.factors]}")
    v = right_eigenvector(m1, 1j)
    golden = qvec([Quaternion(), Quaternion(1, 0, -1, 0)])
    add("diag(1,k): eigenvector for i proportional to (0, 1-j)",
        not h_linear_independent([v, golden]))

    # Example B: [[0, i], [j, 0]].
    m2 = QMatrix.from_rows([[Quaternion(), QI], [QJ, Quaternion()]])
    classes = right_eigenvalues(m2)
    want = [complex(-1.0, 1.0) / sq2, complex(1.0, 1.0) / sq2]
    ok = (
        len(classes) == 2
        and all(
            abs(cls.rep - target) <= tol and mult == 1
            for (cls, mult), target in zip(classes, want)
        )
    )
    add("[[0,i],[j,0]]: classes {(+-1+i)/sqrt2}", ok,
        "got " + "; ".join(f"{c.rep:.6g} x{m}" for c, m in classes))
    mp = minimal_polynomial(m2)
    ok = (
        len(mp.factors) == 2
        and np.allclose(mp.factors[0].coefficients, (1.0, sq2, 1.0), atol=tol)
        and np.allclose(mp.factors[1].coefficients, (1.0, -sq2, 1.0), atol=tol)
    )
    add("[[0,i],[j,0]]: minimal polynomial (y^2+sqrt2 y+1)(y^2-sqrt2 y+1)",
        ok, f"got {[f.coefficients for f in mp.factors]}")
    v = right_eigenvector(m2, complex(1.0, 1.0) / sq2)
    golden = qvec([
        Quaternion(1, 0, -1, 0),
        Quaternion(1 / sq2, -1 / sq2, 1 / sq2, 1 / sq2),
    ])
    add("[[0,i],[j,0]]: eigenvector for (1+i)/sqrt2 matches the known span",
        not h_linear_independent([v, golden]))

    # Example C: the complete triangle with loops at every vertex.
    instance = load_bundled("k3_loops")
    graph, weights = instance.graph, instance.weights
    ops = build_walk(graph, weights)
    w_golden = QMatrix.from_real(
        np.full((3, 3), -2.0 / 3.0) + np.diag([4.0 / 3.0] * 3)
    )
    add("k3_loops: doubly weighted matrix has 2/3 diagonal, -2/3 off",
        (ops.W - w_golden).max_entry_norm() <= tol)
    spot = [
        (0, 1, Quaternion(-1.0 / 3.0)),
        (0, 4, Quaternion(0, 0, -2.0 / 3.0, 0)),
        (0, 6, Quaternion(0, 2.0 / 3.0, 0, 0)),
        (1, 3, Quaternion(0, 0, 0, 2.0 / 3.0)),
        (8, 2, Quaternion(0, 0, 2.0 / 3.0, 0)),
        (8, 8, Quaternion(-1.0 / 3.0)),
    ]
    ok = all(abs(ops.U.entry(r, c) - val) <= tol for r, c, val in spot)
    add("k3_loops: transition matrix spot entries", ok)

    spectrum = full_spectrum(graph, weights, want_oracle=True, tol=tol)
    got_mu = _grouped(spectrum.mu_spectrum)
    ok = (
        len(got_mu) == 2
        and abs(got_mu[0][0] + 2.0 / 3.0) <= tol and got_mu[0][1] == 2
        and abs(got_mu[1][0] - 4.0 / 3.0) <= tol and got_mu[1][1] == 4
    )
    add("k3_loops: base spectrum {-2/3 x2, 4/3 x4}", ok,
        "got " + ", ".join(f"{v:.6g} x{c}" for v, c in got_mu))
    want_classes = [
        (complex(-1.0), 3),
        (complex(-1.0 / 3.0, 2.0 * sq2 / 3.0), 2),
        (complex(2.0 / 3.0, sq5 / 3.0), 4),
    ]
    ok = len(spectrum.classes) == 3 and all(
        abs(cls.rep - rep) <= tol and cls.multiplicity == mult
        for cls, (rep, mult) in zip(spectrum.classes, want_classes)
    )
    add("k3_loops: classes {-1 x3, (-1+2sqrt2 i)/3 x2, (2+sqrt5 i)/3 x4}",
        ok,
        "got " + "; ".join(
            f"{c.rep:.6g} x{c.multiplicity}" for c in spectrum.classes
        ))
    add("k3_loops: theorem spectrum matches direct diagonalization",
        spectrum.oracle is not None and spectrum.oracle.matched,
        f"max distance {spectrum.oracle.max_distance:.3g}")

    mp = minimal_polynomial(ops.U)
    want_factors = [
        (1.0, 1.0),
        (1.0, 2.0 / 3.0, 1.0),
        (1.0, -4.0 / 3.0, 1.0),
    ]
    ok = len(mp.factors) == 3 and all(
        f.exponent == 1 and np.allclose(f.coefficients, want, atol=tol)
        for f, want in zip(mp.factors, want_factors)
    )
    add("k3_loops: minimal polynomial (y+1)(y^2+2/3 y+1)(y^2-4/3 y+1)", ok,
        f"got {[f.coefficients for f in mp.factors]}")
    subspaces = root_subspaces(ops.U)
    dims = [s.dimension for s in subspaces]
    add("k3_loops: root subspace dimensions (3, 2, 4) summing to 9",
        dims == [3, 2, 4], f"got {dims}")

    lam_p, _ = spectral_map(-2.0 / 3.0)
    lifted = lift_eigenvector(ops, qvec([1.0, 1.0, 1.0]), lam_p)
    u1 = qvec([
        Quaternion(sq2, 1), Quaternion(-sq2, -1),
        Quaternion(0, 0, 1, sq2), Quaternion(0, 0, -1, -sq2),
        Quaternion(0, 0, -sq2, 1), Quaternion(0, 0, sq2, -1),
        Quaternion(2, sq2), Quaternion(2, sq2), Quaternion(2, sq2),
    ])
    add("k3_loops: lift of (1,1,1) at mu=-2/3 is proportional to the "
        "known eigenvector", not h_linear_independent([lifted, u1]))

    direct_goldens = [
        qvec([QI, QI, Quaternion(), Quaternion(), Quaternion(), Quaternion(),
              Quaternion(-1.0), Quaternion(1.0), Quaternion()]),
        qvec([QJ, QJ, -QI, -QI, Quaternion(1.0), Quaternion(1.0),
              Quaternion(), Quaternion(), Quaternion()]),
        qvec([QI, QI, QJ, QJ, Quaternion(), Quaternion(),
              Quaternion(-1.0), Quaternion(), Quaternion(1.0)]),
    ]
    ok = all(
        _walk_residual(ops, g, complex(-1.0)) <= tol * g.fro_norm()
        for g in direct_goldens
    ) and h_linear_independent(direct_goldens)
    add("k3_loops: three independent eigenvectors at lambda=-1", ok)

    return checks


def cmd_examples(args) -> int:
    tol = 1e-9
    report, lines = _header("examples", tol)
    checks = _golden_suite(tol)
    passed = all(ok for _desc, ok, _detail in checks)
    report["checks"] = [
        {"description": desc, "ok": ok, "detail": detail}
        for desc, ok, detail in checks
    ]
    for desc, ok, detail in checks:
        mark = "ok " if ok else "FAIL"
        suffix = f"  ({detail})" if detail and not ok else ""
        lines.append(f"  {mark} {desc}{suffix}")
    report["passed"] = passed
    lines.append(f"result: {'PASS' if passed else 'FAIL'} "
                 f"({sum(1 for _d, ok, _x in checks if ok)}/{len(checks)})")
    return _emit(report, lines, args.output)


# ---------------------------------------------------------------- generate


def cmd_generate(args) -> int:
    if args.spec in bundled_names():
        if args.seed is None:
            payload = load_bundled(args.spec).to_dict()
        else:
            from .instances import _BUNDLED_SPECS

            payload = random_instance_dict(_BUNDLED_SPECS[args.spec], args.seed)
    else:
        parse_graph_spec(args.spec)  # reject malformed specs first
        if args.seed is None:
            raise ValidationError(
                "family specs need --seed so the weights are reproducible"
            )
        payload = random_instance_dict(args.spec, args.seed)
    text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qszegedy",
        description=(
            "Quaternionic Szegedy walks: spectra, eigenvector lifts, and "
            "determinant identity checks."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"qszegedy {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=None,
                       help="comparison tolerance (default: QWALK_TOL or 1e-8)")
        p.add_argument("--output", default=None,
                       help="also write the structured JSON report here")

    p = sub.add_parser("spectrum", help="full right spectrum of an instance")
    p.add_argument("instance", help="instance file path or bundled name")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against direct diagonalization of psi(U)")
    p.add_argument("--eigenvectors", action="store_true",
                   help="attach lifted and directly extracted eigenvectors")
    p.add_argument("--force", action="store_true",
                   help="report non-unitary instances via the direct path")
    add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="structure and identity battery")
    p.add_argument("instance", nargs="?", default=None,
                   help="instance file path or bundled name")
    p.add_argument("--random", default=None, metavar="SPEC",
                   help="verify random weightings of a graph family "
                        "(K<n>, P<n>, C<n>, star<k>, +loop/+loops)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1,
                   help="number of random weightings")
    p.add_argument("--samples", type=int, default=8,
                   help="sample points on |t| = 1/4 (plus t = 0)")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lift", help="eigenvectors of the walk via lifting")
    p.add_argument("instance", help="instance file path or bundled name")
    p.add_argument("--mu", type=float, default=None,
                   help="base eigenvalue of the doubly weighted matrix")
    p.add_argument("--all", action="store_true",
                   help="lift every base eigenvalue and extract lambda=+-1")
    add_common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("examples", help="run the bundled worked examples")
    p.add_argument("--output", default=None,
                   help="also write the structured JSON report here")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("generate", help="emit an instance file")
    p.add_argument("spec", help="bundled name or graph family spec")
    p.add_argument("--seed", type=int, default=None,
                   help="random weights with this seed (bundled names "
                        "default to their shipped weights)")
    p.add_argument("--output", default=None, help="write here instead of stdout")
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QWalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
