"""Batch harness: generate hosts, build and verify every biclique, compare
tiny hosts with the exhaustive oracle, and run the Kempe construction on
hosts small enough to colour exactly."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import replace
from math import ceil
from typing import Any, Iterable

from .builder import build_biclique_immersion
from .errors import InternalAssertion
from .generators import DEFAULT_P, MODELS, GeneratorSpec, generate
from .graph import edge_critical_reduce, is_edge_critical
from .kempe import EXACT_MAX_VERTICES, chromatic_number_exact, kempe_immersion
from .verify import (
    ORACLE_MAX_VERTICES,
    ClaimRecorder,
    biclique_pattern,
    exhaustive_immersion_search,
    verify_certificate,
)

# the Kempe step re-colours exactly; keep the batch cheap
SUITE_KEMPE_MAX_VERTICES = 16


def _model_summary() -> dict[str, Any]:
    return {
        "hosts": 0,
        "certificates": 0,
        "valid": 0,
        "failures": [],
        "oracle_checks": 0,
        "kempe_runs": 0,
    }


def run_suite(
    nmax: int,
    seeds: int,
    *,
    models: Iterable[str] = MODELS,
    inject_corrupt: bool = False,
) -> dict[str, Any]:
    """Run every model for ``n = 1..nmax`` and seeds ``0..seeds-1``.

    Returns a JSON-ready summary; ``summary["ok"]`` is false on any invalid
    certificate, internal assertion, oracle disagreement or Kempe failure.
    ``inject_corrupt`` drops one path from the first certificate built, to
    exercise the failure path.
    """
    started = time.perf_counter()
    claims = ClaimRecorder()
    out: dict[str, Any] = {"nmax": nmax, "seeds": seeds, "models": {}}
    corrupt_pending = inject_corrupt
    for model in models:
        ms = _model_summary()
        out["models"][model] = ms
        for n in range(1, nmax + 1):
            for seed in range(seeds):
                spec = GeneratorSpec(model, n, DEFAULT_P[model], seed)
                g = generate(spec)
                ms["hosts"] += 1
                tag = {"model": model, "n": n, "seed": seed}
                if not is_edge_critical(edge_critical_reduce(g)):
                    ms["failures"].append({**tag, "kind": "reduce-not-critical"})
                for ell in range(1, ceil(g.n / 2)):
                    ms["certificates"] += 1
                    try:
                        cert = build_biclique_immersion(g, ell, claims)
                    except InternalAssertion as exc:
                        ms["failures"].append({**tag, "ell": ell, "kind": "internal-assertion", "detail": str(exc)})
                        continue
                    if corrupt_pending:
                        cert = replace(cert, paths=cert.paths[:-1])
                        corrupt_pending = False
                    report = verify_certificate(g, cert)
                    if report.valid:
                        ms["valid"] += 1
                    else:
                        ms["failures"].append({**tag, "ell": ell, "kind": "invalid", "rules": sorted(report.rules())})
                    if g.n <= ORACLE_MAX_VERTICES:
                        ms["oracle_checks"] += 1
                        witness = exhaustive_immersion_search(g, biclique_pattern(g.n, ell))
                        if witness is None or not verify_certificate(g, witness).valid:
                            ms["failures"].append({**tag, "ell": ell, "kind": "oracle-disagrees"})
                if g.n <= min(SUITE_KEMPE_MAX_VERTICES, EXACT_MAX_VERTICES):
                    chi, coloring = chromatic_number_exact(g)
                    if chi >= 3:
                        ms["kempe_runs"] += 1
                        try:
                            kc = kempe_immersion(g, coloring)
                            if not verify_certificate(g, kc).valid:
                                ms["failures"].append({**tag, "kind": "kempe-invalid"})
                        except InternalAssertion as exc:
                            ms["failures"].append({**tag, "kind": "kempe-internal-assertion", "detail": str(exc)})
    out["claims"] = {
        "evaluated": dict(sorted(claims.evaluated.items())),
        "violated": dict(sorted(claims.violated.items())),
    }
    out["ok"] = all(not ms["failures"] for ms in out["models"].values()) and not claims.violated
    out["elapsed_seconds"] = round(time.perf_counter() - started, 3)
    return out


def comparison_form(summary: dict[str, Any]) -> dict[str, Any]:
    """The summary without wall-clock fields, for reproducibility checks."""
    return {k: v for k, v in summary.items() if k != "elapsed_seconds"}


def failure_kinds(summary: dict[str, Any]) -> Counter:
    return Counter(f["kind"] for ms in summary["models"].values() for f in ms["failures"])
