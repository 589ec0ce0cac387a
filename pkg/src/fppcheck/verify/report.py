from __future__ import annotations

import json
import logging
import time
import warnings
from dataclasses import dataclass, field
from typing import Any

from ..arith import ModularEmbedding
from ..corpus import EquationCorpus
from .betti import betti_step
from .calibrate import calibrate_entry
from .hilbert import HilbertResult, hilbert_function
from .intersection import ASSUMPTIONS, FitError, InconsistentError, intersection_numbers
from .invariance import invariance_certificate
from .resolution import Resolution
from .smooth import FIXED_POINTS, NEGATIVE_CONTROL, check_point

log = logging.getLogger(__name__)

PASS, FAIL, INCONCLUSIVE, INFO = "pass", "fail", "inconclusive", "info"

SQUEEZE_NOTE = (
    "Ranks mod p never exceed ranks over Q(sqrt(-7)), so each mod-p quotient "
    "dimension is an upper bound for the characteristic-0 one. The checks "
    "require the ideal pieces to be as large as the resolution forces and the "
    "quotients as small as the formula forces; equality mod p therefore pins "
    "the characteristic-0 values."
)

NOT_REPRODUCED = (
    "chi(O(2K)) = 10 and Hom(O(K), O(D)) = 0 need the canonical module: not reproduced",
    "resolution terms beyond step 4 (540, 189, 28): not computed",
)


@dataclass
class VerifyConfig:
    max_degree: int = 5
    max_betti: int = 3
    deep: bool = False
    workers: int = 1
    calibrate: bool = False

    def __post_init__(self) -> None:
        if self.max_degree < 3:
            raise ValueError("max_degree must be at least 3")
        if self.max_betti < 1:
            raise ValueError("max_betti must be at least 1")

    @property
    def hilbert_degrees(self) -> range:
        return range(max(self.max_degree, 6 if self.deep else 0) + 1)

    @property
    def betti_steps(self) -> range:
        return range(1, max(self.max_betti, 4 if self.deep else 0) + 1)


@dataclass
class CheckRecord:
    name: str
    inputs: dict[str, Any]
    computed: Any
    expected: Any
    status: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "computed": self.computed,
            "expected": self.expected,
            "status": self.status,
        }


@dataclass
class VerificationReport:
    embedding: ModularEmbedding
    corpus_fingerprint: str
    checks: list[CheckRecord] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    verified_degrees: list[int] = field(default_factory=list)
    hilbert: list[HilbertResult] = field(default_factory=list)
    betti: list = field(default_factory=list)
    smoothness: list = field(default_factory=list)
    invariance: Any = None
    intersection: Any = None

    @property
    def verdict(self) -> str:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def check(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, include_embedding: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "corpus_fingerprint": self.corpus_fingerprint,
            "checks": [c.to_dict() for c in self.checks],
            "assumptions": list(self.assumptions),
            "notes": list(self.notes),
            "verified_degrees": list(self.verified_degrees),
            "verdict": self.verdict,
        }
        if include_embedding:
            d["embedding"] = {"p": self.embedding.p, "r": self.embedding.r}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [
            f"embedding: p={self.embedding.p} r={self.embedding.r}",
            f"corpus: {self.corpus_fingerprint}",
            "",
        ]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            lines.append(f"[{c.status.upper():>12}] {c.name:<{width}}  computed={_short(c.computed)}  expected={_short(c.expected)}")
        lines.append("")
        lines.append(f"verified degrees: {self.verified_degrees} (higher degrees follow only by polynomial extrapolation)")
        lines.append("assumptions:")
        lines.extend(f"  - {a}" for a in self.assumptions)
        lines.append("notes:")
        lines.extend(f"  - {n}" for n in self.notes)
        lines.append("")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def _short(x: Any) -> str:
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_short(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_short(v) for v in x) + "]"
    return str(x)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def run_all(c: EquationCorpus, e: ModularEmbedding, config: VerifyConfig | None = None) -> VerificationReport:
    """Run every enabled check and collect the outcomes; nothing here raises."""
    config = config or VerifyConfig()
    if config.deep:
        warnings.warn("deep mode computes degree 6 and Betti step 4; this takes minutes", RuntimeWarning, stacklevel=2)
    report = VerificationReport(e, c.fingerprint())
    report.assumptions.extend(ASSUMPTIONS)
    report.notes.append(SQUEEZE_NOTE)
    report.notes.extend(NOT_REPRODUCED)

    if c.flagged_entries():
        flagged = {
            f"eq {ent.index}": [f"{m}: {ent.poly.terms[m]}" for m in sorted(ent.flags, reverse=True)]
            for ent in c.flagged_entries()
        }
        report.checks.append(CheckRecord("ambiguity flags", {}, flagged, None, INFO))

    t0 = time.perf_counter()
    inv = invariance_certificate(c)
    report.invariance = inv
    report.checks.append(
        CheckRecord(
            "invariance",
            {"equations": len(c)},
            {
                "weight_homogeneous": inv.weight_homogeneous,
                "g3_images_outside_span": list(inv.g3_outside_span),
                "order_g3": inv.g3_order,
                "order_g7": inv.g7_order,
                "conjugation_k": inv.conjugation_k,
                "first_violation": inv.first_violation,
            },
            {"weight_homogeneous": True, "g3_images_outside_span": [], "order_g3": 3, "order_g7": 7, "conjugation_k": "2 or 4"},
            _status(inv.passed),
        )
    )
    log.info("invariance: %s (%.1fs)", inv.passed, time.perf_counter() - t0)

    res = Resolution(c, e, workers=config.workers)
    for d in config.hilbert_degrees:
        t0 = time.perf_counter()
        try:
            h = hilbert_function(c, d, e, res)
        except Exception as exc:  # recorded, never raised
            report.checks.append(CheckRecord(f"hilbert d={d}", {"degree": d}, f"error: {exc}", None, FAIL))
            continue
        report.hilbert.append(h)
        if h.passed:
            report.verified_degrees.append(d)
        report.checks.append(
            CheckRecord(
                f"hilbert d={d}",
                {"degree": d, "ambient": h.ambient},
                {"ideal_dim": h.ideal_dim, "h": h.quotient},
                {"h": h.expected},
                _status(h.passed),
            )
        )
        log.info("h(%d) = %d (%.1fs)", d, h.quotient, time.perf_counter() - t0)

    for i in config.betti_steps:
        t0 = time.perf_counter()
        try:
            b = betti_step(c, i, e, res)
        except Exception as exc:
            report.checks.append(CheckRecord(f"betti step {i}", {"step": i}, f"error: {exc}", None, FAIL))
            break
        report.betti.append(b)
        report.checks.append(
            CheckRecord(
                f"betti step {i}",
                {"step": i, "degree": b.degree},
                {"beta": b.value, "image_rank": b.image_rank, "previous_kernel_dim": b.previous_kernel_dim},
                {"beta": b.expected, "image_rank": b.previous_kernel_dim},
                _status(b.passed),
            )
        )
        log.info("beta_{%d,%d} = %d (%.1fs)", i, b.degree, b.value, time.perf_counter() - t0)

    for point in FIXED_POINTS:
        s = check_point(c, point)
        report.smoothness.append(s)
        report.checks.append(
            CheckRecord(
                f"smooth at {list(s.point)}",
                {"point": list(s.point)},
                {
                    "nonvanishing": list(s.nonvanishing),
                    "jacobian_rank": s.jacobian_rank,
                    "witnesses": list(s.witnesses),
                    "status": s.status,
                },
                {"nonvanishing": [], "jacobian_rank": 7},
                _status(s.passed),
            )
        )
    ctrl = check_point(c, NEGATIVE_CONTROL)
    report.checks.append(
        CheckRecord(
            "negative control off variety",
            {"point": list(ctrl.point)},
            {"nonvanishing": list(ctrl.nonvanishing)},
            {"on_variety": False},
            _status(not ctrl.on_variety),
        )
    )

    try:
        nums = intersection_numbers(h for h in report.hilbert)
    except (FitError, InconsistentError) as exc:
        report.checks.append(CheckRecord("intersection numbers", {}, f"error: {exc}", None, FAIL))
    else:
        report.intersection = nums
        ok = nums.D2 == 36 and nums.DK == 18 and nums.chi == 1
        report.checks.append(
            CheckRecord(
                "intersection numbers",
                {"degrees": list(nums.degrees)},
                {"D^2": str(nums.D2), "D.K": str(nums.DK), "chi": str(nums.chi)},
                {"D^2": "36", "D.K": "18", "chi": "1"},
                _status(ok),
            )
        )
        report.checks.append(
            CheckRecord(
                "noether",
                {"assumes": ["D = 2K", "b1 = 0"]},
                {"K^2": str(nums.K2), "e": str(nums.euler), "b2": str(nums.b2), "12chi == K^2 + e": nums.noether_holds},
                {"K^2": "9", "e": "3", "b2": "1", "12chi == K^2 + e": True},
                _status(nums.fake_projective_plane),
            )
        )

    if config.calibrate:
        for ent in c.flagged_entries():
            if not ent.provenance.explicit:
                continue
            for cal in calibrate_entry(c, ent.index, e):
                if not cal.current_passes:
                    status = FAIL
                elif cal.resolved:
                    status = PASS
                else:
                    status = INCONCLUSIVE
                report.checks.append(
                    CheckRecord(
                        f"calibration eq {cal.entry} {cal.term}",
                        {"candidates": [str(x) for x in cal.candidates], "max_degree": 4},
                        {"passing": [str(x) for x in cal.passing], "status": cal.status},
                        {"current": str(cal.current)},
                        status,
                    )
                )
    return report
