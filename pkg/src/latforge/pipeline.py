"""Multistage hybrid reduction pipelines.

Stages are data: a list of StageSpec values is threaded through the basis,
so the 4-stage template and its 5- and 6-stage extensions differ only in
list construction.  Stage kinds are a single diffusion/fusion run, a
best-of-n sampled run, or a terminating whole-basis reduction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from decimal import Decimal

from .core import Basis, BasisMetrics, metrics, reduction_key
from .errors import BadStageParamsError, StageInfeasibleError
from .ldsf import LdsfConfig, LdsfTrace, ldsf_run, sigma_candidates
from .lll import LllParams, lll_reduce
from .parallel import derive_rng, derive_seed

KIND_LDSF = "ldsf"
KIND_SIGMA = "sigma"
KIND_LLL = "lll"


@dataclass(frozen=True)
class StageSpec:
    """One pipeline stage: kind, block count, sample size, and overrides."""

    kind: str
    alpha: LllParams
    blocks: int = 1
    sample_n: int = 1
    target_bound: float | Decimal | None = None
    inner_iters: int = 1
    outer_iters: int = 1

    def __post_init__(self):
        if self.kind not in (KIND_LDSF, KIND_SIGMA, KIND_LLL):
            raise BadStageParamsError(f"unknown stage kind {self.kind!r}")
        if self.kind != KIND_LLL and self.blocks < 1:
            raise BadStageParamsError("blocks must be >= 1")
        if self.kind == KIND_SIGMA and self.sample_n < 1:
            raise BadStageParamsError("sample_n must be >= 1")


@dataclass(frozen=True)
class StageReport:
    index: int
    kind: str
    blocks: int
    sample_n: int
    before: BasisMetrics
    after: BasisMetrics
    llb: Decimal
    lub: Decimal
    seconds: float


@dataclass(frozen=True)
class PipelineReport:
    stage_reports: tuple[StageReport, ...]
    final_basis: Basis
    seconds: float


def default_four_stage(
    m_blocks: int, n_sample: int, l_blocks: int, alpha: LllParams
) -> list[StageSpec]:
    """Diffuse into m blocks, two sampled passes (m then l < m blocks),
    then a terminating whole-basis reduction."""
    if m_blocks < 1 or n_sample < 1 or l_blocks < 1:
        raise BadStageParamsError("stage parameters must be >= 1")
    if l_blocks >= m_blocks:
        raise BadStageParamsError(
            f"third-stage block count {l_blocks} must be < {m_blocks}"
        )
    return [
        StageSpec(kind=KIND_LDSF, alpha=alpha, blocks=m_blocks),
        StageSpec(kind=KIND_SIGMA, alpha=alpha, blocks=m_blocks, sample_n=n_sample),
        StageSpec(kind=KIND_SIGMA, alpha=alpha, blocks=l_blocks, sample_n=n_sample),
        StageSpec(kind=KIND_LLL, alpha=alpha),
    ]


def _ldsf_cfg(stage: StageSpec, seed: int) -> LdsfConfig:
    return LdsfConfig(
        servers=stage.blocks,
        block_rows=2,
        inner_iters=stage.inner_iters,
        outer_iters=stage.outer_iters,
        alpha=stage.alpha,
        target_bound=stage.target_bound,
        seed=seed,
    )


def _trace_extrema(traces: list[LdsfTrace]) -> tuple[Decimal, Decimal]:
    fused = [r.fused_metrics for t in traces for r in t.rounds]
    return (
        min(f.shortest for f in fused),
        min(f.longest for f in fused),
    )


def run_pipeline(b0: Basis, stages: list[StageSpec], seed: int = 0) -> PipelineReport:
    """Thread the basis through the stage list, reporting per-stage llb
    (best shortest seen) and lub (best longest seen) plus wall time."""
    if not stages:
        raise BadStageParamsError("stage list is empty")
    started = time.perf_counter()
    current = b0
    reports: list[StageReport] = []
    for index, stage in enumerate(stages, start=1):
        if stage.kind != KIND_LLL and stage.blocks > current.m:
            raise StageInfeasibleError(
                f"stage {index} wants {stage.blocks} blocks on rank {current.m}"
            )
        before = metrics(current)
        stage_started = time.perf_counter()
        stage_seed = derive_seed(seed, "stage", index)
        if stage.kind == KIND_LLL:
            current = lll_reduce(current, stage.alpha)
            after = metrics(current)
            llb, lub = after.shortest, after.longest
        elif stage.kind == KIND_LDSF:
            trace = ldsf_run(current, _ldsf_cfg(stage, stage_seed))
            current = trace.final_basis
            after = metrics(current)
            llb, lub = _trace_extrema([trace])
        else:
            candidates = sigma_candidates(
                stage.blocks,
                stage.sample_n,
                current,
                _ldsf_cfg(stage, stage_seed),
                derive_rng(seed, "stage", index, "perms"),
            )
            _, best = min(candidates, key=lambda c: reduction_key(c[1].final_basis))
            current = best.final_basis
            after = metrics(current)
            llb, lub = _trace_extrema([t for _, t in candidates])
        reports.append(
            StageReport(
                index=index,
                kind=stage.kind,
                blocks=stage.blocks if stage.kind != KIND_LLL else 1,
                sample_n=stage.sample_n if stage.kind == KIND_SIGMA else 1,
                before=before,
                after=after,
                llb=llb,
                lub=lub,
                seconds=time.perf_counter() - stage_started,
            )
        )
    return PipelineReport(
        stage_reports=tuple(reports),
        final_basis=current,
        seconds=time.perf_counter() - started,
    )


def stage_to_dict(stage: StageSpec) -> dict:
    out: dict = {"kind": stage.kind, "alpha": str(stage.alpha.alpha)}
    if stage.kind != KIND_LLL:
        out["blocks"] = stage.blocks
        out["inner"] = stage.inner_iters
        out["outer"] = stage.outer_iters
    if stage.kind == KIND_SIGMA:
        out["sample"] = stage.sample_n
    if stage.target_bound is not None:
        out["target"] = str(stage.target_bound)
    return out


def stage_from_dict(data: dict, default_alpha: LllParams) -> StageSpec:
    kind = data.get("kind")
    if not isinstance(kind, str):
        raise BadStageParamsError("stage entry needs a 'kind' string")
    alpha = LllParams(data["alpha"]) if "alpha" in data else default_alpha
    target = data.get("target")
    return StageSpec(
        kind=kind,
        alpha=alpha,
        blocks=int(data.get("blocks", 1)),
        sample_n=int(data.get("sample", 1)),
        target_bound=Decimal(str(target)) if target is not None else None,
        inner_iters=int(data.get("inner", 1)),
        outer_iters=int(data.get("outer", 1)),
    )
