"""Handler for the generate and verify-reduction commands."""

from pathlib import Path

from matching_common import OracleConfig, ReductionConfig, setup_logging
from matching_common.infrastructure import TextCodec
from pydantic import BaseModel, Field

from domain import Instance
from infrastructure import CliqueCodec, DimacsCodec, MetadataCodec
from reductions import (
    ReductionKind,
    ReductionOutput,
    VerificationReport,
    reduce_clique_to_bsm,
    reduce_clique_to_max_smt,
    reduce_clique_to_min_smt,
    reduce_clique_to_sesm,
    reduce_sat_to_bsm,
    reduce_sat_to_sesm,
    verify_reduction,
)

logger = setup_logging()

CLIQUE_REDUCTIONS = {
    ReductionKind.CLIQUE_SESM: reduce_clique_to_sesm,
    ReductionKind.CLIQUE_BSM: reduce_clique_to_bsm,
    ReductionKind.CLIQUE_MAX_SMT: reduce_clique_to_max_smt,
    ReductionKind.CLIQUE_MIN_SMT: reduce_clique_to_min_smt,
}
SAT_REDUCTIONS = {
    ReductionKind.SAT_SESM: reduce_sat_to_sesm,
    ReductionKind.SAT_BSM: reduce_sat_to_bsm,
}


class ReductionRequest(BaseModel, frozen=True):
    """A parsed generate or verify-reduction command."""

    kind: ReductionKind
    input_text: str
    relaxed: bool = True
    block_size: int = Field(default=1, ge=1)
    sparsity: int | None = Field(default=None, ge=1)
    spacer_scale: int = Field(default=1, ge=1)


class GeneratedFiles(BaseModel, frozen=True):
    """Paths written by a generate command."""

    instance: Path | None
    metadata: Path


class ReductionHandler:
    """Builds hardness instances from clique graphs or CNF formulas."""

    def __init__(
        self,
        instance_codec: TextCodec[Instance],
        metadata_codec: MetadataCodec,
        reduction_config: ReductionConfig,
        oracle_config: OracleConfig,
    ):
        self._instance_codec = instance_codec
        self._metadata_codec = metadata_codec
        self._reduction_config = reduction_config
        self._oracle_config = oracle_config

    def build(self, request: ReductionRequest) -> ReductionOutput:
        """
        Parses the source document and runs the requested reduction.

        Raises:
            InstanceValidationError: If the graph or formula is malformed.
            ReductionInputError: If strict-mode preconditions fail.
            ReductionParameterError: If a pool size comes out negative.
            GuardExceededError: If the predicted agent count exceeds the guard.
        """
        logger.info(
            "Processing reduction request",
            extra={"kind": request.kind, "relaxed": request.relaxed},
        )
        if request.kind.is_clique:
            graph = CliqueCodec().parse(request.input_text)
            out = CLIQUE_REDUCTIONS[request.kind](
                graph, self._reduction_config, request.relaxed
            )
        else:
            formula = DimacsCodec(request.block_size, request.sparsity).parse(
                request.input_text
            )
            out = SAT_REDUCTIONS[request.kind](
                formula,
                request.spacer_scale,
                self._reduction_config,
                request.relaxed,
            )
        logger.info(
            "Reduction request processed",
            extra={
                "kind": request.kind,
                "agents": out.predicted.agents,
                "target": out.predicted.target,
            },
        )
        return out

    def generate(self, request: ReductionRequest, prefix: Path) -> GeneratedFiles:
        """
        Writes `<prefix>.smti` and `<prefix>.meta`.

        No instance file is written when a formula block is unsatisfiable;
        the metadata then names the block.
        """
        out = self.build(request)
        instance_path = None
        if out.instance is not None:
            instance_path = prefix.with_name(prefix.name + ".smti")
            instance_path.write_text(
                self._instance_codec.render(out.instance), encoding="utf-8"
            )
        metadata_path = prefix.with_name(prefix.name + ".meta")
        metadata_path.write_text(
            self._metadata_codec.render(out.metadata), encoding="utf-8"
        )
        logger.info(
            "Reduction files written",
            extra={"instance": str(instance_path), "metadata": str(metadata_path)},
        )
        return GeneratedFiles(instance=instance_path, metadata=metadata_path)

    def verify(self, request: ReductionRequest) -> VerificationReport:
        """Builds the reduction and runs its structural checks."""
        report = verify_reduction(self.build(request), self._oracle_config)
        if not report.passed:
            failed = [c.name for c in report.checks if c.status == "fail"]
            logger.warning("Reduction checks failed", extra={"checks": failed})
        return report
