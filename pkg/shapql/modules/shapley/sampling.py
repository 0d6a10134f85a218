"""
Permutation sampling with additive and multiplicative guarantees.

Sample i draws its permutation from ``SeedSequence(seed, spawn_key=(i,))``,
so an estimate depends only on (seed, N) and never on how samples are split
across threads.
"""

import logging
import math
from fractions import Fraction
from typing import Any

import numpy as np

from shapql.core.concurrency import chunk_ranges, parallel_map, resolve_threads
from shapql.core.config import settings
from shapql.core.enums import MethodTag
from shapql.core.exceptions import SizeLimitError, ValidationError
from shapql.core.validators import validate_open_unit
from shapql.modules.games.models import CooperativeGame, mask_of
from shapql.modules.shapley.schemas import Estimate
from shapql.modules.supports.schemas import SupportSet
from shapql.modules.supports.service import support_size_bound

logger = logging.getLogger(__name__)


def hoeffding_samples(eps: Fraction, delta: Fraction) -> int:
    """N = ceil(ln(2/δ) / (2ε²)), the two-sided Hoeffding sample size."""
    return math.ceil(math.log(2 / float(delta)) / (2 * float(eps) ** 2))


def _parameters(eps: Any, delta: Any) -> tuple[Fraction, Fraction]:
    try:
        return validate_open_unit(eps, "eps"), validate_open_unit(delta, "delta")
    except ValueError as exc:
        raise ValidationError(str(exc), field="eps/delta") from exc


def sample_permutation(seed: int, index: int, n: int) -> list[int]:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    return rng.permutation(n).tolist()


def _sampled_hits(
    game: CooperativeGame, index: int, samples: int, seed: int, threads: int | None
) -> int:
    bit = 1 << index
    workers = resolve_threads(threads)

    def run(chunk: range) -> int:
        hits = 0
        for sample in chunk:
            order = sample_permutation(seed, sample, game.n)
            prefix = mask_of(order[: order.index(index)])
            hits += game.score(prefix | bit) - game.score(prefix)
        return hits

    return sum(parallel_map(run, chunk_ranges(samples, workers), workers))


def sample_additive(
    game: CooperativeGame,
    player: Any,
    eps: Any,
    delta: Any,
    seed: int,
    *,
    threads: int | None = None,
    limit: int | None = None,
) -> Estimate:
    epsilon, confidence = _parameters(eps, delta)
    index = game.index_of(player)
    samples = hoeffding_samples(epsilon, confidence)
    bound = settings.SAMPLE_LIMIT if limit is None else limit
    if samples > bound:
        raise SizeLimitError(
            f"{samples} permutations exceed the sample limit of {bound}",
            limit=bound,
            actual=samples,
        )
    hits = _sampled_hits(game, index, samples, seed, threads)

    logger.debug(f"Sampled {samples} permutations for {player} (seed={seed})")
    return Estimate(
        player=player,
        value=Fraction(hits, samples),
        samples=samples,
        seed=seed,
        method=MethodTag.SAMPLE_ADDITIVE,
        epsilon=epsilon,
        delta=confidence,
        effective_epsilon=epsilon,
    )


def sample_multiplicative(
    game: CooperativeGame,
    player: Any,
    eps: Any,
    delta: Any,
    support_bound: int | None,
    seed: int,
    *,
    supports: SupportSet | None = None,
    threads: int | None = None,
    limit: int | None = None,
) -> Estimate:
    """Exact 0 for irrelevant players, otherwise additive sampling at ε·m^-k."""
    epsilon, confidence = _parameters(eps, delta)
    if supports is None:
        raise ValidationError(
            "Multiplicative sampling needs the minimal supports", field="supports"
        )
    bound = support_size_bound(supports) if support_bound is None else support_bound
    game.index_of(player)

    if not supports.contains_player(player) or supports.is_trivial():
        return Estimate(
            player=player,
            value=Fraction(0),
            samples=0,
            seed=seed,
            method=MethodTag.SAMPLE_MULTIPLICATIVE,
            epsilon=epsilon,
            delta=confidence,
            effective_epsilon=epsilon,
        )

    effective = epsilon / Fraction(game.n) ** bound
    logger.info(
        f"Multiplicative run for {player}: eps {epsilon} tightened to {effective}"
    )
    additive = sample_additive(
        game, player, effective, confidence, seed, threads=threads, limit=limit
    )
    return additive.model_copy(
        update={
            "method": MethodTag.SAMPLE_MULTIPLICATIVE,
            "epsilon": epsilon,
            "effective_epsilon": effective,
        }
    )
