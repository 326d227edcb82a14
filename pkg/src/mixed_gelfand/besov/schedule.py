"""Budget schedules m_μ and per-layer Gelfand bounds."""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from ..errors import DivergentTailError, InputError
from .layers import block_dimension, layer_multiindex_count

logger = logging.getLogger(__name__)

ENDPOINT_TOL = 1e-12


class ScheduleVariant(str, Enum):
    SHARP = "sharp"
    GENERAL = "general"
    ENDPOINT = "endpoint"


class BlockVariant(str, Enum):
    EST1 = "est1"
    EST2 = "est2"
    IMPR = "impr"
    OPNORM = "opnorm"


@dataclass(frozen=True)
class BesovParams:
    """Embedding s^r_{p0,q0}b -> s^0_{p1,q1}b on [0,1]^d"""
    d: int
    r: float
    p0: float
    q0: float
    p1: float
    q1: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise InputError(f"d must be a positive integer, got {self.d}")
        if min(self.p0, self.q0, self.p1, self.q1) <= 0 or self.r <= 0:
            raise InputError("exponents and r must be positive")

    @property
    def rho(self) -> float:
        return min(1.0, self.p1, self.q1)

    @property
    def gap_q(self) -> float:
        return 1.0 / self.q0 - 1.0 / self.q1

    @property
    def gap_p(self) -> float:
        return 1.0 / self.p0 - 1.0 / self.p1

    @property
    def decay(self) -> float:
        """Exponent c of the layer operator norm 2^{-cμ}"""
        return self.r - self.gap_p

    @property
    def at_endpoint(self) -> bool:
        return abs(self.r - self.gap_q) <= ENDPOINT_TOL

    def classify(self) -> ScheduleVariant:
        if self.p0 == 2 and self.p1 == 2:
            return ScheduleVariant.ENDPOINT if self.at_endpoint else ScheduleVariant.SHARP
        return ScheduleVariant.GENERAL

    def check(self, variant: ScheduleVariant) -> None:
        """Raise InputError unless the exponents are admissible for ``variant``"""
        variant = ScheduleVariant(variant)
        if variant in (ScheduleVariant.SHARP, ScheduleVariant.ENDPOINT):
            ok = self.p0 == 2 and self.p1 == 2 and self.q0 <= 1 and self.q0 < self.q1 <= 2
            if variant == ScheduleVariant.SHARP:
                ok = ok and self.r < self.gap_q and not self.at_endpoint
            else:
                ok = ok and self.at_endpoint
        else:
            ok = (
                self.q0 <= self.p0 <= 1
                and self.p0 <= self.p1 <= self.q1 <= 2
                and self.gap_p < self.r
                and (self.r < self.gap_q or self.at_endpoint)
            )
        if not ok:
            raise InputError(f"parameters {self} are not admissible for the {variant.value} variant")


def default_kappa(params: BesovParams) -> float:
    """Midpoint of (r/(1/q0-1/q1), 1)"""
    return (params.r / params.gap_q + 1.0) / 2.0


def default_beta(params: BesovParams) -> float:
    """Midpoint of (1, r/(1/p0-1/p1)), or 2 when p0 = p1"""
    if params.gap_p <= 0:
        return 2.0
    return (1.0 + params.r / params.gap_p) / 2.0


@dataclass(frozen=True)
class BudgetSchedule:
    J: int
    L: int
    M: int
    kappa: float
    beta: float
    variant: ScheduleVariant
    per_layer: List[Tuple[int, int, int]] = field(repr=False)
    total: int

    def budget(self, mu: int) -> int:
        return self.per_layer[mu][1] if mu <= self.M else 0


def layer_split(J: int, d: int) -> int:
    """L = J + round((d-1)·log2 J)"""
    return J + round((d - 1) * math.log2(J))


def budget_schedule(
    params: BesovParams,
    J: int,
    kappa: Optional[float] = None,
    beta: Optional[float] = None,
    variant: Optional[ScheduleVariant] = None,
) -> BudgetSchedule:
    """Per-layer measurement budgets for level J.

    μ <= J: 2·D_μ; J < μ <= L: ⌊2^μ·2^{(L-μ)κ}⌋, or 2^J·μ^{d-1} at the
    endpoint r = 1/q0-1/q1; general variant only: L < μ <= M gets
    ⌊2^μ·2^{(L-μ)β}⌋ with M = ⌈Lβ/(β-1)⌉. Zero beyond M.
    """
    variant = ScheduleVariant(variant or params.classify())
    params.check(variant)
    if int(J) != J or J < 1:
        raise InputError(f"J must be a positive integer, got {J}")
    d = params.d
    L = layer_split(J, d)
    kappa = default_kappa(params) if kappa is None else kappa
    beta = default_beta(params) if beta is None else beta
    endpoint_budget = params.at_endpoint
    if not endpoint_budget and not (0 < kappa < 1 and params.r < kappa * params.gap_q):
        raise InputError(f"kappa={kappa} needs r < κ(1/q0-1/q1) < 1/q0-1/q1")
    if variant == ScheduleVariant.GENERAL:
        if not (beta > 1 and params.r > beta * params.gap_p):
            raise InputError(f"beta={beta} needs β > 1 and r > β(1/p0-1/p1)")
        M = math.ceil(L * beta / (beta - 1))
    else:
        M = L

    per_layer = []
    for mu in range(M + 1):
        dim = block_dimension(mu, d)
        if mu <= J:
            m_mu = 2 * dim
        elif mu <= L:
            if endpoint_budget:
                m_mu = (1 << J) * mu ** (d - 1)
            else:
                m_mu = math.floor(2.0 ** (mu + (L - mu) * kappa))
        else:
            m_mu = math.floor(2.0 ** (mu + (L - mu) * beta))
        per_layer.append((mu, m_mu, dim))
    total = sum(m for _, m, _ in per_layer)
    logger.debug(f"[schedule J={J} d={d} {variant.value}] L={L} M={M} total={total}")
    return BudgetSchedule(J=J, L=L, M=M, kappa=kappa, beta=beta, variant=variant,
                          per_layer=per_layer, total=total)


def opnorm(mu: int, params: BesovParams) -> float:
    """Norm of the μ-th layer identity, 2^{-(r-1/p0+1/p1)μ}"""
    return 2.0 ** (-params.decay * mu)


def _log_ratio(size: float, m: int) -> float:
    return max(0.0, math.log(math.e * size / m))


def block_bound(mu: int, m_mu: int, params: BesovParams, variant: BlockVariant) -> float:
    """Upper bound for c_{m_μ+1} of the μ-th layer identity, constants set to 1"""
    variant = BlockVariant(variant)
    if m_mu < 0:
        raise InputError(f"m_mu must be >= 0, got {m_mu}")
    dim = block_dimension(mu, params.d)
    norm = opnorm(mu, params)
    if m_mu >= dim:
        return 0.0
    if m_mu == 0 or variant == BlockVariant.OPNORM:
        return norm
    if variant == BlockVariant.EST1:
        value = 2.0 ** (-params.r * mu) * 2.0 ** (mu * params.gap_q) * (
            _log_ratio(dim, m_mu) / m_mu
        ) ** params.gap_q
    elif variant == BlockVariant.EST2:
        value = norm * (_log_ratio(dim, m_mu) / m_mu) ** params.gap_p
    else:
        if params.p0 != params.p1:
            raise InputError("impr needs p0 = p1")
        blocks = layer_multiindex_count(mu, params.d)
        inner = 2.0 ** mu
        value = 2.0 ** (-params.r * mu) * min(
            1.0, (_log_ratio(blocks, m_mu) + inner) / m_mu
        ) ** params.gap_q
    return min(norm, value)


def default_block_variant(schedule: BudgetSchedule, mu: int) -> BlockVariant:
    if schedule.variant != ScheduleVariant.GENERAL:
        return BlockVariant.IMPR
    return BlockVariant.EST1 if mu <= schedule.L else BlockVariant.EST2


def aggregate_bound(
    schedule: BudgetSchedule,
    params: BesovParams,
    variant: Optional[BlockVariant] = None,
) -> float:
    """(Σ_μ block_bound^ρ + Σ_{μ>M} opnorm^ρ)^{1/ρ}; the tail is summed in closed form"""
    rho = params.rho
    c = params.decay
    if c <= 0:
        raise DivergentTailError(f"layer norms 2^(-{c:g}μ) are not summable")
    parts = [
        block_bound(mu, m_mu, params, variant or default_block_variant(schedule, mu)) ** rho
        for mu, m_mu, _ in schedule.per_layer
    ]
    ratio = 2.0 ** (-c * rho)
    tail = 2.0 ** (-c * (schedule.M + 1) * rho) / (1.0 - ratio)
    return math.fsum(parts + [tail]) ** (1.0 / rho)
