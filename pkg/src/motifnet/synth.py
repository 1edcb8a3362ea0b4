"""Synthetic smart-card corpora with planted station importance."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime, time, timedelta
from typing import Mapping

import numpy as np

from .errors import ConfigurationError
from .ingest import ODRecord

# Trip patterns as (origin_slot, destination_slot) pairs; slot 0 is the
# home station, slots 1.. are sampled destinations.
TEMPLATES: dict[str, tuple[tuple[int, int], ...]] = {
    "single-trip": ((0, 1),),
    "return-pair": ((0, 1), (1, 0)),
    "chain-3": ((0, 1), (1, 2)),
    "chain-4": ((0, 1), (1, 2), (2, 3)),
    "star-3": ((0, 1), (1, 0), (0, 2), (2, 0)),
}

DEFAULT_TEMPLATE_MIX: dict[str, float] = {
    "return-pair": 0.6,
    "single-trip": 0.2,
    "chain-3": 0.1,
    "chain-4": 0.05,
    "star-3": 0.05,
}

SECONDS_PER_DAY = 86400


def template_node_count(name: str) -> int:
    slots = {s for pair in TEMPLATES[name] for s in pair}
    return len(slots)


@dataclass(frozen=True)
class SynthConfig:
    """Planted-truth corpus configuration.

    ``importance`` doubles as the ground-truth table; destination slots are
    sampled proportionally to it (without replacement within a template,
    excluding the home station). Homes are sampled proportionally to
    ``home_weight``. Identical configs generate identical corpora.
    """

    passenger_count: int
    days: int
    seed: int
    importance: Mapping[str, float]
    home_weight: Mapping[str, float]
    template_mix: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_TEMPLATE_MIX)
    )
    start_date: date = date(2016, 9, 5)

    @property
    def station_ids(self) -> list[str]:
        return sorted(self.importance)

    @property
    def station_count(self) -> int:
        return len(self.importance)

    def validate(self) -> None:
        if self.passenger_count < 0 or self.days < 1:
            raise ConfigurationError("passenger_count must be >= 0 and days >= 1")
        if not self.importance:
            raise ConfigurationError("importance table is empty")
        if set(self.importance) != set(self.home_weight):
            raise ConfigurationError("importance and home_weight must cover the same stations")
        if any(v <= 0 for v in self.importance.values()):
            raise ConfigurationError("importance values must be positive")
        if any(v <= 0 for v in self.home_weight.values()):
            raise ConfigurationError("home_weight values must be positive")
        unknown = set(self.template_mix) - set(TEMPLATES)
        if unknown:
            raise ConfigurationError(f"unknown motif templates: {sorted(unknown)}")
        if any(p < 0 for p in self.template_mix.values()):
            raise ConfigurationError("template probabilities must be non-negative")
        total = sum(self.template_mix.values())
        if abs(total - 1.0) > 1e-12:
            raise ConfigurationError(f"template_mix must sum to 1, got {total!r}")
        needed = max(
            (template_node_count(t) for t, p in self.template_mix.items() if p > 0),
            default=1,
        )
        if self.station_count < needed:
            raise ConfigurationError(
                f"need at least {needed} stations for the configured templates, "
                f"got {self.station_count}"
            )


def generate(cfg: SynthConfig) -> tuple[list[ODRecord], dict[str, float]]:
    """Generate one corpus and its planted truth table.

    Per passenger per day: sample a home station by home_weight, a motif
    template from the mix, and destination slots by importance (Gumbel
    top-k, equivalent to successive weighted draws without replacement).
    Trips carry evenly spaced, strictly increasing timestamps within the
    day. Each passenger owns a sub-seed derived from the corpus seed, so
    output is reproducible and independent of generation order.
    """
    cfg.validate()
    stations = cfg.station_ids
    n = len(stations)
    home_p = np.array([cfg.home_weight[s] for s in stations], dtype=float)
    home_p /= home_p.sum()
    log_importance = np.log(np.array([cfg.importance[s] for s in stations], dtype=float))

    template_names = sorted(cfg.template_mix)
    template_p = np.array([cfg.template_mix[t] for t in template_names], dtype=float)
    template_p /= template_p.sum()
    template_trips = [TEMPLATES[t] for t in template_names]
    template_slots = [template_node_count(t) - 1 for t in template_names]

    card_width = max(6, len(str(max(cfg.passenger_count - 1, 0))))
    day_starts = [
        datetime.combine(cfg.start_date + timedelta(days=d), time.min)
        for d in range(cfg.days)
    ]

    records: list[ODRecord] = []
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.passenger_count)
    for passenger, child in enumerate(children):
        rng = np.random.default_rng(child)
        card_id = f"p{passenger:0{card_width}d}"
        homes = rng.choice(n, size=cfg.days, p=home_p)
        picks = rng.choice(len(template_names), size=cfg.days, p=template_p)
        gumbel = rng.gumbel(size=(cfg.days, n))
        for d in range(cfg.days):
            home = int(homes[d])
            trips = template_trips[picks[d]]
            slots_needed = template_slots[picks[d]]
            keys = log_importance + gumbel[d]
            keys[home] = -np.inf
            order = np.argsort(-keys, kind="stable")
            slots = [home] + [int(order[i]) for i in range(slots_needed)]
            step = SECONDS_PER_DAY // (len(trips) + 1)
            for position, (src, dst) in enumerate(trips, start=1):
                records.append(
                    ODRecord(
                        card_id=card_id,
                        depart_time=day_starts[d] + timedelta(seconds=position * step),
                        origin=stations[slots[src]],
                        destination=stations[slots[dst]],
                    )
                )
    return records, dict(cfg.importance)


def make_station_ids(count: int) -> list[str]:
    width = max(2, len(str(max(count - 1, 0))))
    return [f"s{i:0{width}d}" for i in range(count)]


def _parse_dist(spec: str) -> tuple[str, float]:
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        try:
            return kind, float(arg)
        except ValueError:
            raise ConfigurationError(f"bad distribution parameter in {spec!r}") from None
    return spec, 1.0


def planted_importance(station_ids: list[str], spec: str, seed: int) -> dict[str, float]:
    """Importance table from a distribution spec: ``uniform`` or
    ``lognormal:<sigma>``."""
    kind, arg = _parse_dist(spec)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(1,)))
    if kind == "uniform":
        values = np.ones(len(station_ids))
    elif kind == "lognormal":
        values = rng.lognormal(mean=0.0, sigma=arg, size=len(station_ids))
    else:
        raise ConfigurationError(f"unknown importance spec: {spec!r}")
    return {s: float(v) for s, v in zip(station_ids, values)}


def home_weights(
    importance: Mapping[str, float], spec: str, seed: int
) -> dict[str, float]:
    """Home-station weights: ``uniform``, ``inverse-importance`` (weights
    anti-correlated with importance), or ``lognormal:<sigma>``."""
    kind, arg = _parse_dist(spec)
    stations = sorted(importance)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(2,)))
    if kind == "uniform":
        return {s: 1.0 for s in stations}
    if kind == "inverse-importance":
        return {s: 1.0 / importance[s] for s in stations}
    if kind == "lognormal":
        values = rng.lognormal(mean=0.0, sigma=arg, size=len(stations))
        return {s: float(v) for s, v in zip(stations, values)}
    raise ConfigurationError(f"unknown home-weight spec: {spec!r}")
