from .chaos_core import (
    TRANSIENT,
    EcmParams,
    MapKind,
    Orbit,
    SeedMapParams,
    State2D,
    ecm_orbit,
    ecm_step,
    iter_ecm,
    seed_from_key,
    seed_map_orbit,
    seed_map_step,
)

__all__ = [
    "TRANSIENT",
    "EcmParams",
    "MapKind",
    "Orbit",
    "SeedMapParams",
    "State2D",
    "ecm_orbit",
    "ecm_step",
    "iter_ecm",
    "seed_from_key",
    "seed_map_orbit",
    "seed_map_step",
]
