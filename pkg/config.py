"""
Runtime configuration for facenum.

Every knob can be overridden from the environment; the dict below is read
once at import time.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got {raw!r}")


FACENUM_CONFIG = {
    'default_field': os.getenv("FACENUM_FIELD", "q").lower(),  # q, 2, 3 or p:<prime>
    'mu_vertex_cap': _env_int("FACENUM_MU_CAP", 22),  # sigma/mu enumerate 2^n induced subcomplexes
    'hochster_vertex_cap': _env_int("FACENUM_HOCHSTER_CAP", 22),  # Hochster sums enumerate 2^n subsets
    'face_cap': _env_int("FACENUM_FACE_CAP", 100_000),  # link homology is computed per face
    'probe_prime': _env_int("FACENUM_PROBE_PRIME", 32003),  # stands in for Q in ring probes
    'lsop_min_field_size': _env_int("FACENUM_LSOP_MIN_FIELD", 32003),  # smaller fields are extended
    'lsop_max_attempts': _env_int("FACENUM_LSOP_ATTEMPTS", 8),  # redraws before giving up
    'lefschetz_retries': 3,  # fresh draws after a rank-deficient WLP/SLP probe
    'link_probe_vertex_cap': _env_int("FACENUM_LINK_PROBE_CAP", 16),  # largest vertex link probed in audits
    'ring_vertex_cap': _env_int("FACENUM_RING_CAP", 10),  # whole-complex face-ring checks in audits
    'ubt_gate_field': "2",  # field for the even-dimensional UBT Betti gate
    'workers': max(1, _env_int("FACENUM_WORKERS", 1)),  # thread pool width
    'default_seed': _env_int("FACENUM_SEED", 0),
}


@dataclass(frozen=True)
class Caps:
    """Snapshot of the resource caps passed to capped operations."""
    mu_vertex_cap: int = FACENUM_CONFIG['mu_vertex_cap']
    hochster_vertex_cap: int = FACENUM_CONFIG['hochster_vertex_cap']
    face_cap: int = FACENUM_CONFIG['face_cap']
    link_probe_vertex_cap: int = FACENUM_CONFIG['link_probe_vertex_cap']
    ring_vertex_cap: int = FACENUM_CONFIG['ring_vertex_cap']

    @classmethod
    def from_config(cls, mu_vertex_cap: Optional[int] = None, **overrides) -> "Caps":
        values = {
            'mu_vertex_cap': FACENUM_CONFIG['mu_vertex_cap'],
            'hochster_vertex_cap': FACENUM_CONFIG['hochster_vertex_cap'],
            'face_cap': FACENUM_CONFIG['face_cap'],
            'link_probe_vertex_cap': FACENUM_CONFIG['link_probe_vertex_cap'],
            'ring_vertex_cap': FACENUM_CONFIG['ring_vertex_cap'],
        }
        if mu_vertex_cap is not None:
            values['mu_vertex_cap'] = mu_vertex_cap
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def workers() -> int:
    return FACENUM_CONFIG['workers']
