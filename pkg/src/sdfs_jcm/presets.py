"""Built-in run configurations for the five figure families.

Families 1, 2 and 4 share the state alpha0 = 3, r = 1, phi = 0 on
resonance and sweep m over 0, 1, 2 for the a/b/c variants (atomic
inversion, field entropy and phase distribution respectively). Family 3
uses the weaker displacement alpha0 = 0.5 for the photon-number
distribution. Family 5 produces Husimi Q snapshots of the m = 1 state at
scaled times 0, T_R/2 and T_R, where T_R is the revival-time estimate
for alpha0 = 3, r = 1.
"""

from __future__ import annotations

from .config import RunConfig
from .observables import revival_time
from .sdfs import SdfsParams

_STRONG = dict(r=1.0, phi=0.0)
REVIVAL_T = revival_time(SdfsParams(alpha0=3.0, r=1.0))

_FAMILY_OBSERVABLE = {
    "fig1": ("inversion",),
    "fig2": ("entropy",),
    "fig3": ("photon_dist",),
    "fig4": ("phase_dist",),
    "fig5": ("qfunc",),
}
_VARIANT_M = {"a": 0, "b": 1, "c": 2}
_FIG5_TIME = {"a": 0.0, "b": 0.5 * REVIVAL_T, "c": REVIVAL_T}

PRESET_NAMES = tuple(
    f"{family}{variant}" for family in sorted(_FAMILY_OBSERVABLE) for variant in "abc"
)


def figure_preset(name: str) -> RunConfig:
    """RunConfig reproducing one panel of the five figure families."""
    family, variant = name[:-1], name[-1:]
    if name not in PRESET_NAMES:
        raise ValueError(
            f"unknown preset {name!r}; valid names: {', '.join(PRESET_NAMES)}"
        )
    if family == "fig5":
        state = SdfsParams(alpha0=3.0, m=1, **_STRONG)
        return RunConfig(
            state=state,
            t_max_scaled=REVIVAL_T,
            t_points=2,
            q_time_scaled=_FIG5_TIME[variant],
            observables=_FAMILY_OBSERVABLE[family],
            output_dir=name,
        )
    alpha0 = 0.5 if family == "fig3" else 3.0
    state = SdfsParams(alpha0=alpha0, m=_VARIANT_M[variant], **_STRONG)
    return RunConfig(
        state=state,
        observables=_FAMILY_OBSERVABLE[family],
        output_dir=name,
    )
