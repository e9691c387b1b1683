"""Closed-form quantum-correlation measures for two-qubit X states.

Everything operates on the correlation triple c = (c1, c2, c3) of the
Bell-diagonal state (1/4)(I + sum_i c_i sigma_i x sigma_i).  The measures
module holds the closed forms, oracle the brute-force references they are
tested against, channels/dynamics the decoherence story, and experiments
the seeded Monte-Carlo audits behind the CLI.
"""

from .channels import (
    ChannelKind,
    ChannelSpec,
    apply_channel_matrix,
    channel_at_time,
    decoherence_schedule,
    evolve_c,
    kraus_completeness_defect,
    kraus_set,
)
from .dynamics import (
    BORN_DEAD,
    NEVER,
    ChronologyReport,
    DeathTime,
    PfFamilyState,
    chronology_check,
    sudden_death_closed_pf,
    sudden_death_time,
)
from .experiments import (
    SweepReport,
    bound_curves,
    hierarchy_sweep,
    invariance_scan,
    sudden_death_sweep,
    write_datasets,
)
from .measures import (
    MeasureRecord,
    all_measures,
    bell_nonlocality,
    binary_entropy,
    concurrence,
    f_q,
    inv_binary_entropy,
    inv_f_q,
    q_discord,
    steering_entropic,
    steering_variance,
)
from .oracle import (
    ChshSettings,
    ProjectivePair,
    chsh_direct_search,
    chsh_max_oracle,
    concurrence_oracle,
    haar_unitary,
    q_discord_oracle,
    steering_F_oracle,
    steering_G_oracle,
)
from .states import (
    CVector,
    NonphysicalStateError,
    assert_physical,
    density_matrix,
    extract_c,
    is_physical,
    local_rotation,
    rotation_unitary,
    sample_states,
    spectrum,
    validate_density_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BORN_DEAD",
    "ChannelKind",
    "ChannelSpec",
    "ChronologyReport",
    "ChshSettings",
    "CVector",
    "DeathTime",
    "MeasureRecord",
    "NEVER",
    "NonphysicalStateError",
    "PfFamilyState",
    "ProjectivePair",
    "SweepReport",
    "all_measures",
    "apply_channel_matrix",
    "assert_physical",
    "bell_nonlocality",
    "binary_entropy",
    "bound_curves",
    "channel_at_time",
    "chronology_check",
    "chsh_direct_search",
    "chsh_max_oracle",
    "concurrence",
    "concurrence_oracle",
    "decoherence_schedule",
    "density_matrix",
    "evolve_c",
    "extract_c",
    "f_q",
    "haar_unitary",
    "hierarchy_sweep",
    "inv_binary_entropy",
    "inv_f_q",
    "invariance_scan",
    "is_physical",
    "kraus_completeness_defect",
    "kraus_set",
    "local_rotation",
    "q_discord",
    "q_discord_oracle",
    "rotation_unitary",
    "sample_states",
    "spectrum",
    "steering_F_oracle",
    "steering_G_oracle",
    "steering_entropic",
    "steering_variance",
    "sudden_death_closed_pf",
    "sudden_death_sweep",
    "sudden_death_time",
    "validate_density_matrix",
    "write_datasets",
]
