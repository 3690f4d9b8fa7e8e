"""Event types of the experiment pipeline.

    SWEEP_REQUESTED -> SWEEP_PLANNED + POINT_READY x n
    POINT_READY -> POINT_EVALUATED | POINT_SKIPPED
    (all n points accounted for) -> SWEEP_COMPLETE
"""

SWEEP_REQUESTED = "SWEEP_REQUESTED"
SWEEP_PLANNED = "SWEEP_PLANNED"
POINT_READY = "POINT_READY"
POINT_EVALUATED = "POINT_EVALUATED"
POINT_SKIPPED = "POINT_SKIPPED"
SWEEP_COMPLETE = "SWEEP_COMPLETE"
