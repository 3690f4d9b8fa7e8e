"""Exception hierarchy for isac-beamscan.

Every error raised on purpose by the package derives from :class:`IsacError` so
callers (the CLI in particular) can separate domain failures from bugs.
Configuration problems derive from :class:`ConfigError` and always name the
offending key.
"""


class IsacError(Exception):
    """Base class for all isac-beamscan errors."""


class ConfigError(IsacError):
    """Raised when a scenario document cannot be turned into a SystemConfig.

    Attributes:
        key: The configuration key the problem is attached to.
        detail: Human-readable description of the problem.
    """

    def __init__(self, key: str, detail: str = "") -> None:
        self.key = key
        self.detail = detail
        super().__init__(key)

    def __str__(self) -> str:
        label = f"{self.__class__.__name__}({self.key!r})"
        if self.detail:
            return f"{label}: {self.detail}"
        return label


class MissingKey(ConfigError):
    """A required key is absent from the document."""


class UnknownKey(ConfigError):
    """The document (or an override) names a key that is not part of the grammar."""


class InvalidValue(ConfigError):
    """A value is not numeric, not an integer where one is required, or out of range."""


class InvariantViolation(ConfigError):
    """Individually valid values break a cross-field invariant (e.g. L < M)."""


class UnknownSweepKey(ConfigError):
    """A sweep axis names something that is not a sweepable config key."""


class InvalidAngle(IsacError):
    """An angle lies outside [-pi/2, pi/2]."""

    def __init__(self, theta: float) -> None:
        self.theta = theta
        super().__init__(f"angle {theta!r} rad outside [-pi/2, pi/2]")


class InvalidSize(IsacError):
    """Array or codebook dimensions are inconsistent (e.g. codebook smaller than the array)."""


class DurationOverflow(IsacError):
    """Scanning phases do not fit inside the coherence time.

    Attributes:
        tau: Beam scanning time for training, in symbols.
        tau_s: Dedicated sensing scan time, in symbols.
        coherence_time: Coherence time T, in symbols.
    """

    def __init__(self, tau: float, tau_s: float, coherence_time: float) -> None:
        self.tau = tau
        self.tau_s = tau_s
        self.coherence_time = coherence_time
        super().__init__(
            f"tau + tau_s = {tau + tau_s:g} exceeds coherence time T = {coherence_time:g}"
        )


class DegenerateBlock(IsacError):
    """The echo block carries no energy, so the likelihood is flat and no angle exists."""


class SingularInformation(IsacError):
    """The Fisher information for the angle is not positive (e.g. at theta = +-pi/2).

    Attributes:
        schur: The offending Schur complement value.
    """

    def __init__(self, schur: float) -> None:
        self.schur = schur
        super().__init__(f"angle information is singular (Schur complement {schur:.3e})")
