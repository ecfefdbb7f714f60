"""Exception types raised across the package."""


class ThermometryError(Exception):
    """Base class for every error raised by interferotherm."""


class NonPositiveParameter(ThermometryError, ValueError):
    def __init__(self, field, value=None):
        self.field = field
        self.value = value
        super().__init__(f"{field} must be strictly positive (got {value!r})")


class EtaOutOfRange(ThermometryError, ValueError):
    def __init__(self, field, value):
        self.field = field
        self.value = value
        super().__init__(f"{field} must lie in (0, 1] (got {value!r})")


class NonPositiveTemperature(ThermometryError, ValueError):
    def __init__(self, T):
        self.T = T
        super().__init__(f"temperature must be > 0 K (got {T!r})")


class TruncationOverflow(ThermometryError):
    """The Fock truncation needed for a tolerance exceeds the configured cap."""

    def __init__(self, needed, cap):
        self.needed = needed
        self.cap = cap
        super().__init__(f"Fock truncation needs n_max={needed}, above cap {cap}")


class TruncationTooSmall(ThermometryError):
    """A truncated coherent state lost too much norm."""


class ModelRegimeMismatch(ThermometryError):
    def __init__(self, model, regime):
        self.model = model
        self.regime = regime
        super().__init__(
            f"model {model} is not applicable in regime {regime}; "
            "pass override=True to force it"
        )


class OutOfDomain(ThermometryError, ValueError):
    """An observed value cannot be mapped to a positive temperature."""

    def __init__(self, message, bound=None):
        self.bound = bound
        super().__init__(message)


class DerivativeUnderflow(ThermometryError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"|d<M>/dT| = {value!r} is below 1e-30; response is flat")


class ScenarioError(ThermometryError):
    """Base for problems with a scenario file."""


class ParseError(ScenarioError):
    pass


class UnknownParameter(ScenarioError, KeyError):
    def __init__(self, name, allowed):
        self.name = name
        self.allowed = tuple(allowed)
        super().__init__(f"unknown sweep parameter {name!r}; choose from {', '.join(allowed)}")

    def __str__(self):
        return self.args[0]


class OracleCapExceeded(ThermometryError, ValueError):
    """Photon number too large for the brute-force Fock model."""

    def __init__(self, photon_number, cap):
        self.photon_number = photon_number
        self.cap = cap
        super().__init__(f"Fock brute force needs photon_number <= {cap} (got {photon_number!r})")
