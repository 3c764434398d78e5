"""Exception types raised across the package."""


class GridMismatchError(ValueError):
    """Two fields live on different grids."""


class HermitianError(ValueError):
    """A spectrum that should describe a real field is not conjugate-symmetric."""


class AdmissibilityError(ValueError):
    """Traveling-wave parameters violate one of the existence conditions."""


class CommensurabilityError(ValueError):
    """The periodic grid does not fit a whole number of wave periods."""


class BlowUpError(RuntimeError):
    """The time integration produced non-finite or runaway coefficients."""

    def __init__(self, step, t, max_abs):
        self.step = step
        self.t = t
        self.max_abs = max_abs
        super().__init__(
            f"solution blew up at step {step} (t={t:.6g}, max |u_hat|={max_abs:.3g})"
        )


class ConfigError(ValueError):
    """Invalid run configuration; carries the offending key and line."""

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
