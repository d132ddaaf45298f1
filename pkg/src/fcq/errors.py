"""Exception types shared across the package."""


class FCQError(Exception):
    """Base class for library errors."""


class PrecisionError(FCQError, ArithmeticError):
    """The working precision cannot resolve the requested quantity."""


class ConvergenceError(FCQError, ArithmeticError):
    """An iterative procedure hit its cap without meeting its stopping rule."""


class NotBracketedError(FCQError, ValueError):
    """A scalar minimisation scan found its minimum at the edge of the scan."""


class OffAxisMaximumError(FCQError):
    """The kernel modulus on an ellipse peaks away from the positive real axis.

    Carries the scan result so callers can fall back to the grid maximum.
    """

    def __init__(self, rho, theta, ratio):
        super().__init__(
            f"kernel maximum on E_rho at theta={theta:.6g} (rho={float(rho):.6g}), "
            f"|K(theta)|^2/|K(0)|^2 = {ratio:.6g}"
        )
        self.rho = rho
        self.theta = theta
        self.ratio = ratio
