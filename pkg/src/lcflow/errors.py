"""Exception types shared across the toolkit."""


class InvalidArgumentError(ValueError):
    """An argument violates a precondition (wrong range, wrong shape, non-finite)."""


class DomainViolationError(ValueError):
    """The validity constraint beta*sin(psi)**2 > 1 fails.

    Carries the offending angle and the margin beta*sin(psi)**2 - 1.
    """

    def __init__(self, psi, margin, what="beta*sin(psi)**2 - 1 must be positive"):
        self.psi = float(psi)
        self.margin = float(margin)
        super().__init__(f"{what}: psi={self.psi!r}, margin={self.margin:.6e}")


class NumericalError(RuntimeError):
    """A numerical procedure failed to converge; carries diagnostics."""

    def __init__(self, message, achieved=None, requested=None):
        self.achieved = achieved
        self.requested = requested
        if achieved is not None and requested is not None:
            message = f"{message} (achieved {achieved:.3e}, requested {requested:.3e})"
        super().__init__(message)


class ConfigError(ValueError):
    """Configuration rejected; carries a list of (path, reason) pairs."""

    def __init__(self, issues):
        if isinstance(issues, str):
            issues = [("", issues)]
        self.issues = list(issues)
        lines = [f"  {path or '<root>'}: {reason}" for path, reason in self.issues]
        super().__init__("invalid configuration:\n" + "\n".join(lines))


class NotApplicableError(RuntimeError):
    """The requested quantity is undefined for this dataset (e.g. no far field declared)."""
