"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument or configuration value is outside its valid range."""


class CatalogError(KeyError):
    """A problem name is not in the catalog."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class RunError(RuntimeError):
    """The optimizer hit a non-finite objective value or position."""
