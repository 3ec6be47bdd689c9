"""Local metric pressure, Gibbs diagnostics and equilibrium states on subshifts of finite type."""

__version__ = "0.1.0"
