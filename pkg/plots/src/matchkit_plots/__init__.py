"""Figure regeneration for matchkit benchmark sweeps."""

__version__ = "0.1.0"

from .figures import FigureResult, PlotDataError, load_curves, load_results, plot_all

__all__ = ["FigureResult", "PlotDataError", "load_curves", "load_results", "plot_all"]
