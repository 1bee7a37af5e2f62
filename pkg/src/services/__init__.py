"""Services for the Hecke engine: input parsing, report export and command dispatch."""

from .application_services import CommandResult, EngineServices, RunOptions, services
from .export_service import ExportService
from .input_service import InputService, Problem

__all__ = [
    "CommandResult",
    "EngineServices",
    "ExportService",
    "InputService",
    "Problem",
    "RunOptions",
    "services",
]
