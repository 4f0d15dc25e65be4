"""Verification service: pydantic models, handlers and the FastAPI app."""

from .dispatch import COMMANDS, dispatch_command
from .models import ServiceResponse

__all__ = ["COMMANDS", "dispatch_command", "ServiceResponse"]
