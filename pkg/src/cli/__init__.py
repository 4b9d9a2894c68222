"""
Command Line Interface
======================

Argument parsing, command routing and the verification battery.
"""

from .command_router import CommandRouter
from .verification import VerificationReport, run_verification

__all__ = [
    'CommandRouter',
    'VerificationReport',
    'run_verification',
]
