"""Chaos-based S-Box workbench: construction, audit, counting and key schedules."""

__version__ = "0.1.0"
