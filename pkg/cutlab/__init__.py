"""Desk-scale branch-and-cut laboratory for comparing distance-based cut selection measures."""

from cutlab.config import LabSettings, Tolerances
from cutlab.errors import CutLabError
from cutlab.lab import CutLab
from cutlab.types import Cut, MeasureKind, MipInstance

__all__ = ["CutLab", "CutLabError", "Cut", "LabSettings", "MeasureKind", "MipInstance", "Tolerances"]
