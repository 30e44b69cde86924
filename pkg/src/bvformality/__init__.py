"""Exact verification workbench for the formality of framed little disks chains."""

__version__ = "0.1.0"
