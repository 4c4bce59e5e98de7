#!/usr/bin/env python3
"""
Setup script for koszul-lab
"""
import sys

from setuptools import setup

if sys.version_info < (3, 8):
    print("❌ Python 3.8 or higher is required")
    sys.exit(1)

with open("requirements.txt") as f:
    requirements = [line.strip() for line in f if line.strip() and not line.startswith("#")]

setup(
    name="koszul-lab",
    version="1.0.0",
    description="Koszulity of splitting algebras of uniform layered graphs, and the minimal non-Koszul search",
    py_modules=[
        "config", "utils", "layered_graph", "enumeration", "linalg", "quadratic",
        "koszul", "cohomology", "search", "storage", "notifier", "main",
    ],
    install_requires=requirements,
    python_requires=">=3.8",
    entry_points={"console_scripts": ["koszul-lab=main:main"]},
)
