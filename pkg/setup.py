#!/usr/bin/env python3
"""Setup script for schurkit."""

from setuptools import setup, find_packages

setup(
    name="schurkit",
    version="0.1.0",
    description="Exact Schur-class positivity checks for vector bundles on projective varieties",
    python_requires=">=3.10",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "sqlalchemy>=2.0.0",
        "PyYAML>=6.0",
        "jinja2>=3.1.0",
        "click>=8.1.0",
        "tabulate>=0.9.0",
        "numpy>=1.24.0",
        "scipy>=1.10.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0.0",
            "hypothesis>=6.80.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "schurkit=bin.schurkit:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
