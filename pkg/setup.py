#!/usr/bin/env python3
"""
Setup script for muntzbasis

Numerical experiments on Müntz polynomials, Fourier summation and
Schauder-type bases.
"""

from pathlib import Path

from setuptools import find_packages, setup

this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding='utf-8')


def get_version():
    """Get version from src/__init__.py or set default."""
    version_file = this_directory / "src" / "__init__.py"
    if version_file.exists():
        with open(version_file, 'r', encoding='utf-8') as f:
            for line in f:
                if line.startswith('__version__'):
                    return line.split('=')[1].strip().strip('"').strip("'")
    return "0.1.0"


setup(
    name="muntzbasis",
    version=get_version(),
    description="Numerical experiments on Müntz polynomials, Fourier summation and Schauder-type bases",
    long_description=long_description,
    long_description_content_type="text/markdown",

    packages=find_packages(include=['src', 'src.*']),
    include_package_data=True,

    install_requires=[
        'numpy>=1.24',
        'scipy>=1.10',
        'jsonschema>=4.17',
        'rich>=13.0',
    ],
    extras_require={
        'dev': [
            'pytest>=7.0.0',
            'pytest-cov>=4.0.0',
            'black>=22.0.0',
            'flake8>=5.0.0',
            'mypy>=0.991',
        ],
    },

    entry_points={
        'console_scripts': [
            'muntzbasis=src.main:main',
            'mzb=src.main:main',  # Short alias
        ],
    },

    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.9",
    license="MIT",
    zip_safe=False,
)
