"""
Setup configuration for orbital-rmt.
"""

from setuptools import setup, find_packages
import os

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

requirements = []
requirements_file = "requirements.txt"
if os.path.exists(requirements_file):
    with open(requirements_file, "r", encoding="utf-8") as fh:
        requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
else:
    # Fallback requirements if file not found during build
    requirements = [
        "numpy>=1.22.0",
        "scipy>=1.9.0",
        "rich>=13.0.0",
        "joblib>=1.2.0",
        "typing-extensions>=4.0.0",
    ]


setup(
    name="orbital-rmt",
    version="0.1.0",
    author="orbital-rmt developers",
    description="Monte Carlo checks of Wegner, Minami and localisation bounds for random block operators",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "orbital-rmt=orbital_rmt.cli.main:main",
        ],
    },
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "black>=23.0.0",
            "isort>=5.12.0",
            "mypy>=1.0.0",
            "flake8>=6.0.0",
            "pytest-cov>=4.0.0",
        ],
    },
    keywords="random matrices anderson localisation wegner estimate band matrices monte carlo",
)
