####
# This is a basic setup.py structure so we can generate
# distributable package information with setuptools.
# More information: https://packaging.python.org/tutorials/packaging-projects/
###
###
# Local install:
#   Create virtual environment:
#   $ python3 -m venv .venv && source .venv/bin/activate
#   Generate distribution files (untracked by git):
#   $ python3 setup.py sdist bdist_wheel
#   Install the library with the test tools:
#   $ pip install .[dev]
# The `tsa` command is now available in the environment.
##
import os
import sys

import setuptools
from setuptools.command.install import install

_tsaVersion = "1.0.0"
_name = "tsaboost"
_description = (
    "Transient stability assessment with gradient harmonized boosted oblivious trees."
)
_author_email = "tsaboost@users.noreply.github.com"
_author = "The tsaboost developers"
_projectUrl = "https://github.com/tsaboost/tsaboost"
_license = "2-Clause BSD License, Simplified BSD License, FreeBSD License"

with open("README.md") as fh:
    long_description = fh.read()


class VerifyVersionCommand(install):
    """Custom command to verify that the git tag matches the package version"""

    description = "verify that the git tag matches the package version"

    def run(self):
        tag = os.getenv("CIRCLE_TAG")

        if tag != _tsaVersion:
            info = f"Git tag: {tag} does not match the version of this app: {_tsaVersion}"
            sys.exit(info)


setuptools.setup(
    name=_name,
    version=_tsaVersion,
    author=_author,
    author_email=_author_email,
    description=_description,
    long_description=long_description,
    long_description_content_type="text/markdown",
    url=_projectUrl,
    license=_license,
    packages=setuptools.find_packages(exclude=("tests", "tests.*", "examples", "examples.*")),
    package_data={"tsaboost._src.grid": ["data/*.case"]},
    zip_safe=False,
    install_requires=[
        "numpy>=1.20",
        "scipy>=1.7",
        "pandas>=1.5",
        "scikit-learn>=1.0",
        "joblib>=1.1",
    ],
    extras_require={
        "dev": [
            "pytest",
            "coverage",
            "pylint",
        ]
    },
    entry_points={
        "console_scripts": [
            "tsa=tsaboost._src.cli.cli_main:run_cli",
        ]
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering",
    ],
    python_requires="~=3.8",
    keywords="power systems transient stability gradient boosting oblivious trees pmu",
    cmdclass={
        "verify": VerifyVersionCommand,
    },
)
