#!/usr/bin/env python
import re
from setuptools import setup, find_packages


_versionRE = re.compile(r'__version__\s*=\s*\"([^\"]+)\"')
with open('Lib/qconfine/__init__.py', "r") as qc_init:
    match = _versionRE.search(qc_init.read())
    assert match is not None, "qconfine.__version__ not found"
    qc_version = match.group(1)


setup(
    name="qconfine",
    use_scm_version={"write_to": "Lib/qconfine/_version.py"},
    version=qc_version,
    description="qconfine: confinement of a 1D quantum particle by boundary conditions at an interface.",
    package_dir={"": "Lib"},
    packages=find_packages("Lib"),
    install_requires=[
        "numpy",
        "scipy",
        "sympy",
        "tomli; python_version < '3.11'",
    ],
    extras_require={
    },
    entry_points={
        "console_scripts": ["qconfine=qconfine.cli:main"],
    },
    setup_requires=["setuptools_scm"],
    python_requires=">=3.8",
    classifiers=[
    ],
)
