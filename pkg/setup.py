#!/usr/bin/env python
# Created by "Thieu" at 13:24, 01/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

from setuptools import setup, find_packages


def readme():
    with open('README.md', encoding='utf-8') as f:
        README = f.read()
    return README


setup(
    name="tancert",
    version="1.0.0",
    author="Thieu",
    author_email="nguyenthieu2102@gmail.com",
    description="TanCert: Multiplier Certificates and Constraint Qualification Checks for Best Approximation "
                "with Tangentially Convex Constraints",
    long_description=readme(),
    long_description_content_type="text/markdown",
    keywords=["best approximation", "projection", "tangential subdifferential", "tangentially convex",
              "constraint qualification", "Robinson constraint qualification", "Abadie constraint qualification",
              "strong CHIP", "normal cone", "polar cone", "contingent cone", "Lagrange multipliers",
              "nonsmooth optimization", "convex analysis", "certificate"],
    url="https://github.com/thieu1995/tancert",
    project_urls={
        'Source Code': 'https://github.com/thieu1995/tancert',
        'Bug Tracker': 'https://github.com/thieu1995/tancert/issues',
        'Change Log': 'https://github.com/thieu1995/tancert/blob/master/ChangeLog.md',
    },
    packages=find_packages(exclude=['tests*', 'examples*']),
    package_data={"tancert": ["data/*.json"]},
    include_package_data=True,
    license="GPLv3",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Education",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
        "Topic :: Utilities",
    ],
    install_requires=["numpy>=1.17.1", "scipy>=1.7.1"],
    extras_require={
        "dev": ["pytest>=7.0", "pytest-cov==4.0.0", "flake8>=4.0.1", "hypothesis>=6.0"],
    },
    entry_points={"console_scripts": ["tancert=tancert.cli:main"]},
    python_requires='>=3.8',
)
