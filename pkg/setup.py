#!/usr/bin/env python3

from setuptools import find_packages, setup

package_name = 'twophoton'

setup(
    name=package_name,
    # also update twophoton/version.py
    version='0.3.0',
    packages=find_packages(exclude=['tests*', 'doc*']),
    install_requires=[
        'numpy',
        'py_trees>=2.2',
    ],
    extras_require={
        'docs': ['sphinx', 'sphinx_rtd_theme', 'sphinx-argparse', 'sphinx-autodoc-typehints'],
    },
    tests_require=['pytest'],
    author='The twophoton developers',
    keywords=['quantum-optics', 'interferometry', 'spectroscopy', 'behaviour-trees'],
    zip_safe=True,
    classifiers=[
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    description=(
        "Two photon interference traces of filtered entangled photon pairs."
    ),
    long_description=(
        "Simulates coincidence traces of entangled photon pairs in single port, "
        "Hong-Ou-Mandel and N00N interferometers after a sample acts as a spectral "
        "filter, with a brute force fock space cross check."
    ),
    license='BSD',
    entry_points={
        'console_scripts': [
            'twophoton = twophoton.cli:main',
        ],
    },
)
