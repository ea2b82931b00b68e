"""
pathpack:  Packing colorings of path-aligned graph products and caterpillars
"""

from setuptools import setup

import os
import re

version_re = re.compile(r"^__version__ = ['\"](?P<version>[^'\"]*)['\"]", re.M)

def find_version(*file_paths):
    """Get version from python file."""

    path = os.path.join(os.path.dirname(__file__), *file_paths)
    with open(path) as version_file: contents = version_file.read()

    m = version_re.search(contents)
    if not m: raise RuntimeError("Unable to find version string.")

    return m.group('version')

setup(
    name='pathpack',
    version=find_version('pathpack/__init__.py'),
    packages=['pathpack'],
    package_data={
        'pathpack': [ 'data/templates/*' ],
    },
    python_requires='>=3.8',
    install_requires=[
        'jinja2',
        'networkx>=2.6',
        'numpy',
    ],
    extras_require={
        'tests': [ 'hypothesis', 'pytest' ],
    },
    entry_points={
        'console_scripts': [ 'pathpack = pathpack.cli:main' ],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
