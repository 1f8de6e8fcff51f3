import re

from setuptools import setup, find_namespace_packages

with open('app/backend/version.py') as f:
    VERSION = re.search(r"__version__ = '([^']+)'", f.read()).group(1)

setup(
    name='knotslice',
    version=VERSION,
    packages=find_namespace_packages(include=['app*']),
    package_data={'app.backend.catalog': ['data/*.yaml', 'data/*.json']},
    python_requires='>=3.8',
    include_package_data=True,
    description='Knot invariants, Khovanov homology and slice obstructions from PD codes',
    classifiers=[
        'Programming Language :: Python :: 3.8',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    install_requires=[
        'numpy',
        'sympy>=1.12',
        'networkx',
        'flask',
        'flask-cors',
        'click',
        'pyyaml',
        'ujson',
        'jsonschema',
        'python-json-logger',
        'psutil',
        'python-dotenv',
        'colorama>=0.4.6',
    ],
    extras_require={
        'dev': ['pytest', 'pytest-cov', 'pytest-mock'],
    },
    entry_points={
        'console_scripts': ['knotslice=app.backend.cli:main'],
    },
)
