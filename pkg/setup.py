# -*- coding: utf-8 -*-

"""
.. module:: setup.py

   :license: GPL / CeCILL
   :platform: Unix
   :synopsis: dravlgbt setup.

.. moduleauthor:: dravlgbt developers

"""
import os
import re
from codecs import open

from setuptools import setup
from setuptools import find_packages



# List of 3rd party python dependencies.
_REQUIRES = [
    'gensim>=4.0.0',
    'numpy>=1.21',
    'psutil>=0.6.0',
    'scikit-learn>=1.0',
    'sentencepiece>=0.1.95',
    'torch>=1.13',
    'transformers>=4.30'
    ]


def _read(fname):
    """Returns content of a file.

    """
    fpath = os.path.dirname(__file__)
    fpath = os.path.join(fpath, fname)
    with open(fpath, 'r', 'utf-8') as file_:
        return file_.read()


def _get_version():
    """Returns library version by inspecting __init__.py file.

    """
    return re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]',
                     _read("dravlgbt/__init__.py"),
                     re.MULTILINE).group(1)


# Libary version.
_VERSION = _get_version()

# Library packages.
_PACKAGES = find_packages(exclude=["tests"])

# User readme.
_README = _read('README.rst')



setup(
    name='dravlgbt',
    version=_VERSION,
    description='dravlgbt detects homophobic and transphobic comments in Malayalam and Tamil social media text.',
    long_description=_README,
    author='dravlgbt developers',
    packages=_PACKAGES,
    include_package_data=True,
    install_requires=_REQUIRES,
    extras_require={
        'test': ['pytest']
    },
    license='GPL/CeCILL-2.1',
    zip_safe=False,
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'License :: OSI Approved :: GNU General Public License (GPL)',
        'License :: OSI Approved :: CEA CNRS Inria Logiciel Libre License, version 2.1 (CeCILL-2.1)',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
        'Topic :: Text Processing :: Linguistic',
    ],
    entry_points={
        'console_scripts': [
            'dravlgbt = dravlgbt.cli:main'
        ]
    }
)
