
from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

version = {}
with open("vclab/version.py") as fh:
    exec(fh.read(), version)

setup(
    name='vclab',
    version=version['__version__'],
    license='MIT',
    description='Python package for VC dimension computations and sample '
                'compression schemes on finite concept classes.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    install_requires=[
        'numpy>=1.20.1',
        'scipy>=1.6.0',
        'pandas>=1.2.2',
        'networkx>=2.6',
        'sphinx>=5.0.2',
        ],
    extras_require={
        'test': ['pytest>=7.0'],
        },
    entry_points={
        'console_scripts': ['vclab=vclab.cli:main'],
        },

    # pip will copy non-code files when installing
    include_package_data=True,

    packages=find_packages(exclude=['tests']),
)
