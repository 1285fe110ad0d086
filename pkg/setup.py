from setuptools import setup, find_packages
from vpnhub import __version__, _program

# read the contents of your README file
from pathlib import Path
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()

setup(
    name='vpnhub',
    long_description=long_description,
    long_description_content_type='text/markdown',
    version=__version__,
    python_requires=">=3.9",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "networkx>=2.8",
        "matplotlib>=3.5.1",
        "pandas>=1.4.4",
        "numpy>=1.23.3"
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "hypothesis>=6.0"
        ]
    },
    description='vpnhub computes optimal hierarchical hubbings for robust network design with tree demand universes',
    classifiers=[
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)"
    ],
    entry_points="""
    [console_scripts]
    {program} = vpnhub.command:main
    """.format(program=_program),
    include_package_data=True,
    keywords=[],
    zip_safe=False
)
