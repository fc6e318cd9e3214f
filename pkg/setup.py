"""
Setup script for the zolldisks package.
"""

from setuptools import setup, find_packages

setup(
    name="zolldisks",
    version="0.1.0",
    description="Holomorphic disks and Zoll projective structures from docile surfaces in CP2",
    author="zolldisks developers",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "pandas>=2.0.0",
        "pydantic>=2.0.0",
        "typer>=0.9.0",
        "rich>=13.0.0",
        "tqdm>=4.66.0",
        "python-dotenv>=1.0.0",
        "typing-extensions>=4.8.0",
    ],
    extras_require={"test": ["pytest>=7.4.0"]},
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "zolldisks=cli.main:app",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
