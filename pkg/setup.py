from setuptools import setup, find_packages

setup(
    name="inradius_lab",
    version="0.1.0",
    description="Certified inner radii of nonvanishing sets for eigenfunctions of constant-coefficient elliptic operators",
    author="Inradius Lab Team",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.22.0",
        "scipy>=1.9.0",
        "pyyaml>=6.0",
        "pydantic>=2.9.0",
        "pillow>=9.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "black>=23.0.0",
            "isort>=5.10.0",
            "mypy>=1.0.0",
            "sphinx>=5.0.0",
        ]
    },
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "inradius-lab=inradius_lab.cli:main",
        ],
    },
)
