from setuptools import setup, find_packages
from pathlib import Path

requirements_path = Path(__file__).parent / "requirements.txt"
with open(requirements_path, 'r') as f:
    requirements = [line.strip() for line in f if line.strip() and not line.startswith('#')]

setup(
    name="lincell",
    version="0.1.0",
    description="Linear 2D cellular automata over GF(2): rule matrices, reversibility and image transforms",
    packages=find_packages(exclude=("tests",)),
    python_requires=">=3.8",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "lincell=lincell.cli:main",
        ],
    },
)
