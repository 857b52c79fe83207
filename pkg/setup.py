from setuptools import find_packages, setup

with open("README.md", "rt", encoding="UTF-8") as fh:
    long_description = fh.read()

dependencies = [
    "click~=8.1.3",
    "numpy>=1.22",
    "scipy>=1.9",
    "PyYAML>=6.0",
    "sympy>=1.10",
]

dev_dependencies = [
    "build",
    "coverage",
    "pre-commit",
    "pylint",
    "pytest",
    "pytest-monitor; sys_platform == 'linux'",
    "pytest-xdist",
    "twine",
    "isort",
    "flake8",
    "mypy",
    "black==22.10.0",
    "types-click",
    "types-pyyaml",
    "types-setuptools",
]

setup(
    name="rieszap",
    version="0.1",
    packages=find_packages(exclude=("tests",)),
    entry_points={
        "console_scripts": ["rieszap = rieszap.cmds.cli:main"],
    },
    setup_requires=["setuptools_scm"],
    install_requires=dependencies,
    python_requires=">=3.8",
    license="https://opensource.org/licenses/Apache-2.0",
    description="Riesz bounds of exponential systems over arc sets on the circle",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "License :: OSI Approved :: Apache Software License",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    extras_require=dict(
        dev=dev_dependencies,
    ),
)
