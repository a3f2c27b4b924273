from setuptools import setup, find_packages

# Read the contents of the README file
with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="spraylab",
    version="0.2.0",
    description=(
        "Exact rational geometry of sphere intersections, sprays and drizzle covers"
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="SprayLab developers",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"spraylab": ["schemas/*.json", "data/*.json"]},
    install_requires=[
        "numpy>=1.26.0",
        "tqdm>=4.64.0",
        "jsonschema>=4.18.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "pytest-cov>=4.0",
            "hypothesis>=6.80",
        ],
        "docs": [
            "sphinx>=4.0.0",
            "sphinx_rtd_theme>=1.0.0",
            "sphinx-autodoc-typehints",
        ],
    },
    entry_points={
        "console_scripts": [
            "spraylab=spraylab.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="exact arithmetic, rational geometry, spheres, general position, covers",
    python_requires=">=3.11",
)
