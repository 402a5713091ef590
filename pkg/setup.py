from setuptools import setup, find_packages

setup(
    name="planar_squeezing",
    version="0.1.0",
    description="Planar quantum squeezing of spin-J systems: uncertainty bounds, BEC ground states, "
    "interferometric phase noise and entanglement witnesses",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    install_requires=[
        "pandas>=1.2.0",
        "numpy>=1.19.2",
        "scipy>=1.6.0",
        "scikit-learn>=0.24.1",
        "joblib>=1.0.0",
    ],
    extras_require={
        "test": ["pytest>=6.0"],
    },
    entry_points={
        "console_scripts": [
            "planar-squeeze=planar_squeezing.cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
)
