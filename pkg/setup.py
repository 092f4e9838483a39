from setuptools import setup, find_packages

setup(
    name="canonical-heights",
    version="0.1.0",
    description="Factorization-free canonical heights on elliptic curves over Q",
    author="Canonical Heights Team",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "mpmath>=1.3.0",
        "pandas>=1.5.0",
        "pyyaml>=6.0.0",
    ],
    extras_require={
        'fast': [
            "gmpy2>=2.1.0",  # picked up by mpmath's integer backend
        ],
        'dev': [
            "pytest>=7.4.0",
            "pytest-asyncio>=0.21.0",
            "black>=23.3.0",
            "flake8>=6.0.0",
            "mypy>=1.4.0",
        ]
    },
    entry_points={
        'console_scripts': [
            "canonical-height=src.main:run",
        ],
    },
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
