from setuptools import find_packages, setup

from sobolev_extender.version import VERSION

with open("README.md", encoding="utf-8") as f:
    readme = f.read()

with open("requirements.txt", encoding="utf-8") as f:
    requirements = [line for line in f.read().split("\n") if line]

setup_kwargs = dict(
    name='sobolev-extender',
    version=VERSION,
    description=(
        'Dyadic Sobolev extension of boundary homeomorphisms and snowflake curves'
    ),
    long_description=readme,
    long_description_content_type="text/markdown",
    author='sobolev-extender contributors',
    license='MIT',
    keywords=["sobolev", "homeomorphism", "extension", "quasisymmetric", "snowflake"],
    install_requires=requirements,
    extras_require={"test": ["pytest", "defusedxml"]},
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    packages=find_packages(exclude=["test"]),
    entry_points={
        "console_scripts": [
            "sobolev-extender = sobolev_extender.cli:main",
        ],
    },
)

setup(**setup_kwargs)
