from setuptools import find_packages, setup

setup(
    name="orbit_frames",
    version="0.0.1",
    author="Aaron Gobeyn",
    author_email="aaron.gobeyn@tu-darmstadt.de",
    description="Python package for testing whether finite frames are orbits {T^n phi} of a bounded operator.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: GNU General Public License",
        "Operating System :: OS Independent",
    ],
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.10",
    install_requires=["numpy", "scipy", "mpmath"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["orbit-frames=orbit_frames.cli.main:main"]},
)
