from setuptools import setup, find_packages

LONG_DESCRIPTION = """
Casimir-Polder coupling between degenerate hyperfine sublevels of an atom
near a perfectly conducting mirror and the Rabi oscillations it drives.
"""

setup(name="casimir-rabi",
      version="0.3.0",
      description="Casimir-Polder induced Rabi oscillations near a mirror",
      long_description=LONG_DESCRIPTION,
      packages=find_packages(exclude=["tests", "tests.*"]),
      package_data={"cprabi": ["data/*.json"]},
      include_package_data=True,
      install_requires=open("requirements.txt").read().splitlines(),
      python_requires='>=3.7',
      entry_points={
        'console_scripts': [
            'cprabi=cprabi.cli:cli'
        ],
      },
      classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "Programming Language :: Python :: 3"
      ])
