from setuptools import setup

version = '0.1.0'

setup(name='toricca',
      version=version,
      description="Quantum-jump simulation of the dissipative toric code \
with a cellular-automaton decoder field",
      long_description="""\
toricca simulates the dissipative toric code as an ensemble of quantum-jump
trajectories of a Pauli frame on an L x L torus.  Anyons created in pairs by
random bit flips hop towards the maximum of a classical field, which is kept
up to date by a cellular automaton.  The library provides:

*  An event-driven (Gillespie) engine for pair creation, anyon hopping and
   field updates, with deterministic per-trajectory random streams
*  A clustering decoder whose number of growth rounds is the circuit depth
*  Ensemble statistics with bootstrap intervals: anyon density, circuit depth
   and its variance, logical error probability
*  Threshold location by bisection and the gamma3 - gamma1 phase diagram

The following utility is included with toricca:

* toricca - a command line utility with the following subcommands:

  * trajectory - run one trajectory and emit its measurements
  * ensemble - run N trajectories per sweep point
  * threshold - locate the critical error rate
  * phasediagram - critical error rate over a list of field-update rates
  * calibrate - find the steady-state time constant
  * selftest - fixed-seed consistency checks""",
      # Get strings from http://pypi.python.org/pypi?%3Aaction=list_classifiers
      classifiers=["Development Status :: 3 - Alpha",
                   "Environment :: Console",
                   "Intended Audience :: Science/Research",
                   "License :: OSI Approved :: BSD License",
                   "Operating System :: POSIX",
                   "Programming Language :: Python :: 3",
                   "Topic :: Scientific/Engineering :: Physics"],
      keywords='toric code quantum error correction cellular automaton',
      author='the toricca developers',
      license='BSD',
      packages=['toricca'],
      include_package_data=True,
      zip_safe=False,
      python_requires='>=3.8',
      install_requires=["numpy>=1.20", "numba>=0.57", "scipy", "joblib",
                        "PyYAML"],
      extras_require={"test": ["pytest"]},
      entry_points={"console_scripts": ["toricca = toricca.commands:main"]},
      package_data={'toricca': ['schema/*.json']},
      )
