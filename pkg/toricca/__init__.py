"""
Stochastic simulation of the dissipative toric code with a cellular-automaton
decoder field.

toricca unravels the dissipative dynamics into quantum-jump trajectories of a
Pauli frame on an L x L torus:

*  random sigma^x pair creation at rate gamma1 per edge
*  anyon hopping at rate gamma2 towards the maximum of a classical field
*  updates of that field at rate gamma3, a discretized diffusion sourced by
   the anyons

and measures anyon density, the circuit depth of a clustering decoder and the
logical error probability, up to the location of the self-correction
threshold and the gamma3 - gamma1 phase diagram.


Usage:
    from toricca import ExperimentPlan, run_ensemble

    plan = ExperimentPlan(trajectories=200, seed=7)
    point = run_ensemble(plan, L=8, gamma1=0.01, gamma3=10.0)
    print(point.final.p_eps.mean)

or from the shell:

    toricca ensemble -L 8 --gamma1 0.01 --gamma3 10 -N 200 --seed 7
"""

__version__ = "0.1.0"

# using __all__ for doc purposes only
__all__ = ['TorusGeometry', 'PauliFrame', 'CaField', 'RatesConfig',
           'ExperimentPlan', 'run_ensemble', 'locate_critical_gamma1',
           'phase_diagram']

from toricca.torus import TorusGeometry
from toricca.pauliframe import PauliFrame
from toricca.cafield import CaField
from toricca.jumps import RatesConfig
from toricca.harness import (ExperimentPlan, run_ensemble,
                             locate_critical_gamma1, phase_diagram)
