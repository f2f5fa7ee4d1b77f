"""Exact computer algebra for the Sergeev superalgebra H^c_r, the queer
Schur superalgebra Q(n,r), and the degreewise realization of U(q_n).
"""

from qschur.scalars import EPS, GaussianRational

__version__ = "0.1.0"

__all__ = ["EPS", "GaussianRational", "__version__"]
