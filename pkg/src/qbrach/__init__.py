"""qbrach: matrix brachistochrone flows for 4x4 spinor systems.

Modules: matcore (Pauli-Kronecker algebra), cliffrep (spinor
representations), qbe (the matrix flow i d(H+F)/dt = [H,F]), propagate
(closed-form eigenframes and the mass classifier), angmom4 (the
angular-momentum toy system), scatter (matrix Compton kinematics),
frames (frame-equivalence identities), cli (command-line front end).
"""

__version__ = "1.0.0"
