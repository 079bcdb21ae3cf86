"""Target truth tables for the 2.7 a0 ring at 2 eV and 1e14 W/cm^2.

Rows follow INPUTS (00, 10, 01, 11); columns follow OUTPUTS
(H_I, H_II, H_R1, H_R2, L_z).
"""
from .logic import GateKind

TABLE_NO_PUMP = (
    (0, 0, 0, 0, 0),
    (1, 1, 1, 1, 0),
    (1, 1, 1, 1, 0),
    (1, 0, 1, 0, 1),
)
TABLE_PUMP_POSITIVE = (
    (1, 0, 1, 0, 1),
    (1, 1, 1, 0, 1),
    (1, 1, 1, 0, 1),
    (1, 0, 1, 0, 1),
)
TABLE_PUMP_NEGATIVE = (
    (1, 0, 1, 0, 1),
    (1, 1, 1, 0, 1),
    (1, 1, 1, 0, 0),
    (1, 1, 1, 1, 0),
)
TABLES = {0: TABLE_NO_PUMP, 1: TABLE_PUMP_POSITIVE, -1: TABLE_PUMP_NEGATIVE}

G = GateKind
GATES = {
    0: (G.OR, G.XOR, G.OR, G.XOR, G.AND),
    1: (G.BUFFER, G.XOR, G.BUFFER, G.RESET, G.BUFFER),
    -1: (G.BUFFER, G.OR, G.BUFFER, G.AND, G.UNCLASSIFIED),
}

HALF_ADDER = {(0, 0): (0, 0), (1, 0): (1, 0), (0, 1): (1, 0), (1, 1): (0, 1)}
