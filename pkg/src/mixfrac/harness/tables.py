"""Published error tables for the three examples, transcribed verbatim.

Each row is ``(value, E, CO, E_c, CO_c, E_energy, CO_energy)`` with ``None``
for the blank first-row orders.  ``value`` is N for temporal sweeps and M for
the spatial one.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["TableBlock", "PublishedTable", "TABLES", "COLUMNS"]

COLUMNS = ("value", "E", "CO", "E_c", "CO_c", "E_energy", "CO_energy")


@dataclass(frozen=True)
class TableBlock:
    params: dict
    rows: tuple[tuple, ...]
    advisory: bool = False


@dataclass(frozen=True)
class PublishedTable:
    name: str
    preset: str
    sweep: str
    fixed: dict
    kappa: tuple[float, float, float]
    blocks: tuple[TableBlock, ...]
    note: str = ""



_T1 = (
    TableBlock({'gamma': 0.9, 'delta': 0.5, 'alpha': 0.1}, (
        (20, 5.9025e-04, None, 8.8843e-04, None, 6.0193e-03, None),
        (40, 1.6894e-04, 1.8048, 2.5242e-04, 1.8154, 1.7212e-03, 1.8061),
        (80, 4.6971e-05, 1.8467, 6.9817e-05, 1.8542, 4.7814e-04, 1.8479),
        (160, 1.2632e-05, 1.8946, 1.8718e-05, 1.8992, 1.2851e-04, 1.8955),
        (320, 3.1565e-06, 2.0008, 4.6796e-06, 2.0000, 3.2080e-05, 2.0022),
    )),
    TableBlock({'gamma': 0.1, 'delta': 0.9, 'alpha': 0.5}, (
        (20, 1.5857e-03, None, 2.3081e-03, None, 1.6099e-02, None),
        (40, 4.0536e-04, 1.9679, 5.8994e-04, 1.9681, 4.1154e-03, 1.9679),
        (80, 1.0267e-04, 1.9811, 1.4942e-04, 1.9812, 1.0423e-03, 1.9813),
        (160, 2.5681e-05, 1.9993, 3.7382e-05, 1.9990, 2.6069e-04, 1.9993),
        (320, 6.2007e-06, 2.0502, 9.0376e-06, 2.0483, 6.2933e-05, 2.0504),
    )),
    TableBlock({'gamma': 0.5, 'delta': 0.1, 'alpha': 0.9}, (
        (20, 1.3755e-03, None, 1.9881e-03, None, 1.3948e-02, None),
        (40, 3.4526e-04, 1.9943, 4.9838e-04, 1.9961, 3.4999e-03, 1.9947),
        (80, 8.6350e-05, 1.9994, 1.2455e-04, 2.0006, 8.7517e-04, 1.9997),
        (160, 2.1402e-05, 2.0124, 3.0848e-05, 2.0134, 2.1691e-04, 2.0125),
        (320, 5.1218e-06, 2.0630, 7.3761e-06, 2.0642, 5.1871e-05, 2.0641),
    )),
)

_T2 = (
    TableBlock({'gamma': [0.5, 0.3, 0.1], 'delta': [0.9, 0.5, 0.1], 'alpha': 0.6}, (
        (20, 7.0665e-04, None, 1.0626e-03, None, 9.6255e-03, None),
        (40, 1.8162e-04, 1.9601, 2.7221e-04, 1.9648, 2.4732e-03, 1.9605),
        (80, 4.6164e-05, 1.9761, 6.9025e-05, 1.9796, 6.2847e-04, 1.9764),
        (160, 1.1543e-05, 1.9997, 1.7220e-05, 2.0030, 1.5712e-04, 2.0000),
        (320, 2.7479e-06, 2.0706, 4.0830e-06, 2.0764, 3.7383e-05, 2.0714),
    )),
    TableBlock({'gamma': [0.4, 0.3, 0.2], 'delta': [0.9, 0.8, 0.7], 'alpha': 0.5}, (
        (20, 7.0665e-04, None, 1.0626e-03, None, 9.6255e-03, None),
        (40, 1.8162e-04, 1.9601, 2.7221e-04, 1.9648, 2.4732e-03, 1.9605),
        (80, 4.6164e-05, 1.9761, 6.9025e-05, 1.9796, 6.2847e-04, 1.9764),
        (160, 1.1543e-05, 1.9997, 1.7220e-05, 2.0030, 1.5712e-04, 2.0000),
        (320, 2.7479e-06, 2.0706, 4.0830e-06, 2.0764, 3.7383e-05, 2.0714),
    ), advisory=True),
    TableBlock({'gamma': [0.8, 0.7, 0.6], 'delta': [0.3, 0.2, 0.1], 'alpha': 0.9}, (
        (20, 3.6326e-04, None, 6.4096e-04, None, 5.0473e-03, None),
        (40, 1.0889e-04, 1.7382, 1.8422e-04, 1.7988, 1.5037e-03, 1.7470),
        (80, 3.0640e-05, 1.8293, 5.0459e-05, 1.8683, 4.2165e-04, 1.8344),
        (160, 8.2569e-06, 1.8918, 1.3344e-05, 1.9189, 1.1337e-04, 1.8951),
        (320, 2.1011e-06, 1.9745, 3.3467e-06, 1.9954, 2.8795e-05, 1.9771),
    )),
)

_T3 = (
    TableBlock({'gamma': 0.9, 'delta': 0.5, 'alpha': 0.1}, (
        (10, 4.4024e-04, None, 8.8048e-04, None, 1.9559e-03, None),
        (20, 1.1770e-04, 1.9031, 2.3541e-04, 1.9031, 5.2294e-04, 1.9031),
        (40, 3.1073e-05, 1.9214, 6.2146e-05, 1.9214, 1.3805e-04, 1.9214),
        (80, 7.9946e-06, 1.9586, 1.5989e-05, 1.9586, 3.5519e-05, 1.9586),
        (160, 1.8990e-06, 2.0738, 3.7981e-06, 2.0738, 8.4372e-06, 2.0738),
    )),
    TableBlock({'gamma': 0.1, 'delta': 0.9, 'alpha': 0.5}, (
        (10, 1.3004e-03, None, 2.6008e-03, None, 5.7775e-03, None),
        (20, 3.2739e-04, 1.9898, 6.5479e-04, 1.9898, 1.4546e-03, 1.9898),
        (40, 8.2798e-05, 1.9834, 1.6560e-04, 1.9834, 3.6786e-04, 1.9834),
        (80, 2.0730e-05, 1.9979, 4.1460e-05, 1.9979, 9.2101e-05, 1.9979),
        (160, 5.0397e-06, 2.0403, 1.0079e-05, 2.0403, 2.2391e-05, 2.0403),
    )),
    TableBlock({'gamma': 0.5, 'delta': 0.1, 'alpha': 0.9}, (
        (10, 1.4239e-03, None, 2.8478e-03, None, 6.3262e-03, None),
        (20, 3.7347e-04, 1.9308, 7.4693e-04, 1.9308, 1.6593e-03, 1.9308),
        (40, 9.5757e-05, 1.9635, 1.9151e-04, 1.9635, 4.2544e-04, 1.9635),
        (80, 2.4281e-05, 1.9795, 4.8562e-05, 1.9795, 1.0788e-04, 1.9795),
        (160, 6.0565e-06, 2.0033, 1.2113e-05, 2.0033, 2.6908e-05, 2.0033),
    )),
)

_T4 = (
    TableBlock({'gamma': 0.9, 'delta': 0.5, 'alpha': 0.1}, (
        (10, 2.0708e-03, None, 4.1416e-03, None, 9.1625e-03, None),
        (20, 5.1741e-04, 2.0008, 1.0348e-03, 2.0008, 2.2964e-03, 1.9964),
        (40, 1.2925e-04, 2.0012, 2.5850e-04, 2.0012, 5.7408e-04, 2.0000),
        (80, 3.2220e-05, 2.0041, 6.4439e-05, 2.0041, 1.4314e-04, 2.0039),
        (160, 7.9632e-06, 2.0165, 1.5926e-05, 2.0165, 3.5379e-05, 2.0164),
    )),
    TableBlock({'gamma': 0.1, 'delta': 0.9, 'alpha': 0.5}, (
        (10, 2.0384e-03, None, 4.0768e-03, None, 9.0192e-03, None),
        (20, 5.0917e-04, 2.0012, 1.0183e-03, 2.0012, 2.2598e-03, 1.9968),
        (40, 1.2705e-04, 2.0027, 2.5410e-04, 2.0027, 5.6432e-04, 2.0016),
        (80, 3.1533e-05, 2.0104, 6.3067e-05, 2.0104, 1.4009e-04, 2.0102),
        (160, 7.6549e-06, 2.0424, 1.5310e-05, 2.0424, 3.4009e-05, 2.0424),
    )),
    TableBlock({'gamma': 0.5, 'delta': 0.1, 'alpha': 0.9}, (
        (10, 1.0515e-03, None, 2.1030e-03, None, 4.6525e-03, None),
        (20, 2.6300e-04, 1.9993, 5.2600e-04, 1.9993, 1.1673e-03, 1.9949),
        (40, 6.5545e-05, 2.0045, 1.3109e-04, 2.0045, 2.9113e-04, 2.0034),
        (80, 1.6161e-05, 2.0200, 3.2321e-05, 2.0200, 7.1795e-05, 2.0197),
        (160, 3.8131e-06, 2.0834, 7.6262e-06, 2.0834, 1.6941e-05, 2.0834),
    )),
)


TABLES: dict[str, PublishedTable] = {
    "table1": PublishedTable("table1", "ex1", "temporal", {"M": 4000}, (2, 4, 6), _T1),
    "table2": PublishedTable("table2", "ex2", "temporal", {"M": 7000}, (6, 2, 4), _T2,
                         "blocks 1 and 2 carry identical numbers; block 2 is advisory"),
    "table3": PublishedTable("table3", "ex3b", "temporal", {"M": 1000}, (1, 3, 5), _T3),
    "table4": PublishedTable("table4", "ex3b", "spatial", {"N": 600}, (5, 3, 1), _T4),
}
