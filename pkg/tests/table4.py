"""Published 985-study results table, transcribed verbatim.

Per DMU: robust-measure optimal slacks for the three outputs (nsa, sb,
hp), then the three efficiency columns (robust, closest, russell).
"""

TABLE4 = {
    "PKU":   ((0, -24.2421, -3107.3474), 0.725, 0.9964, 0.9429),
    "RUC":   ((0.3645, -2.1787, 0), 0.7676, 0.4916, 0.3891),
    "TSU":   ((-63.7507, -35.766, -1037.8366), 0.6733, 1, 1),
    "BUAA":  ((-38.1212, 0, -1816.0303), 0.6165, 1, 1),
    "BIT":   ((-4.099, -2.099, -26.471), 0.9252, 0.7336, 0.5784),
    "CAU":   ((8.8751, 2.7671, 0), 0.8191, 0.8735, 0.5513),
    "BNU":   ((0, -26, -812), 0.6618, 1, 1),
    "CUN":   ((0.8908, -8.1092, 0), 0.6381, 1, 1),
    "NKU":   ((18, 0, 48.4), 0.5685, 0.6967, 0.2931),
    "TU":    ((0, 8.6316, -1193.7895), 0.6499, 0.995, 0.883),
    "DUST":  ((14.1818, 0, -326.4545), 0.8243, 0.811, 0.4497),
    "NEU":   ((-0.2637, -13.9337, 106.7898), 0.8285, 1, 1),
    "JLU":   ((-38.0924, 3.9076, 0), 0.7636, 0.2843, 0.1121),
    "HIT":   ((8.8182, 0, -3950.5455), 0.78, 1, 1),
    "FDU":   ((0, -20.4947, -3902.2316), 0.6915, 1, 1),
    "TJU":   ((0, 0.4526, 676.0842), 0.8778, 0.7106, 0.5126),
    "SJTU":  ((-24.0378, -11.75, -2887.1947), 0.7667, 1, 1),
    "ECNU":  ((7.1204, 4.1204, 0), 0.7256, 0.7507, 0.4186),
    "NJU":   ((7, 0, -2152.2), 0.6913, 0.9495, 0.4605),
    "SEU":   ((20.0056, -8.9944, 0), 0.5495, 0.8267, 0.3701),
    "ZJU":   ((-89, 0, -5542.4), 0.6244, 0.9648, 0.4046),
    "USTC":  ((0, 0.8632, -1365.9789), 0.767, 0.8308, 0.1662),
    "XMU":   ((-1.9763, 0.5661, -518.537), 0.821, 1, 1),
    "SDU":   ((0, 7.5368, 376.3789), 0.8099, 0.5123, 0.203),
    "OUC":   ((0, 0.7368, -1452.4211), 0.651, 1, 1),
    "WHU":   ((0, 0, 0), 1, 1, 1),
    "HUST":  ((-11.4678, -1.4678, -884.8029), 0.8548, 0.7134, 0.5072),
    "HNU":   ((-8.3174, 1.6826, -17.4638), 0.8408, 0.6431, 0.4744),
    "CSU":   ((-59.4986, 4.5014, 0), 0.7588, 0.7707, 0.4232),
    "SYSU":  ((8, 0, 433.4), 0.8922, 0.5296, 0.3481),
    "SCUT":  ((11.6673, 0.516, 0), 0.8855, 0.7443, 0.4315),
    "CQU":   ((0, 0, 0), 1, 1, 1),
    "SCU":   ((56.1262, -11.9246, 0), 0.7345, 0.8447, 0.6497),
    "UESTC": ((0, 0, -571.2), 0.9184, 0.7814, 0.4932),
    "XJTU":  ((6.8653, -0.9415, -412.3836), 0.8983, 0.9705, 0.7387),
    "NPU":   ((0.9091, 0, 390.7273), 0.8375, 0.5194, 0.2194),
    "NAFU":  ((0, 0, 257), 0.8421, 0.3036, 0.19),
    "LZU":   ((0.1363, 5.3842, 0), 0.6249, 0.6924, 0.1477),
}

# Spanning membership of the 14 facets (facet id -> member names).
TABLE3 = {
    1: {"CQU", "WHU", "OUC", "CUN"},
    2: {"CQU", "WHU", "OUC", "BUAA"},
    3: {"CQU", "OUC", "CUN", "XMU"},
    4: {"CQU", "OUC", "BUAA", "XMU"},
    5: {"CQU", "WHU", "CUN", "NEU"},
    6: {"CQU", "WHU", "BUAA", "NEU"},
    7: {"CQU", "CUN", "XMU", "NEU"},
    8: {"CQU", "BUAA", "XMU", "NEU"},
    9: {"WHU", "OUC", "CUN", "HIT"},
    10: {"WHU", "OUC", "HIT", "BUAA"},
    11: {"OUC", "CUN", "HIT", "BNU"},
    12: {"WHU", "CUN", "HIT", "BNU"},
    13: {"WHU", "HIT", "BNU", "SJTU"},
    14: {"HIT", "BNU", "SJTU", "FDU"},
}
