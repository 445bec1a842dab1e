"""Values transcribed by hand from the published tables and displayed matrices.

Kept separate from the package data so the built-in case files can be
diffed against an independent transcription.
"""

from fractions import Fraction as F

TABLE_ADC = {
    1: (64, 48, 12),
    2: (48, 40, 11),
    3: (32, 32, 10),
    4: (16, 29, 9),
    5: (36, 33, 10),
    6: (24, 26, 9),
    7: (20, 25, 9),
}

# (a, d, c) as stated in the per-case text; only case 4 differs from the table.
TEXT_ADC = {**TABLE_ADC, 4: (16, 24, 9)}

QUASI_UNIPOTENT = {1: (1, -1), 2: (6, 1), 3: (4, 1), 4: (3, -1), 5: (6, 1), 6: (12, 1), 7: (10, 1)}

BETA = {
    1: ("1/2", "1/2", "1/2", "1/2", "1/2", "1/2"),
    2: ("1/2", "1/2", "1/2", "1/2", "1/3", "2/3"),
    3: ("1/2", "1/2", "1/2", "1/2", "1/4", "3/4"),
    4: ("1/2", "1/2", "1/2", "1/2", "1/6", "5/6"),
    5: ("1/2", "1/2", "1/3", "2/3", "1/3", "2/3"),
    6: ("1/2", "1/2", "1/3", "2/3", "1/4", "3/4"),
    7: ("1/2", "1/2", "1/5", "2/5", "3/5", "4/5"),
}

K = {
    1: [[0, 48, -12, 0, -1, -1], [-64, -144, 0, -1, 4, 5], [128, 208, -40, 3, -6, -10],
        [-64, -112, 0, -3, 4, 10], [0, 0, -12, 1, -1, -5], [0, 0, 0, 0, 0, 1]],
    2: [[0, 40, -11, 0, -1, -1], [-48, -120, 4, -1, 4, 5], [96, 168, -34, 3, -6, -10],
        [-48, -88, 4, -3, 4, 10], [0, 0, -11, 1, -1, -5], [0, 0, 0, 0, 0, 1]],
    3: [[0, 32, -10, 0, -1, -1], [-32, -96, 8, -1, 4, 5], [64, 128, -28, 3, -6, -10],
        [-32, -64, 8, -3, 4, 10], [0, 0, -10, 1, -1, -5], [0, 0, 0, 0, 0, 1]],
    4: [[0, 24, -9, 0, -1, -1], [-16, -72, 12, -1, 4, 5], [32, 88, -22, 3, -6, -10],
        [-16, -40, 12, -3, 4, 10], [0, 0, -9, 1, -1, -5], [0, 0, 0, 0, 0, 1]],
    5: [[0, 33, -10, 0, -1, -1], [-36, -99, 7, -1, 4, 5], [72, 135, -30, 3, -6, -10],
        [-36, -69, 7, -3, 4, 10], [0, 0, -10, 1, -1, -5], [0, 0, 0, 0, 0, 1]],
    6: [[0, 26, -9, 0, -1, -1], [-24, -78, 10, -1, 4, 5], [48, 102, -26, 3, -6, -10],
        [-24, -50, 10, -3, 4, 10], [0, 0, -9, 1, -1, -5], [0, 0, 0, 0, 0, 1]],
    7: [[0, 25, -9, 0, -1, -1], [-20, -75, 11, -1, 4, 5], [40, 95, -24, 3, -6, -10],
        [-20, -45, 11, -3, 4, 10], [0, 0, -9, 1, -1, -5], [0, 0, 0, 0, 0, 1]],
}

V = {
    1: (F(-1, 10), 0, 1, 0, F(-1162, 225), 0),
    2: (F(-1, 10), 0, 1, 0, F(-631, 150), 0),
    3: (F(-1, 11), 0, 1, 0, F(-277, 75), 0),
    4: (F(-1, 10), 0, 1, 0, F(-3041, 810), 0),
    5: (F(-1, 6), 0, 1, 0, F(-207, 40), 0),
    6: (F(-1, 6), 0, 1, 0, F(-472, 105), 0),
    7: (F(-1, 10), 0, 1, 0, F(-221, 60), 0),
}

# constant term first
CASE1_F = [1, -6, 15, -20, 15, -6, 1]
CASE1_G = [1, 6, 15, 20, 15, 6, 1]

CASE1_A5 = [
    ["98/3375", "916/3375", "304/225", "256/75", "64/15", "128/15"],
    ["-49/3375", "-458/3375", "-152/225", "-128/75", "-32/15", "-64/15"],
    ["49/16875", "458/16875", "152/1125", "128/375", "32/75", "64/75"],
    ["-49/202500", "-229/101250", "-38/3375", "-32/1125", "-8/225", "-16/225"],
    ["8477/12150000", "39617/6075000", "3287/101250", "1384/16875", "346/3375", "692/3375"],
    ["-8477/24300000", "-39617/12150000", "-3287/202500", "-692/16875", "-173/3375", "-346/3375"],
]

CASE1_C1 = [
    ["1", "458/225", "0", "128/5", "0", "64"],
    ["0", "1", "0", "0", "0", "0"],
    ["0", "229/1125", "1", "64/25", "0", "32/5"],
    ["0", "0", "0", "1", "0", "0"],
    ["0", "39617/810000", "0", "692/1125", "1", "346/225"],
    ["0", "0", "0", "0", "0", "1"],
]

CASE1_D5 = [
    ["-98/3375", "-916/3375", "-304/225", "-256/75", "-64/15", "-128/15"],
    ["-49/3375", "-458/3375", "-152/225", "-128/75", "-32/15", "-64/15"],
    ["-49/16875", "-458/16875", "-152/1125", "-128/375", "-32/75", "-64/75"],
    ["-49/202500", "-229/101250", "-38/3375", "-32/1125", "-8/225", "-16/225"],
    ["-8477/12150000", "-39617/6075000", "-3287/101250", "-1384/16875", "-346/3375", "-692/3375"],
    ["-8477/24300000", "-39617/12150000", "-3287/202500", "-692/16875", "-173/3375", "-346/3375"],
]
