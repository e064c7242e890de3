"""Published reference values, embedded verbatim for comparison.

Table 1 lists upper bounds on packing densities in R^n; Table 2 lists
improvement factors over the Cohn-Zhao inequality for angles 61..90 degrees.
"""

TABLE1_COLUMNS = ("Rogers", "Levenshtein79", "K.-L.", "Cohn-Zhao", "C.-Z.+L79", "New bound")
# columns the package does not recompute
REFERENCE_ONLY = ("Rogers", "Levenshtein79", "K.-L.", "Cohn-Zhao")

TABLE1 = {
    12: (8.759e-2, 1.065e-1, 1.038e0, 9.666e-1, 3.253e-1, 1.228e-1),
    24: (2.456e-3, 3.420e-3, 2.930e-2, 2.637e-2, 8.464e-3, 3.194e-3),
    36: (5.527e-5, 8.109e-5, 5.547e-4, 4.951e-4, 1.610e-4, 6.035e-5),
    48: (1.128e-6, 1.643e-6, 8.745e-6, 7.649e-6, 2.534e-6, 9.487e-7),
    60: (2.173e-8, 3.009e-8, 1.223e-7, 1.046e-7, 3.521e-8, 1.317e-8),
    72: (4.039e-10, 5.135e-10, 1.550e-9, 1.322e-9, 4.496e-10, 1.678e-10),
    84: (7.315e-12, 8.312e-12, 1.850e-11, 1.574e-11, 5.381e-12, 2.007e-12),
    96: (1.300e-13, 1.291e-13, 2.111e-13, 1.786e-13, 6.101e-14, 2.273e-14),
    108: (2.277e-15, 1.937e-15, 2.320e-15, 1.942e-15, 6.662e-16, 2.480e-16),
    120: (3.940e-17, 2.826e-17, 2.452e-17, 2.051e-17, 7.058e-18, 2.626e-18),
}

TABLE2_ANGLES = tuple(range(61, 91))

TABLE2 = {
    4: (.942, .889, .839, .793, .750, .711, .674, .640, .608, .578, .550, .524, .500, .477, .456, .436, .417, .399, .392, .396, .400, .405, .409, .413, .416, .418, .420, .420, .420, .419),
    5: (.928, .863, .803, .748, .698, .653, .611, .572, .537, .504, .474, .446, .420, .400, .374, .371, .377, .382, .387, .392, .396, .401, .404, .408, .410, .412, .412, .412, .411, .408),
    6: (.915, .838, .768, .706, .650, .599, .553, .512, .474, .439, .408, .385, .389, .393, .397, .368, .374, .379, .384, .389, .393, .398, .401, .404, .406, .407, .407, .406, .404, .401),
    7: (.901, .813, .735, .666, .605, .550, .501, .457, .418, .395, .373, .378, .383, .388, .391, .395, .371, .377, .382, .387, .391, .395, .398, .401, .403, .404, .403, .402, .400, .396),
    8: (.888, .789, .704, .629, .563, .505, .454, .409, .394, .394, .393, .373, .378, .383, .387, .391, .369, .374, .380, .385, .389, .393, .396, .399, .400, .401, .401, .399, .396, .392),
    9: (.874, .766, .673, .593, .524, .464, .411, .389, .391, .392, .392, .391, .373, .378, .383, .387, .391, .372, .378, .383, .387, .391, .394, .397, .398, .399, .398, .397, .394, .389),
    10: (.862, .744, .644, .560, .488, .426, .382, .386, .389, .390, .391, .391, .389, .374, .379, .384, .388, .371, .376, .381, .385, .389, .393, .395, .397, .397, .397, .395, .391, .387),
    11: (.849, .722, .617, .528, .454, .391, .378, .382, .386, .388, .390, .390, .389, .370, .376, .380, .385, .369, .374, .379, .384, .388, .391, .394, .395, .396, .395, .393, .390, .385),
    12: (.836, .701, .590, .498, .422, .384, .387, .379, .383, .386, .388, .389, .389, .387, .372, .377, .382, .386, .373, .378, .383, .387, .390, .393, .394, .395, .394, .392, .388, .384),
    13: (.824, .681, .565, .470, .393, .380, .384, .375, .380, .383, .386, .388, .388, .387, .385, .375, .380, .384, .371, .376, .381, .385, .389, .392, .393, .394, .393, .391, .387, .382),
    14: (.811, .661, .540, .444, .387, .376, .380, .384, .377, .381, .384, .387, .388, .387, .386, .372, .377, .382, .370, .375, .380, .384, .388, .391, .392, .393, .392, .390, .386, .381),
    15: (.799, .642, .517, .419, .386, .386, .377, .381, .384, .378, .382, .385, .387, .387, .386, .370, .375, .380, .384, .374, .379, .383, .387, .390, .391, .392, .391, .389, .385, .380),
    16: (.788, .623, .495, .395, .385, .386, .384, .378, .382, .376, .380, .383, .386, .386, .386, .384, .373, .378, .382, .373, .378, .382, .386, .389, .391, .391, .390, .388, .385, .380),
    17: (.776, .605, .474, .381, .384, .385, .385, .375, .380, .383, .378, .382, .384, .386, .386, .384, .371, .376, .381, .371, .377, .381, .385, .388, .390, .391, .390, .388, .384, .379),
    18: (.764, .587, .453, .378, .382, .384, .385, .383, .377, .381, .376, .380, .383, .385, .385, .384, .382, .374, .379, .370, .376, .380, .384, .387, .389, .390, .389, .387, .383, .378),
    19: (.753, .570, .434, .383, .380, .383, .384, .384, .375, .379, .373, .378, .382, .384, .385, .384, .382, .373, .378, .369, .375, .379, .383, .387, .389, .389, .389, .387, .383, .378),
    20: (.742, .553, .415, .381, .377, .381, .383, .384, .382, .377, .381, .376, .380, .383, .385, .384, .383, .371, .376, .381, .374, .379, .383, .386, .388, .389, .388, .386, .382, .377),
    21: (.731, .537, .397, .379, .382, .379, .382, .383, .383, .375, .379, .374, .379, .382, .384, .384, .383, .369, .375, .379, .373, .378, .382, .385, .388, .388, .388, .386, .382, .377),
    22: (.720, .522, .383, .376, .380, .377, .381, .383, .383, .381, .377, .381, .377, .381, .383, .384, .383, .380, .373, .378, .372, .377, .381, .385, .387, .388, .388, .385, .382, .376),
    23: (.709, .506, .383, .382, .375, .381, .379, .382, .383, .382, .375, .379, .376, .380, .382, .384, .383, .381, .372, .377, .371, .376, .381, .384, .387, .388, .387, .385, .381, .376),
    24: (.699, .492, .382, .382, .376, .380, .377, .381, .382, .382, .373, .378, .374, .378, .381, .383, .383, .381, .371, .376, .370, .375, .380, .384, .386, .387, .387, .385, .381, .375),
    25: (.688, .477, .381, .382, .381, .378, .375, .379, .382, .382, .380, .376, .372, .377, .381, .383, .383, .381, .370, .375, .369, .374, .379, .383, .386, .387, .387, .384, .380, .375),
    26: (.678, .463, .379, .381, .381, .376, .380, .378, .381, .382, .381, .375, .379, .376, .380, .382, .383, .382, .379, .374, .369, .374, .379, .383, .385, .387, .386, .384, .380, .375),
    27: (.668, .450, .377, .380, .381, .380, .378, .376, .380, .381, .381, .373, .377, .375, .379, .381, .382, .382, .379, .373, .378, .373, .378, .382, .385, .386, .386, .384, .380, .375),
    28: (.658, .437, .380, .379, .381, .381, .376, .375, .378, .381, .381, .379, .376, .373, .378, .381, .382, .382, .379, .372, .377, .373, .372, .382, .384, .386, .386, .384, .380, .375),
    29: (.648, .424, .379, .378, .380, .381, .375, .379, .377, .380, .381, .380, .375, .372, .377, .380, .382, .382, .380, .371, .376, .372, .377, .381, .384, .386, .385, .384, .380, .374),
    30: (.639, .411, .377, .376, .379, .381, .379, .377, .376, .379, .381, .380, .373, .378, .376, .379, .381, .382, .380, .370, .375, .372, .377, .381, .384, .385, .385, .383, .379, .374),
    31: (.629, .400, .379, .379, .378, .380, .380, .376, .374, .378, .380, .380, .372, .377, .374, .378, .381, .382, .380, .369, .374, .371, .376, .380, .383, .385, .385, .383, .379, .374),
    32: (.620, .388, .380, .377, .377, .380, .380, .374, .378, .377, .380, .380, .378, .375, .373, .378, .380, .381, .380, .377, .374, .370, .376, .380, .383, .385, .385, .383, .379, .374),
    33: (.611, .379, .380, .376, .375, .379, .380, .378, .377, .376, .379, .380, .379, .374, .372, .377, .380, .381, .380, .371, .373, .370, .375, .379, .383, .384, .385, .383, .379, .374),
    34: (.602, .378, .380, .379, .378, .378, .380, .379, .376, .375, .378, .380, .379, .373, .371, .376, .379, .381, .380, .378, .372, .369, .375, .379, .382, .384, .384, .383, .379, .374),
    35: (.593, .377, .379, .379, .377, .377, .379, .379, .375, .374, .378, .380, .379, .372, .376, .375, .379, .381, .380, .378, .371, .369, .374, .379, .382, .384, .384, .382, .379, .373),
    36: (.584, .375, .379, .379, .376, .375, .378, .379, .373, .377, .377, .379, .379, .377, .376, .374, .378, .380, .380, .378, .371, .376, .374, .378, .382, .384, .384, .382, .379, .373),
    37: (.575, .378, .378, .379, .374, .374, .378, .379, .378, .376, .376, .379, .379, .378, .375, .373, .377, .380, .380, .379, .370, .375, .373, .378, .381, .384, .384, .382, .379, .373),
    38: (.567, .376, .376, .379, .378, .377, .377, .379, .378, .375, .375, .378, .379, .378, .374, .373, .377, .380, .380, .379, .369, .375, .373, .378, .381, .383, .384, .382, .378, .373),
    39: (.559, .375, .375, .378, .379, .376, .376, .378, .378, .374, .374, .377, .379, .378, .373, .372, .376, .379, .380, .379, .376, .374, .372, .377, .381, .383, .384, .382, .378, .373),
    40: (.550, .378, .377, .377, .379, .375, .375, .378, .379, .373, .373, .377, .379, .378, .372, .376, .376, .379, .380, .379, .376, .374, .372, .377, .381, .383, .383, .382, .378, .373),
    41: (.542, .379, .376, .376, .378, .377, .377, .377, .378, .377, .376, .376, .378, .379, .376, .376, .375, .378, .380, .379, .376, .373, .372, .376, .380, .383, .383, .382, .378, .373),
    42: (.534, .378, .375, .375, .378, .378, .376, .376, .378, .377, .375, .375, .378, .379, .377, .375, .374, .378, .380, .379, .376, .372, .371, .376, .380, .382, .383, .382, .378, .373),
    43: (.526, .378, .378, .374, .377, .378, .375, .375, .378, .378, .374, .374, .378, .379, .377, .374, .374, .377, .379, .379, .377, .372, .371, .376, .380, .382, .383, .381, .378, .373),
    44: (.518, .377, .378, .376, .377, .378, .374, .374, .377, .378, .373, .373, .377, .378, .377, .373, .373, .377, .379, .379, .377, .371, .370, .375, .379, .382, .383, .381, .378, .372),
    45: (.510, .377, .378, .375, .376, .378, .377, .373, .377, .378, .372, .372, .376, .378, .378, .372, .372, .376, .379, .379, .377, .371, .370, .375, .379, .382, .383, .381, .378, .372),
    46: (.503, .376, .378, .374, .375, .378, .377, .376, .376, .378, .376, .376, .376, .378, .378, .372, .371, .376, .379, .379, .377, .370, .370, .375, .379, .382, .382, .381, .378, .372),
    47: (.495, .374, .377, .377, .374, .377, .377, .375, .376, .378, .377, .375, .375, .378, .378, .371, .371, .375, .378, .379, .377, .370, .369, .375, .379, .381, .382, .381, .378, .372),
    48: (.488, .376, .377, .377, .376, .376, .377, .374, .375, .377, .377, .374, .374, .377, .378, .376, .375, .375, .378, .379, .378, .369, .369, .374, .378, .381, .382, .381, .378, .372),
    49: (.481, .375, .376, .377, .375, .376, .377, .373, .374, .377, .377, .373, .374, .377, .378, .376, .374, .374, .378, .379, .378, .369, .374, .374, .378, .381, .382, .381, .377, .372),
    50: (.474, .374, .375, .377, .374, .375, .377, .376, .373, .377, .377, .372, .373, .377, .378, .376, .374, .374, .377, .379, .378, .374, .374, .374, .378, .381, .382, .381, .377, .372),
    60: (.408, .375, .376, .376, .374, .376, .374, .375, .376, .373, .374, .376, .376, .374, .375, .377, .376, .373, .374, .377, .378, .376, .370, .371, .376, .379, .381, .380, .377, .371),
    70: (.376, .374, .376, .375, .375, .373, .375, .375, .372, .375, .375, .372, .375, .375, .373, .374, .376, .375, .373, .374, .377, .377, .374, .369, .374, .378, .380, .379, .376, .371),
    80: (.375, .374, .374, .374, .374, .374, .374, .373, .375, .373, .375, .374, .372, .375, .375, .373, .375, .376, .373, .371, .375, .377, .375, .370, .372, .377, .379, .379, .376, .371),
    90: (.373, .374, .374, .374, .373, .374, .373, .374, .372, .374, .373, .374, .374, .372, .375, .374, .372, .375, .375, .371, .373, .376, .376, .372, .371, .375, .378, .379, .376, .370),
    100: (.373, .374, .373, .373, .374, .372, .374, .372, .374, .372, .374, .373, .374, .373, .373, .374, .371, .373, .375, .373, .371, .375, .376, .373, .369, .374, .378, .378, .376, .370),
    110: (.372, .372, .374, .373, .372, .374, .372, .374, .372, .373, .372, .374, .372, .374, .372, .374, .374, .370, .374, .374, .371, .373, .375, .374, .371, .373, .377, .378, .375, .370),
    120: (.373, .373, .373, .373, .373, .372, .373, .372, .373, .373, .373, .373, .373, .373, .373, .371, .374, .372, .373, .374, .372, .372, .375, .374, .370, .373, .376, .377, .375, .370),
    130: (.373, .373, .372, .372, .373, .373, .372, .373, .373, .371, .373, .373, .373, .372, .373, .370, .373, .373, .371, .374, .373, .370, .374, .375, .371, .372, .376, .377, .375, .370),
}


def table1(n: int, column: str) -> float:
    return TABLE1[n][TABLE1_COLUMNS.index(column)]


def table2(n: int, theta_deg: int) -> float:
    return TABLE2[n][TABLE2_ANGLES.index(theta_deg)]
