"""Arrow data of the invariant module diagrams.

An arrow (i, j[, k/pm]) -> (i-1, j'[, ...]) records that the lowering part
of the stabiliser algebra maps the source module into the target module.
Diagrams are stored for the generic dimension; at a given n they are
restricted to the modules that actually occur there (low-dimension
exclusions simply remove nodes and their arrows).
"""

from __future__ import annotations

from .modules import ModuleKey

# --- null-line (sim) diagrams ----------------------------------------------

G_SIM = [
    ((1, 0), (0, 1)),
    ((1, 0), (0, 0)),
    ((0, 1), (-1, 0)),
    ((0, 0), (-1, 0)),
]

F_SIM = [
    ((2, 0), (1, 0)),
    ((1, 0), (0, 1)),
    ((1, 0), (0, 0)),
    ((0, 1), (-1, 0)),
    ((0, 0), (-1, 0)),
    ((-1, 0), (-2, 0)),
]

A_SIM = [
    ((2, 0), (1, 1)),
    ((2, 0), (1, 2)),
    ((2, 0), (1, 0)),
    ((1, 1), (0, 2)),
    ((1, 1), (0, 0)),
    ((1, 1), (0, 1)),
    ((1, 2), (0, 2)),
    ((1, 2), (0, 0)),
    ((1, 2), (0, 1)),
    ((1, 0), (0, 0)),
    ((1, 0), (0, 1)),
    ((0, 2), (-1, 1)),
    ((0, 2), (-1, 2)),
    ((0, 0), (-1, 0)),
    ((0, 0), (-1, 1)),
    ((0, 0), (-1, 2)),
    ((0, 1), (-1, 0)),
    ((0, 1), (-1, 1)),
    ((0, 1), (-1, 2)),
    ((-1, 1), (-2, 0)),
    ((-1, 2), (-2, 0)),
    ((-1, 0), (-2, 0)),
]

A_SIM6 = [
    ((-1, 0), (-2, 0)),
    ((-1, 1, "+"), (-2, 0)),
    ((-1, 1, "-"), (-2, 0)),
    ((-1, 2), (-2, 0)),
    ((0, 0), (-1, 0)),
    ((0, 1), (-1, 0)),
    ((0, 0), (-1, 1, "+")),
    ((0, 1), (-1, 1, "+")),
    ((0, 2, "+"), (-1, 1, "+")),
    ((0, 2, "-"), (-1, 1, "-")),
    ((0, 0), (-1, 1, "-")),
    ((0, 1), (-1, 1, "-")),
    ((0, 0), (-1, 2)),
    ((0, 1), (-1, 2)),
    ((0, 2, "+"), (-1, 2)),
    ((0, 2, "-"), (-1, 2)),
    ((1, 0), (0, 0)),
    ((1, 0), (0, 1)),
    ((1, 1, "+"), (0, 0)),
    ((1, 1, "+"), (0, 1)),
    ((1, 1, "-"), (0, 0)),
    ((1, 1, "-"), (0, 1)),
    ((1, 2), (0, 0)),
    ((1, 2), (0, 1)),
    ((1, 2), (0, 2, "+")),
    ((1, 1, "-"), (0, 2, "-")),
    ((1, 2), (0, 2, "-")),
    ((1, 1, "+"), (0, 2, "+")),
    ((2, 0), (1, 0)),
    ((2, 0), (1, 1, "+")),
    ((2, 0), (1, 1, "-")),
    ((2, 0), (1, 2)),
]

C_SIM = [
    ((2, 0), (1, 1)),
    ((2, 0), (1, 0)),
    ((1, 1), (0, 3)),
    ((1, 1), (0, 2)),
    ((1, 1), (0, 1)),
    ((1, 0), (0, 2)),
    ((1, 0), (0, 1)),
    ((1, 0), (0, 0)),
    ((0, 3), (-1, 1)),
    ((0, 2), (-1, 1)),
    ((0, 2), (-1, 0)),
    ((0, 1), (-1, 1)),
    ((0, 1), (-1, 0)),
    ((0, 0), (-1, 0)),
    ((-1, 1), (-2, 0)),
    ((-1, 0), (-2, 0)),
]

C_SIM6 = [
    ((-1, 0), (-2, 0)),
    ((-1, 1, "-"), (-2, 0)),
    ((-1, 1, "+"), (-2, 0)),
    ((0, 1, "+"), (-1, 0)),
    ((0, 1, "-"), (-1, 0)),
    ((0, 0), (-1, 0)),
    ((0, 2), (-1, 0)),
    ((0, 3, "-"), (-1, 1, "-")),
    ((0, 1, "-"), (-1, 1, "-")),
    ((0, 2), (-1, 1, "-")),
    ((0, 1, "+"), (-1, 1, "+")),
    ((0, 3, "+"), (-1, 1, "+")),
    ((0, 2), (-1, 1, "+")),
    ((1, 0), (0, 0)),
    ((1, 1, "-"), (0, 1, "-")),
    ((1, 1, "+"), (0, 1, "+")),
    ((1, 0), (0, 2)),
    ((1, 1, "-"), (0, 2)),
    ((1, 1, "+"), (0, 2)),
    ((1, 1, "-"), (0, 3, "-")),
    ((1, 1, "+"), (0, 3, "+")),
    ((1, 0), (0, 1, "-")),
    ((1, 0), (0, 1, "+")),
    ((1, 0), (0, 2)),
    ((2, 0), (1, 0)),
    ((2, 0), (1, 1, "-")),
    ((2, 0), (1, 1, "+")),
]

# --- Robinson (rob) diagrams -----------------------------------------------

G_ROB = [
    ((1, 0, 0), (0, 1, 1)),
    ((1, 0, 0), (0, 1, 2)),
    ((1, 0, 0), (0, 1, 0)),
    ((1, 0, 0), (0, 1, 3)),
    ((1, 0, 0), (0, 0, 0)),
    ((1, 0, 1), (0, 1, 3)),
    ((1, 0, 1), (0, 0, 0)),
    ((0, 1, 2), (-1, 0, 0)),
    ((0, 1, 1), (-1, 0, 0)),
    ((0, 1, 0), (-1, 0, 0)),
    ((0, 1, 3), (-1, 0, 1)),
    ((0, 1, 3), (-1, 0, 0)),
    ((0, 0, 0), (-1, 0, 0)),
    ((0, 0, 0), (-1, 0, 1)),
]

F_ROB = [
    ((2, 0, 0), (1, 0, 0)),
    ((2, 0, 0), (1, 0, 1)),
    ((1, 0, 0), (0, 0, 0)),
    ((1, 0, 0), (0, 1, 3)),
    ((1, 0, 0), (0, 1, 0)),
    ((1, 0, 0), (0, 1, 1)),
    ((1, 0, 1), (0, 0, 0)),
    ((1, 0, 1), (0, 1, 2)),
    ((1, 0, 1), (0, 1, 3)),
    ((0, 1, 1), (-1, 0, 0)),
    ((0, 1, 0), (-1, 0, 0)),
    ((0, 1, 3), (-1, 0, 0)),
    ((0, 1, 3), (-1, 0, 1)),
    ((0, 1, 2), (-1, 0, 1)),
    ((0, 0, 0), (-1, 0, 1)),
    ((0, 0, 0), (-1, 0, 0)),
    ((-1, 0, 0), (-2, 0, 0)),
    ((-1, 0, 1), (-2, 0, 0)),
]

_A_ROB_NODES = {
    "s33": [(2, 0, 0)],
    "s32": [(2, 0, 1)],
    "s31": [(1, 2, 1)],
    "s30": [(1, 2, 0)],
    "s29": [(1, 2, 3)],
    "s28": [(1, 2, 2)],
    "s27": [(1, 1, 1)],
    "s26": [(1, 1, 0)],
    "s25": [(1, 1, 3)],
    "s24": [(1, 1, 2)],
    "s23": [(1, 0, 0)],
    "s22": [(0, 2, 3)],
    "s21": [(0, 2, 2)],
    "s20": [(0, 2, 1)],
    "s19": [(0, 2, 9)],
    "s18": [(0, 2, 8)],
    "s17": [(0, 2, 7)],
    "s16": [(0, 2, 6)],
    "s15": [(0, 2, 0)],
    "s14": [(0, 2, 5)],
    "s13": [(0, 2, 4)],
    "s12": [(0, 0, 0), (0, 1, 0)],
    "s11": [(0, 0, 1), (0, 1, 1)],
    "s10": [(-1, 2, 1)],
    "s9": [(-1, 2, 0)],
    "s8": [(-1, 2, 3)],
    "s7": [(-1, 2, 2)],
    "s6": [(-1, 1, 1)],
    "s5": [(-1, 1, 0)],
    "s4": [(-1, 1, 3)],
    "s3": [(-1, 1, 2)],
    "s2": [(-1, 0, 0)],
    "s1": [(-2, 0, 0)],
    "s0": [(-2, 0, 1)],
}

_A_ROB_EDGES = [
    ("s0", "s2"), ("s0", "s4"), ("s0", "s7"), ("s0", "s8"),
    ("s1", "s2"), ("s1", "s5"), ("s1", "s6"), ("s1", "s3"), ("s1", "s4"),
    ("s1", "s9"), ("s1", "s10"), ("s1", "s8"),
    ("s2", "s12"), ("s2", "s11"),
    ("s3", "s12"), ("s3", "s13"), ("s3", "s15"),
    ("s4", "s11"), ("s4", "s12"), ("s4", "s14"), ("s4", "s18"), ("s4", "s19"),
    ("s5", "s20"), ("s5", "s21"), ("s5", "s16"), ("s5", "s12"),
    ("s6", "s22"), ("s6", "s17"), ("s6", "s12"),
    ("s7", "s11"), ("s7", "s14"),
    ("s8", "s11"), ("s8", "s12"), ("s8", "s13"), ("s8", "s14"),
    ("s8", "s16"), ("s8", "s17"), ("s8", "s18"), ("s8", "s19"),
    ("s9", "s12"), ("s9", "s15"), ("s9", "s22"), ("s9", "s20"), ("s9", "s19"),
    ("s10", "s12"), ("s10", "s15"), ("s10", "s21"), ("s10", "s22"), ("s10", "s18"),
    ("s11", "s28"), ("s11", "s29"), ("s11", "s23"), ("s11", "s25"),
    ("s12", "s31"), ("s12", "s29"), ("s12", "s23"), ("s12", "s25"),
    ("s12", "s26"), ("s12", "s27"), ("s12", "s24"), ("s12", "s30"),
    ("s13", "s24"), ("s13", "s29"),
    ("s14", "s25"), ("s14", "s28"), ("s14", "s29"),
    ("s15", "s24"), ("s15", "s30"), ("s15", "s31"),
    ("s16", "s26"), ("s16", "s29"),
    ("s17", "s27"), ("s17", "s29"),
    ("s18", "s25"), ("s18", "s31"), ("s18", "s29"),
    ("s19", "s25"), ("s19", "s30"), ("s19", "s29"),
    ("s20", "s26"), ("s20", "s30"),
    ("s21", "s26"), ("s21", "s31"),
    ("s22", "s27"), ("s22", "s30"), ("s22", "s31"),
    ("s23", "s32"), ("s23", "s33"),
    ("s24", "s33"),
    ("s25", "s32"), ("s25", "s33"),
    ("s26", "s33"),
    ("s27", "s33"),
    ("s28", "s32"),
    ("s29", "s32"), ("s29", "s33"),
    ("s30", "s33"),
    ("s31", "s33"),
]

_C_ROB_NODES = {
    "s51": [(2, 0, 1)], "s50": [(2, 0, 0)], "s53": [(2, 0, 3)], "s52": [(2, 0, 2)],
    "s43": [(1, 1, 3)], "s42": [(1, 1, 2)], "s41": [(1, 1, 1)],
    "s49": [(1, 1, 9)], "s48": [(1, 1, 8)], "s47": [(1, 1, 7)], "s46": [(1, 1, 6)],
    "s45": [(1, 1, 5)], "s40": [(1, 1, 0)], "s44": [(1, 1, 4)],
    "s38": [(1, 0, 0)], "s39": [(1, 0, 1)],
    "s31": [(0, 3, 6)], "s30": [(0, 3, 5)], "s29": [(0, 3, 4)], "s28": [(0, 3, 3)],
    "s37": [(0, 3, 12)], "s36": [(0, 3, 11)], "s35": [(0, 3, 10)], "s34": [(0, 3, 9)],
    "s33": [(0, 3, 8)], "s27": [(0, 3, 2)], "s26": [(0, 3, 1)], "s32": [(0, 3, 7)],
    "s25": [(0, 3, 0)],
    "s22": [(0, 2, 1)], "s21": [(0, 2, 0)], "s24": [(0, 2, 3)], "s23": [(0, 2, 2)],
    "s19": [(0, 1, 2)], "s18": [(0, 1, 1)], "s20": [(0, 1, 3)], "s17": [(0, 1, 0)],
    "s16": [(0, 0, 0)],
    "t9": [(-1, 1, 3)], "t8": [(-1, 1, 2)], "t7": [(-1, 1, 1)],
    "t15": [(-1, 1, 9)], "t14": [(-1, 1, 8)], "t13": [(-1, 1, 7)], "t12": [(-1, 1, 6)],
    "t11": [(-1, 1, 5)], "t6": [(-1, 1, 0)], "t10": [(-1, 1, 4)],
    "t4": [(-1, 0, 0)], "t5": [(-1, 0, 1)],
    "t1": [(-2, 0, 1)], "t0": [(-2, 0, 0)], "t3": [(-2, 0, 3)], "t2": [(-2, 0, 2)],
}

_C_ROB_EDGES = [
    # grade 0 <- 1 and 1 <- 2 (first diagram)
    ("s16", "s38"), ("s16", "s39"),
    ("s17", "s38"), ("s17", "s40"), ("s17", "s44"),
    ("s18", "s38"), ("s18", "s41"), ("s18", "s42"), ("s18", "s46"),
    ("s19", "s38"), ("s19", "s43"), ("s19", "s47"),
    ("s20", "s38"), ("s20", "s39"), ("s20", "s45"), ("s20", "s48"), ("s20", "s49"),
    ("s21", "s38"), ("s21", "s40"), ("s21", "s42"), ("s21", "s43"), ("s21", "s48"),
    ("s22", "s38"), ("s22", "s40"), ("s22", "s41"), ("s22", "s43"), ("s22", "s49"),
    ("s23", "s39"), ("s23", "s45"),
    ("s24", "s38"), ("s24", "s48"), ("s24", "s49"), ("s24", "s39"),
    ("s24", "s44"), ("s24", "s45"), ("s24", "s46"), ("s24", "s47"),
    ("s25", "s40"),
    ("s27", "s40"), ("s27", "s43"),
    ("s26", "s40"), ("s26", "s41"), ("s26", "s42"),
    ("s28", "s41"),
    ("s29", "s42"),
    ("s30", "s43"),
    ("s31", "s41"), ("s31", "s42"), ("s31", "s43"),
    ("s32", "s40"), ("s32", "s44"), ("s32", "s48"), ("s32", "s49"),
    ("s33", "s45"), ("s33", "s48"),
    ("s34", "s45"), ("s34", "s49"),
    ("s35", "s41"), ("s35", "s46"), ("s35", "s49"),
    ("s36", "s42"), ("s36", "s46"), ("s36", "s48"),
    ("s37", "s43"), ("s37", "s47"), ("s37", "s48"), ("s37", "s49"),
    ("s38", "s50"), ("s38", "s51"), ("s38", "s53"),
    ("s39", "s52"), ("s39", "s53"),
    ("s40", "s50"), ("s40", "s51"),
    ("s41", "s51"),
    ("s42", "s50"),
    ("s43", "s50"), ("s43", "s51"),
    ("s44", "s53"),
    ("s45", "s52"), ("s45", "s53"),
    ("s46", "s53"),
    ("s47", "s53"),
    ("s48", "s50"), ("s48", "s53"),
    ("s49", "s51"), ("s49", "s53"),
    # grade -2 <- -1 and -1 <- 0 (second diagram)
    ("t0", "t4"), ("t0", "t6"), ("t0", "t8"), ("t0", "t9"), ("t0", "t14"),
    ("t1", "t4"), ("t1", "t6"), ("t1", "t7"), ("t1", "t9"), ("t1", "t15"),
    ("t2", "t5"), ("t2", "t11"),
    ("t3", "t4"), ("t3", "t5"), ("t3", "t10"), ("t3", "t11"),
    ("t3", "t12"), ("t3", "t13"), ("t3", "t14"), ("t3", "t15"),
    ("t4", "s16"), ("t4", "s17"), ("t4", "s18"), ("t4", "s19"),
    ("t4", "s21"), ("t4", "s22"), ("t4", "s20"), ("t4", "s24"),
    ("t5", "s16"), ("t5", "s20"), ("t5", "s23"), ("t5", "s24"),
    ("t6", "s17"), ("t6", "s21"), ("t6", "s22"), ("t6", "s25"),
    ("t6", "s27"), ("t6", "s26"), ("t6", "s32"),
    ("t7", "s18"), ("t7", "s22"), ("t7", "s26"), ("t7", "s28"), ("t7", "s31"), ("t7", "s35"),
    ("t8", "s18"), ("t8", "s21"), ("t8", "s26"), ("t8", "s29"), ("t8", "s31"), ("t8", "s36"),
    ("t9", "s19"), ("t9", "s21"), ("t9", "s22"), ("t9", "s27"),
    ("t9", "s30"), ("t9", "s31"), ("t9", "s37"),
    ("t10", "s17"), ("t10", "s24"), ("t10", "s32"),
    ("t11", "s20"), ("t11", "s23"), ("t11", "s24"), ("t11", "s33"), ("t11", "s34"),
    ("t12", "s18"), ("t12", "s24"), ("t12", "s35"), ("t12", "s36"),
    ("t13", "s19"), ("t13", "s24"), ("t13", "s37"),
    ("t14", "s20"), ("t14", "s21"), ("t14", "s24"),
    ("t14", "s32"), ("t14", "s33"), ("t14", "s36"), ("t14", "s37"),
    ("t15", "s20"), ("t15", "s22"), ("t15", "s24"),
    ("t15", "s32"), ("t15", "s34"), ("t15", "s35"), ("t15", "s37"),
]


def _expand(space: str, nodes, edges):
    out = set()
    for a, b in edges:
        for la in nodes[a]:
            for lb in nodes[b]:
                ga = la[0]
                gb = lb[0]
                if abs(ga - gb) != 1:
                    raise ValueError(f"non-adjacent edge {la} -- {lb}")
                src, dst = (la, lb) if ga > gb else (lb, la)
                out.add((src, dst))
    return sorted(out)


A_ROB = None
C_ROB = None


def _label_to_key(space: str, label, refined: bool) -> ModuleKey:
    if refined:
        i, j, k = label
        return ModuleKey(space, i, j, k)
    if len(label) == 3:
        i, j, pm = label
        return ModuleKey(space, i, j, None, pm)
    i, j = label
    return ModuleKey(space, i, j)


def graph_arrows(space: str, n: int, level: str) -> list[tuple[ModuleKey, ModuleKey]]:
    """Arrows of the classification diagram, as ModuleKey pairs."""
    global A_ROB, C_ROB
    if level == "sim":
        table = {
            "G": G_SIM,
            "F": F_SIM,
            "A": A_SIM6 if n == 6 else A_SIM,
            "C": C_SIM6 if n == 6 else C_SIM,
        }[space]
        return [(_label_to_key(space, a, False), _label_to_key(space, b, False)) for a, b in table]
    if level == "rob":
        if space == "G":
            table = G_ROB
        elif space == "F":
            table = F_ROB
        elif space == "A":
            if A_ROB is None:
                A_ROB = _expand("A", _A_ROB_NODES, _A_ROB_EDGES)
            table = A_ROB
        elif space == "C":
            if C_ROB is None:
                C_ROB = _expand("C", _C_ROB_NODES, _C_ROB_EDGES)
            table = C_ROB
        else:
            raise ValueError(space)
        return [(_label_to_key(space, a, True), _label_to_key(space, b, True)) for a, b in table]
    raise ValueError(level)
