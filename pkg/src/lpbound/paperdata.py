"""Published Gegenbauer coefficients of the partial products PP_9..PP_11.

Keys are (avoid set, r); values list g_{0,r}, ..., g_{r,r}.
"""
from fractions import Fraction

TABLE_VERSION = "1"


def _q(xs):
    return tuple(Fraction(x) for x in xs)


PARTIAL_PRODUCT_TABLES = {
    ("T1", 9): _q([
        "107/336960", "9559/1684800", "1457/31104", "662371/2818800", "793877/1002240",
        "109123049/58631040", "2444141/808704", "1873655/582552", "296429/150336",
        "296429/575360",
    ]),
    ("T1", 10): _q([
        "37/2995200", "337/1123200", "984415/281428992", "1712633/67651200",
        "96599993/781747200", "584962/1374165", "1598663969/1504189440", "5878243/3106944",
        "651254513/288645120", "889287/575360", "3260719/7364608",
    ]),
    ("T1", 11): _q([
        "1/13478400", "3961/1758931200", "47/8794656", "-118957/811814400",
        "122059/1563494400", "376856011/32716120320", "231656467/3008378880",
        "399983395/1342199808", "439011349/577290240", "3260719/2589120",
        "16303595/14729216", "2075003/5523456",
    ]),
    ("T2", 9): _q([
        "7903/40435200", "371/105300", "47705/1617408", "15341599/101476800",
        "51317749/97718400", "677167211/527679360", "743869/336960", "12041729/4660416",
        "296429/167040", "296429/575360",
    ]),
    ("T2", 10): _q([
        "1981/48522240", "3983/5054400", "680701/93809664", "25583369/608860800",
        "79510417/469048320", "1585405927/3166076160", "331592191/300837888",
        "49704991/27962496", "118868029/57729024", "5039293/3452160", "3260719/7364608",
    ]),
    ("T2", 11): _q([
        "511/181958400", "40103/586310400", "328013/422143488", "40304803/7306329600",
        "391174091/14071449600", "30641555483/294445082880", "32981921/111421440",
        "98632555/149133312", "209575303/192430080", "296429/215760", "16303595/14729216",
        "2075003/5523456",
    ]),
}

DESIGN_SUPPORT = tuple(Fraction(x) for x in ("-1", "-1/2", "1/2", "-1/3", "1/3", "-1/6", "1/6", "0"))
DESIGN_N = 52_416_000
DESIGN_STRENGTH = 11
DESIGN_COUNTS = {
    Fraction(-1): 1,
    Fraction(-1, 2): 36_848,
    Fraction(1, 2): 36_848,
    Fraction(-1, 3): 1_678_887,
    Fraction(1, 3): 1_678_887,
    Fraction(-1, 6): 12_608_784,
    Fraction(1, 6): 12_608_784,
    Fraction(0): 23_766_960,
}

# potentials whose certificates are checked by the reproduction run
EXACT_SUITE = ("riesz:s=2", "riesz:s=4", "poly:[0,0,0,0,0,0,0,0,0,0,0,0,1]")
FLOAT_SUITE = ("gauss:sigma=1/2", "gauss:sigma=1", "gauss:sigma=2")
