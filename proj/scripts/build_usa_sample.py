#!/usr/bin/env python3
"""Regenerate the USA sample data under data/usa/.

The tables below are hand-transcribed annual aggregates, not an official
extract:

* real GDP, billions of chained 2000 dollars (BEA NIPA, mid-2005 vintage),
  rebased to 2002 dollars with the GDP price index ratio 2002/2000;
* resident population on July 1, millions (Census Bureau);
* registered births, millions (NCHS vital statistics; pre-1909 values are
  the Census Bureau's smoothed estimates).

Single-year-of-age pyramids are synthesized from the births table: the count
of age a at mid-year Y blends the two birth years that contribute to that
age, scaled by a Gompertz survival curve and a net-immigration uplift that
accumulates with age. They reproduce the shape of the census pyramids but not
their enumeration noise; drop in real census files for serious work.

Usage: python3 scripts/build_usa_sample.py [output_dir]
"""

import math
import pathlib
import sys

GDP_CHAINED_2000 = [
    865.2, 790.7, 739.9, 643.7, 635.5, 704.2, 766.9, 866.6, 911.1, 879.7,  # 1929-1938
    950.7, 1034.1, 1211.1, 1435.4, 1670.9, 1806.5, 1786.3, 1589.4, 1574.5, 1643.2,  # 1939-1948
    1634.6, 1777.3, 1915.0, 1988.3, 2079.5, 2065.4, 2212.8, 2255.8, 2301.1, 2279.2,  # 1949-1958
    2441.3, 2501.8, 2560.0, 2715.2, 2834.0, 2998.6, 3191.1, 3399.1, 3484.6, 3652.7,  # 1959-1968
    3765.4, 3771.9, 3898.6, 4105.0, 4341.5, 4319.6, 4311.2, 4540.9, 4750.5, 5015.0,  # 1969-1978
    5173.4, 5161.7, 5291.7, 5189.3, 5423.8, 5813.6, 6053.7, 6263.6, 6475.1, 6742.7,  # 1979-1988
    6981.4, 7112.5, 7100.5, 7336.6, 7532.7, 7835.5, 8031.7, 8328.9, 8703.5, 9066.9,  # 1989-1998
    9470.3, 9817.0, 9890.7, 10048.8, 10301.0, 10703.5,  # 1999-2004
]
GDP_FIRST_YEAR = 1929
PRICE_2002_OVER_2000 = 1.0419

POPULATION_MILLIONS = [
    121.8, 123.1, 124.0, 124.8, 125.6, 126.4, 127.3, 128.1, 128.8, 129.8,  # 1929-1938
    130.9, 132.1, 133.4, 134.9, 136.7, 138.4, 140.0, 141.4, 144.1, 146.6,  # 1939-1948
    149.2, 152.3, 154.9, 157.6, 160.2, 163.0, 165.9, 168.9, 172.0, 174.9,  # 1949-1958
    177.8, 180.7, 183.7, 186.5, 189.2, 191.9, 194.3, 196.6, 198.7, 200.7,  # 1959-1968
    202.7, 205.1, 207.7, 209.9, 211.9, 213.9, 216.0, 218.0, 220.2, 222.6,  # 1969-1978
    225.1, 227.2, 229.5, 231.7, 233.8, 235.8, 237.9, 240.1, 242.3, 244.5,  # 1979-1988
    246.8, 249.6, 253.0, 256.5, 259.9, 263.1, 266.3, 269.4, 272.6, 275.9,  # 1989-1998
    279.0, 282.2, 285.0, 287.9, 290.4, 293.0,  # 1999-2004
]

BIRTHS_MILLIONS = {
    1910: 2.777, 1911: 2.809, 1912: 2.840, 1913: 2.869, 1914: 2.966, 1915: 2.965,
    1916: 2.964, 1917: 2.944, 1918: 2.948, 1919: 2.740, 1920: 2.950, 1921: 3.055,
    1922: 2.882, 1923: 2.910, 1924: 2.979, 1925: 2.909, 1926: 2.839, 1927: 2.802,
    1928: 2.674, 1929: 2.582, 1930: 2.618, 1931: 2.506, 1932: 2.440, 1933: 2.307,
    1934: 2.396, 1935: 2.377, 1936: 2.355, 1937: 2.413, 1938: 2.496, 1939: 2.466,
    1940: 2.559, 1941: 2.703, 1942: 2.989, 1943: 3.104, 1944: 2.939, 1945: 2.858,
    1946: 3.411, 1947: 3.817, 1948: 3.637, 1949: 3.649, 1950: 3.632, 1951: 3.823,
    1952: 3.913, 1953: 3.965, 1954: 4.078, 1955: 4.097, 1956: 4.218, 1957: 4.300,
    1958: 4.255, 1959: 4.245, 1960: 4.258, 1961: 4.268, 1962: 4.167, 1963: 4.098,
    1964: 4.027, 1965: 3.760, 1966: 3.606, 1967: 3.521, 1968: 3.502, 1969: 3.600,
    1970: 3.731, 1971: 3.556, 1972: 3.258, 1973: 3.137, 1974: 3.160, 1975: 3.144,
    1976: 3.168, 1977: 3.327, 1978: 3.333, 1979: 3.494, 1980: 3.612, 1981: 3.629,
    1982: 3.681, 1983: 3.639, 1984: 3.669, 1985: 3.761, 1986: 3.757, 1987: 3.809,
    1988: 3.910, 1989: 4.041, 1990: 4.158, 1991: 4.111, 1992: 4.065, 1993: 4.000,
    1994: 3.953, 1995: 3.900, 1996: 3.891, 1997: 3.881, 1998: 3.942, 1999: 3.959,
    2000: 4.059,
}


def births(year):
    if year in BIRTHS_MILLIONS:
        return BIRTHS_MILLIONS[year] * 1e6
    # Pre-registration years: linear ramp from 2.45M (1880) to 2.777M (1910).
    return (2.45 + (2.777 - 2.45) * (year - 1880) / 30.0) * 1e6


def survival(age):
    infant = 0.99 if age >= 1 else 0.995
    hazard = 0.00003 / 0.09 * (math.exp(0.09 * age) - 1.0)
    return infant * math.exp(-hazard)


def immigration_uplift(age):
    return 1.0 + 0.003 * min(age, 40)


def pyramid(reference_year, max_age=100):
    rows = []
    for age in range(max_age + 1):
        born = 0.5 * (births(reference_year - age) + births(reference_year - age - 1))
        rows.append((age, round(born * survival(age) * immigration_uplift(age))))
    return rows


def write_series(path, unit, first_year, values, extra=""):
    with open(path, "w", newline="\n") as out:
        out.write(f"year,value,unit={unit}{extra}\n")
        for i, v in enumerate(values):
            out.write(f"{first_year + i},{v:.17g}\n")


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data/usa")
    out.mkdir(parents=True, exist_ok=True)
    base = ",dollar_base=2002 US dollars"
    gdp = [round(v * PRICE_2002_OVER_2000 * 1e9, -6) for v in GDP_CHAINED_2000]
    persons = [round(v * 1e6) for v in POPULATION_MILLIONS]
    write_series(out / "gdp.csv", "dollars_real", GDP_FIRST_YEAR, gdp, base)
    write_series(out / "population.csv", "persons", GDP_FIRST_YEAR, persons)
    for year in (1980, 1990, 2000):
        with open(out / f"pyramid_{year}.csv", "w", newline="\n") as f:
            f.write(f"age,count,reference_year={year}\n")
            for age, count in pyramid(year):
                f.write(f"{age},{count}\n")


if __name__ == "__main__":
    main()
