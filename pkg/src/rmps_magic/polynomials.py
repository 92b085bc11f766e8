"""Closed-form eigenvalue polynomials and the catalogue of inequality polynomials.

All functions take integers ``(d, B)`` and return Python ints, so evaluation is
exact. The closed forms describe blocks built from the *printed* Weingarten
table; :mod:`rmps_magic.spectra` rescales them for Gram-inverse blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


def _den3(d, B):
    q2 = B * B * d * d
    return (q2 - 3) * (q2 - 2) * (q2 - 1)


# ---- identity block --------------------------------------------------------

def id_A1(d, B):
    return (B**7 * (d**5 + d**4) + B**5 * (-3 * d**5 - 3 * d**4 - 11 * d**3 - 11 * d**2)
            + B**3 * (2 * d**5 + 2 * d**4 + 29 * d**3 + 29 * d**2 + 18 * d + 18)
            + B * (-18 * d**3 - 18 * d**2 - 18 * d - 18))


def id_A2(d, B):
    return B**4 * d**4 + B**2 * (-4 * d**4 - 4 * d**2) + 4 * d**4 + 16 * d**3 + 40 * d**2 + 16 * d + 4


def id_A3(d, B):
    return 2 * B * d * _den3(d, B)


def id_A4(d, B):
    return (B**7 * (d**5 + d**4) + B**5 * (-15 * d**4 - 14 * d**3 + d**2)
            + B**3 * (-(d**5) + 44 * d**4 + 20 * d**3 + 5 * d**2 + 30 * d)
            + B * (-30 * d**4 - 6 * d**3 - 6 * d**2 - 30 * d))


def id_A5(d, B):
    return (B**8 * d**6 + B**6 * (2 * d**6 + 30 * d**5 + 2 * d**4)
            + B**4 * (d**6 - 110 * d**5 + 19 * d**4 - 110 * d**3 + d**2)
            + B**2 * (60 * d**5 - 708 * d**4 - 600 * d**3 - 708 * d**2 + 60 * d)
            + 900 * d**4 + 2160 * d**3 + 3816 * d**2 + 2160 * d + 900)


id_A6 = id_A3


def id_quad_factor(d, B):
    return B**2 * d**3 - B**2 * d**2 - 9 * d + 9


# ---- O1 block --------------------------------------------------------------

def o1_C1(d, B):
    return (B**7 * (d**5 + d**4) + B**5 * (-(d**5) - 5 * d**4 - 11 * d**3 - 11 * d**2)
            + B**3 * (4 * d**4 + 11 * d**3 + 47 * d**2 + 18 * d + 18)
            + B * (-36 * d**2 - 18 * d - 18))


def o1_C2(d, B):
    return B**4 * d**4 - 4 * B**2 * d**2 + 16 * d**2 + 16 * d + 4


o1_C3 = id_A3


def o1_C4(d, B):
    return (B**7 * (d**5 + d**4) + B**5 * (2 * d**5 - 5 * d**4 - 26 * d**3 + d**2)
            + B**3 * (-8 * d**4 + 23 * d**3 + 65 * d**2 + 18 * d) + B * (-18 * d**2 - 54 * d))


def o1_C5(d, B):
    return (B**12 * d**6 + B**10 * (4 * d**6 + 6 * d**5 + 2 * d**4)
            + B**8 * (4 * d**6 - 36 * d**5 - 213 * d**4 - 158 * d**3 + d**2)
            + B**6 * (-24 * d**5 + 156 * d**4 + 1078 * d**3 + 1282 * d**2 + 36 * d)
            + B**4 * (64 * d**4 - 488 * d**3 - 2075 * d**2 - 2736 * d + 324)
            + B**2 * (288 * d**2 + 1836 * d + 648) + 324)


o1_C6 = id_A3


# Spectral-radius form for the O1 block: (A1 + (d-1) sqrt(A2)) / A3.
def blue_A1(d, B):
    return (B**6 * (d**4 + d**3) + B**4 * (2 * d**4 - 5 * d**3 - 26 * d**2 + d)
            + B**2 * (-8 * d**3 + 23 * d**2 + 65 * d + 18) - 18 * d - 54)


blue_A2 = o1_C5


def blue_A3(d, B):
    return 2 * (B**6 * d**6 - 6 * B**4 * d**4 + 11 * B**2 * d**2 - 6)


# ---- inequality catalogue --------------------------------------------------

@dataclass(frozen=True)
class Inequality:
    name: str
    claim: str
    poly: Callable[[int, int], int]
    d_only: int | None = None
    strict: bool = False

    def applies(self, d: int, B: int) -> bool:
        return self.d_only is None or d == self.d_only


def _p(name, claim, d_only=None, strict=False):
    def wrap(fn):
        return Inequality(name, claim, fn, d_only, strict)
    return wrap


@_p("denominator", "common denominator B^6d^6-6B^4d^4+11B^2d^2-6 > 0", strict=True)
def _denominator(d, B):
    return B**6 * d**6 - 6 * B**4 * d**4 + 11 * B**2 * d**2 - 6


@_p("green_radius", "identity-block radius <= 1")
def _green(d, B):
    return 8 * B**2 * d**2 - 30


@_p("blue_A2", "radicand of the O1 radius is non-negative")
def _blue_a2(d, B):
    return blue_A2(d, B)


@_p("blue_rhs", "2*A3 - d^2*A1 >= 0 (right side of the squared O1 bound)")
def _blue_rhs(d, B):
    return 2 * blue_A3(d, B) - d**2 * blue_A1(d, B)


@_p("blue_squared", "squared form of O1 radius <= 2/d^2")
def _blue_sq(d, B):
    return (B**12 * (8 * d**12 - 4 * d**11)
            + B**10 * (-16 * d**12 + 36 * d**11 + 8 * d**10 - 12 * d**9)
            + B**8 * (72 * d**11 - 552 * d**9 + 176 * d**8 + 104 * d**7)
            + B**6 * (-8 * d**11 - 32 * d**10 - 572 * d**9 + 144 * d**8 + 1388 * d**7 - 1120 * d**6 - 40 * d**5)
            + B**4 * (176 * d**9 + 488 * d**8 + 3092 * d**7 - 416 * d**6 - 344 * d**5 + 256 * d**4 + 48 * d**3)
            + B**2 * (-1224 * d**7 - 2088 * d**6 - 7008 * d**5 + 3264 * d**4 + 3120 * d**3 - 1248 * d**2)
            + 2592 * d**5 + 2592 * d**4 - 864 * d**3 - 2592 * d**2 + 576)


@_p("blue_d2_rhs", "A3 - 4*A1 >= 0 at d=2", d_only=2)
def _blue_d2_rhs(d, B):
    return blue_A3(d, B) - 4 * blue_A1(d, B)


@_p("blue_d2_squared", "squared form of O1 radius <= 1/4 at d=2", d_only=2)
def _blue_d2(d, B):
    return 8192 * B**10 + 111104 * B**8 - 532096 * B**6 + 813312 * B**4 - 516288 * B**2 + 115920


@_p("purple_radius", "O2 radius <= 3/d^3")
def _purple(d, B):
    return (2 * B**6 * d**6 + B**4 * (-5 * d**6 + 20 * d**5 - 19 * d**4)
            + B**2 * (16 * d**5 - 65 * d**4 + 33 * d**2) + 36 * d**3 - 18)


@_p("id_e2_bound", "identity eigenvalue 2 <= 1")
def _id_e2(d, B):
    return (B**7 * (d**6 - d**4) + B**5 * (9 * d**2 - d**4) + B**3 * (-4 * d**4 - 34 * d**2)
            + B * (36 * d**2 - 6))


@_p("id_e4_bound", "identity eigenvalue 4 <= 1")
def _id_e4(d, B):
    return (B**6 * (d**6 - d**5) + B**4 * (d**5 - 6 * d**4 + 13 * d**3)
            + B**2 * (-13 * d**3 + 11 * d**2 - 36 * d) + 36 * d - 6)


@_p("id_e7_bound", "identity eigenvalue 7 <= 1 (squared form)")
def _id_e7(d, B):
    return (B**12 * (4 * d**14 - 4 * d**12 - 4 * d**11 + 4 * d**9)
            + B**10 * (-36 * d**12 + 12 * d**11 + 68 * d**10 + 44 * d**9 - 88 * d**7)
            + B**8 * (-8 * d**12 - 8 * d**11 + 44 * d**10 - 152 * d**9 - 380 * d**8 + 148 * d**7 + 612 * d**5)
            + B**6 * (120 * d**10 + 104 * d**9 + 324 * d**8 + 108 * d**7 + 940 * d**6 - 2732 * d**5 - 1296 * d**3)
            + B**4 * (-520 * d**8 - 168 * d**7 - 1008 * d**6 + 3728 * d**5 - 1056 * d**4 + 6720 * d**3)
            + B**2 * (840 * d**6 - 1608 * d**5 + 960 * d**4 - 10176 * d**3 + 432 * d**2 + 432 * d)
            - 432 * d**4 + 4752 * d**3 - 288 * d**2 - 432 * d)


@_p("id_A1", "A1 >= 0 (identity block)")
def _id_a1(d, B):
    return id_A1(d, B)


@_p("id_A2", "A2 >= 0 (identity block)")
def _id_a2(d, B):
    return id_A2(d, B)


@_p("id_A3_minus_A1", "A3 - A1 >= 0 (identity block)")
def _id_a3_a1(d, B):
    return (B**7 * (2 * d**7 - d**5 - d**4) + B**5 * (-9 * d**5 + 3 * d**4 + 11 * d**3 + 11 * d**2)
            + B**3 * (-2 * d**5 - 2 * d**4 - 7 * d**3 - 29 * d**2 - 18 * d - 18)
            + B * (18 * d**3 + 18 * d**2 + 6 * d + 18))


@_p("id_quad_factor", "B^2d^3 - B^2d^2 - 9d + 9 >= 0")
def _id_quad(d, B):
    return id_quad_factor(d, B)


@_p("id_e9_bound", "identity eigenvalue 9 <= 1 (squared form)")
def _id_e9(d, B):
    return (B**12 * (4 * d**14 - 4 * d**12 - 4 * d**11 + 4 * d**9)
            + B**10 * (-48 * d**12 + 60 * d**11 + 80 * d**10 - 40 * d**9 - 52 * d**7)
            + B**8 * (4 * d**12 - 176 * d**11 + 152 * d**10 - 128 * d**9 - 500 * d**8 + 760 * d**7 + 144 * d**5)
            + B**6 * (120 * d**11 + 740 * d**9 + 24 * d**8 - 2496 * d**7 + 1360 * d**6 - 2180 * d**5)
            + B**4 * (-576 * d**9 - 100 * d**8 + 2340 * d**7 - 828 * d**6 + 8492 * d**5 - 1656 * d**4 + 24 * d**3)
            + B**2 * (-552 * d**7 + 240 * d**6 - 10920 * d**5 + 1272 * d**4 + 120 * d**3 + 720 * d**2)
            + 4464 * d**5 - 144 * d**4 - 144 * d**3 - 576 * d**2)


@_p("id_A4", "A4 >= 0 (identity block)")
def _id_a4(d, B):
    return id_A4(d, B)


@_p("id_A5", "A5 >= 0 (identity block)")
def _id_a5(d, B):
    return id_A5(d, B)


@_p("id_A6_minus_A4", "A6 - A4 >= 0 (identity block)")
def _id_a6_a4(d, B):
    return id_A6(d, B) - id_A4(d, B)


@_p("o1_e2_bound", "O1 eigenvalue 2 <= 2/d^2")
def _o1_e2(d, B):
    return (B**6 * (2 * d**6 - d**5) + B**4 * (d**5 - 8 * d**4 + 9 * d**3)
            + B**2 * (-4 * d**4 - 9 * d**3 - 14 * d**2) + 36 * d**2 - 12)


@_p("o1_e4_bound", "O1 eigenvalue 4 <= 2/d^2 (squared form)")
def _o1_e4(d, B):
    return (B**12 * (8 * d**14 - 4 * d**13)
            + B**10 * (8 * d**14 + 24 * d**13 - 64 * d**12 + 48 * d**11)
            + B**8 * (-12 * d**13 - 120 * d**12 - 264 * d**11 + 344 * d**10 - 148 * d**9)
            + B**6 * (-8 * d**13 - 8 * d**12 + 40 * d**11 + 408 * d**10 + 392 * d**9 - 1648 * d**8 + 584 * d**7)
            + B**4 * (176 * d**11 + 176 * d**10 + 980 * d**9 + 568 * d**8 - 56 * d**7 + 3568 * d**6 - 2112 * d**5)
            + B**2 * (-1224 * d**9 - 1224 * d**8 - 3120 * d**7 - 3072 * d**6 + 3840 * d**5 - 1248 * d**4 + 864 * d**3)
            + 2592 * d**7 + 2592 * d**6 - 1728 * d**5 - 864 * d**4 - 864 * d**3 + 576 * d**2)


@_p("o1_C1", "C1 >= 0 (O1 block)")
def _o1_c1(d, B):
    return o1_C1(d, B)


@_p("o1_C2", "C2 >= 0 (O1 block)")
def _o1_c2(d, B):
    return o1_C2(d, B)


@_p("o1_2C3_minus_d2C1", "2*C3 - d^2*C1 >= 0 (O1 block)")
def _o1_c3_c1(d, B):
    return 2 * o1_C3(d, B) - d**2 * o1_C1(d, B)


@_p("o2_e2_bound", "O2 eigenvalue 2 <= 3/d^3")
def _o2_e2(d, B):
    return (2 * B**6 * d**6 + B**4 * (d**6 + 4 * d**5 - 9 * d**4)
            + B**2 * (-4 * d**5 - 9 * d**4 - 36 * d**3 + 33 * d**2) + 36 * d**3 - 18)


@_p("o2_e4_bound", "O2 eigenvalue 4 <= 3/d^3")
def _o2_e4(d, B):
    return (2 * B**6 * d**6 + B**4 * (d**6 + 2 * d**5 - 7 * d**4)
            + B**2 * (-2 * d**5 - 11 * d**4 - 18 * d**3 + 15 * d**2) + 18 * d**3 + 18 * d**2 - 18)


@_p("o1_d2_e2_bound", "O1 eigenvalue 2 <= 1/4 at d=2", d_only=2)
def _o1_d2_e2(d, B):
    return 32 * B**6 + 72 * B**4 - 236 * B**2 + 138


@_p("o1_d2_e4_bound", "O1 eigenvalue 4 <= 1/4 at d=2", d_only=2)
def _o1_d2_e4(d, B):
    return (106496 * B**10 + 57344 * B**8 - 1271296 * B**6 + 2403072 * B**4
            - 1755264 * B**2 + 460224)


@_p("o1_d2_e6_bound", "O1 eigenvalue 6 <= 1/4 at d=2", d_only=2)
def _o1_d2_e6(d, B):
    return 8192 * B**10 + 111104 * B**8 - 532096 * B**6 + 813312 * B**4 - 516288 * B**2 + 115920


@_p("id_e2_nonneg", "identity eigenvalue 2 >= 0")
def _id_e2_nn(d, B):
    return B**7 * d**4 + B**5 * (-5 * d**4 - 9 * d**2) + B**3 * (4 * d**4 + 45 * d**2) - 36 * B * d**2


@_p("id_e4_nonneg", "identity eigenvalues 4 and 5 >= 0")
def _id_e4_nn(d, B):
    return B**4 * d**4 - 13 * B**2 * d**2 + 36


@_p("id_e6_nonneg", "identity eigenvalue 6 >= 0 (squared form)")
def _id_e6_nn(d, B):
    return (4 * B**12 * d**9 + B**10 * (-24 * d**9 - 88 * d**7)
            + B**8 * (36 * d**9 + 528 * d**7 + 612 * d**5)
            + B**6 * (-16 * d**9 - 792 * d**7 - 3672 * d**5 - 1296 * d**3)
            + B**4 * (352 * d**7 + 5508 * d**5 + 7776 * d**3)
            + B**2 * (-2448 * d**5 - 11664 * d**3) + 5184 * d**3)


@_p("id_e8_nonneg", "identity eigenvalue 8 >= 0 (squared form)")
def _id_e8_nn(d, B):
    return (4 * B**12 * d**9 + B**10 * (-60 * d**9 - 52 * d**7)
            + B**8 * (252 * d**9 + 780 * d**7 + 144 * d**5)
            + B**6 * (-340 * d**9 - 3276 * d**7 - 2160 * d**5)
            + B**4 * (144 * d**9 + 4420 * d**7 + 9072 * d**5)
            + B**2 * (-1872 * d**7 - 12240 * d**5) + 5184 * d**5)


@_p("o1_e2_nonneg", "O1 eigenvalue 2 >= 0")
def _o1_e2_nn(d, B):
    return (B**2 - 1) * (B * d - 3) * (B * d + 3) * (B**2 * d - 4)


@_p("o1_e3_nonneg", "O1 eigenvalue 3 >= 0 (squared form)")
def _o1_e3_nn(d, B):
    return (4 * B**12 * d**9 + B**10 * (-16 * d**9 - 8 * d**8 - 88 * d**7)
            + B**8 * (20 * d**9 + 16 * d**8 + 352 * d**7 + 176 * d**6 + 612 * d**5)
            + B**6 * (-8 * d**9 - 8 * d**8 - 440 * d**7 - 352 * d**6 - 2448 * d**5 - 1224 * d**4 - 1296 * d**3)
            + B**4 * (176 * d**7 + 176 * d**6 + 3060 * d**5 + 2448 * d**4 + 5184 * d**3 + 2592 * d**2)
            + B**2 * (-1224 * d**5 - 1224 * d**4 - 6480 * d**3 - 5184 * d**2)
            + 2592 * d**3 + 2592 * d**2)


@_p("o1_e5_nonneg", "O1 eigenvalue 5 >= 0 (squared form)")
def _o1_e5_nn(d, B):
    return (4 * B**12 * d**7 + B**10 * (-4 * d**7 - 56 * d**6 - 52 * d**5)
            + B**8 * (8 * d**7 + 88 * d**6 + 208 * d**5 + 728 * d**4 + 144 * d**3)
            + B**6 * (-8 * d**7 - 32 * d**6 - 332 * d**5 - 1216 * d**4 - 2172 * d**3 - 2016 * d**2)
            + B**4 * (176 * d**5 + 488 * d**4 + 3252 * d**3 + 4104 * d**2 + 5616 * d)
            + B**2 * (-1224 * d**3 - 2088 * d**2 - 8208 * d - 2592)
            + 2592 * d + 2592)


@_p("o2_e2_nonneg", "O2 eigenvalue 2 >= 0")
def _o2_e2_nn(d, B):
    return B**4 * d**3 - 4 * B**2 * d**2 - 9 * B**2 * d + 36


@_p("o2_e3_nonneg", "O2 eigenvalue 3 >= 0")
def _o2_e3_nn(d, B):
    return B**6 * d**3 + B**4 * (5 * d**3 - 20 * d**2 + d) + B**2 * (65 * d - 16 * d**2) - 36


@_p("o2_e4_nonneg", "O2 eigenvalue 4 >= 0")
def _o2_e4_nn(d, B):
    return B**4 * d**4 + B**2 * (-2 * d**3 - 11 * d**2) + 18 * d + 18


CATALOGUE: tuple[Inequality, ...] = tuple(
    v for v in list(globals().values()) if isinstance(v, Inequality)
)
