"""
球 Bessel / Hankel 函数
=======================

复宗量的 j_n(z)、y_n(z)、h_n(z) = j_n + i·y_n 及其一阶导数。

求值策略:
    - |z| < max(1, n/2): 截断幂级数（项的模 < 1e-18·部分和 时停止，最多 60 项）
    - 其余情况: n = 0, 1 用闭式，j_n 用向下 (Miller) 递推，h_n 用向上递推

导数统一用 f_n' = f_{n-1} - (n+1)/z·f_n；n = 0 时改用等价的 f_0' = -f_1，
避免 cos(z)/z - sin(z)/z² 在小 z 处的抵消。
"""
import cmath
from typing import Union

import mpmath as mp

from minnaert_core.errors import DomainError

Number = Union[int, float, complex]

SERIES_TOL = 1e-18
SERIES_MAX_TERMS = 60
MILLER_EXTRA = 30


def double_factorial(m: int) -> int:
    """奇数的双阶乘 1·3·…·m，约定 (-1)!! = 1"""
    if int(m) != m:
        raise DomainError(f"double factorial needs an integer, got {m!r}")
    m = int(m)
    if m < -1 or m % 2 == 0:
        raise DomainError(f"double factorial is defined for odd m >= -1, got {m}")
    result = 1
    for factor in range(3, m + 1, 2):
        result *= factor
    return result


def check_order(n: int) -> int:
    if int(n) != n or n < 0:
        raise DomainError(f"order must be a non-negative integer, got {n!r}")
    return int(n)


def _series_threshold(n: int) -> float:
    return max(1.0, n / 2.0)


def _j_series(n: int, z: complex) -> complex:
    # j_n(z) = z^n/(2n+1)!! · Σ (-z²/2)^k / (k! (2n+3)(2n+5)…(2n+2k+1))
    lead = z ** n / double_factorial(2 * n + 1)
    if lead == 0:
        return 0j
    half_z2 = -0.5 * z * z
    term = 1.0 + 0j
    total = 1.0 + 0j
    for k in range(1, SERIES_MAX_TERMS):
        term *= half_z2 / (k * (2 * n + 2 * k + 1))
        total += term
        if abs(term) < SERIES_TOL * abs(total):
            break
    return lead * total


def _j_closed(n: int, z: complex) -> complex:
    s, c = cmath.sin(z), cmath.cos(z)
    if n == 0:
        return s / z
    return s / (z * z) - c / z


def _j_miller(n: int, z: complex) -> complex:
    """向下递推，最后用 j_0 或 j_1 中模较大者归一化"""
    start = n + MILLER_EXTRA + int(abs(z))
    upper, current = 0j, 1e-30 + 0j
    wanted = 0j
    below_one = 0j
    for order in range(start, 0, -1):
        lower = (2 * order + 1) / z * current - upper
        upper, current = current, lower
        if order - 1 == n:
            wanted = current
        if order - 1 == 1:
            below_one = current
        if abs(current) > 1e200:
            upper *= 1e-200
            current *= 1e-200
            wanted *= 1e-200
            below_one *= 1e-200
    j0, j1 = _j_closed(0, z), _j_closed(1, z)
    if abs(j0) >= abs(j1):
        return wanted * j0 / current
    return wanted * j1 / below_one


def sph_bessel_j(n: int, z: Number) -> complex:
    """第一类球 Bessel 函数 j_n(z)（整函数）"""
    n = check_order(n)
    z = complex(z)
    if z == 0:
        return 1.0 + 0j if n == 0 else 0j
    if abs(z) < _series_threshold(n):
        return _j_series(n, z)
    if n <= 1:
        return _j_closed(n, z)
    return _j_miller(n, z)


def sph_hankel_h1(n: int, z: Number) -> complex:
    """第一类球 Hankel 函数 h_n(z) = j_n(z) + i·y_n(z)，z = 0 为极点"""
    n = check_order(n)
    z = complex(z)
    if z == 0:
        raise DomainError("h_n(z) has a pole at z = 0")
    e = cmath.exp(1j * z)
    h_prev = -1j * e / z
    if n == 0:
        return h_prev
    h_curr = -e * (z + 1j) / (z * z)
    for order in range(1, n):
        h_prev, h_curr = h_curr, (2 * order + 1) / z * h_curr - h_prev
    return h_curr


def sph_neumann_y(n: int, z: Number) -> complex:
    """第二类球 Bessel 函数 y_n(z) = (h_n - j_n)/i"""
    return (sph_hankel_h1(n, z) - sph_bessel_j(n, z)) / 1j


def sph_bessel_dj(n: int, z: Number) -> complex:
    """j_n'(z)"""
    n = check_order(n)
    z = complex(z)
    if z == 0:
        return 1.0 / 3.0 + 0j if n == 1 else 0j
    if n == 0:
        return -sph_bessel_j(1, z)
    return sph_bessel_j(n - 1, z) - (n + 1) / z * sph_bessel_j(n, z)


def sph_hankel_dh1(n: int, z: Number) -> complex:
    """h_n'(z)，z = 0 报错"""
    n = check_order(n)
    z = complex(z)
    if z == 0:
        raise DomainError("h_n'(z) has a pole at z = 0")
    if n == 0:
        return -sph_hankel_h1(1, z)
    return sph_hankel_h1(n - 1, z) - (n + 1) / z * sph_hankel_h1(n, z)


# ========== 高精度参考值 ==========

def sph_bessel_mp(n: int, z):
    """
    当前 mpmath 精度下的 j_n(z)，z 为 mpmath 数

    j_n(z) = z^n/(2n+1)!! · ₀F₁(; n+3/2; -z²/4)，整函数形式，负实轴上没有分支问题。
    """
    n = check_order(n)
    if z == 0:
        return mp.mpc(1) if n == 0 else mp.mpc(0)
    return z ** n / double_factorial(2 * n + 1) * mp.hyp0f1(n + mp.mpf(3) / 2, -z * z / 4)


def sph_hankel_mp(n: int, z):
    """当前 mpmath 精度下的 h_n(z)，向上递推"""
    n = check_order(n)
    if z == 0:
        raise DomainError("h_n(z) has a pole at z = 0")
    e = mp.exp(1j * z)
    h_prev = -1j * e / z
    if n == 0:
        return h_prev
    h_curr = -e * (z + 1j) / (z * z)
    for order in range(1, n):
        h_prev, h_curr = h_curr, (2 * order + 1) / z * h_curr - h_prev
    return h_curr


def sph_hankel_dmp(n: int, z):
    """当前 mpmath 精度下的 h_n'(z)"""
    n = check_order(n)
    if n == 0:
        return -sph_hankel_mp(1, z)
    return sph_hankel_mp(n - 1, z) - (n + 1) / z * sph_hankel_mp(n, z)


def sph_bessel_reference(n: int, z: Number, dps: int = 40) -> complex:
    """mpmath 计算的 j_n(z)，仅用于校验"""
    with mp.workdps(dps):
        return complex(sph_bessel_mp(n, mp.mpc(complex(z))))


def sph_hankel_reference(n: int, z: Number, dps: int = 40) -> complex:
    """mpmath 计算的 h_n(z)（J_ν + iY_ν 形式，与递推无关），仅用于校验"""
    n = check_order(n)
    with mp.workdps(dps):
        zz = mp.mpc(complex(z))
        if zz == 0:
            raise DomainError("h_n(z) has a pole at z = 0")
        nu = n + mp.mpf(1) / 2
        value = mp.sqrt(mp.pi / (2 * zz)) * (mp.besselj(nu, zz) + 1j * mp.bessely(nu, zz))
        return complex(value)
