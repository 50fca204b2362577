# Copyright 2026 The fluxcp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Closed-form Stark numbers, a brute-force 2x2 check, and the cancellation
root from scipy's brentq. Prints the values frozen in test_stark.cpp."""

import numpy as np
from scipy.optimize import brentq


def shift(om, det):
    return (np.sqrt(om * om + det * det) - det) / 2


def shift_eig(om, det):
    # upper dressed level of [[0, om/2], [om/2, -det]] measured from 0
    w = np.linalg.eigvalsh(np.array([[0.0, om / 2], [om / 2, -det]]))
    return w[-1]


def induced(ou, ol, delta, split):
    return shift(ou, delta - split) - shift(ol, delta)


if __name__ == "__main__":
    print(f"shift(52.4, 49) = {shift(52.4, 49):.9f} MHz, eig {shift_eig(52.4, 49):.9f}")
    print(f"shift(30.4, 153.5) = {shift(30.4, 153.5):.9f} MHz")
    print(f"induced(52.4, 52.4/1.114, 57, 8) = {induced(52.4, 52.4 / 1.114, 57, 8):.9f} MHz")
    print(f"induced(52.4, 47.0, 57, 8) = {induced(52.4, 47.0, 57, 8):.9f} MHz")
    print(f"induced(30.4, 27.3, 162, 8.5) = {induced(30.4, 27.3, 162, 8.5):.9f} MHz")
    # main device, spectrum values from spectrum_oracle.py (GHz)
    f1020, split, zz, ratio = 4.487737159008755, 0.007684353863605331, -0.0002932680900462614, 1.1136608676810422
    delta = 4.65 - f1020
    root = brentq(lambda o: zz + induced(o, o / ratio, delta, split), 0, delta, xtol=1e-15)
    print(f"cancellation at 4.65 GHz: delta={delta*1e3:.6f} MHz omega={root*1e3:.9f} MHz")
    # dressed dephasing, T1 = 5 us
    g1 = 1 / 5000.0
    for lam in (0.2, 0.4):
        print(f"lambda={lam}: 1/Gamma' = {1 / (lam * lam * g1 / 8) / 1e3:.6f} us")
    # zero crossing of the total ZZ at Omega_11-21 = 52 MHz, blue side
    cross = brentq(lambda f: zz + induced(0.052, 0.052 / ratio, f - f1020, split), 4.6, 5.5, xtol=1e-14)
    print(f"zero crossing at 52 MHz: f_d = {cross:.9f} GHz")
