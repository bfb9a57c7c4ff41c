"""Exactness of the Buchstab identity on integer sets."""

import random

from normform.buchstab import buchstab_report, buchstab_residual
from normform.fields import make_context, norm_form


def test_interval_example():
    assert buchstab_residual(range(100, 201), 5, 13) == 0


def test_norm_value_sets():
    ctx = make_context([-2, 0, 0], 1)
    vals = [norm_form((a, b), ctx) for a in range(1, 20) for b in range(1, 20)]
    assert buchstab_residual(vals, 10, 100) == 0


def test_equal_cutoffs_empty_sum():
    rep = buchstab_report(range(50, 120), 7, 7)
    assert rep.middle_sum == 0 and rep.residual == 0


def test_prime_powers_handled():
    # elements like p^2 stress the >= convention in the subtracted terms
    vals = [4, 8, 9, 27, 25, 125, 49, 6, 12, 30, 210, 121, 169]
    for z1, z2 in ((1, 5), (2, 7), (3, 11), (5, 13)):
        assert buchstab_residual(vals, z1, z2) == 0


def test_randomized_instances():
    rng = random.Random(404)
    for _ in range(30):
        vals = [rng.randint(2, 10**6) for _ in range(80)]
        z1 = rng.choice([2, 3, 5, 10, 30])
        z2 = z1 + rng.choice([0, 5, 20, 100])
        assert buchstab_residual(vals, z1, z2) == 0


def test_ones_counted_everywhere():
    assert buchstab_residual([1, 1, 7, 30], 2, 10) == 0
