"""Chern-class bookkeeping: truncated total classes, duals, twists,
excess classes, and principal-parts bundles."""

import pytest

from chowkit.bundles import (BundleClass, excess_class, principal_parts_chern)
from chowkit.spaces import build_space


@pytest.fixture(scope="module")
def pe():
    return build_space("PE", truncation=8)


def test_trivial_and_line(pe):
    t = BundleClass.trivial(pe.ring, rank=2)
    assert t.c1 == pe.zero()
    assert t.total == pe.one()
    line = BundleClass.line(pe.gen("z"))
    assert line.rank == 1
    assert line.c1 == pe.gen("z")
    assert line.top_chern() == pe.gen("z")


def test_total_class_validation(pe):
    with pytest.raises(ValueError):
        BundleClass(1, pe.gen("z"))  # degree-0 part is 0, not 1
    with pytest.raises(ValueError):
        # c2 beyond rank 1
        BundleClass(1, pe.one() + pe.gen("z") + pe.gen("z") * pe.gen("a1"))


def test_c_indexing(pe):
    e = BundleClass(2, pe.one() + pe.parse("a1") + pe.parse("a2"))
    assert e.c(0) == pe.one()
    assert e.c(1) == pe.parse("a1")
    assert e.c(2) == pe.parse("a2")
    assert e.c(3) == pe.zero()
    assert e.top_chern() == pe.parse("a2")


def test_whitney_sum(pe):
    l1 = BundleClass.line(pe.gen("z"))
    l2 = BundleClass.line(pe.gen("a1"))
    s = l1.whitney(l2)
    assert s.rank == 2
    assert s.c1 == pe.parse("z + a1")
    assert s.c(2) == pe.parse("a1*z")


def test_dual(pe):
    e = BundleClass(2, pe.one() + pe.parse("a1") + pe.parse("a2"))
    d = e.dual()
    assert d.c1 == pe.parse("-a1")
    assert d.c(2) == pe.parse("a2")
    assert d.dual().total == e.total


def test_tensor_line(pe):
    e = BundleClass(2, pe.one() + pe.parse("a1") + pe.parse("a2"))
    t = e.tensor_line(pe.gen("z"))
    assert t.c1 == pe.parse("a1 + 2*z")
    # c2(E (x) L) = c2 + c1*t + t^2
    assert t.c(2) == pe.parse("a2 + a1*z + z**2")
    # twisting by the zero class is the identity
    same = e.tensor_line(pe.zero())
    assert same.total == e.total


def test_inverse_total(pe):
    e = BundleClass(2, pe.one() + pe.parse("a1") + pe.parse("a2"))
    inv = e.inverse_total()
    assert (e.total * inv).canonical() == "1"


def test_excess_class(pe):
    ambient = BundleClass(2, (pe.one() + pe.gen("z"))
                          * (pe.one() + pe.gen("a1")))
    sub = BundleClass.line(pe.gen("z"))
    assert excess_class(ambient, sub) == pe.gen("a1")
    with pytest.raises(ValueError):
        excess_class(sub, ambient)


def test_principal_parts_chern(pe):
    line_c1 = pe.parse("3*zeta_p - a1 - (g+2)*z")
    omega_c1 = pe.parse("-2*zeta_p + a1 + (g+2)*z")
    p0 = principal_parts_chern(line_c1, omega_c1, 0)
    assert p0.rank == 1 and p0.c1 == line_c1
    p2 = principal_parts_chern(line_c1, omega_c1, 2)
    assert p2.rank == 3
    # c1 of the order-2 bundle: 3*L + (0+1+2)*omega
    assert p2.c1 == 3 * line_c1 + 3 * omega_c1
