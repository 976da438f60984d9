# tests/test_fgmodule.py
import pytest

from models.errors import ModuleParseError
from models.fgmodule import (
    INFINITE,
    FGModule,
    LengthVector,
    Partition,
    Presentation,
    Prime,
    chi,
    direct_sum,
    from_presentation,
    length_vector,
    parse_module,
    to_presentation,
)
from models.matrix import IntMatrix


def test_prime_accepts_zero_and_primes_only():
    assert Prime(0).is_generic
    assert Prime(7) == 7
    for bad in (1, 4, -3):
        with pytest.raises(ValueError):
            Prime(bad)
    assert str(Prime(2)) == "2"
    assert f"{Prime(3)}" == "3"
    assert repr(Prime(5)) == "Prime(5)"


def test_partition_is_sorted_and_positive():
    assert Partition.of(1, 3, 2) == (3, 2, 1)
    assert Partition.of(3, 1).conjugate() == (2, 1, 1)
    assert Partition.of(2, 2).remove(2) == (2,)
    with pytest.raises(ValueError):
        Partition.of(0)


@pytest.mark.parametrize("text, rank, torsion", [
    ("Z^2 + Z/4 + Z/9", 2, {2: [2], 3: [2]}),
    ("Z/12", 0, {2: [2], 3: [1]}),
    ("0", 0, {}),
    ("Z", 1, {}),
    ("(Z/2)^3 + Z/8", 0, {2: [3, 1, 1, 1]}),
    ("(Z + Z/3)^2", 2, {3: [1, 1]}),
    ("  Z/2+Z/2 ", 0, {2: [1, 1]}),
])
def test_parse_module(text, rank, torsion):
    assert parse_module(text) == FGModule(rank, torsion)


@pytest.mark.parametrize("text", [
    "", "Z/0", "Z/1", "Z^0", "Z +", "Q", "Z/2 +", "2", "0 + Z", "(Z/2)", "Z/-2",
])
def test_parse_errors(text):
    with pytest.raises(ModuleParseError):
        parse_module(text)


def test_modulus_limit():
    with pytest.raises(ModuleParseError):
        parse_module("Z/1000", max_modulus=999)
    assert parse_module("Z/999", max_modulus=999) == FGModule.cyclic(999)


def test_string_form_reparses():
    for text in ("Z^2 + Z/4 + Z/9", "Z/12", "0", "(Z/2)^3 + Z/8 + Z"):
        X = parse_module(text)
        assert parse_module(str(X)) == X
    assert str(parse_module("Z/12 + Z^2")) == "Z^2 + Z/4 + Z/3"


def test_cyclic_splits_by_crt():
    X = FGModule.cyclic(360)
    assert X.torsion_map() == {2: (3,), 3: (2,), 5: (1,)}
    assert X.order() == 360
    for p, part in X.torsion:
        assert 360 % (p ** part[0]) == 0 and 360 % (p ** (part[0] + 1)) != 0


def _trial_division(n):
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def test_every_small_cyclic_module_splits_by_crt():
    for n in range(2, 1001):
        X = parse_module(f"Z/{n}")
        assert X.rank == 0
        assert X.torsion_map() == {p: (e,) for p, e in _trial_division(n).items()}


def test_chi():
    assert chi(parse_module("Z^2 + Z/4 + Z/9"), 0) == 2
    assert chi(parse_module("Z/4 + Z/8"), 2) == 5
    assert chi(parse_module("Z + Z/4"), 2) == INFINITE
    assert chi(parse_module("Z/4"), 3) == 0
    with pytest.raises(ValueError):
        chi(parse_module("Z/4"), 4)


def test_chi_is_additive():
    modules = ["0", "Z", "Z^2 + Z/4", "Z/8 + Z/2", "Z/9 + Z/3", "Z/12", "Z + Z/27"]
    for a in modules:
        for b in modules:
            A, B = parse_module(a), parse_module(b)
            for p in (0, 2, 3, 5):
                assert chi(direct_sum(A, B), p) == chi(A, p) + chi(B, p)
    assert chi(direct_sum(parse_module("Z"), parse_module("Z/4")), 2) == INFINITE


def test_length_vector():
    assert length_vector(parse_module("Z/4 + Z/9")).as_dict() == {2: 2, 3: 2}
    assert length_vector(FGModule.zero()) == LengthVector()
    assert length_vector(parse_module("Z/2 + Z/2 + Z/27")).as_dict() == {2: 2, 3: 3}
    with pytest.raises(ValueError):
        length_vector(parse_module("Z"))


def test_length_vector_restriction():
    v = length_vector(parse_module("Z/4 + Z/5"))
    assert v.restricted([2, 3, 5]) == (2, 0, 1)
    assert LengthVector([(2, 1), (2, 1), (3, 0)]).as_dict() == {2: 2}


def test_direct_sum():
    X = direct_sum(parse_module("Z + Z/2"), parse_module("Z/4"))
    assert X == FGModule(1, {2: [2, 1]})
    A = parse_module("Z/9 + Z")
    assert direct_sum(A, FGModule.zero()) == A
    assert direct_sum(FGModule.cyclic(2), FGModule.cyclic(2)).torsion_map() == {2: (1, 1)}


def test_parts():
    X = parse_module("Z^2 + Z/4 + Z/3")
    assert X.torsion_part() == parse_module("Z/4 + Z/3")
    assert X.free_part() == FGModule.free(2)
    assert X.primary_part(2) == FGModule.cyclic(4)
    assert X.without_prime(2) == parse_module("Z^2 + Z/3")
    assert X.primes == (2, 3)
    with pytest.raises(ValueError):
        X.order()


def test_from_presentation():
    assert from_presentation(Presentation.diagonal([2, 4])) == FGModule(0, {2: [2, 1]})
    assert from_presentation(Presentation(2, IntMatrix([[2, 4], [6, 8]]))) == FGModule(0, {2: [2, 1]})
    assert from_presentation(Presentation(1, IntMatrix([], rows=1, cols=0))) == FGModule.free(1)
    assert from_presentation(Presentation.free(3)) == FGModule.free(3)


def test_to_presentation():
    P = to_presentation(parse_module("Z + Z/4"))
    assert P.generators == 2
    assert P.relations == IntMatrix.diagonal([0, 4])
    assert to_presentation(FGModule.zero()).generators == 0
    assert to_presentation(parse_module("Z/2 + Z/3")).relations == IntMatrix.diagonal([2, 3])


def test_presentation_is_invariant_under_unimodular_change(rng):
    base = IntMatrix([[2, 4, 0], [6, 8, 0], [0, 0, 9]])
    expected = from_presentation(Presentation(3, base))
    assert expected == parse_module("Z/2 + Z/4 + Z/9")
    for _ in range(30):
        P, Q = IntMatrix.identity(3), IntMatrix.identity(3)
        for _ in range(6):
            i, j = (int(k) for k in rng.choice(3, size=2, replace=False))
            P = IntMatrix.identity(3).with_entry(i, j, int(rng.integers(-3, 4))) @ P
            i, j = (int(k) for k in rng.choice(3, size=2, replace=False))
            Q = IntMatrix.identity(3).with_entry(i, j, int(rng.integers(-3, 4))) @ Q
        assert from_presentation(Presentation(3, P @ base @ Q)) == expected


def test_presentation_round_trip():
    for text in ("Z^2 + Z/8 + Z/8 + Z/3", "0", "Z/7", "Z^3"):
        X = parse_module(text)
        assert from_presentation(to_presentation(X)) == X
