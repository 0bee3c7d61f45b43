from diabml.rng import SplitMix64, derive_seed


def test_reference_outputs():
    r = SplitMix64(0)
    assert r.next_u64() == 0xE220A8397B1DCDAF
    assert r.next_u64() == 0x6E789E6AA1B965F4
    r = SplitMix64(1234567)
    assert [r.next_u64() for _ in range(3)] == [6457827717110365317, 3203168211198807973, 9817491932198370423]


def test_below_and_uniform_ranges():
    r = SplitMix64(99)
    assert all(0 <= r.below(7) < 7 for _ in range(1000))
    assert all(0.0 <= r.uniform01() < 1.0 for _ in range(1000))


def test_shuffle_is_a_deterministic_permutation():
    a, b = list(range(50)), list(range(50))
    SplitMix64(5).shuffle(a)
    SplitMix64(5).shuffle(b)
    assert a == b
    assert sorted(a) == list(range(50))
    assert a != list(range(50))


def test_derive_seed():
    assert derive_seed(10, 3) == SplitMix64(10 ^ 3).next_u64()
