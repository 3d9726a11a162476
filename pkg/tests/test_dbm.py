from hypothesis import given, settings
from hypothesis import strategies as st

from tpmatch.dbm import INF, Dbm, add, bound, bound_strict, bound_value, format_bound

OPS = ("<", "<=", ">", ">=")


def satisfies(values, atoms):
    # oracle: check raw difference constraints directly, no closure involved
    v = (0.0, *values)
    for i, j, b in atoms:
        diff = v[i] - v[j]
        c = bound_value(b)
        if diff > c or (diff == c and bound_strict(b)):
            return False
    return all(x >= 0 for x in values)


def holds(op, value, c):
    return {"<": value < c, "<=": value <= c, ">": value > c, ">=": value >= c}[op]


nclocks = st.integers(1, 3)
points = st.lists(st.integers(0, 16).map(lambda k: k / 2), min_size=3, max_size=3)


@st.composite
def constraint_sets(draw):
    n = draw(nclocks)
    atoms = []
    for _ in range(draw(st.integers(0, 5))):
        i = draw(st.integers(0, n))
        j = draw(st.integers(0, n).filter(lambda j: j != i))
        atoms.append((i, j, bound(draw(st.integers(-6, 6)), draw(st.booleans()))))
    return n, atoms


@st.composite
def zones(draw):
    n, atoms = draw(constraint_sets())
    return Dbm.from_constraints(n, atoms)


@st.composite
def guards(draw, n):
    return [(draw(st.integers(0, n - 1)), draw(st.sampled_from(OPS)), draw(st.integers(0, 6)))
            for _ in range(draw(st.integers(0, 3)))]


class TestBounds:
    def test_encoding_order(self):
        assert bound(3, True) < bound(3, False) < bound(4, True)

    def test_add(self):
        assert add(bound(1, False), bound(2, False)) == bound(3, False)
        assert add(bound(1, True), bound(2, False)) == bound(3, True)
        assert add(bound(1, True), INF) == INF

    def test_format(self):
        assert format_bound(bound(1, True)) == "<1"
        assert format_bound(bound(-1, False)) == "<=-1"
        assert format_bound(INF) == "<inf"


class TestExamples:
    def test_zero_zone_is_closed(self):
        z = Dbm.zero(2)
        assert Dbm(z.dim, z.m) == z
        assert z.contains_point([0.0, 0.0])
        assert not z.contains_point([0.0, 0.5])

    def test_closure_detects_empty(self):
        # x <= 1, y - x <= 1, y >= 3
        z = Dbm.from_constraints(2, [(1, 0, bound(1, False)), (2, 1, bound(1, False)), (0, 2, bound(-3, False))])
        assert z.is_empty()

    def test_strict_upper_bound_text(self):
        z = Dbm.from_constraints(1, [(1, 0, bound(1, True))])
        assert z.to_text(["x"]) == "x-0<1 & 0-x<=0"

    def test_reset_after_first_a(self):
        z = Dbm.zero(1).elapse().and_guard([(0, ">", 1)]).reset([0])
        assert z == Dbm.zero(1)

    def test_elapse_then_guard(self):
        z = Dbm.zero(1).elapse().and_guard([(0, ">", 1)])
        assert z.to_text(["x"]) == "0-x<-1"

    def test_extrapolate_lower_bound(self):
        z = Dbm.from_constraints(1, [(0, 1, bound(-7, True))])
        assert z.extrapolate(1) == Dbm.from_constraints(1, [(0, 1, bound(-1, True))])

    def test_extrapolate_drops_large_upper_bound(self):
        z = Dbm.from_constraints(1, [(1, 0, bound(7, False))])
        assert z.extrapolate(1) == Dbm.universe(1)

    def test_unsatisfiable_guard(self):
        assert Dbm.zero(1).elapse().and_guard([(0, ">", 2), (0, "<", 1)]).is_empty()

    def test_free(self):
        z = Dbm.zero(2).elapse().and_guard([(0, "<", 1)])
        freed = z.free([1])
        assert freed.contains_point([0.5, 5.0])
        assert not freed.contains_point([1.5, 0.0])


class TestProperties:
    @settings(max_examples=200)
    @given(constraint_sets(), st.lists(points, min_size=20, max_size=20))
    def test_sampling_soundness(self, data, samples):
        n, atoms = data
        z = Dbm.from_constraints(n, atoms)
        for p in samples:
            assert z.contains_point(p[:n]) == satisfies(p[:n], atoms)

    @given(zones())
    def test_closure_idempotent(self, z):
        assert Dbm(z.dim, z.m) == z

    @given(zones())
    def test_empty_contains_nothing(self, z):
        if z.is_empty():
            assert not z.contains_point([0.0] * (z.dim - 1))

    @given(zones(), points, st.integers(0, 8).map(lambda k: k / 2))
    def test_elapse_contains_delays(self, z, p, delay):
        p = p[: z.dim - 1]
        if z.contains_point(p):
            assert z.elapse().contains_point([x + delay for x in p])

    @given(zones(), st.data())
    def test_reset_idempotent_and_sound(self, z, data):
        n = z.dim - 1
        clocks = data.draw(st.sets(st.integers(0, n - 1)))
        once = z.reset(clocks)
        assert once.reset(clocks) == once
        p = data.draw(points)[:n]
        if z.contains_point(p):
            assert once.contains_point([0.0 if k in clocks else x for k, x in enumerate(p)])

    @given(zones(), st.data())
    def test_and_guard_is_intersection(self, z, data):
        n = z.dim - 1
        g = data.draw(guards(n))
        zg = z.and_guard(g)
        for _ in range(10):
            p = data.draw(points)[:n]
            expected = z.contains_point(p) and all(holds(op, p[k], c) for k, op, c in g)
            assert zg.contains_point(p) == expected

    @given(zones(), st.integers(0, 4))
    def test_extrapolation_widens(self, z, M):
        e = z.extrapolate(M)
        assert e.includes(z)
        assert e.extrapolate(M) == e

    @given(zones(), zones(), st.lists(points, min_size=10, max_size=10))
    def test_includes_agrees_with_samples(self, a, b, samples):
        if a.dim != b.dim:
            return
        if a.includes(b):
            for p in samples:
                if b.contains_point(p[: a.dim - 1]):
                    assert a.contains_point(p[: a.dim - 1])
