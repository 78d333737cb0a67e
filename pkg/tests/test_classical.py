import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from openrel.classical import (
    BouncerParams,
    LiouvilleSupport,
    MeasurementRecord,
    bouncer_position,
    collapse,
    kicked_energy,
    rest_energy,
    support_on_slice,
)
from openrel.errors import (
    ImpossibleOutcomeError,
    InconsistentRecordError,
    InvalidScenarioError,
    OutOfModelError,
)
from openrel.spacetime import FourVector, SpacelikeSlice, slice_time

P = BouncerParams(m=3.0, p=4.0, k=4.0)
E0, EP, EM = 5.0, math.sqrt(73.0), 3.0
ALICE = SpacelikeSlice(-0.5, 0.0)
BOB = SpacelikeSlice(0.5, 0.0)
BEFORE_BOTH = SpacelikeSlice(0.0, -2.0)
AFTER_BOTH = SpacelikeSlice(0.0, 2.0)


def enumerate_support(params, slc):
    """Oracle: walk every equiprobable pre-kick sign history and histogram energies."""
    counts = {}
    for s1, s2 in itertools.product((1, -1), repeat=2):
        energies = []
        for particle, sign in ((1, s1), (2, s2)):
            kick = params.kick_event(particle)
            kicked = slice_time(slc, kick) < slc.tau
            momentum = params.k + sign * params.p if kicked else params.p
            energies.append(round(math.sqrt(params.m ** 2 + momentum ** 2), 9))
        key = tuple(energies)
        counts[key] = counts.get(key, 0) + 0.25
    return counts


def as_dict(support):
    return {(round(e1, 9), round(e2, 9)): w for (e1, e2), w in support}


class TestParams:
    @pytest.mark.parametrize("kwargs", [dict(m=0.0), dict(m=-1.0), dict(p=-1.0),
                                        dict(segment_half_length=0.0)])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            BouncerParams(**kwargs)

    def test_kicks_must_be_spacelike(self):
        with pytest.raises(InvalidScenarioError):
            BouncerParams(kick_event_1=FourVector(0, 0), kick_event_2=FourVector(3, 1))


class TestEnergies:
    def test_rest_energy(self):
        assert rest_energy(P) == 5.0
        assert rest_energy(BouncerParams(m=1.0, p=0.0)) == 1.0
        assert abs(rest_energy(P) - math.sqrt(9 + 16)) <= 1e-15

    def test_kicked_energy(self):
        assert kicked_energy(P, -1) == 3.0
        assert kicked_energy(P, +1) == pytest.approx(8.54400374531753, abs=1e-12)
        assert kicked_energy(P, +1) == pytest.approx(math.sqrt(73), abs=1e-15)

    def test_zero_kick(self):
        q = BouncerParams(m=3.0, p=4.0, k=0.0)
        assert kicked_energy(q, 1) == kicked_energy(q, -1) == rest_energy(q) == 5.0

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            kicked_energy(P, 0)

    @given(st.floats(0.01, 100), st.floats(0, 100), st.floats(0, 100))
    def test_plus_dominates(self, m, p, k):
        q = BouncerParams(m=m, p=p, k=k)
        ep, em = kicked_energy(q, 1), kicked_energy(q, -1)
        assert ep >= em
        if k * p == 0:
            assert ep == pytest.approx(em, rel=1e-12)
        elif k * p > 1e-6:
            assert ep > em


class TestLiouvilleSupport:
    def test_merges_duplicates(self):
        s = LiouvilleSupport([((1.0, 2.0), 0.5), ((1.0 + 1e-12, 2.0), 0.5)])
        assert len(s) == 1
        assert s.points[0][1] == 1.0

    @pytest.mark.parametrize("points", [
        [((1.0, 1.0), 0.5)],
        [((1.0, 1.0), 1.5), ((2.0, 1.0), -0.5)],
        [],
    ])
    def test_invalid(self, points):
        with pytest.raises(ValueError):
            LiouvilleSupport(points)

    def test_order_independent(self):
        a = LiouvilleSupport([((2.0, 1.0), 0.25), ((1.0, 1.0), 0.75)])
        b = LiouvilleSupport([((1.0, 1.0), 0.75), ((2.0, 1.0), 0.25)])
        assert a.points == b.points and a.is_close(b)


class TestSupportOnSlice:
    def test_before_both(self):
        s = support_on_slice(P, BEFORE_BOTH)
        assert as_dict(s) == {(E0, E0): 1.0}

    def test_alice(self):
        s = support_on_slice(P, ALICE)
        assert s.is_close(LiouvilleSupport([((EP, E0), 0.5), ((EM, E0), 0.5)]), 1e-12)

    def test_bob(self):
        s = support_on_slice(P, BOB)
        assert s.is_close(LiouvilleSupport([((E0, EP), 0.5), ((E0, EM), 0.5)]), 1e-12)

    def test_after_both(self):
        s = support_on_slice(P, AFTER_BOTH)
        assert len(s) == 4
        assert all(w == 0.25 for _, w in s)

    def test_measured(self):
        s = support_on_slice(P, ALICE, MeasurementRecord(particle_1=1))
        assert as_dict(s) == {(round(EP, 9), E0): 1.0}

    def test_record_for_unkicked_particle(self):
        with pytest.raises(InconsistentRecordError):
            support_on_slice(P, ALICE, MeasurementRecord(particle_2=-1))

    def test_degenerate_kick_is_single_point(self):
        q = BouncerParams(m=3.0, p=4.0, k=0.0)
        assert len(support_on_slice(q, AFTER_BOTH)) == 1

    @given(st.floats(-3, 3), st.floats(-4, 4), st.floats(0, 5))
    def test_matches_enumeration(self, chi, tau, k):
        slc = SpacelikeSlice(chi, tau)
        q = BouncerParams(m=3.0, p=4.0, k=k)
        n_before = sum(slice_time(slc, q.kick_event(i)) < tau - 1e-9 for i in (1, 2))
        on_edge = any(abs(slice_time(slc, q.kick_event(i)) - tau) <= 1e-9 for i in (1, 2))
        if on_edge:
            return
        support = support_on_slice(q, slc)
        assert as_dict(support) == pytest.approx(enumerate_support(q, slc), abs=1e-12)
        if k > 1e-6:
            assert len(support) == 2 ** n_before

    @given(st.floats(-3, 3), st.floats(0.0, 4.0))
    def test_energy_marginal_frame_independent(self, chi, tau):
        # any slice that has kick 1 in its past gives E1 = E± at ½ each
        slc = SpacelikeSlice(chi, slice_time(SpacelikeSlice(chi), P.kick_event_1) + 0.01 + tau)
        marginal = support_on_slice(P, slc).marginal(1)
        assert marginal == pytest.approx({EM: 0.5, EP: 0.5}, abs=1e-12)


class TestCollapse:
    def test_alice_support(self):
        s = collapse(support_on_slice(P, ALICE), 1, EP)
        assert as_dict(s) == {(round(EP, 9), E0): 1.0}

    def test_idempotent_on_certainty(self):
        s = support_on_slice(P, BEFORE_BOTH)
        assert collapse(s, 2, E0).is_close(s)

    def test_four_point(self):
        s = collapse(support_on_slice(P, AFTER_BOTH), 2, EM)
        assert as_dict(s) == {(round(EP, 9), EM): 0.5, (EM, EM): 0.5}

    def test_impossible(self):
        with pytest.raises(ImpossibleOutcomeError):
            collapse(support_on_slice(P, ALICE), 2, EP)

    @given(st.lists(st.tuples(st.sampled_from([1, 2]), st.sampled_from([1, -1])), max_size=4))
    def test_weights_stay_normalized(self, steps):
        s = support_on_slice(P, AFTER_BOTH)
        for particle, sign in steps:
            target = kicked_energy(P, sign)
            if any(abs(xy[particle - 1] - target) <= 1e-9 for xy, _ in s):
                s = collapse(s, particle, target)
        assert abs(sum(w for _, w in s) - 1.0) <= 1e-12


class TestBouncerPosition:
    q = BouncerParams(m=3.0, p=4.0, k=4.0, segment_half_length=1.0, x_center_1=-1.0,
                      kick_event_1=FourVector(100.0, -1.0), kick_event_2=FourVector(100.0, 1.0))
    v = 4.0 / 5.0

    def test_phase_points(self):
        L = 1.0
        assert bouncer_position(self.q, 1, 0.0) == -1.0
        assert bouncer_position(self.q, 1, L / self.v) == pytest.approx(0.0, abs=1e-12)
        assert bouncer_position(self.q, 1, 2 * L / self.v) == pytest.approx(-1.0, abs=1e-12)
        assert bouncer_position(self.q, 1, 3 * L / self.v) == pytest.approx(-2.0, abs=1e-12)
        assert bouncer_position(self.q, 2, 4 * L / self.v) == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(-50, 99.9))
    def test_stays_on_segment(self, t):
        x = bouncer_position(self.q, 1, t)
        assert -2.0 - 1e-12 <= x <= 0.0 + 1e-12

    def test_after_kick(self):
        with pytest.raises(OutOfModelError):
            bouncer_position(self.q, 1, 100.0)

    def test_at_rest(self):
        q = BouncerParams(p=0.0, kick_event_1=FourVector(5.0, -1.0), kick_event_2=FourVector(5.0, 1.0))
        assert bouncer_position(q, 1, 2.0) == -1.0
