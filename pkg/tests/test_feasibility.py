import pytest
from hypothesis import given
from hypothesis import strategies as st

from metroaccess.catalog import EncodingProfile, builtin_catalog, builtin_encodings
from metroaccess.errors import ResolutionMismatch
from metroaccess.feasibility import (
    AGGREGATE_CAPACITY,
    HIGH_BANDWIDTH,
    LOW_BANDWIDTH,
    PER_LINE_LIMIT,
    SPLIT_UNSUPPORTED,
    STREAM_CAP,
    Enhancements,
    Scenario,
    active_stream_slots,
    aggregate_demand,
    builtin_scenarios,
    check_feasibility,
    feasibility_matrix,
    nonfunc_ratio,
    per_home_demand,
    select_encoding,
    technology_groups,
)

SCEN = {s.id: s for s in builtin_scenarios()}
TECH = {t.label: t for t in builtin_catalog()}
ENCS = builtin_encodings()


def enc(codec, scen):
    return select_encoding(ENCS, SCEN[scen], codec)


class TestDemand:
    @pytest.mark.parametrize("scen,codec,expected", [
        ("Sc1", "AVC", 6.0),
        ("Sc1", "HEVC", 3.0),
        ("Sc2", "AVC", 12.1),
        ("Sc2", "HEVC", 6.55),
        ("Sc3", "AVC", 11.1),
        ("Sc3", "HEVC", 5.55),
        ("Sc4", "AVC", 29.6),
        ("Sc4", "HEVC", 14.8),
    ])
    def test_per_home(self, scen, codec, expected):
        assert per_home_demand(SCEN[scen], enc(codec, scen)) == pytest.approx(expected)

    def test_resolution_mismatch(self):
        uhd = EncodingProfile("AVC", "4K", "low", 16.0)
        with pytest.raises(ResolutionMismatch):
            per_home_demand(SCEN["Sc1"], uhd)

    def test_stream_cap_gives_360_slots(self):
        assert active_stream_slots(SCEN["Sc1"]) == 360
        agg = aggregate_demand(SCEN["Sc1"], enc("AVC", "Sc1"), Enhancements(True, "AVC"))
        assert agg == pytest.approx(360 * 6.0)

    def test_stream_cap_override(self):
        s = Scenario("Sx", 1000, 1.0, 0.0, "HD", 1024, nonfunc_model=STREAM_CAP,
                     stream_cap=200)
        assert active_stream_slots(s) == 200

    def test_no_effect_scenario(self):
        assert nonfunc_ratio(SCEN["Sc2"], enc("AVC", "Sc2")) == 1.0

    def test_aggregate_ratio(self):
        assert nonfunc_ratio(SCEN["Sc4"], enc("HEVC", "Sc4")) == pytest.approx(0.46875)


class TestConstraints:
    def test_copper_per_line(self):
        cell = check_feasibility(TECH["Ta"], SCEN["Sc4"], enc("HEVC", "Sc4"),
                                 Enhancements(True, "HEVC"))
        assert PER_LINE_LIMIT in cell.violated_constraints

    def test_copper_sc1_needs_nonfunc(self):
        e = enc("AVC", "Sc1")
        assert not check_feasibility(TECH["Ta"], SCEN["Sc1"], e,
                                     Enhancements(False, "AVC")).feasible
        assert check_feasibility(TECH["Ta"], SCEN["Sc1"], e, Enhancements(True, "AVC")).feasible

    def test_pon_split_at_1024(self):
        cell = check_feasibility(TECH["Td"], SCEN["Sc1"], enc("AVC", "Sc1"),
                                 Enhancements(True, "AVC"))
        assert cell.violated_constraints == (SPLIT_UNSUPPORTED,)

    def test_tb_capacity_sc3_avc(self):
        e = enc("AVC", "Sc3")
        without = check_feasibility(TECH["Tb"], SCEN["Sc3"], e, Enhancements(False, "AVC"))
        assert without.violated_constraints == (AGGREGATE_CAPACITY,)
        assert check_feasibility(TECH["Tb"], SCEN["Sc3"], e, Enhancements(True, "AVC")).feasible

    def test_codec_mismatch(self):
        with pytest.raises(ValueError):
            check_feasibility(TECH["Td"], SCEN["Sc2"], enc("AVC", "Sc2"),
                              Enhancements(False, "HEVC"))


def test_mesh_has_80_cells():
    mesh = feasibility_matrix(list(TECH.values()), list(SCEN.values()), ENCS)
    assert len(mesh) == 80


def test_groups():
    groups = technology_groups(TECH.values())
    assert groups[LOW_BANDWIDTH] == ["Ta", "Tb"]
    assert groups[HIGH_BANDWIDTH] == ["Tc", "Td", "Te"]


@given(st.sampled_from(sorted(TECH)), st.sampled_from(sorted(SCEN)),
       st.sampled_from(["AVC", "HEVC"]))
def test_nonfunc_never_hurts(label, scen, codec):
    e = enc(codec, scen)
    off = check_feasibility(TECH[label], SCEN[scen], e, Enhancements(False, codec))
    on = check_feasibility(TECH[label], SCEN[scen], e, Enhancements(True, codec))
    assert on.aggregate_demand <= off.aggregate_demand
    assert set(on.violated_constraints) <= set(off.violated_constraints)


@given(st.sampled_from(sorted(TECH)), st.sampled_from(sorted(SCEN)), st.booleans())
def test_hevc_never_hurts(label, scen, nf):
    avc = check_feasibility(TECH[label], SCEN[scen], enc("AVC", scen), Enhancements(nf, "AVC"))
    hevc = check_feasibility(TECH[label], SCEN[scen], enc("HEVC", scen), Enhancements(nf, "HEVC"))
    assert not avc.feasible or hevc.feasible


@given(st.integers(1, 5000), st.floats(0.1, 10), st.floats(0, 5),
       st.floats(60, 7200), st.floats(0.5, 30))
def test_stream_cap_bounded_by_homes(homes, channels, reserve, window, interval):
    s = Scenario("Sx", homes, channels, reserve, "HD", 64, arrival_window=window,
                 nonfunc_model=STREAM_CAP, sync_interval=interval)
    e = EncodingProfile("AVC", "HD", "low", 6.0)
    with_nf = aggregate_demand(s, e, Enhancements(True, "AVC"))
    assert with_nf <= aggregate_demand(s, e, Enhancements(False, "AVC")) + 1e-9
    assert active_stream_slots(s) <= homes
