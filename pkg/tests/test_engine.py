"""Scenario engine: determinism, branching, views, ordering properties."""
import numpy as np
import pytest

from episim import (DecisionAction, HistoryViolationError, NotFoundError,
                    Scenario, Seed, ValidationError, branch_scenario,
                    create_scenario, frame, run, series, summarize)
from episim.config import ScenarioConfig, config_from_mapping
from episim.dataio import frames_csv_text
from episim.params import DiseaseParams

from conftest import make_random_network, random_config_mapping


def small_setup(rng, horizon=60, **overrides):
    network = make_random_network(rng)
    mapping = random_config_mapping(rng, network, horizon=horizon)
    mapping.update(overrides)
    config, _ = config_from_mapping(mapping)
    return network, config


class TestRunBasics:
    def test_zero_seeds_all_zero_frames(self, rng):
        network, config = small_setup(rng, seeds=[])
        result = run(create_scenario(config, network), network)
        for name, array in result.arrays.items():
            assert not array.any(), name

    def test_single_seed_day0_one_nonzero_county(self, rng):
        network = make_random_network(rng)
        mapping = random_config_mapping(rng, network, horizon=40)
        mapping["seeds"] = [{"fips": network.counties[0].fips, "day": 0,
                             "cases": 10}]
        mapping["spread_rate"] = 0.0
        config, _ = config_from_mapping(mapping)
        result = run(create_scenario(config, network), network)
        day0 = result.column("cumulative_sick")[0]
        assert day0[0] > 0
        assert not day0[1:].any()

    def test_run_twice_identical_bytes(self, rng):
        network, config = small_setup(rng)
        scenario = create_scenario(config, network)
        a = frames_csv_text(run(scenario, network))
        b = frames_csv_text(run(scenario, network))
        assert a == b

    def test_stochastic_rounding_reproducible(self, rng):
        network, config = small_setup(rng, rounding="stochastic", rng_seed=42)
        scenario = create_scenario(config, network)
        a = frames_csv_text(run(scenario, network))
        b = frames_csv_text(run(scenario, network))
        assert a == b

    def test_invalid_config_lists_every_field(self, rng):
        network = make_random_network(rng)
        mapping = random_config_mapping(rng, network)
        mapping["mortality_rate"] = 1.2
        mapping["occupancy_fraction"] = -0.5
        with pytest.raises(ValidationError) as err:
            config_from_mapping(mapping)
        assert "mortality_rate" in err.value.fields
        assert "occupancy_fraction" in err.value.fields

    def test_seed_unknown_fips_rejected(self, rng):
        network = make_random_network(rng)
        mapping = random_config_mapping(rng, network)
        mapping["seeds"] = [{"fips": "99999", "day": 0, "cases": 5}]
        config, _ = config_from_mapping(mapping)
        with pytest.raises(ValidationError):
            create_scenario(config, network)

    def test_seeding_every_county_advances_in_lockstep(self, rng):
        network = make_random_network(rng)
        mapping = random_config_mapping(rng, network, horizon=30)
        mapping["seeds"] = [{"fips": c.fips, "day": 0, "cases": 10}
                            for c in network.counties]
        config, _ = config_from_mapping(mapping)
        result = run(create_scenario(config, network), network)
        day0 = result.column("cumulative_sick")[0]
        assert np.all(day0 >= 10)  # every local clock started on day 0


class TestBranching:
    def base(self, rng):
        network = make_random_network(rng)
        mapping = random_config_mapping(rng, network, horizon=50)
        mapping["seeds"] = [{"fips": network.counties[0].fips, "day": 0,
                             "cases": 50}]
        mapping["actions"] = [{"kind": "media_alerts", "start_day": 2}]
        config, _ = config_from_mapping(mapping)
        return network, create_scenario(config, network)

    def test_empty_branch_equals_parent(self, rng):
        network, parent = self.base(rng)
        child = branch_scenario(parent, 10, [])
        assert frames_csv_text(run(child, network)) == \
            frames_csv_text(run(parent, network))

    def test_prefix_equivalence(self, rng):
        network, parent = self.base(rng)
        child = branch_scenario(parent, 15, [
            DecisionAction("shelter_in_place", 15)])
        parent_result = run(parent, network)
        child_result = run(child, network)
        for name in parent_result.arrays:
            np.testing.assert_array_equal(
                parent_result.arrays[name][:15],
                child_result.arrays[name][:15], err_msg=name)

    def test_prefix_equivalence_with_stochastic_rounding(self, rng):
        network, parent = self.base(rng)
        from dataclasses import replace as dc_replace
        stochastic = Scenario(id=parent.id,
                              config=dc_replace(parent.config,
                                                rounding="stochastic",
                                                rng_seed=99))
        child = branch_scenario(stochastic, 12,
                                [DecisionAction("shelter_in_place", 12)])
        parent_result = run(stochastic, network)
        child_result = run(child, network)
        for name in parent_result.arrays:
            np.testing.assert_array_equal(
                parent_result.arrays[name][:12],
                child_result.arrays[name][:12], err_msg=name)

    def test_action_before_branch_day_rejected(self, rng):
        _, parent = self.base(rng)
        with pytest.raises(HistoryViolationError):
            branch_scenario(parent, 10, [DecisionAction("shelter_in_place", 9)])

    def test_replacing_past_action_rejected(self, rng):
        _, parent = self.base(rng)  # media_alerts starts on day 2
        with pytest.raises(HistoryViolationError):
            branch_scenario(parent, 10, [DecisionAction("media_alerts", 20)])

    def test_replacing_future_action_allowed(self, rng):
        network, parent = self.base(rng)
        mid = branch_scenario(parent, 5, [DecisionAction("shelter_in_place", 30)])
        child = branch_scenario(mid, 10, [DecisionAction("shelter_in_place", 12)])
        kinds = [a.kind for a in child.config.actions]
        assert kinds.count("shelter_in_place") == 1
        assert [a for a in child.config.actions
                if a.kind == "shelter_in_place"][0].start_day == 12
        assert child.parent_id == mid.id

    def test_branch_day_out_of_range(self, rng):
        _, parent = self.base(rng)
        with pytest.raises(ValidationError):
            branch_scenario(parent, parent.config.params.horizon + 1, [])


class TestViews:
    @pytest.fixture()
    def setup(self, rng):
        network, config = small_setup(rng, horizon=45)
        scenario = create_scenario(config, network)
        return network, run(scenario, network)

    def test_series_lengths_and_unknowns(self, setup):
        network, result = setup
        fips = list(result.fips[:2])
        out = series(result, fips, "active_sick")
        assert set(out) == set(fips)
        assert all(len(v) == result.horizon for v in out.values())
        assert series(result, [], "active_sick") == {}
        with pytest.raises(NotFoundError):
            series(result, ["00000"], "active_sick")
        with pytest.raises(ValidationError):
            series(result, fips, "nope")

    def test_frame_matches_series(self, setup):
        network, result = setup
        for metric in ("new_sick", "cumulative_sick", "active_sick",
                       "hospital_demand", "beds_filled", "deaths"):
            values, normalized = frame(result, 20, metric)
            full = series(result, list(result.fips), metric)
            for i, fips in enumerate(result.fips):
                assert values[fips] == full[fips][20]
                assert normalized[fips] == values[fips] / result.populations[i]

    def test_frame_day_out_of_range(self, setup):
        _, result = setup
        with pytest.raises(ValidationError):
            frame(result, result.horizon, "active_sick")

    def test_new_sick_sums_to_final_cumulative(self, setup):
        # Brute-force cross-aggregation identity, seeds included.
        _, result = setup
        assert result.column("new_sick").sum() == \
            result.column("cumulative_sick")[-1].sum()

    def test_summary_peak_matches_bruteforce_scan(self, setup):
        _, result = setup
        summary = summarize(result)
        statewide = result.column("active_sick").sum(axis=1)
        best_day, best = 0, 0.0
        for day in range(result.horizon):
            if statewide[day] > best:
                best, best_day = statewide[day], day
        assert summary.peak_sick_count == best
        if best > 0:
            assert summary.peak_sick_day == best_day
        assert summary.outbreak_duration <= result.horizon

    def test_all_zero_summary(self, rng):
        network, config = small_setup(rng, seeds=[])
        result = run(create_scenario(config, network), network)
        summary = summarize(result)
        assert summary.peak_sick_count == 0.0
        assert summary.outbreak_duration == 0
        assert summary.total_sick == 0


class TestOrderingProperties:
    """Monotone comparative statics the engine must satisfy exactly."""

    def test_intervention_never_increases_cumulative_sick(self):
        rng = np.random.default_rng(99)
        for trial in range(6):
            network = make_random_network(rng)
            mapping = random_config_mapping(rng, network, horizon=70)
            # Ample beds isolate the transmission channel.
            mapping["occupancy_fraction"] = 0.0
            base_cfg, _ = config_from_mapping(mapping)
            start = int(rng.integers(0, 30))
            action = DecisionAction("shelter_in_place", start,
                                    int(rng.integers(0, 10)),
                                    float(rng.uniform(0.05, 0.9)))
            with_cfg = base_cfg.with_actions([action])
            base_run = run(create_scenario(base_cfg, network), network)
            with_run = run(create_scenario(with_cfg, network), network)
            base_cum = base_run.column("cumulative_sick").sum(axis=1)
            with_cum = with_run.column("cumulative_sick").sum(axis=1)
            assert np.all(with_cum[start:] <= base_cum[start:]), trial
            np.testing.assert_array_equal(with_cum[:start], base_cum[:start])

    def test_earlier_start_never_increases_final_cumulative_sick(self):
        rng = np.random.default_rng(7)
        for trial in range(6):
            network = make_random_network(rng)
            mapping = random_config_mapping(rng, network, horizon=70)
            mapping["occupancy_fraction"] = 0.0
            config, _ = config_from_mapping(mapping)
            late = int(rng.integers(10, 40))
            early = int(rng.integers(0, late))
            reduction = float(rng.uniform(0.05, 0.9))
            ramp = int(rng.integers(0, 10))
            finals = []
            for start in (early, late):
                cfg = config.with_actions(
                    [DecisionAction("school_closures", start, ramp, reduction)])
                result = run(create_scenario(cfg, network), network)
                finals.append(result.column("cumulative_sick")[-1].sum())
            assert finals[0] <= finals[1], trial

    def test_lower_bed_capacity_never_lowers_deaths(self):
        rng = np.random.default_rng(21)
        for trial in range(5):
            network = make_random_network(rng)
            mapping = random_config_mapping(rng, network, horizon=60)
            mapping["hospitalization_rate"] = float(rng.uniform(0.1, 0.3))
            deaths = []
            for occupancy in (0.95, 0.2):  # scarce first, then ample
                mapping["occupancy_fraction"] = occupancy
                config, _ = config_from_mapping(mapping)
                result = run(create_scenario(config, network), network)
                deaths.append(result.column("cumulative_deaths").sum(axis=1))
            assert np.all(deaths[0] >= deaths[1] - 1e-9), trial

    def test_air_travel_never_delays_first_infection(self):
        rng = np.random.default_rng(5)
        for trial in range(5):
            network = make_random_network(rng)
            mapping = random_config_mapping(rng, network, horizon=80)
            firsts = {}
            for enabled in (True, False):
                mapping["air_enabled"] = enabled
                config, _ = config_from_mapping(mapping)
                result = run(create_scenario(config, network), network)
                cum = result.column("cumulative_sick")
                firsts[enabled] = [
                    int(np.nonzero(cum[:, i] > 0)[0][0])
                    if (cum[:, i] > 0).any() else result.horizon + 1
                    for i in range(len(result.fips))]
            assert all(a <= b for a, b in zip(firsts[True], firsts[False])), trial

    def test_higher_spread_rate_never_delays_first_infection(self):
        rng = np.random.default_rng(13)
        network = make_random_network(rng)
        mapping = random_config_mapping(rng, network, horizon=80)
        firsts = {}
        for rate in (20.0, 200.0):
            mapping["spread_rate"] = rate
            config, _ = config_from_mapping(mapping)
            result = run(create_scenario(config, network), network)
            cum = result.column("cumulative_sick")
            firsts[rate] = [
                int(np.nonzero(cum[:, i] > 0)[0][0])
                if (cum[:, i] > 0).any() else result.horizon + 1
                for i in range(len(result.fips))]
        assert all(hi <= lo for hi, lo in zip(firsts[200.0], firsts[20.0]))

    def test_unreachable_county_never_infected(self, rng):
        # Two disconnected components; seed only the first.
        from episim.network import County, build_network
        counties = [
            County("00001", "A", (100, 800, 100), "small", 10, 35, -97, False),
            County("00003", "B", (100, 800, 100), "small", 10, 35, -96, False),
            County("00005", "C", (100, 800, 100), "small", 10, 34, -95, False),
            County("00007", "D", (100, 800, 100), "small", 10, 34, -94, False),
        ]
        network = build_network(counties, [("00001", "00003"),
                                           ("00005", "00007")],
                                air_edges=[], spread_rate=500.0)
        config = ScenarioConfig(params=DiseaseParams(horizon=100),
                                seeds=(Seed("00001", 0, 20),))
        result = run(create_scenario(config, network), network)
        cum = result.column("cumulative_sick")
        assert cum[:, 0].max() > 0
        assert cum[:, 1].max() > 0  # reachable neighbor
        assert cum[:, 2].max() == 0
        assert cum[:, 3].max() == 0
