"""Input parsing, validation diagnostics, config defaults, exports."""
import json

import pytest

from episim import InputError, ValidationError, dataio
from episim.config import config_from_mapping, config_to_mapping
from episim.dataio import (COUNTY_HEADER, export_counties, frames_csv_text,
                           load_adjacency, load_config, load_counties,
                           summary_csv_text)


def write_counties(tmp_path, rows, header=None):
    path = tmp_path / "counties.csv"
    lines = [",".join(header or COUNTY_HEADER)]
    lines += [",".join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


GOOD_ROW = ["40109", "Oklahoma", "199350", "694435", "103615", "urban",
            "5600", "35.55", "-97.40", "true"]


class TestLoadCounties:
    def test_single_valid_row(self, tmp_path):
        counties = load_counties(write_counties(tmp_path, [GOOD_ROW]))
        assert len(counties) == 1
        assert counties[0].name == "Oklahoma"
        assert counties[0].population == 199350 + 694435 + 103615

    def test_duplicate_fips_cites_both_lines(self, tmp_path):
        path = write_counties(tmp_path, [GOOD_ROW, GOOD_ROW])
        with pytest.raises(InputError) as err:
            load_counties(path)
        (diag,) = err.value.diagnostics
        assert "line 3" in diag and "line 2" in diag

    def test_k_defects_yield_k_diagnostics(self, tmp_path):
        bad_density = list(GOOD_ROW)
        bad_density[0], bad_density[5] = "40111", "metropolis"
        bad_pop = list(GOOD_ROW)
        bad_pop[0], bad_pop[2], bad_pop[3], bad_pop[4] = "40113", "0", "0", "0"
        bad_flag = list(GOOD_ROW)
        bad_flag[0], bad_flag[9] = "40115", "maybe"
        path = write_counties(tmp_path, [GOOD_ROW, bad_density, bad_pop, bad_flag])
        with pytest.raises(InputError) as err:
            load_counties(path)
        assert len(err.value.diagnostics) == 3

    def test_wrong_header_rejected(self, tmp_path):
        path = write_counties(tmp_path, [GOOD_ROW],
                              header=["fips", "name", "oops"])
        with pytest.raises(InputError):
            load_counties(path)

    def test_round_trip(self, tmp_path):
        original = load_counties(write_counties(tmp_path, [GOOD_ROW]))
        out = tmp_path / "export.csv"
        export_counties(original, out)
        again = load_counties(out)
        assert again == original


class TestLoadEdges:
    def counties(self, tmp_path):
        other = list(GOOD_ROW)
        other[0], other[1] = "40143", "Tulsa"
        return load_counties(write_counties(tmp_path, [GOOD_ROW, other]))

    def test_empty_file_empty_list(self, tmp_path):
        path = tmp_path / "adj.csv"
        path.write_text("fips_a,fips_b\n", encoding="utf-8")
        assert load_adjacency(path, self.counties(tmp_path)) == []

    def test_self_loop_is_error(self, tmp_path):
        path = tmp_path / "adj.csv"
        path.write_text("fips_a,fips_b\n40109,40109\n", encoding="utf-8")
        with pytest.raises(InputError) as err:
            load_adjacency(path, self.counties(tmp_path))
        assert "self-loop" in err.value.diagnostics[0]

    def test_dangling_fips_is_error(self, tmp_path):
        path = tmp_path / "adj.csv"
        path.write_text("fips_a,fips_b\n40109,40999\n", encoding="utf-8")
        with pytest.raises(InputError) as err:
            load_adjacency(path, self.counties(tmp_path))
        assert "40999" in err.value.diagnostics[0]

    def test_dedup(self, tmp_path):
        path = tmp_path / "adj.csv"
        path.write_text("fips_a,fips_b\n40109,40143\n40143,40109\n",
                        encoding="utf-8")
        assert load_adjacency(path, self.counties(tmp_path)) == \
            [("40109", "40143")]


class TestLoadConfig:
    def test_empty_object_all_defaults(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{}", encoding="utf-8")
        config, provenance = load_config(path)
        assert config.occupancy_fraction == 0.7
        assert set(provenance.values()) == {"default"}

    def test_defaults_flagged_against_user_values(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"r0": 2.0}), encoding="utf-8")
        config, provenance = load_config(path)
        assert config.params.r0 == 2.0
        assert provenance["r0"] == "user"
        assert provenance["horizon"] == "default"
        assert provenance["occupancy_fraction"] == "default"

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"r-zero": 2.0}), encoding="utf-8")
        with pytest.raises(ValidationError) as err:
            load_config(path)
        assert "r-zero" in err.value.fields

    def test_negative_r0_names_field(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"r0": -1.0}), encoding="utf-8")
        with pytest.raises(ValidationError) as err:
            load_config(path)
        assert "r0" in err.value.fields

    def test_mapping_round_trip(self):
        mapping = {
            "r0": 2.2, "horizon": 90,
            "seeds": [{"fips": "40109", "day": 0, "cases": 100}],
            "actions": [{"kind": "media_alerts", "start_day": 3}],
            "age_profiles": {"65+": {"mortality": 4.0}},
        }
        config, _ = config_from_mapping(mapping)
        echoed = config_to_mapping(config)
        config2, _ = config_from_mapping(echoed)
        assert config2 == config

    def test_reapplied_kind_replaces(self):
        config, _ = config_from_mapping({
            "seeds": [], "actions": [
                {"kind": "media_alerts", "start_day": 3},
                {"kind": "media_alerts", "start_day": 8},
            ]})
        assert len(config.actions) == 1
        assert config.actions[0].start_day == 8


class TestFixtureFiles:
    """Independent integrity checks of the shipped Oklahoma fixture."""

    def test_loads_clean_with_expected_counties(self, oklahoma_bundle):
        counties = oklahoma_bundle.counties
        assert len(counties) == 77
        by_fips = {c.fips: c for c in counties}
        assert by_fips["40109"].name == "Oklahoma"
        assert by_fips["40143"].name == "Tulsa"
        # Oklahoma's 77 county FIPS codes are the odd numbers 40001..40153.
        assert sorted(c.fips for c in counties) == \
            [f"40{i:03d}" for i in range(1, 154, 2)]

    def test_adjacency_connected_single_component(self, oklahoma_bundle):
        # Independent BFS, not the engine's graph code.
        neighbors = {}
        for a, b in oklahoma_bundle.adjacency:
            neighbors.setdefault(a, set()).add(b)
            neighbors.setdefault(b, set()).add(a)
        start = oklahoma_bundle.counties[0].fips
        seen, stack = {start}, [start]
        while stack:
            for nxt in neighbors.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert len(seen) == len(oklahoma_bundle.counties)

    def test_air_routes_connect_airports(self, oklahoma_bundle):
        airports = {c.fips for c in oklahoma_bundle.counties if c.has_airport}
        assert {"40109", "40143"} <= airports
        assert oklahoma_bundle.air_routes
        for a, b in oklahoma_bundle.air_routes:
            assert a in airports and b in airports
        assert ("40109", "40143") in {tuple(sorted(e))
                                      for e in oklahoma_bundle.air_routes}

    def test_geometry_covers_every_county(self, oklahoma_bundle):
        features = oklahoma_bundle.geometry["features"]
        geo_fips = {f["properties"]["fips"] for f in features}
        assert geo_fips == {c.fips for c in oklahoma_bundle.counties}


class TestExports:
    def test_frame_export_shape(self, rng):
        from conftest import make_random_network, random_config_mapping
        from episim import create_scenario, run, summarize
        network = make_random_network(rng)
        mapping = random_config_mapping(rng, network, horizon=20)
        config, _ = config_from_mapping(mapping)
        result = run(create_scenario(config, network), network)
        text = frames_csv_text(result)
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(dataio.EXPORT_HEADER)
        assert len(lines) == 1 + 20 * len(network)
        summary_lines = summary_csv_text(summarize(result)).strip().split("\n")
        assert summary_lines[0] == ",".join(dataio.SUMMARY_HEADER)
        assert len(summary_lines) == 2
