#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hetbeam/config_io.hpp"
#include "hetbeam/errors.hpp"

using namespace hetbeam;

namespace {

ConfigError config_error_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for: " << text;
  return ConfigError(ConfigError::Kind::parse, "", "");
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
  for (std::string_view text : {"", "   \n", "{}"}) {
    const auto c = parse_config(text);
    EXPECT_EQ(c, ScenarioConfig{});
    EXPECT_EQ(c.link.carrier_hz, 60e9);
    EXPECT_EQ(c.link.bandwidth_hz, 2.16e9);
    EXPECT_EQ(c.link.pathloss_exp, 2.66);
    EXPECT_EQ(c.link.p_tx_dbm, 10.0);
    EXPECT_EQ(c.link.noise_figure_db, 6.0);
    EXPECT_EQ(c.link.noise_floor_dbm, -174.0);
    EXPECT_EQ(c.mobility.road_block_length, 40.0);
  }
}

TEST(Config, EmptyFileGivesDefaults) {
  const auto path = std::filesystem::temp_directory_path() / "hetbeam_empty_config.json";
  { std::ofstream(path) << ""; }
  EXPECT_EQ(load_config(path), ScenarioConfig{});
  std::filesystem::remove(path);
  EXPECT_THROW(load_config("/nonexistent/dir/config.json"), ConfigError);
}

TEST(Config, Overrides) {
  const auto c = parse_config(R"({"gps": {"mu_m": 1.5}, "seed": 9, "scheme": "baseline",
                                 "beam": {"adaptive": true}})");
  EXPECT_EQ(c.gps.mu, 1.5);
  EXPECT_EQ(c.gps.sigma, 1.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.scheme, Scheme::baseline);
  EXPECT_TRUE(c.beam.adaptive);
}

TEST(Config, NegativeBandwidthNamesKey) {
  const auto e = config_error_of(R"({"link": {"bandwidth_hz": -2.16e9}})");
  EXPECT_EQ(e.kind(), ConfigError::Kind::validation);
  EXPECT_EQ(e.path(), "link.bandwidth_hz");
}

TEST(Config, OtherValidationPaths) {
  EXPECT_EQ(config_error_of(R"({"gps": {"mu_m": -1}})").path(), "gps.mu_m");
  EXPECT_EQ(config_error_of(R"({"topology": {"abft_slots": 12}})").path(), "topology.abft_slots");
  EXPECT_EQ(config_error_of(R"({"sweep": {"velocity_mps": []}})").kind(),
            ConfigError::Kind::validation);
}

TEST(Config, ParseErrorCarriesLine) {
  const auto e = config_error_of("{\n  \"seed\": 3,\n  \"link\": {\n    \"p_tx_dbm\": ,\n  }\n}");
  EXPECT_EQ(e.kind(), ConfigError::Kind::parse);
  EXPECT_EQ(e.line(), 4);
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_EQ(config_error_of(R"({"link": {"bandwith_hz": 1e9}})").path(), "link.bandwith_hz");
  EXPECT_EQ(config_error_of(R"({"colour": 1})").path(), "colour");
}

TEST(Config, WrongTypeRejected) {
  EXPECT_EQ(config_error_of(R"({"seed": "one"})").path(), "seed");
  EXPECT_EQ(config_error_of(R"({"scheme": "fastest"})").path(), "scheme");
}

TEST(Config, RoundTrip) {
  ScenarioConfig c;
  c.seed = 123456789012345ull;
  c.gps.mu = 0.1;
  c.gps.sigma = 0.1 / 3.0;
  c.link.p_tx_dbm = 12.3;
  c.mcs = rf::McsTable({{1.0, 1e8}, {5.5, 7.7e8}});
  c.sweep.theta = {5.0, 10.0};
  c.analysis.error_mus = {0.2, 2.0};
  c.cadences.bi = 0.1;
  c.topo.bi_length = 0.1;
  const auto text = to_json_text(c);
  EXPECT_EQ(parse_config(text), c);
  EXPECT_EQ(parse_config(to_json_text(ScenarioConfig{})), ScenarioConfig{});

  const auto path = std::filesystem::temp_directory_path() / "hetbeam_roundtrip.json";
  save_config(c, path);
  EXPECT_EQ(load_config(path), c);
  std::filesystem::remove(path);
}
