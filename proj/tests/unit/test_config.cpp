#include <algorithm>
#include <string>

#include <gtest/gtest.h>

#include "echo2d/config.hpp"
#include "echo2d/error.hpp"

namespace {

using echo2d::parse_config;
using echo2d::ValidationError;

const char* kDimer = R"({
  "model": {"ground_energy": -12000, "site_energies": [-50, 50], "couplings": [[0, 100], [100, 0]],
            "dipoles": {"mode": "stationary", "values": [1, -1]}},
  "bath": {"kind": "ohmic", "lambda_over_omega_c": 1.2, "omega_c": 53, "temperature": 77},
  "grid": {"t2": [10, 100, 300, 625]}
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

bool applied(const echo2d::RunConfig& c, const std::string& key) {
  return std::find(c.defaults_applied.begin(), c.defaults_applied.end(), key) != c.defaults_applied.end();
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesReferenceDimer) {
  const auto c = parse_config(kDimer);
  EXPECT_EQ(c.model.n_sites(), 2);
  EXPECT_DOUBLE_EQ(c.model.ground_energy, -12000.0);
  EXPECT_DOUBLE_EQ(c.bath.reorganization, 1.2 * 53.0);
  EXPECT_EQ(c.dipole_mode, echo2d::DipoleMode::PerStationaryState);
  EXPECT_EQ(c.grid.t2.size(), 4u);
  EXPECT_EQ(c.pathways.size(), 3u);
  // Default frequency origin sits at the mean transition energy.
  EXPECT_NEAR(c.grid.spectrum.origin1, 12000.0, 1e-9);
  EXPECT_NEAR(c.grid.spectrum.origin3, 12000.0, 1e-9);
}

TEST(Config, RecordsDefaults) {
  const auto c = parse_config(kDimer);
  for (const char* key : {"grid.dt", "grid.n1", "grid.n3", "grid.window", "grid.zero_pad", "pathways", "flags",
                          "flags.K", "output_dir", "bath.quadrature"})
    EXPECT_TRUE(applied(c, key)) << key;
  EXPECT_FALSE(applied(c, "model.couplings"));
  EXPECT_FALSE(applied(c, "bath.temperature"));
}

TEST(Config, StationaryDipolesResolveToSiteDipoles) {
  const auto c = parse_config(kDimer);
  const echo2d::StationaryBasis basis(c.model);
  EXPECT_NEAR(std::abs(basis.dipole_ground(0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(basis.dipole_ground(1)), 1.0, 1e-12);
  EXPECT_LT(basis.dipole_ground(0) * basis.dipole_ground(1), 0.0);
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_NE(message_of(with(kDimer, R"("grid": {)", R"("pathways": [], "grid": {)")).find("pathways"),
            std::string::npos);
  EXPECT_NE(message_of(with(kDimer, "\"temperature\": 77", "\"temperature\": 77, \"colour\": 3"))
                .find("bath.colour: unknown key"),
            std::string::npos);
  EXPECT_NE(message_of(with(kDimer, "[10, 100, 300, 625]", "[10, -1]")).find("grid.t2"), std::string::npos);
  EXPECT_NE(message_of(with(kDimer, "\"lambda_over_omega_c\": 1.2", "\"lambda_over_omega_c\": 1.2, \"lambda\": 60"))
                .find("either lambda or lambda_over_omega_c"),
            std::string::npos);
  EXPECT_NE(message_of(with(kDimer, R"("grid")", R"("gird")")).find("gird"), std::string::npos);
  EXPECT_NE(message_of(with(kDimer, "\"omega_c\": 53", "\"omega_c\": \"53\"")).find("bath.omega_c"),
            std::string::npos);
  EXPECT_NE(message_of("{not json").find("malformed"), std::string::npos);
}

TEST(Config, EsaNeedsTwoSites) {
  const char* monomer = R"({
    "model": {"site_energies": [12000]},
    "bath": {"lambda": 30, "omega_c": 53},
    "grid": {"t2": [0]},
    "pathways": ["SE", "ESA"]
  })";
  EXPECT_NE(message_of(monomer).find("ESA requires at least two sites"), std::string::npos);
  const std::string ok = with(monomer, R"(["SE", "ESA"])", R"(["SE", "GSB"])");
  EXPECT_NO_THROW(parse_config(ok));
}

TEST(Config, TotalIsNotAPathwayChoice) {
  EXPECT_THROW(parse_config(with(kDimer, R"("grid": {)", R"("pathways": ["total"], "grid": {)")), ValidationError);
}

TEST(Config, RoundTripIsStable) {
  const auto first = parse_config(kDimer);
  const std::string once = echo2d::to_json(first);
  const auto second = parse_config(once);
  EXPECT_EQ(echo2d::to_json(second), once);
  EXPECT_EQ(second.model.site_dipoles, first.model.site_dipoles);
  EXPECT_EQ(second.grid.spectrum.origin1, first.grid.spectrum.origin1);
  EXPECT_EQ(second.bath.quadrature.omega_max, first.bath.quadrature.omega_max);
  EXPECT_TRUE(second.defaults_applied.empty()) << second.defaults_applied.front();
}

TEST(Config, FlagsParse) {
  const auto c = parse_config(with(kDimer, R"("grid": {)",
                                   R"("flags": {"relaxation_mode": "full", "case2_decoherence": true, "K": 2.5},
                                      "grid": {)"));
  EXPECT_EQ(c.flags.relaxation, echo2d::RelaxationMode::Full);
  EXPECT_TRUE(c.flags.case2_decoherence);
  EXPECT_DOUBLE_EQ(c.flags.prefactor, 2.5);
  EXPECT_THROW(parse_config(with(kDimer, R"("grid": {)", R"("flags": {"relaxation_mode": "some"}, "grid": {)")),
               ValidationError);
}
