#include <doctest.h>

#include <fstream>

#include "sfr/config.hpp"

using namespace sfr;
using json = nlohmann::ordered_json;

namespace {

json preset_json() { return config_to_json(preset_paper_experiment()); }

std::string error_of(const json& j) {
  try {
    config_from_json(j);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("preset geometry") {
  const Experiment e = build_experiment(preset_paper_experiment());
  REQUIRE(e.scene.num_sources() == 12);
  REQUIRE(e.scene.num_control_points() == 16);
  // Twelve equally spaced points on a 2 m square perimeter, first one half a
  // spacing from the lower-left corner.
  CHECK(e.scene.loudspeakers[0].position.x() == doctest::Approx(-2.0 / 3));
  CHECK(e.scene.loudspeakers[0].position.y() == doctest::Approx(-1.0));
  for (std::size_t l = 0; l < 12; ++l) {
    const Position& a = e.scene.loudspeakers[l].position;
    const Position& b = e.scene.loudspeakers[(l + 1) % 12].position;
    const double arc = std::abs(a.x() - b.x()) + std::abs(a.y() - b.y());
    CHECK(arc == doctest::Approx(2.0 / 3));
    CHECK(std::max(std::abs(a.x()), std::abs(a.y())) == doctest::Approx(1.0));
  }
  CHECK(e.scene.control_points.front() == Position(-0.5, -0.5));
  CHECK(e.scene.control_points.back() == Position(0.5, 0.5));
  CHECK(e.scene.control_points[1].x() == doctest::Approx(-0.5 + 1.0 / 3));
  CHECK(e.methods.size() == 3);
}

TEST_CASE("speaker offset zero puts speakers on the corners") {
  SpeakerLayout l;
  l.offset = 0.0;
  const auto p = speaker_positions(l, Position(0, 0));
  CHECK(p[0] == Position(-1.0, -1.0));
  CHECK(p[3].x() == doctest::Approx(1.0));
  CHECK(p[3].y() == doctest::Approx(-1.0));
}

TEST_CASE("JSON round trip") {
  const ExperimentConfig c = preset_paper_experiment();
  CHECK(config_from_json(config_to_json(c)) == c);
  CHECK(config_from_text(config_to_json(c).dump(2)) == c);

  ExperimentConfig d = c;
  d.methods[2].desired_prior = Direction::from_angle(1.0);
  d.control_points.placement = ControlLayout::Placement::Cell;
  d.quadrature = {QuadratureRule::Midpoint, 30};
  d.regularization = RidgeMode::Relative;
  d.desired_field = {DesiredField::Kind::PointSource, std::nullopt, std::nullopt, std::vector<double>{2.0, 0.5}};
  CHECK(config_from_json(config_to_json(d)) == d);
}

TEST_CASE("validation errors name the field") {
  json j = preset_json();
  SUBCASE("negative eta") {
    j["methods"][1]["eta"] = -1.0;
    CHECK(contains(error_of(j), "methods[1].eta"));
  }
  SUBCASE("empty methods") {
    j["methods"] = json::array();
    CHECK(contains(error_of(j), "methods"));
  }
  SUBCASE("unknown field") {
    j["quadrature"]["order"] = 3;
    CHECK(contains(error_of(j), "quadrature.order: unknown field"));
  }
  SUBCASE("bad enum") {
    j["methods"][0]["solver"] = "magic";
    const std::string e = error_of(j);
    CHECK(contains(e, "methods[0].solver"));
    CHECK(contains(e, "wpm_general"));
  }
  SUBCASE("missing field") {
    j.erase("region");
    CHECK(contains(error_of(j), "region: missing required field"));
  }
  SUBCASE("duplicate names") {
    j["methods"][1]["name"] = "PM";
    CHECK(contains(error_of(j), "methods[1].name: duplicate"));
  }
  SUBCASE("control points outside the region") {
    j["control_points"]["side"] = 1.5;
    CHECK_FALSE(error_of(j).empty());
  }
  SUBCASE("loudspeaker inside the region") {
    j["loudspeakers"]["side"] = 0.5;
    CHECK_FALSE(error_of(j).empty());
  }
  SUBCASE("point source inside the region") {
    j["desired_field"] = {{"type", "point_source"}, {"position", {0.1, 0.1}}};
    CHECK(contains(error_of(j), "desired_field.position"));
  }
  SUBCASE("wrong component count") {
    j["region"]["center"] = {0.0, 0.0, 0.0};
    CHECK(contains(error_of(j), "region.center"));
  }
  SUBCASE("rho on a uniform kernel") {
    j["methods"][1]["kernel"]["rho"] = 2.0;
    CHECK(contains(error_of(j), "methods[1].kernel"));
  }
  SUBCASE("wrong type") {
    j["dimension"] = "two";
    CHECK(contains(error_of(j), "dimension: expected an integer"));
  }
}

TEST_CASE("syntax errors report line and column") {
  try {
    config_from_text("{\n  \"dimension\": 2,\n  \"region\": ,\n}");
    FAIL("expected a syntax error");
  } catch (const ValidationError& e) {
    CHECK(contains(e.what(), "line 3"));
  }
}

TEST_CASE("missing config file") {
  try {
    load_config("/nonexistent/dir/cfg.json");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(contains(e.what(), "/nonexistent/dir/cfg.json"));
  }
}
