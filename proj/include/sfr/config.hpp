#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfr/evaluation.hpp"

namespace sfr {

/// Loudspeaker positions: evenly spaced on a square perimeter or listed.
struct SpeakerLayout {
  enum class Kind { SquarePerimeter, Explicit };
  Kind kind = Kind::SquarePerimeter;
  int count = 12;
  double side = 2.0;
  // Arc-length offset of the first speaker from the lower-left corner, in
  // units of the speaker spacing (0 puts a speaker on every corner; 0.5 puts
  // speakers at thirds of each side for 12 speakers).
  double offset = 0.5;
  std::vector<Position> positions;  // Explicit

  bool operator==(const SpeakerLayout&) const = default;
};

/// Control points: a square grid or listed.
struct ControlLayout {
  enum class Kind { SquareGrid, Explicit };
  enum class Placement {
    Edge,  // outermost points on the square's edges
    Cell,  // points at cell centres
  };
  Kind kind = Kind::SquareGrid;
  int count_per_axis = 4;
  double side = 1.0;
  Placement placement = Placement::Edge;
  std::vector<Position> positions;  // Explicit

  bool operator==(const ControlLayout&) const = default;
};

struct DesiredFieldConfig {
  DesiredField::Kind kind = DesiredField::Kind::PlaneWave;
  std::optional<double> propagation_angle;           // 2D plane wave, radians
  std::optional<std::vector<double>> propagation;    // plane wave direction vector
  std::optional<std::vector<double>> position;       // point source

  bool operator==(const DesiredFieldConfig&) const = default;
};

/// Declarative description of a reproduction experiment.
struct ExperimentConfig {
  int dimension = 2;
  Medium medium;
  Region region;
  SpeakerLayout loudspeakers;
  ControlLayout control_points;
  DesiredFieldConfig desired_field;
  std::vector<MethodSpec> methods;
  RidgeMode regularization = RidgeMode::Absolute;
  QuadratureSpec quadrature;
  double eval_spacing = 0.01;
  SweepSpec sweep;
  std::vector<double> field_frequencies;
  std::string output_dir = "out";

  bool operator==(const ExperimentConfig& o) const;
};

/// The free-field 2D experiment: 12 point sources on a 2 m square, 4 x 4
/// control points on a 1 m square target region, a plane wave propagating at
/// pi/4, and PM / WPM (uniform) / WPM (directional, rho = 5) at
/// lambda = eta = 1e-6.
ExperimentConfig preset_paper_experiment();

/// Parses and validates; ValidationError messages name the offending field
/// path (e.g. "methods[1].eta").
ExperimentConfig config_from_json(const nlohmann::ordered_json& j);
/// Parse errors report line and column.
ExperimentConfig config_from_text(const std::string& text);
/// ValidationError naming the path if the file is missing or unreadable.
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

std::vector<Position> speaker_positions(const SpeakerLayout& layout, const Position& center);
std::vector<Position> control_positions(const ControlLayout& layout, const Position& center);

/// Expands generators into a concrete, validated experiment.
Experiment build_experiment(const ExperimentConfig& cfg);

}  // namespace sfr
