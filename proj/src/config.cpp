#include "sfr/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace sfr {

using json = nlohmann::ordered_json;

namespace {

// Strict JSON reader that remembers where it is, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError((path_.empty() ? std::string("config") : path_) + ": " + msg);
  }

  Node at(const std::string& key) const {
    require_object();
    const auto it = j_.find(key);
    if (it == j_.end()) Node(j_, child_path(key)).fail("missing required field");
    return {*it, child_path(key)};
  }
  std::optional<Node> opt(const std::string& key) const {
    require_object();
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    return Node(*it, child_path(key));
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  void only_keys(std::initializer_list<const char*> keys) const {
    require_object();
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (const char* allowed : keys) known = known || k == allowed;
      if (!known) Node(v, child_path(k)).fail("unknown field");
    }
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }
  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("must be > 0");
    return v;
  }
  double nonnegative() const {
    const double v = number();
    if (!(v >= 0.0)) fail("must be >= 0");
    return v;
  }
  int integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<int>();
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  std::vector<double> numbers() const {
    if (!j_.is_array()) fail("expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.push_back(Node(j_[i], index_path(i)).number());
    return out;
  }
  std::vector<double> vec(int dim) const {
    auto v = numbers();
    if (static_cast<int>(v.size()) != dim) fail("expected " + std::to_string(dim) + " components");
    return v;
  }
  Position position(int dim) const { return Position::from(vec(dim)); }
  std::vector<Position> positions(int dim) const {
    if (!j_.is_array()) fail("expected an array of positions");
    std::vector<Position> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.push_back(Node(j_[i], index_path(i)).position(dim));
    return out;
  }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  Node operator[](std::size_t i) const { return {j_[i], index_path(i)}; }

 private:
  void require_object() const {
    if (!j_.is_object()) fail("expected an object");
  }
  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string index_path(std::size_t i) const { return path_ + "[" + std::to_string(i) + "]"; }

  const json& j_;
  std::string path_;
};

json vec_json(const std::vector<double>& v) { return json(v); }
json pos_json(const Position& p) { return json(p.to_vector()); }

template <typename T>
T pick(const Node& n, std::initializer_list<std::pair<const char*, T>> options) {
  const std::string s = n.string();
  std::string names;
  for (const auto& [name, value] : options) {
    if (s == name) return value;
    names += (names.empty() ? "" : ", ") + std::string(name);
  }
  n.fail("unknown value \"" + s + "\" (expected one of: " + names + ")");
}

const char* solver_name(SolverKind k) {
  switch (k) {
    case SolverKind::Pm:
      return "pm";
    case SolverKind::WpmShared:
      return "wpm_shared";
    case SolverKind::WpmGeneral:
      return "wpm_general";
  }
  return "";
}

MethodSpec parse_method(const Node& n, int dim) {
  n.only_keys({"name", "solver", "kernel", "lambda", "eta"});
  MethodSpec m;
  m.name = n.at("name").string();
  if (m.name.empty()) n.at("name").fail("must not be empty");
  m.solver = pick<SolverKind>(n.at("solver"), {{"pm", SolverKind::Pm},
                                               {"wpm_shared", SolverKind::WpmShared},
                                               {"wpm_general", SolverKind::WpmGeneral}});
  if (auto e = n.opt("eta")) m.eta = e->nonnegative();
  if (auto l = n.opt("lambda")) m.lambda = l->nonnegative();
  if (auto k = n.opt("kernel")) {
    k->only_keys({"family", "rho", "desired_prior"});
    m.family = pick<KernelFamily>(k->at("family"),
                                  {{"uniform", KernelFamily::Uniform}, {"directional", KernelFamily::Directional}});
    if (m.family == KernelFamily::Directional) {
      m.rho = k->at("rho").nonnegative();
      if (auto p = k->opt("desired_prior")) {
        try {
          m.desired_prior = Direction::normalized(p->position(dim));
        } catch (const ValidationError& e) {
          p->fail(e.what());
        }
      }
    } else if (k->has("rho") || k->has("desired_prior")) {
      k->fail("rho and desired_prior apply to the directional family only");
    }
  }
  return m;
}

json method_json(const MethodSpec& m) {
  json j;
  j["name"] = m.name;
  j["solver"] = solver_name(m.solver);
  json k;
  if (m.family == KernelFamily::Uniform) {
    k["family"] = "uniform";
  } else {
    k["family"] = "directional";
    k["rho"] = m.rho;
    if (m.desired_prior) k["desired_prior"] = pos_json(m.desired_prior->vec());
  }
  j["kernel"] = k;
  j["lambda"] = m.lambda;
  j["eta"] = m.eta;
  return j;
}

}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return dimension == o.dimension && medium.sound_speed == o.medium.sound_speed &&
         region.center == o.region.center && region.size == o.region.size && loudspeakers == o.loudspeakers &&
         control_points == o.control_points && desired_field == o.desired_field && methods == o.methods &&
         regularization == o.regularization && quadrature == o.quadrature && eval_spacing == o.eval_spacing &&
         sweep == o.sweep && field_frequencies == o.field_frequencies && output_dir == o.output_dir;
}

ExperimentConfig preset_paper_experiment() {
  ExperimentConfig c;
  c.dimension = 2;
  c.medium.sound_speed = 343.0;
  c.region = Region{Position(0.0, 0.0), {1.0, 1.0, 0.0}};
  c.loudspeakers = SpeakerLayout{SpeakerLayout::Kind::SquarePerimeter, 12, 2.0, 0.5, {}};
  c.control_points = ControlLayout{ControlLayout::Kind::SquareGrid, 4, 1.0, ControlLayout::Placement::Edge, {}};
  c.desired_field.kind = DesiredField::Kind::PlaneWave;
  c.desired_field.propagation_angle = kPi / 4.0;

  MethodSpec pm{"PM", SolverKind::Pm, KernelFamily::Uniform, 0.0, 1e-6, 1e-6, std::nullopt};
  MethodSpec wpm{"WPM", SolverKind::WpmShared, KernelFamily::Uniform, 0.0, 1e-6, 1e-6, std::nullopt};
  MethodSpec dir{"WPM_directional", SolverKind::WpmGeneral, KernelFamily::Directional, 5.0, 1e-6, 1e-6, std::nullopt};
  c.methods = {pm, wpm, dir};

  c.regularization = RidgeMode::Absolute;
  c.quadrature = QuadratureSpec{QuadratureRule::GaussLegendre, 40};
  c.eval_spacing = 0.01;
  c.sweep = SweepSpec{100.0, 700.0, 10.0};
  c.field_frequencies = {450.0};
  c.output_dir = "out";
  return c;
}

ExperimentConfig config_from_json(const json& j) {
  const Node root(j, "");
  root.only_keys({"dimension", "medium", "region", "loudspeakers", "control_points", "desired_field", "methods",
                  "regularization", "quadrature", "evaluation", "sweep", "field_frequencies", "output_dir"});
  ExperimentConfig c;

  c.dimension = root.at("dimension").integer();
  if (c.dimension != 2 && c.dimension != 3) root.at("dimension").fail("must be 2 or 3");
  const int dim = c.dimension;

  if (auto m = root.opt("medium")) {
    m->only_keys({"sound_speed"});
    c.medium.sound_speed = m->at("sound_speed").positive();
  }

  {
    const Node r = root.at("region");
    r.only_keys({"center", "size"});
    c.region.center = r.at("center").position(dim);
    const auto size = r.at("size").vec(dim);
    c.region.size = {0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
      if (!(size[static_cast<std::size_t>(i)] > 0.0)) r.at("size").fail("edge lengths must be > 0");
      c.region.size[static_cast<std::size_t>(i)] = size[static_cast<std::size_t>(i)];
    }
  }

  {
    const Node s = root.at("loudspeakers");
    const auto layout = pick<SpeakerLayout::Kind>(
        s.at("layout"), {{"square_perimeter", SpeakerLayout::Kind::SquarePerimeter},
                         {"explicit", SpeakerLayout::Kind::Explicit}});
    c.loudspeakers.kind = layout;
    if (layout == SpeakerLayout::Kind::SquarePerimeter) {
      s.only_keys({"layout", "count", "side", "offset"});
      if (dim != 2) s.at("layout").fail("square_perimeter is only available in 2D");
      c.loudspeakers.count = s.at("count").integer();
      if (c.loudspeakers.count < 1) s.at("count").fail("must be >= 1");
      c.loudspeakers.side = s.at("side").positive();
      c.loudspeakers.offset = s.opt("offset") ? s.at("offset").number() : 0.0;
    } else {
      s.only_keys({"layout", "positions"});
      c.loudspeakers.positions = s.at("positions").positions(dim);
      if (c.loudspeakers.positions.empty()) s.at("positions").fail("must list at least one position");
    }
  }

  {
    const Node s = root.at("control_points");
    const auto layout = pick<ControlLayout::Kind>(
        s.at("layout"), {{"square_grid", ControlLayout::Kind::SquareGrid}, {"explicit", ControlLayout::Kind::Explicit}});
    c.control_points.kind = layout;
    if (layout == ControlLayout::Kind::SquareGrid) {
      s.only_keys({"layout", "count_per_axis", "side", "placement"});
      if (dim != 2) s.at("layout").fail("square_grid is only available in 2D");
      c.control_points.count_per_axis = s.at("count_per_axis").integer();
      if (c.control_points.count_per_axis < 1) s.at("count_per_axis").fail("must be >= 1");
      c.control_points.side = s.at("side").positive();
      c.control_points.placement =
          s.opt("placement") ? pick<ControlLayout::Placement>(s.at("placement"),
                                                              {{"edge", ControlLayout::Placement::Edge},
                                                               {"cell", ControlLayout::Placement::Cell}})
                             : ControlLayout::Placement::Edge;
      if (c.control_points.placement == ControlLayout::Placement::Edge && c.control_points.count_per_axis < 2) {
        s.at("count_per_axis").fail("edge placement needs at least 2 points per axis");
      }
    } else {
      s.only_keys({"layout", "positions"});
      c.control_points.positions = s.at("positions").positions(dim);
      if (c.control_points.positions.empty()) s.at("positions").fail("must list at least one position");
    }
  }

  {
    const Node d = root.at("desired_field");
    c.desired_field.kind = pick<DesiredField::Kind>(
        d.at("type"), {{"plane_wave", DesiredField::Kind::PlaneWave}, {"point_source", DesiredField::Kind::PointSource}});
    if (c.desired_field.kind == DesiredField::Kind::PlaneWave) {
      d.only_keys({"type", "propagation_angle", "propagation"});
      if (d.has("propagation_angle") == d.has("propagation")) {
        d.fail("give exactly one of propagation_angle or propagation");
      }
      if (d.has("propagation_angle")) {
        if (dim != 2) d.at("propagation_angle").fail("angles are 2D only; use propagation");
        c.desired_field.propagation_angle = d.at("propagation_angle").number();
      } else {
        const auto v = d.at("propagation").vec(dim);
        if (Position::from(v).norm() == 0.0) d.at("propagation").fail("must be nonzero");
        c.desired_field.propagation = v;
      }
    } else {
      d.only_keys({"type", "position"});
      c.desired_field.position = d.at("position").vec(dim);
    }
  }

  {
    const Node ms = root.at("methods");
    if (ms.size() == 0) ms.fail("at least one method is required");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      c.methods.push_back(parse_method(ms[i], dim));
      for (std::size_t k = 0; k < i; ++k) {
        if (c.methods[k].name == c.methods[i].name) ms[i].at("name").fail("duplicate method name");
      }
    }
  }

  if (auto r = root.opt("regularization")) {
    c.regularization = pick<RidgeMode>(*r, {{"absolute", RidgeMode::Absolute}, {"relative", RidgeMode::Relative}});
  }

  if (auto q = root.opt("quadrature")) {
    q->only_keys({"rule", "nodes_per_axis"});
    c.quadrature.rule = pick<QuadratureRule>(
        q->at("rule"), {{"gauss_legendre", QuadratureRule::GaussLegendre}, {"midpoint", QuadratureRule::Midpoint}});
    c.quadrature.nodes_per_axis = q->at("nodes_per_axis").integer();
    if (c.quadrature.nodes_per_axis < 2) q->at("nodes_per_axis").fail("must be >= 2");
  }

  if (auto e = root.opt("evaluation")) {
    e->only_keys({"spacing"});
    c.eval_spacing = e->at("spacing").positive();
  }

  if (auto s = root.opt("sweep")) {
    s->only_keys({"f_start", "f_end", "f_step"});
    c.sweep.f_start = s->at("f_start").positive();
    c.sweep.f_end = s->at("f_end").positive();
    c.sweep.f_step = s->at("f_step").positive();
    if (c.sweep.f_end < c.sweep.f_start) s->at("f_end").fail("must be >= f_start");
  }

  if (auto f = root.opt("field_frequencies")) {
    for (std::size_t i = 0; i < f->size(); ++i) c.field_frequencies.push_back((*f)[i].positive());
  }

  if (auto o = root.opt("output_dir")) c.output_dir = o->string();

  // Semantic checks on the expanded scene (inside/outside region etc.).
  build_experiment(c);
  return c;
}

ExperimentConfig config_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("config: JSON syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return config_from_text(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["dimension"] = c.dimension;
  j["medium"] = {{"sound_speed", c.medium.sound_speed}};
  {
    std::vector<double> size(c.region.size.begin(), c.region.size.begin() + c.dimension);
    j["region"] = {{"center", pos_json(c.region.center)}, {"size", vec_json(size)}};
  }
  if (c.loudspeakers.kind == SpeakerLayout::Kind::SquarePerimeter) {
    j["loudspeakers"] = {{"layout", "square_perimeter"},
                         {"count", c.loudspeakers.count},
                         {"side", c.loudspeakers.side},
                         {"offset", c.loudspeakers.offset}};
  } else {
    json ps = json::array();
    for (const auto& p : c.loudspeakers.positions) ps.push_back(pos_json(p));
    j["loudspeakers"] = {{"layout", "explicit"}, {"positions", ps}};
  }
  if (c.control_points.kind == ControlLayout::Kind::SquareGrid) {
    j["control_points"] = {
        {"layout", "square_grid"},
        {"count_per_axis", c.control_points.count_per_axis},
        {"side", c.control_points.side},
        {"placement", c.control_points.placement == ControlLayout::Placement::Edge ? "edge" : "cell"}};
  } else {
    json ps = json::array();
    for (const auto& p : c.control_points.positions) ps.push_back(pos_json(p));
    j["control_points"] = {{"layout", "explicit"}, {"positions", ps}};
  }
  {
    json d;
    if (c.desired_field.kind == DesiredField::Kind::PlaneWave) {
      d["type"] = "plane_wave";
      if (c.desired_field.propagation_angle) d["propagation_angle"] = *c.desired_field.propagation_angle;
      if (c.desired_field.propagation) d["propagation"] = vec_json(*c.desired_field.propagation);
    } else {
      d["type"] = "point_source";
      d["position"] = vec_json(*c.desired_field.position);
    }
    j["desired_field"] = d;
  }
  j["methods"] = json::array();
  for (const auto& m : c.methods) j["methods"].push_back(method_json(m));
  j["regularization"] = c.regularization == RidgeMode::Absolute ? "absolute" : "relative";
  j["quadrature"] = {
      {"rule", c.quadrature.rule == QuadratureRule::GaussLegendre ? "gauss_legendre" : "midpoint"},
      {"nodes_per_axis", c.quadrature.nodes_per_axis}};
  j["evaluation"] = {{"spacing", c.eval_spacing}};
  j["sweep"] = {{"f_start", c.sweep.f_start}, {"f_end", c.sweep.f_end}, {"f_step", c.sweep.f_step}};
  j["field_frequencies"] = c.field_frequencies;
  j["output_dir"] = c.output_dir;
  return j;
}

std::vector<Position> speaker_positions(const SpeakerLayout& layout, const Position& center) {
  if (layout.kind == SpeakerLayout::Kind::Explicit) return layout.positions;
  const double s = layout.side;
  const double perimeter = 4.0 * s;
  const double spacing = perimeter / layout.count;
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(layout.count));
  for (int i = 0; i < layout.count; ++i) {
    // Counter-clockwise from the lower-left corner.
    double t = std::fmod((i + layout.offset) * spacing, perimeter);
    if (t < 0.0) t += perimeter;
    const int edge = std::min(3, static_cast<int>(t / s));
    const double u = t - edge * s;
    const double h = 0.5 * s;
    Position p;
    switch (edge) {
      case 0:
        p = Position(-h + u, -h);
        break;
      case 1:
        p = Position(h, -h + u);
        break;
      case 2:
        p = Position(h - u, h);
        break;
      default:
        p = Position(-h, h - u);
        break;
    }
    out.push_back(p + center);
  }
  return out;
}

std::vector<Position> control_positions(const ControlLayout& layout, const Position& center) {
  if (layout.kind == ControlLayout::Kind::Explicit) return layout.positions;
  const int n = layout.count_per_axis;
  const double s = layout.side;
  std::vector<double> axis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    axis[static_cast<std::size_t>(i)] = layout.placement == ControlLayout::Placement::Edge
                                            ? -0.5 * s + s * i / (n - 1)
                                            : -0.5 * s + s * (i + 0.5) / n;
  }
  std::vector<Position> out;
  for (double y : axis) {
    for (double x : axis) out.push_back(Position(x, y) + center);
  }
  return out;
}

Experiment build_experiment(const ExperimentConfig& c) {
  Experiment e;
  e.scene.dimension = c.dimension;
  e.scene.medium = c.medium;
  e.scene.region = c.region;
  for (const auto& p : speaker_positions(c.loudspeakers, c.region.center)) {
    e.scene.loudspeakers.push_back({p, SourceModel::point(c.dimension)});
  }
  e.scene.control_points = control_positions(c.control_points, c.region.center);

  const auto& d = c.desired_field;
  if (d.kind == DesiredField::Kind::PlaneWave) {
    e.desired = d.propagation_angle ? DesiredField::plane(Direction::from_angle(*d.propagation_angle))
                                    : DesiredField::plane(Direction::normalized(Position::from(*d.propagation)));
  } else {
    e.desired = DesiredField::point(Position::from(*d.position));
  }
  e.methods = c.methods;
  e.quadrature = c.quadrature;
  e.eval_spacing = c.eval_spacing;
  e.ridge_mode = c.regularization;
  e.validate();
  static_cast<void>(EvalGrid(c.region, c.eval_spacing));  // spacing must fit the region
  if (e.desired.kind == DesiredField::Kind::PointSource && c.region.contains(*e.desired.source, 0.0)) {
    throw ValidationError("desired_field.position: point source lies inside the target region");
  }
  c.sweep.validate();
  return e;
}

}  // namespace sfr
