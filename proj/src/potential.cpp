#include "wavebasis/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "wavebasis/errors.hpp"

namespace wavebasis {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_ascending(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      throw PreconditionError(std::string(what) + " must be strictly ascending");
}

}  // namespace

void validate(const PotentialSpec& spec) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLawPotential>) {
          if (!(p.U > 0.0)) throw PreconditionError("power_law: U must be > 0");
          if (!(p.alpha > 0.0)) throw PreconditionError("power_law: alpha must be > 0");
        } else if constexpr (std::is_same_v<T, SingularPotential>) {
          if (!(p.U > 0.0)) throw PreconditionError("singular: U must be > 0");
          if (!(p.beta > 0.0 && p.beta < 1.0))
            throw PreconditionError("singular: beta must lie in (0, 1)");
        } else if constexpr (std::is_same_v<T, HarmonicPotential>) {
          if (!(p.omega > 0.0)) throw PreconditionError("harmonic: Omega must be > 0");
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          if (p.breakpoints.size() < 2)
            throw PreconditionError("piecewise: need at least two breakpoints");
          if (p.values.size() + 1 != p.breakpoints.size())
            throw PreconditionError("piecewise: values.size() must equal breakpoints.size()-1");
          require_ascending(p.breakpoints, "piecewise breakpoints");
        } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
          if (p.x.size() < 2) throw PreconditionError("tabulated: need at least two samples");
          if (p.x.size() != p.v.size())
            throw PreconditionError("tabulated: x and V must have equal length");
          require_ascending(p.x, "tabulated grid");
        } else if constexpr (std::is_same_v<T, HardWallPotential>) {
          if (!(p.half_width > 0.0))
            throw PreconditionError("hard_wall: half_width must be > 0");
        }
      },
      spec);
}

double potential_value(const PotentialSpec& spec, const PhysicalScales& scales, double x) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLawPotential>) {
          return p.U * std::pow(std::abs(x), p.alpha);
        } else if constexpr (std::is_same_v<T, SingularPotential>) {
          if (x == 0.0) throw SingularPointError("singular potential evaluated at x = 0");
          return -p.U * std::pow(std::abs(x), -p.beta);
        } else if constexpr (std::is_same_v<T, HarmonicPotential>) {
          return 0.5 * scales.mass * p.omega * p.omega * x * x;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          if (x < p.breakpoints.front() || x > p.breakpoints.back())
            throw DomainError("piecewise potential evaluated outside its breakpoints");
          auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), x);
          std::size_t cell = static_cast<std::size_t>(it - p.breakpoints.begin());
          if (cell == 0) cell = 1;
          if (cell > p.values.size()) cell = p.values.size();
          return p.values[cell - 1];
        } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
          if (x < p.x.front() || x > p.x.back())
            throw DomainError("tabulated potential evaluated outside its grid");
          auto it = std::upper_bound(p.x.begin(), p.x.end(), x);
          std::size_t i = static_cast<std::size_t>(it - p.x.begin());
          if (i == 0) i = 1;
          if (i >= p.x.size()) i = p.x.size() - 1;
          const double t = (x - p.x[i - 1]) / (p.x[i] - p.x[i - 1]);
          return p.v[i - 1] + t * (p.v[i] - p.v[i - 1]);
        } else {
          const auto& w = static_cast<const HardWallPotential&>(p);
          if (std::abs(x) > w.half_width)
            throw DomainError("hard wall potential evaluated beyond the walls");
          return 0.0;
        }
      },
      spec);
}

std::pair<double, double> potential_domain(const PotentialSpec& spec) {
  return std::visit(
      [](const auto& p) -> std::pair<double, double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PiecewiseConstantPotential>)
          return {p.breakpoints.front(), p.breakpoints.back()};
        else if constexpr (std::is_same_v<T, TabulatedPotential>)
          return {p.x.front(), p.x.back()};
        else if constexpr (std::is_same_v<T, HardWallPotential>)
          return {-p.half_width, p.half_width};
        else
          return {-inf, inf};
      },
      spec);
}

std::string potential_type_name(const PotentialSpec& spec) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLawPotential>) return "power_law";
        else if constexpr (std::is_same_v<T, SingularPotential>) return "singular";
        else if constexpr (std::is_same_v<T, HarmonicPotential>) return "harmonic";
        else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) return "piecewise";
        else if constexpr (std::is_same_v<T, TabulatedPotential>) return "tabulated";
        else return "hard_wall";
      },
      spec);
}

namespace {

double get_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key))
    throw ConfigError(std::string("potential spec: missing field \"") + key + "\"");
  if (!j[key].is_number())
    throw ConfigError(std::string("potential spec: field \"") + key + "\" must be a number");
  return j[key].get<double>();
}

std::vector<double> get_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key))
    throw ConfigError(std::string("potential spec: missing field \"") + key + "\"");
  if (!j[key].is_array())
    throw ConfigError(std::string("potential spec: field \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& e : j[key]) {
    if (!e.is_number())
      throw ConfigError(std::string("potential spec: array \"") + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void reject_unknown(const nlohmann::json& j, std::set<std::string> allowed) {
  allowed.insert("type");
  allowed.insert("scales");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("potential spec: unknown field \"" + it.key() + "\"");
}

}  // namespace

PotentialDocument potential_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("potential spec must be a JSON object");
  if (!doc.contains("type") || !doc["type"].is_string())
    throw ConfigError("potential spec: missing string field \"type\"");
  const std::string type = doc["type"].get<std::string>();

  PotentialDocument out;
  if (type == "power_law") {
    reject_unknown(doc, {"U", "alpha"});
    out.potential = PowerLawPotential{get_number(doc, "U"), get_number(doc, "alpha")};
  } else if (type == "singular") {
    reject_unknown(doc, {"U", "beta"});
    out.potential = SingularPotential{get_number(doc, "U"), get_number(doc, "beta")};
  } else if (type == "harmonic") {
    reject_unknown(doc, {"omega"});
    out.potential = HarmonicPotential{get_number(doc, "omega")};
  } else if (type == "piecewise") {
    reject_unknown(doc, {"breakpoints", "values"});
    out.potential =
        PiecewiseConstantPotential{get_array(doc, "breakpoints"), get_array(doc, "values")};
  } else if (type == "tabulated") {
    reject_unknown(doc, {"x", "V"});
    out.potential = TabulatedPotential{get_array(doc, "x"), get_array(doc, "V")};
  } else if (type == "hard_wall") {
    reject_unknown(doc, {"half_width"});
    out.potential = HardWallPotential{get_number(doc, "half_width")};
  } else {
    throw ConfigError("potential spec: unknown type \"" + type + "\"");
  }

  if (doc.contains("scales")) {
    const auto& s = doc["scales"];
    if (!s.is_object()) throw ConfigError("potential spec: \"scales\" must be an object");
    for (auto it = s.begin(); it != s.end(); ++it)
      if (it.key() != "mass" && it.key() != "hbar")
        throw ConfigError("potential spec: unknown scales field \"" + it.key() + "\"");
    if (s.contains("mass")) out.scales.mass = s["mass"].get<double>();
    if (s.contains("hbar")) out.scales.hbar = s["hbar"].get<double>();
  }

  out.scales.validate();
  try {
    validate(out.potential);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return out;
}

PotentialDocument load_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open potential spec file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return potential_from_json(doc);
}

}  // namespace wavebasis
