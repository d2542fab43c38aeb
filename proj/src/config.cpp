#include "sivnuc/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace sivnuc {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_finite(double v, const char* name) {
  require(std::isfinite(v), std::string(name) + " must be finite");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  double value = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

void PhysicalConstants::validate() const {
  for (auto [v, name] : {std::pair{gamma_e, "gamma_e"}, {gamma_n, "gamma_n"}, {A_par, "A_par"},
                         {A_perp, "A_perp"}, {q, "q"}, {gamma_L, "gamma_L"},
                         {lambda_SO, "lambda_SO"}}) {
    require_finite(v, name);
  }
  require(gamma_e > 0.0, "gamma_e must be positive");
  require(gamma_n < 0.0, "gamma_n must be negative (signed nuclear gyromagnetic ratio)");
  require(A_par > 0.0, "A_par must be positive");
  require(A_perp > 0.0, "A_perp must be positive");
  require(lambda_SO > 0.0, "lambda_SO must be positive");
}

void StrainParams::validate() const {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
}

Vec3 FieldSetPoint::cartesian() const {
  const double t = deg_to_rad(polar_deg);
  const double p = deg_to_rad(azimuth_deg);
  return magnitude_T * Vec3(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
}

void FieldSetPoint::validate() const {
  require_finite(magnitude_T, "B_mag_T");
  require_finite(polar_deg, "theta_deg");
  require_finite(azimuth_deg, "phi_deg");
  require(magnitude_T >= 0.0, "B_mag_T must be non-negative");
  require(polar_deg >= 0.0 && polar_deg <= 180.0, "theta_deg must lie in [0, 180]");
  require(azimuth_deg >= 0.0 && azimuth_deg < 360.0, "phi_deg must lie in [0, 360)");
}

void SystemConfig::validate() const {
  constants.validate();
  strain.validate();
  field.validate();
}

SystemConfig SystemConfig::with_field(double magnitude_T, double polar_deg, double azimuth_deg) const {
  SystemConfig out = *this;
  out.field = FieldSetPoint{magnitude_T, polar_deg, azimuth_deg};
  return out;
}

SystemConfig SystemConfig::with_strain(double alpha, double beta) const {
  SystemConfig out = *this;
  out.strain = StrainParams{alpha, beta};
  return out;
}

SystemConfig parse_config(std::string_view text, const std::string& source) {
  SystemConfig config;
  std::map<std::string, double*, std::less<>> slots{
      {"gamma_e", &config.constants.gamma_e},   {"gamma_n", &config.constants.gamma_n},
      {"A_par", &config.constants.A_par},       {"A_perp", &config.constants.A_perp},
      {"q", &config.constants.q},               {"gamma_L", &config.constants.gamma_L},
      {"lambda_SO", &config.constants.lambda_SO}, {"alpha", &config.strain.alpha},
      {"beta", &config.strain.beta},            {"B_mag_T", &config.field.magnitude_T},
      {"theta_deg", &config.field.polar_deg},   {"phi_deg", &config.field.azimuth_deg},
  };
  std::map<std::string, int, std::less<>> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    const auto slot = slots.find(key);
    if (slot == slots.end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (auto prev = seen.find(key); prev != seen.end()) {
      throw ConfigError(where + "duplicate key '" + std::string(key) + "' (first set on line " +
                        std::to_string(prev->second) + ")");
    }
    const auto number = to_double(value);
    if (!number) {
      throw ConfigError(where + "key '" + std::string(key) + "' has non-numeric value '" +
                        std::string(value) + "'");
    }
    *slot->second = *number;
    seen.emplace(std::string(key), line_no);
  }

  if (!seen.contains("gamma_L")) config.constants.gamma_L = config.constants.gamma_e / 2.0;

  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

std::string format_config(const SystemConfig& c) {
  std::ostringstream out;
  const auto put = [&](const char* key, double v) { out << key << " = " << format_double(v) << '\n'; };
  put("gamma_e", c.constants.gamma_e);
  put("gamma_n", c.constants.gamma_n);
  put("A_par", c.constants.A_par);
  put("A_perp", c.constants.A_perp);
  put("q", c.constants.q);
  put("gamma_L", c.constants.gamma_L);
  put("lambda_SO", c.constants.lambda_SO);
  put("alpha", c.strain.alpha);
  put("beta", c.strain.beta);
  put("B_mag_T", c.field.magnitude_T);
  put("theta_deg", c.field.polar_deg);
  put("phi_deg", c.field.azimuth_deg);
  return out.str();
}

}  // namespace sivnuc
