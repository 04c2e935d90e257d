#include "sops/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "sops/errors.hpp"

namespace sops {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "setting", "model", "L", "n", "q", "lambda", "gamma", "steps", "seed", "sample_interval", "initial",
      "classifiers.alpha", "classifiers.beta", "classifiers.delta", "classifiers.eps",
      "outputs.metrics_csv", "outputs.snapshot_json", "outputs.render_svg"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::optional<double> parse_double(const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Accepts plain digits or an exactly integral decimal/scientific value such as 1e8.
std::optional<std::uint64_t> parse_count(const std::string& s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
  const auto d = parse_double(s);
  if (!d || *d < 0 || *d != std::floor(*d) || *d > 9.0e18) return std::nullopt;
  return static_cast<std::uint64_t>(*d);
}

class FieldErrors {
 public:
  void add(const std::string& field, const std::string& message) { lines_.push_back("field '" + field + "': " + message); }
  bool empty() const { return lines_.empty(); }
  std::string text() const {
    std::string out = "invalid configuration";
    for (const auto& l : lines_) out += "\n  " + l;
    return out;
  }

 private:
  std::vector<std::string> lines_;
};

}  // namespace

std::string to_string(const InitialCondition& init) {
  switch (init.kind) {
    case InitialKind::Line:
      return "line";
    case InitialKind::Spiral:
      return "spiral";
    case InitialKind::UniformRandom:
      return "uniform_random";
    case InitialKind::FromSnapshot:
      return "snapshot:" + init.snapshot_path;
  }
  return "spiral";
}

bool is_known_key(const std::string& key) { return known_keys().contains(key); }

ConfigDocument ConfigDocument::from_string(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw validation_error("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }
  ConfigDocument doc;
  FieldErrors errors;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      if (!is_known_key(key)) errors.add(key, "unknown key");
      doc.values_[key] = trim(node.data());
      continue;
    }
    for (const auto& [sub, leaf] : node) {
      const std::string full = key + "." + sub;
      if (!is_known_key(full)) errors.add(full, "unknown key");
      doc.values_[full] = trim(leaf.data());
    }
  }
  if (!errors.empty()) throw validation_error(errors.text());
  for (auto it = doc.values_.begin(); it != doc.values_.end();) it = it->second.empty() ? doc.values_.erase(it) : std::next(it);
  return doc;
}

ConfigDocument ConfigDocument::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

void ConfigDocument::set(const std::string& key, const std::string& value) {
  if (!is_known_key(key)) throw validation_error("field '" + key + "': unknown key");
  const std::string v = trim(value);
  if (v.empty())
    values_.erase(key);
  else
    values_[key] = v;
}

void ConfigDocument::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw validation_error("override '" + assignment + "' is not of the form key=value");
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::optional<std::string> ConfigDocument::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

RunConfig ConfigDocument::parse() const {
  RunConfig c;
  FieldErrors errors;
  auto text = [&](const std::string& key) { return get(key); };
  auto real = [&](const std::string& key, double& out, bool required) {
    const auto v = text(key);
    if (!v) {
      if (required) errors.add(key, "required");
      return false;
    }
    const auto d = parse_double(*v);
    if (!d) {
      errors.add(key, "expected a finite number, got '" + *v + "'");
      return false;
    }
    out = *d;
    return true;
  };
  auto count = [&](const std::string& key, std::uint64_t& out, bool required) {
    const auto v = text(key);
    if (!v) {
      if (required) errors.add(key, "required");
      return false;
    }
    const auto d = parse_count(*v);
    if (!d) {
      errors.add(key, "expected a non-negative integer, got '" + *v + "'");
      return false;
    }
    out = *d;
    return true;
  };

  bool setting_ok = false;
  if (const auto v = text("setting")) {
    if (const auto s = parse_setting(*v)) {
      c.setting = *s;
      setting_ok = true;
    } else {
      errors.add("setting", "expected 'connected' or 'general', got '" + *v + "'");
    }
  } else {
    errors.add("setting", "required");
  }
  if (const auto v = text("model")) {
    if (const auto m = parse_model(*v))
      c.model = *m;
    else
      errors.add("model", "expected 'potts' or 'clock', got '" + *v + "'");
  }

  std::uint64_t side = 0, n = 0, q = 2;
  const bool side_parsed = count("L", side, true);
  const bool side_ok = side_parsed && side >= 3 && side <= 4096;
  if (side_parsed && !side_ok) errors.add("L", "must lie in [3, 4096]");
  const bool n_parsed = count("n", n, true);
  const bool n_ok = n_parsed && n >= 1 && n <= 4096 * 4096;
  if (n_parsed && !n_ok) errors.add("n", "must lie in [1, L^2]");
  if (side_ok && n_ok && n > side * side) errors.add("n", "must not exceed L^2");
  const bool q_parsed = !text("q") || count("q", q, false);
  const bool q_ok = q_parsed && q >= 2 && q <= 127;
  if (q_parsed && !q_ok) errors.add("q", "must lie in [2, 127]");
  c.side = static_cast<int>(side);
  c.n = static_cast<int>(n_ok ? n : 0);
  c.q = static_cast<int>(q);

  if (real("lambda", c.lambda, true) && !(c.lambda > 0)) errors.add("lambda", "must be positive");
  double gamma = 0;
  const bool has_gamma = real("gamma", gamma, false);
  if (has_gamma) c.gamma = gamma;
  count("steps", c.steps, false);
  count("seed", c.seed, false);
  count("sample_interval", c.sample_interval, false);

  if (const auto v = text("initial")) {
    if (*v == "line") {
      c.initial.kind = InitialKind::Line;
    } else if (*v == "spiral") {
      c.initial.kind = InitialKind::Spiral;
    } else if (*v == "uniform_random") {
      c.initial.kind = InitialKind::UniformRandom;
    } else if (v->starts_with("snapshot:") && v->size() > 9) {
      c.initial.kind = InitialKind::FromSnapshot;
      c.initial.snapshot_path = v->substr(9);
    } else {
      errors.add("initial", "expected line, spiral, uniform_random or snapshot:<path>, got '" + *v + "'");
    }
  }

  if (real("classifiers.alpha", c.classifiers.alpha, false) && !(c.classifiers.alpha > 1))
    errors.add("classifiers.alpha", "must exceed 1");
  if (real("classifiers.beta", c.classifiers.beta, false) && !(c.classifiers.beta > 0 && c.classifiers.beta < 1))
    errors.add("classifiers.beta", "must lie in (0, 1)");
  if (real("classifiers.delta", c.classifiers.delta, false) && !(c.classifiers.delta > 0 && c.classifiers.delta < 1))
    errors.add("classifiers.delta", "must lie in (0, 1)");
  const bool eps_given = real("classifiers.eps", c.classifiers.eps, false);
  if (q_ok && !(c.classifiers.eps > 0 && c.classifiers.eps < 1.0 / c.q))
    errors.add("classifiers.eps", eps_given ? "must lie in (0, 1/q)" : "default 0.15 is outside (0, 1/q); set it explicitly");
  c.outputs.metrics_csv = text("outputs.metrics_csv").value_or("");
  c.outputs.snapshot_json = text("outputs.snapshot_json").value_or("");
  c.outputs.render_svg = text("outputs.render_svg").value_or("");

  if (setting_ok && c.setting == Setting::Connected) {
    if (!has_gamma && !text("gamma")) errors.add("gamma", "required in the connected setting");
    if (has_gamma && !(gamma > 0)) errors.add("gamma", "must be positive");
    if (side_ok && n_ok) {
      if (side < 5) errors.add("L", "the connected setting needs L >= 5");
      if (side * side < (n + 1) * (n + 1)) errors.add("L", "the connected setting needs L^2 >= (n+1)^2");
    }
    if (c.initial.kind == InitialKind::UniformRandom)
      errors.add("initial", "uniform_random is only available in the general setting");
  }
  if (setting_ok && c.setting == Setting::General) {
    if (text("gamma")) errors.add("gamma", "not allowed in the general setting");
    if (side_ok && n_ok && !(3 * n < side * side)) errors.add("n", "the general setting needs density n/L^2 < 1/3");
  }
  if (side_ok && n_ok && c.initial.kind == InitialKind::Line && n > side) errors.add("initial", "a line of n sites needs n <= L");
  if (!errors.empty()) throw validation_error(errors.text());
  return c;
}

std::string canonical_text(const RunConfig& c) {
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += k + "=" + v + "\n"; };
  line("setting", std::string(to_string(c.setting)));
  line("model", std::string(to_string(c.model)));
  line("L", std::to_string(c.side));
  line("n", std::to_string(c.n));
  line("q", std::to_string(c.q));
  line("lambda", format_double(c.lambda));
  line("gamma", c.gamma ? format_double(*c.gamma) : "none");
  line("steps", std::to_string(c.steps));
  line("seed", std::to_string(c.seed));
  line("sample_interval", std::to_string(c.sample_interval));
  line("initial", to_string(c.initial));
  line("classifiers.alpha", format_double(c.classifiers.alpha));
  line("classifiers.beta", format_double(c.classifiers.beta));
  line("classifiers.delta", format_double(c.classifiers.delta));
  line("classifiers.eps", format_double(c.classifiers.eps));
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const RunConfig& c) { return fnv1a_hex(canonical_text(c)); }

std::vector<double> parse_real_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto v = parse_double(item);
    if (!v) throw validation_error("field '" + field + "': '" + item + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& field, const std::string& text) {
  std::vector<std::uint64_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      const auto v = parse_count(item);
      if (!v) throw validation_error("field '" + field + "': '" + item + "' is not a seed");
      out.push_back(*v);
      continue;
    }
    const auto lo = parse_count(trim(item.substr(0, dots)));
    const auto hi = parse_count(trim(item.substr(dots + 2)));
    if (!lo || !hi || *lo > *hi || *hi - *lo >= 1'000'000)
      throw validation_error("field '" + field + "': bad seed range '" + item + "'");
    for (std::uint64_t s = *lo; s <= *hi; ++s) out.push_back(s);
  }
  return out;
}

std::string to_ini(const RunConfig& c) {
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  line("setting", std::string(to_string(c.setting)));
  line("model", std::string(to_string(c.model)));
  line("L", std::to_string(c.side));
  line("n", std::to_string(c.n));
  line("q", std::to_string(c.q));
  line("lambda", format_double(c.lambda));
  if (c.gamma) line("gamma", format_double(*c.gamma));
  line("steps", std::to_string(c.steps));
  line("seed", std::to_string(c.seed));
  line("sample_interval", std::to_string(c.sample_interval));
  line("initial", to_string(c.initial));
  out += "\n[classifiers]\n";
  line("alpha", format_double(c.classifiers.alpha));
  line("beta", format_double(c.classifiers.beta));
  line("delta", format_double(c.classifiers.delta));
  line("eps", format_double(c.classifiers.eps));
  out += "\n[outputs]\n";
  if (!c.outputs.metrics_csv.empty()) line("metrics_csv", c.outputs.metrics_csv);
  if (!c.outputs.snapshot_json.empty()) line("snapshot_json", c.outputs.snapshot_json);
  if (!c.outputs.render_svg.empty()) line("render_svg", c.outputs.render_svg);
  return out;
}

}  // namespace sops
