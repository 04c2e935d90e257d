#include "sops/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <json.hpp>
#include <sstream>

#include "sops/errors.hpp"
#include "sops/rng.hpp"

namespace sops {

namespace {

using nlohmann::json;

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string flag(bool b) { return b ? "1" : "0"; }

template <class T, class F>
std::string opt(const std::optional<T>& v, F f) {
  return v ? f(*v) : std::string();
}

}  // namespace

std::string metrics_header() {
  return "step,n,a,h,d_sum,perimeter,rho_p,dominant,aligned(delta),nonaligned(eps),compressed(alpha),expanded(beta),"
         "\"aggregated(alpha,delta)\",bridge_I_len,bridge_B_len\n";
}

std::string metrics_row(const MetricsRow& r) {
  auto integer = [](std::int64_t v) { return std::to_string(v); };
  std::string out;
  out += std::to_string(r.step) + ',' + std::to_string(r.n) + ',' + std::to_string(r.a) + ',' + std::to_string(r.h) +
         ',' + fmt_real(r.d_sum) + ',' + opt(r.perimeter, integer) + ',' + fmt_real(r.rho_p) + ',' +
         std::to_string(r.dominant) + ',' + flag(r.aligned) + ',' + flag(r.nonaligned) + ',' + opt(r.compressed, flag) +
         ',' + opt(r.expanded, flag) + ',' + opt(r.aggregated, flag) + ',' + opt(r.bridge_i_len, integer) + ',' +
         opt(r.bridge_b_len, integer) + '\n';
  return out;
}

std::string metrics_metadata(const RunConfig& cfg) {
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += "# " + k + ": " + v + "\n"; };
  line("version", kArtifactVersion);
  line("config_hash", config_hash(cfg));
  line("rng", Rng::kName);
  line("seed", std::to_string(cfg.seed));
  line("setting", std::string(to_string(cfg.setting)));
  line("model", std::string(to_string(cfg.model)));
  line("initial", to_string(cfg.initial));
  line("classifiers", "alpha=" + fmt_real(cfg.classifiers.alpha) + " beta=" + fmt_real(cfg.classifiers.beta) +
                          " delta=" + fmt_real(cfg.classifiers.delta) + " eps=" + fmt_real(cfg.classifiers.eps));
  line("classification", "empirical majority vote over the final 10% of samples");
  return out;
}

MetricsWriter::MetricsWriter(const std::string& path, const RunConfig& cfg) : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw io_error("cannot open metrics file " + path);
  out_ << metrics_metadata(cfg) << metrics_header();
}

void MetricsWriter::write(const MetricsRow& r) {
  out_ << metrics_row(r);
  if (!out_) throw io_error("write failed on " + path_);
}

void MetricsWriter::close() {
  out_.close();
  if (!out_) throw io_error("closing " + path_ + " failed");
}

Snapshot make_snapshot(const Configuration& c, const RunConfig& cfg, std::uint64_t step, std::uint64_t accepted) {
  Snapshot s;
  s.config_hash = config_hash(cfg);
  s.rng = Rng::kName;
  s.seed = cfg.seed;
  s.setting = c.setting();
  s.model = cfg.model;
  s.side = c.geometry().side();
  s.q = c.q();
  s.step = step;
  s.accepted = accepted;
  s.initial = to_string(cfg.initial);
  std::vector<SiteIndex> sites(c.particles().begin(), c.particles().end());
  std::sort(sites.begin(), sites.end());
  for (SiteIndex i : sites) {
    const Site p = c.geometry().site(i);
    s.particles.push_back({p.x, p.y, c.orientation(i)});
  }
  return s;
}

Snapshot make_snapshot(const RunConfig& cfg, const RunResult& result) {
  return make_snapshot(result.final_state, cfg, result.steps, result.accepted);
}

std::string snapshot_to_json(const Snapshot& s) {
  json j;
  j["format"] = "sops-snapshot";
  j["version"] = s.version;
  j["config_hash"] = s.config_hash;
  j["rng"] = s.rng;
  j["seed"] = s.seed;
  j["setting"] = to_string(s.setting);
  j["model"] = to_string(s.model);
  j["L"] = s.side;
  j["q"] = s.q;
  j["n"] = s.particles.size();
  j["step"] = s.step;
  j["accepted"] = s.accepted;
  j["initial"] = s.initial;
  json parts = json::array();
  for (const auto& p : s.particles) parts.push_back({p.x, p.y, p.theta});
  j["particles"] = std::move(parts);
  return j.dump(1) + "\n";
}

Snapshot snapshot_from_json(const std::string& text) {
  Snapshot s;
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "sops-snapshot") throw validation_error("snapshot: missing or unknown format tag");
    s.version = j.at("version").get<std::string>();
    s.config_hash = j.at("config_hash").get<std::string>();
    s.rng = j.at("rng").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    const auto setting = parse_setting(j.at("setting").get<std::string>());
    const auto model = parse_model(j.at("model").get<std::string>());
    if (!setting || !model) throw validation_error("snapshot: unknown setting or model");
    s.setting = *setting;
    s.model = *model;
    s.side = j.at("L").get<int>();
    s.q = j.at("q").get<int>();
    s.step = j.at("step").get<std::uint64_t>();
    s.accepted = j.at("accepted").get<std::uint64_t>();
    s.initial = j.at("initial").get<std::string>();
    if (s.side < 3 || s.side > 4096 || s.q < 2 || s.q > 127) throw validation_error("snapshot: L or q out of range");
    for (const auto& p : j.at("particles")) {
      SnapshotParticle sp{p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()};
      if (sp.x < 0 || sp.x >= s.side || sp.y < 0 || sp.y >= s.side || sp.theta < 0 || sp.theta >= s.q)
        throw validation_error("snapshot: particle out of range");
      s.particles.push_back(sp);
    }
    if (j.at("n").get<std::size_t>() != s.particles.size()) throw validation_error("snapshot: n does not match particles");
  } catch (const json::exception& e) {
    throw validation_error(std::string("snapshot: ") + e.what());
  }
  return s;
}

Configuration snapshot_configuration(const Snapshot& s) {
  auto g = std::make_shared<const LatticeGeometry>(s.side);
  Configuration c(g, s.q, s.setting);
  for (const auto& p : s.particles) {
    const SiteIndex i = g->index({p.x, p.y});
    if (c.occupied(i)) throw validation_error("snapshot: duplicate particle site");
    c.place(i, p.theta);
  }
  return c;
}

std::string palette_colour(int theta, int q) {
  static constexpr std::array<const char*, 10> kPalette{"#000000", "#9e9e9e", "#d62728", "#1f77b4", "#2ca02c",
                                                         "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  if (q <= static_cast<int>(kPalette.size())) return kPalette[static_cast<std::size_t>(theta)];
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%d,70%%,45%%)", 360 * theta / q);
  return buf;
}

std::string render_svg(const Snapshot& s, double scale) {
  const double h = std::sqrt(3.0) / 2.0;
  const double margin = scale;
  const double shift = (s.side - 1) / 2.0;  // keeps x - y/2 non-negative
  auto px = [&](double x, double y) { return margin + (x - y / 2.0 + shift) * scale; };
  auto py = [&](double y) { return margin + y * h * scale; };
  const double width = 2 * margin + (1.5 * (s.side - 1)) * scale;
  const double height = 2 * margin + (s.side - 1) * h * scale;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_fixed(width) << "\" height=\"" << fmt_fixed(height)
      << "\" viewBox=\"0 0 " << fmt_fixed(width) << ' ' << fmt_fixed(height) << "\">\n";
  out << "<!-- config_hash: " << s.config_hash << " step: " << s.step << " -->\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out << "<g stroke=\"#dddddd\" stroke-width=\"" << fmt_fixed(scale / 20.0) << "\">\n";
  for (int y = 0; y < s.side; ++y)
    for (int x = 0; x < s.side; ++x)
      for (int f = 0; f < 3; ++f) {
        const int x2 = x + kDirections[static_cast<std::size_t>(f)].dx;
        const int y2 = y + kDirections[static_cast<std::size_t>(f)].dy;
        if (x2 >= s.side || y2 >= s.side) continue;
        out << "<line x1=\"" << fmt_fixed(px(x, y)) << "\" y1=\"" << fmt_fixed(py(y)) << "\" x2=\"" << fmt_fixed(px(x2, y2))
            << "\" y2=\"" << fmt_fixed(py(y2)) << "\"/>\n";
      }
  out << "</g>\n<g>\n";
  for (const auto& p : s.particles)
    out << "<circle cx=\"" << fmt_fixed(px(p.x, p.y)) << "\" cy=\"" << fmt_fixed(py(p.y)) << "\" r=\""
        << fmt_fixed(0.4 * scale) << "\" fill=\"" << palette_colour(p.theta, s.q) << "\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string sweep_summary_csv(const SweepSummary& s, const std::vector<std::uint64_t>& seeds) {
  std::string out;
  out += "# version: " + std::string(kArtifactVersion) + "\n";
  out += "# config_hash: " + s.base_hash + "\n";
  out += "# rng: " + std::string(Rng::kName) + "\n";
  out += "# seeds:";
  for (auto seed : seeds) out += " " + std::to_string(seed);
  out += "\n# classification: fraction of replicas whose final 10% window votes true\n";
  out += "lambda,gamma,replicas,failures,aligned,nonaligned,compressed,expanded,\"aggregated(alpha,delta)\"\n";
  auto frac = [](const std::optional<double>& v) { return v ? fmt_real(*v) : std::string(); };
  for (const auto& c : s.cells) {
    out += fmt_real(c.cell.lambda) + ',' + (c.cell.gamma ? fmt_real(*c.cell.gamma) : std::string()) + ',' +
           std::to_string(c.replicas.size()) + ',' + std::to_string(c.failures) + ',' + fmt_real(c.aligned) + ',' +
           fmt_real(c.nonaligned) + ',' + frac(c.compressed) + ',' + frac(c.expanded) + ',' + frac(c.aggregated) + '\n';
  }
  for (const auto& c : s.cells)
    for (const auto& r : c.replicas)
      if (!r.ok) {
        std::string msg = r.error;
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out += "# failure: lambda=" + fmt_real(c.cell.lambda) + " seed=" + std::to_string(r.seed) + ": " + msg + "\n";
      }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw io_error("write failed on " + path);
}

MetricsFileInfo read_metrics_info(const std::string& path) {
  std::istringstream in(read_text_file(path));
  MetricsFileInfo info;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.starts_with("# config_hash: ")) {
      info.config_hash = line.substr(15);
      continue;
    }
    if (line.starts_with("#") || line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++info.rows;
    const auto comma = line.find(',');
    try {
      info.last_step = std::stoull(line.substr(0, comma));
    } catch (const std::exception&) {
      throw validation_error("metrics file " + path + ": malformed row");
    }
  }
  if (!header_seen) throw validation_error("metrics file " + path + ": no header row");
  return info;
}

}  // namespace sops
