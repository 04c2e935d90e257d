#include "sops/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <memory>
#include <thread>

#include "sops/bridge.hpp"
#include "sops/errors.hpp"
#include "sops/observables.hpp"
#include "sops/output.hpp"
#include "sops/theory.hpp"

namespace sops {

MetricsRow measure(const Configuration& c, std::uint64_t step, const Classifiers& k) {
  MetricsRow r;
  r.step = step;
  r.n = c.n();
  const BoundaryStats& s = c.stats();
  r.a = s.a;
  r.h = s.h;
  r.d_sum = s.d_sum;
  const AlignmentReport al = alignment_report(c);
  r.rho_p = al.rho_p;
  r.dominant = al.dominant;
  r.aligned = is_aligned(c, k.delta);
  r.nonaligned = is_eps_nonaligned(c, k.eps);
  if (c.setting() == Setting::Connected) {
    r.perimeter = perimeter(c);
    r.compressed = is_alpha_compressed(c, k.alpha);
    r.expanded = is_beta_expanded(c, k.beta);
  } else {
    const double rho = static_cast<double>(c.n()) / c.geometry().site_count();
    const BridgeSystem bs = construct_bridge_system(c, aggregation_bridge_delta(rho, k.alpha, k.delta));
    const RegionReport region = region_report(c, bs);
    r.aggregated = is_aggregated_aligned(c, region, k.alpha, k.delta);
    r.bridge_i_len = static_cast<std::int64_t>(bs.bridged.size());
    r.bridge_b_len = static_cast<std::int64_t>(bs.bridges.size());
  }
  return r;
}

WindowClassification classify_window(const std::vector<MetricsRow>& rows) {
  WindowClassification w;
  if (rows.empty()) return w;
  w.window = std::max<std::size_t>(1, (rows.size() + 9) / 10);
  const auto first = rows.end() - static_cast<std::ptrdiff_t>(w.window);
  auto vote = [&](auto field) {
    std::size_t yes = 0;
    for (auto it = first; it != rows.end(); ++it) yes += field(*it) ? 1 : 0;
    return 2 * yes > w.window;
  };
  w.aligned = vote([](const MetricsRow& r) { return r.aligned; });
  w.nonaligned = vote([](const MetricsRow& r) { return r.nonaligned; });
  if (rows.back().compressed) w.compressed = vote([](const MetricsRow& r) { return r.compressed.value_or(false); });
  if (rows.back().expanded) w.expanded = vote([](const MetricsRow& r) { return r.expanded.value_or(false); });
  if (rows.back().aggregated) w.aggregated = vote([](const MetricsRow& r) { return r.aggregated.value_or(false); });
  return w;
}

std::uint64_t initial_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ChainParams chain_params(const RunConfig& cfg) {
  ChainParams p;
  p.q = cfg.q;
  p.lambda = cfg.lambda;
  p.gamma = cfg.gamma.value_or(1.0);
  p.model = cfg.model;
  p.setting = cfg.setting;
  p.seed = cfg.seed;
  return p;
}

Configuration make_initial(const RunConfig& cfg) {
  if (cfg.initial.kind == InitialKind::FromSnapshot) {
    const Snapshot snap = snapshot_from_json(read_text_file(cfg.initial.snapshot_path));
    if (snap.side != cfg.side || snap.q != cfg.q || snap.setting != cfg.setting ||
        static_cast<int>(snap.particles.size()) != cfg.n)
      throw validation_error("field 'initial': snapshot does not match L, q, n and setting of the configuration");
    return snapshot_configuration(snap);
  }
  auto g = std::make_shared<const LatticeGeometry>(cfg.side);
  Configuration c(g, cfg.q, cfg.setting);
  Rng rng(initial_seed(cfg.seed));
  std::vector<SiteIndex> sites;
  const int mid = cfg.side / 2;
  switch (cfg.initial.kind) {
    case InitialKind::Line:
      for (int i = 0; i < cfg.n; ++i) sites.push_back(g->index({(cfg.side - cfg.n) / 2 + i, mid}));
      break;
    case InitialKind::Spiral:
      sites = spiral_sites(*g, g->index({mid, mid}), cfg.n);
      break;
    case InitialKind::UniformRandom: {
      std::vector<SiteIndex> all(static_cast<std::size_t>(g->site_count()));
      for (SiteIndex s = 0; s < g->site_count(); ++s) all[static_cast<std::size_t>(s)] = s;
      for (int i = 0; i < cfg.n; ++i) {
        const auto j = static_cast<std::size_t>(i) + rng.below(all.size() - static_cast<std::size_t>(i));
        std::swap(all[static_cast<std::size_t>(i)], all[j]);
      }
      sites.assign(all.begin(), all.begin() + cfg.n);
      break;
    }
    case InitialKind::FromSnapshot:
      break;
  }
  for (SiteIndex s : sites) c.place(s, static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.q))));
  return c;
}

RunResult run_experiment(const RunConfig& cfg, const std::function<void(const MetricsRow&)>& on_row) {
  Chain chain(make_initial(cfg), chain_params(cfg));
  std::vector<MetricsRow> rows;
  chain.run(cfg.steps, cfg.sample_interval, [&](std::uint64_t step, const Configuration& c) {
    rows.push_back(measure(c, step, cfg.classifiers));
    if (on_row) on_row(rows.back());
  });
  RunResult r{config_hash(cfg), std::move(rows), {}, chain.steps_taken(), chain.accepted(), chain.configuration()};
  r.classification = classify_window(r.rows);
  return r;
}

RunResult run_with_outputs(const RunConfig& cfg) {
  std::unique_ptr<MetricsWriter> writer;
  if (!cfg.outputs.metrics_csv.empty()) writer = std::make_unique<MetricsWriter>(cfg.outputs.metrics_csv, cfg);
  RunResult r = run_experiment(cfg, [&](const MetricsRow& row) {
    if (writer) writer->write(row);
  });
  if (writer) writer->close();
  const Snapshot snap = make_snapshot(cfg, r);
  if (!cfg.outputs.snapshot_json.empty()) write_text_file(cfg.outputs.snapshot_json, snapshot_to_json(snap));
  if (!cfg.outputs.render_svg.empty()) write_text_file(cfg.outputs.render_svg, render_svg(snap));
  return r;
}

SweepCellSummary summarize_cell(const SweepCell& cell, std::vector<ReplicaOutcome> replicas) {
  std::stable_sort(replicas.begin(), replicas.end(),
                   [](const ReplicaOutcome& a, const ReplicaOutcome& b) { return a.seed < b.seed; });
  SweepCellSummary s;
  s.cell = cell;
  std::size_t ok = 0, aligned = 0, nonaligned = 0, compressed = 0, expanded = 0, aggregated = 0;
  bool has_compressed = false, has_expanded = false, has_aggregated = false;
  for (const auto& r : replicas) {
    if (!r.ok) {
      ++s.failures;
      continue;
    }
    ++ok;
    aligned += r.classification.aligned ? 1 : 0;
    nonaligned += r.classification.nonaligned ? 1 : 0;
    if (r.classification.compressed) {
      has_compressed = true;
      compressed += *r.classification.compressed ? 1 : 0;
    }
    if (r.classification.expanded) {
      has_expanded = true;
      expanded += *r.classification.expanded ? 1 : 0;
    }
    if (r.classification.aggregated) {
      has_aggregated = true;
      aggregated += *r.classification.aggregated ? 1 : 0;
    }
  }
  const double denom = ok > 0 ? static_cast<double>(ok) : 1.0;
  s.aligned = static_cast<double>(aligned) / denom;
  s.nonaligned = static_cast<double>(nonaligned) / denom;
  if (has_compressed) s.compressed = static_cast<double>(compressed) / denom;
  if (has_expanded) s.expanded = static_cast<double>(expanded) / denom;
  if (has_aggregated) s.aggregated = static_cast<double>(aggregated) / denom;
  s.replicas = std::move(replicas);
  return s;
}

SweepSummary run_sweep(const RunConfig& base, const std::vector<double>& lambdas, const std::vector<double>& gammas,
                       const std::vector<std::uint64_t>& seeds, unsigned threads, const std::string& replica_dir) {
  if (lambdas.empty()) throw validation_error("field 'lambdas': sweep grid needs at least one lambda");
  if (seeds.empty()) throw validation_error("field 'seeds': sweep needs at least one seed");
  for (double l : lambdas)
    if (!(l > 0) || !std::isfinite(l)) throw validation_error("field 'lambdas': values must be positive");
  std::vector<std::optional<double>> gamma_axis;
  if (base.setting == Setting::General) {
    if (!gammas.empty()) throw validation_error("field 'gammas': not allowed in the general setting");
    gamma_axis.emplace_back();
  } else if (gammas.empty()) {
    if (!base.gamma) throw validation_error("field 'gammas': required in the connected setting");
    gamma_axis.emplace_back(base.gamma);
  } else {
    for (double g : gammas) {
      if (!(g > 0) || !std::isfinite(g)) throw validation_error("field 'gammas': values must be positive");
      gamma_axis.emplace_back(g);
    }
  }

  std::vector<SweepCell> cells;
  for (double l : lambdas)
    for (const auto& g : gamma_axis) cells.push_back({l, g});
  const std::size_t jobs = cells.size() * seeds.size();
  std::vector<ReplicaOutcome> outcomes(jobs);
  if (!replica_dir.empty()) std::filesystem::create_directories(replica_dir);

  auto run_job = [&](std::size_t job) {
    const SweepCell& cell = cells[job / seeds.size()];
    ReplicaOutcome& out = outcomes[job];
    out.seed = seeds[job % seeds.size()];
    try {
      RunConfig cfg = base;
      cfg.lambda = cell.lambda;
      cfg.gamma = cell.gamma;
      cfg.seed = out.seed;
      cfg.outputs = {};
      if (!replica_dir.empty()) {
        cfg.outputs.metrics_csv = (std::filesystem::path(replica_dir) /
                                   ("cell" + std::to_string(job / seeds.size()) + "_seed" + std::to_string(out.seed) + ".csv"))
                                      .string();
      }
      out.classification = run_with_outputs(cfg).classification;
      out.ok = true;
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  };

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t job = next++; job < jobs; job = next++) run_job(job);
    });
  for (auto& t : pool) t.join();

  SweepSummary summary;
  summary.base_hash = config_hash(base);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<ReplicaOutcome> replicas(outcomes.begin() + static_cast<std::ptrdiff_t>(i * seeds.size()),
                                         outcomes.begin() + static_cast<std::ptrdiff_t>((i + 1) * seeds.size()));
    summary.cells.push_back(summarize_cell(cells[i], std::move(replicas)));
    summary.any_failure = summary.any_failure || summary.cells.back().failures > 0;
  }
  return summary;
}

}  // namespace sops
