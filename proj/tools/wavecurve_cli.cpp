// Command-line surface for the curve pipeline: toy dataset generation,
// ground-truth building, pyramid transforms on serialized coefficients,
// round-trip validation, and evaluation reports.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wavecurve/filters.hpp"
#include "wavecurve/groundtruth.hpp"
#include "wavecurve/io.hpp"
#include "wavecurve/metrics.hpp"
#include "wavecurve/toygen.hpp"

namespace fs = std::filesystem;
using namespace wavecurve;

namespace {

unsigned default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

// Index-sharded worker pool.  fn(i) must only touch slot i of its outputs;
// results are then emitted in index order, so parallelism never changes a
// byte of output.
template <typename Fn>
void run_indexed(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, count ? static_cast<unsigned>(std::min<std::size_t>(count, 1u << 10)) : 1u));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string toy_id(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "toy_%05zu", index);
  return buf;
}

int cmd_filters(const std::string& wavelet, const std::string& out_path) {
  const FilterBank bank = bank_from_name(wavelet);
  std::string csv = "filter,index,value\n";
  const auto& h = bank.lowpass();
  for (std::size_t k = 0; k < h.size(); ++k)
    csv += "h," + std::to_string(k) + "," + format_g17(h[k]) + "\n";
  const auto& g = bank.highpass();
  for (std::size_t i = 0; i < g.size(); ++i)
    csv += "g," + std::to_string(bank.highpass_first_index() + static_cast<int>(i)) + "," +
           format_g17(g[i]) + "\n";
  if (out_path.empty())
    std::cout << csv;
  else
    write_text_file(out_path, csv);
  return 0;
}

int cmd_gen_toy(std::size_t count, std::uint64_t seed, const std::string& out_dir,
                const ToyOptions& opts, unsigned workers) {
  fs::create_directories(out_dir);
  std::vector<ToySample> samples(count);
  run_indexed(count, workers,
              [&](std::size_t i) { samples[i] = sample_toy(record_seed(seed, i), opts); });
  std::string manifest = "{\"schema\":\"wavecurve-toys-v1\",\"seed\":" + std::to_string(seed) +
                         ",\"count\":" + std::to_string(count) +
                         ",\"canvas\":" + std::to_string(opts.canvas) +
                         ",\"points\":" + std::to_string(opts.points) + ",\"samples\":[";
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = samples[i];
    const std::string id = toy_id(i);
    write_pgm(s.mask, (fs::path(out_dir) / (id + ".pgm")).string());
    write_text_file((fs::path(out_dir) / (id + ".json")).string(), contour_to_json(s.polygon));
    manifest += i ? ",\n" : "\n";
    manifest += "{\"id\":\"" + id + "\",\"seed\":" + std::to_string(s.seed) +
                ",\"r1\":" + std::to_string(s.params.r1) + ",\"theta\":" + format_g17(s.params.theta) +
                ",\"q1\":" + format_g17(s.params.q1) + ",\"q2\":" + format_g17(s.params.q2) +
                ",\"kappa\":" + format_g17(s.params.kappa) +
                ",\"rejected\":" + std::to_string(s.rejected) + ",\"mask\":\"" + id +
                ".pgm\",\"polygon\":\"" + id + ".json\"}";
  }
  manifest += "\n]}\n";
  write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest);
  return 0;
}

int cmd_build_gt(const std::string& manifest_path, const std::string& out_path,
                 const PipelineConfig& cfg, const std::string& center_flag, bool strict,
                 unsigned workers) {
  validate(cfg);
  const fs::path base = fs::path(manifest_path).parent_path();
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw io_error(manifest_path + ": " + e.what());
  }
  if (!manifest.contains("samples") || !manifest["samples"].is_array())
    throw io_error(manifest_path + ": manifest has no samples array");

  std::vector<std::string> ids;
  std::vector<PolyContour> polygons;
  for (const auto& entry : manifest["samples"]) {
    ids.push_back(entry.at("id").get<std::string>());
    const std::string rel = entry.at("polygon").get<std::string>();
    polygons.push_back(parse_contour(read_text_file((base / rel).string())));
  }

  Point center{0.0, 0.0};
  if (center_flag == "auto") {
    std::vector<PolyContour> present;
    for (const auto& p : polygons)
      if (p.size() >= 3) present.push_back(p);
    center = average_midpoint(present, cfg.fourier_N);
  } else if (std::sscanf(center_flag.c_str(), "%lf,%lf", &center.x, &center.y) != 2) {
    throw std::invalid_argument("--center expects 'auto' or 'x,y'");
  }

  std::vector<GroundTruthRecord> records(ids.size());
  std::vector<std::string> failures(ids.size());
  run_indexed(ids.size(), workers, [&](std::size_t i) {
    try {
      if (polygons[i].size() < 3)
        records[i] = build_record(ids[i], BinaryMask(4, 4), cfg, center);
      else
        records[i] = build_record(ids[i], polygons[i], cfg, center);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  Dataset ds;
  ds.header.config = cfg;
  ds.header.center = center;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!failures[i].empty()) {
      ++failed;
      std::cerr << "skipping " << failures[i] << "\n";
      continue;
    }
    ds.records.push_back(std::move(records[i]));
  }
  ds.header.count = ds.records.size();
  write_dataset(ds, out_path);
  if (failed)
    std::cerr << failed << " of " << ids.size() << " records failed\n";
  return (strict && failed) ? 1 : 0;
}

int cmd_decompose(const std::string& in_path, const std::string& out_path,
                  const std::string& wavelet, int top, int bottom) {
  const auto comps = components_from_json(nlohmann::json::parse(read_text_file(in_path)));
  const FilterBank bank = bank_from_name(wavelet);
  PyramidFile p;
  p.wavelet = wavelet;
  p.top = top;
  p.bottom = bottom;
  for (int s = 0; s < 2; ++s)
    p.components[static_cast<std::size_t>(s)] =
        decompose(PeriodicSignal(comps.s[static_cast<std::size_t>(s)]), bank, top, bottom);
  write_text_file(out_path, pyramid_to_json(p) + "\n");
  return 0;
}

int cmd_reconstruct(const std::string& in_path, const std::string& out_path) {
  const auto p = pyramid_from_json(nlohmann::json::parse(read_text_file(in_path)));
  const FilterBank bank = bank_from_name(p.wavelet);
  CoeffComponents comps;
  for (int s = 0; s < 2; ++s)
    comps.s[static_cast<std::size_t>(s)] =
        reconstruct(p.components[static_cast<std::size_t>(s)], bank).values();
  write_text_file(out_path, components_to_json(comps) + "\n");
  return 0;
}

int cmd_roundtrip(const std::string& dataset_path, double tol) {
  const Dataset ds = read_dataset(dataset_path);
  const FilterBank bank = bank_from_name(ds.header.config.wavelet);
  std::string csv = "id,residual,parseval_defect\n";
  bool failed = false;
  for (const auto& rec : ds.records) {
    if (!rec.presence) continue;
    double residual = 0.0, defect = 0.0;
    for (int s = 0; s < 2; ++s) {
      const auto& finest = rec.approx[static_cast<std::size_t>(s)].back();
      if (rec.j0 == rec.j2) continue;
      const auto dec = decompose(finest, bank, rec.j2, rec.j0);
      const auto back = reconstruct(dec, bank);
      double energy_top = 0.0, energy_pyr = 0.0;
      for (std::size_t i = 0; i < finest.size(); ++i) {
        residual = std::max(residual, std::fabs(back.values()[i] - finest.values()[i]));
        energy_top += finest.values()[i] * finest.values()[i];
      }
      for (double v : dec.coarsest.values()) energy_pyr += v * v;
      for (const auto& d : dec.details)
        for (double v : d.values()) energy_pyr += v * v;
      defect = std::max(defect, std::fabs(energy_top - energy_pyr) / std::max(energy_top, 1.0));
    }
    csv += rec.id + "," + format_g17(residual) + "," + format_g17(defect) + "\n";
    if (residual > tol || defect > tol) failed = true;
  }
  std::cout << csv;
  return failed ? 1 : 0;
}

struct PairedRecords {
  std::vector<const GroundTruthRecord*> pred;
  std::vector<const GroundTruthRecord*> ref;
};

PairedRecords match_records(const Dataset& pred, const Dataset& ref) {
  std::map<std::string, const GroundTruthRecord*> by_id;
  for (const auto& r : pred.records) by_id[r.id] = &r;
  PairedRecords out;
  std::string missing;
  for (const auto& r : ref.records) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      missing += missing.empty() ? r.id : ", " + r.id;
      continue;
    }
    out.ref.push_back(&r);
    out.pred.push_back(it->second);
    by_id.erase(it);
  }
  for (const auto& [id, rec] : by_id) {
    (void)rec;
    missing += missing.empty() ? id : ", " + id;
  }
  if (!missing.empty())
    throw std::invalid_argument("record ids do not match: " + missing);
  return out;
}

int cmd_eval(const std::string& pred_path, const std::string& ref_path,
             const std::string& out_path, int supersample, std::size_t samples) {
  const Dataset pred = read_dataset(pred_path);
  const Dataset ref = read_dataset(ref_path);
  const auto pairs = match_records(pred, ref);
  std::string csv = "id,dice,hausdorff,l2_s1,l2_s2\n";
  std::vector<std::array<double, 4>> rows;
  for (std::size_t i = 0; i < pairs.ref.size(); ++i) {
    const auto& p = *pairs.pred[i];
    const auto& r = *pairs.ref[i];
    double d = 0.0, h = std::numeric_limits<double>::quiet_NaN();
    double l1 = std::numeric_limits<double>::quiet_NaN(), l2 = l1;
    if (!p.presence && !r.presence) {
      d = 1.0;
      h = l1 = l2 = 0.0;
      rows.push_back({d, h, l1, l2});
    } else if (p.presence && r.presence) {
      const auto cp = record_curve(p);
      const auto cr = record_curve(r);
      d = dice(cp, cr, supersample);
      h = hausdorff(cp, cr, samples).distance;
      l1 = l2_error(p.approx[0].back(), r.approx[0].back());
      l2 = l2_error(p.approx[1].back(), r.approx[1].back());
      rows.push_back({d, h, l1, l2});
    }
    // a presence mismatch scores dice 0 and leaves the rest undefined;
    // such rows are excluded from the aggregates
    csv += r.id + "," + format_g17(d) + "," + format_g17(h) + "," + format_g17(l1) + "," +
           format_g17(l2) + "\n";
  }
  std::array<double, 4> mean{}, sd{};
  const double n = static_cast<double>(rows.size());
  for (const auto& row : rows)
    for (int c = 0; c < 4; ++c) mean[static_cast<std::size_t>(c)] += row[static_cast<std::size_t>(c)];
  for (auto& m : mean) m = n > 0 ? m / n : 0.0;
  for (const auto& row : rows)
    for (int c = 0; c < 4; ++c) {
      const double dv = row[static_cast<std::size_t>(c)] - mean[static_cast<std::size_t>(c)];
      sd[static_cast<std::size_t>(c)] += dv * dv;
    }
  for (auto& s : sd) s = n > 1 ? std::sqrt(s / (n - 1.0)) : 0.0;
  csv += "mean," + format_g17(mean[0]) + "," + format_g17(mean[1]) + "," + format_g17(mean[2]) +
         "," + format_g17(mean[3]) + "\n";
  csv += "std," + format_g17(sd[0]) + "," + format_g17(sd[1]) + "," + format_g17(sd[2]) + "," +
         format_g17(sd[3]) + "\n";
  write_text_file(out_path, csv);
  return 0;
}

int cmd_plot_data(const std::string& pred_path, const std::string& ref_path,
                  const std::string& out_dir, std::size_t samples) {
  const Dataset pred = read_dataset(pred_path);
  const Dataset ref = read_dataset(ref_path);
  const auto pairs = match_records(pred, ref);
  fs::create_directories(out_dir);
  const auto dump = [&](const GroundTruthRecord& rec, const std::string& suffix) {
    if (!rec.presence) return;
    const auto pts = resample_by_arc_length(record_curve(rec), samples);
    std::string csv = "x,y\n";
    for (const auto& q : pts) csv += format_g17(q.x) + "," + format_g17(q.y) + "\n";
    write_text_file((fs::path(out_dir) / (rec.id + suffix)).string(), csv);
  };
  for (std::size_t i = 0; i < pairs.ref.size(); ++i) {
    dump(*pairs.ref[i], "_ref.csv");
    dump(*pairs.pred[i], "_pred.csv");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavelet representation pipeline for closed planar curves"};
  app.require_subcommand(1);

  std::string wavelet = "db8", out_path, in_path, manifest_path, dataset_path;
  std::string pred_path, ref_path, center_flag = "auto";
  std::uint64_t seed = 0;
  std::size_t count = 0, samples = 1024, plot_samples = 512;
  unsigned workers = default_workers();
  int top = 8, bottom = 4, supersample = 4;
  double tol = 1e-8;
  bool strict = false;
  PipelineConfig cfg;
  ToyOptions toy_opts;
  std::vector<int> levels = {cfg.j0, cfg.j1, cfg.j2};

  auto* c_filters = app.add_subcommand("filters", "print a filter bank as CSV");
  c_filters->add_option("--wavelet", wavelet, "bank name (db1/db2/db4/db8/db16)");
  c_filters->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* c_gen = app.add_subcommand("gen-toy", "generate a seeded toy dataset");
  c_gen->add_option("--count", count, "number of samples")->required();
  c_gen->add_option("--seed", seed, "dataset seed")->required();
  c_gen->add_option("--out", out_path, "output directory")->required();
  c_gen->add_option("--points", toy_opts.points, "polygon vertices per curve");
  c_gen->add_option("--canvas", toy_opts.canvas, "canvas side in pixels");
  c_gen->add_option("--workers", workers, "worker threads");
  c_gen->add_flag("--literal-scaling", toy_opts.literal_scaling,
                  "scale the shifted curve instead of the curve alone");

  auto* c_gt = app.add_subcommand("build-gt", "build ground-truth records from a toy manifest");
  c_gt->add_option("--manifest", manifest_path, "manifest.json from gen-toy")->required();
  c_gt->add_option("--out", out_path, "dataset file (JSON lines)")->required();
  c_gt->add_option("--wavelet", cfg.wavelet, "bank name");
  c_gt->add_option("--levels", levels, "j0,j1,j2")->delimiter(',')->expected(3);
  c_gt->add_option("--fourier-n", cfg.fourier_N, "Fourier coefficient count");
  c_gt->add_option("--eps", cfg.eps, "detail threshold");
  c_gt->add_option("--delta", cfg.delta, "Fourier truncation threshold");
  c_gt->add_option("--center", center_flag, "'auto' or 'x,y'");
  c_gt->add_option("--workers", workers, "worker threads");
  c_gt->add_flag("--strict", strict, "nonzero exit if any record fails");

  auto* c_dec = app.add_subcommand("decompose", "run the analysis pyramid on coefficients");
  c_dec->add_option("--in", in_path, "coefficient JSON {\"s1\":[...],\"s2\":[...]}")->required();
  c_dec->add_option("--out", out_path, "pyramid JSON")->required();
  c_dec->add_option("--wavelet", wavelet, "bank name");
  c_dec->add_option("--top", top, "input level (length 2^top)");
  c_dec->add_option("--bottom", bottom, "coarsest level");

  auto* c_rec = app.add_subcommand("reconstruct", "invert a pyramid JSON file");
  c_rec->add_option("--in", in_path, "pyramid JSON")->required();
  c_rec->add_option("--out", out_path, "coefficient JSON")->required();

  auto* c_rt = app.add_subcommand("roundtrip", "validate decompose/reconstruct on a dataset");
  c_rt->add_option("--dataset", dataset_path, "dataset file")->required();
  c_rt->add_option("--tol", tol, "failure threshold");

  auto* c_eval = app.add_subcommand("eval", "metric report for matched datasets");
  c_eval->add_option("--pred", pred_path, "candidate dataset")->required();
  c_eval->add_option("--ref", ref_path, "reference dataset")->required();
  c_eval->add_option("--out", out_path, "report CSV")->required();
  c_eval->add_option("--supersample", supersample, "dice grid refinement");
  c_eval->add_option("--samples", samples, "hausdorff resampling count");

  auto* c_plot = app.add_subcommand("plot-data", "emit sampled curves for plotting");
  c_plot->add_option("--pred", pred_path, "candidate dataset")->required();
  c_plot->add_option("--ref", ref_path, "reference dataset")->required();
  c_plot->add_option("--out", out_path, "output directory")->required();
  c_plot->add_option("--samples", plot_samples, "points per curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_filters->parsed()) return cmd_filters(wavelet, out_path);
    if (c_gen->parsed()) return cmd_gen_toy(count, seed, out_path, toy_opts, workers);
    if (c_gt->parsed()) {
      cfg.j0 = levels[0];
      cfg.j1 = levels[1];
      cfg.j2 = levels[2];
      return cmd_build_gt(manifest_path, out_path, cfg, center_flag, strict, workers);
    }
    if (c_dec->parsed()) return cmd_decompose(in_path, out_path, wavelet, top, bottom);
    if (c_rec->parsed()) return cmd_reconstruct(in_path, out_path);
    if (c_rt->parsed()) return cmd_roundtrip(dataset_path, tol);
    if (c_eval->parsed()) return cmd_eval(pred_path, ref_path, out_path, supersample, samples);
    if (c_plot->parsed()) return cmd_plot_data(pred_path, ref_path, out_path, plot_samples);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
