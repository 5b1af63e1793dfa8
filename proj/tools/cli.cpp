// Copyright 2026 The HD-SDR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>

#include "CLI11.hpp"
#include "hdsdr/hdsdr.hpp"
#include "json.hpp"

namespace hdsdr::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kPresets = {"type1", "type2", "type3", "type4",
                                           "type5"};
const std::vector<std::string> kKinds = {"lognormal2d", "hypersphere_outliers",
                                         "uniform_cube"};
const std::vector<std::string> kMethods = {"rp", "lmds", "mds", "pca"};

// Dense classical MDS stores N x N doubles twice.
constexpr Index kMaxDenseMds = 5000;

bool has_extension(const fs::path& p, const std::string& ext) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return e == ext;
}

std::string shape(const DataTable& t) {
  return std::to_string(t.rows()) + " x " + std::to_string(t.cols());
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string preset;
  std::string kind;
  std::uint64_t seed = 0;
  Index per_cluster = 1000;
  Index dims = 0;
  Index rows = 0;
  double separation = kPresetSeparation;
  double radius = 1.0;
  std::optional<double> snr_db;
  std::string output;
};

void cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.preset.empty() == a.kind.empty()) {
    throw Error("exactly one of --preset or --kind is required");
  }
  DataTable t;
  if (!a.preset.empty()) {
    t = gen_preset(parse_preset(a.preset), a.seed, a.per_cluster,
                   a.dims > 0 ? a.dims : 20, a.separation);
  } else {
    SpecialParams p;
    p.rows = a.rows;
    p.dims = a.dims;
    p.radius = a.radius;
    t = gen_special(parse_special(a.kind), p, a.seed);
  }
  if (a.snr_db) t = add_noise_snr(t, *a.snr_db, a.seed ^ 0x5bd1e995ULL);
  write_table(t, a.output);
  out << "generate: wrote " << shape(t) << " to " << a.output << "\n";
}

// ----------------------------------------------------------------- sharpen

struct SharpenArgs {
  std::string input;
  std::string output;
  LgcParams params;
  bool no_normalize = false;
  bool denormalize = false;
};

void cmd_sharpen(const SharpenArgs& a, std::ostream& out) {
  const DataTable t = read_table(a.input);
  SharpenedResult r = lgc_sharpen(t, a.params, !a.no_normalize);
  if (a.denormalize && !r.normalization.empty()) {
    r.sharpened.points = denormalize(r.sharpened.points, r.normalization);
  }
  write_table(r.sharpened, a.output);
  out << "sharpen: " << shape(t) << ", T=" << a.params.iterations
      << ", mean shift in last iteration "
      << (r.mean_shift.empty() ? 0.0 : r.mean_shift.back()) << ", wrote "
      << a.output << "\n";
}

// ----------------------------------------------------------------- project

struct ProjectArgs {
  std::string input;
  std::string output;
  std::string method = "lmds";
  Index s = 2;
  std::uint64_t seed = 0;
  double ratio = 0.05;
  std::string landmarks = "random";
  std::string import_path;
  std::string import_name = "external";
  std::string attributes;
  std::string coords_csv;
};

Embedding project_table(const DataTable& t, const ProjectArgs& a) {
  if (!a.import_path.empty()) {
    return import_embedding(a.import_path, t, a.import_name);
  }
  if (a.method == "rp") return random_projection(t, a.s, a.seed);
  if (a.method == "lmds") {
    LandmarkOptions o;
    o.s = a.s;
    o.ratio = a.ratio;
    o.seed = a.seed;
    o.selection = a.landmarks == "maxmin" ? LandmarkSelection::kMaxMin
                                          : LandmarkSelection::kRandom;
    return landmark_mds(t, o);
  }
  if (a.method == "pca") return pca_transform(pca_fit(t), t, a.s);
  if (t.rows() > kMaxDenseMds) {
    throw Error("classical MDS on N=" + std::to_string(t.rows()) +
                " exceeds the dense limit of " + std::to_string(kMaxDenseMds) +
                " rows; use -m lmds");
  }
  Embedding e;
  e.coords = classical_mds(pairwise_distances(t.points), a.s);
  e.method = "mds";
  e.params["s"] = std::to_string(a.s);
  e.source_checksum = checksum(t);
  return e;
}

void cmd_project(const ProjectArgs& a, std::ostream& out) {
  const DataTable t = read_table(a.input);
  const Embedding e = project_table(t, a);
  DataTable attrs = t;
  if (!a.attributes.empty()) {
    attrs = read_table(a.attributes);
    if (!attrs.labels) attrs.labels = t.labels;
  }
  write_bundle(make_bundle(attrs, e), a.output);
  if (!a.coords_csv.empty()) {
    DataTable c;
    c.points = e.coords;
    c.names = default_names(e.dims());
    c.labels = attrs.labels;
    write_table(c, a.coords_csv);
  }
  out << "project: " << e.method << " " << shape(t) << " -> " << e.rows()
      << " x " << e.dims() << ", wrote " << a.output << "\n";
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string data;
  std::string embedding;
  std::string labels;
  bool labeled_only = false;
  std::vector<Index> ks;
  std::string output;
  std::string format;
};

struct LabeledPoints {
  Points points;
  Labels labels;
};

// Points (and their labels) on which neighborhood hit is measured.
std::optional<LabeledPoints> qh_points(const Points& space,
                                       const DataTable& data,
                                       const std::optional<Bundle>& bundle,
                                       const EvaluateArgs& a,
                                       std::ostream& err) {
  const Index m = space.rows();
  if (!a.labels.empty()) {
    const LabelAssignment assignment = read_labels(a.labels);
    if (!a.labeled_only) {
      return LabeledPoints{space, labels_from_assignment(assignment, m)};
    }
    LabeledPoints lp;
    lp.points.resize(static_cast<Index>(assignment.size()), space.cols());
    Index r = 0;
    for (const auto& [row, label] : assignment) {
      if (static_cast<Index>(row) >= m) {
        throw Error("label row index " + std::to_string(row) +
                    " out of range for " + std::to_string(m) + " rows");
      }
      lp.points.row(r++) = space.row(static_cast<Index>(row));
      lp.labels.push_back(label);
    }
    return lp;
  }
  if (data.labels) return LabeledPoints{space, *data.labels};
  if (bundle && bundle->labels) {
    Labels l;
    for (const auto& v : *bundle->labels) {
      if (!v) {
        err << "warning: bundle labels are incomplete; Qh left blank\n";
        return std::nullopt;
      }
      l.push_back(*v);
    }
    return LabeledPoints{space, std::move(l)};
  }
  err << "warning: no labels available; Qh left blank\n";
  return std::nullopt;
}

std::vector<Index> usable_ks(std::vector<Index> ks, Index m,
                             std::ostream& err) {
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<Index> keep;
  for (Index k : ks) {
    if (k >= 1 && k <= m - 1) {
      keep.push_back(k);
    } else {
      err << "warning: k=" << k << " outside [1, " << m - 1 << "]; dropped\n";
    }
  }
  if (keep.empty()) throw Error("no usable k in the requested grid");
  return keep;
}

void cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const DataTable data = read_table(a.data);
  const Index m = data.rows();
  std::optional<Bundle> bundle;
  std::optional<Points> emb;
  if (!a.embedding.empty()) {
    if (has_extension(a.embedding, ".json")) {
      bundle = read_bundle(a.embedding);
      if (bundle->rows() != m) {
        throw Error("row-count mismatch: bundle has " +
                    std::to_string(bundle->rows()) + " rows, data has " +
                    std::to_string(m));
      }
      emb = bundle->embedding.coords;
    } else {
      emb = import_embedding(a.embedding, data).coords;
    }
  }

  const bool explicit_ks = !a.ks.empty();
  std::vector<Index> ks = explicit_ks ? a.ks : kDefaultKGrid;
  if (!explicit_ks) {
    ks.erase(std::remove_if(ks.begin(), ks.end(),
                            [m](Index k) { return k > m - 1; }),
             ks.end());
    if (ks.empty()) ks.push_back(std::max<Index>(1, m / 4));
  }
  ks = usable_ks(ks, m, err);

  MetricReport report;
  report.ks = ks;
  report.rows = m;
  report.metadata["data"] = a.data;
  report.qt.assign(ks.size(), std::nullopt);
  report.qc.assign(ks.size(), std::nullopt);
  report.qj.assign(ks.size(), std::nullopt);
  report.qh.assign(ks.size(), std::nullopt);

  if (emb) {
    report.metadata["embedding"] = a.embedding;
    if (bundle) report.metadata["method"] = bundle->embedding.method;
    const ProjectionCurves c = projection_curves(data.points, *emb, ks);
    report.qt = c.trustworthiness;
    report.qc = c.continuity;
    report.qj = c.jaccard;
    for (Index k : ks) {
      if (2 * k >= m) {
        err << "warning: Qt/Qc need k < N/2 = " << m / 2.0
            << "; left blank for k >= " << k << "\n";
        break;
      }
    }
  }

  const Points& space = emb ? *emb : data.points;
  report.metadata["qh_space"] = emb ? "embedding" : "data";
  if (auto lp = qh_points(space, data, bundle, a, err)) {
    const Index lm = lp->points.rows();
    std::vector<Index> qk;
    for (Index k : ks) {
      if (k <= lm - 1) qk.push_back(k);
    }
    if (qk.size() < ks.size()) {
      err << "warning: only " << lm << " labeled rows; Qh blank for k > "
          << lm - 1 << "\n";
    }
    if (!qk.empty()) {
      const std::vector<double> qh =
          neighborhood_hit_curve(lp->points, lp->labels, qk);
      for (std::size_t i = 0; i < qk.size(); ++i) report.qh[i] = qh[i];
    }
    report.metadata["labeled_rows"] = std::to_string(lm);
  }

  const std::string format =
      !a.format.empty()
          ? a.format
          : (!a.output.empty() && has_extension(a.output, ".json") ? "json"
                                                                    : "csv");
  const std::string text = format == "json" ? report.to_json() : report.to_csv();
  if (a.output.empty()) {
    out << text;
  } else {
    write_text(a.output, text);
    out << "evaluate: " << ks.size() << " k values, wrote " << a.output << "\n";
  }
}

// ------------------------------------------------------------------ traits

struct TraitsArgs {
  std::string input;
  bool json = false;
};

void cmd_traits(const TraitsArgs& a, std::ostream& out) {
  const TraitReport r = data_traits(read_table(a.input));
  out << (a.json ? r.to_json() : r.to_text());
}

// ------------------------------------------------------------------ ingest

struct IngestArgs {
  std::string dataset;
  std::string input;
  std::string output;
};

void cmd_ingest(const IngestArgs& a, std::ostream& out) {
  const DatasetId id = parse_dataset_id(a.dataset);
  const DatasetDescriptor& d = descriptor(id);
  fs::path src = a.input;
  if (src.empty()) src = locate_dataset(id, fs::current_path());
  if (src.empty()) {
    throw Error("native file '" + d.file_name + "' not found; download it from " +
                d.source_url + " and pass -i or set HDSDR_DATA_DIR");
  }
  const DataTable t = load_dataset(id, src);
  write_table(t, a.output);
  out << "ingest: " << d.name << " " << shape(t) << ", wrote " << a.output
      << "\n";
}

// ---------------------------------------------------------------- pipeline

struct PipelineArgs {
  std::string config;
};

int cmd_pipeline(const PipelineArgs& a, std::ostream& out, std::ostream& err) {
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(read_text(a.config));
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed pipeline config: " + std::string(e.what()));
  }
  if (!cfg.contains("stages") || !cfg["stages"].is_array()) {
    throw Error("pipeline config needs a 'stages' array");
  }
  std::vector<std::string> prefix;
  if (cfg.contains("threads")) {
    prefix = {"--threads", std::to_string(cfg["threads"].get<int>())};
  }
  std::size_t index = 0;
  for (const auto& stage : cfg["stages"]) {
    ++index;
    const std::string name =
        stage.value("name", "#" + std::to_string(index));
    if (!stage.contains("args") || !stage["args"].is_array() ||
        stage["args"].empty()) {
      throw Error("stage '" + name + "' needs a non-empty 'args' array");
    }
    std::vector<std::string> args = prefix;
    for (const auto& v : stage["args"]) args.push_back(v.get<std::string>());
    if (args[prefix.size()] == "pipeline") {
      throw Error("stage '" + name + "': nested pipelines are not supported");
    }
    const int code = run(args, out, err);
    if (code != 0) {
      err << "error: pipeline stage '" << name << "' (" << args[prefix.size()]
          << ") failed with exit code " << code << "\n";
      return code;
    }
  }
  out << "pipeline: " << index << " stages completed\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cluster sharpening, projection and quality metrics", "hdsdr"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a synthetic data set");
  gen->add_option("--preset", ga.preset, "Five-cluster layout")
      ->check(CLI::IsMember(kPresets));
  gen->add_option("--kind", ga.kind, "Special data set")
      ->check(CLI::IsMember(kKinds));
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--per-cluster", ga.per_cluster, "Rows per preset cluster")
      ->check(CLI::PositiveNumber);
  gen->add_option("--dims", ga.dims, "Dimensions (0 = default)");
  gen->add_option("--rows", ga.rows, "Rows of a special kind (0 = default)");
  gen->add_option("--separation", ga.separation, "Preset center distance");
  gen->add_option("--radius", ga.radius, "Hypersphere radius");
  gen->add_option("--snr", ga.snr_db, "Add Gaussian noise at this SNR (dB)");
  gen->add_option("-o,--output", ga.output, "Output CSV")->required();

  SharpenArgs sa;
  auto* sharp = app.add_subcommand("sharpen", "Local Gradient Clustering");
  sharp->add_option("-i,--input", sa.input, "Input CSV")->required();
  sharp->add_option("-o,--output", sa.output, "Output CSV")->required();
  sharp->add_option("--ks", sa.params.ks, "Neighbors per bandwidth");
  sharp->add_option("--T", sa.params.iterations, "Iterations");
  sharp->add_option("--alpha", sa.params.alpha, "Shift length per iteration");
  sharp->add_option("--epsilon", sa.params.epsilon, "Gradient norm floor");
  sharp->add_flag("--no-normalize", sa.no_normalize,
                  "Skip min-max normalization");
  sharp->add_flag("--denormalize", sa.denormalize,
                  "Map the result back to input units");

  ProjectArgs pa;
  auto* proj = app.add_subcommand("project", "Project to a bundle");
  proj->add_option("-i,--input", pa.input, "Input CSV")->required();
  proj->add_option("-o,--output", pa.output, "Output bundle JSON")->required();
  proj->add_option("-m,--method", pa.method, "Projection method")
      ->check(CLI::IsMember(kMethods));
  proj->add_option("-s,--dims", pa.s, "Target dimension")
      ->check(CLI::PositiveNumber);
  proj->add_option("--seed", pa.seed, "Random seed (rp, lmds)");
  proj->add_option("--ratio", pa.ratio, "Landmark ratio (lmds)");
  proj->add_option("--landmarks", pa.landmarks, "Landmark selection (lmds)")
      ->check(CLI::IsMember({"random", "maxmin"}));
  proj->add_option("--import", pa.import_path,
                   "Wrap an external embedding CSV instead of projecting");
  proj->add_option("--name", pa.import_name, "Method name of an import");
  proj->add_option("--attributes", pa.attributes,
                   "CSV stored as bundle attributes (default: input)");
  proj->add_option("--coords", pa.coords_csv, "Also write coordinates CSV");

  EvaluateArgs ea;
  auto* eval = app.add_subcommand("evaluate", "Projection quality metrics");
  eval->add_option("--data", ea.data, "Data CSV")->required();
  eval->add_option("--embedding", ea.embedding,
                   "Bundle JSON or coordinates CSV (omit for Qh on data)");
  eval->add_option("--labels", ea.labels, "Label CSV (row_index,label)");
  eval->add_flag("--labeled-only", ea.labeled_only,
                 "Measure Qh among labeled rows only");
  eval->add_option("--k", ea.ks, "Neighborhood sizes")->delimiter(',');
  eval->add_option("-o,--output", ea.output, "Report file (.csv or .json)");
  eval->add_option("--format", ea.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));

  TraitsArgs ta;
  auto* traits = app.add_subcommand("traits", "Data set traits");
  traits->add_option("-i,--input", ta.input, "Input CSV")->required();
  traits->add_flag("--json", ta.json, "JSON output");

  IngestArgs ia;
  auto* ingest = app.add_subcommand("ingest", "Convert a public data set");
  ingest->add_option("--dataset", ia.dataset, "Data set")
      ->required()
      ->check(CLI::IsMember({"wifi", "banknote"}));
  ingest->add_option("-i,--input", ia.input, "Native file");
  ingest->add_option("-o,--output", ia.output, "Output CSV")->required();

  PipelineArgs pla;
  auto* pipe = app.add_subcommand("pipeline", "Run stages from a JSON config");
  pipe->add_option("config", pla.config, "Config file")->required();

  std::vector<const char*> argv{"hdsdr"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    set_num_threads(threads);
    if (*gen) cmd_generate(ga, out);
    if (*sharp) cmd_sharpen(sa, out);
    if (*proj) cmd_project(pa, out);
    if (*eval) cmd_evaluate(ea, out, err);
    if (*traits) cmd_traits(ta, out);
    if (*ingest) cmd_ingest(ia, out);
    if (*pipe) return cmd_pipeline(pla, out, err);
  } catch (const std::exception& e) {
    err << "error: " << stage << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hdsdr::cli
