// Command-line front end: compress / decompress / project / compare / gen /
// gen-blobs / classify / info. Usage problems exit 2, everything else that
// fails exits 1 with a message on stderr.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbd/classify.hpp"
#include "rbd/datasets.hpp"
#include "rbd/decompose.hpp"
#include "rbd/errors.hpp"
#include "rbd/io.hpp"
#include "rbd/svd.hpp"
#include "rbd/types.hpp"
#include "rbd/weight.hpp"

namespace {

using rbd::FileFormat;
using rbd::Index;
using rbd::Matrix;
using rbd::Vector;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FileFormat parse_format(const std::string& name) {
  static const std::map<std::string, FileFormat> table = {
      {"mm", FileFormat::matrix_market}, {"mtx", FileFormat::matrix_market},
      {"matrixmarket", FileFormat::matrix_market}, {"csv", FileFormat::csv},
      {"pgm", FileFormat::pgm},          {"ppm", FileFormat::ppm}};
  const auto it = table.find(name);
  if (it == table.end())
    throw CLI::ValidationError("--format", "unknown format '" + name + "'");
  return it->second;
}

FileFormat resolve_format(const std::string& forced, const std::filesystem::path& path) {
  return forced.empty() ? rbd::detect_format(path) : parse_format(forced);
}

rbd::WeightSpec parse_weight(const std::string& spec) {
  if (spec.empty() || spec == "identity") return rbd::WeightSpec::identity();
  if (spec.rfind("diag:", 0) == 0) return rbd::read_diagonal_weight(spec.substr(5));
  if (spec.rfind("spd:", 0) == 0) return rbd::read_sparse_weight(spec.substr(4));
  throw CLI::ValidationError(
      "--weight", "expected identity, diag:<file> or spd:<file>, got '" + spec + "'");
}

rbd::StartSpec parse_start(const std::string& spec) {
  if (spec.empty()) return rbd::StartSpec::column(0);
  try {
    if (spec.rfind("col:", 0) == 0)
      return rbd::StartSpec::column(std::stol(spec.substr(4)));
    if (spec.rfind("seed:", 0) == 0)
      return rbd::StartSpec::seeded(std::stoull(spec.substr(5)));
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--start",
                             "expected col:<index> or seed:<value>, got '" + spec + "'");
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- compress ----------------------------------------------------------------

struct CompressArgs {
  std::string input;
  std::string output;
  long dmax = 0;  // 0 = number of columns
  double eps = 0.0;
  std::string weight;
  std::string start;
  std::string format;
  bool rows = false;
  bool reorth = false;
};

rbd::RbdModel compress_one(Matrix x, const CompressArgs& a) {
  if (a.rows) x.transposeInPlace();
  rbd::RbdConfig cfg;
  cfg.d_max = a.dmax > 0 ? static_cast<Index>(a.dmax) : x.cols();
  cfg.d_max = std::min(cfg.d_max, x.cols());
  cfg.eps_R = a.eps;
  cfg.weight = parse_weight(a.weight);
  cfg.start = parse_start(a.start);
  cfg.reorthogonalize = a.reorth;
  return rbd::decompose(x, cfg);
}

int run_compress(const CompressArgs& a) {
  const FileFormat fmt = resolve_format(a.format, a.input);
  if (fmt == FileFormat::ppm) {
    const rbd::ImageChannels img = rbd::read_ppm(a.input);
    const char* suffix[3] = {".r", ".g", ".b"};
    for (int c = 0; c < 3; ++c) {
      const rbd::RbdModel model = compress_one(img.rgb[static_cast<size_t>(c)], a);
      const std::string path = a.output + suffix[c];
      rbd::write_model(model, a.eps, path);
      std::cout << "d: " << model.d
                << "  residual: " << fmt_g(model.residual_history.back())
                << "  -> " << path << "\n";
    }
    return 0;
  }
  const rbd::RbdModel model = compress_one(rbd::read_matrix(a.input, fmt), a);
  rbd::write_model(model, a.eps, a.output);
  std::cout << "d: " << model.d
            << "  residual: " << fmt_g(model.residual_history.back())
            << "  -> " << a.output << "\n";
  return 0;
}

// ---- decompress ----------------------------------------------------------------

int run_decompress(const std::string& model_path, const std::string& output,
                   const std::string& format) {
  const FileFormat fmt = resolve_format(format, output);
  if (fmt == FileFormat::ppm) {
    rbd::ImageChannels img;
    const char* suffix[3] = {".r", ".g", ".b"};
    for (int c = 0; c < 3; ++c) {
      const rbd::LoadedModel lm = rbd::read_model(model_path + suffix[c]);
      img.rgb[static_cast<size_t>(c)] = rbd::compress_matrix(lm.model);
    }
    rbd::write_ppm(img, output);
  } else {
    const rbd::LoadedModel lm = rbd::read_model(model_path);
    rbd::write_matrix(rbd::compress_matrix(lm.model), output, fmt);
  }
  std::cout << "wrote " << output << "\n";
  return 0;
}

// ---- project ----------------------------------------------------------------

int run_project(const std::string& model_path, const std::string& vector_path) {
  const rbd::LoadedModel lm = rbd::read_model(model_path);
  Matrix v = rbd::read_matrix(vector_path);
  if (v.cols() != 1 && v.rows() == 1) v.transposeInPlace();
  if (v.cols() != 1)
    throw rbd::InvalidArgument("project expects a single row or column vector");
  const Vector c = rbd::project(lm.model, v.col(0));
  for (Index i = 0; i < c.size(); ++i) std::cout << fmt_g(c[i]) << "\n";
  return 0;
}

// ---- compare ----------------------------------------------------------------

int run_compare(const std::string& input, long dmax, bool rows,
                const std::string& format) {
  Matrix x = rbd::read_matrix(input, resolve_format(format, input));
  if (rows) x.transposeInPlace();
  const Index k = std::min<Index>(dmax, std::min(x.rows(), x.cols()));
  if (k < 1) throw rbd::InvalidArgument("compare needs --dmax >= 1");

  rbd::RbdConfig cfg;
  cfg.d_max = k;
  auto t0 = std::chrono::steady_clock::now();
  const rbd::RbdModel model = rbd::decompose(x, cfg);
  const double rbd_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  rbd::truncated_svd(x, k);
  const double svd_seconds = seconds_since(t0);

  const std::vector<double> e_r = rbd::rbd_error_history(x, model);
  const std::vector<double> e_s = rbd::svd_error_history(x, model.d);

  std::printf("#  d          e_R(d)          e_S(d)\n");
  for (Index d = 0; d < model.d; ++d)
    std::printf("%4ld  %14.6e  %14.6e\n", static_cast<long>(d + 1),
                e_r[static_cast<size_t>(d)], e_s[static_cast<size_t>(d)]);
  std::printf("rbd seconds: %.6f\n", rbd_seconds);
  std::printf("svd seconds: %.6f\n", svd_seconds);
  std::printf("relative time: %.6f\n", rbd_seconds / svd_seconds);
  return 0;
}

// ---- gen / gen-blobs ------------------------------------------------------------

int run_gen(const std::string& func, long n, const std::string& output,
            const std::string& format) {
  static const std::map<std::string, rbd::FunctionId> table = {
      {"rank1", rbd::FunctionId::rank1},
      {"rank2", rbd::FunctionId::rank2},
      {"rank3", rbd::FunctionId::rank3},
      {"composite", rbd::FunctionId::composite}};
  const auto it = table.find(func);
  if (it == table.end())
    throw CLI::ValidationError("--func", "unknown function '" + func + "'");
  rbd::GridSpec grid;
  grid.n_points = static_cast<Index>(n);
  const Matrix x = rbd::gen_grid_matrix(it->second, grid);
  rbd::write_matrix(x, output, resolve_format(format, output));
  std::cout << "wrote " << x.rows() << "x" << x.cols() << " matrix to " << output
            << "\n";
  return 0;
}

int run_gen_blobs(int classes, int per_class, int dim, double spread,
                  std::uint64_t seed, const std::string& output,
                  std::string labels_out, const std::string& format) {
  const rbd::LabeledBlobs blobs =
      rbd::gen_labeled_blobs(classes, per_class, dim, spread, seed);
  rbd::write_matrix(blobs.samples, output, resolve_format(format, output));
  if (labels_out.empty()) labels_out = output + ".labels";
  std::vector<std::string> labels;
  labels.reserve(blobs.labels.size());
  for (int l : blobs.labels) labels.push_back(std::to_string(l));
  rbd::write_labels(labels, labels_out);
  std::cout << "wrote " << blobs.samples.rows() << "x" << blobs.samples.cols()
            << " matrix to " << output << ", labels to " << labels_out << "\n";
  return 0;
}

// ---- classify ----------------------------------------------------------------

struct ClassifyArgs {
  std::string train, labels, test, test_labels;
  long dmax = 1;
  int reps = 0;
  std::uint64_t seed = 0;
};

int run_classify(const ClassifyArgs& a) {
  const Matrix train = rbd::read_matrix(a.train);
  const Matrix test = rbd::read_matrix(a.test);
  const std::vector<std::string> labels = rbd::read_labels(a.labels);
  const std::vector<std::string> test_labels = rbd::read_labels(a.test_labels);

  rbd::RbdConfig cfg;
  cfg.d_max = static_cast<Index>(a.dmax);

  if (a.reps <= 0) {
    const rbd::Classifier clf = rbd::fit(train, labels, cfg);
    std::printf("mean error rate: %.6f\n", rbd::evaluate(clf, test, test_labels));
    return 0;
  }

  // Repeated-split protocol: pool everything and reshuffle per class, with
  // the per-class training quota taken from the supplied split sizes.
  if (train.rows() != test.rows())
    throw rbd::DimensionMismatch("train and test row counts differ");
  Matrix pool(train.rows(), train.cols() + test.cols());
  pool << train, test;
  std::vector<std::string> all_labels = labels;
  all_labels.insert(all_labels.end(), test_labels.begin(), test_labels.end());

  std::map<std::string, int> class_count;
  for (const std::string& l : labels) ++class_count[l];
  if (class_count.empty()) throw rbd::InvalidArgument("no training labels");
  const int per_class = static_cast<int>(
      (labels.size() + class_count.size() / 2) / class_count.size());

  const rbd::SplitEvaluation ev = rbd::evaluate_splits(pool, all_labels, per_class,
                                                       cfg, a.reps, a.seed);
  for (size_t r = 0; r < ev.per_rep.size(); ++r)
    std::printf("rep %zu: %.6f\n", r, ev.per_rep[r]);
  std::printf("mean error rate: %.6f\n", ev.mean_error);
  return 0;
}

// ---- info ----------------------------------------------------------------

int run_info(const std::string& model_path) {
  const rbd::LoadedModel lm = rbd::read_model(model_path);
  const char* kind = "identity";
  if (lm.model.weight.kind() == rbd::WeightKind::diagonal) kind = "diagonal";
  if (lm.model.weight.kind() == rbd::WeightKind::sparse_spd) kind = "sparse-spd";

  std::cout << "m: " << lm.model.Y.rows() << "\n"
            << "n: " << lm.model.T.cols() << "\n"
            << "d: " << lm.model.d << "\n"
            << "eps_R: " << fmt_g(lm.eps_r) << "\n"
            << "weight: " << kind << "\n"
            << "residual_history:";
  for (double e : lm.model.residual_history) std::cout << " " << fmt_g(e);
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced basis matrix compression"};
  app.require_subcommand(1);

  CompressArgs ca;
  auto* compress = app.add_subcommand("compress", "Greedily compress a matrix");
  compress->add_option("input", ca.input, "matrix file")->required();
  compress->add_option("-o,--output", ca.output, "model file")->required();
  compress->add_option("--dmax", ca.dmax, "basis size cap (default: all columns)");
  compress->add_option("--eps", ca.eps, "certified residual target");
  compress->add_option("--weight", ca.weight, "identity | diag:<file> | spd:<file>");
  compress->add_option("--start", ca.start, "col:<index> | seed:<value>");
  compress->add_option("--format", ca.format, "input format override");
  compress->add_flag("--rows", ca.rows, "compress the row space (transpose input)");
  compress->add_flag("--reorth", ca.reorth, "second orthogonalization sweep");

  std::string d_model, d_out, d_format;
  auto* decompress = app.add_subcommand("decompress", "Reconstruct a matrix");
  decompress->add_option("model", d_model, "model file")->required();
  decompress->add_option("-o,--output", d_out, "output matrix file")->required();
  decompress->add_option("--format", d_format, "output format override");

  std::string p_model, p_vector;
  auto* project = app.add_subcommand("project", "Reduced coordinates of a vector");
  project->add_option("model", p_model, "model file")->required();
  project->add_option("vector", p_vector, "vector file (one row or column)")
      ->required();

  std::string c_in, c_format;
  long c_dmax = 0;
  bool c_rows = false;
  auto* compare = app.add_subcommand("compare", "Error-vs-d table against the SVD");
  compare->add_option("input", c_in, "matrix file")->required();
  compare->add_option("--dmax", c_dmax, "table length")->required();
  compare->add_option("--format", c_format, "input format override");
  compare->add_flag("--rows", c_rows, "compare on the transpose");

  std::string g_func, g_out, g_format;
  long g_n = 0;
  auto* gen = app.add_subcommand("gen", "Sample a built-in surface on a grid");
  gen->add_option("--func", g_func, "rank1 | rank2 | rank3 | composite")->required();
  gen->add_option("--n", g_n, "grid points per axis")->required();
  gen->add_option("-o,--output", g_out, "output matrix file")->required();
  gen->add_option("--format", g_format, "output format override");

  int b_classes = 0, b_per_class = 0, b_dim = 0;
  double b_spread = 0.1;
  std::uint64_t b_seed = 0;
  std::string b_out, b_labels, b_format;
  auto* blobs = app.add_subcommand("gen-blobs", "Labeled Gaussian clusters");
  blobs->add_option("--classes", b_classes, "number of classes")->required();
  blobs->add_option("--per-class", b_per_class, "samples per class")->required();
  blobs->add_option("--dim", b_dim, "ambient dimension")->required();
  blobs->add_option("--spread", b_spread, "cluster standard deviation")->required();
  blobs->add_option("--seed", b_seed, "generator seed")->required();
  blobs->add_option("-o,--output", b_out, "output matrix file")->required();
  blobs->add_option("--labels-out", b_labels, "label file (default: <output>.labels)");
  blobs->add_option("--format", b_format, "output format override");

  ClassifyArgs fa;
  auto* classify = app.add_subcommand("classify", "Nearest-neighbor recognition");
  classify->add_option("--train", fa.train, "training matrix")->required();
  classify->add_option("--labels", fa.labels, "training labels")->required();
  classify->add_option("--test", fa.test, "test matrix")->required();
  classify->add_option("--test-labels", fa.test_labels, "test labels")->required();
  classify->add_option("--dmax", fa.dmax, "basis size")->required();
  classify->add_option("--reps", fa.reps, "random re-splits of the pooled data");
  classify->add_option("--seed", fa.seed, "base seed for --reps");

  std::string i_model;
  auto* info = app.add_subcommand("info", "Describe a model file");
  info->add_option("model", i_model, "model file")->required();

  try {
    app.parse(argc, argv);
    if (*compress) return run_compress(ca);
    if (*decompress) return run_decompress(d_model, d_out, d_format);
    if (*project) return run_project(p_model, p_vector);
    if (*compare) return run_compare(c_in, c_dmax, c_rows, c_format);
    if (*gen) return run_gen(g_func, g_n, g_out, g_format);
    if (*blobs)
      return run_gen_blobs(b_classes, b_per_class, b_dim, b_spread, b_seed, b_out,
                           b_labels, b_format);
    if (*classify) return run_classify(fa);
    if (*info) return run_info(i_model);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rbd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
