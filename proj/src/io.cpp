#include "rbd/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rbd/errors.hpp"

namespace rbd {

namespace fs = std::filesystem;

namespace {

// ---- little-endian scalar encoding -------------------------------------

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  out.append(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(const std::string& in, size_t& pos, const fs::path& path) {
  if (pos + sizeof(T) > in.size())
    throw ParseError(path.string(), 0, "unexpected end of file");
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  pos += sizeof(T);
  return value;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("read failed: " + path.string());
  return std::move(ss).str();
}

// All writes land in a temp file first and are renamed into place.
void write_file_atomic(const fs::path& path, const std::string& data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out.good()) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

// Shortest-exact double formatting is not worth the trouble; 17 significant
// digits round-trip every finite double.
void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

double parse_double(const std::string& token, const fs::path& path, long line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError(path.string(), line, "not a number: '" + token + "'");
  if (!std::isfinite(v))
    throw ParseError(path.string(), line, "non-finite value: '" + token + "'");
  return v;
}

// ---- Matrix Market -------------------------------------------------------

struct MmHeader {
  bool coordinate = false;
  bool symmetric = false;
  bool integer = false;
};

struct LineReader {
  std::istringstream in;
  const fs::path& path;
  long line = 0;

  LineReader(const std::string& text, const fs::path& p) : in(text), path(p) {}

  // next non-comment, non-blank line
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      size_t i = raw.find_first_not_of(" \t");
      if (i == std::string::npos) continue;
      if (raw[i] == '%') continue;
      out = raw;
      return true;
    }
    return false;
  }
};

MmHeader parse_mm_banner(const std::string& text, const fs::path& path) {
  std::istringstream in(text);
  std::string banner;
  if (!std::getline(in, banner))
    throw ParseError(path.string(), 1, "empty Matrix Market file");
  if (!banner.empty() && banner.back() == '\r') banner.pop_back();

  std::istringstream hs(banner);
  std::string tag, object, format, field, symmetry;
  hs >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix")
    throw ParseError(path.string(), 1, "missing %%MatrixMarket matrix banner");

  MmHeader h;
  if (format == "coordinate")
    h.coordinate = true;
  else if (format != "array")
    throw UnsupportedFormat("unsupported Matrix Market format: " + format);

  if (field == "integer")
    h.integer = true;
  else if (field != "real")
    throw UnsupportedFormat("unsupported Matrix Market field: " + field);

  if (symmetry == "symmetric")
    h.symmetric = true;
  else if (symmetry != "general")
    throw UnsupportedFormat("unsupported Matrix Market symmetry: " + symmetry);
  return h;
}

Matrix read_matrix_market(const fs::path& path) {
  const std::string text = read_file(path);
  const MmHeader h = parse_mm_banner(text, path);

  // the %%MatrixMarket banner is skipped as a comment line
  LineReader lines(text, path);
  std::string row;
  if (!lines.next(row)) throw ParseError(path.string(), lines.line, "missing size line");

  std::istringstream size_line(row);
  long m = 0, n = 0, nnz = 0;
  if (h.coordinate) {
    if (!(size_line >> m >> n >> nnz))
      throw ParseError(path.string(), lines.line, "bad coordinate size line");
  } else {
    if (!(size_line >> m >> n))
      throw ParseError(path.string(), lines.line, "bad array size line");
  }
  if (m < 1 || n < 1) throw ParseError(path.string(), lines.line, "bad dimensions");
  if (h.symmetric && m != n)
    throw ParseError(path.string(), lines.line, "symmetric matrix must be square");

  Matrix out = Matrix::Zero(m, n);
  if (h.coordinate) {
    for (long k = 0; k < nnz; ++k) {
      if (!lines.next(row))
        throw ParseError(path.string(), lines.line, "fewer entries than declared");
      std::istringstream entry(row);
      long i = 0, j = 0;
      std::string value;
      if (!(entry >> i >> j >> value))
        throw ParseError(path.string(), lines.line, "bad coordinate entry");
      if (i < 1 || i > m || j < 1 || j > n)
        throw ParseError(path.string(), lines.line, "coordinate out of range");
      const double v = parse_double(value, path, lines.line);
      out(i - 1, j - 1) = v;
      if (h.symmetric) out(j - 1, i - 1) = v;
    }
  } else {
    // array: column-major values; symmetric stores the lower triangle per column
    Index i = 0, j = 0;
    auto store = [&](double v, long at_line) {
      if (j >= n) throw ParseError(path.string(), at_line, "too many values");
      out(i, j) = v;
      if (h.symmetric) out(j, i) = v;
      ++i;
      if (i >= m) {
        ++j;
        i = h.symmetric ? j : 0;
      }
    };
    std::string token;
    while (lines.next(row)) {
      std::istringstream vals(row);
      while (vals >> token) store(parse_double(token, path, lines.line), lines.line);
    }
    if (j < n)
      throw ParseError(path.string(), lines.line, "fewer values than declared");
  }
  return out;
}

// ---- CSV ------------------------------------------------------------------

Matrix read_csv(const fs::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string raw;
  std::vector<std::vector<double>> rows;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    std::vector<double> values;
    size_t start = 0;
    while (true) {
      const size_t comma = raw.find(',', start);
      const std::string field = raw.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      values.push_back(parse_double(field, path, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && values.size() != rows.front().size())
      throw ParseError(path.string(), line_no, "inconsistent column count");
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError(path.string(), line_no, "empty CSV");

  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j)
      out(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return out;
}

// ---- PGM / PPM --------------------------------------------------------------

// PNM header token scanning: whitespace-separated tokens, # comments to EOL.
struct PnmScanner {
  const std::string& data;
  const fs::path& path;
  size_t pos = 0;

  std::string token() {
    while (pos < data.size()) {
      const char c = data[pos];
      if (c == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
    const size_t start = pos;
    while (pos < data.size() &&
           !std::isspace(static_cast<unsigned char>(data[pos])) && data[pos] != '#')
      ++pos;
    if (start == pos) throw ParseError(path.string(), 0, "truncated image header");
    return data.substr(start, pos - start);
  }

  long number() {
    const std::string t = token();
    try {
      size_t used = 0;
      const long v = std::stol(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw ParseError(path.string(), 0, "bad image header token: '" + t + "'");
    }
  }
};

struct PnmHeader {
  long width = 0;
  long height = 0;
  size_t data_offset = 0;
};

PnmHeader read_pnm_header(const std::string& data, const fs::path& path,
                          const char* magic) {
  PnmScanner scan{data, path};
  const std::string found = scan.token();
  if (found != magic)
    throw ParseError(path.string(), 0,
                     std::string("expected ") + magic + " image, found '" + found + "'");
  PnmHeader h;
  h.width = scan.number();
  h.height = scan.number();
  const long maxval = scan.number();
  if (h.width < 1 || h.height < 1)
    throw ParseError(path.string(), 0, "bad image dimensions");
  if (maxval != 255)
    throw UnsupportedFormat("only maxval 255 images are supported: " + path.string());
  // exactly one whitespace byte separates header from raster
  if (scan.pos >= data.size() ||
      !std::isspace(static_cast<unsigned char>(data[scan.pos])))
    throw ParseError(path.string(), 0, "missing raster separator");
  h.data_offset = scan.pos + 1;
  return h;
}

Matrix read_pgm(const fs::path& path) {
  const std::string data = read_file(path);
  const PnmHeader h = read_pnm_header(data, path, "P5");
  const size_t expected = static_cast<size_t>(h.width) * static_cast<size_t>(h.height);
  if (data.size() - h.data_offset < expected)
    throw ParseError(path.string(), 0, "truncated raster data");

  Matrix out(h.height, h.width);
  const unsigned char* px =
      reinterpret_cast<const unsigned char*>(data.data() + h.data_offset);
  for (long r = 0; r < h.height; ++r)
    for (long c = 0; c < h.width; ++c)
      out(r, c) = static_cast<double>(px[static_cast<size_t>(r) * h.width + c]);
  return out;
}

unsigned char clamp_byte(double v) {
  const double r = std::llround(std::min(255.0, std::max(0.0, v)));
  return static_cast<unsigned char>(r);
}

std::string render_pgm(const Matrix& m) {
  std::string out = "P5\n" + std::to_string(m.cols()) + " " +
                    std::to_string(m.rows()) + "\n255\n";
  out.reserve(out.size() + static_cast<size_t>(m.size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      out.push_back(static_cast<char>(clamp_byte(m(r, c))));
  return out;
}

}  // namespace

FileFormat detect_format(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".mtx" || ext == ".mm") return FileFormat::matrix_market;
  if (ext == ".csv") return FileFormat::csv;
  if (ext == ".pgm") return FileFormat::pgm;
  if (ext == ".ppm") return FileFormat::ppm;
  throw UnsupportedFormat("cannot infer format from extension: " + path.string());
}

Matrix read_matrix(const fs::path& path, FileFormat format) {
  switch (format) {
    case FileFormat::matrix_market:
      return read_matrix_market(path);
    case FileFormat::csv:
      return read_csv(path);
    case FileFormat::pgm:
      return read_pgm(path);
    case FileFormat::ppm:
      throw UnsupportedFormat("PPM has three channels, use read_ppm");
  }
  throw UnsupportedFormat("unknown format");
}

Matrix read_matrix(const fs::path& path) { return read_matrix(path, detect_format(path)); }

void write_matrix(const Matrix& m, const fs::path& path, FileFormat format) {
  switch (format) {
    case FileFormat::matrix_market: {
      std::string out = "%%MatrixMarket matrix array real general\n";
      out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
      for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
          append_double(out, m(i, j));
          out.push_back('\n');
        }
      }
      write_file_atomic(path, out);
      return;
    }
    case FileFormat::csv: {
      std::string out;
      for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
          if (j > 0) out.push_back(',');
          append_double(out, m(i, j));
        }
        out.push_back('\n');
      }
      write_file_atomic(path, out);
      return;
    }
    case FileFormat::pgm:
      write_file_atomic(path, render_pgm(m));
      return;
    case FileFormat::ppm:
      throw UnsupportedFormat("PPM needs three channels, use write_ppm");
  }
}

void write_matrix(const Matrix& m, const fs::path& path) {
  write_matrix(m, path, detect_format(path));
}

ImageChannels read_ppm(const fs::path& path) {
  const std::string data = read_file(path);
  const PnmHeader h = read_pnm_header(data, path, "P6");
  const size_t expected =
      3 * static_cast<size_t>(h.width) * static_cast<size_t>(h.height);
  if (data.size() - h.data_offset < expected)
    throw ParseError(path.string(), 0, "truncated raster data");

  ImageChannels img;
  for (Matrix& ch : img.rgb) ch.resize(h.height, h.width);
  const unsigned char* px =
      reinterpret_cast<const unsigned char*>(data.data() + h.data_offset);
  size_t k = 0;
  for (long r = 0; r < h.height; ++r)
    for (long c = 0; c < h.width; ++c)
      for (Matrix& ch : img.rgb) ch(r, c) = static_cast<double>(px[k++]);
  return img;
}

void write_ppm(const ImageChannels& image, const fs::path& path) {
  const Matrix& r = image.rgb[0];
  for (const Matrix& ch : image.rgb)
    if (ch.rows() != r.rows() || ch.cols() != r.cols())
      throw DimensionMismatch("write_ppm: channel shapes differ");

  std::string out = "P6\n" + std::to_string(r.cols()) + " " +
                    std::to_string(r.rows()) + "\n255\n";
  out.reserve(out.size() + 3 * static_cast<size_t>(r.size()));
  for (Index i = 0; i < r.rows(); ++i)
    for (Index j = 0; j < r.cols(); ++j)
      for (const Matrix& ch : image.rgb)
        out.push_back(static_cast<char>(clamp_byte(ch(i, j))));
  write_file_atomic(path, out);
}

std::vector<std::string> read_labels(const fs::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::vector<std::string> labels;
  std::string raw;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    labels.push_back(raw);
  }
  while (!labels.empty() && labels.back().empty()) labels.pop_back();
  if (labels.empty()) throw ParseError(path.string(), 0, "no labels in file");
  return labels;
}

void write_labels(const std::vector<std::string>& labels, const fs::path& path) {
  std::string out;
  for (const std::string& l : labels) {
    out += l;
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

WeightSpec read_diagonal_weight(const fs::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::vector<double> values;
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const size_t i = raw.find_first_not_of(" \t");
    if (i == std::string::npos) continue;
    values.push_back(parse_double(raw.substr(i), path, line_no));
  }
  if (values.empty()) throw ParseError(path.string(), line_no, "empty weight file");
  return WeightSpec::diagonal(Eigen::Map<const Vector>(values.data(),
                                                       static_cast<Index>(values.size())));
}

WeightSpec read_sparse_weight(const fs::path& path) {
  const std::string text = read_file(path);
  const MmHeader h = parse_mm_banner(text, path);
  if (!h.coordinate || !h.symmetric)
    throw UnsupportedFormat("sparse weight must be Matrix Market coordinate symmetric");

  LineReader lines(text, path);
  std::string row;
  if (!lines.next(row)) throw ParseError(path.string(), lines.line, "missing size line");
  std::istringstream size_line(row);
  long m = 0, n = 0, nnz = 0;
  if (!(size_line >> m >> n >> nnz) || m != n || m < 1)
    throw ParseError(path.string(), lines.line, "bad weight size line");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(2 * nnz));
  for (long k = 0; k < nnz; ++k) {
    if (!lines.next(row))
      throw ParseError(path.string(), lines.line, "fewer entries than declared");
    std::istringstream entry(row);
    long i = 0, j = 0;
    std::string value;
    if (!(entry >> i >> j >> value))
      throw ParseError(path.string(), lines.line, "bad coordinate entry");
    if (i < 1 || i > m || j < 1 || j > m)
      throw ParseError(path.string(), lines.line, "coordinate out of range");
    const double v = parse_double(value, path, lines.line);
    triplets.emplace_back(i - 1, j - 1, v);
    if (i != j) triplets.emplace_back(j - 1, i - 1, v);
  }
  SparseMatrix a(m, m);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return WeightSpec::sparse_spd(std::move(a));
}

// ---- model container ---------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'R', 'B', 'D', '1'};
}

void write_model(const RbdModel& model, double eps_r, const fs::path& path) {
  const Index m = model.Y.rows();
  const Index n = model.T.cols();
  const Index d = model.d;
  if (model.Y.cols() != d || model.T.rows() != d)
    throw DimensionMismatch("write_model: inconsistent model shapes");

  std::uint8_t tag = 0;
  switch (model.weight.kind()) {
    case WeightKind::identity:
      tag = 0;
      break;
    case WeightKind::diagonal:
      tag = 1;
      break;
    case WeightKind::sparse_spd:
      tag = 2;
      break;
  }

  std::string out;
  out.reserve(29 + 8 * static_cast<size_t>(m * d + d * n + 1 + d) +
              (tag == 1 ? 8 * static_cast<size_t>(m) : 0));
  out.append(kMagic, 4);
  put_le(out, static_cast<std::uint64_t>(m));
  put_le(out, static_cast<std::uint64_t>(n));
  put_le(out, static_cast<std::uint64_t>(d));
  out.push_back(static_cast<char>(tag));
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < m; ++i) put_le(out, model.Y(i, j));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < n; ++j) put_le(out, model.T(i, j));
  put_le(out, eps_r);
  for (Index i = 0; i < d; ++i)
    put_le(out, model.residual_history[static_cast<size_t>(i)]);
  if (tag == 1)
    for (Index i = 0; i < m; ++i) put_le(out, model.weight.diagonal_values()[i]);

  write_file_atomic(path, out);
}

LoadedModel read_model(const fs::path& path) {
  const std::string data = read_file(path);
  size_t pos = 0;
  if (data.size() < 29 || std::memcmp(data.data(), kMagic, 4) != 0)
    throw ParseError(path.string(), 0, "not a model file (bad magic)");
  pos = 4;

  const auto m = static_cast<Index>(get_le<std::uint64_t>(data, pos, path));
  const auto n = static_cast<Index>(get_le<std::uint64_t>(data, pos, path));
  const auto d = static_cast<Index>(get_le<std::uint64_t>(data, pos, path));
  if (m < 1 || n < 1 || d < 1 || d > n)
    throw ParseError(path.string(), 0, "implausible model dimensions");
  const std::uint8_t tag = static_cast<std::uint8_t>(data[pos++]);
  if (tag > 2) throw ParseError(path.string(), 0, "unknown weight tag");

  const size_t expected = 29 + 8 * static_cast<size_t>(m * d + d * n + 1 + d) +
                          (tag == 1 ? 8 * static_cast<size_t>(m) : 0);
  if (data.size() != expected)
    throw ParseError(path.string(), 0, "model file size does not match header");

  LoadedModel out;
  out.model.d = d;
  out.model.Y.resize(m, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < m; ++i) out.model.Y(i, j) = get_le<double>(data, pos, path);
  out.model.T.resize(d, n);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < n; ++j) out.model.T(i, j) = get_le<double>(data, pos, path);
  out.eps_r = get_le<double>(data, pos, path);
  out.model.residual_history.resize(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i)
    out.model.residual_history[static_cast<size_t>(i)] = get_le<double>(data, pos, path);

  switch (tag) {
    case 0:
      out.model.weight = WeightSpec::identity();
      break;
    case 1: {
      Vector diag(m);
      for (Index i = 0; i < m; ++i) diag[i] = get_le<double>(data, pos, path);
      out.model.weight = WeightSpec::diagonal(std::move(diag));
      break;
    }
    case 2:
      out.model.weight = WeightSpec::sparse_external();
      break;
  }
  return out;
}

}  // namespace rbd
