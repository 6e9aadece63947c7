#ifndef RBD_IO_HPP
#define RBD_IO_HPP

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "rbd/decompose.hpp"
#include "rbd/types.hpp"
#include "rbd/weight.hpp"

namespace rbd {

enum class FileFormat { matrix_market, csv, pgm, ppm };

/// Pick a format from the file extension (.mtx/.mm, .csv, .pgm, .ppm).
FileFormat detect_format(const std::filesystem::path& path);

/// Read a dense matrix. Matrix Market array and coordinate layouts are both
/// accepted (coordinate is densified, symmetric entries mirrored); PGM pixels
/// land as reals in [0, 255] with matrix row = image row. PPM is rejected
/// here, use read_ppm.
Matrix read_matrix(const std::filesystem::path& path, FileFormat format);
Matrix read_matrix(const std::filesystem::path& path);

/// Write a dense matrix. CSV and Matrix Market round-trip exactly; image
/// formats clamp to [0, 255] and round to the nearest byte. Writes go to a
/// temporary file renamed into place.
void write_matrix(const Matrix& m, const std::filesystem::path& path,
                  FileFormat format);
void write_matrix(const Matrix& m, const std::filesystem::path& path);

struct ImageChannels {
  std::array<Matrix, 3> rgb;
};

ImageChannels read_ppm(const std::filesystem::path& path);
void write_ppm(const ImageChannels& image, const std::filesystem::path& path);

/// Sidecar label file: one label per line, order matching columns.
std::vector<std::string> read_labels(const std::filesystem::path& path);
void write_labels(const std::vector<std::string>& labels,
                  const std::filesystem::path& path);

/// Diagonal weight: one strictly positive value per line.
WeightSpec read_diagonal_weight(const std::filesystem::path& path);
/// Sparse SPD weight: Matrix Market coordinate symmetric.
WeightSpec read_sparse_weight(const std::filesystem::path& path);

/// Binary model container. Layout, all little-endian:
///   "RBD1" | u64 m, n, d | weight tag byte (0 identity, 1 diagonal,
///   2 sparse-spd held externally) | f64 Y column-major | f64 T row-major |
///   f64 eps_R | f64 residual_history[d] | (tag 1 only) f64 diag[m]
/// The greedy selection order is not part of the container.
void write_model(const RbdModel& model, double eps_r,
                 const std::filesystem::path& path);

struct LoadedModel {
  RbdModel model;
  double eps_r = 0.0;
};

LoadedModel read_model(const std::filesystem::path& path);

}  // namespace rbd

#endif
