#include "framelab/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "framelab/error.hpp"

namespace framelab {

namespace {

MeasureSpace counting(int n) { return MeasureSpace(std::vector<double>(static_cast<std::size_t>(n), 1.0)); }

Eigen::MatrixXd gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

void require_positive(int value, const char* what) {
  if (value < 1) throw InvalidArgument(std::string(what) + " must be at least 1");
}

}  // namespace

Frame gen_onb(int dim) {
  require_positive(dim, "dim");
  return Frame(counting(dim), Eigen::MatrixXd::Identity(dim, dim));
}

Frame gen_mercedes() {
  const double h = std::sqrt(3.0) / 2.0;
  Eigen::MatrixXd v(2, 3);
  v << 1.0, -0.5, -0.5,
       0.0, h, -h;
  return Frame(counting(3), v);
}

Frame gen_harmonic(int dim, int n, Field field) {
  require_positive(dim, "dim");
  require_positive(n, "n");
  if (n < dim) throw InvalidArgument("harmonic frame needs n >= dim");
  const double two_pi = 2.0 * std::numbers::pi;
  if (field == Field::complex) {
    Matrix v(dim, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < dim; ++k) {
        v(k, j) = std::polar(1.0 / std::sqrt(dim), two_pi * j * k / n);
      }
    }
    return Frame(counting(n), std::move(v), Field::complex);
  }
  if (dim > 1 && n <= dim) throw InvalidArgument("real harmonic frame needs n > dim");
  Eigen::MatrixXd v(dim, n);
  const bool odd = dim % 2 == 1;
  const double pair_scale = std::sqrt(2.0 / dim);
  for (int j = 0; j < n; ++j) {
    int row = 0;
    if (odd) v(row++, j) = 1.0 / std::sqrt(dim);
    for (int k = 1; row < dim; ++k) {
      v(row++, j) = pair_scale * std::cos(two_pi * j * k / n);
      v(row++, j) = pair_scale * std::sin(two_pi * j * k / n);
    }
  }
  return Frame(counting(n), v);
}

Frame gen_random(int dim, int n, std::uint64_t seed, Field field) {
  require_positive(dim, "dim");
  require_positive(n, "n");
  std::mt19937_64 rng(seed);
  if (field == Field::real) return Frame(counting(n), gaussian(dim, n, rng));
  const Eigen::MatrixXd re = gaussian(dim, n, rng);
  const Eigen::MatrixXd im = gaussian(dim, n, rng);
  Matrix v(dim, n);
  v.real() = re / std::sqrt(2.0);
  v.imag() = im / std::sqrt(2.0);
  return Frame(counting(n), std::move(v), Field::complex);
}

Frame gen_deficient_plus_tail(int dim, int head_dim, int tail_len, std::uint64_t seed,
                              double tail_scale) {
  require_positive(dim, "dim");
  require_positive(head_dim, "head_dim");
  require_positive(tail_len, "tail_len");
  if (head_dim >= dim) throw InvalidArgument("head_dim must be smaller than dim");
  if (!(tail_scale > 0.0) || !std::isfinite(tail_scale)) {
    throw InvalidArgument("tail_scale must be positive");
  }
  std::mt19937_64 rng(seed);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(dim, head_dim, rng));
  const Eigen::MatrixXd basis =
      qr.householderQ() * Eigen::MatrixXd::Identity(dim, head_dim);
  const int head_count = deficient_head_count(head_dim);
  const Eigen::MatrixXd head = basis * gaussian(head_dim, head_count, rng);
  const Eigen::MatrixXd tail = tail_scale * gaussian(dim, tail_len, rng);

  Eigen::MatrixXd v(dim, head_count + tail_len);
  v << head, tail;
  std::vector<std::optional<std::string>> labels;
  for (int i = 0; i < head_count; ++i) labels.emplace_back("head");
  for (int i = 0; i < tail_len; ++i) labels.emplace_back("tail");
  return Frame(MeasureSpace(std::vector<double>(static_cast<std::size_t>(v.cols()), 1.0),
                            std::move(labels)),
               v);
}

}  // namespace framelab
