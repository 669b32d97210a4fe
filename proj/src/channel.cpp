#include <algorithm>
#include <random>

#include <Eigen/SVD>

#include "wdc/beamforming.hpp"
#include "wdc/combinatorics.hpp"
#include "wdc/error.hpp"

namespace wdc {

namespace {

bool well_conditioned(const Eigen::MatrixXcd& m, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > rank_tol * sv(0);
}

Eigen::MatrixXcd pick(const Eigen::MatrixXcd& h, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  Eigen::MatrixXcd out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(a, b) = h(rows[a] - 1, cols[b] - 1);
  return out;
}

}  // namespace

bool submatrices_well_conditioned(const Eigen::MatrixXcd& h, double rank_tol,
                                  std::size_t exhaustive_limit,
                                  std::size_t samples, std::uint64_t seed) {
  const int K = static_cast<int>(h.rows());
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (std::abs(h(i, j)) == 0.0) return false;

  std::size_t count = 0;
  for (int m = 2; m <= K; ++m) {
    const auto c = static_cast<std::size_t>(binomial(K, m));
    count += c * c;
  }
  const int max_exhaustive = count <= exhaustive_limit ? K : std::min(K, 2);
  for (int m = 2; m <= max_exhaustive; ++m) {
    const auto sets = subsets_of_range(K, m);
    for (const auto& rows : sets)
      for (const auto& cols : sets)
        if (!well_conditioned(pick(h, rows, cols), rank_tol)) return false;
  }
  if (max_exhaustive == K) return true;

  std::mt19937_64 rng(seed);
  std::vector<int> all(K);
  for (int i = 0; i < K; ++i) all[i] = i + 1;
  std::uniform_int_distribution<int> size_dist(3, K);
  for (std::size_t s = 0; s < samples; ++s) {
    const int m = size_dist(rng);
    std::vector<int> rows = all, cols = all;
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    rows.resize(m);
    cols.resize(m);
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    if (!well_conditioned(pick(h, rows, cols), rank_tol)) return false;
  }
  return true;
}

ChannelMatrix ChannelMatrix::generate(int K, std::uint64_t seed, double h_min,
                                      double h_max, double rank_tol) {
  require(K >= 1, "generate_channel: K must be >= 1");
  require(h_min > 0.0 && h_min < h_max,
          "generate_channel: need 0 < h_min < h_max");
  require(rank_tol > 0.0 && rank_tol < 1.0,
          "generate_channel: rank_tol must lie in (0, 1)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  for (int round = 0; round < kMaxRejectionRounds; ++round) {
    Eigen::MatrixXcd h(K, K);
    for (int k = 0; k < K; ++k)
      for (int i = 0; i < K; ++i) {
        Complex c(gauss(rng), gauss(rng));
        const double mag = std::abs(c);
        const double clamped = std::clamp(mag, h_min, h_max);
        c = mag > 0.0 ? c * (clamped / mag) : Complex(h_min, 0.0);
        h(k, i) = c;
      }
    if (submatrices_well_conditioned(h, rank_tol, 20000, 2000, seed + round))
      return ChannelMatrix(std::move(h), h_min, h_max, seed);
  }
  fail(ErrorCode::kLimitExceeded,
       "generate_channel: no well-conditioned draw after " +
           std::to_string(kMaxRejectionRounds) + " rounds");
}

ChannelMatrix ChannelMatrix::from_coefficients(Eigen::MatrixXcd h, double h_min,
                                               double h_max, std::uint64_t seed) {
  require(h.rows() == h.cols() && h.rows() >= 1,
          "channel: coefficient matrix must be square and non-empty");
  require(h_min > 0.0 && h_min <= h_max, "channel: need 0 < h_min <= h_max");
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    for (Eigen::Index i = 0; i < h.cols(); ++i) {
      const double mag = std::abs(h(k, i));
      require(mag >= h_min * (1 - 1e-12) && mag <= h_max * (1 + 1e-12),
              "channel: coefficient magnitude outside [h_min, h_max]");
    }
  return ChannelMatrix(std::move(h), h_min, h_max, seed);
}

Eigen::VectorXcd ChannelMatrix::channel_vector(int k,
                                               const std::vector<int>& S) const {
  require(k >= 1 && k <= K(), "channel_vector: receiver index out of range");
  require(!S.empty(), "channel_vector: transmitter set must be non-empty");
  Eigen::VectorXcd v(S.size());
  for (std::size_t j = 0; j < S.size(); ++j) {
    require(S[j] >= 1 && S[j] <= K(),
            "channel_vector: transmitter index out of range");
    v(j) = h_(k - 1, S[j] - 1);
  }
  return v;
}

Eigen::MatrixXcd ChannelMatrix::submatrix(
    const std::vector<int>& receivers,
    const std::vector<int>& transmitters) const {
  for (int k : receivers)
    require(k >= 1 && k <= K(), "submatrix: receiver index out of range");
  for (int i : transmitters)
    require(i >= 1 && i <= K(), "submatrix: transmitter index out of range");
  return pick(h_, receivers, transmitters);
}

}  // namespace wdc
