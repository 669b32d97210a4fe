#include "wdc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wdc/error.hpp"
#include "wdc/scheduler.hpp"

namespace wdc {
namespace {

void check_load_args(int K, int r) {
  require(K >= 1, "K must be >= 1 (got " + std::to_string(K) + ")");
  require(r >= 1 && r <= K, "r must lie in [1, K] (got r = " +
                                std::to_string(r) + ", K = " +
                                std::to_string(K) + ")");
}

std::int64_t ceil_of(const Rational& x) {
  const auto n = x.numerator();
  const auto d = x.denominator();
  return n >= 0 ? (n + d - 1) / d : -((-n) / d);
}

std::int64_t floor_of(const Rational& x) {
  const auto n = x.numerator();
  const auto d = x.denominator();
  return n >= 0 ? n / d : -((-n + d - 1) / d);
}

}  // namespace

Rational optimal_load(int K, int r) {
  check_load_args(K, r);
  return (Rational(1) - Rational(r, K)) / std::min(K, 2 * r);
}

Rational uncoded_tdma_load(int K, int r) {
  check_load_args(K, r);
  return Rational(1) - Rational(r, K);
}

Rational coded_tdma_load(int K, int r) {
  check_load_args(K, r);
  return (Rational(1) - Rational(r, K)) / r;
}

Rational time_shared_load(int K, Rational r) {
  require(K >= 1, "K must be >= 1 (got " + std::to_string(K) + ")");
  require(r >= 1 && r <= K, "r must lie in [1, K] (got r = " + to_string(r) +
                                ", K = " + std::to_string(K) + ")");
  const auto lo = floor_of(r);
  if (Rational(lo) == r) return optimal_load(K, static_cast<int>(lo));
  const auto hi = lo + 1;
  const Rational w = r - lo;
  return (Rational(1) - w) * optimal_load(K, static_cast<int>(lo)) +
         w * optimal_load(K, static_cast<int>(hi));
}

ReplicationProfile ReplicationProfile::from_placement(const Placement& p,
                                                      bool include_padding) {
  const int files = include_padding ? p.n_total() : p.n_real();
  std::vector<int> theta;
  theta.reserve(files);
  for (int n = 1; n <= files; ++n)
    theta.push_back(static_cast<int>(p.support_set(n).size()));
  return from_theta(std::move(theta));
}

ReplicationProfile ReplicationProfile::symmetric(std::int64_t N, int r) {
  require(N >= 1, "N must be >= 1");
  return from_theta(std::vector<int>(static_cast<std::size_t>(N), r));
}

ReplicationProfile ReplicationProfile::from_theta(std::vector<int> theta) {
  require(!theta.empty(), "replication profile needs at least one file");
  std::sort(theta.begin(), theta.end());
  std::int64_t sum = 0;
  for (int t : theta) sum += t;
  ReplicationProfile out;
  out.r_avg = Rational(sum, static_cast<std::int64_t>(theta.size()));
  out.theta = std::move(theta);
  return out;
}

ConverseBound converse_lower_bound(const ReplicationProfile& profile, int K,
                                   int Q) {
  require(K >= 1, "K must be >= 1");
  require(Q >= 1 && Q % K == 0, "Q must be a positive multiple of K");
  // Files with equal theta contribute equally; group them to keep the
  // rational sums small.
  Rational sigma(0);
  Rational c_total(0);
  std::size_t i = 0;
  while (i < profile.theta.size()) {
    const int t = profile.theta[i];
    require(t >= 1 && t <= K, "theta_n must lie in [1, K] (got " +
                                  std::to_string(t) + ")");
    std::size_t j = i;
    while (j < profile.theta.size() && profile.theta[j] == t) ++j;
    const auto count = static_cast<std::int64_t>(j - i);
    const Rational c_n = Rational(static_cast<std::int64_t>(K - t) * Q, K);
    c_total += c_n * count;
    sigma += c_n * count / std::min(2 * t, K);
    i = j;
  }
  ConverseBound out;
  out.sigma_sum = sigma;
  out.blocks = ceil_of(sigma);
  Rational denom = profile.r_avg * 2;
  if (denom > K) denom = K;
  out.averaged_blocks = ceil_of(c_total / denom);
  return out;
}

std::optional<PlottedPoint> published_point(int K, Rational r) {
  if (K != 10 || r.denominator() != 1 || r < 1 || r > 10) return std::nullopt;
  static constexpr std::array<PlottedPoint, 10> kPoints{{
      {0.9, 0.9, 0.45},
      {0.8, 0.4, 0.2},
      {0.7, 0.23, 0.07},
      {0.6, 0.15, 0.06},
      {0.5, 0.10, 0.05},
      {0.4, 0.067, 0.04},
      {0.3, 0.043, 0.03},
      {0.2, 0.025, 0.02},
      {0.1, 0.011, 0.01},
      {0.0, 0.0, 0.0},
  }};
  return kPoints[static_cast<std::size_t>(r.numerator() - 1)];
}

std::vector<LoadReport> tradeoff_table(int K, int Q, int N,
                                       std::vector<Rational> r_values,
                                       bool simulate) {
  require(K >= 1, "K must be >= 1 (got " + std::to_string(K) + ")");
  require(N >= K, "N must be >= K (got N = " + std::to_string(N) + ")");
  require(Q >= 1 && Q % K == 0, "Q must be a positive multiple of K (got Q = " +
                                    std::to_string(Q) + ")");
  require(!r_values.empty(), "r grid must not be empty");
  std::sort(r_values.begin(), r_values.end());
  r_values.erase(std::unique(r_values.begin(), r_values.end()),
                 r_values.end());

  std::vector<LoadReport> rows;
  for (const Rational& r : r_values) {
    LoadReport row;
    row.K = K;
    row.Q = Q;
    row.N = N;
    row.r = r;
    row.L_optimal = time_shared_load(K, r);
    if (row.integral_r()) {
      const int ri = static_cast<int>(r.numerator());
      row.L_uncoded = uncoded_tdma_load(K, ri);
      row.L_coded = coded_tdma_load(K, ri);
      row.converse_T =
          converse_lower_bound(ReplicationProfile::symmetric(N, ri), K, Q)
              .blocks;
      if (simulate) {
        const SystemParams params{K, N, Q, ri};
        const auto p = Placement::symmetric(params);
        const auto a = ReduceAssignment::contiguous(K, Q);
        const auto s = schedule(p, a);
        const auto report = validate_schedule(s, p, a);
        if (!report.ok)
          fail(ErrorCode::kInternal,
               "tradeoff_table: scheduler output failed validation at r = " +
                   std::to_string(ri));
        row.T_measured = static_cast<std::int64_t>(s.T());
        row.T_effective = static_cast<std::int64_t>(effective_block_count(s, p));
        row.L_measured = Rational(*row.T_measured,
                                  static_cast<std::int64_t>(N) * Q);
        row.padding = p.padding();
      }
    }
    if (auto pt = published_point(K, r)) {
      const std::array<std::pair<const char*, std::pair<double, double>>, 3>
          curves{{
              {"uncoded", {pt->uncoded, to_double(*row.L_uncoded)}},
              {"coded", {pt->coded, to_double(*row.L_coded)}},
              {"optimal", {pt->optimal, to_double(row.L_optimal)}},
          }};
      std::ostringstream note;
      for (const auto& [name, vals] : curves) {
        if (std::abs(vals.first - vals.second) <= kFigureTolerance) continue;
        if (row.figure_discrepancy) note << "; ";
        row.figure_discrepancy = true;
        note << name << " curve plotted at " << format_decimal(vals.first)
             << ", closed form gives " << format_decimal(vals.second);
      }
      row.figure_note = note.str();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string tradeoff_csv(const std::vector<LoadReport>& rows) {
  std::ostringstream out;
  out << "K,Q,N,r,L_uncoded,L_coded,L_optimal,T_measured,L_measured,"
         "converse_T\n";
  auto opt_rat = [](const std::optional<Rational>& x) {
    return x ? format_decimal(to_double(*x)) : std::string();
  };
  auto opt_int = [](const std::optional<std::int64_t>& x) {
    return x ? std::to_string(*x) : std::string();
  };
  for (const auto& row : rows) {
    out << row.K << ',' << row.Q << ',' << row.N << ','
        << format_decimal(to_double(row.r)) << ',' << opt_rat(row.L_uncoded)
        << ',' << opt_rat(row.L_coded) << ','
        << format_decimal(to_double(row.L_optimal)) << ','
        << opt_int(row.T_measured) << ',' << opt_rat(row.L_measured) << ','
        << opt_int(row.converse_T) << '\n';
  }
  return out.str();
}

std::string figure_discrepancy_report(const std::vector<LoadReport>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    if (!row.figure_discrepancy) continue;
    out << "r=" << to_string(row.r) << ": " << row.figure_note
        << " (L_optimal = " << to_string(row.L_optimal) << ")\n";
  }
  return out.str();
}

std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

double to_double(const Rational& x) {
  return static_cast<double>(x.numerator()) /
         static_cast<double>(x.denominator());
}

std::string format_decimal(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&]() -> Rational {
    fail(ErrorCode::kParse, "not a rational number: '" + text + "'");
  };
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || s.size() > 15) bad();
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) bad();
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) bad();
    return std::stoll(s);
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) bad();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 9 || frac[0] == '-') bad();
    std::string whole = text.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-") whole += "0";
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto w = parse_int(whole);
    const auto f = parse_int(frac);
    return Rational(w * scale + (neg ? -f : f), scale);
  }
  return Rational(parse_int(text));
}

}  // namespace wdc
