#pragma once

// Slow reference implementations for tests. Plain vectors, Floyd-Warshall distances,
// utilities recomputed from scratch for every query. Shares no code with the library.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;
inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Model {
  double delta = 0.7;
  double c_low = 0.2;
  double c_high = 1.0;
  std::vector<int> group;
  std::vector<int> type;
  Matrix link;                           // 0/1, symmetric
  Matrix known;                          // 0/1, symmetric, unit diagonal
  std::vector<std::vector<double>> pi;   // pi[i][k]

  int n() const { return static_cast<int>(group.size()); }
  double cost(int i, int j) const { return type[i] == type[j] ? c_low : c_high; }
};

inline Matrix floyd_warshall(const Matrix& link) {
  const int n = static_cast<int>(link.size());
  Matrix d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < n; ++j) {
      if (link[i][j]) d[i][j] = 1;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

inline double benefit(const Model& m, const Matrix& link, int i) {
  const auto d = floyd_warshall(link);
  double b = 0.0;
  for (int j = 0; j < m.n(); ++j) {
    if (j != i && d[i][j] < kInf) b += std::pow(m.delta, d[i][j]);
  }
  return b;
}

inline double utility(const Model& m, const Matrix& link, int i) {
  double u = benefit(m, link, i);
  for (int j = 0; j < m.n(); ++j) {
    if (link[i][j]) u -= m.cost(i, j);
  }
  return u;
}

inline double utility(const Model& m, int i) { return utility(m, m.link, i); }

inline double belief(const Model& m, int i, int j) {
  if (m.known[i][j]) return m.type[i] == m.type[j] ? 1.0 : 0.0;
  return m.pi[i][m.group[j]];
}

inline double expected_cost(const Model& m, int i, int j) {
  if (m.known[i][j]) return m.cost(i, j);
  const double p = m.pi[i][m.group[j]];
  return p * m.c_low + (1.0 - p) * m.c_high;
}

inline Matrix toggled(Matrix link, int i, int j) {
  link[i][j] = link[j][i] = 1 - link[i][j];
  return link;
}

inline double expected_add_gain(const Model& m, int i, int j) {
  return benefit(m, toggled(m.link, i, j), i) - benefit(m, m.link, i) - expected_cost(m, i, j);
}

inline double actual_add_gain(const Model& m, int i, int j) {
  return utility(m, toggled(m.link, i, j), i) - utility(m, m.link, i);
}

inline double delete_gain(const Model& m, int i, int j) {
  return utility(m, toggled(m.link, i, j), i) - utility(m, m.link, i);
}

// Both stability clauses over every pair.
inline bool pairwise_stable(const Model& m) {
  for (int i = 0; i < m.n(); ++i) {
    for (int j = i + 1; j < m.n(); ++j) {
      if (m.link[i][j]) {
        if (delete_gain(m, i, j) > 0.0 || delete_gain(m, j, i) > 0.0) return false;
      } else if (expected_add_gain(m, i, j) >= 0.0 && expected_add_gain(m, j, i) >= 0.0) {
        return false;
      }
    }
  }
  return true;
}

inline double meet_always(double delta, double cl, double ch) { return (ch - delta + delta * delta) / (ch - cl); }
inline double empty_unstable(double delta, double cl, double ch) { return (ch - delta) / (ch - cl); }
inline double refuse_component(double delta, double cl, double ch, int m) {
  return (ch - delta - (m - 1) * delta * delta) / (ch - cl);
}

// Beta(1, b) distribution function.
inline double beta1_cdf(double x, double b) { return 1.0 - std::pow(1.0 - x, b); }

// Sup distance between the empirical CDF of `xs` (sorted) and cdf.
template <class Cdf>
double ks_distance(const std::vector<double>& sorted, Cdf cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = cdf(sorted[k]);
    d = std::max({d, std::abs((k + 1) / n - f), std::abs(f - k / n)});
  }
  return d;
}

// Freeman index straight from the definition: observed cross share over the share of
// cross dyads in a uniformly random graph.
inline double freeman(const std::vector<int>& cls, const Matrix& link) {
  const int n = static_cast<int>(cls.size());
  int links = 0, cross = 0, cross_dyads = 0, dyads = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      ++dyads;
      cross_dyads += cls[i] != cls[j];
      if (link[i][j]) {
        ++links;
        cross += cls[i] != cls[j];
      }
    }
  }
  if (links == 0) return 1.0;
  const double p = static_cast<double>(cross) / links;
  const double expected = static_cast<double>(cross_dyads) / dyads;
  return 1.0 - p / expected;
}

}  // namespace oracle
