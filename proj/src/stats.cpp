#include "gnebench/stats.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gne {

FriedmanResult friedman_ranks(const Matrix& means) {
  const int n = static_cast<int>(means.rows());
  const int m = static_cast<int>(means.cols());
  if (n < 1 || m < 2)
    throw std::invalid_argument("friedman_ranks: need >= 1 function and >= 2 algorithms");
  if (!means.allFinite())
    throw std::invalid_argument("friedman_ranks: non-finite entries");

  Matrix ranks(n, m);
  std::vector<int> order(static_cast<size_t>(m));
  for (int r = 0; r < n; ++r) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return means(r, a) < means(r, b);
    });
    int pos = 0;
    while (pos < m) {
      int end = pos + 1;
      while (end < m && means(r, order[static_cast<size_t>(end)]) ==
                            means(r, order[static_cast<size_t>(pos)]))
        ++end;
      // tied block spans sorted positions [pos, end); average the ranks
      const double avg = 0.5 * static_cast<double>((pos + 1) + end);
      for (int k = pos; k < end; ++k)
        ranks(r, order[static_cast<size_t>(k)]) = avg;
      pos = end;
    }
  }

  Vector mean_ranks = ranks.colwise().mean();
  const double mm = static_cast<double>(m);
  double sumsq = 0.0;
  for (int j = 0; j < m; ++j) sumsq += mean_ranks[j] * mean_ranks[j];
  const double chi2 = 12.0 * static_cast<double>(n) / (mm * (mm + 1.0)) *
                      (sumsq - mm * (mm + 1.0) * (mm + 1.0) / 4.0);
  return {std::move(ranks), std::move(mean_ranks), chi2};
}

}  // namespace gne
