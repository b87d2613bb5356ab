#pragma once

#include "gnebench/spectral.hpp"

namespace gne {

struct FriedmanResult {
  Matrix ranks;       // per (function, algorithm) rank, ties averaged
  Vector mean_ranks;  // column means, 1 = best
  double chi2;        // Friedman statistic
};

// rows = functions, cols = algorithms, entries = mean f_best per cell.
// Ranks within each row (1 = smallest), ties get the average rank;
// chi2 = 12n/(m(m+1)) * [sum_j Rbar_j^2 - m(m+1)^2/4].
FriedmanResult friedman_ranks(const Matrix& means);

}  // namespace gne
